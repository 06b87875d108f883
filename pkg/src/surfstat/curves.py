"""Point counts: Legendre and Clausen traces, the surface count A_p, Greene 2F1/3F2.

A_p(l) = -sum_{x,y} phi(x y (1+x+y)(x y + (1-l)/l^2)) is O(p^2) per l by
direct count.  The fast path goes through a single Clausen trace:
with mu = (1-l)/l,

    p^2 3F2(1-l) = phi(1+mu) (a_Cl(mu)^2 - p)
    A_p(l)       = -phi(l) p^2 3F2(1-l)

which is O(p).  The sign in the second line was confirmed against the direct
count; it breaks down at l = 1 and l = 2, which are sent to the direct count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .char_sums import EPS, ComplexApprox, _binom_phi_table, _fft_err, binomial, c_p, char_transform, c_p_numeric_table
from .ff_core import PrimeFieldContext, build_context

# lambda values where the fast chain degenerates
FAST_EXCEPTIONS = (1, 2)

_ROWS = 1 << 20


@dataclass(frozen=True)
class TraceRecord:
    p: int
    lam: int
    a_leg: int | None
    a_cl: int | None
    A_p: int
    provenance: str

    def as_row(self) -> list:
        return [self.p, self.lam, self.a_leg, self.a_cl, self.A_p]


def _need(ctx: PrimeFieldContext, lam: int, banned: tuple[int, ...], what: str) -> int:
    lam %= ctx.p
    if lam in tuple(b % ctx.p for b in banned):
        raise ValueError(f"{what} is singular at lambda={lam} (p={ctx.p})")
    return lam


def legendre_trace(ctx: PrimeFieldContext, lam: int) -> int:
    """a_p of y^2 = x(x-1)(x-lam)."""
    p = ctx.p
    lam = _need(ctx, lam, (0, 1), "Legendre curve")
    x = np.arange(p, dtype=np.int64)
    v = x * ((x - 1) % p) % p * ((x - lam) % p) % p
    return -int(ctx.quad[v].sum())


def clausen_trace(ctx: PrimeFieldContext, lam: int) -> int:
    """a_p of y^2 = (x-1)(x^2+lam)."""
    p = ctx.p
    lam = _need(ctx, lam, (0, -1), "Clausen curve")
    x = np.arange(p, dtype=np.int64)
    v = ((x - 1) % p) * ((x * x + lam) % p) % p
    return -int(ctx.quad[v].sum())


def _clausen_chunk(args: tuple[int, int, int]) -> np.ndarray:
    p, lo, hi = args
    ctx = build_context(p)
    x = np.arange(p, dtype=np.int64)
    xm1 = (x - 1) % p
    x2 = x * x % p
    rows = max(1, _ROWS // p)
    out = np.empty(hi - lo, dtype=np.int64)
    for s in range(lo, hi, rows):
        e = min(hi, s + rows)
        mu = np.arange(s, e, dtype=np.int64)[:, None]
        v = xm1[None, :] * ((x2[None, :] + mu) % p) % p
        out[s - lo : e - lo] = -ctx.quad[v].sum(axis=1)
    return out


def _split_range(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    step = -(-n // parts)
    return [(lo, min(n, lo + step)) for lo in range(0, n, step)]


def clausen_trace_table(ctx: PrimeFieldContext, workers: int = 1) -> np.ndarray:
    """-sum_x phi((x-1)(x^2+mu)) for every mu in F_p (singular mu included)."""
    p = ctx.p
    chunks = [(p, lo, hi) for lo, hi in _split_range(p, workers)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_clausen_chunk, chunks))
    else:
        parts = [_clausen_chunk(c) for c in chunks]
    return np.concatenate(parts)


def legendre_trace_table(ctx: PrimeFieldContext) -> np.ndarray:
    p = ctx.p
    x = np.arange(p, dtype=np.int64)
    base = x * ((x - 1) % p) % p
    rows = max(1, _ROWS // p)
    out = np.empty(p, dtype=np.int64)
    for s in range(0, p, rows):
        e = min(p, s + rows)
        lam = np.arange(s, e, dtype=np.int64)[:, None]
        v = base[None, :] * ((x[None, :] - lam) % p) % p
        out[s:e] = -ctx.quad[v].sum(axis=1)
    return out


def surface_beta(ctx: PrimeFieldContext, lam: int) -> int:
    p = ctx.p
    return (1 - lam) * pow(lam * lam % p, -1, p) % p


def surface_A_direct(ctx: PrimeFieldContext, lam: int) -> int:
    """A_p(lam) = p^2 - #X_lam(F_p) by the O(p^2) double sum."""
    p = ctx.p
    lam = _need(ctx, lam, (0,), "the surface")
    c = surface_beta(ctx, lam)
    x = np.arange(p, dtype=np.int64)
    rows = max(1, _ROWS // p)
    total = 0
    for s in range(0, p, rows):
        y = np.arange(s, min(p, s + rows), dtype=np.int64)[:, None]
        xy = x[None, :] * y % p
        v = xy * ((1 + x[None, :] + y) % p) % p * ((xy + c) % p) % p
        total += int(ctx.quad[v].sum())
    return -total


def p2_3f2_via_clausen(ctx: PrimeFieldContext, z: int, a_cl: int | None = None) -> int:
    """p^2 3F2(z) as an exact integer, from a_Cl(mu) with mu/(1+mu) = z (z != 0, 1)."""
    p = ctx.p
    z %= p
    if z in (0, 1):
        raise ValueError(f"no Clausen parameter for z={z}")
    mu = z * pow(1 - z, -1, p) % p
    if a_cl is None:
        a_cl = clausen_trace(ctx, mu)
    return ctx.phi(1 + mu) * (a_cl * a_cl - p)


def surface_A_fast(ctx: PrimeFieldContext, lam: int) -> int:
    p = ctx.p
    lam = _need(ctx, lam, (0,), "the surface")
    if lam in FAST_EXCEPTIONS:
        return surface_A_direct(ctx, lam)
    return -ctx.phi(lam) * p2_3f2_via_clausen(ctx, 1 - lam)


def surface_A_table(ctx: PrimeFieldContext, workers: int = 1) -> np.ndarray:
    """A_p(lam) for lam = 0..p-1 (entry 0 unused and set to 0)."""
    p = ctx.p
    acl = clausen_trace_table(ctx, workers)
    lam = np.arange(1, p, dtype=np.int64)
    inv = np.array([pow(int(t), -1, p) for t in lam], dtype=np.int64) if p < 64 else _inverses(p)[1:]
    mu = (1 - lam) % p * inv % p
    a = acl[mu].astype(np.int64)
    out = np.zeros(p, dtype=np.int64)
    # -phi(l) phi(1+mu) (a^2 - p) with 1 + mu = 1/l, so the signs cancel
    out[1:] = p - a * a
    for e in FAST_EXCEPTIONS:
        out[e] = surface_A_direct(ctx, e)
    return out


def _inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    return inv


def surface_A_two_closed_form(ctx: PrimeFieldContext) -> int:
    """A_p(2) = -phi(-2) p (phi(-1) p 3F2(-1) - 1), via the Clausen trace at -1/2."""
    p = ctx.p
    return -ctx.phi(-2) * (ctx.phi(-1) * p2_3f2_via_clausen(ctx, -1) - p)


def trace_record(ctx: PrimeFieldContext, lam: int, check: bool = False) -> TraceRecord:
    p = ctx.p
    lam %= p
    a_leg = legendre_trace(ctx, lam) if lam not in (0, 1) else None
    a_cl = clausen_trace(ctx, lam) if lam not in (0, p - 1) else None
    A = surface_A_fast(ctx, lam)
    prov = "direct" if lam in FAST_EXCEPTIONS else "fast"
    if check:
        d = surface_A_direct(ctx, lam)
        if d != A:
            raise ArithmeticError(f"fast/direct mismatch at p={p}, lambda={lam}: {A} vs {d}")
        prov = "both"
    return TraceRecord(p, lam, a_leg, a_cl, A, prov)


def count_points_brute(p: int, f) -> int:
    """Projective points of y^2 = f(x) for a monic cubic f: affine solutions plus infinity."""
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    return 1 + sum(sq[f(x) % p] for x in range(p))


# Greene hypergeometric functions (numeric)


def greene_2f1(ctx: PrimeFieldContext, lam: int) -> ComplexApprox:
    return _greene(ctx, lam, 2)


def greene_3f2(ctx: PrimeFieldContext, lam: int) -> ComplexApprox:
    return _greene(ctx, lam, 3)


def _greene(ctx: PrimeFieldContext, lam: int, k: int) -> ComplexApprox:
    """p/(p-1) * sum_j (phi w^j over w^j)^k w^j(lam)."""
    p = ctx.p
    n = p - 1
    lam %= p
    if lam == 0:
        return ComplexApprox(0.0, 0.0, 0.0)
    B, eb = _binom_phi_table(p)
    d = int(ctx.dlog[lam])
    total = ComplexApprox(0.0, 0.0, 0.0)
    for j in range(n):
        b = ComplexApprox.of(B[j], eb)
        chi = ComplexApprox.of(np.exp(2j * np.pi * ((j * d) % n) / n), 2 * EPS)
        total = total + (b**k) * chi
    return total * (p / (p - 1))


def greene_table(ctx: PrimeFieldContext, k: int) -> tuple[np.ndarray, float]:
    """Values of 2F1 (k=2) or 3F2 (k=3) at every point of F_p, with one error bound."""
    p = ctx.p
    n = p - 1
    B, eb = _binom_phi_table(p)
    coeffs = B**k
    absB = np.abs(B) + eb
    coef_err = float(np.sum(k * absB ** (k - 1) * eb + 4 * EPS * absB**k))
    vals = char_transform(ctx, coeffs, sign=1) * (p / (p - 1))
    return vals, (p / (p - 1)) * _fft_err(n, float(np.sum(np.abs(coeffs))), coef_err) + 4 * EPS


def quartic_boundary_term(ctx: PrimeFieldContext) -> ComplexApprox:
    """(chi4 over phi)(phi chi4bar over chi4bar) + (phi chi4 over phi)(chi4bar over phi chi4bar)."""
    p = ctx.p
    if p % 4 != 1:
        return ComplexApprox(0.0, 0.0, 0.0)
    q = (p - 1) // 4
    h = (p - 1) // 2
    return binomial(ctx, q, h) * binomial(ctx, h - q, -q) + binomial(ctx, h + q, h) * binomial(ctx, -q, h - q)


@dataclass(frozen=True)
class DecompositionResult:
    ok: bool
    lhs: complex
    rhs: complex
    residual: float
    tolerance: float


def lemma_3f2_decomposition_check(ctx: PrimeFieldContext, lam: int, lhs: ComplexApprox | None = None) -> DecompositionResult:
    """3F2(l) against phi(l-1)/(p^3(p-1)) C_p(l/(1-l)^2) plus the l = -1 and l = 1 boundary terms."""
    p = ctx.p
    lam %= p
    if lhs is None:
        lhs = greene_3f2(ctx, lam)
    rhs = ComplexApprox(0.0, 0.0, 0.0)
    if lam != 1:
        arg = lam * pow((1 - lam) ** 2 % p, -1, p) % p
        cp = c_p(ctx, arg, "padic")
        rhs = rhs + ComplexApprox.of(ctx.phi(lam - 1) * cp / (p**3 * (p - 1)), EPS)
    if (1 + lam) % p == 0:
        rhs = rhs + ComplexApprox.of(ctx.phi(-1) / p, EPS)
    if lam == 1:
        rhs = rhs + quartic_boundary_term(ctx)
    diff = lhs - rhs
    tol = max(1e-6 * abs(rhs), diff.err)
    return DecompositionResult(abs(diff) <= tol, lhs.value, rhs.value, abs(diff), tol)


def hasse_ok(p: int, a: int) -> bool:
    return a * a <= 4 * p


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)


def a_bound_ok(p: int, A: int) -> bool:
    return abs(A) <= 3 * p


__all__ = [
    "FAST_EXCEPTIONS",
    "TraceRecord",
    "c_p_numeric_table",
    "clausen_trace",
    "clausen_trace_table",
    "count_points_brute",
    "greene_2f1",
    "greene_3f2",
    "greene_table",
    "lemma_3f2_decomposition_check",
    "legendre_trace",
    "legendre_trace_table",
    "p2_3f2_via_clausen",
    "quartic_boundary_term",
    "surface_A_direct",
    "surface_A_fast",
    "surface_A_table",
    "surface_A_two_closed_form",
    "trace_record",
]
