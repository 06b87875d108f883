"""Gauss and Jacobi sums, Greene binomials, Gross-Koblitz Gauss sums and C_p.

Numeric values live in the complex embedding with an explicit error bound
(ComplexApprox).  Exact values come from the p-adic side: a Gauss sum is
pi^e times a unit with pi^(p-1) = -p, so products whose exponent is a
multiple of p-1 are genuine p-adic numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .ff_core import PrimeFieldContext, build_context
from .padic_core import PadicNumber, PrecisionError, floor_part, frac_part, gamma_cache, teich_power_table

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ComplexApprox:
    re: float
    im: float
    err: float = 0.0

    @classmethod
    def of(cls, z, err: float = 0.0) -> "ComplexApprox":
        if isinstance(z, ComplexApprox):
            return z
        z = complex(z)
        return cls(z.real, z.imag, err)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return abs(self.value)

    def conjugate(self) -> "ComplexApprox":
        return ComplexApprox(self.re, -self.im, self.err)

    def __neg__(self) -> "ComplexApprox":
        return ComplexApprox(-self.re, -self.im, self.err)

    def __add__(self, other) -> "ComplexApprox":
        o = ComplexApprox.of(other)
        z = self.value + o.value
        return ComplexApprox(z.real, z.imag, self.err + o.err + EPS * abs(z))

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexApprox":
        return self + (-ComplexApprox.of(other))

    def __rsub__(self, other) -> "ComplexApprox":
        return ComplexApprox.of(other) - self

    def __mul__(self, other) -> "ComplexApprox":
        o = ComplexApprox.of(other)
        z = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err + 2 * EPS * abs(z)
        return ComplexApprox(z.real, z.imag, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexApprox":
        o = ComplexApprox.of(other)
        den = abs(o.value)
        if den <= o.err:
            raise ZeroDivisionError("divisor not bounded away from zero")
        z = self.value / o.value
        err = (self.err + abs(z) * o.err) / (den - o.err) + 2 * EPS * abs(z)
        return ComplexApprox(z.real, z.imag, err)

    def __pow__(self, k: int) -> "ComplexApprox":
        out = ComplexApprox(1.0, 0.0, 0.0)
        for _ in range(k):
            out = out * self
        return out

    def close_to(self, exact, rel: float = 1e-6) -> bool:
        """|self - exact| <= max(rel * |exact|, err)."""
        exact = complex(exact)
        return abs(self.value - exact) <= max(rel * abs(exact), self.err)

    def nearest_int(self, guard: float = 0.1) -> int:
        """Round to the nearest integer; hard failure outside the guard band."""
        n = round(self.re)
        if abs(self.re - n) > guard or abs(self.im) > guard:
            raise ArithmeticError(f"{self.value} is not within {guard} of an integer")
        return int(n)


# per-prime numeric tables


@dataclass(frozen=True, eq=False)
class _NumTables:
    zeta_pm1: np.ndarray
    zeta_p: np.ndarray
    gauss: np.ndarray
    gauss_err: float


@lru_cache(maxsize=32)
def _tables(p: int) -> _NumTables:
    ctx = build_context(p)
    n = p - 1
    zeta_pm1 = np.exp(2j * np.pi * np.arange(n) / n)
    zeta_p = np.exp(2j * np.pi * np.arange(p) / p)
    dl = ctx.dlog[1:]
    zx = zeta_p[1:]
    gauss = np.empty(n, dtype=complex)
    for j in range(n):
        gauss[j] = np.sum(zeta_pm1[(j * dl) % n] * zx)
    # p unit-size terms: naive summation error <= p * eps * sum|terms|, plus table rounding
    err = (p * p + 8 * p) * EPS
    return _NumTables(zeta_pm1, zeta_p, gauss, err)


def gauss_sum_numeric(ctx: PrimeFieldContext, j: int) -> ComplexApprox:
    t = _tables(ctx.p)
    return ComplexApprox.of(t.gauss[j % (ctx.p - 1)], t.gauss_err)


def jacobi_sum_numeric(ctx: PrimeFieldContext, j1: int, j2: int) -> ComplexApprox:
    """J(omega^j1, omega^j2) = sum_y omega^j1(y) omega^j2(1-y), with chi(0) = 0 throughout."""
    p = ctx.p
    n = p - 1
    t = _tables(p)
    y = np.arange(2, p)
    e = (j1 * ctx.dlog[y] + j2 * ctx.dlog[(1 - y) % p]) % n
    z = complex(np.sum(t.zeta_pm1[e]))
    return ComplexApprox.of(z, (p * p + 8 * p) * EPS)


def binomial(ctx: PrimeFieldContext, j_top: int, j_bottom: int) -> ComplexApprox:
    """Greene's binomial (A over B) = B(-1)/p * J(A, conj B) with A = omega^j_top, B = omega^j_bottom."""
    p = ctx.p
    J = jacobi_sum_numeric(ctx, j_top % (p - 1), (-j_bottom) % (p - 1))
    sign = -1 if j_bottom % 2 else 1
    return J * (sign / p)


@lru_cache(maxsize=32)
def _binom_phi_table(p: int) -> tuple[np.ndarray, float]:
    """B[j] = (phi*omega^j over omega^j) for all j, with a shared error bound."""
    ctx = build_context(p)
    n = p - 1
    h = n // 2
    vals = np.empty(n, dtype=complex)
    err = 0.0
    for j in range(n):
        b = binomial(ctx, h + j, j)
        vals[j] = b.value
        err = max(err, b.err)
    return vals, err


def _fft_err(n: int, coef_abs_sum: float, coef_err_sum: float) -> float:
    return coef_err_sum + (5 * max(1.0, math.log2(n)) + 4) * EPS * coef_abs_sum


def char_transform(ctx: PrimeFieldContext, coeffs: np.ndarray, sign: int = 1) -> np.ndarray:
    """T[x] = sum_j coeffs[j] * omega^(sign*j)(x) for all x in F_p (T[0] = 0)."""
    n = ctx.p - 1
    if sign > 0:
        by_log = np.fft.ifft(coeffs) * n
    else:
        by_log = np.fft.fft(coeffs)
    out = np.zeros(ctx.p, dtype=complex)
    out[1:] = by_log[ctx.dlog[1:]]
    return out


# Gross-Koblitz


@dataclass(frozen=True)
class GaussSumPadic:
    """pi^e * unit with pi^(p-1) = -p."""

    p: int
    e: int
    unit: PadicNumber

    def __mul__(self, other: "GaussSumPadic") -> "GaussSumPadic":
        if other.p != self.p:
            raise ValueError("mixed primes")
        return GaussSumPadic(self.p, self.e + other.e, self.unit * other.unit)

    def to_padic(self) -> PadicNumber:
        """Exchange pi^e for (-p)^(e/(p-1)); only defined when p-1 divides e."""
        if self.e % (self.p - 1):
            raise ArithmeticError(f"pi-exponent {self.e} is not a multiple of {self.p - 1}")
        s = self.e // (self.p - 1)
        pw = PadicNumber(self.p, self.unit.N, s, (-1) ** (s % 2) % self.p**self.unit.N)
        return pw * self.unit


def gauss_sum_padic(ctx: PrimeFieldContext, j: int, N: int = 3) -> GaussSumPadic:
    """g(conj(omega)^j) = -pi^j Gamma_p(j/(p-1)) for 0 <= j <= p-2."""
    p = ctx.p
    j %= p - 1
    u = gamma_cache(p, N).unit(Fraction(j, p - 1))
    return GaussSumPadic(p, j, PadicNumber(p, N, 0, (-u) % p**N))


# the sum C_p


def _cp_indices(p: int, j: int) -> tuple[int, int, int]:
    n = p - 1
    h = n // 2
    # g(phi conj(omega)^2j), g(omega^j), g(phi conj(omega)^j) as conj(omega)^k
    return (2 * j + h) % n, (-j) % n, (j + h) % n


def cp_term_exponents(p: int) -> list[int]:
    """Total pi-exponent of each term of C_p, j = 0..p-2."""
    out = []
    for j in range(p - 1):
        k1, k2, k3 = _cp_indices(p, j)
        out.append(k1 + 3 * k2 + k3)
    return out


@lru_cache(maxsize=64)
def _cp_padic_terms(p: int, N: int) -> tuple[int, tuple[int, ...]]:
    """(abs_prec, residues) for the lambda-free part of each C_p term."""
    ctx = build_context(p)
    terms = []
    for j in range(p - 1):
        k1, k2, k3 = _cp_indices(p, j)
        g2 = gauss_sum_padic(ctx, k2, N)
        prod = gauss_sum_padic(ctx, k1, N) * g2 * g2 * g2 * gauss_sum_padic(ctx, k3, N)
        terms.append(prod.to_padic())
    prec = min(t.abs_prec for t in terms)
    return prec, tuple(t.residue(prec) for t in terms)


def cp_bound(p: int) -> int:
    return 3 * p * p * (p - 1)


def c_p_padic(ctx: PrimeFieldContext, lam: int, N: int = 3) -> PadicNumber:
    p = ctx.p
    lam %= p
    prec, res = _cp_padic_terms(p, N)
    if lam == 0:
        return PadicNumber.zero(p, prec)
    M = p**prec
    W = teich_power_table(ctx, prec)
    d = int(ctx.dlog[lam])
    n = p - 1
    s = 0
    for j, r in enumerate(res):
        s += r * W[(-j * d) % n]
    return PadicNumber.from_residue(p, s % M, prec)


def c_p_numeric(ctx: PrimeFieldContext, lam: int) -> ComplexApprox:
    p = ctx.p
    n = p - 1
    lam %= p
    if lam == 0:
        return ComplexApprox(0.0, 0.0, 0.0)
    d = int(ctx.dlog[lam])
    t = _tables(p)
    total = ComplexApprox(0.0, 0.0, 0.0)
    for j in range(n):
        k1, k2, k3 = _cp_indices(p, j)
        # g(conj(omega)^k) = g(omega^(-k))
        gs = [gauss_sum_numeric(ctx, -k) for k in (k1, k2, k2, k2, k3)]
        term = gs[0]
        for g in gs[1:]:
            term = term * g
        total = total + term * ComplexApprox.of(t.zeta_pm1[(-j * d) % n], EPS)
    return total


def c_p_numeric_table(ctx: PrimeFieldContext) -> tuple[np.ndarray, float]:
    """C_p(x) for all x in F_p via one FFT; returns (values, error bound)."""
    p = ctx.p
    n = p - 1
    G = _tables(p).gauss
    coeffs = np.empty(n, dtype=complex)
    for j in range(n):
        k1, k2, k3 = _cp_indices(p, j)
        coeffs[j] = G[(-k1) % n] * G[(-k2) % n] ** 3 * G[(-k3) % n]
    eg = _tables(p).gauss_err
    gabs = math.sqrt(p) + eg
    # each term is a product of five factors of size sqrt(p)
    term_err = 5 * gabs**4 * eg + 10 * EPS * gabs**5
    vals = char_transform(ctx, coeffs, sign=-1)
    return vals, _fft_err(n, float(np.sum(np.abs(coeffs))), n * term_err)


def solve_beta(ctx: PrimeFieldContext, beta: int) -> list[int]:
    """All lambda != 0 with (1 - lambda)/lambda^2 = beta."""
    p = ctx.p
    beta %= p
    if beta == 0:
        return [1]
    disc = (1 + 4 * beta) % p
    if disc == 0:
        roots = [(-pow(2 * beta, -1, p)) % p]
    elif ctx.quad[disc] == 1:
        s = int(ctx.powers[int(ctx.dlog[disc]) // 2])
        inv = pow(2 * beta, -1, p)
        roots = sorted({(-1 + s) * inv % p, (-1 - s) * inv % p})
    else:
        return []
    return [r for r in roots if r]


def c_p_via_surface(ctx: PrimeFieldContext, beta: int) -> int:
    from .curves import surface_A_direct

    roots = solve_beta(ctx, beta)
    if not roots:
        raise ValueError(f"{beta} is not of the form (1-l)/l^2 over F_{ctx.p}")
    vals = {surface_A_direct(ctx, r) for r in roots}
    if len(vals) != 1:
        raise ArithmeticError(f"roots {roots} give different surface counts {vals}")
    p = ctx.p
    return -ctx.phi(-1) * p * (p - 1) * vals.pop()


def c_p(ctx: PrimeFieldContext, lam: int, mode: str = "padic", N: int = 3):
    """The character sum C_p at lam.

    numeric -> ComplexApprox; padic and via_surface -> exact int.
    """
    if mode == "numeric":
        return c_p_numeric(ctx, lam)
    if mode == "padic":
        val = c_p_padic(ctx, lam, N)
        while ctx.p**val.abs_prec <= 2 * cp_bound(ctx.p):
            N += 1
            val = c_p_padic(ctx, lam, N)
        return val.decode(cp_bound(ctx.p))
    if mode == "via_surface":
        return c_p_via_surface(ctx, lam)
    raise ValueError(f"unknown mode {mode!r}")


# floor-function lemmas (pure integer checks)


def _fl(a, j: int, p: int) -> int:
    return floor_part(Fraction(a) + Fraction(j, p - 1))


def floor_identity_double(p: int, j: int) -> bool:
    lhs = 1 + floor_part(Fraction(-1, 6) + Fraction(2 * j, p - 1))
    return lhs == _fl(Fraction(11, 12), j, p) + _fl(Fraction(5, 12), j, p)


def floor_identity_triple(p: int, j: int) -> bool:
    lhs = floor_part(Fraction(1, 2) + Fraction(3 * j, p - 1))
    return lhs == sum(_fl(Fraction(a, 6), j, p) for a in (1, 5, 3))


def floor_identity_sextuple(p: int, j: int) -> bool:
    lhs = floor_part(Fraction(1, 2) + Fraction(6 * j, p - 1))
    rhs = sum(_fl(Fraction(a, 12), j, p) for a in (1, 5, 7, 11, 3, 9))
    return lhs == rhs


def floor_identity_thirds(p: int, j: int) -> bool:
    lhs = floor_part(Fraction(-3 * j, p - 1))
    return lhs == -1 + _fl(Fraction(1, 3), -j, p) + _fl(Fraction(2, 3), -j, p)


def floor_lemma_failures(p: int) -> list[tuple[str, int]]:
    bad = []
    for j in range(p - 1):
        for name, f in (("double", floor_identity_double), ("triple", floor_identity_triple), ("sextuple", floor_identity_sextuple)):
            if not f(p, j):
                bad.append((name, j))
        if j >= 1 and not floor_identity_thirds(p, j):
            bad.append(("thirds", j))
    return bad


__all__ = [
    "ComplexApprox",
    "GaussSumPadic",
    "PrecisionError",
    "binomial",
    "c_p",
    "c_p_numeric",
    "c_p_numeric_table",
    "c_p_padic",
    "c_p_via_surface",
    "char_transform",
    "cp_term_exponents",
    "floor_lemma_failures",
    "frac_part",
    "gauss_sum_numeric",
    "gauss_sum_padic",
    "jacobi_sum_numeric",
    "solve_beta",
]
