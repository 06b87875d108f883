"""McCarthy's p-adic hypergeometric function nGn and the two specializations 3G3, 9G9.

    nGn[a; b | t] = -1/(p-1) sum_{a=0}^{p-2} (-1)^{an} conj(omega)^a(t)
                    prod_k Gamma_p(<a_k - a/(p-1)>)/Gamma_p(<a_k>)
                           Gamma_p(<-b_k + a/(p-1)>)/Gamma_p(<-b_k>)
                           (-p)^(-floor(<a_k> - a/(p-1)) - floor(<-b_k> + a/(p-1)))

Everything except conj(omega)^a(t) is independent of t, so it is computed once
per (p, N, parameters) from a single Gamma_p sweep and reused for every t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .char_sums import c_p
from .curves import surface_A_direct, surface_A_fast
from .ff_core import PrimeFieldContext, build_context
from .padic_core import PadicNumber, PrecisionError, frac_part, gamma_cache, teich_power_table, zp_rational

F = Fraction


@dataclass(frozen=True)
class GnParameters:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("parameter lists must be nonempty and of equal length")
        object.__setattr__(self, "a", tuple(F(x) for x in self.a))
        object.__setattr__(self, "b", tuple(F(x) for x in self.b))

    @property
    def n(self) -> int:
        return len(self.a)

    def check_prime(self, p: int) -> None:
        for x in self.a + self.b:
            zp_rational(x, p)


G3_PARAMS = GnParameters((F(1, 3),) * 3, (F(1, 12), F(7, 12), F(5, 6)))

# the nine-term list as printed: the sixth top entry reads 1/3
G9_PARAMS_PRINTED = GnParameters(
    (F(1, 3), F(1, 3), F(1, 3), F(2, 3), F(2, 3), F(1, 3), F(0), F(0), F(0)),
    (F(1, 12), F(5, 12), F(7, 12), F(11, 12), F(1, 6), F(5, 6), F(1, 4), F(3, 4), F(1, 2)),
)
# the list the Gamma_p product formula actually produces: three copies each of 1/3, 2/3, 0
G9_PARAMS = GnParameters(
    (F(1, 3), F(1, 3), F(1, 3), F(2, 3), F(2, 3), F(2, 3), F(0), F(0), F(0)),
    G9_PARAMS_PRINTED.b,
)


@dataclass(frozen=True)
class TermTable:
    p: int
    N: int
    exps: tuple[int, ...]
    units: tuple[int, ...]

    @property
    def min_exp(self) -> int:
        return min(self.exps)


@lru_cache(maxsize=128)
def term_table(p: int, N: int, params: GnParameters) -> TermTable:
    """The t-independent part of every term: (-p)-exponent and unit mod p^N."""
    params.check_prime(p)
    n = params.n
    M = p**N
    qs = [F(a, p - 1) for a in range(p - 1)]
    fa = [frac_part(x) for x in params.a]
    fb = [frac_part(-x) for x in params.b]
    args = set(fa) | set(fb)
    for q in qs:
        args.update(frac_part(x - q) for x in fa)
        args.update(frac_part(x + q) for x in fb)
    G = gamma_cache(p, N).units(args)
    den = 1
    for x in fa + fb:
        den = den * G[x] % M
    den_inv = pow(den, -1, M)
    exps, units = [], []
    for a, q in enumerate(qs):
        e = 0
        u = den_inv
        for x in fa:
            e -= math.floor(x - q)
            u = u * G[frac_part(x - q)] % M
        for x in fb:
            e -= math.floor(x + q)
            u = u * G[frac_part(x + q)] % M
        sign = (a * n + e) % 2
        exps.append(e)
        units.append((-u) % M if sign else u)
    return TermTable(p, N, tuple(exps), tuple(units))


def gn_eval(ctx: PrimeFieldContext, params: GnParameters, t: int, N: int = 3) -> PadicNumber:
    p = ctx.p
    if N < 1:
        raise PrecisionError("precision must be at least 1")
    t %= p
    tab = term_table(p, N, params)
    lo = tab.min_exp
    prec = lo + N
    if t == 0:
        return PadicNumber.zero(p, prec)
    M = p**N
    W = teich_power_table(ctx, N)
    d = int(ctx.dlog[t])
    n = p - 1
    s = 0
    for a in range(n):
        s += tab.units[a] * p ** (tab.exps[a] - lo) * W[(-a * d) % n]
    # -1/(p-1) is a unit
    s = s * (-pow(p - 1, -1, M)) % M
    return PadicNumber.from_residue(p, s, N, shift=lo)


def psi6_minus_one(p: int) -> int:
    return -1 if ((p - 1) // 6) % 2 else 1


def _check_class(p: int, r: int, name: str) -> None:
    if p % 3 != r:
        raise ValueError(f"{name} needs p = {r} mod 3, got p={p}")


def g3_argument(ctx: PrimeFieldContext, lam: int) -> tuple[int, int]:
    """(r, t) = (lam/(1-lam)^2, -4 lam/(1-lam)^2)."""
    p = ctx.p
    r = lam * pow((1 - lam) ** 2 % p, -1, p) % p
    return r, (-4 * r) % p


def g3_eval(ctx: PrimeFieldContext, lam: int, N: int = 3, conjugate_twist: bool = False) -> PadicNumber:
    """psi3(lam/(1-lam)^2) * 3G3[1/3,1/3,1/3; 1/12,7/12,5/6 | -4 lam/(1-lam)^2].

    psi3 = omega^((p-1)/3); conjugate_twist uses its inverse instead.
    """
    p = ctx.p
    _check_class(p, 1, "3G3")
    lam %= p
    if lam == 1:
        raise ValueError("3G3 is undefined at lambda=1")
    r, t = g3_argument(ctx, lam)
    val = gn_eval(ctx, G3_PARAMS, t, N)
    if r == 0:
        return PadicNumber.zero(p, val.abs_prec)
    W = teich_power_table(ctx, N)
    k = (p - 1) // 3 * (-1 if conjugate_twist else 1)
    twist = W[(int(ctx.dlog[r]) * k) % (p - 1)]
    return val * PadicNumber(p, N, 0, twist)


def g9_argument(ctx: PrimeFieldContext, lam: int) -> int:
    p = ctx.p
    return -64 * pow(lam, 3, p) * pow(pow(1 - lam, 6, p), -1, p) % p


def g9_eval(ctx: PrimeFieldContext, lam: int, N: int = 3, params: GnParameters = G9_PARAMS) -> PadicNumber:
    """9G9[... | -64 lam^3/(1-lam)^6]."""
    p = ctx.p
    _check_class(p, 2, "9G9")
    lam %= p
    if lam == 1:
        raise ValueError("9G9 is undefined at lambda=1")
    return gn_eval(ctx, params, g9_argument(ctx, lam), N)


def gamma_third_cubed(p: int, N: int) -> PadicNumber:
    u = gamma_cache(p, N).unit(F(1, 3))
    return PadicNumber(p, N, 0, pow(u, 3, p**N))


def kappa(p: int, N: int) -> PadicNumber:
    args = [F(1, 12), F(11, 12), F(5, 12), F(7, 12), F(1, 4), F(3, 4)]
    units = gamma_cache(p, N).units(args)
    return PadicNumber(p, N, 0, math.prod(units.values()) % p**N)


def decode_escalating(fn, N: int, bound: int, max_extra: int = 2) -> int:
    """Decode fn(N) to an integer; retry at higher precision near the residue boundary."""
    for extra in range(max_extra + 1):
        val = fn(N + extra)
        try:
            r = val.decode(bound)
        except PrecisionError:
            continue
        M = val.p**val.abs_prec
        if abs(r) <= 0.49 * M:
            return r
    raise PrecisionError(f"could not decode within bound {bound}")


def g3_scaled(ctx: PrimeFieldContext, lam: int, N: int = 3) -> PadicNumber:
    """-Gamma_p(1/3)^3 * p * 3G3(lam): equal to -A_p(1-lam) for lam != 0, 1."""
    p = ctx.p
    v = g3_eval(ctx, lam, N)
    return -(gamma_third_cubed(p, N) * v * PadicNumber(p, N, 1, 1))


# identity checks, each returning (ok, lhs, rhs)


def _same(x: PadicNumber, y: PadicNumber) -> bool:
    return x.congruent(y)


def g3_cp_identity(ctx: PrimeFieldContext, lam: int, N: int = 3, corrected: bool = False, conjugate_twist: bool = False):
    """psi6(-1) p^2 (p-1) 3G3(lam) = C_p(lam/(1-lam)^2); corrected adds the factor -Gamma_p(1/3)^3."""
    p = ctx.p
    r, _ = g3_argument(ctx, lam)
    lhs = g3_eval(ctx, lam, N, conjugate_twist) * PadicNumber(p, N, 2, psi6_minus_one(p) * (p - 1) % p**N)
    if corrected:
        lhs = -(lhs * gamma_third_cubed(p, N))
    rhs_int = c_p(ctx, r, "padic")
    rhs = PadicNumber.from_int(p, lhs.abs_prec + 1, rhs_int)
    return _same(lhs, rhs), lhs, rhs_int


def g9_cp_identity(ctx: PrimeFieldContext, lam: int, N: int = 3, params: GnParameters = G9_PARAMS):
    """p (p-1) phi(-1) 9G9(lam) = C_p(lam/(1-lam)^2)."""
    p = ctx.p
    r, _ = g3_argument(ctx, lam)
    lhs = g9_eval(ctx, lam, N, params) * PadicNumber.from_int(p, N, p * (p - 1) * ctx.phi(-1))
    rhs_int = c_p(ctx, r, "padic")
    rhs = PadicNumber.from_int(p, lhs.abs_prec + 1, rhs_int)
    return _same(lhs, rhs), lhs, rhs_int


def g3_chain_as_stated(ctx: PrimeFieldContext, lam: int, N: int = 3):
    """p * 3G3(1-lam) decoded as an integer versus -A_p(lam).  lhs is None if not integral."""
    p = ctx.p
    v = g3_eval(ctx, 1 - lam, N) * PadicNumber(p, N, 1, 1)
    target = -surface_A_fast(ctx, lam)
    if not v.is_zero and v.v < 0:
        return False, None, target
    got = v.decode(3 * p)
    return got == target, got, target


def g3_chain_corrected(ctx: PrimeFieldContext, lam: int, N: int = 3):
    """-Gamma_p(1/3)^3 p 3G3(1-lam) = -A_p(lam) as integers."""
    p = ctx.p
    got = decode_escalating(lambda n: g3_scaled(ctx, 1 - lam, n), N, 3 * p)
    target = -surface_A_fast(ctx, lam)
    return got == target, got, target


def g9_chain(ctx: PrimeFieldContext, lam: int, N: int = 3, params: GnParameters = G9_PARAMS):
    """9G9(1-lam) = -A_p(lam) as integers."""
    p = ctx.p
    got = decode_escalating(lambda n: g9_eval(ctx, 1 - lam, n, params), N, 3 * p)
    target = -surface_A_fast(ctx, lam)
    return got == target, got, target


def decoded_g9(ctx: PrimeFieldContext, lam: int, N: int = 3) -> int:
    return decode_escalating(lambda n: g9_eval(ctx, lam, n), N, 3 * ctx.p)


def decoded_g3_scaled(ctx: PrimeFieldContext, lam: int, N: int = 3) -> int:
    return decode_escalating(lambda n: g3_scaled(ctx, lam, n), N, 3 * ctx.p)


__all__ = [
    "G3_PARAMS",
    "G9_PARAMS",
    "G9_PARAMS_PRINTED",
    "GnParameters",
    "decoded_g3_scaled",
    "decoded_g9",
    "g3_chain_as_stated",
    "g3_chain_corrected",
    "g3_cp_identity",
    "g3_eval",
    "g3_scaled",
    "g9_chain",
    "g9_cp_identity",
    "g9_eval",
    "gamma_third_cubed",
    "gn_eval",
    "kappa",
    "psi6_minus_one",
    "term_table",
]
