"""Truncated p-adic numbers, Teichmuller lifts and Morita's p-adic gamma.

A nonzero PadicNumber is p^v * u with p not dividing u, known modulo
p^(v + N).  Zero carries v = INF and stores its absolute precision in N
(the value is known to be 0 modulo p^N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

INF = math.inf

ZpRational = Fraction


class PrecisionError(ArithmeticError):
    pass


def zp_rational(x, p: int) -> Fraction:
    """Coerce x to a Fraction and check that it lies in Z_p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not in Z_{p}: denominator divisible by {p}")
    return x


def floor_part(x) -> int:
    return math.floor(Fraction(x))


def frac_part(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


def _split(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@dataclass(frozen=True)
class PadicNumber:
    p: int
    N: int
    v: float | int
    u: int

    # construction

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> "PadicNumber":
        return cls(p, abs_prec, INF, 0)

    @classmethod
    def from_int(cls, p: int, N: int, n: int) -> "PadicNumber":
        """n known to relative precision N (exact integers are known to any precision)."""
        if n == 0:
            return cls.zero(p, N)
        v, u = _split(n, p)
        return cls(p, N, v, u % p**N)

    @classmethod
    def from_residue(cls, p: int, residue: int, abs_prec: int, shift: int = 0) -> "PadicNumber":
        """The value p^shift * r where r is known modulo p^abs_prec."""
        M = p**abs_prec
        r = residue % M
        if r == 0:
            return cls.zero(p, abs_prec + shift)
        v, u = _split(r, p)
        return cls(p, abs_prec - v, v + shift, u)

    @classmethod
    def from_fraction(cls, p: int, N: int, x) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        vn, un = _split(x.numerator, p)
        vd, ud = _split(x.denominator, p)
        M = p**N
        return cls(p, N, vn - vd, un * pow(ud, -1, M) % M)

    # basic queries

    @property
    def is_zero(self) -> bool:
        return self.v == INF

    @property
    def abs_prec(self) -> int:
        """k such that the value is known modulo p^k."""
        return self.N if self.is_zero else int(self.v) + self.N

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PadicNumber(p={self.p}, 0 mod p^{self.N})"
        return f"PadicNumber(p={self.p}, p^{self.v}*{self.u} mod p^{self.abs_prec})"

    def _check(self, other: "PadicNumber") -> None:
        if not isinstance(other, PadicNumber):
            raise TypeError(f"expected PadicNumber, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def _lift(self, other):
        if isinstance(other, PadicNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return PadicNumber.from_fraction(self.p, max(self.abs_prec, 1) + 1, Fraction(int(other)) if isinstance(other, np.integer) else other)
        return NotImplemented

    # arithmetic

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.N, self.v, (-self.u) % self.p**self.N)

    def __add__(self, other) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.abs_prec, other.abs_prec)
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(p, prec)
        if self.is_zero or other.is_zero:
            x = other if self.is_zero else self
            if x.v >= prec:
                return PadicNumber.zero(p, prec)
            return PadicNumber(p, prec - int(x.v), x.v, x.u % p ** (prec - int(x.v)))
        m = int(min(self.v, other.v))
        if prec <= m:
            return PadicNumber.zero(p, prec)
        s = self.u * p ** (int(self.v) - m) + other.u * p ** (int(other.v) - m)
        # result precision shrinks by the cancellation depth
        return PadicNumber.from_residue(p, s, prec - m, shift=m)

    __radd__ = __add__

    def __sub__(self, other) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "PadicNumber":
        return (-self) + other

    def __mul__(self, other) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.is_zero or other.is_zero:
            if self.is_zero and other.is_zero:
                return PadicNumber.zero(p, self.N + other.N)
            z, x = (self, other) if self.is_zero else (other, self)
            return PadicNumber.zero(p, z.N + int(x.v))
        N = min(self.N, other.N)
        return PadicNumber(p, N, self.v + other.v, self.u * other.u % p**N)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by the p-adic zero marker")
        p = self.p
        if self.is_zero:
            return PadicNumber.zero(p, self.N - int(other.v))
        N = min(self.N, other.N)
        M = p**N
        return PadicNumber(p, N, self.v - other.v, self.u * pow(other.u, -1, M) % M)

    def __pow__(self, k: int) -> "PadicNumber":
        if k < 0:
            return PadicNumber.from_int(self.p, self.N, 1) / (self ** (-k))
        out = PadicNumber.from_int(self.p, self.N, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison and decoding

    def congruent(self, other, prec: int | None = None) -> bool:
        """True when self and other agree modulo p^prec (default: the common known precision)."""
        other = self._lift(other)
        k = min(self.abs_prec, other.abs_prec) if prec is None else prec
        if k > min(self.abs_prec, other.abs_prec):
            raise PrecisionError(f"requested precision p^{k} exceeds what is known")
        d = self - other
        return d.is_zero or d.v >= k

    def residue(self, k: int | None = None) -> int:
        """The integer representative in [0, p^k) of an element of Z_p."""
        k = self.abs_prec if k is None else k
        if k > self.abs_prec:
            raise PrecisionError(f"value only known modulo p^{self.abs_prec}")
        if self.is_zero:
            return 0
        if self.v < 0:
            raise ValueError("value is not a p-adic integer")
        M = self.p**k
        return self.u * self.p ** int(self.v) % M

    def decode(self, bound: int) -> int:
        """Balanced-residue lift of an integer known to satisfy |V| <= bound."""
        k = self.abs_prec
        M = self.p**k
        if M <= 2 * bound:
            raise PrecisionError(f"p^{k} = {M} cannot separate integers of size {bound}")
        if self.is_zero:
            return 0
        r = self.residue(k)
        return r - M if r > M // 2 else r

    def to_fraction_mod(self) -> tuple[int, int]:
        """(r, s) with value = r / p^s, r known modulo p^(abs_prec + s)."""
        if self.is_zero:
            return 0, 0
        s = max(0, -int(self.v))
        return self.u * self.p ** (int(self.v) + s), s


def balanced(r: int, M: int) -> int:
    r %= M
    return r - M if r > M // 2 else r


# Teichmuller lifts


def teich_int(p: int, t: int, N: int) -> int:
    M = p**N
    x = t % M
    if x % p == 0:
        raise ValueError("Teichmuller lift of 0 is not a unit")
    while True:
        y = pow(x, p, M)
        if y == x:
            return x
        x = y


def teichmuller(ctx, t: int, N: int) -> PadicNumber:
    p = ctx.p if hasattr(ctx, "p") else int(ctx)
    if t % p == 0:
        raise ValueError("teichmuller(0) is undefined; callers use the zero character value")
    return PadicNumber(p, N, 0, teich_int(p, t, N))


def teich_power_table(ctx, N: int) -> list[int]:
    """W[k] = omega(g)^k mod p^N for k in [0, p-2]; omega^a(x) = W[a*dlog x mod (p-1)]."""
    p = ctx.p
    M = p**N
    w = teich_int(p, ctx.g, N)
    out = [1] * (p - 1)
    for k in range(1, p - 1):
        out[k] = out[k - 1] * w % M
    return out


# p-adic gamma


def gamma_rep(x, p: int, N: int) -> int:
    """The integer m in (0, p^N] congruent to x modulo p^N."""
    x = zp_rational(x, p)
    M = p**N
    m = x.numerator * pow(x.denominator, -1, M) % M
    return m if m else M


_BLOCK = 1 << 18


def _sweep_numpy(p: int, M: int, reps: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    idx = 0
    carry = 1
    top = reps[-1]
    # P(k) = prod_{j <= k, p !| j} j; Gamma_p(m) needs P(m - 1)
    while idx < len(reps) and reps[idx] == 1:
        out[1] = 1
        idx += 1
    start = 1
    while start < top:
        end = min(start + _BLOCK, top)
        arr = np.arange(start, end, dtype=np.int64)
        arr[arr % p == 0] = 1
        arr %= M
        s = 1
        n = end - start
        while s < n:
            arr[s:] = arr[s:] * arr[:-s] % M
            s <<= 1
        arr = arr * carry % M
        while idx < len(reps) and reps[idx] - 1 < end:
            out[reps[idx]] = int(arr[reps[idx] - 1 - start])
            idx += 1
        carry = int(arr[-1])
        start = end
    return out


def _sweep_python(p: int, M: int, reps: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    acc = 1
    j = 1
    for m in reps:
        while j < m:
            if j % p:
                acc = acc * j % M
            j += 1
        out[m] = acc
    return out


def gamma_sweep(p: int, N: int, reps: Iterable[int]) -> dict[int, int]:
    """Gamma_p(m) mod p^N for integer representatives m in (0, p^N], in one pass."""
    M = p**N
    rs = sorted(set(int(m) for m in reps))
    if not rs:
        return {}
    if rs[0] < 1 or rs[-1] > M:
        raise ValueError("representatives must lie in (0, p^N]")
    if M * M < 2**62 and rs[-1] > 4096:
        prods = _sweep_numpy(p, M, rs)
    else:
        prods = _sweep_python(p, M, rs)
    return {m: (-prods[m] if m & 1 else prods[m]) % M for m in rs}


class GammaCache:
    """Memoized Gamma_p units mod p^N, filled by batched sweeps."""

    def __init__(self, p: int, N: int):
        self.p = p
        self.N = N
        self.M = p**N
        self.values: dict[int, int] = {}
        self.hits = 0
        self.misses = 0
        self.sweeps = 0

    def units(self, args) -> dict:
        args = list(args)
        reps = {a: gamma_rep(a, self.p, self.N) for a in args}
        missing = {m for m in reps.values() if m not in self.values}
        self.misses += len(missing)
        self.hits += len(set(reps.values())) - len(missing)
        if missing:
            self.values.update(gamma_sweep(self.p, self.N, missing))
            self.sweeps += 1
        return {a: self.values[m] for a, m in reps.items()}

    def unit(self, x) -> int:
        return self.units([x])[Fraction(x) if not isinstance(x, Fraction) else x]


_CACHES: dict[tuple[int, int], GammaCache] = {}


def gamma_cache(p: int, N: int) -> GammaCache:
    key = (p, N)
    if key not in _CACHES:
        _CACHES[key] = GammaCache(p, N)
    return _CACHES[key]


def gamma_p_batch(p: int, N: int, args) -> dict:
    """Table arg -> Gamma_p(arg) as a unit PadicNumber, from a single sweep."""
    args = [zp_rational(a, p) for a in args]
    units = gamma_cache(p, N).units(args)
    return {a: PadicNumber(p, N, 0, units[a]) for a in args}


def gamma_p(p: int, N: int, x) -> PadicNumber:
    x = zp_rational(x, p)
    return gamma_p_batch(p, N, [x])[x]


def gamma_p_naive(p: int, N: int, x) -> int:
    """Per-argument evaluation straight from the restricted factorial (test oracle)."""
    M = p**N
    m = gamma_rep(x, p, N)
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % M
    return (-acc if m & 1 else acc) % M


def a0(x, p: int) -> int:
    """a_0(x) in {1..p} with a_0(x) = x mod p."""
    x = zp_rational(x, p)
    r = x.numerator * pow(x.denominator, -1, p) % p
    return r if r else p


def gamma_reflection_check(p: int, N: int, x) -> bool:
    x = zp_rational(x, p)
    c = gamma_cache(p, N)
    u = c.units([x, 1 - x])
    M = p**N
    return u[x] * u[1 - x] % M == (-1) ** a0(x, p) % M


def gamma_multiplication_check(p: int, N: int, m: int, x) -> bool:
    """prod_{h<m} G((x+h)/m) = omega(m)^r G(x) prod_{0<h<m} G(h/m), x = r/(p-1)."""
    if m % p == 0 or m < 1:
        raise ValueError(f"multiplier m={m} must be a positive integer prime to {p}")
    x = Fraction(x)
    r = x * (p - 1)
    if r.denominator != 1 or not 0 <= r <= p - 1:
        raise ValueError(f"x={x} must be r/(p-1) with 0 <= r <= p-1")
    M = p**N
    c = gamma_cache(p, N)
    lhs_args = [(x + h) / m for h in range(m)]
    rhs_args = [x] + [Fraction(h, m) for h in range(1, m)]
    u = c.units(lhs_args + rhs_args)
    lhs = math.prod(u[a] for a in lhs_args) % M
    rhs = pow(teich_int(p, m, N), int(r), M) * math.prod(u[a] for a in rhs_args) % M
    return lhs == rhs


def gamma_prod2_check(p: int, N: int, t: int, j: int) -> bool:
    """omega(t)^(-tj) G(<-tj/(p-1)>) prod_{0<h<t} G(h/t) = prod_{0<h<=t} G(<h/t - j/(p-1)>)."""
    if t % p == 0 or t < 1:
        raise ValueError(f"t={t} must be a positive integer prime to {p}")
    if not 0 <= j <= p - 2:
        raise ValueError(f"j={j} out of range [0, p-2]")
    M = p**N
    c = gamma_cache(p, N)
    q = Fraction(j, p - 1)
    left = [frac_part(-t * q)] + [Fraction(h, t) for h in range(1, t)]
    right = [frac_part(Fraction(h, t) - q) for h in range(1, t + 1)]
    u = c.units(left + right)
    lhs = pow(teich_int(p, t, N), -t * j, M) * math.prod(u[a] for a in left) % M
    rhs = math.prod(u[a] for a in right) % M
    return lhs == rhs
