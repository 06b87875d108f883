"""Prime-field tables: primitive root, discrete logs, quadratic character.

Multiplicative characters are handled as exponents: the character omega^j
sends x to zeta_{p-1}^(j * dlog[x]).  Complex values only appear where a sum
is finally evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# marker returned by char_exponent for x = 0 (character value 0)
ZERO = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p, by trial over 2, 3, 4, ..."""
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root found for {p}")


@dataclass(frozen=True, eq=False)
class PrimeFieldContext:
    p: int
    g: int
    dlog: np.ndarray = field(repr=False)
    quad: np.ndarray = field(repr=False)
    # g^k mod p for k in [0, p-2]
    powers: np.ndarray = field(repr=False)

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    def phi(self, x: int) -> int:
        return int(self.quad[x % self.p])

    def inv(self, x: int) -> int:
        return pow(x % self.p, -1, self.p)


@lru_cache(maxsize=64)
def build_context(p: int) -> PrimeFieldContext:
    """Build (and cache) the immutable table context for the prime p."""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise ValueError(f"p must be an integer, got {p!r}")
    p = int(p)
    if p < 5 or not is_prime(p):
        raise ValueError(f"p={p} is not a prime >= 5")
    g = primitive_root(p)
    powers = np.empty(p - 1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        powers[k] = x
        x = x * g % p
    dlog = np.full(p, -1, dtype=np.int64)
    dlog[powers] = np.arange(p - 1, dtype=np.int64)
    quad = np.zeros(p, dtype=np.int64)
    # even discrete log <=> square
    quad[powers[0::2]] = 1
    quad[powers[1::2]] = -1
    for arr in (powers, dlog, quad):
        arr.setflags(write=False)
    return PrimeFieldContext(p=p, g=g, dlog=dlog, quad=quad, powers=powers)


def quadratic_char(ctx: PrimeFieldContext, x: int) -> int:
    return int(ctx.quad[x % ctx.p])


def char_exponent(ctx: PrimeFieldContext, j: int, x: int):
    """Exponent e with omega^j(x) = zeta_{p-1}^e, or ZERO when x = 0."""
    x %= ctx.p
    if x == 0:
        return ZERO
    return (j * int(ctx.dlog[x])) % (ctx.p - 1)


def char_value(ctx: PrimeFieldContext, j: int, x: int) -> complex:
    e = char_exponent(ctx, j, x)
    if e is ZERO:
        return 0j
    return complex(np.exp(2j * np.pi * e / (ctx.p - 1)))


def character_order(ctx: PrimeFieldContext, j: int) -> int:
    return (ctx.p - 1) // math.gcd(j % (ctx.p - 1), ctx.p - 1)


def parse_primes(text: str) -> list[int]:
    """Parse '5..50', '5,7,11' or a mix like '5..20,31' into the primes >= 5 listed."""
    out: set[int] = set()
    for chunk in str(text).split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise ValueError(f"empty prime range {chunk!r}")
            out.update(q for q in range(max(lo_i, 5), hi_i + 1) if is_prime(q))
        else:
            q = int(chunk)
            if q < 5 or not is_prime(q):
                raise ValueError(f"{q} is not a prime >= 5")
            out.add(q)
    if not out:
        raise ValueError(f"no primes >= 5 in {text!r}")
    return sorted(out)
