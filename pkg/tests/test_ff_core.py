import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfstat.ff_core import (
    ZERO,
    build_context,
    char_exponent,
    char_value,
    character_order,
    is_prime,
    parse_primes,
    primitive_root,
    quadratic_char,
)

SMALL_PRIMES = [p for p in range(5, 500) if is_prime(p)]


def test_p5_tables():
    ctx = build_context(5)
    assert ctx.g == 2
    assert ctx.dlog[4] == 2


def test_p7_square():
    ctx = build_context(7)
    assert quadratic_char(ctx, 2) == 1
    assert quadratic_char(ctx, 3) == -1
    assert quadratic_char(ctx, 0) == 0
    assert quadratic_char(ctx, 1) == 1


@pytest.mark.parametrize("bad", [9, 2, 3, 1, 0, -7, 100])
def test_rejects_non_primes(bad):
    with pytest.raises(ValueError, match=str(bad)):
        build_context(bad)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_table_invariants(p):
    ctx = build_context(p)
    x = np.arange(1, p)
    assert np.all(ctx.powers[ctx.dlog[x]] == x)
    assert sorted(ctx.dlog[1:].tolist()) == list(range(p - 1))
    assert ctx.quad[0] == 0 and ctx.quad.sum() == 0
    euler = np.array([pow(int(v), (p - 1) // 2, p) for v in range(p)])
    mapped = np.where(euler == p - 1, -1, euler)
    assert np.array_equal(mapped, ctx.quad)


def test_primitive_root_order():
    for p in SMALL_PRIMES[:40]:
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1


def test_tables_are_read_only():
    ctx = build_context(11)
    with pytest.raises(ValueError):
        ctx.quad[1] = 5


def test_char_exponent_zero_and_trivial():
    ctx = build_context(13)
    assert char_exponent(ctx, 5, 0) is ZERO
    assert char_value(ctx, 5, 0) == 0
    assert all(char_exponent(ctx, j, 1) == 0 for j in range(12))
    assert all(char_exponent(ctx, 0, x) == 0 for x in range(1, 13))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 31, 97])
def test_orthogonality(p):
    ctx = build_context(p)
    for x in range(1, p):
        s = sum(char_value(ctx, j, x) for j in range(p - 1))
        assert abs(s - (p - 1 if x == 1 else 0)) <= 1e-8 * (p - 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 10**6), st.integers(1, 10**6), st.integers(1, 10**6))
def test_multiplicativity(p, j, x, y):
    ctx = build_context(p)
    x, y = x % p or 1, y % p or 1
    j %= p - 1
    lhs = char_exponent(ctx, j, x * y % p)
    assert lhs == (char_exponent(ctx, j, x) + char_exponent(ctx, j, y)) % (p - 1)


def test_half_exponent_is_quadratic():
    ctx = build_context(29)
    h = ctx.half
    for x in range(1, 29):
        assert (1 if char_exponent(ctx, h, x) == 0 else -1) == quadratic_char(ctx, x)
    assert character_order(ctx, h) == 2
    assert character_order(ctx, 0) == 1
    assert character_order(ctx, 1) == 28


def test_parse_primes():
    assert parse_primes("5..20") == [5, 7, 11, 13, 17, 19]
    assert parse_primes("2..12") == [5, 7, 11]
    assert parse_primes("13,5, 7") == [5, 7, 13]
    for bad in ["4", "9", "20..10", "2..3", ""]:
        with pytest.raises(ValueError):
            parse_primes(bad)
