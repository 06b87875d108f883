import cmath
import math
import random

import pytest

from surfstat import char_sums as cs
from surfstat.ff_core import build_context, is_prime

PRIMES_50 = [p for p in range(5, 50) if is_prime(p)]


def brute_gauss(p, j):
    ctx = build_context(p)
    return sum(cmath.exp(2j * math.pi * (j * int(ctx.dlog[x]) % (p - 1)) / (p - 1)) * cmath.exp(2j * math.pi * x / p) for x in range(1, p))


def test_trivial_gauss_sum():
    for p in [5, 7, 101]:
        g = cs.gauss_sum_numeric(build_context(p), 0)
        assert g.close_to(-1)


def test_quadratic_gauss_sum_p5():
    g = cs.gauss_sum_numeric(build_context(5), 2)
    assert g.close_to(math.sqrt(5))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 101, 199])
def test_gauss_norm(p):
    ctx = build_context(p)
    for j in range(1, p - 1):
        g = cs.gauss_sum_numeric(ctx, j)
        assert abs(abs(g) ** 2 - p) <= 10 * (2 * math.sqrt(p) * g.err + g.err**2) + 1e-9


def test_gauss_matches_brute_force():
    for p in [7, 13]:
        ctx = build_context(p)
        for j in range(p - 1):
            assert abs(cs.gauss_sum_numeric(ctx, j).value - brute_gauss(p, j)) < 1e-9


def test_jacobi_examples():
    ctx = build_context(11)
    assert cs.jacobi_sum_numeric(ctx, 0, 0).close_to(9)
    for a in range(1, 10):
        for b in range(1, 10):
            if (a + b) % 10:
                assert abs(abs(cs.jacobi_sum_numeric(ctx, a, b)) - math.sqrt(11)) < 1e-9


@pytest.mark.parametrize("p", [5, 7, 13])
def test_gauss_jacobi_relation(p):
    ctx = build_context(p)
    n = p - 1
    G = [cs.gauss_sum_numeric(ctx, j) for j in range(n)]
    for a in range(n):
        for b in range(n):
            rhs = G[a] * G[b] / G[(a + b) % n]
            if (a + b) % n == 0:
                rhs = rhs + n * (-1) ** b
            J = cs.jacobi_sum_numeric(ctx, a, b)
            assert abs(J.value - rhs.value) <= J.err + rhs.err + 1e-9


def test_binomial_normalization():
    ctx = build_context(13)
    # (A over B) = B(-1)/p J(A, conj B)
    b = cs.binomial(ctx, 3, 5)
    j = cs.jacobi_sum_numeric(ctx, 3, (-5) % 12)
    assert abs(b.value - (-1) * j.value / 13) < 1e-12


def test_gross_koblitz_trivial():
    g = cs.gauss_sum_padic(build_context(7), 0, 3)
    assert g.e == 0 and g.unit.decode(1) == -1


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_gross_koblitz_pairing(p):
    ctx = build_context(p)
    for j in range(1, p - 1):
        prod = cs.gauss_sum_padic(ctx, j, 3) * cs.gauss_sum_padic(ctx, p - 1 - j, 3)
        assert prod.e == p - 1
        assert prod.to_padic().decode(p) == p * (-1) ** j


def test_gross_koblitz_quadratic_p5():
    g = cs.gauss_sum_padic(build_context(5), 2, 4)
    assert (g * g).to_padic().decode(5) == 5


def test_unbalanced_exponent_rejected():
    ctx = build_context(7)
    with pytest.raises(ArithmeticError):
        (cs.gauss_sum_padic(ctx, 1) * cs.gauss_sum_padic(ctx, 2)).to_padic()


@pytest.mark.parametrize("p", PRIMES_50)
def test_cp_exponents_divisible(p):
    ex = cs.cp_term_exponents(p)
    assert all(e % (p - 1) == 0 and e > 0 for e in ex)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cp_modes_agree(p):
    ctx = build_context(p)
    for b in range(p):
        exact = cs.c_p(ctx, b, "padic")
        assert cs.c_p(ctx, b, "numeric").close_to(exact)
        assert abs(exact) <= cs.cp_bound(p)
        if b and cs.solve_beta(ctx, b):
            assert cs.c_p(ctx, b, "via_surface") == exact


def test_cp_at_zero_and_its_surface_counterpart():
    # C_p(0) = 0 with chi(0) = 0, while the surface at beta = 0 (lambda = 1) has A_p = -1
    for p in [5, 7, 11, 13]:
        ctx = build_context(p)
        assert cs.c_p(ctx, 0, "padic") == 0
        assert cs.c_p(ctx, 0, "via_surface") == ctx.phi(-1) * p * (p - 1)


@pytest.mark.parametrize("p", [53, 101, 199])
def test_cp_modes_sampled(p):
    ctx = build_context(p)
    rng = random.Random(p)
    for b in rng.sample(range(1, p), 20):
        exact = cs.c_p(ctx, b, "padic")
        assert cs.c_p(ctx, b, "numeric").close_to(exact)
        if cs.solve_beta(ctx, b):
            assert cs.c_p(ctx, b, "via_surface") == exact


def test_cp_table_matches_pointwise():
    ctx = build_context(23)
    tab, err = cs.c_p_numeric_table(ctx)
    for b in range(23):
        assert abs(tab[b] - cs.c_p(ctx, b, "padic")) <= err


def test_solve_beta():
    ctx = build_context(13)
    for lam in range(1, 13):
        beta = (1 - lam) * pow(lam * lam, -1, 13) % 13
        assert lam in cs.solve_beta(ctx, beta)
    with pytest.raises(ValueError):
        bad = next(b for b in range(1, 13) if not cs.solve_beta(ctx, b))
        cs.c_p(ctx, bad, "via_surface")


def test_unknown_mode():
    with pytest.raises(ValueError):
        cs.c_p(build_context(5), 1, "symbolic")


def test_floor_identities():
    for p in [q for q in range(5, 500) if is_prime(q)]:
        assert cs.floor_lemma_failures(p) == []


def test_complex_approx_guard_band():
    assert cs.ComplexApprox(2.04, 0.0).nearest_int() == 2
    with pytest.raises(ArithmeticError):
        cs.ComplexApprox(2.3, 0.0).nearest_int()
