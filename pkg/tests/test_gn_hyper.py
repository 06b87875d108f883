import math
from fractions import Fraction as F

import pytest

from surfstat import gn_hyper as gh
from surfstat.char_sums import cp_term_exponents
from surfstat.curves import surface_A_fast
from surfstat.ff_core import build_context
from surfstat.padic_core import PadicNumber, frac_part, gamma_cache, gamma_p_naive, teich_int

P1 = [7, 13, 19, 31, 37, 43]
P2 = [5, 11, 17, 23, 29, 41]


def reference_gn(p, N, params, t):
    """Term-by-term evaluation with naive Gamma_p and PadicNumber arithmetic."""
    n = params.n
    total = PadicNumber.zero(p, N + 1)
    w_t = teich_int(p, t, N + 1)
    M = p ** (N + 1)
    for a in range(p - 1):
        q = F(a, p - 1)
        term = PadicNumber.from_int(p, N + 1, (-1) ** (a * n) * pow(pow(w_t, a, M), -1, M))
        for x in params.a:
            fx = frac_part(x)
            term = term * PadicNumber(p, N + 1, 0, gamma_p_naive(p, N + 1, frac_part(fx - q)))
            term = term / PadicNumber(p, N + 1, 0, gamma_p_naive(p, N + 1, fx))
            term = term * PadicNumber.from_int(p, N + 1, -p) ** (-math.floor(fx - q))
        for x in params.b:
            fx = frac_part(-x)
            term = term * PadicNumber(p, N + 1, 0, gamma_p_naive(p, N + 1, frac_part(fx + q)))
            term = term / PadicNumber(p, N + 1, 0, gamma_p_naive(p, N + 1, fx))
            term = term * PadicNumber.from_int(p, N + 1, -p) ** (-math.floor(fx + q))
        total = total + term
    return total * PadicNumber.from_fraction(p, N + 1, F(-1, p - 1))


@pytest.mark.parametrize("p", [7, 13])
def test_gn_matches_reference(p):
    ctx = build_context(p)
    for t in range(1, p):
        got = gh.gn_eval(ctx, gh.G3_PARAMS, t, 3)
        ref = reference_gn(p, 3, gh.G3_PARAMS, t)
        assert got.congruent(ref)


def test_gn_at_zero():
    ctx = build_context(7)
    assert gh.gn_eval(ctx, gh.G3_PARAMS, 0).is_zero
    assert gh.gn_eval(build_context(11), gh.G9_PARAMS, 0).is_zero


def test_parameter_validation():
    with pytest.raises(ValueError):
        gh.GnParameters((F(1, 3),), ())
    with pytest.raises(ValueError):
        gh.G3_PARAMS.check_prime(3)


def test_residue_class_and_lambda_one():
    with pytest.raises(ValueError):
        gh.g3_eval(build_context(11), 2)
    with pytest.raises(ValueError):
        gh.g9_eval(build_context(13), 2)
    with pytest.raises(ValueError):
        gh.g3_eval(build_context(13), 1)


def test_permutation_invariance():
    p = 13
    ctx = build_context(p)
    perm = gh.GnParameters(gh.G3_PARAMS.a[::-1], gh.G3_PARAMS.b[::-1])
    for t in range(1, p):
        assert gh.gn_eval(ctx, perm, t).congruent(gh.gn_eval(ctx, gh.G3_PARAMS, t))


@pytest.mark.parametrize("p", P1)
def test_term_exponents_match_cp(p):
    # after removing the factor p^2 (p-1) the 3G3 terms have the same (-p)-exponent profile as C_p
    tab = gh.term_table(p, 3, gh.G3_PARAMS)
    assert min(tab.exps) >= -1
    assert max(tab.exps) - min(tab.exps) == (max(cp_term_exponents(p)) - min(cp_term_exponents(p))) // (p - 1)


def test_single_sweep_reused():
    p = 19
    ctx = build_context(p)
    gh.term_table.cache_clear()
    cache = gamma_cache(p, 3)
    before = cache.sweeps
    for lam in range(2, p):
        gh.g3_eval(ctx, lam)
    assert cache.sweeps - before <= 1
    assert gh.term_table.cache_info().hits >= p - 3


@pytest.mark.parametrize("p", P1)
def test_corrected_cp_identity(p):
    ctx = build_context(p)
    for lam in range(p):
        if lam != 1:
            assert gh.g3_cp_identity(ctx, lam, corrected=True)[0], lam


@pytest.mark.parametrize("p", P1)
def test_printed_cp_identity_mostly_fails(p):
    ctx = build_context(p)
    ok = sum(gh.g3_cp_identity(ctx, lam)[0] for lam in range(p) if lam != 1)
    assert ok <= 3


@pytest.mark.parametrize("p", [7, 13, 19])
def test_gamma_third_cubed_is_not_minus_one(p):
    assert not gh.gamma_third_cubed(p, 3).congruent(PadicNumber.from_int(p, 3, -1))


@pytest.mark.parametrize("p", [13, 19, 31])
def test_conjugate_twist_fails(p):
    ctx = build_context(p)
    bad = [lam for lam in range(p) if lam != 1 and not gh.g3_cp_identity(ctx, lam, corrected=True, conjugate_twist=True)[0]]
    assert bad


@pytest.mark.parametrize("p", P1)
def test_corrected_chain(p):
    ctx = build_context(p)
    for lam in range(2, p):
        assert gh.g3_chain_corrected(ctx, lam)[0], lam
        assert abs(gh.decoded_g3_scaled(ctx, lam)) <= 3 * p


@pytest.mark.parametrize("p", P2)
def test_g9_cp_identity(p):
    ctx = build_context(p)
    for lam in range(p):
        if lam != 1:
            assert gh.g9_cp_identity(ctx, lam)[0], lam


@pytest.mark.parametrize("p", P2)
def test_printed_g9_list_fails(p):
    ctx = build_context(p)
    ok = sum(gh.g9_cp_identity(ctx, lam, params=gh.G9_PARAMS_PRINTED)[0] for lam in range(2, p))
    assert ok < (p - 2) // 2


@pytest.mark.parametrize("p", P2)
def test_g9_chain(p):
    ctx = build_context(p)
    for lam in range(2, p):
        ok, got, target = gh.g9_chain(ctx, lam)
        assert ok, lam
        assert abs(got) <= 3 * p
    # lam = 1 maps to t = 0: the function vanishes while -A_p(1) = 1
    assert gh.gn_eval(ctx, gh.G9_PARAMS, 0).is_zero
    assert -surface_A_fast(ctx, 1) == 1


@pytest.mark.parametrize("p", P2)
def test_kappa(p):
    assert gh.kappa(p, 3).congruent(PadicNumber.from_int(p, 3, -build_context(p).phi(-2)))


@pytest.mark.parametrize("p", P1)
def test_psi6_sign(p):
    assert build_context(p).phi(-1) * gh.psi6_minus_one(p) == 1
