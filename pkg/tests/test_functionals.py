import numpy as np
import pytest

from starcert.series import (
    Series,
    SchlichtCandidate,
    builtin_candidate,
    make_series,
    max_coeff_diff,
    mul,
    scale,
    shift,
)
from starcert.functionals import (
    ParameterError,
    centered_quotient,
    convex_quotient,
    identity_a_residual,
    identity_b_residual,
    identity_sweep,
    lhs_a,
    lhs_b,
    mocanu_functional,
    random_candidate,
    starlike_quotient,
    unit_part,
    w_func,
    w_log_derivative,
)

N = 48
RNG_SEED = 424242


def identity_f(order=N, n=1):
    return builtin_candidate("identity", order, n=n)


def koebe(order=N):
    return builtin_candidate("koebe", order)


def halfplane(order=N):
    return builtin_candidate("halfplane", order)


def halfplane_quotient(order):
    """(1+z)/(1-z) = 1 + 2z + 2z^2 + ... — the closed form shared by the
    starlike and convex quotients of z/(1-z) and by Koebe's starlike one."""
    arr = np.full(order + 1, 2.0, dtype=np.complex128)
    arr[0] = 1.0
    return Series(arr)


def test_starlike_quotient_identity():
    q = starlike_quotient(identity_f())
    assert q.coeffs[0] == 1 and np.all(q.coeffs[1:] == 0)


def test_starlike_quotient_halfplane():
    q = starlike_quotient(halfplane())
    # z f'/f for z/(1-z) is 1/(1-z)
    assert np.max(np.abs(q.coeffs - 1.0)) < 1e-12


def test_starlike_quotient_koebe():
    q = starlike_quotient(koebe())
    assert max_coeff_diff(q, halfplane_quotient(q.trunc_order)) < 1e-12


def test_convex_quotient_identity():
    q = convex_quotient(identity_f())
    assert q.coeffs[0] == 1 and np.all(q.coeffs[1:] == 0)


def test_convex_quotient_halfplane():
    q = convex_quotient(halfplane())
    assert max_coeff_diff(q, halfplane_quotient(q.trunc_order)) < 1e-12


def test_convex_equals_starlike_of_renormalized_zfprime():
    # z g'/g for g = z f' is exactly 1 + z f''/f'
    rng = np.random.default_rng(RNG_SEED)
    for n in (1, 2, 3):
        f = random_candidate(n, N, rng)
        zfp = Series(np.arange(f.trunc_order + 1) * np.asarray(f.series.coeffs))
        g = SchlichtCandidate(n=n, series=zfp)
        assert max_coeff_diff(convex_quotient(f), starlike_quotient(g)) < 1e-12


def test_w_func_identity_is_zero():
    w = w_func(identity_f())
    assert np.all(w.coeffs == 0)


def test_w_func_koebe_closed_form():
    w = w_func(koebe())
    expected = np.array([0] + [2 * (-1) ** k for k in range(1, w.trunc_order + 1)],
                        dtype=np.complex128)
    assert np.max(np.abs(w.coeffs - expected)) < 1e-12


def test_w_func_vanishing_order_is_exact():
    rng = np.random.default_rng(RNG_SEED + 1)
    for n in (1, 2, 3):
        for _ in range(20):
            w = w_func(random_candidate(n, N, rng))
            assert np.all(w.coeffs[:n] == 0)


def test_lhs_a_identity_is_constant_beta():
    beta, gamma = 0.3 - 0.7j, 1.1 + 0.2j
    s = lhs_a(identity_f(), beta, gamma)
    assert s.coeffs[0] == beta and np.all(s.coeffs[1:] == 0)


def test_lhs_a_constant_term_exact_for_awkward_floats():
    s = lhs_a(koebe(), 0.1, 0.3)
    assert s.coeffs[0] == 0.1


def test_lhs_a_beta_equals_gamma_collapses_to_convex():
    gamma = 0.8 + 0.3j
    f = koebe()
    expected = scale(convex_quotient(f), gamma)
    assert max_coeff_diff(lhs_a(f, gamma, gamma), expected) < 1e-14


def test_lhs_a_linear_structure():
    rng = np.random.default_rng(RNG_SEED + 2)
    f = random_candidate(2, N, rng)
    beta, gamma = 0.4 + 0.1j, -0.6 + 0.9j
    recomputed = scale(starlike_quotient(f), beta - gamma) + scale(
        convex_quotient(f), gamma)
    assert max_coeff_diff(lhs_a(f, beta, gamma), recomputed) < 1e-15


def test_lhs_b_identity_is_zero():
    s = lhs_b(identity_f(), 0.5, 2.0)
    assert np.all(s.coeffs == 0)


def test_lhs_b_beta_zero_reduces_to_convex_part():
    f = koebe()
    gamma = 1.5 - 0.25j
    expected = scale(convex_quotient(f) - 1.0, gamma)
    assert max_coeff_diff(lhs_b(f, 0.0, gamma), expected) == 0.0


def test_lhs_b_vanishing_order():
    rng = np.random.default_rng(RNG_SEED + 3)
    for n in (1, 2, 3):
        s = lhs_b(random_candidate(n, N, rng), 0.7, 0.9j)
        assert np.max(np.abs(s.coeffs[:n])) < 1e-12


def test_proof_identity_a_random_sweep():
    rng = np.random.default_rng(RNG_SEED + 4)
    worst = 0.0
    for n in (1, 2, 3):
        for _ in range(25):
            f = random_candidate(n, N, rng)
            beta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            gamma = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            worst = max(worst, identity_a_residual(f, beta, gamma))
    assert worst < 1e-10


def test_proof_identity_b_random_sweep():
    rng = np.random.default_rng(RNG_SEED + 5)
    worst = 0.0
    for n in (1, 2, 3):
        for _ in range(25):
            f = random_candidate(n, N, rng)
            beta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            gamma = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            worst = max(worst, identity_b_residual(f, beta, gamma))
    assert worst < 1e-10


def test_lhs_b_displayed_quotient_form():
    # lhs_b = -(w/(1+w)) (beta + gamma (z w'/w + 1)), with z w'/w taken
    # after cancelling the common z^n
    rng = np.random.default_rng(RNG_SEED + 6)
    for n in (1, 2, 3):
        f = random_candidate(n, N, rng)
        beta, gamma = 0.3 - 0.2j, 0.8 + 0.5j
        w = w_func(f)
        ratio = w_log_derivative(f)
        quotient = mul(scale(w, -1), (scale(ratio, gamma) + (beta + gamma)))
        # divide by (1+w) via multiplying lhs_b by it instead
        lhs = mul(lhs_b(f, beta, gamma), w + 1.0)
        assert max_coeff_diff(lhs, quotient) < 1e-10


def test_mocanu_alpha_limits():
    f = koebe()
    assert max_coeff_diff(mocanu_functional(f, 0.0), starlike_quotient(f)) == 0.0
    assert max_coeff_diff(mocanu_functional(f, 1.0), convex_quotient(f)) == 0.0


def test_mocanu_halfplane_midpoint():
    # for z/(1-z): (1/2) [1/(1-z) + (1+z)/(1-z)] = (1 + z/2)/(1-z),
    # coefficients 1, 1.5, 1.5, ...
    q = mocanu_functional(halfplane(), 0.5)
    expected = np.full(q.trunc_order + 1, 1.5, dtype=np.complex128)
    expected[0] = 1.0
    assert np.max(np.abs(q.coeffs - expected)) < 1e-12


def test_mocanu_constant_term_exact():
    assert mocanu_functional(koebe(), 0.3).coeffs[0] == 1.0


def test_centered_quotient_trivials():
    f = identity_f()
    assert np.all(centered_quotient(f, 0.5).coeffs == 0)
    q = centered_quotient(f, 0.25)
    assert q.coeffs[0] == -1.0 and np.all(q.coeffs[1:] == 0)


def test_centered_quotient_defining_relation():
    rng = np.random.default_rng(RNG_SEED + 7)
    f = random_candidate(1, N, rng)
    alpha = 0.4
    diff = centered_quotient(f, alpha) - w_func(f)
    assert diff.coeffs[0] == 1.0 - 1.0 / (2 * alpha)
    assert np.all(diff.coeffs[1:] == 0)


def test_centered_quotient_rejects_bad_alpha():
    for alpha in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ParameterError):
            centered_quotient(identity_f(), alpha)


def test_unit_part_has_unit_constant():
    rng = np.random.default_rng(RNG_SEED + 8)
    u = unit_part(random_candidate(2, N, rng))
    assert u.coeffs[0] == 1.0


def test_identity_sweep_summary():
    res = identity_sweep(per_n=5, pairs=2, trunc_order=24, seed=99)
    assert res.functions == 15
    assert res.max_residual_a < 1e-10
    assert res.max_residual_b < 1e-10
