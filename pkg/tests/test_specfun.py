import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.integrate
import scipy.special as sps

from minrep.algebra import ExactScalar, Polynomial
from minrep.bessel import itilde, ktilde
from minrep.specfun import (
    LambdaParams,
    ManoParams,
    genfun_coeff,
    laguerre,
    lambda_eval,
    lambda_gram,
    lambda_table,
    mano_exact,
    mano_genfun,
    mano_gram_exact,
    moment_inner_product,
    norm_squared,
)

X = Polynomial.variable("x")


# -- Laguerre ----------------------------------------------------------------


def test_laguerre_symbolic():
    assert laguerre(0) == Polynomial.constant(1, ("x", "mu"))
    L1 = laguerre(1)
    vs = ("x", "mu")
    assert L1 == Polynomial(vs, {(0, 1): 1, (0, 0): 1, (1, 0): -1})  # (mu+1) - x


def test_laguerre_numeric():
    assert laguerre(2, 2) == X * X * Fraction(1, 2) - 4 * X + 6
    assert laguerre(1, 1) == 2 - X


# -- Mano exact route ----------------------------------------------------------


def test_mano_bottom_case():
    assert mano_exact(3, 1, 0) == X + 2
    # bottom value is independent of (odd) mu
    assert mano_exact(7, 1, 0) == X + 2


def test_mano_bottom_closed_sum_up_to_ell_4():
    for ell in range(5):
        closed = Polynomial(
            ("x",),
            {
                (k,): Fraction(
                    math.factorial(2 * ell - k),
                    math.factorial(k) * math.factorial(ell - k),
                )
                for k in range(ell + 1)
            },
        )
        for mu in (1, 3, 5, 7):
            assert mano_exact(mu, ell, 0) == closed


def test_mano_reduces_to_laguerre():
    for mu in (1, 3, 5):
        for j in range(11):
            assert mano_exact(mu, 0, j) == laguerre(j, mu)
            assert X * mano_exact(mu, -1, j) == laguerre(j, mu)


def test_mano_top_term():
    m = mano_exact(3, 1, 2)
    exps, c = m.leading_term()
    assert exps == (3,) and c == ExactScalar(Fraction(1, 2))
    for mu in (1, 5):
        for ell in (-1, 0, 2):
            for j in (0, 3, 6):
                exps, c = mano_exact(mu, ell, j).leading_term()
                assert exps == (j + ell,)
                assert c == ExactScalar(Fraction((-1) ** j, math.factorial(j)))


def test_mano_grade_and_denominator_invariant():
    for mu in (1, 3, 5, 7):
        for ell in (-1, 0, 1, 2):
            for j in range(8):
                M = mano_exact(mu, ell, j)
                bound = (
                    math.factorial(j)
                    * 2 ** (mu + j + max(ell, 0))
                    * math.factorial(j + mu)
                )
                for _, c in M.terms().items():
                    frac = c.as_fraction()  # raises if any sqrtpi grade survives
                    assert bound % frac.denominator == 0


def test_mano_exact_validation():
    with pytest.raises(ValueError):
        mano_exact(2, 1, 0)  # even mu is off the exact path
    with pytest.raises(ValueError):
        mano_exact(3, -2, 0)
    with pytest.raises(ValueError):
        ManoParams(-3.0, 0, 1).validate_float()  # excluded mu


# -- Cauchy extraction ---------------------------------------------------------


def test_genfun_coeff_geometric():
    assert genfun_coeff(lambda t: 1.0 / (1.0 - t), 3, 0.5, 256) == pytest.approx(
        1.0, abs=1e-12
    )


def test_genfun_coeff_exponential():
    assert genfun_coeff(cmath.exp, 2, 0.5, 256) == pytest.approx(0.5, abs=1e-12)


def test_genfun_coeff_exact_on_polynomials():
    # for a polynomial evaluator the trapezoidal Cauchy rule is exact up
    # to rounding: every aliased coefficient is zero
    from hypothesis import given, settings
    from hypothesis import strategies as st

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.integers(min_value=-20, max_value=20), min_size=1, max_size=6
        ),
        st.integers(min_value=0, max_value=5),
    )
    def check(coeffs, j):
        def ev(t):
            acc = 0.0 + 0.0j
            for c in reversed(coeffs):
                acc = acc * t + c
            return acc

        want = float(coeffs[j]) if j < len(coeffs) else 0.0
        got = genfun_coeff(ev, j, 0.5, 64)
        assert got == pytest.approx(want, abs=1e-10)

    check()


def test_genfun_coeff_preconditions():
    with pytest.raises(ValueError):
        genfun_coeff(cmath.exp, 2, rho=1.0)
    with pytest.raises(ValueError):
        genfun_coeff(cmath.exp, 2, n_nodes=100)
    with pytest.raises(ValueError):
        genfun_coeff(cmath.exp, -1)


def test_mano_genfun_matches_exact_single():
    ve = float(mano_exact(3, 1, 1).evaluate({"x": 1.0}))
    assert mano_genfun(3, 1, 1, 1.0) == pytest.approx(ve, rel=1e-9)


def test_mano_genfun_matches_exact_sweep():
    rng = np.random.default_rng(3)
    for _ in range(10):
        mu = int(rng.choice([1, 3, 5]))
        ell = int(rng.integers(-1, 3))
        j = int(rng.integers(0, 5))
        x = float(rng.uniform(0.3, 3.0))
        ve = float(mano_exact(mu, ell, j).evaluate({"x": x}))
        vc = mano_genfun(mu, ell, j, x)
        assert vc == pytest.approx(ve, rel=1e-9, abs=1e-12)


# -- Lambda family ---------------------------------------------------------------


def test_lambda_bottom_value():
    for mu, nu in ((1, 1), (2, 0), (2, 2), (3, 3)):
        x = 1.3
        order = Fraction(nu, 2) if nu % 2 else nu // 2
        ref = ktilde(order, x) / math.gamma(mu / 2.0 + 1.0)
        assert lambda_eval(mu, nu, 0, x) == pytest.approx(ref, rel=1e-11)


def test_lambda_mano_relation():
    # elementary route vs Cauchy route at (mu, ell, j, x) = (3, 1, 2, 0.7)
    ve = lambda_eval(3, 3, 2, 0.7, method="elementary")
    vc = lambda_eval(3, 3, 2, 0.7, method="cauchy")
    assert vc == pytest.approx(ve, rel=1e-9)
    # and the relation written out through the Mano polynomial itself
    x = 0.7
    pref = 2**3 * math.gamma(2 + 2.0) / math.gamma(2 + 4.0)
    direct = pref * x**-3 * math.exp(-x) * float(mano_exact(3, 1, 2).evaluate({"x": 2 * x}))
    assert ve == pytest.approx(direct, rel=1e-12)


def test_lambda_partial_sums_match_bessel_product():
    t = 0.3
    for x in (0.5, 1.0, 2.0):
        rhs = (1 - t) ** -2.0 * itilde(1, t * x / (1 - t)) * ktilde(0, x / (1 - t))
        tab = lambda_table(2, 0, 30, np.array([x]))
        lhs = math.fsum(t**j * tab[j, 0] for j in range(31))
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_lambda_eval_domain():
    with pytest.raises(ValueError):
        lambda_eval(2, 0, 1, -1.0)
    with pytest.raises(ValueError):
        lambda_eval(2, 0, 1, 0.0)


# -- norms and Gram matrices -----------------------------------------------------


def test_moment_norm_example():
    # ||M_0^{3,1}||^2 = integral (x+2)^2 x e^{-x} = 3! + 4*2! + 4*1! = 18
    assert norm_squared("mano", (3, 1, 0)) == ExactScalar(18)


def test_laguerre_norm_bottom():
    for mu in (0, 1, 4):
        assert norm_squared("laguerre", (0, mu)) == ExactScalar(math.factorial(mu))


def test_moment_inner_product_diverging_exponent():
    inv_x = Polynomial(("x",), {(-1,): 1})
    with pytest.raises(ValueError):
        moment_inner_product(inv_x, inv_x, 0)


def test_norm_hypothesis_violations():
    with pytest.raises(ValueError):
        norm_squared("mano", (1, 1, 0))  # mu < 2 ell + 1
    with pytest.raises(ValueError):
        norm_squared("lambda", LambdaParams(2, 1, 0))  # parity mismatch
    with pytest.raises(ValueError):
        norm_squared("lambda", LambdaParams(-1, -1, 0))


def test_quadrature_matches_exact_moments():
    rng = np.random.default_rng(5)
    for _ in range(10):
        mu = int(rng.choice([3, 5, 7]))
        ell = int(rng.integers(0, (mu - 1) // 2 + 1))
        j = int(rng.integers(0, 5))
        exact = float(norm_squared("mano", (mu, ell, j)))
        coeffs = [(e[0], float(c)) for e, c in sorted(mano_exact(mu, ell, j).terms().items())]

        def poly_val(x):
            return math.fsum(c * x**e for e, c in coeffs)

        quad, err = scipy.integrate.quad(
            lambda x: poly_val(x) ** 2 * x ** (mu - 2 * ell) * math.exp(-x),
            0.0,
            np.inf,
            epsabs=1e-12,
            epsrel=1e-12,
            limit=200,
        )
        assert quad == pytest.approx(exact, rel=1e-10)


def test_mano_gram_exactly_diagonal_small():
    gram = mano_gram_exact(3, 1, 4)
    for i in range(5):
        for k in range(5):
            if i != k:
                assert not gram[i][k]
            else:
                assert gram[i][k].as_fraction() > 0


@pytest.mark.slow
def test_lambda_gram_offdiagonals():
    g = lambda_gram(2, 2, 6)
    d = np.sqrt(np.abs(np.diag(g)))
    off = g - np.diag(np.diag(g))
    assert float(np.max(np.abs(off) / np.outer(d, d))) < 1e-8


def test_genfun_route_equals_exact_route_on_lambda():
    # odd-nu lambda values: elementary (exact-polynomial) vs Cauchy for
    # several parameters
    for (mu, nu, j, x) in ((1, 1, 1, 0.5), (3, 1, 3, 1.2), (5, 3, 2, 2.0)):
        a = lambda_eval(mu, nu, j, x, method="elementary")
        b = lambda_eval(mu, nu, j, x, method="cauchy")
        assert b == pytest.approx(a, rel=1e-9)
