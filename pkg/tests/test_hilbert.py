from fractions import Fraction
from random import Random

import pytest

from kmult.errors import NotEventuallyPolynomial
from kmult.groebner import buchberger, standard_monomial_count
from kmult.hilbert import (NumericalPolynomial, delta, fit_numerical_polynomial,
                           lech_check, prop7_check, samuel_multiplicity,
                           theorem8_sandwich)
from kmult.modules import PresentedModule, SubmoduleModule, box_quotient_dim
from kmult.poly import Polynomial, VectorPolynomial, monomials_of_degree

Z = Polynomial.variable(2, 0)
W = Polynomial.variable(2, 1)


def V(p):
    return VectorPolynomial.wrap(p)


def test_fit_triangular_numbers():
    samples = [(k, k * (k + 1) // 2) for k in range(1, 9)]
    fit = fit_numerical_polynomial(samples, 2)
    assert fit.coeffs == (0, 1, 1)
    assert fit.onset == 1


def test_fit_constant():
    samples = [(k, 5) for k in range(1, 9)]
    fit = fit_numerical_polynomial(samples, 2)
    assert fit.coeffs == (5, 0, 0)
    assert fit.true_degree == 0


def test_fit_rejects_alternating_growth():
    samples = [(k, 2 * k if k % 2 == 0 else 2 * k - 1) for k in range(1, 9)]
    with pytest.raises(NotEventuallyPolynomial):
        fit_numerical_polynomial(samples, 2)


def test_fit_detects_late_onset():
    def f(k):
        return k * (k + 1) // 2 if k >= 4 else 0
    samples = [(k, f(k)) for k in range(1, 10)]
    fit = fit_numerical_polynomial(samples, 2)
    assert fit.onset == 4


def test_delta_of_triangular():
    fit = NumericalPolynomial(2, (0, 1, 1), 1)
    d = delta(fit)
    assert d.coeffs == (1, 1)
    assert all(d(k) == k + 1 for k in range(10))


def test_delta_of_constant_is_zero():
    assert delta(NumericalPolynomial(0, (5,), 1)).coeffs == (0,)


def test_delta_preserves_reduced_leading_coefficient():
    rng = Random(21)
    for _ in range(5):
        coeffs = tuple(rng.randint(-4, 4) for _ in range(3))
        if coeffs[2] == 0:
            coeffs = coeffs[:2] + (3,)
        p = NumericalPolynomial(2, coeffs, 1)
        assert delta(p).reduced_leading_coefficient == p.reduced_leading_coefficient


def test_delta_matches_pointwise_differences():
    p = NumericalPolynomial(2, (2, -1, 4), 1)
    d = delta(p)
    for k in range(12):
        assert d(k) == p(k + 1) - p(k)


def test_samuel_free_module():
    assert samuel_multiplicity(PresentedModule(2, 1, [])).e == 1


def test_samuel_vanishing_origin():
    m = SubmoduleModule(2, 1, [V(Z), V(W)])
    rep = samuel_multiplicity(m)
    assert rep.e == 1
    # fit is (k+1)(k+2)/2 - 1
    assert all(rep.fit(k) == (k + 1) * (k + 2) // 2 - 1 for k in range(1, 9))


def test_samuel_nonpoly_is_zero():
    m = PresentedModule(2, 1, [V(Z * Z - W * W)])
    rep = samuel_multiplicity(m)
    assert rep.e == 0
    assert rep.fit.true_degree == 1


def test_samuel_scaling_with_powered_ideals():
    """e(J_k, M) = e(I^k, M) = k^d e(I, M) for k = 2, 3."""
    models = [PresentedModule(2, 1, []),
              SubmoduleModule(2, 1, [V(Z), V(W)]).presented()]
    for pres in models:
        e = samuel_multiplicity(pres).e
        for k in (2, 3):
            ik = [(m, _general_ideal_power_dim(pres, k, m, powered=False))
                  for m in range(1, 9)]
            fit_ik = fit_numerical_polynomial(ik, 2)
            assert fit_ik.reduced_leading_coefficient == k * k * e
            jk = [(m, _general_ideal_power_dim(pres, k, m, powered=True))
                  for m in range(1, 9)]
            fit_jk = fit_numerical_polynomial(jk, 2)
            assert fit_jk.reduced_leading_coefficient == k * k * e


def _general_ideal_power_dim(pres, k, m, powered):
    """dim M / J^m M for J = I^k (powered=False) or J = (z^k, w^k)."""
    gens = list(pres.relations)
    if powered:
        monos = [(k * a, k * b) for (a, b) in _compositions(m)]
    else:
        monos = list(monomials_of_degree(2, k * m))
    for j in range(pres.gens):
        for mono in monos:
            gens.append(VectorPolynomial.from_term_dict(
                2, pres.gens, {(j, mono): Fraction(1)}))
    gb = buchberger(gens, d=2, n=pres.gens)
    return standard_monomial_count(gb).total


def _compositions(m):
    return [(a, m - a) for a in range(m + 1)]


def test_lech_free_module():
    rep = lech_check(PresentedModule(2, 1, []), 8)
    assert rep.e == 1 and rep.box_limit == 1
    assert rep.envelope_ok
    for row in rep.rows:
        assert row.box_ratio == 1


def test_lech_vanishing_origin():
    rep = lech_check(SubmoduleModule(2, 1, [V(Z), V(W)]), 12)
    assert rep.e == rep.box_limit == 1
    assert rep.envelope_ok
    # gap to the diagonal limit decays like C/k with a small constant
    final = rep.rows[-1]
    assert abs(final.box_ratio - 1) <= Fraction(3, 12)


def test_lech_nonpoly_limits_vanish():
    rep = lech_check(PresentedModule(2, 1, [V(Z * Z - W * W)]), 12)
    assert rep.e == rep.box_limit == 0
    assert rep.envelope_ok


def test_sandwich_free_exact():
    rep = theorem8_sandwich(PresentedModule(2, 1, []))
    assert rep.e == 1
    assert all(c.lower_ok and c.slack == 0 for c in rep.cells)


def test_sandwich_vanishing_origin():
    m = SubmoduleModule(2, 1, [V(Z), V(W)])
    rep = theorem8_sandwich(m)
    assert box_quotient_dim(m, (3, 3)) >= 9
    assert all(c.lower_ok for c in rep.cells)
    assert not rep.diagonal_growth


def test_sandwich_nonpoly():
    m = PresentedModule(2, 1, [V(Z * Z - W * W)])
    rep = theorem8_sandwich(m)
    assert rep.e == 0
    assert all(c.lower_ok for c in rep.cells)
    assert rep.c_hat <= 8
    assert not rep.diagonal_growth


def test_sandwich_lower_bound_on_battery(battery):
    for m in battery[:6]:
        rep = theorem8_sandwich(m)
        assert all(c.lower_ok for c in rep.cells)


def test_prop7_free_module_equality():
    rep = prop7_check(PresentedModule(2, 1, []))
    assert rep.shifted_ok and rep.chain_ok
    for k, lhs, rhs, ok in rep.rows:
        assert lhs == rhs == k + 1
    # the unshifted literal inequality fails on the free module
    assert rep.literal_failures


def test_prop7_nonpoly():
    rep = prop7_check(PresentedModule(2, 1, [V(Z * Z - W * W)]))
    assert rep.shifted_ok
    # both sides of the shifted inequality equal 2 at every k
    assert all(lhs == rhs == 2 for _, lhs, rhs, _ in rep.rows)
    assert rep.dim_mod_i == 1 and rep.e_quotient == 0 and rep.e_module == 0
    assert rep.chain_ok


def test_prop7_vanishing_origin():
    rep = prop7_check(SubmoduleModule(2, 1, [V(Z), V(W)]))
    assert rep.shifted_ok
    assert (rep.dim_mod_i, rep.e_quotient, rep.e_module) == (2, 1, 1)


def test_samuel_scaling_asymmetric_powers():
    """e((z^2, w^3), M) = 6 e(I, M): the power-scaling law with t != s."""
    for pres in [PresentedModule(2, 1, []),
                 SubmoduleModule(2, 1, [V(Z), V(W)]).presented()]:
        e = samuel_multiplicity(pres).e
        samples = []
        for m in range(1, 9):
            gens = list(pres.relations)
            monos = [(2 * a, 3 * (m - a)) for a in range(m + 1)]
            for j in range(pres.gens):
                for mono in monos:
                    gens.append(VectorPolynomial.from_term_dict(
                        2, pres.gens, {(j, mono): Fraction(1)}))
            gb = buchberger(gens, d=2, n=pres.gens)
            samples.append((m, standard_monomial_count(gb).total))
        fit = fit_numerical_polynomial(samples, 2)
        assert fit.reduced_leading_coefficient == 6 * e
