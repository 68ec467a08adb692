"""Numerical polynomials, Samuel multiplicities, and growth checks.

A numerical polynomial is an integer combination of binomial
coefficient functions C(k, i).  Hilbert functions of the module models
are fitted on their sampled tails; the reduced leading coefficient c_d
is the Samuel multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import NotEventuallyPolynomial
from .modules import (box_quotient_dim, dim_mod_max_ideal, ideal_power_quotient_dim,
                      quotient_by_first)
from .util import binomial


@dataclass(frozen=True)
class NumericalPolynomial:
    """Integer coefficients in the binomial basis C(k, 0..degree)."""

    degree: int
    coeffs: tuple  # ints, length degree + 1
    onset: int     # first sampled k from which the fit is exact

    def __call__(self, k: int) -> int:
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            total += c * binomial(k, i)
        assert total.denominator == 1
        return int(total)

    @property
    def reduced_leading_coefficient(self) -> int:
        return self.coeffs[self.degree]

    @property
    def true_degree(self) -> int:
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                return i
        return 0

    def __repr__(self):
        return f"NumericalPolynomial(coeffs={self.coeffs}, onset={self.onset})"


def fit_numerical_polynomial(samples, d: int) -> NumericalPolynomial:
    """Fit the tail of consecutive samples by a degree <= d numerical polynomial.

    The last d + 1 samples determine the candidate; the sample before
    them must agree as stabilization evidence, and every coefficient
    must be an integer.  The onset is propagated backwards as far as
    the samples keep matching.
    """
    samples = sorted(samples)
    if len(samples) < 2 * d + 4:
        raise ValueError(f"need at least {2 * d + 4} samples")
    ks = [k for k, _ in samples]
    if any(b - a != 1 for a, b in zip(ks, ks[1:])):
        raise ValueError("samples must be at consecutive k")
    tail = samples[-(d + 1):]
    coeffs = _solve_binomial(tail, d)
    if any(c.denominator != 1 for c in coeffs):
        raise NotEventuallyPolynomial("fit has non-integer binomial coefficients")
    poly = [int(c) for c in coeffs]

    def value(k):
        return sum(c * binomial(k, i) for i, c in enumerate(poly))

    check_k, check_v = samples[-(d + 2)]
    if value(check_k) != check_v:
        raise NotEventuallyPolynomial(
            f"sample at k={check_k} breaks the tail fit ({check_v} != {value(check_k)})")
    onset = check_k
    for k, v in reversed(samples[:-(d + 2)]):
        if value(k) != v:
            break
        onset = k
    return NumericalPolynomial(d, tuple(poly), onset)


def _solve_binomial(points, d):
    """Solve sum_i c_i C(k, i) = v through d + 1 points, exactly."""
    n = d + 1
    rows = [[binomial(k, i) for i in range(n)] + [Fraction(v)] for k, v in points]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def delta(p: NumericalPolynomial) -> NumericalPolynomial:
    """Difference polynomial (delta f)(k) = f(k+1) - f(k).

    In the binomial basis this is a plain shift, so the reduced leading
    coefficient survives unchanged at one degree lower.
    """
    if p.degree < 1:
        return NumericalPolynomial(0, (0,), p.onset)
    return NumericalPolynomial(p.degree - 1, p.coeffs[1:], p.onset)


@dataclass
class SamuelReport:
    e: int
    fit: NumericalPolynomial
    samples: tuple

    def __repr__(self):
        return f"SamuelReport(e={self.e}, fit={self.fit})"


def hilbert_samples(module, k_max: int):
    return tuple((k, ideal_power_quotient_dim(module, k)) for k in range(1, k_max + 1))


def samuel_multiplicity(module, k_max=None) -> SamuelReport:
    """Reduced leading coefficient of the Hilbert function k -> dim M/I^k M."""
    d = module.d
    if k_max is None:
        k_max = 2 * d + 4
    samples = hilbert_samples(module, k_max)
    fit = fit_numerical_polynomial(samples, d)
    e = fit.reduced_leading_coefficient
    if dim_mod_max_ideal(module) < e:
        raise AssertionError("dim M/IM >= e violated; fit is wrong")
    return SamuelReport(e, fit, samples)


@dataclass
class LechRow:
    k: int
    box: int
    phi: int
    box_ratio: Fraction
    phi_ratio: Fraction
    gap: Fraction


@dataclass
class LechReport:
    rows: list
    e: int
    box_limit: int
    envelope_constant: Fraction  # max over k of k * |box/k^d - e|
    envelope_ok: bool            # final |box/k^d - e| within envelope/k

    @property
    def limits_agree(self):
        return self.box_limit == self.e


def lech_check(module, k_max: int = 12) -> LechReport:
    """Both normalized colength sequences of Lech's formula, tabulated."""
    d = module.d
    fact = factorial(d)
    sam = samuel_multiplicity(module)
    rows = []
    slacks = []
    for k in range(1, k_max + 1):
        box = box_quotient_dim(module, (k,) * d)
        phi = ideal_power_quotient_dim(module, k)
        br = Fraction(box, k ** d)
        pr = Fraction(fact * phi, k ** d)
        rows.append(LechRow(k, box, phi, br, pr, abs(br - pr)))
        slacks.append(k * abs(br - sam.e))
    envelope = max(slacks)
    final = rows[-1]
    envelope_ok = abs(final.box_ratio - sam.e) <= Fraction(envelope, k_max)
    box_limit = _nearest_int(final.box_ratio)
    return LechReport(rows, sam.e, box_limit, envelope, envelope_ok)


def _nearest_int(x: Fraction) -> int:
    fl = x.numerator // x.denominator
    return fl if (x - fl) <= Fraction(1, 2) else fl + 1


@dataclass
class SandwichCell:
    powers: tuple
    quotient: int
    lower_ok: bool
    slack: Fraction  # (q / prod(n) - e) * min(n)


@dataclass
class SandwichReport:
    e: int
    cells: list
    c_hat: Fraction
    diagonal_slacks: list
    diagonal_growth: bool  # True if the tail of the diagonal sets a new max


def theorem8_sandwich(module, grid=None) -> SandwichReport:
    """Exact lower bound n1...nd * e <= box quotient, and the slack envelope."""
    d = module.d
    if grid is None:
        grid = [tuple(v) for v in _square_grid(d, 4)]
    sam = samuel_multiplicity(module)
    e = sam.e
    cells = []
    for powers in grid:
        q = box_quotient_dim(module, powers)
        prod = 1
        for n in powers:
            prod *= n
        slack = (Fraction(q, prod) - e) * min(powers)
        cells.append(SandwichCell(powers, q, q >= prod * e, slack))
    c_hat = max(c.slack for c in cells)
    diag = [c.slack for c in cells if len(set(c.powers)) == 1]
    growth = False
    if len(diag) >= 3:
        half = len(diag) // 2
        head_max = max(diag[:half + 1])
        growth = any(s > head_max for s in diag[half + 1:])
    return SandwichReport(e, cells, c_hat, diag, growth)


def _square_grid(d, size):
    if d == 2:
        return [(a, b) for a in range(1, size + 1) for b in range(1, size + 1)]
    return [(k,) * d for k in range(1, size + 1)]


@dataclass
class Prop7Report:
    rows: list                 # (k, lhs phi_{M/z1M}(k+1), rhs delta phi(k), ok)
    literal_failures: list     # k where the unshifted inequality fails
    dim_mod_i: int
    e_quotient: int
    e_module: int

    @property
    def shifted_ok(self):
        return all(ok for *_, ok in self.rows)

    @property
    def chain_ok(self):
        return self.dim_mod_i >= self.e_quotient >= self.e_module


def prop7_check(module, cap: int = 10) -> Prop7Report:
    """Quotient-by-z1 Hilbert inequality, in its index-shifted form.

    The literal unshifted comparison is also tabulated; on the free
    module it fails at every k, which is why the shifted form is the
    one asserted.
    """
    if module.d < 2:
        raise ValueError("needs d >= 2")
    quo = quotient_by_first(module)
    phi = {k: ideal_power_quotient_dim(module, k) for k in range(1, cap + 2)}
    phi_q = {k: ideal_power_quotient_dim(quo, k) for k in range(1, cap + 2)}
    rows = []
    literal = []
    for k in range(1, cap + 1):
        dphi = phi[k + 1] - phi[k]
        rows.append((k, phi_q[k + 1], dphi, phi_q[k + 1] >= dphi))
        if phi_q[k] < dphi:
            literal.append(k)
    e_quotient = samuel_multiplicity(quo).e
    e_module = samuel_multiplicity(module).e
    return Prop7Report(rows, literal, dim_mod_max_ideal(module), e_quotient, e_module)
