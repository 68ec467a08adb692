"""Invariants of finitely generated invariant subspaces of H_d^2 x C^N.

The symmetric Fock space (Drury-Arveson space) has orthogonal
monomials with |z^a|^2 = a!/|a|!, so the degree-k projection P_k is
plain truncation and all rank-type invariants are exact rational
computations.  Only the trace of P_k P_M is estimated in floating
point; everything else here is integer-valued and certified.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from random import Random

import numpy as np

from .errors import (CrossCheckMismatch, IllConditioned, NotCofinite,
                     NotContained, ValidationError)
from .groebner import buchberger, membership, standard_monomial_count
from .hilbert import fit_numerical_polynomial, samuel_multiplicity
from .koszul import fredholm_index
from .linalg import RatMatrix
from .modules import (SubmoduleModule, _as_presented, box_quotient_dim,
                      dim_mod_max_ideal)
from .poly import (Polynomial, VectorPolynomial, count_monomials_up_to,
                   grevlex_key, mono_deg, mono_div, mono_divides, monomials_up_to)
from .util import stabilized_difference

log = logging.getLogger(__name__)


class FockSubmodule(SubmoduleModule):
    """Invariant subspace of H_d^2 x C^N given by polynomial generators."""


def monomial_norm_sq(alpha) -> Fraction:
    """Squared Fock norm of z^alpha: alpha! / |alpha|!."""
    num = 1
    for a in alpha:
        num *= factorial(a)
    return Fraction(num, factorial(mono_deg(alpha)))


def _span_columns(m: FockSubmodule, alpha_max: int, truncate_to=None):
    """Term dicts of z^alpha g_i for |alpha| <= alpha_max, in input order."""
    cols = []
    for alpha in monomials_up_to(m.d, alpha_max):
        for g in m.generators:
            v = g.scale(Polynomial.monomial(m.d, alpha))
            if truncate_to is not None:
                v = v.truncate(truncate_to)
            if not v.is_zero():
                cols.append(v.term_dict())
    return cols


def phi(m: FockSubmodule, k: int) -> int:
    """dim P_{k-1} M, the dimension of the degree < k part of M."""
    if k < 1:
        raise ValueError("k must be >= 1")
    key = ("phi", k)
    if key not in m._cache:
        cols = _span_columns(m, k - 1, truncate_to=k - 1)
        index = {}
        for comp in range(m.n):
            for mono in monomials_up_to(m.d, k - 1):
                index[(comp, mono)] = len(index)
        entries = {}
        for j, col in enumerate(cols):
            for term, c in col.items():
                entries[(index[term], j)] = c
        mat = RatMatrix(len(index), len(cols), entries)
        m._cache[key] = mat.rank()
    return m._cache[key]


def _phi_fit(m: FockSubmodule, shift: int = 0):
    d = m.d
    samples = [(k, phi(m, k + shift)) for k in range(1, 2 * d + 5)]
    return fit_numerical_polynomial(samples, d)


def sigma(m: FockSubmodule) -> int:
    """Reduced leading coefficient of k -> dim P_{k-1} M."""
    return _phi_fit(m).reduced_leading_coefficient


def _ball_point(rng: Random, d: int):
    den = rng.choice([31, 37, 41, 43, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97])
    while True:
        pt = tuple(Fraction(rng.randint(-(den // 3), den // 3), den) for _ in range(d))
        if sum(x * x for x in pt) < 1 and any(pt):
            return pt


def _poly_exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """p / q when the division is exact (used inside Bareiss pivoting)."""
    d = p.d
    rem = dict(p.terms)
    out = {}
    qm, qc = q.leading()
    while rem:
        mono = max(rem, key=grevlex_key)
        c = rem[mono]
        if not mono_divides(qm, mono):
            raise ArithmeticError("inexact polynomial division")
        step_mono = mono_div(mono, qm)
        step_c = c / qc
        out[step_mono] = step_c
        piece = Polynomial.monomial(d, step_mono, step_c) * q
        for mm, cc in piece.terms.items():
            nv = rem.get(mm, Fraction(0)) - cc
            if nv:
                rem[mm] = nv
            else:
                rem.pop(mm, None)
    return Polynomial(d, out)


def poly_matrix_rank(rows) -> int:
    """Rank over the fraction field Q(z1..zd), by fraction-free elimination."""
    if not rows:
        return 0
    grid = [list(r) for r in rows]
    nr, nc = len(grid), len(grid[0])
    d = grid[0][0].d
    prev = Polynomial.one(d)
    r = 0
    rank = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if not grid[i][c].is_zero():
                if piv is None or len(grid[i][c].terms) < len(grid[piv][c].terms):
                    piv = i
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        pv = grid[r][c]
        for i in range(r + 1, nr):
            if grid[i][c].is_zero() and prev == Polynomial.one(d):
                continue
            for j in range(c + 1, nc):
                num = pv * grid[i][j] - grid[i][c] * grid[r][j]
                grid[i][j] = _poly_exact_div(num, prev) if not num.is_zero() \
                    else Polynomial.zero(d)
            grid[i][c] = Polynomial.zero(d)
        prev = pv
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


def _evaluation_rows(m: FockSubmodule):
    return [[g.components[i] for g in m.generators] for i in range(m.n)]


def fibre_dimension(m: FockSubmodule, seed: int = 0) -> int:
    """Generic rank of the evaluation matrix [g_1(x) ... g_m(x)].

    Two random small-rational points inside the ball are sampled and the
    answer is confirmed by the symbolic rank over Q(z); a persistent
    disagreement would be a bug, not bad luck.
    """
    key = ("fd", seed)
    if key in m._cache:
        return m._cache[key]
    rows = _evaluation_rows(m)
    sym = poly_matrix_rank(rows)
    rng = Random(seed)
    agree = 0
    for _ in range(8):
        pt = _ball_point(rng, m.d)
        mat = RatMatrix.from_rows([[p.evaluate(pt) for p in row] for row in rows])
        if mat.rank() == sym:
            agree += 1
            if agree == 2:
                break
    if agree < 2:
        raise CrossCheckMismatch("numeric evaluation ranks never matched symbolic rank")
    m._cache[key] = sym
    return sym


def coinvariant_hilbert(m: FockSubmodule, k: int) -> int:
    """dim H/I^k H for H = M-perp: N dim F_{k-1} minus dim P_{k-1} M."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return m.n * count_monomials_up_to(m.d, k - 1) - phi(m, k)


def coinvariant_samuel(m: FockSubmodule) -> int:
    d = m.d
    samples = [(k, coinvariant_hilbert(m, k)) for k in range(1, 2 * d + 5)]
    fit = fit_numerical_polynomial(samples, d)
    return fit.reduced_leading_coefficient


def curvature(m: FockSubmodule) -> int:
    """Curvature invariant of the coinvariant d-contraction.

    Computed as the Samuel multiplicity of M-perp and cross-checked
    against N - fibre dimension; the boundary integral definition is
    never evaluated.
    """
    k1 = coinvariant_samuel(m)
    k2 = m.n - fibre_dimension(m)
    if k1 != k2:
        raise CrossCheckMismatch(f"curvature routes disagree: {k1} vs {k2}")
    return k1


@dataclass
class AdditivityRecord:
    e_module: int
    e_coinvariant: int
    n: int

    @property
    def ok(self):
        return self.e_module + self.e_coinvariant == self.n


def additivity_check(m: FockSubmodule) -> AdditivityRecord:
    if dim_mod_max_ideal(m) is None:
        raise NotCofinite("dim M/IM must be finite")
    e = samuel_multiplicity(m).e
    e_perp = coinvariant_samuel(m)
    return AdditivityRecord(e, e_perp, m.n)


@dataclass
class MonotonicityRecord:
    e_small: int
    e_big: int
    n: int

    @property
    def ok(self):
        return self.e_small <= self.e_big <= self.n


def monotonicity_check(m1: FockSubmodule, m2: FockSubmodule) -> MonotonicityRecord:
    if (m1.d, m1.n) != (m2.d, m2.n):
        raise ValidationError("modules live in different spaces")
    gb2 = m2.gb()
    for g in m1.generators:
        if not membership(g, gb2):
            raise NotContained("a generator of the smaller module is not in the larger")
    return MonotonicityRecord(samuel_multiplicity(m1).e, samuel_multiplicity(m2).e, m1.n)


@dataclass
class OccupyingFamily:
    epsilon: int
    component_indices: tuple
    witnesses: tuple       # the selected generators h^1..h^eps
    diagonalizers: tuple   # g^j = sum_i cofactor_{ij} h^i
    det: Polynomial


def _det(rows):
    n = len(rows)
    if n == 0:
        return None
    d = rows[0][0].d
    if n == 1:
        return rows[0][0]
    total = Polynomial.zero(d)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def occupying_family(m: FockSubmodule, seed: int = 0) -> OccupyingFamily:
    """A coordinate subspace the module occupies, with exact diagonalizers.

    Finds eps generators and eps components whose minor has nonzero
    determinant, then combines the generators through the cofactor
    matrix so that the projection of g^j onto the chosen components is
    det * e_j, verified by polynomial arithmetic.
    """
    from itertools import combinations
    eps = fibre_dimension(m, seed)
    rng = Random(seed + 1)
    pt = _ball_point(rng, m.d)
    best = None
    for comps in combinations(range(m.n), eps):
        for gens in combinations(range(len(m.generators)), eps):
            rows = [[m.generators[i].components[j] for j in comps] for i in gens]
            det = _det(rows)
            if det is not None and not det.is_zero():
                best = (comps, gens, rows, det)
                break
        if best:
            break
    if best is None:
        raise CrossCheckMismatch("no nonzero minor of size eps found")
    comps, gens, rows, det = best
    n_sel = len(gens)
    diagonalizers = []
    for j in range(n_sel):
        acc = VectorPolynomial.zero(m.d, m.n)
        for i in range(n_sel):
            minor = [r[:j] + r[j + 1:] for t, r in enumerate(rows) if t != i]
            cof = _det(minor) if minor else Polynomial.one(m.d)
            if (i + j) % 2 == 1:
                cof = -cof
            acc = acc + m.generators[gens[i]].scale(cof)
        diagonalizers.append(acc)
        for jj, comp in enumerate(comps):
            want = det if jj == j else Polynomial.zero(m.d)
            if acc.components[comp] != want:
                raise CrossCheckMismatch("diagonalizer projection identity failed")
    return OccupyingFamily(eps, comps,
                           tuple(m.generators[i] for i in gens),
                           tuple(diagonalizers), det)


@dataclass
class TraceRankRatios:
    trace_ratio: float
    rank_ratio: Fraction
    exact: bool
    condition: float
    k: int
    span_degree: int


def trace_projection_ratio(m: FockSubmodule, k: int, span_degree: int,
                           cond_cap: float = 1e10) -> TraceRankRatios:
    """d! tr(P_k P_M)/k^d against d! rank(P_k P_M)/k^d.

    The rank side is exact (it is dim P_k M).  The trace side projects
    each Fock-orthonormal monomial of degree <= k onto the span of
    z^a g_i, |a| <= span_degree; when every span column is a single
    monomial the projection is closed-form and the trace is exact too.
    """
    gen_deg = max(g.degree() for g in m.generators)
    if span_degree < k + gen_deg + 4:
        raise ValueError("span degree too small relative to k")
    d = m.d
    fact = factorial(d)
    rank_side = phi(m, k + 1)
    rank_ratio = Fraction(fact * rank_side, k ** d)
    cols = _span_columns(m, span_degree)
    if all(len(c) == 1 for c in cols):
        present = {next(iter(c)) for c in cols}
        trace = sum(1 for t in present if mono_deg(t[1]) <= k)
        ratio = Fraction(fact * trace, k ** d)
        return TraceRankRatios(float(ratio), rank_ratio, True, 1.0, k, span_degree)
    index = {}
    for col in cols:
        for term in col:
            if term not in index:
                index[term] = len(index)
    weights = np.array([float(monomial_norm_sq(mono)) ** 0.5
                        for (_, mono) in index], dtype=float)
    mat = np.zeros((len(index), len(cols)))
    for j, col in enumerate(cols):
        for term, c in col.items():
            r = index[term]
            mat[r, j] = float(c) * weights[r]
    # column scaling does not move the span; it tames the conditioning
    norms = np.sqrt((mat * mat).sum(axis=0))
    mat = mat / norms
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    tol = s[0] * max(mat.shape) * np.finfo(float).eps if s.size else 0.0
    r = int((s > tol).sum())
    # exact zero modes (syzygies among the shifted generators) are not
    # ill-conditioning; measure the spectrum above the rank cutoff
    cond = float(s[0] / s[r - 1]) if r else 1.0
    rows_k = [idx for (comp, mono), idx in index.items() if mono_deg(mono) <= k]
    if cond > cond_cap:
        log.warning("trace Gram condition %.3g exceeds cap; retrying in extended precision",
                    cond)
        q = _householder_basis(mat.astype(np.longdouble))
        if q is None:
            raise IllConditioned(f"span condition {cond:.3g} beyond extended precision")
        trace = float((q[rows_k, :] ** 2).sum())
    else:
        trace = float((u[rows_k, :r] ** 2).sum())
    return TraceRankRatios(fact * trace / k ** d, rank_ratio, False, cond, k, span_degree)


def _householder_basis(mat):
    """Orthonormal column basis in extended precision (fallback path)."""
    m = np.array(mat, dtype=np.longdouble)
    norms0 = np.sqrt((m * m).sum(axis=0))
    scale = norms0.max() if norms0.size else 1.0
    if scale == 0:
        return None
    cols = []
    for j in range(m.shape[1]):
        v = m[:, j].copy()
        for q in cols:
            v -= (q @ v) * q
        for q in cols:
            v -= (q @ v) * q
        nrm = np.sqrt((v * v).sum())
        if nrm > 1e-14 * scale:
            cols.append(v / nrm)
    if not cols:
        return None
    return np.stack(cols, axis=1)


def localized_codim(m: FockSubmodule, point) -> int:
    """dim M/((z - p1)M + (w - p2)M) at a rational point of the ball."""
    if m.d != 2:
        raise ValueError("localized codimension is a d = 2 operation")
    pt = tuple(Fraction(x) for x in point)
    if sum(x * x for x in pt) >= 1:
        raise ValueError("point must lie in the open unit ball")
    pres = _as_presented(m)
    g = pres.gens
    shifts = []
    for i in range(2):
        p = Polynomial.variable(2, i) - Polynomial.constant(2, pt[i])
        for l in range(g):
            comps = [Polynomial.zero(2)] * g
            comps[l] = p
            shifts.append(VectorPolynomial(comps))
    gb = buchberger(list(pres.relations) + shifts, d=2, n=g)
    count = standard_monomial_count(gb)
    if not count.finite:
        raise NotCofinite(f"localized quotient infinite at {pt}")
    return count.total


@dataclass
class InvariantDashboard:
    index: int
    samuel_e: int
    line3_limit: int
    localized_codim: int
    rank_limit: int
    trace_limit: float
    fibre_dim: int
    epsilon: int
    point: tuple
    trace_tol: float
    rank_ratio_at_k: float  # same-k comparison value for the trace entry

    @property
    def integer_entries(self):
        return (self.index, self.samuel_e, self.line3_limit, self.localized_codim,
                self.rank_limit, self.fibre_dim, self.epsilon)

    @property
    def trace_gap(self):
        return abs(self.trace_limit - self.rank_ratio_at_k)

    @property
    def consistent(self):
        vals = set(self.integer_entries)
        return len(vals) == 1 and self.trace_gap <= self.trace_tol


def dashboard(m: FockSubmodule, k_trace: int = 12, span_degree: int = 24,
              trace_tol: float = 0.25, seed: int = 0) -> InvariantDashboard:
    """All eight numerical invariants of the module, each by its own route."""
    if m.d != 2:
        raise ValueError("the dashboard is a d = 2 operation")
    if dim_mod_max_ideal(m) is None:
        log.warning("dim M/IM infinite for a finitely generated module: bug signal")
    idx = fredholm_index(m)
    e = samuel_multiplicity(m).e
    line3_samples = {k: box_quotient_dim(m, (1, k)) for k in range(1, 11)}
    line3, _ = stabilized_difference(line3_samples)
    if line3 is None:
        raise CrossCheckMismatch("dim M/(zM + w^k M) growth did not stabilize")
    rng = Random(seed + 17)
    pt = _ball_point(rng, 2)
    loc = localized_codim(m, pt)
    rank_limit = _phi_fit(m, shift=1).reduced_leading_coefficient
    ratios = trace_projection_ratio(m, k_trace, span_degree)
    fd = fibre_dimension(m, seed)
    eps = occupying_family(m, seed).epsilon
    board = InvariantDashboard(idx, e, line3, loc, rank_limit, ratios.trace_ratio,
                               fd, eps, pt, trace_tol, float(ratios.rank_ratio))
    if not board.consistent:
        raise CrossCheckMismatch(f"dashboard entries disagree: {board.integer_entries}, "
                                 f"trace {board.trace_limit} vs rank {board.rank_ratio_at_k}")
    return board
