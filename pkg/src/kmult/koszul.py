"""Koszul complexes of power tuples and their homology dimensions.

Two routes are implemented.  The certified route works on a finite
presentation M = A^g/K: each homology group ker/im is presented by
syzygy computations (kernels as projections of syzygies of an augmented
map, images by lifting through the kernel generators) and its dimension
is a standard-monomial count.  The windowed route truncates the complex
to a filtration slice and takes exact matrix ranks; on a matrix module
the window is the whole space and the result is again certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (CrossCheckMismatch, NoStabilization, NotFredholm,
                     NotOrthogonal, NotUnimodular)
from .groebner import (GroebnerBasis, _Engine, lift_dicts, standard_monomial_count,
                       syzygy_module_dicts)
from .hilbert import NumericalPolynomial, fit_numerical_polynomial, samuel_multiplicity
from .linalg import RatMatrix
from .modules import (FilteredModel, MatrixModule, PresentedModule, SubmoduleModule,
                      _as_presented, box_quotient_dim, axis_power_columns)
from .poly import Polynomial, VectorPolynomial
from .util import INFINITE, is_finite, stabilized_difference


@dataclass
class HomologyReport:
    powers: tuple
    h: tuple                 # entries int or INFINITE, h[0] = h_0
    certified: bool
    window: dict | None = None

    @property
    def fredholm(self) -> bool:
        return all(is_finite(x) for x in self.h)

    @property
    def index(self):
        if not self.fredholm:
            return None
        d = len(self.h) - 1
        return sum((-1) ** (d - i) * hi for i, hi in enumerate(self.h))


@dataclass
class SingleOpReport:
    kernel_dim: object
    coker_dim: object
    s_mul: object
    bs_mul: object
    stabilized_kernel_dim: object
    index: int | None
    stabilized_at: int | None


@dataclass
class ELimits:
    e0: int
    e1: int
    e2: int
    notes: dict


def _subsets(d, i):
    return list(combinations(range(d), i))


def _power_mono(d, var, n):
    return tuple(n if t == var else 0 for t in range(d))


def _diff_columns(d, powers, g, i):
    """Columns of the lifted Koszul differential C_i -> C_{i-1}.

    Source components are enumerated (subset block, presentation slot);
    each column is a term dict in A^{g * #subsets(i-1)}.
    """
    src = _subsets(d, i)
    tgt = {S: idx for idx, S in enumerate(_subsets(d, i - 1))}
    cols = []
    for S in src:
        for l in range(g):
            col = {}
            for pos, j in enumerate(S):
                rest = tuple(t for t in S if t != j)
                sign = Fraction((-1) ** pos)
                row = tgt[rest] * g + l
                col[(row, _power_mono(d, j, powers[j]))] = sign
            cols.append(col)
    return cols


def _relation_blocks(rel_dicts, g, blocks):
    out = []
    for b in range(blocks):
        for r in rel_dicts:
            out.append({(b * g + comp, mono): c for (comp, mono), c in r.items()})
    return out


def _preimage(map_cols, target_rels, d, n_src, degree_cap=None):
    """Generators of {v : map(v) in <target_rels>}, as dicts in A^{n_src}.

    map_cols are the images of the source unit vectors, in order.
    """
    syz = syzygy_module_dicts(map_cols + target_rels, d,
                              _ambient_comps(map_cols + target_rels), degree_cap)
    out = []
    for s in syz:
        proj = {(idx, mono): c for (idx, mono), c in s.items() if idx < n_src}
        if proj:
            out.append(proj)
    return out


def _ambient_comps(dicts):
    return max((idx for v in dicts for (idx, _) in v), default=0) + 1


def _subquotient_dim(u_gens, v_gens, d, degree_cap=None):
    """dim(U/V) for submodules V <= U of a free module, via a presentation of U."""
    u_gens = [u for u in u_gens if u]
    if not u_gens:
        return 0
    p = len(u_gens)
    rels = syzygy_module_dicts(u_gens, d, _ambient_comps(u_gens), degree_cap)
    v_live = [v for v in v_gens if v]
    lifts = lift_dicts(v_live, u_gens, d, _ambient_comps(u_gens + v_live), degree_cap) \
        if v_live else []
    combined = rels + lifts
    if not combined:
        return INFINITE
    eng = _Engine(combined, d, p, degree_cap, track=False)
    gb = GroebnerBasis(d, p, eng.basis, degree_cap)
    count = standard_monomial_count(gb)
    return count.total if count.finite else INFINITE


def _std_count(gens_dicts, d, ncomp, degree_cap=None):
    if not gens_dicts:
        return INFINITE if ncomp >= 1 else 0
    eng = _Engine(gens_dicts, d, ncomp, degree_cap, track=False)
    gb = GroebnerBasis(d, ncomp, eng.basis, degree_cap)
    count = standard_monomial_count(gb)
    return count.total if count.finite else INFINITE


def _homology_component(pres: PresentedModule, powers, i, degree_cap=None):
    """dim H_i of K(z_1^{n_1}, ..., z_d^{n_d}; M) for one i."""
    key = ("hdim", tuple(powers), i)
    if key in pres._cache:
        return pres._cache[key]
    d, g = pres.d, pres.gens
    rel_dicts = [r.term_dict() for r in pres.relations]
    nsub = [len(_subsets(d, t)) for t in range(d + 1)]
    if i == 0:
        cols = _diff_columns(d, powers, g, 1)
        val = _std_count(rel_dicts + cols, d, g, degree_cap)
    else:
        phi_cols = _diff_columns(d, powers, g, i)
        target_rels = _relation_blocks(rel_dicts, g, nsub[i - 1])
        n_src = g * nsub[i]
        u_gens = _preimage(phi_cols, target_rels, d, n_src, degree_cap)
        v_gens = list(_relation_blocks(rel_dicts, g, nsub[i]))
        if i < d:
            v_gens = _diff_columns(d, powers, g, i + 1) + v_gens
        val = _subquotient_dim(u_gens, v_gens, d, degree_cap)
    pres._cache[key] = val
    return val


def homology_dims(module, powers, degree_cap=None) -> HomologyReport:
    """Exact Koszul homology dimensions of a presented or submodule model."""
    pres = _as_presented(module)
    powers = tuple(powers)
    d = pres.d
    if len(powers) != d or any(n < 1 for n in powers):
        raise ValueError("need one positive power per variable")
    if d > 3:
        raise ValueError("exact homology implemented for d <= 3")
    h = tuple(_homology_component(pres, powers, i, degree_cap) for i in range(d + 1))
    return HomologyReport(powers, h, certified=True)


def _matrix_koszul_h(xs, dim):
    """Homology dims of the Koszul complex of commuting matrices xs on Q^dim."""
    d = len(xs)
    ranks = [0] * (d + 2)
    for i in range(1, d + 1):
        src = _subsets(d, i)
        tgt = {S: idx for idx, S in enumerate(_subsets(d, i - 1))}
        entries = {}
        for ci, S in enumerate(src):
            for pos, j in enumerate(S):
                rest = tuple(t for t in S if t != j)
                sign = (-1) ** pos
                ri = tgt[rest]
                for (r, c), v in xs[j].entries.items():
                    entries[(ri * dim + r, ci * dim + c)] = sign * v
        mat = RatMatrix(len(tgt) * dim, len(src) * dim, entries)
        ranks[i] = mat.rank()
    h = []
    for i in range(d + 1):
        ci = len(_subsets(d, i)) * dim
        h.append(ci - ranks[i] - ranks[i + 1])
    return tuple(h)


def _filtered_koszul_h(model: FilteredModel, powers, D):
    d = model.d
    if d == 1:
        (n,) = powers
        mat = model.power_map(0, n, D - n)
        r = mat.rank()
        return (model.dim(D) - r, model.dim(D - n) - r)
    if d == 2:
        s, t = powers
        m1 = model.power_map(0, s, D - s)
        m2 = model.power_map(1, t, D - t)
        d1 = m1.hstack(m2)
        r1 = d1.rank()
        a = model.power_map(1, t, D - s - t).scale(Fraction(-1))
        b = model.power_map(0, s, D - s - t)
        d2 = a.vstack(b)
        r2 = d2.rank()
        c1 = model.dim(D - s) + model.dim(D - t)
        return (model.dim(D) - r1, c1 - r1 - r2, model.dim(D - s - t) - r2)
    raise ValueError("windowed homology implemented for d <= 2")


def homology_dims_windowed(model, powers, D=None) -> HomologyReport:
    """Homology from exact ranks of the truncated complex.

    Matrix modules need no window and the result is certified; filtered
    models are evaluated at three consecutive windows and must agree.
    """
    powers = tuple(powers)
    if isinstance(model, MatrixModule):
        xs = [model.actions[i].power(n) for i, n in enumerate(powers)]
        h = _matrix_koszul_h(xs, model.dim)
        return HomologyReport(powers, h, certified=True)
    if isinstance(model, (PresentedModule, SubmoduleModule)):
        from .modules import PresentedFiltered
        model = PresentedFiltered(_as_presented(model))
    if D is None:
        D = 4 * max(powers) + 6
    vals = [_filtered_koszul_h(model, powers, D + t) for t in range(3)]
    if not (vals[0] == vals[1] == vals[2]):
        raise NoStabilization(f"windowed homology {vals} not stable at D={D}")
    return HomologyReport(powers, vals[0], certified=False,
                          window={"D": D, "stabilized": True})


def fredholm_index(module, powers=None) -> int:
    if isinstance(module, MatrixModule):
        powers = powers or (1,) * module.d
        rep = homology_dims_windowed(module, powers)
    else:
        pres = _as_presented(module)
        powers = powers or (1,) * pres.d
        rep = homology_dims(module, powers)
    if not rep.fredholm:
        raise NotFredholm(f"infinite homology at powers {powers}")
    return rep.index


def h_sequence(module, k_max):
    """Table of h_i(k) for k = 1..k_max, with per-row fit flags."""
    d = module.d if not isinstance(module, MatrixModule) else module.d
    rows = {}
    for k in range(1, k_max + 1):
        rep = (homology_dims_windowed(module, (k,) * d)
               if isinstance(module, MatrixModule)
               else homology_dims(module, (k,) * d))
        rows[k] = rep.h
    fits = []
    for i in range(d + 1):
        series = [(k, rows[k][i]) for k in rows]
        if any(not is_finite(v) for _, v in series) or k_max < 2 * d + 4:
            fits.append(None)
            continue
        try:
            fit_numerical_polynomial(series, d)
            fits.append(True)
        except Exception:
            fits.append(False)
    return {"rows": rows, "fitted": fits}


def h_grid(module, s_max, t_max):
    """Table of h_i(s, t) over the grid, d = 2 models."""
    out = {}
    for s in range(1, s_max + 1):
        for t in range(1, t_max + 1):
            rep = (homology_dims_windowed(module, (s, t))
                   if isinstance(module, MatrixModule)
                   else homology_dims(module, (s, t)))
            out[(s, t)] = rep.h
    return out


def top_homology_dim(module, powers):
    pres = _as_presented(module)
    return _homology_component(pres, tuple(powers), pres.d)


def e_limits(module) -> ELimits:
    """The three quadratic growth limits e_i of a d = 2 Fredholm model."""
    if isinstance(module, MatrixModule):
        if module.d != 2:
            raise ValueError("e limits are for pairs")
        # h_i(k) is bounded by the dimension, so every quadratic limit vanishes
        return ELimits(0, 0, 0, {"all": "finite dimensional model"})
    pres = _as_presented(module)
    if pres.d != 2:
        raise ValueError("e limits are for pairs")
    idx = fredholm_index(module, (1, 1))
    sam = samuel_multiplicity(module)
    e0 = sam.e
    notes = {"e0": "Hilbert fit, cross-checked on box quotients",
             "e2": "numerical fit of top homology dims",
             "e1": "e0 + e2 - index"}
    for k in (6, 12):
        box = box_quotient_dim(module, (k, k))
        if box < k * k * e0:
            raise CrossCheckMismatch("box quotient violates the lower bound")
    box12 = box_quotient_dim(module, (12, 12))
    if abs(Fraction(box12, 144) - e0) > Fraction(1, 2) and e0 != 0:
        raise CrossCheckMismatch("box growth does not match the Hilbert fit")
    samples = [(k, top_homology_dim(module, (k, k))) for k in range(1, 9)]
    if any(not is_finite(v) for _, v in samples):
        raise NotFredholm("top homology infinite")
    fit = fit_numerical_polynomial(samples, 2)
    e2 = fit.reduced_leading_coefficient
    e1 = e0 + e2 - idx
    return ELimits(e0, e1, e2, notes)


def index_multiplicativity_check(module, powers):
    powers = tuple(powers)
    base = fredholm_index(module)
    lhs = fredholm_index(module, powers)
    rhs = base
    for n in powers:
        rhs *= n
    return lhs == rhs, lhs, rhs


def _check_orthogonal(u):
    rows = [[Fraction(x) for x in row] for row in u]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise NotOrthogonal("need a 2x2 matrix")
    (a, b), (c, d) = rows
    if (a * a + c * c != 1 or b * b + d * d != 1 or a * b + c * d != 0):
        raise NotOrthogonal("matrix is not exactly orthogonal")
    return rows


def rotate_pair(module, u):
    """Model with actions (a T1 + b T2, c T1 + d T2) for orthogonal u = [[a,b],[c,d]].

    Presented relations r(z, w) become r(a z + c w, b z + d w); matrix
    actions are combined directly.
    """
    rows = _check_orthogonal(u)
    (a, b), (c, d) = rows
    if isinstance(module, MatrixModule):
        t1, t2 = module.actions
        s1 = t1.scale(a).add(t2.scale(b))
        s2 = t1.scale(c).add(t2.scale(d))
        return MatrixModule(module.dim, (s1, s2))
    z = Polynomial.variable(2, 0)
    w = Polynomial.variable(2, 1)
    img_z = z * a + w * c
    img_w = z * b + w * d
    if isinstance(module, SubmoduleModule):
        gens = [g.substitute([img_z, img_w]) for g in module.generators]
        return SubmoduleModule(2, module.n, gens)
    pres = _as_presented(module)
    rels = [r.substitute([img_z, img_w]) for r in pres.relations]
    return PresentedModule(2, pres.gens, rels)


def pythagorean_rotation(p: int, q: int):
    """Rational orthogonal matrix from a Pythagorean parametrization."""
    h = Fraction(p * p + q * q)
    a = Fraction(p * p - q * q) / h
    b = Fraction(2 * p * q) / h
    return [[a, -b], [b, a]]


def single_op_report(module, var: int = 0, k_max: int = 12) -> SingleOpReport:
    """One-variable Samuel data of a single module action."""
    if isinstance(module, MatrixModule):
        return _single_op_matrix(module, var, k_max)
    pres = _as_presented(module)
    d, g = pres.d, pres.gens
    rel_dicts = [r.term_dict() for r in pres.relations]
    cokers, kernels = {}, {}
    for k in range(1, k_max + 1):
        cols = [{(l, _power_mono(d, var, k)): Fraction(1)} for l in range(g)]
        cokers[k] = _std_count(rel_dicts + cols, d, g)
        u = _preimage(cols, rel_dicts, d, g)
        kernels[k] = _subquotient_dim(u, rel_dicts, d)
    if any(not is_finite(v) for v in cokers.values()):
        s_mul = INFINITE
        s_at = None
    else:
        s_mul, s_at = stabilized_difference(cokers)
        if s_mul is None:
            raise NoStabilization("cokernel growth did not stabilize")
    if any(not is_finite(v) for v in kernels.values()):
        bs_mul = INFINITE
        bs_at = None
    else:
        bs_mul, bs_at = stabilized_difference(kernels)
        if bs_mul is None:
            raise NoStabilization("kernel growth did not stabilize")
    k_star = max(filter(None, (s_at, bs_at)), default=1) + 2
    stab_kernel = _stabilized_kernel_presented(pres, var, k_star)
    index = None
    if is_finite(s_mul) and is_finite(bs_mul):
        index = bs_mul - s_mul
    return SingleOpReport(kernels[1], cokers[1], s_mul, bs_mul, stab_kernel,
                          index, k_star)


def _stabilized_kernel_presented(pres, var, k_star):
    d, g = pres.d, pres.gens
    rel_dicts = [r.term_dict() for r in pres.relations]
    cols1 = [{(l, _power_mono(d, var, 1)): Fraction(1)} for l in range(g)]
    ker_gens = _preimage(cols1, rel_dicts, d, g)
    img_gens = [{(l, _power_mono(d, var, k_star)): Fraction(1)} for l in range(g)]
    inter = _module_intersection(ker_gens, img_gens + rel_dicts, d)
    return _subquotient_dim(inter, rel_dicts, d)


def _module_intersection(a_gens, b_gens, d):
    a_gens = [a for a in a_gens if a]
    b_gens = [b for b in b_gens if b]
    if not a_gens or not b_gens:
        return []
    ncomp = _ambient_comps(a_gens + b_gens)
    syz = syzygy_module_dicts(a_gens + b_gens, d, ncomp)
    out = []
    for s in syz:
        acc = {}
        for (idx, mono), c in s.items():
            if idx >= len(a_gens):
                continue
            for (comp, m2), c2 in a_gens[idx].items():
                from .poly import mono_mul
                key = (comp, mono_mul(mono, m2))
                nv = acc.get(key, Fraction(0)) + c * c2
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
        if acc:
            out.append(acc)
    return out


def _single_op_matrix(module, var, k_max):
    t = module.actions[var]
    n = module.dim
    cokers, kernels = {}, {}
    for k in range(1, k_max + 1):
        r = t.power(k).rank()
        cokers[k] = n - r
        kernels[k] = n - r
    s_mul, s_at = stabilized_difference(cokers)
    bs_mul, bs_at = stabilized_difference(kernels)
    if s_mul is None or bs_mul is None:
        raise NoStabilization("matrix power ranks did not stabilize")
    k_star = max(s_at or 1, bs_at or 1) + 2
    ker_vecs = t.kernel_basis()
    tk = t.power(k_star)
    ker_mat = RatMatrix.from_columns(n, ker_vecs) if ker_vecs else RatMatrix.zero(n, 0)
    joint = ker_mat.hstack(tk)
    stab = ker_mat.rank() + tk.rank() - joint.rank()
    return SingleOpReport(kernels[1], cokers[1], s_mul, bs_mul, stab,
                          bs_mul - s_mul, k_star)


def action_kernel_dim(module, var: int = 0):
    """dim ker(z_var on M); zero means the action is injective."""
    pres = _as_presented(module)
    d, g = pres.d, pres.gens
    rel_dicts = [r.term_dict() for r in pres.relations]
    cols = [{(l, _power_mono(d, var, 1)): Fraction(1)} for l in range(g)]
    u = _preimage(cols, rel_dicts, d, g)
    return _subquotient_dim(u, rel_dicts, d)


def _matmul_poly(p_rows, vec: VectorPolynomial) -> VectorPolynomial:
    comps = []
    for row in p_rows:
        acc = Polynomial.zero(vec.d)
        for pij, vj in zip(row, vec.components):
            acc = acc + pij * vj
        comps.append(acc)
    return VectorPolynomial(comps)


def _poly_matmul(a_rows, b_rows):
    g = len(a_rows)
    out = []
    for i in range(g):
        row = []
        for j in range(g):
            acc = Polynomial.zero(a_rows[0][0].d)
            for k in range(g):
                acc = acc + a_rows[i][k] * b_rows[k][j]
            row.append(acc)
        out.append(row)
    return out


def presentation_isomorphism_invariance(module, gen_change, gen_change_inverse,
                                        row_ops=()):
    """Samuel multiplicity and index before/after a presentation isomorphism.

    gen_change is a g x g polynomial matrix applied to relation vectors,
    supplied with its exact inverse; row_ops are elementary relation
    rewrites (target, source, multiplier polynomial).
    """
    pres = _as_presented(module)
    g = pres.gens
    d = pres.d
    prod1 = _poly_matmul(gen_change, gen_change_inverse)
    prod2 = _poly_matmul(gen_change_inverse, gen_change)
    ident = [[Polynomial.one(d) if i == j else Polynomial.zero(d)
              for j in range(g)] for i in range(g)]
    if prod1 != ident or prod2 != ident:
        raise NotUnimodular("supplied inverse fails verification")
    rels = [_matmul_poly(gen_change, r) for r in pres.relations]
    rels = list(rels)
    for (tgt, src, mult) in row_ops:
        if tgt == src:
            raise ValueError("row operation must mix distinct relations")
        rels[tgt] = rels[tgt] + rels[src].scale(mult)
    other = PresentedModule(d, g, rels)
    e_before = samuel_multiplicity(pres).e
    e_after = samuel_multiplicity(other).e
    i_before = fredholm_index(pres)
    i_after = fredholm_index(other)
    return {"equal": e_before == e_after and i_before == i_after,
            "e": (e_before, e_after), "index": (i_before, i_after),
            "transformed": other}
