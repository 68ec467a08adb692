"""Module representations and their quotient-dimension operations.

Four carriers for a finitely generated module over A = Q[z1..zd]:

  PresentedModule   M = A^g / K, K given by relation vectors
  SubmoduleModule   M a submodule of A^N given by generators
  MatrixModule      a finite dimensional space with d commuting actions
  FilteredModel     an exhaustion F_0 < F_1 < ... with exact action maps

Submodules are converted to presentations on demand: the Groebner basis
of the generators becomes the generating set and its syzygies the
relations.  All quotient dimensions reduce to standard-monomial counts.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonCommutingTuple, NotCofinite, NoStabilization, ValidationError
from .groebner import (GroebnerBasis, buchberger, standard_monomial_count, syzygies)
from .linalg import RatMatrix, quotient_dim
from .poly import (Polynomial, VectorPolynomial, mono_deg, monomials_of_degree,
                   term_key)
from .util import INFINITE


class PresentedModule:
    """M = A^g / K with K spanned by the given relation vectors."""

    def __init__(self, d: int, gens: int, relations=()):
        if d < 1 or gens < 1:
            raise ValidationError("need d >= 1 and at least one generator")
        rels = tuple(r for r in relations if not r.is_zero())
        for r in rels:
            if r.d != d or r.n != gens:
                raise ValidationError("relation has wrong shape for A^g")
        self.d = d
        self.gens = gens
        self.relations = rels
        self.graded = all(_is_homogeneous(r) for r in rels)
        self._cache = {}

    def relations_gb(self) -> GroebnerBasis:
        if "rgb" not in self._cache:
            self._cache["rgb"] = buchberger(list(self.relations), d=self.d, n=self.gens)
        return self._cache["rgb"]

    def __repr__(self):
        return f"PresentedModule(d={self.d}, gens={self.gens}, {len(self.relations)} relations)"


class SubmoduleModule:
    """Submodule of A^N spanned by the given nonzero generators."""

    def __init__(self, d: int, n: int, generators):
        gens = tuple(generators)
        if not gens:
            raise ValidationError("a submodule needs at least one generator")
        for g in gens:
            if g.d != d or g.n != n:
                raise ValidationError("generator has wrong shape for A^N")
            if g.is_zero():
                raise ValidationError("zero generator")
        self.d = d
        self.n = n
        self.generators = gens
        self._cache = {}

    def gb(self) -> GroebnerBasis:
        if "gb" not in self._cache:
            self._cache["gb"] = buchberger(list(self.generators))
        return self._cache["gb"]

    def presented(self) -> PresentedModule:
        """Presentation on the Groebner generators, relations by Schreyer."""
        if "presented" not in self._cache:
            gb = self.gb()
            syz = syzygies(gb)
            self._cache["presented"] = PresentedModule(self.d, len(gb), syz.relations)
        return self._cache["presented"]

    def __repr__(self):
        return f"SubmoduleModule(d={self.d}, N={self.n}, {len(self.generators)} generators)"


class MatrixModule:
    """Finite dimensional module: d exactly commuting square matrices."""

    def __init__(self, dim: int, actions, labels=None):
        acts = tuple(actions)
        if not acts:
            raise ValidationError("need at least one action")
        for t in acts:
            if t.rows != dim or t.cols != dim:
                raise ValidationError("action of wrong shape")
        for i in range(len(acts)):
            for j in range(i + 1, len(acts)):
                if acts[i].mul(acts[j]) != acts[j].mul(acts[i]):
                    raise NonCommutingTuple(f"T{i + 1} and T{j + 1} do not commute")
        self.d = len(acts)
        self.dim = dim
        self.actions = acts
        self.labels = labels
        self._cache = {}

    def __repr__(self):
        return f"MatrixModule(dim={self.dim}, d={self.d})"


class FilteredModel:
    """Interface: nested finite slices F_m with exact action maps.

    Implementations provide dim(m) and action(i, m): F_m -> F_{m+1} as a
    RatMatrix, with the basis of F_m a prefix of the basis of F_{m+1}.
    """

    d: int

    def dim(self, m: int) -> int:
        raise NotImplementedError

    def action(self, i: int, m: int) -> RatMatrix:
        raise NotImplementedError

    def slice_basis(self, m: int):
        raise NotImplementedError

    def power_map(self, i: int, n: int, m: int) -> RatMatrix:
        """Matrix of T_i^n from F_m to F_{m+n}."""
        out = RatMatrix.identity(self.dim(m))
        for step in range(n):
            out = self.action(i, m + step).mul(out)
        return out

    def validate(self, depth: int = 4):
        """Check prefix compatibility of inclusions and exact commutation."""
        for m in range(depth):
            for i in range(self.d):
                a_small = self.action(i, m)
                a_big = self.action(i, m + 1)
                for j in range(self.dim(m)):
                    col_small = a_small.column(j)
                    col_big = a_big.column(j)
                    pad = col_small + [Fraction(0)] * (len(col_big) - len(col_small))
                    if pad != col_big:
                        raise ValidationError("action does not respect inclusions")
            for i in range(self.d):
                for j in range(i + 1, self.d):
                    ij = self.action(i, m + 1).mul(self.action(j, m))
                    ji = self.action(j, m + 1).mul(self.action(i, m))
                    if ij != ji:
                        raise NonCommutingTuple("filtered actions do not commute")


def _is_homogeneous(v: VectorPolynomial) -> bool:
    degs = {mono_deg(m) for p in v.components for m in p.terms}
    return len(degs) <= 1


def check_commuting(m: MatrixModule) -> bool:
    acts = m.actions
    for i in range(len(acts)):
        for j in range(i + 1, len(acts)):
            if acts[i].mul(acts[j]) != acts[j].mul(acts[i]):
                return False
    return True


def power_ideal_columns(d: int, k: int, g: int):
    """Generators z^a e_j, |a| = k, of I^k A^g."""
    out = []
    for j in range(g):
        for mono in monomials_of_degree(d, k):
            out.append(VectorPolynomial.from_term_dict(d, g, {(j, mono): Fraction(1)}))
    return out


def axis_power_columns(d: int, powers, g: int):
    """Generators z_i^{n_i} e_j of (z_1^{n_1}, ..., z_d^{n_d}) A^g."""
    out = []
    for j in range(g):
        for i, n in enumerate(powers):
            mono = tuple(n if t == i else 0 for t in range(d))
            out.append(VectorPolynomial.from_term_dict(d, g, {(j, mono): Fraction(1)}))
    return out


def _as_presented(module) -> PresentedModule:
    if isinstance(module, PresentedModule):
        return module
    if isinstance(module, SubmoduleModule):
        return module.presented()
    raise TypeError(f"no presentation for {type(module).__name__}")


def dim_mod_max_ideal(module) -> int:
    """dim M/IM; finite for every finitely generated representation."""
    return ideal_power_quotient_dim(module, 1)


def ideal_power_quotient_dim(module, k: int) -> int:
    """Exact dim M / I^k M via standard monomials."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pres = _as_presented(module)
    key = ("ipq", k)
    if key not in pres._cache:
        gens = list(pres.relations) + power_ideal_columns(pres.d, k, pres.gens)
        gb = buchberger(gens, d=pres.d, n=pres.gens)
        count = standard_monomial_count(gb)
        if not count.finite:
            raise NotCofinite("quotient by an ideal power came out infinite")
        pres._cache[key] = count.total
    return pres._cache[key]


def box_quotient_dim(module, powers) -> int:
    """Exact dim M / (z_1^{n_1} M + ... + z_d^{n_d} M)."""
    pres = _as_presented(module)
    powers = tuple(powers)
    if len(powers) != pres.d or any(n < 1 for n in powers):
        raise ValueError("need one positive power per variable")
    key = ("box", powers)
    if key not in pres._cache:
        gens = list(pres.relations) + axis_power_columns(pres.d, powers, pres.gens)
        gb = buchberger(gens, d=pres.d, n=pres.gens)
        count = standard_monomial_count(gb)
        if not count.finite:
            raise NotCofinite("box quotient came out infinite")
        pres._cache[key] = count.total
    return pres._cache[key]


def slice_quotient_once(model: FilteredModel, powers, D: int) -> int:
    """dim F_D / sum_i T_i^{n_i} F_{D - n_i} at a single window D."""
    cols = None
    for i, n in enumerate(powers):
        m = model.power_map(i, n, D - n)
        cols = m if cols is None else cols.hstack(m)
    return quotient_dim(model.dim(D), cols)


def slice_quotient_dim(model: FilteredModel, powers, D: int, *,
                       require_stabilized: bool = False):
    """Windowed quotient dimension with a three-window stabilization flag."""
    powers = tuple(powers)
    if D < max(powers) + 1:
        raise ValueError("window too small for the requested powers")
    vals = [slice_quotient_once(model, powers, D + t) for t in range(3)]
    stabilized = vals[0] == vals[1] == vals[2]
    if require_stabilized and not stabilized:
        raise NoStabilization(f"slice quotient {vals} not stable at window {D}")
    return vals[0], stabilized


def quotient_by_first(module) -> PresentedModule:
    """Presentation of M/z_1 M over Q[z_2..z_d]: set z_1 = 0 in relations."""
    pres = _as_presented(module)
    if pres.d < 2:
        raise ValueError("need at least two variables")
    d_new = pres.d - 1
    rels = []
    for r in pres.relations:
        comps = []
        for p in r.components:
            terms = {m[1:]: c for m, c in p.terms.items() if m[0] == 0}
            comps.append(Polynomial(d_new, terms))
        v = VectorPolynomial(comps)
        if not v.is_zero():
            rels.append(v)
    return PresentedModule(d_new, pres.gens, rels)


class PresentedFiltered(FilteredModel):
    """Degree filtration of a presented module by standard monomials."""

    def __init__(self, pres: PresentedModule):
        self.pres = pres
        self.d = pres.d
        self.gb = pres.relations_gb()
        self._basis_by_deg = []
        self._index = {}
        self._actions = {}

    def _extend(self, m: int):
        from .groebner import mono_divides  # local alias
        while len(self._basis_by_deg) <= m:
            deg = len(self._basis_by_deg)
            lts = self.gb.leading_terms()
            layer = []
            for comp in range(self.pres.gens):
                comp_lts = [mono for (c, mono) in lts if c == comp]
                for mono in sorted(monomials_of_degree(self.d, deg),
                                   key=lambda mm: term_key((comp, mm)), reverse=True):
                    if not any(mono_divides(l, mono) for l in comp_lts):
                        layer.append((comp, mono))
            for t in layer:
                self._index[t] = len(self._index)
            self._basis_by_deg.append(layer)

    def dim(self, m: int) -> int:
        self._extend(m)
        return sum(len(layer) for layer in self._basis_by_deg[:m + 1])

    def slice_basis(self, m: int):
        self._extend(m)
        return [t for layer in self._basis_by_deg[:m + 1] for t in layer]

    def action(self, i: int, m: int) -> RatMatrix:
        from .groebner import _reduce
        key = (i, m)
        if key not in self._actions:
            self._extend(m + 1)
            rows = self.dim(m + 1)
            entries = {}
            for col, (comp, mono) in enumerate(self.slice_basis(m)):
                shifted = tuple(e + (1 if t == i else 0) for t, e in enumerate(mono))
                rem, _ = _reduce({(comp, shifted): Fraction(1)},
                                 self.gb._lts, self.gb._dicts)
                for term, c in rem.items():
                    entries[(self._index[term], col)] = c
            self._actions[key] = RatMatrix(rows, self.dim(m), entries)
        return self._actions[key]
