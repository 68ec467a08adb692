"""Catalog of worked example models plus the seeded random battery.

Every verification suite draws its inputs here.  Catalog entries carry
their known invariant values tagged by provenance: published closed
forms ("reference"), immediate consequences ("trivial"), and values
computed by an independent oracle in this package ("derived").
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .errors import InvalidParams, UnknownModel
from .fock import FockSubmodule
from .linalg import RatMatrix
from .modules import FilteredModel, MatrixModule, PresentedModule
from .parsing import parse_vector_polynomial
from .poly import Polynomial, VectorPolynomial

log = logging.getLogger(__name__)


@dataclass
class ModelCatalogEntry:
    name: str
    params: dict
    expected: dict  # invariant key -> (value, provenance)

    def build(self):
        return build(self.name, **self.params)


def _zw():
    return Polynomial.variable(2, 0), Polynomial.variable(2, 1)


def nonpoly_pair() -> PresentedModule:
    """Cyclic model of the pair with alternating colength growth: A/(z^2 - w^2)."""
    z, w = _zw()
    return PresentedModule(2, 1, [VectorPolynomial.wrap(z * z - w * w)])


def free_module(d: int = 2, rank: int = 1) -> PresentedModule:
    return PresentedModule(d, rank, [])


def hardy_shift_1var() -> PresentedModule:
    """One-variable forward shift: z acting on Q[z]."""
    return PresentedModule(1, 1, [])


def vanishing_origin(n: int = 1) -> FockSubmodule:
    """Functions vanishing at the origin: the invariant subspace [z, w]."""
    if n != 1:
        raise InvalidParams("vanishing_origin is the scalar-valued model")
    z, w = _zw()
    return FockSubmodule(2, 1, [VectorPolynomial.wrap(z), VectorPolynomial.wrap(w)])


def single_gen(f: str = "(z, w)") -> FockSubmodule:
    """Invariant subspace generated by one vector polynomial."""
    vec = parse_vector_polynomial(f, 2) if isinstance(f, str) else f
    return FockSubmodule(2, vec.n, [vec])


def curto_window(R: int = 4) -> MatrixModule:
    """Forward shifts on the quarter-plane-complement lattice, windowed.

    Points (s1, s2) with s1 >= 0 or s2 >= 0, clipped to |s_i| <= R; both
    shifts truncate to zero only at the outer box, so the pair commutes
    exactly.
    """
    if R < 2:
        raise InvalidParams("window radius must be >= 2")
    points = [(s1, s2)
              for s1 in range(-R, R + 1)
              for s2 in range(-R, R + 1)
              if s1 >= 0 or s2 >= 0]
    points.sort()
    index = {p: i for i, p in enumerate(points)}
    n = len(points)
    e1, e2 = {}, {}
    for p, i in index.items():
        q1 = (p[0] + 1, p[1])
        if q1 in index:
            e1[(index[q1], i)] = Fraction(1)
        q2 = (p[0], p[1] + 1)
        if q2 in index:
            e2[(index[q2], i)] = Fraction(1)
    t1 = RatMatrix(n, n, e1)
    t2 = RatMatrix(n, n, e2)
    return MatrixModule(n, (t1, t2), labels=points)


class BidiscCoupledModel(FilteredModel):
    """Q[z,w] + Q[t] with both coordinate actions feeding the constant
    of the first summand into the second: z (f, g) = (zf, f(0,0) + t g),
    and the same pattern for w."""

    d = 2

    def __init__(self):
        self._basis = []     # (kind, data): ("p", (a, b)) or ("t", c)
        self._index = {}
        self._by_degree = []
        self._actions = {}

    def _extend(self, m):
        while len(self._by_degree) <= m:
            deg = len(self._by_degree)
            layer = [("p", (deg - b, b)) for b in range(deg + 1)]
            layer.append(("t", deg))
            for item in layer:
                self._index[item] = len(self._index)
                self._basis.append(item)
            self._by_degree.append(layer)

    def dim(self, m):
        self._extend(m)
        return sum(len(l) for l in self._by_degree[:m + 1])

    def slice_basis(self, m):
        self._extend(m)
        return [x for l in self._by_degree[:m + 1] for x in l]

    def action(self, i, m):
        key = (i, m)
        if key not in self._actions:
            self._extend(m + 1)
            entries = {}
            for col, item in enumerate(self.slice_basis(m)):
                kind, data = item
                if kind == "p":
                    a, b = data
                    target = (a + 1, b) if i == 0 else (a, b + 1)
                    entries[(self._index[("p", target)], col)] = Fraction(1)
                    if (a, b) == (0, 0):
                        entries[(self._index[("t", 0)], col)] = Fraction(1)
                else:
                    entries[(self._index[("t", data + 1)], col)] = Fraction(1)
            self._actions[key] = RatMatrix(self.dim(m + 1), self.dim(m), entries)
        return self._actions[key]


def bidisc_coupled() -> BidiscCoupledModel:
    model = BidiscCoupledModel()
    model.builtin_name = "bidisc_coupled"
    model.validate(depth=4)
    return model


_BUILDERS = {
    "nonpoly_pair": nonpoly_pair,
    "curto_window": curto_window,
    "bidisc_coupled": bidisc_coupled,
    "vanishing_origin": vanishing_origin,
    "single_gen": single_gen,
    "hardy_shift_1var": hardy_shift_1var,
    "free": free_module,
}

_ALIASES = {
    "nonpoly": "nonpoly_pair",
    "curto": "curto_window",
    "bidisc": "bidisc_coupled",
    "vo": "vanishing_origin",
    "hardy": "hardy_shift_1var",
}


def catalog_names():
    return sorted(_BUILDERS)


def build(name: str, **params):
    key = _ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise UnknownModel(f"no catalog model named {name!r}")
    try:
        return _BUILDERS[key](**params)
    except TypeError as exc:
        raise InvalidParams(str(exc)) from None


CATALOG = {
    "nonpoly_pair": ModelCatalogEntry(
        "nonpoly_pair", {},
        {"box(k,k)": ("2k for even k, 2k-1 for odd k", "reference"),
         "h2(k,k)": (0, "reference"),
         "index": (0, "derived: windowed oracle at several truncations"),
         "samuel_e": (0, "derived: linear Hilbert fit")}),
    "vanishing_origin": ModelCatalogEntry(
        "vanishing_origin", {},
        {"dim M/IM": (2, "reference"),
         "index": (1, "derived: equals Samuel multiplicity"),
         "samuel_e": (1, "derived: Hilbert fit oracle")}),
    "bidisc_coupled": ModelCatalogEntry(
        "bidisc_coupled", {},
        {"h0(s,t)": ("s*t + min(s,t)", "reference")}),
    "curto_window": ModelCatalogEntry(
        "curto_window", {"R": 4},
        {"dim": (65, "derived: point count oracle"),
         "index": (0, "trivial: finite dimensional")}),
    "single_gen": ModelCatalogEntry(
        "single_gen", {},
        {"sigma": (1, "reference"), "epsilon": (1, "reference")}),
    "hardy_shift_1var": ModelCatalogEntry(
        "hardy_shift_1var", {},
        {"index(z)": (-1, "trivial: kernel 0, cokernel 1")}),
}


def random_battery(seed: int, count: int, d: int = 2, n_max: int = 2,
                   gen_degree_max: int = 3):
    """Deterministic list of nonzero f.g. Fock submodules from a seed."""
    if count < 1:
        raise InvalidParams("count must be >= 1")
    rng = Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        n = rng.randint(1, n_max)
        n_gens = rng.randint(1, 2 if n == 1 else 3)
        gens = []
        for _ in range(n_gens):
            comps = []
            for _ in range(n):
                terms = {}
                for _ in range(rng.randint(0, 3)):
                    deg = rng.randint(0, gen_degree_max)
                    a = rng.randint(0, deg)
                    mono = (a, deg - a) if d == 2 else tuple(
                        _split_degree(rng, deg, d))
                    terms[mono] = Fraction(rng.choice([-2, -1, 1, 2]))
                comps.append(Polynomial(d, terms))
            vec = VectorPolynomial(comps)
            if not vec.is_zero():
                gens.append(vec)
        if not gens:
            log.info("battery draw %d degenerate; regenerating", attempts)
            continue
        out.append(FockSubmodule(d, n, gens))
    return out


def _split_degree(rng, deg, d):
    parts = []
    rest = deg
    for _ in range(d - 1):
        a = rng.randint(0, rest)
        parts.append(a)
        rest -= a
    parts.append(rest)
    return parts
