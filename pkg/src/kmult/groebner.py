"""Buchberger's algorithm for submodules of A^N, with syzygies.

Vectors are handled internally as flat term dicts {(component, mono):
Fraction}.  Bases are reduced and monic; pair selection is by minimal
lcm degree (normal strategy) with the coprimality criterion in the ring
case and the chain criterion in general.  Syzygies come from Schreyer's
construction on the reduced basis, lifted back through the recorded
transformation when the generators were not themselves a basis.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .errors import DegreeOverflow
from .poly import (Mono, VectorPolynomial, grevlex_key, mono_coprime, mono_deg,
                   mono_div, mono_divides, mono_lcm, mono_mul, monomials_of_degree,
                   term_key)

DEFAULT_DEGREE_CAP = 64

ZERO = Fraction(0)


def _lt(vec):
    t = max(vec, key=term_key)
    return t, vec[t]


def _scale(vec, c):
    return {t: v * c for t, v in vec.items()}


def _vec_degree(vec):
    return max((mono_deg(m) for (_, m) in vec), default=-1)


def _shift(vec, mono, c):
    """c * z^mono * vec"""
    return {(i, mono_mul(m, mono)): v * c for (i, m), v in vec.items()}


def _sub_into(acc, vec, mono, c):
    """acc -= c * z^mono * vec, in place; returns list of keys touched."""
    touched = []
    for (i, m), v in vec.items():
        key = (i, mono_mul(m, mono))
        nv = acc.get(key, ZERO) - c * v
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)
        touched.append(key)
    return touched


def _reduce(vec, lts, basis, track=False):
    """Full normal form of vec against a monic basis.

    Returns (remainder, quotients) with vec = sum(q_i * basis_i) + rem;
    quotients are mono->coeff dicts when track is set, else None.
    """
    rem = dict(vec)
    quots = [dict() for _ in basis] if track else None
    heap = []
    for t in rem:
        heapq.heappush(heap, (tuple(-x for x in term_key(t)[0]), t[1], t))
    processed = set()
    while heap:
        _, _, t = heapq.heappop(heap)
        if t in processed or t not in rem:
            continue
        comp, mono = t
        hit = -1
        for i, (lcomp, lmono) in enumerate(lts):
            if lcomp == comp and mono_divides(lmono, mono):
                hit = i
                break
        if hit < 0:
            processed.add(t)
            continue
        c = rem[t]
        q = mono_div(mono, lts[hit][1])
        touched = _sub_into(rem, basis[hit], q, c)
        if track:
            quots[hit][q] = quots[hit].get(q, ZERO) + c
        for key in touched:
            if key in rem and key not in processed:
                heapq.heappush(heap, (tuple(-x for x in term_key(key)[0]), key[1], key))
    return rem, quots


class _Engine:
    """One Buchberger run; keeps basis, leading terms and transformations."""

    def __init__(self, inputs, d, ncomp, degree_cap, track):
        self.d = d
        self.ncomp = ncomp
        self.cap = degree_cap if degree_cap is not None else DEFAULT_DEGREE_CAP
        self.track = track
        self.m = len(inputs)
        self.basis = []
        self.lts = []
        self.reps = []  # reps[k] expresses basis[k] over the inputs, in A^m
        self.pending = set()
        self.heap = []
        for j, vec in enumerate(inputs):
            if vec:
                rep = {(j, (0,) * d): Fraction(1)} if track else None
                self._append(dict(vec), rep)
        self._run()
        self._interreduce()

    def _append(self, vec, rep):
        deg = _vec_degree(vec)
        if deg > self.cap:
            raise DegreeOverflow(f"element of degree {deg} exceeds cap {self.cap}")
        t, c = _lt(vec)
        if c != 1:
            inv = 1 / c
            vec = _scale(vec, inv)
            if self.track:
                rep = _scale(rep, inv)
        k = len(self.basis)
        self.basis.append(vec)
        self.lts.append(t)
        self.reps.append(rep)
        for i in range(k):
            self._push_pair(i, k)

    def _push_pair(self, i, j):
        (ci, mi), (cj, mj) = self.lts[i], self.lts[j]
        if ci != cj:
            return
        lcm = mono_lcm(mi, mj)
        deg = mono_deg(lcm)
        if deg > self.cap:
            raise DegreeOverflow(f"S-pair lcm degree {deg} exceeds cap {self.cap}")
        self.pending.add((i, j))
        heapq.heappush(self.heap, (deg, grevlex_key(lcm), ci, i, j))

    def _chain_skip(self, i, j, lcm, comp):
        for k, (ck, mk) in enumerate(self.lts):
            if k in (i, j) or ck != comp:
                continue
            if mono_divides(mk, lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in self.pending and b not in self.pending:
                    return True
        return False

    def _run(self):
        while self.heap:
            _, _, comp, i, j = heapq.heappop(self.heap)
            if (i, j) not in self.pending:
                continue
            self.pending.discard((i, j))
            mi, mj = self.lts[i][1], self.lts[j][1]
            if self.ncomp == 1 and mono_coprime(mi, mj):
                continue
            lcm = mono_lcm(mi, mj)
            if self._chain_skip(i, j, lcm, comp):
                continue
            ui, uj = mono_div(lcm, mi), mono_div(lcm, mj)
            spoly = _shift(self.basis[i], ui, Fraction(1))
            _sub_into(spoly, self.basis[j], uj, Fraction(1))
            rem, quots = _reduce(spoly, self.lts, self.basis, track=self.track)
            if rem:
                rep = None
                if self.track:
                    rep = _shift(self.reps[i], ui, Fraction(1))
                    _sub_into(rep, self.reps[j], uj, Fraction(1))
                    for k, q in enumerate(quots):
                        for mono, c in q.items():
                            _sub_into(rep, self.reps[k], mono, c)
                    rep = {t: v for t, v in rep.items() if v}
                self._append(rem, rep)

    def _interreduce(self):
        # Minimal: drop any element whose leading term is divisible by
        # the leading term of another survivor.
        order = sorted(range(len(self.basis)),
                       key=lambda k: term_key(self.lts[k]), reverse=True)
        dropped = set()
        for k in order:
            ck, mk = self.lts[k]
            for l in range(len(self.basis)):
                if l == k or l in dropped:
                    continue
                cl, ml = self.lts[l]
                if cl == ck and mono_divides(ml, mk):
                    dropped.add(k)
                    break
        keep = [k for k in range(len(self.basis)) if k not in dropped]
        basis = [self.basis[k] for k in keep]
        lts = [self.lts[k] for k in keep]
        reps = [self.reps[k] for k in keep]
        # Tail-reduce each against the rest.
        final, final_reps = [], []
        for idx in range(len(basis)):
            others = [b for t, b in enumerate(basis) if t != idx]
            other_lts = [lts[t] for t in range(len(basis)) if t != idx]
            rem, quots = _reduce(basis[idx], other_lts, others, track=self.track)
            rep = reps[idx]
            if self.track and quots:
                rep = dict(rep)
                src = [t for t in range(len(basis)) if t != idx]
                for pos, q in enumerate(quots):
                    for mono, c in q.items():
                        _sub_into(rep, reps[src[pos]], mono, c)
                rep = {t: v for t, v in rep.items() if v}
            final.append(rem)
            final_reps.append(rep)
        # Deterministic order: descending leading term.
        perm = sorted(range(len(final)),
                      key=lambda k: term_key(_lt(final[k])[0]), reverse=True)
        self.basis = [final[k] for k in perm]
        self.lts = [_lt(b)[0] for b in self.basis]
        self.reps = [final_reps[k] for k in perm]


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of A^N under the fixed order."""

    __slots__ = ("d", "n", "generators", "_dicts", "_lts", "degree_cap")

    order = "grevlex(z1>..>zd), ties to lower component"

    def __init__(self, d, n, dicts, degree_cap):
        self.d = d
        self.n = n
        self._dicts = dicts
        self._lts = [_lt(v)[0] for v in dicts]
        self.degree_cap = degree_cap
        self.generators = tuple(VectorPolynomial.from_term_dict(d, n, v) for v in dicts)

    def leading_terms(self):
        return list(self._lts)

    def __len__(self):
        return len(self._dicts)

    def __repr__(self):
        return f"GroebnerBasis(d={self.d}, N={self.n}, {len(self)} generators)"


class SyzygyPresentation:
    """Relations among a list of generators, as vectors in A^(ambient rank)."""

    __slots__ = ("ambient_rank", "relations")

    def __init__(self, ambient_rank, relations):
        self.ambient_rank = ambient_rank
        self.relations = tuple(relations)

    def __repr__(self):
        return f"SyzygyPresentation(rank={self.ambient_rank}, {len(self.relations)} relations)"


class StdMonomialCount:
    """Count of monomial/component pairs outside a leading-term module."""

    __slots__ = ("finite", "total", "per_degree")

    def __init__(self, finite, total=None, per_degree=None):
        self.finite = finite
        self.total = total
        self.per_degree = per_degree

    def __repr__(self):
        if self.finite:
            return f"StdMonomialCount({self.total})"
        return f"StdMonomialCount(Infinite, per_degree={self.per_degree})"


def buchberger(gens, *, d=None, n=None, degree_cap=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of A^N generated by gens."""
    gens = list(gens)
    if gens:
        d = gens[0].d
        n = gens[0].n
        if any(g.d != d or g.n != n for g in gens):
            raise ValueError("generators live in different free modules")
        dicts = [g.term_dict() for g in gens]
    else:
        if d is None or n is None:
            raise ValueError("empty generator list needs explicit d and n")
        dicts = []
    eng = _Engine(dicts, d, n, degree_cap, track=False)
    return GroebnerBasis(d, n, eng.basis, degree_cap)


def normal_form(v: VectorPolynomial, gb: GroebnerBasis) -> VectorPolynomial:
    if v.d != gb.d or v.n != gb.n:
        raise ValueError("vector incompatible with basis")
    rem, _ = _reduce(v.term_dict(), gb._lts, gb._dicts)
    return VectorPolynomial.from_term_dict(gb.d, gb.n, rem)


def membership(v: VectorPolynomial, gb: GroebnerBasis) -> bool:
    return normal_form(v, gb).is_zero()


def _schreyer_syzygies(basis, lts, ncomp_out):
    """All-pairs Schreyer syzygies of a Groebner basis, in A^len(basis)."""
    out = []
    s = len(basis)
    zero_mono = None
    for i in range(s):
        for j in range(i + 1, s):
            (ci, mi), (cj, mj) = lts[i], lts[j]
            if ci != cj:
                continue
            lcm = mono_lcm(mi, mj)
            ui, uj = mono_div(lcm, mi), mono_div(lcm, mj)
            spoly = _shift(basis[i], ui, Fraction(1))
            _sub_into(spoly, basis[j], uj, Fraction(1))
            rem, quots = _reduce(spoly, lts, basis, track=True)
            if rem:
                raise AssertionError("S-pair of a Groebner basis failed to reduce")
            syz = {(i, ui): Fraction(1)}
            prev = syz.get((j, uj), ZERO) - 1
            if prev:
                syz[(j, uj)] = prev
            else:
                syz.pop((j, uj), None)
            for k, q in enumerate(quots):
                for mono, c in q.items():
                    key = (k, mono)
                    nv = syz.get(key, ZERO) - c
                    if nv:
                        syz[key] = nv
                    else:
                        syz.pop(key, None)
            if syz:
                out.append(syz)
    return out


def _compose(coeff_vec, reps, m):
    """sum_k coeff_vec[k] * reps[k], an element of A^m."""
    acc = {}
    for (k, mono), c in coeff_vec.items():
        for (j, mono2), c2 in reps[k].items():
            key = (j, mono_mul(mono, mono2))
            nv = acc.get(key, ZERO) + c * c2
            if nv:
                acc[key] = nv
            else:
                acc.pop(key, None)
    return acc


def _apply_relation(rel, gens_dicts, d):
    """sum_j rel_j * gens[j]; rel lives in A^len(gens)."""
    acc = {}
    for (j, mono), c in rel.items():
        for (i, m2), c2 in gens_dicts[j].items():
            key = (i, mono_mul(mono, m2))
            nv = acc.get(key, ZERO) + c * c2
            if nv:
                acc[key] = nv
            else:
                acc.pop(key, None)
    return acc


def syzygies(gb: GroebnerBasis) -> SyzygyPresentation:
    """Generating relations among the basis elements of gb.

    The Schreyer generators are themselves Groebner-reduced (in A^s) so
    the returned set is small and deterministic; every relation is
    re-verified by exact substitution.
    """
    raw = _schreyer_syzygies(gb._dicts, gb._lts, gb.n)
    s = len(gb)
    if raw:
        eng = _Engine(raw, gb.d, s, gb.degree_cap, track=False)
        raw = eng.basis
    for rel in raw:
        if _apply_relation(rel, gb._dicts, gb.d):
            raise AssertionError("syzygy fails substitution check")
    rels = [VectorPolynomial.from_term_dict(gb.d, s, r) for r in raw]
    return SyzygyPresentation(s, rels)


def syzygy_module_dicts(gens_dicts, d, ncomp, degree_cap=None):
    """Generators of the relation module of an arbitrary generating list.

    Returns term dicts in A^m, m = len(gens_dicts).  Zero input vectors
    contribute unit syzygies.
    """
    m = len(gens_dicts)
    live = [(j, v) for j, v in enumerate(gens_dicts) if v]
    out = []
    zero_mono = (0,) * d
    for j, v in enumerate(gens_dicts):
        if not v:
            out.append({(j, zero_mono): Fraction(1)})
    if not live:
        return out
    eng = _Engine([v for _, v in live], d, ncomp, degree_cap, track=True)
    # reps are over the live inputs; re-index to the full list
    live_idx = [j for j, _ in live]
    reps = [{(live_idx[k], mono): c for (k, mono), c in rep.items()}
            for rep in eng.reps]
    for syz in _schreyer_syzygies(eng.basis, eng.lts, ncomp):
        rel = _compose(syz, reps, m)
        if rel:
            out.append(rel)
    # gens_j - sum B_jk basis_k is a relation whenever division is nontrivial
    for j, v in live:
        rem, quots = _reduce(v, eng.lts, eng.basis, track=True)
        if rem:
            raise AssertionError("generator does not reduce to zero against own basis")
        rel = {(j, zero_mono): Fraction(1)}
        for k, q in enumerate(quots):
            for mono, c in q.items():
                for (jj, mono2), c2 in reps[k].items():
                    key = (jj, mono_mul(mono, mono2))
                    nv = rel.get(key, ZERO) - c * c2
                    if nv:
                        rel[key] = nv
                    else:
                        rel.pop(key, None)
        if rel:
            out.append(rel)
    for rel in out:
        if _apply_relation(rel, gens_dicts, d):
            raise AssertionError("syzygy fails substitution check")
    if out:
        eng2 = _Engine(out, d, m, degree_cap, track=False)
        out = eng2.basis
    return out


def syzygy_module(gens, degree_cap=None) -> SyzygyPresentation:
    """Relations among an arbitrary list of vector polynomials."""
    gens = list(gens)
    if not gens:
        return SyzygyPresentation(0, [])
    d, n = gens[0].d, gens[0].n
    dicts = syzygy_module_dicts([g.term_dict() for g in gens], d, n, degree_cap)
    m = len(gens)
    return SyzygyPresentation(m, [VectorPolynomial.from_term_dict(d, m, r) for r in dicts])


def lift_dicts(targets, gens_dicts, d, ncomp, degree_cap=None):
    """Express each target as an A-combination of the generators.

    Raises AssertionError if a target is not in the generated module;
    callers use this only where membership is guaranteed.
    """
    live = [(j, v) for j, v in enumerate(gens_dicts) if v]
    eng = _Engine([v for _, v in live], d, ncomp, degree_cap, track=True)
    live_idx = [j for j, _ in live]
    reps = [{(live_idx[k], mono): c for (k, mono), c in rep.items()}
            for rep in eng.reps]
    m = len(gens_dicts)
    out = []
    for v in targets:
        rem, quots = _reduce(dict(v), eng.lts, eng.basis, track=True)
        if rem:
            raise AssertionError("lift target is not in the module")
        acc = {}
        for k, q in enumerate(quots):
            for mono, c in q.items():
                for (jj, mono2), c2 in reps[k].items():
                    key = (jj, mono_mul(mono, mono2))
                    nv = acc.get(key, ZERO) + c * c2
                    if nv:
                        acc[key] = nv
                    else:
                        acc.pop(key, None)
        out.append(acc)
    return out


def standard_monomial_count(gb: GroebnerBasis, degree_cap=None) -> StdMonomialCount:
    """Monomial/component pairs outside the leading-term module of gb.

    Exact total when the quotient is finite dimensional; otherwise a
    per-degree table up to degree_cap (default 16) flagged Infinite.
    """
    lt_by_comp = {c: [] for c in range(gb.n)}
    for comp, mono in gb._lts:
        lt_by_comp[comp].append(mono)
    d = gb.d
    finite = True
    bounds = {}
    for comp in range(gb.n):
        lts = lt_by_comp[comp]
        if any(mono_deg(m) == 0 for m in lts):
            bounds[comp] = None  # component entirely inside the module
            continue
        bb = []
        for var in range(d):
            pures = [m[var] for m in lts
                     if all(e == 0 for k, e in enumerate(m) if k != var) and m[var] > 0]
            if not pures:
                finite = False
                break
            bb.append(min(pures))
        if not finite:
            break
        bounds[comp] = tuple(bb)
    if finite:
        total = 0
        for comp in range(gb.n):
            if bounds[comp] is None:
                continue
            lts = lt_by_comp[comp]
            total += _count_box(bounds[comp], lts, d)
        return StdMonomialCount(True, total=total)
    cap = degree_cap if degree_cap is not None else 16
    table = []
    for deg in range(cap + 1):
        cnt = 0
        for comp in range(gb.n):
            lts = lt_by_comp[comp]
            for mono in monomials_of_degree(d, deg):
                if not any(mono_divides(l, mono) for l in lts):
                    cnt += 1
        table.append(cnt)
    return StdMonomialCount(False, per_degree=table)


def _count_box(bounds, lts, d):
    def rec(prefix, var):
        if var == d:
            mono = tuple(prefix)
            return 0 if any(mono_divides(l, mono) for l in lts) else 1
        total = 0
        for e in range(bounds[var]):
            prefix.append(e)
            total += rec(prefix, var + 1)
            prefix.pop()
        return total
    return rec([], 0)


def quotient_dimension(gb: GroebnerBasis):
    """dim A^N / module, as an int, or None when infinite."""
    c = standard_monomial_count(gb)
    return c.total if c.finite else None


def verify_buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Re-check that every S-pair of the basis reduces to zero."""
    try:
        _schreyer_syzygies(gb._dicts, gb._lts, gb.n)
    except AssertionError:
        return False
    return True
