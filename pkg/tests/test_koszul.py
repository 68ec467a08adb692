from fractions import Fraction
from random import Random

import pytest

from kmult.errors import NotOrthogonal, NotUnimodular
from kmult.hilbert import samuel_multiplicity
from kmult.koszul import (e_limits, fredholm_index, h_grid, h_sequence,
                          homology_dims, homology_dims_windowed,
                          index_multiplicativity_check,
                          presentation_isomorphism_invariance,
                          pythagorean_rotation, rotate_pair, single_op_report,
                          action_kernel_dim, _matrix_koszul_h)
from kmult.models import curto_window, nonpoly_pair, vanishing_origin
from kmult.modules import (MatrixModule, PresentedModule, SubmoduleModule,
                           quotient_by_first)
from kmult.poly import Polynomial, VectorPolynomial
from kmult.util import is_finite

Z = Polynomial.variable(2, 0)
W = Polynomial.variable(2, 1)


def V(p):
    return VectorPolynomial.wrap(p)


def test_homology_free_module(free_mod):
    assert homology_dims(free_mod, (1, 1)).h == (1, 0, 0)


def test_homology_nonpoly(nonpoly):
    assert homology_dims(nonpoly, (1, 1)).h == (1, 1, 0)
    assert homology_dims(nonpoly, (3, 3)).h == (5, 5, 0)


def test_homology_vanishing_origin(vo):
    assert homology_dims(vo, (1, 1)).h == (2, 1, 0)


def test_euler_identity_on_catalog(catalog_presented):
    for _, m in catalog_presented:
        for powers in [(1, 1), (2, 1), (2, 3)]:
            rep = homology_dims(m, powers)
            assert rep.index == fredholm_index(m, powers)


def test_fredholm_index_examples(free_mod, nonpoly, vo):
    assert fredholm_index(free_mod) == 1
    assert fredholm_index(nonpoly) == 0
    assert fredholm_index(vo) == 1


def test_index_equals_samuel_on_vo(vo):
    assert fredholm_index(vo) == samuel_multiplicity(vo).e == 1


def test_h_sequence_nonpoly(nonpoly):
    table = h_sequence(nonpoly, 8)
    h0 = [table["rows"][k][0] for k in range(1, 9)]
    assert h0 == [1, 4, 5, 8, 9, 12, 13, 16]
    h1 = [table["rows"][k][1] for k in range(1, 9)]
    assert h1 == h0  # index zero forces h1 = h0 + h2 with h2 = 0
    assert all(table["rows"][k][2] == 0 for k in range(1, 9))
    assert table["fitted"][0] is False
    assert table["fitted"][2] is True


def test_h_sequence_free(free_mod):
    table = h_sequence(free_mod, 8)
    assert all(table["rows"][k][0] == k * k for k in range(1, 9))
    assert table["fitted"][0] is True


def test_h_grid_free(free_mod):
    grid = h_grid(free_mod, 3, 3)
    for (s, t), h in grid.items():
        assert h == (s * t, 0, 0)


def test_h_grid_bidisc_closed_form():
    from kmult.models import bidisc_coupled
    from kmult.modules import slice_quotient_dim
    bd = bidisc_coupled()
    rep = homology_dims_windowed(bd, (2, 3), D=12)
    assert rep.h[0] == 2 * 3 + 2
    assert rep.certified is False


def test_e_limits_catalog(free_mod, nonpoly, vo):
    assert (e_limits(free_mod).e0, e_limits(free_mod).e1, e_limits(free_mod).e2) == (1, 0, 0)
    el = e_limits(nonpoly)
    assert (el.e0, el.e1, el.e2) == (0, 0, 0)
    el = e_limits(vo)
    assert (el.e0, el.e1, el.e2) == (1, 0, 0)


def test_theorem3_identity_on_battery(battery):
    for m in battery[:6]:
        el = e_limits(m)
        assert fredholm_index(m) == el.e2 - el.e1 + el.e0
        assert el.e0 >= 0 and el.e1 >= 0 and el.e2 >= 0


def test_cor10_lower_bound(catalog_presented):
    for _, m in catalog_presented:
        e1 = e_limits(m).e1
        for s in (1, 2):
            for t in (1, 3):
                h = homology_dims(m, (s, t)).h
                assert h[1] >= s * t * e1


def test_multiplicativity_examples(free_mod, nonpoly, vo):
    ok, lhs, rhs = index_multiplicativity_check(free_mod, (2, 3))
    assert ok and lhs == rhs == 6
    ok, lhs, rhs = index_multiplicativity_check(vo, (2, 2))
    assert ok and lhs == rhs == 4
    ok, lhs, rhs = index_multiplicativity_check(nonpoly, (3, 3))
    assert ok and lhs == rhs == 0


def test_multiplicativity_grid_on_catalog(catalog_presented):
    for _, m in catalog_presented:
        base = fredholm_index(m)
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                assert fredholm_index(m, (a, b)) == a * b * base


def test_rotation_identity(free_mod):
    u = [[1, 0], [0, 1]]
    assert homology_dims(rotate_pair(free_mod, u), (1, 1)).h == (1, 0, 0)


def test_rotation_three_four_five(nonpoly, vo):
    u = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
    assert homology_dims(rotate_pair(nonpoly, u), (1, 1)).h == (1, 1, 0)
    assert fredholm_index(rotate_pair(vo, u)) == 1


def test_rotation_rejects_non_orthogonal(free_mod):
    with pytest.raises(NotOrthogonal):
        rotate_pair(free_mod, [[1, 1], [0, 1]])


def test_five_random_rotations_preserve_homology(catalog_presented):
    rng = Random(31)
    for _, m in catalog_presented:
        base = homology_dims(m, (1, 1)).h
        for _ in range(5):
            p = rng.randint(2, 9)
            q = rng.randint(1, p - 1)
            rot = rotate_pair(m, pythagorean_rotation(p, q))
            assert homology_dims(rot, (1, 1)).h == base


def test_single_op_shift():
    hardy = PresentedModule(1, 1, [])
    rep = single_op_report(hardy, 0, 10)
    assert (rep.kernel_dim, rep.coker_dim) == (0, 1)
    assert (rep.s_mul, rep.bs_mul, rep.index) == (1, 0, -1)
    assert rep.stabilized_kernel_dim == 0


def test_single_op_on_nonpoly(nonpoly):
    rep = single_op_report(nonpoly, 0, 10)
    assert (rep.s_mul, rep.bs_mul, rep.index) == (2, 0, -2)
    assert rep.kernel_dim == 0 and rep.coker_dim == 2


def test_lemma12_reduction_on_vo(vo):
    rep = single_op_report(quotient_by_first(vo), 0, 12)
    assert rep.index == -1
    assert fredholm_index(vo) == -rep.index


def test_prop6_on_catalog(catalog_presented):
    for name, m in catalog_presented:
        assert action_kernel_dim(m, 0) == 0  # z acts injectively on all three
        one_var = single_op_report(quotient_by_first(m), 0, 12)
        assert fredholm_index(m) == -one_var.index


def test_iso_invariance_identity(free_mod):
    ident = [[Polynomial.one(2)]]
    rec = presentation_isomorphism_invariance(free_mod, ident, ident)
    assert rec["equal"]


def test_iso_invariance_unipotent_change():
    a2 = PresentedModule(2, 2, [])
    p = [[Polynomial.one(2), Z], [Polynomial.zero(2), Polynomial.one(2)]]
    q = [[Polynomial.one(2), -Z], [Polynomial.zero(2), Polynomial.one(2)]]
    rec = presentation_isomorphism_invariance(a2, p, q)
    assert rec["equal"]
    assert rec["e"] == (2, 2)


def test_iso_invariance_row_ops(vo):
    pres = vo.presented()
    g = pres.gens
    ident = [[Polynomial.one(2) if i == j else Polynomial.zero(2)
              for j in range(g)] for i in range(g)]
    rels = len(pres.relations)
    ops = [(0, 0, Z)] if rels < 2 else [(0, 1, Z * W)]
    if rels < 2:
        rec = presentation_isomorphism_invariance(pres, ident, ident)
    else:
        rec = presentation_isomorphism_invariance(pres, ident, ident, row_ops=ops)
    assert rec["equal"]
    assert rec["e"] == (1, 1)


def test_iso_invariance_rejects_bad_inverse(free_mod):
    with pytest.raises(NotUnimodular):
        presentation_isomorphism_invariance(
            free_mod, [[Z]], [[Z]])


def test_matrix_module_zero_index():
    mm = curto_window(4)
    for powers in [(1, 1), (2, 2), (1, 3)]:
        rep = homology_dims_windowed(mm, powers)
        assert rep.index == 0
        assert rep.certified


def test_curto_top_corner_kernel():
    mm = curto_window(6)
    rep = homology_dims_windowed(mm, (2, 2))
    assert rep.h[2] == 4


def test_groebner_vs_windowed_paths(catalog_presented):
    for name, m in catalog_presented:
        for powers in [(1, 1), (2, 2), (3, 2)]:
            a = homology_dims(m, powers).h
            b = homology_dims_windowed(m, powers, D=12).h
            assert a == b, (name, powers, a, b)


def test_single_op_matrix_module():
    mm = curto_window(4)
    rep = single_op_report(mm, 0, 10)
    assert rep.index == 0
    assert is_finite(rep.stabilized_kernel_dim)


def test_homology_d3_regular_sequence():
    a3 = PresentedModule(3, 1, [])
    rep = homology_dims(a3, (1, 1, 1))
    assert rep.h == (1, 0, 0, 0)
    assert rep.index == -1  # odd d: index = h3 - h2 + h1 - h0
    rep2 = homology_dims(a3, (2, 1, 2))
    assert rep2.h == (4, 0, 0, 0)
    assert rep2.index == 4 * rep.index


def test_lattice_decomposition_curto():
    mm = curto_window(6)
    labels = mm.labels
    for k in (2, 3):
        xs = [mm.actions[0].power(k), mm.actions[1].power(k)]
        direct = _matrix_koszul_h(xs, mm.dim)
        total = [0, 0, 0]
        for a in range(k):
            for b in range(k):
                idx = [i for i, (s1, s2) in enumerate(labels)
                       if s1 % k == a and s2 % k == b]
                pos = {p: t for t, p in enumerate(idx)}
                subs = []
                for x in xs:
                    entries = {}
                    for (r, c), v in x.entries.items():
                        if c in pos:
                            assert r in pos, "class leakage"
                            entries[(pos[r], pos[c])] = v
                    from kmult.linalg import RatMatrix
                    subs.append(RatMatrix(len(idx), len(idx), entries))
                h = _matrix_koszul_h(subs, len(idx))
                total = [t + hi for t, hi in zip(total, h)]
        assert tuple(total) == direct


def test_kernel_isomorphism_reduction(vo):
    """dim H_1 K(z, w^k; M) equals dim ker(w^k on M/zM), the long-exact-
    sequence identification that drives the one-variable reduction."""
    quo = quotient_by_first(vo)
    for k in (1, 2, 3):
        h1_pair = homology_dims(vo, (1, k)).h[1]
        ker_k = homology_dims(quo, (k,)).h[1]
        assert h1_pair == ker_k


def test_e_limits_matrix_module_vanish():
    el = e_limits(curto_window(4))
    assert (el.e0, el.e1, el.e2) == (0, 0, 0)


def test_rotation_of_matrix_module():
    mm = curto_window(4)
    u = [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
    rot = rotate_pair(mm, u)
    base = homology_dims_windowed(mm, (1, 1)).h
    assert homology_dims_windowed(rot, (1, 1)).h == base


def test_windowed_no_stabilization_raises():
    from kmult.errors import NoStabilization
    from kmult.linalg import RatMatrix
    from kmult.modules import FilteredModel

    class Drifting(FilteredModel):
        # both actions vanish, so the windowed quotient is all of F_D
        # and keeps growing with the window
        d = 2

        def dim(self, m):
            return m + 1

        def action(self, i, m):
            return RatMatrix.zero(m + 2, m + 1)

    with pytest.raises(NoStabilization):
        homology_dims_windowed(Drifting(), (1, 1), D=4)
