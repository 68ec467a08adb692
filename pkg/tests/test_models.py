from fractions import Fraction

import pytest

from kmult.errors import InvalidParams, UnknownModel
from kmult.linalg import RatMatrix
from kmult.models import (CATALOG, bidisc_coupled, build, catalog_names,
                          curto_window, random_battery)
from kmult.modules import check_commuting, slice_quotient_dim
from kmult.poly import Polynomial, VectorPolynomial, mono_deg


def test_catalog_names_stable():
    assert "nonpoly_pair" in catalog_names()
    assert "bidisc_coupled" in catalog_names()
    assert build("nonpoly").relations  # alias works


def test_unknown_model():
    with pytest.raises(UnknownModel):
        build("does_not_exist")


def test_invalid_params():
    with pytest.raises(InvalidParams):
        build("curto_window", R=1)


def test_curto_window_sizes():
    for R in (2, 4, 6):
        mm = build("curto_window", R=R)
        assert mm.dim == (2 * R + 1) ** 2 - R * R
        assert check_commuting(mm)


def test_curto_window_r4_count():
    assert build("curto_window", R=4).dim == 65


def test_nonpoly_structure():
    m = build("nonpoly_pair")
    assert m.gens == 1 and len(m.relations) == 1
    from kmult.modules import box_quotient_dim
    for k in range(1, 9):
        expect = 2 * k if k % 2 == 0 else 2 * k - 1
        assert box_quotient_dim(m, (k, k)) == expect


def test_vanishing_origin_generators():
    m = build("vanishing_origin")
    assert m.n == 1 and len(m.generators) == 2
    degs = sorted(g.degree() for g in m.generators)
    assert degs == [1, 1]


def test_bidisc_grid_closed_form():
    bd = bidisc_coupled()
    for s in range(1, 5):
        for t in range(1, 5):
            v, stab = slice_quotient_dim(bd, (s, t), 12)
            assert stab
            assert v == s * t + min(s, t)


def test_battery_determinism():
    a = random_battery(7, 10)
    b = random_battery(7, 10)
    assert all(x.generators == y.generators and x.n == y.n for x, y in zip(a, b))
    c = random_battery(8, 10)
    assert any(x.generators != y.generators for x, y in zip(a, c))


def test_battery_members_valid():
    for m in random_battery(3, 12, n_max=2, gen_degree_max=3):
        assert m.generators
        assert all(not g.is_zero() for g in m.generators)
        assert all(g.degree() <= 3 for g in m.generators)
        assert 1 <= m.n <= 2


def test_catalog_entries_buildable():
    for entry in CATALOG.values():
        model = entry.build()
        assert model is not None


def test_matrix_pair_realizes_cyclic_quotient():
    """The window version of the two-shift matrix pair on H + H is
    intertwined with the cyclic model A/(z^2 - w^2) by the map sending
    z^a w^e (e in {0,1}) to the standard basis pair ((z^a, 0), (0, z^a))."""
    deg = 12
    # basis of the window: (p, a) = z^a in summand p, a <= deg
    index = {}
    for p in range(2):
        for a in range(deg + 1):
            index[(p, a)] = len(index)
    n = len(index)
    t1 = {}
    t2 = {}
    for (p, a), i in index.items():
        if a + 1 <= deg:
            t1[(index[(p, a + 1)], i)] = Fraction(1)
    for (p, a), i in index.items():
        if p == 0:
            t2[(index[(1, a)], i)] = Fraction(1)        # lower-left block is 1
        elif a + 2 <= deg:
            t2[(index[(0, a + 2)], i)] = Fraction(1)    # upper-right block is M_z^2
    T1 = RatMatrix(n, n, t1)
    T2 = RatMatrix(n, n, t2)

    def image(a, e):
        return index[(e, a)] if e in (0, 1) else None

    # the map intertwines both actions wherever the window holds the image
    for a in range(deg - 2):
        for e in (0, 1):
            src = image(a, e)
            # z action: z * z^a w^e = z^{a+1} w^e
            assert T1.column(src)[image(a + 1, e)] == 1
            assert sum(1 for x in T1.column(src) if x) == 1
            # w action: w * z^a = z^a w;  w * z^a w = z^a w^2 = z^{a+2}
            col = T2.column(src)
            target = image(a, 1) if e == 0 else image(a + 2, 0)
            assert col[target] == 1
            assert sum(1 for x in col if x) == 1
    # the matrix pair satisfies the defining relation on the window interior
    diff = T2.mul(T2).sub(T1.mul(T1))
    for (p, a), i in index.items():
        if a + 2 <= deg:
            assert all(diff.entry(j, i) == 0 for j in range(n))


def test_single_gen_parses_text():
    m = build("single_gen", f="(z^2, w)")
    assert m.n == 2 and m.generators[0].degree() == 2
