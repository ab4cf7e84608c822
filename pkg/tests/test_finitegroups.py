import itertools

import pytest

from cstlab.finitegroups import (FiniteGroupTable, cyclic_table,
                                 dihedral_table, product_table, trivial_table)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8])
def test_cyclic_tables(n):
    t = cyclic_table(n)
    t.check()
    assert t.order == n
    assert t.is_abelian()
    assert len(t.characters) == n


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_dihedral_tables(n):
    t = dihedral_table(n)
    t.check()
    assert t.order == 2 * n
    assert t.is_abelian() == (n == 2)
    # j d j^-1 = d^-1
    j, d = t.index("j"), t.index("d")
    conj = t.mul[t.mul[j][d]][t.inverse[j]]
    assert conj == t.inverse[d]


def test_dihedral_two_dim_characters_vanish_on_reflections():
    t = dihedral_table(4)
    for r, name in enumerate(t.character_names):
        if not name.startswith("rot"):
            continue
        for c, cls in enumerate(t.classes):
            if any(i >= 4 for i in cls):     # reflection class
                assert t.characters[r][c] == 0


def test_product_table():
    t = product_table(cyclic_table(2), cyclic_table(3))
    t.check()
    assert t.order == 6
    assert t.is_abelian()


def test_trivial_table():
    t = trivial_table()
    t.check()
    assert t.order == 1


def test_bad_table_rejected():
    t = cyclic_table(3)
    broken = FiniteGroupTable(t.labels, t.mul, t.inverse, t.classes,
                              ((1.0, 1.0, 1.0), (1.0, 1.0, 1.0),
                               (1.0, 1.0, 1.0)))
    with pytest.raises(AssertionError):
        broken.check()
