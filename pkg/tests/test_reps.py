import math

import numpy as np
import pytest

from cstlab.groups import (GROUP_TAGS, GroupElement, make_group,
                           multiply_elements, sample_haar, sample_haar_arrays,
                           element_class_point)
from cstlab.reps import (IrrepSpec, NotClassDetermined, char_value,
                         char_values_class, char_values_sample, chebU,
                         class_determined, euler_angles, euler_angles_class,
                         evaluable_from_class, list_irreps, rep_matrix,
                         sym_power, trivial_irrep)


def canon_angles(a):
    a = np.mod(a, 2 * np.pi)
    a[a > 2 * np.pi - 1e-7] = 0.0
    return np.sort(a)


def test_sym_power_homomorphism_and_trace():
    rng = np.random.default_rng(0)
    for k in range(5):
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        from cstlab.groups import quat_to_su2
        a = quat_to_su2(q)
        b = quat_to_su2(rng.normal(size=4) / 1.0)
        assert np.abs(sym_power(a, k) @ sym_power(b, k)
                      - sym_power(a @ b, k)).max() < 1e-10
        theta = math.acos(max(-1, min(1, q[0])))
        assert abs(np.trace(sym_power(a, k)) - chebU(k, math.cos(theta))) < 1e-10


def test_catalog_b_c2_cutoff_1():
    cat = list_irreps(make_group("B_C2"), 1)
    byname = {r.name: r for r in cat}
    assert byname["Ind[Sym0xSym1]"].dimension == 4
    assert byname["Ext1[Sym1xSym1]"].dimension == 4
    assert byname["Ext2[Sym1xSym1]"].dimension == 4
    assert byname["Ext1[Sym0xSym0]"].is_trivial


def test_catalog_e_c3_parity_filter():
    cat = list_irreps(make_group("E_C3"), 1)
    k1 = [r for r in cat if r.p1 == 1]
    assert sorted(r.eta[1] for r in k1) == [1, 3, 5]     # odd characters of mu_6
    k0 = [r for r in cat if r.p1 == 0]
    assert sorted(r.eta[1] for r in k0) == [0, 2, 4]


def test_catalog_b_c1_cutoff_0():
    cat = list_irreps(make_group("B_C1"), 0)
    assert len(cat) == 1 and cat[0].is_trivial


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_parity_completeness(tag):
    g = make_group(tag)
    if g.family != "EJ":
        return
    n = g.cyclic_order
    for k in (0, 1, 2, 3):
        etas = [r.eta for r in list_irreps(g, k) if r.p1 == k]
        if g.has_j:
            want = sum(1 for rv in (1, -1) for jv in (1, -1)
                       if rv ** n == (-1) ** k)
            want += sum(1 for l in range(1, n) if (-1) ** l == (-1) ** k)
        else:
            want = n      # characters of mu_2n with fixed parity
        assert len(etas) == want, (tag, k)


def test_dimensions():
    checks = {
        "Sym2xSym3": 12, "Ind[Sym1xSym2]": 12, "Ext2[Sym2xSym2]": 9,
        "Ind[phi2]xSym1": 4, "phi0_1xSym2": 3,
    }
    for tag in ("B_C1", "B_C2", "C_C2"):
        for r in list_irreps(make_group(tag), 5):
            if r.name in checks:
                assert r.dimension == checks.pop(r.name)
    assert not checks


def test_rep_identity_is_identity():
    for tag in GROUP_TAGS:
        g = make_group(tag)
        if g.family == "B":
            el = GroupElement("e", quat1=(1, 0, 0, 0), quat2=(1, 0, 0, 0))
        elif g.family == "C":
            el = GroupElement("e", angle=0.0, quat2=(1, 0, 0, 0))
        else:
            el = GroupElement("e", quat1=(1, 0, 0, 0))
        for r in list_irreps(g, 2):
            m = rep_matrix(r, el)
            assert np.abs(m - np.eye(r.dimension)).max() < 1e-12
            assert abs(char_value(r, el) - r.dimension) < 1e-12


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_homomorphism_random_pairs(tag):
    g = make_group(tag)
    els = sample_haar(g, 20, 17)
    for r in list_irreps(g, 2):
        for x, y in zip(els[:10], els[10:]):
            lhs = rep_matrix(r, x) @ rep_matrix(r, y)
            rhs = rep_matrix(r, multiply_elements(g, x, y))
            assert np.abs(lhs - rhs).max() < 1e-8, r.name


def test_extension_rho_j_squares_to_identity():
    g = make_group("B_C2")
    for n, eps in [(1, 1), (1, 2), (2, 1), (3, 2)]:
        r = IrrepSpec("B_C2", "ExtensionSym", n, eps,
                      dimension=(n + 1) ** 2, name="x")
        el = GroupElement("j", quat1=(1, 0, 0, 0), quat2=(1, 0, 0, 0))
        m = rep_matrix(r, el)
        assert np.abs(m @ m - np.eye((n + 1) ** 2)).max() < 1e-10


@pytest.mark.parametrize("tag", ["B_C2", "C_C2"])
def test_induced_character_vanishes_off_identity(tag):
    g = make_group(tag)
    s = sample_haar_arrays(g, 200, 3)
    for r in list_irreps(g, 3):
        if not r.family.startswith("Induced"):
            continue
        chi = char_values_sample(r, s)
        off = s.components != 0
        assert np.abs(chi[off]).max() == 0.0


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_char_values_sample_match_traces(tag):
    g = make_group(tag)
    s = sample_haar_arrays(g, 15, 23)
    for r in list_irreps(g, 3):
        chi = char_values_sample(r, s)
        for i in range(len(s)):
            tr = np.trace(rep_matrix(r, s.element(i)))
            assert abs(chi[i] - tr) < 1e-8, (r.name, i)


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_class_point_evaluation_matches_matrices(tag):
    g = make_group(tag)
    s = sample_haar_arrays(g, 30, 29)
    a, b = s.class_points()
    for r in list_irreps(g, 3):
        for i in range(len(s)):
            lab = g.component_labels[s.components[i]]
            el = s.element(i)
            if class_determined(r, lab):
                v = char_values_class(r, lab, a[i:i + 1], b[i:i + 1])[0]
                assert abs(v - np.trace(rep_matrix(r, el))) < 1e-8, r.name
                ang = euler_angles_class(r, lab, a[i:i + 1], b[i:i + 1])[0]
                ev = canon_angles(np.angle(np.linalg.eigvals(rep_matrix(r, el))))
                got = canon_angles(ang)
                d = np.abs(ev - got)
                assert np.minimum(d, 2 * np.pi - d).max() < 1e-6, r.name
            else:
                with pytest.raises(NotClassDetermined):
                    char_values_class(r, lab, a[i:i + 1], b[i:i + 1])


def test_not_determined_b_c1_off_diagonal():
    g = make_group("B_C1")
    r = next(x for x in list_irreps(g, 2) if x.name == "Sym1xSym0")
    assert not class_determined(r, "e")
    assert not evaluable_from_class(r)
    # two elements sharing a class point but with different characters
    e1 = GroupElement("e", quat1=(math.cos(0.4), math.sin(0.4), 0, 0),
                      quat2=(math.cos(1.2), math.sin(1.2), 0, 0))
    e2 = GroupElement("e", quat1=(math.cos(1.2), math.sin(1.2), 0, 0),
                      quat2=(math.cos(0.4), math.sin(0.4), 0, 0))
    cp1 = element_class_point(g, e1)
    cp2 = element_class_point(g, e2)
    assert abs(cp1.a - cp2.a) < 1e-12 and abs(cp1.b - cp2.b) < 1e-12
    assert abs(char_value(r, e1) - char_value(r, e2)) > 0.1


def test_b_c2_extension_is_class_determined_on_j():
    """The extension characters on the j component equal
    sign * U_n(-b/2): verified against matrix traces, so arithmetic data
    (a, b, component) determines them."""
    g = make_group("B_C2")
    for r in list_irreps(g, 3):
        if r.family == "ExtensionSym":
            assert evaluable_from_class(r), r.name


def test_c_c2_identity_component_not_determined():
    g = make_group("C_C2")
    for r in list_irreps(g, 2):
        if r.family == "InducedPhiSym":
            assert not class_determined(r, "e")
            assert class_determined(r, "j0")
        if r.family == "Phi0Sym":
            assert class_determined(r, "e") == (r.p2 == 0)


def test_j_e3_odd_linear_not_determined_on_j():
    g = make_group("J_E3")
    bad = [r for r in list_irreps(g, 3)
           if r.eta[0] == "dih1" and r.p1 % 2 == 1]
    assert bad
    for r in bad:
        assert not class_determined(r, "j")
        assert class_determined(r, "e")


def test_char_value_on_class_point():
    from cstlab.groups import ClassPoint
    g = make_group("B_C1")
    r = next(x for x in list_irreps(g, 2) if x.name == "Sym1xSym1")
    t1, t2 = 0.7, 1.9
    cp = ClassPoint(2 * math.cos(t1) + 2 * math.cos(t2),
                    2 + 4 * math.cos(t1) * math.cos(t2), "e")
    want = 4 * math.cos(t1) * math.cos(t2)
    assert abs(char_value(r, cp) - want) < 1e-10


def test_euler_angles_product_fast_path():
    g = make_group("B_C1")
    r = next(x for x in list_irreps(g, 2) if x.name == "Sym2xSym0")
    el = GroupElement("e", quat1=(math.cos(math.pi / 3), math.sin(math.pi / 3), 0, 0),
                      quat2=(1, 0, 0, 0))
    ang = euler_angles(r, el)
    assert np.allclose(np.sort(ang), [-2 * math.pi / 3, 0.0, 2 * math.pi / 3])
    assert len(ang) == r.dimension


def test_euler_angles_sum_matches_char():
    for tag in ("B_C2", "J_E4"):
        g = make_group(tag)
        for el in sample_haar(g, 5, 31):
            for r in list_irreps(g, 2):
                ang = euler_angles(r, el)
                assert len(ang) == r.dimension
                tr = char_value(r, el)
                assert abs(np.exp(1j * ang).sum() - tr) < 1e-8


def test_orthogonality_monte_carlo_small():
    # smoke-scale version of the acceptance orthogonality run
    g = make_group("E_C2_C")
    s = sample_haar_arrays(g, 150_000, 11)
    cat = list_irreps(g, 2)
    chis = [char_values_sample(r, s) for r in cat]
    n = len(s)
    for i in range(len(cat)):
        for j in range(i, len(cat)):
            vals = chis[i] * np.conj(chis[j])
            mean = vals.mean()
            se = max(vals.std() / math.sqrt(n), 1e-12)
            want = 1.0 if i == j else 0.0
            assert abs(mean - want) <= 4.5 * se, (cat[i].name, cat[j].name)


def test_trivial_irrep():
    for tag in GROUP_TAGS:
        r = trivial_irrep(make_group(tag))
        assert r.is_trivial and r.dimension == 1


def test_induced_phi_identity_component_value():
    # chi(Ind phi_m x Sym^0) at a U(1)-angle phi equals 2 cos(m phi)
    g = make_group("C_C2")
    for m in (1, 2, 3):
        r = next(x for x in list_irreps(g, 3) if x.name == f"Ind[phi{m}]xSym0")
        for phi in (0.3, 1.1, 2.9):
            el = GroupElement("e", angle=phi, quat2=(1.0, 0.0, 0.0, 0.0))
            assert abs(char_value(r, el) - 2 * math.cos(m * phi)) < 1e-10
