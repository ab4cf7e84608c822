import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cstlab.groups import (GROUP_TAGS, ClassPoint, GroupElement,
                           UnknownTagError, class_point_of,
                           element_class_point, haar_moment, make_group,
                           multiply_elements, quat_mul, quat_to_su2,
                           realize_matrix, sample_haar, sample_haar_arrays,
                           su2_trace_moment, usp_defect, weyl_density)

CATALAN = {1: 1, 2: 2, 3: 5, 4: 14}


def test_unknown_tag_rejected():
    with pytest.raises(UnknownTagError):
        make_group("B_C3")


def test_component_group_orders():
    want = {"B_C1": 1, "E_C1": 1, "B_C2": 2, "C_C2": 2, "E_C2_RR": 2,
            "E_C2_C": 2, "E_C3": 3, "E_C4": 4, "E_C6": 6,
            "J_E2": 4, "J_E3": 6, "J_E4": 8, "J_E6": 12}
    for tag, order in want.items():
        assert make_group(tag).component_group.order == order


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_generators_symplectic_unitary(tag):
    g = make_group(tag)
    for m in g.generators:
        assert usp_defect(g, m) < 1e-10
    g.component_group.check()
    # generator labels generate the component group
    gen = {g.component_group.identity}
    gen |= {g.component_group.index(lab) for lab in g.generator_labels}
    while True:
        new = {g.component_group.mul[a][b] for a in gen for b in gen}
        if new <= gen:
            break
        gen |= new
    assert gen == set(range(g.component_group.order))


@pytest.mark.parametrize("tag", ["J_E2", "J_E3", "J_E4", "J_E6"])
def test_dihedral_relation(tag):
    g = make_group(tag)
    t = g.component_group
    j, d = t.index("j"), t.index("d")
    assert t.mul[t.mul[j][d]][j] == t.inverse[d]
    # matrix-level: J Delta J^-1 = Delta^-1
    delta = g.generators[0]
    jm = g.generators[1]
    assert np.abs(jm @ delta @ np.linalg.inv(jm)
                  - np.linalg.inv(delta)).max() < 1e-10


def test_b_family_block_form():
    g = make_group("B_C1")
    eps = np.array([[0, 1], [-1, 0]])
    assert np.array_equal(g.symplectic_form.real[:2, :2], eps)
    assert np.array_equal(g.symplectic_form.real[2:, 2:], eps)
    h = make_group("E_C3")
    assert np.array_equal(h.symplectic_form.real[:2, 2:], np.eye(2))
    # Delta_3 realization
    el = GroupElement(component="d", quat1=(1.0, 0.0, 0.0, 0.0))
    m = realize_matrix(h, el)
    z = np.exp(1j * np.pi / 3)
    assert np.abs(m - np.diag([z, z, z.conjugate(), z.conjugate()])).max() < 1e-12


@given(st.integers(0, 2 ** 63 - 1))
@settings(max_examples=20, deadline=None)
def test_sampling_deterministic(seed):
    g = make_group("J_E3")
    a = sample_haar_arrays(g, 50, seed)
    b = sample_haar_arrays(g, 50, seed)
    assert np.array_equal(a.components, b.components)
    assert np.array_equal(a.quat1, b.quat1)


@given(st.tuples(*[st.floats(-1, 1) for _ in range(4)]),
       st.tuples(*[st.floats(-1, 1) for _ in range(4)]))
@settings(max_examples=50, deadline=None)
def test_quaternion_homomorphism(q1, q2):
    n1 = math.sqrt(sum(x * x for x in q1))
    n2 = math.sqrt(sum(x * x for x in q2))
    if n1 < 1e-3 or n2 < 1e-3:
        return
    q1 = tuple(x / n1 for x in q1)
    q2 = tuple(x / n2 for x in q2)
    lhs = quat_to_su2(q1) @ quat_to_su2(q2)
    rhs = quat_to_su2(quat_mul(q1, q2))
    assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_sampled_matrices_in_group(tag):
    g = make_group(tag)
    for el in sample_haar(g, 25, 42):
        m = realize_matrix(g, el)
        assert usp_defect(g, m) < 1e-9
        cp = class_point_of(g, m, el.component)
        assert -4 - 1e-9 <= cp.a <= 4 + 1e-9
        assert -2 - 1e-9 <= cp.b <= 6 + 1e-9
        cp2 = element_class_point(g, el)
        assert abs(cp.a - cp2.a) < 1e-9 and abs(cp.b - cp2.b) < 1e-9


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_symplectic_closure_and_component_mul(tag):
    g = make_group(tag)
    els = sample_haar(g, 20, 5)
    t = g.component_group
    for x, y in zip(els[:10], els[10:]):
        mz = realize_matrix(g, x) @ realize_matrix(g, y)
        assert usp_defect(g, mz) < 1e-9
        z = multiply_elements(g, x, y)
        ci = t.mul[t.index(x.component)][t.index(y.component)]
        assert t.labels[ci] == z.component
        assert np.abs(realize_matrix(g, z) - mz).max() < 1e-9


def test_conjugation_invariance():
    g = make_group("B_C2")
    els = sample_haar(g, 12, 8)
    for el, u in zip(els[:6], els[6:]):
        m = realize_matrix(g, el)
        mu = realize_matrix(g, u)
        conj = mu @ m @ np.linalg.inv(mu)
        # trace invariants do not move under conjugation
        comp = el.component if u.component == "e" else el.component
        cp1 = class_point_of(g, m, el.component)
        cp2 = class_point_of(g, conj, el.component)
        assert abs(cp1.a - cp2.a) < 1e-8 and abs(cp1.b - cp2.b) < 1e-8


def test_class_point_examples():
    g = make_group("B_C1")
    cp = class_point_of(g, np.eye(4, dtype=complex), "e")
    assert (cp.a, cp.b) == (4.0, 6.0)
    cp = class_point_of(g, -np.eye(4, dtype=complex), "e")
    assert (cp.a, cp.b) == (-4.0, 6.0)
    # diag(i, i, -i, -i) is symplectic for the E/J-family form only
    h = make_group("E_C2_C")
    m = np.diag([1j, 1j, -1j, -1j])
    cp = class_point_of(h, m, "d")
    assert abs(cp.a) < 1e-12 and abs(cp.b - 2.0) < 1e-12


def test_class_point_rejects_nonsymplectic():
    g = make_group("B_C1")
    with pytest.raises(ValueError, match="membership"):
        class_point_of(g, 2.0 * np.eye(4, dtype=complex), "e")


def test_eigenangle_reconstruction():
    cp = ClassPoint(a=1.3, b=2.4, component="e")
    c1, c2 = cp.eigenangle_cosines()
    assert abs(2 * c1 + 2 * c2 - cp.a) < 1e-12
    assert abs(2 + 4 * c1 * c2 - cp.b) < 1e-12


def test_su2_catalan_moments():
    for m, cat in CATALAN.items():
        assert abs(su2_trace_moment(2 * m) - cat) < 1e-8
        assert abs(su2_trace_moment(2 * m - 1)) < 1e-8


def test_haar_moment_reference_values():
    b1 = make_group("B_C1")
    assert abs(haar_moment(b1, 0, 0) - 1.0) < 1e-10
    assert abs(haar_moment(b1, 2, 0) - 2.0) < 1e-8
    assert abs(haar_moment(b1, 4, 0) - 10.0) < 1e-8
    assert abs(haar_moment(b1, 0, 1) - 2.0) < 1e-8
    assert abs(haar_moment(make_group("E_C1"), 0, 1) - 3.0) < 1e-8


def test_haar_moment_restrict_and_errors():
    g = make_group("B_C2")
    full = haar_moment(g, 0, 1)
    e_only = haar_moment(g, 0, 1, restrict="e")
    j_only = haar_moment(g, 0, 1, restrict="j")
    assert abs(full - (e_only + j_only) / 2) < 1e-10
    assert abs(e_only - 2.0) < 1e-8
    assert abs(j_only) < 1e-8
    with pytest.raises(KeyError):
        haar_moment(g, 0, 1, restrict="nope")
    with pytest.raises(ValueError):
        haar_moment(g, 65, 0)


@pytest.mark.parametrize("tag", GROUP_TAGS)
def test_moments_match_monte_carlo(tag):
    # measure-consistency invariant: full (j, k) in {0..3}^2 grid at 1e6
    g = make_group(tag)
    s = sample_haar_arrays(g, 1_000_000, 7)
    a, b = s.class_points()
    for j in range(4):
        for k in range(4):
            vals = a ** j * b ** k
            se = vals.std() / math.sqrt(len(vals))
            assert abs(vals.mean() - haar_moment(g, j, k)) <= 4 * se + 1e-9, \
                (j, k)


def test_component_frequencies_binomial():
    g = make_group("B_C2")
    s = sample_haar_arrays(g, 100_000, 3)
    frac = (s.components == 1).mean()
    assert 0.49 < frac < 0.51


def test_j_component_trace_zero():
    g = make_group("J_E2")
    s = sample_haar_arrays(g, 10_000, 1)
    a, _ = s.class_points()
    jmask = np.array([g.component_has_j(g.component_labels[c])
                      for c in s.components])
    assert np.abs(a[jmask]).max() < 1e-12


def test_weyl_density_values_and_normalization():
    b1 = make_group("B_C1")
    v = weyl_density(b1, "e", math.pi / 2, math.pi / 2)
    assert abs(v - 4 / math.pi ** 2) < 1e-12
    e1 = make_group("E_C1")
    assert weyl_density(e1, "e", 0.0) == 0.0
    with pytest.raises(ValueError):
        weyl_density(e1, "e", -0.5)
    with pytest.raises(ValueError):
        weyl_density(b1, "e", 0.5)      # missing second angle
    from cstlab.groups import _gauss_legendre
    t, w = _gauss_legendre(256)
    for tag in GROUP_TAGS:
        g = make_group(tag)
        for lab in g.component_labels:
            try:
                dens = weyl_density(g, lab, t[:, None], t[None, :])
                tot = float((w[:, None] * w[None, :] * dens).sum())
            except ValueError:
                tot = float((w * weyl_density(g, lab, t)).sum())
            assert abs(tot - 1.0) < 1e-10, (tag, lab)


def test_sample_haar_list_matches_arrays():
    g = make_group("C_C2")
    els = sample_haar(g, 10, 99)
    arr = sample_haar_arrays(g, 10, 99)
    for i, el in enumerate(els):
        assert el.component == g.component_labels[arr.components[i]]
        assert el.angle == arr.angles[i]


def test_e_c1_has_no_generators():
    g = make_group("E_C1")
    assert g.generators == ()
    assert g.component_group.order == 1


def test_b_c2_j_conjugation_swaps_factors():
    # conjugating a block-diagonal pair by the J-coset representative
    # realizes (A, B) -> (J0 B J0^-1, J0 A J0^-1)
    g = make_group("B_C2")
    rng = np.random.default_rng(12)
    q1 = rng.normal(size=4); q1 /= np.linalg.norm(q1)
    q2 = rng.normal(size=4); q2 /= np.linalg.norm(q2)
    a, b = quat_to_su2(q1), quat_to_su2(q2)
    jm = realize_matrix(g, GroupElement("j", quat1=(1, 0, 0, 0),
                                        quat2=(1, 0, 0, 0)))
    emb = realize_matrix(g, GroupElement("e", quat1=tuple(q1), quat2=tuple(q2)))
    got = jm @ emb @ np.linalg.inv(jm)
    j0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    want = np.zeros((4, 4), dtype=complex)
    want[:2, :2] = j0 @ b @ np.linalg.inv(j0)
    want[2:, 2:] = j0 @ a @ np.linalg.inv(j0)
    assert np.abs(got - want).max() < 1e-10
