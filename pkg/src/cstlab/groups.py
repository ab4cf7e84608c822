"""The thirteen Sato-Tate groups of abelian surfaces that are potentially
of GL(2)-type, as samplable compact subgroups of USp(4).

Three identity components occur, each with its own fixed symplectic form:

* ``SU2xSU2``   -- block-diagonal SU(2) x SU(2), form Omega = diag(eps, eps)
                   with eps = [[0,1],[-1,0]]  (types B_C1, B_C2);
* ``NU1factor_SU2`` -- U(1) x SU(2) block-diagonal, same form (type C_C2);
* ``SU2diag``   -- A -> diag(A, conj(A)), form Omega = [[0,I],[-I,0]]
                   (E and J families).

The component groups are generated by

    Delta_n = diag(e^{i pi/n} I, e^{-i pi/n} I)   and/or
    J       = [[0, J0], [-J0, 0]],   J0 = [[0,1],[-1,0]],

with J Delta_n J^-1 = Delta_n^-1.  A conjugacy class is summarised by the
class point (a, b, component): a = trace, b = second elementary symmetric
function of the eigenvalues.

Eigenangle structure per component (theta is the eigenangle of the SU(2)
parameter, psi the eigenangle of conj(B)A, phi the U(1) angle):

    family   component     (a, b)
    ------   ----------    ----------------------------------------
    B        identity      (2cos t1 + 2cos t2, 2 + 4cos t1 cos t2)
    B_C2     j             (0, -2cos psi)
    C        identity      (2cos phi + 2cos th, 2 + 4cos phi cos th)
    C_C2     j0            (2cos th, 2)
    E/J      Delta^k       (2 c cos th, c^2 - 2 + 4cos^2 th), c = 2cos(k pi/n)
    J(E_n)   Delta^k J     (0, 2 - 4 cos^2 th)

All sampling is seeded and vectorised; SU(2) Haar = uniform unit
quaternions (four normals, normalised), U(1) Haar = uniform angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .finitegroups import FiniteGroupTable, cyclic_table, dihedral_table, trivial_table

GROUP_TAGS = (
    "B_C1", "B_C2", "C_C2",
    "E_C1", "E_C2_RR", "E_C2_C", "E_C3", "E_C4", "E_C6",
    "J_E2", "J_E3", "J_E4", "J_E6",
)

CONSTRUCTION_TOL = 1e-10
MEMBERSHIP_TOL = 1e-8

_J0 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
_EPS_FORM = np.block([[_J0, np.zeros((2, 2))], [np.zeros((2, 2)), _J0]])
_STD_FORM = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
_J4 = np.block([[np.zeros((2, 2)), _J0], [-_J0, np.zeros((2, 2))]])


class UnknownTagError(ValueError):
    pass


class NotInGroupError(ValueError):
    """Raised when a matrix fails the USp(4) membership test."""


def quat_to_su2(q) -> np.ndarray:
    """SU(2) matrix of a unit quaternion (w, x, y, z)."""
    w, x, y, z = q
    return np.array([[w + 1j * x, y + 1j * z], [-y + 1j * z, w - 1j * x]])


def su2_to_quat(m: np.ndarray) -> tuple[float, float, float, float]:
    return (m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag)


def quat_mul(q1, q2):
    """Hamilton product; quat_to_su2 turns it into matrix product."""
    w1, x1, y1, z1 = q1
    w2, x2, y2, z2 = q2
    return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)


def quat_mul_arrays(q1: np.ndarray, q2: np.ndarray) -> np.ndarray:
    """Hamilton product on (n, 4) arrays."""
    w1, x1, y1, z1 = q1.T
    w2, x2, y2, z2 = q2.T
    return np.stack([w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                     w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                     w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                     w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2], axis=1)


def quat_conj_su2(q: np.ndarray) -> np.ndarray:
    """Quaternion of the entrywise complex conjugate of the SU(2) matrix."""
    out = np.array(q, dtype=float, copy=True)
    if out.ndim == 1:
        out[1] = -out[1]
        out[3] = -out[3]
    else:
        out[:, 1] = -out[:, 1]
        out[:, 3] = -out[:, 3]
    return out


@dataclass(frozen=True)
class ClassPoint:
    """Conjugacy-class invariant of an element of a Sato-Tate group."""

    a: float
    b: float
    component: str

    def eigenangle_cosines(self) -> tuple[float, float]:
        """The unordered pair (cos t1, cos t2) with eigenvalues e^{+-i t}.

        2cos t1, 2cos t2 are the roots of z^2 - a z + (b - 2).
        """
        disc = self.a * self.a - 4.0 * (self.b - 2.0)
        if disc < -1e-9:
            raise ValueError(f"class point ({self.a}, {self.b}) is infeasible")
        r = math.sqrt(max(disc, 0.0))
        c1 = (self.a + r) / 4.0
        c2 = (self.a - r) / 4.0
        return (min(max(c1, -1.0), 1.0), min(max(c2, -1.0), 1.0))


@dataclass(frozen=True)
class GroupElement:
    """A group element: component label plus identity-component parameters.

    ``quat1``/``quat2`` are unit quaternions for SU(2) factors, ``angle`` is
    a U(1) angle.  Which fields are set depends on the family:
    B: (quat1, quat2); C: (angle, quat2); E/J: quat1 only.
    """

    component: str
    quat1: tuple[float, float, float, float] | None = None
    quat2: tuple[float, float, float, float] | None = None
    angle: float | None = None


@dataclass(frozen=True)
class SatoTateGroupSpec:
    """One of the thirteen groups, with generators and component table."""

    tag: str
    identity_component: str          # SU2xSU2 | NU1factor_SU2 | SU2diag
    component_group: FiniteGroupTable
    symplectic_form: np.ndarray
    generators: tuple[np.ndarray, ...]
    generator_labels: tuple[str, ...]
    cyclic_order: int = 1            # n in Delta_n, 1 when absent
    has_j: bool = False

    @property
    def family(self) -> str:
        return {"SU2xSU2": "B", "NU1factor_SU2": "C", "SU2diag": "EJ"}[
            self.identity_component]

    @property
    def component_labels(self) -> tuple[str, ...]:
        return self.component_group.labels

    def component_index(self, label: str) -> int:
        return self.component_group.index(label)

    def delta_exponent(self, label: str) -> int:
        """Rotation exponent k of a component Delta^k (J-part stripped)."""
        body = label[1:] if label.startswith("j") else label
        if body in ("e", ""):
            return 0
        if body == "d":
            return 1
        return int(body[1:])

    def component_has_j(self, label: str) -> bool:
        return label.startswith("j")


def _component_table(tag: str) -> tuple[FiniteGroupTable, int, bool]:
    if tag in ("B_C1", "E_C1"):
        return trivial_table(), 1, False
    if tag in ("B_C2", "E_C2_RR"):
        # generated by J
        return cyclic_table(2, labels=("e", "j")), 1, True
    if tag == "C_C2":
        return cyclic_table(2, labels=("e", "j0")), 1, True
    if tag == "E_C2_C":
        return cyclic_table(2), 2, False
    if tag in ("E_C3", "E_C4", "E_C6"):
        n = int(tag[-1])
        return cyclic_table(n), n, False
    if tag.startswith("J_E"):
        n = int(tag[-1])
        return dihedral_table(n), n, True
    raise UnknownTagError(f"unknown Sato-Tate group tag {tag!r}")


@lru_cache(maxsize=None)
def make_group(tag: str) -> SatoTateGroupSpec:
    """Build the group spec for one of the thirteen tags."""
    if tag not in GROUP_TAGS:
        raise UnknownTagError(f"unknown Sato-Tate group tag {tag!r}")
    table, n, has_j = _component_table(tag)

    gens: list[np.ndarray] = []
    glabels: list[str] = []
    if tag.startswith("B") or tag == "C_C2":
        form = _EPS_FORM
        ident = "SU2xSU2" if tag.startswith("B") else "NU1factor_SU2"
        if tag == "B_C2":
            gens, glabels = [_J4], ["j"]
        elif tag == "C_C2":
            j0_block = np.block([[_J0, np.zeros((2, 2))],
                                 [np.zeros((2, 2)), np.eye(2)]])
            gens, glabels = [j0_block], ["j0"]
    else:
        form = _STD_FORM
        ident = "SU2diag"
        if n > 1:
            z = np.exp(1j * np.pi / n)
            delta = np.diag([z, z, z.conjugate(), z.conjugate()])
            gens.append(delta)
            glabels.append("d")
        if has_j:
            gens.append(_J4)
            glabels.append("j")
    return SatoTateGroupSpec(tag=tag, identity_component=ident,
                             component_group=table, symplectic_form=form,
                             generators=tuple(gens),
                             generator_labels=tuple(glabels),
                             cyclic_order=n, has_j=has_j)


def usp_defect(spec: SatoTateGroupSpec, m: np.ndarray) -> float:
    """Max-norm defect of the USp(4) membership conditions for m."""
    om = spec.symplectic_form
    d1 = np.abs(m.T @ om @ m - om).max()
    d2 = np.abs(m.conj().T @ m - np.eye(4)).max()
    return float(max(d1, d2))


# ---------------------------------------------------------------------------
# realization and class points


def _component_rep(spec: SatoTateGroupSpec, label: str) -> np.ndarray:
    """A fixed 4x4 representative of the coset named by the label."""
    fam = spec.family
    if fam == "B":
        if label == "e":
            return np.eye(4, dtype=complex)
        if label == "j":
            return _J4
    elif fam == "C":
        if label == "e":
            return np.eye(4, dtype=complex)
        if label == "j0":
            return np.block([[_J0, np.zeros((2, 2))],
                             [np.zeros((2, 2)), np.eye(2)]])
    else:
        k = spec.delta_exponent(label)
        n = spec.cyclic_order
        z = np.exp(1j * np.pi * k / n)
        rep = np.diag([z, z, z.conjugate(), z.conjugate()])
        if spec.component_has_j(label):
            rep = rep @ _J4
        return rep
    raise KeyError(f"component {label!r} not in group {spec.tag}")


def realize_matrix(spec: SatoTateGroupSpec, element: GroupElement) -> np.ndarray:
    """4x4 unitary-symplectic matrix: coset representative times the
    embedded identity-component parameters."""
    if element.component not in spec.component_labels:
        raise KeyError(f"component {element.component!r} not in {spec.tag}")
    fam = spec.family
    if fam == "B":
        a = quat_to_su2(element.quat1)
        b = quat_to_su2(element.quat2)
        body = np.block([[a, np.zeros((2, 2))], [np.zeros((2, 2)), b]])
    elif fam == "C":
        u = np.exp(1j * element.angle)
        d = np.diag([u, u.conjugate()])
        b = quat_to_su2(element.quat2)
        body = np.block([[d, np.zeros((2, 2))], [np.zeros((2, 2)), b]])
    else:
        a = quat_to_su2(element.quat1)
        body = np.block([[a, np.zeros((2, 2))], [np.zeros((2, 2)), a.conj()]])
    return _component_rep(spec, element.component) @ body


def class_point_of(spec: SatoTateGroupSpec, matrix: np.ndarray,
                   component: str) -> ClassPoint:
    """Class point (trace, second elementary symmetric function, component).

    Rejects matrices outside USp(4) w.r.t. the group's form.
    """
    defect = usp_defect(spec, matrix)
    if defect > MEMBERSHIP_TOL:
        raise NotInGroupError(
            f"matrix fails USp(4) membership: defect {defect:.3e} > {MEMBERSHIP_TOL}")
    if component not in spec.component_labels:
        raise KeyError(f"component {component!r} not in {spec.tag}")
    tr = matrix.trace()
    tr2 = (matrix @ matrix).trace()
    b = (tr * tr - tr2) / 2.0
    if abs(tr.imag) > 1e-9 or abs(b.imag) > 1e-9:
        raise NotInGroupError("trace invariants have non-real parts")
    return ClassPoint(a=float(tr.real), b=float(b.real), component=component)


def element_class_point(spec: SatoTateGroupSpec, element: GroupElement) -> ClassPoint:
    """Class point straight from the parameters (no 4x4 matrix needed)."""
    fam = spec.family
    if fam == "B":
        if element.component == "e":
            t1 = 2.0 * element.quat1[0]
            t2 = 2.0 * element.quat2[0]
            return ClassPoint(t1 + t2, 2.0 + t1 * t2, "e")
        q = quat_mul(quat_conj_su2(np.array(element.quat2)), element.quat1)
        return ClassPoint(0.0, -2.0 * q[0], element.component)
    if fam == "C":
        t2 = 2.0 * element.quat2[0]
        if element.component == "e":
            t1 = 2.0 * math.cos(element.angle)
            return ClassPoint(t1 + t2, 2.0 + t1 * t2, "e")
        return ClassPoint(t2, 2.0, element.component)
    w = element.quat1[0]
    if spec.component_has_j(element.component):
        return ClassPoint(0.0, 2.0 - 4.0 * w * w, element.component)
    k = spec.delta_exponent(element.component)
    c = 2.0 * math.cos(math.pi * k / spec.cyclic_order)
    return ClassPoint(2.0 * c * w, c * c - 2.0 + 4.0 * w * w, element.component)


# ---------------------------------------------------------------------------
# Haar sampling


@dataclass
class HaarSample:
    """Struct-of-arrays Haar sample; the vectorised twin of
    list[GroupElement]."""

    spec: SatoTateGroupSpec
    components: np.ndarray                 # (n,) indices into component_labels
    quat1: np.ndarray | None = None        # (n, 4)
    quat2: np.ndarray | None = None        # (n, 4)
    angles: np.ndarray | None = None       # (n,)

    def __len__(self) -> int:
        return len(self.components)

    def class_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised (a, b) arrays."""
        spec = self.spec
        n = len(self)
        fam = spec.family
        a = np.empty(n)
        b = np.empty(n)
        if fam == "B":
            t1 = 2.0 * self.quat1[:, 0]
            t2 = 2.0 * self.quat2[:, 0]
            a[:] = t1 + t2
            b[:] = 2.0 + t1 * t2
            if spec.has_j:
                jmask = self.components == spec.component_index("j")
                if jmask.any():
                    q = quat_mul_arrays(quat_conj_su2(self.quat2[jmask]),
                                        self.quat1[jmask])
                    a[jmask] = 0.0
                    b[jmask] = -2.0 * q[:, 0]
        elif fam == "C":
            t1 = 2.0 * np.cos(self.angles)
            t2 = 2.0 * self.quat2[:, 0]
            a[:] = t1 + t2
            b[:] = 2.0 + t1 * t2
            jmask = self.components == spec.component_index("j0")
            a[jmask] = t2[jmask]
            b[jmask] = 2.0
        else:
            w = self.quat1[:, 0]
            nn = spec.cyclic_order
            for idx, label in enumerate(spec.component_labels):
                mask = self.components == idx
                if not mask.any():
                    continue
                if spec.component_has_j(label):
                    a[mask] = 0.0
                    b[mask] = 2.0 - 4.0 * w[mask] ** 2
                else:
                    c = 2.0 * math.cos(math.pi * spec.delta_exponent(label) / nn)
                    a[mask] = 2.0 * c * w[mask]
                    b[mask] = c * c - 2.0 + 4.0 * w[mask] ** 2
        return a, b

    def element(self, i: int) -> GroupElement:
        label = self.spec.component_labels[self.components[i]]
        kw = {}
        if self.quat1 is not None:
            kw["quat1"] = tuple(self.quat1[i])
        if self.quat2 is not None:
            kw["quat2"] = tuple(self.quat2[i])
        if self.angles is not None:
            kw["angle"] = float(self.angles[i])
        return GroupElement(component=label, **kw)

    def elements(self) -> list[GroupElement]:
        return [self.element(i) for i in range(len(self))]


def _unit_quats(rng: np.random.Generator, n: int) -> np.ndarray:
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return q


def sample_haar_arrays(spec: SatoTateGroupSpec, count: int, seed: int) -> HaarSample:
    """Haar sample as arrays.  Separate child streams are spawned for the
    component choice and for each continuous parameter, so drawing more of
    one never perturbs the others."""
    if count < 1:
        raise ValueError("count must be >= 1")
    ss = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1),
                                spawn_key=(ord(spec.tag[0]), spec.cyclic_order,
                                           int(spec.has_j)))
    comp_ss, p1_ss, p2_ss = ss.spawn(3)
    ncomp = spec.component_group.order
    comps = (np.random.default_rng(comp_ss).integers(0, ncomp, size=count)
             if ncomp > 1 else np.zeros(count, dtype=np.int64))
    fam = spec.family
    if fam == "B":
        return HaarSample(spec, comps,
                          quat1=_unit_quats(np.random.default_rng(p1_ss), count),
                          quat2=_unit_quats(np.random.default_rng(p2_ss), count))
    if fam == "C":
        angles = np.random.default_rng(p1_ss).uniform(0.0, 2.0 * np.pi, size=count)
        return HaarSample(spec, comps, angles=angles,
                          quat2=_unit_quats(np.random.default_rng(p2_ss), count))
    return HaarSample(spec, comps,
                      quat1=_unit_quats(np.random.default_rng(p1_ss), count))


def sample_haar(spec: SatoTateGroupSpec, count: int, seed: int) -> list[GroupElement]:
    """Haar-distributed group elements, deterministic in the seed."""
    return sample_haar_arrays(spec, count, seed).elements()


def multiply_elements(spec: SatoTateGroupSpec, g: GroupElement,
                      h: GroupElement) -> GroupElement:
    """Group multiplication in parameter form (component via the table)."""
    table = spec.component_group
    ci = table.mul[spec.component_index(g.component)][spec.component_index(h.component)]
    label = spec.component_labels[ci]
    fam = spec.family
    if fam == "EJ":
        # both Delta and J commute with the embedded SU(2); the product of
        # the two coset representatives may differ from the canonical one
        # by -I, which is absorbed into the quaternion.
        q = quat_mul(g.quat1, h.quat1)
        prod_rep = _component_rep(spec, g.component) @ _component_rep(spec, h.component)
        canon = _component_rep(spec, label)
        ratio = (prod_rep @ np.linalg.inv(canon))[0, 0].real
        if ratio < 0:
            q = tuple(-x for x in q)
        return GroupElement(component=label, quat1=q)
    if fam == "B":
        # move g's identity part across h's coset representative:
        # J (A,B) J^-1 = (J0 B J0^-1, J0 A J0^-1)
        qa, qb = g.quat1, g.quat2
        if spec.component_has_j(h.component):
            # compute via matrices to keep the convention in one place
            m = realize_matrix(spec, g) @ realize_matrix(spec, h)
            rep_inv = np.linalg.inv(_component_rep(spec, label))
            body = rep_inv @ m
            return GroupElement(component=label,
                                quat1=su2_to_quat(body[:2, :2]),
                                quat2=su2_to_quat(body[2:, 2:]))
        return GroupElement(component=label, quat1=quat_mul(qa, h.quat1),
                            quat2=quat_mul(qb, h.quat2))
    m = realize_matrix(spec, g) @ realize_matrix(spec, h)
    rep_inv = np.linalg.inv(_component_rep(spec, label))
    body = rep_inv @ m
    u = body[0, 0]
    return GroupElement(component=label, angle=float(np.angle(u)),
                        quat2=su2_to_quat(body[2:, 2:]))


# ---------------------------------------------------------------------------
# Weyl densities and Haar moments

_SIN2 = "sin2"       # (2/pi) sin^2 t on [0, pi]
_UNIFORM = "unif"    # 1/pi on [0, pi]


def _component_angle_model(spec: SatoTateGroupSpec, label: str):
    """((density kinds), map angles -> (a, b)) for one component.

    Densities are over [0, pi] per axis; the class-point map encodes the
    eigenvalue structure of the component (see module docstring).
    """
    fam = spec.family
    if fam == "B":
        if label == "e":
            return (_SIN2, _SIN2), lambda t1, t2: (
                2 * np.cos(t1) + 2 * np.cos(t2),
                2 + 4 * np.cos(t1) * np.cos(t2))
        return (_SIN2,), lambda psi: (np.zeros_like(psi), -2 * np.cos(psi))
    if fam == "C":
        if label == "e":
            return (_UNIFORM, _SIN2), lambda phi, th: (
                2 * np.cos(phi) + 2 * np.cos(th),
                2 + 4 * np.cos(phi) * np.cos(th))
        return (_SIN2,), lambda th: (2 * np.cos(th), np.full_like(th, 2.0))
    if spec.component_has_j(label):
        return (_SIN2,), lambda th: (np.zeros_like(th), 2 - 4 * np.cos(th) ** 2)
    c = 2.0 * math.cos(math.pi * spec.delta_exponent(label) / spec.cyclic_order)
    return (_SIN2,), lambda th: (2 * c * np.cos(th),
                                 c * c - 2 + 4 * np.cos(th) ** 2)


def _density_1d(kind: str, t: np.ndarray) -> np.ndarray:
    if kind == _SIN2:
        return (2.0 / np.pi) * np.sin(t) ** 2
    return np.full_like(t, 1.0 / np.pi)


def weyl_density(spec: SatoTateGroupSpec, component: str, theta1,
                 theta2=None) -> float:
    """Joint density of the component's eigenangle parameters on [0, pi].

    Two-angle components (B and C identity components) require both
    angles; single-angle components take theta1 only.
    """
    kinds, _ = _component_angle_model(spec, component)
    angles = [theta1] + ([theta2] if theta2 is not None else [])
    if len(angles) != len(kinds):
        raise ValueError(
            f"component {component!r} of {spec.tag} has {len(kinds)} angle(s), "
            f"got {len(angles)}")
    out = 1.0
    for kind, t in zip(kinds, angles):
        t = np.asarray(t, dtype=float)
        if np.any((t < 0) | (t > np.pi)):
            raise ValueError("angles must lie in [0, pi]")
        out = out * _density_1d(kind, t)
    return out if isinstance(out, np.ndarray) else float(out)


@lru_cache(maxsize=8)
def _gauss_legendre(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (x + 1.0) * (np.pi / 2.0)   # map [-1,1] -> [0, pi]
    return t, w * (np.pi / 2.0)


QUAD_NODES = 256


def component_moment(spec: SatoTateGroupSpec, component: str, j: int, k: int,
                     nodes: int = QUAD_NODES) -> float:
    """E[a^j b^k] conditioned on one component, by tensor Gauss-Legendre."""
    kinds, to_ab = _component_angle_model(spec, component)
    t, w = _gauss_legendre(nodes)
    if len(kinds) == 1:
        a, b = to_ab(t)
        dens = _density_1d(kinds[0], t)
        return float(np.sum(w * dens * a ** j * b ** k))
    t1 = t[:, None]
    t2 = t[None, :]
    a, b = to_ab(t1, t2)
    dens = _density_1d(kinds[0], t)[:, None] * _density_1d(kinds[1], t)[None, :]
    ww = w[:, None] * w[None, :]
    return float(np.sum(ww * dens * a ** j * b ** k))


def haar_moment(spec: SatoTateGroupSpec, j: int, k: int,
                restrict: str | None = None) -> float:
    """E[a^j b^k] under Haar measure, optionally on a single component.

    Components carry equal Haar mass 1/|component group|.
    """
    if j < 0 or k < 0 or j + 2 * k > 64:
        raise ValueError("need j, k >= 0 and j + 2k <= 64")
    if restrict is not None:
        if restrict not in spec.component_labels:
            raise KeyError(f"component {restrict!r} not in {spec.tag}")
        return component_moment(spec, restrict, j, k)
    vals = [component_moment(spec, label, j, k)
            for label in spec.component_labels]
    return float(np.mean(vals))


def su2_trace_moment(power: int, nodes: int = QUAD_NODES) -> float:
    """E[(tr A)^power] for Haar A in SU(2); even powers give Catalan numbers."""
    t, w = _gauss_legendre(nodes)
    dens = (2.0 / np.pi) * np.sin(t) ** 2
    return float(np.sum(w * dens * (2.0 * np.cos(t)) ** power))
