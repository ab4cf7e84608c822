"""Curve recipes: ready-made surfaces whose Galois types the analyzer is
meant to confirm (or refute -- claims are metadata, never trusted).

Elliptic inputs are classical small-conductor curves; the two genus-2
entries are experimental.  `g2_even_sextic` factors as (x^2+1)(x^4+1), so
its Jacobian is Q-isogenous to the square of the elliptic curve
v^2 = u^3 + u^2 + u + 1 (j = 128, non-CM): Galois type E_C1, and the
counted a1 doubles that curve's traces -- a strong cross-check.
`g2_fermat_quintic` has CM by the fifth cyclotomic field, a Galois type
outside the thirteen covered here; it ships claim-free as a negative
control (scoring it against any of the thirteen should fail) and as the
counting benchmark with provable a1 = 0 whenever gcd(5, p-1) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import ExperimentConfig, RunConfig

# y^2 + y = x^3 - x, discriminant 37, non-CM
_E37 = [0, 0, 1, -1, 0]
# y^2 + y = x^3 - x^2 - 10x - 20, discriminant -11^5, non-CM
_E11 = [0, -1, 1, -10, -20]
# y^2 = x^3 - x, discriminant 64, CM by the Gaussian order
_ECM = [0, 0, 0, -1, 0]

_DEFAULT_EXT = {"kind": "cyclotomic", "modulus": 5}


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    description: str
    surface: dict
    lfield: dict = field(default_factory=lambda: {"kind": "trivial"})
    extension: dict = field(default_factory=lambda: dict(_DEFAULT_EXT))
    pmax: int = 100_000
    experimental: bool = False

    def config(self) -> ExperimentConfig:
        return ExperimentConfig(surface=dict(self.surface),
                                extension=dict(self.extension),
                                lfield=dict(self.lfield),
                                run=RunConfig(pmax=self.pmax))


_ENTRIES = [
    RegistryEntry(
        name="b_c1_product",
        description=("product of the discriminant-37 and discriminant-11^5 "
                     "curves: non-CM, non-isogenous, endomorphisms already "
                     "rational (L = Q)"),
        surface={"kind": "Product", "e1": _E37, "e2": _E11,
                 "claimed_group": "B_C1"},
    ),
    RegistryEntry(
        name="c_c2_cm_product",
        description=("CM curve y^2 = x^3 - x (Gaussian CM) times the "
                     "discriminant-37 curve; L is the CM field Q(i) and the "
                     "component class is kronecker(-1, p)"),
        surface={"kind": "Product", "e1": _ECM, "e2": _E37,
                 "claimed_group": "C_C2"},
        lfield={"kind": "quadratic", "d": -1},
    ),
    RegistryEntry(
        name="e_c1_square",
        description="square of the discriminant-37 curve; L = Q",
        surface={"kind": "Square", "e1": _E37, "claimed_group": "E_C1"},
    ),
    RegistryEntry(
        name="e_c2_rr_twist",
        description=("the discriminant-37 curve times its quadratic twist "
                     "by 5; the factors become isogenous over L = Q(sqrt 5). "
                     "Default K = Q(zeta_7): Q(zeta_5) contains L and would "
                     "violate the linear-disjointness hypothesis (try it: "
                     "the sign x quadratic character sum locks at |S| = 1)"),
        surface={"kind": "TwistPair", "e1": _E37, "twist_d": 5,
                 "claimed_group": "E_C2_RR"},
        lfield={"kind": "quadratic", "d": 5},
        extension={"kind": "cyclotomic", "modulus": 7},
    ),
    RegistryEntry(
        name="g2_even_sextic",
        description=("y^2 = x^6 + x^4 + x^2 + 1 = (x^2+1)(x^4+1): Jacobian "
                     "Q-isogenous to the square of a non-CM elliptic curve "
                     "(j = 128); expect a1 = 2 a_p of that curve"),
        surface={"kind": "Genus2", "f": [1, 0, 1, 0, 1, 0, 1],
                 "claimed_group": "E_C1"},
        pmax=4096,
        experimental=True,
    ),
    RegistryEntry(
        name="g2_fermat_quintic",
        description=("y^2 = x^5 + 1: CM by Q(zeta_5), Galois type outside "
                     "the thirteen covered here; negative control (no claim) "
                     "and counting benchmark: a1 = 0 iff gcd(5, p-1) = 1"),
        surface={"kind": "Genus2", "f": [1, 0, 0, 0, 0, 1]},
        pmax=4096,
        experimental=True,
    ),
]


def registry_entries() -> list[RegistryEntry]:
    return list(_ENTRIES)


def registry_get(name: str) -> RegistryEntry:
    for entry in _ENTRIES:
        if entry.name == name:
            return entry
    raise KeyError(f"no registry entry named {name!r}; "
                   f"known: {[e.name for e in _ENTRIES]}")
