"""Finite abelian Galois extensions K/Q: class groups, Artin symbols,
Dirichlet-style characters, and the linear-disjointness hypothesis check.

Supported first-class extensions are cyclotomic fields Q(zeta_N) (optionally
cut down by a subgroup H of (Z/N)^x), quadratic fields Q(sqrt d), and
products of those with a designated split G = G1 x G2.  The unit group
(Z/N)^x is decomposed into explicit cyclic factors: primitive roots for odd
prime powers and the <-1> x <5> structure of (Z/2^k)^x; characters are built
from the factor exponents, so their values are exact roots of unity.

Nonabelian coefficients are out of the verified surface; `CustomExtension`
is an experimental escape hatch taking a user-supplied class-assignment
function and character table (e.g. cycle types of a defining polynomial mod
p).  Nothing is validated about it beyond table sanity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .counting import factorize, kronecker_symbol, _primitive_root
from .finitegroups import FiniteGroupTable, _conjugacy_classes, _root


class RamifiedPrimeError(ValueError):
    def __init__(self, p: int):
        super().__init__(f"p={p} ramifies; it belongs to the excluded set")
        self.p = p


@dataclass(frozen=True)
class CharacterSpec:
    """One irreducible character: exact values per class label."""

    name: str
    values: dict  # class label -> complex
    is_trivial: bool

    def __call__(self, label: str) -> complex:
        return char_eval(self, label)

    @property
    def dimension(self) -> int:
        return max(1, round(max(abs(v) for v in self.values.values())))


def char_eval(char: CharacterSpec, label: str) -> complex:
    """Exact table lookup of a character value on a class label."""
    try:
        return char.values[label]
    except KeyError:
        raise KeyError(f"unknown class label {label!r} for character "
                       f"{char.name}") from None


def _unit_group_factors(n: int) -> list[tuple[int, int]]:
    """Cyclic decomposition of (Z/n)^x as [(generator mod n, order), ...]
    via CRT; odd prime powers contribute primitive roots, 2^k contributes
    <-1> x <5> for k >= 3."""
    fac = factorize(n)
    out = []
    for p, e in sorted(fac.items()):
        q = p ** e
        rest = n // q
        def crt(a):  # x = a mod q, x = 1 mod rest
            if rest == 1:
                return a % n
            inv = pow(q, -1, rest)
            return (a + q * ((1 - a) * inv % rest)) % n
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                out.append((crt(3), 2))
            else:
                out.append((crt(q - 1), 2))
                out.append((crt(5), 2 ** (e - 2)))
        else:
            g = _primitive_root(q)
            out.append((crt(g), (p - 1) * p ** (e - 1)))
    return out


@lru_cache(maxsize=32)
def _unit_group_dlogs(n: int) -> tuple[tuple[tuple[int, int], ...], dict]:
    """Factor list plus a dlog table residue -> exponent tuple."""
    factors = _unit_group_factors(n)
    logs = {1 % n: (0,) * len(factors)}
    # enumerate the group as products of factor powers
    def rec(i, x, exps):
        if i == len(factors):
            logs[x] = tuple(exps)
            return
        g, d = factors[i]
        y = x
        for e in range(d):
            rec(i + 1, y, exps + [e])
            y = (y * g) % n
    rec(0, 1 % n, [])
    return tuple(factors), logs


@dataclass(frozen=True)
class GaloisExtSpec:
    """A finite abelian Galois extension of Q with explicit class data.

    ``artin_class(p)`` is the Artin symbol as a class label; for product
    extensions labels are factor labels joined by '|', and ``split_g1``
    records how many leading factors form the abelian part G1 of the
    designated decomposition G = G1 x G2.
    """

    kind: str                               # cyclotomic | quadratic | product
    name: str
    group: FiniteGroupTable
    ramified: tuple[int, ...]
    characters: tuple[CharacterSpec, ...]
    modulus: int                            # conductor-style comparison modulus
    params: tuple = ()
    factors: tuple = ()
    split_g1: int = 0

    def artin_class(self, p: int) -> str:
        return self.class_of_integer(p, prime=True)

    def class_of_integer(self, x: int, prime: bool = False) -> str:
        """Extend the Artin map multiplicatively to integers coprime to the
        ramified data (used by the subfield tests)."""
        if self.kind == "quadratic":
            d = self.params[0]
            disc = d if d % 4 == 1 else 4 * d
            k = kronecker_symbol(disc, x)
            if k == 0:
                raise RamifiedPrimeError(x)
            return "e" if k == 1 else "s"
        if self.kind == "cyclotomic":
            n, subgroup = self.params
            if math.gcd(x, n) != 1:
                raise RamifiedPrimeError(x)
            return self._coset_label(x % n)
        parts = [f.class_of_integer(x, prime=prime) for f in self.factors]
        return "|".join(parts)

    def _coset_label(self, r: int) -> str:
        n, subgroup = self.params
        rep = min((r * h) % n for h in subgroup)
        return str(rep)

    @property
    def trivial_character(self) -> CharacterSpec:
        return next(c for c in self.characters if c.is_trivial)

    def class_weights(self) -> dict:
        """Chebotarev weight |c|/|G| per class label (all 1/|G| here)."""
        total = self.group.order
        return {lab: len(cls) / total
                for cls, lab in zip(self.group.classes, self._class_labels())}

    def _class_labels(self) -> list[str]:
        return [self.group.labels[cls[0]] for cls in self.group.classes]


def _abelian_table(labels, mul_fn) -> FiniteGroupTable:
    idx = {lab: i for i, lab in enumerate(labels)}
    mul = tuple(tuple(idx[mul_fn(a, b)] for b in labels) for a in labels)
    inverse = tuple(row.index(0) for row in mul)
    classes = _conjugacy_classes(mul, inverse)
    return FiniteGroupTable(tuple(labels), mul, inverse, classes, ((1.0,),))


def _with_characters(table: FiniteGroupTable,
                     chars: tuple[CharacterSpec, ...]) -> FiniteGroupTable:
    """Attach the character table (rows indexed like `chars`, columns by
    conjugacy class) so FiniteGroupTable.check() validates orthogonality."""
    import dataclasses
    rows = tuple(
        tuple(c.values[table.labels[cls[0]]] for cls in table.classes)
        for c in chars)
    return dataclasses.replace(table, characters=rows,
                               character_names=tuple(c.name for c in chars))


def cyclotomic_extension(n: int, subgroup: tuple[int, ...] = (1,)) -> GaloisExtSpec:
    """Q(zeta_n), or its subfield fixed by the subgroup H of (Z/n)^x."""
    if n <= 2:
        raise ValueError("cyclotomic modulus must be >= 3")
    subgroup = tuple(sorted({h % n for h in subgroup}))
    for h in subgroup:
        if math.gcd(h, n) != 1:
            raise ValueError("subgroup elements must be units")
    # close the subgroup under multiplication
    closed = {1}
    frontier = set(subgroup)
    while frontier:
        closed |= frontier
        frontier = {(a * b) % n for a in closed for b in closed} - closed
    subgroup = tuple(sorted(closed))

    factors, logs = _unit_group_dlogs(n)
    residues = sorted(logs)
    cosets = sorted({min((r * h) % n for h in subgroup) for r in residues})
    labels = [str(c) for c in cosets]
    labels.remove("1")
    labels = ["1"] + labels

    def coset_rep(r):
        return str(min((r * h) % n for h in subgroup))

    table = _abelian_table(labels,
                           lambda a, b: coset_rep(int(a) * int(b) % n))
    orders = [d for _, d in factors]

    def chi_value(tvec, r):
        e = logs[r]
        z = 1.0 + 0j
        for t, ei, d in zip(tvec, e, orders):
            z *= _root(t * ei, d)
        return z

    chars = []
    seen_trivial = False
    tvecs = [[]]
    for d in orders:
        tvecs = [tv + [t] for tv in tvecs for t in range(d)]
    for tvec in tvecs:
        # keep characters trivial on the subgroup (characters of G/H)
        if any(abs(chi_value(tvec, h) - 1) > 1e-9 for h in subgroup):
            continue
        vals = {lab: chi_value(tvec, int(lab)) for lab in labels}
        triv = all(abs(v - 1) < 1e-9 for v in vals.values())
        order = _char_order(vals)
        name = "triv" if triv else f"chi{len(chars)}ord{order}"
        chars.append(CharacterSpec(name=name, values=vals, is_trivial=triv))
        seen_trivial |= triv
    assert seen_trivial
    ram = tuple(sorted(factorize(n))) if subgroup == (1,) else \
        tuple(sorted(_ramified_in_subfield(n, subgroup)))
    table = _with_characters(table, tuple(chars))
    return GaloisExtSpec(kind="cyclotomic",
                         name=f"Q(zeta{n})" + ("" if subgroup == (1,) else "^H"),
                         group=table, ramified=ram, characters=tuple(chars),
                         modulus=n, params=(n, subgroup))


def _char_order(vals: dict) -> int:
    order = 1
    for v in vals.values():
        ang = cmath.phase(v) / (2 * cmath.pi)
        if abs(ang) < 1e-12:
            continue
        q = round(1 / abs(ang))
        order = math.lcm(order, max(q, 1))
    return order


def _ramified_in_subfield(n: int, subgroup) -> set[int]:
    """A prime ramifies in the fixed field iff its inertia (the classes of
    p^k patterns) is not contained in H; detected conservatively as primes
    dividing n whose local factor is not absorbed by H."""
    ram = set()
    for p in factorize(n):
        q = p ** factorize(n)[p]
        rest = n // q
        # inertia at p = units congruent to 1 mod rest
        inertia = {x for x in range(1, n) if math.gcd(x, n) == 1
                   and x % rest == 1 % max(rest, 1)}
        if not inertia <= set(subgroup):
            ram.add(p)
    return ram


def quadratic_extension(d: int) -> GaloisExtSpec:
    """Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise ValueError("d must not be 0 or 1")
    for q in range(2, math.isqrt(abs(d)) + 1):
        if d % (q * q) == 0:
            raise ValueError("d must be squarefree")
    disc = d if d % 4 == 1 else 4 * d
    table = _abelian_table(["e", "s"],
                           lambda a, b: "e" if a == b else "s")
    chars = (CharacterSpec("triv", {"e": 1.0 + 0j, "s": 1.0 + 0j}, True),
             CharacterSpec("sgn", {"e": 1.0 + 0j, "s": -1.0 + 0j}, False))
    table = _with_characters(table, chars)
    return GaloisExtSpec(kind="quadratic", name=f"Q(sqrt({d}))",
                         group=table,
                         ramified=tuple(sorted(factorize(disc))),
                         characters=chars, modulus=abs(disc), params=(d,))


def product_extension(factors: list[GaloisExtSpec],
                      split_g1: int | None = None) -> GaloisExtSpec:
    """Direct compositum of linearly independent abelian extensions with a
    designated split: the first `split_g1` factors form G1."""
    if not factors:
        raise ValueError("need at least one factor")
    if len(factors) == 1 and (split_g1 in (None, 1)):
        return factors[0]
    labels = ["|".join(t) for t in _label_product([f.group.labels for f in factors])]

    def mul_fn(a, b):
        pa, pb = a.split("|"), b.split("|")
        out = []
        for f, x, y in zip(factors, pa, pb):
            g = f.group
            out.append(g.labels[g.mul[g.index(x)][g.index(y)]])
        return "|".join(out)

    table = _abelian_table(labels, mul_fn)
    chars = []
    for combo in _label_product([tuple(range(len(f.characters))) for f in factors]):
        vals = {}
        for lab in labels:
            parts = lab.split("|")
            v = 1.0 + 0j
            for f, ci, part in zip(factors, combo, parts):
                v *= f.characters[ci].values[part]
            vals[lab] = v
        triv = all(f.characters[ci].is_trivial for f, ci in zip(factors, combo))
        name = "x".join(f.characters[ci].name for f, ci in zip(factors, combo))
        chars.append(CharacterSpec(name=name, values=vals, is_trivial=triv))
    ram = tuple(sorted(set().union(*[set(f.ramified) for f in factors])))
    modulus = math.lcm(*[f.modulus for f in factors])
    table = _with_characters(table, tuple(chars))
    return GaloisExtSpec(kind="product",
                         name="*".join(f.name for f in factors),
                         group=table, ramified=ram, characters=tuple(chars),
                         modulus=modulus, factors=tuple(factors),
                         split_g1=len(factors) if split_g1 is None else split_g1)


def _label_product(lists):
    out = [()]
    for lst in lists:
        out = [t + (x,) for t in out for x in lst]
    return out


def make_extension(desc: dict) -> GaloisExtSpec:
    """Extension from a plain description (the TOML [extension] table)."""
    kind = desc.get("kind")
    if kind == "cyclotomic":
        sub = tuple(desc.get("subgroup", [1]))
        return cyclotomic_extension(int(desc["modulus"]), sub)
    if kind == "quadratic":
        return quadratic_extension(int(desc["d"]))
    if kind == "product":
        factors = [make_extension(d) for d in desc["factors"]]
        return product_extension(factors, desc.get("split_g1"))
    raise ValueError(f"unknown extension kind {kind!r}")


# ---------------------------------------------------------------------------
# hypothesis checks


def _quadratic_subfield_match(ext: GaloisExtSpec, disc: int) -> bool:
    """True iff the Kronecker character of `disc` factors through ext's
    Artin map, i.e. Q(sqrt(disc)) is a subfield.  Exact: both sides are
    characters modulo m = lcm(ext.modulus, |disc|)."""
    m = math.lcm(ext.modulus, abs(disc))
    real_chars = [c for c in ext.characters
                  if not c.is_trivial
                  and all(abs(v.imag) < 1e-9 for v in c.values.values())]
    for char in real_chars:
        ok = True
        for x in range(1, m + 1):
            if math.gcd(x, m) != 1:
                continue
            if abs(char.values[ext.class_of_integer(x)]
                   - kronecker_symbol(disc, x)) > 1e-9:
                ok = False
                break
        if ok:
            return True
    return False


def check_disjoint(extension: GaloisExtSpec, lfield) -> tuple[bool, str]:
    """Linear disjointness of K and the endomorphism field L over Q.

    Returns (ok, message); a failed check is a warning, not an error: it
    invalidates the equidistribution hypothesis being tested, not the
    computation.
    """
    if lfield.kind == "trivial":
        return True, "L = Q: disjoint"
    if lfield.kind == "quadratic":
        disc = lfield.fundamental_discriminant
        if _quadratic_subfield_match(extension, disc):
            return False, (f"Q(sqrt({lfield.d})) is a subfield of "
                           f"{extension.name}: K and L are not linearly disjoint")
        return True, f"Q(sqrt({lfield.d})) not contained in {extension.name}"
    # cyclic L inside Q(zeta_modulus): compare every nontrivial character
    m = math.lcm(extension.modulus, lfield.modulus)
    g = _primitive_root(lfield.modulus)
    order = lfield.order
    for t in range(1, order):
        for char in extension.characters:
            if char.is_trivial:
                continue
            match = True
            for x in range(1, m + 1):
                if math.gcd(x, m) != 1:
                    continue
                e = _dlog_mod(x % lfield.modulus, g, lfield.modulus)
                lval = _root(t * (e % order), order)
                if abs(char.values[extension.class_of_integer(x)] - lval) > 1e-9:
                    match = False
                    break
            if match:
                return False, (f"a degree-{order} cyclic character of L factors "
                               f"through {extension.name}")
    return True, f"cyclic L (mod {lfield.modulus}) not contained in {extension.name}"


def _dlog_mod(x: int, g: int, n: int) -> int:
    acc = 1 % n
    for e in range(n):
        if acc == x:
            return e
        acc = (acc * g) % n
    raise ValueError(f"{x} is not a power of {g} mod {n}")


def check_split_totally_real(extension: GaloisExtSpec) -> tuple[bool, str]:
    """Whether K^{G1} is totally real: with abelian K inside Q(zeta_m),
    complex conjugation is the class of -1, and the fixed field of G1 is
    real iff that class projects trivially to G = G/G1-side factors."""
    try:
        conj = extension.class_of_integer(extension.modulus - 1)
    except RamifiedPrimeError:
        return True, "cannot locate complex conjugation; skipped"
    if extension.kind != "product" or extension.split_g1 >= max(
            1, len(extension.factors)):
        ok = True  # G1 = G: K^{G1} = Q, trivially totally real
        return ok, "G1 = G, K^{G1} = Q is totally real"
    parts = conj.split("|")
    tail = parts[extension.split_g1:]
    tails_triv = all(
        f.group.index(lab) == 0
        for f, lab in zip(extension.factors[extension.split_g1:], tail))
    if tails_triv:
        return True, "complex conjugation lies in G1: K^{G1} is totally real"
    return False, ("complex conjugation acts on the G2 side: K^{G1} is not "
                   "totally real (hypothesis violated)")


@dataclass(frozen=True)
class CustomExtension:
    """EXPERIMENTAL: a user-supplied (possibly nonabelian) coefficient
    extension: a class-assignment function p -> class label plus a
    character table.  Total-reality and disjointness hypotheses cannot be
    verified here and are flagged to the user in reports."""

    name: str
    group: FiniteGroupTable
    ramified: tuple[int, ...]
    class_assign: object                      # callable p -> label
    characters: tuple[CharacterSpec, ...] = ()

    def __post_init__(self):
        if not self.characters:
            chars = []
            for r, name in enumerate(self.group.character_names):
                vals = {}
                for lab in self.group.labels:
                    vals[lab] = self.group.characters[r][
                        self.group.class_of(self.group.index(lab))]
                triv = all(abs(v - 1) < 1e-12 for v in vals.values())
                chars.append(CharacterSpec(name=name, values=vals,
                                           is_trivial=triv))
            object.__setattr__(self, "characters", tuple(chars))

    def artin_class(self, p: int) -> str:
        if p in self.ramified:
            raise RamifiedPrimeError(p)
        return self.class_assign(p)

    @property
    def trivial_character(self) -> CharacterSpec:
        return next(c for c in self.characters if c.is_trivial)

    def class_weights(self) -> dict:
        total = self.group.order
        return {self.group.labels[cls[0]]: len(cls) / total
                for cls in self.group.classes}
