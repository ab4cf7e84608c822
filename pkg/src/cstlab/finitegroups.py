"""Small finite groups as explicit multiplication tables.

Everything at desk scale is tiny (component groups of order <= 12,
Galois groups of order phi(N)), so groups are stored as dense tables:
labels, a multiplication table, inverses, conjugacy classes, and the full
table of irreducible characters.  Cyclic and dihedral tables carry exact
character values built from roots of unity; products take tensor products
of their factors' characters.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group given by explicit tables.

    ``mul[i][j]`` is the index of ``labels[i] * labels[j]``.  ``classes``
    partitions indices into conjugacy classes, ``characters[r][c]`` is the
    value of the r-th irreducible character on the c-th class.
    """

    labels: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    characters: tuple[tuple[complex, ...], ...]
    character_names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.character_names:
            object.__setattr__(
                self, "character_names",
                tuple(f"chi{r}" for r in range(len(self.characters))))

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        return 0

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown group element label {label!r}") from None

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise KeyError(f"element index {i} not in any class")

    def char_on_element(self, r: int, i: int) -> complex:
        return self.characters[r][self.class_of(i)]

    def char_dim(self, r: int) -> int:
        """Dimension of the r-th irreducible (its value on the identity)."""
        return round(self.characters[r][self.class_of(self.identity)].real)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[i][j] == self.mul[j][i]
                   for i in range(n) for j in range(i))

    def check(self, tol: float = 1e-12) -> None:
        """Verify group axioms and exact character orthogonality."""
        n = self.order
        e = self.identity
        for i in range(n):
            if self.mul[e][i] != i or self.mul[i][e] != i:
                raise AssertionError("identity axiom fails")
            if self.mul[i][self.inverse[i]] != e:
                raise AssertionError("inverse axiom fails")
        for i, j, k in itertools.product(range(n), repeat=3):
            if self.mul[self.mul[i][j]][k] != self.mul[i][self.mul[j][k]]:
                raise AssertionError("associativity fails")
        sizes = [len(c) for c in self.classes]
        if sum(sizes) != n:
            raise AssertionError("classes do not partition the group")
        nch = len(self.characters)
        if nch != len(self.classes):
            raise AssertionError("character count != class count")
        if sum(self.char_dim(r) ** 2 for r in range(nch)) != n:
            raise AssertionError("sum of squared dims != |G|")
        for r, s in itertools.product(range(nch), repeat=2):
            ip = sum(sz * self.characters[r][c] * self.characters[s][c].conjugate()
                     for c, sz in enumerate(sizes)) / n
            want = 1.0 if r == s else 0.0
            if abs(ip - want) > tol:
                raise AssertionError(
                    f"character orthogonality fails at ({r},{s}): {ip}")


def _root(num: int, den: int) -> complex:
    """exp(2 pi i num/den), snapped to exact values at the axes."""
    z = cmath.exp(2j * cmath.pi * num / den)
    re = round(z.real) if abs(z.real - round(z.real)) < 1e-12 else z.real
    im = round(z.imag) if abs(z.imag - round(z.imag)) < 1e-12 else z.imag
    return complex(re, im)


def _conjugacy_classes(mul, inverse):
    n = len(mul)
    seen = [False] * n
    classes = []
    for i in range(n):
        if seen[i]:
            continue
        orbit = sorted({mul[mul[g][i]][inverse[g]] for g in range(n)})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    # identity class first, then by smallest member
    classes.sort(key=lambda c: (0 not in c, c[0]))
    return tuple(classes)


def trivial_table() -> FiniteGroupTable:
    return FiniteGroupTable(("e",), ((0,),), (0,), ((0,),), ((1.0,),), ("triv",))


def cyclic_table(n: int, labels: tuple[str, ...] | None = None) -> FiniteGroupTable:
    """Cyclic group of order n; character chi_t sends the generator to
    exp(2 pi i t/n)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if labels is None:
        labels = tuple("e" if k == 0 else ("d" if k == 1 else f"d{k}")
                       for k in range(n))
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inverse = tuple((-i) % n for i in range(n))
    classes = tuple((i,) for i in range(n))
    chars = tuple(tuple(_root(t * k, n) for k in range(n)) for t in range(n))
    names = tuple("triv" if t == 0 else f"chi{t}" for t in range(n))
    return FiniteGroupTable(labels, mul, inverse, classes, chars, names)


def dihedral_table(n: int) -> FiniteGroupTable:
    """Dihedral group of order 2n (n >= 2): <r, j | r^n = j^2 = e, j r j = r^-1>.

    Elements are indexed r^a j^b with a in [0,n), b in {0,1}; labels follow
    the rotation labels 'e','d','d2',... and reflections 'j','jd','jd2',...
    """
    if n < 2:
        raise ValueError("dihedral table needs n >= 2")
    rot = ["e"] + ["d" if a == 1 else f"d{a}" for a in range(1, n)]
    ref = ["j"] + [f"jd{a}" if a > 1 else "jd" for a in range(1, n)]
    labels = tuple(rot + ref)

    def idx(a, b):
        return a % n + (n if b else 0)

    mul_rows = []
    for i in range(2 * n):
        a1, b1 = i % n, i >= n
        row = []
        for j in range(2 * n):
            a2, b2 = j % n, j >= n
            # (r^a1 j^b1)(r^a2 j^b2) = r^(a1 + (-1)^b1 a2) j^(b1+b2)
            a = (a1 - a2) % n if b1 else (a1 + a2) % n
            row.append(idx(a, b1 ^ b2))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    inverse = tuple(mul[i].index(0) for i in range(2 * n))
    classes = _conjugacy_classes(mul, inverse)

    def char_values(kind, par) -> tuple[complex, ...]:
        vals = []
        for cls in classes:
            a, b = cls[0] % n, cls[0] >= n
            if kind == "lin":
                rv, jv = par
                vals.append(complex((rv ** a) * (jv if b else 1)))
            else:
                l = par
                if b:
                    vals.append(0j)
                else:
                    vals.append(_root(l * a, n) + _root(-l * a, n))
        return tuple(vals)

    chars = [char_values("lin", (1, 1)), char_values("lin", (1, -1))]
    names = ["triv", "sgn_j"]
    if n % 2 == 0:
        chars += [char_values("lin", (-1, 1)), char_values("lin", (-1, -1))]
        names += ["sgn_d", "sgn_dj"]
    for l in range(1, (n - 1) // 2 + 1):
        chars.append(char_values("2dim", l))
        names.append(f"rot{l}")
    return FiniteGroupTable(labels, mul, inverse, classes, tuple(chars),
                            tuple(names))


def product_table(g1: FiniteGroupTable, g2: FiniteGroupTable,
                  sep: str = "|") -> FiniteGroupTable:
    """Direct product with tuple labels 'a|b' and tensor-product characters."""
    n1, n2 = g1.order, g2.order
    labels = tuple(f"{a}{sep}{b}" for a in g1.labels for b in g2.labels)

    def idx(i, j):
        return i * n2 + j

    rows = []
    for i1 in range(n1):
        for i2 in range(n2):
            row = []
            for j1 in range(n1):
                for j2 in range(n2):
                    row.append(idx(g1.mul[i1][j1], g2.mul[i2][j2]))
            rows.append(tuple(row))
    mul = tuple(rows)
    inverse = tuple(idx(g1.inverse[i1], g2.inverse[i2])
                    for i1 in range(n1) for i2 in range(n2))
    classes = []
    for c1 in g1.classes:
        for c2 in g2.classes:
            classes.append(tuple(sorted(idx(x, y) for x in c1 for y in c2)))
    classes.sort(key=lambda c: (0 not in c, c[0]))
    # class of (x,y) is determined by (class(x), class(y)); recover that pair
    # from the smallest member to order characters consistently
    def class_pair(cls):
        i = cls[0]
        return g1.class_of(i // n2), g2.class_of(i % n2)

    chars = []
    names = []
    for r1 in range(len(g1.characters)):
        for r2 in range(len(g2.characters)):
            row = []
            for cls in classes:
                p1, p2 = class_pair(cls)
                row.append(g1.characters[r1][p1] * g2.characters[r2][p2])
            chars.append(tuple(row))
            names.append(f"{g1.character_names[r1]}{sep}{g2.character_names[r2]}")
    return FiniteGroupTable(labels, mul, tuple(inverse), tuple(classes),
                            tuple(chars), tuple(names))
