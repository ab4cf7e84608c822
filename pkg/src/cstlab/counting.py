"""Frobenius data for abelian surfaces over Q: point counts, L-polynomial
coefficients (a1, a2), normalisation to class points, and good-reduction
bookkeeping.

Sign convention: a1 = p + 1 - #C(F_p), so the normalised pair
(a1/sqrt(p), a2/p) is the (trace, second symmetric function) class point of
the unitarised Frobenius.  Primes 2 and 3 are always excluded: elliptic
counting goes through the short Weierstrass model (valid for p > 3) and
genus-2 counting through the quadratic character (p odd).

Counting is O(p) per prime for elliptic curves and O(p^2) per prime for
genus 2 (the F_{p^2} sum), vectorised over the x-line / (u, v)-grid.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

CACHE_VERSION = 1
EXCLUDED_SMALL_PRIMES = (2, 3)


class BadReductionError(ValueError):
    def __init__(self, p: int, what: str = "curve"):
        super().__init__(f"bad reduction of {what} at p={p}")
        self.p = p


def sieve_primes(bound: int) -> np.ndarray:
    """All primes <= bound, increasing."""
    if bound < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(bound) + 1):
        if flags[i]:
            flags[i * i:: i] = False
    return np.flatnonzero(flags).astype(np.int64)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), with the usual conventions at 2 and -1."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 0
    if n < 0:
        n = -n
        k = 1 if a >= 0 else -1
    else:
        k = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation; inputs here are curve discriminants."""
    n = abs(int(n))
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _chi_table(p: int) -> np.ndarray:
    """chi[t] = quadratic-character of t mod p (0 at 0)."""
    chi = np.full(p, -1, dtype=np.int64)
    t = np.arange(p, dtype=np.int64)
    chi[(t * t) % p] = 1
    chi[0] = 0
    return chi


# ---------------------------------------------------------------------------
# elliptic curves


@dataclass(frozen=True)
class EllipticCurve:
    """Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    @property
    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a_invariants
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def short_model(self, p: int) -> tuple[int, int]:
        """(A, B) with y^2 = x^3 + Ax + B isomorphic to the curve mod p > 3."""
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        return (-27 * c4) % p, (-54 * c6) % p

    def twist(self, d: int) -> "EllipticCurve":
        """Quadratic twist by d of the short model (enough for counting)."""
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        return EllipticCurve(0, 0, 0, -27 * c4 * d * d, -54 * c6 * d ** 3)


def count_elliptic(curve: EllipticCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by the quadratic-character sum; needs p > 3
    and good reduction."""
    if p <= 3:
        raise BadReductionError(p, "elliptic curve (p <= 3 excluded)")
    if curve.discriminant % p == 0:
        raise BadReductionError(p)
    a, b = curve.short_model(p)
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x + a * x + b) % p
    ap = -int(chi[f].sum())
    assert ap * ap <= 4 * p, "Hasse bound violated"
    return ap


def count_elliptic_naive(curve: EllipticCurve, p: int) -> int:
    """Double-loop oracle over all (x, y), long Weierstrass form."""
    a1, a2, a3, a4, a6 = curve.a_invariants
    npts = 1
    for x in range(p):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        for y in range(p):
            if (y * y + lin * y - rhs) % p == 0:
                npts += 1
    return p + 1 - npts


# ---------------------------------------------------------------------------
# genus 2


def genus2_disc(f: list[int]) -> int:
    """Discriminant of the squarefree model polynomial (times lc) used for
    bad-prime detection: primes dividing disc(f) or the leading coefficient."""
    arr = [int(c) for c in f]
    deg = len(arr) - 1
    # resultant(f, f') via Sylvester determinant over Z (exact with Fraction)
    from fractions import Fraction
    fp = [i * arr[i] for i in range(1, deg + 1)]
    n, m = deg, deg - 1
    size = n + m
    mat = [[Fraction(0)] * size for _ in range(size)]
    for i in range(m):
        for j, c in enumerate(reversed(arr)):
            mat[i][i + j] = Fraction(c)
    for i in range(n):
        for j, c in enumerate(reversed(fp)):
            mat[m + i][i + j] = Fraction(c)
    # fraction-free-ish Gaussian elimination
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = mat[col][col]
        for r in range(col + 1, size):
            if mat[r][col] != 0:
                fac = mat[r][col] / inv
                for c in range(col, size):
                    mat[r][c] -= fac * mat[col][c]
    res = det
    assert res.denominator == 1
    return int(res) * arr[-1]


def _poly_eval_mod(f: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in f[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def count_genus2_points(f: list[int], p: int) -> int:
    """#C(F_p) for the smooth model of y^2 = f(x), deg f in {5, 6}."""
    deg = len(f) - 1
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    vals = _poly_eval_mod(np.asarray(f, dtype=np.int64), x, p)
    s = int(chi[vals].sum())
    if deg == 5:
        inf = 1
    else:
        inf = 1 + int(chi[f[6] % p])
    return p + s + inf


def count_genus2_points_ext(f: list[int], p: int,
                            chunk: int = 1024) -> int:
    """#C(F_{p^2}) with F_{p^2} = F_p[t]/(t^2 - s), s a non-residue;
    chi_{p^2}(z) = chi_p(Norm z) with Norm(F + G t) = F^2 - s G^2.

    Horner over the (u, v)-grid in chunks; intermediates are bounded by
    2 p^2 + p, so int32 arithmetic is exact for p < 2^15 and halves the
    memory traffic of the O(p^2) sweep.
    """
    deg = len(f) - 1
    chi = _chi_table(p)
    s = int(next(t for t in range(2, p) if chi[t] == -1))
    coeffs = [int(c) % p for c in f]
    dtype = np.int32 if p < (1 << 15) else np.int64
    total = 0
    v = np.arange(p, dtype=dtype)[None, :]
    for lo in range(0, p, chunk):
        u = np.arange(lo, min(lo + chunk, p), dtype=dtype)[:, None]
        fre = np.zeros((u.shape[0], p), dtype=dtype)
        fim = np.zeros_like(fre)
        for c in coeffs[::-1]:
            fre, fim = (fre * u + (fim * v) % p * s + c) % p, \
                (fre * v + fim * u) % p
        norm = (fre * fre - s * ((fim * fim) % p)) % p
        total += int(chi[norm].sum()) + norm.size
    if deg == 5:
        inf = 1
    else:
        inf = 2 if f[6] % p != 0 else 0   # lc of F_p^x is a norm, hence a square
    return total + inf


def count_genus2(f: list[int], p: int) -> tuple[int, int]:
    """(a1, a2) of the L-polynomial of Jac(y^2 = f(x)) at a good odd prime."""
    deg = len(f) - 1
    if deg not in (5, 6):
        raise ValueError("genus-2 model must have degree 5 or 6")
    if p == 2:
        raise BadReductionError(2, "genus-2 curve (p = 2 excluded)")
    d = genus2_disc(f)
    if d == 0 or d % p == 0:
        raise BadReductionError(p, "genus-2 curve")
    n1 = count_genus2_points(f, p)
    n2 = count_genus2_points_ext(f, p)
    a1 = p + 1 - n1
    a2 = (a1 * a1 - (p * p + 1 - n2)) // 2
    assert abs(a1) <= 4 * math.isqrt(p) + 4, "Weil bound violated"
    return a1, a2


def count_genus2_points_naive(f: list[int], p: int) -> int:
    """Pure-python oracle for #C(F_p)."""
    deg = len(f) - 1
    sq = {}
    for y in range(p):
        sq.setdefault((y * y) % p, []).append(y)
    total = 0
    for x in range(p):
        v = 0
        for c in reversed(f):
            v = (v * x + c) % p
        total += len(sq.get(v, []))
    if deg == 5:
        total += 1
    else:
        lc = f[6] % p
        if lc != 0 and lc in sq:
            total += 2
    return total


def count_genus2_points_ext_naive(f: list[int], p: int) -> int:
    """Pure-python oracle for #C(F_{p^2}) with explicit pair arithmetic."""
    chi = _chi_table(p)
    s = int(next(t for t in range(2, p) if chi[t] == -1))
    deg = len(f) - 1
    squares = set()
    for a in range(p):
        for b in range(p):
            squares.add(((a * a + s * b * b) % p, (2 * a * b) % p))
    total = 0
    for u in range(p):
        for v in range(p):
            fre, fim = 0, 0
            for c in reversed(f):
                fre, fim = (fre * u + fim * v * s + c) % p, (fre * v + fim * u) % p
            if (fre, fim) == (0, 0):
                total += 1
            elif (fre, fim) in squares:
                total += 2
    total += 1 if deg == 5 else (2 if f[6] % p != 0 else 0)
    return total


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class LFieldSpec:
    """The minimal field over which all endomorphisms are defined,
    realised as trivial, Q(sqrt(d)), or a cyclic cyclotomic subfield."""

    kind: str = "trivial"            # trivial | quadratic | cyclic
    d: int = 0                       # quadratic: squarefree radicand
    modulus: int = 0                 # cyclic: conductor N
    order: int = 1                   # cyclic: degree of L/Q

    def component_labels(self) -> tuple[str, ...]:
        if self.kind == "trivial":
            return ("e",)
        if self.kind == "quadratic":
            return ("e", "j")        # matched to the group's labels by caller
        return tuple("e" if k == 0 else ("d" if k == 1 else f"d{k}")
                     for k in range(self.order))

    @property
    def fundamental_discriminant(self) -> int:
        if self.kind != "quadratic":
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    def ramified_primes(self) -> set[int]:
        if self.kind == "trivial":
            return set()
        if self.kind == "quadratic":
            return set(factorize(self.fundamental_discriminant))
        return set(factorize(self.modulus))


@lru_cache(maxsize=64)
def _primitive_root(n: int) -> int:
    """Smallest primitive root modulo n (n with cyclic unit group)."""
    phi = sum(1 for k in range(1, n) if math.gcd(k, n) == 1)
    fac = factorize(phi)
    for g in range(2, n):
        if math.gcd(g, n) != 1:
            continue
        if all(pow(g, phi // q, n) != 1 for q in fac):
            return g
    raise ValueError(f"no primitive root mod {n}")


def lfield_class(lf: LFieldSpec, p: int, component_labels: tuple[str, ...]):
    """Component label of Frobenius at p for the L-field, in the label
    alphabet of the associated Sato-Tate group."""
    if lf.kind == "trivial":
        return component_labels[0]
    if lf.kind == "quadratic":
        k = kronecker_symbol(lf.fundamental_discriminant, p)
        if k == 0:
            raise BadReductionError(p, "L-field (ramified)")
        return component_labels[0] if k == 1 else _nontrivial_label(component_labels)
    g = _primitive_root(lf.modulus)
    target = p % lf.modulus
    acc = 1
    for e in range(lf.modulus):
        if acc == target:
            return component_labels[e % lf.order]
        acc = (acc * g) % lf.modulus
    raise BadReductionError(p, "L-field (ramified)")


def _nontrivial_label(labels: tuple[str, ...]) -> str:
    return labels[1]


@dataclass(frozen=True)
class SurfaceSpec:
    """An abelian surface given as one of four desk-scale recipes."""

    kind: str                              # Product | Square | TwistPair | Genus2
    e1: EllipticCurve | None = None
    e2: EllipticCurve | None = None
    twist_d: int = 0
    genus2_f: tuple[int, ...] = ()
    claimed_galois_type: str | None = None
    lfield: LFieldSpec = LFieldSpec()

    def __post_init__(self):
        if self.kind in ("Product", "Square") and self.e1 is None:
            raise ValueError(f"{self.kind} surface needs an elliptic curve")
        if self.kind == "Product" and self.e2 is None:
            raise ValueError("Product surface needs two curves")
        if self.kind == "TwistPair":
            if self.e1 is None or self.twist_d in (0, 1):
                raise ValueError("TwistPair needs a curve and d not in {0, 1}")
            d = abs(self.twist_d)
            for q in range(2, math.isqrt(d) + 1):
                if d % (q * q) == 0:
                    raise ValueError("twist d must be squarefree")
        if self.kind == "Genus2":
            if len(self.genus2_f) not in (6, 7):
                raise ValueError("genus-2 f must have degree 5 or 6")
            if genus2_disc(list(self.genus2_f)) == 0:
                raise ValueError("genus-2 f must be squarefree")
        for e in (self.e1, self.e2):
            if e is not None and e.discriminant == 0:
                raise ValueError("singular elliptic input")

    def geometry_bad_primes(self) -> set[int]:
        """Primes where counting is invalid: 2, 3, and discriminant primes.
        Depends only on the data entering the content hash."""
        bad = set(EXCLUDED_SMALL_PRIMES)
        if self.kind == "Genus2":
            bad |= set(factorize(genus2_disc(list(self.genus2_f))))
        else:
            bad |= set(factorize(self.e1.discriminant))
            if self.kind == "Product":
                bad |= set(factorize(self.e2.discriminant))
            if self.kind == "TwistPair":
                bad |= set(factorize(self.twist_d))
        return bad

    def bad_primes(self) -> set[int]:
        return self.geometry_bad_primes() | self.lfield.ramified_primes()

    def canonical_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.e1 is not None:
            out["e1"] = list(self.e1.a_invariants)
        if self.e2 is not None:
            out["e2"] = list(self.e2.a_invariants)
        if self.kind == "TwistPair":
            out["twist_d"] = self.twist_d
        if self.kind == "Genus2":
            out["f"] = list(self.genus2_f)
        return out

    def content_hash(self) -> str:
        blob = json.dumps(self.canonical_dict(), sort_keys=True,
                          separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def frobenius_of_surface(surface: SurfaceSpec, p: int) -> tuple[int, int]:
    """(a1, a2) of the degree-4 L-polynomial at a good prime p > 3."""
    if p in surface.geometry_bad_primes():
        raise BadReductionError(p, "surface")
    if surface.kind == "Product":
        u = count_elliptic(surface.e1, p)
        v = count_elliptic(surface.e2, p)
        return u + v, u * v + 2 * p
    if surface.kind == "Square":
        u = count_elliptic(surface.e1, p)
        return 2 * u, u * u + 2 * p
    if surface.kind == "TwistPair":
        u = count_elliptic(surface.e1, p)
        v = kronecker_symbol(surface.twist_d, p) * u
        return u + v, u * v + 2 * p
    return count_genus2(list(surface.genus2_f), p)


# ---------------------------------------------------------------------------
# datasets and the cache


@dataclass(frozen=True)
class FrobeniusDatum:
    p: int
    a1: int
    a2: int
    na1: float
    na2: float
    component_class: str
    artin_class: str


def _normalized(p: int, a1: int, a2: int) -> tuple[float, float]:
    na1 = a1 / math.sqrt(p)
    na2 = a2 / p
    assert abs(na1) <= 4.0 + 1e-9
    assert -2.0 - 1e-9 <= na2 <= 6.0 + 1e-9
    return na1, na2


def _cache_header(surface: SurfaceSpec, pmax: int) -> str:
    return f"# surface={surface.content_hash()} pmax={pmax} version={CACHE_VERSION}"


def write_cache(path: str, surface: SurfaceSpec, pmax: int,
                rows: list[tuple[int, int, int]]) -> None:
    """Atomic write: header comment line, then `p,a1,a2` ascending in p."""
    tmp_fd, tmp_path = tempfile.mkstemp(dir=os.path.dirname(path) or ".",
                                        suffix=".tmp")
    try:
        with os.fdopen(tmp_fd, "w", newline="\n") as fh:
            fh.write(_cache_header(surface, pmax) + "\n")
            fh.write("p,a1,a2\n")
            for p, a1, a2 in rows:
                fh.write(f"{p},{a1},{a2}\n")
        os.replace(tmp_path, path)
    finally:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)


def read_cache(path: str, surface: SurfaceSpec, pmax: int):
    """Rows from a cache file, or None when absent/not matching.  A file
    whose header names a different surface is rejected outright."""
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        header = fh.readline().strip()
        expect = _cache_header(surface, pmax)
        if header != expect:
            parts = dict(kv.split("=") for kv in header.lstrip("# ").split())
            if parts.get("surface") != surface.content_hash():
                raise ValueError(
                    f"cache {path} belongs to a different surface; refusing to merge")
            return None    # same surface, different pmax/version: recount
        cols = fh.readline().strip()
        if cols != "p,a1,a2":
            raise ValueError(f"cache {path} has unexpected column header {cols!r}")
        rows = []
        for line in fh:
            p, a1, a2 = line.strip().split(",")
            rows.append((int(p), int(a1), int(a2)))
    return rows


def build_dataset(surface: SurfaceSpec, extension, pmax: int,
                  cache_path: str | None = None) -> list[FrobeniusDatum]:
    """All good primes p <= pmax with L-polynomial coefficients and the
    component/Artin class labels.  `extension` is a GaloisExtSpec (only its
    ramified set and artin_class are used here).

    The cache is keyed by (surface hash, pmax) alone, so it stores every
    geometry-good prime; ramification in K or the L-field is filtered after
    reading and never affects the cached rows.
    """
    rows = read_cache(cache_path, surface, pmax) if cache_path else None
    if rows is None:
        geo_bad = surface.geometry_bad_primes()
        rows = []
        for p in sieve_primes(pmax).tolist():
            if p in geo_bad:
                continue
            rows.append((p,) + frobenius_of_surface(surface, p))
        if cache_path:
            write_cache(cache_path, surface, pmax, rows)
    excluded = surface.bad_primes() | set(extension.ramified)
    alphabet = _component_alphabet(surface)
    data = []
    for p, a1, a2 in rows:
        if p in excluded:
            continue
        na1, na2 = _normalized(p, a1, a2)
        data.append(FrobeniusDatum(p=p, a1=a1, a2=a2, na1=na1, na2=na2,
                                   component_class=lfield_class(
                                       surface.lfield, p, alphabet),
                                   artin_class=extension.artin_class(p)))
    return data


def _component_alphabet(surface: SurfaceSpec) -> tuple[str, ...]:
    """Component labels matching the claimed group when present, else the
    generic alphabet of the L-field."""
    from .groups import make_group
    if surface.claimed_galois_type:
        return make_group(surface.claimed_galois_type).component_labels
    return surface.lfield.component_labels()
