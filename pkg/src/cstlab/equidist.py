"""The equidistribution engine: averaged character sums against the
product Haar measure, moment comparisons, 2-d class-point histograms, and a
chi-square goodness-of-fit of Frobenius data against a claimed group.

The averaged-character form of the equidistribution criterion is tested
as |S| <= C dim(rho) dim(xi) / sqrt(n) with S = (1/n) sum chi_rho(x_p)
xi(sigma_p); C defaults to 4 (the CLT envelope; there is no proven rate,
so the threshold is calibrated by the synthetic self test and stays
configurable).  For the trivial pair S = 1 exactly and is reported as the
anchor row.

Datasets come in two flavours: arithmetic ones carry only class points
(a, b, component), so representations whose characters do not factor
through the class point are skipped with an explicit reason; synthetic
Haar datasets carry full group elements and every pair is evaluated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np

from .counting import FrobeniusDatum, SurfaceSpec
from .galois import CharacterSpec, GaloisExtSpec, cyclotomic_extension
from .groups import (HaarSample, SatoTateGroupSpec, make_group,
                     sample_haar_arrays, haar_moment)
from .reps import (IrrepSpec, char_values_class, char_values_sample,
                   class_determined, evaluable_from_class, list_irreps)

DEFAULT_THRESHOLD_C = 4.0
DEFAULT_CHI2_LIMIT = 1.5
HIST_RANGE = ((-4.0, 4.0), (-2.0, 6.0))
_REF_SEED = 0x5EED_CA7
_REF_CACHE: dict = {}


class EmptyDatasetError(ValueError):
    pass


class BinningError(ValueError):
    pass


@dataclass
class CstSetup:
    """A dataset bound to the group/extension pair it is tested against.

    Exactly one of `data` (arithmetic class points) or `sample` (synthetic
    Haar elements) drives the character evaluation; both populate the same
    internal arrays.
    """

    group: SatoTateGroupSpec
    extension: GaloisExtSpec
    data: list[FrobeniusDatum] | None = None
    sample: HaarSample | None = None
    artin_indices: np.ndarray | None = None    # synthetic only
    surface: SurfaceSpec | None = None
    p: np.ndarray = field(default=None, repr=False)
    na1: np.ndarray = field(default=None, repr=False)
    na2: np.ndarray = field(default=None, repr=False)
    comp_idx: np.ndarray = field(default=None, repr=False)
    artin_labels: list[str] = field(default_factory=list, repr=False)

    def __post_init__(self):
        comp_labels = self.group.component_labels
        ext_labels = list(self.extension.group.labels)
        if self.data is not None:
            if not self.data:
                raise EmptyDatasetError("dataset is empty")
            self.p = np.array([d.p for d in self.data], dtype=np.int64)
            self.na1 = np.array([d.na1 for d in self.data])
            self.na2 = np.array([d.na2 for d in self.data])
            comp_map = {c: i for i, c in enumerate(comp_labels)}
            art_map = {c: i for i, c in enumerate(ext_labels)}
            try:
                self.comp_idx = np.array([comp_map[d.component_class]
                                          for d in self.data], dtype=np.int64)
            except KeyError as e:
                raise ValueError(f"component label {e} not in "
                                 f"{self.group.tag}") from None
            try:
                self.artin_idx = np.array([art_map[d.artin_class]
                                           for d in self.data], dtype=np.int64)
            except KeyError as e:
                raise ValueError(f"artin label {e} not in "
                                 f"{self.extension.name}") from None
        elif self.sample is not None:
            if self.artin_indices is None:
                raise ValueError("synthetic setup needs artin_indices")
            a, b = self.sample.class_points()
            self.na1, self.na2 = a, b
            self.comp_idx = np.asarray(self.sample.components, dtype=np.int64)
            self.artin_idx = np.asarray(self.artin_indices, dtype=np.int64)
            self.p = np.arange(2, len(a) + 2, dtype=np.int64)  # placeholder order
        else:
            raise ValueError("need data or sample")
        self.artin_labels = ext_labels

    @property
    def n(self) -> int:
        return len(self.na1)

    @property
    def is_synthetic(self) -> bool:
        return self.sample is not None

    def xi_values(self, xi: CharacterSpec) -> np.ndarray:
        table = np.array([xi.values[lab] for lab in self.artin_labels],
                         dtype=complex)
        return table[self.artin_idx]

    def char_array(self, irrep: IrrepSpec) -> np.ndarray:
        """chi_rho over the whole dataset (raises NotClassDetermined on
        arithmetic data when the character needs full elements)."""
        if self.is_synthetic:
            return char_values_sample(irrep, self.sample)
        out = np.zeros(self.n, dtype=complex)
        for ci, label in enumerate(self.group.component_labels):
            mask = self.comp_idx == ci
            if mask.any():
                out[mask] = char_values_class(irrep, label,
                                              self.na1[mask], self.na2[mask])
        return out


def make_synthetic_setup(tag: str, n: int, seed: int,
                         extension: GaloisExtSpec | None = None) -> CstSetup:
    """Haar sample plus uniform synthetic Artin classes (the pipeline
    validator's input)."""
    group = make_group(tag)
    if extension is None:
        extension = cyclotomic_extension(5)
    sample = sample_haar_arrays(group, n, seed)
    art_rng = np.random.default_rng(
        np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1),
                               spawn_key=(0xA27,)))
    artin = art_rng.integers(0, extension.group.order, size=n)
    return CstSetup(group=group, extension=extension, sample=sample,
                    artin_indices=artin)


# ---------------------------------------------------------------------------
# character sums


@dataclass
class CharSumRow:
    irrep: str
    xi: str
    dim: int
    s: complex | None
    s_half: complex | None
    threshold: float
    verdict: str              # pass | fail | skipped
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def no_growth(self, n_full: int) -> bool:
        """Decay monitor: |S_full| <= |S_half| or within twice the CLT
        envelope dim/sqrt(n)."""
        if self.s is None or self.s_half is None:
            return True
        envelope = self.dim / math.sqrt(n_full)
        return abs(self.s) <= abs(self.s_half) or abs(self.s) <= 2 * envelope


def character_sum(setup: CstSetup, irrep: IrrepSpec, xi: CharacterSpec,
                  threshold_c: float = DEFAULT_THRESHOLD_C) -> CharSumRow:
    """(1/n) sum chi_rho(x_p) xi(sigma_p) with its CLT-envelope verdict."""
    if setup.n == 0:
        raise EmptyDatasetError("dataset is empty")
    dim_pair = irrep.dimension * xi.dimension
    thr = threshold_c * dim_pair / math.sqrt(setup.n)
    if irrep.is_trivial and xi.is_trivial:
        return CharSumRow(irrep.name, xi.name, dim_pair, 1.0 + 0j, 1.0 + 0j,
                          thr, "pass", "trivial pair: S = 1 exactly")
    if not setup.is_synthetic and not evaluable_from_class(irrep):
        bad = [c for c in setup.group.component_labels
               if not class_determined(irrep, c)]
        return CharSumRow(irrep.name, xi.name, dim_pair, None, None, thr,
                          "skipped",
                          f"not class-determined on component(s) {bad}; "
                          "arithmetic data carries only (a, b, component)")
    chi = setup.char_array(irrep)
    xiv = setup.xi_values(xi)
    terms = chi * xiv
    s = complex(terms.mean())
    half = len(terms) // 2
    s_half = complex(terms[:half].mean()) if half else None
    verdict = "pass" if abs(s) <= thr else "fail"
    return CharSumRow(irrep.name, xi.name, dim_pair, s, s_half, thr, verdict)


def character_sum_table(setup: CstSetup, cutoff: int,
                        threshold_c: float = DEFAULT_THRESHOLD_C) -> list[CharSumRow]:
    rows = []
    for irrep in list_irreps(setup.group, cutoff):
        for xi in setup.extension.characters:
            rows.append(character_sum(setup, irrep, xi, threshold_c))
    return rows


# ---------------------------------------------------------------------------
# moments


@dataclass
class MomentRow:
    j: int
    k: int
    xi: str
    empirical: float
    predicted: float
    sigma_dev: float

    @property
    def passed(self) -> bool:
        return abs(self.sigma_dev) <= 4.0


def moment_table(setup: CstSetup, jmax: int, kmax: int,
                 xi: CharacterSpec) -> list[MomentRow]:
    """Empirical E[na1^j na2^k xi(sigma)] against the Haar prediction
    (haar_moment for trivial xi; 0 for nontrivial xi, by independence in
    the product measure)."""
    if jmax + 2 * kmax > 16:
        raise ValueError("need jmax + 2 kmax <= 16")
    xiv = setup.xi_values(xi)
    rows = []
    for j in range(jmax + 1):
        for k in range(kmax + 1):
            terms = (setup.na1 ** j) * (setup.na2 ** k) * xiv
            emp = terms.mean()
            pred = haar_moment(setup.group, j, k) if xi.is_trivial else 0.0
            spread = terms.std()
            stderr = abs(spread) / math.sqrt(setup.n)
            if stderr < 1e-15:
                dev = 0.0 if abs(emp - pred) < 1e-12 else math.inf
            else:
                dev = abs(emp - pred) / stderr
            rows.append(MomentRow(j, k, xi.name, _real(emp), pred, dev))
    return rows


def _real(z) -> float:
    return float(np.real(z))


# ---------------------------------------------------------------------------
# histograms and the chi-square fit


def histogram2d(setup: CstSetup, bins: tuple[int, int],
                filt: tuple[str, str] | None = None) -> np.ndarray:
    """Counts over [-4, 4] x [-2, 6], optionally restricted to one
    (component, artin class) pair."""
    nb1, nb2 = bins
    if nb1 < 1 or nb2 < 1:
        raise ValueError("bins must be >= 1")
    mask = np.ones(setup.n, dtype=bool)
    if filt is not None:
        comp, art = filt
        ci = setup.group.component_index(comp)
        try:
            ai = setup.artin_labels.index(art)
        except ValueError:
            raise KeyError(f"unknown artin label {art!r}") from None
        mask = (setup.comp_idx == ci) & (setup.artin_idx == ai)
    h, _, _ = np.histogram2d(setup.na1[mask], setup.na2[mask],
                             bins=bins, range=HIST_RANGE)
    return h


def _haar_reference(group: SatoTateGroupSpec, bins: tuple[int, int],
                    n_ref: int, chunk: int = 1_000_000) -> np.ndarray:
    """p(bin | component) from n_ref Haar samples, cached per
    (group, bins, n_ref); the reference seed is fixed, so reports are
    reproducible."""
    key = (group.tag, bins, n_ref)
    if key in _REF_CACHE:
        return _REF_CACHE[key]
    ncomp = group.component_group.order
    counts = np.zeros((ncomp,) + bins)
    done = 0
    block = 0
    while done < n_ref:
        m = min(chunk, n_ref - done)
        s = sample_haar_arrays(group, m, _REF_SEED + 7919 * block)
        a, b = s.class_points()
        for ci in range(ncomp):
            mask = s.components == ci
            h, _, _ = np.histogram2d(a[mask], b[mask], bins=bins,
                                     range=HIST_RANGE)
            counts[ci] += h
        done += m
        block += 1
    totals = counts.sum(axis=(1, 2), keepdims=True)
    probs = counts / np.maximum(totals, 1.0)
    _REF_CACHE[key] = probs
    return probs


@dataclass
class ChiSquareCell:
    component: str
    artin: str
    statistic: float
    bins_used: int


@dataclass
class ChiSquareResult:
    cells: list[ChiSquareCell]
    statistic: float
    dof: int
    reduced: float
    limit: float

    @property
    def passed(self) -> bool:
        return self.reduced <= self.limit


def _merge_bins(observed: np.ndarray, expected: np.ndarray,
                min_expected: float = 5.0) -> tuple[np.ndarray, np.ndarray]:
    """Greedy nearest-neighbour run merging in flattened order until every
    used bin has expected count >= min_expected.  Structural zeros
    (expected ~ 0 and no observations) are dropped first."""
    keep = ~((expected < 1e-12) & (observed == 0))
    o = observed[keep]
    e = expected[keep]
    mo, me = [], []
    acc_o = acc_e = 0.0
    for oi, ei in zip(o, e):
        acc_o += oi
        acc_e += ei
        if acc_e >= min_expected:
            mo.append(acc_o)
            me.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if me:
            mo[-1] += acc_o
            me[-1] += acc_e
        else:
            mo, me = [acc_o], [acc_e]
    return np.array(mo), np.array(me)


def chi_square_fit(setup: CstSetup, bins: tuple[int, int] = (20, 20),
                   mc_oversample: int = 100,
                   limit: float = DEFAULT_CHI2_LIMIT) -> ChiSquareResult:
    """Reduced chi-square of the data against the product reference:
    Haar class-point law per component (Monte-Carlo, oversampled), uniform
    component weights, Chebotarev weights on the Artin classes."""
    if setup.n == 0:
        raise EmptyDatasetError("dataset is empty")
    if mc_oversample < 100:
        raise ValueError("mc_oversample must be >= 100")
    ncomp = setup.group.component_group.order
    ext = setup.extension
    weights = ext.class_weights()
    nclass = ext.group.order
    group_expect = setup.n / ncomp * min(weights.values())
    if group_expect < 5.0:
        raise BinningError(
            f"expected count per (component, class) cell is {group_expect:.2f} "
            "< 5; increase pmax (or reduce the group/extension size)")
    probs = _haar_reference(setup.group, bins, mc_oversample * setup.n)
    cells = []
    stat_total = 0.0
    bins_total = 0
    class_labels = [ext.group.labels[c[0]] for c in ext.group.classes]
    class_of_label = {lab: i for i, lab in enumerate(ext.group.labels)}
    for ci, comp in enumerate(setup.group.component_labels):
        for cls_lab in class_labels:
            sel_class = [i for i, lab in enumerate(setup.artin_labels)
                         if ext.group.class_of(class_of_label[lab])
                         == ext.group.class_of(class_of_label[cls_lab])]
            mask = (setup.comp_idx == ci) & np.isin(setup.artin_idx, sel_class)
            h, _, _ = np.histogram2d(setup.na1[mask], setup.na2[mask],
                                     bins=bins, range=HIST_RANGE)
            expected = probs[ci] * (setup.n / ncomp) * weights[cls_lab]
            o, e = _merge_bins(h.ravel(), expected.ravel())
            if len(e) == 0 or e.sum() < 1e-9:
                raise BinningError(
                    f"no expected mass in cell ({comp}, {cls_lab})")
            stat = float(((o - e) ** 2 / e).sum())
            cells.append(ChiSquareCell(comp, cls_lab, stat, len(e)))
            stat_total += stat
            bins_total += len(e)
    dof = max(bins_total - 1, 1)
    reduced = stat_total / dof
    return ChiSquareResult(cells=cells, statistic=stat_total, dof=dof,
                           reduced=reduced, limit=limit)


# ---------------------------------------------------------------------------
# reports and the self test


@dataclass
class EquidistReport:
    group_tag: str
    extension: str
    n: int
    threshold_c: float
    char_rows: list[CharSumRow]
    moment_rows: list[MomentRow]
    chisq: ChiSquareResult
    config_hash: str = ""

    @property
    def char_verdict(self) -> bool:
        return all(r.passed for r in self.char_rows)

    @property
    def decay_verdict(self) -> bool:
        return all(r.no_growth(self.n) for r in self.char_rows)

    @property
    def moment_verdict(self) -> bool:
        return all(r.passed for r in self.moment_rows)

    @property
    def passed(self) -> bool:
        # decay is a monitor (reported, queried by real-data acceptance),
        # not a pass/fail gate: on finite samples |S_full| > |S_half|
        # happens at CLT scale even for perfectly Haar data
        return (self.char_verdict and self.moment_verdict
                and self.chisq.passed)

    def to_dict(self) -> dict:
        def cx(z):
            return None if z is None else [z.real, z.imag]
        return {
            "config_hash": self.config_hash,
            "group": self.group_tag,
            "extension": self.extension,
            "n": self.n,
            "threshold_c": self.threshold_c,
            "tables": {
                "character_sums": [
                    {"irrep": r.irrep, "xi": r.xi, "dim": r.dim,
                     "S": cx(r.s), "S_half": cx(r.s_half),
                     "threshold": r.threshold, "verdict": r.verdict,
                     "reason": r.reason}
                    for r in self.char_rows],
                "moments": [asdict(r) for r in self.moment_rows],
                "chisq": {
                    "cells": [asdict(c) for c in self.chisq.cells],
                    "statistic": self.chisq.statistic,
                    "dof": self.chisq.dof,
                    "reduced": self.chisq.reduced,
                    "limit": self.chisq.limit,
                },
            },
            "verdicts": {
                "character_sums": self.char_verdict,
                "decay": self.decay_verdict,
                "moments": self.moment_verdict,
                "chi_square": self.chisq.passed,
                "all": self.passed,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def character_sums_csv(self) -> str:
        lines = ["irrep,xi,re_S,im_S,threshold,verdict"]
        for r in self.char_rows:
            re_s = "" if r.s is None else repr(r.s.real)
            im_s = "" if r.s is None else repr(r.s.imag)
            lines.append(f"{r.irrep},{r.xi},{re_s},{im_s},"
                         f"{r.threshold!r},{r.verdict}")
        return "\n".join(lines) + "\n"

    def moments_csv(self) -> str:
        lines = ["j,k,xi,empirical,predicted,sigma_dev"]
        for r in self.moment_rows:
            lines.append(f"{r.j},{r.k},{r.xi},{r.empirical!r},"
                         f"{r.predicted!r},{r.sigma_dev!r}")
        return "\n".join(lines) + "\n"


def analyze(setup: CstSetup, cutoff: int = 3, jmax: int = 3, kmax: int = 3,
            bins: tuple[int, int] = (20, 20),
            threshold_c: float = DEFAULT_THRESHOLD_C,
            chi2_limit: float = DEFAULT_CHI2_LIMIT,
            mc_oversample: int = 100,
            config_hash: str = "") -> EquidistReport:
    """Full report: character sums with halves comparison, moment table
    (trivial and first nontrivial xi), chi-square fit."""
    char_rows = character_sum_table(setup, cutoff, threshold_c)
    moments = moment_table(setup, jmax, kmax, setup.extension.trivial_character)
    nontriv = next((c for c in setup.extension.characters if not c.is_trivial),
                   None)
    if nontriv is not None:
        moments += moment_table(setup, jmax, kmax, nontriv)
    chisq = chi_square_fit(setup, bins, mc_oversample, chi2_limit)
    return EquidistReport(group_tag=setup.group.tag,
                          extension=setup.extension.name, n=setup.n,
                          threshold_c=threshold_c, char_rows=char_rows,
                          moment_rows=moments, chisq=chisq,
                          config_hash=config_hash)


def self_test(tag: str, n: int, seed: int, cutoff: int = 2,
              bins: tuple[int, int] = (20, 20)) -> EquidistReport:
    """Synthetic pipeline validation: Haar sample of the group, uniform
    Artin classes, then the full analysis; every verdict must pass."""
    setup = make_synthetic_setup(tag, n, seed)
    return analyze(setup, cutoff=cutoff, jmax=3, kmax=3, bins=bins)
