"""Truncated Euler products on real s > 1: the numerically checkable
shadow of analytic continuation plus nonvanishing on Re(s) >= 1.

For a representation rho and a 1-dimensional xi, the partial product over
good primes p <= X is assembled from the eigenangles of rho at each class
point:

    log L_X(s) = sum_{p <= X} sum_j -log(1 - xi(sigma_p) e^{i alpha_j(p)} p^{-s})

(principal branch).  What finite truncations can show is behaviour right
of 1: stability in X at fixed s, a partial product bounded away from zero,
and no decline beyond what the truncation tail allows; that is what the
scan flags.  Euler factors at the excluded bad primes are omitted and the
skipped primes are reported so callers can reinstate standard factors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np

from .equidist import CstSetup
from .galois import CharacterSpec
from .reps import (IrrepSpec, euler_angles_class, evaluable_from_class,
                   class_determined, NotClassDetermined)

MIN_S_GAP = 0.05
MODULUS_FLOOR = 1e-3


@dataclass
class LogLResult:
    value: complex
    s: float
    x: int
    n_primes: int
    tail_bound: float          # dim * sum_{p > X} p^{-s}, primes to 10 X
    skipped_primes: list[int]  # excluded bad/ramified primes <= X

    @property
    def modulus(self) -> float:
        return float(np.exp(self.value.real))


def _tail_bound(dim: int, x: int, s: float) -> float:
    """dim * sum_{X < p <= 10X} p^{-s} plus an integral bound beyond; a
    usable overestimate of the missing log-factor mass."""
    from .counting import sieve_primes
    hi = max(10 * x, x + 1000)
    ps = sieve_primes(hi)
    ps = ps[ps > x]
    head = float(np.sum(ps.astype(float) ** (-s))) if len(ps) else 0.0
    # integral tail for p > hi: int_hi^inf t^-s dt / log hi
    integral = hi ** (1.0 - s) / ((s - 1.0) * math.log(hi))
    return dim * (head + integral)


def log_L_truncated(setup: CstSetup, irrep: IrrepSpec, xi: CharacterSpec,
                    s: float, x: int) -> LogLResult:
    """Truncated log L(s, rho x xi) over the setup's primes <= x."""
    if s < 1.0 + MIN_S_GAP:
        raise ValueError(
            f"s = {s} too close to 1: the truncation tail ~ X^(1-s)/(s-1) "
            f"is uncontrolled below 1 + {MIN_S_GAP}")
    if setup.is_synthetic:
        raise ValueError("Euler products need prime-indexed data")
    pmax = int(setup.p.max())
    if x > pmax:
        from .counting import sieve_primes
        missing = sieve_primes(x)
        missing = missing[missing > pmax]
        excluded = _excluded_primes(setup)
        if any(int(q) not in excluded for q in missing):
            raise ValueError(
                f"X = {x} exceeds the dataset bound (largest prime {pmax})")
    if not evaluable_from_class(irrep):
        bad = [c for c in setup.group.component_labels
               if not class_determined(irrep, c)]
        raise NotClassDetermined(
            f"{irrep.name} not class-determined on {bad}; skipped")
    mask = setup.p <= x
    ps = setup.p[mask].astype(float)
    xiv = setup.xi_values(xi)[mask]
    total = 0.0 + 0.0j
    for ci, label in enumerate(setup.group.component_labels):
        cmask = setup.comp_idx[mask] == ci
        if not cmask.any():
            continue
        ang = euler_angles_class(irrep, label, setup.na1[mask][cmask],
                                 setup.na2[mask][cmask])
        z = xiv[cmask, None] * np.exp(1j * ang) \
            * (ps[cmask, None] ** (-s))
        total += complex(-np.log1p(-z).sum())
    bad = sorted(q for q in _excluded_primes(setup) if q <= x)
    return LogLResult(value=total, s=s, x=x, n_primes=int(mask.sum()),
                      tail_bound=_tail_bound(irrep.dimension * xi.dimension,
                                             x, s),
                      skipped_primes=bad)


def _excluded_primes(setup: CstSetup) -> set[int]:
    out = set(setup.extension.ramified)
    if setup.surface is not None:
        out |= setup.surface.bad_primes()
    else:
        out |= {2, 3}
    return out


def local_factor(angles: np.ndarray, xi_value: complex, p: int,
                 s: float) -> complex:
    """det(1 - rho(x_p) xi(sigma_p) p^-s)^-1 from the eigenangles."""
    z = xi_value * np.exp(1j * np.asarray(angles)) * p ** (-s)
    return complex(np.exp(-np.log1p(-z).sum()))


@dataclass
class LScanReport:
    irrep: str
    xi: str
    s_grid: list[float]
    x_grid: list[int]
    log_values: list[list[list[float]]]    # [si][xi] -> [re, im]
    tail_bounds: list[list[float]]
    min_modulus: float | None
    flags: list[str] = field(default_factory=list)
    skipped_primes: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.flags

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["s,X,re_logL,im_logL,tail_bound"]
        for i, s in enumerate(self.s_grid):
            for j, x in enumerate(self.x_grid):
                re, im = self.log_values[i][j]
                lines.append(f"{s!r},{x},{re!r},{im!r},"
                             f"{self.tail_bounds[i][j]!r}")
        return "\n".join(lines) + "\n"


def invertibility_scan(setup: CstSetup, irrep: IrrepSpec, xi: CharacterSpec,
                       s_grid: list[float], x_grid: list[int]) -> LScanReport:
    """Tabulated partial products with two alarms: a modulus below the
    floor, and a monotone decline in X exceeding what the tail at the
    starting X permits for a convergent nonvanishing product."""
    s_grid = sorted(s_grid)
    x_grid = sorted(x_grid)
    values = []
    tails = []
    flags: list[str] = []
    min_mod = math.inf
    skipped: list[int] = []
    for s in s_grid:
        row = []
        trow = []
        mods = []
        for x in x_grid:
            res = log_L_truncated(setup, irrep, xi, s, x)
            row.append([res.value.real, res.value.imag])
            trow.append(res.tail_bound)
            mods.append(res.modulus)
            skipped = res.skipped_primes
            min_mod = min(min_mod, res.modulus)
            if res.modulus < MODULUS_FLOOR:
                flags.append(f"modulus {res.modulus:.2e} < {MODULUS_FLOOR} "
                             f"at (s={s}, X={x})")
        values.append(row)
        tails.append(trow)
        if len(mods) >= 2:
            logm = [math.log(m) for m in mods]
            monotone_down = all(b < a for a, b in zip(logm, logm[1:]))
            if monotone_down:
                for i in range(len(x_grid) - 1):
                    decline = logm[i] - logm[-1]
                    if decline > trow[i]:
                        flags.append(
                            f"monotone decline {decline:.3g} beyond tail bound "
                            f"{trow[i]:.3g} from X={x_grid[i]} at s={s}")
                        break
    return LScanReport(irrep=irrep.name, xi=xi.name,
                       s_grid=[float(s) for s in s_grid],
                       x_grid=[int(x) for x in x_grid],
                       log_values=values, tail_bounds=tails,
                       min_modulus=(None if min_mod is math.inf else min_mod),
                       flags=flags, skipped_primes=skipped)
