"""Experiment configuration: a four-table TOML schema ([surface],
[extension], [lfield], [run]) that round-trips losslessly and rejects
unknown keys.

Schema (missing keys take the listed defaults; `-` means optional):

    [surface]
    kind          = "Product" | "Square" | "TwistPair" | "Genus2"
    e1            - [a1, a2, a3, a4, a6]       (elliptic kinds)
    e2            - [a1, a2, a3, a4, a6]       (Product)
    twist_d       - squarefree integer          (TwistPair)
    f             - ascending coefficients, degree 5 or 6 (Genus2)
    claimed_group - one of the thirteen group tags

    [extension]
    kind     = "cyclotomic" | "quadratic" | "product"
    modulus  - cyclotomic conductor (>= 3)
    subgroup - residues generating the fixed subgroup H (default [1])
    d        - quadratic radicand
    factors  - inline tables of the two kinds above (product)
    split_g1 - leading factor count forming the abelian part G1

    [lfield]
    kind    = "trivial" | "quadratic" | "cyclic"
    d       - quadratic radicand
    modulus, order - cyclic parameters

    [run]
    pmax, seed, irrep_cutoff, moment_jmax, moment_kmax, threshold_c,
    chi2_limit, bins, mc_oversample, s_grid, x_grid, lfun_cutoff,
    output_dir, cache
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field, asdict

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .counting import EllipticCurve, LFieldSpec, SurfaceSpec
from .galois import GaloisExtSpec, make_extension
from .groups import GROUP_TAGS


class ConfigError(ValueError):
    pass


_SURFACE_KEYS = {"kind", "e1", "e2", "twist_d", "f", "claimed_group"}
_EXTENSION_KEYS = {"kind", "modulus", "subgroup", "d", "factors", "split_g1"}
_LFIELD_KEYS = {"kind", "d", "modulus", "order"}
_RUN_KEYS = {"pmax", "seed", "irrep_cutoff", "moment_jmax", "moment_kmax",
             "threshold_c", "chi2_limit", "bins", "mc_oversample",
             "s_grid", "x_grid", "lfun_cutoff", "output_dir", "cache"}


@dataclass
class RunConfig:
    pmax: int = 100_000
    seed: int = 7
    irrep_cutoff: int = 3
    moment_jmax: int = 3
    moment_kmax: int = 3
    threshold_c: float = 4.0
    chi2_limit: float = 1.5
    bins: list[int] = field(default_factory=lambda: [20, 20])
    mc_oversample: int = 100
    s_grid: list[float] = field(default_factory=lambda: [1.1, 1.5, 2.0])
    x_grid: list[int] = field(default_factory=lambda: [1000, 10000, 100000])
    lfun_cutoff: int = 2
    output_dir: str = "out"
    cache: str | None = None


@dataclass
class ExperimentConfig:
    surface: dict = field(default_factory=dict)
    extension: dict = field(default_factory=dict)
    lfield: dict = field(default_factory=lambda: {"kind": "trivial"})
    run: RunConfig = field(default_factory=RunConfig)

    # -- construction -------------------------------------------------

    @classmethod
    def from_toml(cls, text: str) -> "ExperimentConfig":
        raw = tomllib.loads(text)
        unknown = set(raw) - {"surface", "extension", "lfield", "run"}
        if unknown:
            raise ConfigError(f"unknown top-level table(s): {sorted(unknown)}")
        surface = dict(raw.get("surface", {}))
        extension = dict(raw.get("extension", {}))
        lfield = dict(raw.get("lfield", {"kind": "trivial"}))
        run_raw = dict(raw.get("run", {}))
        for name, keys, table in (("surface", _SURFACE_KEYS, surface),
                                  ("extension", _EXTENSION_KEYS, extension),
                                  ("lfield", _LFIELD_KEYS, lfield),
                                  ("run", _RUN_KEYS, run_raw)):
            bad = set(table) - keys
            if bad:
                raise ConfigError(f"unknown key(s) in [{name}]: {sorted(bad)}")
        _check_factor_keys(extension)
        run = RunConfig(**run_raw)
        return cls(surface=surface, extension=extension, lfield=lfield, run=run)

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            return cls.from_toml(fh.read().decode())

    # -- emission ------------------------------------------------------

    def to_toml(self) -> str:
        out = []
        out.append(_emit_table("surface", self.surface))
        out.append(_emit_table("extension", self.extension))
        out.append(_emit_table("lfield", self.lfield))
        run_dict = asdict(self.run)
        if run_dict.get("cache") is None:
            run_dict.pop("cache")
        out.append(_emit_table("run", run_dict))
        return "\n".join(x for x in out if x)

    def content_hash(self) -> str:
        blob = json.dumps({"surface": self.surface, "extension": self.extension,
                           "lfield": self.lfield, "run": asdict(self.run)},
                          sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    # -- realization ---------------------------------------------------

    def surface_spec(self) -> SurfaceSpec:
        s = self.surface
        kind = s.get("kind")
        if kind not in ("Product", "Square", "TwistPair", "Genus2"):
            raise ConfigError(f"bad surface kind {kind!r}")
        claimed = s.get("claimed_group")
        if claimed is not None and claimed not in GROUP_TAGS:
            raise ConfigError(f"unknown claimed_group {claimed!r}")
        kw = {"kind": kind, "claimed_galois_type": claimed,
              "lfield": self.lfield_spec()}
        if "e1" in s:
            kw["e1"] = EllipticCurve(*s["e1"])
        if "e2" in s:
            kw["e2"] = EllipticCurve(*s["e2"])
        if "twist_d" in s:
            kw["twist_d"] = int(s["twist_d"])
        if "f" in s:
            kw["genus2_f"] = tuple(int(c) for c in s["f"])
        try:
            return SurfaceSpec(**kw)
        except (ValueError, TypeError) as e:
            raise ConfigError(f"bad [surface]: {e}") from None

    def extension_spec(self) -> GaloisExtSpec:
        try:
            return make_extension(self.extension)
        except (KeyError, ValueError) as e:
            raise ConfigError(f"bad [extension]: {e}") from None

    def lfield_spec(self) -> LFieldSpec:
        lf = self.lfield
        kind = lf.get("kind", "trivial")
        if kind == "trivial":
            return LFieldSpec()
        if kind == "quadratic":
            return LFieldSpec(kind="quadratic", d=int(lf["d"]))
        if kind == "cyclic":
            return LFieldSpec(kind="cyclic", modulus=int(lf["modulus"]),
                              order=int(lf["order"]))
        raise ConfigError(f"bad lfield kind {kind!r}")


def _check_factor_keys(extension: dict) -> None:
    for fac in extension.get("factors", []):
        bad = set(fac) - _EXTENSION_KEYS
        if bad:
            raise ConfigError(f"unknown key(s) in extension factor: {sorted(bad)}")


def _emit_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_emit_value(x) for x in v) + "]"
    if isinstance(v, dict):
        inner = ", ".join(f"{k} = {_emit_value(x)}" for k, x in v.items())
        return "{" + inner + "}"
    raise ConfigError(f"cannot emit value {v!r}")


def _emit_table(name: str, table: dict) -> str:
    if not table:
        return ""
    lines = [f"[{name}]"]
    for k, v in table.items():
        if v is None:
            continue
        lines.append(f"{k} = {_emit_value(v)}")
    return "\n".join(lines) + "\n"
