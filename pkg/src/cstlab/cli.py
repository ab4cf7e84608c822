"""Command-line front end.

    cstlab count    --config exp.toml            materialize the prime cache
    cstlab analyze  --config exp.toml [--count]  equidistribution report
    cstlab lfun     --config exp.toml            truncated Euler-product scan
    cstlab selftest --group B_C2 --n 100000 --seed 7
    cstlab haar     --group J_E3 --n 10000 --seed 1 [--out samples.csv]
    cstlab report   --json out/report.json       render verdict lines
    cstlab registry list | show NAME [--toml]

Exit status: 0 when every verdict passes, 2 on a verdict failure, 1 on
usage or configuration errors.  Flag overrides beat config values, with a
note on stderr.  Output files are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile


from . import equidist, lfun
from .config import ConfigError, ExperimentConfig
from .counting import build_dataset
from .galois import check_disjoint, check_split_totally_real
from .groups import GROUP_TAGS, haar_moment, make_group, sample_haar_arrays
from .registry import registry_entries, registry_get
from .reps import evaluable_from_class, list_irreps

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2


def _atomic_write(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _note(msg: str) -> None:
    print(f"note: {msg}", file=sys.stderr)


def _load_config(args) -> ExperimentConfig:
    if getattr(args, "recipe", None):
        cfg = registry_get(args.recipe).config()
    elif getattr(args, "config", None):
        cfg = ExperimentConfig.load(args.config)
    else:
        raise ConfigError("need --config PATH or --recipe NAME")
    if getattr(args, "pmax", None):
        _note(f"flag --pmax={args.pmax} overrides config pmax={cfg.run.pmax}")
        cfg.run.pmax = args.pmax
    if getattr(args, "cache", None):
        if cfg.run.cache:
            _note(f"flag --cache overrides config cache={cfg.run.cache}")
        cfg.run.cache = args.cache
    if getattr(args, "output_dir", None):
        cfg.run.output_dir = args.output_dir
    return cfg


def _build_setup(cfg: ExperimentConfig, require_cache: bool,
                 allow_count: bool) -> equidist.CstSetup:
    surface = cfg.surface_spec()
    extension = cfg.extension_spec()
    claimed = surface.claimed_galois_type
    if claimed is None:
        raise ConfigError(
            "analysis needs [surface] claimed_group: the group the data is "
            "scored against")
    group = make_group(claimed)
    cache = cfg.run.cache
    if cache and require_cache and not os.path.exists(cache) and not allow_count:
        raise ConfigError(
            f"cache {cache!r} not found; run `cstlab count` first or pass "
            "--count to build it now")
    data = build_dataset(surface, extension, cfg.run.pmax, cache_path=cache)
    return equidist.CstSetup(group=group, extension=extension, data=data,
                             surface=surface)


def cmd_count(args) -> int:
    cfg = _load_config(args)
    surface = cfg.surface_spec()
    extension = cfg.extension_spec()
    cache = cfg.run.cache or os.path.join(cfg.run.output_dir,
                                          f"frob_{surface.content_hash()[:12]}.csv")
    cfg.run.cache = cache
    os.makedirs(os.path.dirname(cache) or ".", exist_ok=True)
    data = build_dataset(surface, extension, cfg.run.pmax, cache_path=cache)
    print(f"counted {len(data)} good primes <= {cfg.run.pmax} -> {cache}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    cfg = _load_config(args)
    setup = _build_setup(cfg, require_cache=True, allow_count=args.count)
    ok_disjoint, msg = check_disjoint(setup.extension,
                                      setup.surface.lfield)
    if not ok_disjoint:
        _note(f"hypothesis warning: {msg}")
    ok_real, msg_real = check_split_totally_real(setup.extension)
    if not ok_real:
        _note(f"hypothesis warning: {msg_real}")
    report = equidist.analyze(setup, cutoff=cfg.run.irrep_cutoff,
                              jmax=cfg.run.moment_jmax,
                              kmax=cfg.run.moment_kmax,
                              bins=tuple(cfg.run.bins),
                              threshold_c=cfg.run.threshold_c,
                              chi2_limit=cfg.run.chi2_limit,
                              mc_oversample=cfg.run.mc_oversample,
                              config_hash=cfg.content_hash())
    out = cfg.run.output_dir
    _atomic_write(os.path.join(out, "report.json"), report.to_json())
    _atomic_write(os.path.join(out, "character_sums.csv"),
                  report.character_sums_csv())
    _atomic_write(os.path.join(out, "moments.csv"), report.moments_csv())
    print(_render_report(report.to_dict()))
    print(f"wrote {out}/report.json, character_sums.csv, moments.csv")
    return EXIT_OK if report.passed else EXIT_VERDICT


def cmd_lfun(args) -> int:
    cfg = _load_config(args)
    setup = _build_setup(cfg, require_cache=True, allow_count=args.count)
    reports = []
    failed = False
    for irrep in list_irreps(setup.group, cfg.run.lfun_cutoff):
        if not evaluable_from_class(irrep):
            _note(f"skipping {irrep.name}: not class-determined")
            continue
        for xi in setup.extension.characters:
            if irrep.is_trivial and xi.is_trivial:
                continue
            rep = lfun.invertibility_scan(setup, irrep, xi,
                                          cfg.run.s_grid,
                                          [x for x in cfg.run.x_grid
                                           if x <= cfg.run.pmax])
            reports.append(rep)
            status = "ok" if rep.passed else "ALARM"
            print(f"{irrep.name} x {xi.name}: min|L_X| = "
                  f"{rep.min_modulus:.4g} [{status}]")
            for flag in rep.flags:
                print(f"    {flag}")
            failed |= not rep.passed
    out = cfg.run.output_dir
    blob = json.dumps([json.loads(r.to_json()) for r in reports],
                      indent=2, sort_keys=True)
    _atomic_write(os.path.join(out, "lfun_scan.json"), blob)
    _atomic_write(os.path.join(out, "lfun_scan.csv"),
                  "irrep,xi,s,X,re_logL,im_logL,tail_bound\n" + "".join(
                      "".join(f"{r.irrep},{r.xi},{line}\n"
                              for line in r.to_csv().splitlines()[1:])
                      for r in reports))
    print(f"wrote {out}/lfun_scan.json, lfun_scan.csv")
    return EXIT_VERDICT if failed else EXIT_OK


def cmd_selftest(args) -> int:
    tags = list(GROUP_TAGS) if args.group == "all" else [args.group]
    for tag in tags:
        if tag not in GROUP_TAGS:
            raise ConfigError(f"unknown group {tag!r}")
    all_ok = True
    for tag in tags:
        rep = equidist.self_test(tag, args.n, args.seed)
        verdicts = rep.to_dict()["verdicts"]
        ok = rep.passed
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'} {tag:8s} n={rep.n} "
              f"chi2/dof={rep.chisq.reduced:.3f} "
              f"char={verdicts['character_sums']} "
              f"moments={verdicts['moments']}")
    return EXIT_OK if all_ok else EXIT_VERDICT


def cmd_haar(args) -> int:
    if args.group not in GROUP_TAGS:
        raise ConfigError(f"unknown group {args.group!r}")
    group = make_group(args.group)
    sample = sample_haar_arrays(group, args.n, args.seed)
    a, b = sample.class_points()
    lines = ["a,b,component"]
    labels = group.component_labels
    for i in range(len(a)):
        lines.append(f"{a[i]!r},{b[i]!r},{labels[sample.components[i]]}")
    if args.out:
        _atomic_write(args.out, "\n".join(lines) + "\n")
        print(f"wrote {args.out} ({args.n} samples)")
    print("j,k,quadrature,monte_carlo")
    for j in range(args.moments + 1):
        for k in range(args.moments + 1):
            q = haar_moment(group, j, k)
            mc = float((a ** j * b ** k).mean())
            print(f"{j},{k},{q:.6f},{mc:.6f}")
    return EXIT_OK


def cmd_report(args) -> int:
    with open(args.json) as fh:
        payload = json.load(fh)
    print(_render_report(payload))
    return EXIT_OK if payload["verdicts"]["all"] else EXIT_VERDICT


def _render_report(d: dict) -> str:
    lines = []
    mark = lambda ok: "PASS" if ok else "FAIL"
    lines.append(f"== equidistribution report: {d['group']} x {d['extension']} "
                 f"(n = {d['n']}) ==")
    for row in d["tables"]["character_sums"]:
        if row["verdict"] == "skipped":
            lines.append(f"[skip] {row['irrep']} x {row['xi']}: {row['reason']}")
            continue
        s = row["S"]
        mod = (s[0] ** 2 + s[1] ** 2) ** 0.5
        lines.append(f"[{mark(row['verdict'] == 'pass')}] "
                     f"{row['irrep']} x {row['xi']}: |S| = {mod:.5f} "
                     f"<= {row['threshold']:.5f}")
    bad_moments = [m for m in d["tables"]["moments"] if abs(m["sigma_dev"]) > 4]
    lines.append(f"[{mark(not bad_moments)}] moments: "
                 f"{len(d['tables']['moments']) - len(bad_moments)}/"
                 f"{len(d['tables']['moments'])} within 4 sigma")
    ch = d["tables"]["chisq"]
    lines.append(f"[{mark(ch['reduced'] <= ch['limit'])}] chi-square: "
                 f"reduced = {ch['reduced']:.3f} (dof {ch['dof']}, "
                 f"limit {ch['limit']})")
    v = d["verdicts"]
    lines.append(f"[{mark(v['decay'])}] halves comparison (monitor): "
                 f"no growth = {v['decay']}")
    lines.append(f"overall: {mark(v['all'])}")
    return "\n".join(lines)


def cmd_registry(args) -> int:
    if args.action == "list":
        for e in registry_entries():
            claimed = e.surface.get("claimed_group", "-")
            exp = " [experimental]" if e.experimental else ""
            print(f"{e.name:18s} claimed={claimed:8s} pmax={e.pmax}{exp}")
            print(f"    {e.description}")
        return EXIT_OK
    entry = registry_get(args.name)
    if args.toml:
        print(entry.config().to_toml())
    else:
        print(f"{entry.name}: {entry.description}")
        print(f"surface   = {entry.surface}")
        print(f"lfield    = {entry.lfield}")
        print(f"extension = {entry.extension}")
        print(f"pmax      = {entry.pmax}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cstlab",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add_config_opts(p, counting=False):
        p.add_argument("--config", help="experiment TOML path")
        p.add_argument("--recipe", help="registry entry name instead of --config")
        p.add_argument("--pmax", type=int, help="override [run] pmax")
        p.add_argument("--cache", help="override [run] cache path")
        p.add_argument("--output-dir", dest="output_dir")
        if counting:
            p.add_argument("--count", action="store_true",
                           help="build the cache when missing")

    p = sub.add_parser("count", help="materialize the Frobenius cache")
    add_config_opts(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("analyze", help="equidistribution report")
    add_config_opts(p, counting=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lfun", help="truncated Euler-product scan")
    add_config_opts(p, counting=True)
    p.set_defaults(func=cmd_lfun)

    p = sub.add_parser("selftest", help="synthetic pipeline validation")
    p.add_argument("--group", default="all",
                   help="group tag or 'all'")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("haar", help="dump Haar samples and moments")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--moments", type=int, default=3)
    p.add_argument("--out", help="CSV path for the samples")
    p.set_defaults(func=cmd_haar)

    p = sub.add_parser("report", help="render a report.json")
    p.add_argument("--json", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("registry", help="curve recipes")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--toml", action="store_true",
                   help="print the full experiment config")
    p.set_defaults(func=cmd_registry)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "registry" and args.action == "show" and not args.name:
        ap.error("registry show needs a NAME")
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
