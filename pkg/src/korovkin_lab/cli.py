"""Batch runner: ``korovkin-lab --config run.json``.

The config is a flat JSON object with kebab-case keys; unknown keys are
rejected.  Each run writes ``<command>-<timestamp>.csv`` (plus auxiliary
CSVs) and ``summary.txt`` to the output directory.  Exit status is 0 on
PASS, 1 on FAIL and 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import axioms, harness, korovkin, lattice
from .grid import GridFunction, Interval, make_monomial
from .operators import landau_stieltjes_family

COMMANDS = ("beispiel6", "korovkin-check", "determinacy", "axioms", "lattice-campaign")
STABILITY_GRIDS = (17, 33, 65)

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    interval: Interval = Interval(0.0, 1.0)
    grid_m: int = 257
    schedule: list[int] = field(default_factory=lambda: [8, 32, 128])
    p: float = 1.0
    tolerance: float = korovkin.DEFAULT_TOL
    seed: int = 0
    output_dir: Path = Path(".")
    test_set: list = field(default_factory=lambda: [0, 1, 2])
    targets: list[str] | None = None
    trials: int = 200

    @classmethod
    def from_dict(cls, raw: dict, base: Path = Path(".")) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        keys = {"command", "interval", "grid-m", "schedule", "p", "tolerance", "seed",
                "output-dir", "test-set", "targets", "trials"}
        unknown = sorted(set(raw) - keys)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        if "command" not in raw:
            raise ConfigError("command: missing")
        cmd = raw["command"]
        if cmd not in COMMANDS:
            raise ConfigError(f"command: {cmd!r} is not one of {', '.join(COMMANDS)}")
        cfg = cls(cmd)

        if "interval" in raw:
            iv = raw["interval"]
            if not (isinstance(iv, list) and len(iv) == 2):
                raise ConfigError("interval: expected [a, b]")
            try:
                cfg.interval = Interval(*iv)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"interval: {exc}") from None
        if "grid-m" in raw:
            cfg.grid_m = _int(raw, "grid-m")
        if cfg.grid_m < 17:
            raise ConfigError(f"grid-m: must be >= 17, got {cfg.grid_m}")
        if "schedule" in raw:
            sched = raw["schedule"]
            if not (isinstance(sched, list) and sched and all(_is_int(n) for n in sched)):
                raise ConfigError("schedule: expected a nonempty list of integers")
            cfg.schedule = [int(n) for n in sched]
        if any(b <= a for a, b in zip(cfg.schedule, cfg.schedule[1:])) or cfg.schedule[0] < 1:
            raise ConfigError(f"schedule: must be positive and strictly increasing, got {cfg.schedule}")
        if "p" in raw:
            cfg.p = _float(raw, "p")
        if not cfg.p >= 1:
            raise ConfigError(f"p: must be >= 1, got {cfg.p}")
        if "tolerance" in raw:
            cfg.tolerance = _float(raw, "tolerance")
            if not cfg.tolerance > 0:
                raise ConfigError("tolerance: must be positive")
        if "seed" in raw:
            cfg.seed = _int(raw, "seed")
        if "trials" in raw:
            cfg.trials = _int(raw, "trials")
            if cfg.trials < 1:
                raise ConfigError("trials: must be >= 1")
        if "output-dir" in raw:
            cfg.output_dir = base / str(raw["output-dir"])
        if "test-set" in raw:
            ts = raw["test-set"]
            if not (isinstance(ts, list) and ts):
                raise ConfigError("test-set: expected a nonempty list of degrees or CSV paths")
            for item in ts:
                if not ((_is_int(item) and item >= 0) or isinstance(item, str)):
                    raise ConfigError(f"test-set: bad entry {item!r}")
            cfg.test_set = [str(base / i) if isinstance(i, str) else int(i) for i in ts]
        if "targets" in raw:
            tg = raw["targets"]
            if not (isinstance(tg, list) and all(isinstance(x, str) for x in tg)):
                raise ConfigError("targets: expected a list of CSV paths")
            cfg.targets = [str(base / x) for x in tg]
        return cfg

    def test_functions(self) -> tuple[list[GridFunction], list[str]]:
        fs, names = [], []
        for item in self.test_set:
            if isinstance(item, int):
                fs.append(make_monomial(self.interval, self.grid_m, item))
                names.append(f"pi{item}")
            else:
                fs.append(self._load(item, "test-set"))
                names.append(Path(item).stem)
        return fs, names

    def target_functions(self) -> tuple[list[GridFunction], list[str]]:
        if self.targets is None:
            return harness.standard_targets(self.interval, self.grid_m)
        fs = [self._load(p, "targets") for p in self.targets]
        return fs, [Path(p).stem for p in self.targets]

    def _load(self, path: str, key: str) -> GridFunction:
        try:
            f = GridFunction.from_csv(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"{key}: cannot read {path}: {exc}") from None
        if f.interval != self.interval or f.m != self.grid_m:
            raise ConfigError(f"{key}: {path} is not on the configured interval/grid-m")
        return f


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _int(raw, key) -> int:
    v = raw[key]
    if not _is_int(v):
        raise ConfigError(f"{key}: expected an integer, got {v!r}")
    return v


def _float(raw, key) -> float:
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    return float(v)


@dataclass
class Outcome:
    verdict: str
    files: dict[str, str]  # suffix -> CSV text; "" is the main report
    summary: list[str]


def _landau_l1(cfg: RunConfig) -> Outcome:
    S, s_names = cfg.test_functions()
    targets, t_names = cfg.target_functions()
    rep = harness.run_convergence(landau_stieltjes_family(), S, targets, cfg.schedule, cfg.p,
                                  S_names=s_names, target_names=t_names,
                                  korovkin_tol=cfg.tolerance)
    rep.norm_limit = 1.0 + harness.NORM_SLACK
    return Outcome(rep.verdict, {"": rep.report_csv(), "hypothesis": rep.hypothesis_csv()},
                   rep.summary().splitlines()[:-1])


def _korovkin_check(cfg: RunConfig) -> Outcome:
    S, s_names = cfg.test_functions()
    cands, c_names = cfg.target_functions()
    cands.append(make_monomial(cfg.interval, cfg.grid_m, 3))
    c_names.append("pi3")
    imp = harness.check_extension_implication(landau_stieltjes_family(), S, cands, cfg.schedule,
                                              cfg.p, candidate_names=c_names, tol=cfg.tolerance)
    files = {"": imp.convergence.report_csv()}
    for f, nm in zip(cands, c_names):
        files[f"membership-{nm}"] = korovkin.membership_csv(
            korovkin.membership_rows(S, f, cfg.tolerance))
    lines = [f"test set: {' '.join(s_names)}",
             f"determined fraction: {imp.determined_fraction:.17g}",
             f"members: {' '.join(imp.members) or '-'}",
             f"non-members (no claim): {' '.join(imp.non_members) or '-'}"]
    if imp.counterexamples:
        lines.append(f"counterexamples: {' '.join(imp.counterexamples)}")
    else:
        lines.append("no counterexample found")
    conv = imp.convergence
    if len(conv.schedule) < 2:
        verdict = harness.INSUFFICIENT
    else:
        verdict = harness.PASS if imp.holds else harness.FAIL
    return Outcome(verdict, files, lines)


def _determinacy(cfg: RunConfig) -> Outcome:
    S, s_names = cfg.test_functions()
    rep = korovkin.verify_korovkin_set(S, cfg.tolerance)
    lines = [f"test set: {' '.join(s_names)}",
             f"strictly positive combination: {rep.strictly_positive}",
             f"determined fraction (m={cfg.grid_m}): {rep.determined_fraction:.17g}"]
    verdicts = []
    for m in STABILITY_GRIDS:
        sub = RunConfig(cfg.command, cfg.interval, m, test_set=cfg.test_set)
        try:
            fs, _ = sub.test_functions()
        except ConfigError:
            lines.append(f"determined fraction (m={m}): n/a (test set is fixed to m={cfg.grid_m})")
            continue
        r = rep if m == cfg.grid_m else korovkin.verify_korovkin_set(fs, cfg.tolerance)
        verdicts.append(r.verdict)
        if m != cfg.grid_m:
            lines.append(f"determined fraction (m={m}): {r.determined_fraction:.17g}")
    if verdicts:
        lines.append(f"stable across resolutions: {len(set(verdicts)) == 1}")
    if rep.verdict is None:
        lines.append("no strictly positive function in lin S: no verdict")
    elif rep.verdict:
        lines.append("Korovkin set at this resolution (fraction = 1)")
    else:
        lines.append("NOT a Korovkin set (fraction < 1)")
    return Outcome(harness.PASS, {"": korovkin.determinacy_csv(rep.sweep)}, lines)


def _axioms(cfg: RunConfig) -> Outcome:
    ps = sorted({1.0, 2.0, cfg.p})
    recs = axioms.run_axiom_suite(cfg.interval, cfg.grid_m, ps, cfg.trials, cfg.seed)
    failed = [r for r in recs if not r.passed]
    lines = [f"records: {len(recs)}", f"failed: {len(failed)}"]
    lines += [f"failed {r.axiom} #{r.instance} ({r.parameter}): {r.detail}" for r in failed[:10]]
    return Outcome(harness.FAIL if failed else harness.PASS,
                   {"": axioms.axiom_records_csv(recs)}, lines)


def _lattice_campaign(cfg: RunConfig) -> Outcome:
    rows = lattice.run_campaign(cfg.trials, cfg.seed)
    fails = [r for r in rows if r.verdict != "PASS"]
    oversize = [r for r in rows if r.testset_size > 2 * r.k + 1]
    lines = [f"trials: {len(rows)}", f"FAIL verdicts: {len(fails)}",
             f"test sets larger than 2k+1: {len(oversize)}"]
    ok = not fails and not oversize
    return Outcome(harness.PASS if ok else harness.FAIL, {"": lattice.campaign_csv(rows)}, lines)


RUNNERS = {
    "beispiel6": _landau_l1,
    "korovkin-check": _korovkin_check,
    "determinacy": _determinacy,
    "axioms": _axioms,
    "lattice-campaign": _lattice_campaign,
}


def run(cfg: RunConfig, quiet: bool = False) -> int:
    """Run one experiment, write its files and return the exit status."""
    outcome = RUNNERS[cfg.command](cfg)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
    written = []
    for suffix, text in outcome.files.items():
        name = f"{cfg.command}-{suffix}-{stamp}.csv" if suffix else f"{cfg.command}-{stamp}.csv"
        path = cfg.output_dir / name
        path.write_text(text)
        written.append(path)
    lines = [f"command: {cfg.command}", *outcome.summary, f"verdict: {outcome.verdict}"]
    (cfg.output_dir / "summary.txt").write_text("\n".join(lines) + "\n")
    if not quiet:
        for path in written:
            print(f"wrote {path}")
        print("\n".join(lines))
    return EXIT_FAIL if outcome.verdict == harness.FAIL else EXIT_PASS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="korovkin-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--output-dir", help="overrides output-dir from the config")
    parser.add_argument("--quiet", action="store_true", help="suppress console output")
    args = parser.parse_args(argv)
    path = Path(args.config)
    try:
        raw = json.loads(path.read_text())
        cfg = RunConfig.from_dict(raw, base=path.parent)
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.output_dir:
        cfg.output_dir = Path(args.output_dir)
    try:
        return run(cfg, quiet=args.quiet)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
