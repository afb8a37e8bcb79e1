"""Command-line entry point: experiment orchestration and report files.

Subcommands: ``run`` (one model), ``table1`` (all three benchmark models),
``figures`` (reconstruction + per-replication ISE dumps), ``rates``
(MISE-vs-n slope) and ``selftest`` (fast invariant smoke suite).  All
outputs are plain CSV/TSV/JSON; identical configurations and seeds produce
byte-identical files.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .basis import DEFAULT_CASCADE_DEPTH, build_basis
from .errors import PcoWaveError
from .estimator import (clip_renormalize, estimate_at, evaluate_grid,
                        evaluate_multires)
from .models import model_m1, model_m2, model_m3, parse_model
from .pyramid import fit_pyramid, fit_top_level, level_alpha, total_energy
from .risk import ise, mise_study, rate_check, risk_grid
from .selection import (DEFAULT_LAMBDA, DEFAULT_LEVEL_CAP, PcoConfig,
                        candidate_set, select)

DEFAULTS = {
    "n": 4096,
    "reps": 50,
    "lam": DEFAULT_LAMBDA,
    "vanishing_moments": 10,
    "level_cap": DEFAULT_LEVEL_CAP,
    "cascade_depth": DEFAULT_CASCADE_DEPTH,
    "seed": 20240101,
}

FIGURE_GRID_NODES = 2 ** 12


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment settings shared by all subcommands."""

    model: str
    n: int
    reps: int
    lam: float
    vanishing_moments: int
    level_cap: int
    cascade_depth: int
    seed: int
    outdir: Path
    emit_grid: bool
    clip_renormalize: bool

    def to_json(self) -> str:
        payload = asdict(self)
        payload["outdir"] = str(self.outdir)
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        payload = json.loads(text)
        payload["outdir"] = Path(payload["outdir"])
        return cls(**payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcowave",
        description="Adaptive wavelet density estimation experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_model):
        if with_model:
            p.add_argument("--model", default=None,
                           help="m1 | m2 | m3 | mix:w,mu1,var1,mu2,var2")
        p.add_argument("--config", type=Path, default=None,
                       help="JSON settings file; explicit flags take precedence")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--reps", type=int, default=None)
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--vanishing-moments", "-V", type=int, default=None)
        p.add_argument("--level-cap", type=int, default=None)
        p.add_argument("--cascade-depth", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--outdir", type=Path, default=None)
        p.add_argument("--emit-grid", action="store_true", default=None,
                       help="write the mean reconstruction as a 2-column TSV")
        p.add_argument("--clip-renormalize", action="store_true", default=None,
                       help="clip/renormalize grid dumps (plotting only)")

    add_common(sub.add_parser("run", help="MISE study for one model"), True)
    add_common(sub.add_parser("table1", help="benchmark table for m1/m2/m3"), False)
    add_common(sub.add_parser("figures", help="reconstruction/ISE dumps"), False)
    rates = sub.add_parser("rates", help="MISE slope against sample size")
    add_common(rates, True)
    rates.add_argument("--n-list", default="512,1024,2048,4096,8192,16384",
                       help="comma-separated geometric sample sizes")
    sub.add_parser("selftest", help="fast invariant smoke suite")
    return parser


def parse_config(args) -> ExperimentConfig:
    """Resolve flags > config file > built-in defaults into one config."""
    from_file = {}
    if getattr(args, "config", None) is not None:
        try:
            from_file = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}")

    def pick(name, fallback):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in from_file:
            return from_file[name]
        return fallback

    cfg = ExperimentConfig(
        model=str(pick("model", "")),
        n=int(pick("n", DEFAULTS["n"])),
        reps=int(pick("reps", DEFAULTS["reps"])),
        lam=float(pick("lam", DEFAULTS["lam"])),
        vanishing_moments=int(pick("vanishing_moments",
                                   DEFAULTS["vanishing_moments"])),
        level_cap=int(pick("level_cap", DEFAULTS["level_cap"])),
        cascade_depth=int(pick("cascade_depth", DEFAULTS["cascade_depth"])),
        seed=int(pick("seed", DEFAULTS["seed"])),
        outdir=Path(pick("outdir", Path("."))),
        emit_grid=bool(pick("emit_grid", False)),
        clip_renormalize=bool(pick("clip_renormalize", False)),
    )
    problems = []
    if cfg.n < 2:
        problems.append(f"--n must be >= 2, got {cfg.n}")
    if cfg.reps < 1:
        problems.append(f"--reps must be >= 1, got {cfg.reps}")
    if not cfg.lam > 0:
        problems.append(f"--lambda must be > 0, got {cfg.lam}")
    if not 1 <= cfg.vanishing_moments <= 10:
        problems.append("--vanishing-moments must be in [1, 10]")
    if cfg.level_cap < 1:
        problems.append(f"--level-cap must be >= 1, got {cfg.level_cap}")
    if not 4 <= cfg.cascade_depth <= 20:
        problems.append("--cascade-depth must be in [4, 20]")
    if problems:
        raise UsageError("; ".join(problems))
    return cfg


class UsageError(Exception):
    """Out-of-range flag values (exit code 2)."""


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _study(cfg: ExperimentConfig, model):
    basis = build_basis(cfg.vanishing_moments, cfg.cascade_depth)
    pco = PcoConfig(lam=cfg.lam, level_cap=cfg.level_cap, n=cfg.n)
    return basis, pco, mise_study(model, cfg.n, cfg.reps, pco, basis, cfg.seed)


def _mean_reconstruction(cfg: ExperimentConfig, model, basis, pco):
    """Grid, replication-mean estimate and true density for one model."""
    lo, hi = model.support()
    pad = basis.support_radius / 2.0 + 1.0
    grid = np.linspace(lo - pad, hi + pad, FIGURE_GRID_NODES)
    candidates = candidate_set(cfg.n, cfg.level_cap)
    acc = np.zeros(len(grid))
    ises = []
    for rep in range(cfg.reps):
        x = model.sample(cfg.n, [cfg.seed, rep])
        pyramid = fit_pyramid(basis, x, int(candidates[-1]))
        report = select(pyramid, pco, basis, candidates)
        est = estimate_at(pyramid, report.selected)
        acc += evaluate_grid(est, grid)
        ises.append(ise(est, model, risk_grid(model, est)))
    mean_vals = acc / cfg.reps
    if cfg.clip_renormalize:
        mean_vals = clip_renormalize(grid, mean_vals)
    return grid, mean_vals, model.pdf(grid), np.array(ises)


def cmd_run(cfg: ExperimentConfig) -> int:
    model = parse_model(cfg.model)
    basis, pco, report = _study(cfg, model)
    outdir = cfg.outdir
    outdir.mkdir(parents=True, exist_ok=True)
    stem = model.label.replace(":", "_").replace(",", "_")
    (outdir / f"{stem}_report.json").write_text(report.to_json(indent=2) + "\n")
    (outdir / f"{stem}_report.csv").write_text(
        "model,mise\n" + report.csv_row() + "\n")
    if cfg.emit_grid:
        grid, mean_vals, _, _ = _mean_reconstruction(cfg, model, basis, pco)
        lines = [f"{_fmt(x)}\t{_fmt(v)}" for x, v in zip(grid, mean_vals)]
        (outdir / f"{stem}_grid.tsv").write_text("\n".join(lines) + "\n")
    print(f"{model.label}: mise={report.mise_mean:.6e} "
          f"selected_mode={report.selected_mode}")
    return 0


def cmd_table1(cfg: ExperimentConfig) -> int:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    rows = ["model,mise,mise_sd,selected_mode"]
    for model in (model_m1(), model_m2(), model_m3()):
        _, _, report = _study(cfg, model)
        rows.append(f"{model.label},{_fmt(report.mise_mean)},"
                    f"{_fmt(report.mise_sd)},{report.selected_mode}")
        print(f"{model.label}: mise={report.mise_mean:.6e} "
              f"selected_mode={report.selected_mode}")
    (cfg.outdir / "table1.csv").write_text("\n".join(rows) + "\n")
    return 0


def cmd_figures(cfg: ExperimentConfig) -> int:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    basis = build_basis(cfg.vanishing_moments, cfg.cascade_depth)
    pco = PcoConfig(lam=cfg.lam, level_cap=cfg.level_cap, n=cfg.n)
    for model in (model_m1(), model_m2(), model_m3()):
        grid, mean_vals, truth, ises = _mean_reconstruction(cfg, model, basis, pco)
        lines = [f"{_fmt(x)}\t{_fmt(v)}\t{_fmt(t)}"
                 for x, v, t in zip(grid, mean_vals, truth)]
        (cfg.outdir / f"{model.label}_reconstruction.tsv").write_text(
            "\n".join(lines) + "\n")
        (cfg.outdir / f"{model.label}_ise.tsv").write_text(
            "\n".join(_fmt(v) for v in ises) + "\n")
        print(f"{model.label}: wrote reconstruction + ISE dumps "
              f"(max |mean - truth| = {np.max(np.abs(mean_vals - truth)):.4f})")
    return 0


def cmd_rates(cfg: ExperimentConfig, n_list: str) -> int:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    model = parse_model(cfg.model)
    basis = build_basis(cfg.vanishing_moments, cfg.cascade_depth)
    pco = PcoConfig(lam=cfg.lam, level_cap=cfg.level_cap, n=cfg.n)
    ns = [int(tok) for tok in n_list.split(",") if tok.strip()]
    result = rate_check(model, ns, pco, basis, cfg.reps, seed=cfg.seed)
    rows = ["n,mise,mise_sd"]
    rows += [f"{n},{_fmt(m)},{_fmt(s)}"
             for n, m, s in zip(result.n_values, result.mise_values,
                                result.mise_sds)]
    (cfg.outdir / "rates.csv").write_text("\n".join(rows) + "\n")
    print(f"{model.label}: log-log MISE slope = {result.slope:.4f}")
    return 0


def cmd_selftest() -> int:
    """Filter-algebra, pyramid-equivalence and Parseval smoke checks."""
    from .filters import daubechies_filter

    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    for V in (1, 2, 4, 10):
        h = daubechies_filter(V)
        ok = abs(h.sum() - np.sqrt(2)) < 1e-12
        ok &= all(abs(np.dot(h[: len(h) - 2 * m], h[2 * m:])) < 1e-12
                  for m in range(1, V))
        check(f"filter algebra V={V}", bool(ok))

    rng = np.random.default_rng(123)
    for V in (1, 4):
        basis = build_basis(V, 12)
        x = rng.normal(0.5, 0.2, 128)
        pyramid = fit_pyramid(basis, x, 4)
        worst = 0.0
        for N in range(5):
            direct = fit_top_level(basis, x, N,
                                   window=(pyramid.alpha_windows[N][0],
                                           pyramid.alpha_windows[N][1]))
            worst = max(worst, float(np.max(np.abs(
                level_alpha(pyramid, N).values - direct.coeffs.values))))
        tol = 1e-12 if V == 1 else 1e-5
        check(f"pyramid equivalence V={V} (max dev {worst:.2e})", worst <= tol)
        top, parts = total_energy(pyramid)
        check(f"energy conservation V={V}",
              abs(top - parts) <= 1e-10 * max(top, 1e-30))
        est = estimate_at(pyramid, 3)
        grid = np.linspace(*est.support(), 2 ** 12)
        vals = evaluate_grid(est, grid)
        quad = float(np.trapezoid(vals * vals, grid))
        coeff = float(np.dot(est.coeffs.values, est.coeffs.values))
        check(f"Parseval V={V}",
              abs(quad - coeff) <= 2e-3 * max(coeff, 1e-30))
        two_form = evaluate_multires(pyramid, 3, grid[::16])
        check(f"form equivalence V={V}",
              float(np.max(np.abs(two_form - vals[::16]))) <= 1e-5)
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            return cmd_selftest()
        cfg = parse_config(args)
        if args.command in ("run", "rates") and not cfg.model:
            raise UsageError("--model is required (flag or config file)")
        if args.command == "run":
            return cmd_run(cfg)
        if args.command == "table1":
            return cmd_table1(cfg)
        if args.command == "figures":
            return cmd_figures(cfg)
        if args.command == "rates":
            return cmd_rates(cfg, args.n_list)
        parser.error(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PcoWaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
