"""Experiment harness: census checks and convergence experiments.

Every run serializes a manifest (experiment id, parameters, seed) next to its
data files, and every CSV row carries the manifest hash, so outputs can be
replayed byte-for-byte from the manifest alone.  Subcommands:

* ``census``   exact walk census of a regular graph file plus identity checks
* ``lift``     Kesten-McKay convergence of random N-lifts along an N ladder
* ``grow``     semicircle convergence of random regular graphs of growing degree
* ``laws``     closed-form law comparisons (density gaps, cycle IDF bounds)
* ``colored``  colored spectral measures against the uncolored NBW statistic
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from math import fsum
from pathlib import Path

import numpy as np

from . import __version__
from .chebyshev import eval_X_table
from .multigraph import (GraphError, MultiGraph, census_to_csv,
                         enumerate_circles, girth, load_graph_file,
                         regular_degree, walk_census)
from .nbmatrix import ColorAssignment
from .random_models import (RngStream, SamplerError, haar_unitary_color,
                            permutation_color, sample_lift,
                            sample_regular_graph)
from .spectra import (DiscreteSpectralMeasure, ReferenceLaw, arcsine,
                      colored_spectral_measure, cycle_spectral_measure,
                      kesten_mckay, moment_criterion_report, semicircle,
                      spectral_measure, wasserstein_p)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INPUT = 2

MAX_SAMPLER_DEGREE = 8


class CliInputError(ValueError):
    """Bad experiment input or contract violation (exit code 2)."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass(frozen=True)
class ExperimentManifest:
    """Replay record: (experiment, parameters, seed) determines all outputs."""

    experiment: str
    parameters: dict
    seed: int | None

    def canonical_json(self) -> str:
        payload = {"experiment": self.experiment, "parameters": self.parameters,
                   "seed": self.seed}
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    def document(self, outputs: list[str]) -> str:
        from .random_models import STREAM_POLICY
        payload = {"experiment": self.experiment, "parameters": self.parameters,
                   "seed": self.seed, "manifest_hash": self.hash,
                   "stream_policy": STREAM_POLICY, "outputs": outputs,
                   "package_version": __version__}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_outputs(out_dir, name: str, header: list[str], rows: list[list],
                  manifest: ExperimentManifest, fmt: str = "csv") -> list[Path]:
    """Write the data file and its manifest; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tagged_header = ["manifest_hash"] + header
    tagged_rows = [[manifest.hash] + [_fmt(v) for v in row] for row in rows]
    if fmt == "csv":
        data_path = out / f"{name}.csv"
        lines = [",".join(tagged_header)] + [",".join(r) for r in tagged_rows]
        data_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "json":
        data_path = out / f"{name}.json"
        records = [dict(zip(tagged_header, r)) for r in tagged_rows]
        data_path.write_text(
            json.dumps(records, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    else:
        raise CliInputError(f"unknown output format {fmt!r}")
    manifest_path = out / f"{name}_manifest.json"
    manifest_path.write_text(manifest.document([data_path.name]), encoding="utf-8")
    return [data_path, manifest_path]


def _mean_se(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = fsum(values) / n
    if n < 2:
        return mean, 0.0
    var = fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def _target_law(q: int) -> ReferenceLaw:
    return kesten_mckay(float(q)) if q >= 2 else arcsine()


def _y_moments(mu: DiscreteSpectralMeasure, r_max: int) -> np.ndarray:
    """Integrals of Y_1..Y_{r_max} against a discrete measure."""
    table = eval_X_table(r_max, mu.points)
    fam = table.copy()
    if r_max >= 2:
        fam[2:] = table[2:] - table[:-2]
    return fam.mean(axis=-1)[1:]


# ---------------------------------------------------------------------------
# census

def census_report(g: MultiGraph, r_max: int) -> dict:
    census = walk_census(g, r_max)
    checks = []
    for r in range(1, r_max + 1):
        checks.append((f"nbw-circuit identity r={r}", census.identity_nbw_circuit(r)))
        if census.z is not None:
            checks.append((f"circle bounds r={r}", census.identity_circle_bounds(r)))
    return {"census": census, "checks": checks,
            "girth": girth(g), "all_pass": all(ok for _, ok in checks)}


def run_census(args) -> int:
    g = load_graph_file(args.graph)
    report = census_report(g, args.rmax)
    census = report["census"]
    manifest = ExperimentManifest(
        "census", {"graph": Path(args.graph).name, "r_max": args.rmax}, None)
    if args.out:
        rows = [[r, census.f[r], census.c[r],
                 census.z[r] if census.z is not None else ""]
                for r in range(census.r_max + 1)]
        paths = write_outputs(args.out, "census", ["r", "f", "c", "z"], rows,
                              manifest, args.format)
        print(f"wrote {paths[0]}")
    else:
        sys.stdout.write(census_to_csv(census))
    for name, ok in report["checks"]:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"girth = {report['girth']}")
    return EXIT_OK if report["all_pass"] else EXIT_RUNTIME


# ---------------------------------------------------------------------------
# lift convergence

def lift_convergence(base: MultiGraph, folds: list[int], trials: int, seed: int,
                     r_max: int, p_list: list[float]) -> dict:
    degree = regular_degree(base)
    if degree is None or degree < 2:
        raise CliInputError("lift experiment needs a regular base of degree >= 2")
    q = degree - 1
    target = _target_law(q)
    root = RngStream(seed)
    distance_rows, residual_rows = [], []
    means = {p: [] for p in p_list}
    for fold in folds:
        cell = root.child(fold)
        dists = {p: [] for p in p_list}
        residuals = np.zeros((trials, r_max))
        for trial in range(trials):
            _, lifted = sample_lift(base, fold, cell.child(trial))
            mu = spectral_measure(lifted)
            for p in p_list:
                dists[p].append(wasserstein_p(mu, target, p))
            residuals[trial] = moment_criterion_report(mu, target, r_max)
        for p in p_list:
            mean, se = _mean_se(dists[p])
            means[p].append(mean)
            distance_rows.append([fold, p, mean, se, trials])
        for r in range(1, r_max + 1):
            residual_rows.append([fold, r, fsum(residuals[:, r - 1]) / trials])
    trend_ok = {p: all(a > b for a, b in zip(seq, seq[1:]))
                for p, seq in means.items()}
    return {"distance_rows": distance_rows, "residual_rows": residual_rows,
            "means": means, "trend_ok": trend_ok, "q": q}


def run_lift(args) -> int:
    base = load_graph_file(args.graph)
    result = lift_convergence(base, args.N, args.trials, args.seed,
                              args.rmax, args.p)
    manifest = ExperimentManifest(
        "lift", {"graph": Path(args.graph).name, "N": args.N,
                 "trials": args.trials, "r_max": args.rmax, "p": args.p},
        args.seed)
    paths = write_outputs(args.out, "lift_distances",
                          ["N", "p", "mean_distance", "stderr", "trials"],
                          result["distance_rows"], manifest, args.format)
    write_outputs(args.out, "lift_residuals", ["N", "r", "mean_residual"],
                  result["residual_rows"], manifest, args.format)
    print(f"wrote {paths[0]}")
    for p, ok in result["trend_ok"].items():
        print(f"{'PASS' if ok else 'FAIL'}  W_{p:g} decreasing along N ladder")
    return EXIT_OK


# ---------------------------------------------------------------------------
# growing degree

def schedule_branching(tag: str, n: int, q_fixed: int | None) -> int:
    if tag == "log":
        return min(7, max(1, int(math.log2(n))))
    if tag == "loglog":
        return min(7, max(2, int(math.log2(max(2.0, math.log2(n)))) + 2))
    if tag == "fixed":
        if q_fixed is None:
            raise CliInputError("fixed schedule needs --q")
        return q_fixed
    raise CliInputError(f"unknown schedule {tag!r}")


def growing_degree(n_ladder: list[int], q_ladder: list[int], trials: int,
                   seed: int, p_list: list[float], r_max: int) -> dict:
    if len(n_ladder) != len(q_ladder):
        raise CliInputError("n ladder and q ladder must have equal length")
    target = semicircle()
    root = RngStream(seed)
    distance_rows, circuit_rows = [], []
    means = {p: [] for p in p_list}
    for n, q in zip(n_ladder, q_ladder):
        degree = q + 1
        if degree > MAX_SAMPLER_DEGREE:
            raise CliInputError(
                f"schedule degree {degree} above sampler cap {MAX_SAMPLER_DEGREE}")
        if (n * degree) % 2 != 0:
            raise CliInputError(f"n * degree must be even, got n={n}, degree={degree}")
        cell = root.child(n).child(degree)
        dists = {p: [] for p in p_list}
        stats = np.zeros((trials, r_max))
        z_violations = 0
        for trial in range(trials):
            g = sample_regular_graph(n, degree, cell.child(trial))
            z12 = enumerate_circles(g, 2)
            z_violations += int(z12[1] != 0 or z12[2] != 0)
            mu = spectral_measure(g)
            for p in p_list:
                dists[p].append(wasserstein_p(mu, target, p))
            y = _y_moments(mu, r_max)
            for r in range(1, r_max + 1):
                corr = (q - 1) * q ** (-r / 2.0) if (r % 2 == 0 and r >= 2) else 0.0
                stats[trial, r - 1] = y[r - 1] + corr
        for p in p_list:
            mean, se = _mean_se(dists[p])
            means[p].append(mean)
            distance_rows.append([n, q, p, mean, se, trials, z_violations])
        for r in range(1, r_max + 1):
            circuit_rows.append([n, q, r, fsum(stats[:, r - 1]) / trials])
    trend_ok = {p: all(a > b for a, b in zip(seq, seq[1:]))
                for p, seq in means.items()}
    return {"distance_rows": distance_rows, "circuit_rows": circuit_rows,
            "means": means, "trend_ok": trend_ok}


def run_grow(args) -> int:
    q_ladder = [schedule_branching(args.schedule, n, args.q) for n in args.n]
    result = growing_degree(args.n, q_ladder, args.trials, args.seed,
                            args.p, args.rmax)
    manifest = ExperimentManifest(
        "grow", {"n": args.n, "schedule": args.schedule, "q": args.q,
                 "q_ladder": q_ladder, "trials": args.trials,
                 "r_max": args.rmax, "p": args.p}, args.seed)
    paths = write_outputs(
        args.out, "grow_distances",
        ["n", "q", "p", "mean_distance", "stderr", "trials", "nonsimple_samples"],
        result["distance_rows"], manifest, args.format)
    write_outputs(args.out, "grow_circuits",
                  ["n", "q", "r", "mean_normalized_circuits"],
                  result["circuit_rows"], manifest, args.format)
    print(f"wrote {paths[0]}")
    for p, ok in result["trend_ok"].items():
        print(f"{'PASS' if ok else 'FAIL'}  W_{p:g} decreasing along (n, q) ladder")
    return EXIT_OK


# ---------------------------------------------------------------------------
# closed-form laws

def law_convergence(q_ladder: list[float], m_ladder: list[int]) -> dict:
    sc = semicircle()
    grid = np.linspace(-2.0, 2.0, 20001)
    sc_density = sc.density(grid)
    q_rows, m_rows = [], []
    for q in q_ladder:
        if not q > 2.0:
            raise CliInputError(f"density bound needs q > 2, got {q}")
        km = kesten_mckay(q)
        gap = float(np.max(np.abs(km.density(grid) - sc_density)))
        bound = 2.0 / (q - 2.0)
        winf = wasserstein_p(km, sc, math.inf)
        q_rows.append([q, gap, bound, gap <= bound, winf])
    ar = arcsine()
    for m in m_ladder:
        if m < 3:
            raise CliInputError(f"cycle size must be >= 3, got {m}")
        winf = wasserstein_p(cycle_spectral_measure(m), ar, math.inf)
        bound = 4.0 * math.pi / m
        m_rows.append([m, winf, bound, winf <= bound])
    return {"q_rows": q_rows, "m_rows": m_rows,
            "all_pass": (all(r[3] for r in q_rows) and all(r[3] for r in m_rows))}


def run_laws(args) -> int:
    result = law_convergence(args.q, args.m)
    manifest = ExperimentManifest("laws", {"q": args.q, "m": args.m}, None)
    paths = write_outputs(args.out, "laws_density",
                          ["q", "sup_density_gap", "bound", "pass",
                           "winf_to_semicircle"],
                          result["q_rows"], manifest, args.format)
    write_outputs(args.out, "laws_cycles",
                  ["m", "winf_to_arcsine", "bound", "pass"],
                  result["m_rows"], manifest, args.format)
    print(f"wrote {paths[0]}")
    for q, gap, bound, ok, _ in result["q_rows"]:
        print(f"{'PASS' if ok else 'FAIL'}  sup|rho_{q:g} - rho_inf| = {gap:.6g} <= {bound:.6g}")
    for m, winf, bound, ok in result["m_rows"]:
        print(f"{'PASS' if ok else 'FAIL'}  W_inf(mu(C_{m}), arcsine) = {winf:.6g} <= {bound:.6g}")
    return EXIT_OK if result["all_pass"] else EXIT_RUNTIME


# ---------------------------------------------------------------------------
# colored measures

def colored_experiment(base: MultiGraph, kind: str, fold: int, seed: int,
                       p_list: list[float], r_max: int) -> dict:
    degree = regular_degree(base)
    if degree is None or degree < 2:
        raise CliInputError("colored experiment needs a regular base of degree >= 2")
    q = degree - 1
    target = _target_law(q)
    stream = RngStream(seed).child(fold).child(0)
    if kind == "trivial":
        color = ColorAssignment.trivial(base, fold)
    elif kind == "permutation":
        spec, _ = sample_lift(base, fold, stream)
        color = permutation_color(spec)
    elif kind == "haar":
        color = haar_unitary_color(base, fold, stream)
    else:
        raise CliInputError(f"unknown color kind {kind!r}")
    mu_colored = colored_spectral_measure(base, color)
    mu_base = spectral_measure(base)
    rows = [[kind, fold, p,
             wasserstein_p(mu_colored, target, p),
             wasserstein_p(mu_base, target, p)] for p in p_list]
    census = walk_census(base, r_max)
    stat_rows = [[kind, fold, r,
                  q ** (-r / 2.0) * census.f[r] / base.n_vertices]
                 for r in range(1, r_max + 1)]
    return {"rows": rows, "stat_rows": stat_rows, "measure": mu_colored, "q": q}


def run_colored(args) -> int:
    base = load_graph_file(args.graph)
    result = colored_experiment(base, args.color, args.N, args.seed,
                                args.p, args.rmax)
    manifest = ExperimentManifest(
        "colored", {"graph": Path(args.graph).name, "color": args.color,
                    "N": args.N, "r_max": args.rmax, "p": args.p}, args.seed)
    paths = write_outputs(args.out, "colored_distances",
                          ["color", "N", "p", "colored_distance", "base_distance"],
                          result["rows"], manifest, args.format)
    write_outputs(args.out, "colored_nbw_statistic",
                  ["color", "N", "r", "normalized_f"],
                  result["stat_rows"], manifest, args.format)
    print(f"wrote {paths[0]}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbspectra",
        description="Walk censuses and spectral-measure convergence experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, trials=None, rmax=None, plist=False):
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if trials is not None:
            p.add_argument("--trials", type=int, default=trials)
        if rmax is not None:
            p.add_argument("--rmax", type=int, default=rmax)
        if plist:
            p.add_argument("--p", type=float, action="append",
                           help="Wasserstein order (repeatable)")

    p = sub.add_parser("census", help="exact walk census + identity checks")
    p.add_argument("graph")
    p.add_argument("--rmax", type=int, default=8)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=run_census)

    p = sub.add_parser("lift", help="random N-lift convergence to Kesten-McKay")
    p.add_argument("graph")
    p.add_argument("--N", type=int, action="append", help="fold (repeatable)")
    common(p, trials=50, rmax=6, plist=True)
    p.set_defaults(func=run_lift, default_N=[2, 8, 32, 128], default_p=[1.0, 2.0])

    p = sub.add_parser("grow", help="growing-degree convergence to semicircle")
    p.add_argument("--n", type=int, action="append", help="vertex count (repeatable)")
    p.add_argument("--schedule", choices=("log", "loglog", "fixed"), default="log")
    p.add_argument("--q", type=int, default=None, help="branching for fixed schedule")
    common(p, trials=30, rmax=4, plist=True)
    p.set_defaults(func=run_grow, default_n=[64, 256, 1024], default_p=[2.0])

    p = sub.add_parser("laws", help="closed-form law comparisons")
    p.add_argument("--q", type=float, action="append", help="branching (repeatable)")
    p.add_argument("--m", type=int, action="append", help="cycle size (repeatable)")
    common(p, seed=False)
    p.set_defaults(func=run_laws, default_q=[5.0, 10.0, 50.0, 200.0],
                   default_m=[10, 53, 200])

    p = sub.add_parser("colored", help="colored spectral measure distances")
    p.add_argument("graph")
    p.add_argument("--color", choices=("trivial", "permutation", "haar"),
                   default="permutation")
    p.add_argument("--N", type=int, default=2, help="block dimension / fold")
    common(p, rmax=6, plist=True)
    p.set_defaults(func=run_colored, default_p=[1.0, 2.0])

    return parser


def _apply_defaults(args) -> None:
    if hasattr(args, "default_N") and not getattr(args, "N", None):
        args.N = args.default_N
    if hasattr(args, "default_n") and not getattr(args, "n", None):
        args.n = args.default_n
    if hasattr(args, "default_q") and not getattr(args, "q", None):
        args.q = args.default_q
    if hasattr(args, "default_m") and not getattr(args, "m", None):
        args.m = args.default_m
    if hasattr(args, "default_p") and getattr(args, "p", None) is None:
        args.p = args.default_p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_defaults(args)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # CliInputError, GraphError, SamplerError, law/measure contract errors,
        # and unreadable input files
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - runtime failures map to exit 1
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
