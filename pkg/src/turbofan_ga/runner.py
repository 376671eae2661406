"""Experiment orchestration and run-artifact persistence.

A run directory holds::

    config.yaml              resolved configuration (re-loadable)
    rep<i>_seed<s>.csv       one convergence table per repetition
    summary.json             final metrics of every repetition and the overall best
    best_design.txt          full report of the best design
"""

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from .config import dump_config, load_config
from .cycle import DESIGN_VARIABLES
from .optimizer import decode, run_ga, str_to_bits
from .report import analyze, format_report

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "generation",
    "best_score",
    "eta_I",
    "eta_II",
    "specific_thrust_N_per_kgps",
    "tsfc_kg_per_hN",
    "alpha",
    "Tt4_K",
    "opr",
    "turbine_expansion_ratio",
    "mean_score",
    "best_chromosome",
)
_RECORD_FIELDS = (
    "generation", "best_score", "eta_I", "eta_II", "specific_thrust", "tsfc",
    "alpha", "Tt4", "opr", "turbine_expansion_ratio", "mean_score", "best_bits",
)
SUMMARY_METRICS = ("score", "eta_I", "eta_II", "specific_thrust", "tsfc", "turbine_expansion_ratio")


@dataclass
class RunArtifacts:
    output_dir: Path
    csv_paths: list
    summary_path: Path
    report_path: Path
    summary: dict


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def history_csv(history):
    """Serialize a GA history to CSV text (byte-stable for equal histories)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in history:
        w.writerow([_fmt(getattr(rec, f)) for f in _RECORD_FIELDS])
    return buf.getvalue()


def read_history_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for k in CSV_COLUMNS:
            if k == "generation":
                r[k] = int(r[k])
            elif k != "best_chromosome":
                r[k] = float(r[k])
    return rows


def _check_writable(out):
    out.mkdir(parents=True, exist_ok=True)
    probe = out / ".write_probe"
    probe.write_text("")
    probe.unlink()


def _evaluation_summary(ev, bits):
    return {
        "chromosome": bits,
        "design": dict(zip(DESIGN_VARIABLES, ev.design.as_tuple())),
        "opr": ev.design.opr,
        "score": ev.score,
        "eta_I": ev.eta_I,
        "eta_II": ev.eta_II,
        "specific_thrust": ev.specific_thrust,
        "tsfc": ev.tsfc,
        "turbine_expansion_ratio": ev.turbine_expansion_ratio,
        "feasible": ev.feasible,
    }


def _run_repetitions(cfg, n_jobs=1, progress=None):
    out = []
    for rep, seed in enumerate(cfg.seeds):
        ga = cfg.ga_config(seed)
        history, best = run_ga(ga, cfg.flight, cfg.efficiencies, cfg.fuel, n_jobs=n_jobs)
        bits = max(history, key=lambda r: r.best_score).best_bits
        out.append((rep, seed, history, best, bits))
        if progress is not None:
            progress(rep, seed, best)
    return out


def csv_name(rep, seed):
    return f"rep{rep}_seed{seed}.csv"


def cmd_optimize(cfg, n_jobs=1, progress=None):
    """Run every repetition of an experiment and write its artifacts."""
    out = cfg.resolved_output_dir()
    _check_writable(out)
    dump_config(cfg, out / "config.yaml")

    reps = _run_repetitions(cfg, n_jobs, progress)
    csv_paths = []
    rep_summaries = []
    for rep, seed, history, best, bits in reps:
        path = out / csv_name(rep, seed)
        path.write_text(history_csv(history), encoding="utf-8")
        csv_paths.append(path)
        rep_summaries.append(
            {"repetition": rep, "seed": seed, "csv": path.name,
             "generations": len(history), "best": _evaluation_summary(best, bits)}
        )

    overall = max(rep_summaries, key=lambda r: r["best"]["score"])
    summary = {
        "config": cfg.to_dict(),
        "repetitions": rep_summaries,
        "best_repetition": overall["repetition"],
        "best": overall["best"],
    }
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=False) + "\n", encoding="utf-8")

    best_design = decode(str_to_bits(overall["best"]["chromosome"]), cfg.bounds)
    analysis = analyze(best_design, cfg.flight, cfg.efficiencies, cfg.fuel, cfg.pi_max,
                       cfg.efficiency_mode, cfg.chemical_mode, cfg.destruction_set)
    report_path = out / "best_design.txt"
    report_path.write_text(format_report(best_design, analysis), encoding="utf-8")
    return RunArtifacts(out, csv_paths, summary_path, report_path, summary)


def load_summary(run_dir):
    path = Path(run_dir) / "summary.json"
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


class ConfigMismatch(ValueError):
    pass


def cmd_compare(dir_a, dir_b):
    """Side-by-side final metrics of two runs with ratios ``b / a``."""
    sa, sb = load_summary(dir_a), load_summary(dir_b)
    ca, cb = sa["config"], sb["config"]
    for key in ("flight", "pi_max"):
        if ca[key] != cb[key]:
            raise ConfigMismatch(
                f"runs differ in {key}: {ca[key]!r} vs {cb[key]!r}; comparison refused"
            )
    rows = []
    for m in SUMMARY_METRICS:
        a, b = sa["best"][m], sb["best"][m]
        ratio = b / a if a not in (0, None) and not math.isnan(a) else math.nan
        rows.append({"metric": m, "a": a, "b": b, "ratio": ratio})
    for name in DESIGN_VARIABLES + ("opr",):
        a = sa["best"]["design"].get(name, sa["best"].get(name))
        b = sb["best"]["design"].get(name, sb["best"].get(name))
        rows.append({"metric": name, "a": a, "b": b, "ratio": b / a if a else math.nan})
    return {"a": str(dir_a), "b": str(dir_b), "case_a": ca["case"], "case_b": cb["case"], "rows": rows}


def format_comparison(cmp):
    lines = [f"a: {cmp['a']} (case {cmp['case_a']})", f"b: {cmp['b']} (case {cmp['case_b']})",
             f"{'metric':26s} {'a':>14s} {'b':>14s} {'b/a':>10s}"]
    for r in cmp["rows"]:
        lines.append(f"{r['metric']:26s} {r['a']:14.6g} {r['b']:14.6g} {r['ratio']:10.4f}")
    return "\n".join(lines) + "\n"


def cmd_verify(run_dir, n_jobs=1):
    """Replay every repetition from ``config.yaml`` and diff the CSVs byte for byte.

    Returns a list of mismatch descriptions (empty when the run reproduces).
    """
    run_dir = Path(run_dir)
    cfg = load_config(run_dir / "config.yaml")
    problems = []
    for rep, seed, history, _, _ in _run_repetitions(cfg, n_jobs):
        path = run_dir / csv_name(rep, seed)
        if not path.exists():
            problems.append(f"missing {path.name}")
            continue
        expected = history_csv(history)
        actual = path.read_text(encoding="utf-8")
        if expected != actual:
            exp_lines, act_lines = expected.splitlines(), actual.splitlines()
            first = next(
                (i for i, (x, y) in enumerate(zip(exp_lines, act_lines)) if x != y),
                min(len(exp_lines), len(act_lines)),
            )
            problems.append(f"{path.name}: first difference at line {first + 1}")
    return problems


def summary_records(summary):
    """Per-repetition best metrics as plain dicts (handy for notebooks)."""
    return [dict(r["best"], seed=r["seed"]) for r in summary["repetitions"]]


def history_as_dicts(history):
    return [asdict(r) for r in history]
