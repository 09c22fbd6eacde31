"""Campaign persistence: per-run CSV, JSON summary, and box-plot figures.

The CSV holds one row per run with a fixed column set.  The JSON summary
repeats the configuration, the per-run results (including improvement
traces), and five-number summaries of the final fitness and nonlinearity
distributions.  The figure renderer draws those same distributions as box
plots next to the delimited output.
"""

from __future__ import annotations

import csv
import json
import statistics
from pathlib import Path

CSV_COLUMNS = (
    "run_index",
    "rng_seed",
    "best_fitness",
    "evaluations_to_best",
    "nonlinearity",
    "is_bent",
    "is_self_dual",
    "is_anti_self_dual",
    "wall_time_ms",
    "genome",
)


def five_number(values) -> dict:
    """Min, quartiles, median, max; quartiles use the inclusive method."""
    data = sorted(float(v) for v in values)
    if not data:
        raise ValueError("cannot summarize an empty sample")
    if len(data) == 1:
        q1 = q3 = med = data[0]
    else:
        q1, med, q3 = statistics.quantiles(data, n=4, method="inclusive")
    return {"min": data[0], "q1": q1, "median": med, "q3": q3, "max": data[-1]}


def _bool_cell(flag) -> str:
    return "true" if flag else "false"


def write_csv(records, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([
                rec.run_index,
                rec.rng_seed,
                repr(rec.best_fitness.value),
                rec.evaluations_to_best,
                rec.best_report.nonlinearity,
                _bool_cell(rec.best_report.is_bent),
                _bool_cell(rec.best_report.is_self_dual),
                _bool_cell(rec.best_report.is_anti_self_dual),
                repr(rec.wall_time_ms),
                rec.best_genome,
            ])
    return path


def read_csv(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def summarize(records, optimum) -> dict:
    fitness_values = [rec.best_fitness.value for rec in records]
    nl_values = [rec.best_report.nonlinearity for rec in records]
    hits = [rec.run_index for rec in records if rec.best_fitness.integer_part >= optimum]
    best = max(records, key=lambda rec: rec.best_fitness)
    summary = {
        "optimum": optimum,
        "best_fitness": five_number(fitness_values),
        "nonlinearity": five_number(nl_values),
        "optimum_hits": len(hits),
        "optimum_run_indices": hits,
        "best_run_index": best.run_index,
    }
    trivial_flags = [rec.is_trivial for rec in records if rec.is_trivial is not None]
    if trivial_flags:
        nontrivial = [rec for rec in records if rec.is_trivial is False]
        summary["trivial_runs"] = sum(trivial_flags)
        summary["nontrivial_optimum_hits"] = sum(
            1 for rec in nontrivial if rec.best_fitness.integer_part >= optimum
        )
        if nontrivial:
            best_nt = max(nontrivial, key=lambda rec: rec.best_fitness)
            summary["best_nontrivial"] = {
                "run_index": best_nt.run_index,
                "best_fitness": best_nt.best_fitness.value,
            }
    return summary


def run_entry(rec) -> dict:
    entry = {
        "run_index": rec.run_index,
        "rng_seed": rec.rng_seed,
        "best_fitness": rec.best_fitness.value,
        "integer_part": rec.best_fitness.integer_part,
        "evaluations_to_best": rec.evaluations_to_best,
        "evaluations": rec.evaluations,
        "nonlinearity": rec.best_report.nonlinearity,
        "is_bent": rec.best_report.is_bent,
        "is_self_dual": rec.best_report.is_self_dual,
        "is_anti_self_dual": rec.best_report.is_anti_self_dual,
        "wall_time_ms": rec.wall_time_ms,
        "genome": rec.best_genome,
        "trace": [list(point) for point in rec.trace],
    }
    if rec.is_trivial is not None:
        entry["is_trivial"] = rec.is_trivial
    return entry


def write_summary_json(config: dict, records, optimum, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "config": config,
        "runs": [run_entry(rec) for rec in records],
        "summary": summarize(records, optimum),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return path


def render_figures(records, out_dir, title: str) -> list:
    """Box plots of the final fitness and nonlinearity across runs, as PNGs."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    panels = (
        ("fitness_box.png", "best fitness", [rec.best_fitness.value for rec in records]),
        ("nonlinearity_box.png", "nonlinearity",
         [rec.best_report.nonlinearity for rec in records]),
    )
    written = []
    for filename, label, values in panels:
        fig, ax = plt.subplots(figsize=(4.0, 3.2))
        ax.boxplot([values], tick_labels=[label], whis=(0, 100))
        ax.set_title(title, fontsize=9)
        ax.set_ylabel(label)
        ax.spines["right"].set_visible(False)
        ax.spines["top"].set_visible(False)
        fig.tight_layout()
        target = out_dir / filename
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)
    return written
