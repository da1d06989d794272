"""Batch front-end wiring the evaluation and dataset pipelines together.

Manifests are JSON Lines, one sample per line. Evaluation manifests carry
{id, figure, candidate, table?, image?, gen_embedding?, ref_embedding?};
dataset-QA manifests carry {id, table, figure, script}. Reports land in the
output directory as report.json plus summary.csv and are deterministic for
fixed inputs and seeds (only the "created" header field varies).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import shlex
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from chartground import qa, synth
from chartground.figure import (
    ChartType,
    FigureSpec,
    LayoutSpec,
    MalformedDocument,
    UnsupportedFigure,
    load_figure,
)
from chartground.matching import Tolerance
from chartground.report import (
    BenchmarkReport,
    SUMMARY_COLUMNS,
    SampleBundle,
    aggregate,
    dominant_chart_type,
    read_embedding,
    score_sample,
)
from chartground.tables import evaluate_table, load_table_csv


class ConfigError(ValueError):
    pass


class ManifestError(ValueError):
    pass


class ExecutorUnavailable(RuntimeError):
    pass


@dataclass
class RunConfig:
    task: str
    manifest: str
    out_dir: Path
    tolerance: str = "all"
    weights: dict[str, float] | None = None
    jobs: int = 1
    executor: str | None = None
    timeout: float = 30.0
    seed: int = 0
    out_format: str = "json"
    max_code_chars: int | None = None
    exec_status_path: str | None = None
    library: str = "plotly"
    chart_types: tuple[str, ...] = ("bar", "line", "scatter", "areachart", "pie")
    case_insensitive: bool = False

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if self.timeout <= 0:
            raise ConfigError("--timeout must be > 0")


def load_prompt(name: str) -> str:
    """Bundled prompt template: 'chart_to_code' or 'chart_to_table'."""
    return (
        resources.files("chartground.prompts").joinpath(f"{name}.txt").read_text("utf-8")
    )


def _parse_weights(text: str | None) -> dict[str, float] | None:
    if not text:
        return None
    out: dict[str, float] = {}
    for part in text.split(","):
        if "=" not in part:
            raise ConfigError(f"bad --weights entry {part!r} (want name=value)")
        name, value = part.split("=", 1)
        name = name.strip()
        if name not in ("text", "color", "chart_type", "layout", "data", "clip"):
            raise ConfigError(f"unknown weight {name!r}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad weight value {value!r}") from exc
    return out


def _load_manifest(path: str) -> list[dict]:
    p = Path(path)
    if not p.is_file():
        raise ManifestError(f"manifest not found: {path}")
    rows = []
    with p.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"{path}:{line_no}: invalid JSON ({exc})") from exc
            if "id" not in obj:
                raise ManifestError(f"{path}:{line_no}: missing id")
            rows.append(obj)
    return rows


def _resolve(base: Path, value: str) -> str:
    p = Path(value)
    return str(p if p.is_absolute() else base / p)


# ---------------------------------------------------------------------------
# executor bridge (chart-to-code)
# ---------------------------------------------------------------------------

def _read_cached_execution(slot: Path) -> tuple[str, dict | None] | None:
    status_file = slot / "status.json"
    if not status_file.is_file():
        return None
    status = json.loads(status_file.read_text(encoding="utf-8"))
    outcome = status.get("outcome", "exec_error")
    figure_file = slot / "figure.json"
    doc = None
    if figure_file.is_file():
        doc = json.loads(figure_file.read_text(encoding="utf-8"))
    return outcome, doc


def _run_executor(
    executor_cmd: str | None, script_path: str, timeout: float, cache_dir: Path
) -> tuple[str, dict | None]:
    """Reuse a cached executor result keyed by script content, else run one."""
    key = hashlib.sha256(Path(script_path).read_bytes()).hexdigest()
    slot = cache_dir / key
    cached = _read_cached_execution(slot)
    if cached is not None:
        return cached
    if not executor_cmd:
        raise ExecutorUnavailable(
            "task=code needs --executor for script candidates "
            "(or pre-serialized .figure.json files / a warm cache)"
        )
    slot.mkdir(parents=True, exist_ok=True)
    cmd = shlex.split(executor_cmd) + [
        script_path, "--timeout", str(timeout), "--out-dir", str(slot),
    ]
    try:
        subprocess.run(cmd, capture_output=True, timeout=timeout + 60)
    except (OSError, subprocess.TimeoutExpired) as exc:
        (slot / "status.json").write_text(
            json.dumps({"outcome": "exec_error", "stderr_tail": str(exc)}),
            encoding="utf-8",
        )
    cached = _read_cached_execution(slot)
    if cached is None:
        raise ExecutorUnavailable(f"executor produced no status for {script_path}")
    return cached


def _gen_figure_for(
    entry: dict, base: Path, config: RunConfig, cache_dir: Path
) -> tuple[str, FigureSpec | None]:
    """Obtain the generated figure for one sample: cached document or executor run."""
    candidate = _resolve(base, entry["candidate"])
    if candidate.endswith(".figure.json"):
        try:
            return "ok", load_figure(candidate, source="generated").figure
        except (OSError, MalformedDocument, UnsupportedFigure):
            return "parse_error", None
    if config.task == "score":
        return "parse_error", None
    outcome, doc = _run_executor(config.executor, candidate, config.timeout, cache_dir)
    if outcome == "ok" and doc is not None:
        try:
            return "ok", load_figure_from_doc(doc)
        except MalformedDocument:
            return "parse_error", None
    if outcome == "empty_figure":
        # ran cleanly but drew nothing: scored as an empty figure, not an error
        return "ok", FigureSpec(traces=(), layout=LayoutSpec(), source="generated")
    if outcome in ("timeout", "exec_error"):
        return outcome, None
    return "exec_error", None


def load_figure_from_doc(doc: dict) -> FigureSpec:
    from chartground.figure import parse_figure_spec

    return parse_figure_spec(doc, source="generated").figure


def _score_one(entry: dict, base: Path, config: RunConfig, cache_dir: Path):
    gt = load_figure(_resolve(base, entry["figure"]), source="ground_truth").figure
    gen_status, gen_figure = _gen_figure_for(entry, base, config, cache_dir)
    embeddings = None
    if entry.get("gen_embedding") and entry.get("ref_embedding"):
        embeddings = (
            read_embedding(_resolve(base, entry["gen_embedding"])),
            read_embedding(_resolve(base, entry["ref_embedding"])),
        )
    bundle = SampleBundle(
        id=str(entry["id"]),
        gt_figure=gt,
        gt_image=entry.get("image"),
        gen_figure=gen_figure,
        gen_status=gen_status,
        embeddings=embeddings,
    )
    iou_level = (
        Tolerance.from_label(config.tolerance)
        if config.tolerance != "all"
        else Tolerance.SLIGHT
    )
    report = score_sample(
        bundle, weights=config.weights, iou_level=iou_level,
        case_insensitive=config.case_insensitive,
    )
    return report, dominant_chart_type(gt)


def _write_report(config: RunConfig, payload: dict, summary_rows: list[dict]) -> None:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    doc = {
        "created": datetime.now(timezone.utc).isoformat(),
        "task": config.task,
        "tolerance": config.tolerance,
        "weights": config.weights or "equal",
        **payload,
    }
    (config.out_dir / "report.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    if summary_rows:
        columns = list(summary_rows[0].keys())
        with (config.out_dir / "summary.csv").open("w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=columns)
            writer.writeheader()
            for row in summary_rows:
                writer.writerow(row)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def _benchmark_summary_rows(benchmark: BenchmarkReport) -> list[dict]:
    def row(name: str, agg: dict) -> dict:
        out = {"group": name}
        for col in SUMMARY_COLUMNS:
            out[col] = _fmt(agg.get(col))
        return out

    rows = [row("corpus", benchmark.aggregates)]
    rows += [row(t, agg) for t, agg in benchmark.per_type.items()]
    return rows


def _task_code(config: RunConfig) -> int:
    entries = _load_manifest(config.manifest)
    base = Path(config.manifest).resolve().parent
    cache_dir = config.out_dir / "cache"
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        results = list(
            pool.map(lambda e: _score_one(e, base, config, cache_dir), entries)
        )
    reports = [r for r, _ in results]
    types = [t for _, t in results]
    iou_level = (
        Tolerance.from_label(config.tolerance)
        if config.tolerance != "all"
        else Tolerance.SLIGHT
    )
    benchmark = aggregate(reports, types, iou_level=iou_level)
    rows = _benchmark_summary_rows(benchmark)
    _write_report(config, {"report": benchmark.to_dict()}, rows)
    if config.out_format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        agg = benchmark.aggregates
        print(
            f"samples={int(agg['count'])} pass_rate={_fmt(agg['pass_rate'])} "
            f"overall={_fmt(agg.get('overall'))}"
        )
    return 0


def _task_table(config: RunConfig) -> int:
    entries = _load_manifest(config.manifest)
    base = Path(config.manifest).resolve().parent
    levels = (
        tuple(Tolerance)
        if config.tolerance == "all"
        else (Tolerance.from_label(config.tolerance),)
    )

    def run_one(entry: dict) -> dict:
        gt = load_table_csv(_resolve(base, entry["table"]))
        text = Path(_resolve(base, entry["candidate"])).read_text(
            encoding="utf-8", errors="replace"
        )
        result = evaluate_table(
            text, gt, levels=levels, case_insensitive=config.case_insensitive
        )
        return {
            "id": str(entry["id"]),
            "passed": result.passed,
            "error": result.error,
            "metrics": {
                level: {
                    "precision": m.precision, "recall": m.recall,
                    "f1": m.f1, "iou": m.iou,
                }
                for level, m in sorted(result.metrics.items())
            },
        }

    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        sample_reports = list(pool.map(run_one, entries))

    n = len(sample_reports)
    pass_rate = 100.0 * sum(r["passed"] for r in sample_reports) / n if n else None
    aggregates: dict[str, float | None] = {"count": float(n), "pass_rate": pass_rate}
    for level in (lv.label for lv in levels):
        for metric in ("precision", "recall", "f1", "iou"):
            values = [100.0 * r["metrics"][level][metric] for r in sample_reports]
            aggregates[f"{metric}_{level}"] = (
                sum(values) / len(values) if values else None
            )
    summary = {"group": "corpus"}
    summary["pass_rate"] = _fmt(pass_rate)
    for key in sorted(k for k in aggregates if k not in ("count",)):
        summary[key] = _fmt(aggregates[key])
    _write_report(
        config,
        {"report": {"aggregates": aggregates, "samples": sample_reports}},
        [summary],
    )
    if config.out_format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=list(summary.keys()))
        writer.writeheader()
        writer.writerow(summary)
    else:
        print(f"samples={n} pass_rate={_fmt(pass_rate)}")
    return 0


def _task_dedup(config: RunConfig) -> int:
    records = qa.load_qa_manifest(config.manifest)
    base = Path(config.manifest).resolve().parent
    for rec in records:
        rec.table = _resolve(base, rec.table) if rec.table else rec.table
        rec.figure = _resolve(base, rec.figure) if rec.figure else rec.figure
        rec.script = _resolve(base, rec.script) if rec.script else rec.script
    exec_status = None
    if config.exec_status_path:
        exec_status = json.loads(Path(config.exec_status_path).read_text("utf-8"))
    report = qa.run_filters(
        records, max_code_chars=config.max_code_chars, exec_status=exec_status
    )
    _write_report(config, {"report": report.to_dict()}, [])
    print(report.render_text())
    print(f"retained={len(report.retained)} of {report.input_count}")
    return 0


def _task_generate(config: RunConfig) -> int:
    entries = _load_manifest(config.manifest)
    base = Path(config.manifest).resolve().parent
    scripts_dir = config.out_dir / "scripts"
    scripts_dir.mkdir(parents=True, exist_ok=True)
    manifest_lines = []
    try:
        requested = [ChartType(name) for name in config.chart_types]
    except ValueError as exc:
        raise ConfigError(f"bad --chart-types entry: {exc}") from exc
    for chart_type in requested:
        if chart_type not in synth.SCRIPT_CHART_TYPES:
            raise ConfigError(f"no script template for chart type {chart_type.value}")
    for idx, entry in enumerate(entries):
        table_path = _resolve(base, entry["table"])
        table = load_table_csv(table_path)
        for chart_type in requested:
            type_name = chart_type.value
            seed = config.seed * 1_000_003 + idx * 101 + list(
                synth.SCRIPT_CHART_TYPES
            ).index(chart_type)
            style = synth.sample_style_config(seed)
            try:
                artifact = synth.emit_plot_script(
                    table, chart_type, style, library=config.library,
                    table_ref=table_path,
                )
            except synth.IncompatibleTable as exc:
                manifest_lines.append(
                    {
                        "id": str(entry["id"]), "chart_type": type_name,
                        "skipped": str(exc),
                    }
                )
                continue
            script_path = scripts_dir / f"{entry['id']}_{type_name}.py"
            script_path.write_text(artifact.script_text, encoding="utf-8")
            manifest_lines.append(
                {
                    "id": str(entry["id"]),
                    "chart_type": type_name,
                    "library": config.library,
                    "seed": seed,
                    "table": table_path,
                    "script": str(script_path),
                }
            )
    out_manifest = config.out_dir / "generated_manifest.jsonl"
    with out_manifest.open("w", encoding="utf-8") as fh:
        for line in manifest_lines:
            fh.write(json.dumps(line, sort_keys=True) + "\n")
    emitted = sum(1 for m in manifest_lines if "script" in m)
    print(f"emitted={emitted} skipped={len(manifest_lines) - emitted}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chartground",
        description="Chart grounding evaluation and dataset pipelines",
    )
    parser.add_argument(
        "--task", required=True,
        choices=("code", "table", "dedup", "generate", "score"),
    )
    parser.add_argument("--manifest", required=True, help="JSONL corpus manifest")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument(
        "--tolerance", default="all", choices=("strict", "slight", "high", "all")
    )
    parser.add_argument("--weights", default=None, help="e.g. text=1,color=2,data=1")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--executor", default=None, help="executor command for scripts")
    parser.add_argument("--timeout", type=float, default=30.0, help="per-sample seconds")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", default="json", choices=("json", "csv"))
    parser.add_argument("--max-code-chars", type=int, default=None)
    parser.add_argument("--exec-status", default=None, help="JSON id->bool map")
    parser.add_argument("--library", default="plotly", choices=("plotly", "matplotlib"))
    parser.add_argument(
        "--chart-types", default="bar,line,scatter,areachart,pie",
        help="comma list for task=generate",
    )
    parser.add_argument("--case-insensitive", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            task=args.task,
            manifest=args.manifest,
            out_dir=Path(args.out),
            tolerance=args.tolerance,
            weights=_parse_weights(args.weights),
            jobs=args.jobs,
            executor=args.executor,
            timeout=args.timeout,
            seed=args.seed,
            out_format=args.format,
            max_code_chars=args.max_code_chars,
            exec_status_path=args.exec_status,
            library=args.library,
            chart_types=tuple(
                t.strip() for t in args.chart_types.split(",") if t.strip()
            ),
            case_insensitive=args.case_insensitive,
        )
        if config.task in ("code", "score"):
            return _task_code(config)
        if config.task == "table":
            return _task_table(config)
        if config.task == "dedup":
            if config.max_code_chars is None:
                raise ConfigError("task=dedup requires --max-code-chars")
            return _task_dedup(config)
        if config.task == "generate":
            return _task_generate(config)
        raise ConfigError(f"unknown task {config.task!r}")
    except (ConfigError, ManifestError, ExecutorUnavailable, OSError, ValueError) as exc:
        # ValueError covers corrupt corpus inputs (gold tables, gt figures)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
