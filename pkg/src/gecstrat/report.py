"""Report serialization (JSON, TSV), display tables and report comparison."""

from __future__ import annotations

import json
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from typing import Iterable

from .scoring import ALL, EvalCounts, ScoreRow, StratifiedReport, split_key

SCHEMA_VERSION = 1


class ReportError(ValueError):
    pass


def fmt_num(x: float, places: int = 4) -> str:
    """Half-up rounding to ``places`` decimals with trailing zeros dropped."""
    q = Decimal(repr(float(x))).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
    text = format(q, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def beta_label(beta: float) -> str:
    return format(beta, "g")


def to_json_dict(report: StratifiedReport, config_snapshot: dict | None = None) -> dict:
    strata = []
    for key in report.keys():
        row = report.row(key)
        strata.append({
            "key": key,
            "tp": row.counts.tp,
            "fp": row.counts.fp,
            "fn": row.counts.fn,
            "precision": row.precision,
            "recall": row.recall,
            "f": {beta_label(b): v for b, v in row.f.items()},
        })
    return {"schema_version": SCHEMA_VERSION, "strata": strata, "config_snapshot": config_snapshot or {}}


def dumps(report: StratifiedReport, config_snapshot: dict | None = None) -> str:
    return json.dumps(to_json_dict(report, config_snapshot), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> tuple[StratifiedReport, dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ReportError(f"invalid report JSON at byte {offset}: {exc.msg}") from None
    if not isinstance(data, dict) or "strata" not in data:
        raise ReportError("not a gecstrat report (no 'strata')")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ReportError(f"schema version {version!r} not supported (expected {SCHEMA_VERSION})")
    counts = {}
    betas: list[float] = []
    for s in data["strata"]:
        counts[s["key"]] = EvalCounts(int(s["tp"]), int(s["fp"]), int(s["fn"]))
        for b in s.get("f", {}):
            if float(b) not in betas:
                betas.append(float(b))
    return StratifiedReport(counts, tuple(betas) or (0.5,)), data.get("config_snapshot", {})


def sota_report(name: str) -> StratifiedReport:
    """Stored published counts of a reference system, as a report."""
    table = json.loads(resources.files("gecstrat").joinpath("data", "sota.json").read_text(encoding="utf-8"))
    systems = table["systems"]
    if name not in systems:
        raise ReportError(f"unknown stored system {name!r}; have {', '.join(sorted(systems))}")
    return StratifiedReport.from_counts(systems[name])


def _header(betas: Iterable[float]) -> list[str]:
    return ["TP", "FP", "FN", "Prec", "Rec", *(f"F{beta_label(b)}" for b in betas)]


def _cells(row: ScoreRow) -> list[str]:
    c = row.counts
    return [str(c.tp), str(c.fp), str(c.fn), fmt_num(row.precision), fmt_num(row.recall),
            *(fmt_num(v) for v in row.f.values())]


def render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = []
    for r in [header, *rows]:
        first = r[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(r[1:], widths[1:])]
        lines.append("  ".join([first, *rest]).rstrip())
    return "\n".join(lines) + "\n"


def format_report(report: StratifiedReport, keys: Iterable[str] | None = None) -> str:
    keys = list(keys) if keys is not None else report.levels()
    rows = [[k, *_cells(report.row(k))] for k in keys]
    return render_table(["stratum", *_header(report.betas)], rows)


def format_labels(rows_by_level: dict[str, list[tuple[str, ScoreRow]]], betas) -> str:
    rows = []
    for level, rows_ in rows_by_level.items():
        for label, row in rows_:
            rows.append([label, level, *_cells(row)])
    return render_table(["type", "level", *_header(betas)], rows)


def to_tsv(report: StratifiedReport) -> str:
    head = ["key", "tp", "fp", "fn", "precision", "recall", *(f"f{beta_label(b)}" for b in report.betas)]
    lines = ["\t".join(head)]
    for key in report.keys():
        row = report.row(key)
        c = row.counts
        vals = [key, c.tp, c.fp, c.fn, row.precision, row.recall, *row.f.values()]
        lines.append("\t".join(str(v) for v in vals))
    return "\n".join(lines) + "\n"


def compare(left: StratifiedReport, right: StratifiedReport, beta: float = 0.5) -> list[dict]:
    """Per-stratum differences left minus right, over strata both reports have."""
    out = []
    for key in left.keys():
        if key not in right.counts:
            continue
        a, b = left.row(key), right.row(key)
        fa = a.counts.f(beta)
        fb = b.counts.f(beta)
        out.append({
            "key": key,
            "left": {"precision": a.precision, "recall": a.recall, "f": fa},
            "right": {"precision": b.precision, "recall": b.recall, "f": fb},
            "delta_precision": a.precision - b.precision,
            "delta_recall": a.recall - b.recall,
            "delta_f": fa - fb,
        })
    return out


def format_comparison(rows: list[dict], beta: float = 0.5) -> str:
    f = f"F{beta_label(beta)}"
    header = ["stratum", f"{f}(left)", f"{f}(right)", "dP", "dR", f"d{f}"]
    body = [[
        r["key"], fmt_num(r["left"]["f"]), fmt_num(r["right"]["f"]),
        fmt_num(r["delta_precision"]), fmt_num(r["delta_recall"]), fmt_num(r["delta_f"]),
    ] for r in rows]
    return render_table(header, body)


def level_keys(report: StratifiedReport) -> list[str]:
    keys = [k for k in report.levels() if k != ALL]
    return keys + ([ALL] if ALL in report.counts else [])


def op_keys(report: StratifiedReport, level: str) -> list[str]:
    return [k for k in report.keys() if split_key(k)[0] == level and (split_key(k)[1] or "").endswith(":*")]
