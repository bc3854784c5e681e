"""Command-line interface: ``gecstrat stats|evaluate|correct|report``.

Exit status is 0 on success, 1 when inputs are readable but cannot be
evaluated together (count mismatch, bad hypothesis line), and 2 for I/O and
configuration problems.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classify import LexiconError, load_lexicon
from .config import ConfigError, RunConfig
from .m2 import M2Error, ProficiencyLevel, read_m2
from .pipeline import EvaluationError, evaluate, hypothesis_edits, load_hypotheses
from .prompting import (
    EndpointError,
    HTTPCorrector,
    PromptError,
    RecordingCorrector,
    ReplayCorrector,
    make_mock,
    run_batch,
)
from .report import (
    ReportError,
    compare,
    dumps,
    fmt_num,
    format_comparison,
    format_labels,
    format_report,
    level_keys,
    loads,
    op_keys,
    render_table,
    sota_report,
    to_tsv,
)
from .scoring import ScoringError, label_breakdown
from .stats import discover, level_from_name, summarize_files, top_k_errors

log = logging.getLogger("gecstrat")

USAGE_ERRORS = (OSError, ConfigError, M2Error, LexiconError, ReportError, EndpointError, PromptError, ValueError)
EVAL_ERRORS = (EvaluationError, ScoringError)


def _betas(text: str) -> list[float]:
    try:
        betas = [float(b) for b in text.split(",") if b.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"betas must be comma-separated numbers: {text!r}") from None
    if not betas or any(b <= 0 for b in betas):
        raise argparse.ArgumentTypeError("betas must be positive")
    return betas


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gecstrat", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="TOML config file (default: $GECSTRAT_CONFIG)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="error-type distribution per proficiency level")
    p.add_argument("--data", help="directory of M2 files (default: $GECSTRAT_DATA_DIR)")
    p.add_argument("--top", type=int, help="number of error types per level")
    p.add_argument("--policy", choices=["first", "all"], help="annotators counted per sentence")
    p.add_argument("--format", choices=["text", "json", "tsv"], default="text")

    p = sub.add_parser("evaluate", help="score hypotheses against M2 references")
    p.add_argument("--ref", action="append", required=True, help="reference M2 file (repeatable)")
    p.add_argument("--hyp", action="append", required=True, help="hypothesis file, plain text or M2 (repeatable)")
    _eval_flags(p)

    p = sub.add_parser("correct", help="run a corrector over M2 sources")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", help="directory of M2 files, levels inferred from file names")
    src.add_argument("--input", action="append", help="M2 file (repeatable)")
    p.add_argument("--shots", type=int, help="number of exemplars (0-4)")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--mock", help="offline corrector: identity, echo_reference, drop_token")
    how.add_argument("--replay", help="answer from a recorded transcript (JSONL)")
    p.add_argument("--record", help="append live exchanges to this transcript")
    p.add_argument("--seed", type=int, default=0, help="seed for the drop_token mock")
    p.add_argument("--base-url", help="completion endpoint base URL")
    p.add_argument("--model", help="model identifier sent to the endpoint")
    p.add_argument("--max-in-flight", type=int)
    p.add_argument("--out", default="gecstrat-run", help="output directory")
    p.add_argument("--evaluate", action="store_true", help="score the hypotheses afterwards")
    _eval_flags(p)

    p = sub.add_parser("report", help="compare two JSON reports")
    p.add_argument("left", help="report JSON file, or sota:<system>")
    p.add_argument("right", help="report JSON file, or sota:<system>")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _eval_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--level", help="proficiency level when it cannot be read from file names")
    p.add_argument("--betas", type=_betas, help="comma-separated F-beta values, e.g. 0.5,1,2")
    p.add_argument("--mode", choices=["correction", "detection"])
    p.add_argument("--labels", metavar="SELECTOR", help="add a per-type table: R:DET, M:*, or *")
    p.add_argument("--by-op", action="store_true", help="add M/R/U rows")
    p.add_argument("--format", choices=["text", "json", "tsv"], default="text")
    p.add_argument("--json-out", help="also write the JSON report here")


def _level_for(path: str, given: str | None, cfg: RunConfig) -> ProficiencyLevel:
    if given:
        return ProficiencyLevel.parse(given)
    level = level_from_name(Path(path).name, cfg.level_patterns)
    if level is None:
        raise ConfigError(f"cannot infer proficiency level of {path}; pass --level")
    return level


def cmd_stats(args, cfg: RunConfig) -> int:
    data = args.data or cfg.data_dir
    if not data:
        raise ConfigError("no data directory: pass --data or set GECSTRAT_DATA_DIR")
    if not Path(data).is_dir():
        raise FileNotFoundError(f"data directory not found: {data}")
    policy = args.policy or cfg.data["corpus_stats"]["annotator_policy"]
    top = args.top or int(cfg.data["corpus_stats"]["top"])
    groups = discover(data, cfg.level_patterns)
    if not groups:
        raise FileNotFoundError(f"no M2 files with a recognisable level under {data}")
    summaries = {lv: summarize_files(paths, lv, policy) for lv, paths in sorted(groups.items())}

    if args.format == "json":
        out = {}
        for lv, s in summaries.items():
            d = s.to_dict()
            d["top"] = [[t, r] for t, r in top_k_errors(s, top)]
            out[str(lv)] = d
        print(json.dumps({"policy": policy, "levels": out}, indent=2))
    elif args.format == "tsv":
        print("level\trank\ttype\tratio")
        for lv, s in summaries.items():
            for rank, (t, r) in enumerate(top_k_errors(s, top), start=1):
                print(f"{lv}\t{rank}\t{t}\t{r}")
    else:
        levels = list(summaries)
        tops = {lv: top_k_errors(s, top) for lv, s in summaries.items()}
        header = [h for lv in levels for h in (f"Proficiency {lv}", "ratio")]
        rows = []
        for i in range(max(len(t) for t in tops.values())):
            row = []
            for lv in levels:
                t, r = tops[lv][i] if i < len(tops[lv]) else ("", None)
                row += [t, fmt_num(r) if r is not None else ""]
            rows.append(row)
        sys.stdout.write(render_table(header, rows))
        for lv, s in summaries.items():
            print(f"{lv}: {s.sentences} sentences, {s.edits} edits, "
                  f"{s.avg_tokens_per_sentence:.3f} tokens/sentence")
    return 0


def _emit_report(report, args, snapshot: dict) -> None:
    if args.json_out:
        Path(args.json_out).write_text(dumps(report, snapshot), encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(dumps(report, snapshot))
        return
    if args.format == "tsv":
        sys.stdout.write(to_tsv(report))
        return
    keys = level_keys(report)
    if args.by_op:
        keys = [k for lv in keys for k in [lv, *op_keys(report, lv)]]
    sys.stdout.write(format_report(report, keys))
    if args.labels:
        rows = {lv: label_breakdown(report, args.labels, lv) for lv in level_keys(report)}
        sys.stdout.write("\n")
        sys.stdout.write(format_labels(rows, report.betas))


def _apply_eval_flags(args, cfg: RunConfig) -> None:
    cfg.override("scoring", betas=args.betas, mode=args.mode)


def cmd_evaluate(args, cfg: RunConfig) -> int:
    if len(args.ref) != len(args.hyp):
        raise ConfigError(f"{len(args.ref)} --ref files but {len(args.hyp)} --hyp files")
    _apply_eval_flags(args, cfg)
    lexicon = load_lexicon(cfg.lexicon_path)
    parts = []
    for ref_path, hyp_path in zip(args.ref, args.hyp):
        level = _level_for(ref_path, args.level, cfg)
        refs = read_m2(ref_path)
        parts.append((refs, load_hypotheses(hyp_path, refs), level))
    report = evaluate(parts, cfg.mode, cfg.betas, lexicon)
    snapshot = {
        "mode": cfg.mode,
        "betas": list(cfg.betas),
        "references": [Path(p).name for p in args.ref],
        "hypotheses": [Path(p).name for p in args.hyp],
    }
    _emit_report(report, args, snapshot)
    return 0


def _corrector(args, cfg: RunConfig, prompt_cfg):
    endpoint = cfg.endpoint()
    model = endpoint.model or "replay"
    if args.mock:
        return make_mock(args.mock, prompt_cfg, args.seed)
    if args.replay:
        return ReplayCorrector(args.replay, model, prompt_cfg)
    live = HTTPCorrector(endpoint, prompt_cfg)
    live.check()
    if args.record:
        return RecordingCorrector(live, args.record, endpoint.model, prompt_cfg)
    return live


def cmd_correct(args, cfg: RunConfig) -> int:
    cfg.override("prompt_harness", n_shots=args.shots, max_in_flight=args.max_in_flight)
    cfg.override("prompt_harness.endpoint", base_url=args.base_url, model=args.model)
    _apply_eval_flags(args, cfg)
    prompt_cfg = cfg.prompt()
    corrector = _corrector(args, cfg, prompt_cfg)
    endpoint = cfg.endpoint()

    if args.data:
        groups = discover(args.data, cfg.level_patterns)
        if not groups:
            raise FileNotFoundError(f"no M2 files with a recognisable level under {args.data}")
        inputs = [(p, lv) for lv, paths in sorted(groups.items()) for p in paths]
    else:
        inputs = [(Path(p), _level_for(p, args.level, cfg)) for p in args.input]

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"corrector": corrector.name, "prompt": prompt_cfg.snapshot(), "files": []}
    parts = []
    lexicon = load_lexicon(cfg.lexicon_path) if args.evaluate else None
    for path, level in inputs:
        refs = read_m2(path)
        stem = path.name[: -len(".m2")] if path.name.endswith(".m2") else path.name
        run = run_batch(
            refs,
            corrector,
            prompt_cfg,
            max_in_flight=getattr(corrector, "max_in_flight", endpoint.max_in_flight),
            max_attempts=endpoint.max_attempts,
            backoff_base=endpoint.backoff_base if isinstance(corrector, (HTTPCorrector, RecordingCorrector)) else 0.0,
            checkpoint=out / f"{stem}.checkpoint.jsonl",
        )
        hyp_file = out / f"{stem}.hyp.txt"
        hyp_file.write_text("".join(" ".join(h) + "\n" for h in run.hypotheses()), encoding="utf-8")
        entry = run.manifest()
        entry.update({"input": path.name, "level": str(level), "hypotheses": hyp_file.name})
        del entry["config"]
        manifest["files"].append(entry)
        if args.evaluate:
            parts.append((refs, hypothesis_edits(refs, run.hypotheses(), cfg.costs(), lexicon), level))
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")

    if args.evaluate:
        report = evaluate(parts, cfg.mode, cfg.betas, lexicon)
        snapshot = {
            "mode": cfg.mode,
            "betas": list(cfg.betas),
            "corrector": corrector.name,
            "n_shots": prompt_cfg.n_shots,
            "inputs": [p.name for p, _ in inputs],
        }
        (out / "report.json").write_text(dumps(report, snapshot), encoding="utf-8")
        _emit_report(report, args, snapshot)
    else:
        print(f"wrote {len(inputs)} hypothesis file(s) to {out}")
    return 0


def _load_report(source: str):
    if source.startswith("sota:"):
        return sota_report(source[len("sota:"):])
    return loads(Path(source).read_text(encoding="utf-8"))[0]


def cmd_report(args, cfg: RunConfig) -> int:
    left, right = _load_report(args.left), _load_report(args.right)
    rows = compare(left, right, args.beta)
    if args.format == "json":
        print(json.dumps({"beta": args.beta, "strata": rows}, indent=2))
    else:
        sys.stdout.write(format_comparison(rows, args.beta))
    return 0


COMMANDS = {"stats": cmd_stats, "evaluate": cmd_evaluate, "correct": cmd_correct, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig.load(args.config)
        if args.command in ("evaluate", "correct"):
            cfg.costs()
        return COMMANDS[args.command](args, cfg)
    except EVAL_ERRORS as exc:
        print(f"gecstrat: error: {exc}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"gecstrat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
