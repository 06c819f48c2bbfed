"""Command-line interface.

Machine-readable output goes to stdout as JSON; logs and warnings go
to stderr. Exit codes: 0 success, 1 usage error, 2 data error, 3
backend unreachable.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from frameparse import __version__
from frameparse.dataset import (
    PipelineConfig,
    build_stage,
    default_stage_plans,
    iter_task_records,
)
from frameparse.evaluate import evaluate_split
from frameparse.ingest import (
    IngestError,
    default_split_config,
    load_exemplars,
    load_frame_catalog,
    load_fulltext,
    load_propbank_records,
    load_split_config,
    split_sentences,
)
from frameparse.luindex import build_index
from frameparse.model import (
    FrameParseError,
    frame_to_record,
    parse_result_to_dict,
    sentence_to_record,
    write_jsonl,
)
from frameparse.pipeline import (
    BackendError,
    EchoBackend,
    HttpBackend,
    ScriptedBackend,
    detect_frames_bulk,
    scripted_backend_from_gold,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BACKEND = 3

log = logging.getLogger("frameparse")


def _data_dir(args) -> Path:
    path = args.data_dir or os.environ.get("FRAMENET_DATA_DIR")
    if not path:
        raise IngestError(
            "no FrameNet data directory: pass --data-dir or set FRAMENET_DATA_DIR"
        )
    return Path(path)


def _load_catalog_index(args):
    catalog, report = load_frame_catalog(_data_dir(args))
    for w in report.warnings:
        log.warning(w)
    return catalog, build_index(catalog)


def _backend_from_args(args):
    if getattr(args, "script", None):
        return ScriptedBackend.from_jsonl(args.script)
    if getattr(args, "backend_url", None):
        backend = HttpBackend(args.backend_url, max_new_tokens=args.max_new_tokens)
        if not backend.healthy():
            raise BackendError(f"backend at {args.backend_url} failed its health check")
        return backend
    return None


def _cmd_ingest(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    catalog, cat_report = load_frame_catalog(_data_dir(args))
    write_jsonl(out / "catalog.jsonl", (frame_to_record(f) for f in catalog))
    reports = {"catalog": cat_report.to_dict()}

    fulltext, ft_report = load_fulltext(_data_dir(args), catalog)
    write_jsonl(out / "fulltext.jsonl", (sentence_to_record(s) for s in fulltext))
    reports["fulltext"] = ft_report.to_dict()

    if not args.skip_exemplars:
        exemplars, ex_report = load_exemplars(_data_dir(args), catalog)
        write_jsonl(out / "exemplars.jsonl", (sentence_to_record(s) for s in exemplars))
        reports["exemplars"] = ex_report.to_dict()

    if args.propbank:
        propbank, _pb_catalog, pb_report = load_propbank_records(args.propbank)
        write_jsonl(out / "propbank.jsonl", (sentence_to_record(s) for s in propbank))
        reports["propbank"] = pb_report.to_dict()

    for name, rep in reports.items():
        for w in rep["warnings"]:
            log.warning("%s: %s", name, w)
    json.dump(
        {name: {k: v for k, v in rep.items() if k != "warnings"} for name, rep in reports.items()},
        sys.stdout,
        indent=2,
    )
    print()
    (out / "ingest_report.json").write_text(json.dumps(reports, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_build_index(args) -> int:
    _, index = _load_catalog_index(args)
    index.dump(args.out)
    json.dump({"forms": len(index), "out": str(args.out)}, sys.stdout)
    print()
    return EXIT_OK


def _split_corpora(args, catalog):
    from frameparse.ingest import IngestReport

    fulltext, report = load_fulltext(_data_dir(args), catalog)
    for w in report.warnings:
        log.warning(w)
    split_cfg = load_split_config(args.split_config) if args.split_config else default_split_config()
    split_report = IngestReport()
    splits = split_sentences(fulltext, split_cfg, split_report)
    if split_report.warnings:
        log.warning(
            "%d split documents not present in the corpus (first: %s)",
            len(split_report.warnings),
            split_report.warnings[0],
        )
    return splits


def _cmd_gen_data(args) -> int:
    catalog, index = _load_catalog_index(args)
    if args.config:
        config = PipelineConfig.load(args.config)
    else:
        config = PipelineConfig(stages=tuple(default_stage_plans(augment=not args.no_augment)))
    if args.seed is not None:
        config = PipelineConfig(stages=config.stages, seed=args.seed)
    stages = list(config.stages)
    if args.no_augment and args.config:
        from frameparse.augment import AugmentConfig
        from dataclasses import replace

        stages = [
            replace(p, augment=AugmentConfig.disabled(), trigger_augment=AugmentConfig.disabled())
            for p in stages
        ]
    if args.no_pretrain:
        stages = [p for p in stages if p.stage == "finetune"]

    splits = _split_corpora(args, catalog)
    corpora = {"train": list(splits.train)}
    if any(p.corpus == "exemplar" for p in stages):
        exemplars, ex_report = load_exemplars(_data_dir(args), catalog)
        for w in ex_report.warnings:
            log.warning(w)
        corpora["exemplar"] = exemplars
    if any(p.corpus == "propbank" for p in stages):
        if not args.propbank:
            raise IngestError("config includes a propbank stage but --propbank was not given")
        propbank, pb_catalog, pb_report = load_propbank_records(args.propbank)
        for w in pb_report.warnings:
            log.warning(w)
        corpora["propbank"] = propbank

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {"seed": config.seed, "stages": []}
    for plan in stages:
        sentences = corpora.get(plan.corpus)
        if sentences is None:
            raise IngestError(f"stage {plan.stage} needs unknown corpus {plan.corpus!r}")
        if plan.corpus == "propbank":
            stage_catalog, stage_index = pb_catalog, build_index(pb_catalog)
        else:
            stage_catalog, stage_index = catalog, index
        diagnostics: list[str] = []
        records = build_stage(plan, sentences, stage_catalog, stage_index, config.seed, diagnostics)
        for d in diagnostics:
            log.warning("%s: %s", plan.stage, d)
        path = out / f"stage_{plan.stage}.jsonl"
        write_jsonl(path, iter_task_records(records))
        summary["stages"].append({"stage": plan.stage, "records": len(records), "file": str(path)})
    json.dump(summary, sys.stdout, indent=2)
    print()
    return EXIT_OK


def _cmd_parse(args) -> int:
    catalog, index = _load_catalog_index(args)
    backend = _backend_from_args(args)
    if backend is None:
        raise BackendError("parse needs --backend-url or --script")
    if args.text is not None:
        texts = [args.text]
    else:
        texts = [ln.rstrip("\n") for ln in Path(args.file).read_text(encoding="utf-8").splitlines() if ln.strip()]
    results = detect_frames_bulk(texts, backend, catalog, index, batch_size=args.batch_size)
    for result in results:
        if args.pretty:
            _print_tree(result)
        else:
            print(json.dumps(parse_result_to_dict(result), ensure_ascii=False))
    return EXIT_OK


def _print_tree(result) -> None:
    print(result.text)
    for f in result.frames:
        trigger = result.text[f.trigger_start:f.trigger_end]
        print(f"  {f.frame_name}  (trigger: {trigger!r} @ {f.trigger_start})")
        for e in f.elements:
            print(f"    {e.element} = {result.text[e.start:e.end]!r} [{e.start}:{e.end}]")
    for d in result.diagnostics:
        log.warning("%s", d)


def _cmd_evaluate(args) -> int:
    catalog, index = _load_catalog_index(args)
    splits = _split_corpora(args, catalog)
    sentences = list(getattr(splits, args.split))
    if args.limit:
        sentences = sentences[: args.limit]
    if args.round_trip:
        backend = scripted_backend_from_gold(sentences, catalog, index)
    elif args.echo:
        backend = EchoBackend()
    else:
        backend = _backend_from_args(args)
        if backend is None:
            raise BackendError("evaluate needs --backend-url, --script, --round-trip or --echo")
    report = evaluate_split(
        sentences,
        catalog,
        index,
        backend,
        split_name=args.split,
        batch_size=args.batch_size,
        gold_stage_inputs=args.gold_stage_inputs,
        config={"split": args.split, "gold_stage_inputs": args.gold_stage_inputs},
    )
    print(report.to_json())
    print(report.render_table(), file=sys.stderr)
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_mock_serve(args) -> int:
    from frameparse.mockserver import MockServer

    backend = ScriptedBackend.from_jsonl(args.script)
    server = MockServer(backend, host=args.host, port=args.port)
    log.info("serving %d scripted exchanges on %s", len(backend), server.url)
    print(json.dumps({"url": server.url, "exchanges": len(backend)}), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.stop()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frameparse",
        description="Frame-semantic parsing toolkit: ingest, dataset generation, parsing, evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"frameparse {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_data_dir(p):
        p.add_argument("--data-dir", help="FrameNet 1.7 root (default: $FRAMENET_DATA_DIR)")

    p = sub.add_parser("ingest", help="validate corpora and emit normalized JSONL")
    add_data_dir(p)
    p.add_argument("--propbank", help="normalized PropBank JSONL records")
    p.add_argument("--skip-exemplars", action="store_true")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("build-index", help="emit the LU index dump")
    add_data_dir(p)
    p.add_argument("--out", required=True, help="output text file")
    p.set_defaults(func=_cmd_build_index)

    p = sub.add_parser("gen-data", help="generate staged training JSONL")
    add_data_dir(p)
    p.add_argument("--config", help="pipeline config JSON (default: standard three stages)")
    p.add_argument("--propbank", help="normalized PropBank JSONL records")
    p.add_argument("--split-config", help="split JSON (default: bundled Open Sesame lists)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-augment", action="store_true", help="disable all augmentation")
    p.add_argument("--no-pretrain", action="store_true", help="emit only the finetune stage")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("parse", help="parse text through a generation backend")
    add_data_dir(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="one sentence")
    group.add_argument("--file", help="file with one sentence per line")
    p.add_argument("--backend-url", help="generation service base URL")
    p.add_argument("--script", help="scripted backend JSONL instead of a live service")
    p.add_argument("--max-new-tokens", type=int, default=512)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--pretty", action="store_true", help="human-readable tree output")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("evaluate", help="score a split against a backend")
    add_data_dir(p)
    p.add_argument("--split", choices=("train", "dev", "test"), default="dev")
    p.add_argument("--split-config", help="split JSON (default: bundled Open Sesame lists)")
    p.add_argument("--backend-url", help="generation service base URL")
    p.add_argument("--script", help="scripted backend JSONL")
    p.add_argument("--round-trip", action="store_true", help="score the gold-derived backend (sanity check)")
    p.add_argument("--echo", action="store_true", help="score the echo backend (floor)")
    p.add_argument("--gold-stage-inputs", action="store_true", help="ablation: no error cascade")
    p.add_argument("--max-new-tokens", type=int, default=512)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--limit", type=int, default=0, help="evaluate only the first N sentences")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("mock-serve", help="serve a scripted backend over the wire protocol")
    p.add_argument("--script", required=True, help="JSONL of {input, output} exchanges")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8923)
    p.set_defaults(func=_cmd_mock_serve)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except BackendError as exc:
        log.error("%s", exc)
        return EXIT_BACKEND
    except (IngestError, FrameParseError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
