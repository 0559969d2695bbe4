"""Command-line entry point: one subcommand per pipeline stage.

    banglish-demand --config run.json ingest
    banglish-demand --config run.json catalog
    banglish-demand --config run.json match
    banglish-demand --config run.json annotate
    banglish-demand --config run.json train
    banglish-demand --config run.json analyze
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import annotate as ann
from . import catalog as cat
from . import demand, gender, ingest, matcher, sentiment
from .config import PipelineConfig, load_config
from .errors import InputError, PipelineError
from .fileio import write_csv

log = logging.getLogger("banglish_demand")

COMMENTS_CSV = "comments.csv"
CATALOG_CSV = "catalog.csv"
MODEL_JSON = "model.json"


def _require(path: Path, what: str) -> Path:
    if path is None:
        raise InputError(f"no {what} configured")
    if not Path(path).is_file():
        raise InputError(f"missing {what}: {path}")
    return Path(path)


def _load_comments(cfg: PipelineConfig):
    return ingest.read_comments(_require(cfg.out(COMMENTS_CSV), "ingested comments (run `ingest` first)"))


def _load_catalog(cfg: PipelineConfig):
    return cat.read_catalog(_require(cfg.out(CATALOG_CSV), "normalized catalog (run `catalog` first)"))


def cmd_ingest(cfg: PipelineConfig) -> None:
    for p in cfg.comments:
        _require(p, "comments CSV")
    rows = ingest.merge_csv(cfg.comments, cfg.name_column, cfg.text_column)
    prof = ingest.profile(rows)
    cleaned = ingest.clean(rows)
    ingest.write_comments(cleaned, cfg.out(COMMENTS_CSV))
    print(f"profile: {prof.report()}")
    print(f"ingest: {len(cleaned)} clean comments -> {cfg.out(COMMENTS_CSV)}")


def cmd_catalog(cfg: PipelineConfig) -> None:
    catalog = cat.load_catalog(_require(cfg.catalog, "catalog CSV"), cfg.brand_column, cfg.model_column)
    cat.write_catalog(catalog, cfg.out(CATALOG_CSV))
    print(f"catalog: {len(catalog)} devices, longest model {catalog.max_model_tokens} tokens -> {cfg.out(CATALOG_CSV)}")


def cmd_match(cfg: PipelineConfig) -> None:
    comments = _load_comments(cfg)
    catalog = _load_catalog(cfg)
    results = matcher.correct_all(((c.id, c.text) for c in comments), catalog, cfg.matcher, cfg.threads)
    entities = [m for r in results for m in matcher.extract_entities(r, r.comment_id, catalog)]
    matcher.write_corrections(results, cfg.out("corrections.csv"))
    matcher.write_entities(entities, cfg.out("entities.csv"))
    n_fixed = sum(1 for r in results for rep in r.replacements if rep.original != rep.replacement)
    print(f"match: {n_fixed} corrections, {len(entities)} entities in {len(comments)} comments")


def cmd_annotate(cfg: PipelineConfig) -> None:
    comments = _load_comments(cfg)
    catalog = _load_catalog(cfg)
    labels = ann.read_labels(_require(cfg.labels, "sentiment labels CSV"))
    annotated = ann.auto_annotate(comments, catalog, cfg.matcher)
    labeled, missing = ann.attach_labels(annotated, labels)
    if missing:
        log.warning("%d annotated comments have no sentiment label and were left out", missing)
    train, test = ann.split(labeled, cfg.split)
    for name, part in (("train", train), ("test", test)):
        ann.write_split(part, cfg.out(f"{name}.csv"))
        ann.export_offset_json(part, cfg.out(f"ner_{name}.json"))
        ann.export_lines_and_offsets(part, cfg.out(f"ner_{name}.txt"), cfg.out(f"ner_{name}_annotations.csv"))
    print(f"annotate: {len(annotated)} comments with devices, {len(labeled)} labeled; split {len(train)}/{len(test)}")


def cmd_train(cfg: PipelineConfig) -> None:
    train = ann.read_split(_require(cfg.out("train.csv"), "train split (run `annotate` first)"))
    test = ann.read_split(_require(cfg.out("test.csv"), "test split (run `annotate` first)"))
    pairs = [(d.text, d.sentiment) for d in train if d.sentiment]
    model = sentiment.train(pairs, cfg.sentiment)
    held_out = [(d.text, d.sentiment) for d in test if d.sentiment]
    threshold = sentiment.calibrate_threshold(model, held_out)
    sentiment.save_model(model, cfg.out(MODEL_JSON))
    write_csv(cfg.out("train_log.csv"), ["epoch", "loss"], ((i + 1, repr(l)) for i, l in enumerate(model.loss_history)))
    if held_out:
        probs = sentiment.predict_proba(model, [t for t, _ in held_out])
        y = np.array([1.0 if s == ann.POSITIVE else 0.0 for _, s in held_out])
        print(f"train: threshold {threshold:.6f}, test accuracy {sentiment.accuracy_at(probs, y, threshold):.4f}")
    print(f"train: {len(pairs)} examples, {len(model.loss_history)} epochs -> {cfg.out(MODEL_JSON)}")


def _client(cfg: PipelineConfig):
    if cfg.client.enabled:
        return gender.HttpTransliterator(cfg.client.endpoint, cfg.client.timeout)
    return gender.OfflineTransliterator.from_csv(cfg.transliteration)


def cmd_analyze(cfg: PipelineConfig) -> None:
    model_path = _require(cfg.out(MODEL_JSON), "sentiment model (run `train` first)")
    comments = _load_comments(cfg)
    catalog = _load_catalog(cfg)
    model = sentiment.load_model(model_path)
    lexicon = gender.load_lexicon(cfg.lexicon)
    analyzed = demand.analyze(comments, catalog, cfg.matcher, model, lexicon, _client(cfg), cfg.threads)
    records = demand.aggregate(analyzed)
    demand.write_analyzed(analyzed, cfg.out("analyzed.csv"))
    demand.emit_report(records, cfg.out("demand_report.csv"), "csv")
    demand.emit_report(records, cfg.out("demand_report.json"), "json")
    demand.emit_chart_svg(records, cfg.out("demand_chart.svg"), cfg.top_n)
    print(f"analyze: {len(analyzed)} comments mention devices; {len(records)} devices ranked")
    for r in records[: cfg.top_n]:
        print(f"  {r.device}: {r.demand_score} (male {r.pos_male}, female {r.pos_female}, unknown {r.pos_unknown})")


COMMANDS = {
    "ingest": cmd_ingest,
    "catalog": cmd_catalog,
    "match": cmd_match,
    "annotate": cmd_annotate,
    "train": cmd_train,
    "analyze": cmd_analyze,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="banglish-demand", description=__doc__.splitlines()[0])
    parser.add_argument("--config", required=True, help="pipeline config JSON")
    parser.add_argument("--seed", type=int, help="override every seed in the config")
    parser.add_argument("--threads", type=int, help="worker cap for per-comment matching (default 1)")
    parser.add_argument("--output-dir", help="override the config's output_dir")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("command", choices=sorted(COMMANDS))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config, seed=args.seed, threads=args.threads, output_dir=args.output_dir)
        COMMANDS[args.command](cfg)
    except PipelineError as exc:
        return _fail(args.command, exc.kind, exc.exit_code, str(exc))
    except ValueError as exc:
        # contract violations in the data itself (single-class labels, too few rows to split)
        return _fail(args.command, "data", 3, str(exc))
    return 0


def _fail(command: str, kind: str, code: int, message: str) -> int:
    err = {"error": kind, "exit_code": code, "command": command, "message": " ".join(message.split())}
    print(json.dumps(err, ensure_ascii=False), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
