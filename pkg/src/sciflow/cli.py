"""Batch subcommands: ingest, metrics, train, predict, layout, serve, synth.

Exit codes: 0 success, 1 validation error, 2 I/O error. Every run echoes its
resolved configuration to stderr; every analytic output starts with the
standard header line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import synth
from .artifacts import (
    header,
    read_json_artifact,
    read_jsonl,
    write_json_artifact,
    write_jsonl,
)
from .corpus.load import load_corpus
from .corpus.model import CorpusError
from .interplay.payload import build_payload
from .metrics.novelty import NoveltyConfig
from .metrics.papers import MetricsConfig, compute_paper_metrics
from .metrics.researchers import compute_researcher_metrics
from .predictor.features import EXTERNAL_FILE, HASHED_TITLE, FeatureConfig
from .predictor.gcn import GcnModel, TrainConfig
from .predictor.pipeline import (
    SplitConfig,
    p_index_table,
    run_pipeline,
    score_groups,
)

_PATH_KEYS = {"manifest", "out", "embeddings", "predictions", "models", "metrics_file"}


def _parse_window(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return (int(lo), int(hi))
    except ValueError:
        raise CorpusError(f"window must look like 2001:2020, got {text!r}") from None


def _echo_config(resolved: dict) -> dict:
    """Print the resolved config to stderr and return the path-free copy
    whose hash goes into output headers."""
    print(json.dumps(resolved, sort_keys=True), file=sys.stderr)
    return {k: v for k, v in resolved.items() if k not in _PATH_KEYS}


class _Parser(argparse.ArgumentParser):
    # Exit code 2 is reserved for I/O problems, so flag errors leave with
    # the validation code instead of argparse's default.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _add_common(p: argparse.ArgumentParser, out_default: str | None = "out") -> None:
    p.add_argument("--manifest", required=True, help="path to manifest.json")
    if out_default is not None:
        p.add_argument("--out", default=out_default, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", default=None, help="paper window, e.g. 2001:2020")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sciflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate the synthetic corpus")
    p.add_argument("--out", default="data/synth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--papers", type=int, default=synth.DEFAULT_PAPERS)
    p.add_argument("--patents", type=int, default=synth.DEFAULT_PATENTS)
    p.add_argument("--links", type=int, default=synth.DEFAULT_LINKS)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="load and validate a corpus")
    _add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("metrics", help="compute paper and researcher metrics")
    _add_common(p)
    p.add_argument("--novelty-shuffles", type=int, default=10)
    p.add_argument("--exclude-self-citations", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("train", help="train per-group patentability models")
    _add_common(p)
    p.add_argument("--k-groups", type=int, default=50)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--lr", type=float, default=0.01)
    p.add_argument("--dropout", type=float, default=0.5)
    p.add_argument("--hidden", type=int, default=16)
    p.add_argument("--optimizer", choices=["adam", "gd"], default="adam")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--feature-buckets", type=int, default=64)
    p.add_argument("--embeddings", default=None,
                   help="precomputed embedding file; default is hashed titles")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="score papers with trained models")
    _add_common(p)
    p.add_argument("--models", default=None,
                   help="directory written by train (default: --out)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("layout", help="build the interplay layout payload")
    _add_common(p)
    p.add_argument("--level", default="L1")
    p.add_argument("--bins", default="0,1,3,8,21")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--mode", choices=["historical", "prediction"], default="historical")
    p.add_argument("--min-pct", type=float, default=None)
    p.add_argument("--predictions", default=None, help="predictions.jsonl for prediction mode")
    p.add_argument("--novelty-shuffles", type=int, default=10)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("serve", help="serve the read-only query API")
    _add_common(p, out_default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--predictions", default=None)
    p.add_argument("--novelty-shuffles", type=int, default=10)
    p.set_defaults(func=cmd_serve)

    return parser


def cmd_synth(args) -> int:
    resolved = {
        "command": "synth",
        "out": str(args.out),
        "seed": args.seed,
        "papers": args.papers,
        "patents": args.patents,
        "links": args.links,
    }
    hash_cfg = _echo_config(resolved)
    summary = synth.generate(
        args.out, seed=args.seed, papers=args.papers,
        patents=args.patents, links=args.links,
    )
    write_json_artifact(
        Path(args.out) / "synth_summary.json", header(hash_cfg, args.seed), summary
    )
    return 0


def cmd_ingest(args) -> int:
    window = _parse_window(args.window)
    resolved = {
        "command": "ingest",
        "manifest": str(args.manifest),
        "out": str(args.out),
        "seed": args.seed,
        "window": list(window) if window else None,
    }
    hash_cfg = _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    payload = {
        "report": corpus.report.to_dict(),
        "papers": len(corpus.papers),
        "patents": len(corpus.patents),
        "researchers": len(corpus.researchers),
        "paper_citation_edges": corpus.paper_citation_count,
        "paper_patent_pairs": len(corpus.patent_citations),
        "window": list(corpus.window),
    }
    write_json_artifact(
        Path(args.out) / "corpus_report.json", header(hash_cfg, args.seed), payload
    )
    return 0


def _metrics_config(args) -> MetricsConfig:
    return MetricsConfig(
        novelty=NoveltyConfig(shuffle_count=args.novelty_shuffles, rng_seed=args.seed),
        include_self_citations=not getattr(args, "exclude_self_citations", False),
    )


def cmd_metrics(args) -> int:
    window = _parse_window(args.window)
    resolved = {
        "command": "metrics",
        "manifest": str(args.manifest),
        "out": str(args.out),
        "seed": args.seed,
        "window": list(window) if window else None,
        "novelty_shuffles": args.novelty_shuffles,
        "include_self_citations": not args.exclude_self_citations,
    }
    hash_cfg = _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    cfg = _metrics_config(args)
    head = header(hash_cfg, args.seed)
    records = compute_paper_metrics(corpus, cfg)
    write_jsonl(
        Path(args.out) / "metrics.jsonl",
        head,
        (records[pid].to_dict() for pid in sorted(records)),
    )
    r_metrics = compute_researcher_metrics(corpus, cfg)
    write_jsonl(
        Path(args.out) / "researchers_metrics.jsonl",
        head,
        (r_metrics[rid].to_dict() for rid in sorted(r_metrics)),
    )
    return 0


def cmd_train(args) -> int:
    window = _parse_window(args.window)
    resolved = {
        "command": "train",
        "manifest": str(args.manifest),
        "out": str(args.out),
        "seed": args.seed,
        "window": list(window) if window else None,
        "k_groups": args.k_groups,
        "epochs": args.epochs,
        "lr": args.lr,
        "dropout": args.dropout,
        "hidden": args.hidden,
        "optimizer": args.optimizer,
        "jobs": args.jobs,
        "feature_buckets": args.feature_buckets,
        "embeddings": str(args.embeddings) if args.embeddings else None,
    }
    hash_cfg = _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    feature_cfg = (
        FeatureConfig(provider=EXTERNAL_FILE, path=args.embeddings)
        if args.embeddings
        else FeatureConfig(provider=HASHED_TITLE, buckets=args.feature_buckets)
    )
    train_cfg = TrainConfig(
        epochs=args.epochs,
        learning_rate=args.lr,
        dropout=args.dropout,
        hidden=args.hidden,
        optimizer=args.optimizer,
        seed=args.seed,
    )
    split_cfg = SplitConfig(seed=args.seed)
    result = run_pipeline(
        corpus,
        k_groups=args.k_groups,
        feature_cfg=feature_cfg,
        train_cfg=train_cfg,
        split_cfg=split_cfg,
        jobs=args.jobs,
    )
    head = header(hash_cfg, args.seed)
    out = Path(args.out)
    for group in result.groups:
        write_json_artifact(
            out / "models" / f"{group}.json", head, result.predictions[group].model.to_dict()
        )
    summary = {
        "groups": list(result.groups),
        "test_auc": {g: result.predictions[g].test_auc for g in result.groups},
        "splits": {
            "train": len(result.splits.train),
            "val": len(result.splits.val),
            "test": len(result.splits.test),
            "predict": len(result.splits.predict),
        },
        "feature": {
            "provider": feature_cfg.provider,
            "buckets": feature_cfg.buckets,
        },
        "split_config": {
            "split_year": split_cfg.split_year,
            "test_year": split_cfg.test_year,
            "predict_window": list(split_cfg.predict_window),
            "train_fraction": split_cfg.train_fraction,
            "seed": split_cfg.seed,
        },
        "embeddings": str(args.embeddings) if args.embeddings else None,
    }
    write_json_artifact(out / "train_summary.json", head, summary)
    return 0


def cmd_predict(args) -> int:
    window = _parse_window(args.window)
    models_dir = Path(args.models) if args.models else Path(args.out)
    resolved = {
        "command": "predict",
        "manifest": str(args.manifest),
        "out": str(args.out),
        "models": str(models_dir),
        "seed": args.seed,
        "window": list(window) if window else None,
    }
    hash_cfg = _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    _, summary = read_json_artifact(models_dir / "train_summary.json")
    feature_cfg = (
        FeatureConfig(provider=EXTERNAL_FILE, path=summary["embeddings"])
        if summary.get("embeddings")
        else FeatureConfig(
            provider=HASHED_TITLE, buckets=summary["feature"]["buckets"]
        )
    )
    sc = summary["split_config"]
    split_cfg = SplitConfig(
        split_year=sc["split_year"],
        test_year=sc["test_year"],
        predict_window=tuple(sc["predict_window"]),
        train_fraction=sc["train_fraction"],
        seed=sc["seed"],
    )
    models = {}
    for group in summary["groups"]:
        _, checkpoint = read_json_artifact(models_dir / "models" / f"{group}.json")
        models[group] = GcnModel.from_dict(checkpoint)
    result = score_groups(corpus, models, feature_cfg, split_cfg)

    head = header(hash_cfg, args.seed)
    out = Path(args.out)
    write_jsonl(out / "predictions.jsonl", head, result.prediction_rows())
    write_jsonl(
        out / "patentability.jsonl",
        head,
        (
            {"paper_id": pid, "patentability": result.patentability[pid]}
            for pid in sorted(result.patentability)
        ),
    )
    pindex = p_index_table(result.patentability, corpus, split_cfg.predict_window)
    write_jsonl(
        out / "pindex.jsonl",
        head,
        ({"researcher_id": rid, "p_index": pindex[rid]} for rid in sorted(pindex)),
    )
    return 0


def _load_predictions(path: str | None) -> dict[str, dict[str, float]] | None:
    if path is None:
        return None
    _, rows = read_jsonl(Path(path))
    table: dict[str, dict[str, float]] = {}
    for row in rows:
        table.setdefault(row["group"], {})[row["paper_id"]] = float(row["percentile"])
    return table


def cmd_layout(args) -> int:
    window = _parse_window(args.window)
    resolved = {
        "command": "layout",
        "manifest": str(args.manifest),
        "out": str(args.out),
        "seed": args.seed,
        "window": list(window) if window else None,
        "level": args.level,
        "bins": args.bins,
        "alpha": args.alpha,
        "beta": args.beta,
        "gamma": args.gamma,
        "mode": args.mode,
        "min_pct": args.min_pct,
        "predictions": str(args.predictions) if args.predictions else None,
        "novelty_shuffles": args.novelty_shuffles,
    }
    hash_cfg = _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    cfg = MetricsConfig(
        novelty=NoveltyConfig(shuffle_count=args.novelty_shuffles, rng_seed=args.seed)
    )
    payload = build_payload(
        corpus,
        level=args.level,
        bins=args.bins,
        alpha=args.alpha,
        beta=args.beta,
        gamma=args.gamma,
        mode=args.mode,
        min_patentability=args.min_pct,
        predictions=_load_predictions(args.predictions),
        metrics_cfg=cfg,
    )
    write_json_artifact(
        Path(args.out) / "layout.json", header(hash_cfg, args.seed), payload
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server.app import create_app
    from .server.state import ServerState

    window = _parse_window(args.window)
    resolved = {
        "command": "serve",
        "manifest": str(args.manifest),
        "seed": args.seed,
        "window": list(window) if window else None,
        "host": args.host,
        "port": args.port,
        "predictions": str(args.predictions) if args.predictions else None,
        "novelty_shuffles": args.novelty_shuffles,
    }
    _echo_config(resolved)
    corpus = load_corpus(args.manifest, window=window)
    cfg = MetricsConfig(
        novelty=NoveltyConfig(shuffle_count=args.novelty_shuffles, rng_seed=args.seed)
    )
    state = ServerState.build(
        corpus, metrics_cfg=cfg, predictions=_load_predictions(args.predictions)
    )
    uvicorn.run(create_app(state), host=args.host, port=args.port, log_level="info")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
