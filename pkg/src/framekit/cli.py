"""Command-line entry point: ``framekit <command>``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 validation failure.
Set ``FRAMEKIT_LOG`` (e.g. ``DEBUG``) to change the log level.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from collections import Counter

import click

from . import evaluation, ontology
from .corpus import corpus_stats, load_corpus, save_corpus
from .errors import FramekitError, SplitError
from .parser import frame_accuracy, load_model, predict_corpus, save_model, train
from .predictions import load_predictions, save_predictions
from .splitter import PARTITIONS, SplitAssignment, SplitRatios, project, split_corpus

log = logging.getLogger("framekit")

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VALIDATION = 3


class ValidationFailed(Exception):
    pass


def _ratios(ctx, param, value):
    try:
        return SplitRatios.parse(value)
    except SplitError as e:
        raise click.BadParameter(str(e)) from None


def _threshold(ctx, param, value):
    if not 0.0 <= value <= 1.0:
        raise click.BadParameter("threshold must be in [0, 1]")
    return value


def _modes(ctx, param, value):
    try:
        return evaluation.Mode.parse(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from None


existing = click.Path(exists=True, dir_okay=False)


@click.group()
def cli():
    """Frame-semantic parsing toolkit for exemplar corpora."""
    logging.basicConfig(
        level=os.environ.get("FRAMEKIT_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command()
@click.argument("in_path", type=existing)
@click.argument("out_path", type=click.Path(dir_okay=False))
def ingest(in_path, out_path):
    """Load a corpus and write it back in canonical JSONL."""
    corpus = load_corpus(in_path)
    save_corpus(corpus, out_path)
    click.echo(f"{len(corpus.annotations)} annotations / {len(corpus.sentences)} sentences")
    kinds = Counter(v.kind.value for v in corpus.flags)
    if kinds:
        summary = ", ".join(f"{k}={n}" for k, n in sorted(kinds.items()))
        click.echo(f"loader flags: {len(corpus.flags)} ({summary})")
    else:
        click.echo("loader flags: 0")


@cli.command()
@click.argument("corpus_path", type=existing)
@click.option("--top-k", default=5, show_default=True, type=click.IntRange(min=1))
@click.option("--merge-lu-languages", is_flag=True, help="Count an LU id once across languages.")
@click.option("--json-out", type=click.Path(dir_okay=False), help="Also write the JSON report here.")
def stats(corpus_path, top_k, merge_lu_languages, json_out):
    """Annotation counts by language, frame and lexical unit."""
    report = corpus_stats(load_corpus(corpus_path), top_k, merge_lu_languages)
    text = json.dumps(report.to_dict(), indent=2, ensure_ascii=False)
    click.echo(report.format_table())
    click.echo(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


@cli.command()
@click.argument("corpus_path", type=existing)
@click.option("--ratios", default="0.85,0.05,0.10", show_default=True, callback=_ratios)
@click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def split(corpus_path, ratios, seed, out_path):
    """Assign every sentence to train, dev or test."""
    assignment = split_corpus(load_corpus(corpus_path), ratios, seed)
    assignment.save(out_path)
    sizes = assignment.sizes()
    click.echo(" ".join(f"{p}={sizes[p]}" for p in PARTITIONS))


def _partition(corpus, split_path, partition):
    if split_path is None:
        return corpus
    return project(corpus, SplitAssignment.load(split_path), partition)


@cli.command("train")
@click.argument("corpus_path", type=existing)
@click.option("--split", "split_path", type=existing, help="Train on the train partition of this split.")
@click.option("--epochs", default=10, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--model-out", required=True, type=click.Path(dir_okay=False))
def train_cmd(corpus_path, split_path, epochs, seed, model_out):
    """Train the baseline parser."""
    corpus = _partition(load_corpus(corpus_path), split_path, "train")
    model, lexicon = train(corpus, epochs, seed)
    save_model(model, lexicon, model_out)
    acc = frame_accuracy(model, lexicon, corpus)
    log.info("train frame accuracy %.4f", acc)
    click.echo(f"trained on {len(corpus.annotations)} annotations; "
               f"lexicon entries={len(lexicon)}; train frame accuracy={acc:.4f}")


@cli.command("predict")
@click.option("--model", "model_path", required=True, type=existing)
@click.option("--corpus", "corpus_path", required=True, type=existing)
@click.option("--split", "split_path", type=existing)
@click.option("--partition", default="test", show_default=True, type=click.Choice(PARTITIONS))
@click.option("--provenance", default="baseline-v1", show_default=True)
@click.option("--out", "preds_out", required=True, type=click.Path(dir_okay=False))
def predict_cmd(model_path, corpus_path, split_path, partition, provenance, preds_out):
    """Predict frames and roles for a corpus (or one partition of it)."""
    model, lexicon = load_model(model_path)
    corpus = _partition(load_corpus(corpus_path), split_path, partition)
    pred_sets = predict_corpus(model, lexicon, corpus, provenance)
    save_predictions(pred_sets, preds_out)
    n = sum(len(p) for p in pred_sets)
    empty = sum(1 for p in pred_sets if not p.annotations)
    click.echo(f"{n} predictions for {len(pred_sets)} sentences ({empty} without predictions)")


@cli.command("score")
@click.argument("gold_path", type=existing)
@click.argument("preds_path", type=existing)
@click.option("--mode", "modes", default="both", show_default=True, callback=_modes,
              help="raw, gold-pred or both")
@click.option("--threshold", default=1.0, show_default=True, type=float, callback=_threshold)
@click.option("--split", "split_path", type=existing, help="Score only one partition of the gold corpus.")
@click.option("--partition", default="test", show_default=True, type=click.Choice(PARTITIONS))
@click.option("--report-out", type=click.Path(dir_okay=False), help="Write the JSON report here.")
def score_cmd(gold_path, preds_path, modes, threshold, split_path, partition, report_out):
    """Score a prediction file against gold annotations."""
    gold = _partition(load_corpus(gold_path), split_path, partition)
    preds = load_predictions(preds_path)
    reports = evaluation.score_modes(gold, preds, modes, threshold)
    name = next(iter(reports.values())).provenance or "system"
    click.echo(evaluation.format_table([(name, reports)]))
    text = evaluation.reports_to_json(reports)
    click.echo(text)
    if report_out:
        with open(report_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


@cli.command("validate")
@click.argument("corpus_path", type=existing)
@click.option("--preds", "preds_path", type=existing,
              help="Prediction file to check; without it the corpus's own annotations are checked.")
@click.option("--max-violations", default=0, show_default=True, type=click.IntRange(min=0))
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write violations as JSONL.")
def validate_cmd(corpus_path, preds_path, max_violations, out_path):
    """Check annotations against the corpus ontology."""
    corpus = load_corpus(corpus_path)
    if preds_path:
        annotations = [a for ps in load_predictions(preds_path).values() for a in ps.annotations]
    else:
        annotations = list(corpus.annotations)
    violations = ontology.validate(corpus, annotations, corpus.sentence_index)
    lines = [v.to_json() for v in violations]
    for line in lines:
        click.echo(line)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))
    rate = ontology.consistency_rate(violations, annotations)
    click.echo(f"violations: {len(violations)}")
    click.echo(f"consistency rate: {rate:.4f}")
    if len(violations) > max_violations:
        raise ValidationFailed()


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="framekit", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except ValidationFailed:
        return EXIT_VALIDATION
    except (FramekitError, OSError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_DATA
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
