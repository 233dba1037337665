"""Command-line frontend.

Exit codes: 0 success, 1 validation/data errors, 2 usage errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import asdict
from pathlib import Path

import click

from .engine import Engine, EngineConfig, load_taxonomy
from .errors import TaxoTraceError
from .evaluation import load_gold_csv, threshold_sweep
from .recommender import DEFAULT_WEIGHTS, RecommenderSettings
from .taxonomy import ValidationReport, serialize_taxonomy_csv
from .textproc import import_json, import_plaintext


def _parse_weights(_ctx, _param, value):
    if value is None:
        return None
    try:
        weights = tuple(float(x) for x in value.split(","))
    except ValueError:
        raise click.BadParameter("weights must be 4 comma-separated numbers")
    if len(weights) != 4 or any(w < 0 for w in weights) or abs(sum(weights) - 1) > 1e-9:
        raise click.BadParameter("weights must be 4 non-negative numbers summing to 1")
    return weights


def _check_threshold(_ctx, _param, value):
    if value is not None and not 0.0 <= value <= 1.0:
        raise click.BadParameter("threshold must be in [0,1]")
    return value


def _check_positive(_ctx, param, value):
    if value is not None and value < 1:
        raise click.BadParameter(f"{param.name} must be >= 1")
    return value


def _engine_options(fn):
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path)),
        click.option("--taxonomy", type=click.Path(exists=True, path_type=Path)),
        click.option("--format", "fmt", type=click.Choice(["csv", "ttl"])),
        click.option("--docs", multiple=True, type=click.Path(exists=True, path_type=Path)),
        click.option("--lang", type=click.Choice(["en", "sv"])),
        click.option("--threshold", type=float, callback=_check_threshold),
        click.option("--max-rejects", type=int, callback=_check_positive),
        click.option("--top-k", type=int, callback=_check_positive),
        click.option("--weights", callback=_parse_weights),
        click.option("--store", type=click.Path(path_type=Path)),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _build_config(
    config_path, taxonomy, fmt, docs, lang, threshold, max_rejects, top_k, weights, store
) -> EngineConfig:
    config = EngineConfig.from_file(config_path) if config_path else EngineConfig()
    if taxonomy is not None:
        config.taxonomy = taxonomy
    if fmt is not None:
        config.format = fmt
    if docs:
        config.docs = list(docs)
    if lang is not None:
        config.lang = lang
    if threshold is not None:
        config.threshold = threshold
    if max_rejects is not None:
        config.max_rejects = max_rejects
    if top_k is not None:
        config.top_k = top_k
    if weights is not None:
        config.weights = weights
    if store is not None:
        config.store = store
    return config


def _write_out(out: Path | None, payload: bytes) -> None:
    if out is None:
        sys.stdout.write(payload.decode("utf-8"))
    else:
        out.write_bytes(payload)


@click.group()
def main():
    """Taxonomic trace engine: link requirements to taxonomy concepts."""


@main.command()
@click.option("--taxonomy", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["csv", "ttl"]))
@click.option("--lang", default="en", type=click.Choice(["en", "sv"]))
def validate(taxonomy, fmt, lang):
    """Parse and validate a taxonomy file."""
    result = load_taxonomy(taxonomy, fmt, lang)
    if isinstance(result, ValidationReport):
        for issue in result.errors:
            click.echo(f"error [{issue.kind}] {issue.concept_id}: {issue.message}", err=True)
        click.echo(f"{len(result.errors)} errors")
        sys.exit(1)
    click.echo(f"0 errors ({len(result)} concepts, {len(result.roots)} roots)")


@main.command("import-taxonomy")
@click.option("--taxonomy", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["csv", "ttl"]))
@click.option("--lang", default="en", type=click.Choice(["en", "sv"]))
@click.option("--out", type=click.Path(path_type=Path))
def import_taxonomy(taxonomy, fmt, lang, out):
    """Import a taxonomy and emit its canonical CSV form."""
    result = load_taxonomy(taxonomy, fmt, lang)
    if isinstance(result, ValidationReport):
        for issue in result.errors:
            click.echo(f"error [{issue.kind}] {issue.concept_id}: {issue.message}", err=True)
        sys.exit(1)
    _write_out(out, serialize_taxonomy_csv(result))


@main.command("import-docs")
@click.option("--docs", multiple=True, required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", type=click.Path(path_type=Path))
def import_docs(docs, out):
    """Import requirement documents and emit units as JSONL."""
    lines = []
    for path in docs:
        data = path.read_bytes()
        units = import_json(data) if path.suffix.lower() == ".json" else import_plaintext(data, path.stem)
        lines.extend(json.dumps(asdict(u)) for u in units)
    _write_out(out, ("\n".join(lines) + "\n" if lines else "").encode("utf-8"))
    click.echo(f"{len(lines)} units", err=True)


@main.command()
@_engine_options
@click.option("--out", type=click.Path(path_type=Path))
def recommend(out, **kwargs):
    """Write suggestions for every unit as JSONL."""
    engine = Engine.from_config(_build_config(**kwargs))
    lines = []
    for unit_id in sorted(engine.units):
        for s in engine.suggestions_for(unit_id):
            record = {
                "unit_id": s.unit_id,
                "concept_id": s.concept_id,
                "confidence": s.confidence,
                "scores": s.scores,
                "evidence": [asdict(e) for e in s.evidence],
            }
            lines.append(json.dumps(record))
    _write_out(out, ("\n".join(lines) + "\n" if lines else "").encode("utf-8"))


@main.command()
@_engine_options
@click.option("--gold", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--thresholds", default="0.0,0.2,0.4,0.6,0.8")
@click.option("--out", type=click.Path(path_type=Path))
def evaluate(gold, thresholds, out, **kwargs):
    """Sweep thresholds against a gold link set and report P/R/MAP."""
    try:
        ts = [float(x) for x in thresholds.split(",")]
    except ValueError:
        raise click.BadParameter("thresholds must be comma-separated numbers")
    engine = Engine.from_config(_build_config(**kwargs))
    gold_set = load_gold_csv(Path(gold).read_bytes(), source=str(gold))
    settings = RecommenderSettings(
        threshold=engine.settings.threshold,
        max_rejects=engine.settings.max_rejects,
        top_k=max(1, len(engine.taxonomy)),
    )
    report = threshold_sweep(engine.index, list(engine.units.values()), gold_set, settings, ts)
    if out is not None:
        Path(out).write_text(report.to_json() + "\n", "utf-8")
    click.echo(report.to_table())


@main.command("export-links")
@_engine_options
@click.option("--link-format", default="csv", type=click.Choice(["csv", "jsonl"]))
@click.option("--out", type=click.Path(path_type=Path))
def export_links(link_format, out, **kwargs):
    """Export active trace links."""
    engine = Engine.from_config(_build_config(**kwargs))
    _write_out(out, engine.store.export_links(link_format, engine.taxonomy))


@main.command()
@_engine_options
@click.option("--listen", default=None)
def serve(listen, **kwargs):
    """Serve the HTTP API (and the annotation UI, if built)."""
    from .api import serve as run_server

    config = _build_config(**kwargs)
    if listen is not None:
        config.listen = listen
    engine = Engine.from_config(config)
    run_server(engine, config.listen)


def run(argv: list[str] | None = None) -> int:
    """Entry point returning an exit code instead of raising SystemExit."""
    try:
        main.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)
    except TaxoTraceError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        return 1


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
