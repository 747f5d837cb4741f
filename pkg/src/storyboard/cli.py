"""Command-line entry points.

`storyboard build` runs the whole pipeline; the stage commands exist for
debugging single steps and for metric tooling.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .assemble import emit_storyboard_bundle, validate_storyboard, verify_bundle_dir
from .atg import extract_transitions
from .bundle import load_bundle
from .errors import StoryboardError
from .infer import annotate_graph_names, build_corpus, load_corpus
from .metrics import image_similarity, read_pgm
from .pipeline import build_storyboard, render_pages
from .render import RenderSpec
from .synth import DummyDataSpec


def _render_spec(screen: str, density: float) -> RenderSpec:
    try:
        width, _, height = screen.lower().partition("x")
        return RenderSpec(screen_width_dp=int(width), screen_height_dp=int(height),
                          density_scale=density)
    except ValueError as exc:
        raise click.BadParameter(f"--screen expects WxH in dp, got {screen!r}") from exc


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Static storyboard generator for decompiled app bundles."""


@main.command()
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Name-inference corpus (JSONL).")
@click.option("-o", "--out", "out_dir", type=click.Path(file_okay=False),
              required=True, help="Output directory for the storyboard bundle.")
@click.option("--dummy-rows", type=int, default=5, show_default=True,
              help="Rows planted under each adapter-backed view.")
@click.option("--screen", default="360x640", show_default=True,
              help="Virtual screen size in dp, WxH.")
@click.option("--density", type=float, default=2.0, show_default=True,
              help="dp-to-px scale.")
@click.option("--threshold", type=int, default=5, show_default=True,
              help="Tree-edit-distance cutoff for name inference.")
def build(bundle_dir, corpus_path, out_dir, dummy_rows, screen, density, threshold):
    """Run the full pipeline on BUNDLE_DIR and emit a storyboard bundle."""
    try:
        bundle = load_bundle(bundle_dir)
        corpus = load_corpus(corpus_path) if corpus_path else None
        storyboard, graph, inferences = build_storyboard(
            bundle, corpus, threshold,
            DummyDataSpec(row_count=dummy_rows),
            _render_spec(screen, density),
        )
        validate_storyboard(storyboard.to_dict())
        root = emit_storyboard_bundle(storyboard, out_dir)
        atg_doc = graph.to_dict(inferences)
        (root / "atg.json").write_text(json.dumps(atg_doc, indent=2) + "\n")
        missing = verify_bundle_dir(root)
        if missing:
            raise StoryboardError(f"emitted bundle is missing pages: {missing}")
    except StoryboardError as exc:
        _fail(exc)
    click.echo(f"wrote {root}: {len(storyboard.nodes)} activities, "
               f"{len(storyboard.edges)} transitions, "
               f"{len(storyboard.warnings)} warnings")


@main.command("extract-atg")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False),
              default=None, help="Write atg.json here instead of stdout.")
def extract_atg(bundle_dir, out_path):
    """Extract the activity transition graph only."""
    try:
        graph = extract_transitions(load_bundle(bundle_dir))
    except StoryboardError as exc:
        _fail(exc)
    document = json.dumps(graph.to_dict(), indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(document)
        click.echo(f"wrote {out_path}: {len(graph.nodes)} nodes, "
                   f"{len(graph.edges)} edges")
    else:
        click.echo(document, nl=False)


@main.command()
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--out", "out_dir", type=click.Path(file_okay=False),
              required=True, help="Directory for pages/*.svg and *.pgm.")
@click.option("--dummy-rows", type=int, default=5, show_default=True)
@click.option("--screen", default="360x640", show_default=True)
@click.option("--density", type=float, default=2.0, show_default=True)
def render(bundle_dir, out_dir, dummy_rows, screen, density):
    """Synthesize and render every page of BUNDLE_DIR."""
    from .metrics import write_pgm

    try:
        bundle = load_bundle(bundle_dir)
        graph = extract_transitions(bundle)
        pages = render_pages(bundle, graph, DummyDataSpec(row_count=dummy_rows),
                             _render_spec(screen, density))
    except StoryboardError as exc:
        _fail(exc)
    root = Path(out_dir) / "pages"
    root.mkdir(parents=True, exist_ok=True)
    for name, page in sorted(pages.items()):
        (root / f"{name}.svg").write_text(page.svg)
        write_pgm(root / f"{name}.pgm", page.raster)
    click.echo(f"rendered {len(pages)} pages into {root}")


@main.command("infer-names")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Name-inference corpus (JSONL).")
@click.option("--threshold", type=int, default=5, show_default=True)
def infer_names(bundle_dir, corpus_path, threshold):
    """Infer semantic names for obfuscated activities in BUNDLE_DIR."""
    try:
        bundle = load_bundle(bundle_dir)
        graph = extract_transitions(bundle)
        corpus = load_corpus(corpus_path)
        results = annotate_graph_names(graph, bundle, corpus, threshold)
    except StoryboardError as exc:
        _fail(exc)
    for name, result in results.items():
        click.echo(f"{name} -> {result.inferred_name} [{result.matched_by}]")


@main.command("eval-similarity")
@click.argument("image_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("image_b", type=click.Path(exists=True, dir_okay=False))
def eval_similarity(image_a, image_b):
    """Compare two P5 PGM grids pixel by pixel."""
    try:
        mae, mse, similarity = image_similarity(read_pgm(image_a), read_pgm(image_b))
    except StoryboardError as exc:
        _fail(exc)
    click.echo(f"mae={mae:g} mse={mse:g} similarity={similarity:g}%")


@main.command("build-corpus")
@click.argument("bundle_dirs", nargs=-1, required=True,
                type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False),
              required=True, help="Corpus JSONL to write.")
def build_corpus_cmd(bundle_dirs, out_path):
    """Build a name-inference corpus from one or more bundles."""
    try:
        bundles = [load_bundle(d) for d in bundle_dirs]
        corpus = build_corpus(bundles, out_path)
    except StoryboardError as exc:
        _fail(exc)
    click.echo(f"wrote {out_path}: {len(corpus.entries)} entries")


if __name__ == "__main__":
    main()
