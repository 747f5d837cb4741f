"""End-to-end pipeline: bundle directory in, storyboard out.

Thin orchestration over the per-stage modules so the CLI and tests share
one code path.
"""

from __future__ import annotations

from .assemble import Storyboard, assemble_storyboard
from .atg import TransitionGraph, extract_transitions
from .errors import MissingLayout
from .infer import Corpus, annotate_graph_names
from .model import AppBundle
from .render import RenderedPage, RenderSpec, render_page
from .synth import DummyDataSpec, inject_adapter_views, synthesize_static_layout


def render_pages(bundle: AppBundle, graph: TransitionGraph,
                 dummy: DummyDataSpec | None = None,
                 spec: RenderSpec | None = None) -> dict[str, RenderedPage]:
    """Synthesize and render every graph node.

    Nodes whose static layout is missing (undecompiled stubs) get no page
    here; the assembler substitutes a placeholder.
    """
    dummy = dummy or DummyDataSpec()
    spec = spec or RenderSpec()
    pages: dict[str, RenderedPage] = {}
    for name in graph.nodes:
        try:
            tree = synthesize_static_layout(name, bundle, graph)
        except MissingLayout as exc:
            graph.warnings.append(f"missing-layout: {exc}")
            continue
        bindings = [a for a in graph.adapters if a.activity == name]
        tree = inject_adapter_views(tree, bindings, dummy, bundle)
        pages[name] = render_page(tree, spec)
    return pages


def build_storyboard(bundle: AppBundle, corpus: Corpus | None = None,
                     threshold: int = 5,
                     dummy: DummyDataSpec | None = None,
                     spec: RenderSpec | None = None,
                     ) -> tuple[Storyboard, TransitionGraph, dict]:
    """Full pipeline; returns the storyboard plus the intermediate graph
    and inference results for callers that emit stage artifacts."""
    graph = extract_transitions(bundle)
    inferences = annotate_graph_names(graph, bundle, corpus, threshold)
    pages = render_pages(bundle, graph, dummy, spec)
    storyboard = assemble_storyboard(bundle, graph, pages, inferences)
    return storyboard, graph, inferences
