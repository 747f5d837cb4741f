"""Static storyboard generation for decompiled app bundles.

Pipeline stages: bundle ingestion, transition-graph extraction, page
synthesis, wireframe rendering, semantic name inference, and storyboard
assembly.  `storyboard.pipeline.build_storyboard` runs them end to end.
"""

from .assemble import (
    ActivityCard,
    Storyboard,
    assemble_storyboard,
    emit_method_hierarchy,
    emit_storyboard_bundle,
    validate_storyboard,
)
from .atg import (
    AdapterBinding,
    FragmentRelation,
    TransitionEdge,
    TransitionGraph,
    extract_adapters,
    extract_transitions,
    merge_fragment_relations,
    resolve_caller_activities,
    resolve_intent_target,
)
from .bundle import load_bundle, parse_layout, serialize_layout
from .errors import (
    BundleError,
    LinkError,
    MetricError,
    MissingLayout,
    ParseError,
    StoryboardError,
    UnresolvedAttribute,
    UnresolvedTransition,
)
from .infer import (
    Corpus,
    CorpusEntry,
    InferenceResult,
    build_corpus,
    extract_layout_tree,
    infer_semantic_name,
    is_obfuscated,
    load_corpus,
)
from .metrics import image_similarity, read_pgm, write_pgm
from .model import AppBundle, ComponentNode, LayoutDocument
from .pipeline import build_storyboard, render_pages
from .render import (
    LayoutBox,
    RenderedPage,
    RenderSpec,
    measure_and_layout,
    render_page,
    render_svg,
    rasterize,
)
from .synth import (
    DummyDataSpec,
    StaticLayoutTree,
    inject_adapter_views,
    resolve_attribute,
    resolve_dynamic_components,
    synthesize_static_layout,
)
from .ted import LayoutTree, parse_tree, serialize_tree, tree_edit_distance

__version__ = "1.0.0"

__all__ = [
    "ActivityCard",
    "AdapterBinding",
    "AppBundle",
    "BundleError",
    "ComponentNode",
    "Corpus",
    "CorpusEntry",
    "DummyDataSpec",
    "FragmentRelation",
    "InferenceResult",
    "LayoutBox",
    "LayoutDocument",
    "LayoutTree",
    "LinkError",
    "MetricError",
    "MissingLayout",
    "ParseError",
    "RenderSpec",
    "RenderedPage",
    "StaticLayoutTree",
    "Storyboard",
    "StoryboardError",
    "TransitionEdge",
    "TransitionGraph",
    "UnresolvedAttribute",
    "UnresolvedTransition",
    "assemble_storyboard",
    "build_corpus",
    "build_storyboard",
    "emit_method_hierarchy",
    "emit_storyboard_bundle",
    "extract_adapters",
    "extract_layout_tree",
    "extract_transitions",
    "image_similarity",
    "infer_semantic_name",
    "inject_adapter_views",
    "is_obfuscated",
    "load_bundle",
    "load_corpus",
    "measure_and_layout",
    "merge_fragment_relations",
    "parse_layout",
    "parse_tree",
    "rasterize",
    "read_pgm",
    "render_page",
    "render_pages",
    "render_svg",
    "resolve_attribute",
    "resolve_caller_activities",
    "resolve_dynamic_components",
    "resolve_intent_target",
    "serialize_layout",
    "serialize_tree",
    "synthesize_static_layout",
    "tree_edit_distance",
    "validate_storyboard",
    "write_pgm",
]
