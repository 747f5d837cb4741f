"""Activity transition graph extraction.

Walks every method of every class looking for the three activity-start
APIs, attributes each start site to the activities that can trigger it
(directly, through an inner class, through a fragment, or by backward
call-graph reachability), and collects the rendering sources: adapter
bindings and per-class layout kinds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bundle import classify_statements
from .errors import UnresolvedTransition
from .model import (
    AppBundle,
    CallGraph,
    ClassModel,
    CodeModel,
    MethodModel,
    Statement,
)

ORIGIN_DIRECT = "direct"
ORIGIN_INNER = "inner_class"
ORIGIN_FRAGMENT = "fragment_merged"
ORIGIN_BACKWARD = "backward_cg"


@dataclass(frozen=True)
class TransitionEdge:
    """A deduplicated activity-to-activity transition.

    ``origins`` is the union of the extraction branches that discovered the
    pair, sorted for determinism.
    """

    source: str
    target: str
    origins: tuple[str, ...]


@dataclass(frozen=True)
class AdapterBinding:
    """One ⟨owner activity/fragment, scrollable view type, row layout⟩ tuple."""

    activity: str
    view_type: str
    layout: str


@dataclass(frozen=True)
class FragmentRelation:
    """A fragment, the activity hosting it (if identified), and the
    activities the fragment itself starts."""

    host: str | None
    fragment: str
    started_targets: tuple[str, ...]


@dataclass
class TransitionGraph:
    nodes: dict[str, str] = field(default_factory=dict)   # name -> activity|fragment
    edges: list[TransitionEdge] = field(default_factory=list)
    adapters: list[AdapterBinding] = field(default_factory=list)
    layout_kind: dict[str, str] = field(default_factory=dict)
    fragment_relations: list[FragmentRelation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def edge_pairs(self) -> set[tuple[str, str]]:
        return {(e.source, e.target) for e in self.edges}

    def activity_nodes(self) -> list[str]:
        return [n for n, kind in self.nodes.items() if kind == "activity"]

    def fragment_nodes(self) -> list[str]:
        return [n for n, kind in self.nodes.items() if kind == "fragment"]

    def to_dict(self, inferences=None) -> dict:
        """Stable-order dict matching the atg.json interface.

        `inferences` optionally maps node names to InferenceResults; only
        genuinely inferred names fill the placeholder field.
        """

        def inferred(name: str) -> str | None:
            result = (inferences or {}).get(name)
            if result is not None and result.matched_by in ("keyword", "top_frequency"):
                return result.inferred_name
            return None

        return {
            "nodes": [
                {"name": name, "kind": kind, "inferred_name": inferred(name)}
                for name, kind in self.nodes.items()
            ],
            "edges": [
                {"source": e.source, "target": e.target, "origins": list(e.origins)}
                for e in self.edges
            ],
            "adapters": [
                {"activity": a.activity, "view_type": a.view_type, "layout": a.layout}
                for a in self.adapters
            ],
            "fragment_relations": [
                {
                    "host": r.host,
                    "fragment": r.fragment,
                    "started_targets": list(r.started_targets),
                }
                for r in self.fragment_relations
            ],
            "layout_kind": dict(self.layout_kind),
            "warnings": list(self.warnings),
        }


def resolve_intent_target(method: MethodModel, stmt: Statement,
                          known_classes=None) -> str:
    """Resolve the class a start statement targets.

    A target naming a known class is taken literally; otherwise it is
    treated as an intent variable and resolved by walking backward through
    the method to the `new_intent` statement that bound it.
    """
    if stmt.kind != "start_activity":
        raise ValueError("resolve_intent_target expects a start_activity statement")
    if known_classes is not None and stmt.target in known_classes:
        return stmt.target
    index = method.statements.index(stmt)
    for earlier in reversed(method.statements[:index]):
        if earlier.kind == "new_intent" and earlier.var == stmt.target:
            return earlier.target
    if known_classes is None:
        # Without class knowledge, trust the schema's binding discipline.
        return stmt.target
    raise UnresolvedTransition(
        f"start target {stmt.target!r} in {method.name} has no intent binding"
    )


def resolve_caller_activities(method: tuple[str, str], cg: CallGraph,
                              code: CodeModel) -> set[str]:
    """All activity classes from which `method` is reachable over reversed
    call edges, the method's own class included.

    A visited set guarantees termination on cyclic call graphs.
    """
    activities: set[str] = set()
    visited: set[tuple[str, str]] = set()
    stack = [method]
    while stack:
        key = stack.pop()
        if key in visited:
            continue
        visited.add(key)
        cls = code.get(key[0])
        if cls is not None and cls.kind == "activity":
            activities.add(cls.name)
        stack.extend(cg.callers_of(key))
    return activities


def _outer_chain(cls: ClassModel, code: CodeModel) -> list[ClassModel]:
    """The class itself followed by its enclosing classes, innermost first."""
    chain = [cls]
    seen = {cls.name}
    current = cls
    while current.outer_class is not None:
        outer = code.get(current.outer_class)
        if outer is None or outer.name in seen:
            break
        chain.append(outer)
        seen.add(outer.name)
        current = outer
    return chain


def _nearest_of_kind(cls: ClassModel, code: CodeModel, kind: str) -> ClassModel | None:
    for candidate in _outer_chain(cls, code):
        if candidate.kind == kind:
            return candidate
    return None


def _host_activities(cls: ClassModel, method: MethodModel,
                     bundle: AppBundle) -> list[str]:
    """Activities that start a fragment committed in `cls.method`.

    Combines the enclosing-class chain (covers commits inside inner
    classes) with backward call-graph reachability (covers commits made
    from helper methods).
    """
    hosts: dict[str, None] = {}
    enclosing = _nearest_of_kind(cls, bundle.code, "activity")
    if enclosing is not None:
        hosts[enclosing.name] = None
    for name in sorted(resolve_caller_activities(
            (cls.name, method.name), bundle.call_graph, bundle.code)):
        hosts[name] = None
    return list(hosts)


def _fragment_source(stmt: Statement, code: CodeModel) -> str | None:
    """The fragment a statement starts, if it starts one."""
    if stmt.kind == "fragment_commit":
        return stmt.fragment
    if stmt.kind == "set_adapter":
        source_cls = code.get(stmt.source)
        if source_cls is not None and source_cls.kind == "fragment":
            return stmt.source
    return None


def extract_adapters(bundle: AppBundle, warnings: list[str] | None = None) -> list[AdapterBinding]:
    """Adapter tuples for every set_adapter whose source is a row layout.

    Sources naming a fragment class feed fragment relations instead and are
    skipped here.  Variable sources are resolved by a backward walk to the
    `inflate` statement that bound them.
    """
    sink = warnings if warnings is not None else []
    bindings: list[AdapterBinding] = []
    for cls in bundle.code.classes:
        for method in cls.methods:
            for index, stmt in enumerate(method.statements):
                if stmt.kind != "set_adapter":
                    continue
                if _fragment_source(stmt, bundle.code) is not None:
                    continue
                layout = _resolve_adapter_layout(stmt, method, index, bundle)
                if layout is None:
                    sink.append(
                        f"adapter-skipped: {cls.name}.{method.name} source "
                        f"{stmt.source!r} does not resolve to a layout"
                    )
                    continue
                owners = _adapter_owners(cls, method, bundle)
                if not owners:
                    sink.append(
                        f"adapter-skipped: {cls.name}.{method.name} has no "
                        f"activity or fragment owner"
                    )
                    continue
                for owner in owners:
                    binding = AdapterBinding(owner, stmt.view_type, layout)
                    if binding not in bindings:
                        bindings.append(binding)
    return bindings


def _resolve_adapter_layout(stmt: Statement, method: MethodModel, index: int,
                            bundle: AppBundle) -> str | None:
    if stmt.source in bundle.layouts:
        return stmt.source
    for earlier in reversed(method.statements[:index]):
        if earlier.kind == "inflate" and earlier.var == stmt.source:
            return earlier.layout if earlier.layout in bundle.layouts else None
    return None


def _adapter_owners(cls: ClassModel, method: MethodModel, bundle: AppBundle) -> list[str]:
    if cls.kind in ("activity", "fragment"):
        return [cls.name]
    for candidate in _outer_chain(cls, bundle.code)[1:]:
        if candidate.kind in ("activity", "fragment"):
            return [candidate.name]
    return sorted(resolve_caller_activities(
        (cls.name, method.name), bundle.call_graph, bundle.code))


def merge_fragment_relations(graph: TransitionGraph,
                             relations: list[FragmentRelation]) -> TransitionGraph:
    """Fold fragment-started transitions into their host activities.

    For each relation with a known host, every target the fragment starts
    becomes a host→target edge.  Hostless relations are kept for rendering
    but merge nothing.
    """
    pair_origins: dict[tuple[str, str], set[str]] = {
        (e.source, e.target): set(e.origins) for e in graph.edges
    }
    for relation in relations:
        if relation.fragment not in graph.nodes:
            graph.nodes[relation.fragment] = "fragment"
        if relation.host is None:
            if relation.started_targets:
                graph.warnings.append(
                    f"fragment-unhosted: {relation.fragment} starts "
                    f"{', '.join(relation.started_targets)} but no host activity was found"
                )
            continue
        for target in relation.started_targets:
            pair_origins.setdefault((relation.host, target), set()).add(ORIGIN_FRAGMENT)
    graph.fragment_relations.extend(relations)
    graph.edges = [
        TransitionEdge(src, tgt, tuple(sorted(origins)))
        for (src, tgt), origins in sorted(pair_origins.items())
    ]
    return graph


def extract_transitions(bundle: AppBundle) -> TransitionGraph:
    """Run the full extraction over a loaded bundle.

    Returns the transition graph after fragment merging, with adapter
    bindings and per-class layout kinds attached.
    """
    code = bundle.code
    graph = TransitionGraph()
    class_names = {c.name for c in code.classes}
    pair_origins: dict[tuple[str, str], set[str]] = {}

    for cls in code.classes:
        if cls.kind == "activity":
            graph.nodes[cls.name] = "activity"

    frag_targets: dict[str, list[str]] = {}
    frag_hosts: dict[str, dict[str, None]] = {}

    def add_pair(source: str, target: str, origin: str) -> None:
        pair_origins.setdefault((source, target), set()).add(origin)

    def resolve_target(cls: ClassModel, method: MethodModel, stmt: Statement) -> str | None:
        try:
            target = resolve_intent_target(method, stmt, class_names)
        except UnresolvedTransition as exc:
            graph.warnings.append(f"unresolved-transition: {cls.name}.{method.name}: {exc}")
            return None
        target_cls = code.get(target)
        if target_cls is None:
            graph.warnings.append(
                f"unresolved-transition: {cls.name}.{method.name} starts "
                f"unknown class {target!r}"
            )
            return None
        if target_cls.kind != "activity":
            graph.warnings.append(
                f"unresolved-transition: {cls.name}.{method.name} starts "
                f"{target!r} which is not an activity"
            )
            return None
        return target

    for cls in code.classes:
        if cls.undecompiled:
            continue
        for method in cls.methods:
            for stmt in method.statements:
                if stmt.kind == "start_activity":
                    target = resolve_target(cls, method, stmt)
                    if target is None:
                        continue
                    # Branch selection mirrors the extraction algorithm,
                    # with one refinement: an inner class nested (at any
                    # depth) inside a fragment is treated as fragment code.
                    fragment = _nearest_of_kind(cls, code, "fragment")
                    if fragment is not None:
                        frag_targets.setdefault(fragment.name, []).append(target)
                        continue
                    if cls.kind == "inner":
                        outer_act = _nearest_of_kind(cls, code, "activity")
                        if outer_act is not None:
                            add_pair(outer_act.name, target, ORIGIN_INNER)
                            continue
                        # inner class of a plain helper: fall through to the
                        # call-graph branch below
                    callers = resolve_caller_activities(
                        (cls.name, method.name), bundle.call_graph, code)
                    if not callers:
                        graph.warnings.append(
                            f"unresolved-transition: no activity reaches "
                            f"{cls.name}.{method.name} (starts {target})"
                        )
                        continue
                    for act in sorted(callers):
                        origin = ORIGIN_DIRECT if act == cls.name else ORIGIN_BACKWARD
                        add_pair(act, target, origin)

                fragment_name = _fragment_source(stmt, code)
                if fragment_name is not None:
                    frag_cls = code.get(fragment_name)
                    if frag_cls is None or frag_cls.kind != "fragment":
                        graph.warnings.append(
                            f"fragment-skipped: {cls.name}.{method.name} starts "
                            f"{fragment_name!r} which is not a known fragment"
                        )
                        continue
                    hosts = frag_hosts.setdefault(fragment_name, {})
                    if _nearest_of_kind(cls, code, "fragment") is not None:
                        graph.warnings.append(
                            f"fragment-nested: {fragment_name} is started inside "
                            f"fragment code ({cls.name}.{method.name}); not merged"
                        )
                        continue
                    for host in _host_activities(cls, method, bundle):
                        hosts[host] = None

    relations: list[FragmentRelation] = []
    for fragment in {**frag_hosts, **{f: None for f in frag_targets}}:
        targets = tuple(frag_targets.get(fragment, ()))
        hosts = list(frag_hosts.get(fragment, {}))
        if hosts:
            relations.extend(
                FragmentRelation(host, fragment, targets) for host in hosts
            )
        else:
            relations.append(FragmentRelation(None, fragment, targets))

    graph.edges = [
        TransitionEdge(src, tgt, tuple(sorted(origins)))
        for (src, tgt), origins in sorted(pair_origins.items())
    ]
    merge_fragment_relations(graph, relations)

    adapter_warnings: list[str] = []
    graph.adapters = extract_adapters(bundle, adapter_warnings)
    graph.warnings.extend(adapter_warnings)

    for name in graph.nodes:
        cls = code.get(name)
        stmts = [s for m in (cls.methods if cls else ()) for s in m.statements]
        graph.layout_kind[name] = classify_statements(iter(stmts))

    return graph
