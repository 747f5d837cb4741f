"""Static UI page synthesis.

Folds dynamically constructed components into one fully static component
tree per activity or fragment: copies the declared layout, replays the
view-building statements of onCreate, resolves attribute values down to
literals, and plants dummy rows under adapter-backed views.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MissingLayout, UnresolvedAttribute
from .model import (
    AppBundle,
    CallRef,
    ComponentNode,
    MethodModel,
    is_viewgroup,
)

PROV_STATIC = "static"
PROV_DYNAMIC = "converted_dynamic"
PROV_DUMMY = "adapter_dummy"

ROOT_VAR = "root"
CALL_DEPTH_LIMIT = 5


@dataclass(frozen=True)
class DummyDataSpec:
    """Content planted into adapter rows: N rows, templated text, and a
    label for image placeholders."""

    row_count: int = 5
    text_template: str = "Item {i}"
    image_label: str = "IMG"

    def __post_init__(self):
        if self.row_count < 1:
            raise ValueError("row_count must be >= 1")


@dataclass
class StaticLayoutTree:
    """A synthesized page: owner class, component tree, and per-node
    provenance keyed by the preorder node ids assigned at finalize time."""

    owner: str
    root: ComponentNode
    provenance: dict[int, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    # provenance by object identity, carried between synthesis passes;
    # remapped onto nids whenever the tree is finalized
    _origins: dict[int, str] = field(default_factory=dict, repr=False, compare=False)

    def mark(self, node: ComponentNode, origin: str, recursive: bool = True) -> None:
        nodes = node.iter_nodes() if recursive else (node,)
        for n in nodes:
            self._origins[id(n)] = origin

    def finalize(self) -> "StaticLayoutTree":
        self.provenance = {}
        for nid, node in enumerate(self.root.iter_nodes()):
            node.nid = nid
            self.provenance[nid] = self._origins.get(id(node), PROV_DYNAMIC)
        return self


def resolve_attribute(value, bundle: AppBundle, _depth: int = 0) -> str:
    """Chase a set_attr value to a literal.

    Literals pass through; `@kind/name` references hit the resource table;
    call references follow the callee's return_value, at most
    CALL_DEPTH_LIMIT hops deep.
    """
    if isinstance(value, CallRef):
        if _depth >= CALL_DEPTH_LIMIT:
            raise UnresolvedAttribute(
                f"call chain deeper than {CALL_DEPTH_LIMIT} hops at "
                f"{value.cls}.{value.method}"
            )
        cls = bundle.code.get(value.cls)
        method = cls.method(value.method) if cls is not None else None
        if method is None:
            raise UnresolvedAttribute(
                f"call target {value.cls}.{value.method} is not in the code model"
            )
        returns = [s for s in method.statements if s.kind == "return_value"]
        if not returns:
            raise UnresolvedAttribute(
                f"{value.cls}.{value.method} has no return_value statement"
            )
        return resolve_attribute(returns[0].value, bundle, _depth + 1)
    if isinstance(value, str) and value.startswith("@"):
        kind, _, name = value[1:].partition("/")
        try:
            return bundle.resources.lookup(kind, name)
        except KeyError as exc:
            raise UnresolvedAttribute(f"undeclared resource {value!r}") from exc
    if isinstance(value, str):
        return value
    raise UnresolvedAttribute(f"unsupported attribute value {value!r}")


def _resolve_node_attributes(node: ComponentNode, bundle: AppBundle,
                             warnings: list[str], owner: str) -> None:
    """Resolve resource references inside a copied static layout in place.

    Id references stay as written: they are structural anchors, not values.
    """
    for n in node.iter_nodes():
        for attr, value in list(n.attributes.items()):
            if value.startswith(("@+id/", "@id/")):
                continue
            if value.startswith("@"):
                try:
                    n.attributes[attr] = resolve_attribute(value, bundle)
                except UnresolvedAttribute as exc:
                    warnings.append(f"unresolved-attribute: {owner}: {attr}: {exc}")
                    n.attributes[attr] = ""


def resolve_dynamic_components(method: MethodModel, bundle: AppBundle,
                               warnings: list[str] | None = None,
                               ) -> list[tuple[ComponentNode, "ComponentNode | str"]]:
    """Replay the view statements of one method.

    Returns attachment events in statement order: (component, parent) where
    parent is either a bound component or the ROOT_VAR sentinel for the
    activity's own container.  Adding an inflated variable grafts the
    inflated file's children, not its root element, so a hybrid page folds
    flat against its static twin.  References to unbound variables are
    skipped with a warning.
    """
    sink = warnings if warnings is not None else []
    env: dict[str, ComponentNode] = {}
    inflated: set[str] = set()
    attachments: list[tuple[ComponentNode, ComponentNode | str]] = []
    for stmt in method.statements:
        if stmt.kind == "new_component":
            env[stmt.var] = ComponentNode(stmt.tag)
            inflated.discard(stmt.var)
        elif stmt.kind == "inflate":
            if stmt.layout not in bundle.layouts:
                sink.append(f"inflate-skipped: unknown layout {stmt.layout!r}")
                continue
            env[stmt.var] = bundle.layouts[stmt.layout].root.copy()
            inflated.add(stmt.var)
        elif stmt.kind == "set_attr":
            node = env.get(stmt.var)
            if node is None:
                sink.append(f"set_attr-skipped: unbound variable {stmt.var!r}")
                continue
            try:
                node.attributes[stmt.attr] = resolve_attribute(stmt.value, bundle)
            except UnresolvedAttribute as exc:
                sink.append(f"unresolved-attribute: {stmt.attr}: {exc}")
                node.attributes[stmt.attr] = ""
        elif stmt.kind == "add_view":
            child = env.get(stmt.child)
            if child is None:
                sink.append(f"add_view-skipped: unbound component {stmt.child!r}")
                continue
            parent: ComponentNode | str
            if stmt.parent == ROOT_VAR and ROOT_VAR not in env:
                parent = ROOT_VAR
            elif stmt.parent in env:
                parent = env[stmt.parent]
            else:
                sink.append(f"add_view-skipped: unbound parent {stmt.parent!r}")
                continue
            if stmt.child in inflated:
                attachments.extend((c, parent) for c in child.children)
            else:
                attachments.append((child, parent))
    return attachments


def synthesize_static_layout(act: str, bundle: AppBundle, graph) -> StaticLayoutTree:
    """Build the static page for one activity or fragment node.

    Static kind copies the declared layout; dynamic kind replays onCreate
    into a synthetic container; hybrid does both.  Resource references are
    resolved in every path so the result renders without the bundle.
    """
    cls = bundle.code.get(act)
    kind = graph.layout_kind[act]
    tree = StaticLayoutTree(owner=act, root=ComponentNode("LinearLayout"))

    if kind == "static":
        if cls is None or cls.layout is None:
            raise MissingLayout(f"{act} has static layout kind but no layout file")
        tree.root = bundle.layouts[cls.layout].root.copy()
        _resolve_node_attributes(tree.root, bundle, tree.warnings, act)
        tree.mark(tree.root, PROV_STATIC)
        return tree.finalize()

    synthetic_root = cls.layout is None
    if synthetic_root:
        # no declared file to build into: synthetic vertical container
        tree.root = ComponentNode("LinearLayout", {"orientation": "vertical"})
        tree.mark(tree.root, PROV_STATIC, recursive=False)
    else:
        tree.root = bundle.layouts[cls.layout].root.copy()
        tree.mark(tree.root, PROV_STATIC)

    on_create = cls.method("onCreate")
    if on_create is None:
        if kind == "dynamic":
            tree.warnings.append(
                f"empty-page: {act} is dynamic but has no onCreate to analyze"
            )
        _resolve_node_attributes(tree.root, bundle, tree.warnings, act)
        return tree.finalize()

    attachments = resolve_dynamic_components(on_create, bundle, tree.warnings)
    attached: set[int] = set()
    for child, parent in attachments:
        if id(child) in attached:
            tree.warnings.append(
                f"add_view-skipped: {act}: component {child.tag} attached twice"
            )
            continue
        attached.add(id(child))
        target = tree.root if parent == ROOT_VAR else parent
        target.children.append(child)
        tree.mark(child, PROV_DYNAMIC)

    # one resolution pass over the assembled page covers both the static
    # skeleton and any children grafted in from inflated files
    _resolve_node_attributes(tree.root, bundle, tree.warnings, act)

    if synthetic_root and kind == "dynamic" and len(tree.root.children) == 1:
        only = tree.root.children[0]
        if is_viewgroup(only.tag):
            # single dynamic container: drop the synthetic wrapper so the
            # tree folds flat against a hand-written static equivalent
            tree.root = only
    return tree.finalize()


def inject_adapter_views(tree: StaticLayoutTree, adapters, spec: DummyDataSpec,
                         bundle: AppBundle) -> StaticLayoutTree:
    """Give every adapter-backed view `spec.row_count` dummy rows.

    Rows copy the bound row layout; TextViews get templated text, ImageViews
    get the placeholder label.  A binding with no matching view in the tree
    appends a fresh view of that type to the root, with a warning.
    """
    for binding in adapters:
        if binding.activity != tree.owner:
            continue
        host = None
        for node in tree.root.iter_nodes():
            if node.tag == binding.view_type and not _has_dummy_rows(tree, node):
                host = node
                break
        if host is None:
            host = ComponentNode(binding.view_type)
            tree.root.children.append(host)
            tree.mark(host, PROV_DYNAMIC, recursive=False)
            tree.warnings.append(
                f"adapter-host-added: {tree.owner} has no {binding.view_type}; "
                f"appended one to the root"
            )
        row_layout = bundle.layouts[binding.layout].root
        for i in range(1, spec.row_count + 1):
            row = row_layout.copy()
            _resolve_node_attributes(row, bundle, tree.warnings, tree.owner)
            for node in row.iter_nodes():
                if node.tag == "TextView":
                    node.attributes["text"] = spec.text_template.format(i=i)
                elif node.tag == "ImageView":
                    node.attributes["placeholder"] = spec.image_label
            host.children.append(row)
            tree.mark(row, PROV_DUMMY)
    return tree.finalize()


def _has_dummy_rows(tree: StaticLayoutTree, node: ComponentNode) -> bool:
    return any(tree._origins.get(id(c)) == PROV_DUMMY for c in node.children)
