"""In-memory model of a decompiled app bundle.

Everything here is produced once by :mod:`storyboard.bundle` and treated as
immutable by the downstream stages, so a loaded bundle can be shared freely
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Tags that may act as containers.  Anything else is a leaf widget.
VIEWGROUP_TAGS = frozenset({
    "LinearLayout",
    "RelativeLayout",
    "FrameLayout",
    "ConstraintLayout",
    "ScrollView",
    "ListView",
    "GridView",
    "RecyclerView",
    "ViewPager",
})

LEAF_TAGS = frozenset({"TextView", "EditText", "Button", "ImageView", "View"})

ADAPTER_VIEW_TYPES = ("ListView", "GridView", "RecyclerView", "ViewPager")

START_APIS = ("startActivity", "startActivityForResult", "startActivityIfNeeded")

# Superclass names that mark a class as an activity/fragment even when the
# manifest does not list it and no explicit kind is given.
ACTIVITY_BASES = frozenset({
    "Activity", "AppCompatActivity", "FragmentActivity", "ListActivity",
    "PreferenceActivity",
})
FRAGMENT_BASES = frozenset({
    "Fragment", "DialogFragment", "ListFragment", "PreferenceFragment",
})

LAYOUT_STATIC = "static"
LAYOUT_DYNAMIC = "dynamic"
LAYOUT_HYBRID = "hybrid"


def is_viewgroup(tag: str) -> bool:
    return tag in VIEWGROUP_TAGS


def simple_name(class_name: str) -> str:
    """Strip any package prefix; `com.app.Main` and `Main` both yield `Main`."""
    return class_name.rsplit(".", 1)[-1]


@dataclass
class ComponentNode:
    """One widget in a layout tree: a tag, its attributes, and ordered children.

    ``nid`` is an identity handle used by provenance maps; it never takes part
    in structural comparison.
    """

    tag: str
    attributes: dict[str, str] = field(default_factory=dict)
    children: list["ComponentNode"] = field(default_factory=list)
    nid: int = field(default=-1, compare=False, repr=False)

    def copy(self) -> "ComponentNode":
        return ComponentNode(
            self.tag,
            dict(self.attributes),
            [c.copy() for c in self.children],
        )

    def iter_nodes(self):
        """Preorder traversal over this node and all descendants."""
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass(frozen=True)
class LayoutDocument:
    """A parsed layout file: the file stem and the component tree."""

    name: str
    root: ComponentNode


@dataclass(frozen=True)
class ManifestInfo:
    declared_activities: tuple[str, ...]
    main_activity: str | None


class ResourceTable:
    """Named resources (strings, colors, dimens).

    Lookups are total over the declared names: asking for an undeclared name
    raises :class:`KeyError` so callers can decide whether a placeholder is
    acceptable.  There is deliberately no defaulting here.
    """

    def __init__(self, strings=None, colors=None, dimens=None):
        self.strings: dict[str, str] = dict(strings or {})
        self.colors: dict[str, str] = dict(colors or {})
        self.dimens: dict[str, float] = dict(dimens or {})

    def lookup(self, kind: str, name: str) -> str:
        """Resolve a `@kind/name` reference to its attribute-value string."""
        if kind == "string":
            return self.strings[name]
        if kind == "color":
            return self.colors[name]
        if kind == "dimen":
            value = self.dimens[name]
            return f"{value:g}dp"
        raise KeyError(f"unknown resource kind {kind!r}")


@dataclass(frozen=True)
class CallRef:
    """A `set_attr`/`return_value` value obtained by calling another method."""

    cls: str
    method: str


AttrValue = "str | CallRef"


@dataclass(frozen=True)
class Statement:
    """One statement of the decompiled-code interchange schema.

    The schema is a flat record: ``kind`` selects which of the optional
    fields are meaningful.  See README for the JSON encoding.
    """

    kind: str
    target: str | None = None        # start_activity, new_intent
    api: str | None = None           # start_activity
    var: str | None = None           # new_intent/set_adapter/inflate/new_component/set_attr
    fragment: str | None = None      # fragment_commit
    via: str | None = None           # fragment_commit: replace | add
    view_type: str | None = None     # set_adapter
    source: str | None = None        # set_adapter
    parent: str | None = None        # add_view
    child: str | None = None         # add_view
    layout: str | None = None        # inflate
    tag: str | None = None           # new_component
    attr: str | None = None          # set_attr
    value: "str | CallRef | None" = None   # set_attr, return_value
    cls: str | None = None           # call
    method: str | None = None        # call


@dataclass(frozen=True)
class MethodModel:
    name: str
    statements: tuple[Statement, ...]


@dataclass(frozen=True)
class ClassModel:
    """A class of the decompiled app.

    ``kind`` is one of activity | fragment | inner | plain.  ``layout`` is the
    name of the statically bound layout file (the `setContentView` analogue);
    it is optional and absent for purely dynamic classes.
    """

    name: str
    kind: str
    methods: tuple[MethodModel, ...] = ()
    outer_class: str | None = None
    layout: str | None = None
    undecompiled: bool = False

    def method(self, name: str) -> MethodModel | None:
        for m in self.methods:
            if m.name == name:
                return m
        return None


@dataclass(frozen=True)
class CodeModel:
    classes: tuple[ClassModel, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {c.name: c for c in self.classes})

    def get(self, name: str) -> ClassModel | None:
        return self._by_name.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name


MethodKey = tuple[str, str]


class CallGraph:
    """Directed graph over (class, method) pairs, one edge per distinct call."""

    def __init__(self, edges=()):
        self.edges: set[tuple[MethodKey, MethodKey]] = set(edges)
        self._callers: dict[MethodKey, set[MethodKey]] = {}
        for caller, callee in self.edges:
            self._callers.setdefault(callee, set()).add(caller)

    def callers_of(self, key: MethodKey) -> set[MethodKey]:
        return self._callers.get(key, set())

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, CallGraph):
            return NotImplemented
        return self.edges == other.edges


@dataclass(frozen=True)
class AppBundle:
    """Everything parsed from one bundle directory."""

    app_id: str
    manifest: ManifestInfo
    layouts: dict[str, LayoutDocument]
    resources: ResourceTable
    code: CodeModel
    call_graph: CallGraph
    warnings: tuple[str, ...] = ()

    def activities(self) -> list[ClassModel]:
        return [c for c in self.code.classes if c.kind == "activity"]

    def fragments(self) -> list[ClassModel]:
        return [c for c in self.code.classes if c.kind == "fragment"]
