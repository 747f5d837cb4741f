"""Load an app bundle directory into the in-memory model.

A bundle is the documented interchange format that replaces a real
decompiler front-end:

    manifest.xml (or manifest.json)
    res/layout/*.xml
    res/values/strings.xml, colors.xml, dimens.xml   (each optional)
    code.model.json

Parsing is strict where the format is concerned (malformed files raise
:class:`ParseError`, dangling references raise :class:`LinkError`) and
deterministic: loading the same directory twice yields equal models.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from pathlib import Path

from .errors import BundleError, LinkError, ParseError
from .model import (
    ACTIVITY_BASES,
    ADAPTER_VIEW_TYPES,
    FRAGMENT_BASES,
    LAYOUT_DYNAMIC,
    LAYOUT_HYBRID,
    LAYOUT_STATIC,
    LEAF_TAGS,
    START_APIS,
    AppBundle,
    CallGraph,
    CallRef,
    ClassModel,
    CodeModel,
    ComponentNode,
    LayoutDocument,
    ManifestInfo,
    MethodModel,
    ResourceTable,
    Statement,
    is_viewgroup,
)

_ANDROID_PREFIX = "android:"
_ANDROID_URI = "http://schemas.android.com/apk/res/android"
_COLOR_RE = re.compile(r"^#[0-9A-Fa-f]{6}$")

# Required JSON fields per statement kind (beyond "kind" itself).
_STMT_FIELDS = {
    "start_activity": ("target", "api"),
    "new_intent": ("var", "target"),
    "fragment_commit": ("fragment", "via"),
    "set_adapter": ("var", "view_type", "source"),
    "add_view": ("parent", "child"),
    "inflate": ("layout", "var"),
    "new_component": ("var", "tag"),
    "set_attr": ("var", "attr", "value"),
    "call": ("class", "method"),
    "return_value": ("value",),
}


def _strip_ns(name: str) -> str:
    """Accept attributes with or without the android: prefix, in either the
    raw-prefix or the expanded {uri}local form."""
    if name.startswith("{"):
        return name.rsplit("}", 1)[1]
    if name.startswith(_ANDROID_PREFIX):
        return name[len(_ANDROID_PREFIX):]
    return name


def _parse_xml(path: Path) -> ET.Element:
    text = path.read_text(encoding="utf-8")
    if _ANDROID_PREFIX in text and "xmlns:android" not in text:
        # the dialect allows a bare android: prefix; declare it so the
        # document stays well-formed for the XML parser
        text = re.sub(r"<([A-Za-z][\w.-]*)",
                      f'<\\1 xmlns:android="{_ANDROID_URI}"', text, count=1)
    try:
        return ET.fromstring(text)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise ParseError(str(exc.msg if hasattr(exc, "msg") else exc),
                         file=str(path), line=line) from exc


def _element_to_component(elem: ET.Element) -> ComponentNode:
    attrs: dict[str, str] = {}
    for raw_name, value in elem.attrib.items():
        name = _strip_ns(raw_name)
        if name in attrs:
            # expat already rejects literal duplicates; this guards the
            # prefixed/unprefixed collision case ("android:text" + "text").
            raise ParseError(f"duplicate attribute {name!r} on <{elem.tag}>")
        attrs[name] = value
    return ComponentNode(elem.tag, attrs, [_element_to_component(c) for c in elem])


def parse_layout(path: Path) -> LayoutDocument:
    """Parse one layout file.  The root element must be a ViewGroup and
    leaf widgets must not nest children."""
    root_elem = _parse_xml(path)
    root = _element_to_component(root_elem)
    if not is_viewgroup(root.tag):
        raise ParseError(
            f"layout root must be a ViewGroup tag, got <{root.tag}>",
            file=str(path),
        )
    for node in root.iter_nodes():
        if node.tag in LEAF_TAGS and node.children:
            raise ParseError(
                f"leaf widget <{node.tag}> must not have children",
                file=str(path),
            )
    return LayoutDocument(name=path.stem, root=root)


def serialize_layout(root: ComponentNode) -> str:
    """Render a component tree back to the layout XML dialect.

    Attributes are written without the android: prefix, one element per
    line, so the output is diffable against hand-written layouts.
    """
    lines = ['<?xml version="1.0" encoding="utf-8"?>']

    def emit(node: ComponentNode, depth: int) -> None:
        pad = "    " * depth
        attrs = "".join(
            f' {name}="{_xml_escape(value)}"' for name, value in node.attributes.items()
        )
        if node.children:
            lines.append(f"{pad}<{node.tag}{attrs}>")
            for child in node.children:
                emit(child, depth + 1)
            lines.append(f"{pad}</{node.tag}>")
        else:
            lines.append(f"{pad}<{node.tag}{attrs} />")

    emit(root, 0)
    return "\n".join(lines) + "\n"


def _xml_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _attr(elem: ET.Element, local: str) -> str | None:
    for key, value in elem.attrib.items():
        if _strip_ns(key) == local:
            return value
    return None


def _parse_manifest_xml(path: Path) -> tuple[ManifestInfo, str | None]:
    root = _parse_xml(path)
    package = root.attrib.get("package")
    activities: list[str] = []
    main: str | None = None
    for elem in root.iter("activity"):
        name = _attr(elem, "name")
        if not name:
            raise ParseError("<activity> without a name", file=str(path))
        activities.append(name)
        if _attr(elem, "main") == "true":
            main = name
        for action in elem.iter("action"):
            if _attr(action, "name") == "android.intent.action.MAIN":
                main = name
    return ManifestInfo(tuple(activities), main), package


def _parse_manifest_json(path: Path) -> tuple[ManifestInfo, str | None]:
    data = _load_json(path)
    activities = data.get("activities", [])
    if not isinstance(activities, list) or not all(isinstance(a, str) for a in activities):
        raise ParseError("manifest 'activities' must be a list of strings", file=str(path))
    return ManifestInfo(tuple(activities), data.get("main_activity")), data.get("app_id")


def _load_json(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, file=str(path), line=exc.lineno) from exc


def _parse_resources(values_dir: Path) -> ResourceTable:
    strings: dict[str, str] = {}
    colors: dict[str, str] = {}
    dimens: dict[str, float] = {}

    def entries(file_name: str, tag: str):
        path = values_dir / file_name
        if not path.exists():
            return
        for elem in _parse_xml(path).iter(tag):
            name = elem.attrib.get("name")
            if name is None:
                raise ParseError(f"<{tag}> without a name", file=str(path))
            yield path, name, (elem.text or "")

    for path, name, text in entries("strings.xml", "string"):
        strings[name] = text
    for path, name, text in entries("colors.xml", "color"):
        if not _COLOR_RE.match(text.strip()):
            raise ParseError(f"color {name!r} must be #RRGGBB, got {text!r}", file=str(path))
        colors[name] = text.strip().upper()
    for path, name, text in entries("dimens.xml", "dimen"):
        value = text.strip()
        if value.endswith("dp"):
            value = value[:-2]
        try:
            dimens[name] = float(value)
        except ValueError:
            raise ParseError(f"dimen {name!r} must be a dp value, got {text!r}", file=str(path))
    return ResourceTable(strings, colors, dimens)


def _parse_value(raw, path: Path, where: str):
    """Decode a set_attr/return_value payload: literal, @ref, or call-ref."""
    if isinstance(raw, str):
        return raw
    if isinstance(raw, dict) and isinstance(raw.get("call"), list) and len(raw["call"]) == 2:
        cls, method = raw["call"]
        return CallRef(str(cls), str(method))
    raise ParseError(f"bad value {raw!r} in {where}", file=str(path))


def _parse_statement(raw: dict, path: Path, where: str) -> Statement:
    kind = raw.get("kind")
    if kind not in _STMT_FIELDS:
        raise ParseError(f"unknown statement kind {kind!r} in {where}", file=str(path))
    missing = [f for f in _STMT_FIELDS[kind] if f not in raw]
    if missing:
        raise ParseError(
            f"statement {kind!r} in {where} missing field(s) {', '.join(missing)}",
            file=str(path),
        )
    if kind == "start_activity" and raw["api"] not in START_APIS:
        raise ParseError(f"unknown start API {raw['api']!r} in {where}", file=str(path))
    if kind == "set_adapter" and raw["view_type"] not in ADAPTER_VIEW_TYPES:
        raise ParseError(f"unknown view type {raw['view_type']!r} in {where}", file=str(path))
    if kind == "fragment_commit" and raw["via"] not in ("replace", "add"):
        raise ParseError(f"fragment_commit via must be replace|add in {where}", file=str(path))
    value = raw.get("value")
    if kind in ("set_attr", "return_value"):
        value = _parse_value(value, path, where)
    return Statement(
        kind=kind,
        target=raw.get("target"),
        api=raw.get("api"),
        var=raw.get("var"),
        fragment=raw.get("fragment"),
        via=raw.get("via"),
        view_type=raw.get("view_type"),
        source=raw.get("source"),
        parent=raw.get("parent"),
        child=raw.get("child"),
        layout=raw.get("layout"),
        tag=raw.get("tag"),
        attr=raw.get("attr"),
        value=value,
        cls=raw.get("class"),
        method=raw.get("method"),
    )


def _derive_kind(raw: dict, declared: set[str], raw_by_name: dict[str, dict]) -> str:
    """Classify a class entry when no explicit kind is given.

    Precedence: manifest-declared activity, explicit kind, superclass chain
    (activity/fragment bases), nesting (outer_class present), plain.
    """
    name = raw["name"]
    if name in declared:
        return "activity"
    explicit = raw.get("kind")
    if explicit:
        return explicit
    seen = set()
    base = raw.get("extends")
    while base is not None and base not in seen:
        seen.add(base)
        if base in ACTIVITY_BASES:
            return "activity"
        if base in FRAGMENT_BASES:
            return "fragment"
        inner_raw = raw_by_name.get(base)
        if inner_raw is None:
            break
        if inner_raw["name"] in declared or inner_raw.get("kind") == "activity":
            return "activity"
        if inner_raw.get("kind") == "fragment":
            return "fragment"
        base = inner_raw.get("extends")
    if raw.get("outer_class"):
        return "inner"
    return "plain"


def _parse_code_model(path: Path, manifest: ManifestInfo,
                      layouts: dict[str, LayoutDocument]) -> tuple[CodeModel, list[str]]:
    data = _load_json(path)
    raw_classes = data.get("classes")
    if not isinstance(raw_classes, list):
        raise ParseError("code model must contain a 'classes' list", file=str(path))

    raw_by_name: dict[str, dict] = {}
    for raw in raw_classes:
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError("class entry without a name", file=str(path))
        if name in raw_by_name:
            raise ParseError(f"duplicate class {name!r}", file=str(path))
        raw_by_name[name] = raw

    declared = set(manifest.declared_activities)
    warnings: list[str] = []
    classes: list[ClassModel] = []
    for raw in raw_classes:
        name = raw["name"]
        kind = _derive_kind(raw, declared, raw_by_name)
        if kind not in ("activity", "fragment", "inner", "plain"):
            raise ParseError(f"class {name!r} has unknown kind {kind!r}", file=str(path))
        explicit = raw.get("kind")
        if name in declared and explicit not in (None, "activity"):
            raise ParseError(
                f"class {name!r} is a declared activity but has kind {explicit!r}",
                file=str(path),
            )
        layout = raw.get("layout")
        if layout is not None and layout not in layouts:
            raise LinkError("class layout reference does not resolve",
                            [f"{name} -> layout {layout}"])
        methods = []
        for raw_method in raw.get("methods", []):
            mname = raw_method.get("name")
            if not isinstance(mname, str) or not mname:
                raise ParseError(f"method without a name in class {name!r}", file=str(path))
            stmts = tuple(
                _parse_statement(s, path, f"{name}.{mname}")
                for s in raw_method.get("statements", [])
            )
            methods.append(MethodModel(mname, stmts))
        classes.append(ClassModel(
            name=name,
            kind=kind,
            methods=tuple(methods),
            outer_class=raw.get("outer_class"),
            layout=layout,
            undecompiled=bool(raw.get("undecompiled", False)),
        ))

    # Manifest activities with no code entry at all stand in as undecompiled
    # stubs so the rest of the pipeline can keep going.
    for name in manifest.declared_activities:
        if name not in raw_by_name:
            warnings.append(f"undecompiled: activity {name} has no class entry")
            classes.append(ClassModel(name=name, kind="activity", undecompiled=True))

    code = CodeModel(tuple(classes))
    unresolved = [
        f"{c.name} -> outer {c.outer_class}"
        for c in classes
        if c.kind == "inner" and (c.outer_class is None or c.outer_class not in code)
    ]
    if unresolved:
        raise LinkError("inner class outer reference does not resolve", unresolved)
    return code, warnings


def build_call_graph(code: CodeModel) -> CallGraph:
    """One deduplicated edge per `call` statement.

    Callees must exist in the code model; calls into undecompiled classes are
    admitted without method verification (there is nothing to verify against).
    """
    edges: set[tuple] = set()
    unresolved: list[str] = []
    for cls in code.classes:
        for method in cls.methods:
            for stmt in method.statements:
                if stmt.kind != "call":
                    continue
                callee_cls = code.get(stmt.cls)
                if callee_cls is None:
                    unresolved.append(f"{cls.name}.{method.name} -> {stmt.cls}.{stmt.method}")
                    continue
                if not callee_cls.undecompiled and callee_cls.method(stmt.method) is None:
                    unresolved.append(f"{cls.name}.{method.name} -> {stmt.cls}.{stmt.method}")
                    continue
                edges.add(((cls.name, method.name), (stmt.cls, stmt.method)))
    if unresolved:
        raise LinkError("call target does not resolve", unresolved)
    return CallGraph(edges)


def detect_layout_type(bundle: AppBundle) -> str:
    """App-level layout classification.

    hybrid if any code inflates a layout file (inflation implies static
    reuse), dynamic if components are built in code without inflation,
    static otherwise.
    """
    return classify_statements(
        stmt for cls in bundle.code.classes for m in cls.methods for stmt in m.statements
    )


def classify_statements(statements) -> str:
    saw_dynamic = False
    for stmt in statements:
        if stmt.kind == "inflate":
            return LAYOUT_HYBRID
        if stmt.kind in ("add_view", "new_component"):
            saw_dynamic = True
    return LAYOUT_DYNAMIC if saw_dynamic else LAYOUT_STATIC


def load_bundle(path) -> AppBundle:
    """Parse a bundle directory into an immutable :class:`AppBundle`."""
    root = Path(path)
    if not root.is_dir():
        raise BundleError(f"bundle directory not found: {root}")

    manifest_xml = root / "manifest.xml"
    manifest_json = root / "manifest.json"
    if manifest_xml.exists():
        manifest, app_id = _parse_manifest_xml(manifest_xml)
    elif manifest_json.exists():
        manifest, app_id = _parse_manifest_json(manifest_json)
    else:
        raise BundleError(f"missing manifest.xml/manifest.json in {root}")
    if manifest.declared_activities:
        if manifest.main_activity is not None and \
                manifest.main_activity not in manifest.declared_activities:
            raise ParseError(
                f"main activity {manifest.main_activity!r} is not declared",
                file=str(manifest_xml if manifest_xml.exists() else manifest_json),
            )

    layout_dir = root / "res" / "layout"
    if not layout_dir.is_dir():
        raise BundleError(f"missing res/layout/ in {root}")
    layouts: dict[str, LayoutDocument] = {}
    for layout_path in sorted(layout_dir.glob("*.xml")):
        doc = parse_layout(layout_path)
        layouts[doc.name] = doc

    resources = _parse_resources(root / "res" / "values")

    code_path = root / "code.model.json"
    if not code_path.exists():
        raise BundleError(f"missing code.model.json in {root}")
    code, warnings = _parse_code_model(code_path, manifest, layouts)

    call_graph = build_call_graph(code)

    return AppBundle(
        app_id=app_id or root.name,
        manifest=manifest,
        layouts=layouts,
        resources=resources,
        code=code,
        call_graph=call_graph,
        warnings=tuple(warnings),
    )
