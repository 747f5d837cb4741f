"""Storyboard assembly and emission.

Merges the transition graph, rendered pages, and inferred names into one
JSON document plus its sibling artifacts (pages, code excerpts, synthesized
layouts, viewer assets).  Output is deterministic: no timestamps, stable
key order, stable file set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .bundle import serialize_layout
from .errors import StoryboardError
from .metrics import write_pgm
from .model import AppBundle, CallRef, ClassModel, Statement

PLACEHOLDER_SVG = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="720" height="1280" '
    'viewBox="0 0 720 1280">\n'
    '<rect x="0" y="0" width="720" height="1280" fill="#FFFFFF" stroke="none"/>\n'
    "</svg>\n"
)


@dataclass
class ActivityCard:
    class_name: str
    display_name: str
    page_svg_path: str
    layout_code: str
    activity_code: str
    method_hierarchy: list[tuple[str, str]] = field(default_factory=list)
    fragment_pages: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "class_name": self.class_name,
            "display_name": self.display_name,
            "page": self.page_svg_path,
            "layout_code": self.layout_code,
            "activity_code": self.activity_code,
            "method_hierarchy": [list(edge) for edge in self.method_hierarchy],
        }
        if self.fragment_pages:
            out["fragment_pages"] = self.fragment_pages
        return out


@dataclass
class Storyboard:
    app_id: str
    nodes: list[ActivityCard] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    # emission payload: artifact path -> content, not part of the document
    page_documents: dict[str, str] = field(default_factory=dict)
    page_rasters: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "app_id": self.app_id,
            "nodes": [card.to_dict() for card in self.nodes],
            "edges": [list(edge) for edge in self.edges],
            "warnings": list(self.warnings),
        }


def _format_value(value) -> str:
    if isinstance(value, CallRef):
        return f"{value.cls}.{value.method}()"
    return json.dumps(value)


def _format_statement(stmt: Statement) -> str:
    if stmt.kind == "start_activity":
        return f"{stmt.api}({stmt.target})"
    if stmt.kind == "new_intent":
        return f"{stmt.var} = new Intent({stmt.target})"
    if stmt.kind == "fragment_commit":
        return f"transaction.{stmt.via}({stmt.fragment}).commit()"
    if stmt.kind == "set_adapter":
        return f"{stmt.var}.setAdapter({stmt.view_type}, {stmt.source})"
    if stmt.kind == "add_view":
        return f"{stmt.parent}.addView({stmt.child})"
    if stmt.kind == "inflate":
        return f"{stmt.var} = inflate({stmt.layout})"
    if stmt.kind == "new_component":
        return f"{stmt.var} = new {stmt.tag}()"
    if stmt.kind == "set_attr":
        return f"{stmt.var}.{stmt.attr} = {_format_value(stmt.value)}"
    if stmt.kind == "call":
        return f"{stmt.cls}.{stmt.method}()"
    if stmt.kind == "return_value":
        return f"return {_format_value(stmt.value)}"
    return stmt.kind


def format_activity_code(cls: ClassModel) -> str:
    """Readable pseudo-code for the code panel: one line per statement."""
    header = f"class {cls.name} ({cls.kind})"
    if cls.layout is not None:
        header += f" layout={cls.layout}"
    if cls.undecompiled:
        return header + " {\n    // not decompiled\n}\n"
    lines = [header + " {"]
    for method in cls.methods:
        lines.append(f"    {method.name}() {{")
        for stmt in method.statements:
            lines.append(f"        {_format_statement(stmt)}")
        lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_method_hierarchy(cls: ClassModel) -> list[tuple[str, str]]:
    """Intra-class caller→callee pairs, in statement order, deduplicated."""
    edges: list[tuple[str, str]] = []
    for method in cls.methods:
        for stmt in method.statements:
            if stmt.kind == "call" and stmt.cls == cls.name:
                edge = (method.name, stmt.method)
                if edge not in edges:
                    edges.append(edge)
    return edges


def _page_path(class_name: str) -> str:
    return f"pages/{class_name}.svg"


def assemble_storyboard(bundle: AppBundle, graph, pages: dict,
                        inferences: dict | None = None) -> Storyboard:
    """One card per activity node; fragment pages fold into host cards.

    `pages` maps class names to RenderedPage objects.  A node without a
    page gets a blank placeholder and a warning.
    """
    inferences = inferences or {}
    sb = Storyboard(app_id=bundle.app_id)
    sb.warnings.extend(graph.warnings)

    fragment_hosts: dict[str, list[str]] = {}
    for relation in graph.fragment_relations:
        if relation.host is not None:
            fragment_hosts.setdefault(relation.host, [])
            if relation.fragment not in fragment_hosts[relation.host]:
                fragment_hosts[relation.host].append(relation.fragment)

    def register_page(name: str) -> str:
        path = _page_path(name)
        if path in sb.page_documents:
            return path
        page = pages.get(name)
        if page is None:
            sb.warnings.append(f"missing-page: {name} rendered as a blank placeholder")
            sb.page_documents[path] = PLACEHOLDER_SVG
        else:
            sb.page_documents[path] = page.svg
            if page.raster is not None:
                sb.page_rasters[path[:-4] + ".pgm"] = page.raster
        return path

    for name, kind in graph.nodes.items():
        if kind != "activity":
            register_page(name)
            continue
        cls = bundle.code.get(name)
        inference = inferences.get(name)
        if inference is None or inference.matched_by == "not_obfuscated":
            display = name
        else:
            display = inference.inferred_name
        page = pages.get(name)
        layout_code = ""
        if page is not None and page.tree is not None:
            layout_code = serialize_layout(page.tree.root)
        card = ActivityCard(
            class_name=name,
            display_name=display,
            page_svg_path=register_page(name),
            layout_code=layout_code,
            activity_code=format_activity_code(cls) if cls else "",
            method_hierarchy=emit_method_hierarchy(cls) if cls else [],
        )
        for fragment in sorted(fragment_hosts.get(name, [])):
            card.fragment_pages.append(
                {"name": fragment, "page": register_page(fragment)}
            )
        sb.nodes.append(card)

    sb.edges = sorted(graph.edge_pairs())
    return sb


def emit_storyboard_bundle(sb: Storyboard, out_dir) -> Path:
    """Write storyboard.json, pages, code excerpts, synthesized layouts,
    the file://-loadable data script, and any prebuilt viewer assets.
    """
    root = Path(out_dir)
    (root / "pages").mkdir(parents=True, exist_ok=True)
    (root / "code").mkdir(exist_ok=True)
    (root / "synth").mkdir(exist_ok=True)

    document = json.dumps(sb.to_dict(), indent=2) + "\n"
    (root / "storyboard.json").write_text(document)
    (root / "storyboard_data.js").write_text(
        "window.__STORYBOARD__ = " + json.dumps(sb.to_dict(), indent=2) + ";\n"
    )

    for rel_path, svg in sorted(sb.page_documents.items()):
        (root / rel_path).write_text(svg)
    for rel_path, raster in sorted(sb.page_rasters.items()):
        write_pgm(root / rel_path, raster)
    for card in sb.nodes:
        (root / "code" / f"{card.class_name}.txt").write_text(card.activity_code)
        if card.layout_code:
            (root / "synth" / f"{card.class_name}.xml").write_text(card.layout_code)

    _copy_viewer_assets(root)
    return root


def _copy_viewer_assets(root: Path) -> None:
    """Install the prebuilt viewer next to the data if the package ships one.

    The pipeline works without it; pages and JSON are self-sufficient.
    """
    try:
        assets = resources.files("storyboard") / "viewer_assets"
        if not assets.is_dir():
            return
        for entry in sorted(assets.iterdir(), key=lambda e: e.name):
            if entry.is_file() and not entry.name.startswith("."):
                (root / entry.name).write_bytes(entry.read_bytes())
    except (OSError, ModuleNotFoundError):
        return


def load_schema() -> dict:
    text = (resources.files("storyboard") / "storyboard.schema.json").read_text()
    return json.loads(text)


def validate_storyboard(document: dict) -> None:
    """Schema-check a storyboard document; raises StoryboardError."""
    import jsonschema

    try:
        jsonschema.validate(document, load_schema())
    except jsonschema.ValidationError as exc:
        raise StoryboardError(f"storyboard document invalid: {exc.message}") from exc


def verify_bundle_dir(out_dir) -> list[str]:
    """Referential-integrity check: every page path in storyboard.json must
    exist under the directory.  Returns the missing paths.
    """
    root = Path(out_dir)
    document = json.loads((root / "storyboard.json").read_text())
    missing = []
    for node in document["nodes"]:
        refs = [node["page"]] + [f["page"] for f in node.get("fragment_pages", ())]
        for ref in refs:
            if not (root / ref).is_file():
                missing.append(ref)
    return missing
