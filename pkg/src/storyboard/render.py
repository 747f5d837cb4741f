"""Deterministic wireframe rendering.

Two-pass box layout over a synthesized tree (measure, then arrange) and
SVG emission.  All arithmetic is integer pixels after one dp-to-px
conversion, so identical trees produce byte-identical documents on every
platform.  Text width uses the fixed heuristic of 0.6 x font-size per
character; no font stack is consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .model import LEAF_TAGS, VIEWGROUP_TAGS, is_viewgroup
from .synth import StaticLayoutTree

TEXT_TAGS = frozenset({"TextView", "EditText", "Button"})
KNOWN_TAGS = VIEWGROUP_TAGS | LEAF_TAGS

# default intrinsic edge for image and unknown leaves, in dp
LEAF_INTRINSIC_DP = 48

FILL_WHITE = "#FFFFFF"
FILL_GRAY = "#C0C0C0"


@dataclass(frozen=True)
class RenderSpec:
    screen_width_dp: int = 360
    screen_height_dp: int = 640
    density_scale: float = 2.0
    font_size_default_dp: int = 14

    def __post_init__(self):
        if min(self.screen_width_dp, self.screen_height_dp,
               self.density_scale, self.font_size_default_dp) <= 0:
            raise ValueError("render dimensions must be positive")

    def px(self, dp: float) -> int:
        return int(dp * self.density_scale + 0.5)

    @property
    def width_px(self) -> int:
        return self.px(self.screen_width_dp)

    @property
    def height_px(self) -> int:
        return self.px(self.screen_height_dp)


@dataclass
class LayoutBox:
    """One positioned rectangle in draw order (parents first)."""

    nid: int
    tag: str
    x: int
    y: int
    w: int
    h: int
    text: str | None = None
    fill: str = FILL_WHITE
    label: str | None = None
    font_px: int = 0


@dataclass
class RenderedPage:
    owner: str
    svg: str
    width_px: int
    height_px: int
    raster: "object | None" = None  # numpy grayscale grid when rasterized
    tree: "StaticLayoutTree | None" = None  # source tree, for layout-code panels


def _dim_px(value: str | None, default: str, avail: int, intrinsic,
            spec: RenderSpec) -> int:
    """Resolve one layout_width/layout_height attribute to pixels.

    `intrinsic` is a thunk so wrap_content subtree measurement only runs
    when asked for.
    """
    value = value if value is not None else default
    if value == "match_parent" or value == "fill_parent":
        return avail
    if value == "wrap_content":
        return intrinsic()
    text = value[:-2] if value.endswith("dp") else value
    try:
        return spec.px(float(text))
    except ValueError:
        return intrinsic()


def _font_px(node, spec: RenderSpec) -> int:
    raw = node.attributes.get("textSize")
    if raw is not None:
        text = raw[:-2] if raw.endswith("dp") else raw
        try:
            return spec.px(float(text))
        except ValueError:
            pass
    return spec.px(spec.font_size_default_dp)


def _text_of(node) -> str | None:
    if node.tag in TEXT_TAGS:
        return node.attributes.get("text", node.attributes.get("hint", ""))
    return None


def _measure(node, avail_w: int, avail_h: int, spec: RenderSpec) -> tuple[int, int]:
    default = "match_parent" if is_viewgroup(node.tag) else "wrap_content"
    w = _dim_px(node.attributes.get("layout_width"), default, avail_w,
                lambda: _intrinsic(node, avail_w, avail_h, spec)[0], spec)
    h = _dim_px(node.attributes.get("layout_height"), default, avail_h,
                lambda: _intrinsic(node, avail_w, avail_h, spec)[1], spec)
    return w, h


def _intrinsic(node, avail_w: int, avail_h: int, spec: RenderSpec) -> tuple[int, int]:
    """Natural content size used for wrap_content."""
    if node.tag in TEXT_TAGS:
        font = _font_px(node, spec)
        text = _text_of(node) or ""
        return len(text) * font * 6 // 10, font * 6 // 5
    if not is_viewgroup(node.tag):
        edge = spec.px(LEAF_INTRINSIC_DP)
        return edge, edge
    sizes = [_measure(c, avail_w, avail_h, spec) for c in node.children]
    if not sizes:
        return 0, 0
    if node.tag == "LinearLayout":
        if node.attributes.get("orientation") == "vertical":
            return max(s[0] for s in sizes), sum(s[1] for s in sizes)
        return sum(s[0] for s in sizes), max(s[1] for s in sizes)
    if node.tag in ("ListView", "RecyclerView"):
        return max(s[0] for s in sizes), sum(s[1] for s in sizes)
    if node.tag == "GridView":
        cols = _grid_columns(node)
        cell_w = max(s[0] for s in sizes)
        cell_h = max(s[1] for s in sizes)
        rows = (len(sizes) + cols - 1) // cols
        return cols * cell_w, rows * cell_h
    if node.tag == "ViewPager":
        return max(s[0] for s in sizes), max(s[1] for s in sizes)
    # FrameLayout, RelativeLayout, ScrollView, ConstraintLayout: overlay extent
    return max(s[0] for s in sizes), max(s[1] for s in sizes)


def _grid_columns(node) -> int:
    try:
        return max(1, int(node.attributes.get("numColumns", "2")))
    except ValueError:
        return 2


def _strip_id(ref: str) -> str:
    for prefix in ("@+id/", "@id/"):
        if ref.startswith(prefix):
            return ref[len(prefix):]
    return ref


def measure_and_layout(tree: StaticLayoutTree, spec: RenderSpec) -> list[LayoutBox]:
    """Position every node of the tree on the virtual screen.

    Children are clipped to their parent's rectangle, so containment holds
    by construction.  Boxes come back in preorder, which is draw order.
    """
    boxes: list[LayoutBox] = []
    root = tree.root
    w, h = _measure(root, spec.width_px, spec.height_px, spec)
    _arrange(root, 0, 0, w, h, (0, 0, spec.width_px, spec.height_px), spec, boxes)
    return boxes


def _clip(x: int, y: int, w: int, h: int, bounds) -> tuple[int, int, int, int]:
    bx, by, bw, bh = bounds
    x2 = min(x + w, bx + bw)
    y2 = min(y + h, by + bh)
    # clamp the origin into the bounds so even empty boxes stay inside
    x = min(max(x, bx), bx + bw)
    y = min(max(y, by), by + bh)
    return x, y, max(0, x2 - x), max(0, y2 - y)


def _arrange(node, x: int, y: int, w: int, h: int, bounds, spec: RenderSpec,
             boxes: list[LayoutBox]) -> None:
    cx, cy, cw, ch = _clip(x, y, w, h, bounds)
    box = LayoutBox(node.nid, node.tag, cx, cy, cw, ch)
    box.text = _text_of(node)
    box.font_px = _font_px(node, spec)
    background = node.attributes.get("background", "")
    if background.startswith("#"):
        box.fill = background
    if node.tag == "ImageView":
        box.fill = FILL_GRAY
        box.label = node.attributes.get("placeholder", "IMG")
    elif node.tag not in KNOWN_TAGS:
        box.fill = FILL_GRAY
        box.label = node.tag
    boxes.append(box)
    if not node.children:
        return

    child_bounds = (cx, cy, cw, ch)
    sizes = [_measure(c, w, h, spec) for c in node.children]

    if node.tag == "LinearLayout" and node.attributes.get("orientation") == "vertical" \
            or node.tag in ("ListView", "RecyclerView"):
        offset = y
        for child, (sw, sh) in zip(node.children, sizes):
            _arrange(child, x, offset, sw, sh, child_bounds, spec, boxes)
            offset += sh
    elif node.tag == "LinearLayout":
        offset = x
        for child, (sw, sh) in zip(node.children, sizes):
            _arrange(child, offset, y, sw, sh, child_bounds, spec, boxes)
            offset += sw
    elif node.tag == "GridView":
        cols = _grid_columns(node)
        cell_w = w // cols if cols else w
        cell_h = max((s[1] for s in sizes), default=0)
        for index, (child, (sw, sh)) in enumerate(zip(node.children, sizes)):
            col, row = index % cols, index // cols
            _arrange(child, x + col * cell_w, y + row * cell_h,
                     min(sw, cell_w), sh, child_bounds, spec, boxes)
    elif node.tag == "ViewPager":
        # pages sit side by side; clipping leaves only the first visible
        for index, (child, (sw, sh)) in enumerate(zip(node.children, sizes)):
            _arrange(child, x + index * w, y, w, h, child_bounds, spec, boxes)
    elif node.tag == "RelativeLayout":
        _arrange_relative(node, x, y, w, h, child_bounds, sizes, spec, boxes)
    else:
        # FrameLayout, ScrollView, ConstraintLayout, unknown containers:
        # overlay at the parent origin
        for child, (sw, sh) in zip(node.children, sizes):
            _arrange(child, x, y, sw, sh, child_bounds, spec, boxes)


def _arrange_relative(node, x, y, w, h, bounds, sizes, spec, boxes) -> None:
    """The supported relative subset: below, above, alignParentTop,
    alignParentBottom, centerInParent.

    Rules resolve in document order; below/above targets must be earlier
    siblings, otherwise the rule is ignored and the child stays at the
    parent origin.
    """
    placed: dict[str, tuple[int, int, int, int]] = {}
    for child, (sw, sh) in zip(node.children, sizes):
        attrs = child.attributes
        cx, cy = x, y
        if attrs.get("layout_centerInParent") == "true":
            cx = x + (w - sw) // 2
            cy = y + (h - sh) // 2
        if attrs.get("layout_alignParentTop") == "true":
            cy = y
        if attrs.get("layout_alignParentBottom") == "true":
            cy = y + h - sh
        below = attrs.get("layout_below")
        if below is not None and _strip_id(below) in placed:
            tx, ty, tw, th = placed[_strip_id(below)]
            cy = ty + th
        above = attrs.get("layout_above")
        if above is not None and _strip_id(above) in placed:
            tx, ty, tw, th = placed[_strip_id(above)]
            cy = ty - sh
        _arrange(child, cx, cy, sw, sh, bounds, spec, boxes)
        cid = attrs.get("id")
        if cid is not None:
            placed[_strip_id(cid)] = (cx, cy, sw, sh)


def render_svg(boxes: list[LayoutBox], spec: RenderSpec,
               owner: str = "") -> RenderedPage:
    """Emit the SVG document for laid-out boxes.

    Output is a pure function of the inputs: element order equals box
    order and no timestamps or randomness enter the document.
    """
    width, height = spec.width_px, spec.height_px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" '
        f'fill="{FILL_WHITE}" stroke="none"/>',
    ]
    for box in boxes:
        parts.append(
            f'<rect x="{box.x}" y="{box.y}" width="{box.w}" height="{box.h}" '
            f'fill="{box.fill}" stroke="#000000" stroke-width="1"/>'
        )
        if box.text:
            parts.append(
                f'<text x="{box.x + 4}" y="{box.y + (box.h + box.font_px) // 2}" '
                f'font-family="monospace" font-size="{box.font_px}" '
                f'fill="#000000">{escape(box.text)}</text>'
            )
        if box.label:
            parts.append(
                f'<text x="{box.x + box.w // 2}" y="{box.y + (box.h + box.font_px) // 2}" '
                f'font-family="monospace" font-size="{box.font_px}" '
                f'fill="#000000" text-anchor="middle">{escape(box.label)}</text>'
            )
    parts.append("</svg>")
    return RenderedPage(owner=owner, svg="\n".join(parts) + "\n",
                        width_px=width, height_px=height)


def render_page(tree: StaticLayoutTree, spec: RenderSpec) -> RenderedPage:
    """Layout plus SVG plus grayscale raster for one synthesized tree."""
    boxes = measure_and_layout(tree, spec)
    page = render_svg(boxes, spec, owner=tree.owner)
    page.raster = rasterize(boxes, spec)
    page.tree = tree
    return page


_GRAY_LEVELS = {FILL_WHITE: 255, FILL_GRAY: 192}


def _gray_of(fill: str) -> int:
    if fill in _GRAY_LEVELS:
        return _GRAY_LEVELS[fill]
    if fill.startswith("#") and len(fill) == 7:
        try:
            r = int(fill[1:3], 16)
            g = int(fill[3:5], 16)
            b = int(fill[5:7], 16)
        except ValueError:
            return 255
        # integer luminance, BT.601 weights
        return (299 * r + 587 * g + 114 * b) // 1000
    return 255


def rasterize(boxes: list[LayoutBox], spec: RenderSpec):
    """Software raster of the box list to an 8-bit grayscale grid.

    A schematic stand-in for the SVG: box fills, 1px borders, and a dark
    band where text would sit.  Deterministic by the same argument as the
    SVG path.
    """
    import numpy as np

    grid = np.full((spec.height_px, spec.width_px), 255, dtype=np.uint8)
    for box in boxes:
        if box.w <= 0 or box.h <= 0:
            continue
        x2, y2 = box.x + box.w, box.y + box.h
        grid[box.y:y2, box.x:x2] = _gray_of(box.fill)
        grid[box.y:y2, box.x] = 0
        grid[box.y:y2, x2 - 1] = 0
        grid[box.y, box.x:x2] = 0
        grid[y2 - 1, box.x:x2] = 0
        if box.text:
            tw = min(len(box.text) * box.font_px * 6 // 10, box.w - 4)
            ty = box.y + (box.h - box.font_px) // 2
            if tw > 0 and box.font_px > 0:
                band = grid[max(ty, box.y):min(ty + box.font_px, y2),
                            box.x + 2:box.x + 2 + tw]
                band[...] = 64
    return grid
