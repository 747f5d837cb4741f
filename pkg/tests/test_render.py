"""Wireframe rendering: measurement arithmetic, arrangement, SVG, raster."""

import numpy as np
import pytest

from storyboard.model import ComponentNode
from storyboard.render import (
    RenderSpec,
    measure_and_layout,
    render_page,
    render_svg,
)
from storyboard.synth import StaticLayoutTree

SPEC = RenderSpec()  # 360x640 dp at 2.0 => 720x1280 px, font 28 px


def node(tag, attrs=None, *children):
    return ComponentNode(tag, dict(attrs or {}), list(children))


def page_of(root, owner="X"):
    return StaticLayoutTree(owner=owner, root=root).finalize()


def boxes_of(root):
    return measure_and_layout(page_of(root), SPEC)


def rect_of(box):
    return (box.x, box.y, box.w, box.h)


def test_spec_pixel_conversion():
    assert SPEC.width_px == 720
    assert SPEC.height_px == 1280
    assert SPEC.px(48) == 96
    assert RenderSpec(density_scale=1.5).px(1) == 2  # rounds half up


@pytest.mark.parametrize("bad", [
    {"screen_width_dp": 0},
    {"screen_height_dp": -1},
    {"density_scale": 0},
])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        RenderSpec(**bad)


def test_root_viewgroup_fills_screen():
    boxes = boxes_of(node("LinearLayout"))
    assert rect_of(boxes[0]) == (0, 0, 720, 1280)


def test_text_intrinsic_size():
    # 0.6 x font per character wide, 1.2 x font tall, integer math
    boxes = boxes_of(node("LinearLayout", {"orientation": "vertical"},
                          node("TextView", {"text": "ab"})))
    assert rect_of(boxes[1]) == (0, 0, 33, 33)


def test_vertical_stacking():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("TextView", {"text": "ab"}),
                node("TextView", {"text": "ab"}))
    boxes = boxes_of(root)
    assert rect_of(boxes[1]) == (0, 0, 33, 33)
    assert rect_of(boxes[2]) == (0, 33, 33, 33)


def test_horizontal_is_linear_default():
    root = node("LinearLayout", {},
                node("Button", {"text": "ok"}),
                node("Button", {"text": "ok"}))
    boxes = boxes_of(root)
    assert boxes[1].x == 0
    assert boxes[2].x == boxes[1].w
    assert boxes[2].y == 0


def test_explicit_dp_dimensions():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("View", {"layout_width": "100dp",
                              "layout_height": "25dp"}))
    assert rect_of(boxes_of(root)[1]) == (0, 0, 200, 50)


def test_leaf_intrinsic_edge():
    root = node("LinearLayout", {"orientation": "vertical"}, node("ImageView"))
    assert rect_of(boxes_of(root)[1]) == (0, 0, 96, 96)


def test_match_parent_leaf():
    root = node("FrameLayout", {},
                node("View", {"layout_width": "match_parent",
                              "layout_height": "fill_parent"}))
    assert rect_of(boxes_of(root)[1]) == (0, 0, 720, 1280)


def test_list_view_stacks_rows():
    root = node("ListView", {},
                node("TextView", {"text": "row"}),
                node("TextView", {"text": "row"}))
    boxes = boxes_of(root)
    assert boxes[1].y == 0
    assert boxes[2].y == boxes[1].h


def test_grid_view_cells():
    kids = [node("ImageView") for _ in range(5)]
    root = node("GridView", {"numColumns": "3"}, *kids)
    boxes = boxes_of(root)
    positions = [(b.x, b.y) for b in boxes[1:]]
    assert positions == [(0, 0), (240, 0), (480, 0), (0, 96), (240, 96)]


def test_grid_view_default_two_columns():
    root = node("GridView", {}, node("ImageView"), node("ImageView"),
                node("ImageView"))
    boxes = boxes_of(root)
    assert [(b.x, b.y) for b in boxes[1:]] == [(0, 0), (360, 0), (0, 96)]


def test_view_pager_clips_to_first_page():
    root = node("ViewPager", {},
                node("FrameLayout"), node("FrameLayout"))
    boxes = boxes_of(root)
    assert rect_of(boxes[1]) == (0, 0, 720, 1280)
    assert boxes[2].w == 0


def test_frame_layout_overlays():
    root = node("FrameLayout", {},
                node("ImageView"), node("TextView", {"text": "over"}))
    boxes = boxes_of(root)
    assert (boxes[1].x, boxes[1].y) == (0, 0)
    assert (boxes[2].x, boxes[2].y) == (0, 0)


class TestRelativeLayout:
    CHILD_DIMS = {"layout_width": "100dp", "layout_height": "100dp"}

    def _child(self, cid=None, **rules):
        attrs = dict(self.CHILD_DIMS)
        if cid:
            attrs["id"] = cid
        attrs.update(rules)
        return node("View", attrs)

    def test_center_in_parent(self):
        root = node("RelativeLayout", {},
                    self._child(layout_centerInParent="true"))
        assert rect_of(boxes_of(root)[1]) == (260, 540, 200, 200)

    def test_align_parent_edges(self):
        root = node("RelativeLayout", {},
                    self._child(layout_alignParentTop="true"),
                    self._child(layout_alignParentBottom="true"))
        boxes = boxes_of(root)
        assert boxes[1].y == 0
        assert boxes[2].y == 1080

    def test_below_chain(self):
        root = node("RelativeLayout", {},
                    self._child("@+id/a"),
                    self._child("@+id/b", layout_below="@id/a"),
                    self._child(layout_below="@id/b"))
        boxes = boxes_of(root)
        assert [b.y for b in boxes[1:]] == [0, 200, 400]

    def test_above_places_on_top_edge(self):
        root = node("RelativeLayout", {},
                    self._child("@+id/base", layout_alignParentBottom="true"),
                    self._child(layout_above="@id/base"))
        boxes = boxes_of(root)
        assert boxes[1].y == 1080
        assert boxes[2].y == 880

    def test_forward_reference_ignored(self):
        root = node("RelativeLayout", {},
                    self._child(layout_below="@id/later"),
                    self._child("@+id/later"))
        boxes = boxes_of(root)
        assert boxes[1].y == 0


def test_children_clipped_to_parent():
    inner = node("TextView", {"text": "x", "layout_height": "300dp"})
    parent = node("LinearLayout", {"orientation": "vertical",
                                   "layout_height": "100dp"}, inner)
    root = node("LinearLayout", {"orientation": "vertical"}, parent)
    boxes = boxes_of(root)
    assert boxes[1].h == 200
    assert boxes[2].h == 200  # 600 px requested, clipped to the parent


def test_all_boxes_inside_screen():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("View", {"layout_height": "900dp"}),
                node("View", {"layout_height": "900dp"}))
    for box in boxes_of(root):
        assert 0 <= box.x <= 720 and 0 <= box.y <= 1280
        assert box.x + box.w <= 720
        assert box.y + box.h <= 1280


def test_unknown_tag_gray_labeled():
    root = node("LinearLayout", {"orientation": "vertical"}, node("WebView"))
    boxes = boxes_of(root)
    assert boxes[1].fill == "#C0C0C0"
    assert boxes[1].label == "WebView"
    assert rect_of(boxes[1]) == (0, 0, 96, 96)


def test_image_view_placeholder():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("ImageView"),
                node("ImageView", {"placeholder": "PHOTO"}))
    boxes = boxes_of(root)
    assert boxes[1].label == "IMG"
    assert boxes[2].label == "PHOTO"
    assert boxes[1].fill == "#C0C0C0"


def test_background_color_honored():
    root = node("LinearLayout", {"background": "#FF0000"})
    assert boxes_of(root)[0].fill == "#FF0000"
    root = node("LinearLayout", {"background": "red"})
    assert boxes_of(root)[0].fill == "#FFFFFF"


def test_text_size_attribute():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("TextView", {"text": "ab", "textSize": "20dp"}))
    boxes = boxes_of(root)
    assert boxes[1].font_px == 40
    assert rect_of(boxes[1]) == (0, 0, 48, 48)


def test_hint_stands_in_for_text():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("EditText", {"hint": "Search"}))
    assert boxes_of(root)[1].text == "Search"


def test_text_only_on_text_tags():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("ImageView", {"text": "nope"}))
    assert boxes_of(root)[1].text is None


def test_svg_structure_and_escaping():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("TextView", {"text": "a&b<c>"}),
                node("WebView"))
    page = render_svg(boxes_of(root), SPEC, owner="X")
    assert page.svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" '
                               'width="720" height="1280"')
    assert page.svg.endswith("</svg>\n")
    assert "a&amp;b&lt;c&gt;" in page.svg
    assert 'text-anchor="middle"' in page.svg
    assert ">WebView</text>" in page.svg
    assert page.svg.count("<rect") == 4  # background + three boxes


def test_render_deterministic():
    def build():
        return page_of(node("LinearLayout", {"orientation": "vertical"},
                            node("TextView", {"text": "hello"}),
                            node("ImageView"),
                            node("LinearLayout", {},
                                 node("Button", {"text": "go"}))))
    first = render_page(build(), SPEC)
    second = render_page(build(), SPEC)
    assert first.svg == second.svg
    assert np.array_equal(first.raster, second.raster)
    assert first.tree is not None
    assert first.owner == "X"


def test_raster_values():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("ImageView"),
                node("TextView", {"text": "abcd"}))
    raster = render_page(page_of(root), SPEC).raster
    assert raster.shape == (1280, 720)
    assert raster.dtype == np.uint8
    assert raster[50, 50] == 192            # ImageView gray fill
    assert raster[0, 5] == 0                # border
    assert raster[1000, 500] == 255         # untouched canvas
    assert raster[96 + 16, 10] == 64        # text band of the TextView


def test_zero_area_boxes_skipped_in_raster():
    root = node("ViewPager", {}, node("FrameLayout"), node("FrameLayout"))
    raster = render_page(page_of(root), SPEC).raster
    assert raster.shape == (1280, 720)


def test_empty_container_collapses():
    root = node("LinearLayout", {"orientation": "vertical"},
                node("LinearLayout", {"layout_width": "wrap_content",
                                      "layout_height": "wrap_content"}))
    assert rect_of(boxes_of(root)[1]) == (0, 0, 0, 0)
