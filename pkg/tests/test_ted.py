"""Tree edit distance vs. an independent oracle, plus grammar round trips."""

import random

import pytest

from storyboard.errors import ParseError
from storyboard.ted import LayoutTree, parse_tree, serialize_tree, tree_edit_distance

from oracle_ted import oracle_distance, random_tree, tree

TAGS = ["LinearLayout", "RelativeLayout", "FrameLayout",
        "TextView", "Button", "ImageView"]


def t(label, *children):
    return LayoutTree(label, list(children))


def to_layout(node):
    label, kids = node
    return LayoutTree(label, [to_layout(k) for k in kids])


def test_identical_trees_zero():
    a = t("A", t("B"), t("C", t("D")))
    assert tree_edit_distance(a, a) == 0


def test_single_relabel():
    a = t("LinearLayout", t("TextView"))
    b = t("LinearLayout", t("Button"))
    assert tree_edit_distance(a, b) == 1


def test_single_extra_leaf():
    a = t("L", t("T"))
    b = t("L", t("T"), t("B"))
    assert tree_edit_distance(a, b) == 1


def test_delete_internal_node():
    # removing F hoists its child: one delete
    a = t("L", t("F", t("T")))
    b = t("L", t("T"))
    assert tree_edit_distance(a, b) == 1


def test_against_leaf():
    a = t("L", t("T"), t("B", t("I")))
    b = t("L")
    assert tree_edit_distance(a, b) == 3


def test_known_hand_value():
    a = t("L", t("T"), t("B"))
    b = t("R", t("I", t("T")))
    # relabel L->R, relabel B->I, move is delete+insert free here: T survives
    assert tree_edit_distance(a, b) == oracle_distance(
        tree("L", tree("T"), tree("B")),
        tree("R", tree("I", tree("T"))))


def test_oracle_agreement_random():
    rng = random.Random(20260814)
    for _ in range(200):
        oa = random_tree(rng, 8, TAGS)
        ob = random_tree(rng, 8, TAGS)
        expected = oracle_distance(oa, ob)
        got = tree_edit_distance(to_layout(oa), to_layout(ob))
        assert got == expected, (oa, ob)


def test_metric_axioms_random():
    rng = random.Random(7)
    trees = [random_tree(rng, 6, TAGS) for _ in range(12)]
    layouts = [to_layout(n) for n in trees]
    for a in layouts:
        assert tree_edit_distance(a, a) == 0
    for a in layouts:
        for b in layouts:
            assert tree_edit_distance(a, b) == tree_edit_distance(b, a)
    for a in layouts[:6]:
        for b in layouts[:6]:
            for c in layouts[:6]:
                assert (tree_edit_distance(a, c) <=
                        tree_edit_distance(a, b) + tree_edit_distance(b, c))


def test_serialize_grammar():
    node = t("LinearLayout", t("TextView"), t("FrameLayout", t("Button")))
    text = serialize_tree(node)
    assert text == "LinearLayout(TextView,FrameLayout(Button))"
    assert serialize_tree(t("View")) == "View"


def test_round_trip_random():
    rng = random.Random(99)
    for _ in range(100):
        node = to_layout(random_tree(rng, 10, TAGS))
        text = serialize_tree(node)
        again = parse_tree(text)
        assert serialize_tree(again) == text


def test_parse_dotted_labels():
    node = parse_tree("androidx.recyclerview.widget.RecyclerView")
    assert node.label == "androidx.recyclerview.widget.RecyclerView"
    assert node.children == []


@pytest.mark.parametrize("bad", [
    "",
    "(TextView)",
    "L(",
    "L)",
    "L(T",
    "L(T,)",
    "L(,T)",
    "L (T)",
    "L(T) ",
    "L(T)x",
    "1Layout",
    "L(T B)",
])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_tree(bad)


def test_size_and_order_sensitivity():
    a = t("L", t("T"), t("B"))
    b = t("L", t("B"), t("T"))
    assert a.size() == 3
    # ordered trees: swapped siblings cost two relabels
    assert tree_edit_distance(a, b) == 2
