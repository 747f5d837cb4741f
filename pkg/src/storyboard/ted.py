"""Ordered labeled trees and Zhang-Shasha edit distance.

Distance uses unit costs: insert 1, delete 1, relabel 1 when labels
differ.  Trees serialize to a parenthesized preorder string with the
grammar below; the serializer emits no whitespace and the parser accepts
none, so round-trips are bit-exact.

    tree  := label [ "(" tree ("," tree)* ")" ]
    label := [A-Za-z_][A-Za-z0-9_.]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError


@dataclass
class LayoutTree:
    """One node of a stripped widget hierarchy: tag label plus ordered
    children, attributes dropped."""

    label: str
    children: list["LayoutTree"] = field(default_factory=list)

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)

    def depth_list(self) -> list[int]:
        """Preorder depths, useful for shape comparisons in tests."""
        out: list[int] = []
        stack = [(self, 0)]
        while stack:
            node, depth = stack.pop()
            out.append(depth)
            stack.extend(reversed([(c, depth + 1) for c in node.children]))
        return out


_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*")


def serialize_tree(tree: LayoutTree) -> str:
    if not tree.children:
        return tree.label
    inner = ",".join(serialize_tree(child) for child in tree.children)
    return f"{tree.label}({inner})"


def parse_tree(text: str) -> LayoutTree:
    """Parse the parenthesized preorder form, rejecting any deviation."""
    tree, pos = _parse_node(text, 0)
    if pos != len(text):
        raise ParseError(f"trailing input at column {pos + 1}: {text[pos:]!r}")
    return tree


def _parse_node(text: str, pos: int) -> tuple[LayoutTree, int]:
    match = _LABEL_RE.match(text, pos)
    if match is None:
        raise ParseError(f"expected a tag label at column {pos + 1} of {text!r}")
    node = LayoutTree(match.group())
    pos = match.end()
    if pos < len(text) and text[pos] == "(":
        pos += 1
        while True:
            child, pos = _parse_node(text, pos)
            node.children.append(child)
            if pos >= len(text):
                raise ParseError(f"unclosed '(' in {text!r}")
            ch = text[pos]
            pos += 1
            if ch == ")":
                break
            if ch != ",":
                raise ParseError(f"expected ',' or ')' at column {pos} of {text!r}")
    return node, pos


class _Annotated:
    """Postorder arrays for one tree: labels, leftmost-leaf-descendant
    indices, and keyroots (root plus every node with a left sibling)."""

    def __init__(self, root: LayoutTree):
        self.labels: list[str] = []
        self.lmds: list[int] = []
        self._walk(root)
        rightmost: dict[int, int] = {}
        for index, lmd in enumerate(self.lmds):
            rightmost[lmd] = index
        self.keyroots = sorted(rightmost.values())

    def _walk(self, node: LayoutTree) -> int:
        """Postorder index of `node`; fills arrays on the way back up."""
        first_child_lmd = None
        for child in node.children:
            child_lmd = self.lmds[self._walk(child)]
            if first_child_lmd is None:
                first_child_lmd = child_lmd
        index = len(self.labels)
        self.labels.append(node.label)
        self.lmds.append(index if first_child_lmd is None else first_child_lmd)
        return index


def tree_edit_distance(a: LayoutTree, b: LayoutTree) -> int:
    """Zhang-Shasha distance over keyroot pairs, unit costs."""
    ta, tb = _Annotated(a), _Annotated(b)
    td = [[0] * len(tb.labels) for _ in ta.labels]
    for i in ta.keyroots:
        for j in tb.keyroots:
            _treedist(i, j, ta, tb, td)
    return td[-1][-1]


def _treedist(i: int, j: int, ta: _Annotated, tb: _Annotated,
              td: list[list[int]]) -> None:
    ioff = ta.lmds[i] - 1
    joff = tb.lmds[j] - 1
    m = i - ioff + 1
    n = j - joff + 1
    fd = [[0] * n for _ in range(m)]
    for x in range(1, m):
        fd[x][0] = fd[x - 1][0] + 1
    for y in range(1, n):
        fd[0][y] = fd[0][y - 1] + 1
    for x in range(1, m):
        for y in range(1, n):
            if ta.lmds[x + ioff] == ta.lmds[i] and tb.lmds[y + joff] == tb.lmds[j]:
                # both prefixes are whole trees rooted at x+ioff / y+joff
                relabel = 0 if ta.labels[x + ioff] == tb.labels[y + joff] else 1
                fd[x][y] = min(fd[x - 1][y] + 1,
                               fd[x][y - 1] + 1,
                               fd[x - 1][y - 1] + relabel)
                td[x + ioff][y + joff] = fd[x][y]
            else:
                p = ta.lmds[x + ioff] - 1 - ioff
                q = tb.lmds[y + joff] - 1 - joff
                fd[x][y] = min(fd[x - 1][y] + 1,
                               fd[x][y - 1] + 1,
                               fd[p][q] + td[x + ioff][y + joff])
