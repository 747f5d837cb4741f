"""Semantic name inference for obfuscated activities.

Obfuscation detection is a letter-count gate.  Inference compares the
activity's stripped layout tree against a corpus by edit distance, ranks
the close names by corpus frequency, and picks the first whose tokens
overlap the layout file name; failing that, the most frequent name wins.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .model import AppBundle, LayoutDocument, simple_name
from .ted import LayoutTree, parse_tree, serialize_tree, tree_edit_distance

STOPWORDS = frozenset({"activity", "layout"})

_CAMEL_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*|[a-z0-9]+")


@dataclass(frozen=True)
class CorpusEntry:
    activity_name: str
    app_id: str
    tree: LayoutTree
    layout_name: str


@dataclass
class Corpus:
    entries: list[CorpusEntry] = field(default_factory=list)
    name_frequency: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, entries) -> "Corpus":
        corpus = cls(list(entries))
        for entry in corpus.entries:
            corpus.name_frequency[entry.activity_name] = (
                corpus.name_frequency.get(entry.activity_name, 0) + 1
            )
        return corpus

    def save(self, path) -> None:
        """One JSON object per line; tree in parenthesized preorder form."""
        lines = []
        for entry in self.entries:
            lines.append(json.dumps({
                "app_id": entry.app_id,
                "activity_name": entry.activity_name,
                "layout_name": entry.layout_name,
                "tree": serialize_tree(entry.tree),
            }))
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def load_corpus(path) -> Corpus:
    entries = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), file=str(path), line=lineno) from exc
        missing = {"app_id", "activity_name", "layout_name", "tree"} - record.keys()
        if missing:
            raise ParseError(
                f"corpus record missing {sorted(missing)}",
                file=str(path), line=lineno,
            )
        entries.append(CorpusEntry(
            activity_name=record["activity_name"],
            app_id=record["app_id"],
            tree=parse_tree(record["tree"]),
            layout_name=record["layout_name"],
        ))
    return Corpus.from_entries(entries)


@dataclass(frozen=True)
class InferenceResult:
    original_name: str
    inferred_name: str
    candidates: tuple[tuple[str, int, int], ...]  # (name, ted, frequency)
    matched_by: str  # keyword | top_frequency | not_obfuscated | no_candidates


def is_obfuscated(name: str) -> bool:
    """True when the simple class name carries fewer than three letters.

    Digits and separators do not count toward the three.
    """
    return sum(1 for ch in name if ch.isalpha()) < 3


def extract_layout_tree(doc: LayoutDocument) -> LayoutTree:
    """Project a layout document onto tags only, order preserved."""

    def project(node) -> LayoutTree:
        return LayoutTree(node.tag, [project(c) for c in node.children])

    return project(doc.root)


def tokenize(name: str) -> list[str]:
    """Lowercased tokens split on separators and camel-case humps."""
    tokens: list[str] = []
    for part in re.split(r"[_\-\s.]+", name):
        tokens.extend(m.lower() for m in _CAMEL_RE.findall(part))
    return tokens


def _tokens_overlap(name_tokens, layout_tokens) -> bool:
    # prefix match in either direction stands in for stemming,
    # so "search" pairs with "searcher"
    for a in name_tokens:
        for b in layout_tokens:
            if a.startswith(b) or b.startswith(a):
                return True
    return False


def infer_semantic_name(original_name: str, target_tree: LayoutTree,
                        layout_name: str, corpus: Corpus,
                        threshold: int = 5,
                        stopwords: frozenset[str] = STOPWORDS) -> InferenceResult:
    """Rank corpus names within `threshold` edit distance by frequency and
    match against the layout-name tokens.

    Frequency ties break lexicographically so results are deterministic.
    """
    if not is_obfuscated(original_name):
        return InferenceResult(original_name, original_name, (), "not_obfuscated")

    best_ted: dict[str, int] = {}
    for entry in corpus.entries:
        distance = tree_edit_distance(target_tree, entry.tree)
        if distance < threshold:
            prior = best_ted.get(entry.activity_name)
            if prior is None or distance < prior:
                best_ted[entry.activity_name] = distance

    candidates = tuple(sorted(
        ((name, ted, corpus.name_frequency.get(name, 0))
         for name, ted in best_ted.items()),
        key=lambda c: (-c[2], c[0]),
    ))
    if not candidates:
        return InferenceResult(original_name, original_name, (), "no_candidates")

    layout_tokens = [t for t in tokenize(layout_name) if t not in stopwords]
    if layout_tokens:
        for name, _ted, _freq in candidates:
            if _tokens_overlap(tokenize(name), layout_tokens):
                return InferenceResult(original_name, name, candidates, "keyword")
    return InferenceResult(original_name, candidates[0][0], candidates,
                           "top_frequency")


def build_corpus(bundles, out) -> Corpus:
    """One entry per decompiled activity with a bound layout and a
    non-obfuscated simple name; (app_id, activity) pairs deduplicated.
    """
    entries: list[CorpusEntry] = []
    seen: set[tuple[str, str]] = set()
    for bundle in bundles:
        for cls in bundle.activities():
            name = simple_name(cls.name)
            if cls.undecompiled or cls.layout is None or is_obfuscated(name):
                continue
            key = (bundle.app_id, name)
            if key in seen:
                continue
            seen.add(key)
            entries.append(CorpusEntry(
                activity_name=name,
                app_id=bundle.app_id,
                tree=extract_layout_tree(bundle.layouts[cls.layout]),
                layout_name=cls.layout,
            ))
    corpus = Corpus.from_entries(entries)
    corpus.save(out)
    return corpus


def annotate_graph_names(graph, bundle: AppBundle, corpus: Corpus | None,
                         threshold: int = 5) -> dict[str, InferenceResult]:
    """Inference results for every graph node, keyed by class name.

    Nodes without a usable static layout keep their original names; with
    no corpus every name passes through unchanged.
    """
    results: dict[str, InferenceResult] = {}
    for name in graph.nodes:
        short = simple_name(name)
        if corpus is None or not is_obfuscated(short):
            results[name] = InferenceResult(
                short, short, (),
                "not_obfuscated" if not is_obfuscated(short) else "no_candidates",
            )
            continue
        cls = bundle.code.get(name)
        if cls is None or cls.layout is None:
            results[name] = InferenceResult(short, short, (), "no_candidates")
            continue
        tree = extract_layout_tree(bundle.layouts[cls.layout])
        results[name] = infer_semantic_name(short, tree, cls.layout, corpus,
                                            threshold)
    return results
