"""Name inference: obfuscation gate, ranking, keyword match, corpus I/O."""

import pytest

from storyboard.atg import extract_transitions
from storyboard.errors import ParseError
from storyboard.infer import (
    Corpus,
    CorpusEntry,
    annotate_graph_names,
    build_corpus,
    infer_semantic_name,
    is_obfuscated,
    load_corpus,
    tokenize,
)
from storyboard.ted import parse_tree, serialize_tree, tree_edit_distance

from conftest import start

T_ABOUT = "LinearLayout(TextView,TextView,Button)"
T_GRID = "GridView(ImageView,ImageView,ImageView,ImageView)"
T_FAR = "FrameLayout(FrameLayout(FrameLayout(FrameLayout(FrameLayout(FrameLayout(FrameLayout(ScrollView)))))))"


def entry(name, app, tree, layout):
    return CorpusEntry(name, app, parse_tree(tree), layout)


@pytest.fixture
def corpus():
    return Corpus.from_entries([
        entry("SettingsActivity", "app.s1", T_ABOUT, "settings"),
        entry("SettingsActivity", "app.s2", T_ABOUT, "settings"),
        entry("SettingsActivity", "app.s3", T_ABOUT, "prefs"),
        entry("AboutActivity", "app.a1", T_ABOUT, "about"),
        entry("PhotoGalleryActivity", "app.g1", T_GRID, "gallery"),
        entry("PhotoGalleryActivity", "app.g2", T_GRID, "wall"),
        entry("ImageWallActivity", "app.g3", T_GRID, "wall"),
    ])


@pytest.mark.parametrize("name, expected", [
    ("a", True),
    ("ab", True),
    ("a1", True),
    ("a$b", True),
    ("abc", False),
    ("ab2c", False),
    ("MainActivity", False),
])
def test_obfuscation_gate(name, expected):
    assert is_obfuscated(name) is expected


@pytest.mark.parametrize("name, tokens", [
    ("AboutActivity", ["about", "activity"]),
    ("grid_base", ["grid", "base"]),
    ("HTTPServer", ["http", "server"]),
    ("my-page.Two", ["my", "page", "two"]),
    ("page2", ["page2"]),
])
def test_tokenize(name, tokens):
    assert tokenize(name) == tokens


def test_keyword_beats_frequency(corpus):
    # SettingsActivity ranks first on frequency, but the layout name
    # "about" only overlaps AboutActivity's tokens
    result = infer_semantic_name("a", parse_tree(T_ABOUT), "about", corpus)
    assert result.inferred_name == "AboutActivity"
    assert result.matched_by == "keyword"
    assert [c[0] for c in result.candidates] == [
        "SettingsActivity", "AboutActivity"]


def test_top_frequency_fallback(corpus):
    # "grid_base" tokens match no candidate name: most frequent wins
    result = infer_semantic_name("b", parse_tree(T_GRID), "grid_base", corpus)
    assert result.inferred_name == "PhotoGalleryActivity"
    assert result.matched_by == "top_frequency"
    assert result.candidates[0] == ("PhotoGalleryActivity", 0, 2)


def test_not_obfuscated_passthrough(corpus):
    result = infer_semantic_name("MainActivity", parse_tree(T_ABOUT),
                                 "about", corpus)
    assert result.inferred_name == "MainActivity"
    assert result.matched_by == "not_obfuscated"
    assert result.candidates == ()


def test_no_candidates_within_threshold(corpus):
    far = parse_tree(T_FAR)
    for ted_entry in corpus.entries:
        assert tree_edit_distance(far, ted_entry.tree) >= 5
    result = infer_semantic_name("a", far, "misc", corpus)
    assert result.inferred_name == "a"
    assert result.matched_by == "no_candidates"


def test_threshold_is_strict():
    base = parse_tree(T_ABOUT)
    other = parse_tree("LinearLayout(ImageView,ImageView,EditText)")
    distance = tree_edit_distance(base, other)
    assert distance == 3
    corpus = Corpus.from_entries([entry("ListActivity", "app.x", T_ABOUT, "l")])
    at_limit = infer_semantic_name("a", other, "misc", corpus,
                                   threshold=distance)
    assert at_limit.matched_by == "no_candidates"
    above = infer_semantic_name("a", other, "misc", corpus,
                                threshold=distance + 1)
    assert above.candidates == (("ListActivity", distance, 1),)


def test_frequency_tie_breaks_lexicographically():
    corpus = Corpus.from_entries([
        entry("ZetaActivity", "app.1", T_ABOUT, "z"),
        entry("AlphaActivity", "app.2", T_ABOUT, "a"),
    ])
    result = infer_semantic_name("a", parse_tree(T_ABOUT), "misc", corpus)
    assert result.inferred_name == "AlphaActivity"
    assert [c[0] for c in result.candidates] == ["AlphaActivity",
                                                 "ZetaActivity"]


def test_duplicate_name_keeps_min_distance():
    near = "LinearLayout(TextView,TextView)"
    corpus = Corpus.from_entries([
        entry("AboutActivity", "app.1", T_ABOUT, "about"),
        entry("AboutActivity", "app.2", near, "about"),
    ])
    result = infer_semantic_name("a", parse_tree(near), "misc", corpus)
    assert result.candidates == (("AboutActivity", 0, 2),)


def test_all_stopword_layout_name_falls_back(corpus):
    result = infer_semantic_name("a", parse_tree(T_ABOUT),
                                 "activity_layout", corpus)
    assert result.matched_by == "top_frequency"
    assert result.inferred_name == "SettingsActivity"


def test_prefix_matching_both_directions():
    # layout token shorter than the name token and vice versa both count
    longer = Corpus.from_entries([
        entry("SearcherActivity", "app.1", T_ABOUT, "x"),
    ])
    assert infer_semantic_name("a", parse_tree(T_ABOUT), "search",
                               longer).matched_by == "keyword"
    shorter = Corpus.from_entries([
        entry("SearchActivity", "app.1", T_ABOUT, "x"),
    ])
    assert infer_semantic_name("a", parse_tree(T_ABOUT), "searcher",
                               shorter).matched_by == "keyword"
    assert infer_semantic_name("a", parse_tree(T_ABOUT), "find_stuff",
                               shorter).matched_by == "top_frequency"


def test_corpus_save_load_round_trip(tmp_path, corpus):
    path = tmp_path / "corpus.jsonl"
    corpus.save(path)
    loaded = load_corpus(path)
    assert loaded.name_frequency == corpus.name_frequency
    assert [
        (e.activity_name, e.app_id, e.layout_name, serialize_tree(e.tree))
        for e in loaded.entries
    ] == [
        (e.activity_name, e.app_id, e.layout_name, serialize_tree(e.tree))
        for e in corpus.entries
    ]


def test_load_corpus_reports_bad_line(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text('{"app_id": "a", "activity_name": "B", '
                    '"layout_name": "l", "tree": "TextView"}\n'
                    "not json\n")
    with pytest.raises(ParseError) as exc:
        load_corpus(path)
    assert exc.value.line == 2
    assert exc.value.file == str(path)


def test_load_corpus_reports_missing_field(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text('{"app_id": "a", "activity_name": "B"}\n')
    with pytest.raises(ParseError) as exc:
        load_corpus(path)
    assert "layout_name" in str(exc.value)


def test_build_corpus_filters_and_dedups(tmp_path, make_builder):
    one = make_builder("com.app.one")
    one.layout("main", "<LinearLayout><TextView text='hi' /></LinearLayout>")
    one.layout("x", "<FrameLayout><Button text='go' /></FrameLayout>")
    one.activity("MainActivity", layout="main")
    one.activity("a", layout="x")                 # obfuscated: skipped
    one.activity("NoLayoutActivity")              # no layout: skipped
    one.activity("GhostActivity", undecompiled=True)

    two = make_builder("com.app.two")
    two.layout("m", "<LinearLayout><EditText hint='q' /></LinearLayout>")
    two.activity("pkg.MainActivity", layout="m")
    two.activity("other.MainActivity", layout="m")  # same simple name: deduped

    out = tmp_path / "corpus.jsonl"
    corpus = build_corpus([one.build(), two.build()], out)
    assert [(e.app_id, e.activity_name) for e in corpus.entries] == [
        ("com.app.one", "MainActivity"),
        ("com.app.two", "MainActivity"),
    ]
    assert corpus.name_frequency == {"MainActivity": 2}
    assert load_corpus(out).name_frequency == {"MainActivity": 2}


def test_annotate_graph_names(builder):
    builder.layout("about", "<LinearLayout><TextView text='v1' />"
                            "<TextView text='c' /><Button text='ok' />"
                            "</LinearLayout>")
    builder.activity("MainActivity", layout="about", onCreate=[start("a")])
    builder.activity("a", layout="about")
    builder.activity("b")
    bundle = builder.build()
    graph = extract_transitions(bundle)
    corpus = Corpus.from_entries([
        entry("AboutActivity", "app.a1", T_ABOUT, "about"),
    ])
    results = annotate_graph_names(graph, bundle, corpus)
    assert results["MainActivity"].matched_by == "not_obfuscated"
    assert results["a"].inferred_name == "AboutActivity"
    assert results["a"].matched_by == "keyword"
    assert results["b"].matched_by == "no_candidates"
    assert results["b"].inferred_name == "b"


def test_annotate_without_corpus(builder):
    builder.activity("a")
    bundle = builder.build()
    graph = extract_transitions(bundle)
    results = annotate_graph_names(graph, bundle, None)
    assert results["a"].inferred_name == "a"
    assert results["a"].matched_by == "no_candidates"
