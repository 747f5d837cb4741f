"""Shared fixtures: an in-test bundle builder over the interchange format."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from storyboard.bundle import load_bundle


# statement shorthands, mirroring the code.model.json schema
def start(target, api="startActivity"):
    return {"kind": "start_activity", "target": target, "api": api}


def intent(var, target):
    return {"kind": "new_intent", "var": var, "target": target}


def commit(fragment, via="replace"):
    return {"kind": "fragment_commit", "fragment": fragment, "via": via}


def adapter(var, view_type, source):
    return {"kind": "set_adapter", "var": var, "view_type": view_type,
            "source": source}


def addview(parent, child):
    return {"kind": "add_view", "parent": parent, "child": child}


def inflate(layout, var):
    return {"kind": "inflate", "layout": layout, "var": var}


def comp(var, tag):
    return {"kind": "new_component", "var": var, "tag": tag}


def setattr_(var, attr, value):
    return {"kind": "set_attr", "var": var, "attr": attr, "value": value}


def call(cls, method):
    return {"kind": "call", "class": cls, "method": method}


def ret(value):
    return {"kind": "return_value", "value": value}


def callref(cls, method):
    return {"call": [cls, method]}


class BundleBuilder:
    """Writes a bundle directory piece by piece and loads it."""

    def __init__(self, root: Path, app_id: str = "com.example.app"):
        self.root = Path(root)
        self.app_id = app_id
        self.activities: list[str] = []
        self.main: str | None = None
        self.classes: list[dict] = []
        self._strings: dict[str, str] = {}
        self._colors: dict[str, str] = {}
        self._dimens: dict[str, str] = {}
        (self.root / "res" / "layout").mkdir(parents=True, exist_ok=True)

    def layout(self, name: str, xml: str) -> "BundleBuilder":
        (self.root / "res" / "layout" / f"{name}.xml").write_text(xml)
        return self

    def strings(self, **values) -> "BundleBuilder":
        self._strings.update(values)
        return self

    def colors(self, **values) -> "BundleBuilder":
        self._colors.update(values)
        return self

    def dimens(self, **values) -> "BundleBuilder":
        self._dimens.update(values)
        return self

    def clazz(self, name: str, kind: str | None = None, *, layout=None,
              outer=None, extends=None, undecompiled=False,
              declare=False, main=False, **methods) -> "BundleBuilder":
        entry: dict = {"name": name}
        if kind is not None:
            entry["kind"] = kind
        if layout is not None:
            entry["layout"] = layout
        if outer is not None:
            entry["outer_class"] = outer
        if extends is not None:
            entry["extends"] = extends
        if undecompiled:
            entry["undecompiled"] = True
        if methods:
            entry["methods"] = [
                {"name": mname, "statements": stmts}
                for mname, stmts in methods.items()
            ]
        self.classes.append(entry)
        if declare:
            self.activities.append(name)
            if main:
                self.main = name
        return self

    def activity(self, name: str, *, layout=None, main=False,
                 undecompiled=False, **methods) -> "BundleBuilder":
        return self.clazz(name, "activity", layout=layout, declare=True,
                          main=main, undecompiled=undecompiled, **methods)

    def fragment(self, name: str, *, layout=None, **methods) -> "BundleBuilder":
        return self.clazz(name, "fragment", layout=layout, **methods)

    def inner(self, name: str, outer: str, **methods) -> "BundleBuilder":
        return self.clazz(name, "inner", outer=outer, **methods)

    def plain(self, name: str, **methods) -> "BundleBuilder":
        return self.clazz(name, "plain", **methods)

    def write(self) -> Path:
        manifest = {"app_id": self.app_id, "activities": self.activities}
        if self.main is not None:
            manifest["main_activity"] = self.main
        (self.root / "manifest.json").write_text(json.dumps(manifest, indent=2))
        (self.root / "code.model.json").write_text(
            json.dumps({"classes": self.classes}, indent=2)
        )
        values = self.root / "res" / "values"
        if self._strings or self._colors or self._dimens:
            values.mkdir(exist_ok=True)

        def xml(tag: str, mapping: dict) -> str:
            rows = "\n".join(
                f'    <{tag} name="{k}">{v}</{tag}>' for k, v in mapping.items()
            )
            return f"<resources>\n{rows}\n</resources>\n"

        if self._strings:
            (values / "strings.xml").write_text(xml("string", self._strings))
        if self._colors:
            (values / "colors.xml").write_text(xml("color", self._colors))
        if self._dimens:
            (values / "dimens.xml").write_text(xml("dimen", self._dimens))
        return self.root

    def build(self):
        return load_bundle(self.write())


@pytest.fixture
def builder(tmp_path) -> BundleBuilder:
    return BundleBuilder(tmp_path / "bundle")


@pytest.fixture
def make_builder(tmp_path):
    """Factory for tests that need several bundles side by side."""
    count = 0

    def factory(app_id: str = "com.example.app") -> BundleBuilder:
        nonlocal count
        count += 1
        return BundleBuilder(tmp_path / f"bundle{count}", app_id=app_id)

    return factory


REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def demo_bundle_dir() -> Path:
    return REPO_ROOT / "demo" / "demo_bundle"


@pytest.fixture(scope="session")
def demo_corpus_path() -> Path:
    return REPO_ROOT / "demo" / "corpus.jsonl"
