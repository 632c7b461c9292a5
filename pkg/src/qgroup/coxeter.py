"""Coxeter graphs, their presentations, and the named catalog of presentations.

A Coxeter graph on involutions has an edge between ``x`` and ``y`` when
``(xy)^3 = 1`` and no edge when ``(xy)^2 = 1``.  Presentations are stored as an
involutive :class:`~qgroup.words.Alphabet` plus relator words; the involution
relators ``g^2`` are implied by the alphabet and never listed.

Presentation files are plain text::

    # comment
    generators: a b c d e f a' c'
    involutive: true
    graph: Q_221            # optional; expands to all pair relators
    edges: x1-x2 x2-x0      # alternative to graph: explicit Coxeter edges
    relator: (adbecf)^4
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

import yaml

from .words import Alphabet, Word, parse_word, format_word, power

__all__ = [
    "CoxeterGraph",
    "Presentation",
    "CatalogEntry",
    "Fact",
    "preset_graph",
    "coxeter_presentation",
    "read_presentation",
    "write_presentation",
    "catalog",
    "catalog_names",
    "data_dir",
]

DATA_ENV = "QGROUP_DATA"
PROVENANCE = ("published", "trivial", "derived")


def data_dir() -> Path:
    """Directory holding the presentation, catalog and table files.

    Overridable through the ``QGROUP_DATA`` environment variable.
    """
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("qgroup") / "data"))


@dataclass(frozen=True)
class CoxeterGraph:
    nodes: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        edges = frozenset(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate nodes")
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"self-loop or malformed edge {set(e)}")
            if not e <= set(self.nodes):
                raise ValueError(f"edge {sorted(e)} has an endpoint outside the graph")

    @classmethod
    def from_pairs(cls, nodes: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "CoxeterGraph":
        return cls(tuple(nodes), frozenset(frozenset(p) for p in pairs))

    def adjacent(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.edges

    def neighbours(self, x: str) -> list[str]:
        return [y for y in self.nodes if y != x and self.adjacent(x, y)]


def _arm(label: str, length: int) -> list[str]:
    # a, a', a'', ... : the arm through `label` has `length` nodes including it
    return [label + "'" * i for i in range(length)]


_Q = re.compile(r"Q_?(\d)(\d)(\d)$")
_Y = re.compile(r"Y_?(\d)(\d)(\d)$")


def preset_graph(name: str, arms: tuple[int, int, int] | None = None) -> CoxeterGraph:
    """Named graph families.

    ``Q_rst``: hexagon a-b-c-d-e-f-a with arms of r, s, t nodes starting at
    a, c, e (``Q_111`` is the bare hexagon; the arm node next to ``a`` is
    ``a'``).

    ``Y_pqr``: tree centred at ``c`` with arms d-e-e'-..., b-a-a'-... and
    c'-c''-... of p, q and r nodes (``Y_321`` is E7).
    """
    if arms is not None:
        name = f"{name[0]}_{''.join(map(str, arms))}"
    m = _Q.match(name)
    if m:
        r, s, t = map(int, m.groups())
        if not all(1 <= k <= 4 for k in (r, s, t)):
            raise ValueError(f"arm lengths out of range in {name}")
        hexagon = list("abcdef")
        pairs = [(hexagon[i], hexagon[(i + 1) % 6]) for i in range(6)]
        extra: list[str] = []
        for base, k in (("a", r), ("c", s), ("e", t)):
            arm = _arm(base, k)
            pairs += list(zip(arm, arm[1:]))
            extra += arm[1:]
        return CoxeterGraph.from_pairs(hexagon + _order_primes(extra), pairs)
    m = _Y.match(name)
    if m:
        p, q, r = map(int, m.groups())
        if not all(1 <= k <= 4 for k in (p, q, r)):
            raise ValueError(f"arm lengths out of range in {name}")
        chain_d = ["d", "e"] + _arm("e", p - 1)[1:] if p >= 2 else ["d"][:p]
        chain_b = ["b", "a"] + _arm("a", q - 1)[1:] if q >= 2 else ["b"][:q]
        chain_c = _arm("c'", r)
        pairs = []
        for chain in (chain_d, chain_b, chain_c):
            path = ["c"] + chain
            pairs += list(zip(path, path[1:]))
        core = [x for x in "abcde" if x in {"c", *chain_b, *chain_d}]
        extra = [x for x in chain_b + chain_c + chain_d if x not in core]
        return CoxeterGraph.from_pairs(core + _order_primes(extra), pairs)
    raise KeyError(f"unknown preset graph {name!r}")


def _order_primes(labels: list[str]) -> list[str]:
    # a', c', e', then a'', c'', e'', ...
    return sorted(labels, key=lambda s: (s.count("'"), s))


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for w in self.relators:
            if w.alphabet != self.alphabet:
                raise ValueError("relator over a foreign alphabet")

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    def word(self, text: str, defs: Mapping[str, Word] | None = None) -> Word:
        return parse_word(text, self.alphabet, defs)

    def with_relators(self, extra: Iterable[Word | str], name: str | None = None) -> "Presentation":
        words = [w if isinstance(w, Word) else self.word(w) for w in extra]
        return Presentation(self.alphabet, self.relators + tuple(words), name or self.name)

    def restrict(self, labels: Iterable[str]) -> "Presentation":
        """Sub-presentation on ``labels`` keeping relators that only use them."""
        keep = list(labels)
        alph = Alphabet(tuple(keep), self.alphabet.involutive)
        rels = []
        for w in self.relators:
            names = w.labels()
            if set(names) <= set(keep):
                rels.append(Word.from_labels(alph, names) if alph.involutive else _remap(w, alph))
        return Presentation(alph, tuple(rels), self.name)


def _remap(w: Word, alph: Alphabet) -> Word:
    return Word(alph, tuple((alph.index(w.alphabet.names[g]), s) for g, s in w.letters))


def coxeter_presentation(g: CoxeterGraph, name: str = "") -> Presentation:
    alph = Alphabet(g.nodes, involutive=True)
    rels = []
    for x, y in itertools.combinations(g.nodes, 2):
        m = 3 if g.adjacent(x, y) else 2
        rels.append(power(Word.from_labels(alph, [x, y]), m))
    return Presentation(alph, tuple(rels), name)


# --- presentation files -----------------------------------------------------

def read_presentation(source: str | os.PathLike, name: str = "") -> Presentation:
    """Read a presentation from a file path or from literal text."""
    text = str(source)
    if "\n" not in text and Path(text).exists():
        name = name or Path(text).stem
        text = Path(text).read_text()
    gens: list[str] | None = None
    involutive = True
    graph: CoxeterGraph | None = None
    rel_texts: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "generators":
            gens = value.split()
        elif key == "involutive":
            involutive = value.lower() in ("true", "yes", "1")
        elif key == "graph":
            graph = preset_graph(value)
        elif key == "edges":
            if gens is None:
                raise ValueError(f"line {lineno}: 'edges' must follow 'generators'")
            graph = CoxeterGraph.from_pairs(gens, [tuple(e.split("-")) for e in value.split()])
        elif key == "relator":
            rel_texts.append(value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if gens is None:
        if graph is None:
            raise ValueError("presentation has no generators line")
        gens = list(graph.nodes)
    alph = Alphabet(tuple(gens), involutive)
    rels: list[Word] = []
    if graph is not None:
        if set(graph.nodes) != set(gens):
            raise ValueError("graph nodes differ from the generators line")
        base = coxeter_presentation(CoxeterGraph(tuple(gens), graph.edges))
        rels += list(base.relators)
    rels += [parse_word(t, alph) for t in rel_texts]
    return Presentation(alph, tuple(rels), name)


def write_presentation(p: Presentation) -> str:
    lines = [
        f"generators: {' '.join(p.alphabet.names)}",
        f"involutive: {'true' if p.alphabet.involutive else 'false'}",
    ]
    lines += [f"relator: {format_word(w)}" for w in p.relators]
    return "\n".join(lines) + "\n"


# --- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class Fact:
    key: str
    value: Any
    provenance: str
    claim: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"fact {self.key!r}: bad provenance {self.provenance!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    presentation: Presentation
    graph: CoxeterGraph | None
    distinguished_words: Mapping[str, Word]
    expected_facts: Mapping[str, Fact]
    computable: bool = True
    # words mentioning diagram-completion symbols that have no word expression
    symbolic_words: Mapping[str, Word] = field(default_factory=dict)
    completions: Mapping[str, Mapping[str, list[str]]] = field(default_factory=dict)
    data: Mapping[str, Any] = field(default_factory=dict)

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    def word(self, text: str) -> Word:
        """Parse ``text`` with this entry's distinguished words as macros."""
        return parse_word(text, self.alphabet, self.macros())

    def macros(self) -> dict[str, Word]:
        return {k: v for k, v in self.distinguished_words.items() if _macro_name(k)}

    def fact(self, key: str) -> Fact:
        return self.expected_facts[key]


def _macro_name(name: str) -> bool:
    return re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name) is not None


def _entry_graph(desc: Any) -> CoxeterGraph | None:
    if desc is None:
        return None
    if isinstance(desc, str):
        return preset_graph(desc)
    return CoxeterGraph.from_pairs(desc["nodes"], [tuple(e) for e in desc["edges"]])


def _build_entry(name: str, raw: Mapping[str, Any]) -> CatalogEntry:
    base = data_dir()
    graph = _entry_graph(raw.get("graph"))
    if "presentation" in raw:
        pres = read_presentation(base / "presentations" / raw["presentation"], name)
    elif graph is not None:
        pres = coxeter_presentation(graph, name)
    else:
        pres = Presentation(Alphabet(tuple(raw["generators"])), (), name)
    words: dict[str, Word] = {}
    for wname, text in (raw.get("words") or {}).items():
        words[wname] = parse_word(str(text), pres.alphabet, {k: v for k, v in words.items() if _macro_name(k)})
    completions = dict(raw.get("completions") or {})
    symbolic: dict[str, Word] = {}
    if raw.get("symbolic_words"):
        ext = Alphabet(pres.alphabet.names + tuple(completions), True)
        lifted = {k: Word(ext, v.letters) for k, v in words.items() if _macro_name(k)}
        for wname, text in raw["symbolic_words"].items():
            symbolic[wname] = parse_word(str(text), ext, lifted)
    facts = {}
    for key, f in (raw.get("facts") or {}).items():
        facts[key] = Fact(key, f["value"], f["provenance"], f.get("claim", ""))
    return CatalogEntry(
        name=name,
        title=raw.get("title", name),
        presentation=pres,
        graph=graph,
        distinguished_words=words,
        expected_facts=facts,
        computable=raw.get("computable", True),
        symbolic_words=symbolic,
        completions=completions,
        data=raw.get("data") or {},
    )


@lru_cache(maxsize=None)
def _load_catalog(path: str) -> dict[str, Any]:
    with open(path) as fh:
        return yaml.safe_load(fh)


def catalog_names() -> list[str]:
    return list(_load_catalog(str(data_dir() / "catalog.yaml")))


def catalog(name: str) -> CatalogEntry:
    raw = _load_catalog(str(data_dir() / "catalog.yaml"))
    if name not in raw:
        raise KeyError(f"unknown catalog entry {name!r}")
    return _cached_entry(str(data_dir()), name)


@lru_cache(maxsize=None)
def _cached_entry(base: str, name: str) -> CatalogEntry:
    return _build_entry(name, _load_catalog(str(Path(base) / "catalog.yaml"))[name])
