"""Todd-Coxeter coset enumeration.

Two strategies share one numba kernel:

``hlt``
    relator-scan-first: every live coset in turn has each relator scanned and
    filled, then its row is completed.  When the table is full, a lookahead
    pass scans without defining and dead rows are compacted away.
``felsch``
    definition-first: the first empty entry is defined and all consequences are
    pushed through a deduction stack before the next definition.

Coincidences use union-find with the smaller coset number surviving.  Results
are renumbered breadth-first from the subgroup coset, so both strategies give
identical tables.  Cosets are numbered from 0; coset 0 is the subgroup.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numba
import numpy as np

from .coxeter import Presentation
from .permgrp import Permutation
from .words import Alphabet, Word

__all__ = [
    "EnumerationLimits",
    "CosetTable",
    "LimitExceeded",
    "EnumerationError",
    "ValidationReport",
    "enumerate_cosets",
    "index",
    "perm_images",
    "validate",
    "write_table",
    "read_table",
]

STRATEGIES = {
    "hlt": "hlt",
    "relator-scan-first": "hlt",
    "felsch": "felsch",
    "definition-first": "felsch",
}

OK, FULL = 0, 1
DED_CAP = 1 << 20

# state slots
S_FREE, S_LIVE, S_DEFINED, S_COLLAPSED, S_QLEN, S_DLEN, S_DOVER = range(7)


class LimitExceeded(RuntimeError):
    """The coset limit was reached; this says nothing about finiteness."""


class EnumerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = 5_000_000
    strategy: str = "hlt"
    compaction_threshold: float = 0.2

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be positive")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if not 0.0 <= self.compaction_threshold <= 1.0:
            raise ValueError("compaction_threshold must lie in [0, 1]")


# --- kernel -----------------------------------------------------------------

@numba.njit(cache=True)
def _rep(p, c):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        nx = p[c]
        p[c] = r
        c = nx
    return r


@numba.njit(cache=True)
def _push(ded, st, c, x):
    if st[S_DLEN] < ded.shape[0]:
        ded[st[S_DLEN], 0] = c
        ded[st[S_DLEN], 1] = x
        st[S_DLEN] += 1
    else:
        st[S_DOVER] = 1


@numba.njit(cache=True)
def _merge(p, queue, st, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return
    if a > b:
        a, b = b, a
    p[b] = a
    queue[st[S_QLEN]] = b
    st[S_QLEN] += 1
    st[S_COLLAPSED] += 1
    st[S_LIVE] -= 1


@numba.njit(cache=True)
def _coincidence(table, inv, p, queue, ded, st, a, b):
    ncols = table.shape[1]
    st[S_QLEN] = 0
    _merge(p, queue, st, a, b)
    qi = 0
    while qi < st[S_QLEN]:
        e = queue[qi]
        qi += 1
        for x in range(ncols):
            f = table[e, x]
            if f >= 0:
                ix = inv[x]
                table[f, ix] = -1
                e1 = _rep(p, e)
                f1 = _rep(p, f)
                if table[e1, x] >= 0:
                    _merge(p, queue, st, f1, table[e1, x])
                elif table[f1, ix] >= 0:
                    _merge(p, queue, st, e1, table[f1, ix])
                else:
                    table[e1, x] = f1
                    table[f1, ix] = e1
                    _push(ded, st, e1, x)


@numba.njit(cache=True)
def _define(table, inv, p, ded, st, c, x):
    n = st[S_FREE]
    if n >= table.shape[0]:
        return -1
    st[S_FREE] += 1
    st[S_LIVE] += 1
    st[S_DEFINED] += 1
    p[n] = n
    for y in range(table.shape[1]):
        table[n, y] = -1
    table[c, x] = n
    table[n, inv[x]] = c
    _push(ded, st, c, x)
    return n


@numba.njit(cache=True)
def _scan(table, inv, p, queue, ded, st, c, w, fill):
    """Scan ``w`` at ``c``; with ``fill`` define missing cosets on the way."""
    f = c
    b = c
    i = 0
    j = len(w) - 1
    while True:
        while i <= j and table[f, w[i]] >= 0:
            f = table[f, w[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, inv, p, queue, ded, st, f, b)
            return OK
        while j >= i and table[b, inv[w[j]]] >= 0:
            b = table[b, inv[w[j]]]
            j -= 1
        if j < i:
            _coincidence(table, inv, p, queue, ded, st, f, b)
            return OK
        if i == j:
            table[f, w[i]] = b
            table[b, inv[w[i]]] = f
            _push(ded, st, f, w[i])
            return OK
        if not fill:
            return OK
        if _define(table, inv, p, ded, st, f, w[i]) < 0:
            return FULL


@numba.njit(cache=True)
def _lookahead(table, inv, p, queue, ded, st, rel_flat, rel_off):
    for c in range(st[S_FREE]):
        if p[c] != c:
            continue
        for r in range(len(rel_off) - 1):
            _scan(table, inv, p, queue, ded, st, c, rel_flat[rel_off[r]:rel_off[r + 1]], False)
            if p[c] != c:
                break
    st[S_DLEN] = 0
    st[S_DOVER] = 0


@numba.njit(cache=True)
def _compact(table, p, st, cur):
    """Renumber live cosets in order; returns the new number of the first live
    coset at or after ``cur`` (or -1)."""
    n = st[S_FREE]
    newidx = np.full(n, -1, np.int32)
    k = 0
    for c in range(n):
        if p[c] == c:
            newidx[c] = k
            k += 1
    newcur = -1
    for c in range(cur, n):
        if newidx[c] >= 0:
            newcur = newidx[c]
            break
    for c in range(n):
        if newidx[c] >= 0:
            row = newidx[c]
            for x in range(table.shape[1]):
                t = table[c, x]
                table[row, x] = newidx[_rep(p, t)] if t >= 0 else -1
    for c in range(k):
        p[c] = c
    st[S_FREE] = k
    st[S_DLEN] = 0
    st[S_DOVER] = 0
    return newcur


@numba.njit(cache=True)
def _make_room(table, inv, p, queue, ded, st, rel_flat, rel_off, cur, threshold):
    cap = table.shape[0]
    if st[S_FREE] - st[S_LIVE] < threshold * cap:
        _lookahead(table, inv, p, queue, ded, st, rel_flat, rel_off)
    if st[S_FREE] == st[S_LIVE]:
        return -2
    return _compact(table, p, st, cur)


@numba.njit(cache=True)
def _process_deductions(table, inv, p, queue, ded, st, conj_flat, conj_off, by_col_off, rel_flat, rel_off):
    while True:
        while st[S_DLEN] > 0:
            st[S_DLEN] -= 1
            c = ded[st[S_DLEN], 0]
            x = ded[st[S_DLEN], 1]
            if p[c] != c:
                continue
            for k in range(by_col_off[x], by_col_off[x + 1]):
                _scan(table, inv, p, queue, ded, st, c, conj_flat[conj_off[k]:conj_off[k + 1]], False)
                if p[c] != c:
                    break
            if p[c] != c:
                continue
            d = table[c, x]
            if d < 0:
                continue
            ix = inv[x]
            for k in range(by_col_off[ix], by_col_off[ix + 1]):
                _scan(table, inv, p, queue, ded, st, d, conj_flat[conj_off[k]:conj_off[k + 1]], False)
                if p[d] != d:
                    break
        if st[S_DOVER] == 0:
            return
        # the stack overflowed: rescan everything
        st[S_DOVER] = 0
        for c in range(st[S_FREE]):
            if p[c] != c:
                continue
            for r in range(len(rel_off) - 1):
                _scan(table, inv, p, queue, ded, st, c, rel_flat[rel_off[r]:rel_off[r + 1]], False)
                if p[c] != c:
                    break


@numba.njit(cache=True)
def _first_hole(table, p, st, start):
    for c in range(start, st[S_FREE]):
        if p[c] != c:
            continue
        for x in range(table.shape[1]):
            if table[c, x] < 0:
                return c, x
    return -1, -1


@numba.njit(cache=True)
def _run(table, inv, p, queue, ded, st, rel_flat, rel_off, sub_flat, sub_off,
         conj_flat, conj_off, by_col_off, felsch, threshold):
    """Returns 0 on closure, 1 when the coset limit is exhausted."""
    ncols = table.shape[1]
    p[0] = 0
    for y in range(ncols):
        table[0, y] = -1
    st[S_FREE] = 1
    st[S_LIVE] = 1
    st[S_DEFINED] = 1

    # subgroup generators at coset 0
    for s in range(len(sub_off) - 1):
        while True:
            if _scan(table, inv, p, queue, ded, st, 0, sub_flat[sub_off[s]:sub_off[s + 1]], True) == OK:
                break
            if _make_room(table, inv, p, queue, ded, st, rel_flat, rel_off, 0, threshold) == -2:
                return 1
        if felsch:
            _process_deductions(table, inv, p, queue, ded, st, conj_flat, conj_off, by_col_off, rel_flat, rel_off)
    st[S_DLEN] = 0

    if felsch:
        start = 0
        while True:
            c, x = _first_hole(table, p, st, start)
            if c < 0:
                if start == 0:
                    # closing rescan: a complete table can only collapse further
                    collapsed = st[S_COLLAPSED]
                    st[S_DOVER] = 1
                    _process_deductions(table, inv, p, queue, ded, st, conj_flat, conj_off, by_col_off, rel_flat, rel_off)
                    if st[S_COLLAPSED] == collapsed:
                        return 0
                start = 0
                continue
            start = c
            if _define(table, inv, p, ded, st, c, x) < 0:
                cur = _make_room(table, inv, p, queue, ded, st, rel_flat, rel_off, c, threshold)
                if cur == -2:
                    return 1
                st[S_DOVER] = 1
                _process_deductions(table, inv, p, queue, ded, st, conj_flat, conj_off, by_col_off, rel_flat, rel_off)
                start = 0
                continue
            _process_deductions(table, inv, p, queue, ded, st, conj_flat, conj_off, by_col_off, rel_flat, rel_off)

    while True:
        c = 0
        while c < st[S_FREE]:
            if p[c] != c:
                c += 1
                continue
            restart = False
            for r in range(len(rel_off) - 1):
                if _scan(table, inv, p, queue, ded, st, c, rel_flat[rel_off[r]:rel_off[r + 1]], True) == FULL:
                    c = _make_room(table, inv, p, queue, ded, st, rel_flat, rel_off, c, threshold)
                    if c == -2:
                        return 1
                    restart = True
                    break
                if p[c] != c:
                    break
            st[S_DLEN] = 0
            if restart:
                if c < 0:
                    break
                continue
            if p[c] == c:
                for x in range(ncols):
                    if table[c, x] < 0:
                        if _define(table, inv, p, ded, st, c, x) < 0:
                            c = _make_room(table, inv, p, queue, ded, st, rel_flat, rel_off, c, threshold)
                            if c == -2:
                                return 1
                            restart = True
                            break
                st[S_DLEN] = 0
                if restart:
                    if c < 0:
                        break
                    continue
            c += 1
        hc, hx = _first_hole(table, p, st, 0)
        if hc < 0:
            return 0


@numba.njit(cache=True)
def _standardize(table, p, free):
    n = 0
    for c in range(free):
        if p[c] == c:
            n += 1
    ncols = table.shape[1]
    newidx = np.full(free, -1, np.int32)
    order = np.empty(n, np.int32)
    newidx[0] = 0
    order[0] = 0
    k = 1
    for i in range(n):
        c = order[i]
        for x in range(ncols):
            t = table[c, x]
            if newidx[t] < 0:
                newidx[t] = k
                order[k] = t
                k += 1
    out = np.empty((n, ncols), np.int32)
    for i in range(n):
        c = order[i]
        for x in range(ncols):
            out[i, x] = newidx[table[c, x]]
    return out


# --- Python layer ------------------------------------------------------------

def _columns(alph: Alphabet) -> tuple[int, np.ndarray]:
    n = len(alph)
    if alph.involutive:
        return n, np.arange(n, dtype=np.int32)
    inv = np.arange(2 * n, dtype=np.int32) ^ 1
    return 2 * n, inv


def _word_cols(w: Word) -> list[int]:
    if w.alphabet.involutive:
        return [g for g, _ in w.letters]
    return [2 * g + (0 if s > 0 else 1) for g, s in w.letters]


def _flatten(words: Sequence[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    off = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        off[i + 1] = off[i] + len(w)
    flat = np.array([x for w in words for x in w], dtype=np.int32)
    return flat, off


def _conjugates(rels: Sequence[list[int]], ncols: int):
    """Distinct cyclic conjugates grouped by first letter."""
    by_col: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    seen = set()
    for r in rels:
        for i in range(len(r)):
            c = tuple(r[i:] + r[:i])
            if c not in seen:
                seen.add(c)
                by_col[c[0]].append(c)
    ordered = [list(c) for col in by_col for c in col]
    flat, off = _flatten(ordered)
    by_col_off = np.zeros(ncols + 1, dtype=np.int64)
    for x in range(ncols):
        by_col_off[x + 1] = by_col_off[x] + len(by_col[x])
    return flat, off, by_col_off


def _cyclic_reduce(cols: list[int], inv: np.ndarray) -> list[int]:
    while len(cols) >= 2 and cols[0] == inv[cols[-1]]:
        cols = cols[1:-1]
    return cols


@dataclass(frozen=True)
class CosetTable:
    """A closed, standardized coset table.

    ``table[c, x]`` is the coset reached from ``c`` by column ``x``; columns are
    the generators, followed by inverses interleaved when the alphabet is not
    involutive.
    """

    alphabet: Alphabet
    table: np.ndarray
    defined_total: int = 0
    collapsed_total: int = 0
    strategy: str = "hlt"
    subgroup: tuple[str, ...] = ()

    @property
    def index(self) -> int:
        return int(self.table.shape[0])

    def action(self, gen: str | int) -> np.ndarray:
        g = gen if isinstance(gen, int) else self.alphabet.index(gen)
        col = g if self.alphabet.involutive else 2 * g
        return self.table[:, col]

    def perm_images(self) -> list[Permutation]:
        return [Permutation(self.action(g)) for g in range(len(self.alphabet))]

    def assignment(self) -> dict[str, Permutation]:
        return dict(zip(self.alphabet.names, self.perm_images()))

    def trace(self, w: Word, start: int = 0) -> int:
        c = start
        for col in _word_cols(w):
            c = int(self.table[c, col])
        return c

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CosetTable)
            and self.alphabet == other.alphabet
            and np.array_equal(self.table, other.table)
        )

    __hash__ = None


def enumerate_cosets(
    p: Presentation,
    subgroup: Sequence[Word | str] = (),
    limits: EnumerationLimits | None = None,
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the group presented by ``p``."""
    limits = limits or EnumerationLimits()
    alph = p.alphabet
    ncols, inv = _columns(alph)
    subs = [w if isinstance(w, Word) else p.word(w) for w in subgroup]
    for w in list(p.relators) + subs:
        if w.alphabet != alph:
            raise ValueError("word over a foreign alphabet")
    rels = [_cyclic_reduce(_word_cols(w), inv) for w in p.relators]
    rels = [r for r in rels if r]
    rel_flat, rel_off = _flatten(rels)
    sub_flat, sub_off = _flatten([_word_cols(w) for w in subs if len(w)])
    conj_flat, conj_off, by_col_off = _conjugates(rels, ncols)

    cap = int(limits.max_cosets)
    table = np.empty((cap, ncols), dtype=np.int32)
    pp = np.empty(cap, dtype=np.int32)
    queue = np.empty(cap, dtype=np.int32)
    ded = np.empty((DED_CAP, 2), dtype=np.int32)
    st = np.zeros(8, dtype=np.int64)
    felsch = STRATEGIES[limits.strategy] == "felsch"
    status = _run(table, inv, pp, queue, ded, st, rel_flat, rel_off, sub_flat, sub_off,
                  conj_flat, conj_off, by_col_off, felsch, float(limits.compaction_threshold))
    if status != 0:
        raise LimitExceeded(f"coset limit {cap} reached ({int(st[S_DEFINED])} cosets defined)")
    if st[S_LIVE] < 1:
        raise EnumerationError("enumeration collapsed to no cosets")
    std = _standardize(table, pp, int(st[S_FREE]))
    return CosetTable(
        alphabet=alph,
        table=std,
        defined_total=int(st[S_DEFINED]),
        collapsed_total=int(st[S_COLLAPSED]),
        strategy=STRATEGIES[limits.strategy],
        subgroup=tuple(str(w) for w in subs),
    )


def index(t: CosetTable) -> int:
    return t.index


def perm_images(t: CosetTable) -> list[Permutation]:
    return t.perm_images()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, str, int], ...]   # (kind, word, coset)
    relators_checked: int
    cosets: int

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(t: CosetTable, p: Presentation, subgroup: Sequence[Word | str] = ()) -> ValidationReport:
    """Rescan every relator at every coset and every subgroup word at coset 0."""
    n = t.index
    tab = t.table
    violations: list[tuple[str, str, int]] = []
    ncols, inv = _columns(t.alphabet)
    if tab.shape[1] != ncols or (tab < 0).any() or (tab >= n).any():
        return ValidationReport((("table", "incomplete", -1),), 0, n)
    for x in range(ncols):
        back = tab[tab[:, x], inv[x]]
        bad = np.flatnonzero(back != np.arange(n))
        violations += [("inverse", t.alphabet.names[x // (1 if t.alphabet.involutive else 2)], int(c)) for c in bad[:10]]
    for w in p.relators:
        pts = np.arange(n)
        for col in _word_cols(w):
            pts = tab[pts, col]
        bad = np.flatnonzero(pts != np.arange(n))
        violations += [("relator", str(w), int(c)) for c in bad[:10]]
    for w in subgroup:
        w = w if isinstance(w, Word) else p.word(w)
        if t.trace(w) != 0:
            violations.append(("subgroup", str(w), 0))
    return ValidationReport(tuple(violations), len(p.relators), n)


# --- table files -------------------------------------------------------------

def write_table(t: CosetTable, path: str | Path) -> None:
    """Save as ``.npz``: the standardized table plus a JSON header."""
    header = {
        "generators": list(t.alphabet.names),
        "involutive": t.alphabet.involutive,
        "index": t.index,
        "defined_total": t.defined_total,
        "collapsed_total": t.collapsed_total,
        "strategy": t.strategy,
        "subgroup": list(t.subgroup),
    }
    with open(path, "wb") as fh:
        np.savez_compressed(fh, table=t.table, header=np.array(json.dumps(header)))


def read_table(path: str | Path) -> CosetTable:
    with np.load(path) as data:
        header = json.loads(str(data["header"]))
        table = data["table"].astype(np.int32)
    return CosetTable(
        alphabet=Alphabet(tuple(header["generators"]), header["involutive"]),
        table=table,
        defined_total=header["defined_total"],
        collapsed_total=header["collapsed_total"],
        strategy=header["strategy"],
        subgroup=tuple(header["subgroup"]),
    )
