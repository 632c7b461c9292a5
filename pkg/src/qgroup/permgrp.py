"""Permutation groups: products, element orders, Schreier-Sims, exhaustive search.

Points are ``0 .. n-1``.  Products compose left to right: ``p * q`` applies
``p`` first, so ``(p * q).images == q.images[p.images]``.  This matches the
right-action convention for words, where ``x^w = w^-1 x w``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .words import Word

__all__ = [
    "Permutation",
    "PermGroup",
    "group_order",
    "evaluate",
    "element_order",
    "is_central",
    "exhaustive_search",
    "SearchBoundExceeded",
    "iter_elements",
    "batch_compose",
    "batch_order_is",
]


def _dtype(n: int):
    return np.int16 if n < 2 ** 15 else np.int32


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images)
        self.images = arr.astype(_dtype(len(arr)), copy=False)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = np.arange(n)
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[self.images])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=self.images.dtype)
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Permutation(degree={self.degree}, cycles={self.cycles()[:4]}...)"

    def is_identity(self) -> bool:
        return bool(np.all(self.images == np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = int(self.images[x])
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return element_order(self)

    def commutes(self, other: "Permutation") -> bool:
        return np.array_equal(other.images[self.images], self.images[other.images])


def element_order(p: Permutation) -> int:
    """lcm of the cycle lengths."""
    return math.lcm(1, *(len(c) for c in p.cycles()))


def evaluate(w: Word, assignment: Mapping[str, Permutation] | Sequence[Permutation]) -> Permutation:
    """Image of ``w`` under generator images, composing left to right."""
    names = w.alphabet.names
    if isinstance(assignment, Mapping):
        missing = {names[g] for g, _ in w.letters} - set(assignment)
        if missing:
            raise KeyError(f"unassigned letters {sorted(missing)}")
        gens = [assignment.get(x) for x in names]
    else:
        gens = list(assignment)
    degrees = {g.degree for g in gens if g is not None}
    if len(degrees) > 1:
        raise ValueError("generator images of different degrees")
    n = degrees.pop()
    images = np.arange(n, dtype=_dtype(n))
    inverses: dict[int, np.ndarray] = {}
    for g, s in w.letters:
        if s > 0:
            images = gens[g].images[images]
        else:
            if g not in inverses:
                inverses[g] = gens[g].inverse().images
            images = inverses[g][images]
    return Permutation(images)


class SearchBoundExceeded(RuntimeError):
    pass


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray]
    orbit: list[int] = field(default_factory=list)
    pos: np.ndarray | None = None          # point -> row in orbit, -1 if absent
    uinv: list[np.ndarray] = field(default_factory=list)  # row r: inverse of u_{orbit[r]}
    checked: set = field(default_factory=set)


class PermGroup:
    """Group generated by permutations; the stabilizer chain is built lazily.

    ``group.levels`` exposes base points and transversals once computed.
    """

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree needed for an empty generating set")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("degree mismatch among generators")
        self.generators = gens
        self.degree = degree
        self._levels: list[_Level] | None = None

    # --- Schreier-Sims -------------------------------------------------------

    @property
    def levels(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    @property
    def base(self) -> list[int]:
        return [L.base for L in self.levels]

    def order(self) -> int:
        return math.prod(len(L.orbit) for L in self.levels)

    def _extend_orbit(self, L: _Level, new_gen: np.ndarray | None = None):
        n = self.degree
        dt = _dtype(n)
        if L.pos is None:
            L.pos = np.full(n, -1, dtype=np.int64)
            L.orbit = [L.base]
            L.pos[L.base] = 0
            L.uinv = [np.arange(n, dtype=dt)]
            frontier = [L.base]
        else:
            frontier = list(L.orbit) if new_gen is not None else []
        # u_{b^s} = u_b s, so inv(u_{b^s}) = inv(s) inv(u_b)
        inv_gens = [_inv(s) for s in L.gens]
        while frontier:
            nxt = []
            for b in frontier:
                ub_inv = L.uinv[L.pos[b]]
                for s, s_inv in zip(L.gens, inv_gens):
                    c = int(s[b])
                    if L.pos[c] < 0:
                        L.pos[c] = len(L.orbit)
                        L.orbit.append(c)
                        L.uinv.append(ub_inv[s_inv])
                        nxt.append(c)
            frontier = nxt

    def _sift(self, levels: list[_Level], h: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(levels)):
            L = levels[i]
            r = L.pos[h[L.base]]
            if r < 0:
                return h, i
            h = L.uinv[r][h]
        return h, len(levels)

    def _schreier_sims(self) -> list[_Level]:
        n = self.degree
        ident = np.arange(n)
        gens = [g.images for g in self.generators if not g.is_identity()]
        levels: list[_Level] = []
        if not gens:
            return levels

        def new_level(h: np.ndarray) -> _Level:
            moved = np.flatnonzero(h != ident)
            L = _Level(base=int(moved[0]), gens=[])
            levels.append(L)
            return L

        L0 = new_level(gens[0])
        L0.gens = list(gens)
        self._extend_orbit(L0)
        i = 0
        while i >= 0:
            if i >= len(levels):
                i -= 1
                continue
            L = levels[i]
            added_at = None
            for r in range(len(L.orbit)):
                b = L.orbit[r]
                u_b = _inv(L.uinv[r])
                for gi, s in enumerate(L.gens):
                    if (r, gi) in L.checked:
                        continue
                    L.checked.add((r, gi))
                    c = int(s[b])
                    g = L.uinv[L.pos[c]][s[u_b]]  # u_b s inv(u_c)
                    if np.array_equal(g, ident):
                        continue
                    h, j = self._sift(levels, g, i + 1)
                    if np.array_equal(h, ident):
                        continue
                    if j == len(levels):
                        new_level(h)
                    for l in range(i + 1, j + 1):
                        levels[l].gens.append(h)
                        self._extend_orbit(levels[l], h)
                    added_at = j
                    break
                if added_at is not None:
                    break
            if added_at is not None:
                i = added_at
            else:
                i -= 1
        return levels

    # --- queries -------------------------------------------------------------

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        h, j = self._sift(self.levels, p.images, 0)
        return j == len(self.levels) and np.array_equal(h, np.arange(self.degree))

    def transversal_matrices(self) -> list[np.ndarray]:
        """Level ``i`` as an array whose rows are the coset representatives."""
        out = []
        for L in self.levels:
            m = np.stack(L.uinv)
            u = np.empty_like(m)
            np.put_along_axis(u, m.astype(np.int64), np.broadcast_to(np.arange(self.degree, dtype=m.dtype), m.shape), axis=1)
            out.append(u)
        return out


def _inv(images: np.ndarray) -> np.ndarray:
    inv = np.empty_like(images)
    inv[images] = np.arange(len(images), dtype=images.dtype)
    return inv


def group_order(g: PermGroup | Sequence[Permutation]) -> int:
    if not isinstance(g, PermGroup):
        g = PermGroup(g)
    return g.order()


def is_central(p: Permutation, g: PermGroup | Sequence[Permutation]) -> bool:
    gens = g.generators if isinstance(g, PermGroup) else list(g)
    return all(p.commutes(s) for s in gens)


def iter_elements(g: PermGroup, block_rows: int = 1 << 16) -> Iterator[np.ndarray]:
    """Stream all elements as row blocks, each row one element's images.

    Every element factors uniquely as ``s_k ... s_1 s_0`` with ``s_i`` in the
    level-``i`` transversal.  The bottom levels are multiplied out into one
    block; the top levels are walked as a mixed-radix counter.
    """
    n = g.degree
    mats = g.transversal_matrices()
    if not mats:
        yield np.arange(n, dtype=_dtype(n))[None, :]
        return
    # bottom block = { s_j ... s_0 } for j = 0 .. cut-1
    block = mats[0]
    cut = 1
    while cut < len(mats) and len(block) * len(mats[cut]) <= block_rows:
        # s_cut then (s_{cut-1} ... s_0)
        block = block[:, mats[cut]].transpose(1, 0, 2).reshape(-1, n)
        cut += 1
    top = mats[cut:][::-1]
    ident = np.arange(n, dtype=block.dtype)
    # depth-first over s_k ... s_cut, applied first
    stack = [ident]
    idx = [0] * len(top)
    if not top:
        yield block
        return
    while True:
        while len(stack) <= len(top):
            lvl = len(stack) - 1
            stack.append(top[lvl][idx[lvl]][stack[-1]])
        prefix = stack[-1]
        yield block[:, prefix]
        # advance counter
        lvl = len(top) - 1
        while lvl >= 0:
            stack.pop()
            idx[lvl] += 1
            if idx[lvl] < len(top[lvl]):
                break
            idx[lvl] = 0
            lvl -= 1
        if lvl < 0:
            return


def exhaustive_search(
    g: PermGroup,
    predicate: Callable,
    bound: int = 10 ** 7,
    vectorized: bool = False,
) -> list[Permutation]:
    """All elements satisfying ``predicate``.

    With ``vectorized=True`` the predicate receives a 2-D array of elements
    (one per row) and returns a boolean mask; otherwise it gets one
    :class:`Permutation` at a time.
    """
    order = g.order()
    if order > bound:
        raise SearchBoundExceeded(f"group order {order} exceeds search bound {bound}")
    found = []
    for block in iter_elements(g):
        if vectorized:
            mask = np.asarray(predicate(block), dtype=bool)
            found.extend(Permutation(row) for row in block[mask])
        else:
            found.extend(p for p in (Permutation(row) for row in block) if predicate(p))
    return found


def batch_compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise ``a * b`` for element blocks; ``b`` may be a single permutation."""
    if b.ndim == 1:
        return b[a]
    return np.take_along_axis(b, a.astype(np.int64), axis=1)


def batch_order_is(block: np.ndarray, k: int) -> np.ndarray:
    """Mask of rows whose element order is exactly ``k``."""
    n = block.shape[1]
    ident = np.arange(n)
    powers = {1: block}
    x = block
    for e in range(2, k + 1):
        x = batch_compose(x, block)
        powers[e] = x
    is_id = {e: np.all(p == ident, axis=1) for e, p in powers.items()}
    mask = is_id[k].copy()
    for d in range(1, k):
        if k % d == 0:
            mask &= ~is_id[d]
    return mask
