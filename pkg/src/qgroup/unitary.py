"""The 6-dimensional Hermitian space over GF(4) and its unitary transvections.

Matrices act on row vectors: row ``i`` of a matrix is the image of ``v_{i+1}``,
so a word ``x y`` evaluates to ``M_x @ M_y`` (apply ``x`` first), the same
left-to-right convention as :mod:`qgroup.permgrp`.

Vectors are written ``v1+v3+w v6``; ``w`` is a primitive cube root of unity
and ``W`` (or ``w2``) is ``w^2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import gf4
from .gf4 import CONJ, MUL, SYMBOLS
from .words import Word

__all__ = [
    "HermitianSpace",
    "GF4Matrix",
    "default_space",
    "herm",
    "transvection",
    "parse_vector",
    "format_vector",
    "standard_assignment",
    "ASSIGNMENT_VECTORS",
    "E_PRINTED",
    "E_PRINTED_SIMPLIFIED",
    "EO_VECTOR",
    "evaluate_word",
    "check_relators",
    "RelatorCheck",
    "complete_diagram",
    "matrix_group_order",
    "action_permutations",
    "isotropic_classes",
    "NotIsotropic",
]

DIM = 6


class NotIsotropic(ValueError):
    pass


@dataclass(frozen=True)
class GF4Matrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.uint8)
        if a.shape != (DIM, DIM):
            raise ValueError(f"expected a {DIM}x{DIM} matrix")
        object.__setattr__(self, "entries", a)

    @classmethod
    def identity(cls) -> "GF4Matrix":
        return cls(np.eye(DIM, dtype=np.uint8))

    @classmethod
    def scalar(cls, s: int) -> "GF4Matrix":
        return cls(np.eye(DIM, dtype=np.uint8) * np.uint8(s))

    def __matmul__(self, other: "GF4Matrix") -> "GF4Matrix":
        return GF4Matrix(gf4.matmul(self.entries, other.entries))

    __mul__ = __matmul__

    def __eq__(self, other) -> bool:
        return isinstance(other, GF4Matrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __pow__(self, k: int) -> "GF4Matrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = GF4Matrix.identity()
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, v: np.ndarray) -> np.ndarray:
        return gf4.matmul(np.asarray(v, dtype=np.uint8)[None, :], self.entries)[0]

    def is_identity(self) -> bool:
        return self == GF4Matrix.identity()

    def scalar_value(self) -> int | None:
        """``s`` if this is ``s`` times the identity, else ``None``."""
        s = int(self.entries[0, 0])
        return s if s and self == GF4Matrix.scalar(s) else None

    def order(self, limit: int = 1000) -> int:
        x = self
        for k in range(1, limit + 1):
            if x.is_identity():
                return k
            x = x @ self
        raise ArithmeticError(f"order exceeds {limit}")

    def __str__(self):
        return "\n".join(" ".join(SYMBOLS[x] for x in row) for row in self.entries)


@dataclass(frozen=True)
class HermitianSpace:
    """GF(4)^6 with Gram matrix ``gram``.

    ``convention="second"`` makes the form conjugate-linear in its second
    argument, ``(u, v) = sum u_i conj(v_j) G_ij``; ``"first"`` conjugates the
    first argument instead.
    """

    gram: np.ndarray
    convention: str = "second"

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=np.uint8)
        object.__setattr__(self, "gram", g)
        if self.convention not in ("first", "second"):
            raise ValueError("convention must be 'first' or 'second'")
        if not np.array_equal(g.T, CONJ[g]):
            raise ValueError("Gram matrix is not conjugate-symmetric")

    def form(self, u, v) -> int:
        u = np.asarray(u, dtype=np.uint8)
        v = np.asarray(v, dtype=np.uint8)
        if self.convention == "second":
            left, right = u, CONJ[v]
        else:
            left, right = CONJ[u], v
        # sum_ij left_i G_ij right_j
        t = gf4.matmul(left[None, :], self.gram)[0]
        return int(np.bitwise_xor.reduce(MUL[t, right]))

    def forms_against(self, vs: np.ndarray, v) -> np.ndarray:
        """``(vs[r], v)`` for every row ``r``."""
        v = np.asarray(v, dtype=np.uint8)
        if self.convention == "second":
            col = gf4.matmul(self.gram, CONJ[v][:, None])[:, 0]
            return np.bitwise_xor.reduce(MUL[vs, col[None, :]], axis=1)
        col = gf4.matmul(self.gram, v[:, None])[:, 0]
        return np.bitwise_xor.reduce(MUL[CONJ[vs], col[None, :]], axis=1)

    def is_isotropic(self, v) -> bool:
        return self.form(v, v) == 0


# (v_i, v_j) = 1 on the edges of the t1..t6 diagram, except (v5, v3) = w
_GRAM_ONES = [(1, 2), (2, 3), (3, 4), (4, 6), (2, 5), (4, 5)]


def default_space(convention: str = "second") -> HermitianSpace:
    g = np.zeros((DIM, DIM), dtype=np.uint8)
    for i, j in _GRAM_ONES:
        g[i - 1, j - 1] = g[j - 1, i - 1] = 1
    g[4, 2] = gf4.W
    g[2, 4] = gf4.W2
    return HermitianSpace(g, convention)


def herm(space: HermitianSpace, u, v) -> int:
    return space.form(u, v)


def transvection(space: HermitianSpace, v) -> GF4Matrix:
    """The map ``x -> x + (x, v) v``."""
    v = np.asarray(v, dtype=np.uint8)
    if not v.any():
        raise NotIsotropic("zero vector")
    if not space.is_isotropic(v):
        raise NotIsotropic(f"{format_vector(v)} is not isotropic")
    eye = np.eye(DIM, dtype=np.uint8)
    coeffs = space.forms_against(eye, v)
    return GF4Matrix(eye ^ MUL[coeffs[:, None], v[None, :]])


# --- vector text ------------------------------------------------------------

_SCALARS = {"1": 1, "w": 2, "W": 3, "w2": 3, "w^2": 3}
_TOKEN = re.compile(r"\s*(w\^2|w2|w|W|1|v\d|[()+])")


def parse_vector(text: str) -> np.ndarray:
    """Parse ``"w^2 v1 + w(v1+v6) + v5"`` style text into a coordinate vector."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad vector syntax at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens_iter = iter(tokens + [""])
    state = {"tok": next(tokens_iter)}

    def advance():
        state["tok"] = next(tokens_iter)

    def expr() -> np.ndarray:
        acc = np.zeros(DIM, dtype=np.uint8)
        acc ^= term()
        while state["tok"] == "+":
            advance()
            acc ^= term()
        return acc

    def term() -> np.ndarray:
        s = 1
        while state["tok"] in _SCALARS:
            s = gf4.mul(s, _SCALARS[state["tok"]])
            advance()
        tok = state["tok"]
        if tok == "(":
            advance()
            v = expr()
            if state["tok"] != ")":
                raise ValueError("unbalanced parentheses")
            advance()
        elif tok.startswith("v"):
            i = int(tok[1:])
            if not 1 <= i <= DIM:
                raise ValueError(f"basis index out of range: {tok}")
            v = np.zeros(DIM, dtype=np.uint8)
            v[i - 1] = 1
            advance()
        else:
            raise ValueError(f"unexpected token {tok!r}")
        return MUL[s, v]

    v = expr()
    if state["tok"] != "":
        raise ValueError(f"trailing input {state['tok']!r}")
    return v


def format_vector(v) -> str:
    parts = []
    for i, c in enumerate(np.asarray(v)):
        if c:
            coef = {1: "", 2: "w ", 3: "W "}[int(c)]
            parts.append(f"{coef}v{i + 1}")
    return "+".join(parts) if parts else "0"


# --- the standard assignment ------------------------------------------------

# generator -> vector as written; "e" carries a one-subscript correction, the
# printed form is kept as "e_printed"
ASSIGNMENT_VECTORS: dict[str, str] = {
    "a": "v4+v5",
    "b": "v2",
    "c": "v1",
    "d": "v2+w(v1+v3)+w v6",
    "e": "w^2 v1+w(v3+v6)+v5",
    "f": "v1+v3",
    "a'": "v6",
    "c'": "v2+v6",
}
E_PRINTED = "w^2 v1+w(v1+v6)+v5"
E_PRINTED_SIMPLIFIED = "v1+v5+w v6"
EO_VECTOR = "v1+v3+w v6"


def standard_assignment(space: HermitianSpace | None = None, e_form: str = "corrected") -> dict[str, GF4Matrix]:
    """Transvections for a..f, a', c'.

    ``e_form`` selects the vector for ``e``: ``"corrected"`` (default),
    ``"printed"`` or ``"printed-simplified"`` (the last two are equal vectors).
    """
    space = space or default_space()
    vecs = dict(ASSIGNMENT_VECTORS)
    if e_form == "printed":
        vecs["e"] = E_PRINTED
    elif e_form == "printed-simplified":
        vecs["e"] = E_PRINTED_SIMPLIFIED
    elif e_form != "corrected":
        raise ValueError(f"unknown e_form {e_form!r}")
    return {g: transvection(space, parse_vector(t)) for g, t in vecs.items()}


def evaluate_word(w: Word, assignment: Mapping[str, GF4Matrix]) -> GF4Matrix:
    names = w.alphabet.names
    out = np.eye(DIM, dtype=np.uint8)
    for g, s in w.letters:
        m = assignment[names[g]]
        if s < 0 and not w.alphabet.involutive:
            m = _inverse(m)
        out = gf4.matmul(out, m.entries)
    return GF4Matrix(out)


def _inverse(m: GF4Matrix) -> GF4Matrix:
    x, prev = m, GF4Matrix.identity()
    while not x.is_identity():
        prev, x = x, x @ m
    return prev


@dataclass(frozen=True)
class RelatorCheck:
    relator: str
    status: str          # "identity", "scalar" or "violation"
    scalar: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "identity"

    @property
    def projective_ok(self) -> bool:
        return self.status != "violation"


def check_relators(relators: Iterable[Word], assignment: Mapping[str, GF4Matrix]) -> list[RelatorCheck]:
    """Evaluate each relator; scalars other than 1 are reported as such."""
    out = []
    for w in relators:
        m = evaluate_word(w, assignment)
        if m.is_identity():
            out.append(RelatorCheck(str(w), "identity", 1))
        elif (s := m.scalar_value()) is not None:
            out.append(RelatorCheck(str(w), "scalar", s))
        else:
            out.append(RelatorCheck(str(w), "violation"))
    return out


# --- searches over vectors ---------------------------------------------------

@dataclass(frozen=True)
class _Vectors:
    space: HermitianSpace

    @cached_property
    def all(self) -> np.ndarray:
        return gf4.all_vectors(DIM)

    @cached_property
    def norms(self) -> np.ndarray:
        v = self.all
        if self.space.convention == "second":
            t = gf4.matmul(v, self.space.gram)
            return np.bitwise_xor.reduce(MUL[t, CONJ[v]], axis=1)
        t = gf4.matmul(CONJ[v], self.space.gram)
        return np.bitwise_xor.reduce(MUL[t, v], axis=1)


def _canonical_codes() -> np.ndarray:
    # codes whose first nonzero coordinate is 1
    v = gf4.all_vectors(DIM)
    first = np.argmax(v != 0, axis=1)
    lead = v[np.arange(len(v)), first]
    return np.flatnonzero(lead == 1)


def isotropic_classes(space: HermitianSpace) -> np.ndarray:
    """Canonical representatives of the isotropic projective points."""
    vs = _Vectors(space)
    codes = _canonical_codes()
    keep = codes[vs.norms[codes] == 0]
    return vs.all[keep]


def complete_diagram(
    space: HermitianSpace,
    assignment: Mapping[str, GF4Matrix],
    constraints: Sequence[tuple[str, int]],
) -> list[np.ndarray]:
    """Isotropic classes ``v`` with ``order(t_v * assignment[g]) == m`` for every ``(g, m)``."""
    out = []
    for v in isotropic_classes(space):
        t = transvection(space, v)
        if all((t @ assignment[g]).order(limit=12) == m for g, m in constraints):
            out.append(v)
    return out


# --- permutation actions ------------------------------------------------------

def action_permutations(gens: Sequence[GF4Matrix], projective: bool = False):
    """Permutations induced on nonzero vectors (4095 points) or on projective
    points (1365 points)."""
    from .permgrp import Permutation

    vs = gf4.all_vectors(DIM)
    weights = (4 ** np.arange(DIM)).astype(np.int64)
    if projective:
        codes = _canonical_codes()
        index = np.full(4 ** DIM, -1, dtype=np.int64)
        index[codes] = np.arange(len(codes))
        # map every nonzero vector to its class
        first = np.argmax(vs != 0, axis=1)
        lead = vs[np.arange(len(vs)), first]
        normal = MUL[gf4.INV[lead][:, None], vs]
        cls_of = index[normal @ weights]
        points = vs[codes]
        perms = []
        for m in gens:
            img = gf4.matmul(points, m.entries) @ weights
            perms.append(Permutation(cls_of[img]))
        return perms
    points = vs[1:]
    perms = []
    for m in gens:
        img = gf4.matmul(points, m.entries) @ weights
        perms.append(Permutation(img - 1))
    return perms


def matrix_group_order(gens: Sequence[GF4Matrix], projective: bool = False) -> int:
    """Order of the group generated by ``gens`` via its permutation action.

    On all 4095 nonzero vectors the action is faithful; with
    ``projective=True`` the order of the image modulo scalars is returned.
    """
    from .permgrp import PermGroup

    gens = [m for m in gens if not m.is_identity()]
    if not gens:
        return 1
    return PermGroup(action_permutations(gens, projective)).order()
