"""The normal 2-subgroup N of order 2^23 rebuilt from its commutator and
conjugation tables.

Elements are pairs ``(k-bit, u)`` with ``u`` a bit mask over an ordered
effective basis.  The pair stands for ``k^eps * prod_{i in u, ascending} e_i``;
multiplication is twisted by the cocycle ``c(u, u') = sum_{i>j} u_i u'_j B(i,j)``
where ``B`` is the commutator form of table T4 (``B(i,j) = 1`` iff
``[e_i, e_j] = k``).

Each ``y`` in ``Y = {a', a, b, c, c', d, e, f}`` acts on N by conjugation,
given on generators by tables T2/T3 (with ``t1..t22`` resolved through T5).
A word ``y1 y2 ... yn`` acts by applying ``y1`` first.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coxeter import data_dir
from .words import Word

__all__ = [
    "GAMMA",
    "Y",
    "VARIANTS",
    "NElement",
    "NGroup",
    "Automorphism",
    "Tables",
    "TableError",
    "load_tables",
    "build",
    "CheckResult",
    "verify_tables",
    "DIHEDRAL_PAIRS",
    "DIHEDRAL_PAIRS_PRINTED",
    "t1_checks",
    "dihedral_report",
    "symplectic_basis",
    "arf_invariant",
    "structure",
]

Y = ("a'", "a", "b", "c", "c'", "d", "e", "f")
GAMMA = (
    "aa'", "aa", "ab", "ac", "ac'", "ad", "ae", "af",
    "ba'", "ba", "bb", "bc", "bc'", "bd", "be", "bf",
    "xa", "xf", "ac_f", "ac_fa", "ac_fe", "ac_fae", "be_b", "be_ba",
)
VARIANTS = ("rel1", "rel2", "rel3")

# superfluous generators and their expressions
S1 = ("bb", "ab ad af bd bf")
S2 = ("bc'", "aa' bd bf")
REL1_EXTRA = (("aa'", "ab ac'"), ("ba'", "ac' ad af k"))

Z_WORD = "aa' ab ac'"
ZHAT_WORD = "ac' ad af ba'"

# beta_e^d = be bd as printed leaves N1 one dimension short; beta_e^b completes it
DIHEDRAL_PAIRS_PRINTED = (
    ("aa", "af"), ("ab", "ba"), ("ac'", "bc"), ("ac", "bd"), ("ad", "be"),
    ("ae", "bf"), ("ac_fa", "be bd"), ("ac_f", "be_ba"),
    ("xf", "ac_fae ac_f"), ("xa", "ac_fe ac_f"),
)
DIHEDRAL_PAIRS = tuple(
    ("ac_fa", "be_b") if p == ("ac_fa", "be bd") else p for p in DIHEDRAL_PAIRS_PRINTED
)


class TableError(ValueError):
    pass


# --- table files -------------------------------------------------------------

def _read_grid(path: Path) -> tuple[list[str], dict[str, list[str]]]:
    rows: dict[str, list[str]] = {}
    header: list[str] | None = None
    for raw in path.read_text().splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in raw.split("|")]
        if header is None:
            header = cells[1:]
            continue
        if len(cells) - 1 != len(header):
            raise TableError(f"{path.name}: row {cells[0]!r} has {len(cells) - 1} cells, expected {len(header)}")
        if cells[0] in rows:
            raise TableError(f"{path.name}: duplicate row {cells[0]!r}")
        rows[cells[0]] = cells[1:]
    if header is None:
        raise TableError(f"{path.name}: empty table")
    return header, rows


@dataclass(frozen=True)
class Tables:
    conj: Mapping[str, Mapping[str, str]]       # gamma -> y -> cell (T2 + T3)
    comm: Mapping[frozenset, int]                # {gamma, gamma'} -> 1 if k
    t_values: Mapping[str, str]                  # t_i -> cell
    t_meta: Mapping[str, tuple[str, str]]        # t_i -> (conjugate, reference)
    orders: Mapping[str, Mapping[str, int]]      # T1 row -> column -> order
    filled: frozenset = frozenset()               # T4 pairs completed by symmetry
    checksums: Mapping[str, str] = field(default_factory=dict)


def _checksums(base: Path) -> dict[str, str]:
    sums = {}
    manifest = base / "SHA256SUMS"
    for line in manifest.read_text().splitlines():
        if line.strip():
            digest, name = line.split()
            sums[name] = digest
    for name, digest in sums.items():
        actual = hashlib.sha256((base / name).read_bytes()).hexdigest()
        if actual != digest:
            raise TableError(f"checksum mismatch for {name}")
    return sums


def load_tables(base: str | Path | None = None, check: bool = True) -> Tables:
    base = Path(base) if base is not None else data_dir() / "tables"
    sums = _checksums(base) if check else {}
    conj: dict[str, dict[str, str]] = {}
    for name in ("T2.txt", "T3.txt"):
        header, rows = _read_grid(base / name)
        if tuple(header) != Y:
            raise TableError(f"{name}: columns must be {Y}")
        for g, cells in rows.items():
            conj[g] = dict(zip(header, cells))
    if set(conj) != set(GAMMA):
        raise TableError(f"T2/T3 rows differ from Gamma: {set(conj) ^ set(GAMMA)}")
    header, rows = _read_grid(base / "T4.txt")
    comm: dict[frozenset, int] = {}
    blank: set[frozenset] = set()
    for g, cells in rows.items():
        for h, cell in zip(header, cells):
            if cell not in ("", "k", "1"):
                raise TableError(f"T4 cell [{g},{h}] = {cell!r}")
            key = frozenset((g, h))
            if cell == "k":
                comm[key] = 1
            else:
                blank.add(key)
    # a pair listed in both orientations may be blank in one of them; the
    # 'k' wins (the blank is an omitted entry) and is reported
    filled = frozenset(key for key in blank if key in comm)
    header, rows = _read_grid(base / "T5.txt")
    t_values = {t: cells[header.index("value")] for t, cells in rows.items()}
    t_meta = {t: (cells[header.index("conjugate")], cells[header.index("ref")]) for t, cells in rows.items()}
    header, rows = _read_grid(base / "T1.txt")
    orders = {r: {c: int(v) for c, v in zip(header, cells) if v} for r, cells in rows.items()}
    return Tables(conj, comm, t_values, t_meta, orders, filled, sums)


# --- the group -----------------------------------------------------------------

@dataclass(frozen=True)
class NElement:
    k: int
    u: int

    def __repr__(self):
        return f"NElement(k={self.k}, u={self.u:#x})"


def _bits(u: int) -> Iterable[int]:
    while u:
        low = u & -u
        yield low.bit_length() - 1
        u ^= low


def _parity(x: int) -> int:
    return x.bit_count() & 1


class NGroup:
    """N for one relation variant, built over its effective basis."""

    def __init__(self, variant: str = "rel3", tables: Tables | None = None,
                 comm_override: Mapping[frozenset, int] | None = None):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.variant = variant
        self.tables = tables or load_tables()
        comm = dict(self.tables.comm)
        if comm_override:
            comm.update(comm_override)
        self.comm24 = comm
        eliminated = (list(REL1_EXTRA) if variant == "rel1" else []) + [S1, S2]
        self.eliminated = dict(eliminated)
        self.basis = tuple(g for g in GAMMA if g not in self.eliminated)
        n = len(self.basis)
        self.B = np.zeros((n, n), dtype=np.uint8)
        for i, g in enumerate(self.basis):
            for j, h in enumerate(self.basis):
                self.B[i, j] = comm.get(frozenset((g, h)), 0) if i != j else 0
        # lower[i]: mask of j < i with B(i, j) = 1
        self._lower = [sum(1 << j for j in range(i) if self.B[i, j]) for i in range(n)]
        self._row = [sum(1 << j for j in range(n) if self.B[i, j]) for i in range(n)]
        self.identity = NElement(0, 0)
        self.k = NElement(1, 0)
        self.gamma: dict[str, NElement] = {g: NElement(0, 1 << i) for i, g in enumerate(self.basis)}
        self.gamma["k"] = self.k
        for g, expr in eliminated:
            self.gamma[g] = self.parse(expr)

    # group law
    def _cocycle(self, u: int, v: int) -> int:
        return sum(_parity(self._lower[i] & v) for i in _bits(u)) & 1

    def mul(self, x: NElement, y: NElement) -> NElement:
        return NElement(x.k ^ y.k ^ self._cocycle(x.u, y.u), x.u ^ y.u)

    def prod(self, xs: Iterable[NElement]) -> NElement:
        out = self.identity
        for x in xs:
            out = self.mul(out, x)
        return out

    def inverse(self, x: NElement) -> NElement:
        # x * x = (c(u,u), 0), so x^-1 = x * k^{c(u,u)}
        return NElement(x.k ^ self._cocycle(x.u, x.u), x.u)

    def square(self, x: NElement) -> NElement:
        return self.mul(x, x)

    def commutator(self, x: NElement, y: NElement) -> NElement:
        """``x^-1 y^-1 x y``; always 1 or k."""
        return self.prod((self.inverse(x), self.inverse(y), x, y))

    def is_central(self, x: NElement) -> bool:
        return all(_parity(self._row[i] & x.u) == 0 for i in range(len(self.basis)))

    def order(self) -> int:
        return 2 ** (len(self.basis) + 1)

    def element_order(self, x: NElement) -> int:
        if x == self.identity:
            return 1
        return 2 if self.square(x) == self.identity else 4

    def radical(self) -> list[int]:
        """Basis (as masks) of the radical of B over F_2."""
        n = len(self.basis)
        rows = [self._row[i] for i in range(n)]
        # null space of the symmetric matrix B by Gaussian elimination
        pivots: dict[int, int] = {}
        reduced = []
        for r in rows:
            for col, pr in pivots.items():
                if r >> col & 1:
                    r ^= pr
            if r:
                col = r.bit_length() - 1
                for c2 in list(pivots):
                    if pivots[c2] >> col & 1:
                        pivots[c2] ^= r
                pivots[col] = r
                reduced.append(r)
        free = [c for c in range(n) if c not in pivots]
        out = []
        for fcol in free:
            v = 1 << fcol
            for col, pr in pivots.items():
                if pr >> fcol & 1:
                    v |= 1 << col
            out.append(v)
        return out

    def center(self) -> list[NElement]:
        rad = self.radical()
        out = []
        for mask in range(1 << len(rad)):
            u = 0
            for i, r in enumerate(rad):
                if mask >> i & 1:
                    u ^= r
            out += [NElement(0, u), NElement(1, u)]
        return sorted(out, key=lambda e: (e.u, e.k))

    def derived(self) -> list[NElement]:
        if not self.B.any():
            return [self.identity]
        return [self.identity, self.k]

    # text
    def parse(self, text: str, extra: Mapping[str, NElement] | None = None) -> NElement:
        """Product of the symbols in ``text`` (space separated, ``1`` = identity)."""
        out = self.identity
        for tok in text.split():
            if tok == "1":
                continue
            if extra and tok in extra:
                out = self.mul(out, extra[tok])
            elif tok in self.gamma:
                out = self.mul(out, self.gamma[tok])
            else:
                raise TableError(f"unknown symbol {tok!r} in {text!r}")
        return out

    def format(self, x: NElement) -> str:
        toks = (["k"] if x.k else []) + [self.basis[i] for i in _bits(x.u)]
        return " ".join(toks) if toks else "1"

    # actions
    @lru_cache(maxsize=None)
    def action(self, y: str) -> "Automorphism":
        if y not in Y:
            raise KeyError(f"no action tabulated for {y!r}")
        return Automorphism(self, tuple(self.conjugate(g, y) for g in self.basis))

    def t_element(self, t: str) -> NElement:
        return self.parse(self.tables.t_values[t])

    def conjugate(self, gamma: str, y: str) -> NElement:
        """Table value of ``gamma^y``."""
        cell = self.tables.conj[gamma][y]
        ts = {t: self.t_element(t) for t in cell.split() if t.startswith("t")}
        return self.parse(cell, ts)

    def word_action(self, w: Word | Sequence[str]) -> "Automorphism":
        labels = w.labels() if isinstance(w, Word) else list(w)
        out = Automorphism.identity(self)
        for y in labels:
            out = out.then(self.action(y))
        return out


@dataclass(frozen=True)
class Automorphism:
    group: NGroup
    images: tuple[NElement, ...]

    @classmethod
    def identity(cls, g: NGroup) -> "Automorphism":
        return cls(g, tuple(NElement(0, 1 << i) for i in range(len(g.basis))))

    def __call__(self, x: NElement) -> NElement:
        g = self.group
        out = NElement(x.k, 0)
        for i in _bits(x.u):
            out = g.mul(out, self.images[i])
        return out

    def then(self, other: "Automorphism") -> "Automorphism":
        """Apply ``self`` first, then ``other``."""
        return Automorphism(self.group, tuple(other(x) for x in self.images))

    def is_identity(self) -> bool:
        return all(x == NElement(0, 1 << i) for i, x in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.images == other.images

    __hash__ = None

    def is_bijective(self) -> bool:
        n = len(self.images)
        rows = [x.u for x in self.images]
        rank = 0
        for col in range(n):
            piv = next((r for r in range(rank, n) if rows[r] >> col & 1), None)
            if piv is None:
                return False
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for r in range(n):
                if r != rank and rows[r] >> col & 1:
                    rows[r] ^= rows[rank]
            rank += 1
        return True

    def preserves_form(self) -> bool:
        g = self.group
        for i in range(len(self.images)):
            if g.square(self.images[i]) != g.identity:
                return False
            for j in range(i):
                want = NElement(int(g.B[i, j]), 0)
                if g.commutator(self.images[i], self.images[j]) != want:
                    return False
        return True


def build(variant: str = "rel3", tables: Tables | None = None) -> NGroup:
    return NGroup(variant, tables)


# --- verification ---------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True


def _relator_words(presentation) -> list[tuple[str, list[str]]]:
    out = [(f"{y} {y}", [y, y]) for y in Y]
    for w in presentation.relators:
        out.append((str(w), w.labels()))
    return out


def _default_presentation():
    from .coxeter import catalog
    return catalog("K").presentation


def verify_tables(g: NGroup | None = None, presentation=None) -> list[CheckResult]:
    """Consistency checks of the tables as executable pass/fail results.

    ``presentation`` defaults to the Q_221 + V presentation over Y.  Each
    relator is checked twice: on N modulo <k> and exactly.
    """
    g = g or build("rel3")
    presentation = presentation or _default_presentation()
    results: list[CheckResult] = []

    # (i) each action is an automorphism of order dividing 2
    for y in Y:
        phi = g.action(y)
        ok = phi.preserves_form() and phi.is_bijective()
        results.append(CheckResult(f"automorphism {y}", ok, "preserves B, images are involutions, bijective"))
        results.append(CheckResult(f"involution {y}", phi.then(phi).is_identity()))

    # (ii) eliminated generators agree with T4 and with T2 rows
    for name, expr in g.eliminated.items():
        x = g.gamma[name]
        bad = []
        for h in GAMMA:
            if h == name or h in g.eliminated:
                continue
            want = g.comm24.get(frozenset((name, h)), 0)
            if g.commutator(x, g.gamma[h]) != NElement(want, 0):
                bad.append(h)
        results.append(CheckResult(f"substitution {name} = {expr}: T4 row", not bad, ", ".join(bad)))
        bad = [y for y in Y if g.action(y)(x) != g.conjugate(name, y)]
        results.append(CheckResult(f"substitution {name} = {expr}: T2 row", not bad, ", ".join(bad)))

    # (iii) z and zhat are central
    for label, text in (("z", Z_WORD), ("zhat", ZHAT_WORD)):
        x = g.parse(text)
        results.append(CheckResult(f"{label} = {text} central", g.is_central(x), g.format(x)))

    # (iv) composite conjugation identities
    C = ["c", "d", "b", "c'", "c", "c'", "b", "d", "c"]
    A = ["a", "f", "b", "a'", "a", "a'", "b", "f", "a"]
    be_baf = g.action("f")(g.gamma["be_ba"])
    identities = (
        ("be_ba^C = k xa xf ac' bb bf be_ba", g.word_action(C)(g.gamma["be_ba"]),
         g.parse("k xa xf ac' bb bf be_ba")),
        ("ac_fe^A = k aa' ad ba' bd bf be_ba xa ac_fe be_ba^f", g.word_action(A)(g.gamma["ac_fe"]),
         g.parse("k aa' ad ba' bd bf be_ba xa ac_fe be_baf", {"be_baf": be_baf})),
        ("ac_fae^f = k bc ac ac_fae ac_fe ac_f ac_fa", g.action("f")(g.gamma["ac_fae"]),
         g.parse("k bc ac ac_fae ac_fe ac_f ac_fa")),
    )
    for name, lhs, rhs in identities:
        results.append(CheckResult(f"{name} (mod k)", lhs.u == rhs.u, g.format(lhs)))
        results.append(CheckResult(name, lhs == rhs, g.format(lhs)))

    # (v) x_b = x_f and x_a' = x_f
    def twist(gamma: str, y: str) -> NElement:
        return g.mul(g.gamma[gamma], g.action(y)(g.gamma[gamma]))

    for name, got, want in (
        ("x_b = bf bf^b equals xf", twist("bf", "b"), "xf"),
        ("x_a' = ba' ba'^d equals xf", twist("ba'", "d"), "xf"),
        ("x_a = ba ba^d", twist("ba", "d"), "xa"),
        ("x_f = ab ab^f", twist("ab", "f"), "xf"),
    ):
        results.append(CheckResult(name, got == g.gamma[want], g.format(got)))

    # relators of Q_221 + V act trivially
    basis = Automorphism.identity(g).images
    for text, labels in _relator_words(presentation):
        images = g.word_action(labels).images
        results.append(CheckResult(f"relator action {text} (mod k)", all(x.u == b.u for x, b in zip(images, basis))))
        bad = [g.basis[i] for i, (x, b) in enumerate(zip(images, basis)) if x != b]
        results.append(CheckResult(f"relator action {text}", not bad, ", ".join(bad)))
    return results


def _t1_factor(label: str) -> tuple[str, str | None]:
    """``"c'2"`` -> ``("c'", "bc'")``; ``"d"`` -> ``("d", None)``."""
    if label[-1] in "12":
        y = label[:-1]
        return y, ("a" if label[-1] == "1" else "b") + y
    return label, None


def _commuting_pairs(presentation) -> set[frozenset]:
    out = set()
    for w in presentation.relators:
        labels = w.labels()
        if len(labels) == 4 and labels[0] == labels[2] and labels[1] == labels[3] != labels[0]:
            out.add(frozenset(labels[:2]))
    return out


def t1_checks(g: NGroup, presentation=None) -> list[CheckResult]:
    """Entries of T1 that are decided inside N.

    A row ``y r`` times a column ``y' c`` is ``s n`` with ``s = y y'`` and
    ``n = r^{y'} c`` in N.  For ``y = y'`` its order is that of ``n``; for
    commuting ``y, y'`` it is ``2 * order(n^s n)``.  Entries for adjacent
    ``y, y'`` are outside N and are skipped.  A diagonal entry is the order
    of ``y r`` itself.
    """
    commuting = _commuting_pairs(presentation or _default_presentation())
    out = []
    for row, cols in g.tables.orders.items():
        y, r = _t1_factor(row)
        rn = g.gamma[r] if r else g.identity
        for col, want in cols.items():
            y2, c = _t1_factor(col)
            cn = g.gamma[c] if c else g.identity
            n = g.mul(g.action(y2)(rn), cn)
            if row == col:
                got = 2 * g.element_order(g.mul(g.action(y)(rn), rn))
            elif y == y2:
                got = g.element_order(n)
            elif frozenset((y, y2)) in commuting:
                s = g.word_action([y, y2])
                got = 2 * g.element_order(g.mul(s(n), n))
            else:
                continue
            out.append(CheckResult(f"T1 order {row}.{col} = {want}", got == want, f"got {got}"))
    return out


# --- the extraspecial quotient N_1 ---------------------------------------------------

def quadratic(g: NGroup, u: int) -> int:
    """k-bit of the square of the involution-product with coordinates ``u``."""
    return g.square(NElement(0, u)).k


def form(g: NGroup, u: int, v: int) -> int:
    return g.commutator(NElement(0, u), NElement(0, v)).k


def symplectic_basis(g: NGroup, seeds: Sequence[int] = ()) -> tuple[list[tuple[int, int]], list[int]]:
    """Hyperbolic pairs for B by Gram-Schmidt, seeded with ``seeds`` in order.

    Returns the pairs and a basis of the radical.
    """
    pool = list(seeds) + [1 << i for i in range(len(g.basis))]
    pairs: list[tuple[int, int]] = []
    radical: list[int] = []

    def reduce(x: int) -> int:
        for a, b in pairs:
            x ^= (a if form(g, x, b) else 0) ^ (b if form(g, x, a) else 0)
        for r in radical:
            if x >> (r.bit_length() - 1) & 1:
                x ^= r
        return x

    while pool:
        e = reduce(pool.pop(0))
        if not e:
            continue
        for i, c in enumerate(pool):
            f = reduce(c)
            if form(g, e, f):
                pool.pop(i)
                pairs.append((e, f))
                break
        else:
            radical.append(e)
            radical.sort(key=int.bit_length, reverse=True)
    return pairs, radical


def arf_invariant(g: NGroup, pairs: Sequence[tuple[int, int]]) -> int:
    return sum(quadratic(g, a) * quadratic(g, b) for a, b in pairs) & 1


def dihedral_report(g: NGroup, pairs: Sequence[tuple[str, str]] = DIHEDRAL_PAIRS) -> list[CheckResult]:
    """The rel1 description of N1 as a central product of 10 copies of D8."""
    elems = [(g.parse(x), g.parse(y)) for x, y in pairs]
    out = []
    for (xs, ys), (x, y) in zip(pairs, elems):
        ok = (
            g.element_order(x) == 2 and g.element_order(y) == 2
            and g.element_order(g.mul(x, y)) == 4
            and g.commutator(x, y) == g.k
        )
        out.append(CheckResult(f"<{xs}, {ys}> = D8 with centre <k>", ok))
    rank = _rank([e.u for pair in elems for e in pair])
    out.append(CheckResult(f"the {2 * len(pairs)} elements span N1 modulo <k>", rank == len(g.basis), f"rank {rank}"))
    clashes = [
        f"[{a}, {b}]"
        for i, (pi, ei) in enumerate(zip(pairs, elems)) for j, (pj, ej) in enumerate(zip(pairs, elems)) if i < j
        for a, p in zip(pi, ei) for b, q in zip(pj, ej) if g.commutator(p, q) != g.identity
    ]
    out.append(CheckResult("the listed factors commute pairwise", not clashes, ", ".join(clashes), required=False))
    hyper, radical = symplectic_basis(g, [e.u for pair in elems for e in pair])
    arf = arf_invariant(g, hyper)
    out.append(CheckResult(
        f"N1 is a central product of {len(hyper)} D8 (Arf invariant 0)",
        not radical and len(hyper) == 10 and arf == 0,
        f"{len(hyper)} hyperbolic pairs, radical {len(radical)}, Arf {arf}",
    ))
    return out


def _rank(rows: list[int]) -> int:
    rows = list(rows)
    rank = 0
    while rows:
        r = rows.pop()
        if r == 0:
            continue
        rank += 1
        top = r.bit_length() - 1
        rows = [x ^ r if x >> top & 1 else x for x in rows]
    return rank


def structure(g: NGroup) -> dict:
    """Orders of N, its centre and derived subgroup, and the radical of B."""
    rad = g.radical()
    return {
        "variant": g.variant,
        "generators": len(g.basis),
        "order": g.order(),
        "center_order": len(g.center()),
        "derived_order": len(g.derived()),
        "radical_dimension": len(rad),
        "extraspecial": not rad and len(g.derived()) == 2,
    }
