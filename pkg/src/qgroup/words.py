"""Free-group words over named alphabets.

Words are immutable sequences of ``(generator index, sign)`` letters.  Over an
involutive alphabet every generator is its own inverse, so letters always carry
sign ``+1`` and ``g g`` cancels just like ``g g^-1``.

Conjugation follows the right-action convention ``x^w = w^-1 x w``.

The text syntax mirrors the usual typography of presentations::

    c^{c'dbc}          conjugation
    (adbecf)^4         integer power, ^-1 for inverse
    [a,b]              commutator  a^-1 b^-1 a b
    f^{ed}.a^{bc}      '.', '*' and whitespace are plain separators
    1                  the empty word

Labels may be several characters long (``a'``, ``t13``); juxtaposed labels are
split by longest match against the alphabet.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Alphabet",
    "Word",
    "ParseError",
    "parse_word",
    "format_word",
    "inverse",
    "conjugate",
    "power",
    "commutator",
    "free_reduce",
]


class ParseError(ValueError):
    """Raised for malformed word text or unknown labels."""


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    involutive: bool = True

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator labels in {names}")
        for n in names:
            if not n or any(ch in n for ch in " \t^()[]{},.*") or n == "1":
                raise ValueError(f"invalid generator label {n!r}")

    def __len__(self):
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise KeyError(label) from None

    def word(self, text: str, defs: Mapping[str, "Word"] | None = None) -> "Word":
        return parse_word(text, self, defs)

    def generator(self, label: str) -> "Word":
        return Word(self, ((self.index(label), 1),))


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        _check_same(self, other)
        return free_reduce(Word(self.alphabet, self.letters + other.letters))

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def labels(self) -> list[str]:
        """Generator labels in order, ignoring signs."""
        return [self.alphabet.names[g] for g, _ in self.letters]

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, ())

    @classmethod
    def from_labels(cls, alphabet: Alphabet, labels: Iterable[str]) -> "Word":
        return free_reduce(cls(alphabet, tuple((alphabet.index(x), 1) for x in labels)))


def _check_same(x: Word, y: Word):
    if x.alphabet != y.alphabet:
        raise ValueError("words over different alphabets")


def free_reduce(w: Word) -> Word:
    invol = w.alphabet.involutive
    out: list[tuple[int, int]] = []
    for g, s in w.letters:
        if invol:
            s = 1
        if out and out[-1][0] == g and (invol or out[-1][1] == -s):
            out.pop()
        else:
            out.append((g, s))
    return Word(w.alphabet, tuple(out))


def inverse(w: Word) -> Word:
    if w.alphabet.involutive:
        return Word(w.alphabet, tuple(reversed(w.letters)))
    return Word(w.alphabet, tuple((g, -s) for g, s in reversed(w.letters)))


def conjugate(x: Word, w: Word) -> Word:
    """``x^w = w^-1 x w``."""
    _check_same(x, w)
    return free_reduce(Word(x.alphabet, inverse(w).letters + x.letters + w.letters))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = inverse(w), -n
    return free_reduce(Word(w.alphabet, w.letters * n))


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    _check_same(x, y)
    return free_reduce(
        Word(x.alphabet, inverse(x).letters + inverse(y).letters + x.letters + y.letters)
    )


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    names = w.alphabet.names
    return " ".join(names[g] if s > 0 else f"{names[g]}^-1" for g, s in w.letters)


# --- parser -----------------------------------------------------------------

_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, defs: Mapping[str, Word]):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet
        self.defs = dict(defs)
        for name, w in self.defs.items():
            if name in alphabet.names:
                raise ParseError(f"definition {name!r} shadows a generator label")
            if w.alphabet != alphabet:
                raise ParseError(f"definition {name!r} is over a different alphabet")
        # longest match first
        self.tokens = sorted(set(alphabet.names) | set(self.defs), key=len, reverse=True)

    def error(self, msg: str):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n.*":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def symbol(self) -> Word | None:
        self.skip()
        for tok in self.tokens:
            if self.text.startswith(tok, self.pos):
                self.pos += len(tok)
                if tok in self.defs:
                    return self.defs[tok]
                return Word(self.alphabet, ((self.alphabet.index(tok), 1),))
        return None

    def parse(self) -> Word:
        w = self.expr(closers="")
        if self.peek():
            self.error("unexpected character")
        return w

    def expr(self, closers: str) -> Word:
        result = Word(self.alphabet)
        while True:
            ch = self.peek()
            if ch == "" or ch in closers:
                return result
            result = Word(self.alphabet, result.letters + self.term().letters)

    def term(self) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.expr(closers=")")
            self.expect(")")
        elif ch == "[":
            self.pos += 1
            x = self.expr(closers=",]")
            self.expect(",")
            y = self.expr(closers="]")
            self.expect("]")
            w = commutator(x, y)
        elif ch == "1" and not self.text[self.pos + 1 : self.pos + 2].isdigit():
            self.pos += 1
            w = Word(self.alphabet)
        elif ch == "^":
            self.error("exponent on nothing")
        else:
            w = self.symbol()
            if w is None:
                self.error("unknown label")
        while self.peek() == "^":
            self.pos += 1
            w = self.exponent(w)
        return w

    def exponent(self, base: Word) -> Word:
        ch = self.peek()
        if ch == "{":
            self.pos += 1
            end = self.text.find("}", self.pos)
            m = _INT.fullmatch(self.text[self.pos:end].strip()) if end >= 0 else None
            if m:
                self.pos = end + 1
                return power(base, int(m.group()))
            w = self.expr(closers="}")
            self.expect("}")
            return conjugate(base, w)
        m = _INT.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return power(base, int(m.group()))
        w = self.symbol()
        if w is None:
            self.error("malformed exponent")
        return conjugate(base, w)


def parse_word(text: str, alphabet: Alphabet, defs: Mapping[str, Word] | None = None) -> Word:
    """Parse ``text`` into a freely reduced word.

    ``defs`` maps extra names (e.g. ``"C"`` for ``c^{c'dbc}``) to words already
    over ``alphabet``; they may appear wherever a generator label may.
    """
    return free_reduce(_Parser(text, alphabet, defs or {}).parse())


def parse_words(texts: Sequence[str], alphabet: Alphabet) -> list[Word]:
    return [parse_word(t, alphabet) for t in texts]
