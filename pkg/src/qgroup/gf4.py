"""Arithmetic in GF(4) = {0, 1, w, w^2} on 2-bit codes.

Codes: 0 -> 0, 1 -> 1, 2 -> w, 3 -> w^2, so addition is XOR.  Vectors of
length 6 pack into 12-bit integers with coordinate ``i`` in bits ``2i, 2i+1``.
"""
from __future__ import annotations

import numpy as np

ZERO, ONE, W, W2 = 0, 1, 2, 3
SYMBOLS = ("0", "1", "w", "W")

_LOG = {1: 0, 2: 1, 3: 2}
MUL = np.zeros((4, 4), dtype=np.uint8)
for _x in range(1, 4):
    for _y in range(1, 4):
        MUL[_x, _y] = (1, 2, 3)[(_LOG[_x] + _LOG[_y]) % 3]
INV = np.array([0, 1, 3, 2], dtype=np.uint8)
CONJ = np.array([0, 1, 3, 2], dtype=np.uint8)  # x -> x^2


def add(x: int, y: int) -> int:
    return x ^ y


def mul(x: int, y: int) -> int:
    return int(MUL[x, y])


def inv(x: int) -> int:
    if x == 0:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return int(INV[x])


def conj(x: int) -> int:
    return int(CONJ[x])


def pack(vec) -> int:
    return sum(int(c) << (2 * i) for i, c in enumerate(vec))


def unpack(code: int, dim: int = 6) -> np.ndarray:
    return np.array([(code >> (2 * i)) & 3 for i in range(dim)], dtype=np.uint8)


def all_vectors(dim: int = 6) -> np.ndarray:
    """Every vector of GF(4)^dim as rows, row ``i`` being ``unpack(i)``."""
    codes = np.arange(4 ** dim)
    return ((codes[:, None] >> (2 * np.arange(dim))[None, :]) & 3).astype(np.uint8)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(4); a batch of row vectors is a matrix too."""
    return np.bitwise_xor.reduce(MUL[a[:, :, None], b[None, :, :]], axis=1)


def scale(s: int, v: np.ndarray) -> np.ndarray:
    return MUL[s, v]


def normalize(v: np.ndarray) -> np.ndarray:
    """Projective representative: first nonzero coordinate scaled to 1."""
    nz = np.flatnonzero(v)
    if len(nz) == 0:
        return v.copy()
    return MUL[INV[v[nz[0]]], v]
