import numpy as np
from hypothesis import given, strategies as st

from qgroup import gf4

el = st.integers(0, 3)
nz = st.integers(1, 3)


def test_w_is_a_cube_root_of_unity():
    w = gf4.W
    assert gf4.mul(w, w) == gf4.W2
    assert gf4.mul(w, gf4.W2) == 1
    assert gf4.add(1, gf4.add(w, gf4.W2)) == 0


@given(el, el, el)
def test_field_axioms(x, y, z):
    assert gf4.mul(x, gf4.add(y, z)) == gf4.add(gf4.mul(x, y), gf4.mul(x, z))
    assert gf4.mul(gf4.mul(x, y), z) == gf4.mul(x, gf4.mul(y, z))
    assert gf4.mul(x, y) == gf4.mul(y, x)


@given(nz)
def test_inverse_and_frobenius(x):
    assert gf4.mul(x, gf4.inv(x)) == 1
    assert gf4.conj(x) == gf4.mul(x, x)
    assert gf4.conj(gf4.conj(x)) == x


@given(el, el)
def test_frobenius_is_a_field_map(x, y):
    assert gf4.conj(gf4.add(x, y)) == gf4.add(gf4.conj(x), gf4.conj(y))
    assert gf4.conj(gf4.mul(x, y)) == gf4.mul(gf4.conj(x), gf4.conj(y))


@given(st.integers(0, 4 ** 6 - 1))
def test_pack_roundtrip(code):
    v = gf4.unpack(code)
    assert gf4.pack(v) == code
    assert np.array_equal(gf4.all_vectors()[code], v)


mats = st.lists(el, min_size=9, max_size=9).map(lambda xs: np.array(xs, dtype=np.uint8).reshape(3, 3))


@given(mats, mats, mats)
def test_matmul_associative(a, b, c):
    assert np.array_equal(gf4.matmul(gf4.matmul(a, b), c), gf4.matmul(a, gf4.matmul(b, c)))


@given(st.lists(el, min_size=6, max_size=6), nz)
def test_normalize_is_projective(xs, s):
    v = np.array(xs, dtype=np.uint8)
    assert np.array_equal(gf4.normalize(v), gf4.normalize(gf4.scale(s, v)))
