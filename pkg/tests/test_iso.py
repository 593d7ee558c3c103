import numpy as np
import pytest
from hypothesis import given, settings

from heapmods.errors import NotIsomorphic, SizeMismatch
from heapmods.heap import cyclic_group, heap_from_group, product_group, validate_heap
from heapmods.iso import enumerate_homs, iso_search, is_isomorphic
from heapmods.truss import ring_Zn, subset_of_ring, truss_from_ring

from strategies import heaps


def test_relabelled_heap_is_isomorphic(sf):
    f = iso_search(sf["Habc"], sf["H3"])
    br_a, br_b = sf["Habc"].bracket, sf["H3"].bracket
    m = f.map
    assert all(m[br_a[x, y, z]] == br_b[m[x], m[y], m[z]] for x in range(3) for y in range(3) for z in range(3))


def test_cyclic_and_klein_groups_differ():
    V4, _ = product_group(cyclic_group(2), cyclic_group(2))
    with pytest.raises(NotIsomorphic):
        iso_search(cyclic_group(4), V4)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        iso_search(cyclic_group(2), cyclic_group(3))


def test_truss_isomorphism_respects_multiplication():
    T39 = subset_of_ring(ring_Zn(12), [3, 9])
    T2 = truss_from_ring(ring_Zn(2))
    # same heap, but 0 absorbs in T(Z2) while T39 multiplies like the group of order 2
    assert is_isomorphic(T39.heap, T2.heap)
    assert not is_isomorphic(T39, T2)
    T93 = subset_of_ring(ring_Zn(12), [9, 3])
    f = iso_search(T39, T93)
    assert f.map[T39.unit] == T93.unit


def test_fixed_points_and_commuting_constraints():
    H = heap_from_group(cyclic_group(4))
    for a in range(4):
        f = iso_search(H, H, fixed={0: a})
        assert f.map[0] == a
    parity = np.arange(4) % 2
    f = iso_search(H, H, commute=[(parity, parity)])
    assert np.array_equal(parity[f.map], parity)


def test_heap_endomorphisms_of_z2():
    H = heap_from_group(cyclic_group(2))
    maps = enumerate_homs(2, 2, [(H.bracket, H.bracket, False)])
    assert {tuple(int(v) for v in m) for m in maps} == {(0, 0), (1, 1), (0, 1), (1, 0)}


@settings(max_examples=25, deadline=None)
@given(heaps(), heaps())
def test_isomorphism_is_symmetric(A, B):
    assert is_isomorphic(A, B) == is_isomorphic(B, A)


@settings(max_examples=25, deadline=None)
@given(heaps())
def test_permuted_copy_is_isomorphic(H):
    rng = np.random.default_rng(H.size)
    p = rng.permutation(H.size)
    inv = np.argsort(p)
    br = p[H.bracket[inv[:, None, None], inv[None, :, None], inv[None, None, :]]]
    assert is_isomorphic(H, validate_heap(br))
