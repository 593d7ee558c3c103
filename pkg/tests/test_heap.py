import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heapmods.errors import AxiomViolation, NotAMorphism, NotASubheap
from heapmods.heap import (
    compose,
    congruences,
    cyclic_group,
    empty_heap,
    heap_from_group,
    heap_morphism,
    heap_quotient,
    identity,
    is_congruence,
    pair_group_realization,
    product_group,
    retract,
    singleton_heap,
    sub_heap_congruence,
    subheap_generated,
    translation,
    translation_group,
    transport,
    validate_heap,
    validate_heap_morphism,
)
from heapmods.iso import iso_search, is_isomorphic

from strategies import heaps, subsets

H4 = heap_from_group(cyclic_group(4))
H2 = heap_from_group(cyclic_group(2))


def test_z4_bracket_table_is_a_heap():
    a, b, c = np.indices((4, 4, 4))
    H = validate_heap((a - b + c) % 4)
    assert np.array_equal(H.bracket, H4.bracket)


def test_empty_heap_accepted():
    assert validate_heap(np.zeros((0, 0, 0), dtype=int)).is_empty


def test_projection_bracket_rejected_with_malcev_witness():
    a, _, _ = np.indices((2, 2, 2))
    with pytest.raises(AxiomViolation) as err:
        validate_heap(a)
    b, b2, x = err.value.witness[:3]
    # bracket(b, b, a) = b ≠ a
    assert (b, b2, x) == (0, 0, 1)


def test_small_brackets():
    assert heap_from_group(cyclic_group(2)).bracket[0, 1, 0] == 1
    assert heap_from_group(cyclic_group(3)).bracket[1, 2, 2] == 1


def test_retract_at_zero_is_z4():
    G = retract(H4, 0)
    assert np.array_equal(G.add, cyclic_group(4).add)


def test_retract_at_two_is_shifted_z4():
    G = retract(H4, 2)
    assert G.zero == 2
    iso = iso_search(G, cyclic_group(4))
    assert iso is not None
    # x ↦ x - 2 is a witness
    shift = (np.arange(4) - 2) % 4
    assert all(shift[G.add[x, y]] == (shift[x] + shift[y]) % 4 for x in range(4) for y in range(4))


def test_singleton_retract_is_trivial():
    assert retract(singleton_heap(), 0).size == 1


def test_translations_on_h4():
    assert list(translation(H4, 0, 1).map) == [1, 2, 3, 0]
    for a in range(4):
        assert list(translation(H4, a, a).map) == [0, 1, 2, 3]
    for a in range(4):
        for b in range(4):
            for c in range(4):
                comp = compose(translation(H4, b, c), translation(H4, a, b))
                assert np.array_equal(comp.map, translation(H4, a, c).map)


def test_translation_group_of_h4_is_z4():
    tr = translation_group(H4)
    assert tr.group.size == 4
    assert is_isomorphic(tr.group, cyclic_group(4))
    assert translation_group(singleton_heap()).group.size == 1


def test_transport_along_reduction():
    red = heap_morphism(H4, H2, [0, 1, 0, 1])
    src, dst = translation_group(H4), translation_group(H2)
    t = transport(red, src, dst)
    assert t.map[src.index(0, 1)] == dst.index(0, 1)


def test_pair_group_on_h4():
    pg = pair_group_realization(H4)
    assert len(pg.classes) == 4
    for cls in pg.classes:
        assert len({(y - x) % 4 for x, y in cls}) == 1
    # identity is the class of a diagonal pair, inverses swap the pair
    assert pg.class_of[0, 0] == pg.class_of[3, 3]
    for x in range(4):
        for y in range(4):
            assert pg.group.add[pg.class_of[x, y], pg.class_of[y, x]] == pg.group.zero


def test_heap_quotients():
    Q, proj = heap_quotient(H4, [0, 2])
    assert Q.size == 2 and list(proj.map[[0, 1, 2, 3]]) in ([0, 1, 0, 1], [1, 0, 1, 0])
    assert is_isomorphic(Q, H2)
    assert heap_quotient(H4, range(4))[0].size == 1
    with pytest.raises(NotASubheap) as err:
        heap_quotient(H4, [0, 1])
    assert H4.bracket[err.value.witness] not in (0, 1)


def test_heap_morphisms():
    assert validate_heap_morphism(identity(H4)).ok
    heap_morphism(H4, H2, [0, 1, 0, 1])
    with pytest.raises(NotAMorphism) as err:
        heap_morphism(H4, H4, [(x * x) % 4 for x in range(4)])
    a, b, c = err.value.witness
    sq = [(x * x) % 4 for x in range(4)]
    assert sq[H4.bracket[a, b, c]] != H4.bracket[sq[a], sq[b], sq[c]]


def test_z4_and_klein_heaps_not_isomorphic():
    V4, _ = product_group(cyclic_group(2), cyclic_group(2))
    assert not is_isomorphic(H4, heap_from_group(V4))


@settings(max_examples=30, deadline=None)
@given(heaps())
def test_heap_axioms_hold_for_group_heaps(H):
    n = H.size
    br = H.bracket
    assert all(br[x, y, y] == x and br[y, y, x] == x for x in range(n) for y in range(n))
    assert np.array_equal(br, br.transpose(2, 1, 0))
    validate_heap(br)


@settings(max_examples=30, deadline=None)
@given(heaps(), st.data())
def test_retracts_are_isomorphic(H, data):
    e = data.draw(st.integers(0, H.size - 1))
    assert is_isomorphic(retract(H, 0), retract(H, e))


@settings(max_examples=30, deadline=None)
@given(heaps(), st.data())
def test_generated_subheap_congruence(H, data):
    X = data.draw(subsets(H.size))
    S = subheap_generated(H, X)
    if not S:
        return
    cong = sub_heap_congruence(H, S)
    cls = cong.class_of
    assert is_congruence(H, cls)
    assert sorted(int(x) for x in np.flatnonzero(cls == cls[S[0]])) == sorted(S)


def test_congruences_of_h4_are_subheap_relations():
    found = {tuple(c) for c in congruences(H4)}
    for e in range(4):
        for S in ([e], [e, (e + 2) % 4], list(range(4))):
            assert tuple(sub_heap_congruence(H4, S).class_of) in found
    assert len(found) == 3


def test_empty_heap_basics():
    E = empty_heap()
    assert E.size == 0 and E.basepoint is None
