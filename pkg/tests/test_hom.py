import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heapmods.errors import AxiomViolation, ConditionViolation, NotIsotropic
from heapmods.heap import cyclic_group, heap_from_group
from heapmods.hom import (
    HeapOfModules,
    affine_condition,
    affine_tables_equal,
    affine_via_pointed,
    bracket_is_morphism,
    certify_symbolic_hom,
    check_delta_conditions,
    delta_conditions_or_raise,
    from_affine,
    functor_G,
    functor_H,
    hom_from_module,
    hom_morphisms,
    induced_at_consistency,
    isotropic_extension,
    require_isotropic,
    to_affine,
    validate_hom,
    xi,
)
from heapmods.modules import validate_module, validate_pointed
from heapmods.truss import ring_Zn, truss_from_ring

T4 = truss_from_ring(ring_Zn(4))
H4 = heap_from_group(cyclic_group(4))
I4 = np.arange(4)
MUL = np.array([(t * I4) % 4 for t in range(4)])

HOMS = ["Hstar", "H2m", "H4m", "H4z", "H2r", "H3m", "H39", "HM39", "HM4a", "H0", "KP"]


def test_hom_from_multiplication():
    M = hom_from_module(validate_module(T4, H4, MUL))
    # t ▷_m n = tn - tm + m
    for t in range(4):
        for m in range(4):
            for n in range(4):
                assert M.taction[t, m, n] == (t * n - t * m + m) % 4
    assert M.is_isotropic


def test_basepoint_free_multiplication_rejected():
    tact = np.broadcast_to(MUL[:, None, :], (4, 4, 4))
    with pytest.raises(AxiomViolation):
        validate_hom(T4, H4, tact)
    rep = check_delta_conditions(T4, H4, tact)
    assert rep.truss_maps_ok and not rep.ab_ok


def test_delta_conditions_hold_on_fixtures(sf):
    for name in HOMS:
        M = sf[name]
        assert check_delta_conditions(M.truss, M.heap, M.taction).ok, name
        delta_conditions_or_raise(M)


def test_condition_a_failure_is_reported():
    # the constant action at 0 fixes only 0, so t ▷_e e = e fails for e ≠ 0
    tact = np.zeros((4, 4, 4), dtype=int)
    rep = check_delta_conditions(T4, H4, tact)
    assert "a" in rep.failures
    with pytest.raises(ConditionViolation):
        delta_conditions_or_raise(HeapOfModules(T4, H4, tact))
    # t ▷_m n = m is a valid heap of modules
    M = validate_hom(T4, H4, np.broadcast_to(np.arange(4)[None, :, None], (4, 4, 4)))
    delta_conditions_or_raise(M)


@pytest.mark.parametrize("name", HOMS)
def test_structural_invariants(sf, name):
    M = sf[name]
    assert induced_at_consistency(M) is None
    if M.size <= 4:
        assert bracket_is_morphism(M)


@pytest.mark.parametrize("name", [n for n in HOMS if n != "H0"])
def test_retract_and_back(sf, name):
    M = sf[name]
    for e in range(M.size):
        P = functor_G(M, e)
        back = functor_H(P)
        # H(G(M;e)) has carrier ids in the same order, so the tables agree
        assert np.array_equal(back.taction, M.taction)


@pytest.mark.parametrize("name", HOMS)
def test_affine_form(sf, name):
    M = sf[name]
    A = to_affine(M)
    assert certify_symbolic_hom(A).ok
    assert affine_condition(A) is None
    assert np.array_equal(from_affine(A).taction, M.taction)
    if M.size and M.truss.size:
        assert affine_tables_equal(A, affine_via_pointed(M))
        for e in range(M.size):
            assert affine_tables_equal(A, to_affine(M, e=e))


def test_affine_value_on_t39(sf):
    M = sf["H39"]
    A = to_affine(M, o=0, e=0)
    # (9,k)·x = (2-k)x, so (9,2) sends everything to the basepoint
    assert A.act(np.array([[1, 2]]), 0, 1)[0] == 0
    assert A.act(np.array([[1, 3]]), 0, 1)[0] == 3
    assert A.act(np.array([[1, 1]]), 0, 1)[0] == M.taction[1, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(-30, 30), st.integers(0, 3), st.integers(0, 3))
def test_affine_integer_oracle_on_h4m(t, k, m, n):
    A = to_affine(functor_H(validate_pointed(T4, cyclic_group(4), MUL)), o=0, e=0)
    # (t,k) acts on Z4 as multiplication by t at o = 0
    assert A.act(np.array([[t, k]]), m, n)[0] == (t * (n - m) + m) % 4


@pytest.mark.parametrize("name", ["H2m", "H4m", "H4z", "H2r", "H3m", "H39", "HM4a", "Hstar"])
def test_isotropic_extension(sf, name):
    M = sf[name]
    if M.truss.unit is not None and not M.is_isotropic:
        with pytest.raises(NotIsotropic):
            require_isotropic(M)
        return
    N = isotropic_extension(M)
    assert certify_symbolic_hom(N).ok
    assert np.array_equal(xi(N).taction, M.taction)


def test_non_isotropic_rejected(sf):
    M = sf["H4z"]
    assert not M.is_isotropic
    with pytest.raises(NotIsotropic):
        require_isotropic(M)


def test_hom_morphisms_count(sf):
    # identity, swap and the two constants (t ▷_c c = c makes constants morphisms)
    found = {tuple(int(v) for v in f) for f in hom_morphisms(sf["H2m"], sf["H2m"])}
    assert found == {(0, 1), (1, 0), (0, 0), (1, 1)}
