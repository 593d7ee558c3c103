import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heapmods.errors import AxiomViolation, NotASubheap
from heapmods.heap import cyclic_group, heap_from_group
from heapmods.modules import (
    certify_free,
    certify_pointed_map,
    certify_ring_module,
    finite_pointed_as_symbolic,
    free_action_on_arithmetic,
    free_pointed_module,
    free_universal_map,
    generated_submodule,
    induced_action,
    is_induced_submodule,
    module_quotient,
    pointed_to_ring_module,
    ring_module_to_pointed,
    submodule_closure,
    validate_module,
    validate_pointed,
)
from heapmods.symbolic import arithmetic_truss, arithmetic_value
from heapmods.truss import ring_Zn, subset_of_ring, truss_from_ring

T4 = truss_from_ring(ring_Zn(4))
T39 = subset_of_ring(ring_Zn(12), [3, 9], ["3", "9"])
H4 = heap_from_group(cyclic_group(4))
H12 = heap_from_group(cyclic_group(12))
I4 = np.arange(4)


def test_multiplication_module_and_absorber():
    M = validate_module(T4, H4, [(t * I4) % 4 for t in range(4)])
    assert M.absorbers == [0]


def test_constant_action_module():
    M = validate_module(T4, H4, [np.full(4, 2) for _ in range(4)])
    assert M.absorbers == [2]


def test_shift_action_rejected():
    with pytest.raises(AxiomViolation):
        validate_module(T4, H4, [(I4 + 1) % 4 for _ in range(4)])


def test_induced_action_of_t39_on_z12():
    i12 = np.arange(12)
    M = validate_module(T39, H12, [(3 * i12) % 12, (9 * i12) % 12])
    N = induced_action(M, 1)
    # [3*2, 3*1, 1] = 6 - 3 + 1
    assert N.action[0, 2] == 4
    assert all(N.action[t, 1] == 1 for t in range(2))


def test_quotient_by_induced_submodule():
    M = validate_module(T4, H4, [(t * I4) % 4 for t in range(4)])
    assert is_induced_submodule(M, [0, 2])
    Q, p = module_quotient(M, [0, 2])
    assert Q.size == 2
    assert list(p.map) in ([0, 1, 0, 1], [1, 0, 1, 0])
    # the other coset is induced as well; {0, 1} is not even a sub-heap
    assert is_induced_submodule(M, [1, 3])
    assert not is_induced_submodule(M, [0, 1])
    with pytest.raises(NotASubheap):
        module_quotient(M, [0, 1])


def test_pointed_examples():
    validate_pointed(T4, cyclic_group(4), ring_Zn(4).mul)
    validate_pointed(T4, cyclic_group(4), np.zeros((4, 4), dtype=int))
    with pytest.raises(AxiomViolation):
        validate_pointed(T4, cyclic_group(4), [(I4 + 1) % 4 for _ in range(4)])


def test_trivial_t39_action_is_integer_scaling():
    G = cyclic_group(4)
    P = validate_pointed(T39, G, [[(-x) % 4 for x in range(4)], list(range(4))])
    M = pointed_to_ring_module(P, 1)
    assert certify_ring_module(M).ok
    for n in range(-5, 6):
        for g in range(4):
            # (9,n)·g = g + (n-1)g
            assert M.act(np.array([[1, n]]), [g])[0] == (n * g) % 4
    back = ring_module_to_pointed(M)
    assert np.array_equal(back.action, P.action)


@pytest.mark.parametrize("name", ["P4", "P2", "P4z", "P39", "PV4", "P0"])
def test_pointed_ring_module_round_trip(sf, name):
    P = sf[name]
    M = pointed_to_ring_module(P)
    assert certify_ring_module(M).ok
    assert np.array_equal(ring_module_to_pointed(M).action, P.action)


def test_generated_submodule_of_one_is_everything():
    P = validate_pointed(T4, cyclic_group(4), ring_Zn(4).mul)
    assert generated_submodule(P, [1]) == [0, 1, 2, 3]
    assert generated_submodule(P, [2]) == [0, 2]


@pytest.mark.parametrize("name", ["P4", "P2", "P4z", "P39", "PV4", "P0", "P6r"])
def test_generated_submodule_matches_closure(sf, name):
    P = sf[name]
    for x in range(P.size):
        assert generated_submodule(P, [x]) == submodule_closure(P, [x])


@settings(max_examples=200, deadline=None)
@given(*(st.integers(-10**6, 10**6) for _ in range(4)))
def test_free_module_over_odd_multiples_of_three(z, t, n, p):
    F = free_pointed_module(arithmetic_truss(6, 3))
    out = F.act(np.array([[0, z]]), np.array([[0, t, n, p]]))[0]
    assert arithmetic_value(6, 3, out[None, :])[0] == 36 * z * t + 18 * t + 18 * z * n + 6 * n + 6 * p * z + 3
    assert out[2] == n + p and out[3] == 0


def test_free_module_arithmetic_certificate():
    assert free_action_on_arithmetic(6, 3).ok
    assert free_action_on_arithmetic(4, 1).ok


@pytest.mark.parametrize("name", ["T2", "T4", "T39", "Tc2", "T0"])
def test_free_module_basis_decomposition(sf, name):
    assert certify_free(free_pointed_module(sf[name])).ok
    assert certify_free(free_pointed_module(sf[name], 2)).ok


def test_free_universal_map_hits_target():
    P = validate_pointed(T4, cyclic_group(4), ring_Zn(4).mul)
    F = free_pointed_module(T4)
    for g in range(4):
        phi = free_universal_map(F, P, [g])
        assert phi(F.basis)[0, 0] == g
        assert certify_pointed_map(F, finite_pointed_as_symbolic(P), phi).ok


def test_unital_free_module():
    F = free_pointed_module(T4, unital=True)
    assert certify_free(F).ok
    P = validate_pointed(T4, cyclic_group(4), ring_Zn(4).mul)
    phi = free_universal_map(F, P, [3])
    assert phi(F.basis)[0, 0] == 3
    assert certify_pointed_map(F, finite_pointed_as_symbolic(P), phi).ok
