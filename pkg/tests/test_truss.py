import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heapmods.errors import AxiomViolation, NotClosed
from heapmods.heap import cyclic_group, heap_from_group, trivial_group
from heapmods.symbolic import (
    arithmetic_truss,
    arithmetic_value,
    basepoint_change,
    certify_ring,
    certify_truss,
    certify_tu_closure,
    certify_unital_extension,
    check_dorroh_commutation,
    dorroh_ring,
    lift_morphism,
    rtu,
    unital_extension,
    unital_simplification,
    unital_truss_extension,
    universal_ring,
)
from heapmods.truss import (
    empty_truss,
    ring_Zn,
    subset_of_ring,
    truss_from_ring,
    validate_ring,
    validate_truss,
    zero_mul_ring,
)

T39 = subset_of_ring(ring_Zn(12), [3, 9], ["3", "9"])


def test_truss_of_z2_is_unital():
    T = truss_from_ring(ring_Zn(2))
    assert T.unit == 1


def test_t39_accepted():
    assert T39.labels == ("3", "9")
    assert T39.mul[1, 1] == 1 and T39.mul[0, 1] == 0
    assert T39.unit == 1


def test_subset_not_closed_rejected():
    with pytest.raises((NotClosed, AxiomViolation)):
        subset_of_ring(ring_Zn(4), [0, 1])


def test_small_trusses():
    assert truss_from_ring(ring_Zn(3)).size == 3
    zero = validate_ring(trivial_group(), np.zeros((1, 1), dtype=int))
    assert truss_from_ring(zero).size == 1


def test_bad_multiplication_rejected():
    H = heap_from_group(cyclic_group(3))
    mul = np.array([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(AxiomViolation):
        validate_truss(H, mul)


def rt_value(R, X):
    return [tuple(int(v) for v in r) for r in np.asarray(X)]


def test_t39_zero_of_rt():
    # basepoint 3 has id 0; (9,0)(9,0) = (3,0), the zero
    R, iota = universal_ring(T39, 0)
    assert rt_value(R, R.zero) == [(0, 0)]
    assert rt_value(R, R.mul(np.array([[1, 0]]), np.array([[1, 0]]))) == [(0, 0)]


def test_t39_iota_multiplicative_instance():
    R, iota = universal_ring(T39, 0)
    i9 = iota(np.array([[1]]))
    assert rt_value(R, i9) == [(1, 1)]
    assert rt_value(R, R.mul(i9, i9)) == rt_value(R, iota(np.array([[T39.mul[1, 1]]])))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.data())
def test_unital_product_formula_against_integers(N, data):
    """For T(Z_N) at o = 1: (t,m)(s,n) = (ts + (n-1)t + (m-1)s, mn), sums in the retract at 1."""
    T = truss_from_ring(ring_Zn(N))
    R, _ = universal_ring(T, T.unit)
    t, s = data.draw(st.integers(0, N - 1)), data.draw(st.integers(0, N - 1))
    m, n = data.draw(st.integers(-50, 50)), data.draw(st.integers(-50, 50))
    out = R.mul(np.array([[t, m]]), np.array([[s, n]]))[0]

    # the retract at 1 is x ↦ x - 1 as an integer shift
    def shifted(x):
        return (x - 1) % N

    expect = (shifted(t * s) + (n - 1) * shifted(t) + (m - 1) * shifted(s) + 1) % N
    assert int(out[0]) == expect and int(out[1]) == m * n


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_rt_certified_and_simplified(N):
    T = truss_from_ring(ring_Zn(N))
    for o in range(N):
        assert certify_ring(universal_ring(T, o)[0]).ok
    assert unital_simplification(T).ok


@pytest.mark.parametrize("name", ["T4", "T39", "TV4z"])
def test_basepoint_change_is_iso(sf, name):
    T = sf[name]
    for o1 in range(T.size):
        for o2 in range(T.size):
            f, _, cert = basepoint_change(T, o1, o2)
            assert cert.ok
            R1, _ = universal_ring(T, o1)
            R2, _ = universal_ring(T, o2)
            assert np.array_equal(f(R1.zero), R2.zero)


def test_lift_of_t39_inclusion():
    R = ring_Zn(12)

    def phi(X):
        return np.array([3, 9])[X[:, 0]].reshape(-1, 1)

    lift = lift_morphism(T39, phi, R, o=0)
    assert lift.certificate.ok
    for t in range(2):
        for n in range(-6, 7):
            v = lift.map(np.array([[t, n]]))[0, 0]
            assert v == ([3, 9][t] + (n - 1) * 3) % 12


def test_lift_of_iota_is_identity():
    R, iota = universal_ring(T39)
    lift = lift_morphism(T39, iota.fn, R)
    W = R.group.window(2)
    assert np.array_equal(lift.map(W), W)


def test_dorroh_of_zero_ring_is_z():
    Ru, j = dorroh_ring(zero_mul_ring(trivial_group()))
    assert certify_ring(Ru).ok
    X = np.array([[0, 3]])
    Y = np.array([[0, -4]])
    assert Ru.mul(X, Y).tolist() == [[0, -12]]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1), st.integers(-20, 20), st.integers(0, 1), st.integers(-20, 20))
def test_dorroh_of_zero_multiplication_z2(a, u, b, v):
    Ru, _ = dorroh_ring(zero_mul_ring(cyclic_group(2)))
    out = Ru.mul(np.array([[a, u]]), np.array([[b, v]]))[0]
    assert out.tolist() == [(v * a + u * b) % 2, u * v]
    # unit law
    assert Ru.mul(np.array([[a, u]]), np.array([[0, 1]]))[0].tolist() == [a, u]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(-9, 9), st.integers(0, 1), st.integers(-9, 9))
def test_tu_integer_coordinate(x, m, y, n):
    U, _ = unital_truss_extension(T39)
    out = U.mul(np.array([[x, m]]), np.array([[y, n]]))[0]
    assert out[1] == m + n - m * n


def test_tu_unit_and_embedding():
    for o in range(2):
        U, j = unital_truss_extension(T39, o)
        assert certify_truss(U).ok
        jt = j(np.array([[0], [1]]))
        u = np.array([U.unit, U.unit])
        assert np.array_equal(U.mul(jt, u), jt)
        assert certify_tu_closure(T39, o).ok


def test_unital_extension_of_t39_inclusion():
    T12 = truss_from_ring(ring_Zn(12))

    def f(X):
        return np.array([3, 9])[X[:, 0]].reshape(-1, 1)

    assert certify_unital_extension(T39, f, T12).ok
    ext = unital_extension(T39, f, T12)
    U, _ = unital_truss_extension(T39)
    assert ext(np.array([U.unit]))[0, 0] == T12.unit


@pytest.mark.parametrize("name", ["T2", "T39", "T0"])
def test_dorroh_commutation(sf, name):
    assert check_dorroh_commutation(sf[name]).ok


@pytest.mark.parametrize("name", ["T2", "T3", "T4", "T39", "Tc2", "TV4z"])
def test_dorroh_commutation_every_basepoint(sf, name):
    T = sf[name]
    for o in range(T.size):
        assert check_dorroh_commutation(T, o).ok


def test_empty_truss_extensions():
    T0 = empty_truss()
    R, _ = universal_ring(T0)
    assert R.group.width == 1 and R.group.zdim == 0
    A = rtu(T0)
    assert A.group.zdim == 1 and A.group.gpart.size == 1
    U, _ = unital_truss_extension(T0)
    assert U.group.gpart.size == 1 and U.group.zdim == 0


def test_arithmetic_truss():
    S = arithmetic_truss(6, 3)
    assert certify_truss(S, radius=6).ok
    X = np.array([[0, 2]])
    Y = np.array([[0, -1]])
    assert arithmetic_value(6, 3, S.mul(X, Y))[0] == 15 * -3
    with pytest.raises(ValueError):
        arithmetic_truss(6, 2)
