import numpy as np
import pytest

from heapmods.errors import NotASubHeapOfModules
from heapmods.heap import congruences
from heapmods.iso import is_isomorphic
from heapmods.limits import (
    check_counit,
    check_naturality,
    check_unit,
    coequalizer,
    coequalizer_pointed,
    coproduct,
    coproduct_generation_certificate,
    equalizer,
    generated_subhom,
    generated_subhom_alt,
    hom_quotient,
    iso_between_quotients,
    kernel_pair,
    product,
    pullback,
    pushout,
    slice_G,
    slice_M,
    subhom_closure,
    terminal,
    verify_colimit,
    verify_coproduct,
    verify_limit,
    with_diagram,
    zero_slice,
)


def test_equalizer_of_identity_and_translation_is_empty(sf):
    E = equalizer(sf["id4"], sf["tau02"])
    assert E.obj.size == 0
    assert verify_limit(E, [sf["Hstar"], sf["H2m"], sf["H4m"]]).ok


def test_equalizer_of_equal_maps_is_everything(sf):
    E = equalizer(sf["id4"], sf["id4"])
    assert E.obj.size == 4


def test_kernel_pair_of_reduction(sf):
    K = kernel_pair(sf["red"])
    assert K.obj.size == 8
    p, q = K.legs
    assert all((int(a) - int(b)) % 2 == 0 for a, b in zip(p, q))
    assert verify_limit(K, [sf["Hstar"], sf["H2m"]]).ok


def test_products_and_pullbacks(sf):
    P = product([sf["H2m"], sf["H2m"]])
    assert P.obj.size == 4
    assert verify_limit(P, [sf["Hstar"], sf["H2m"], sf["H4m"]]).ok
    empty = product([], truss=sf["T4"])
    assert empty.obj.size == 1
    B = pullback(sf["red"], sf["id2"])
    assert B.obj.size == 4
    assert verify_limit(B, [sf["Hstar"], sf["H2m"]]).ok


def test_quotient_by_even_elements(sf):
    Q = hom_quotient(sf["H4m"], [0, 2])
    assert Q.obj.size == 2
    assert is_isomorphic(Q.obj, sf["H2m"])
    with pytest.raises(NotASubHeapOfModules):
        hom_quotient(sf["H4m"], [0, 1])


def _blocks(cls):
    return sorted(sorted(int(x) for x in np.flatnonzero(cls == c)) for c in np.unique(cls))


def _action_compatible(M, cls):
    cls = np.asarray(cls)
    # class of t ▷_a b depends only on the classes of a and b
    seen = {}
    for t in range(M.truss.size):
        for a in range(M.size):
            for b in range(M.size):
                key = (t, int(cls[a]), int(cls[b]))
                if seen.setdefault(key, int(cls[M.taction[t, a, b]])) != cls[M.taction[t, a, b]]:
                    return False
    return True


@pytest.mark.parametrize("name", ["H4m", "H2m", "H4z", "H39", "HM4a", "H6m"])
def test_congruences_come_from_subhoms(sf, name):
    M = sf[name]
    found = 0
    for cls in congruences(M.heap):
        cls = np.asarray(cls)
        if not _action_compatible(M, cls):
            continue
        found += 1
        for e in range(M.size):
            N = [int(x) for x in np.flatnonzero(cls == cls[e])]
            assert _blocks(hom_quotient(M, N).legs[0]) == _blocks(cls)
    assert found >= 2


def test_generated_subhom_of_nothing_is_the_point(sf):
    M = sf["H4m"]
    for e in range(4):
        assert generated_subhom(M, [], e) == [e]


@pytest.mark.parametrize("name", ["H4m", "H2m", "H4z", "H39", "HM4a", "H6m", "KP"])
def test_generated_subhom_closed_forms(sf, name):
    M = sf[name]
    for x in range(M.size):
        for e in range(M.size):
            expect = subhom_closure(M, [x, e])
            assert generated_subhom(M, [x], e) == expect
            assert generated_subhom_alt(M, [x], e) == expect


def test_coequalizer_of_identity_and_translation(sf):
    C = coequalizer(sf["id4"], sf["tau02"])
    assert is_isomorphic(C.obj, sf["H2m"])
    C2 = coequalizer_pointed(sf["id4"], sf["tau02"])
    iso_between_quotients(C, C2)
    diag = with_diagram(C, sf["id4"], sf["tau02"])
    assert verify_colimit(diag, [sf["Hstar"], sf["H2m"], sf["H4m"]]).ok


def test_coequalizer_of_equal_maps_is_codomain(sf):
    C = coequalizer(sf["red"], sf["red"])
    assert is_isomorphic(C.obj, sf["H2m"])
    assert C.obj.size == 2


def test_coequalizer_independent_of_basepoint(sf):
    sizes = {coequalizer(sf["id4"], sf["tau02"], e).obj.size for e in range(4)}
    assert sizes == {2}


def test_pushout_of_identities(sf):
    for e in range(2):
        P = pushout(sf["id2"], sf["id2"], e)
        assert is_isomorphic(P.obj, sf["H2m"])
        assert verify_colimit(with_diagram(P, sf["id2"], sf["id2"]), [sf["Hstar"], sf["H2m"]]).ok


def test_coproduct_of_two_points(sf):
    S = sf["Hstar"]
    full = coproduct([S, S])
    assert [leg(np.array([0])).tolist() for leg in full.legs] == [[[1, 0, 0]], [[1, 0, 1]]]
    iso = coproduct([S, S], mode="isotropic")
    assert [leg(np.array([0])).tolist() for leg in iso.legs] == [[[1, 0]], [[1, 1]]]
    for cop in (full, iso):
        assert coproduct_generation_certificate(cop).ok
        assert verify_coproduct(cop, [sf["H2m"], S]).ok


def test_coproduct_with_empty_members(sf):
    E = coproduct([], truss=sf["T4"])
    assert E.is_empty
    H = sf["H2m"]
    one = coproduct([H])
    assert one.is_finite
    obj, legs = one.heap_of_modules()
    assert is_isomorphic(obj, H)


def test_slice_of_point(sf):
    S = slice_G(sf["Hstar"])
    M, fib = slice_M(S)
    assert M.size == 1
    assert check_unit(sf["Hstar"]).ok


def test_zero_slice(sf):
    M, fib = slice_M(zero_slice(sf["T4"]))
    assert M.size == 0 and len(fib) == 0


@pytest.mark.parametrize("name", ["H2m", "H4m", "H4z", "H39", "Hstar"])
def test_slice_unit_and_counit(sf, name):
    M = sf[name]
    assert check_unit(M).ok
    assert check_counit(slice_G(M)).ok


def test_slice_naturality(sf):
    for f in ("red", "dbl", "tau02", "bang4", "pt2"):
        assert check_naturality(sf[f]).ok


def test_terminal_is_a_point(sf):
    assert terminal(sf["T4"]).size == 1
