import numpy as np
import pytest

from heapmods.exact import (
    barr_equivalence,
    barr_sweep,
    check_exact_at,
    exactness_transfer,
    is_barr_exact,
    is_short_exact,
    perturb,
    perturbation_failures,
)
from heapmods.hom import hom_morphism
from heapmods.limits import empty_hom, kernel_pair


def test_identity_then_collapse_is_exact(sf):
    bang = sf["bang4"]
    rep = check_exact_at(sf["id4"], bang)
    assert rep.exact and rep.witnesses == (0,)


def test_doubling_then_reduction(sf):
    dbl, red = sf["dbl"], sf["red"]
    rep = check_exact_at(dbl, red)
    assert rep.exact and rep.witnesses == (0,)
    assert is_short_exact(dbl, red)


def test_identities_not_short_exact(sf):
    assert not check_exact_at(sf["id4"], sf["id4"]).exact
    assert not is_short_exact(sf["id4"], sf["id4"])
    assert is_short_exact(sf["idstar"], sf["idstar"])


def test_empty_codomain_noted(sf):
    E = empty_hom(sf["T4"])
    g = hom_morphism(E, E, np.zeros(0, dtype=int))
    rep = check_exact_at(g, g)
    assert not rep.exact and rep.note == "EmptyCodomain"


def test_perturbations_stay_exact(sf):
    dbl, red = sf["dbl"], sf["red"]
    assert perturbation_failures(dbl, red, 0, 0) == []
    # the witness moves with the perturbation of g
    for n in range(4):
        for p in range(2):
            rep = check_exact_at(perturb(dbl, n, 0), perturb(red, p, 0))
            assert rep.exact


@pytest.mark.parametrize("seq", ["seq_main", "seq_star", "seq_ids"])
def test_transfer_agrees_at_every_basepoint(sf, seq):
    f, g = sf[seq]
    for oM in range(f.dom.size):
        for oN in range(f.cod.size):
            for oP in range(g.cod.size):
                rep = exactness_transfer(f, g, oM, oN, oP)
                if rep.heap_exact:
                    assert rep.route_ok
                # exactness of the pointed parts does not depend on where they are based
                assert rep.module_exact == exactness_transfer(f, g, 0, 0, 0).module_exact


def test_transfer_on_main_sequence(sf):
    f, g = sf["seq_main"]
    rep = exactness_transfer(f, g, 0, 0, 0)
    assert rep.heap_exact and rep.module_exact and rep.route_ok


def test_kernel_pair_of_injective_is_diagonal(sf):
    K = kernel_pair(sf["dbl"])
    assert K.obj.size == 2
    assert np.array_equal(K.legs[0], K.legs[1])


def test_kernel_pair_of_constant_is_square(sf):
    K = kernel_pair(sf["bang4"])
    assert K.obj.size == 16


@pytest.mark.parametrize("name,expect", [
    ("fork_kp", True),
    ("fork_id", True),
    ("fork_star", True),
    ("fork_idred", False),
    ("fork_dbl", False),
    ("fork_kp_swap", False),
])
def test_barr_exactness_of_forks(sf, name, expect):
    fork = sf[name]
    assert is_barr_exact(fork).exact == expect
    sweep = barr_sweep(fork)
    assert all(r.agree for r in sweep)
    assert {r.sequence for r in sweep} == {expect}


def test_non_surjective_fork_fails_only_coequalizer(sf):
    rep = is_barr_exact(sf["fork_dbl"])
    assert rep.kernel_pair and not rep.coequalizer


def test_kernel_pair_fork_sequence_details(sf):
    for o in range(4):
        r = barr_equivalence(sf["fork_kp"], o)
        assert r.exact_at_ho and r.fg_injective and r.ho_surjective
