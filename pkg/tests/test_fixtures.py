import pytest

from heapmods.fixtures import NEGATIVE_SEED, load_fixtures, negative_corpus


def test_corpus_sizes(sf):
    assert len(sf.names("heap")) >= 10
    trusses = sf.names("truss")
    assert len(trusses) >= 6
    for name in ("T39", "T2", "T3", "T4", "T6", "T12"):
        assert name in trusses
    assert len(sf.names("module")) + len(sf.names("pointed")) >= 8
    assert len(sf.names("hom")) >= 6


def test_shipped_file_matches_builder(sf):
    from heapmods.dsl import same_structure
    from heapmods.fixtures import build_corpus

    built = build_corpus()
    assert sf.names() == built.names()
    for name in sf.names():
        assert same_structure(sf[name], built[name]), name


def test_load_from_default_path():
    assert load_fixtures().names() == load_fixtures(None).names()


@pytest.fixture(scope="module")
def corpus(sf):
    return negative_corpus(sf)


def test_every_fixture_with_a_table_has_a_mutant(sf, corpus):
    mutated = {m.fixture for m in corpus}
    skipped = set(sf.names()) - mutated
    # forks and sequences only reference other declarations; empty structures have no entries
    for name in skipped:
        kind = sf.decls[name].kind
        assert kind in ("fork", "sequence") or sf[name].size == 0, name


def test_every_mutant_rejected_with_witness(corpus):
    for m in corpus:
        err = m.rejection()
        assert err is not None, (m.fixture, m.table, m.index)
        assert str(err)


def test_corpus_is_deterministic(sf, corpus):
    again = negative_corpus(sf, NEGATIVE_SEED)
    assert [(m.fixture, m.table, m.index, m.new) for m in again] == \
        [(m.fixture, m.table, m.index, m.new) for m in corpus]
