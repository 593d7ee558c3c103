import numpy as np
import pytest
from hypothesis import given, settings

from heapmods.dsl import StructureFile, dump, load, parse, same_structure
from heapmods.errors import DeclarationError, DslSyntaxError, TableNotTotal, UnresolvedReference
from heapmods.fixtures import fixture_text

from strategies import heaps

T39_TEXT = """
truss T39 {   # the odd multiples of 3 in Z12
  carrier 3 9
  bracket 3 3 : 3 9
  bracket 3 9 : 9 3
  bracket 9 3 : 9 3
  bracket 9 9 : 3 9
  mul 3 : 9 3
  mul 9 : 3 9
}
"""


def test_parse_t39():
    sf = parse(T39_TEXT)
    T = sf["T39"]
    assert T.labels == ("3", "9")
    assert T.unit == 1
    assert sf.names("truss") == ["T39"]


def test_shipped_file_round_trip():
    text = fixture_text()
    sf = parse(text)
    assert dump(sf) == text
    again = parse(dump(sf))
    for name in sf.names():
        assert same_structure(sf[name], again[name]), name


def test_load_from_path(tmp_path):
    p = tmp_path / "t.heap"
    p.write_text(T39_TEXT, encoding="utf-8")
    assert load(p)["T39"].size == 2


def test_semicolons_split_statements():
    sf = parse("heap S { carrier a; bracket a a : a }")
    assert sf["S"].size == 1


@settings(max_examples=25, deadline=None)
@given(heaps())
def test_heap_round_trip(H):
    sf = StructureFile()
    sf.add("heap", "H", H)
    back = parse(dump(sf))["H"]
    assert np.array_equal(back.bracket, H.bracket)
    assert back.labels == H.labels


def test_syntax_error_has_position():
    with pytest.raises(DslSyntaxError) as err:
        parse("heap H {\n  carrier a b\n  bracket a a : a b\n")
    assert err.value.line is not None


def test_unknown_kind_rejected():
    with pytest.raises(DslSyntaxError):
        parse("blob X { carrier a }")


def test_duplicate_declaration_rejected():
    with pytest.raises(DslSyntaxError) as err:
        parse("heap S { carrier a; bracket a a : a }\nheap S { carrier a; bracket a a : a }")
    assert err.value.line == 2


def test_unresolved_reference():
    with pytest.raises(UnresolvedReference):
        parse("morphism f { from A; to B; map 0 }")


def test_missing_rows_rejected():
    with pytest.raises(TableNotTotal):
        parse("heap H { carrier a b\n bracket a a : a b }")


def test_unknown_element_rejected():
    with pytest.raises(UnresolvedReference) as err:
        parse("heap S { carrier a; bracket a a : z }")
    assert (err.value.line, err.value.col) == (1, 35)


def test_axiom_failure_wrapped():
    text = "heap P {\n carrier a b\n bracket a a : a a\n bracket a b : a a\n bracket b a : b b\n bracket b b : b b\n}"
    with pytest.raises(DeclarationError) as err:
        parse(text)
    assert err.value.name == "P"
