"""The ten acceptance criteria, one test each; one PASS/FAIL line per criterion.

Run directly with ``python tests/test_acceptance.py`` for the lines alone.
"""

import sys

import pytest

from heapmods.suite import CRITERIA, run_criterion

import conftest


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(sf, number, capsys):
    res = run_criterion(sf, number)
    line = res.line()
    conftest.ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert res.ok, "\n".join([line] + [str(f) for f in res.failures[:20]])


def main() -> int:
    from heapmods.fixtures import load_fixtures

    sf = load_fixtures()
    ok = True
    for number in sorted(CRITERIA):
        res = run_criterion(sf, number)
        print(res.line(), flush=True)
        ok = ok and res.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
