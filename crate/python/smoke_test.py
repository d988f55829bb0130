"""Quick check of the Python bindings: build with `maturin develop` in crates/python first."""

from fractions import Fraction
from pathlib import Path

import ftsdist

FIXTURE = Path(__file__).resolve().parent.parent / "crates/cli/tests/fixtures/four_state.json"


def main():
    fts = ftsdist.System.load(str(FIXTURE))
    assert ftsdist.System.from_json(FIXTURE.read_text()).labels == ["a"]
    assert fts.states == ["s1", "s2", "s3", "s4"]

    d = fts.distance()
    assert d[1][2] == Fraction(3, 5), d
    assert all(d[i][i] == 0 for i in range(4))
    assert len(fts.distance_trace()) == 4

    assert fts.quotient("0.6") == [["s1"], ["s2", "s3"], ["s4"]]
    assert fts.quotient(Fraction(1, 2)) == [["s1"], ["s2"], ["s3"], ["s4"]]
    assert not fts.bisimilar("s2", "s3")
    assert fts.similarity()[1][2] == Fraction(2, 5)

    par = fts.compose("parallel")
    assert len(par.states) == 16
    assert par.bisimilar("s4|s3", "s3|s4")
    assert fts.compose("parallel", start=("s2", "s3")).states == ["s2|s3", "s3|s4", "s4|s4"]
    assert ftsdist.System.from_json(par.to_json()).states == par.states

    lifted = ftsdist.lifted_distance(
        ["s", "t"], [["0", "1"], ["1", "0"]], {"s": "0.9", "t": "0.3"}, {"s": "0.9", "t": "0.5"}
    )
    assert lifted == Fraction(1, 2), lifted

    try:
        ftsdist.System.load("/nonexistent.json")
    except OSError:
        pass
    else:
        raise AssertionError("missing file loaded")
    try:
        ftsdist.System.from_json('{"states": ["p"], "labels": [], "transitions": [], "x": 1}')
    except ValueError:
        pass
    else:
        raise AssertionError("unknown field accepted")

    print("ok")


if __name__ == "__main__":
    main()
