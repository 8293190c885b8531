"""Smoke test for the periodic_twist extension.

Build and install first:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import json

import periodic_twist as pt


def main():
    assert {"s6", "s8", "toys"} <= set(pt.examples())

    s6 = pt.Example.load("s6")
    m = s6.module("M")
    assert m.dim == 6 and m.side == "left"
    assert m.omega(1).dim == 12
    assert m.omega(2).is_isomorphic(m) is False
    assert s6.periodicity("M", "sigma", 2).passed
    assert not s6.periodicity("M", "id", 1).passed

    report = s6.verify()
    assert report.passed, report.text()
    assert report.get("Ω²(M) ≅ σM")
    assert json.loads(report.json())["schema"] == "periodic-twist.report/1"

    tilt = s6.tilt(["3"])
    assert tilt.passed, tilt.text()
    assert any("{3}" in a.label for a in tilt.assertions)

    s8 = pt.Example.load("s8")
    assert s8.strong_periodicity("M", "W").passed

    try:
        pt.Example.parse("field 3\nalgebra K {\n  vertices 1\n  arrow x: 1 -> \n}\n")
    except ValueError as e:
        assert "4:" in str(e), e
    else:
        raise AssertionError("malformed input was accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
