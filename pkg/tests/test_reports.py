import json
from fractions import Fraction

from boxcong.reports import (
    CongruenceReport,
    InvariantResult,
    make_report,
    to_csv_row,
    to_json_line,
    to_text_line,
)


def test_make_report_finite():
    rep = make_report("demo", {"p": 2}, 2, 12, 2)
    assert rep.achieved_valuation == 2
    assert not rep.infinite
    assert rep.verified
    assert rep.witness is None


def test_make_report_infinite_flag():
    rep = make_report("demo", {}, 5, 0, 3)
    assert rep.infinite
    assert rep.achieved_valuation is None
    assert rep.verified


def test_make_report_failure_carries_witness():
    rep = make_report("demo", {}, 3, 4, 2, witness_on_failure={"value": 4})
    assert not rep.verified
    assert rep.witness == {"value": 4}


def test_json_line_stable_and_parseable():
    rep = make_report("demo", {"q": Fraction(3, 2), "big": 2**100}, 1, 8, 2)
    line = to_json_line(rep)
    parsed = json.loads(line)
    assert parsed["parameters"]["q"] == "3/2"
    assert parsed["parameters"]["big"] == 2**100
    assert line == to_json_line(rep)


def test_csv_and_text_rows():
    rep = CongruenceReport(
        claim="demo",
        parameters={"a": 1},
        predicted_valuation=1,
        achieved_valuation=None,
        infinite=True,
        verified=True,
        witness=None,
    )
    row = to_csv_row(rep)
    assert row.startswith("demo,1,,True,True")
    assert "[ok]" in to_text_line(rep)

    inv = InvariantResult(
        group="p=2;orders=2,2", invariant="davenport", value=3,
        search_space=10, witness=[], predicted=3,
    )
    assert to_csv_row(inv).startswith("davenport,")
    assert "davenport" in to_text_line(inv)
