import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms import cli
from carlitz_forms.algebra import PolyA, RatK, ctx_for_q
from carlitz_forms.errors import ParseError
from carlitz_forms.forms import h_form
from carlitz_forms.serialize import SCHEMA, from_text, loads, to_text
from carlitz_forms.useries import USeriesK
from carlitz_forms.vadic import VContext, embed_weight, fhat

from strategies import ratks


def run_json(*argv):
    code, text = cli.run(list(argv) + ["--json"])
    return code, json.loads(text)


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_useries_round_trip(data):
    ctx = data.draw(st.sampled_from([ctx_for_q(q) for q in (2, 3, 4)]))
    f = USeriesK.from_coeffs(ctx, data.draw(st.lists(ratks(ctx, 3), min_size=1, max_size=12)))
    assert from_text(to_text(f)) == f


def test_vseries_round_trip_with_shift():
    F3 = ctx_for_q(3)
    T = PolyA.theta(F3)
    vctx = VContext(T, 6)
    series, _ = fhat(embed_weight(5, vctx), 4, 30, vctx)
    assert series.shift == 1
    back = from_text(to_text(series))
    assert back == series and back.shift == 1


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        loads('{"schema": "carlitz-forms/1", "type": }')
    assert info.value.position == 38
    with pytest.raises(ParseError):
        loads('{"schema": "other/2"}')
    F3 = ctx_for_q(3)
    T = PolyA.theta(F3)
    doc = json.loads(to_text(USeriesK.from_coeffs(F3, [RatK(T, T + 1)])))
    doc["coefficients"] = ["T/(2*T+1)"]
    with pytest.raises(ParseError, match="monic"):
        from_text(json.dumps(doc))
    doc["coefficients"] = ["T", "1"]
    with pytest.raises(ParseError):
        from_text(json.dumps(doc))


def test_expand_petrov_equals_h_and_is_deterministic():
    argv = ["expand", "--family", "petrov", "--q", "3", "--k", "4", "--n", "1", "--trunc", "50", "--json"]
    code, first = cli.run(argv)
    assert code == 0
    assert cli.run(argv)[1] == first
    doc = json.loads(first)
    assert doc["schema"] == SCHEMA and doc["type"] == "useries"
    assert from_text(first) == h_form(ctx_for_q(3), 50)
    assert list(doc) == sorted(doc)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["expand", "--family", "petrov", "--q", "3", "--k", "5", "--n", "2"], 2),
        (["expand", "--family", "petrov", "--q", "3", "--k", "8", "--n", "3"], 2),
        (["expand", "--family", "eistail", "--q", "3", "--k", "3"], 2),
        (["expand", "--family", "h", "--q", "6"], 2),
        (["expand", "--family", "h", "--q", "3", "--trunc", "0"], 2),
        (["expand", "--family", "h", "--p", "2", "--m0", "2", "--modulus", "0,0,1"], 2),
        (["hecke", "--q", "3", "--g", "T^2", "--k", "4", "--n", "1"], 2),
        (["goss", "--q", "3", "--lattice", "torsion:T^2+1+T"], 2),
        (["decompose", "--q", "3", "--k0", "4", "--n", "1", "--v", "T", "--v", "T"], 2),
        (["usub", "--q", "3", "--a", "0"], 2),
        (["vadic", "converge", "--q", "3", "--v", "T", "--x", "1", "--y-digits", "0,5"], 2),
        (["vadic", "interpolate", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--M", "32", "--T", "2"], 3),
        (["vadic", "converge", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--T", "4", "--schedule", "5"], 3),
        (["usub", "--q", "3", "--a", "T^^2"], 1),
        (["usub", "--q", "3", "--a", "T", "--trunc", "x"], 1),
        (["usub", "--a", "T"], 1),
        (["usub", "--q", "3", "--p", "3", "--a", "T"], 1),
        (["nonsense"], 1),
        ([], 1),
        (["selfcheck", "--only", "4"], 4),
    ],
)
def test_exit_codes(argv, code):
    got, doc = run_json(*argv)
    assert got == code
    if code in (1, 2, 3):
        assert doc["type"] == "error" and doc["error"]["exit_code"] == code
    else:
        assert doc["type"] == "selfcheck" and doc["all_pass"] is False


def test_domain_error_names_the_condition():
    _, doc = run_json("expand", "--family", "petrov", "--q", "3", "--k", "5", "--n", "2")
    assert "k-2n" in doc["error"]["message"] and "multiple of q-1" in doc["error"]["message"]


def test_parse_error_position_reaches_the_document():
    _, doc = run_json("usub", "--q", "3", "--a", "T+2*")
    assert doc["error"]["kind"] == "ParseError" and "position" in doc["error"]


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CARLITZ_FORMS_TRUNC", "7")
    code, doc = run_json("expand", "--family", "h", "--q", "2")
    assert code == 0 and doc["trunc"] == 7
    monkeypatch.setenv("CARLITZ_FORMS_ZPREC", "5")
    code, doc = run_json("expand", "--family", "zeta", "--q", "3", "--k", "2")
    assert doc["precision"] == 5
    monkeypatch.setenv("CARLITZ_FORMS_VPREC", "4")
    code, doc = run_json("vadic", "interpolate", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--trunc", "5")
    assert code == 0 and doc["M"] == 4
    monkeypatch.setenv("CARLITZ_FORMS_YPREC", "1")
    code, doc = run_json("vadic", "interpolate", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--trunc", "5")
    assert code == 3
    monkeypatch.setenv("CARLITZ_FORMS_TRUNC", "many")
    code, doc = run_json("expand", "--family", "h", "--q", "2")
    assert code == 1


def test_other_commands():
    code, doc = run_json("goss", "--q", "3", "--n-max", "5")
    assert code == 0 and doc["polynomials"]["4"][-1] == "1"
    code, doc = run_json("hecke", "--q", "3", "--g", "T+1", "--k", "8", "--n", "2", "--window", "10", "--series")
    assert code == 0 and doc["report"]["pass"] and doc["series"]["trunc"] == 10
    code, doc = run_json("decompose", "--q", "3", "--k0", "4", "--n", "1", "--v", "T", "--trunc", "20", "--series")
    assert code == 0 and set(doc["parts"]) == {"0", "1"} and doc["checks"]["f1_closed_form"]["pass"]
    code, doc = run_json("vadic", "interpolate", "--q", "3", "--v", "T", "--x", "0", "--y", "1", "--trunc", "8")
    assert code == 0 and doc["status"] == "exploratory"
    code, doc = run_json("vadic", "interpolate", "--q", "3", "--v", "T", "--x", "1", "--y", "0", "--trunc", "8")
    assert doc["status"] == "modular"
    code, doc = run_json(
        "vadic", "converge", "--q", "3", "--v", "T", "--x", "1", "--y-digits", "0,2,2,2", "--steps", "2", "--trunc", "12"
    )
    assert code == 0 and len(doc["rows"]) == 2
    code, doc = run_json("expand", "--family", "delta", "--p", "2", "--m0", "2", "--trunc", "8")
    assert code == 0 and doc["field"]["m0"] == 2


def test_text_output_and_file(tmp_path, capsys):
    target = tmp_path / "h.json"
    assert cli.main(["expand", "--family", "h", "--q", "3", "--trunc", "5", "--json", "-o", str(target)]) == 0
    assert from_text(target.read_text()) == h_form(ctx_for_q(3), 5)
    capsys.readouterr()
    assert cli.main(["expand", "--family", "h", "--q", "3", "--trunc", "3"]) == 0
    out = capsys.readouterr().out
    assert "type: useries" in out and "[1] 1" in out
    assert cli.main(["usub", "--q", "3", "--a", "0"]) == 2
    assert "DomainError" in capsys.readouterr().err
    assert cli.main(["--help"]) == 0
