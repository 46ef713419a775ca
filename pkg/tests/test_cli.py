"""Command line surface: subcommands, exit codes, JSON reports."""

import json

import pytest

from agcodes import cli, operators
from agcodes.algebra import Ambient, parse_element
from agcodes.fields import FieldTower
from agcodes.groups import cyclic


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_paper_passes(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 30


def test_verify_paper_json(capsys):
    code, out, _ = run(capsys, "verify-paper", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    suites = {r["suite"] for r in payload["results"]}
    assert suites == {"F8-C3-lcd", "F9-C2-gram-rank", "F4-C6-self-dual",
                      "F9-Klein-coefficientwise"}


def test_verify_paper_fault_injection(capsys):
    code, out, _ = run(capsys, "verify-paper", "--inject-fault")
    assert code == 1
    assert "FAIL F8-C3-lcd" in out
    assert "ReducibleModulus" in out


def test_analyze_f8_c3(capsys):
    code, out, _ = run(
        capsys, "analyze", "--field", "q=2,m=3", "--group", "cyclic:3",
        "--element", "1+g+g^2", "--form", "TE", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["idempotent"] is True
    assert payload["restricted_code"]["parameters"]["display"] == "(3, 2^1, 3)"
    assert payload["restricted_code"]["forms"]["TE"]["lcd"] is True
    assert payload["criteria"]["TE"]["lcd_criterion"] is True
    assert payload["star_complement"] is False


def test_analyze_f9_c2_both_forms(capsys):
    code, out, _ = run(
        capsys, "analyze", "--field", "q=3 m=2", "--group", "cyclic:2",
        "--element", "2+2*g", "--form", "TE,TH", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["criteria"]["TE"]["gram_rank"] == 1
    assert payload["criteria"]["TE"]["lcd_criterion"] is True
    assert payload["criteria"]["TH"]["lcd_criterion"] is True


def test_analyze_zero_element_warns(capsys):
    code, out, err = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--element", "0", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["restricted_code"]["dim_F"] == 0
    assert "zero element" in err


def test_analyze_non_idempotent_downgraded(capsys):
    code, out, err = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--element", "1+g", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["idempotent"] is False
    assert "criteria" not in payload
    assert "not idempotent" in err


def test_analyze_parse_error_exit_2(capsys):
    code, _, err = run(
        capsys, "analyze", "--field", "q=12 m=1", "--group", "cyclic:3",
        "--element", "1",
    )
    assert code == 2
    assert "error" in err


def test_analyze_projector_file(tmp_path, capsys):
    amb = Ambient(FieldTower(2, 3), cyclic(3))
    e = parse_element(amb, "1 + g + g^2")
    path = tmp_path / "proj.json"
    path.write_text(operators.to_json(operators.rho(e)))
    code, out, _ = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--projector", str(path), "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["fg_linear"] is True and payload["projector"] is True
    assert payload["image"]["dim_F"] == 3


def test_search_trivial_group(capsys):
    code, out, _ = run(
        capsys, "search", "--field", "q=2 m=2", "--group", "trivial", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["scan"]["idempotents_found"] == 2
    elems = {hit["element"] for hit in payload["hits"]}
    assert elems == {"0", "1"}


def test_search_f4_c6_restricted_support(capsys):
    code, out, _ = run(
        capsys, "search", "--field", "q=2 m=2", "--group", "cyclic:6",
        "--support", "g2,g4", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    elems = {hit["element"] for hit in payload["hits"]}
    assert "(a + 1)*g2 + a*g4" in elems  # the worked self-dual generator


def test_search_ideal_selfdual_predicate(capsys):
    # full scan of KG for K = F_16 over F_4, C_2: every ideal-self-dual hit
    # must satisfy star(e) = 1 - e, and vice versa
    code, out, _ = run(
        capsys, "search", "--field", "q=4 m=2", "--group", "cyclic:2",
        "--predicate", "TE-ideal-self-dual", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    for hit in payload["hits"]:
        assert hit["star_complement"] is True
    code2, out2, _ = run(
        capsys, "search", "--field", "q=4 m=2", "--group", "cyclic:2", "--json",
    )
    all_hits = json.loads(out2)["hits"]
    assert {h["element"] for h in all_hits if h["ideal"]["forms"]["TE"]["self_dual"]} == {
        h["element"] for h in payload["hits"]
    }
    assert {h["element"] for h in all_hits if h["star_complement"]} == {
        h["element"] for h in payload["hits"]
    }


def test_search_restricted_selfdual_predicate(capsys):
    code, out, _ = run(
        capsys, "search", "--field", "q=2 m=2", "--group", "cyclic:6",
        "--predicate", "TE-self-dual", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    elems = {hit["element"] for hit in payload["hits"]}
    assert "(a + 1)*g2 + a*g4" in elems


def test_search_bad_predicate(capsys):
    code, _, err = run(
        capsys, "search", "--field", "q=2 m=2", "--group", "cyclic:2",
        "--predicate", "bogus",
    )
    assert code == 2 and "predicate" in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["analyze", "--element", "1"])  # missing required args
    assert exc.value.code == 2


def test_human_readable_output(capsys):
    code, out, _ = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--element", "1+g+g^2",
    )
    assert code == 0
    assert "restricted_code" in out and "(3, 2^1, 3)" in out


def test_analyze_euclidean_form_on_ideal(capsys):
    code, out, _ = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--element", "1+g+g^2", "--form", "E,TE", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    ideal_forms = payload["ideal_code"]["forms"]
    assert ideal_forms["E"]["dual_dim_F"] == ideal_forms["TE"]["dual_dim_F"]
    assert "coincidence" in ideal_forms["E"]["note"]
    # the restricted code is not K-linear, so E reports a note only
    assert "dual_dim_F" not in payload["restricted_code"]["forms"]["E"]


def test_analyze_hermitian_rejected_for_odd_degree(capsys):
    code, _, err = run(
        capsys, "analyze", "--field", "q=2 m=3", "--group", "cyclic:3",
        "--element", "1", "--form", "TH",
    )
    assert code == 2 and "even extension degree" in err
