import csv
import io
import json

from unicomplex.cli import dispatch, emit_report


def run(*argv):
    return dispatch(list(argv))


def test_fvector_report():
    code, text = run("fvector", "--variant", "K", "--p", "3", "--n", "3")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["formula"] == ["1", "13", "78", "234"]
    assert rep["results"]["sphere_count"] == "168"


def test_fvector_both_methods_match():
    code, text = run(
        "fvector", "--variant", "X", "--p", "3", "--n", "2", "--method", "both"
    )
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["enumeration"] == rep["results"]["formula"]
    assert rep["results"]["match"] is True


def test_morse_report():
    code, text = run("morse", "--variant", "K", "--p", "2", "--n", "3")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["acyclic"] is True
    assert rep["results"]["critical"] == {"0": "1", "2": "13"}


def test_homology_report():
    code, text = run("homology", "--variant", "K", "--p", "3", "--n", "2")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["betti"] == ["0", "3"]
    assert rep["results"]["torsion_free"] is True


def test_bhargava_report():
    code, text = run("bhargava", "--set", "geometric:1:2", "--k", "3")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["k3"]["factorial"] == "168"


def test_byte_determinism():
    a = run("fvector", "--variant", "K", "--p", "5", "--n", "2")
    b = run("fvector", "--variant", "K", "--p", "5", "--n", "2")
    assert a == b


def test_json_round_trips():
    _, text = run("zcheck", "--n", "2", "--max-norm", "3")
    rep = json.loads(text)
    assert json.loads(json.dumps(rep)) == rep


def test_csv_rows_equal_leaf_count():
    _, jtext = run("fvector", "--variant", "K", "--p", "3", "--n", "2")
    _, ctext = run("fvector", "--variant", "K", "--p", "3", "--n", "2",
                   "--format", "csv")
    rep = json.loads(jtext)

    def leaves(obj):
        if isinstance(obj, dict):
            return sum(leaves(v) for v in obj.values())
        if isinstance(obj, list):
            return sum(leaves(v) for v in obj)
        return 1

    rows = list(csv.reader(io.StringIO(ctext)))
    assert rows[0] == ["key", "value"]
    assert len(rows) - 1 == leaves(rep)


def test_usage_errors_exit_2():
    code, _ = run("no-such-command")
    assert code == 2
    code, _ = run("fvector", "--variant", "K", "--p", "4", "--n", "2")
    assert code == 2
    code, _ = run("morse", "--facets", "/nonexistent/file")
    assert code == 2


def test_resource_error_exit_3():
    code, text = run("build", "--variant", "X", "--p", "5", "--n", "9")
    assert code == 3
    assert "budget" in text


def test_build_and_reload_facets(tmp_path):
    out = tmp_path / "k32.facets"
    code, _ = run("build", "--variant", "K", "--p", "3", "--n", "2",
                  "--out", str(out))
    assert code == 0
    code, text = run("homology", "--facets", str(out))
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["betti"] == ["0", "3"]


def test_shelling_rejects_bad_user_order(tmp_path):
    facets = tmp_path / "path.facets"
    facets.write_text("a b\nb c\nc d\n")
    bad = tmp_path / "bad.order"
    bad.write_text("a b\nc d\nb c\n")
    code, text = run("shelling", "--facets", str(facets), "--order", str(bad))
    assert code == 1
    rep = json.loads(text)
    assert rep["results"]["verified"] is False
    assert rep["results"]["first_failing_index"] == "2"
    good = tmp_path / "good.order"
    good.write_text("a b\nb c\nc d\n")
    code, _ = run("shelling", "--facets", str(facets), "--order", str(good))
    assert code == 0


def test_shelling_construct_command():
    code, text = run("shelling", "--variant", "K", "--p", "3", "--n", "2")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["verified"] is True
    assert rep["results"]["n_facets"] == "6"


def test_shifted_command():
    code, text = run("shifted", "--variant", "X", "--p", "2", "--n", "2")
    assert code == 0
    assert json.loads(text)["results"]["shifted"] is True
    code, text = run("shifted", "--variant", "X", "--p", "3", "--n", "2")
    assert json.loads(text)["results"]["shifted"] is False


def test_buchstaber_command(tmp_path):
    facets = tmp_path / "k4.facets"
    facets.write_text("a b\na c\na d\nb c\nb d\nc d\n")
    code, text = run("buchstaber", "--facets", str(facets), "--primes", "2,3")
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["p3"]["s_fp"] == "2"
    assert rep["results"]["p2"]["gamma"] == "4"


def test_zcheck_pair_command(tmp_path):
    pair = tmp_path / "cp2.pair"
    pair.write_text("1 2\n1 3\n2 3\n\n1 0 -1\n0 1 -1\n")
    code, text = run("zcheck", "--pair", str(pair))
    assert code == 0
    assert json.loads(text)["results"]["pair_valid"] is True
    mutant = tmp_path / "bad.pair"
    mutant.write_text("1 2\n1 3\n2 3\n\n2 0 -1\n0 1 -1\n")
    code, text = run("zcheck", "--pair", str(mutant))
    assert code == 1
    rep = json.loads(text)
    assert rep["results"]["failing_facet"] == ["1", "2"]


def test_verify_all_reduced_scale():
    code, text = run(
        "verify-all", "--pairs", "2,2;3,2", "--oracle-samples", "200"
    )
    assert code == 0
    rep = json.loads(text)
    assert rep["results"]["all_passed"] is True


def test_emit_text_format():
    _, text = run("fvector", "--variant", "K", "--p", "3", "--n", "2",
                  "--format", "text")
    assert "results.sphere_count" in text
    assert "3" in text


def test_emit_report_stringifies_integers():
    out = emit_report({"a": 5, "b": [1, 2], "c": True})
    rep = json.loads(out)
    assert rep == {"a": "5", "b": ["1", "2"], "c": True}
