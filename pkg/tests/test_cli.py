"""End-to-end tests of the command-line front end.

Every subcommand runs in-process through cli.main; JSON outputs are
validated against the shipped schemas with jsonschema.
"""

import csv
import importlib.resources
import io
import json

import jsonschema
import pytest

from vassiliev import cli
from vassiliev.codes import parse_gauss
from vassiliev.skein import conway

TREFOIL = "O1+U2+O3+U1+O2+U3+"
FIGURE_EIGHT = "O1+U2+O3-U4-O2+U1+O4-U3-"


def run_json(capsys, argv):
    status = cli.main(argv)
    out, err = capsys.readouterr()
    assert status == 0, err
    payload = json.loads(out)
    schema = cli.load_schema(cli.SCHEMA_FOR_COMMAND[payload["command"]])
    jsonschema.validate(payload, schema)
    return payload


def run_error(capsys, argv):
    status = cli.main(argv)
    out, err = capsys.readouterr()
    assert status == 3
    payload = json.loads(err)
    jsonschema.validate(payload, cli.load_schema("error"))
    return payload["error"]


def curve_file(tmp_path, name):
    res = importlib.resources.files("vassiliev.data").joinpath(f"{name}.json")
    p = tmp_path / f"{name}.curve.json"
    p.write_text(res.read_text())
    return str(p)


def test_v2_literal_gauss(capsys):
    payload = run_json(capsys, ["v2", TREFOIL])
    assert payload["v2"] == 1


def test_v2_figure_eight(capsys):
    assert run_json(capsys, ["v2", FIGURE_EIGHT])["v2"] == -1


def test_conway_from_file(tmp_path, capsys):
    p = tmp_path / "knot.gauss"
    p.write_text(TREFOIL + "\n")
    payload = run_json(capsys, ["conway", str(p)])
    assert payload["coefficients"] == {"0": 1, "2": 1}
    assert payload["text"] == "1 + z^2"


def test_parse_pd_and_json_agree(capsys):
    pd = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"
    first = run_json(capsys, ["parse", pd])
    assert first["n_crossings"] == 3
    assert first["writhe"] == 3
    second = run_json(capsys, ["parse", json.dumps(first["diagram"])])
    assert second["diagram"] == first["diagram"]


def test_vassiliev_eval_matches_exchange(capsys):
    node = {
        "format": "singular-diagram",
        "components": [["P1", "O2", "Q1", "U2"]],
        "signs": {"2": 1},
    }
    payload = run_json(capsys, ["vassiliev-eval", json.dumps(node)])
    from vassiliev.codes import SingularDiagram

    d = SingularDiagram.from_json_dict(node)
    expected = conway(d.resolve_node(1, "positive")) - conway(d.resolve_node(1, "negative"))
    assert payload["coefficients"] == {str(e): c for e, c in expected.items()}


def test_chords_enumerate(capsys):
    payload = run_json(capsys, ["chords", "enumerate", "2"])
    assert payload["raw_count"] == 3
    assert len(payload["raw_matchings"]) == 3
    assert payload["canonical_count"] == 2


def test_chords_4t(capsys):
    payload = run_json(capsys, ["chords", "4t", "2"])
    assert payload["n_relations"] >= 1
    for rel in payload["relations"]:
        assert len(rel) == 4
        assert sorted(t["sign"] for t in rel) == [-1, -1, 1, 1]


def test_weights_su2_degree2(capsys):
    payload = run_json(capsys, ["weights", "--algebra", "su2", "--degree", "2"])
    values = sorted(w["re"] for w in payload["weights"])
    assert values == [-0.375, 1.125]
    assert all(abs(w["im"]) < 1e-12 for w in payload["weights"])


def test_weights_gl3(capsys):
    payload = run_json(capsys, ["weights", "--algebra", "gl3", "--degree", "1"])
    assert payload["algebra"] == "gl3"
    assert len(payload["weights"]) == 1


def test_kontsevich_raw_circle(tmp_path, capsys):
    path = curve_file(tmp_path, "round_circle")
    payload = run_json(capsys, ["kontsevich", path, "--degree", "1", "--raw"])
    assert payload["normalized"] is False
    row = payload["coefficients"][0]
    assert abs(row["value_re"]) < 1e-6 and abs(row["value_im"]) < 1e-6


def test_kontsevich_normalized_hump(tmp_path, capsys):
    path = curve_file(tmp_path, "hump")
    payload = run_json(capsys, ["kontsevich", path, "--degree", "2"])
    assert payload["normalized"] is True
    assert payload["n_maxima"] == 2
    crossed = [r for r in payload["coefficients"] if r["diagram"] == "0-2,1-3"]
    assert crossed and abs(crossed[0]["value_re"]) < 5e-3


def test_compare_trefoil(tmp_path, capsys):
    path = curve_file(tmp_path, "trefoil_2max")
    payload = run_json(capsys, ["compare", path, TREFOIL])
    assert payload["skein"]["v2"] == 1
    assert payload["within_tolerance"] is True
    assert payload["difference"] < payload["tolerance"]


def test_error_missing_file(capsys):
    err = run_error(capsys, ["conway", "/tmp/definitely-not-here.gauss"])
    assert err["module"] == "cli"


def test_error_parse_has_position(capsys):
    err = run_error(capsys, ["parse", "O1+U2+O3x"])
    assert err["module"] == "codes"
    assert isinstance(err["position"], int)


def test_error_bad_algebra(capsys):
    err = run_error(capsys, ["weights", "--algebra", "e8", "--degree", "2"])
    assert err["module"] == "lie"


def test_error_degree_out_of_range(tmp_path, capsys):
    path = curve_file(tmp_path, "round_circle")
    err = run_error(capsys, ["kontsevich", path, "--degree", "7"])
    assert err["module"] == "kontsevich"


def test_usage_error_exit_2(capsys):
    assert cli.main(["bogus-subcommand"]) == 2
    assert cli.main([]) == 2


def test_csv_conway(capsys):
    status = cli.main(["conway", TREFOIL, "--format", "csv"])
    out, _ = capsys.readouterr()
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["exponent", "coefficient"]
    assert ["0", "1"] in rows and ["2", "1"] in rows


def test_csv_kontsevich_quotes_diagrams(tmp_path, capsys):
    path = curve_file(tmp_path, "round_circle")
    status = cli.main(["kontsevich", path, "--degree", "2", "--raw", "--format", "csv"])
    out, _ = capsys.readouterr()
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "diagram"
    # the parallel diagram's name contains a comma; csv must keep it one field
    assert any(r[0] == "0-1,2-3" for r in rows[1:])


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    status = cli.main(["v2", TREFOIL, "--output", str(target)])
    out, _ = capsys.readouterr()
    assert status == 0
    assert out == ""
    assert json.loads(target.read_text())["v2"] == 1


def test_seed_echoed(capsys):
    payload = run_json(capsys, ["v2", TREFOIL, "--seed", "7"])
    assert payload["seed"] == 7


def test_global_flags_before_subcommand(capsys):
    status = cli.main(["--format", "csv", "v2", TREFOIL])
    out, _ = capsys.readouterr()
    assert status == 0
    assert out.splitlines()[0] == "v2"


def test_shipped_curves_validate(tmp_path):
    schema = cli.load_schema("curve")
    from vassiliev.fixtures import ALL_FIXTURE_NAMES

    for name in ALL_FIXTURE_NAMES:
        res = importlib.resources.files("vassiliev.data").joinpath(f"{name}.json")
        jsonschema.validate(json.loads(res.read_text()), schema)


def test_parse_echo_matches_library(capsys):
    payload = run_json(capsys, ["parse", TREFOIL])
    d = parse_gauss(TREFOIL)
    assert payload["gauss"] == d.to_gauss()
    assert payload["writhe"] == d.writhe


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig(subcommand="nope", inputs=())
    with pytest.raises(ValueError):
        cli.RunConfig(subcommand="v2", inputs=("x",), format="xml")
    with pytest.raises(FileNotFoundError):
        cli.RunConfig(subcommand="v2", inputs=("missing-file.gauss",))
