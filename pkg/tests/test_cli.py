import json

import pytest

from capset.cli import run
from capset.setgame import TWELVE_CARD_CAP, VALID_TRIPLE_EXAMPLE, write_cards


def out_json(capsys, argv):
    assert run(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_bound_json(capsys):
    assert run(["bound", "--q", "3", "--n", "4", "--json"]) == 0
    assert capsys.readouterr().out.strip() == '{"q":3,"n":4,"m":"15","bound":"45"}'


def test_big_integers_round_trip(capsys):
    payload = out_json(capsys, ["bound", "--q", "3", "--n", "80", "--json"])
    from capset.coeffs import eg_bound

    assert int(payload["bound"]) == eg_bound(3, 80) > 2**64


def test_coeffs(capsys):
    payload = out_json(capsys, ["coeffs", "--q", "3", "--n", "2", "--json"])
    assert payload["coeffs"] == ["1", "2", "3", "2", "1"]
    assert run(["coeffs", "--q", "3", "--n", "2", "--csv"]) == 0
    assert capsys.readouterr().out.splitlines()[:2] == ["j,c_j", "0,1"]


def test_rate(capsys):
    payload = out_json(capsys, ["rate", "--q", "3", "--json"])
    assert payload["r_star"] == pytest.approx(0.5930703, abs=1e-7)
    assert payload["c_star"] == pytest.approx(2.7551046, abs=1e-7)
    assert payload["appendix_B"] <= 198
    payload = out_json(capsys, ["rate", "--q", "2", "--r", "0.5", "--json"])
    assert payload["crq"] == pytest.approx(1.889882, abs=1e-6)


def test_growth(capsys):
    payload = out_json(capsys, ["growth", "--q", "5", "--n", "20", "--json"])
    assert payload["holds"] and len(payload["rows"]) == 21
    assert all(isinstance(r["lhs"], str) for r in payload["rows"])


def test_lab_is_seeded(capsys):
    a = out_json(capsys, ["lab", "--q", "3", "--n", "2", "--trials", "4", "--seed", "8", "--json"])
    b = out_json(capsys, ["lab", "--q", "3", "--n", "2", "--trials", "4", "--seed", "8", "--json"])
    assert a == b and a["holds"]
    assert len(a["results"]) == 16
    assert a["results"][0]["subspace"]["d"] == "1/1"


def test_lab_with_points_file(capsys, tmp_path):
    path = tmp_path / "a.csv"
    path.write_text("p=3,n=2\n0,0\n1,0\n0,1\n1,1\n")
    payload = out_json(capsys, ["lab", "--q", "3", "--n", "2", "--d", "4/3", "--points", str(path), "--json"])
    (row,) = payload["results"]
    assert row["size"] == 4 and row["subspace"]["holds"]


def test_oracle(capsys):
    payload = out_json(capsys, ["oracle", "--q", "3", "--n", "8", "--json"])
    assert payload["holds"] and payload["max_rel_error"] < 1e-5


def test_search(capsys):
    payload = out_json(capsys, ["search", "--q", "3", "--n", "2", "--json"])
    assert payload["max_size"] == 4 and payload["exhaustive"]
    assert run(["search", "--q", "3", "--n", "2", "--csv"]) == 0
    assert capsys.readouterr().out.startswith("p=3,n=2\n")


def test_setgame(capsys, tmp_path):
    path = tmp_path / "fig.csv"
    path.write_text(write_cards(TWELVE_CARD_CAP, one_based=True))
    assert run(["setgame", "--cards", str(path), "--one-based"]) == 0
    assert capsys.readouterr().out.strip() == "no valid triples"
    path.write_text(write_cards(VALID_TRIPLE_EXAMPLE))
    payload = out_json(capsys, ["setgame", "--cards", str(path), "--json"])
    assert payload["triples"] == [[0, 1, 2]]


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--q", "3", "--n", "4", "--nope"],
        ["frobnicate"],
        ["bound", "--q", "3"],
        ["bound", "--q", "1", "--n", "3"],
        ["setgame"],
        ["search", "--q", "3", "--n", "2", "--spec", "1,1"],
        ["rate", "--q", "3", "--r", "1.5"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_violation_exits_1(monkeypatch, capsys):
    from capset import cli
    from capset.errors import InvariantViolation

    def boom(args):
        raise InvariantViolation("forced")

    monkeypatch.setitem(cli.COMMANDS, "bound", boom)
    assert run(["bound", "--q", "3", "--n", "2"]) == 1
