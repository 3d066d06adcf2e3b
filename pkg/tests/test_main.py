"""Tests for the idxlab command line."""

import json

import pytest

from src.main import build_parser, main

THREE_LINES = {"field": {"p": 2}, "vars": ["x", "y"], "generators": ["x*y*(x+y)"]}
CONJUGATE_PAIR = {"field": {"p": 2}, "vars": ["x", "y"], "generators": ["x^2+x*y+y^2"]}
PROJECTIVE_PAIR = {"field": {"p": 2}, "ambient": "projective", "vars": ["x", "y"], "ideal": ["x^2+x*y+y^2"]}
CUSP = {"field": {"p": 5}, "ambient": "affine", "vars": ["x", "y"], "ideal": ["y^2-x^3"]}
CONIC_FIBER = {"field": {"p": 3}, "f": "x^2+y^2+t", "components": [{"g": "x^2+y^2", "r": 1}]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="descriptor.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out


def result_of(out):
    payload = json.loads(out.out)
    assert payload["schema"] == "idxlab/1"
    return payload["result"]


class TestParser:
    def test_every_command_has_a_subparser(self):
        parser = build_parser()
        args = parser.parse_args(["lift", "m.json", "--point", "a", "1", "--ext", "2", "--cut", "y-1"])
        assert args.point == ["a", "1"]
        assert args.ext == 2

    def test_unknown_suite_group(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["suite", "--group", "nope"])


class TestCommands:
    def test_field(self, capsys):
        code, out = run(capsys, "field", "3", "--ext", "2")
        assert code == 0
        result = result_of(out)
        assert result["order"] == 9
        assert result["modulus"] == "a^2+1"
        assert result["generator"] == "a"

    def test_fermat(self, capsys):
        code, out = run(capsys, "fermat", "7")
        assert code == 0
        result = result_of(out)
        assert result["b"] == 2
        assert result["E_p"] == "7"

    def test_hs(self, capsys, write):
        code, out = run(capsys, "hs", write(THREE_LINES))
        assert code == 0
        result = result_of(out)
        assert (result["dimension"], result["multiplicity"]) == (1, 3)

    def test_hs_with_ideal(self, capsys, write):
        code, out = run(capsys, "mult", write(THREE_LINES), "--ideal", "x^2+x*y+y^2")
        assert code == 0
        assert result_of(out)["multiplicity"] == 6

    def test_index(self, capsys, write):
        code, out = run(capsys, "index", write(PROJECTIVE_PAIR), "--max-degree", "4")
        assert code == 0
        result = result_of(out)
        assert result["delta"] == 2
        assert result["nu"] == 2
        assert result["max_degree"] == 4

    def test_resolve(self, capsys, write):
        code, out = run(capsys, "resolve", write(CONJUGATE_PAIR))
        assert code == 0
        assert result_of(out)["n_value"] == 2

    def test_lift(self, capsys, write):
        code, out = run(
            capsys, "lift", write(CONIC_FIBER), "--point", "a", "1", "--ext", "2", "--cut", "y-1"
        )
        assert code == 0
        result = result_of(out)
        assert result["computed_degree"] == result["predicted_degree"] == 2

    def test_gamma_is_reproducible(self, capsys, write):
        path = write(THREE_LINES)
        _, first = run(capsys, "gamma", path, "--trials", "2", "--seed", "5")
        _, second = run(capsys, "gamma", path, "--trials", "2", "--seed", "5")
        assert first.out == second.out
        assert result_of(first)["seed"] == 5

    def test_table_output(self, capsys):
        code, out = run(capsys, "fermat", "5", "--out", "table")
        assert code == 0
        assert any(line.startswith("E_p") for line in out.out.splitlines())

    def test_suite_group(self, capsys):
        code, out = run(capsys, "suite", "--group", "fermat")
        assert code == 0
        result = result_of(out)
        assert result["failed"] == 0
        assert result["schema"] == "idxlab/1"
        assert all("paper_anchor" in check for check in result["checks"])

    def test_mult_at_a_point(self, capsys, write):
        code, out = run(capsys, "mult", write(CUSP), "--point", "0", "0")
        assert code == 0
        assert result_of(out)["multiplicity"] == 2

    def test_row_limit_reaches_gamma(self, capsys, write):
        path = write(THREE_LINES)
        code, _ = run(capsys, "gamma", path, "--trials", "0", "--hs-max", "5")
        assert code == 0
        code, out = run(capsys, "gamma", path, "--trials", "0", "--hs-max", "4")
        assert code == 2
        assert "idxlab gamma" in out.err


class TestBadInput:
    def test_missing_file(self, capsys, tmp_path):
        code, out = run(capsys, "hs", str(tmp_path / "missing.json"))
        assert code == 2
        assert "idxlab hs" in out.err

    def test_malformed_descriptor(self, capsys, write):
        code, out = run(capsys, "hs", write({"field": {"p": 2}}))
        assert code == 2

    def test_wrong_descriptor_kind(self, capsys, write):
        code, out = run(capsys, "census", write(THREE_LINES))
        assert code == 2
        assert out.out == ""

    def test_point_with_too_few_coordinates(self, capsys, write):
        code, out = run(capsys, "mult", write(CUSP), "--point", "0")
        assert code == 2
        assert "coordinates" in out.err
        assert out.out == ""

    def test_bad_prime(self, capsys):
        code, _ = run(capsys, "fermat", "9")
        assert code == 2
