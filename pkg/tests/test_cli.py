import io
import json
import math

import numpy as np
import pytest

from lpbohr import mappings, spectral
from lpbohr.cli import main, parse_r_grid

EXTREMAL = {"kind": "extremal", "n": 1, "M": 1.0, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}


def run(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def lines(text):
    return [json.loads(s) for s in text.splitlines()]


@pytest.fixture
def extremal_file(tmp_path):
    path = tmp_path / "extremal.json"
    path.write_text(json.dumps(EXTREMAL))
    return str(path)


class TestRadii:
    def test_bohr_lp_inf(self):
        code, out, _ = run(["bohr-lp", "--p", "inf"])
        (rep,) = lines(out)
        assert code == 0 and rep["name"] == "r_p"
        assert rep["value"] == pytest.approx(math.pi / (math.pi + 4), abs=1e-14)
        assert rep["params"]["p"] == "inf"

    def test_fifteen_digits(self):
        _, out, _ = run(["bohr-lp", "--p", "inf"])
        assert lines(out)[0]["value"] == float(f"{math.pi / (math.pi + 4):.15g}")

    def test_landau_classical(self):
        code, out, _ = run(["landau-classical", "--M", "1"])
        r0, s0 = lines(out)
        assert code == 0 and (r0["value"], s0["value"]) == (1.0, 1.0)

    def test_landau_d_text(self):
        code, out, _ = run(["landau-d", "--lambda", "1", "--format", "text"])
        assert code == 0 and out.startswith("rho_2 = 0.5")

    def test_landau_lp_csv(self):
        code, out, _ = run(["landau-lp", "--p", "2", "--norm", "1", "--format", "csv"])
        rows = out.strip().splitlines()
        assert code == 0 and rows[0] == "name,value,method,residual" and len(rows) == 3

    def test_cq(self):
        code, out, _ = run(["cq", "--n", "3", "--q", "1"])
        assert code == 0 and lines(out)[0]["value"] == pytest.approx(2 / math.pi, abs=1e-12)
        assert lines(run(["cq", "--p", "1"])[1])[0]["value"] == 1.0


class TestTables:
    def test_majorant_csv(self, extremal_file):
        code, out, _ = run(["majorant", "--boundary", extremal_file, "--r-grid", "0:0.9:0.01", "--format", "csv"])
        rows = out.strip().splitlines()
        assert code == 0 and rows[0] == "r,value,tail"
        assert len(rows) == 92  # header + 91 rows
        for row in rows[1:]:
            r, value, tail = map(float, row.split(","))
            exact = 4 / math.pi * math.atanh(r)
            assert -1e-12 <= exact - value <= tail + 1e-12

    def test_roundtrip_bit_exact(self, extremal_file):
        code, table_json, _ = run(["coeffs", "--boundary", extremal_file])
        assert code == 0
        _, piped, _ = run(["majorant", "--table", "-", "--r-grid", "0:0.9:0.1"], table_json)
        table = mappings.table_for(spectral.boundary_from_dict(EXTREMAL))
        r = parse_r_grid("0:0.9:0.1")
        value, tail = mappings.majorant(table, r)
        direct = [{"r": float(a), "value": float(b), "tail": float(c)} for a, b, c in zip(r, value, tail)]
        assert lines(piped) == json.loads(json.dumps([{k: float(f"{v:.15g}") for k, v in d.items()} for d in direct]))
        back = mappings.table_from_dict(json.loads(table_json))
        assert np.array_equal(back.a, table.a) and np.array_equal(back.b, table.b)

    def test_quadrature_table(self, tmp_path):
        path = tmp_path / "tp.json"
        path.write_text(json.dumps({"kind": "trig_poly", "coeffs": {"2": [1.0, 0.0], "-1": [0.0, 0.5]}}))
        code, out, _ = run(["coeffs", "--boundary", str(path), "--N", "4", "--grid", "64"])
        d = json.loads(out)
        assert code == 0 and d["N"] == 4
        assert d["a"][2] == pytest.approx([1.0, 0.0], abs=1e-14)
        assert d["b"][0] == pytest.approx([0.0, -0.5], abs=1e-14)

    def test_empirical_bohr(self, extremal_file):
        code, out, _ = run(["empirical-bohr", "--boundary", extremal_file, "--M", "1"])
        assert code == 0 and lines(out)[0]["value"] == pytest.approx(math.tanh(math.pi / 4), abs=1e-9)

    def test_poisson(self):
        spec = json.dumps({"kind": "exponential", "n": 1, "scale": [1.0, 0.0]})
        code, out, _ = run(["poisson", "--boundary", "-", "--z", "0.5,0.25", "--z", "0,0"], spec)
        first, second = lines(out)
        assert code == 0
        assert first["f"] == pytest.approx([0.5, 0.25], abs=1e-12)
        assert second["f"] == pytest.approx([0.0, 0.0], abs=1e-12)

    def test_out_file(self, tmp_path):
        target = tmp_path / "r.json"
        code, out, _ = run(["bohr-bounded", "--a", "0.5", "--out", str(target)])
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["value"] == pytest.approx(0.5 / (0.5 + 4 / math.pi))


class TestParseRGrid:
    def test_inclusive(self):
        assert parse_r_grid("0:0.9:0.01").size == 91
        assert parse_r_grid("0.1:0.9:0.1")[-1] == pytest.approx(0.9)
        assert parse_r_grid("0.5:0.5:0.1").tolist() == [0.5]


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert run(["bohr-lp", "--bogus", "1"])[0] == 2

    def test_unknown_command(self, capsys):
        assert run(["nope"])[0] == 2

    def test_malformed_json(self):
        code, _, err = run(["coeffs", "--boundary", "-"], "{not json")
        assert code == 2 and "malformed" in err

    def test_malformed_spec(self):
        assert run(["coeffs", "--boundary", "-"], '{"kind": "nope"}')[0] == 2

    def test_bad_r_grid(self, extremal_file):
        assert run(["majorant", "--boundary", extremal_file, "--r-grid", "0:1"])[0] == 2

    def test_missing_required(self):
        assert run(["bohr-lp"])[0] == 2

    @pytest.mark.parametrize(
        "argv, name",
        [
            (["bohr-lp", "--p", "0.5"], "InvalidExponent"),
            (["landau-classical", "--M", "0.5"], "InvalidBound"),
            (["landau-d", "--lambda", "0.2"], "InvalidBound"),
            (["bohr-bounded", "--a", "2"], "Error"),
        ],
    )
    def test_domain_errors(self, argv, name):
        code, _, err = run(argv)
        assert code == 1 and name in err

    def test_divergence(self, extremal_file):
        code, _, err = run(["majorant", "--boundary", extremal_file, "--r", "1.0"])
        assert code == 1 and "DivergenceRisk" in err


class TestVerify:
    def test_identical_bytes(self):
        first = run(["verify", "--seed", "11", "--trials", "3"])
        second = run(["verify", "--seed", "11", "--trials", "3"])
        assert first == second and first[0] == 0
        props = [d["property"] for d in lines(first[1])]
        assert props == sorted(props) and len(props) == 6

    def test_text(self):
        code, out, _ = run(["verify", "--trials", "2", "--p", "2,inf", "--format", "text"])
        assert code == 0 and all(s.startswith("PASS") for s in out.strip().splitlines())
