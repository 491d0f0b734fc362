import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdilog.cli import fmt_complex, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_G(capsys):
    code, out, _ = run(capsys, "eval", "--what", "G", "--z", "0", "--xi", "0")
    assert code == 0
    (r,) = rows(out)
    assert parse_complex(r["value"]) == pytest.approx(0.13089969389957470j, abs=1e-16)


def test_eval_logphi_methods_agree(capsys):
    vals = []
    for method in ("woronowicz", "borel"):
        code, out, _ = run(capsys, "eval", "--what", "logphi", "--method", method,
                           "--z", "0", "--tau", "1")
        assert code == 0
        vals.append(parse_complex(rows(out)[0]["value"]))
    assert abs(vals[0] - vals[1]) < 1e-8


def test_eval_series(capsys):
    code, out, _ = run(capsys, "eval", "--what", "series", "--z", "0", "--tau", "0.1", "--N", "1")
    assert code == 0
    assert parse_complex(rows(out)[0]["value"]) == pytest.approx(0.013089969389957470j, abs=1e-17)


def test_eval_product_and_json(capsys):
    code, out, _ = run(capsys, "eval", "--what", "phi", "--method", "product",
                       "--b", "0.92387953251128674+0.38268343236508978i", "--w", "0.3",
                       "--format", "json")
    assert code == 0
    (r,) = json.loads(out)
    assert abs(parse_complex(r["value"]) - (0.8166164666401093 + 0.5771806878371999j)) < 1e-13


def test_poles(capsys):
    code, out, _ = run(capsys, "poles", "--z", "1", "--radius", "4")
    assert code == 0
    recs = rows(out)
    assert len(recs) == 4
    assert list(recs[0]) == ["n", "m", "re", "im", "res_re", "res_im"]
    code, out, _ = run(capsys, "poles", "--z", "0", "--radius", "1")
    assert code == 0 and rows(out) == []
    code, out, _ = run(capsys, "poles", "--z", "-1", "--radius", "12", "--format", "json")
    assert code == 0 and isinstance(json.loads(out), list)


def test_negative_complex_argument(capsys):
    code, out, _ = run(capsys, "poles", "--z", "-1+0.5i", "--radius", "8")
    assert code == 0 and len(rows(out)) > 0
    code, out, _ = run(capsys, "eval", "--what", "G", "--z", "-1-0.5i", "--xi", "-i")
    assert code == 0


def test_stokes_table(capsys):
    code, out, _ = run(capsys, "stokes", "--z", "-1", "--tau", "0.2+0.5i", "--M", "3")
    assert code == 0
    table = rows(out)
    assert len(table) == 4
    assert all(float(r["abs_diff"]) <= 1e-8 for r in table)
    mags = [abs(complex(float(r["jump_re"]), float(r["jump_im"]))) for r in table]
    assert mags == sorted(mags, reverse=True)


def test_verify_fast(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--suite", "fast", "--out", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["suite"] == "fast" and report["pass"]


@pytest.mark.parametrize("argv,code", [
    (["verify", "--suite", "bogus"], 2),
    (["eval", "--what", "G", "--z", "0 + 1i", "--xi", "0"], 2),
    (["eval", "--what", "nope"], 2),
    (["eval", "--what", "G", "--z", "4i", "--xi", "0"], 3),
    (["eval", "--what", "G", "--z", "0"], 3),
    (["eval", "--what", "laplace", "--z", "0", "--tau", "0.5", "--theta", "2"], 3),
    (["poles", "--z", "0+3.5i", "--radius", "3"], 3),
    (["stokes", "--z", "1", "--tau", "0.2+0.5i"], 3),
    (["eval", "--what", "phi", "--method", "product", "--b", "1"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_nonconvergence_exit_code(capsys, monkeypatch):
    from qdilog import cli
    from qdilog.quadrature import QuadratureConfig

    monkeypatch.setattr(cli, "_cfg", lambda: QuadratureConfig(tol=1e-14, max_nodes=64))
    assert main(["eval", "--what", "laplace", "--z", "0.5+3i", "--tau", "0.5"]) == 4


def test_bad_tolerance_env(capsys, monkeypatch):
    monkeypatch.setenv("QDILOG_TOL", "abc")
    assert main(["eval", "--what", "G", "--z", "0", "--xi", "0"]) == 2


def test_parse_complex_forms():
    assert parse_complex("0.2+0.5i") == 0.2 + 0.5j
    assert parse_complex("-1") == -1
    assert parse_complex("3i") == 3j
    assert parse_complex("-i") == -1j
    assert parse_complex("1e-3-2e-1i") == 1e-3 - 0.2j
    for bad in ("1 + 2i", "i2", "", "1+2j", "abc"):
        with pytest.raises(ValueError):
            parse_complex(bad)


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_round_trip(v):
    assert parse_complex(fmt_complex(v)) == v
