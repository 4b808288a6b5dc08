import csv
import io
import json
import subprocess
import sys

import pytest

from vmzv.cli import run
from vmzv.mzv import ROW_FIELDS


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_mzv_v_json():
    code, out, _ = call("--format", "json", "mzv-v", "--q", "2", "--v", "T", "--index", "4,1", "--prec", "10")
    assert code == 0
    row = json.loads(out)
    assert row["digits"] == [{"pow": -3, "c": "1"}, {"pow": 2, "c": "1"}]
    assert row["abs_precision"] == 7 and row["valuation"] == -3
    assert row["bound"] == "-9" and row["criterion"] is False and row["integral"] == "false"


def test_mzv_v_text_and_csv():
    code, out, _ = call("mzv-v", "--q", "2", "--v", "T", "--index", "4,1")
    assert code == 0 and "T^-3+T^2+O(T^7)" in out
    code, out, _ = call("mzv-v", "--q", "2", "--v", "T", "--index", "4,1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["digits"] == "1@-3;1@2" and rows[0]["index"] == "4,1"
    assert set(ROW_FIELDS) <= set(rows[0])


def test_mzv_inf_methods_agree():
    _, a, _ = call("--format", "json", "mzv-inf", "--q", "3", "--index", "2,1", "--prec", "8")
    _, b, _ = call("--format", "json", "mzv-inf", "--q", "3", "--index", "2,1", "--prec", "8", "--method", "cmspl")
    assert json.loads(a)["digits"] == json.loads(b)["digits"]


def test_cmspl():
    code, out, _ = call("cmspl", "--q", "3", "--v", "T", "--index", "1,2", "--point", "T,T^2", "--prec", "8")
    assert code == 0 and "T^3+T^4+2*T^6+O(T^8)" in out


def test_at_poly():
    assert call("at-poly", "--q", "2", "--n", "3")[1].strip() == "t^2+t"
    assert json.loads(call("--format", "json", "at-poly", "--q", "3", "--n", "4")[1])["H"] == "2*t+T^3"


def test_scan():
    code, out, _ = call("--format", "json", "scan", "--q", "2", "--index", "2", "--max-deg", "2", "--prec", "8")
    rows = json.loads(out)
    assert code == 0 and [r["place"] for r in rows] == ["T", "T+1", "T^2+T+1"]
    assert all(r["integral"] == "true" for r in rows)
    code, out, _ = call("scan", "--q", "2", "--index", "2", "--max-deg", "1")
    assert code == 0 and out.splitlines()[0].startswith("place")


def test_finite_and_places():
    assert call("finite", "--q", "2", "--v", "T^2+T+1", "--index", "1")[1].strip() == "0"
    assert call("places", "--q", "2", "--max-deg", "2")[1].split() == ["T", "T+1", "T^2+T+1"]


def test_verify():
    code, out, _ = call("verify", "--suite", "dualinf", "--seed", "3")
    assert code == 0 and out.strip().endswith("(seed 3)")


@pytest.mark.parametrize("argv", [
    ("mzv-v", "--q", "6", "--v", "T", "--index", "1"),
    ("mzv-v", "--q", "2", "--v", "T^2+1", "--index", "1"),
    ("mzv-v", "--q", "2", "--v", "T", "--index", "0,1"),
    ("mzv-v", "--q", "2", "--v", "T", "--index", "1", "--prec", "0"),
    ("cmspl", "--q", "2", "--v", "T", "--index", "1,1", "--point", "T"),
    ("nonsense",),
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2


def test_math_error_exit_code():
    # enumerating all monic polynomials below degree 20 trips the cost guard
    code, _, err = call("finite", "--q", "2", "--v", "T^20+T^3+1", "--index", "1")
    assert code == 1 and "budget" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vmzv", "at-poly", "--q", "2", "--n", "2"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and proc.stdout.strip() == "t+T^2"
