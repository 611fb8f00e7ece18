import json
import random
import subprocess
import sys

import pytest

from ffcount.cli import auto_select, main, parse_args
from ffcount.ecurve import curve_make
from ffcount.ffield import field_make


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


def test_parse_args():
    req = parse_args(["count", "--p", "5", "--curve", "short:1,1", "--alg", "naive"])
    assert req.command == "count" and req.args.p == 5 and req.args.alg == "naive"
    assert parse_args(["sqrtmod", "--p", "7", "--a", "2"]).command == "sqrtmod"


@pytest.mark.parametrize("argv", [
    ["count", "--p", "2", "--curve", "general:1,0,0,0,1", "--alg", "schoof"],
    ["count", "--p", "5", "--curve", "short:1,1", "--alg", "agm"],
    ["count", "--p", "5", "--curve", "short:1,1", "--alg", "magic"],
    ["count", "--p", "5", "--curve", "short:1,1", "--bogus"],
    ["count", "--p", "5", "--curve", "short:1,1", "--alg", "cm"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        parse_args(argv)
    assert info.value.code == 2


def test_count_published(capsys):
    code, recs = run(["count", "--p", "1048609", "--curve", "short:0,-1", "--alg", "naive"], capsys)
    assert code == 0
    assert recs[0]["n_points"] == "1049412" and recs[0]["trace"] == "-802"


def test_count_engines_agree(capsys):
    outs = set()
    for alg in ("naive", "bsgs", "schoof", "auto"):
        code, recs = run(["count", "--p", "10007", "--curve", "short:3,7", "--alg", alg], capsys)
        assert code == 0
        outs.add(recs[0]["n_points"])
    assert len(outs) == 1


def test_same_seed_same_bytes(capsys):
    argv = ["count", "--p", "1000003", "--curve", "short:5,9", "--alg", "bsgs", "--seed", "4"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_zeta_command(capsys):
    code, recs = run(["zeta", "--p", "5", "--curve", "short:1,1"], capsys)
    assert code == 0
    assert recs[0]["numerator"] == ["1", "3", "5"]
    assert recs[0]["denominator"] == ["1", "-6", "5"]
    assert recs[0]["counts"][:2] == ["9", "27"]
    code, recs = run(["zeta", "--variety", "3;2;1:2,0 + 1:0,2", "--degree-bound", "3"], capsys)
    assert recs[0]["numerator"] == ["1", "1"]


def test_misc_commands(capsys):
    assert run(["sqrtmod", "--p", "7", "--a", "2"], capsys)[1][0]["root"] == "3"
    code, recs = run(["sqrtmod", "--p", "7", "--a", "3"], capsys)
    assert code == 1 and "error" in recs[0]
    recs = run(["cornacchia", "--D", "3", "--q", "7"], capsys)[1]
    assert recs[0]["solutions"] == [["1", "3"], ["4", "2"], ["5", "1"]]
    recs = run(["bruteforce", "--variety", "3;2;1:2,0 + 1:0,2", "--k", "2"], capsys)[1]
    assert recs[0]["count"] == "17"


def test_engine_error_exit_1(capsys):
    code, recs = run(["count", "--p", "5", "--curve", "short:0,0"], capsys)
    assert code == 1 and "singular" in recs[0]["error"]
    code, recs = run(["count", "--p", "1000003", "--curve", "short:1,1", "--alg", "naive",
                      "--guard", "100"], capsys)
    assert code == 1


def test_bench(capsys):
    code, recs = run(["bench", "--alg", "schoof,bsgs", "--p", "10007", "--trials", "3"], capsys)
    assert code == 0
    assert [r["alg"] for r in recs] == ["schoof", "bsgs"]
    assert recs[0]["n_points"] == recs[1]["n_points"]
    assert float(recs[0]["min_ms"]) <= float(recs[0]["median_ms"])


def test_auto_select():
    assert auto_select(field_make(5), curve_make(field_make(5), "short", [1, 1])) == "naive"
    F = field_make(2, 61, rng=random.Random(0))
    assert auto_select(F, curve_make(F, "general", [1, 0, 0, 0, F.gen()])) == "agm"
    G = field_make(3, 11)
    assert auto_select(G, curve_make(G, "general", [0, 1, 0, 1, 1])) == "bsgs"
    H = field_make(1000003)
    assert auto_select(H, curve_make(H, "short", [1, 1])) == "schoof"
    B = field_make(2, 17)
    assert auto_select(B, curve_make(B, "general", [0, 0, 1, 1, 0])) == "bsgs"


def test_trace_goes_to_stderr():
    proc = subprocess.run([sys.executable, "-m", "ffcount", "count", "--p", "1048609", "--curve",
                           "short:0,-1", "--alg", "schoof", "--trace"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["n_points"] == "1049412"
    assert proc.stderr.splitlines()[0].startswith("ℓ=2 t≡")
