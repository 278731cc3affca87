import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qboard.cli import main
from qboard.residues import fano_m7_formula

BOARDS = Path(__file__).resolve().parent.parent / "demos" / "boards"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_rook(capsys):
    assert run(capsys, "rook", BOARDS / "full2x2.brd") == (0, "[1,4,2]", "")
    assert run(capsys, "rook", BOARDS / "full2x2.brd", "--gen", "Z", "--i", "0")[1] == "4"
    assert run(capsys, "rook", BOARDS / "empty.brd")[1] == "[1,0,0]"


def test_rook_table_format(capsys):
    code, out, _ = run(capsys, "rook", BOARDS / "full2x2.brd", "--format", "table")
    assert code == 0 and out.splitlines() == ["r_0  1", "r_1  4", "r_2  2"]


def test_qcount_fano_q2(capsys):
    code, out, _ = run(capsys, "qcount", BOARDS / "fano.brd", "--q", "2")
    doc = json.loads(out)
    assert code == 0 and doc["m"][7] == str(fano_m7_formula(2))
    assert doc["census"]["supports"] == 2 ** 21


def test_qcount_methods_agree(capsys):
    docs = []
    for method in ("brute", "orbit"):
        code, out, _ = run(capsys, "qcount", BOARDS / "full2x2.brd", "--q", "3", "--method", method)
        docs.append(json.loads(out))
    assert docs[0]["m"] == docs[1]["m"] == ["1", "32", "48"]
    assert docs[1]["M"] == ["1", "16", "12"]


def test_errors_exit_nonzero(capsys, tmp_path):
    code, _, err = run(capsys, "qcount", BOARDS / "full2x2.brd", "--q", "6")
    assert code == 2 and "qboard: error" in err
    bad = tmp_path / "bad.brd"
    bad.write_text("2 2\n*x\n**\n")
    code, _, err = run(capsys, "rook", bad)
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "qcount", BOARDS / "fano.brd", "--q", "3", "--method", "brute")
    assert code == 2 and "budget" in err
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nope"])
    with pytest.raises(SystemExit):
        main(["residue", str(BOARDS / "full2x2.brd"), "--target", "qhit", "--d", "1", "--samples", "2,3,6,7"])


def test_qhit(capsys):
    doc = json.loads(run(capsys, "qhit", BOARDS / "full2x2.brd", "--q", "3")[1])
    assert doc["values"] == ["0", "0", "12"]


def test_residue(capsys):
    doc = json.loads(run(capsys, "residue", BOARDS / "full2x2.brd", "--target", "qhit", "--d", "2",
                         "--k", "2")[1])
    assert doc["coeffs"] == ["2", "3"] and doc["split"] is None
    code, out, _ = run(capsys, "residue", BOARDS / "full2x2.brd", "--target", "qrook", "--d", "2",
                       "--samples", "2,3,4,5", "--format", "table")
    assert code == 0 and "coeffs  2 3" in out


def test_verify_square_chain(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "square-chain")
    doc = json.loads(out)
    assert code == 0 and doc["failures"] == []
    assert "wallTime" in doc


def test_verify_fano_reports_parity_split(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fano")
    doc = json.loads(out)
    assert code == 0
    assert doc["results"]["k7Split"]["modulus"] == 2
    assert doc["results"]["observed"]["2"]["z2"] == 1


def _strip(doc):
    doc = dict(doc)
    doc.pop("wallTime")
    return doc


def test_search_resume_matches_uninterrupted(capsys, tmp_path):
    args = ["search", "--max-m", "2", "--max-n", "3", "--samples", "2,3,4,5,7,8,9"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    full = json.loads(out)
    assert full["results"]["findings"] == [] and full["results"]["boards"] == 2 + 4 + 8 + 16 + 64

    ck = tmp_path / "state.json"
    code, out, _ = run(capsys, *args, "--checkpoint", ck, "--stop-after", 20)
    assert code == 3 and json.loads(out)["interrupted"]
    code, out, _ = run(capsys, *args, "--checkpoint", ck, "--stop-after", 40)
    assert code == 3
    code, out, _ = run(capsys, *args, "--checkpoint", ck)
    assert code == 0 and _strip(json.loads(out)) == _strip(full)

    code, _, err = run(capsys, "search", "--max-m", "2", "--max-n", "2", "--checkpoint", ck)
    assert code == 2 and "different parameters" in err


def test_json_output_is_byte_stable(capsys):
    outs = {run(capsys, "qcount", BOARDS / "full2x2.brd", "--q", "4", "--threads", t)[1] for t in (1, 3)}
    assert len(outs) == 1


def test_console_entry_point():
    env = dict(os.environ, QBOARD_THREADS="2")
    res = subprocess.run([sys.executable, "-m", "qboard.cli", "rook", str(BOARDS / "full2x2.brd")],
                         capture_output=True, text=True, env=env, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "[1,4,2]"
