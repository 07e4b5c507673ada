"""Command-line interface: artifacts, determinism, round-trips, exit codes."""

import json
from pathlib import Path

from heckecell.cli import main
from heckecell.fields import RealCyclotomicField
from heckecell.scalars import LaurentPoly


def read(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_run_a1_full_pipeline(tmp_path):
    out = tmp_path / "a1"
    code = main(["run", "--system", "A1", "--stages", "kl,reps,jring,cell",
                 "--verify", "all", "--out", str(out)])
    assert code == 0
    names = {p.name for p in out.iterdir()}
    assert {"kl-table.json", "h-table.json", "cells.json", "reps.json",
            "jring.json", "cell-datum.json", "phi.json",
            "verification.json"} <= names
    ver = read(out / "verification.json")
    assert ver["ok"] is True
    assert all(not v for suite in ver["results"].values() for v in suite.values())


def test_run_is_deterministic(tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        assert main(["run", "--system", "I2:5", "--stages", "jring",
                     "--verify", "none", "--seed", "7", "--jobs", "4",
                     "--out", str(out)]) == 0
    for name in ("reps.json", "jring.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_artifact_polynomials_roundtrip(tmp_path):
    out = tmp_path / "b2"
    assert main(["run", "--system", "B2", "--weights", "universal", "--order", "b-first",
                 "--stages", "kl", "--verify", "none", "--out", str(out)]) == 0
    data = read(out / "kl-table.json")
    field = RealCyclotomicField(data["conductor"])
    rank = len(data["order_priority"])
    for text in data["kl_polynomials"].values():
        p = LaurentPoly.from_str(text, rank, field)
        assert p.to_str(field) == text


def test_h_table_artifact(tmp_path):
    out = tmp_path / "h"
    assert main(["h-table", "--system", "A2", "--out", str(out)]) == 0
    data = read(out / "h-table.json")
    assert data["a_values"][0] == [0]
    assert "h_constants" in data


def test_corrupt_rep_file_gives_verification_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "label": "bad",
        "dim": 1,
        "generators": {"0": [["1*eps[1]"]], "1": [["2*eps[1]"]]},
    }), encoding="utf-8")
    out = tmp_path / "out"
    code = main(["run", "--system", "A2", "--reps", str(bad),
                 "--stages", "reps", "--out", str(out)])
    assert code == 2
    findings = read(out / "findings.json")
    assert any("braid violation" in v for f in findings["findings"]
               for v in f["violations"])


def test_unparsable_rep_file_gives_input_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code = main(["run", "--system", "A2", "--reps", str(bad), "--stages", "reps"])
    assert code == 3


def test_bad_system_gives_input_exit():
    assert main(["run", "--system", "Z9"]) == 3


def test_jring_and_cells_commands(tmp_path):
    out = tmp_path / "x"
    assert main(["jring", "build", "--system", "I2:4", "--out", str(out)]) == 0
    data = read(out / "jring.json")
    assert data["blocks"][0] == [0]
    assert main(["cells", "--system", "I2:4", "--out", str(out)]) == 0
    cells = read(out / "cells.json")
    assert cells["cells"][0] == [0]
    assert main(["jring", "verify", "--system", "I2:4"]) == 0
    assert main(["jring", "compare-kl", "--system", "I2:4"]) == 0


def test_rep_commands(tmp_path):
    out = tmp_path / "reps"
    assert main(["rep", "schur", "--system", "I2:4", "--out", str(out)]) == 0
    data = read(out / "reps.json")
    fvals = sorted(r["f"] for r in data["representations"])
    assert fvals == ["1", "1", "2", "2", "2"]
    assert main(["rep", "balance", "--system", "B2", "--out", str(out)]) == 0
    assert main(["rep", "leading", "--system", "A1", "--out", str(out)]) == 0
    lead = read(out / "leading.json")
    assert lead["tensors"]["A:(2,)"]["matrices"]["0"] == [["1"]]


def test_rep_validate_roundtrip(tmp_path):
    good = tmp_path / "rho.json"
    good.write_text(json.dumps({
        "label": "wg",
        "wgraph": {"vertices": [[0], [1]], "edges": [{"u": 0, "v": 1, "weight": 1}]},
    }), encoding="utf-8")
    assert main(["rep", "validate", "--file", str(good), "--system", "A2"]) == 0


def test_cell_commands(tmp_path):
    out = tmp_path / "cell"
    assert main(["cell", "build", "--system", "A2", "--out", str(out)]) == 0
    data = read(out / "cell-datum.json")
    assert data["invertible_primes"] == []
    assert len(data["elements"]) == 6
    assert main(["cell", "verify", "--system", "A2"]) == 0
    assert main(["cell", "phi", "--system", "A1", "--out", str(out)]) == 0
    code = main(["cell", "specialize", "--system", "B2", "--weights", "universal",
                 "--order", "b-first", "--target", "equal", "--out", str(out)])
    assert code == 0
    spec = read(out / "cell-specialized.json")
    assert all(not v for v in spec["verification"].values())


def test_config_file(tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"system": "A1", "weights": "equal"}), encoding="utf-8")
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--stages", "reps",
                 "--verify", "none", "--out", str(out)]) == 0
    data = read(out / "reps.json")
    assert data["system"] == "A1"


def test_report_command(tmp_path, capsys):
    out = tmp_path / "a1"
    main(["run", "--system", "A1", "--out", str(out)])
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    text = capsys.readouterr().out
    assert "overall: ok" in text
    assert main(["report", str(tmp_path / "missing")]) == 3


def test_report_a2_invariants(tmp_path, capsys):
    out = tmp_path / "a2"
    main(["run", "--system", "A2", "--stages", "reps", "--verify", "none",
          "--out", str(out)])
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    text = capsys.readouterr().out
    assert "a-invariants: [(0,), (1,), (3,)]" in text
    assert "f-values: ['1', '1', '1']" in text
