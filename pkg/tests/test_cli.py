import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetlisse.cli import run
from jetlisse.inputfile import InputError, parse_job
from jetlisse.report import Report, emit_structured, emit_text, parse_structured

ROOT = Path(__file__).resolve().parents[1]
INPUTS = ROOT / "inputs"
GOLDEN = Path(__file__).parent / "golden"

# (golden name, argv); the golden files were produced by the CLI and reviewed by hand
GOLDEN_CASES = [
    ("jet_double_point", ["jet", str(INPUTS / "double_point.txt")]),
    ("jet_reduced_point_3", ["jet", str(INPUTS / "reduced_point.txt"), "--order", "3"]),
    ("lisse_cube", ["lisse", str(INPUTS / "cube.txt")]),
    ("lisse_free_line", ["lisse", str(INPUTS / "free_line.txt")]),
    ("vpa_sl2", ["vpa-check", str(INPUTS / "sl2.txt"), "--samples", "50"]),
    ("virasoro_ising", ["virasoro", str(INPUTS / "ising.txt")]),
    ("affine_sl2", ["affine", str(INPUTS / "sl2.txt"), "--root", "e", "--power", "2"]),
]


def structured(argv):
    out, err, status = run(argv + ["--format", "structured"])
    assert err == "", err
    return json.loads(out), status


def rel(argv):
    return [os.path.relpath(a, ROOT) if a.startswith(str(ROOT)) else a for a in argv]


@pytest.fixture(autouse=True)
def _cwd(monkeypatch):
    # sample inputs are addressed relative to the repository root
    monkeypatch.chdir(ROOT)


@pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv):
    out, err, _ = run(rel(argv) + ["--format", "structured"])
    path = GOLDEN / f"{name}.json"
    if os.environ.get("JETLISSE_REGEN"):
        path.write_text(out)
    assert out == path.read_text()


class TestVerbs:
    def test_jet_examples(self):
        rep, status = structured(["jet", "inputs/double_point.txt"])
        assert status == 0
        assert set(rep["results"]["generators"]) == {"x1_1^2", "2*x1_1*x1_2"}
        assert rep["results"]["dimension"]["krull_dimension"] == 1

    def test_jet_free_plane(self, tmp_path):
        f = tmp_path / "plane.txt"
        f.write_text("[presentation]\ngenerators: 2\n")
        rep, _ = structured(["jet", str(f), "--order", "0"])
        assert rep["results"]["dimension"]["krull_dimension"] == 2

    def test_jet_reduced_point(self):
        rep, _ = structured(["jet", "inputs/reduced_point.txt", "--order", "3"])
        assert rep["results"]["dimension"]["krull_dimension"] == 0
        assert rep["results"]["dimension"]["quotient_dimension"] == 1

    def test_jet_order_limit(self):
        _, err, status = run(["jet", "inputs/reduced_point.txt", "--order", "99"])
        assert status == 2 and "unsupported jet order" in err

    @pytest.mark.parametrize("name,lisse", [("cube", True), ("free_line", False),
                                            ("sl2_augmentation", True), ("double_point", True)])
    def test_lisse(self, name, lisse):
        rep, status = structured(["lisse", f"inputs/{name}.txt"])
        assert rep["results"]["lisse"] is lisse
        assert status == (0 if lisse else 1)
        assert "C2-cofinite <=> lisse" in rep["results"]["theorem"]

    @pytest.mark.parametrize("name,status", [("sl2", 0), ("trivial_bracket", 0),
                                             ("corrupted_bracket", 1)])
    def test_vpa_check(self, name, status):
        rep, got = structured(["vpa-check", f"inputs/{name}.txt"])
        assert got == status
        assert rep["options"]["samples"] == 200 and rep["options"]["seed"] == 0
        if status:
            assert rep["results"]["jacobi"]["triple"] == ["x1_1", "x2_1", "x3_1"]

    def test_virasoro_examples(self):
        rep, _ = structured(["virasoro", "--central-charge", "minimal 2 3", "--cutoff", "4"])
        r = rep["results"]
        assert r["central_charge"] == "0" and r["singular_levels"][0]["level"] == 2
        assert r["c2_ideal"] == ["x1_1"] and r["lisse"]
        rep, _ = structured(["virasoro", "--central-charge", "1", "--cutoff", "8"])
        assert rep["results"]["singular_levels"] == [] and not rep["results"]["lisse"]
        assert "not C2-cofinite at cutoff 8" == rep["results"]["verdict"]
        rep, _ = structured(["virasoro", "--central-charge", "minimal 3 4", "--cutoff", "6"])
        r = rep["results"]
        assert r["central_charge"] == "1/2" and r["c2_ideal"] == ["x1_1^3"]
        assert [s["level"] for s in r["singular_levels"]] == [6]
        assert any("computed" in c for c in rep["caveats"])

    def test_virasoro_invalid_pair(self):
        _, err, status = run(["virasoro", "--central-charge", "minimal 2 4"])
        assert status == 2 and "coprime" in err

    def test_affine(self):
        rep, status = structured(["affine", "inputs/sl2.txt", "--root", "e", "--power", "2"])
        assert status == 0
        assert rep["results"]["closure"]["closure_basis"] == ["x1_1", "x2_1", "x3_1"]
        rep, status = structured(["affine", "inputs/abelian2.txt", "--root", "a1"])
        assert status == 1 and not rep["results"]["closure"]["closure_is_augmentation_ideal"]
        rep, _ = structured(["affine", "inputs/sl2.txt", "--max-weight", "4", "--level", "3/2"])
        dims = rep["results"]["graded_dimensions"]
        assert dims["all_equal"] and dims["level"] == "3/2" and len(dims["rows"]) == 5

    def test_affine_unknown_root(self):
        _, err, status = run(["affine", "inputs/sl2.txt", "--root", "x"])
        assert status == 2 and "unknown basis element" in err

    def test_options_section_and_override(self, tmp_path):
        f = tmp_path / "job.txt"
        f.write_text("[presentation]\ngenerators: 1\nrelation: x1_1^2\n[options]\norder: 2\n")
        rep, _ = structured(["jet", str(f)])
        assert rep["options"]["order"] == 2
        rep, _ = structured(["jet", str(f), "--order", "0"])
        assert rep["options"]["order"] == 0

    def test_stdin(self, monkeypatch):
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO("[presentation]\ngenerators: 1\n"))
        out, err, status = run(["jet", "--format", "structured"])
        assert status == 0 and json.loads(out)["results"]["dimension"]["krull_dimension"] == 2

    def test_console_script(self):
        proc = subprocess.run([sys.executable, "-m", "jetlisse.cli", "lisse", "inputs/cube.txt"],
                              capture_output=True, text=True, cwd=ROOT)
        assert proc.returncode == 0 and "C2-cofinite and lisse" in proc.stdout


class TestReports:
    @pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
    def test_round_trip(self, name, argv):
        out, _, _ = run(rel(argv) + ["--format", "structured"])
        report = parse_structured(out)
        assert isinstance(report, Report)
        assert emit_structured(report) == out

    @pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
    def test_text_and_structured_agree(self, name, argv):
        data = json.loads(run(rel(argv) + ["--format", "structured"])[0])
        text = run(rel(argv))[0]
        leaves = []

        def walk(v):
            if isinstance(v, dict):
                for k, w in v.items():
                    walk(w)
            elif isinstance(v, list):
                for w in v:
                    walk(w)
            elif not isinstance(v, bool) and v is not None:
                leaves.append(str(v))
        walk(data)
        for leaf in leaves:
            assert leaf in text

    @pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
    def test_truncation_stated(self, name, argv):
        for fmt in ("text", "structured"):
            out = run(rel(argv) + ["--format", fmt])[0]
            assert any(w in out for w in ("truncated", "up to level", "up to weight",
                                          "seeded samples", "compared up to"))

    @pytest.mark.parametrize("name,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
    def test_report_object_round_trip(self, name, argv):
        from jetlisse.cli import COMMANDS, _opt
        verb, path = argv[0], rel(argv)[1]
        job = parse_job(Path(path).read_text(), path)
        flags = dict(zip([a.lstrip("-") for a in argv[2::2]], argv[3::2]))
        flags = {k: int(v) if v.isdigit() else v for k, v in flags.items()}
        report, _ = COMMANDS[verb](job, _opt(job, flags, verb))
        assert parse_structured(emit_structured(report)) == report

    def test_deterministic(self):
        argv = ["vpa-check", "inputs/sl2.txt", "--samples", "30", "--format", "structured"]
        assert run(argv) == run(argv)

    def test_emit_text_shape(self):
        rep = Report("jet", "sha256:0", {"order": 1}, {"a": [1, {"b": "x"}], "c": {}}, [])
        text = emit_text(rep)
        assert text.startswith("command: jet\n")
        assert "c: (none)" in text and "caveats: (none)" in text


TOKENS = list("[]{},:=+-*/^()#_ \nx1203ehfabc") + [
    "[presentation]\n", "[brackets]\n", "[lie_algebra]\n", "relation: ", "names: ",
    "generators: ", "builtin: ", "constant: ", "sl2", "x1_1", "{e,f} = ", "\n"]


class TestDiagnostics:
    @pytest.mark.parametrize("text,line,col", [
        ("relation: x1_1", 1, 1),
        ("[presentation]\ngenerators: 1\nrelation: x1_1 +* 2", 3, 17),
        ("[presentation]\ngenerators: 1\nrelation: x2_1", 3, 11),
        ("[bogus]", 1, 1),
        ("[presentation]\ngenerators: two", 2, 13),
        ("[brackets]\nnames: a b\n{a,c} = a", 3, 1),
        ("[presentation]\nnames: e e", 2, 8),
        ("[lie_algebra]\nnames: a b\nconstant: a b q 1", 3, 11),
        ("[lie_algebra]\nbuiltin: so5", 2, 10),
        ("[presentation]\ngenerators: 1\n[presentation]", 3, 1),
        ("[presentation]\ngenerators 1", 2, 1),
    ])
    def test_positioned(self, text, line, col):
        with pytest.raises(InputError) as info:
            parse_job(text, "job")
        assert (info.value.line, info.value.col) == (line, col)
        assert info.value.render().startswith(f"job:{line}:{col}: ")

    def test_missing_file(self):
        _, err, status = run(["jet", "does/not/exist.txt"])
        assert status == 2 and err.startswith("error: does/not/exist.txt")

    def test_missing_section(self):
        _, err, status = run(["vpa-check", "inputs/cube.txt"])
        assert status == 2 and "[brackets] or [lie_algebra]" in err

    def test_bad_option(self):
        _, err, status = run(["jet", "inputs/cube.txt", "--order", "-1"])
        assert status == 2

    def test_bad_flag(self, capsys):
        _, _, status = run(["jet", "--frobnicate"])
        assert status == 2

    @settings(max_examples=150)
    @given(text=st.lists(st.sampled_from(TOKENS), max_size=40).map("".join),
           verb=st.sampled_from(["jet", "lisse", "vpa-check", "affine"]))
    def test_never_crashes(self, tmp_path_factory, text, verb):
        path = tmp_path_factory.mktemp("fuzz") / "job.txt"
        path.write_text(text)
        out, err, status = run([verb, str(path), "--samples", "3", "--max-weight", "2",
                                "--order", "1"])
        assert status in (0, 1, 2)
        assert (status == 2) == bool(err)
