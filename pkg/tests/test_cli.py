"""Command line behavior: outputs, exit codes, files, determinism."""

import json
import math
import os
import subprocess
import sys

import pytest

from sedenion.cli import main
from sedenion import format_real


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


PI_2 = format_real(math.pi / 2)


# ---------------------------------------------------------------------------
# algebra commands
# ---------------------------------------------------------------------------


def test_table_verify_reports_full_agreement(capsys):
    rc, out, _ = run(capsys, ["table", "--verify"])
    assert rc == 0
    assert out == "256/256 entries match\n"


def test_table_prints_a_16_by_16_grid(capsys):
    rc, out, _ = run(capsys, ["table"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 17
    assert lines[0].startswith(",1,e1,e2")
    assert all(len(line.split(",")) == 17 for line in lines)


def test_mul_basis_elements(capsys):
    rc, out, _ = run(capsys, ["mul", "e1", "e2"])
    assert (rc, out) == (0, "e3\n")
    rc, out, _ = run(capsys, ["mul", "e1-e10", "e4+e15"])
    assert (rc, out) == (0, "0\n")


def test_mul_json_payload(capsys):
    rc, out, _ = run(capsys, ["mul", "--format", "json", "e1", "e2"])
    assert rc == 0
    data = json.loads(out)
    assert data["text"] == "e3"
    assert len(data["coeffs"]) == 16 and data["coeffs"][3] == 1.0


def test_kernel_output_shape(capsys):
    rc, out, _ = run(capsys, ["kernel", "e1-e10"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "dim=4"
    assert len(lines) == 5

    rc, out, _ = run(capsys, ["kernel", "--format", "json", "e1-e10"])
    data = json.loads(out)
    assert data["dim"] == 4 and len(data["basis"]) == 4


def test_decompose_names_three_parts(capsys):
    rc, out, _ = run(capsys, ["decompose", "1+2e1+3e4", "e1-e10"])
    assert rc == 0
    lines = out.splitlines()
    assert [line.split("=")[0] for line in lines] == \
        ["o_part", "ker_part", "kerc_part"]


def test_zd_check_certificate_and_exit_codes(capsys):
    rc, out, _ = run(capsys, ["zd-check", "e1-e10", "e4+e15"])
    assert rc == 0
    assert "product_zero=yes" in out and "norms_match=yes" in out
    rc, out, _ = run(capsys, ["zd-check", "e1", "e2"])
    assert rc == 1
    assert "product_zero=no" in out


# ---------------------------------------------------------------------------
# slice geometry commands
# ---------------------------------------------------------------------------


def test_hyper_pair_prints_its_frame(capsys):
    rc, out, _ = run(capsys, ["hyper", "e1", "e10"])
    assert rc == 0
    assert out == f"hyper=yes alpha={PI_2} i1=e1 i2=e2\n"


def test_hyper_rejects_octonion_pairs(capsys):
    rc, out, _ = run(capsys, ["hyper", "e1", "e2"])
    assert (rc, out) == (1, "hyper=no\n")


def test_polar_analysis(capsys):
    rc, out, _ = run(capsys, ["polar", "e10"])
    assert rc == 0
    assert out == f"alpha={PI_2} theta={PI_2} jmath=e2\n"


def test_polar_construction_roundtrips(capsys):
    rc, out, _ = run(capsys, ["polar", "--alpha", "0", "--theta", "0",
                              "--jmath", "e1"])
    assert (rc, out) == (0, "e8\n")
    rc, out, _ = run(capsys, ["polar", "--alpha", "0.5", "--theta", "0.3",
                              "--frame", "e1,e2"])
    assert rc == 0
    rc2, out2, _ = run(capsys, ["polar", out.strip()])
    assert rc2 == 0
    alpha = float(out2.split()[0].split("=")[1])
    assert abs(alpha - 0.5) < 1e-9


def test_polar_without_arguments_is_an_error(capsys):
    rc, _, err = run(capsys, ["polar"])
    assert rc == 2
    assert err.startswith("error:")


def test_cker_membership_exit_codes(capsys):
    rc, out, _ = run(capsys, ["cker", "e1", "e10", "e10"])
    assert (rc, out) == (0, "member=yes\n")
    rc, out, _ = run(capsys, ["cker", "e1", "e10", "e3"])
    assert (rc, out) == (1, "member=no\n")


def test_cker_curve_csv(capsys, tmp_path):
    rc, out, _ = run(capsys, ["cker", "e1", "e10", "--curve", "8"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "theta," + ",".join(f"c{k}" for k in range(16))
    assert len(lines) == 9
    assert all(len(line.split(",")) == 17 for line in lines)

    target = tmp_path / "curve.csv"
    rc, out, _ = run(capsys, ["cker", "e1", "e10", "--curve", "4",
                              "--out", str(target)])
    assert rc == 0
    assert out == f"wrote {target}\n"
    assert len(target.read_text().splitlines()) == 5


# ---------------------------------------------------------------------------
# series commands
# ---------------------------------------------------------------------------


def test_radii_of_the_demo_sequence(capsys):
    rc, out, _ = run(capsys, ["radii"])
    assert rc == 0
    assert out == "R_a=2 R_a^p=3 witness=e10\ncase=HyperIntersection\n"


def test_radii_flags_table_estimates(capsys):
    seq = json.dumps({"kind": "table", "values": ["1", "0.5", "0.25", "0.125"]})
    rc, out, _ = run(capsys, ["radii", "--seq", seq])
    assert rc == 0
    assert "approximate=yes" in out.splitlines()[1]


def test_radii_json_payload(capsys):
    rc, out, _ = run(capsys, ["radii", "--format", "json"])
    data = json.loads(out)
    assert (data["R_a"], data["R_ap"], data["witness"]) == (2.0, 3.0, "e10")
    assert data["case"] == "HyperIntersection"


def test_contains_three_way(capsys):
    for q, want in (("1.5e1", "Interior"), ("3e1", "Boundary"),
                    ("4e1", "Exterior")):
        rc, out, _ = run(capsys, ["contains", q])
        assert (rc, out) == (0, want + "\n")


def test_eval_frozen_output(capsys):
    rc, out, _ = run(capsys, ["eval", "1.5e1"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0].startswith("verdict=Converged terms=64 tail_norm=")
    assert lines[1] == ("value=0.972972972973+0.162162162162e1"
                       "+0.941176470588e4+0.235294117647e5"
                       "-0.235294117647e14+0.941176470588e15")


def test_eval_json_payload(capsys):
    rc, out, _ = run(capsys, ["eval", "--format", "json", "1.5e1"])
    data = json.loads(out)
    assert data["verdict"] == "Converged" and data["terms"] == 64
    assert len(data["coeffs"]) == 16


def test_repeated_runs_are_byte_identical(capsys):
    outs = set()
    for _ in range(2):
        rc, out, _ = run(capsys, ["eval", "0.3+0.7e10"])
        assert rc == 0
        outs.add(out)
    assert len(outs) == 1


def test_scan_summary_and_success_exit(capsys):
    rc, out, _ = run(capsys, ["scan", "--slices", "e1", "--rmin", "0.5",
                              "--rmax", "1.5", "--rstep", "0.5"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "slice,theta,re,im,predicted,empirical,terms_used,tail_norm"
    assert lines[-2] == "slice=e1 scored=3 agreed=3 agreement=1"
    assert lines[-1] == "total scored=3 agreed=3 agreement=1"


def test_scan_flags_disagreement_with_exit_1(capsys):
    # a truncated table converges everywhere, so points outside its estimated
    # radius disagree by construction
    seq = json.dumps({"kind": "table", "values": ["1", "1", "1"]})
    rc, out, _ = run(capsys, ["scan", "--seq", seq, "--slices", "e1",
                              "--rmin", "3", "--rmax", "3", "--rstep", "0.2"])
    assert rc == 1
    assert out.splitlines()[-1] == "total scored=1 agreed=0 agreement=0"


def test_scan_writes_csv_under_the_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SEDENION_OUTDIR", str(tmp_path))
    rc, out, _ = run(capsys, ["scan", "--slices", "e10", "--rmin", "1",
                              "--rmax", "2", "--rstep", "1", "--out", "rows.csv"])
    assert rc == 0
    path = tmp_path / "rows.csv"
    assert out.splitlines()[0] == f"wrote {path}"
    body = path.read_text().splitlines()
    assert body[0].startswith("slice,theta")
    assert len(body) == 3


def test_figure_writes_per_slice_csv_and_svg(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SEDENION_OUTDIR", str(tmp_path))
    rc, out, _ = run(capsys, ["figure", "--n", "20", "--format", "svg"])
    assert rc == 0
    names = ["figure_e1.csv", "figure_e10.csv", "figure_me10.csv",
             "figure_e3.csv", "figure.svg"]
    assert out.splitlines() == [f"wrote {tmp_path / n}" for n in names]
    for name in names[:4]:
        body = (tmp_path / name).read_text().splitlines()
        assert body[0] == "theta,r,re,im,class"
        assert len(body) == 1 + 20 * 20
    svg = (tmp_path / "figure.svg").read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<polygon") == 6
    assert "stroke-dasharray" in svg


def test_figure_explicit_outdir_beats_the_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SEDENION_OUTDIR", str(tmp_path / "ignored"))
    target = tmp_path / "here"
    rc, out, _ = run(capsys, ["figure", "--n", "6", "--slices", "e1",
                              "--out", str(target)])
    assert rc == 0
    assert (target / "figure_e1.csv").exists()


# ---------------------------------------------------------------------------
# error handling
# ---------------------------------------------------------------------------


def test_parse_errors_exit_2(capsys):
    rc, _, err = run(capsys, ["mul", "e99", "e1"])
    assert rc == 2
    assert err.startswith("error:")
    rc, _, err = run(capsys, ["zd-check", "0", "e4+e15"])
    assert rc == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_global_seed_flag_is_accepted(capsys):
    rc, out, _ = run(capsys, ["--seed", "7", "table", "--verify"])
    assert rc == 0 and out.startswith("256/256")


def test_installed_entry_point_runs():
    proc = subprocess.run(["sedenion", "radii"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "R_a=2 R_a^p=3 witness=e10"
