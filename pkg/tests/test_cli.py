import csv
import io
import re

import numpy as np
import pytest

from hermite_coords.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def threshold_row(out):
    line = out.splitlines()[2]
    return [float(x) for x in line.split()]


def test_thresholds_unit_power(capsys):
    code, out, _ = run(capsys, "thresholds", "--power", "1")
    assert code == 0
    t = threshold_row(out)
    assert t[:3] == pytest.approx([0.424, 0.605, 0.680], abs=1e-3)
    assert t[3] == pytest.approx(1.015572, abs=1e-6)
    assert "T4^2 = 1.031387" in out
    assert "ordering T1 < T2 < T3 < T4: yes" in out


def test_thresholds_bits_flag_changes_nothing(capsys):
    _, nats, _ = run(capsys, "thresholds", "--power", "1")
    _, bits, _ = run(capsys, "thresholds", "--power", "1", "--bits")
    assert threshold_row(nats) == threshold_row(bits)


def test_thresholds_zero_power_is_usage_error(capsys):
    code, _, err = run(capsys, "thresholds", "--power", "0")
    assert code == 2
    assert "power" in err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["thresholds", "--power", "abc"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_verify_contraction(capsys):
    code, out, _ = run(capsys, "verify", "contraction")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hermite_coords import cli
    from hermite_coords.verify import Check

    monkeypatch.setattr(cli, "run_suite", lambda name, **kw: [Check("forced", False, 1.0)])
    code, out, _ = run(capsys, "verify", "eigen")
    assert code == 1
    assert "FAIL  forced" in out


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_fig1_argmax(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    assert run(capsys, "figure", "fig1", "--out", str(out))[0] == 0
    header, data = read_csv(out)
    assert header == ["R", "mu_rate"]
    # at 9 significant digits the rows next to the peak tie; take the middle of the tied run
    top = np.flatnonzero(data[:, 1] == data[:, 1].max())
    r_star = 0.5 * (data[top[0], 0] + data[top[-1], 0])
    assert r_star == pytest.approx(0.62043154, abs=1e-4)


def test_figures_are_byte_identical(tmp_path, capsys):
    for which in ("fig1", "fig2"):
        a, b = tmp_path / f"{which}a.csv", tmp_path / f"{which}b.csv"
        run(capsys, "figure", which, "--grid", "500", "--out", str(a))
        run(capsys, "figure", which, "--grid", "500", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


def test_fig2_positive_at_reference_r(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    run(capsys, "figure", "fig2", "--out", str(out))
    header, data = read_csv(out)
    assert header == ["R", "gain"]
    i = np.argmin(np.abs(data[:, 0] - 0.62043154))
    assert abs(data[i, 0] - 0.62043154) < 1e-6
    assert data[i, 1] > 0


def test_sl_region_contains_reference_row(tmp_path, capsys):
    out = tmp_path / "sl.csv"
    run(capsys, "figure", "sl_region", "--out", str(out))
    text = out.read_text()
    assert text.splitlines()[0] == "h,u,k,gap"
    assert "0.5,2,3,0.00636608219" in text.splitlines()


def test_nine_significant_digits(capsys):
    code, out, _ = run(capsys, "sl", "--scan", "--grid", "0.5")
    assert code == 0
    for row in list(csv.reader(io.StringIO(out)))[1:]:
        digits = re.sub(r"[^0-9]", "", row[3].split("e")[0]).lstrip("0")
        assert len(digits) <= 9


def test_unwritable_path(capsys):
    code, _, err = run(capsys, "figure", "fig1", "--grid", "10", "--out", "/nonexistent/dir/x.csv")
    assert code == 2
    assert "cannot write" in err


def test_fading_bc_reference_law(capsys):
    code, out, _ = run(capsys, "fading-bc")
    assert code == 0
    r = float(re.search(r"optimal R = (\S+)", out).group(1))
    assert r == pytest.approx(0.62043154, abs=1e-6)
    row8 = next(l for l in out.splitlines() if l.startswith("8 "))
    assert float(row8.split()[1]) > 0


def test_fading_bc_single_atom_has_no_gain(tmp_path, capsys):
    law = tmp_path / "one.json"
    law.write_text('{"atoms": [{"h": 1.0, "w": 1.0}]}')
    code, out, _ = run(capsys, "fading-bc", "--fading", str(law), "--power", "5")
    assert code == 0
    gains = [float(l.split()[1]) for l in out.splitlines() if re.match(r"^\d+ ", l)]
    assert len(gains) == 8 and all(g < 0 for g in gains)


def test_fading_bc_missing_file(capsys):
    code, _, err = run(capsys, "fading-bc", "--fading", "/no/such/law.json")
    assert code == 2
    assert "not found" in err


def test_fading_bc_malformed_json_reports_line(tmp_path, capsys):
    law = tmp_path / "bad.json"
    law.write_text('{"atoms":\n  [oops]}')
    code, _, err = run(capsys, "fading-bc", "--fading", str(law))
    assert code == 2
    assert "line 2" in err


def test_fading_bc_bad_weights(tmp_path, capsys):
    law = tmp_path / "w.json"
    law.write_text('{"atoms": [{"h": 1.0, "w": 0.7}]}')
    assert run(capsys, "fading-bc", "--fading", str(law))[0] == 2


def test_ic_gain(capsys):
    code, out, _ = run(capsys, "ic-gain", "--a", "0.8", "--k", "3", "--numeric")
    assert code == 0
    f = float(re.search(r"f_k\s+= (\S+)", out).group(1))
    num = float(re.search(r"numeric limit\s+= (\S+)", out).group(1))
    assert f > 0 and num == pytest.approx(2 * f, rel=1e-4)


def test_ic_gain_bits(capsys):
    _, nats, _ = run(capsys, "ic-gain", "--a", "0.0", "--power", "1")
    _, bits, _ = run(capsys, "ic-gain", "--a", "0.0", "--power", "1", "--bits")
    tin_n = float(re.search(r"Gaussian TIN\s+= (\S+)", nats).group(1))
    tin_b = float(re.search(r"Gaussian TIN\s+= (\S+)", bits).group(1))
    assert tin_n == pytest.approx(np.log(2.0), abs=1e-9)
    assert tin_b == pytest.approx(1.0, abs=1e-9)


def test_sl_point(capsys):
    code, out, _ = run(capsys, "sl", "--h", "0.5", "--u", "2", "--k", "3", "--numeric")
    assert code == 0
    assert "+6.366082193e-03" in out and "counter-example" in out


def test_sl_indeterminate_point(capsys):
    assert run(capsys, "sl", "--h", "0", "--u", "0")[0] == 2


def test_bad_quadrature_override(capsys):
    assert run(capsys, "ic-gain", "--a", "0.5", "--quad-nodes", "10")[0] == 2


def test_parser_lists_all_commands():
    text = build_parser().format_help()
    for cmd in ("thresholds", "verify", "figure", "fading-bc", "ic-gain", "sl"):
        assert cmd in text
