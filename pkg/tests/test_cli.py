import json

import pytest

from localinv.cli import EXIT_ERROR, EXIT_OK, EXIT_OPEN, cli_main


def run(capsys, *argv):
    code = cli_main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_line(capsys):
    code, out, _ = run(capsys, "bounds", "--l", "258", "--k", "2")
    assert code == EXIT_OK and out.startswith("M=66564 half=33282")


def test_bounds_tables_flag_the_inconsistent_row(capsys):
    code, out, _ = run(capsys, "bounds", "--tables")
    notes = [ln for ln in out.splitlines() if "NOTE" in ln]
    assert code == EXIT_OK and len(notes) == 1 and "l=2048" in notes[0]


def test_invert_rsa33(capsys, fixtures_dir):
    code, out, _ = run(capsys, "invert", "--target", str(fixtures_dir / "rsa33.json"), "--M", "64")
    assert code == EXIT_OK and out.startswith("solved x=5 (0x5)")


def test_invert_rsa33_without_shortcut_reports_lc(capsys, fixtures_dir):
    code, out, _ = run(capsys, "invert", "--target", str(fixtures_dir / "rsa33.json"), "--M", "64",
                       "--no-shortcut", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK and d["outcome"] == "solved" and d["x"] == 5 and d["verified"]


def test_high_lc_is_open(capsys, fixtures_dir):
    code, out, _ = run(capsys, "invert", "--target", str(fixtures_dir / "highlc.json"), "--M", "8")
    assert code == EXIT_OPEN and out.startswith("no-conclusion within M=8")


def test_lc_and_orbit(capsys, fixtures_dir):
    code, out, _ = run(capsys, "lc", "--target", str(fixtures_dir / "highlc.json"), "--M", "64")
    assert code == EXIT_OK and out.startswith("period=13 lc=13")
    code, out, _ = run(capsys, "lc", "--target", str(fixtures_dir / "highlc.json"), "--M", "8")
    assert code == EXIT_OPEN
    code, out, _ = run(capsys, "orbit", "--target", str(fixtures_dir / "rsa33.json"), "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK and d["states"] == 64 and d["y_periodic"] and d["in_orbit_preimage"] == 5


@pytest.mark.parametrize("argv", [
    ["bounds", "--l", "88", "--k", "2"],
    ["bounds", "--tables"],
    ["invert", "--target", "rsa_fe", "--param", "n=0x21", "--param", "e=0x3", "--param", "c=0x1a", "--M", "16"],
    ["lc", "--target", "identity", "--param", "n=4", "--param", "y=0x3", "--M", "8"],
    ["orbit", "--target", "identity", "--param", "n=3", "--param", "y=0x1"],
    ["density", "--target", '{"target": "identity", "n": 4}', "--samples", "3", "--M", "4"],
    ["targets"],
])
def test_json_output_parses(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code in (EXIT_OK, EXIT_OPEN)
    json.loads(out)


def test_usage_errors_exit_one(capsys, fixtures_dir):
    assert run(capsys, "invert", "--bogus")[0] == EXIT_ERROR
    assert run(capsys, "frobnicate")[0] == EXIT_ERROR
    assert run(capsys, "invert", "--target", "missing.json", "--M", "8")[0] == EXIT_ERROR
    assert run(capsys, "invert", "--target", str(fixtures_dir / "rsa33.json"), "--M", "1")[0] == EXIT_ERROR
    assert run(capsys, "bounds", "--l", "1", "--k", "2")[0] == EXIT_ERROR
    code, _, err = run(capsys, "invert", "--target", "nosuch", "--M", "8")
    assert code == EXIT_ERROR and "error" in err


def test_param_and_hex_precedence(capsys, fixtures_dir):
    path = str(fixtures_dir / "rsa33.json")
    # 0x1a = 26 -> 5; overriding c to 8 gives x = 2
    code, out, _ = run(capsys, "invert", "--target", path, "--M", "64", "--param", "c=0x8")
    assert out.startswith("solved x=2 ")
    code, out, _ = run(capsys, "invert", "--target", path, "--M", "64", "--param", "c=0x8", "--c-hex", "0x1b")
    assert out.startswith("solved x=3 ")


def test_density_csv_file_and_stdout(capsys, tmp_path):
    dest = tmp_path / "d.csv"
    spec = '{"target": "random_map", "n": 8}'
    code, out, _ = run(capsys, "density", "--target", spec, "--samples", "10", "--M", "16",
                       "--seed", "4", "--csv", str(dest))
    assert code == EXIT_OK and "fraction solved" in out
    code, out, _ = run(capsys, "density", "--target", spec, "--samples", "10", "--M", "16",
                       "--seed", "4", "--format", "csv")
    assert out == dest.read_text()
    assert len(out.splitlines()) == 11 and out.startswith("target,instance_id,")


def test_density_rejects_unsampleable(capsys):
    assert run(capsys, "density", "--target", "table", "--samples", "2", "--M", "8")[0] == EXIT_ERROR


def test_out_flag_writes_file(capsys, tmp_path):
    dest = tmp_path / "b.txt"
    code, out, _ = run(capsys, "bounds", "--l", "258", "--k", "2", "--out", str(dest))
    assert out == "" and dest.read_text().startswith("M=66564")
