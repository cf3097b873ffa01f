import subprocess
import sys

from matchedkit.catalog import catalog_get
from matchedkit.chords import format_diagram, parse_diagram
from matchedkit.cli import run_cli
from matchedkit.knots import format_knot, parse_knot


def write_catalog(tmp_path, name, fname):
    path = tmp_path / fname
    assert run_cli(["catalog", name, "--out", str(path)]) == 0
    return str(path)


def test_ideal_on_10_140_file(tmp_path, capsys):
    f = write_catalog(tmp_path, "10_140", "k.knot")
    assert parse_knot(open(f).read()) == catalog_get("10_140").payload
    capsys.readouterr()
    assert run_cli(["ideal", "--file", f, "-k", "2"]) == 0
    assert capsys.readouterr().out == "E_2 = <t^2 - t + 1, 2> : NONTRIVIAL\n"


def test_ideal_trivial_and_basis(capsys):
    assert run_cli(["ideal", "--catalog", "8_20", "-k", "2", "--show-generators"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("E_2 = <1> : TRIVIAL")
    assert run_cli(["ideal", "--catalog", "trefoil-cd", "-k", "0"]) == 0
    assert capsys.readouterr().out.strip() == "E_0 = <> : ZERO"


def test_rational(tmp_path, capsys):
    assert run_cli(["rational", "2/5"]) == 0
    out = capsys.readouterr().out
    first, rest = out.split("\n", 1)
    assert first == "[2, 2]"
    assert parse_diagram(rest) == catalog_get("figure8-cd").payload
    path = tmp_path / "f8.cd"
    assert run_cli(["rational", "2/5", "--out", str(path)]) == 0
    assert parse_diagram(path.read_text()) == catalog_get("figure8-cd").payload
    assert run_cli(["rational", "1/3"]) == 1
    assert "odd numerator" in capsys.readouterr().err


def test_support_and_alexander(tmp_path, capsys):
    f = write_catalog(tmp_path, "trefoil-cd", "t.cd")
    capsys.readouterr()
    assert run_cli(["support", "--file", f]) == 0
    assert capsys.readouterr().out == "support chords: 1 2\n"
    assert run_cli(["alexander", "--file", f, "--matrix"]) == 0
    assert capsys.readouterr().out.endswith("Delta = t^2 - t + 1\n")


def test_theorem1(capsys):
    assert run_cli(["theorem1", "--catalog", "milnor-fox:4", "-k", "2"]) == 0
    assert "t + 1 not in E_2" in capsys.readouterr().out
    assert run_cli(["theorem1", "--catalog", "8_20", "-k", "2"]) == 0


def test_duplicate(tmp_path, capsys):
    f = write_catalog(tmp_path, "trefoil-pd", "t.knot")
    out = tmp_path / "d.knot"
    assert run_cli(["duplicate", "--file", f, "--cuts", "0,1", "--params", "2", "--out", str(out)]) == 0
    assert out.read_text() == format_knot(catalog_get("8_20").payload)
    tangle = write_catalog(tmp_path, "trefoil-tangle", "t.tangle")
    capsys.readouterr()
    assert run_cli(["duplicate", "--file", tangle, "--params", "4"]) == 0
    assert parse_knot(capsys.readouterr().out) == catalog_get("10_140").payload
    assert run_cli(["duplicate", "--file", f]) == 1


def test_graph_render_oracle(tmp_path, capsys):
    f = tmp_path / "e.cd"
    f.write_text(format_diagram(catalog_get("figure8-cd").payload))
    assert run_cli(["graph", "--dot", "--file", str(f)]) == 0
    assert "1 -- 2;" in capsys.readouterr().out
    assert run_cli(["render", "--svg", "--file", str(f)]) == 0
    assert capsys.readouterr().out.startswith("<svg")
    assert run_cli(["oracle-check", "--file", str(f)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and all(line.endswith("AGREE") for line in lines)


def test_errors(tmp_path, capsys):
    assert run_cli(["ideal", "--catalog", "8_20"]) == 2
    assert run_cli([]) == 2
    assert run_cli(["catalog", "8_18"]) == 1
    assert "not shipped" in capsys.readouterr().err
    bad = tmp_path / "bad.cd"
    bad.write_text("cd 2\nchord 1 I + 0 2\nchord 2 I + 1 3\n")
    assert run_cli(["support", "--file", str(bad)]) == 1
    assert "interleave" in capsys.readouterr().err
    assert run_cli(["support", "--file", str(tmp_path / "missing.cd")]) == 1
    assert run_cli(["support", "--catalog", "trefoil-pd"]) == 1
    assert run_cli(["ideal", "-k", "1"]) == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "matchedkit", "rational", "2/3"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("[2, -2]\n")
