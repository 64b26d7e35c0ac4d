import json
import re
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from crosscert.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main, parse_rational, parse_sequence
from crosscert.geometry import DeltaSequence, RectRegion, complement_region
from crosscert.render import DepthCapError, dec, render_Fm

SVG = "{http://www.w3.org/2000/svg}"


def parse(svg: str):
    return ET.fromstring(svg.split("\n", 1)[1])


def test_render_m0(default_seq):
    root = parse(render_Fm(default_seq, 0))
    crosses = root.findall(f".//{SVG}g[@class='cross']")
    assert len(crosses) == 1
    (hole,) = crosses[0].findall(f"{SVG}rect")
    assert (hole.get("x"), hole.get("y")) == (dec(F(4, 9)), dec(F(4, 9)))
    assert hole.get("width") == dec(F(1, 9))


@pytest.mark.parametrize("m", range(4))
def test_render_counts(default_seq, m):
    root = parse(render_Fm(default_seq, m))
    assert len(root.findall(f".//{SVG}g[@class='cross']")) == sum(4 ** n for n in range(m + 1))
    assert len(root.findall(f".//{SVG}rect[@class='hole']")) == len(complement_region(default_seq, m))
    for side in ("bottom", "left"):
        marks = root.findall(f".//{SVG}line[@data-side='{side}']")
        assert len(marks) == 2 ** (m + 1) - 1


def test_render_deterministic(default_seq):
    assert render_Fm(default_seq, 2) == render_Fm(default_seq, 2)


def test_render_depth_cap(default_seq):
    with pytest.raises(DepthCapError):
        render_Fm(default_seq, 6)


def test_decimal_format():
    assert dec(F(1, 3)) == "0.333333333333"
    assert dec(F(2, 3)) == "0.666666666667"
    assert dec(1) == "1.000000000000"
    assert re.fullmatch(r"-?\d+\.\d{12}", dec(F(-1, 20)))


def test_parse_inputs():
    assert parse_rational("1/27") == F(1, 27)
    assert parse_rational("1e-3") == F(1, 1000)
    assert parse_sequence("geometric:1/9,1/8") == DeltaSequence.geometric(F(1, 9), F(1, 8))
    assert parse_sequence("explicit:1/9,1/30").values == (F(1, 9), F(1, 30))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_bound_lemma1(capsys):
    code, out, _ = run(capsys, "bound", "--lemma1", "--delta", "1/27", "--n0", "2")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["exact_sum"] == [7, 27] == d["cover_sum"]
    # 8 (1/27)^eta = 8 (2/3)^3 = 64/27
    assert F(d["value"]["lo"]) <= F(64, 27) <= F(d["value"]["hi"])


def test_cli_bound_lemma2_and_oracle(capsys):
    code, out, _ = run(capsys, "bound", "--lemma2", "--seq", "geometric:1/1024,1/8")
    assert code == EXIT_OK and json.loads(out)["converges"]
    code, out, _ = run(capsys, "bound", "--oracle", "--depth", "1")
    d = json.loads(out)
    assert code == EXIT_OK and d["exact_sum"] == [25, 27] and "squares" not in d


def test_cli_build(capsys, tmp_path):
    path = tmp_path / "g.json"
    assert main(["build", "--depth", "2", "--what", "complement", "-o", str(path)]) == EXIT_OK
    doc = json.loads(path.read_text())
    region = RectRegion.from_json(doc)
    assert region.same_set(complement_region(DeltaSequence.default(), 2))


def test_cli_select(capsys):
    code, out, _ = run(capsys, "select", "--eps", "1/1000")
    d = json.loads(out)
    assert code == EXIT_OK and d["report"]["verdict"] == "PASS"
    assert d["sequence"]["log2_inv_amplitude"] == 46


def test_cli_certify_validate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert main(["certify", "--precision", "128", "-o", str(path)]) == EXIT_OK
    code, out, _ = run(capsys, "validate", str(path))
    assert code == EXIT_OK and out.strip().endswith("the assumptions above")
    d = json.loads(path.read_text())
    d["capacity_lb"]["value_lo_exact"] = [1, 100]
    path.write_text(json.dumps(d))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == EXIT_FAIL and "FAIL [capacity]" in out


def test_cli_render(tmp_path):
    path = tmp_path / "f2.svg"
    assert main(["render", "--depth", "2", "--seq", "default", "-o", str(path)]) == EXIT_OK
    assert path.read_text().count('class="cross"') == 21


def test_cli_errors(capsys, tmp_path):
    code, _, err = run(capsys, "bound", "--lemma1", "--delta", "1/x", "--n0", "2")
    assert code == EXIT_INPUT and "malformed" in err
    code, _, err = run(capsys, "build", "--seq", "explicit:1/3")
    assert code == EXIT_INPUT
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 4
    with pytest.raises(SystemExit) as exc:
        main(["bound", "--nonsense"])
    assert exc.value.code == 2


def test_cli_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("CROSSCERT_PRECISION", "64")
    code, out, _ = run(capsys, "bound", "--lemma1", "--delta", "1/9", "--n0", "1")
    assert code == EXIT_OK and json.loads(out)["value"]["prec_bits"] == 64
