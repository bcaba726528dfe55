"""CLI golden files, determinism, and agreement with direct library calls.

Set TWISTSPIN_REGEN_GOLDEN=1 to rewrite the golden files.
"""

import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from twistspin import KNOT_DIR, load_knot
from twistspin.assembly import (
    apply_gluck,
    build_closed_complex,
    build_complement_complex,
    dump,
    h1,
    sphere_certificate,
    vankampen_pi1,
)
from twistspin.cli import run
from twistspin.fpgroup import format_presentation
from twistspin.gluing import coprime_pairs
from twistspin.orbitdata import (
    BTSIndex,
    Site,
    TwinState,
    classify,
    gluck_rewrite,
    reduce_to_base,
    twin_partner,
)

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TWISTSPIN_REGEN_GOLDEN") == "1"

CASES = {
    "twin_2_3": ["twin", "2", "3"],
    "twin_neg2_3": ["twin", "-2", "3"],
    "twin_spun": ["twin", "0", "1"],
    "gluck_partner_2_3": ["gluck", "--along", "partner", "2", "3"],
    "gluck_self_2_3": ["gluck", "--along", "self", "2", "3"],
    "gluck_partner_neg2_3": ["gluck", "--along", "partner", "-2", "3"],
    "gluck_partner_neg1_1": ["gluck", "--along", "partner", "-1", "1"],
    "reduce_5_3_floor": ["reduce", "--strategy", "floor", "5", "3"],
    "reduce_5_3": ["reduce", "5", "3"],
    "reduce_neg17_5": ["reduce", "-17", "5"],
    "reduce_not_coprime": ["reduce", "4", "6"],
    "verify_40": ["verify-matrices", "--max", "40"],
    "pi1_trefoil_2_3": ["pi1", "--knot", "trefoil", "2", "3"],
    "pi1_trefoil_2_3_raw": ["pi1", "--knot", "trefoil", "2", "3", "--raw"],
    "pi1_figure8_3_2_closed": ["pi1", "--knot", "figure8", "3", "2", "--closed"],
    "h1_trefoil_2_3": ["h1", "--knot", "trefoil", "2", "3"],
    "h1_trefoil_2_3_closed": ["h1", "--knot", "trefoil", "2", "3", "--closed"],
    "h1_trefoil_2_3_gluck_second": ["h1", "--knot", "trefoil", "2", "3", "--gluck", "second"],
    "h1_missing_file": ["h1", "--knot", "no/such/file.knot", "2", "3"],
    "classify_3_2_nontrivial": ["classify", "3", "2", "--nontrivial"],
    "classify_2_3_nontrivial": ["classify", "2", "3", "--nontrivial"],
    "classify_3_2": ["classify", "3", "2"],
    "certify_trefoil_2_3": ["certify", "--knot", "trefoil", "2", "3"],
    "certify_trefoil_2_3_gluck_first": ["certify", "--knot", "trefoil", "2", "3", "--gluck", "first", "--kmax", "3"],
    "complex_trefoil_2_3_closed": ["complex", "--knot", "trefoil", "2", "3", "--closed"],
    "bad_int": ["twin", "x", "3"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def render(code, out, err):
    return f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv = CASES[name]
    if name == "bad_int":
        # argparse writes usage to the real stderr; only the exit code is golden
        code, out, err = invoke(argv)
        assert code == 2 and out == ""
        return
    text = render(*invoke(argv))
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", ["twin_2_3", "reduce_neg17_5", "certify_trefoil_2_3", "pi1_trefoil_2_3"])
def test_byte_identical_across_processes(name):
    runs = [
        subprocess.run([sys.executable, "-m", "twistspin", *CASES[name]], capture_output=True)
        for _ in range(2)
    ]
    assert runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
    code, out, _ = invoke(CASES[name])
    assert runs[0].stdout.decode() == out and runs[0].returncode == code


def test_exit_codes():
    assert invoke(["twin", "2", "3"])[0] == 0
    assert invoke(["twin", "0", "1"])[0] == 1
    assert invoke(["reduce", "2", "0"])[0] == 1
    assert invoke(["h1", "--knot", "nope", "2", "3"])[0] == 2
    assert invoke(["certify", "--knot", "trefoil", "2", "3", "--kmax", "9"])[0] == 2
    assert invoke(["frobnicate"])[0] == 2


def test_bad_knot_file_is_parse_error(tmp_path):
    f = tmp_path / "bad.knot"
    f.write_text("knot bad\ngens x y\nrel x z\nmeridian x\nlongitude\n")
    code, out, err = invoke(["h1", "--knot", str(f), "2", "3"])
    assert code == 2 and "line 3" in err
    f.write_text("knot bad\ngens x\nmeridian x\n")
    assert invoke(["h1", "--knot", str(f), "2", "3"])[0] == 2


def test_knot_by_path():
    path = str(KNOT_DIR / "trefoil.knot")
    assert invoke(["h1", "--knot", path, "2", "3"]) == invoke(["h1", "--knot", "trefoil", "2", "3"])


# --- the CLI output equals direct library calls ----------------------------------


def lines(*items):
    return "".join(f"{x}\n" for x in items)


@pytest.mark.parametrize("m,n", [(2, 3), (-2, 3), (1, 1), (-7, 4), (5, 3)])
def test_twin_gluck_reduce_classify_match_library(m, n):
    idx = BTSIndex(m, n)
    assert invoke(["twin", str(m), str(n)])[1] == lines(f"{idx} | partner {twin_partner(idx)}")
    for along, site in (("partner", Site.SECOND), ("self", Site.FIRST)):
        st = gluck_rewrite(TwinState.of(idx), site)
        assert invoke(["gluck", "--along", along, str(m), str(n)])[1] == lines(
            f"{idx} -> {st.first}", f"twin {TwinState.of(idx)} -> {st}"
        )
    for strategy in ("nearest", "floor"):
        got = invoke(["reduce", "--strategy", strategy, str(m), str(n)])[1]
        assert got == lines(*reduce_to_base(idx, strategy).lines())
    for flag, nontrivial in (([], False), (["--nontrivial"], True)):
        got = invoke(["classify", str(m), str(n), *flag])[1]
        assert got == lines(classify(idx, nontrivial))


@pytest.mark.parametrize("knot", ["unknot", "trefoil", "figure8"])
def test_topology_commands_match_library(knot):
    K = load_knot(knot)
    m, n = 3, 5
    comp = build_complement_complex(K, m, n)
    closed = build_closed_complex(K, m, n)
    base = ["--knot", knot, str(m), str(n)]
    assert invoke(["pi1", *base])[1] == lines(format_presentation(vankampen_pi1(comp, True)))
    assert invoke(["pi1", *base, "--raw"])[1] == lines(format_presentation(vankampen_pi1(comp)))
    assert invoke(["h1", *base])[1] == lines(f"H1({comp.title}) = {h1(comp)}")
    assert invoke(["h1", *base, "--closed"])[1] == lines(f"H1({closed.title}) = {h1(closed)}")
    g = apply_gluck(closed, Site.SECOND)
    assert invoke(["h1", *base, "--gluck", "second"])[1] == lines(f"H1({g.title}) = {h1(g)}")
    assert invoke(["complex", *base, "--closed"])[1] == lines(dump(closed))
    rep = sphere_certificate(closed, 3, 3)
    assert invoke(["certify", *base, "--kmax", "3"])[1] == lines(*rep.lines())


def test_verify_matrices_count():
    out = invoke(["verify-matrices", "--max", "40"])[1].splitlines()
    pairs = sum(1 for _ in coprime_pairs(40))
    assert out[-1] == f"all identities hold ({pairs} pairs)"
    assert pairs == 1958
