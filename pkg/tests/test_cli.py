"""End-to-end checks of the command-line front end: golden outputs,
exit codes, stderr records, and output-file handling."""

import json

import pytest

from growthlab import VERSION_STRING
from growthlab.cli import main

from util import ROT4_AUTO, TORUS_AUTO

FREE2_SPEC = {"family": "free", "rank": 2}
TORUS_SPEC = {
    "family": "semidirect",
    "base": FREE2_SPEC,
    "automorphism": {"forward": TORUS_AUTO[0], "backward": TORUS_AUTO[1]},
}
ROT4_SPEC = {
    "family": "semidirect",
    "base": {"family": "abelian", "rank": 2},
    "automorphism": {"forward": ROT4_AUTO[0], "backward": ROT4_AUTO[1]},
}


def spec_file(tmp_path, name, spec):
    path = tmp_path / name
    path.write_text(json.dumps(spec), encoding="utf-8")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# growth


def test_growth_free2_table(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x,y", "--radius", "3"])
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines[0] == "n\tgamma\tupper_estimate"
    assert lines[1] == "0\t1\t"
    counts = [int(line.split("\t")[1]) for line in lines[1:]]
    assert counts == [1, 5, 17, 53]


def test_growth_budget_exhaustion_still_writes_prefix(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x,y", "--radius", "6",
        "--budget", "20"])
    assert code == 3
    assert err.startswith("ERR 3 budget exhausted after radius")
    counts = [int(line.split("\t")[1]) for line in out.splitlines()[1:]]
    assert counts == [1, 5, 17]


def test_growth_out_file(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    target = tmp_path / "table.tsv"
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x,y", "--radius", "2",
        "--out", str(target)])
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").splitlines()[0] == \
        "n\tgamma\tupper_estimate"


def test_growth_threads_agree_bytewise(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    outputs = []
    for threads in ("1", "2", "8"):
        code, out, err = run(capsys, [
            "growth", "--group", group, "--gens", "x,y", "--radius", "5",
            "--threads", threads])
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_growth_unknown_generator(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x,q", "--radius", "2"])
    assert code == 2
    assert err.startswith("ERR 2 ")


def test_growth_missing_group_file(tmp_path, capsys):
    code, out, err = run(capsys, [
        "growth", "--group", str(tmp_path / "absent.json"),
        "--gens", "x", "--radius", "2"])
    assert code == 2
    assert err.startswith("ERR 2 cannot read group file")


def test_growth_bad_family_spec(tmp_path, capsys):
    group = spec_file(tmp_path, "bad.json", {"family": "dihedral"})
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x", "--radius", "2"])
    assert code == 2
    assert err.startswith("ERR 2 ")
    assert "dihedral" in err


def test_growth_bad_word_syntax(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x^", "--radius", "2"])
    assert code == 2
    assert err.startswith("ERR 2 ")


def test_growth_zero_threads_rejected(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "growth", "--group", group, "--gens", "x", "--radius", "2",
        "--threads", "0"])
    assert code == 2
    assert err.startswith("ERR 2 thread count must be positive")


# ---------------------------------------------------------------------------
# alexander and rewrite


def test_alexander_golden_lines(capsys):
    cases = [
        ("t x t^-1 x", "Delta = 1 + t; monic_both_ends=true; degree=1; "
                       "not_fg=false"),
        ("t x t^-1 x^-1", "Delta = -1 + t; monic_both_ends=true; degree=1; "
                          "not_fg=false"),
        ("t x t^-1 x^-2", "Delta = -2 + t; monic_both_ends=false; degree=1; "
                          "not_fg=true"),
    ]
    for relator, expected in cases:
        code, out, err = run(capsys, ["alexander", "--relators", relator])
        assert code == 0
        assert out.rstrip("\n") == expected


def test_alexander_empty_relators(capsys):
    code, out, err = run(capsys, ["alexander", "--relators", " ; "])
    assert code == 2
    assert err.startswith("ERR 2 no relators given")


def test_alexander_unbalanced_relator(capsys):
    code, out, err = run(capsys, ["alexander", "--relators", "t x"])
    assert code == 2
    assert err.startswith("ERR 2 ")


def test_rewrite_output(capsys):
    code, out, err = run(capsys, ["rewrite", "--relator", "t x t^-1 x"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rewritten = x_1 x_0"
    assert lines[1] == "abelianized = 1 + t"


# ---------------------------------------------------------------------------
# spectra


def test_spectra_matrix_exponential(capsys):
    code, out, err = run(capsys, ["spectra", "--matrix", "[[2,1],[1,1]]"])
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "Exponential"
    assert payload["roots_of_unity"] is False
    assert abs(payload["spectral_radius"] - 2.618033988749895) < 1e-9
    assert payload["char_poly"] == "1 - 3*t + t^2"
    assert payload["log_base"] == "e"
    assert list(payload) == sorted(payload)


def test_spectra_rot4_virtually_nilpotent(capsys):
    code, out, err = run(capsys, ["spectra", "--matrix", "[[0,-1],[1,0]]"])
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "VirtuallyNilpotent"
    assert payload["roots_of_unity"] is True
    assert payload["spectral_radius"] == 1.0


def test_spectra_poly_input(capsys):
    code, out, err = run(capsys, ["spectra", "--poly", "t^2-3t+1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "Exponential"
    assert abs(payload["threshold"] - 1.0033535800365154) < 1e-12


def test_spectra_argument_validation(capsys):
    code, out, err = run(capsys, ["spectra"])
    assert code == 2
    assert err.startswith("ERR 2 give exactly one of")
    code, out, err = run(capsys, [
        "spectra", "--matrix", "[[1,0],[0,1]]", "--poly", "t-1"])
    assert code == 2
    code, out, err = run(capsys, ["spectra", "--matrix", "[[1,0]]"])
    assert code == 2
    assert err.startswith("ERR 2 matrix must be a square")
    code, out, err = run(capsys, ["spectra", "--poly", "2t^2-1"])
    assert code == 2
    assert err.startswith("ERR 2 polynomial must be monic")


# ---------------------------------------------------------------------------
# witness and pcc


def test_witness_torus_json(tmp_path, capsys):
    group = spec_file(tmp_path, "torus.json", TORUS_SPEC)
    code, out, err = run(capsys, [
        "witness", "--group", group, "--gens", "t,x", "--u", "3", "--d", "2",
        "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["variant"] == "NonCyclicPair"
    assert payload["u"] == "y x^-1"
    assert payload["v"] == "x"
    assert payload["max_A_length"] == 6
    assert payload["reverified"] is True
    assert abs(payload["bound"] - 3.0 ** (1.0 / 6.0)) < 1e-12


def test_witness_plain_lines(tmp_path, capsys):
    group = spec_file(tmp_path, "rot4.json", ROT4_SPEC)
    code, out, err = run(capsys, [
        "witness", "--group", group, "--gens", "t,e1", "--u", "3", "--d", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "variant = PeriodicConjugacy"
    assert "k = e1" in lines
    assert "n = 4" in lines
    assert "c = <identity>" in lines


def test_witness_threads_agree_bytewise(tmp_path, capsys):
    group = spec_file(tmp_path, "torus.json", TORUS_SPEC)
    outputs = []
    for threads in ("1", "2", "8"):
        code, out, err = run(capsys, [
            "witness", "--group", group, "--gens", "t,x", "--u", "3",
            "--d", "2", "--json", "--threads", threads])
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_witness_bad_hypothesis(tmp_path, capsys):
    group = spec_file(tmp_path, "torus.json", TORUS_SPEC)
    code, out, err = run(capsys, [
        "witness", "--group", group, "--gens", "t,x", "--u", "1", "--d", "2"])
    assert code == 2
    assert err.startswith("ERR 2 growth hypothesis")


def test_witness_non_semidirect_group(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    code, out, err = run(capsys, [
        "witness", "--group", group, "--gens", "x,y", "--u", "3", "--d", "2"])
    assert code == 2
    assert err.startswith("ERR 2 analysis requires a split-extension engine")


def test_pcc_torus_json(tmp_path, capsys):
    group = spec_file(tmp_path, "torus.json", TORUS_SPEC)
    code, out, err = run(capsys, [
        "pcc", "--group", group, "--max-period", "10", "--max-length", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] is False
    assert payload["note"] == "found within bounds"
    assert payload["certificate"]["k"] == "x y x^-1 y^-1"
    assert payload["certificate"]["n"] == 2


def test_pcc_rot4_exact(tmp_path, capsys):
    group = spec_file(tmp_path, "rot4.json", ROT4_SPEC)
    code, out, err = run(capsys, [
        "pcc", "--group", group, "--max-period", "10", "--max-length", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["exact"] is True
    assert payload["certificate"]["k"] == "e1"
    assert payload["certificate"]["n"] == 4


# ---------------------------------------------------------------------------
# top-level behavior


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.strip() == VERSION_STRING


def test_missing_subcommand_uses_err_record(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    assert capsys.readouterr().err.startswith("ERR 2 ")


def test_unknown_flag_uses_err_record(capsys):
    with pytest.raises(SystemExit) as info:
        main(["growth", "--nope"])
    assert info.value.code == 2
    assert capsys.readouterr().err.startswith("ERR 2 ")


def test_seed_flag_is_inert(tmp_path, capsys):
    group = spec_file(tmp_path, "free2.json", FREE2_SPEC)
    runs = []
    for seed in ("0", "1", "12345"):
        code, out, err = run(capsys, [
            "--seed", seed, "growth", "--group", group, "--gens", "x,y",
            "--radius", "4"])
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1] == runs[2]
