import io
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from coxlimit.cli import run

GOLDEN = Path(__file__).resolve().parent / "golden"

# name -> (argv after "cox", expected exit code); matrix paths are relative to data/
CASES = {
    "hyperbolic_pentagon": ("hyperbolic -f pentagon.cox", 0),
    "hyperbolic_affine_a2": ("hyperbolic -f affine_a2.cox", 0),
    "ends_a1free3": ("ends -f a1free3.cox", 0),
    "ends_dinf_x_a1": ("ends -f dinf_x_a1.cox", 0),
    "classify_affine_a2": ("classify -f affine_a2.cox", 0),
    "reduced_word": ("reduced -f pentagon.cox --word '2 1 3'", 0),
    "reduced_ep": ("reduced -f pentagon.cox --prefix 1 --period '2 5'", 0),
    "inv_word": ("inv -f dinf.cox --word '1 2 1'", 0),
    "inv_ep": ("inv -f pentagon.cox --period '1 3 5 2 4' --depth 2 --threads {threads}", 0),
    "compare_pentagon": ("compare -f pentagon.cox --left-prefix '' --left-period '2 5' "
                         "--right-prefix 1 --right-period '2 5' --threads {threads}", 0),
    "walls_ray": ("walls -f affine_a2.cox --period '1 2 3' --depth 4", 0),
    "block_pentagon": ("block -f pentagon.cox --period '2 5'", 0),
    "fiber_poset_dodecahedron": ("fiber-poset -f dodecahedron.cox --period '3 6' --depth 3 --dot -", 0),
    "affine_census_a2": ("affine-census -f affine_a2.cox --threads {threads}", 0),
    "automaton_a2": ("automaton-dump -f a2.cox --dot -", 0),
}


def cox(args: str, data_dir, threads=1):
    argv = shlex.split(args.format(threads=threads))
    i = argv.index("-f")
    argv[i + 1] = str(data_dir / argv[i + 1])
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, data_dir):
    args, expected = CASES[name]
    code, out, err = cox(args, data_dir)
    assert code == expected, err
    assert out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["inv_ep", "compare_pentagon", "affine_census_a2"])
def test_threads_do_not_change_output(name, data_dir):
    args, _ = CASES[name]
    assert cox(args, data_dir, threads=1)[1] == cox(args, data_dir, threads=8)[1]


def test_spec_strings(data_dir):
    assert cox("hyperbolic -f pentagon.cox", data_dir)[1] == "hyperbolic: yes\n"
    assert "left ≤ right: yes\n" in cox(CASES["compare_pentagon"][0], data_dir)[1]
    assert cox("ends -f a1free3.cox", data_dir)[1] == "ends: infinity (witness T = {1})\n"


@pytest.mark.parametrize("args", [
    "ends -f missing.cox",
    "reduced -f pentagon.cox --word '1 x'",
    "reduced -f pentagon.cox --word '1 9'",
    "ends -f pentagon.cox --bogus",
    "frobnicate -f pentagon.cox",
    "walls -f pentagon.cox --period '1 1'",
    "walls -f pentagon.cox",
    "fiber-poset -f affine_a2.cox --period '1 2 3' --depth 4",
    "affine-census -f pentagon.cox",
])
def test_errors_exit_1(args, data_dir):
    code, out, err = cox(args, data_dir)
    assert code == 1
    assert err.startswith("cox: error:") or "cox: error:" in err


def test_bad_matrix_file(tmp_path):
    bad = tmp_path / "bad.cox"
    bad.write_text("2\n1 3\n2 1\n")
    assert run(["ends", "-f", str(bad)], stdout=io.StringIO(), stderr=io.StringIO()) == 1


def test_unknown_exits_2(data_dir, monkeypatch):
    from coxlimit import cli
    from coxlimit.order import Verdict3
    monkeypatch.setattr(cli, "same_block", lambda *a: Verdict3("unknown", bound=6))
    code, out, _ = cox(CASES["compare_pentagon"][0], data_dir)
    assert code == 2
    assert "same block: unknown (bound 6)" in out


def test_inv_step_cap_unknown(data_dir):
    code, out, _ = cox("inv -f pentagon.cox --period '1 3 5 2 4' --depth 2 --steps 0", data_dir)
    assert code == 2 and "unknown (step cap 0)" in out


def test_module_entry_point(data_dir):
    res = subprocess.run([sys.executable, "-m", "coxlimit", "hyperbolic", "-f", str(data_dir / "pentagon.cox")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "hyperbolic: yes\n"


def test_dot_file(tmp_path, data_dir):
    target = tmp_path / "poset.dot"
    code, _, _ = cox(f"fiber-poset -f pentagon.cox --period '2 5' --dot {target}", data_dir)
    assert code == 0
    assert target.read_text().startswith("digraph")
