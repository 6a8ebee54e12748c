"""Golden-file tests for every CLI verb.

Run ``python3 tests/test_cli.py --regen`` to rewrite the golden files after
an intentional output change.
"""

import io
import sys
from pathlib import Path

import pytest

from stallings import make, to_dot
from stallings.cli import VERBS, render_dot, run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# name -> (argv, expected exit status); paths are relative to tests/data
CASES = {
    "reduce": (["reduce", "-n", "2", "aaAbBAAb", "abBA", "abA"], 0),
    "stallings": (["stallings", "-n", "2", "-H", "stallings_example.txt"], 0),
    "basis": (["basis", "-n", "2", "-H", "stallings_example.txt"], 0),
    "rank": (["rank", "-n", "2", "-H", "stallings_example.txt"], 0),
    "member": (["member", "-n", "2", "-H", "stallings_example.txt", "a"], 0),
    "member_long": (["member", "-n", "2", "-H", "membership.txt", "bbabAbbbbbbbAABaa"], 0),
    "member_no": (["member", "-n", "2", "-H", "membership.txt", "a"], 1),
    "express": (["express", "-n", "2", "-H", "stallings_example.txt", "a"], 0),
    "express_no": (["express", "-n", "2", "-H", "a.txt", "b"], 1),
    "index": (["index", "-n", "2", "-H", "index3.txt"], 0),
    "index_infinite": (["index", "-n", "2", "-H", "b.txt"], 1),
    "transversal": (["transversal", "-n", "2", "-H", "index3.txt"], 0),
    "normal": (["normal", "-n", "2", "-H", "index3.txt"], 1),
    "normal_yes": (["normal", "-n", "1", "-H", "a.txt"], 0),
    "conjugate": (["conjugate", "-n", "2", "-H", "b.txt", "-K", "conj_b.txt"], 0),
    "conjugate_no": (["conjugate", "-n", "2", "-H", "a.txt", "-K", "b.txt"], 1),
    "intersect": (["intersect", "-n", "2", "-H", "intersect_h.txt", "-K", "intersect_k.txt"], 0),
    "shn": (["shn", "-n", "2", "-H", "intersect_h.txt", "-K", "intersect_k.txt"], 0),
    "coset": (["coset", "-n", "2", "-H", "a.txt", "-K", "b.txt", "b", "b"], 0),
    "coset_disjoint": (["coset", "-n", "2", "-H", "a.txt", "-K", "a.txt", "b", "1"], 1),
    "hall": (["hall", "-n", "2", "-H", "hall.txt"], 0),
    "enumerate": (["enumerate", "-n", "2", "-k", "3"], 0),
    "free-family": (["free-family", "-n", "2", "-H", "free.txt"], 0),
    "free-family_no": (["free-family", "-n", "2", "-H", "stallings_example.txt"], 1),
    "generates": (["generates", "-n", "2", "-H", "s2.txt"], 0),
    "generates_no": (["generates", "-n", "2", "-H", "index3.txt"], 1),
    "dot": (["dot", "-n", "2", "-H", "stallings_example.txt"], 0),
    "trace": (["stallings", "-v", "-n", "2", "-H", "stallings_example.txt"], 0),
}


def invoke(argv, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if monkeypatch is not None:
        monkeypatch.chdir(DATA)
    status = run(argv, out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def golden_text(status, out, err):
    text = f"exit {status}\n{out}"
    if err:
        text += "--- stderr\n" + err
    return text


def test_every_verb_has_a_golden_case():
    covered = {argv[0] for argv, _ in CASES.values()}
    assert covered == set(VERBS)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, monkeypatch):
    argv, expected_status = CASES[name]
    status, out, err = invoke(argv, monkeypatch)
    assert status == expected_status
    assert golden_text(status, out, err) == (GOLDEN / f"{name}.out").read_text()


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["reduce", "-n", "2", "ab$"], "'$'"),
        (["reduce", "-n", "2", "abc"], "'c'"),
        (["rank", "-n", "2", "-H", "missing.txt"], "missing.txt"),
        (["rank", "-n", "2", "-H", "bad.txt"], "'$'"),
        (["rank", "-n", "2"], "-H"),
        (["member", "-n", "2", "-H", "a.txt"], "expected 1 word"),
        (["enumerate", "-n", "2"], "-k"),
        (["enumerate", "-n", "2", "-k", "9"], "cap"),
        (["rank", "-n", "0", "-H", "a.txt"], "rank must be positive"),
    ],
)
def test_errors_exit_2_with_one_line(argv, fragment, monkeypatch):
    status, out, err = invoke(argv, monkeypatch)
    assert status == 2
    assert out == ""
    assert fragment in err
    assert len(err.strip().splitlines()) == 1


def test_usage_errors(monkeypatch, capsys):
    assert invoke(["no-such-verb"], monkeypatch)[0] == 2
    assert invoke([], monkeypatch)[0] == 2
    assert invoke(["--help"], monkeypatch)[0] == 0


def test_rank_inferred_from_letters(monkeypatch):
    # <a> has infinite index in F_2 but is all of F_1
    assert invoke(["index", "-H", "a.txt"], monkeypatch)[:2] == (0, "1\n1\n")
    assert invoke(["index", "-n", "2", "-H", "a.txt"], monkeypatch)[0] == 1


def test_dot_to_file(tmp_path, monkeypatch):
    target = tmp_path / "st.dot"
    status, out, _ = invoke(["dot", "-n", "2", "-H", "stallings_example.txt", "-o", str(target)], monkeypatch)
    assert status == 0 and out == ""
    assert target.read_text() == (GOLDEN / "dot.out").read_text().split("\n", 1)[1]


def test_render_dot():
    from conftest import F2

    assert render_dot(make(F2, [])).count("label=") == 1
    assert '0 -> 0 [label="b"' in render_dot(make(F2, ["b"]))
    H = make(F2, ["aaa", "abaB", "AbaB"])
    assert render_dot(H) == render_dot(H) == to_dot(H.stallings, "stallings")
    assert render_dot(H.stallings).count("->") == 3


def test_generator_files_from_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("aaa\nabaB\nAbaB\n"))
    assert invoke(["rank", "-n", "2", "-H", "-"])[:2] == (0, "2\n")


def regen():
    import os

    os.chdir(DATA)
    for name, (argv, _) in sorted(CASES.items()):
        status, out, err = invoke(argv)
        (GOLDEN / f"{name}.out").write_text(golden_text(status, out, err))
        print(f"{name}: exit {status}")


if __name__ == "__main__":
    if "--regen" in sys.argv:
        regen()
