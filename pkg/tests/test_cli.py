import json

import pytest

from bcmas.app.cli import join_literal_options, main
from bcmas.app.transitions import read_json


@pytest.fixture
def run(capsys):
    """Run the command line and return (exit code, stdout, stderr)."""
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


class TestCommands:

    def test_check(self, run, corpus):
        code, out, _ = run("check", corpus / "sumo_agent.bc")
        assert code == 0
        assert "sumo_agent.bc:" in out and "ground laws" in out

    def test_ts_text(self, run, corpus):
        code, out, _ = run("ts", corpus / "sumo_agent.bc")
        assert code == 0
        assert out.splitlines()[-1] == "3 states, 7 transitions"
        assert "s1 -{goRight(a)}-> s2" in out

    def test_ts_json(self, run, corpus):
        code, out, _ = run("ts", corpus / "sumo_agent.bc", "--json")
        assert code == 0
        ts = read_json(out)
        assert len(ts.states) == 3

    def test_ts_dot(self, run, corpus):
        code, out, _ = run("ts", corpus / "table_left.bc", "--dot")
        assert code == 0
        assert out.startswith("digraph transitions {")
        assert out.count("->") == 1

    def test_translate_empty_file(self, run, corpus):
        code, out, _ = run("translate", corpus / "empty.bc", "--horizon", 0)
        assert code == 0
        assert out.startswith("% logic program, horizon 0: 0 rules over 0 atoms")

    def test_solve(self, run, corpus):
        code, out, _ = run("solve", corpus / "sumo_agent.bc", "--horizon", 0)
        assert code == 0
        assert out.splitlines()[-1] == "3 stable models"

    def test_solve_json(self, run, corpus):
        code, out, _ = run("solve", corpus / "table_left.bc", "--horizon", 0, "--json")
        assert code == 0
        assert len(json.loads(out)) == 2

    def test_conflicts(self, run, corpus):
        code, out, _ = run("conflicts", corpus / "table_union.toml", "--json")
        assert code == 0
        payload = json.loads(out)
        onfloor = next(e for e in payload["states"] if "table(onfloor)" in e["state"])
        assert ["lift_l", "lift_r"] in onfloor["conflicts"]

    def test_cover(self, run, corpus):
        code, out, _ = run("cover", corpus / "sumo_agent.bc", "--actions", "", "--state", "at(a,1)")
        assert code == 0
        assert out.startswith("% 3 dynamic laws covered by {} at ")

    def test_negative_literals_as_option_values(self, run, corpus):
        code, out, _ = run("cover", corpus / "sumo_agent.bc", "--actions", "goLeft(a)", "--state", "-at(a,1), -out(a)")
        assert code == 0
        assert "at {-at(a,1), at(a,2), -out(a)}" in out

    def test_resolve(self, run, corpus):
        code, out, _ = run("resolve", corpus / "table_union.toml", "--actions", "lift_l,lift_r",
                           "--state", "table(onfloor)", "--target", "table(lifted)", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["actions"] == ["lift_l", "lift_r"]
        assert "table(lifted) after lift_l, lift_r" in " ".join(payload["laws"])

    def test_compose(self, run, corpus):
        code, out, _ = run("compose", corpus / "table_global.toml")
        assert code == 0
        assert "ab'(table(leftup))" in out

    def test_verify(self, run, corpus):
        code, out, _ = run("verify", corpus / "table_left.bc", "--lemma", 2)
        assert code == 0
        assert out.startswith("transitions preserved by covered laws: holds")


class TestFailures:

    def test_usage_error(self, run):
        code, _, err = run("ts")
        assert code == 2
        assert "usage: bcmas" in err

    def test_negative_horizon(self, run, corpus):
        code, _, _ = run("translate", corpus / "empty.bc", "--horizon", -1)
        assert code == 2

    def test_missing_file(self, run, tmp_path):
        code, _, err = run("ts", tmp_path / "nowhere.bc")
        assert code == 1
        assert "error: cannot read" in err

    def test_parse_error(self, run, tmp_path):
        broken = tmp_path / "broken.bc"
        broken.write_text("fluent f : regular\n")
        code, _, err = run("check", broken)
        assert code == 1
        assert "error: " in err

    def test_compose_needs_manifest(self, run, corpus):
        code, _, err = run("compose", corpus / "sumo_agent.bc")
        assert code == 1
        assert "is not a manifest" in err

    def test_verify_needs_something(self, run):
        code, _, err = run("verify", "--lemma", 1)
        assert code == 1
        assert "nothing to verify" in err

    def test_ambiguous_state(self, run, corpus):
        code, _, err = run("cover", corpus / "sumo_agent.bc", "--actions", "", "--state", "-out(a)")
        assert code == 1
        assert "matches more than one state" in err


class TestArguments:

    def test_literal_options_are_joined(self):
        argv = ["cover", "x.bc", "--actions", "", "--state", "-out(a)", "--json"]
        assert join_literal_options(argv) == ["cover", "x.bc", "--actions=", "--state=-out(a)", "--json"]

    def test_joined_forms_pass_through(self):
        argv = ["resolve", "x.toml", "--target=-table(lifted)", "--state"]
        assert join_literal_options(argv) == argv
