import re

import pytest

from conftest import lits

from bcmas.app.errors import ModelError
from bcmas.app.schemas import Literal, is_ab_symbol
from bcmas.app.transitions import (
    Reasoner,
    State,
    Transition,
    TransitionSystem,
    export_dot,
    export_json,
    read_json,
    split_literals,
    transitions,
)

S1 = State.parse("at(a,1), -at(a,2), -out(a)")
S2 = State.parse("-at(a,1), at(a,2), -out(a)")
S3 = State.parse("-at(a,1), -at(a,2), out(a)")

ACTION_NAMES = {"l_a": "goLeft(a)", "r_a": "goRight(a)", "l_b": "goLeft(b)", "r_b": "goRight(b)"}

# edges of the two-wrestler diagram, as (source, actions, target)
RING_EDGES = [
    ("s1", "l_b", "s3"), ("s3", "r_b", "s1"), ("s1", "r_a", "s4"), ("s4", "l_a", "s1"),
    ("s1", "r_a l_b", "s2"), ("s2", "l_a r_b", "s1"), ("s2", "l_a", "s3"), ("s3", "r_a", "s2"),
    ("s2", "r_b", "s4"), ("s4", "l_b", "s2"), ("s3", "r_a r_b", "s4"), ("s4", "l_a l_b", "s3"),
    ("s3", "l_b", "s5"), ("s5", "r_b", "s3"), ("s5", "r_a r_b", "s2"), ("s2", "l_a l_b", "s5"),
    ("s6", "l_a l_b", "s2"), ("s2", "r_a r_b", "s6"), ("s4", "r_a", "s6"), ("s6", "l_a", "s4"),
]

PARTNER = {"a": "b", "b": "a"}
TURN = {"Left": "Right", "Right": "Left"}


def mirrored(symbol: str) -> str:
    """The symbol seen from the other side of a ring of four slots, with the wrestlers swapped."""
    if m := re.fullmatch(r"at\((\w+),(\d+)\)", symbol):
        return f"at({PARTNER[m[1]]},{5 - int(m[2])})"
    if m := re.fullmatch(r"out\((\w+)\)", symbol):
        return f"out({PARTNER[m[1]]})"
    m = re.fullmatch(r"go(Left|Right)\((\w+)\)", symbol)
    return f"go{TURN[m[1]]}({PARTNER[m[2]]})"


def mirror_state(state: State) -> State:
    return State.of(Literal(symbol=mirrored(lit.symbol), positive=lit.positive)
                    for lit in state.literals if not is_ab_symbol(lit.symbol))


class TestSplitLiterals:

    def test_top_level_commas_only(self):
        assert split_literals("{at(a,1), -out(a), ab'(at(a,2))}") == ["at(a,1)", "-out(a)", "ab'(at(a,2))"]
        assert split_literals("  ") == []


class TestSingleWrestler:
    """One wrestler on a ring of two slots"""

    def test_states(self, sumo1):
        assert Reasoner(sumo1).states() == [S1, S2, S3]

    def test_transitions(self, sumo1):
        ts = transitions(sumo1)
        moves = {(t.source, frozenset(t.actions), t.target) for t in ts.transitions if t.actions}
        assert moves == {
            (S1, frozenset({"goRight(a)"}), S2),
            (S2, frozenset({"goLeft(a)"}), S1),
            (S1, frozenset({"goLeft(a)"}), S3),
            (S2, frozenset({"goRight(a)"}), S3),
        }
        idle = [t for t in ts.transitions if t.is_idle_loop]
        assert len(idle) == 3
        assert len(ts.transitions) == 7

    def test_out_of_the_ring_nothing_is_executable(self, sumo1):
        assert Reasoner(sumo1).executable(S3) == [frozenset()]

    def test_moving_both_ways_at_once_is_impossible(self, sumo1):
        reasoner = Reasoner(sumo1)
        assert not reasoner.has_transition(S1, ["goLeft(a)", "goRight(a)"])
        assert reasoner.has_transition(S1, ["goRight(a)"], S2)
        assert not reasoner.has_transition(S1, ["goRight(a)"], S3)

    def test_partial_states(self, sumo1):
        reasoner = Reasoner(sumo1)
        assert reasoner.is_state(lits("at(a,1)"))
        assert not reasoner.is_state(lits("at(a,1)", "out(a)"))
        assert reasoner.matching_states(lits("-out(a)")) == [S1, S2]
        assert reasoner.complete_state(lits("out(a)")) == S3

    def test_ambiguous_partial_state(self, sumo1):
        with pytest.raises(ModelError, match="matches more than one state"):
            Reasoner(sumo1).complete_state(lits("-out(a)"))

    def test_unknown_symbols(self, sumo1):
        reasoner = Reasoner(sumo1)
        with pytest.raises(ModelError, match="unknown fluent fly"):
            reasoner.is_state(lits("fly"))
        with pytest.raises(ModelError, match="unknown actions: jump"):
            reasoner.successors(S1, ["jump"])

    def test_successors_of_a_state(self, sumo1):
        found = Reasoner(sumo1).successors(S1)
        assert {t.target for t in found} == {S1, S2, S3}

    def test_auxiliary_fluents_stay_hidden(self, sumo1):
        for state in Reasoner(sumo1).states():
            assert set(state.symbols()) == {"at(a,1)", "at(a,2)", "out(a)"}


class TestExport:

    def test_dot(self, sumo1):
        dot = export_dot(transitions(sumo1))
        assert dot.startswith("digraph transitions {\n  node [shape=box];")
        assert dot.count("->") == 4
        assert 's1 [label="at(a,1)"];' in dot
        assert '[label="goRight(a)"]' in dot

    def test_dot_options(self, sumo1):
        dot = export_dot(transitions(sumo1), show_negatives=True, show_idle_loops=True)
        assert dot.count("->") == 7
        assert "-out(a)" in dot
        assert r's1 [label="at(a,1)\n-at(a,2)\n-out(a)"];' in dot

    def test_empty_system(self):
        assert export_dot(TransitionSystem()) == "digraph transitions {\n}\n"

    def test_json_reads_back(self, sumo1):
        ts = transitions(sumo1)
        assert read_json(export_json(ts)) == ts


class TestTwoWrestlers:
    """The union of two wrestlers on a ring of four slots"""

    def test_state_count(self, sumo_union_ts):
        assert len(sumo_union_ts.states) == 21

    def test_no_abnormality_holds(self, sumo_union_ts):
        for state in sumo_union_ts.states:
            assert not [p for p in state.positives() if is_ab_symbol(p)]

    def test_drawn_edges(self, sumo_union_ts, ring_states):
        present = set(sumo_union_ts.transitions)
        for source, actions, target in RING_EDGES:
            performed = frozenset(ACTION_NAMES[a] for a in actions.split())
            t = Transition(source=ring_states[source], actions=performed, target=ring_states[target])
            assert t in present, f"{source} -{actions}-> {target}"

    def test_mirror_symmetry(self, sumo_union_ts):
        def visible(state):
            return state.without(is_ab_symbol)

        moves = {(visible(t.source), t.actions, visible(t.target)) for t in sumo_union_ts.transitions}
        flipped = {(mirror_state(s), frozenset(mirrored(a) for a in c), mirror_state(t)) for s, c, t in moves}
        assert flipped == moves

    def test_wrestlers_do_not_pass_through_each_other(self, sumo_union_reasoner, ring_states):
        s2 = ring_states["s2"]
        assert not sumo_union_reasoner.has_transition(s2, ["goRight(a)", "goLeft(b)"])
        assert not [t for t in sumo_union_reasoner.successors(s2) if t.actions == {"goRight(a)", "goLeft(b)"}]
