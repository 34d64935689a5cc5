import pytest

from bcmas.app.properties import (
    PropertyReport,
    check_lemma1,
    check_lemma2,
    random_description,
    restrict_to_covered,
)
from bcmas.app.schemas import ActionDescription, FluentDecl, FluentKind, Signature
from bcmas.app.transitions import Reasoner, State

S1 = State.parse("at(a,1), -at(a,2), -out(a)")
S2 = State.parse("-at(a,1), at(a,2), -out(a)")


class TestPropertyReport:

    def test_merge_and_render(self):
        first = PropertyReport(name="p", checked=2, skipped=1)
        second = PropertyReport(name="p", checked=1, counterexamples=["{a} at {f}"])
        merged = first.merge(second)
        assert (merged.checked, merged.skipped) == (3, 1)
        assert not merged.holds
        assert merged.to_text() == "p: FAILS (1 counterexamples); 3 checks, 1 skipped\n  {a} at {f}\n"
        assert first.to_text() == "p: holds; 2 checks, 1 skipped\n"


class TestConflictsUnderBeta:

    def test_single_wrestler(self, sumo1):
        report = check_lemma1(sumo1)
        assert report.holds, report.to_text()
        assert report.checked > 0

    def test_sampled_conflict_of_two_wrestlers(self, sumo_union, ring_states):
        sample = [(frozenset({"goRight(a)", "goLeft(b)"}), ring_states["s4"])]
        report = check_lemma1(sumo_union, sample, max_extensions=8)
        assert report.holds, report.to_text()
        assert report.checked >= 2

    @pytest.mark.slow
    def test_two_wrestlers(self, sumo_union, sumo_union_ts):
        report = check_lemma1(sumo_union, max_extensions=8, seed=5)
        assert report.holds, report.to_text()
        assert report.checked >= len(sumo_union_ts.states) * 16

    @pytest.mark.slow
    def test_table(self, table_union):
        assert check_lemma1(table_union).holds

    def test_without_dynamic_laws(self):
        signature = Signature(fluents={"f": FluentDecl(kind=FluentKind.REGULAR)}, actions={"a": ()})
        report = check_lemma1(ActionDescription.build(signature))
        assert report.holds
        assert report.checked == 4

    def test_sample_outside_the_states(self, sumo1):
        report = check_lemma1(sumo1, [(frozenset(), State.parse("at(a,1), at(a,2), -out(a)"))])
        assert report.counterexamples == ["{at(a,1), at(a,2), -out(a)} is not a state of the description"]


class TestCoveredLawsSuffice:

    def test_step_right(self, sumo1):
        reduced = restrict_to_covered(sumo1, ["goRight(a)"], S1)
        assert len(reduced.dynamics) < len(sumo1.dynamics)
        assert Reasoner(reduced).has_transition(S1, ["goRight(a)"], S2)
        assert check_lemma2(sumo1, [(frozenset({"goRight(a)"}), S1)]).holds

    def test_idle(self, sumo1):
        reduced = restrict_to_covered(sumo1, [], S1)
        assert {str(law.head) for law in reduced.dynamics} == {"at(a,1)", "-at(a,2)", "-out(a)"}
        assert Reasoner(reduced).has_transition(S1, [], S1)

    def test_whole_corpus(self, sumo1, table_left, table_union):
        for desc in (sumo1, table_left, table_union):
            report = check_lemma2(desc)
            assert report.holds, report.to_text()

    @pytest.mark.slow
    def test_two_wrestlers(self, sumo_union, sumo_union_ts):
        report = check_lemma2(sumo_union)
        assert report.holds, report.to_text()
        assert report.checked == len(sumo_union_ts.states) * 16


class TestRandomDescriptions:

    def test_generator_is_reproducible(self):
        assert random_description(7) == random_description(7)

    def test_generator_bounds(self):
        for seed in range(20):
            desc = random_description(seed)
            assert 1 <= len(desc.signature.visible_fluents) <= 3
            assert 1 <= len(desc.signature.action_symbols) <= 2

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(50))
    def test_conflicts_preserved(self, seed):
        report = check_lemma1(random_description(seed), seed=seed)
        assert report.holds, report.to_text()

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(50))
    def test_transitions_preserved(self, seed):
        report = check_lemma2(random_description(seed))
        assert report.holds, report.to_text()
