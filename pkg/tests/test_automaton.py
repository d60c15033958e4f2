import pytest

from fixpoint_sat.core.automaton import Choose, ModalStep, Split, TrackingAutomaton, Unfold, letter_text
from fixpoint_sat.core.closure import closure
from fixpoint_sat.core.parser import parse
from fixpoint_sat.oracles.automata import lasso_accepts, letters


def automaton_of(text: str) -> TrackingAutomaton:
    return TrackingAutomaton(closure(parse(text)))


@pytest.fixture
def chi() -> TrackingAutomaton:
    """mu X. (p | <> X) with nodes 0 = fixpoint, 1 = disjunction, 2 = p, 3 = <> X."""
    return automaton_of("mu X. (p | <> X)")


class TestLetters:
    def test_branch_range(self):
        with pytest.raises(ValueError):
            Choose(1, 3)

    def test_text(self):
        assert letter_text(Choose(1, 2)) == "choose(1,2)"
        assert letter_text(ModalStep(frozenset({3, 1}))) == "modal{1,3}"

    def test_propositional_letters_follow_node_kinds(self, chi):
        assert chi.propositional_letters(range(4)) == [Unfold(0), Choose(1, 1), Choose(1, 2)]

    def test_modal_letters_cover_all_subsets(self, chi):
        assert list(chi.modal_letters({2, 3})) == [ModalStep(frozenset()), ModalStep(frozenset({3}))]


class TestDelta:
    def test_choose(self, chi):
        assert chi.delta(1, Choose(1, 1)) == {2}
        assert chi.delta(1, Choose(1, 2)) == {3}

    def test_split(self):
        automaton = automaton_of("p & q")
        assert automaton.delta(0, Split(0)) == {1, 2}

    def test_unfold(self, chi):
        assert chi.delta(0, Unfold(0)) == {1}

    def test_other_nodes_are_carried_over(self, chi):
        assert chi.delta(2, Choose(1, 1)) == {2}
        assert chi.delta(3, Unfold(0)) == {3}

    def test_modal_step_keeps_members_of_kappa(self, chi):
        assert chi.delta(3, ModalStep(frozenset({3}))) == {0}
        assert chi.delta(3, ModalStep(frozenset())) == frozenset()

    def test_modal_step_ends_atom_traces(self, chi):
        assert chi.delta(2, ModalStep(frozenset({3}))) == frozenset()

    def test_diamond_not_in_kappa(self):
        automaton = automaton_of("<> p & [] q")
        box = automaton.closure.id_of(parse("[] q"))
        diamond = automaton.closure.id_of(parse("<> p"))
        assert automaton.delta(diamond, ModalStep(frozenset({box}))) == frozenset()

    def test_modal_steps_are_monotone(self, rng, make_formula):
        for _ in range(50):
            index = closure(make_formula(rng))
            automaton = TrackingAutomaton(index)
            modal = [node for node in range(index.size) if index.is_modal(node)]
            small = frozenset(node for node in modal if rng.random() < 0.5)
            large = small | {node for node in modal if rng.random() < 0.5}
            for node in modal:
                assert automaton.delta(node, ModalStep(small)) <= automaton.delta(node, ModalStep(large))


class TestPriorities:
    def test_priority_of_atoms(self, chi):
        assert chi.priority(2) == 0

    def test_least_fixpoint_trace_is_accepted(self, chi):
        loop = [Unfold(0), Choose(1, 2), ModalStep(frozenset({3}))]
        assert lasso_accepts(chi, [], loop)

    def test_greatest_fixpoint_trace_is_rejected(self):
        automaton = automaton_of("nu X. (p & <> X)")
        loop = [Unfold(0), Split(1), ModalStep(frozenset({3}))]
        assert not lasso_accepts(automaton, [], loop)

    def test_dying_trace_is_rejected(self, chi):
        assert not lasso_accepts(chi, [], [Unfold(0), Choose(1, 1), ModalStep(frozenset())])

    def test_outer_greatest_fixpoint_dominates(self):
        """Unfolding the outer greatest fixpoint infinitely often makes the trace good."""
        automaton = automaton_of("nu X. mu Y. ((p & <> X) | <> Y)")
        index = automaton.closure
        disjunction = index.successors[1][0]
        left, right = index.successors[disjunction]
        to_x = next(n for n in index.successors[left] if index.is_modal(n))
        outer_loop = [
            Unfold(0), Unfold(1), Choose(disjunction, 1), Split(left), ModalStep(frozenset({to_x})),
        ]
        assert not lasso_accepts(automaton, [], outer_loop)
        inner_loop = [Unfold(1), Choose(disjunction, 2), ModalStep(frozenset({right}))]
        assert lasso_accepts(automaton, [Unfold(0)], inner_loop)

    def test_empty_loop(self, chi):
        with pytest.raises(ValueError):
            lasso_accepts(chi, [], [])


class TestAlphabet:
    def test_letters_of_chi(self, chi):
        assert letters(chi.closure) == [
            Unfold(0), Choose(1, 1), Choose(1, 2), ModalStep(frozenset({3})), ModalStep(frozenset({3})),
        ]
