import pytest

from fixpoint_sat.bench.families import parity_to_buechi, rabin_game, rabin_to_buechi, rabin_to_rpair
from fixpoint_sat.core.automaton import Choose, ModalStep, Unfold
from fixpoint_sat.core.closure import closure
from fixpoint_sat.core.determinize import (
    ROOT,
    Component,
    MHState,
    MiyanoHayashi,
    Mode,
    PermState,
    PermutationDeterminizer,
    Role,
    UnsupportedFragmentError,
    classify,
    make_determinizer,
    select_mode,
)
from fixpoint_sat.core.logics import Logic
from fixpoint_sat.core.parser import parse
from fixpoint_sat.oracles.automata import lasso_accepts, random_lasso

CHI = "mu X. (p | <> X)"
ALTERNATING = [
    "nu X. mu Y. ((p & <> X) | <> Y)",
    "mu Y. nu X. ((p & <> X) | <> Y)",
    "nu X. mu Y. ((<> X & [] Y) | q)",
    "nu X. mu Y. ((p | [] Y) & (q | <> X))",
    "mu X. nu Y. (<> Y & <> X)",
    "nu X. mu Y. ((<> Y | p) & [] X)",
    "nu Z. mu X. nu Y. ((<> X | <> Z) & [] Y & q)",
]


def index_of(text: str, logic: Logic = Logic.K):
    return closure(parse(text, logic))


def assert_complement(determinizer, rng, lassos: int) -> None:
    automaton = determinizer.automaton
    for _ in range(lassos):
        prefix, loop = random_lasso(automaton.closure, rng)
        assert lasso_accepts(determinizer, prefix, loop) != lasso_accepts(automaton, prefix, loop), (prefix, loop)


class TestSelectMode:
    def test_alternation_free_uses_breakpoints(self):
        assert select_mode(index_of(CHI)) is Mode.MH

    def test_fixpoint_free_uses_breakpoints(self):
        assert select_mode(index_of("p & <> q")) is Mode.MH

    @pytest.mark.parametrize("text", ALTERNATING)
    def test_alternating_uses_permutations(self, text):
        assert select_mode(index_of(text)) is Mode.PERM

    def test_least_variable_in_two_conjuncts(self):
        with pytest.raises(UnsupportedFragmentError):
            select_mode(index_of("nu X. mu Y. (<> Y & [] Y & <> X)"))

    @pytest.mark.parametrize("build", [
        lambda: parity_to_buechi(1, 2),
        lambda: rabin_to_buechi(1, 1),
        lambda: rabin_to_rpair(1, 1),
        lambda: rabin_game(1, 1),
    ])
    def test_alternating_benchmarks_use_permutations(self, build):
        assert select_mode(closure(build().formula)) is Mode.PERM

    def test_permutations_refuse_conjunctive_formulas(self):
        with pytest.raises(UnsupportedFragmentError):
            make_determinizer(index_of("nu X. mu Y. (<> Y & [] Y & <> X)"), Mode.PERM)

    def test_breakpoints_refuse_alternation(self):
        with pytest.raises(UnsupportedFragmentError):
            make_determinizer(index_of(ALTERNATING[0]), Mode.MH)

    def test_default_mode(self):
        assert isinstance(make_determinizer(index_of(CHI)), MiyanoHayashi)
        assert isinstance(make_determinizer(index_of(ALTERNATING[0])), PermutationDeterminizer)


class TestMiyanoHayashi:
    def test_initial_state(self):
        assert make_determinizer(index_of(CHI)).initial() == MHState(frozenset({0}), frozenset({0}))

    def test_obligation_kept_alive_gives_one(self):
        determinizer = make_determinizer(index_of(CHI))
        step = determinizer.step(determinizer.initial(), Unfold(0))
        assert step.priority == 1
        assert step.target == MHState(frozenset({1}), frozenset({1}))

    def test_breakpoint_gives_two(self):
        determinizer = make_determinizer(index_of(CHI))
        state = determinizer.step(determinizer.initial(), Unfold(0)).target
        step = determinizer.step(state, Choose(1, 1))
        assert step.priority == 2
        assert step.target == MHState(frozenset({2}), frozenset())

    def test_rank(self):
        assert make_determinizer(index_of(CHI)).rank == 2

    def test_unfolding_forever_is_rejected(self):
        determinizer = make_determinizer(index_of(CHI))
        loop = [Unfold(0), Choose(1, 2), ModalStep(frozenset({3}))]
        assert not lasso_accepts(determinizer, [], loop)

    def test_dying_trace_is_accepted(self):
        determinizer = make_determinizer(index_of(CHI))
        loop = [Unfold(0), Choose(1, 1), ModalStep(frozenset())]
        assert lasso_accepts(determinizer, [], loop)


class TestPermutation:
    def test_initial_state_tracks_nothing(self):
        determinizer = make_determinizer(index_of(ALTERNATING[0]))
        assert determinizer.initial() == PermState(frozenset({0}), ())

    def test_passing_a_binder_opens_a_component(self):
        index = index_of(ALTERNATING[0])
        determinizer = make_determinizer(index)
        step = determinizer.step(determinizer.initial(), Unfold(0))
        assert step.target.components == (Component(ROOT, frozenset({(1, 1)})),)
        assert step.priority == 2

    def test_returning_to_the_binder_accepts(self):
        """A component all of whose pairs pass the binder again is accepted at once."""
        index = index_of(ALTERNATING[0])
        determinizer = make_determinizer(index)
        disjunction = index.successors[1][0]
        right = index.successors[disjunction][1]
        state = determinizer.step(determinizer.initial(), Unfold(0)).target
        for letter in (Unfold(1), Choose(disjunction, 2)):
            step = determinizer.step(state, letter)
            assert step.priority == 2
            state = step.target
        step = determinizer.step(state, ModalStep(frozenset({right})))
        assert step.priority == determinizer.rank - 1
        assert step.target.components == (Component(ROOT, frozenset({(1, 1)})),)

    def test_leaving_the_region_kills_the_component(self):
        index = index_of(ALTERNATING[0])
        determinizer = make_determinizer(index)
        disjunction = index.successors[1][0]
        state = determinizer.step(determinizer.initial(), Unfold(0)).target
        state = determinizer.step(state, Unfold(1)).target
        step = determinizer.step(state, Choose(disjunction, 1))
        assert step.target.components == ()
        assert step.priority == determinizer.rank

    def test_rank_counts_trackable_pairs(self):
        index = index_of(ALTERNATING[0])
        pairs = sum(len(nodes) for nodes in index.mu_regions.values())
        assert make_determinizer(index).rank == 2 * pairs + 2

    def test_inner_least_fixpoint_loop_is_rejected(self):
        index = index_of(ALTERNATING[0])
        determinizer = make_determinizer(index)
        disjunction = index.successors[1][0]
        right = index.successors[disjunction][1]
        loop = [Unfold(1), Choose(disjunction, 2), ModalStep(frozenset({right}))]
        assert not lasso_accepts(determinizer, [Unfold(0)], loop)

    def test_priorities_stay_in_range(self, rng):
        index = index_of(ALTERNATING[1])
        determinizer = make_determinizer(index)
        for _ in range(50):
            prefix, loop = random_lasso(index, rng)
            state = determinizer.initial()
            for letter in prefix + loop:
                step = determinizer.step(state, letter)
                assert 2 <= step.priority <= determinizer.rank
                state = step.target


class TestComplement:
    """The deterministic automaton accepts a lasso iff the tracking automaton rejects it."""

    def test_breakpoints_on_random_formulas(self, rng, make_supported):
        for f in make_supported(rng, Logic.K, 40, max_closure=10):
            index = closure(f)
            if index.depth <= 1:
                assert_complement(make_determinizer(index, Mode.MH), rng, 20)

    def test_permutations_on_random_formulas(self, rng, make_supported):
        for f in make_supported(rng, Logic.K, 40, max_closure=10):
            assert_complement(make_determinizer(closure(f), Mode.PERM), rng, 20)

    @pytest.mark.parametrize("text", ALTERNATING)
    def test_permutations_on_alternating_formulas(self, rng, text):
        assert_complement(make_determinizer(index_of(text)), rng, 150)

    @pytest.mark.slow
    def test_acceptance_scale(self, rng, make_supported):
        for logic in (Logic.K, Logic.GRADED, Logic.AMC):
            for f in make_supported(rng, logic, 200, max_closure=12, depth=5):
                assert_complement(make_determinizer(closure(f)), rng, 30)


class TestClassify:
    def test_saturated_label_is_a_state(self):
        index = index_of(CHI)
        assert classify(frozenset({2, 3}), index) is Role.STATE

    def test_propositional_structure_makes_a_core(self):
        index = index_of(CHI)
        assert classify(frozenset({1, 2}), index) is Role.CORE

    def test_empty_label_is_a_state(self):
        assert classify(frozenset(), index_of(CHI)) is Role.STATE
