import random
from itertools import combinations

import pytest

from fixpoint_sat.core.closure import closure
from fixpoint_sat.core.formula import (
    BOX,
    DIAMOND,
    FALSE,
    OpKind,
    Prop,
    all_but,
    cannot_prevent,
    enforce,
    more_than,
)
from fixpoint_sat.core.logics import (
    Logic,
    OneStepPair,
    RuleApplication,
    UnsupportedEngineError,
    literal_consistent,
    one_step_sat,
    one_step_sat_coalition,
    one_step_sat_graded,
    one_step_sat_relational,
    tableau_applications,
)
from fixpoint_sat.core.parser import parse
from fixpoint_sat.oracles.search import brute_one_step

PAIRS = [frozenset(pair) for pair in combinations("abcd", 2)]
COALITION_OPS = [enforce(), enforce(1), enforce(2), enforce(1, 2), cannot_prevent(), cannot_prevent(1)]


def four_point_pair(bound: int) -> OneStepPair:
    """
    Every pair of four points needs weight above 2 while the total weight may not
    exceed `bound`. The cheapest solution (2, 2, 2, 1) weighs 7.
    """
    gamma = [(more_than(2), pair) for pair in PAIRS]
    gamma.append((all_but(bound), "nowhere"))
    theta = [{pair for pair in PAIRS if point in pair} for point in "abcd"]
    return OneStepPair.of(gamma, theta)


def default_moves(pair: OneStepPair) -> int:
    enforcing = sum(1 for op, _ in pair.gamma if op.kind is OpKind.ENFORCE)
    preventing = sum(1 for op, _ in pair.gamma if op.kind is OpKind.CANNOT_PREVENT and op.coalition != {1, 2})
    return (enforcing + 1) * max(1, preventing)


def random_pair(rng: random.Random, ops, names="abc", max_theta=3, max_gamma=3) -> OneStepPair:
    gamma = [(rng.choice(ops), rng.choice(names)) for _ in range(rng.randint(0, max_gamma))]
    theta = [
        {name for name in names if rng.random() < 0.5}
        for _ in range(rng.randint(0, max_theta))
    ]
    return OneStepPair.of(gamma, theta)


class TestLogic:
    def test_from_id(self):
        assert Logic.from_id("KD") is Logic.KD
        assert Logic.from_id(Logic.AMC) is Logic.AMC

    def test_unknown_id(self):
        with pytest.raises(ValueError, match="expected one of"):
            Logic.from_id("ctl")

    def test_flags(self):
        assert Logic.KD.serial and Logic.KD.relational
        assert not Logic.GRADED.has_tableau
        assert Logic.AMC.has_tableau


class TestLiteralConsistent:
    def test_distinct_atoms(self):
        assert literal_consistent([Prop("p"), Prop("q", False)])

    def test_clash(self):
        assert not literal_consistent([Prop("p"), Prop("p", False)])

    def test_false(self):
        assert not literal_consistent([FALSE])


class TestRelational:
    def test_diamond_with_box(self):
        assert one_step_sat_relational(OneStepPair.of([(DIAMOND, "a"), (BOX, "b")], [{"a", "b"}]))

    def test_diamond_without_successor(self):
        assert not one_step_sat_relational(OneStepPair.of([(DIAMOND, "a")], []))

    def test_box_alone_depends_on_seriality(self):
        pair = OneStepPair.of([(BOX, "b")], [])
        assert one_step_sat_relational(pair, serial=False)
        assert not one_step_sat_relational(pair, serial=True)

    def test_box_must_hold_in_the_witness(self):
        assert not one_step_sat_relational(OneStepPair.of([(DIAMOND, "a"), (BOX, "b")], [{"a"}, {"b"}]))


class TestGraded:
    def test_counterexample_to_the_tableau_rules(self):
        assert not one_step_sat_graded(four_point_pair(6))

    def test_counterexample_with_one_more_unit(self):
        assert one_step_sat_graded(four_point_pair(7))

    def test_brute_force_confirms_the_counterexample(self):
        assert not brute_one_step(four_point_pair(6), Logic.GRADED)
        assert brute_one_step(four_point_pair(7), Logic.GRADED)

    def test_single_set_needs_multiplicity_two(self):
        assert one_step_sat_graded(OneStepPair.of([(more_than(1), "a")], [{"a"}]))

    def test_empty_gamma(self):
        assert one_step_sat_graded(OneStepPair.of([], [{"a"}, set()]))

    def test_box_bound_blocks_the_witness(self):
        pair = OneStepPair.of([(more_than(1), "a"), (all_but(1), "b")], [{"a"}])
        assert not one_step_sat_graded(pair)


class TestCoalition:
    def test_grand_coalition(self):
        assert one_step_sat_coalition(OneStepPair.of([(enforce(1, 2), "a")], [{"a"}]), agents=2)

    def test_one_agent_with_two_goals(self):
        pair = OneStepPair.of([(enforce(1), "a"), (enforce(1), "b")], [{"a"}, {"b"}])
        assert one_step_sat_coalition(pair, agents=2)

    def test_disjoint_coalitions_must_agree(self):
        pair = OneStepPair.of([(enforce(1), "a"), (enforce(2), "b")], [{"a"}, {"b"}])
        assert not one_step_sat_coalition(pair, agents=2)

    def test_empty_theta(self):
        assert not one_step_sat_coalition(OneStepPair.of([], []), agents=1)

    def test_two_cannot_prevent_literals_of_the_empty_coalition(self):
        """Needs two distinct outcomes, which a single move per agent cannot offer."""
        pair = OneStepPair.of([(cannot_prevent(), "a"), (cannot_prevent(), "b")], [{"a"}, {"b"}])
        assert one_step_sat_coalition(pair, agents=1)
        assert brute_one_step(pair, Logic.AMC, agents=1)
        assert not brute_one_step(pair, Logic.AMC, agents=1, max_moves=1)


class TestTableau:
    def label(self, text: str):
        index = closure(parse(text))
        return index, {node for node in range(index.size) if index.is_modal(node)}

    def test_one_application_per_diamond(self):
        index, label = self.label("<> a & <> b & [] c")
        box = index.id_of(parse("[] c"))
        applications = tableau_applications(label, index, Logic.K)
        clauses = {application.conclusion for application in applications}
        assert clauses == {
            (frozenset({index.id_of(parse("<> a")), box}),),
            (frozenset({index.id_of(parse("<> b")), box}),),
        }
        assert all(application.premiss == frozenset(label) for application in applications)

    def test_boxes_alone_match_no_rule(self):
        index, label = self.label("[] b")
        assert tableau_applications(label, index, Logic.K) == []

    def test_serial_boxes(self):
        index, label = self.label("[] b")
        assert tableau_applications(label, index, Logic.KD) == [
            RuleApplication(frozenset(label), (frozenset(label),)),
        ]

    def test_graded_is_rejected(self):
        index = closure(parse("<1> p", Logic.GRADED))
        with pytest.raises(UnsupportedEngineError):
            tableau_applications({0}, index, Logic.GRADED)

    def test_coalition_obligations(self):
        index = closure(parse("<{1}> a & <{2}> b", Logic.AMC, agents=2))
        label = {node for node in range(index.size) if index.is_modal(node)}
        applications = tableau_applications(label, index, Logic.AMC, agents=2)
        assert [application.conclusion for application in applications] == [(frozenset(label),)]

    def test_agrees_with_one_step_on_relational_labels(self, rng):
        """A label passes the tableau check iff its one-step pair is satisfiable."""
        index = closure(parse("<> a & <> b & [] c & [] a"))
        modal = [node for node in range(index.size) if index.is_modal(node)]
        for _ in range(300):
            label = {node for node in modal if rng.random() < 0.6}
            theta = [
                {index.child(node) for node in modal if rng.random() < 0.5}
                for _ in range(rng.randint(0, 3))
            ]
            for logic in (Logic.K, Logic.KD):
                by_rules = all(
                    any({index.child(node) for node in clause} <= set(u) for u in theta)
                    for application in tableau_applications(label, index, logic)
                    for clause in application.conclusion
                )
                pair = OneStepPair.of([(index.op(node), index.child(node)) for node in label], theta)
                assert by_rules == one_step_sat(pair, logic)


class TestAgreementWithBruteForce:
    def test_relational(self, rng):
        for _ in range(300):
            pair = random_pair(rng, (DIAMOND, BOX))
            for logic in (Logic.K, Logic.KD):
                assert one_step_sat(pair, logic) == brute_one_step(pair, logic)

    def test_graded(self, rng):
        ops = [more_than(g) for g in range(3)] + [all_but(g) for g in range(3)]
        for _ in range(300):
            pair = random_pair(rng, ops, max_theta=4)
            assert one_step_sat_graded(pair) == brute_one_step(pair, Logic.GRADED)

    def test_coalition(self, rng):
        for _ in range(150):
            pair = random_pair(rng, COALITION_OPS, names="ab", max_theta=2, max_gamma=2)
            assert one_step_sat_coalition(pair, 2) == brute_one_step(pair, Logic.AMC, agents=2)

    @pytest.mark.slow
    def test_coalition_beyond_the_move_bound(self, rng):
        """One move more per agent than the default bound never changes the verdict."""
        for _ in range(150):
            pair = random_pair(rng, COALITION_OPS, names="ab", max_theta=2, max_gamma=2)
            expected = one_step_sat_coalition(pair, 2)
            assert brute_one_step(pair, Logic.AMC, agents=2) == expected
            assert brute_one_step(pair, Logic.AMC, agents=2, max_moves=default_moves(pair) + 1) == expected

    def test_monotone_in_theta(self, rng):
        ops = {Logic.K: (DIAMOND, BOX), Logic.GRADED: (more_than(1), all_but(1))}
        for logic, available in ops.items():
            for _ in range(200):
                pair = random_pair(rng, available)
                bigger = OneStepPair.of(pair.gamma, [*pair.theta, {"a", "b"}])
                if one_step_sat(pair, logic):
                    assert one_step_sat(bigger, logic)
