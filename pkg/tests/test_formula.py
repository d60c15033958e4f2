import pytest

from fixpoint_sat.core.formula import (
    BOX,
    DIAMOND,
    FALSE,
    TRUE,
    And,
    FixKind,
    Fixpoint,
    FormulaError,
    Modal,
    Or,
    Prop,
    Var,
    active_vars,
    all_but,
    alternation_depth,
    binders,
    children,
    clean,
    enforce,
    free_vars,
    guard,
    is_aconjunctive,
    is_clean,
    is_closed,
    is_guarded,
    more_than,
    mu,
    negate,
    nu,
    subformulas,
    unguarded_vars,
)
from fixpoint_sat.oracles.models import evaluate, kripke

p, q = Prop("p"), Prop("q")


def diamond(f):
    return Modal(DIAMOND, f)


def box(f):
    return Modal(BOX, f)


class TestModalOp:
    def test_duals_stay_in_the_similarity_type(self):
        assert DIAMOND.dual() == BOX
        assert more_than(3).dual() == all_but(3)
        assert enforce(1, 2).dual().coalition == frozenset({1, 2})

    def test_negative_grade_is_rejected(self):
        with pytest.raises(FormulaError):
            more_than(-1)

    def test_agent_indices_start_at_one(self):
        with pytest.raises(FormulaError):
            enforce(0)

    def test_rendering(self):
        assert str(DIAMOND) == "<>"
        assert str(all_but(2)) == "[2]"
        assert str(enforce(2, 1)) == "<{1,2}>"


class TestNegate:
    def test_diamond_becomes_box(self):
        assert negate(diamond(p)) == box(Prop("p", positive=False))

    def test_least_fixpoint_becomes_greatest(self):
        chi = mu("X", Or(p, diamond(Var("X"))))
        assert negate(chi) == nu("X", And(Prop("p", False), box(Var("X"))))

    def test_constants(self):
        assert negate(TRUE) == FALSE
        assert negate(FALSE) == TRUE

    def test_involution_on_random_formulas(self, rng, make_formula):
        for _ in range(200):
            f = make_formula(rng)
            assert negate(negate(f)) == f


class TestAlternationDepth:
    def test_fixpoint_free(self):
        assert alternation_depth(p) == 0

    def test_single_fixpoint(self):
        assert alternation_depth(mu("X", diamond(Var("X")))) == 1

    def test_dependent_alternation(self):
        f = nu("X", mu("Y", Or(And(p, diamond(Var("X"))), diamond(Var("Y")))))
        assert alternation_depth(f) == 2

    def test_independent_nesting_stays_alternation_free(self):
        f = nu("X", And(diamond(Var("X")), mu("Y", Or(p, diamond(Var("Y"))))))
        assert alternation_depth(f) == 1

    def test_negation_keeps_depth(self, rng, make_formula):
        for _ in range(200):
            f = make_formula(rng)
            assert alternation_depth(negate(f)) == alternation_depth(f)


class TestAconjunctive:
    def test_shared_least_variable_is_rejected(self):
        f = mu("Y", And(diamond(Var("Y")), diamond(Var("Y"))))
        assert not is_aconjunctive(f)

    def test_greatest_variable_may_be_shared(self):
        f = nu("X", mu("Y", Or(And(p, diamond(Var("X"))), diamond(Var("Y")))))
        assert is_aconjunctive(f)

    def test_least_variable_shared_through_disjunctions(self):
        f = mu("Y", And(Or(p, box(Var("Y"))), Or(q, diamond(Var("Y")))))
        assert not is_aconjunctive(f)

    def test_least_and_greatest_variable_in_different_conjuncts(self):
        f = mu("X", nu("Y", And(diamond(Var("Y")), diamond(Var("X")))))
        assert is_aconjunctive(f)

    def test_only_free_occurrences_count(self):
        """Y is not free in `[]Z` even though it becomes active through the binder of Z."""
        f = mu("Y", nu("Z", And(Or(Prop("p", False), box(Var("Y"))), box(Var("Z")))))
        assert is_aconjunctive(f)
        assert "Y" in active_vars(box(Var("Z")), binders(f))

class TestClean:
    def test_repeated_binders_are_renamed(self):
        f = And(mu("X", diamond(Var("X"))), mu("X", box(Var("X"))))
        cleaned = clean(f)
        assert is_clean(cleaned)
        assert cleaned == And(mu("X", diamond(Var("X"))), mu("X_1", box(Var("X_1"))))

    def test_free_variables(self):
        f = And(Var("X"), mu("Y", diamond(Var("Y"))))
        assert free_vars(f) == frozenset({"X"})
        assert not is_closed(f)
        assert is_closed(mu("X", f))


class TestGuard:
    def test_guarded_formula_is_unchanged(self):
        f = mu("X", Or(p, diamond(Var("X"))))
        assert is_guarded(f)
        assert guard(f) is f

    def test_guard_outside_the_binder_does_not_count(self):
        f = diamond(nu("X", And(p, Var("X"))))
        assert not is_guarded(f)
        assert unguarded_vars(f.arg.body) == frozenset({"X"})

    def test_least_variable_alone(self):
        assert guard(mu("X", Var("X"))) == FALSE

    def test_greatest_variable_alone(self):
        assert guard(nu("X", Var("X"))) == TRUE

    def test_absorption(self):
        assert guard(nu("X", And(p, Var("X")))) == p
        assert guard(mu("X", Or(p, And(q, Var("X"))))) == p
        assert guard(mu("X", And(p, Var("X")))) == FALSE

    def test_guarded_occurrences_keep_the_binder(self):
        f = nu("X", And(Var("X"), box(Var("X"))))
        assert guard(f) == nu("X", box(Var("X")))

    def test_inner_fixpoint_is_unfolded(self):
        inner = mu("Y", Or(And(Var("X"), p), diamond(Var("Y"))))
        f = nu("X", inner)
        assert guard(f) == nu("X", Or(p, diamond(inner)))

    def test_unfolding_keeps_the_formula_clean(self):
        f = mu("X", nu("Y", Or(Var("X"), And(p, box(Var("Y"))))))
        g = guard(f)
        assert is_clean(g)
        assert is_guarded(g)

    def test_semantics_on_random_formulas(self, rng, make_raw_formula):
        checked = 0
        for _ in range(150):
            f = clean(make_raw_formula(rng, guarded=False))
            g = guard(f)
            assert is_guarded(g)
            assert is_clean(g)
            for _ in range(4):
                size = rng.randint(1, 3)
                valuation = [[name for name in ("p", "q") if rng.random() < 0.5] for _ in range(size)]
                edges = [(s, t) for s in range(size) for t in range(size) if rng.random() < 0.4]
                model = kripke(valuation, edges)
                assert evaluate(model, g) == evaluate(model, f), f
            checked += f != g
        assert checked > 0

def naive_aconjunctive(f, least=None):
    """Direct recursion over the syntax tree."""
    if least is None:
        least = {g.var for g in subformulas(f) if isinstance(g, Fixpoint) and g.kind is FixKind.MU}
    if isinstance(f, And) and all(free_vars(part) & least for part in (f.left, f.right)):
        return False
    return all(naive_aconjunctive(child, least) for child in children(f))


def naive_depth(f):
    """Alternation depth by unfolding free variables into their binders."""
    bound = binders(f)

    def unfolded_free(g):
        seen, pending = set(), list(free_vars(g))
        while pending:
            var = pending.pop()
            if var not in seen:
                seen.add(var)
                pending.extend(free_vars(bound[var]))
        return seen

    def level(fix):
        inner = [
            g for g in subformulas(fix.body)
            if isinstance(g, Fixpoint) and g.kind is not fix.kind and fix.var in unfolded_free(g)
        ]
        return max((1 + level(g) for g in inner), default=1)

    return max((level(g) for g in subformulas(f) if isinstance(g, Fixpoint)), default=0)


@pytest.mark.slow
class TestReferenceAgreement:
    def test_classifiers_on_deep_random_formulas(self, rng, make_formula):
        for _ in range(1000):
            f = make_formula(rng, depth=rng.randint(1, 8))
            assert is_aconjunctive(f) == naive_aconjunctive(f)
            assert alternation_depth(f) == naive_depth(f)
