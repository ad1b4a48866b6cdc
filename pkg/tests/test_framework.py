import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import atomic_regenerating_corpus, explicit_corpus
from focusedsls.families import independent_subsets, normalize_family, powerset
from focusedsls.framework import (analyze, causality_digraph, charges, check_atomicity,
                                  check_regeneration, compute_T0, condition_powerset,
                                  evaluate_condition, flaw_charge, harmonic_kernel, pushforward,
                                  span)
from focusedsls.instance import ExplicitInstance, random_instance, two_coin
from focusedsls.walk import make_rng

P = frozenset


# -- causality -----------------------------------------------------------------

def test_two_coin_causality_is_self_only():
    rel = causality_digraph(two_coin())
    assert rel[0] == {0} and rel[1] == {1}


def test_flaw_fixed_to_flawless_has_no_out_arcs():
    inst = ExplicitInstance(3, [("f", [0])], {(0, 0): [(1, 0.5), (2, 0.5)]})
    assert causality_digraph(inst)[0] == set()


def test_causality_needs_new_or_same_flaw():
    # f at 0 moves to 1 where g is present; g was absent at 0, so f -> g.
    # g at 1 moves to 2 where f is present but f was absent at 1, so g -> f.
    inst = ExplicitInstance(3, [("f", [0, 2]), ("g", [0, 1])],
                            {(0, 0): [(1, 1.0)], (0, 2): [(1, 1.0)],
                             (1, 0): [(2, 1.0)], (1, 1): [(2, 1.0)]})
    rel = causality_digraph(inst)
    assert rel[0] == {1}        # g already present at 0 does not count from 0, but does from 2
    assert rel[1] == {0}


# -- charges and regeneration --------------------------------------------------

def test_two_coin_charges():
    inst = two_coin()
    for i in range(2):
        d, g = flaw_charge(inst, i)
        assert d == pytest.approx(1.0, abs=1e-12)
        assert g == pytest.approx(0.5, abs=1e-12)
        assert check_regeneration(inst, i) < 1e-12


def test_biased_two_coin_distortion():
    inst = two_coin(bias=0.75)
    d, g = flaw_charge(inst, 0)
    # nu(x0) = 3/4 * 1/2 = 3/8 against mu = 1/4
    assert d == pytest.approx(1.5, abs=1e-12)
    assert g == pytest.approx(0.75, abs=1e-12)
    assert check_regeneration(inst, 0) == pytest.approx(0.125, abs=1e-12)


def test_point_action_charge_is_one():
    n = 5
    inst = ExplicitInstance(n, [("f", [0])], {(0, 0): [(3, 1.0)]})
    d, g = flaw_charge(inst, 0)
    assert d == pytest.approx(n) and g == pytest.approx(1.0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), m=st.integers(1, 3))
def test_uniform_atomic_charge_is_largest_probability(seed, n, m):
    inst = random_instance(make_rng(seed), n, m, atomic=True, uniform_mu=True)
    for i in range(inst.n_flaws):
        biggest = max(p for (j, _), arcs in inst.actions.items() if j == i for _, p in arcs)
        assert flaw_charge(inst, i)[1] == pytest.approx(biggest, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 10), m=st.integers(1, 3),
       atomic=st.booleans())
def test_charge_identities(seed, n, m, atomic):
    inst = random_instance(make_rng(seed), n, m, atomic=atomic)
    for i in range(inst.n_flaws):
        nu = pushforward(inst, i)
        assert nu.sum() == pytest.approx(1.0, abs=1e-12)
        d, g = flaw_charge(inst, i)
        assert d >= 1 - 1e-12                      # nu and mu are both distributions
        assert g == pytest.approx(d * inst.flaw_measure(i), rel=1e-12)


# -- atomicity and harmonic kernel ---------------------------------------------

def test_two_coin_is_atomic():
    assert check_atomicity(two_coin()) == []


def test_collision_reported():
    inst = ExplicitInstance(3, [("f", [0, 1])],
                            {(0, 0): [(2, 1.0)], (0, 1): [(2, 0.5), (0, 0.5)]})
    assert check_atomicity(inst) == [(0, 2, P({0, 1}))]


def test_harmonic_proportional_to_mu():
    inst = ExplicitInstance(3, [("f", [0])], {(0, 0): [(1, 0.5), (2, 0.5)]},
                            measure_weight=[1, 1, 3])
    h = harmonic_kernel(inst)
    assert dict(h.actions[(0, 0)]) == pytest.approx({1: 0.25, 2: 0.75})


@pytest.mark.parametrize("name, inst", explicit_corpus())
def test_harmonic_is_idempotent_and_valid(name, inst):
    once = harmonic_kernel(inst)
    twice = harmonic_kernel(once)
    for key, arcs in once.actions.items():
        assert dict(arcs) == pytest.approx(dict(twice.actions[key]), abs=1e-15)


def test_two_coin_already_harmonic():
    inst = two_coin()
    assert harmonic_kernel(inst).actions == inst.actions


# -- span, families, conditions ------------------------------------------------

def test_span():
    assert span(two_coin(theta=[1, 0, 0, 0])) == set()
    assert span(two_coin()) == {0, 1}
    assert span(two_coin(theta=[0, 0, 0, 1])) == {0, 1}


def test_independent_subsets_example():
    rel = [P({1, 2}), P({0}), P()]            # 0 <-> 1, 0 -> 2
    got = set(independent_subsets(rel, {0, 1, 2}))
    assert got == {P(), P({0}), P({1}), P({2}), P({0, 2}), P({1, 2})}


def test_independent_subsets_without_mutual_arcs_is_powerset():
    rel = [P({1}), P({2}), P({0})]
    assert set(independent_subsets(rel, {0, 1, 2})) == set(powerset({0, 1, 2}))
    assert list(independent_subsets(rel, set())) == [P()]


def test_self_loops_do_not_block_singletons():
    rel = [P({0}), P({1})]
    assert set(independent_subsets(rel, {0, 1})) == {P(), P({0}), P({1}), P({0, 1})}


def test_two_coin_condition():
    zeta, delta = condition_powerset([0.5, 0.5], [1.0, 1.0], [{0}, {1}])
    assert zeta == [1.0, 1.0] and delta == 0.0
    zeta, delta = condition_powerset([0.5, 0.5], [2.0, 2.0], [{0}, {1}])
    assert zeta == pytest.approx([0.75, 0.75]) and delta == pytest.approx(0.25)


def test_empty_list_family_gives_ratio():
    zeta, _ = evaluate_condition([0.2, 0.3], [0.5, 3.0], [[P()], [P()]])
    assert zeta == pytest.approx([0.4, 0.1])


def test_psi_must_be_positive():
    with pytest.raises(ValueError):
        evaluate_condition([0.5], [0.0], [[P()]])


def test_T0_examples():
    inst = two_coin()
    assert compute_T0(inst, [1.0, 1.0], [P()]) == 0.0
    assert compute_T0(inst, [1.0, 1.0], powerset({0, 1})) == pytest.approx(2.0)
    n = 8
    point = ExplicitInstance(n, [("f", [0])], {(0, 0): [(1, 1.0)]},
                             theta_weight=[0] * (n - 1) + [1])
    assert compute_T0(point, [1.0], [P()]) == pytest.approx(math.log2(n))


@settings(max_examples=40, deadline=None)
@given(psi=st.lists(st.floats(0.01, 10), min_size=1, max_size=5))
def test_powerset_weight_is_product(psi):
    from focusedsls.families import family_weight
    assert family_weight(normalize_family(powerset(range(len(psi)))), psi) == \
        pytest.approx(math.prod(1 + p for p in psi), rel=1e-12)


def test_analyze_two_coin():
    rep = analyze(two_coin(), [2.0, 2.0])
    assert rep.delta == pytest.approx(0.25)
    assert rep.satisfied and rep.atomic
    assert rep.T0 == pytest.approx(math.log2(9))
    assert rep.steps_bound(3) == pytest.approx((math.log2(9) + 3) / 0.25)


def test_analyze_ind_matches_powerset_without_mutual_arcs():
    a = analyze(two_coin(), [2.0, 2.0], "powerset")
    b = analyze(two_coin(), [2.0, 2.0], "ind")
    assert a.zeta == pytest.approx(b.zeta)


@pytest.mark.parametrize("name, inst", atomic_regenerating_corpus())
def test_regenerating_corpus_has_charge_equal_measure(name, inst):
    for i, g in enumerate(charges(inst)):
        assert g == pytest.approx(inst.flaw_measure(i), abs=1e-12)
