import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from swisscheese.allocation import COMPLEMENT, check_axioms, compose_all
from swisscheese.cheese import (
    OverlapPair,
    PokesOut,
    SwissCheese,
    delta,
    is_classical,
)
from swisscheese.classicalise import (
    classicalise,
    find_violation,
    replay_trace,
    step_merge,
    step_shrink,
    trace_to_dict,
)
from swisscheese.errors import HypothesisError, InvalidInputError, PreconditionError
from swisscheese.generate import nested_tower, protruding_fan, random_cheese, tangent_chain
from swisscheese.geometry import cdisc, disc

TAU = 1e-9


def test_find_violation_examples(worked):
    assert find_violation(SwissCheese(cdisc(0, 2), [disc(0, 1)])) is None
    assert find_violation(worked) == OverlapPair(0, 1)
    assert find_violation(SwissCheese(cdisc(0, 2), [disc(2, 0.5)])) == PokesOut(0)


def test_overlap_reported_before_poke_out():
    c = SwissCheese(cdisc(0, 2), [disc(2, 0.5), disc(0, 0.5), disc(0.5, 0.5)])
    assert find_violation(c) == OverlapPair(1, 2)


def test_step_merge_worked(worked):
    s = step_merge(worked, 0, 1)
    assert s.kind == "merge"
    assert s.after == SwissCheese(cdisc(0, 4), [disc(-0.25, 1.75)])
    assert delta(s.before) == 2 and delta(s.after) == 2.25


def test_step_merge_duplicate():
    c = SwissCheese(cdisc(0, 5), [disc(1, 1), disc(1, 1), disc(-2, 0.5)])
    s = step_merge(c, 0, 1)
    assert s.after == SwissCheese(cdisc(0, 5), [disc(1, 1), disc(-2, 0.5)])
    assert delta(s.after) == delta(c) + 1


def test_step_merge_nested_keeps_larger():
    c = SwissCheese(cdisc(0, 5), [disc(0.2, 0.3), disc(0, 1)])
    s = step_merge(c, 0, 1)
    assert s.after == SwissCheese(cdisc(0, 5), [disc(0, 1)])
    assert s.map.assignment.tolist() == [0, 0]


def test_step_merge_index_bookkeeping():
    c = SwissCheese(cdisc(0, 9), [disc(-5, 1), disc(0, 1), disc(5, 1), disc(1, 1), disc(7, 1)])
    s = step_merge(c, 3, 1)
    assert s.violation == OverlapPair(1, 3)
    assert s.map.assignment.tolist() == [0, 1, 2, 1, 3]
    assert len(s.after) == 4
    assert check_axioms(s.map).passed


def test_step_merge_rejects_bad_input(worked):
    with pytest.raises(PreconditionError):
        step_merge(worked, 0, 0)
    with pytest.raises(PreconditionError):
        step_merge(worked, 0, 2)
    with pytest.raises(PreconditionError):
        step_merge(SwissCheese(cdisc(0, 9), [disc(0, 1), disc(5, 1)]), 0, 1)


def test_step_shrink_examples():
    s = step_shrink(SwissCheese(cdisc(0, 2), [disc(2, 0.5)]), 0)
    assert s.kind == "shrink"
    assert s.after.outer.radius == pytest.approx(1.75, abs=1e-15)
    assert s.after.outer.center.x == pytest.approx(-0.25, abs=1e-15)
    assert len(s.after) == 0
    assert delta(s.after) == pytest.approx(1.75, abs=1e-15)
    assert s.map.assignment.tolist() == [COMPLEMENT]


def test_step_shrink_vacuous():
    c = SwissCheese(cdisc(0, 1), [disc(0, 0.2), disc(5, 0.3)])
    s = step_shrink(c, 1)
    assert s.after == SwissCheese(cdisc(0, 1), [disc(0, 0.2)])
    assert delta(s.after) == pytest.approx(delta(c) + 0.3, abs=1e-15)


def test_step_shrink_internal_tangency():
    c = SwissCheese(cdisc(0, 1), [disc(0.5, 0.5)])
    s = step_shrink(c, 0)
    # r' = (d + R - r) / 2 with d = 0.5
    assert s.after.outer.radius == pytest.approx(0.5, abs=1e-15)
    assert s.after.outer.center.x == pytest.approx(-0.5, abs=1e-15)


def test_step_shrink_rejects_bad_input():
    with pytest.raises(PreconditionError):
        step_shrink(SwissCheese(cdisc(0, 2), [disc(0, 1)]), 0)
    with pytest.raises(PreconditionError):
        step_shrink(SwissCheese(cdisc(0, 2), [disc(2, 1)]), 1)
    with pytest.raises(HypothesisError):
        step_shrink(SwissCheese(cdisc(0, 1), [disc(1, 0.6), disc(-1, 0.6)]), 0)


def test_classicalise_fixed_point():
    c = SwissCheese(cdisc(0, 2), [disc(0, 1)])
    out, trace = classicalise(c)
    assert out == c and len(trace) == 0
    assert trace.overall.assignment.tolist() == [0]


def test_classicalise_worked(worked):
    out, trace = classicalise(worked)
    assert out == SwissCheese(cdisc(0, 4), [disc(-0.25, 1.75)])
    assert len(trace) == 1 and trace.steps[0].kind == "merge"


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_classicalise_duplicates(n):
    c = SwissCheese(cdisc(0, n + 2), [disc(0, 1)] * n)
    out, trace = classicalise(c)
    assert out == SwissCheese(cdisc(0, n + 2), [disc(0, 1)])
    assert len(trace) == n - 1
    assert delta(out) == delta(c) + (n - 1)


def test_two_step_run():
    c = SwissCheese(cdisc(0, 2), [disc(1.5, 0.5), disc(1.0, 0.4)])
    out, trace = classicalise(c)
    assert [s.kind for s in trace.steps] == ["merge", "shrink"]
    # the merge keeps disc(1.5, 0.5): d + 0.4 = 0.9 > 0.5, so the enclosing disc is
    # centred at 1.3 with radius 0.7
    merged = trace.steps[0].after.disc(0)
    assert merged.center.x == pytest.approx(1.3, abs=1e-15)
    assert merged.radius == pytest.approx(0.7, abs=1e-15)
    assert out.outer.center.x == pytest.approx(-0.7, abs=1e-15)
    assert out.outer.radius == pytest.approx(1.3, abs=1e-15)
    assert len(out) == 0
    assert trace.overall.assignment.tolist() == [COMPLEMENT, COMPLEMENT]
    assert [delta(s.before) for s in trace.steps] == pytest.approx([1.1, 1.3])
    assert delta(out) == pytest.approx(1.3)


def test_nested_tower_uses_merges():
    out, trace = classicalise(nested_tower(3))
    assert [s.kind for s in trace.steps] == ["merge", "merge"]
    assert out == SwissCheese(cdisc(0, 4), [disc(0, 1)])


def test_tangent_chain_collapses():
    out, trace = classicalise(tangent_chain(4))
    assert is_classical(out)
    assert len(trace) >= 1


def test_protruding_fan_shrinks():
    out, trace = classicalise(protruding_fan(4))
    assert [s.kind for s in trace.steps] == ["shrink"] * 4
    assert out.outer.radius >= 2 - 4 * 0.25
    assert is_classical(out)


def test_hypothesis_error_message():
    c = SwissCheese(cdisc(0, 1), [disc(0, 0.6), disc(0.1, 0.4)])
    with pytest.raises(HypothesisError, match="delta"):
        classicalise(c)


def test_unnormalized_rejected():
    with pytest.raises(PreconditionError):
        classicalise(SwissCheese(cdisc(0, 1), [disc(0, 0)]))


def test_trace_json_and_replay():
    c = SwissCheese(cdisc(0, 2), [disc(1.5, 0.5), disc(1.0, 0.4)])
    _, trace = classicalise(c)
    obj = json.loads(json.dumps(trace_to_dict(trace)))
    assert [s["kind"] for s in obj["steps"]] == ["merge", "shrink"]
    assert obj["overall"] == {"complement": "complement", "discs": ["complement", "complement"]}
    steps, overall = replay_trace(c, obj)
    assert overall == trace.overall
    assert compose_all(c, [s.map for s in steps]) == overall
    for mine, theirs in zip(steps, trace.steps):
        assert mine.map == theirs.map


@pytest.mark.parametrize("obj", [
    {},
    {"steps": [{"kind": "merge", "indices": [0], "after": None}]},
    {"steps": [{"kind": "explode", "indices": [0], "after": None}]},
])
def test_replay_rejects_malformed(worked, obj):
    with pytest.raises(InvalidInputError):
        replay_trace(worked, obj)


cheese_args = st.tuples(st.integers(0, 60), st.integers(0, 2 ** 64 - 1),
                        st.floats(0.05, 0.9), st.sampled_from([0.0, 0.5, 0.9]))


@given(cheese_args)
def test_classicalise_properties(args):
    c = random_cheese(*args)
    out, trace = classicalise(c)
    assert is_classical(out, TAU)
    assert len(trace) <= len(c)
    assert delta(out) >= delta(c) - len(c) * TAU
    # each step removes exactly one disc
    assert len(out) == len(c) - len(trace)
    for prev, s in zip((c,) + tuple(t.after for t in trace.steps), trace.steps):
        assert s.before == prev


@given(cheese_args)
def test_classicalise_idempotent(args):
    out, _ = classicalise(random_cheese(*args))
    again, trace = classicalise(out)
    assert again == out and len(trace) == 0


def test_overall_map_is_recomposition(rng):
    c = random_cheese(80, 99, 0.9, 0.9)
    _, trace = classicalise(c)
    assert len(trace) > 5
    assert compose_all(c, [s.map for s in trace.steps]) == trace.overall
    assert np.all(trace.overall.assignment >= COMPLEMENT)


def test_result_depends_on_move_order():
    # three pairwise overlapping discs: merging (0, 1) first and merging (1, 2) first
    # give different final discs, so classicalisation is not confluent
    c = SwissCheese(cdisc(0, 10), [disc(0, 1), disc(1.5, 1), disc(0.75 + 1.2j, 1)])
    default, trace = classicalise(c)
    assert [s.violation for s in trace.steps] == [OverlapPair(0, 1), OverlapPair(0, 1)]
    assert default.disc(0).radius == pytest.approx(1.975, abs=1e-15)
    other, _ = classicalise(step_merge(c, 1, 2).after)
    assert is_classical(default) and is_classical(other)
    assert other.disc(0).radius == pytest.approx(1.9912742924521227, rel=1e-12)
    assert other != default
    # both outcomes keep a positive margin; the default order happens to keep more
    assert delta(other) > 0 and delta(default) > delta(other)
