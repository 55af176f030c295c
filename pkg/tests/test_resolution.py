import pytest
from hypothesis import given
from hypothesis import strategies as st

from khlab.diagram import parse_diagram
from khlab.errors import CapExceededError
from khlab.resolution import (
    Resolution,
    dump_states,
    enumerate_enhanced,
    enumerate_states,
    resolve,
    transitions,
)

from strategies import diagrams


def test_trefoil_extreme_states(trefoil):
    assert resolve(trefoil, Resolution.from_word("AAA")).loop_count == 2
    assert resolve(trefoil, Resolution.from_word("BBB")).loop_count == 3


def test_unknot_single_loop(unknot):
    assert resolve(unknot, Resolution(0, 0)).loop_count == 1


def test_trefoil_tier_order(trefoil):
    states = list(enumerate_states(trefoil))
    assert [s.loop_count for s in states] == [2, 1, 1, 1, 2, 2, 2, 3]
    assert [s.resolution.word for s in states] == ["AAA", "BAA", "ABA", "AAB", "BBA", "BAB", "ABB", "BBB"]


def test_state_counts():
    assert len(list(enumerate_states(parse_diagram("B[2; 1]")))) == 2


def test_cap():
    big = parse_diagram("B[2; " + ",".join(["1"] * 21) + "]")
    with pytest.raises(CapExceededError):
        next(enumerate_states(big))
    assert len(list(enumerate_states(parse_diagram("B[2; 1, 1]"), cap=2))) == 4
    with pytest.raises(CapExceededError):
        next(enumerate_states(parse_diagram("B[2; 1, 1]"), cap=1))


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("KHLAB_CAP", "2")
    with pytest.raises(CapExceededError):
        next(enumerate_states(parse_diagram("B[2; 1, 1, 1]")))


def test_enhanced_unknot(unknot):
    got = sorted((s.i, s.j) for s in enumerate_enhanced(unknot))
    assert got == [(0, -1), (0, 1)]


def test_enhanced_trefoil(trefoil):
    states = list(enumerate_enhanced(trefoil))
    assert len(states) == 4 + 6 + 12 + 8
    top = [s for s in states if s.state.resolution.word == "BBB" and s.labels == (1, 1, 1)]
    assert [(s.i, s.lam, s.j) for s in top] == [(3, -3, 0)]
    assert top[0].label_string() == "xxx"


def test_transitions_trefoil(trefoil):
    ts = transitions(trefoil, Resolution.from_word("AAA"))
    assert len(ts) == 3 and all(t.kind == "merge" for t in ts)
    ts = transitions(trefoil, Resolution.from_word("BBA"))
    assert [(t.site, t.kind) for t in ts] == [(2, "split")]
    assert transitions(trefoil, Resolution.from_word("BBB")) == []


def test_dump_format(trefoil):
    lines = dump_states(trefoil).splitlines()
    assert lines[0] == "word=AAA loops=2"
    assert lines[-1] == "word=BBB loops=3"


@given(diagrams(), st.data())
def test_loop_parity(d, data):
    if not d.crossing_count:
        return
    mask = data.draw(st.integers(0, 2 ** d.crossing_count - 1))
    r = Resolution(mask, d.crossing_count)
    site = data.draw(st.integers(0, d.crossing_count - 1))
    a = resolve(d, r).loop_count
    b = resolve(d, r.flip(site)).loop_count
    assert abs(a - b) == 1


@given(diagrams(), st.data())
def test_cube_commutes(d, data):
    n = d.crossing_count
    if n < 2:
        return
    mask = data.draw(st.integers(0, 2 ** n - 1))
    i, j = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    r = Resolution(mask, n)
    assert resolve(d, r.flip(i).flip(j)) == resolve(d, r.flip(j).flip(i))


@given(diagrams())
def test_enhanced_count_and_parity(d):
    states = list(enumerate_states(d))
    enhanced = list(enumerate_enhanced(d))
    assert len(enhanced) == sum(2 ** s.loop_count for s in states)
    for s in enhanced:
        assert (s.j - s.i - s.state.loop_count) % 2 == 0
        assert abs(s.lam) <= s.state.loop_count


@given(diagrams())
def test_transition_kind_matches_loop_count(d):
    for st_ in enumerate_states(d):
        for t in transitions(d, st_.resolution):
            after = resolve(d, t.target).loop_count
            assert t.target.b_count == st_.resolution.b_count + 1
            assert after == st_.loop_count + (1 if t.kind == "split" else -1)
