import math

import pytest

from khlab.corpus import get
from khlab.diagram import connected_sum, mirror, parse_diagram
from khlab.errors import NotAKnotError
from khlab.lee import (
    class_filtration_level,
    filtration_level,
    lee_complex,
    lee_homology,
    positive_diagram_s,
    rasmussen_s,
    seifert_circle_count,
)


@pytest.mark.parametrize(
    "name, dim",
    [("unknot", 2), ("trefoil_right", 2), ("figure_eight", 2), ("hopf", 4), ("unlink2", 4), ("torus_2_5", 2)],
)
def test_lee_dimension(name, dim):
    assert lee_homology(get(name)).dimension == dim


def test_lee_degrees_hopf():
    # both orientations of one component: the classes sit at 0 and at 2 lk = 2
    assert lee_homology(get("hopf")).dims == {0: 2, 2: 2}


def test_filtration_level_unknot(unknot):
    cx = lee_complex(unknot)
    assert filtration_level(cx, 0, {0: 1}) == 1
    assert filtration_level(cx, 0, {0: 1, 1: 1}) == -1
    assert filtration_level(cx, 0, {}) == math.inf


def test_class_levels_trefoil(trefoil):
    lee = lee_homology(trefoil, representatives=True)
    assert len(lee.classes) == 2
    levels = sorted(c.filtration_level for c in lee.classes)
    s = rasmussen_s(trefoil)
    assert s.s_min <= levels[0] and levels[-1] <= s.s_max
    cx = lee_complex(trefoil)
    assert class_filtration_level(cx, 0, {}) == math.inf


@pytest.mark.parametrize(
    "name, s",
    [
        ("unknot", 0),
        ("unknot_kink_neg", 0),
        ("trefoil_right", 2),
        ("trefoil_left", -2),
        ("figure_eight", 0),
        ("torus_2_5", 4),
        ("torus_2_7", 6),
        ("torus_3_4", 6),
        ("five_two", 2),
    ],
)
def test_rasmussen_values(name, s):
    r = rasmussen_s(get(name))
    assert r.s == s
    assert r.s_max - r.s_min == 2
    assert r.s == (r.s_min + r.s_max) // 2


def test_rasmussen_mirror(standard_corpus):
    for e in standard_corpus:
        if e.diagram.is_knot():
            assert rasmussen_s(mirror(e.diagram)).s == -rasmussen_s(e.diagram).s, e.name


def test_positive_formula(standard_corpus):
    positive = [e for e in standard_corpus if e.diagram.is_knot() and e.diagram.is_positive()]
    assert len(positive) >= 5
    for e in positive:
        assert rasmussen_s(e.diagram).s == positive_diagram_s(e.diagram), e.name


def test_seifert_circles(trefoil):
    assert seifert_circle_count(trefoil) == 2
    with pytest.raises(ValueError):
        positive_diagram_s(mirror(trefoil))


def test_additivity(trefoil, figure_eight):
    t5 = get("torus_2_5")
    for a, b in [(trefoil, trefoil), (trefoil, mirror(trefoil)), (trefoil, figure_eight), (mirror(trefoil), t5)]:
        assert rasmussen_s(connected_sum(a, b)).s == rasmussen_s(a).s + rasmussen_s(b).s


def test_link_rejected():
    with pytest.raises(NotAKnotError, match="s-invariant requires a knot"):
        rasmussen_s(get("hopf"))


def test_report_fields(trefoil):
    data = rasmussen_s(trefoil).to_dict()
    assert data == {"lee_dimension": 2, "s_min": 1, "s_max": 3, "s": 2, "slice_genus_lower_bound": 1}
