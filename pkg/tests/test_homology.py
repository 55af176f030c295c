import json

import pytest
from hypothesis import given

from khlab.bracket import jones
from khlab.complex import build_complex, build_dr_complex
from khlab.corpus import reidemeister_pairs
from khlab.diagram import mirror
from khlab.errors import ChainComplexError
from khlab.frobenius import LEE
from khlab.homology import (
    HomologyEntry,
    euler_check,
    homology,
    poincare,
    universal_coefficient_check,
)
from khlab.linalg import SparseMatrix
from khlab.polynomials import LaurentPoly

from oracle import oracle_homology
from strategies import diagrams

TREFOIL_FREE = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}


def test_unknot(unknot):
    t = homology(build_complex(unknot), "z")
    assert t.entries == {(0, -1): HomologyEntry(1), (0, 1): HomologyEntry(1)}
    assert str(poincare(t)) == "q^-1 + q"


def test_trefoil_rational(trefoil):
    t = homology(build_complex(trefoil), "q")
    assert t.ranks() == TREFOIL_FREE
    assert str(poincare(t)) == "q + q^3 + t^2*q^5 + t^3*q^9"


def test_trefoil_integral(trefoil):
    t = homology(build_complex(trefoil), "z")
    assert t.ranks() == TREFOIL_FREE
    assert t.torsion_entries() == {(3, 7): (2,)}


def test_trefoil_matches_oracle(trefoil):
    t = homology(build_complex(trefoil), "z")
    got = {k: (e.rank, e.torsion) for k, e in t.entries.items()}
    assert got == oracle_homology(trefoil)


def test_figure_eight_matches_oracle(figure_eight):
    t = homology(build_complex(figure_eight), "z")
    got = {k: (e.rank, e.torsion) for k, e in t.entries.items()}
    assert got == oracle_homology(figure_eight)
    assert t.torsion_entries() == {(-1, -3): (2,), (2, 3): (2,)}


def test_poincare_specializes_to_jones(standard_corpus):
    for e in standard_corpus:
        t = homology(build_complex(e.diagram), "q")
        assert poincare(t).at_t(-1) == jones(e.diagram), e.name


def test_field_ranks_and_uct(standard_corpus):
    for e in standard_corpus:
        cx = build_complex(e.diagram)
        tz, tq, t2 = homology(cx, "z"), homology(cx, "q"), homology(cx, "f2")
        assert tz.ranks() == tq.ranks(), e.name
        assert universal_coefficient_check(tz, t2), e.name
        assert all(not v.torsion for v in tq.entries.values())


def test_mirror_duality(standard_corpus):
    for e in standard_corpus:
        a = homology(build_complex(e.diagram), "q")
        b = homology(build_complex(mirror(e.diagram)), "q")
        assert b.ranks() == a.reflected(), e.name


def test_reidemeister_invariance():
    pairs = reidemeister_pairs()
    assert len(pairs) >= 10
    assert {p.move for p in pairs} == {"R1+", "R1-", "R2", "R3"}
    for p in pairs:
        for coeff in ("q", "f2", "z"):
            a = homology(build_complex(p.before), coeff)
            b = homology(build_complex(p.after), coeff)
            assert a == b, (p.name, coeff)


def test_euler_check_corpus(standard_corpus):
    for e in standard_corpus:
        assert euler_check(build_complex(e.diagram), e.diagram), e.name


def test_euler_check_negative_control(trefoil):
    cx = build_complex(trefoil)
    m = cx.differentials[1]
    (r, c), v = next(iter(sorted(m.data.items())))
    data = dict(m.data)
    data[(r, c)] = -v
    cx.differentials[1] = SparseMatrix(m.nrows, m.ncols, data)
    assert not euler_check(cx, trefoil)
    with pytest.raises(ChainComplexError):
        homology(cx, "z")


def test_lee_complex_rejected(trefoil):
    with pytest.raises(ChainComplexError):
        homology(build_complex(trefoil, LEE), "q")


def test_reports(trefoil):
    t = homology(build_complex(trefoil), "z")
    data = json.loads(t.to_json())
    assert data["coeff"] == "Z"
    assert {"i": 3, "j": 7, "rank": 0, "torsion": [2]} in data["entries"]
    assert {"t": 3, "q": 9, "coeff": 1} in data["poincare"]["terms"]
    lines = t.to_csv().splitlines()
    assert lines[0] == "i,j,rank,torsion"
    assert "3,7,0,2" in lines


def test_dr_homology_runs(trefoil):
    t = homology(build_dr_complex(trefoil), "q")
    assert t.total_rank() > 0


@given(diagrams(max_letters=5))
def test_poincare_property(d):
    t = homology(build_complex(d), "q")
    assert poincare(t).at_t(-1) == jones(d)
    assert all(r > 0 for r in t.ranks().values())
