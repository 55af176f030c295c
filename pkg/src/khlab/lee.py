"""Lee homology over Q, its quantum filtration and the Rasmussen invariant.

The Lee differential does not preserve ``j`` but never lowers it, so the
subspaces ``F^k = span{generators with g >= k}`` (with ``g = j + n+ - 2n-``)
form a subcomplex filtration.  Write ``I_k`` for the image of ``H(F^k)`` in
``H(C)``.  In the degree carrying the homology,

    dim I_k = dim(ker ∂_i ∩ F^k) - dim(im ∂_{i-1} ∩ F^k)
            = (#gens with g >= k - rank ∂_i|F^k) - (rank ∂_{i-1} - rank P_{<k} ∂_{i-1}),

where ``P_{<k}`` keeps only the rows of generators below level ``k``.  Then
``s_max`` is the largest ``k`` with ``I_k != 0`` and ``s_min`` the largest
``k`` with ``I_k = H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import BigradedComplex, build_complex, require_d_squared
from .diagram import KnotDiagram
from .errors import NotAKnotError
from .frobenius import LEE
from .linalg import Echelon, SparseMatrix, column_vectors, kernel_basis, rank_q
from .resolution import enumerate_states


@dataclass(frozen=True)
class FilteredClass:
    """A Lee homology class with one representative and its level ``S``."""

    degree: int
    representative: dict[int, Fraction]
    filtration_level: float


@dataclass
class LeeHomology:
    dims: dict[int, int]  # normalized homological degree -> dimension
    classes: list[FilteredClass] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())


@dataclass(frozen=True)
class RasmussenResult:
    s_min: int
    s_max: int
    s: int
    lee_dimension: int = 2

    @property
    def slice_genus_lower_bound(self) -> int:
        return abs(self.s) // 2

    def to_dict(self) -> dict:
        return {
            "lee_dimension": self.lee_dimension,
            "s_min": self.s_min,
            "s_max": self.s_max,
            "s": self.s,
            "slice_genus_lower_bound": self.slice_genus_lower_bound,
        }


def lee_complex(d: KnotDiagram, cap: int | None = None) -> BigradedComplex:
    cx = build_complex(d, LEE, cap)
    require_d_squared(cx)
    return cx


def _degree_ranks(cx: BigradedComplex) -> dict[int, int]:
    return {i: rank_q(m) for i, m in cx.differentials.items()}


def _levels(cx: BigradedComplex, i: int) -> list[int]:
    return [g.j + cx.shift.quantum for g in cx.generators.get(i, ())]


def filtration_level(cx: BigradedComplex, degree: int, vec) -> float:
    """``g(v)``: the smallest level among the generators in the support of ``v``.

    The zero chain sits in every ``F^k`` and gets ``math.inf``.
    """
    levels = _levels(cx, degree)
    support = [k for k, c in vec.items() if c]
    if not support:
        return math.inf
    return min(levels[k] for k in support)


def class_filtration_level(cx: BigradedComplex, degree: int, vec) -> float:
    """``S([v]) = max g(v + ∂w)``; ``math.inf`` when ``v`` is a boundary.

    ``[v]`` reaches ``F^k`` iff ``P_{<k} v`` lies in the column span of
    ``P_{<k} ∂_{i-1}``.
    """
    levels = _levels(cx, degree)
    d_in = cx.differentials.get(degree - 1, SparseMatrix(len(levels), 0))
    full = Echelon()
    for col in column_vectors(d_in):
        full.add(col)
    if full.contains(vec):
        return math.inf
    best = -math.inf
    for k in sorted(set(levels)):
        low = [r for r, g in enumerate(levels) if g < k]
        rows = set(low)
        ech = Echelon()
        for col in column_vectors(d_in):
            ech.add({r: v for r, v in col.items() if r in rows})
        if ech.contains({r: v for r, v in vec.items() if r in rows}):
            best = k
        else:
            break
    return best


def lee_homology(d: KnotDiagram, representatives: bool = False, cap: int | None = None) -> LeeHomology:
    """Rational Lee homology; optionally one representative cycle per basis class."""
    cx = lee_complex(d, cap)
    ranks = _degree_ranks(cx)
    dims = {}
    classes: list[FilteredClass] = []
    for i in cx.degrees:
        h = cx.size(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
        if not h:
            continue
        dims[i + cx.shift.homological] = h
        if representatives:
            classes.extend(_representatives(cx, i, h))
    return LeeHomology(dims, classes)


def _representatives(cx: BigradedComplex, i: int, h: int) -> list[FilteredClass]:
    ech = Echelon()
    d_in = cx.differentials.get(i - 1)
    if d_in is not None:
        for col in column_vectors(d_in):
            ech.add(col)
    out = []
    d_out = cx.differentials.get(i, SparseMatrix(0, cx.size(i)))
    for vec in kernel_basis(d_out):
        if ech.add(vec):
            out.append(FilteredClass(i + cx.shift.homological, vec, class_filtration_level(cx, i, vec)))
            if len(out) == h:
                break
    return out


def filtered_image_dims(cx: BigradedComplex, i: int, ranks: dict[int, int] | None = None) -> dict[int, int]:
    """``dim I_k`` for every generator level ``k`` occurring in degree ``i``."""
    ranks = ranks if ranks is not None else _degree_ranks(cx)
    levels = _levels(cx, i)
    d_out = cx.differentials.get(i, SparseMatrix(0, len(levels)))
    d_in = cx.differentials.get(i - 1, SparseMatrix(len(levels), 0))
    r_in = ranks.get(i - 1, 0)
    out = {}
    for k in sorted(set(levels)):
        high = [c for c, g in enumerate(levels) if g >= k]
        low = [r for r, g in enumerate(levels) if g < k]
        cycles = len(high) - rank_q(d_out.select(None, high))
        boundaries = r_in - rank_q(d_in.select(low, None))
        out[k] = cycles - boundaries
    return out


def rasmussen_s(d: KnotDiagram, cap: int | None = None) -> RasmussenResult:
    if not d.is_knot():
        raise NotAKnotError(f"s-invariant requires a knot (diagram has {d.component_count} components)")
    cx = lee_complex(d, cap)
    ranks = _degree_ranks(cx)
    total = 0
    s_min = s_max = None
    for i in cx.degrees:
        h = cx.size(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
        if not h:
            continue
        total += h
        img = filtered_image_dims(cx, i, ranks)
        top = max(k for k, v in img.items() if v > 0)
        full = max(k for k, v in img.items() if v == h)
        s_max = top if s_max is None else max(s_max, top)
        s_min = full if s_min is None else min(s_min, full)
    if total != 2 or s_min is None:
        raise ArithmeticError(f"Lee homology of a knot should have dimension 2, got {total}")
    if (s_min + s_max) % 2:
        raise ArithmeticError(f"s_min + s_max = {s_min + s_max} is odd")
    return RasmussenResult(s_min, s_max, (s_min + s_max) // 2, total)


def seifert_circle_count(d: KnotDiagram) -> int:
    """Loops of the all-A state; for a positive diagram these are the Seifert circles."""
    return next(iter(enumerate_states(d))).loop_count


def positive_diagram_s(d: KnotDiagram) -> int:
    """``n - r + 1`` for a positive diagram with ``n`` crossings and ``r`` Seifert circles."""
    if not d.is_positive():
        raise ValueError("formula applies to positive diagrams only")
    return d.crossing_count - seifert_circle_count(d) + 1
