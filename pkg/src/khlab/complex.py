"""Bigraded chain complexes built on the cube of resolutions.

Generators of degree ``i`` are the enhanced states with ``i`` B-smoothings,
listed state by state in the order of :func:`khlab.resolution.enumerate_states`
and, within a state, in lexicographic label order.  The partial map at an
A-site ``τ`` multiplies the two merging loop labels or comultiplies the
splitting one; the full differential is the signed sum

    ∂ = Σ_τ (-1)^{#B-sites before τ} ∂_τ.

The same construction runs for any :class:`~khlab.frobenius.FrobeniusAlgebraSpec`,
so Lee's complex is ``build_complex(d, LEE)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .bracket import LaurentPoly
from .diagram import PD_CONVENTION, KnotDiagram
from .errors import ChainComplexError
from .frobenius import KHOVANOV, FrobeniusAlgebraSpec
from .linalg import SparseMatrix
from .resolution import (
    LABEL_NAMES,
    Resolution,
    ResolvedState,
    SiteTransition,
    check_cap,
    resolve,
    tier_masks,
    transition,
)

SIGN_RULE = "grassmann: (-1)^(number of B-smoothed sites with smaller index)"
DR_SIGN_RULE = "wedge: dx_t ^ w sorted, (-1)^(number of wedge sites with smaller index)"
DEFAULT_DR_CAP = 8


@dataclass(frozen=True)
class GradingShift:
    """Shift taking raw ``(i, j)`` to the normalized bigrading."""

    homological: int
    quantum: int

    @classmethod
    def of(cls, d: KnotDiagram) -> "GradingShift":
        return cls(-d.n_minus, d.n_plus - 2 * d.n_minus)

    def apply(self, i: int, j: int) -> tuple[int, int]:
        return i + self.homological, j + self.quantum


@dataclass(frozen=True)
class Generator:
    mask: int
    labels: tuple[int, ...]
    j: int
    wedge: int = 0

    def word(self, size: int) -> str:
        return Resolution(self.mask, size).word

    @property
    def key(self) -> tuple:
        return self.mask, self.labels, self.wedge


@dataclass
class BigradedComplex:
    """Generators per degree and the differentials ``C^i -> C^{i+1}``.

    ``differentials[i]`` has shape ``(len(generators[i+1]), len(generators[i]))``.
    """

    kind: str
    algebra: str
    crossing_count: int
    generators: dict[int, list[Generator]]
    differentials: dict[int, SparseMatrix]
    shift: GradingShift
    index: dict[int, dict[tuple, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {i: {g.key: k for k, g in enumerate(gs)} for i, gs in self.generators.items()}

    @property
    def degrees(self) -> list[int]:
        return sorted(self.generators)

    def size(self, i: int) -> int:
        return len(self.generators.get(i, ()))

    def differential(self, i: int) -> SparseMatrix:
        m = self.differentials.get(i)
        if m is None:
            return SparseMatrix(self.size(i + 1), self.size(i))
        return m

    def j_values(self, i: int) -> list[int]:
        return [g.j for g in self.generators.get(i, ())]

    def total_rank(self) -> int:
        return sum(len(g) for g in self.generators.values())


# --- construction -----------------------------------------------------------


def _partial_terms(spec: FrobeniusAlgebraSpec, t: SiteTransition, labels: tuple[int, ...], n_target: int):
    """Target labelings and coefficients of the unsigned partial ``∂_τ``."""
    base = [0] * n_target
    for k, lab in enumerate(labels):
        base[t.loop_map[k]] = lab
    out = []
    if t.kind == "merge":
        a, b = t.source_loops
        (tgt,) = t.target_loops
        for val, c in spec.mul_terms(labels[a], labels[b]):
            new = list(base)
            new[tgt] = val
            out.append((tuple(new), c))
    else:
        (src,) = t.source_loops
        t1, t2 = t.target_loops
        for (v1, v2), c in spec.comul_terms(labels[src]):
            new = list(base)
            new[t1], new[t2] = v1, v2
            out.append((tuple(new), c))
    return out


def _grassmann_sign(mask: int, site: int) -> int:
    return -1 if bin(mask & ((1 << site) - 1)).count("1") % 2 else 1


class _Cube:
    """Cached resolved states and transitions of one diagram."""

    def __init__(self, d: KnotDiagram):
        self.d = d
        self.n = d.crossing_count
        self.states: dict[int, ResolvedState] = {}
        self.trans: dict[tuple[int, int], SiteTransition] = {}

    def state(self, mask: int) -> ResolvedState:
        st = self.states.get(mask)
        if st is None:
            st = self.states[mask] = resolve(self.d, Resolution(mask, self.n))
        return st

    def transition(self, mask: int, site: int) -> SiteTransition:
        key = (mask, site)
        t = self.trans.get(key)
        if t is None:
            t = self.trans[key] = transition(self.d, self.state(mask), self.state(mask | 1 << site), site)
        return t

    def masks(self, b: int):
        return tier_masks(self.n, b)


def _enhanced_generators(cube: _Cube, b: int) -> list[Generator]:
    out = []
    for mask in cube.masks(b):
        st = cube.state(mask)
        for labels in product((0, 1), repeat=st.loop_count):
            out.append(Generator(mask, labels, b + len(labels) - 2 * sum(labels)))
    return out


def _partial_matrix(
    cube: _Cube,
    spec: FrobeniusAlgebraSpec,
    src: list[Generator],
    tgt_index: dict[tuple, int],
    n_target: int,
    sites=None,
    signed: bool = True,
) -> SparseMatrix:
    data: dict[tuple[int, int], int] = {}
    for col, g in enumerate(src):
        for site in range(cube.n):
            if g.mask >> site & 1 or (sites is not None and site not in sites):
                continue
            t = cube.transition(g.mask, site)
            sign = _grassmann_sign(g.mask, site) if signed else 1
            tmask = g.mask | 1 << site
            n_loops = cube.state(tmask).loop_count
            for labels, c in _partial_terms(spec, t, g.labels, n_loops):
                row = tgt_index[(tmask, labels, 0)]
                data[(row, col)] = data.get((row, col), 0) + sign * c
    return SparseMatrix(n_target, len(src), data)


def build_complex(d: KnotDiagram, spec: FrobeniusAlgebraSpec = KHOVANOV, cap: int | None = None) -> BigradedComplex:
    """The (unnormalized) Khovanov-type complex of ``d`` over the algebra ``spec``."""
    check_cap(d, cap)
    cube = _Cube(d)
    n = cube.n
    gens = {b: _enhanced_generators(cube, b) for b in range(n + 1)}
    index = {b: {g.key: k for k, g in enumerate(gs)} for b, gs in gens.items()}
    diffs = {b: _partial_matrix(cube, spec, gens[b], index[b + 1], len(gens[b + 1])) for b in range(n)}
    return BigradedComplex(spec.name, spec.name, n, gens, diffs, GradingShift.of(d), index)


def partial_map(d: KnotDiagram, spec: FrobeniusAlgebraSpec, site: int, degree: int, signed: bool = True) -> SparseMatrix:
    """The single-site map ``∂_τ: C^i -> C^{i+1}`` in the generator order of :func:`build_complex`."""
    cube = _Cube(d)
    src = _enhanced_generators(cube, degree)
    tgt = _enhanced_generators(cube, degree + 1)
    index = {g.key: k for k, g in enumerate(tgt)}
    return _partial_matrix(cube, spec, src, index, len(tgt), sites={site}, signed=signed)


def build_dr_complex(
    d: KnotDiagram, spec: FrobeniusAlgebraSpec = KHOVANOV, cap: int | None = None
) -> BigradedComplex:
    """The wedge complex: generators ``s dx_ω`` graded by ``|ω|``.

    ``∂(s dx_ω) = Σ_τ ∂_τ(s) dx_τ ∧ dx_ω`` over A-sites ``τ`` of ``s`` not in
    ``ω``; the sign comes from sorting ``dx_τ`` into ``ω``.
    """
    check_cap(d, DEFAULT_DR_CAP if cap is None else cap)
    cube = _Cube(d)
    n = cube.n
    enhanced = [g for b in range(n + 1) for g in _enhanced_generators(cube, b)]
    gens: dict[int, list[Generator]] = {}
    for k in range(n + 1):
        gens[k] = [Generator(g.mask, g.labels, g.j, w) for w in tier_masks(n, k) for g in enhanced]
    index = {k: {g.key: c for c, g in enumerate(gs)} for k, gs in gens.items()}
    diffs = {}
    for k in range(n):
        data: dict[tuple[int, int], int] = {}
        tgt_index = index[k + 1]
        for col, g in enumerate(gens[k]):
            busy = g.mask | g.wedge
            for site in range(n):
                if busy >> site & 1:
                    continue
                t = cube.transition(g.mask, site)
                sign = _grassmann_sign(g.wedge, site)
                tmask = g.mask | 1 << site
                n_loops = cube.state(tmask).loop_count
                for labels, c in _partial_terms(spec, t, g.labels, n_loops):
                    row = tgt_index[(tmask, labels, g.wedge | 1 << site)]
                    data[(row, col)] = data.get((row, col), 0) + sign * c
        diffs[k] = SparseMatrix(len(gens[k + 1]), len(gens[k]), data)
    return BigradedComplex("dr", spec.name, n, gens, diffs, GradingShift(0, 0), index)


# --- checks and summaries ---------------------------------------------------


def d_squared_residual(cx: BigradedComplex) -> dict[int, int]:
    """Number of nonzero entries of ``∂_{i+1} ∂_i`` per degree ``i``."""
    out = {}
    for i in cx.degrees:
        if i + 1 in cx.differentials and i in cx.differentials:
            out[i] = (cx.differentials[i + 1] @ cx.differentials[i]).nnz
    return out


def check_d_squared(cx: BigradedComplex) -> bool:
    return all(v == 0 for v in d_squared_residual(cx).values())


def require_d_squared(cx: BigradedComplex) -> None:
    bad = {i: v for i, v in d_squared_residual(cx).items() if v}
    if bad:
        raise ChainComplexError(f"d∘d != 0 in degrees {sorted(bad)}; the sign assignment is inconsistent")


def check_j_preserved(cx: BigradedComplex) -> bool:
    """Every nonzero entry joins generators of equal ``j``."""
    for i, m in cx.differentials.items():
        src, tgt = cx.generators[i], cx.generators[i + 1]
        if any(src[c].j != tgt[r].j for (r, c) in m.data):
            return False
    return True


def check_j_filtered(cx: BigradedComplex) -> bool:
    """Every nonzero entry maps ``j`` to some ``j' >= j``."""
    for i, m in cx.differentials.items():
        src, tgt = cx.generators[i], cx.generators[i + 1]
        if any(tgt[r].j < src[c].j for (r, c) in m.data):
            return False
    return True


def dims(cx: BigradedComplex) -> dict[tuple[int, int], int]:
    """``dim C^{ij}`` over raw gradings."""
    out: dict[tuple[int, int], int] = {}
    for i, gs in cx.generators.items():
        for g in gs:
            out[(i, g.j)] = out.get((i, g.j), 0) + 1
    return out


def euler_sum(cx: BigradedComplex) -> LaurentPoly:
    """``Σ (-1)^i q^j dim C^{ij}``."""
    terms: dict[int, int] = {}
    for (i, j), n in dims(cx).items():
        terms[j] = terms.get(j, 0) + (-1) ** i * n
    return LaurentPoly(terms, "q")


def j_blocks(cx: BigradedComplex, i: int) -> dict[int, list[int]]:
    """Generator indices of degree ``i`` grouped by quantum grading."""
    out: dict[int, list[int]] = {}
    for k, g in enumerate(cx.generators.get(i, ())):
        out.setdefault(g.j, []).append(k)
    return out


def complex_to_dict(cx: BigradedComplex) -> dict:
    n = cx.crossing_count
    return {
        "kind": cx.kind,
        "algebra": cx.algebra,
        "sign_rule": DR_SIGN_RULE if cx.kind == "dr" else SIGN_RULE,
        "pd_convention": PD_CONVENTION,
        "shift": {"homological": cx.shift.homological, "quantum": cx.shift.quantum},
        "generators": {
            str(i): [
                {"word": g.word(n), "labels": "".join(LABEL_NAMES[v] for v in g.labels), "j": g.j}
                | ({"wedge": g.wedge} if cx.kind == "dr" else {})
                for g in gs
            ]
            for i, gs in sorted(cx.generators.items())
        },
        "differentials": {
            str(i): {"shape": list(m.shape), "triplets": [list(t) for t in m.triplets()]}
            for i, m in sorted(cx.differentials.items())
        },
    }


def complex_to_json(cx: BigradedComplex) -> str:
    return json.dumps(complex_to_dict(cx), sort_keys=True)
