"""Homology of bigraded complexes over Z, Q and Z/2.

For a complex whose differential preserves ``j`` the computation runs one
quantum grading at a time.  At ``(i, j)`` with ``n`` generators,

    free rank = n - rank ∂_i - rank ∂_{i-1}
    torsion   = invariant factors > 1 of ∂_{i-1}   (over Z only),

and the result is stored under the normalized bigrading given by the
complex's :class:`~khlab.complex.GradingShift`.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .bracket import bracket_q, jones
from .complex import BigradedComplex, check_j_preserved, euler_sum, j_blocks, require_d_squared
from .diagram import KnotDiagram
from .errors import ChainComplexError
from .linalg import rank_mod2, rank_q, smith_normal_form, torsion_parts
from .polynomials import LaurentPoly, PoincarePoly

COEFFS = {"z": "Z", "q": "Q", "f2": "Z2"}


def coeff_tag(coeff: str) -> str:
    key = coeff.lower()
    if key in COEFFS:
        return COEFFS[key]
    if key in ("z2", "f_2", "gf2"):
        return "Z2"
    raise ValueError(f"unknown coefficients {coeff!r}; expected one of z, q, f2")


@dataclass(frozen=True)
class HomologyEntry:
    rank: int
    torsion: tuple[int, ...] = ()


@dataclass
class HomologyTable:
    """Free ranks and prime-power torsion per normalized bigrading."""

    coeff: str
    entries: dict[tuple[int, int], HomologyEntry]

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.coeff == other.coeff and self.entries == other.entries

    def rank(self, i: int, j: int) -> int:
        e = self.entries.get((i, j))
        return e.rank if e else 0

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        e = self.entries.get((i, j))
        return e.torsion if e else ()

    def ranks(self) -> dict[tuple[int, int], int]:
        return {k: e.rank for k, e in self.entries.items() if e.rank}

    def torsion_entries(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return {k: e.torsion for k, e in self.entries.items() if e.torsion}

    def total_rank(self) -> int:
        return sum(e.rank for e in self.entries.values())

    def reflected(self) -> dict[tuple[int, int], int]:
        """Free ranks with ``(i, j) -> (-i, -j)``."""
        return {(-i, -j): r for (i, j), r in self.ranks().items()}

    def to_dict(self) -> dict:
        return {
            "coeff": self.coeff,
            "entries": [
                {"i": i, "j": j, "rank": e.rank, "torsion": list(e.torsion)}
                for (i, j), e in sorted(self.entries.items())
            ],
            "poincare": poincare(self).to_json(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "rank", "torsion"])
        for (i, j), e in sorted(self.entries.items()):
            w.writerow([i, j, e.rank, ";".join(map(str, e.torsion))])
        return buf.getvalue()


def homology(cx: BigradedComplex, coeff: str = "z") -> HomologyTable:
    """Homology per normalized bigrading.

    Raises :class:`ChainComplexError` if ``∂∘∂ != 0`` or if the differential
    does not preserve ``j`` (use :mod:`khlab.lee` for filtered complexes).
    """
    tag = coeff_tag(coeff)
    require_d_squared(cx)
    if not check_j_preserved(cx):
        raise ChainComplexError("differential does not preserve j; bigraded homology is undefined")

    blocks = {i: j_blocks(cx, i) for i in cx.degrees}
    # out[i][j] = (rank of ∂_i on the j block, invariant factors of it)
    info: dict[tuple[int, int], tuple[int, list[int]]] = {}

    def block_data(i: int, j: int) -> tuple[int, list[int]]:
        key = (i, j)
        if key not in info:
            cols = blocks.get(i, {}).get(j, [])
            rows = blocks.get(i + 1, {}).get(j, [])
            if not cols or not rows or i not in cx.differentials:
                info[key] = (0, [])
            else:
                m = cx.differentials[i].select(rows, cols)
                if tag == "Z":
                    inv, r = smith_normal_form(m)
                    info[key] = (r, inv)
                elif tag == "Q":
                    info[key] = (rank_q(m), [])
                else:
                    info[key] = (rank_mod2(m), [])
        return info[key]

    entries: dict[tuple[int, int], HomologyEntry] = {}
    for i in cx.degrees:
        for j, cols in blocks[i].items():
            out_rank, _ = block_data(i, j)
            in_rank, in_inv = block_data(i - 1, j)
            free = len(cols) - out_rank - in_rank
            tors = tuple(torsion_parts(in_inv)) if tag == "Z" else ()
            if free or tors:
                entries[cx.shift.apply(i, j)] = HomologyEntry(free, tors)
    return HomologyTable(tag, dict(sorted(entries.items())))


def poincare(table: HomologyTable) -> PoincarePoly:
    """``Σ t^i q^j rank H^{i,j}`` over the normalized bigrading."""
    return PoincarePoly(table.ranks())


def euler_check(cx: BigradedComplex, d: KnotDiagram) -> bool:
    """Whether the complex categorifies the bracket and its homology the Jones polynomial."""
    try:
        if euler_sum(cx) != bracket_q(d):
            return False
        table = homology(cx, "q")
    except ChainComplexError:
        return False
    return poincare(table).at_t(-1) == jones(d)


def universal_coefficient_check(table_z: HomologyTable, table_f2: HomologyTable) -> bool:
    """Compare Z/2 dimensions with the prediction from integral homology.

    For a differential of degree ``+1``, each ``Z/2^k`` summand at ``(i, j)``
    adds one dimension mod 2 at ``(i, j)`` and one at ``(i - 1, j)``.
    """
    predicted: dict[tuple[int, int], int] = {}
    for (i, j), e in table_z.entries.items():
        even = sum(1 for t in e.torsion if t % 2 == 0)
        for key, n in (((i, j), e.rank + even), ((i - 1, j), even)):
            if n:
                predicted[key] = predicted.get(key, 0) + n
    return predicted == table_f2.ranks()


def graded_euler_characteristic(table: HomologyTable) -> LaurentPoly:
    return poincare(table).at_t(-1)
