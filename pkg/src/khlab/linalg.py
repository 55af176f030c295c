"""Exact sparse linear algebra over Z, Q and Z/2.

Matrices coming out of a cube of resolutions are very sparse and almost all
of their entries are ``±1``.  Every routine here therefore starts with a
sparse elimination that only pivots on unit entries: such a pivot splits off
a ``1`` in the Smith form without changing the invariant factors of what is
left (the Schur complement stays integral).  Whatever survives is usually
tiny and is finished densely, with gcd-minimizing pivots for the Smith form
and fraction-free Bareiss elimination for rational rank.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping


class SparseMatrix:
    """Sparse matrix with exact entries, stored as ``{(row, col): value}``."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: Mapping[tuple[int, int], object] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.data = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        data: dict = {}
        for r, c, v in triplets:
            data[(r, c)] = data.get((r, c), 0) + v
        return cls(nrows, ncols, data)

    @classmethod
    def from_dense(cls, rows: list[list]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.data)

    def triplets(self) -> list[tuple[int, int, object]]:
        return [(r, c, v) for (r, c), v in sorted(self.data.items())]

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.data.items():
            out[r][c] = v
        return out

    def rows(self) -> dict[int, dict[int, object]]:
        out: dict[int, dict[int, object]] = {}
        for (r, c), v in self.data.items():
            out.setdefault(r, {})[c] = v
        return out

    def columns(self) -> dict[int, dict[int, object]]:
        out: dict[int, dict[int, object]] = {}
        for (r, c), v in self.data.items():
            out.setdefault(c, {})[r] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(c, r): v for (r, c), v in self.data.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = self.columns()
        out: dict = {}
        for (k, c), v in other.data.items():
            for r, a in cols.get(k, {}).items():
                out[(r, c)] = out.get((r, c), 0) + a * v
        return SparseMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.nrows, self.ncols, out)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def is_zero(self) -> bool:
        return not self.data

    def select(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> "SparseMatrix":
        """Submatrix on the given (ordered) row and column indices."""
        rmap = {r: k for k, r in enumerate(rows)} if rows is not None else None
        cmap = {c: k for k, c in enumerate(cols)} if cols is not None else None
        nr = len(rmap) if rmap is not None else self.nrows
        nc = len(cmap) if cmap is not None else self.ncols
        out = {}
        for (r, c), v in self.data.items():
            rr = rmap.get(r) if rmap is not None else r
            cc = cmap.get(c) if cmap is not None else c
            if rr is not None and cc is not None:
                out[(rr, cc)] = v
        return SparseMatrix(nr, nc, out)

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Matrix times a sparse column vector ``{index: value}``."""
        cols = self.columns()
        out: dict = {}
        for c, x in vec.items():
            for r, a in cols.get(c, {}).items():
                out[r] = out.get(r, 0) + a * x
        return {r: v for r, v in out.items() if v}

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


# --- unit-pivot elimination --------------------------------------------------


def _unit_reduce(rows: dict[int, dict[int, int]]) -> tuple[int, dict[int, dict[int, int]]]:
    """Eliminate on ``±1`` pivots until none remain.

    Returns the number of pivots and the remaining rows (the Schur
    complement), which have the same nonunit invariant factors as the input.
    The row dicts are modified in place.
    """
    col_index: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_index.setdefault(c, set()).add(r)

    pivots = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda k: len(rows[k])):
            row = rows.get(r)
            if row is None:
                continue
            best = None
            for c, v in row.items():
                if v == 1 or v == -1:
                    cost = len(col_index[c])
                    if best is None or cost < best[0]:
                        best = (cost, c, v)
                        if cost == 1:
                            break
            if best is None:
                continue
            _, c, v = best
            for r2 in list(col_index[c]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                f = row2[c] * v
                for cc, vv in row.items():
                    nv = row2.get(cc, 0) - f * vv
                    if nv:
                        if cc not in row2:
                            col_index[cc].add(r2)
                        row2[cc] = nv
                    elif cc in row2:
                        del row2[cc]
                        col_index[cc].discard(r2)
                if not row2:
                    del rows[r2]
            for cc in row:
                col_index[cc].discard(r)
            del col_index[c]
            del rows[r]
            pivots += 1
            progress = True
    return pivots, rows


def _int_rows(m: SparseMatrix) -> dict[int, dict[int, int]]:
    rows = m.rows()
    for row in rows.values():
        for c, v in row.items():
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError("integer routine called on a non-integral matrix")
                row[c] = v.numerator
    return rows


def _to_dense(rows: dict[int, dict[int, int]]) -> list[list[int]]:
    cols = sorted({c for row in rows.values() for c in row})
    cidx = {c: k for k, c in enumerate(cols)}
    out = []
    for r in sorted(rows):
        line = [0] * len(cols)
        for c, v in rows[r].items():
            line[cidx[c]] = v
        out.append(line)
    return out


# --- dense kernels -----------------------------------------------------------


def dense_snf_diagonal(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix, in divisibility order."""
    a = [list(row) for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # gcd-minimizing pivot: the smallest nonzero magnitude in the active block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv and piv[0] == 1:
                break
        if piv is None:
            break
        _, i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # row and column cleared; pivot must divide the rest
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for k in range(t, n):
                    rt[k] += rb[k]
                continue
            # move the smallest entry of row/column t into the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return _normalize_chain(diag)


def _normalize_chain(diag: list[int]) -> list[int]:
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def bareiss_rank(a: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [list(row) for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            ai = a[i]
            f = ai[col]
            for k in range(col + 1, n):
                ai[k] = (p * ai[k] - f * a[rank][k]) // prev
            ai[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


# --- public entry points -----------------------------------------------------


def smith_normal_form(m: SparseMatrix | list[list[int]]) -> tuple[list[int], int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` and the rank of an integer matrix."""
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(m) if m else SparseMatrix(0, 0)
    pivots, rest = _unit_reduce(_int_rows(m))
    tail = dense_snf_diagonal(_to_dense(rest)) if rest else []
    inv = [1] * pivots + tail
    return inv, len(inv)


def rank_q(m: SparseMatrix) -> int:
    """Rank over the rationals (entries must be integers)."""
    pivots, rest = _unit_reduce(_int_rows(m))
    return pivots + (bareiss_rank(_to_dense(rest)) if rest else 0)


def rank_mod2(m: SparseMatrix) -> int:
    """Rank over Z/2 using bit-packed rows."""
    packed: dict[int, int] = {}
    for (r, c), v in m.data.items():
        if v % 2:
            packed[r] = packed.get(r, 0) ^ (1 << c)
    basis: dict[int, int] = {}
    for row in packed.values():
        while row:
            top = row.bit_length() - 1
            if top in basis:
                row ^= basis[top]
            else:
                basis[top] = row
                break
    return len(basis)


def rank(m: SparseMatrix, coeff: str = "q") -> int:
    if coeff in ("q", "z"):
        return rank_q(m)
    if coeff == "f2":
        return rank_mod2(m)
    raise ValueError(f"unknown coefficient ring {coeff!r}")


def prime_power_parts(n: int) -> list[int]:
    """Split ``n > 1`` into its prime-power factors, e.g. 12 -> [3, 4]."""
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            parts.append(q)
        p += 1
    if n > 1:
        parts.append(n)
    return sorted(parts)


def torsion_parts(invariants: Iterable[int]) -> list[int]:
    out: list[int] = []
    for d in invariants:
        if d > 1:
            out.extend(prime_power_parts(d))
    return sorted(out)


# --- rational echelon forms --------------------------------------------------


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of ``Q^n``.

    Vectors are sparse dicts ``{index: Fraction}``.  ``reduce`` returns the
    remainder of a vector against the current basis; ``add`` inserts it if
    it is independent.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, object]) -> dict[int, Fraction]:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        while v:
            top = max(v)
            row = self.pivots.get(top)
            if row is None:
                # reduce remaining lower entries too, for a canonical remainder
                lead = top
                rest = {k: x for k, x in v.items() if k != lead}
                return {lead: v[lead], **self._reduce_below(rest)}
            f = v[top]
            for k, x in row.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def _reduce_below(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        while v:
            top = max(v)
            row = self.pivots.get(top)
            if row is None:
                out[top] = v.pop(top)
                continue
            f = v[top]
            for k, x in row.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return out

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, object]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        top = max(v)
        lead = v[top]
        self.pivots[top] = {k: x / lead for k, x in v.items()}
        return True


def kernel_basis(m: SparseMatrix) -> list[dict[int, Fraction]]:
    """Basis of the right null space over Q, as sparse column vectors."""
    rows = [{c: Fraction(v) for c, v in row.items()} for _, row in sorted(m.rows().items())]
    pivot_rows: dict[int, dict[int, Fraction]] = {}  # pivot column -> normalized row
    for row in rows:
        for pc, prow in pivot_rows.items():
            f = row.get(pc)
            if f:
                for k, x in prow.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        pc = min(row)
        lead = row[pc]
        row = {k: x / lead for k, x in row.items()}
        for other in pivot_rows.values():
            f = other.get(pc)
            if f:
                for k, x in row.items():
                    nv = other.get(k, 0) - f * x
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivot_rows[pc] = row
    free = [c for c in range(m.ncols) if c not in pivot_rows]
    basis = []
    for fcol in free:
        vec = {fcol: Fraction(1)}
        for pc, prow in pivot_rows.items():
            x = prow.get(fcol)
            if x:
                vec[pc] = -x
        basis.append(vec)
    return basis


def column_vectors(m: SparseMatrix) -> Iterator[dict[int, object]]:
    cols = m.columns()
    for c in sorted(cols):
        yield cols[c]
