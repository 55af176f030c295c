"""The two rank-2 Frobenius algebras on the basis ``{1, x}``.

Elements of ``V^{⊗k}`` are integer vectors of length ``2^k`` over the
tensor basis ordered lexicographically (``1`` before ``x``, leftmost factor
most significant).  Linear maps are integer matrices acting on such vectors,
so every identity below is an exact matrix equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

ONE, X = 0, 1


@dataclass(frozen=True)
class FrobeniusAlgebraSpec:
    """Structure constants of ``m``, ``Δ``, ``ε`` and ``η``.

    ``mul_table[(a, b)]`` is the coefficient vector of ``m(a ⊗ b)`` over
    ``(1, x)``; ``comul_table[a]`` is ``Δ(a)`` over ``(1⊗1, 1⊗x, x⊗1, x⊗x)``.
    """

    name: str
    mul_table: dict
    comul_table: dict
    counit: tuple[int, int]
    unit: tuple[int, int]

    def mul_terms(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        vec = self.mul_table[(a, b)]
        return tuple((k, c) for k, c in enumerate(vec) if c)

    def comul_terms(self, a: int) -> tuple[tuple[tuple[int, int], int], ...]:
        vec = self.comul_table[a]
        return tuple(((k >> 1, k & 1), c) for k, c in enumerate(vec) if c)

    # matrices
    @property
    def m(self) -> np.ndarray:
        cols = [self.mul_table[(a, b)] for a, b in product((ONE, X), repeat=2)]
        return np.array(cols, dtype=np.int64).T

    @property
    def delta(self) -> np.ndarray:
        return np.array([self.comul_table[ONE], self.comul_table[X]], dtype=np.int64).T

    @property
    def eps(self) -> np.ndarray:
        return np.array([self.counit], dtype=np.int64)

    @property
    def eta(self) -> np.ndarray:
        return np.array([self.unit], dtype=np.int64).T


KHOVANOV = FrobeniusAlgebraSpec(
    name="khovanov",
    mul_table={(ONE, ONE): (1, 0), (ONE, X): (0, 1), (X, ONE): (0, 1), (X, X): (0, 0)},
    comul_table={ONE: (0, 1, 1, 0), X: (0, 0, 0, 1)},
    counit=(0, 1),
    unit=(1, 0),
)

LEE = FrobeniusAlgebraSpec(
    name="lee",
    mul_table={(ONE, ONE): (1, 0), (ONE, X): (0, 1), (X, ONE): (0, 1), (X, X): (1, 0)},
    comul_table={ONE: (0, 1, 1, 0), X: (1, 0, 0, 1)},
    counit=(0, 1),
    unit=(1, 0),
)

ALGEBRAS = {"khovanov": KHOVANOV, "lee": LEE}

ID = np.eye(2, dtype=np.int64)


def basis(a: int) -> np.ndarray:
    v = np.zeros(2, dtype=np.int64)
    v[a] = 1
    return v


def element(coeff_1: int, coeff_x: int) -> np.ndarray:
    return np.array([coeff_1, coeff_x], dtype=np.int64)


def tensor(*vs: np.ndarray) -> np.ndarray:
    return reduce(np.kron, vs)


def kron(*ms: np.ndarray) -> np.ndarray:
    return reduce(np.kron, ms)


def mul(spec: FrobeniusAlgebraSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return spec.m @ tensor(a, b)


def comul(spec: FrobeniusAlgebraSpec, a: np.ndarray) -> np.ndarray:
    return spec.delta @ a


def counit(spec: FrobeniusAlgebraSpec, a: np.ndarray) -> int:
    return int((spec.eps @ a)[0])


def unit(spec: FrobeniusAlgebraSpec, n: int = 1) -> np.ndarray:
    return n * spec.eta[:, 0]


def closed_surface_value(spec: FrobeniusAlgebraSpec, genus: int) -> int:
    """``ε ∘ (m∘Δ)^genus ∘ η`` evaluated at 1: sphere for genus 0, torus for genus 1."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    handle = spec.m @ spec.delta
    v = spec.eta
    for _ in range(genus):
        v = handle @ v
    return int((spec.eps @ v)[0, 0])


def pairing_matrix(spec: FrobeniusAlgebraSpec) -> np.ndarray:
    """Gram matrix of ``<a|b> = ε(ab)`` on the basis."""
    return np.array([[counit(spec, mul(spec, basis(a), basis(b))) for b in (ONE, X)] for a in (ONE, X)])


def on_factors(op: np.ndarray, i: int, j: int, n: int) -> np.ndarray:
    """Extend a map ``V⊗V -> V⊗V`` acting on tensor factors ``i < j`` of ``V^{⊗n}``."""
    if not 0 <= i < j < n:
        raise ValueError("need 0 <= i < j < n")
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=np.int64)
    for col in range(dim):
        bits = [(col >> (n - 1 - k)) & 1 for k in range(n)]
        src = 2 * bits[i] + bits[j]
        for tgt in range(4):
            c = op[tgt, src]
            if c:
                nb = list(bits)
                nb[i], nb[j] = tgt >> 1, tgt & 1
                row = sum(b << (n - 1 - k) for k, b in enumerate(nb))
                out[row, col] += c
    return out


def dot_operator(spec: FrobeniusAlgebraSpec, i: int, n: int) -> np.ndarray:
    """Multiplication by ``x`` on factor ``i`` of ``V^{⊗n}``."""
    x_times = np.array([mul(spec, basis(X), basis(a)) for a in (ONE, X)], dtype=np.int64).T
    return kron(*[x_times if k == i else ID for k in range(n)])


def tube(spec: FrobeniusAlgebraSpec, i: int, j: int, n: int = 4) -> np.ndarray:
    """Two sheets ``i`` and ``j`` joined by a tube: merge then split, ``Δ∘m``."""
    return on_factors(spec.delta @ spec.m, i, j, n)


def tube_cut(spec: FrobeniusAlgebraSpec, i: int, j: int, n: int = 4) -> np.ndarray:
    """The same tube after neck-cutting: a dot on sheet ``i`` plus a dot on sheet ``j``."""
    return dot_operator(spec, i, n) + dot_operator(spec, j, n)


# --- identity checks ---------------------------------------------------------


def check_associativity(spec) -> bool:
    m = spec.m
    return np.array_equal(m @ kron(m, ID), m @ kron(ID, m))


def check_coassociativity(spec) -> bool:
    dl = spec.delta
    return np.array_equal(kron(dl, ID) @ dl, kron(ID, dl) @ dl)


def check_counit(spec) -> bool:
    dl, e = spec.delta, spec.eps
    left = kron(e, ID) @ dl
    right = kron(ID, e) @ dl
    return np.array_equal(left, ID) and np.array_equal(right, ID)


def check_unit(spec) -> bool:
    m, u = spec.m, spec.eta
    return np.array_equal(m @ kron(u, ID), ID) and np.array_equal(m @ kron(ID, u), ID)


def check_frobenius(spec) -> bool:
    """``(1⊗m)∘(Δ⊗1) = Δ∘m = (m⊗1)∘(1⊗Δ)``."""
    m, dl = spec.m, spec.delta
    target = dl @ m
    return np.array_equal(kron(ID, m) @ kron(dl, ID), target) and np.array_equal(
        kron(m, ID) @ kron(ID, dl), target
    )


def check_tube_cutting(spec) -> bool:
    """``ε(ab) = ε(ax)ε(b) + ε(a)ε(bx)`` on all basis pairs."""
    e = lambda v: counit(spec, v)
    xv = basis(X)
    for a, b in product((ONE, X), repeat=2):
        va, vb = basis(a), basis(b)
        lhs = e(mul(spec, va, vb))
        rhs = e(mul(spec, va, xv)) * e(vb) + e(va) * e(mul(spec, vb, xv))
        if lhs != rhs:
            return False
    return True


def check_pairing(spec) -> bool:
    """Gram matrix invertible over Z and ``<ab|c> = <a|bc>``."""
    g = pairing_matrix(spec)
    det = int(round(np.linalg.det(g)))
    if abs(det) != 1:
        return False
    for a, b, c in product((ONE, X), repeat=3):
        ab = mul(spec, basis(a), basis(b))
        bc = mul(spec, basis(b), basis(c))
        if counit(spec, mul(spec, ab, basis(c))) != counit(spec, mul(spec, basis(a), bc)):
            return False
    return True


def check_four_tube(spec) -> bool:
    """``C12 + C34 = C13 + C24`` on ``V^{⊗4}``, for tubes and for their cut form."""
    for make in (tube, tube_cut):
        lhs = make(spec, 0, 1) + make(spec, 2, 3)
        rhs = make(spec, 0, 2) + make(spec, 1, 3)
        if not np.array_equal(lhs, rhs):
            return False
    return all(np.array_equal(tube(spec, i, j), tube_cut(spec, i, j)) for i, j in ((0, 1), (2, 3), (0, 2), (1, 3)))


IDENTITIES = {
    "associativity": check_associativity,
    "coassociativity": check_coassociativity,
    "counit": check_counit,
    "unit": check_unit,
    "frobenius": check_frobenius,
    "tube_cutting": check_tube_cutting,
    "pairing": check_pairing,
    "four_tube": check_four_tube,
}
