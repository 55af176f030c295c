"""The enhanced-state Hilbert space and the diagonal unitary whose trace is J.

The basis is the set of enhanced states in the generator order of
:func:`khlab.complex.build_complex` (degree by degree).  For a unit complex
number ``q``,

    U |s> = (-1)^{i(s) + n-} q^{j(s) + n+ - 2n-} |s>,

so ``Trace U`` is the Jones polynomial evaluated at ``q``.  Because ``∂``
raises ``i`` by one and keeps ``j``, ``∂U + U∂ = 0``.  Floating point is
confined to this module; everything exact is checked elsewhere first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import BigradedComplex, build_complex
from .diagram import KnotDiagram
from .homology import HomologyTable
from .linalg import kernel_basis

UNIT_TOL = 1e-12


def _require_unit(z: complex, name: str = "q") -> complex:
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-9:
        raise ValueError(f"{name} must lie on the unit circle, got |{name}| = {abs(z):.6g}")
    return z


@dataclass
class DiagonalUnitary:
    """Eigenvalues of a diagonal unitary plus the gradings that produced them."""

    q: complex
    eigenvalues: np.ndarray
    degrees: np.ndarray
    offsets: dict[int, int]

    def __post_init__(self):
        if np.any(np.abs(np.abs(self.eigenvalues) - 1.0) > UNIT_TOL):
            raise ValueError("eigenvalues must have modulus 1")

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def block(self, i: int) -> np.ndarray:
        start = self.offsets[i]
        return self.eigenvalues[start : start + int(np.sum(self.degrees == i))]


def build_unitary(d: KnotDiagram, q: complex, cx: BigradedComplex | None = None) -> DiagonalUnitary:
    q = _require_unit(q)
    cx = cx if cx is not None else build_complex(d)
    n_minus = d.n_minus
    qshift = d.n_plus - 2 * d.n_minus
    vals, degs, offsets = [], [], {}
    for i in cx.degrees:
        offsets[i] = len(vals)
        sign = -1.0 if (i + n_minus) % 2 else 1.0
        for g in cx.generators[i]:
            vals.append(sign * q ** (g.j + qshift))
            degs.append(i)
    ev = np.array(vals, dtype=complex)
    # q**k can drift off the circle for large |k|; renormalize
    if len(ev):
        ev = ev / np.abs(ev)
    return DiagonalUnitary(q, ev, np.array(degs, dtype=int), offsets)


def trace(u: DiagonalUnitary) -> complex:
    return complex(np.sum(u.eigenvalues))


def anticommutation_residual(cx: BigradedComplex, u: DiagonalUnitary) -> float:
    """``max |(∂U + U∂)_{rc}|`` over all matrix positions."""
    worst = 0.0
    for i, m in cx.differentials.items():
        if not m.nnz:
            continue
        rows, cols, vals = (np.array(x) for x in zip(*m.triplets()))
        ur = u.eigenvalues[u.offsets[i + 1] + rows]
        uc = u.eigenvalues[u.offsets[i] + cols]
        worst = max(worst, float(np.max(np.abs(vals * (ur + uc)))))
    return worst


def check_anticommutation(
    d: KnotDiagram, q: complex, cx: BigradedComplex | None = None, u: DiagonalUnitary | None = None
) -> float:
    cx = cx if cx is not None else build_complex(d)
    u = u if u is not None else build_unitary(d, q, cx)
    return anticommutation_residual(cx, u)


def homology_invariance_residual(cx: BigradedComplex, u: DiagonalUnitary) -> float:
    """How far ``U`` is from mapping cycles to cycles and boundaries to boundaries.

    For each degree, ``∂(Uz)`` is evaluated on a rational kernel basis and
    ``U∂w + ∂Uw`` on the standard basis ``w`` of the previous degree.
    """
    worst = 0.0
    for i in cx.degrees:
        m = cx.differentials.get(i)
        ui = u.eigenvalues[u.offsets[i] : u.offsets[i] + cx.size(i)]
        if m is not None and m.nnz:
            dense = np.array(m.to_dense(), dtype=float)
            for z in kernel_basis(m):
                vec = np.zeros(cx.size(i), dtype=complex)
                for k, x in z.items():
                    vec[k] = float(x)
                worst = max(worst, float(np.max(np.abs(dense @ (ui * vec)), initial=0.0)))
            unext = u.eigenvalues[u.offsets[i + 1] : u.offsets[i + 1] + cx.size(i + 1)]
            anti = unext[:, None] * dense + dense * ui[None, :]
            worst = max(worst, float(np.max(np.abs(anti), initial=0.0)))
    return worst


def homology_unitary(table: HomologyTable, t: complex, q: complex) -> complex:
    """Trace of the induced map on homology: ``Σ rank H^{ij} t^i q^j``."""
    t = _require_unit(t, "t")
    q = _require_unit(q, "q")
    return complex(sum(r * t ** i * q ** j for (i, j), r in table.ranks().items()))


def hadamard_estimate(
    u: DiagonalUnitary, samples: int, seed: int | None = None, part: str = "both"
) -> tuple[complex, float]:
    """Simulated Hadamard test for ``Trace(U) / dim``.

    Each shot draws a basis state uniformly and records ``+1`` with
    probability ``(1 + Re <s|U|s>) / 2`` (or ``Im`` for the phase-shifted
    variant), ``-1`` otherwise.  ``part`` selects ``"real"``, ``"imag"`` or
    ``"both"``; with ``"both"`` each part gets its own ``samples`` shots and
    the standard errors add in quadrature.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if part not in ("real", "imag", "both"):
        raise ValueError("part must be 'real', 'imag' or 'both'")
    rng = np.random.default_rng(seed)
    dim = u.dimension

    def run(values: np.ndarray) -> tuple[float, float]:
        idx = rng.integers(dim, size=samples)
        hits = rng.random(samples) < (1.0 + values[idx]) / 2.0
        shots = np.where(hits, 1.0, -1.0)
        mean = float(shots.mean())
        se = float(shots.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
        return mean, se

    re = im = 0.0
    se_re = se_im = 0.0
    if part in ("real", "both"):
        re, se_re = run(u.eigenvalues.real)
    if part in ("imag", "both"):
        im, se_im = run(u.eigenvalues.imag)
    return complex(re, im), float(np.hypot(se_re, se_im))


def quantum_report(d: KnotDiagram, q: complex, cx: BigradedComplex | None = None) -> dict:
    from .bracket import jones

    cx = cx if cx is not None else build_complex(d)
    u = build_unitary(d, q, cx)
    tr = trace(u)
    jq = complex(jones(d).evaluate(complex(q)))
    return {
        "q": [complex(q).real, complex(q).imag],
        "trace_re": tr.real,
        "trace_im": tr.imag,
        "jones_at_q_re": jq.real,
        "jones_at_q_im": jq.imag,
        "residual": anticommutation_residual(cx, u),
    }
