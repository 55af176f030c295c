import cmath
import math

import numpy as np
import pytest

from khlab.bracket import jones
from khlab.complex import build_complex
from khlab.homology import homology, poincare
from khlab.quantum import (
    DiagonalUnitary,
    anticommutation_residual,
    build_unitary,
    check_anticommutation,
    hadamard_estimate,
    homology_invariance_residual,
    homology_unitary,
    quantum_report,
    trace,
)


def unit(theta):
    return cmath.exp(1j * theta)


def test_unknot_unitary(unknot):
    q = unit(0.7)
    u = build_unitary(unknot, q)
    assert sorted(np.angle(u.eigenvalues)) == pytest.approx(sorted([0.7, -0.7]))
    assert abs(trace(u) - (q + 1 / q)) < 1e-12


def test_trefoil_trace(trefoil):
    q = unit(math.pi / 5)
    assert abs(trace(build_unitary(trefoil, q)) - jones(trefoil).evaluate(q)) < 1e-9
    assert abs(trace(build_unitary(trefoil, 1)) - jones(trefoil).evaluate(1)) < 1e-9


def test_nonunit_q_rejected(trefoil):
    with pytest.raises(ValueError):
        build_unitary(trefoil, 0.9)


def test_anticommutation(unknot, trefoil):
    assert check_anticommutation(unknot, unit(1.0)) == 0
    assert check_anticommutation(trefoil, 1j) < 1e-9


def test_corrupted_sign_fixture(trefoil):
    cx = build_complex(trefoil)
    good = build_unitary(trefoil, 1j, cx)
    # drop the (-1)^i factor: the eigenvalues no longer alternate with degree
    bad = DiagonalUnitary(good.q, good.eigenvalues * np.where(good.degrees % 2, -1, 1), good.degrees, good.offsets)
    assert anticommutation_residual(cx, bad) >= 1


def test_homology_invariance(trefoil, figure_eight):
    for d in (trefoil, figure_eight):
        cx = build_complex(d)
        assert homology_invariance_residual(cx, build_unitary(d, unit(0.3), cx)) < 1e-9


def test_homology_unitary(unknot, trefoil):
    q = unit(1.1)
    t_unknot = homology(build_complex(unknot), "q")
    assert abs(homology_unitary(t_unknot, unit(0.4), q) - (q + 1 / q)) < 1e-12
    table = homology(build_complex(trefoil), "q")
    assert abs(homology_unitary(table, -1, q) - jones(trefoil).evaluate(q)) < 1e-9
    assert homology_unitary(table, 1, 1) == 4
    t = unit(2.0)
    assert abs(homology_unitary(table, t, q) - poincare(table).evaluate(t, q)) < 1e-12
    with pytest.raises(ValueError):
        homology_unitary(table, 2, q)


def test_hadamard_degenerate(unknot):
    est, se = hadamard_estimate(build_unitary(unknot, 1), 1000, seed=3, part="real")
    assert est == 1 and se == 0


def test_hadamard_rejects_zero_samples(unknot):
    with pytest.raises(ValueError):
        hadamard_estimate(build_unitary(unknot, 1), 0)


def test_hadamard_deterministic(trefoil):
    u = build_unitary(trefoil, unit(1.0))
    assert hadamard_estimate(u, 500, seed=7) == hadamard_estimate(u, 500, seed=7)


def test_hadamard_trefoil_large(trefoil):
    u = build_unitary(trefoil, unit(math.pi / 3))
    est, se = hadamard_estimate(u, 10 ** 6, seed=11)
    dim = u.dimension
    assert abs(est * dim - jones(trefoil).evaluate(unit(math.pi / 3))) < 3 * se * dim


def test_hadamard_unbiased(figure_eight):
    u = build_unitary(figure_eight, unit(0.9))
    exact = trace(u) / u.dimension
    means = [hadamard_estimate(u, 2000, seed=s)[0] for s in range(200)]
    # 200 runs of 2000 shots: standard error of the mean is about 0.0016 per part
    assert abs(np.mean(means) - exact) < 0.01


def test_report(trefoil):
    rep = quantum_report(trefoil, unit(0.5))
    assert set(rep) == {"q", "trace_re", "trace_im", "jones_at_q_re", "jones_at_q_im", "residual"}
    assert abs(rep["trace_re"] - rep["jones_at_q_re"]) < 1e-9
