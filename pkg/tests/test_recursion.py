"""Tree recursion, closed mode maps, probes, linearization."""
import numpy as np
import pytest

import clocktree as ct
from clocktree.basis import a_norm, basis_norms, raw_coefficients

from conftest import random_feasible_lambdas, random_symmetric_probability, recursion_oracle


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------


def test_branching_cayley():
    assert ct.branching_number(ct.Cayley(2)) == 2.0
    assert ct.branching_number(ct.Cayley(3)) == 3.0
    est = ct.branching_estimate(ct.Cayley(2))
    assert est.exact


def test_branching_alternating():
    # one child then four children, repeating: |level 2n| = 4^n, growth 2
    tree = ct.SphericallySymmetric((1, 4))
    est = ct.branching_estimate(tree)
    assert abs(est.value - 2.0) < 1e-12
    assert not est.exact and est.generations_used >= 20


def test_branching_explicit_sequence():
    tree = ct.SphericallySymmetric((2,) * 25, periodic=False)
    assert abs(ct.branching_number(tree) - 2.0) < 1e-12
    with pytest.raises(ct.UnsupportedTree):
        ct.SphericallySymmetric((2, 3), periodic=False)
    with pytest.raises(ct.UnsupportedTree):
        ct.Cayley(1)


# ---------------------------------------------------------------------------
# recursion step
# ---------------------------------------------------------------------------


def test_uniform_children_stay_uniform():
    spec = ct.spec_from_lambdas(5, 0.4, 0.2)
    out = ct.recursion_step(spec, [ct.SymmetricDist.uniform(5)] * 3)
    assert out.sup_distance_to_uniform() < 1e-14


def test_recursion_step_matches_oracle(rng):
    for q in (4, 5):
        for _ in range(100):
            l1, l2 = random_feasible_lambdas(rng, q)
            spec = ct.spec_from_lambdas(q, l1, l2)
            k = int(rng.integers(1, 4))
            vecs = [random_symmetric_probability(rng, q) for _ in range(k)]
            children = [ct.SymmetricDist.from_probabilities(v) for v in vecs]
            out = ct.recursion_step(spec, children).probabilities()
            assert np.abs(out - recursion_oracle(np.asarray(spec.row), vecs)).max() < 1e-13


def test_recursion_step_q4_fixed_point():
    # closed form at lambda1 = 1/2, lambda2 = 0.4
    l2 = 0.4
    a2 = (3 * l2 - 1) / (2 * (l2 + l2 * l2))
    a1 = np.sqrt(2 * l2 * a2 - 4 * l2 * l2 * a2 * a2)
    spec = ct.spec_from_lambdas(4, 0.5, l2)
    child = ct.SymmetricDist(4, (a1, a2))
    out = ct.recursion_step(spec, [child, child])
    assert abs(out.modes[0] - a1) < 1e-9 and abs(out.modes[1] - a2) < 1e-9
    assert abs(a1 - 0.349927) < 1e-6 and abs(a2 - 0.178571) < 1e-6


def test_single_child_geometric_decay():
    # a chain contracts the distance to uniform by lambda1 per level
    spec = ct.spec_from_lambdas(4, 0.6, 0.3)
    d = ct.SymmetricDist.point_mass(4)
    u = np.full(4, 0.25)
    dist = a_norm(4, d.probabilities() - u)
    for _ in range(30):
        d = ct.recursion_step(spec, [d])
        new = a_norm(4, d.probabilities() - u)
        assert new <= spec.lambda1 * dist + 1e-15
        dist = new
    assert dist < a_norm(4, ct.SymmetricDist.point_mass(4).probabilities() - u) * 0.6**29


def test_recursion_step_errors():
    spec = ct.spec_from_lambdas(4, 0.5, 0.3)
    with pytest.raises(ct.EmptyChildren):
        ct.recursion_step(spec, [])
    with pytest.raises(ct.DimensionMismatch):
        ct.recursion_step(spec, [ct.SymmetricDist.uniform(5)])
    with pytest.raises(ct.NormalizationUnderflow):
        ct.recursion_step(spec, [ct.SymmetricDist.uniform(4)] * 520)


# ---------------------------------------------------------------------------
# closed mode maps
# ---------------------------------------------------------------------------


def test_mode_maps_fix_zero():
    assert ct.mode_map_q4(0.5, 0.3, (0.0, 0.0)) == (0.0, 0.0)
    assert ct.mode_map_q5(0.5, 0.3, (0.0, 0.0)) == (0.0, 0.0)


def test_mode_maps_match_recursion(rng):
    for q in (4, 5):
        for _ in range(1000):
            l1, l2 = random_feasible_lambdas(rng, q)
            spec = ct.spec_from_lambdas(q, l1, l2)
            child = ct.SymmetricDist.from_probabilities(random_symmetric_probability(rng, q))
            expected = ct.recursion_step(spec, [child, child]).modes
            got = ct.mode_map(q, l1, l2, child.modes)
            assert abs(got[0] - expected[0]) < 1e-13
            assert abs(got[1] - expected[1]) < 1e-13


def test_mode_map_q4_printed_fixed_point():
    out = ct.mode_map_q4(0.5, 0.4, (0.349927, 0.178571))
    assert abs(out[0] - 0.349927) < 1e-6 and abs(out[1] - 0.178571) < 1e-6


def test_mode_map_q5_quartic_root_is_fixed():
    sols = ct.q5_solutions_at_critical(0.45)
    for a in sols.nontrivial:
        out = ct.mode_map_q5(0.5, 0.45, a)
        assert max(abs(out[0] - a[0]), abs(out[1] - a[1])) < 1e-10


# ---------------------------------------------------------------------------
# probes
# ---------------------------------------------------------------------------


def test_rpt_probe_supercritical():
    spec = ct.spec_from_lambdas(4, 0.55, 0.3)
    res = ct.rpt_probe(spec, ct.Cayley(2), u=0.01, levels=400)
    assert res.verdict is ct.Verdict.BOUNDED_AWAY
    assert res.boundary_init == "(M^u(.,0))^2"


def test_rpt_probe_subcritical():
    spec = ct.spec_from_lambdas(4, 0.45, 0.3)
    res = ct.rpt_probe(spec, ct.Cayley(2), u=0.01, levels=400)
    assert res.verdict is ct.Verdict.CONVERGES_TO_UNIFORM


def test_pt_probe_retains_order_in_pt_window():
    # full coupling keeps the order even at the robustness threshold
    res = ct.pt_probe(ct.spec_from_lambdas(4, 0.5, 0.4), ct.Cayley(2), levels=400)
    assert res.verdict is ct.Verdict.BOUNDED_AWAY
    res5 = ct.pt_probe(ct.spec_from_lambdas(5, 0.5, 0.45), ct.Cayley(2), levels=400)
    assert res5.verdict is ct.Verdict.BOUNDED_AWAY


def test_pt_probe_below_threshold_converges():
    # at lambda1 = 1/2 the linearization is neutral and the decay is a power
    # law, so the tolerance must match the level budget
    res = ct.pt_probe(ct.spec_from_lambdas(4, 0.5, 0.3), ct.Cayley(2), levels=5000, tol=2e-2)
    assert res.verdict is ct.Verdict.CONVERGES_TO_UNIFORM
    res5 = ct.pt_probe(ct.spec_from_lambdas(5, 0.5, 0.30), ct.Cayley(2), levels=5000, tol=2e-2)
    assert res5.verdict is ct.Verdict.CONVERGES_TO_UNIFORM


def test_pt_probe_near_critical_is_undecided():
    # with the default tight tolerance a 400-level run cannot decide at the
    # neutral point; the probe must say so instead of inventing a verdict
    res = ct.pt_probe(ct.spec_from_lambdas(4, 0.5, 0.3), ct.Cayley(2), levels=400, tol=1e-12)
    assert res.verdict is ct.Verdict.UNDECIDED


def test_probe_requires_cayley():
    spec = ct.spec_from_lambdas(4, 0.5, 0.3)
    with pytest.raises(ct.UnsupportedTree):
        ct.rpt_probe(spec, ct.SphericallySymmetric((1, 4)), u=0.5)


def test_probe_distance_sequence_shape():
    spec = ct.spec_from_lambdas(4, 0.45, 0.3)
    res = ct.rpt_probe(spec, ct.Cayley(2), u=0.5, levels=50)
    assert len(res.distances) == 51 and res.levels_used == 50
    assert res.u == 0.5


def test_fourier_positivity_and_domination_along_iterates():
    # positive spectrum: all RAW coefficients of every iterate stay positive,
    # and the weighted first mode dominates the higher ones
    for q, l1, l2, u in ((4, 0.55, 0.3, 0.01), (5, 0.49, 0.40, 1.0)):
        spec = ct.spec_from_lambdas(q, l1, l2)
        M = spec.matrix()
        z = basis_norms(q)
        p = np.power(np.asarray(ct.weakened_row(spec, u).row), 2)
        p /= p.sum()
        for _ in range(200):
            coeffs = raw_coefficients(q, p)
            assert (coeffs > 0).all()
            weighted = z * coeffs
            assert all(weighted[1] >= abs(weighted[j]) - 1e-13 for j in range(2, len(weighted)))
            p = np.power(M @ p, 2)
            p /= p.sum()


def test_early_iterates_positive_in_subcritical_regime():
    # below threshold the coefficients decay to the floating-point noise
    # floor; positivity is asserted while they are numerically meaningful
    spec = ct.spec_from_lambdas(4, 0.45, 0.3)
    M = spec.matrix()
    p = np.power(np.asarray(ct.weakened_row(spec, 0.01).row), 2)
    p /= p.sum()
    for _ in range(60):
        coeffs = raw_coefficients(4, p)
        meaningful = np.abs(coeffs) > 1e-15
        assert (coeffs[meaningful] > 0).all()
        p = np.power(M @ p, 2)
        p /= p.sum()


def test_monotone_children_stay_monotone(rng):
    # non-increasing over j = 0..floor(q/2) is preserved by the step
    for q in (4, 5, 6):
        for _ in range(100):
            l1, l2 = random_feasible_lambdas(rng, min(q, 5)) if q in (4, 5) else (0.0, 0.0)
            if q in (4, 5):
                spec = ct.spec_from_lambdas(q, l1, l2)
            else:
                row = np.array([0.4, 0.2, 0.08, 0.04, 0.08, 0.2])
                spec = ct.TransferSpec.from_row(q, row)
            half = q // 2
            vals = np.sort(rng.uniform(0.01, 1.0, half + 1))[::-1]
            p = np.empty(q)
            p[: half + 1] = vals
            for j in range(1, half + 1):
                p[q - j] = p[j]
            p /= p.sum()
            k = int(rng.integers(1, 4))
            child = ct.SymmetricDist.from_probabilities(p)
            out = ct.recursion_step(spec, [child] * k).probabilities()
            assert all(out[j] >= out[j + 1] - 1e-12 for j in range(half))


# ---------------------------------------------------------------------------
# linearization
# ---------------------------------------------------------------------------


def test_linearization_zero_at_uniform():
    spec = ct.spec_from_lambdas(5, 0.45, 0.35)
    assert ct.linearization_residual(spec, [ct.SymmetricDist.uniform(5)] * 2) < 1e-14


def test_linearization_halving(rng):
    # halving the amplitudes divides the residual by at least 3.5
    spec = ct.spec_from_lambdas(5, 0.45, 0.35)
    for _ in range(100):
        m = rng.normal(size=2)
        m = m / np.abs(m).sum() * rng.uniform(0.0005, 0.002)
        d1 = ct.SymmetricDist(5, tuple(m))
        d2 = ct.SymmetricDist(5, tuple(m / 2))
        r1 = ct.linearization_residual(spec, [d1, d1])
        r2 = ct.linearization_residual(spec, [d2, d2])
        if r2 > 1e-14:
            assert r1 / r2 >= 3.5


def test_linearization_quadratic_slope():
    spec = ct.spec_from_lambdas(4, 0.5, 0.3)
    eps = np.array([1e-2, 1e-3, 1e-4, 1e-5])
    res = []
    for e in eps:
        d = ct.SymmetricDist(4, (float(e), 0.0))
        res.append(ct.linearization_residual(spec, [d, d]))
    slope = np.polyfit(np.log(eps), np.log(res), 1)[0]
    assert abs(slope - 2.0) < 0.1
