import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from korovkin_lab.lattice import (
    FiniteVectorLattice,
    LatticeHom,
    PositiveMap,
    campaign_csv,
    is_lattice_hom,
    korovkin_test_set,
    point_classes,
    quasi_interior_point,
    random_trial,
    run_campaign,
    sample_generated_sublattice,
    separation,
    spans_everything,
    verify_test_set_convergence,
)


def test_finite_lattice_ops():
    L = FiniteVectorLattice(3)
    x, y = np.array([1, -2, 3.0]), np.array([0, 5, 3.0])
    assert L.sup(x, y).tolist() == [1, 5, 3]
    assert L.inf(x, y).tolist() == [0, -2, 3]
    assert L.abs(x).tolist() == [1, 2, 3]
    assert L.leq(L.inf(x, y), L.sup(x, y))
    with pytest.raises(ValueError):
        FiniteVectorLattice(0)


def test_positive_map_validation_and_norm():
    with pytest.raises(ValueError):
        PositiveMap([[1, -1], [0, 1]])
    with pytest.raises(ValueError):
        PositiveMap([[1, 2, 3]])
    T = PositiveMap([[1, 2], [0.5, 0]])
    assert T.norm() == 3.0
    assert T([1, 1]).tolist() == [3, 0.5]
    with pytest.raises(ValueError):
        LatticeHom([[1, 1], [0, 1]])


def test_identity_is_lattice_hom():
    assert is_lattice_hom(np.eye(4))


def test_row_with_two_entries_has_witness():
    a = np.array([[1.0, 1.0, 0.0], [0, 1, 0], [0, 0, 1]])
    x, y = np.array([1.0, -1, 0]), np.array([-1.0, 1, 0])
    assert (a @ np.maximum(x, y))[0] == 2.0
    assert max((a @ x)[0], (a @ y)[0]) == 0.0
    chk = is_lattice_hom(PositiveMap(a))
    assert not chk
    assert not chk.structural and not chk.randomized
    wx, wy = chk.witness
    assert (a @ np.maximum(wx, wy))[0] > max((a @ wx)[0], (a @ wy)[0])


def test_random_diagonal_is_lattice_hom():
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert is_lattice_hom(np.diag(rng.uniform(0, 3, size=5)), seed=None)


def test_is_lattice_hom_needs_a_trial():
    with pytest.raises(ValueError):
        is_lattice_hom(np.eye(2), trials=0)


def test_structural_and_randomized_agree_on_1000_matrices():
    rng = np.random.default_rng(42)
    for i in range(1000):
        m = int(rng.integers(1, 7))
        a = rng.uniform(0, 1, size=(m, m)) * (rng.random((m, m)) < rng.uniform(0.1, 0.9))
        chk = is_lattice_hom(a, seed=i)
        assert chk.structural == chk.randomized


def test_quasi_interior_examples():
    u, q = quasi_interior_point([[1, 0], [0, -1]])
    assert u.tolist() == [1, 1] and q
    u, q = quasi_interior_point([[1, 0, 0]])
    assert u.tolist() == [1, 0, 0] and not q
    with pytest.raises(ValueError):
        quasi_interior_point(np.zeros((0, 3)))


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(1, 6)),
              elements=st.floats(-1e3, 1e3)))
def test_u_dominates_generators(gens):
    u, _ = quasi_interior_point(gens)
    assert np.all(u >= np.abs(gens))


def test_test_set_generic_size_five():
    gens = np.array([[0.3, 0.9, 0.4], [0.8, 0.2, 0.5]])
    assert len(korovkin_test_set(gens)) == 5


def test_test_set_single_positive_generator():
    assert len(korovkin_test_set([[0.5, 2.0, 1.0]])) <= 3


def test_test_set_idempotent_squares():
    # u = 1 here, so u_i^2 / u = u_i for 0/1 generators
    gens = np.array([[1.0, 0, 1, 0], [0, 1.0, 0, 1]])
    ts = korovkin_test_set(gens)
    assert len(ts) == 3


def test_test_set_elements():
    gens = np.array([[1.0, 2.0], [3.0, 0.0]])
    u, h = np.array([4.0, 2.0]), gens / np.array([4.0, 2.0])
    ts = korovkin_test_set(gens)
    np.testing.assert_allclose(ts[0], u)
    np.testing.assert_allclose(ts[3], u * h[0] ** 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_test_set_size_bound(k, m, seed):
    rng = np.random.default_rng(seed)
    gens = rng.normal(size=(k, m)) * (rng.random((k, m)) < 0.7)
    gens[0, 0] = 1.0
    assert len(korovkin_test_set(gens)) <= 2 * k + 1


def test_point_classes_and_separation():
    gens = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 2.0]])
    labels = point_classes(gens)
    assert labels[0] == labels[1] != labels[2]
    assert not spans_everything(gens)
    assert separation(gens) == pytest.approx(2.0)
    assert separation([[1.0, 1.0]]) == np.inf
    assert point_classes([[1.0, 0.0]]).tolist() == [0, -1]


def test_sampler_depth_zero_is_linear():
    gens = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0]])
    samples = sample_generated_sublattice(gens, 50, seed=3, depth=0)
    for v in samples:
        coef, *_ = np.linalg.lstsq(gens.T, v, rcond=None)
        np.testing.assert_allclose(gens.T @ coef, v, atol=1e-12)


def test_sampler_diagonal_generators_stay_in_span():
    gens = np.diag([1.0, 2.0, 3.0])
    for v in sample_generated_sublattice(gens, 50, seed=1):
        assert v.shape == (3,)


def test_sampler_respects_shared_classes():
    # coordinates 0 and 1 are indistinguishable: every sample keeps them equal
    gens = np.array([[1.0, 1.0, 0.5], [2.0, 2.0, -1.0]])
    for v in sample_generated_sublattice(gens, 200, seed=7):
        assert v[0] == pytest.approx(v[1], abs=1e-12)


def test_sampler_deterministic():
    gens = np.array([[0.4, 0.1], [0.2, 0.9]])
    a = sample_generated_sublattice(gens, 20, seed=5)
    b = sample_generated_sublattice(gens, 20, seed=5)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    with pytest.raises(ValueError):
        sample_generated_sublattice(gens, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("seed", range(5))
def test_sampler_reaches_basis_directions(m, seed):
    rng = np.random.default_rng(seed)
    gens = rng.uniform(0.1, 1.0, size=(m, m))
    assert spans_everything(gens)
    S = np.array(sample_generated_sublattice(gens, 8000, seed))
    scale = np.max(np.abs(S), axis=1)
    S = np.abs(S[scale > 0]) / scale[scale > 0, None]
    for j in range(m):
        assert np.min(np.max(np.abs(S - np.eye(m)[j]), axis=1)) <= 1e-6


def test_scaled_identity_sequence():
    gens = np.array([[0.3, 1.0, 0.6], [1.0, 0.2, 0.5]])
    P = LatticeHom(np.eye(3))
    ns = [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048]
    maps = [PositiveMap((1 + 1 / n) * np.eye(3)) for n in ns]
    rep = verify_test_set_convergence(gens, maps, P)
    assert rep.verdict == "PASS"
    u = gens.sum(axis=0)
    np.testing.assert_allclose(rep.test_errors, [np.max(u) / n for n in ns], rtol=1e-12)
    assert rep.quasi_interior and rep.spanning
    assert rep.norm_bound >= max(rep.map_norms)
    assert rep.norm_bound == pytest.approx(2.0)


def test_constant_sequence_has_zero_error():
    gens = np.array([[0.3, 1.0], [1.0, 0.2]])
    P = LatticeHom.from_assignment(2, [1, 0], [2.0, 0.5])
    rep = verify_test_set_convergence(gens, [PositiveMap(P.matrix)] * 4, P)
    assert rep.verdict == "PASS"
    assert rep.worst_error == 0.0 and max(rep.test_errors) == 0.0


def test_non_positive_u_is_noted():
    gens = np.array([[1.0, 0.0, 0.0]])
    rep = verify_test_set_convergence(gens, [PositiveMap(np.eye(3))], LatticeHom(np.eye(3)))
    assert not rep.quasi_interior and rep.notes


def test_constant_generator_only_tests_constants():
    # the sublattice of (1,1,1) is the constants, which a swap fixes
    gens = np.array([[1.0, 1.0, 1.0]])
    A = PositiveMap([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    rep = verify_test_set_convergence(gens, [A] * 3, LatticeHom(np.eye(3)))
    assert max(rep.test_errors) == 0.0 and rep.worst_error == 0.0
    assert rep.verdict == "PASS"
    assert not rep.spanning


def test_transfer_bound_holds_on_random_trials():
    for seed in range(20):
        gens, maps, P = random_trial(seed)
        rep = verify_test_set_convergence(gens, maps, P, seed=seed)
        for te, se in zip(rep.test_errors, rep.sample_errors):
            assert se <= rep.constant * te * (1 + 1e-9) + 1e-12


def test_campaign_small_and_deterministic():
    a = run_campaign(trials=20, seed=3)
    b = run_campaign(trials=20, seed=3)
    assert campaign_csv(a) == campaign_csv(b)
    assert all(r.verdict == "PASS" for r in a)
    assert all(r.testset_size <= 2 * r.k + 1 for r in a)
    assert campaign_csv(a).splitlines()[0] == "trial,seed,m,k,testset_size,verdict,worst_error"
