import numpy as np
import pytest

from korovkin_lab.axioms import (
    AxiomPreconditionError,
    NormKind,
    axiom_records_csv,
    capped_sequence,
    check_monotone_convergence,
    check_monotone_sequence,
    check_null_invariance,
    check_solidity,
    density_demo,
    null_perturbation_shift,
    ramp_error_rate,
    run_axiom_suite,
)
from korovkin_lab.grid import GridFunction, Interval, lattice_abs, make_monomial
from korovkin_lab.quadrature import lp_norm

UNIT = Interval(0.0, 1.0)
L1, L2 = NormKind(1), NormKind(2)


def rand_f(rng, m=65):
    return GridFunction(UNIT, rng.normal(size=m))


def test_norm_kind_validation():
    with pytest.raises(ValueError):
        NormKind(0.9)


def test_solidity_examples():
    f = rand_f(np.random.default_rng(0))
    assert check_solidity(f, f / 2, L1)
    assert check_solidity(f, f, L2)
    with pytest.raises(AxiomPreconditionError):
        check_solidity(f / 2, f, L1)


@pytest.mark.parametrize("norm", [L1, L2])
def test_solidity_random_masks(norm):
    rng = np.random.default_rng(1)
    for _ in range(100):
        f = rand_f(rng)
        g = GridFunction(UNIT, f.values * rng.uniform(-1, 1, size=f.m))
        assert check_solidity(f, g, norm)


def test_solid_ball():
    rng = np.random.default_rng(2)
    for _ in range(100):
        f = rand_f(rng)
        eps = lp_norm(f, 1)
        g = GridFunction(UNIT, f.values * rng.uniform(-1, 1, size=f.m))
        assert lp_norm(g, 1) <= eps + 1e-12


def test_monotone_capped_constants():
    one = make_monomial(UNIT, 33, 0)
    norms = [lp_norm(g, 1) for g in capped_sequence(one, 4)]
    np.testing.assert_allclose(norms, [0.25, 0.5, 0.75, 1.0], rtol=1e-15)
    assert check_monotone_convergence(one, 4, L1)


def test_monotone_zero_function():
    assert check_monotone_convergence(GridFunction.zeros(UNIT, 9), 5, L1)


def test_monotone_square():
    f = make_monomial(UNIT, 257, 2)
    norms = [lp_norm(g, 1) for g in capped_sequence(f, 8)]
    assert all(b >= a for a, b in zip(norms, norms[1:]))
    assert norms[-1] == pytest.approx(1 / 3, abs=(1 / 256) ** 2)
    assert check_monotone_convergence(f, 8, L1)


def test_monotone_rejects_negative():
    with pytest.raises(AxiomPreconditionError):
        check_monotone_convergence(make_monomial(UNIT, 9, 1) - 0.5, 3, L1)


def test_monotone_custom_sequence():
    f = make_monomial(UNIT, 33, 1)
    seq = [f * (k / 5) for k in range(1, 6)]
    assert check_monotone_sequence(seq, f, L2)
    with pytest.raises(AxiomPreconditionError):
        check_monotone_sequence(seq[::-1], f, L2)


@pytest.mark.parametrize("norm", [L1, L2])
def test_monotone_random(norm):
    rng = np.random.default_rng(3)
    for _ in range(100):
        f = lattice_abs(rand_f(rng))
        assert check_monotone_convergence(f, int(rng.integers(1, 20)), norm)


def test_null_invariance_constant():
    one = make_monomial(UNIT, 1025, 0)
    h = 1 / 1024
    shift = null_perturbation_shift(one, L1)
    assert shift == pytest.approx(h, rel=1e-12)
    assert shift <= 2 * h
    assert check_null_invariance(one, L1)


def test_null_invariance_endpoint_half_weight():
    f = GridFunction(UNIT, np.random.default_rng(4).uniform(1, 2, size=129))
    h = f.spacing
    assert null_perturbation_shift(f, L1, node=0) == pytest.approx(h / 2, rel=1e-10)
    assert null_perturbation_shift(f, L1, node=128) <= h


def test_null_invariance_refinement_halves():
    one_a = make_monomial(UNIT, 1025, 0)
    one_b = make_monomial(UNIT, 2050, 0)
    ratio = null_perturbation_shift(one_a, L1) / null_perturbation_shift(one_b, L1)
    assert ratio == pytest.approx(2.0, rel=1e-3)


def test_null_invariance_p2():
    f = GridFunction(UNIT, np.cos(3 * UNIT.nodes(257)))
    assert check_null_invariance(f, L2)


def test_null_invariance_too_coarse():
    with pytest.raises(AxiomPreconditionError):
        check_null_invariance(make_monomial(UNIT, 15, 0), L1)


def unit_step(m=1025):
    t = UNIT.nodes(m)
    return GridFunction(UNIT, (t >= 0.5).astype(float))


def test_density_p1_triangle_area():
    (err,) = density_demo(unit_step(), L1, [0.1])
    assert err == pytest.approx(0.025, abs=1e-3)


def test_density_p2_rate():
    (err,) = density_demo(unit_step(), L2, [0.1])
    assert err == pytest.approx(np.sqrt(0.1 / 12), rel=0.05)
    assert ramp_error_rate(0.1, 2) == pytest.approx(np.sqrt(0.1 / 12), rel=1e-14)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_density_decreases_at_the_analytic_rate(p):
    widths = [0.2, 0.1, 0.05, 0.025, 0.0125]
    errs = density_demo(unit_step(4097), NormKind(p), widths)
    assert all(b < a for a, b in zip(errs, errs[1:]))
    ratio = errs[-1] / ramp_error_rate(widths[-1], p)
    assert 0.5 <= ratio <= 2.0


def test_density_errors():
    with pytest.raises(ValueError):
        density_demo(unit_step(), L1, [0.1, 0.2])
    with pytest.raises(AxiomPreconditionError):
        density_demo(make_monomial(UNIT, 33, 1), L1, [0.1])


def test_suite_all_pass_and_csv():
    recs = run_axiom_suite(UNIT, 65, trials=10, seed=5)
    assert all(r.passed for r in recs)
    text = axiom_records_csv(recs)
    assert text.splitlines()[0] == "axiom,instance,parameter,pass,detail"
    assert len(text.splitlines()) == len(recs) + 1


@pytest.mark.parametrize("m", [17, 33])
def test_suite_passes_on_coarse_grids(m):
    recs = run_axiom_suite(Interval(-3.0, 7.0), m, ps=(1.0, 2.0, 4.5), trials=3)
    assert all(r.passed for r in recs)
