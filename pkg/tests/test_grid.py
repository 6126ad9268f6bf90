import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from korovkin_lab.grid import (
    GridFunction,
    GridMismatchError,
    Interval,
    is_strictly_positive,
    lattice_abs,
    lattice_inf,
    lattice_sup,
    linear_combination,
    make_monomial,
)

UNIT = Interval(0.0, 1.0)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def pair(m=st.integers(2, 40)):
    return m.flatmap(lambda k: st.tuples(arrays(float, k, elements=finite),
                                         arrays(float, k, elements=finite)))


def test_interval_rejects_degenerate():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)


def test_nodes_hit_both_endpoints():
    t = Interval(-1.0, 3.0).nodes(5)
    assert t.tolist() == [-1.0, 0.0, 1.0, 2.0, 3.0]


@pytest.mark.parametrize("iv, i, expected", [
    (UNIT, 0, [1, 1, 1]),
    (UNIT, 1, [0, 0.5, 1]),
    (Interval(-1, 1), 2, [1, 0, 1]),
])
def test_make_monomial(iv, i, expected):
    assert make_monomial(iv, 3, i).values.tolist() == expected


def test_make_monomial_bad_degree():
    with pytest.raises(ValueError):
        make_monomial(UNIT, 3, -1)


def test_values_are_immutable():
    f = make_monomial(UNIT, 5, 1)
    with pytest.raises(ValueError):
        f.values[0] = 3.0


def test_nonfinite_values_rejected():
    with pytest.raises(ValueError):
        GridFunction(UNIT, [0.0, np.nan])


def test_sup_inf_of_x_and_one_minus_x():
    x = make_monomial(UNIT, 5, 1)
    y = 1.0 - x
    assert lattice_sup(x, y).values.tolist() == [1, 0.75, 0.5, 0.75, 1]
    assert lattice_inf(x, y).values.tolist() == [0, 0.25, 0.5, 0.25, 0]


def test_sup_inf_idempotent():
    f = GridFunction(UNIT, np.random.default_rng(3).normal(size=9))
    assert lattice_sup(f, f) == f
    assert lattice_inf(f, f) == f


def test_grid_mismatch_is_an_error():
    f = make_monomial(UNIT, 5, 1)
    with pytest.raises(GridMismatchError):
        lattice_sup(f, make_monomial(UNIT, 6, 1))
    with pytest.raises(GridMismatchError):
        f + make_monomial(Interval(0, 2), 5, 1)


@settings(max_examples=300, deadline=None)
@given(pair())
def test_lattice_formulas_match_nodewise_extrema(ab):
    a, b = ab
    f, g = GridFunction(UNIT, a), GridFunction(UNIT, b)
    s, i = lattice_sup(f, g).values, lattice_inf(f, g).values
    np.testing.assert_array_equal(s, np.maximum(a, b))
    np.testing.assert_array_equal(i, np.minimum(a, b))
    np.testing.assert_array_equal(s + i, a + b)


@settings(max_examples=200, deadline=None)
@given(pair())
def test_abs_and_positivity_propagation(ab):
    a, b = ab
    f, g = GridFunction(UNIT, a), GridFunction(UNIT, b)
    np.testing.assert_array_equal(lattice_abs(f).values, np.abs(a))
    if is_strictly_positive(f):
        assert is_strictly_positive(lattice_sup(f, g))


@pytest.mark.parametrize("f, expected", [
    (make_monomial(UNIT, 9, 0), True),
    (make_monomial(UNIT, 9, 1), False),
    (make_monomial(Interval(-1, 1), 9, 2) + 0.1, True),
])
def test_is_strictly_positive(f, expected):
    assert is_strictly_positive(f) is expected


def test_linear_combination():
    p1, p2 = make_monomial(UNIT, 3, 1), make_monomial(UNIT, 3, 2)
    assert linear_combination([1.0], [p1]) == p1
    one = make_monomial(UNIT, 3, 0)
    assert linear_combination([1, -1], [one, one]).values.tolist() == [0, 0, 0]
    assert linear_combination([2, 3], [p1, p2]).values[1] == pytest.approx(1.75, abs=0)


def test_linear_combination_errors():
    p1 = make_monomial(UNIT, 3, 1)
    with pytest.raises(ValueError):
        linear_combination([1, 2], [p1])
    with pytest.raises(ValueError):
        linear_combination([], [])
    with pytest.raises(GridMismatchError):
        linear_combination([1, 1], [p1, make_monomial(UNIT, 4, 1)])


def test_csv_round_trip_is_lossless(tmp_path):
    rng = np.random.default_rng(0)
    f = GridFunction(Interval(-0.3, 2.7), rng.normal(size=33) * 1e3)
    text = f.to_csv(tmp_path / "f.csv")
    assert text.splitlines()[0] == "t,value"
    g = GridFunction.from_csv(tmp_path / "f.csv")
    assert g == f


def test_csv_rejects_nonuniform(tmp_path):
    (tmp_path / "bad.csv").write_text("t,value\n0,1\n0.1,1\n1,1\n")
    with pytest.raises(ValueError, match="uniform"):
        GridFunction.from_csv(tmp_path / "bad.csv")
