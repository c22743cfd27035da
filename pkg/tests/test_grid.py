"""Tests for sampled functions and rearrangements."""

import numpy as np
import pytest

from lkapprox.spaces import (
    CatalogError,
    DomainError,
    GridFunction,
    TestFunction,
    iterated_rearrangement,
    rearrange_1d,
    rearrange_axis,
    sample,
)


@pytest.fixture
def random_grid():
    """Complex 4 x 6 grid function with a fixed seed."""
    rng = np.random.default_rng(7)
    return GridFunction(rng.normal(size=(4, 6)) + 1j * rng.normal(size=(4, 6)))


class TestGridFunction:
    """Test the sampled-function container."""

    def test_sizes_are_reversed_shape(self):
        """Test that sizes list axis 1 first."""
        f = GridFunction(np.zeros((4, 8)))
        assert f.dims == 2
        assert f.sizes == (8, 4)

    def test_values_are_read_only(self):
        """Test that the sample array cannot be written."""
        f = GridFunction(np.ones(3))
        with pytest.raises(ValueError):
            f.values[0] = 2.0

    def test_too_many_variables(self):
        """Test the limit on the number of variables."""
        with pytest.raises(DomainError):
            GridFunction(np.zeros((2, 2, 2, 2, 2)))

    def test_numpy_axis(self):
        """Test mapping variable axes to numpy axes."""
        f = GridFunction(np.zeros((2, 3, 4)))
        assert f.numpy_axis(1) == 2
        assert f.numpy_axis(3) == 0
        with pytest.raises(DomainError):
            f.numpy_axis(4)


class TestRearrangement:
    """Test 1-D and axis-wise rearrangement."""

    def test_rearrange_1d(self):
        """Test the decreasing rearrangement of a short vector."""
        profile = rearrange_1d([1.0, -3.0, 2.0])
        assert np.array_equal(profile.steps, [3.0, 2.0, 1.0])
        assert profile.measure == pytest.approx(1.0 / 3.0)

    def test_rearrange_constant(self):
        """Test rearranging a constant modulus."""
        assert np.allclose(rearrange_1d([-2.0] * 5).steps, 2.0)

    def test_rearrange_empty_raises(self):
        """Test rearranging an empty vector."""
        with pytest.raises(DomainError):
            rearrange_1d([])

    def test_rearrange_axis_one(self):
        """Test rearranging along axis 1."""
        f = GridFunction(np.array([[1.0, -2.0], [3.0, 0.0]]))
        assert np.array_equal(rearrange_axis(f, 1).values, [[2.0, 1.0], [3.0, 0.0]])

    def test_rearrange_axis_two(self):
        """Test rearranging along axis 2."""
        f = GridFunction(np.array([[1.0, -2.0], [3.0, 0.0]]))
        assert np.array_equal(rearrange_axis(f, 2).values, [[3.0, 2.0], [1.0, 0.0]])

    @pytest.mark.parametrize("axis", [0, 3])
    def test_rearrange_bad_axis(self, axis):
        """Test that the axis must exist."""
        with pytest.raises(DomainError):
            rearrange_axis(GridFunction(np.ones((2, 2))), axis)

    def test_fibers_match_sorted_moduli(self, random_grid):
        """Test that every fiber is its sorted modulus."""
        expected = np.sort(np.abs(random_grid.values), axis=-1)[:, ::-1]
        assert np.allclose(rearrange_axis(random_grid, 1).values, expected)

    def test_idempotent(self, random_grid):
        """Test that rearranging twice changes nothing."""
        once = iterated_rearrangement(random_grid)
        twice = iterated_rearrangement(once)
        assert np.array_equal(once.values, twice.values)

    def test_iterated_is_non_increasing_along_every_axis(self, random_grid):
        """Test monotonicity of the iterated rearrangement."""
        values = iterated_rearrangement(random_grid).values
        assert np.all(np.diff(values, axis=0) <= 0)
        assert np.all(np.diff(values, axis=1) <= 0)

    def test_max_preserved(self, random_grid):
        """Test that the largest modulus moves to the origin."""
        values = iterated_rearrangement(random_grid).values
        assert values[0, 0] == pytest.approx(np.max(np.abs(random_grid.values)))

    def test_one_variable_matches_1d(self):
        """Test that one variable reduces to the 1-D rearrangement."""
        data = np.array([0.5, -4.0, 2.0, 1.0])
        assert np.array_equal(
            iterated_rearrangement(GridFunction(data)).values, rearrange_1d(data).steps
        )


class TestCatalog:
    """Test sampling of catalog test functions."""

    def test_exponential_orientation(self):
        """Test which numpy axis a frequency runs along."""
        f = sample(TestFunction("exponential", {"k": (1, 0)}), (8, 4))
        assert f.values.shape == (4, 8)
        assert f.values[0, 1] == pytest.approx(np.exp(2j * np.pi / 8))
        assert f.values[1, 0] == pytest.approx(1.0)
        assert np.allclose(f.modulus(), 1.0)

    def test_zero(self):
        """Test the zero function."""
        assert not np.any(sample(TestFunction("zero"), (4, 4)).values)

    def test_constant(self):
        """Test the constant function."""
        f = sample(TestFunction("constant", {"value": 3.0}), (5,))
        assert np.allclose(f.values, 3.0)

    def test_plateau(self):
        """Test the plateau function."""
        f = sample(TestFunction("plateau", {"height": 2.0, "fraction": 0.5}), (8,))
        assert np.array_equal(f.values, [2.0] * 4 + [0.0] * 4)

    def test_trig_sum_is_linear(self):
        """Test that a trigonometric sum adds its terms."""
        total = sample(
            TestFunction("trig_sum", {"k": [[1, 0], [0, 2]], "amplitude": [1.0, 0.5]}), (8, 8)
        )
        first = sample(TestFunction("exponential", {"k": (1, 0)}), (8, 8))
        second = sample(TestFunction("exponential", {"k": (0, 2), "amplitude": 0.5}), (8, 8))
        assert np.allclose(total.values, (first + second).values)

    def test_unknown_entry(self):
        """Test an unknown catalog name."""
        with pytest.raises(CatalogError):
            sample(TestFunction("gaussian"), (8,))

    def test_bad_size(self):
        """Test a zero grid size."""
        with pytest.raises(DomainError):
            sample(TestFunction("constant"), (8, 0))

    def test_frequency_length_mismatch(self):
        """Test a frequency with the wrong number of axes."""
        with pytest.raises(DomainError):
            sample(TestFunction("exponential", {"k": (1,)}), (8, 8))

    def test_scalar_frequency_repeats(self):
        """Test that a scalar frequency applies to every axis."""
        scalar = sample(TestFunction("exponential", {"k": 2}), (8, 8))
        vector = sample(TestFunction("exponential", {"k": (2, 2)}), (8, 8))
        assert np.allclose(scalar.values, vector.values)

    @pytest.mark.parametrize(
        "name, params",
        [
            ("exponential", {}),
            ("exponential", {"k": "2"}),
            ("exponential", {"k": (1.5,)}),
            ("trig_sum", {"k": 2}),
        ],
    )
    def test_malformed_parameters(self, name, params):
        """Test that malformed catalog parameters raise CatalogError."""
        with pytest.raises(CatalogError):
            sample(TestFunction(name, params), (8,))
