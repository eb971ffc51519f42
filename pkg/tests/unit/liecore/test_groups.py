"""Unit tests for the matrix groups and the Iwasawa decomposition."""

from __future__ import annotations

import warnings

import numpy as np
import pytest

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ConfigurationError, SingularInput
from horolab.liecore.groups import (
    Orthogonal,
    PositiveDiagonal,
    SpecialLinear,
    UnitUpper,
    iwasawa_arrays,
    iwasawa_nak,
    random_rotation,
    random_special_linear,
)


class TestSpecialLinear:
    """Tests for SpecialLinear."""

    def test_rejects_wrong_determinant(self) -> None:
        with pytest.raises(ConfigurationError, match="determinant"):
            SpecialLinear(np.diag([2.0, 1.0]))

    def test_rejects_non_square(self) -> None:
        with pytest.raises(ConfigurationError):
            SpecialLinear(np.ones((2, 3)))

    def test_normalized_fixes_sign_and_scale(self) -> None:
        """normalized rescales and flips the last column for det < 0."""
        g = SpecialLinear.normalized(np.diag([2.0, -3.0]))
        assert np.linalg.det(g.entries) == pytest.approx(1.0)
        assert g.entries[1, 1] > 0

    def test_normalized_singular(self) -> None:
        with pytest.raises(SingularInput):
            SpecialLinear.normalized(np.zeros((3, 3)))

    def test_inverse_and_product(self, rng: np.random.Generator) -> None:
        g = random_special_linear(rng, 3)
        assert np.allclose((g @ g.inverse()).entries, np.eye(3))

    def test_entries_read_only(self) -> None:
        g = SpecialLinear(np.eye(2))
        with pytest.raises(ValueError):
            g.entries[0, 0] = 2.0


class TestUnitUpper:
    """Tests for UnitUpper."""

    def test_rejects_lower_entries(self) -> None:
        with pytest.raises(ConfigurationError):
            UnitUpper(np.array([[1.0, 0.0], [0.5, 1.0]]))

    def test_inverse(self) -> None:
        u = UnitUpper(np.array([[1.0, 2.0, 3.0], [0.0, 1.0, 4.0], [0.0, 0.0, 1.0]]))
        assert np.allclose(u.entries @ u.inverse().entries, np.eye(3))

    def test_identity(self) -> None:
        assert np.array_equal(UnitUpper.identity(4).entries, np.eye(4))


class TestDiagonalAndRotation:
    """Tests for PositiveDiagonal and Orthogonal."""

    def test_positive_diagonal_product(self) -> None:
        with pytest.raises(ConfigurationError, match="multiply to 1"):
            PositiveDiagonal(np.array([2.0, 2.0]))

    def test_positive_diagonal_log(self) -> None:
        a = PositiveDiagonal(np.array([np.e, 1.0 / np.e]))
        assert np.allclose(a.log, [1.0, -1.0])

    def test_orthogonal_rejects_reflection(self) -> None:
        with pytest.raises(ConfigurationError):
            Orthogonal(np.diag([1.0, -1.0]))

    def test_random_rotation(self, rng: np.random.Generator) -> None:
        q = random_rotation(rng, 4).entries
        assert np.allclose(q @ q.T, np.eye(4))
        assert np.linalg.det(q) == pytest.approx(1.0)


class TestIwasawa:
    """Tests for the n a k factorization."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_reconstructs(self, rng: np.random.Generator, n: int) -> None:
        """n a k multiplies back to g."""
        for _ in range(20):
            g = random_special_linear(rng, n, scale=1.5)
            factors = iwasawa_nak(g)
            err = np.linalg.norm(factors.reconstruct() - g.entries) / np.linalg.norm(g.entries)
            assert err <= 1e-10

    def test_identity(self) -> None:
        factors = iwasawa_nak(SpecialLinear(np.eye(3)))
        assert np.allclose(factors.a.diag, 1.0)
        assert np.allclose(factors.n.entries, np.eye(3))

    def test_diagonal_input(self) -> None:
        """A positive diagonal is its own A factor."""
        d = np.array([4.0, 1.0, 0.25])
        factors = iwasawa_nak(SpecialLinear(np.diag(d)))
        assert np.allclose(factors.a.diag, d)

    def test_ill_conditioned_warns(self) -> None:
        g = SpecialLinear(np.diag([1e7, 1.0, 1e-7]))
        with pytest.warns(RuntimeWarning, match="ill-conditioned"):
            iwasawa_nak(g, NumericPolicy(condition_warning=1e6))

    def test_well_conditioned_is_silent(self, rng: np.random.Generator) -> None:
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            iwasawa_nak(random_special_linear(rng, 3))

    def test_singular_pivot(self) -> None:
        with pytest.raises(SingularInput):
            iwasawa_arrays(np.zeros((3, 3)))
