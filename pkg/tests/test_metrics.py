import numpy as np
import pytest

from holoquant import (
    ComplexField,
    mse_phase_insensitive,
    mse_power_matched,
    relative_error_pct,
)
from conftest import random_field


def field_from_mags(mags) -> ComplexField:
    return ComplexField(np.asarray(mags, dtype=complex))


class TestPhaseInsensitiveMse:
    def test_identical_fields(self, rng):
        f = random_field(rng, 4, 4)
        assert mse_phase_insensitive(f, f) == 0.0

    def test_unit_target_zero_replay(self):
        t = field_from_mags(np.ones((3, 3)))
        r = field_from_mags(np.zeros((3, 3)))
        assert mse_phase_insensitive(t, r) == pytest.approx(1.0)

    def test_2x2_known_value(self):
        t = field_from_mags([[1, 0], [0, 1]])
        r = field_from_mags([[0, 0], [0, 0]])
        assert mse_phase_insensitive(t, r) == pytest.approx(0.5)

    def test_symmetric_in_arguments(self, rng):
        t, r = random_field(rng, 5, 5), random_field(rng, 5, 5)
        assert mse_phase_insensitive(t, r) == pytest.approx(mse_phase_insensitive(r, t), rel=1e-14)

    def test_phase_insensitive(self, rng):
        t, r = random_field(rng, 6, 6), random_field(rng, 6, 6)
        phases = np.exp(1j * rng.uniform(-np.pi, np.pi, (6, 6)))
        rotated = ComplexField(r.values * phases)
        assert abs(mse_phase_insensitive(t, rotated) - mse_phase_insensitive(t, r)) < 1e-12

    def test_zero_iff_equal_moduli(self, rng):
        t = random_field(rng, 4, 4)
        same_mags = ComplexField(np.abs(t.values) * np.exp(0.7j))
        assert mse_phase_insensitive(t, same_mags) < 1e-28
        other = ComplexField(t.values + 1.0)
        assert mse_phase_insensitive(t, other) > 0.0

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            mse_phase_insensitive(random_field(rng, 2, 2), random_field(rng, 2, 3))


class TestPowerMatchedMse:
    def test_scaled_replay_is_perfect(self, rng):
        t = random_field(rng, 4, 4)
        for c in (0.1, 3.0, 250.0):
            assert mse_power_matched(t, ComplexField(c * t.values)) < 1e-12

    def test_equal_fields_match_plain_metric(self, rng):
        t = random_field(rng, 4, 4)
        assert mse_power_matched(t, t) == pytest.approx(mse_phase_insensitive(t, t), abs=1e-15)

    def test_2x2_known_value(self):
        t = field_from_mags([[1, 0], [0, 0]])
        r = field_from_mags([[2, 0], [0, 0]])
        assert mse_power_matched(t, r) == pytest.approx(0.0, abs=1e-15)

    def test_zero_replay_rejected(self, rng):
        t = random_field(rng, 3, 3)
        with pytest.raises(ValueError):
            mse_power_matched(t, field_from_mags(np.zeros((3, 3))))


class TestRelativeErrorPct:
    def test_equal_errors(self):
        assert relative_error_pct(0.5, 0.5) == pytest.approx(100.0)

    def test_zero_final(self):
        assert relative_error_pct(0.0, 0.3) == 0.0

    def test_table_style_value(self):
        e_initial = 0.173
        assert relative_error_pct(0.2457 * e_initial, e_initial) == pytest.approx(24.57)

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_nonpositive_initial_rejected(self, bad):
        with pytest.raises(ValueError):
            relative_error_pct(0.1, bad)
