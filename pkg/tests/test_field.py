import numpy as np
import pytest

from holoquant import (
    ComplexField,
    FieldShapeError,
    apply_pixel_delta,
    dft,
    idft,
    pixel_phasor,
    total_power,
)
from conftest import naive_dft, random_field


class TestComplexField:
    def test_copies_and_freezes_input(self):
        data = np.ones((2, 3), dtype=complex)
        f = ComplexField(data)
        data[0, 0] = 99.0
        assert f.values[0, 0] == 1.0
        with pytest.raises(ValueError):
            f.values[0, 0] = 0.0

    def test_shape_properties(self):
        f = ComplexField(np.zeros((3, 5)))
        assert f.shape == (3, 5)
        assert f.height == 3
        assert f.width == 5

    @pytest.mark.parametrize("bad", [np.zeros(4), np.zeros((2, 2, 2)), np.zeros((0, 3))])
    def test_rejects_non_2d(self, bad):
        with pytest.raises(FieldShapeError):
            ComplexField(bad)

    def test_accepts_real_input(self):
        f = ComplexField(np.array([[1.0, 2.0]]))
        assert f.values.dtype == np.complex128


class TestDft:
    def test_2x2_known_value(self):
        f = ComplexField(np.array([[1, 2], [3, 4]], dtype=complex))
        expected = np.array([[5, -1], [-2, 0]], dtype=complex)
        assert np.allclose(dft(f).values, expected, atol=1e-12)

    def test_matches_direct_sum_oracle(self, rng):
        for h, w in [(2, 2), (3, 4), (4, 3), (5, 5), (8, 4)]:
            f = random_field(rng, h, w)
            assert np.allclose(dft(f).values, naive_dft(f.values), atol=1e-10)

    def test_idft_inverts_dft(self, rng):
        f = random_field(rng, 6, 9)
        assert np.allclose(idft(dft(f)).values, f.values, atol=1e-12)
        assert np.allclose(dft(idft(f)).values, f.values, atol=1e-12)

    def test_parseval(self, rng):
        f = random_field(rng, 7, 3)
        assert total_power(dft(f)) == pytest.approx(total_power(f), rel=1e-12)

    def test_impulse_gives_uniform_replay(self):
        h = np.zeros((4, 4), dtype=complex)
        h[0, 0] = 1.0
        replay = dft(ComplexField(h))
        assert np.allclose(replay.values, 0.25, atol=1e-14)


class TestPixelPhasor:
    def test_matches_dft_of_impulse(self, rng):
        for x, y, w, h in [(0, 0, 4, 4), (2, 1, 4, 3), (3, 5, 5, 7)]:
            imp = np.zeros((h, w), dtype=complex)
            imp[y, x] = 1.0
            assert np.allclose(pixel_phasor(w, h, x, y), dft(ComplexField(imp)).values, atol=1e-12)


class TestApplyPixelDelta:
    def test_matches_full_retransform(self, rng):
        f = random_field(rng, 5, 6)
        replay = dft(f)
        for x, y, delta in [(0, 0, 1.0), (5, 4, -0.5 + 2j), (3, 2, 1j)]:
            modified = np.array(f.values)
            modified[y, x] += delta
            expected = dft(ComplexField(modified))
            got = apply_pixel_delta(replay, x, y, delta)
            assert np.allclose(got.values, expected.values, atol=1e-10)

    def test_zero_hologram_single_pixel(self):
        replay = dft(ComplexField(np.zeros((4, 4), dtype=complex)))
        got = apply_pixel_delta(replay, 0, 0, 1.0)
        assert np.allclose(got.values, 0.25, atol=1e-14)

    @pytest.mark.parametrize("x,y", [(-1, 0), (0, -1), (4, 0), (0, 4)])
    def test_out_of_bounds(self, x, y):
        replay = dft(ComplexField(np.zeros((4, 4), dtype=complex)))
        with pytest.raises(IndexError):
            apply_pixel_delta(replay, x, y, 1.0)


def test_total_power_known_value():
    f = ComplexField(np.array([[3, 4j], [0, 0]], dtype=complex))
    assert total_power(f) == pytest.approx(25.0)
