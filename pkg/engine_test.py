import math
from fractions import Fraction

import numpy as np
import pytest

from exact_oracle import exact_weights, floor_exact, improved_exact, improved_swapped_exact, round_half_away_exact
from src.roundspec.engine.bilinear import (
    ALL_SCHEMES,
    SchemeId,
    disagreement_count,
    elapsed_time,
    interpolate_exact,
    interpolate_pixel,
    locus,
    neighborhood_at,
    resize,
    resize_values,
    source_loci,
    timing_stats,
    weights,
)
from src.roundspec.engine.types import GrayImage, Neighborhood, WeightVector
from src.roundspec.utils.errors import ParameterError

# (dr, dc) -> exact interpolated value, for the four worked neighborhoods
WORKED_TABLES = {
    (91, 162, 210, 95): {(0, 0.5): 150.5, (1, 0.5): 128.5, (0.5, 1): 152.5, (0.5, 0): 126.5, (0.5, 0.5): 139.5},
    (125, 99, 255, 17): {(0, 0.5): 190.0, (1, 0.5): 58.0, (0.5, 1): 136.0, (0.5, 0): 112.0, (0.5, 0.5): 124.0},
    (191, 102, 111, 195): {(0, 0.5): 151.0, (1, 0.5): 148.5, (0.5, 1): 153.0, (0.5, 0): 146.5, (0.5, 0.5): 149.75},
    (32, 33, 72, 72): {(0, 0.5): 52.0, (1, 0.5): 52.5, (0.5, 1): 72.0, (0.5, 0): 32.5, (0.5, 0.5): 52.25},
}

ORACLES = {
    SchemeId.BA_F: floor_exact,
    SchemeId.BA_R: round_half_away_exact,
    SchemeId.BA_M: improved_exact,
    SchemeId.BA_M_SWAP: improved_swapped_exact,
}


def _closed_weights(dr, dc) -> WeightVector:
    """the weight formula without the [0, 1) check, for the offset-1 rows of the worked tables"""
    return WeightVector((1 - dr) * (1 - dc), dr * (1 - dc), (1 - dr) * dc, dr * dc)


def _random_image(rng, height, width) -> GrayImage:
    return GrayImage(rng.integers(0, 256, size=(height, width)))


class TestWeights:
    def test_examples(self):
        assert weights(0.0, 0.0).as_tuple() == (1.0, 0.0, 0.0, 0.0)
        assert weights(0.5, 0.5).as_tuple() == (0.25, 0.25, 0.25, 0.25)
        assert weights(0.0, 0.5).as_tuple() == (0.5, 0.0, 0.5, 0.0)

    @pytest.mark.parametrize("dr, dc", [(1.0, 0.0), (0.0, -0.1), (math.nan, 0.0), (0.5, math.inf)])
    def test_out_of_range(self, dr, dc):
        with pytest.raises(ParameterError):
            weights(dr, dc)

    def test_dyadic_offsets_sum_to_one_and_stay_in_hull(self):
        rng = np.random.default_rng(43)
        for _ in range(10000):
            dr, dc = (int(k) / 1024 for k in rng.integers(0, 1024, size=2))
            w = weights(dr, dc)
            assert abs(sum(w.as_tuple()) - 1.0) <= 2 * math.ulp(1.0)
            nb = Neighborhood(*(int(n) for n in rng.integers(0, 256, size=4)))
            assert min(nb.as_tuple()) <= interpolate_exact(nb, w) <= max(nb.as_tuple())


class TestWorkedTables:
    def test_exact_values(self):
        for quad, rows in WORKED_TABLES.items():
            nb = Neighborhood(*quad)
            for (dr, dc), expected in rows.items():
                assert interpolate_exact(nb, _closed_weights(dr, dc)) == expected, (quad, dr, dc)

    def test_half_pixel_schemes(self):
        nb, w = Neighborhood(91, 162, 210, 95), weights(0.5, 0.5)
        assert interpolate_pixel(nb, w, SchemeId.BA_F) == 139
        assert interpolate_pixel(nb, w, SchemeId.BA_R) == 140
        assert interpolate_pixel(nb, w, SchemeId.BA_M) == 142
        assert interpolate_pixel(nb, w, SchemeId.BA_M_SWAP) == 142

    def test_clamp(self):
        nb, w = Neighborhood(255, 255, 255, 255), weights(0.5, 0.5)
        assert interpolate_pixel(nb, w, SchemeId.BA_M, clamp=False) == 258
        assert interpolate_pixel(nb, w, SchemeId.BA_M) == 255

    def test_corners_are_exact(self):
        nb, w = Neighborhood(17, 200, 3, 99), weights(0.0, 0.0)
        for scheme in (SchemeId.BA_F, SchemeId.BA_R):
            assert interpolate_pixel(nb, w, scheme) == 17

    def test_neighborhood_range(self):
        with pytest.raises(ParameterError):
            Neighborhood(0, 256, 0, 0)


class TestSchemeProperties:
    def test_against_oracle(self):
        """every scheme on quarter-pixel offsets against exact rational evaluation"""
        rng = np.random.default_rng(47)
        for _ in range(1000):
            quad = tuple(int(n) for n in rng.integers(0, 256, size=4))
            dr, dc = (Fraction(int(k), 4) for k in rng.integers(0, 4, size=2))
            w = weights(float(dr), float(dc))
            exact_w = exact_weights(dr, dc)
            for scheme, oracle in ORACLES.items():
                assert interpolate_pixel(Neighborhood(*quad), w, scheme, clamp=False) == oracle(quad, exact_w), (quad, dr, dc, scheme)

    def test_ba_m_matches_oracle_on_arbitrary_offsets(self):
        rng = np.random.default_rng(53)
        mismatches = []
        for _ in range(1000):
            quad = tuple(int(n) for n in rng.integers(0, 256, size=4))
            dr, dc = (float(x) for x in rng.uniform(0, 1, size=2))
            got = interpolate_pixel(Neighborhood(*quad), weights(dr, dc), SchemeId.BA_M, clamp=False)
            expected = improved_exact(quad, exact_weights(dr, dc))
            if got != expected:
                mismatches.append(got - expected)
        assert len(mismatches) <= 1
        assert all(abs(d) == 1 for d in mismatches)

    def test_ordering_invariants(self):
        rng = np.random.default_rng(59)
        for _ in range(10000):
            nb = Neighborhood(*(int(n) for n in rng.integers(0, 256, size=4)))
            w = weights(*(float(x) for x in rng.uniform(0, 1, size=2)))
            ba_f = interpolate_pixel(nb, w, SchemeId.BA_F)
            ba_r = interpolate_pixel(nb, w, SchemeId.BA_R)
            ba_m = interpolate_pixel(nb, w, SchemeId.BA_M, clamp=False)
            assert ba_f <= ba_r <= ba_f + 1
            assert ba_f <= ba_m <= ba_f + 4
            assert 0 <= interpolate_pixel(nb, w, SchemeId.BA_M) <= 255
            assert 0 <= interpolate_pixel(nb, w, SchemeId.BA_M_SWAP) <= 255


class TestMapping:
    def test_source_loci(self):
        base, offset = source_loci(6, 2)
        assert base.tolist() == [0, 0, 1, 1, 2, 2]
        assert offset.tolist() == [0.0, 0.5, 0.0, 0.5, 0.0, 0.5]

    def test_rational_scale(self):
        base, offset = source_loci(3, Fraction(3, 2))
        assert base.tolist() == [0, 0, 1]
        assert offset.tolist() == [0.0, 2 / 3, 1 / 3]

    def test_locus(self):
        point = locus(5, 3, 3)
        assert (point.r, point.c, point.dc) == (1, 1, 0.0)
        assert point.dr == 2 / 3

    def test_neighborhood_clamps_at_the_border(self):
        img = GrayImage.from_rows([[1, 2], [3, 4]])
        assert neighborhood_at(img, 0, 0).as_tuple() == (1, 3, 2, 4)
        assert neighborhood_at(img, 1, 1).as_tuple() == (4, 4, 4, 4)
        with pytest.raises(ParameterError):
            neighborhood_at(img, 2, 0)

    @pytest.mark.parametrize("scale", [0.5, 0, -2, "abc", math.inf, -math.inf, math.nan])
    def test_bad_scale(self, scale):
        with pytest.raises(ParameterError):
            resize(GrayImage.from_rows([[1, 2], [3, 4]]), scale, SchemeId.BA_F)


class TestResize:
    def test_dimensions(self):
        img = _random_image(np.random.default_rng(61), 128, 128)
        assert resize(img, 2, SchemeId.BA_M).pixels.shape == (256, 256)
        assert resize(GrayImage.from_rows([[1, 2], [3, 4]]), Fraction(3, 2), SchemeId.BA_F).pixels.shape == (3, 3)
        assert resize(_random_image(np.random.default_rng(1), 5, 7), Fraction(5, 2), SchemeId.BA_R).pixels.shape == (12, 17)

    def test_scale_one_is_identity(self):
        img = _random_image(np.random.default_rng(67), 9, 13)
        for scheme in ALL_SCHEMES:
            assert resize(img, 1, scheme) == img, scheme

    def test_constant_image(self):
        img = GrayImage(np.full((2, 2), 77))
        for scheme in (SchemeId.BA_F, SchemeId.BA_R):
            assert resize(img, 2, scheme) == GrayImage(np.full((4, 4), 77))
        # the modulo schemes add up to one unit per fractional addend
        out = resize(img, 2, SchemeId.BA_M).pixels
        assert out.min() >= 77 and out.max() <= 81

    def test_matches_scalar_path(self):
        rng = np.random.default_rng(71)
        img = _random_image(rng, 6, 5)
        for scale in (2, 3, Fraction(5, 2)):
            for scheme in ALL_SCHEMES:
                values = resize_values(img, scale, scheme)
                for r_out in range(values.shape[0]):
                    for c_out in range(values.shape[1]):
                        point = locus(r_out, c_out, scale)
                        nb = neighborhood_at(img, point.r, point.c)
                        expected = interpolate_pixel(nb, weights(point.dr, point.dc), scheme, clamp=False)
                        assert values[r_out, c_out] == expected, (scale, scheme, r_out, c_out)

    def test_deterministic(self):
        img = _random_image(np.random.default_rng(73), 32, 32)
        for scheme in ALL_SCHEMES:
            assert resize(img, 3, scheme) == resize(img, 3, scheme)

    def test_bright_image_clamps(self):
        img = GrayImage(np.full((3, 3), 255))
        assert resize_values(img, 2, SchemeId.BA_M).max() > 255
        assert resize(img, 2, SchemeId.BA_M).pixels.max() == 255

    def test_disagreement_count(self):
        a = GrayImage.from_rows([[1, 2], [3, 4]])
        b = GrayImage.from_rows([[1, 2], [3, 5]])
        assert disagreement_count(a, a) == 0
        assert disagreement_count(a, b) == 1
        with pytest.raises(ParameterError):
            disagreement_count(a, GrayImage.from_rows([[1, 2]]))


class TestTiming:
    def test_elapsed_time(self):
        img = _random_image(np.random.default_rng(79), 128, 128)
        for scheme in ALL_SCHEMES:
            assert elapsed_time(img, 5, scheme) > 0

    def test_stats(self):
        stats = timing_stats(GrayImage(np.zeros((8, 8), dtype=np.uint8)), 2, SchemeId.BA_F, repetitions=3)
        assert stats.repetitions == 3
        assert (stats.output_width, stats.output_height) == (16, 16)
        assert stats.min_seconds <= stats.mean_seconds <= stats.max_seconds

    def test_bad_repetitions(self):
        with pytest.raises(ParameterError):
            timing_stats(GrayImage(np.zeros((2, 2), dtype=np.uint8)), 2, SchemeId.BA_F, repetitions=0)


class TestGrayImage:
    def test_validation(self):
        with pytest.raises(ParameterError):
            GrayImage(np.zeros((1, 0), dtype=np.uint8))
        with pytest.raises(ParameterError):
            GrayImage(np.zeros(4, dtype=np.uint8))
        with pytest.raises(ParameterError):
            GrayImage.from_rows([[0, 256]])
        with pytest.raises(ParameterError):
            GrayImage(np.array([[0.5]]))

    def test_is_read_only_copy(self):
        source = np.zeros((2, 2), dtype=np.uint8)
        img = GrayImage(source)
        source[0, 0] = 9
        assert img.pixels[0, 0] == 0
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 1


if __name__ == "__main__":
    pytest.main([__file__, "-q"])
