"""Commutation, Julia-mask agreement, translation invariance, sectors."""

import math

import numpy as np
import pytest
from dataclasses import replace

from dynlab.fndef import fn_from_source
from dynlab.orbits import OrbitConfig
from dynlab.raster import RunConfig, render
from dynlab.singular import Rect, singular_set
from dynlab.verify import (InsufficientSamplesError, NoValidSamplesError,
                           ShiftConfigError, baker_sectors, check_commutation,
                           julia_equality, julia_mask, translation_invariance)

TWO_PI = 2 * math.pi


class TestCommutation:
    def test_identical_pair_is_zero(self, band_map):
        rep = check_commutation(band_map, band_map, 100, Rect(-4, 4, -4, 4))
        assert float(rep) == 0.0
        assert rep.used > 0

    def test_shifted_pair_commutes(self, band_map):
        g = band_map.shifted(complex(0, TWO_PI))
        # keep Re z >= -2: exp(-z) amplifies absolute residuals ~e^{-Re z}
        rep = check_commutation(band_map, g, 200,
                                Rect(-2, 10, -3 * math.pi, 3 * math.pi))
        assert float(rep) < 1e-9

    def test_sin_pair_commutes(self, sin_map, sin_map_sing):
        g = sin_map.shifted(TWO_PI)
        rep = check_commutation(sin_map, g, 200, Rect(-8, 8, -8, 8),
                                sing=sin_map_sing)
        assert float(rep) < 1e-6
        assert rep.used == 200

    def test_non_commuting_pair(self, band_map):
        g = fn_from_source("z^2")
        rep = check_commutation(band_map, g, 100, Rect(-4, 4, -4, 4))
        assert float(rep) > 1.0

    def test_all_samples_skipped(self, sin_map, sin_map_sing):
        tiny = Rect(math.pi - 1e-4, math.pi + 1e-4, -1e-4, 1e-4)
        with pytest.raises(NoValidSamplesError):
            check_commutation(sin_map, sin_map, 50, tiny, sing=sin_map_sing)


class TestJuliaMask:
    def test_mask_marks_kind_boundaries(self, band_map):
        cfg = RunConfig(fn_src=band_map.label,
                        window=Rect(-2, 10, -3 * math.pi, 3 * math.pi),
                        resolution=(64, 64), orbit=OrbitConfig(max_iter=200))
        mask = julia_mask(render(cfg))
        assert mask.shape == (64, 64)
        assert mask.dtype == np.bool_
        assert 0 < mask.sum() < mask.size

    def test_uniform_raster_has_empty_mask(self):
        cfg = RunConfig(fn_src="z + 1", window=Rect(-2, 2, -2, 2),
                        resolution=(16, 16))
        assert julia_mask(render(cfg)).sum() == 0


class TestJuliaEquality:
    def _cfg(self, fn, res=64, mi=200):
        return RunConfig(fn_src=fn.label,
                         window=Rect(-2, 10, -3 * math.pi, 3 * math.pi),
                         resolution=(res, res),
                         orbit=OrbitConfig(max_iter=mi),
                         period=fn.period)

    def test_identical_pair_is_exactly_one(self, band_map):
        rep = julia_equality(band_map, band_map, self._cfg(band_map))
        assert rep.agreement_fraction == 1.0
        assert rep.compared_pixels > 0
        assert not rep.disagreement_map.any()

    def test_symmetric_in_the_pair(self, band_map):
        g = band_map.shifted(complex(0, TWO_PI))
        cfg = self._cfg(band_map)
        a = julia_equality(band_map, g, cfg)
        b = julia_equality(g, band_map, cfg)
        assert a.agreement_fraction == b.agreement_fraction

    def test_precheck_rejects_non_commuting(self, band_map):
        g = fn_from_source("z^2")
        with pytest.raises(ValueError, match="commute"):
            julia_equality(band_map, g, self._cfg(band_map))


class TestTranslationInvariance:
    def test_trivial_map_full_agreement(self):
        f = fn_from_source("z + 1")
        cfg = RunConfig(fn_src="z + 1", window=Rect(-8, 8, -8, 8),
                        resolution=(64, 64))
        rep = translation_invariance(f, 4.0, cfg)
        assert rep.agreement_fraction == 1.0

    def test_non_axis_shift_rejected(self, band_map):
        cfg = RunConfig(fn_src=band_map.label, window=Rect(-8, 8, -8, 8),
                        resolution=(64, 64))
        with pytest.raises(ShiftConfigError):
            translation_invariance(band_map, 1 + 1j, cfg)

    def test_fractional_pixel_shift_rejected(self, band_map):
        cfg = RunConfig(fn_src=band_map.label, window=Rect(-8, 8, -8, 8),
                        resolution=(64, 64))
        with pytest.raises(ShiftConfigError):
            translation_invariance(band_map, 1.0001, cfg)


class TestBakerSectors:
    def test_sin_single_sector(self, sin_map, sin_map_sing):
        rep = baker_sectors(sin_map, 0j, 1, (0.01, 0.1), 1000,
                            sing=sin_map_sing)
        assert len(rep.clusters) == 1
        assert rep.kept_samples >= 20

    def test_inverse_square_two_sectors(self):
        f = fn_from_source("z + exp(1/z^2)")
        rep = baker_sectors(f, 0j, 2, (0.01, 0.1), 1000)
        assert len(rep.clusters) == 2
        for _center, width, count in rep.clusters:
            assert width <= TWO_PI / 2 + 0.2
            assert count >= 20

    def test_sectors_disjoint_and_sorted(self):
        f = fn_from_source("z + exp(1/z^3)")
        rep = baker_sectors(f, 0j, 3, (0.01, 0.1), 1500)
        centers = [c[0] for c in rep.clusters]
        assert centers == sorted(centers)
        assert len(rep.clusters) == 3

    def test_pole_must_be_singular(self, sin_map, sin_map_sing):
        with pytest.raises(ValueError):
            baker_sectors(sin_map, 1 + 0j, 1, (0.01, 0.1), 100,
                          sing=sin_map_sing)

    def test_insufficient_samples(self, sin_map, sin_map_sing):
        with pytest.raises(InsufficientSamplesError):
            baker_sectors(sin_map, 0j, 1, (0.01, 0.1), 30,
                          sing=sin_map_sing)
