"""Orbit iteration and the classification decision procedure."""

import math

import pytest

from dynlab.fndef import fn_from_source
from dynlab.orbits import (OrbitConfig, OrbitKind, SeedNearSingularityError,
                           band_index, classify_orbit, iterate_orbit)
from dynlab.singular import Rect, singular_set
from dynlab.sphere import XComplex

TWO_PI = 2 * math.pi


class TestIterate:
    def test_simple_orbit(self):
        f = fn_from_source("z + 1")
        orbit = iterate_orbit(f, 0.0, OrbitConfig(max_iter=5))
        assert [v.value for v in orbit] == [complex(k) for k in range(6)]

    def test_orbit_stops_at_infinity(self):
        f = fn_from_source("exp(z)")
        orbit = iterate_orbit(f, 800.0, OrbitConfig(max_iter=5))
        assert orbit[-1] is XComplex.INFINITY
        assert len(orbit) == 2


class TestConfig:
    def test_positive_fields(self):
        with pytest.raises(ValueError):
            OrbitConfig(max_iter=0)
        with pytest.raises(ValueError):
            OrbitConfig(escape_radius=0)

    def test_p_max_cap(self):
        with pytest.raises(ValueError):
            OrbitConfig(p_max=9)


class TestClassify:
    def test_decisive_escape(self):
        out = classify_orbit(fn_from_source("z^2"), 2.0, None)
        assert out.kind is OrbitKind.EscapeInfinity
        assert out.target is XComplex.INFINITY
        assert out.iterations < 10

    def test_attracting_fixed_point(self):
        out = classify_orbit(fn_from_source("z^2"), 0.5, None)
        assert out.kind is OrbitKind.AttractingCycle
        assert out.period == 1
        assert abs(out.target.value) < 1e-6
        assert abs(out.multiplier) < 1e-3

    def test_attracting_two_cycle(self):
        # z^2 - 1 has the super-attracting 2-cycle {0, -1}
        out = classify_orbit(fn_from_source("z^2 - 1"), 0.1 + 0.1j, None)
        assert out.kind is OrbitKind.AttractingCycle
        assert out.period == 2

    def test_slow_escape_frozen_probe(self, band_map):
        # trend-based escape: frozen kind, budget, and residual
        out = classify_orbit(band_map, 5.0, None)
        assert out.kind is OrbitKind.EscapeInfinity
        assert out.iterations == 400
        assert out.final_chordal_residual == 0.3131364350813872

    def test_baker_finite_frozen_probe(self, sin_map, sin_map_sing):
        out = classify_orbit(sin_map, -0.4, sin_map_sing)
        assert out.kind is OrbitKind.BakerFinite
        assert out.target.value == 0j
        assert out.final_chordal_residual == 5.854057756236058e-05

    def test_singular_hit(self, sin_map, sin_map_sing):
        out = classify_orbit(sin_map, math.pi, sin_map_sing)
        assert out.kind is OrbitKind.SingularHit
        assert out.iterations == 0

    def test_strict_seed(self, sin_map, sin_map_sing):
        with pytest.raises(SeedNearSingularityError):
            classify_orbit(sin_map, math.pi + 1e-9, sin_map_sing,
                           strict_seed=True)
        # non-strict mode classifies the same seed as an immediate hit
        out = classify_orbit(sin_map, math.pi + 1e-9, sin_map_sing)
        assert out.kind is OrbitKind.SingularHit

    def test_wandering_with_band_trace(self, sin_map):
        h = sin_map.shifted(TWO_PI)
        sing = singular_set(h, Rect(-8, 8, -8, 8))
        out = classify_orbit(h, -6.75 - 0.09876543209876587j, sing,
                             period=TWO_PI)
        assert out.kind is OrbitKind.Wandering
        trace = out.band_trace
        assert trace[0] == -1
        assert all(b - a in (0, 1) for a, b in zip(trace, trace[1:]))
        assert trace[-1] > trace[0] + 300

    def test_period_changes_wandering_to_invariant_report(self, sin_map):
        # without the declared period there is no quotient: the drifting
        # orbit must not be reported Wandering
        h = fn_from_source("z + exp(1/sin(z)) + 2*pi")
        sing = singular_set(h, Rect(-8, 8, -8, 8))
        out = classify_orbit(h, -6.75 - 0.09876543209876587j, sing)
        assert out.kind is not OrbitKind.Wandering


class TestBandIndex:
    def test_vertical_period(self):
        P = complex(0.0, TWO_PI)
        assert band_index(0.5j, P) == 0
        assert band_index(1 + 3 * TWO_PI * 1j + 0.5j, P) == 3
        assert band_index(-1j * TWO_PI + 0.1j, P) == -1

    def test_horizontal_period(self):
        assert band_index(complex(3 * TWO_PI + 0.5, 2.0), TWO_PI) == 3

    def test_zero_period_rejected(self):
        with pytest.raises(ValueError):
            band_index(1.0, 0)
