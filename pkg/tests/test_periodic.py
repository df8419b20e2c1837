"""Periodic point search, multiplier classification, transport checks."""

import math

import pytest

from dynlab.fndef import fn_from_source
from dynlab.periodic import (FindDiagnostics, classify_multiplier,
                             find_periodic, multiplier_transport)
from dynlab.singular import Rect, singular_set

TWO_PI = 2 * math.pi


class TestClassifyMultiplier:
    def test_bands(self):
        assert classify_multiplier(0.3 + 0j) == "Attracting"
        assert classify_multiplier(2 + 0j) == "Repelling"
        assert classify_multiplier(1 + 0j) == "Parabolic"
        assert classify_multiplier(1 + 1e-8j) == "Parabolic"
        assert classify_multiplier(complex(math.cos(1), math.sin(1))) == \
            "Indifferent"


class TestFindPeriodic:
    def test_super_attracting_lattice(self):
        f = fn_from_source("z - 1 + exp(-z)")
        pts = find_periodic(f, 1, Rect(-1, 1, -7, 7))
        assert len(pts) == 3
        targets = sorted(p.z.imag for p in pts)
        assert targets == pytest.approx([-TWO_PI, 0.0, TWO_PI], abs=1e-8)
        for p in pts:
            assert abs(p.z.real) < 1e-8
            assert abs(p.multiplier) < 1e-10
            assert p.kind == "Attracting"
            assert p.residual < 1e-9

    def test_parabolic_degenerate_root(self):
        f = fn_from_source("z*exp(-z)")
        pts = find_periodic(f, 1, Rect(-1, 1, -1, 1))
        assert len(pts) == 1
        p = pts[0]
        assert abs(p.z) < 1e-8
        assert abs(p.multiplier - 1) < 1e-10
        assert p.kind == "Parabolic"

    def test_minimal_period_filter(self):
        # the only genuine 2-cycle of z^2 in the disk is the cube roots
        # of unity other than 1; the fixed points 0 and 1 must not appear
        f = fn_from_source("z^2")
        pts = find_periodic(f, 2, Rect(-2, 2, -2, 2))
        assert len(pts) == 2
        for p in pts:
            assert p.period == 2
            assert abs(abs(p.z) - 1.0) < 1e-10
            assert abs(p.multiplier - 4.0) < 1e-8
            assert p.kind == "Repelling"

    def test_window_containment_and_diagnostics(self):
        f = fn_from_source("z - 1 + exp(-z)")
        diag = FindDiagnostics()
        win = Rect(-1, 1, -14, 14)
        pts = find_periodic(f, 1, win, diagnostics=diag)
        for p in pts:
            assert win.re_min <= p.z.real <= win.re_max
            assert win.im_min <= p.z.imag <= win.im_max
        assert diag.seeds > 0
        assert diag.converged >= diag.kept == len(pts)


class TestTransport:
    def test_sin_map_pair(self, sin_map, sin_map_sing):
        pts = find_periodic(sin_map, 2, Rect(-8, 8, -8, 8),
                            sing=sin_map_sing)
        assert len(pts) > 0
        checks = multiplier_transport(sin_map, TWO_PI, pts,
                                      sing=sin_map_sing)
        assert len(checks) == len(pts)
        done = [c for c in checks if not c.skipped]
        assert done
        for c in done:
            assert c.periodicity_residual < 1e-6
            assert c.multiplier_residual < 1e-6

    def test_critical_point_skipped(self):
        f = fn_from_source("z^2")
        pts = find_periodic(f, 1, Rect(-2, 2, -2, 2))
        checks = multiplier_transport(f, 1.0, pts)
        by_z = {round(c.point.z.real): c for c in checks}
        assert by_z[0].skipped and "critical" in by_z[0].reason
        assert not by_z[1].skipped
