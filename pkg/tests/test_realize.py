"""Realization routes: closed forms, the IVT solver, and the dispatcher."""

import math

import numpy as np
import pytest

from cycle4 import (
    DomainError,
    Method,
    NotOnCurve,
    NotStrictInterior,
    OutsideRegion,
    SpectralPoint,
    al_params,
    eigenvalues,
    eval_g,
    realize,
    realize_interior,
    realize_left_curve,
    realize_right_edge,
    s_minus,
)
from cycle4.angles import TWO_PI
from cycle4.region import Constraint


class TestRightEdge:
    def test_corner(self):
        cert = realize_right_edge(1.0)
        assert cert.params.as_tuple() == (0, 0, 0, 0)
        assert cert.target.as_complex() == 1j
        assert cert.eig_residual <= 1e-12

    def test_midpoint(self):
        cert = realize_right_edge(0.5)
        assert cert.params.as_tuple() == (0.5, 0.5, 0.5, 0.5)
        assert cert.method is Method.RIGHT_EDGE
        assert cert.psi_residual is None and cert.angles is None

    def test_excluded_endpoint(self):
        with pytest.raises(DomainError):
            realize_right_edge(0.0)
        with pytest.raises(DomainError):
            realize_right_edge(1.1)

    def test_whole_edge(self):
        for x in np.linspace(0.01, 1.0, 50):
            cert = realize_right_edge(x)
            assert cert.eig_residual <= 1e-10


class TestLeftCurve:
    def test_corner_i(self):
        cert = realize_left_curve(SpectralPoint(0.0, 1.0))
        assert cert.params.as_tuple() == (0, 0, 0, 0)
        assert cert.method is Method.LEFT_CURVE

    def test_roundtrip_alpha_half(self):
        lam = eigenvalues(al_params(0.5)).nonreal_pair()[0]
        cert = realize_left_curve(SpectralPoint(lam.real, lam.imag))
        assert abs(cert.params.alpha - 0.5) <= 1e-9
        assert cert.params.as_tuple()[1:] == (0, 0, 0)
        assert cert.eig_residual <= 1e-9

    def test_off_curve(self):
        with pytest.raises(NotOnCurve):
            realize_left_curve(SpectralPoint(0.2, 0.4))

    def test_curve_sweep(self):
        for alpha in np.linspace(0.0, 0.95, 40):
            lam = eigenvalues(al_params(alpha)).nonreal_pair()[0]
            cert = realize_left_curve(SpectralPoint(lam.real, lam.imag))
            assert abs(cert.params.alpha - alpha) <= 1e-9


class TestInterior:
    def test_reference_point(self):
        cert = realize_interior(SpectralPoint(0.2, 0.4))
        assert cert.method is Method.INTERIOR_IVT
        assert cert.eig_residual <= 1e-8
        assert cert.psi_residual <= 1e-10
        assert abs(sum(cert.angles.as_tuple()) - TWO_PI) <= 1e-12

    def test_edge_point_rejected(self):
        with pytest.raises(NotStrictInterior):
            realize_interior(SpectralPoint(0.5, 0.5))

    def test_negative_g_rejected(self):
        with pytest.raises(NotStrictInterior):
            realize_interior(SpectralPoint(0.0, 0.5))

    def test_gap_and_param_ranges(self):
        rng = np.random.default_rng(137)
        done = 0
        while done < 200:
            a, b = rng.random(), rng.uniform(0.01, 0.99)
            if a + b >= 1 - 1e-3 or eval_g(a, b) <= 1e-3:
                continue
            done += 1
            cert = realize_interior(SpectralPoint(a, b))
            for t in cert.gaps.as_tuple():
                assert 0 < t <= 1 + 1e-12
            for q in cert.params.as_tuple():
                assert 0 <= q < 1

    def test_deep_unbounded_point(self):
        # small b relative to 1-a: the segment crossing sits in the steep
        # zone and exercises the spread refinement
        cert = realize_interior(SpectralPoint(0.04, 0.02))
        assert cert.eig_residual <= 1e-8
        assert cert.psi_residual <= 1e-10

    def test_tight_interior_point(self):
        p = SpectralPoint(0.16, 0.44)
        assert eval_g(0.16, 0.44) > 1e-3
        cert = realize_interior(p)
        assert cert.eig_residual <= 1e-8


class TestDispatch:
    def test_conjugation_same_params(self):
        up = realize(SpectralPoint(0.5, 0.5))
        dn = realize(SpectralPoint(0.5, -0.5))
        assert up.params == dn.params
        ui = realize(SpectralPoint(0.2, 0.4))
        di = realize(SpectralPoint(0.2, -0.4))
        assert ui.params == di.params

    def test_outside(self):
        with pytest.raises(OutsideRegion) as exc:
            realize(SpectralPoint(0.9, 0.5))
        assert Constraint.RIGHT_EDGE in exc.value.verdict.violated

    def test_real_axis(self):
        with pytest.raises(OutsideRegion):
            realize(SpectralPoint(0.5, 0.0))

    def test_corner_routes_right_edge(self):
        cert = realize(SpectralPoint(1e-12, 1.0))
        assert cert.method is Method.RIGHT_EDGE
        assert cert.params.as_tuple() == (0, 0, 0, 0)
        assert cert.eig_residual <= 1e-8

    def test_left_curve_route(self):
        b = math.sqrt(s_minus(0.1))
        cert = realize(SpectralPoint(0.1, b))
        assert cert.method is Method.LEFT_CURVE
        assert cert.eig_residual <= 1e-8

    def test_interior_route(self):
        cert = realize(SpectralPoint(0.2, 0.4))
        assert cert.method is Method.INTERIOR_IVT
        assert cert.target.b == 0.4
