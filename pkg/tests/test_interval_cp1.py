"""Interval-model tests: boundary projections, spectra, determinants,
curvature, and the metric patching identity.

The adjoint projection is checked against the integration-by-parts oracle:
the boundary pairing of D = i d/dx on Cauchy data is
form((p0, p1), (q0, q1)) = i (p1 conj(q1) - p0 conj(q0)), and the adjoint
condition is the annihilator of the domain data under this pairing.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detline import interval_cp1 as cp1
from detline.errors import DegenerateSpectrum, DomainError
from detline.specfun import FdStencil


def boundary_pairing(p, q):
    """Green's-formula boundary term for D = i d/dx on [0, 2 pi]."""
    return 1j * (p[1] * np.conj(q[1]) - p[0] * np.conj(q[0]))


def adjoint_oracle(z):
    """Rank-one projection annihilating the Green-orthogonal data.

    Domain data of D_{P_z} span (-conj(z), 1); the pairing above vanishes
    against exactly the span of (1, -z), so the adjoint projection is the
    orthogonal projection with kernel span{(1, -z)}.
    """
    kernel = np.array([1.0, -z], dtype=complex)
    kernel = kernel / np.linalg.norm(kernel)
    return np.eye(2, dtype=complex) - np.outer(kernel, kernel.conj())


chart_points = st.complex_numbers(
    max_magnitude=3.0, allow_nan=False, allow_infinity=False
).filter(lambda z: abs(z + 1) > 0.25)


def test_projection_matrix_values():
    p0 = cp1.projection_from_chart(0.0)
    assert np.allclose(p0.entries, [[1, 0], [0, 0]], atol=1e-14)
    p1 = cp1.projection_from_chart(1.0)
    assert np.allclose(p1.entries, 0.5 * np.ones((2, 2)), atol=1e-14)
    pinf = cp1.projection_at_infinity()
    assert np.allclose(pinf.entries, [[0, 0], [0, 1]], atol=1e-14)


@given(z=chart_points)
@settings(max_examples=50, deadline=None)
def test_projection_invariants(z):
    p = cp1.projection_from_chart(z).entries
    assert np.allclose(p @ p, p, atol=1e-12)
    assert np.allclose(p, p.conj().T, atol=1e-12)
    assert abs(np.trace(p) - 1.0) < 1e-12
    # the defining boundary condition: P_z annihilates data (-conj z, 1)
    assert np.linalg.norm(p @ np.array([-np.conj(z), 1.0])) < 1e-12


def test_boundary_pairing_vanishes_between_domain_and_adjoint_data():
    for z in (0.3 + 0.2j, 1.0 + 0j, -2.0 + 1.5j):
        domain_data = np.array([-np.conj(z), 1.0])
        adjoint_data = np.array([1.0, -z])
        assert abs(boundary_pairing(domain_data, adjoint_data)) < 1e-14


def test_boundary_pairing_on_exponentials():
    # for psi = e^{i n x} (n integer) and phi = e^{i mu x} (mu real) the
    # closed-form inner products reproduce the boundary term exactly
    n, mu = 2, 0.37
    inner = (cmath.exp(2j * math.pi * (n - mu)) - 1.0) / (1j * (n - mu))
    lhs = (mu - n) * inner
    rhs = boundary_pairing((1.0, cmath.exp(2j * math.pi * n)), (1.0, cmath.exp(2j * math.pi * mu)))
    assert abs(lhs - rhs) < 1e-13


def test_adjoint_projection_against_green_oracle():
    for z in (0j, 1.0 + 0j, 1j, 0.7 - 1.3j, -2.1 + 0.4j):
        got = cp1.adjoint_projection(z).entries
        assert np.allclose(got, adjoint_oracle(z), atol=1e-12)


def test_adjoint_projection_frozen_values():
    # oracle values: diag(0,1) at z=0 and the averaging projection at z=1
    assert np.allclose(cp1.adjoint_projection(0.0).entries, [[0, 0], [0, 1]], atol=1e-14)
    assert np.allclose(cp1.adjoint_projection(1.0).entries, 0.5 * np.ones((2, 2)), atol=1e-14)
    assert np.allclose(
        cp1.adjoint_projection(1j).entries, [[0.5, -0.5j], [0.5j, 0.5]], atol=1e-14
    )


@given(z=chart_points)
@settings(max_examples=50, deadline=None)
def test_adjoint_kills_adjoint_cauchy_data(z):
    p_star = cp1.adjoint_projection(z)
    assert np.linalg.norm(p_star.apply([1.0, -z])) < 1e-10


def test_adjoint_is_complement_of_reflected_chart():
    # P*_z = I - (projection onto span{(1, -z)})
    for z in (0.4 + 0.9j, -1.7 - 0.2j):
        reflected = cp1.projection_from_chart(-z).entries
        assert np.allclose(cp1.adjoint_projection(z).entries, np.eye(2) - reflected, atol=1e-12)


def quadratic_roots(z):
    n = 1.0 + abs(z) ** 2
    return np.roots([n, 2.0 * (z + np.conj(z)).real, n])


def test_alpha_against_quadratic_solver():
    for z in (0j, 1.0 + 0j, 0.5 - 0.8j, 2.0 + 1j):
        roots = quadratic_roots(z)
        assert np.allclose(np.abs(roots), 1.0, atol=1e-12)
        datum = cp1.alpha_of(z)
        angles = {round(abs(np.angle(r)) / (2 * math.pi), 10) for r in roots}
        assert round(datum.alpha, 10) in angles


def test_alpha_spot_values_and_degeneracy():
    assert cp1.alpha_of(0.0).alpha == pytest.approx(0.25, abs=1e-12)
    assert cp1.alpha_of(1.0).alpha == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(DegenerateSpectrum):
        cp1.alpha_of(-1.0)


def test_zeta_det_closed_spot_values():
    assert cp1.zeta_det_closed(0.0) == pytest.approx(2.0, abs=1e-14)
    assert cp1.zeta_det_closed(1.0) == pytest.approx(4.0, abs=1e-14)
    assert cp1.zeta_det_closed(1j) == pytest.approx(2.0, abs=1e-14)
    assert cp1.zeta_det_closed(-1.0) == 0.0


def test_zeta_det_spectral_matches_closed_at_spots():
    for z, expected in ((0j, 2.0), (1.0 + 0j, 4.0), (1j, 2.0)):
        assert cp1.zeta_det_spectral(z) == pytest.approx(expected, rel=1e-8)


def test_zeta_det_from_alpha_synthetic_third():
    assert cp1.zeta_det_from_alpha(1.0 / 3.0) == pytest.approx(3.0, rel=1e-8)


@given(z=chart_points)
@settings(max_examples=30, deadline=None)
def test_spectral_equals_closed_everywhere(z):
    closed = cp1.zeta_det_closed(z)
    assert cp1.zeta_det_spectral(z) == pytest.approx(closed, rel=1e-8)


def test_branch_invariance():
    for a in (0.1, 0.33, 0.5):
        assert cp1.zeta_det_from_alpha(a) == pytest.approx(
            cp1.zeta_det_from_alpha(1.0 - a), abs=1e-10
        )


def test_curvature_spot_values():
    st4 = FdStencil(step=1e-3, order=4, kind="laplacian-2d")
    assert cp1.quillen_curvature_fd(0j, st4) == pytest.approx(1.0, abs=1e-4)
    assert cp1.quillen_curvature_fd(1.0 + 0j, st4) == pytest.approx(0.25, abs=1e-4)
    assert cp1.quillen_curvature_fd(1j, st4) == pytest.approx(0.25, abs=1e-4)


def test_curvature_guard_near_degenerate_point():
    with pytest.raises(DegenerateSpectrum):
        cp1.quillen_curvature_fd(-1.0 + 1e-4j, FdStencil(step=1e-3, order=4, kind="laplacian-2d"))


def test_calderon_projection():
    p_d = cp1.calderon_projection_interval()
    assert np.allclose(p_d.entries, cp1.projection_from_chart(1.0).entries, atol=1e-14)
    ones = np.array([1.0, 1.0])
    assert np.linalg.norm(p_d.apply(ones) - ones) < 1e-14
    assert np.allclose(p_d.entries @ p_d.entries, p_d.entries, atol=1e-14)


def s_of_p_oracle(z):
    """Matrix element of P_z P(D) between unit basis vectors of the ranges."""
    p_z = cp1.projection_from_chart(z).entries
    p_d = cp1.calderon_projection_interval().entries
    u_k = np.array([1.0, 1.0]) / math.sqrt(2.0)
    u_w = np.array([1.0, z]) / math.sqrt(1.0 + abs(z) ** 2)
    return u_w.conj() @ (p_z @ (p_d @ u_k))


def test_s_of_p_against_matrix_oracle():
    for z in (1.0 + 0j, 0j, -1.0 + 0j, 0.8 + 0.3j, 2j):
        assert cp1.s_of_p(z) == pytest.approx(s_of_p_oracle(z), abs=1e-12)


def test_s_of_p_spot_values():
    assert cp1.s_of_p(1.0) == pytest.approx(1.0, abs=1e-14)
    assert cp1.s_of_p(0.0) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)
    assert cp1.s_of_p(-1.0) == pytest.approx(0.0, abs=1e-14)


def test_metric_patching_spot_pairs():
    lhs, rhs = cp1.metric_patching_check(0.0, 1.0)
    assert lhs == pytest.approx(0.5, rel=1e-8)
    assert rhs == pytest.approx(0.5, rel=1e-12)
    lhs, rhs = cp1.metric_patching_check(0.5j, 0.5j)
    assert lhs == pytest.approx(1.0, rel=1e-12)
    assert rhs == pytest.approx(1.0, rel=1e-12)
    lhs, rhs = cp1.metric_patching_check(1j, 1.0)
    assert lhs == pytest.approx(0.5, rel=1e-8)
    assert rhs == pytest.approx(0.5, rel=1e-12)


def test_det_equals_four_s_squared_closed_form():
    for z in (0.3 + 0.1j, -0.5 + 2j, 1.5 - 1.5j):
        assert cp1.zeta_det_closed(z) == pytest.approx(
            cp1.DET_TO_S_CONSTANT * abs(cp1.s_of_p(z)) ** 2, rel=1e-12
        )


def test_kahler_form_spot_values_and_fd_agreement():
    assert cp1.kahler_form_2x2(0j) == pytest.approx(1.0, abs=1e-12)
    assert cp1.kahler_form_2x2(1.0 + 0j) == pytest.approx(0.25, abs=1e-12)
    st4 = FdStencil(step=1e-3, order=4, kind="laplacian-2d")
    for z in (0.2 - 0.4j, 1.1 + 0.9j, -0.6 + 0.1j):
        closed = 1.0 / (1.0 + abs(z) ** 2) ** 2
        assert cp1.kahler_form_2x2(z) == pytest.approx(closed, rel=1e-12)
        assert cp1.quillen_curvature_fd(z, st4) == pytest.approx(
            cp1.kahler_form_2x2(z), abs=1e-4
        )


def test_spectral_datum_validates_branch():
    with pytest.raises(DomainError):
        cp1.SpectralDatum(alpha=0.75, z=0j)
