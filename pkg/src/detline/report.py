"""Verification suites, machine-readable reports, and the curvature grid
emitter.

Every case records the identity it checks (field ``paper_anchor`` in the
JSON schema, the value "plumbing" for artifact-internal checks), the observed
and expected values, and the tolerance that decided pass or fail.  Suites are
deterministic functions of a single 64-bit seed; randomized cases draw from
generators spawned off that seed, so reruns are byte-identical apart from
timestamps.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import chern_series, det_line, grassmannian as gr, interval_cp1 as cp1
from .errors import DegenerateSpectrum, DivisionByZeroPoint, DomainError
from .specfun import FdStencil, default_fd_step

__all__ = [
    "CaseResult",
    "ReportDocument",
    "GridSpec",
    "run_suite",
    "curvature_grid",
    "SUITE_NAMES",
    "SCHEMA",
]

SCHEMA = "detline-lab/1"
SUITE_NAMES = ("cp1", "grassmannian", "detline", "chern", "all")


@dataclass(frozen=True)
class CaseResult:
    name: str
    status: str
    observed: float | str | None
    expected: float | str | None
    tolerance: float | None
    paper_anchor: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "observed": self.observed,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "paper_anchor": self.paper_anchor,
        }


@dataclass
class ReportDocument:
    suite: str
    seed: int
    cases: list[CaseResult]
    started_at: str
    finished_at: str

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.cases if c.status == "fail")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "summary": {
                "n_cases": len(self.cases),
                "n_pass": sum(1 for c in self.cases if c.status == "pass"),
                "n_fail": self.n_fail,
                "n_skip": sum(1 for c in self.cases if c.status == "skip"),
            },
            "cases": [c.to_json() for c in self.cases],
        }


def _num_case(name: str, anchor: str, observed: float, expected: float, tol: float) -> CaseResult:
    ok = math.isfinite(observed) and abs(observed - expected) <= tol
    return CaseResult(name, "pass" if ok else "fail", float(observed), float(expected), tol, anchor)


def _exact_case(name: str, anchor: str, observed: str, expected: str) -> CaseResult:
    return CaseResult(name, "pass" if observed == expected else "fail", observed, expected, None, anchor)


def _grid_points(lo: float, hi: float, n: int) -> np.ndarray:
    return np.linspace(lo, hi, n)


def _random_chart_points(rng: np.random.Generator, count: int) -> list[complex]:
    points = []
    while len(points) < count:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z + 1) >= cp1.EXCLUSION_RADIUS:
            points.append(z)
    return points


# ---------------------------------------------------------------------------
# interval model suite


def _suite_cp1(rng: np.random.Generator) -> list[CaseResult]:
    cases: list[CaseResult] = []

    for z, expected in ((0j, 2.0), (1 + 0j, 4.0), (1j, 2.0)):
        cases.append(
            _num_case(
                f"zeta-det closed form at z={z}",
                "zeta-determinant-projective-chart",
                cp1.zeta_det_closed(z),
                expected,
                1e-12,
            )
        )
    worst = 0.0
    for x in _grid_points(-2, 2, 21):
        for y in _grid_points(-2, 2, 21):
            z = complex(x, y)
            if abs(z + 1) < cp1.EXCLUSION_RADIUS:
                continue
            closed = cp1.zeta_det_closed(z)
            worst = max(worst, abs(cp1.zeta_det_spectral(z) - closed) / closed)
    cases.append(
        _num_case(
            "spectral vs closed determinant, 21x21 grid, max relative error",
            "zeta-determinant-projective-chart",
            worst,
            0.0,
            1e-8,
        )
    )

    branch_worst = max(
        abs(cp1.zeta_det_from_alpha(a) - cp1.zeta_det_from_alpha(1.0 - a))
        for a in (0.1, 0.25, 0.4, 0.5)
    )
    cases.append(
        _num_case(
            "branch invariance alpha vs 1-alpha",
            "spectral-offset-branch",
            branch_worst,
            0.0,
            1e-10,
        )
    )

    st = FdStencil(kind="laplacian-2d")
    for z, expected in ((0j, 1.0), (1 + 0j, 0.25), (1j, 0.25)):
        cases.append(
            _num_case(
                f"quillen curvature at z={z}",
                "curvature-equals-kahler-form",
                cp1.quillen_curvature_fd(z, st),
                expected,
                1e-4,
            )
        )
    worst_fd = 0.0
    worst_pdp = 0.0
    for x in _grid_points(-0.5, 0.5, 5):
        for y in _grid_points(-0.5, 0.5, 5):
            z = complex(x, y)
            k_closed = 1.0 / (1.0 + abs(z) ** 2) ** 2
            k_fd = cp1.quillen_curvature_fd(z, st)
            k_pdp = cp1.kahler_form_2x2(z)
            worst_fd = max(worst_fd, abs(k_fd - k_closed) / k_closed)
            worst_pdp = max(worst_pdp, abs(k_fd - k_pdp) / k_closed)
    cases.append(
        _num_case(
            "curvature vs closed Kahler density, 5x5 grid, max relative error",
            "curvature-equals-kahler-form",
            worst_fd,
            0.0,
            1e-4,
        )
    )
    cases.append(
        _num_case(
            "curvature vs Tr(P dP dP), 5x5 grid, max relative error",
            "curvature-from-boundary-projection",
            worst_pdp,
            0.0,
            1e-4,
        )
    )

    pairs = list(zip(_random_chart_points(rng, 50), _random_chart_points(rng, 50)))
    worst_patch = max(
        abs(lhs - rhs) / max(abs(rhs), 1e-30)
        for lhs, rhs in (cp1.metric_patching_check(z, w) for z, w in pairs)
    )
    cases.append(
        _num_case(
            "metric patching ratio, 50 random pairs, max relative error",
            "quillen-metric-patching",
            worst_patch,
            0.0,
            1e-8,
        )
    )
    worst_model = max(
        abs(cp1.zeta_det_spectral(z) - cp1.DET_TO_S_CONSTANT * abs(cp1.s_of_p(z)) ** 2)
        / cp1.zeta_det_closed(z)
        for z in _random_chart_points(rng, 50)
    )
    cases.append(
        _num_case(
            "model identity det = 4 |S(P)|^2, 50 random points",
            "quillen-metric-patching",
            worst_model,
            0.0,
            1e-8,
        )
    )

    calderon = cp1.calderon_projection_interval()
    cases.append(
        _num_case(
            "calderon projection equals chart point z=1",
            "calderon-projection-interval",
            float(np.max(np.abs(calderon.entries - cp1.projection_from_chart(1.0).entries))),
            0.0,
            1e-12,
        )
    )
    kernel_vec = np.array([1.0, 1.0], dtype=complex)
    cases.append(
        _num_case(
            "Cauchy data of constants is fixed by the calderon projection",
            "calderon-projection-interval",
            float(np.linalg.norm(calderon.apply(kernel_vec) - kernel_vec)),
            0.0,
            1e-12,
        )
    )

    for z, expected in ((1 + 0j, 1.0), (0j, 1 / math.sqrt(2)), (-1 + 0j, 0.0)):
        cases.append(
            _num_case(
                f"S(P) matrix element at z={z}",
                "boundary-fredholm-family",
                abs(cp1.s_of_p(z) - expected),
                0.0,
                1e-12,
            )
        )

    worst_adj = 0.0
    for z in _random_chart_points(rng, 20):
        p_star = cp1.adjoint_projection(z)
        worst_adj = max(
            worst_adj, float(np.linalg.norm(p_star.apply(np.array([1.0, -z])))),
        )
    cases.append(
        _num_case(
            "adjoint projection kills the adjoint Cauchy data (1, -z)",
            "adjoint-boundary-condition",
            worst_adj,
            0.0,
            1e-10,
        )
    )

    for z, expected in ((0j, 0.25), (1 + 0j, 0.5)):
        cases.append(
            _num_case(
                f"spectral offset at z={z}",
                "spectral-offset-quadratic",
                cp1.alpha_of(z).alpha,
                expected,
                1e-12,
            )
        )
    try:
        cp1.alpha_of(-1 + 0j)
        degenerate = "no error"
    except DegenerateSpectrum:
        degenerate = "DegenerateSpectrum"
    cases.append(
        _exact_case(
            "zero mode at z=-1 is detected",
            "spectral-offset-quadratic",
            degenerate,
            "DegenerateSpectrum",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# boundary Grassmannian suite


def _random_window_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _conjugated_projection(
    rng: np.random.Generator, window: gr.ModeWindow, cut: int
) -> gr.ModeOperator:
    u = _random_window_unitary(rng, window.dim)
    base = gr.spectral_projection(window, cut)
    return gr.ModeOperator(window, u @ base.entries @ u.conj().T, gr.TAIL_APS)


def _suite_grassmannian(rng: np.random.Generator) -> list[CaseResult]:
    cases: list[CaseResult] = []
    w = gr.ModeWindow(6)
    pi0 = gr.spectral_projection(w, 0)

    worst_eta = max(
        abs(gr.relative_eta(gr.spectral_projection(w, k), pi0) - (-2.0 * k))
        for k in range(-5, 6)
    )
    cases.append(
        _num_case(
            "relative eta of spectral cuts equals -2k, k in -5..5",
            "relative-eta-without-regularization",
            worst_eta,
            0.0,
            1e-12,
        )
    )
    worst_idx = max(
        abs(
            gr.relative_eta(gr.spectral_projection(w, k), pi0) / 2.0
            - gr.RELATIVE_INDEX_SIGN * gr.relative_index(gr.spectral_projection(w, k), pi0)
        )
        for k in range(-5, 6)
    )
    cases.append(
        _num_case(
            "relative eta / 2 equals the relative index with one global sign",
            "relative-eta-index-formula",
            worst_idx,
            0.0,
            1e-12,
        )
    )

    p = _conjugated_projection(rng, w, 1)
    q = _conjugated_projection(rng, w, 0)
    r = _conjugated_projection(rng, w, -2)
    antisym = abs(gr.relative_eta(p, q) + gr.relative_eta(q, p))
    additive = abs(gr.relative_eta(p, q) + gr.relative_eta(q, r) - gr.relative_eta(p, r))
    cases.append(
        _num_case(
            "relative eta antisymmetry and additivity on conjugated projections",
            "relative-eta-without-regularization",
            max(antisym, additive),
            0.0,
            1e-10,
        )
    )
    half = gr.relative_eta(p, q) / 2.0
    cases.append(
        _num_case(
            "relative eta / 2 is an integer for exact projections",
            "relative-eta-index-formula",
            abs(half - round(half)),
            0.0,
            1e-8,
        )
    )

    worst_spec = max(
        abs(gr.eta_invariant_spectral(a) - (1.0 - 2.0 * a))
        for a in np.arange(0.05, 0.96, 0.05)
    )
    cases.append(
        _num_case(
            "spectral eta invariant equals 1 - 2a on the offset grid",
            "eta-as-zeta-quasi-trace",
            worst_spec,
            0.0,
            1e-10,
        )
    )
    worst_anti = max(
        abs(gr.eta_invariant_spectral(a) + gr.eta_invariant_spectral(1.0 - a))
        for a in (0.05, 0.2, 0.35, 0.45)
    )
    cases.append(
        _num_case(
            "eta antisymmetry under a -> 1-a",
            "eta-as-zeta-quasi-trace",
            worst_anti,
            0.0,
            1e-10,
        )
    )

    worst_flip = 0.0
    for _ in range(20):
        a = float(rng.uniform(0.05, 0.95))
        flip = int(rng.integers(-6, 7))
        lhs, rhs = gr.eta_finite_rank_check(a, flip, w)
        worst_flip = max(worst_flip, abs(lhs - rhs))
    cases.append(
        _num_case(
            "finite-rank eta perturbation, 20 random (a, flip) pairs",
            "relative-eta-of-spectral-flips",
            worst_flip,
            0.0,
            1e-10,
        )
    )

    ident = gr.ModeOperator.identity(w)
    e0 = np.zeros((w.dim, w.dim), dtype=complex)
    e0[w.index(0), w.index(0)] = 1.0
    rank_one = gr.ModeOperator(w, np.eye(w.dim, dtype=complex) + e0, gr.TAIL_IDENTITY)
    det_spot = max(
        abs(gr.fredholm_det(ident) - 1.0),
        abs(gr.fredholm_det(rank_one) - 2.0),
    )
    cases.append(
        _num_case(
            "fredholm determinant spot values",
            "fredholm-determinant-window",
            det_spot,
            0.0,
            1e-12,
        )
    )
    ka = gr.ModeOperator(
        w, np.eye(w.dim) + 0.3 * _random_window_unitary(rng, w.dim), gr.TAIL_IDENTITY
    )
    kb = gr.ModeOperator(
        w, np.eye(w.dim) + 0.3 * _random_window_unitary(rng, w.dim), gr.TAIL_IDENTITY
    )
    mult_err = abs(
        gr.fredholm_det(ka @ kb) - gr.fredholm_det(ka) * gr.fredholm_det(kb)
    )
    cases.append(
        _num_case(
            "fredholm determinant multiplicativity on random operators",
            "fredholm-determinant-window",
            mult_err,
            0.0,
            1e-8,
        )
    )
    big = gr.ModeWindow(2 * w.n_max)
    stability = abs(gr.fredholm_det(ka.embed_to(big)) - gr.fredholm_det(ka))
    cases.append(
        _num_case(
            "fredholm determinant stability under window doubling",
            "fredholm-determinant-window",
            stability,
            0.0,
            1e-12,
        )
    )

    fam = gr.rotated_family(w, (-1, 0))
    constant = gr.ProjectionFamily(w, lambda t1, t2: gr.spectral_projection(w, 0).entries)
    cases.append(
        _num_case(
            "connection form of the constant family vanishes",
            "determinant-line-connection-form",
            abs(gr.connection_form(constant, pi0, (0.4, 0.7), "t1")),
            0.0,
            1e-10,
        )
    )
    cases.append(
        _num_case(
            "connection form vanishes along the axis t1 = 0",
            "determinant-line-connection-form",
            abs(gr.connection_form(fam, pi0, (0.0, 0.3), "t2")),
            0.0,
            1e-8,
        )
    )

    t = (0.37, 0.63)
    domega = gr.curvature_rkw(fam, pi0, t)
    density = gr.tr_p_dp_dp(fam, t)
    cases.append(
        _num_case(
            "curvature d omega matches Tr(P [d1 P, d2 P])",
            "curvature-of-boundary-connection",
            abs(domega - density),
            0.0,
            1e-3,
        )
    )
    sigma = gr.ModeOperator(
        w, 0.25 * _random_window_unitary(rng, w.dim), gr.TAIL_ZERO
    )
    domega_sigma = gr.curvature_rkw(fam, pi0, t, perturbation=sigma)
    cases.append(
        _num_case(
            "curvature is chart independent (perturbed chart)",
            "curvature-chart-independence",
            abs(domega_sigma - density),
            0.0,
            1e-3,
        )
    )

    stokes_lhs, stokes_rhs = _stokes_pair(fam, pi0)
    cases.append(
        _num_case(
            "Stokes: boundary integral of omega equals the curvature integral",
            "curvature-of-boundary-connection",
            abs(stokes_lhs - stokes_rhs),
            0.0,
            1e-2,
        )
    )

    fam2 = gr.rotated_family(w, (-1, 1))
    worst_pair = 0.0
    for tt in [(0.25, 0.15), (0.4, 0.6), (0.6, 0.35), (0.3, 0.8)]:
        for direction in ("t1", "t2"):
            lhs, rhs = gr.patching_identity_check(fam, fam2, pi0, tt, direction)
            worst_pair = max(worst_pair, abs(lhs - rhs))
    cases.append(
        _num_case(
            "patching of the identity charts of two rotated families",
            "connection-patching-identity",
            worst_pair,
            0.0,
            1e-5,
        )
    )
    sigma2 = gr.ModeOperator(
        w, 0.25 * _random_window_unitary(rng, w.dim), gr.TAIL_ZERO
    )
    worst_sigma = 0.0
    for tt in [(0.2, 0.3), (0.45, 0.7), (0.6, 0.1)]:
        for direction in ("t1", "t2"):
            lhs, rhs = gr.perturbation_patching_check(fam, pi0, sigma, sigma2, tt, direction)
            worst_sigma = max(worst_sigma, abs(lhs - rhs))
    cases.append(
        _num_case(
            "patching of two perturbation charts of one family",
            "connection-patching-identity",
            worst_sigma,
            0.0,
            1e-5,
        )
    )

    sigma3 = gr.ModeOperator(
        w, 0.25 * _random_window_unitary(rng, w.dim), gr.TAIL_ZERO
    )
    tt = (0.44, 0.31)
    cocycle = (
        gr.transition_det(fam, pi0, tt, sigma, sigma2)
        * gr.transition_det(fam, pi0, tt, sigma2, sigma3)
        * gr.transition_det(fam, pi0, tt, sigma3, sigma)
    )
    cases.append(
        _num_case(
            "triple overlap cocycle of transition determinants",
            "determinant-transition-cocycle",
            abs(cocycle - 1.0),
            0.0,
            1e-10,
        )
    )

    v_conj = _random_window_unitary(rng, w.dim)
    conj_fam = gr.ProjectionFamily(
        w, lambda t1, t2: v_conj @ fam(t1, t2).entries @ v_conj.conj().T
    )
    conj_base = gr.ModeOperator(w, v_conj @ pi0.entries @ v_conj.conj().T, gr.TAIL_APS)
    t = (0.3, 0.45)
    conj_err = abs(
        gr.connection_form(fam, pi0, t, "t1") - gr.connection_form(conj_fam, conj_base, t, "t1")
    )
    cases.append(
        _num_case(
            "connection form is invariant under constant conjugation",
            "determinant-line-connection-form",
            conj_err,
            0.0,
            1e-8,
        )
    )
    return cases


def _stokes_pair(fam: gr.ProjectionFamily, base: gr.ModeOperator) -> tuple[complex, complex]:
    """Line integral of omega around a chart rectangle vs the curvature integral.

    The rectangle [0, 0.75] x [0, 1] stays inside the invertibility chart of
    S(P); the full unit square touches the singular edge t1 = 1.
    """
    t1_max = 0.75
    n_edge = 65
    n_area = 41

    def omega(t1: float, t2: float, axis: int) -> complex:
        return gr.connection_form(fam, base, (t1, t2), axis)

    def edge(values: np.ndarray, integrand) -> complex:
        samples = np.array([integrand(v) for v in values])
        return complex(np.trapezoid(samples, values))

    bottom = edge(np.linspace(0.0, t1_max, n_edge), lambda s: omega(s, 0.0, 0))
    top = edge(np.linspace(0.0, t1_max, n_edge), lambda s: omega(s, 1.0, 0))
    right = edge(np.linspace(0.0, 1.0, n_edge), lambda s: omega(t1_max, s, 1))
    left = edge(np.linspace(0.0, 1.0, n_edge), lambda s: omega(0.0, s, 1))
    boundary = bottom + right - top - left

    t1s = np.linspace(0.0, t1_max, n_area)
    t2s = np.linspace(0.0, 1.0, n_area)
    grid = np.array([[gr.tr_p_dp_dp(fam, (a, b)) for b in t2s] for a in t1s])
    area = complex(np.trapezoid(np.trapezoid(grid, t2s, axis=1), t1s))
    return boundary, area


# ---------------------------------------------------------------------------
# determinant line suite


def _random_det_class(rng: np.random.Generator, w: gr.ModeWindow, scale=0.4) -> gr.ModeOperator:
    k = scale * (rng.standard_normal((w.dim, w.dim)) + 1j * rng.standard_normal((w.dim, w.dim)))
    return gr.ModeOperator(w, np.eye(w.dim, dtype=complex) + k, gr.TAIL_IDENTITY)


def _random_partial_isometry(
    rng: np.random.Generator, w: gr.ModeWindow, dom_rank: int, cod_rank: int, map_rank: int
) -> tuple[gr.ModeOperator, gr.ModeOperator, gr.ModeOperator]:
    """A partial isometry of rank map_rank from a dom_rank-dimensional range
    projection into a cod_rank-dimensional one."""
    u = _random_window_unitary(rng, w.dim)
    v = _random_window_unitary(rng, w.dim)
    dom = gr.ModeOperator(w, u[:, :dom_rank] @ u[:, :dom_rank].conj().T, gr.TAIL_ZERO)
    cod = gr.ModeOperator(w, v[:, :cod_rank] @ v[:, :cod_rank].conj().T, gr.TAIL_ZERO)
    iso = v[:, :map_rank] @ u[:, :map_rank].conj().T
    return gr.ModeOperator(w, iso, gr.TAIL_ZERO), dom, cod


def _suite_detline(rng: np.random.Generator) -> list[CaseResult]:
    cases: list[CaseResult] = []
    w = gr.ModeWindow(3)

    worst_equiv = 0.0
    for _ in range(20):
        s = _random_det_class(rng, w)
        q = _random_det_class(rng, w)
        lhs = det_line.DetPoint(s @ q, 2.0 + 0j, False)
        rhs = det_line.DetPoint(s, (2.0 + 0j) * gr.fredholm_det(q), False)
        worst_equiv = max(worst_equiv, abs(det_line.ratio(lhs, rhs) - 1.0))
    cases.append(
        _num_case(
            "equivalence [S q, l] ~ [S, l det q], 20 random instances",
            "determinant-line-points",
            worst_equiv,
            0.0,
            1e-10,
        )
    )

    p = det_line.det_point(_random_det_class(rng, w))
    cases.append(
        _num_case(
            "ratio of a point against itself is one",
            "determinant-ratio",
            abs(det_line.ratio(p, p) - 1.0),
            0.0,
            1e-12,
        )
    )
    mu = 1.7 - 0.4j
    cases.append(
        _num_case(
            "scalar action passes through the ratio",
            "determinant-ratio",
            abs(det_line.ratio(p.scaled(mu), p) - mu),
            0.0,
            1e-12,
        )
    )

    worst_trans = 0.0
    for _ in range(20):
        pa = det_line.det_point(_random_det_class(rng, w))
        pb = det_line.det_point(_random_det_class(rng, w))
        pc = det_line.det_point(_random_det_class(rng, w))
        worst_trans = max(
            worst_trans,
            abs(
                det_line.ratio(pa, pb) * det_line.ratio(pb, pc) - det_line.ratio(pa, pc)
            ),
        )
    cases.append(
        _num_case(
            "ratio transitivity on random triples",
            "determinant-ratio",
            worst_trans,
            0.0,
            1e-10,
        )
    )

    worst_mult = 0.0
    for _ in range(100):
        a = _random_det_class(rng, w, scale=0.3)
        b = _random_det_class(rng, w, scale=0.3)
        a2 = _random_det_class(rng, w, scale=0.3)
        b2 = _random_det_class(rng, w, scale=0.3)
        joint, (pa, pb) = det_line.tensor_split(a, b)
        joint2 = det_line.det_point(a2 @ b2)
        lhs = det_line.ratio(joint2, joint)
        rhs = det_line.ratio(det_line.det_point(a2), pa) * det_line.ratio(
            det_line.det_point(b2), pb
        )
        worst_mult = max(worst_mult, abs(lhs - rhs) / max(1.0, abs(rhs)))
    cases.append(
        _num_case(
            "multiplicativity det(A'B')/det(AB) = det(A'/A) det(B'/B), 100 instances",
            "determinant-multiplicativity",
            worst_mult,
            0.0,
            1e-10,
        )
    )

    worst_norm = 0.0
    for _ in range(10):
        s = _random_det_class(rng, w)
        q = _random_det_class(rng, w)
        nf1 = det_line.DetPoint(s @ q, 1.0 + 0j, False).normal_form()
        nf2 = det_line.DetPoint(s, gr.fredholm_det(q), False).normal_form()
        worst_norm = max(worst_norm, abs(nf1.scale - nf2.scale) / abs(nf2.scale))
    cases.append(
        _num_case(
            "normal forms of equivalent pairs coincide",
            "determinant-line-points",
            worst_norm,
            0.0,
            1e-10,
        )
    )

    singular = np.eye(w.dim, dtype=complex)
    singular[0, 0] = 0.0
    zero_point = det_line.det_point(gr.ModeOperator(w, singular, gr.TAIL_IDENTITY))
    try:
        det_line.ratio(p, zero_point)
        zero_status = "no error"
    except DivisionByZeroPoint:
        zero_status = "DivisionByZeroPoint"
    cases.append(
        _exact_case(
            "singular representative yields the zero point",
            "determinant-line-points",
            f"is_zero={zero_point.is_zero}, {zero_status}",
            "is_zero=True, DivisionByZeroPoint",
        )
    )

    index_exact = True
    for _ in range(25):
        ranks = sorted(int(x) for x in rng.integers(1, w.dim, size=3))
        r_small, r_mid, r_big = ranks
        a2_map, dom, mid = _random_partial_isometry(rng, w, r_big, r_mid, r_small)
        a1_map, _, cod = _random_partial_isometry(rng, w, r_mid, r_small, min(r_small, r_mid))
        ind_a1 = det_line.range_map_index(a1_map, mid, cod)
        ind_a2 = det_line.range_map_index(a2_map, dom, mid)
        composed = a1_map @ (mid @ a2_map)
        ind_comp = det_line.range_map_index(composed, dom, cod)
        if ind_comp != ind_a1 + ind_a2:
            index_exact = False
    cases.append(
        _exact_case(
            "index additivity on random partial isometries",
            "index-additivity",
            "additive" if index_exact else "violation",
            "additive",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# characteristic series suite


def _suite_chern(rng: np.random.Generator) -> list[CaseResult]:
    cases: list[CaseResult] = []
    todd = chern_series.todd_series(8)
    head = [str(todd[k]) for k in range(5)]
    cases.append(
        _exact_case(
            "todd series head coefficients",
            "todd-generating-series",
            ", ".join(head),
            "1, 1/2, 1/12, 0, -1/720",
        )
    )
    product = todd * chern_series.RationalSeries(
        tuple(Fraction((-1) ** j, math.factorial(j + 1)) for j in range(9)), 8
    )
    unit = chern_series.RationalSeries.one(8)
    cases.append(
        _exact_case(
            "todd series inverts its defining denominator",
            "todd-generating-series",
            "unit" if product == unit else str(product.coeffs),
            "unit",
        )
    )

    all_exact = all(
        chern_series.grr_c1_coefficient(m) == Fraction(6 * m * m + 6 * m + 1, 12)
        for m in range(-10, 11)
    )
    cases.append(
        _exact_case(
            "degree-two pushforward coefficient equals (6m^2+6m+1)/12, m in -10..10",
            "first-chern-pushforward",
            "exact" if all_exact else "mismatch",
            "exact",
        )
    )
    symmetric = all(
        chern_series.grr_c1_coefficient(m) == chern_series.grr_c1_coefficient(-1 - m)
        for m in range(-10, 11)
    )
    cases.append(
        _exact_case(
            "pushforward coefficient symmetry m <-> -1-m",
            "first-chern-pushforward",
            "symmetric" if symmetric else "asymmetric",
            "symmetric",
        )
    )

    a = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
    b = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
    exp_ok = chern_series.exp_series(a, 8) * chern_series.exp_series(b, 8) == chern_series.exp_series(a + b, 8)
    cases.append(
        _exact_case(
            "exponential addition law in the truncated ring",
            "chern-character-exponential",
            "holds" if exp_ok else "fails",
            "holds",
        )
    )

    def random_series() -> chern_series.RationalSeries:
        return chern_series.RationalSeries(
            tuple(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(9)),
            8,
        )

    s1, s2, s3 = random_series(), random_series(), random_series()
    assoc = (s1 * s2) * s3 == s1 * (s2 * s3)
    distrib = s1 * (s2 + s3) == s1 * s2 + s1 * s3
    cases.append(
        _exact_case(
            "ring laws of truncated multiplication",
            "plumbing",
            "hold" if (assoc and distrib) else "fail",
            "hold",
        )
    )
    return cases


_SUITES = {
    "cp1": _suite_cp1,
    "grassmannian": _suite_grassmannian,
    "detline": _suite_detline,
    "chern": _suite_chern,
}


def run_suite(name: str, seed: int = 0) -> ReportDocument:
    """Run the named verification suite deterministically under the seed."""
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    started = datetime.now(timezone.utc).isoformat()
    names = [n for n in ("cp1", "grassmannian", "detline", "chern") if name in ("all", n)]
    cases: list[CaseResult] = []
    root = np.random.SeedSequence(seed)
    children = root.spawn(len(_SUITES))
    streams = dict(zip(("cp1", "grassmannian", "detline", "chern"), children))
    for suite_name in names:
        rng = np.random.default_rng(streams[suite_name])
        cases.extend(_SUITES[suite_name](rng))
    finished = datetime.now(timezone.utc).isoformat()
    return ReportDocument(name, seed, cases, started, finished)


# ---------------------------------------------------------------------------
# curvature grid emitter


@dataclass(frozen=True)
class GridSpec:
    """A rectangular chart grid with exclusion disks around degenerate points."""

    re_min: float = -0.5
    re_max: float = 0.5
    im_min: float = -0.5
    im_max: float = 0.5
    n: int = 5
    exclusion: tuple[tuple[complex, float], ...] = ((-1.0 + 0j, cp1.EXCLUSION_RADIUS),)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"grid needs n >= 2 points per axis, got {self.n}")
        for _, radius in self.exclusion:
            if radius <= 0:
                raise DomainError("exclusion radii must be positive")

    def excluded(self, z: complex) -> bool:
        return any(abs(z - center) < radius for center, radius in self.exclusion)


CSV_HEADER = ["re", "im", "k_fd", "k_closed", "k_pdpdp", "rel_err_fd", "rel_err_pdpdp", "status"]


def _grid_rows(g: GridSpec, st: FdStencil) -> tuple[list[dict], dict]:
    rows = []
    max_fd = 0.0
    max_pdp = 0.0
    n_skip = 0
    for x in _grid_points(g.re_min, g.re_max, g.n):
        for y in _grid_points(g.im_min, g.im_max, g.n):
            z = complex(x, y)
            row = {"re": float(x), "im": float(y)}
            if g.excluded(z):
                row.update(
                    k_fd=None, k_closed=None, k_pdpdp=None,
                    rel_err_fd=None, rel_err_pdpdp=None, status="skip",
                )
                n_skip += 1
                rows.append(row)
                continue
            try:
                k_fd = cp1.quillen_curvature_fd(z, st)
            except DegenerateSpectrum:
                row.update(
                    k_fd=None, k_closed=None, k_pdpdp=None,
                    rel_err_fd=None, rel_err_pdpdp=None, status="skip",
                )
                n_skip += 1
                rows.append(row)
                continue
            k_closed = 1.0 / (1.0 + abs(z) ** 2) ** 2
            k_pdpdp = cp1.kahler_form_2x2(z)
            rel_fd = abs(k_fd - k_closed) / k_closed
            rel_pdp = abs(k_pdpdp - k_closed) / k_closed
            max_fd = max(max_fd, rel_fd)
            max_pdp = max(max_pdp, rel_pdp)
            row.update(
                k_fd=k_fd, k_closed=k_closed, k_pdpdp=k_pdpdp,
                rel_err_fd=rel_fd, rel_err_pdpdp=rel_pdp, status="ok",
            )
            rows.append(row)
    summary = {
        "n_rows": len(rows),
        "n_skipped": n_skip,
        "max_rel_err_fd": max_fd,
        "max_rel_err_pdpdp": max_pdp,
        "fd_step": st.step,
    }
    return rows, summary


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".detline-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def curvature_grid(
    g: GridSpec,
    out_format: str = "csv",
    path: str | None = None,
    st: FdStencil | None = None,
) -> dict:
    """Sample the curvature comparison over a grid and emit csv or json.

    Returns the summary dictionary (row counts and maximal relative errors);
    when ``path`` is given the file is written atomically.
    """
    if out_format not in ("csv", "json"):
        raise DomainError(f"out_format must be 'csv' or 'json', got {out_format!r}")
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="laplacian-2d")
    rows, summary = _grid_rows(g, st)
    if path is not None:
        if out_format == "csv":
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=CSV_HEADER, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_HEADER})
            _atomic_write(path, buffer.getvalue())
        else:
            document = {
                "schema": SCHEMA,
                "kind": "curvature-grid",
                "grid": {
                    "re_min": g.re_min, "re_max": g.re_max,
                    "im_min": g.im_min, "im_max": g.im_max,
                    "n": g.n,
                },
                "rows": rows,
                "summary": summary,
            }
            _atomic_write(path, json.dumps(document, indent=2) + "\n")
    return summary
