"""Truncated Fourier-mode model of the boundary-circle Grassmannian.

Operators live on a symmetric mode window {-n_max, ..., n_max} and carry a
declared scalar action outside the window, one scalar for modes above and one
for modes below.  Because compositions and sums act entrywise on these tail
scalars, traces of window-supported differences and Fredholm determinants of
identity-plus-window operators are exact, not truncation approximations.

The module provides the spectral (APS) projections, a concrete rotated
two-parameter projection family, relative eta invariants and indices,
connection forms on the determinant line of S(P) = P * base, their curvature,
and the chart-patching identities for the transition determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DomainError,
    NotCommensurable,
    NotDetClass,
    NotInvertible,
    WindowOverflow,
)
from .specfun import FdStencil, default_fd_step, hurwitz_zeta, HurwitzParams

__all__ = [
    "ModeWindow",
    "ModeOperator",
    "ProjectionFamily",
    "spectral_projection",
    "rotated_family",
    "fredholm_det",
    "relative_eta",
    "relative_index",
    "eta_invariant_spectral",
    "eta_finite_rank_check",
    "connection_form",
    "curvature_rkw",
    "tr_p_dp_dp",
    "patching_identity_check",
    "perturbation_patching_check",
    "transition_det",
    "RELATIVE_INDEX_SIGN",
    "RANK_SVD_THRESHOLD",
    "CHART_SVD_THRESHOLD",
    "TAIL_IDENTITY",
    "TAIL_ZERO",
    "TAIL_APS",
]

PROJECTION_TOL = 1e-10
RANK_SVD_THRESHOLD = 1e-8
CHART_SVD_THRESHOLD = 1e-6

# Sign relating relative eta to the relative index, measured once on the
# pair (Pi_{>=1}, Pi_{>=0}) where eta/2 = -1 and ind(Pi_{>=0} Pi_{>=1}) = -1.
RELATIVE_INDEX_SIGN = 1

# Tail scalars (action above the window, action below the window).
TAIL_IDENTITY = (1.0 + 0j, 1.0 + 0j)
TAIL_ZERO = (0.0 + 0j, 0.0 + 0j)
TAIL_APS = (1.0 + 0j, 0.0 + 0j)


@dataclass(frozen=True)
class ModeWindow:
    """Symmetric Fourier mode window {-n_max, ..., n_max}."""

    n_max: int

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise DomainError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def dim(self) -> int:
        return 2 * self.n_max + 1

    def modes(self) -> range:
        return range(-self.n_max, self.n_max + 1)

    def index(self, mode: int) -> int:
        if abs(mode) > self.n_max:
            raise WindowOverflow(f"mode {mode} outside window [-{self.n_max}, {self.n_max}]")
        return mode + self.n_max


@dataclass(frozen=True)
class ModeOperator:
    """A matrix on the mode window plus declared scalar tails.

    The operator acts by ``entries`` on window modes, by tail[0] on every
    mode above the window and by tail[1] on every mode below.  Sums and
    compositions act entrywise on the tails, so the block structure is exact.
    """

    window: ModeWindow
    entries: np.ndarray
    tail: tuple[complex, complex]

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        d = self.window.dim
        if m.shape != (d, d):
            raise DomainError(f"entries must be {d}x{d}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("entries must be finite")
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "tail", (complex(self.tail[0]), complex(self.tail[1])))

    @staticmethod
    def identity(window: ModeWindow) -> "ModeOperator":
        return ModeOperator(window, np.eye(window.dim, dtype=complex), TAIL_IDENTITY)

    @staticmethod
    def from_window_matrix(window: ModeWindow, m, tail=TAIL_ZERO) -> "ModeOperator":
        return ModeOperator(window, np.asarray(m, dtype=complex), tail)

    def embed_to(self, window: ModeWindow) -> "ModeOperator":
        """Extend to a larger window, filling new diagonal modes by the tails."""
        if window.n_max < self.window.n_max:
            raise WindowOverflow("can only embed into an equal or larger window")
        if window.n_max == self.window.n_max:
            return self
        d = window.dim
        m = np.zeros((d, d), dtype=complex)
        above, below = self.tail
        for mode in window.modes():
            if mode > self.window.n_max:
                m[window.index(mode), window.index(mode)] = above
            elif mode < -self.window.n_max:
                m[window.index(mode), window.index(mode)] = below
        lo = window.index(-self.window.n_max)
        hi = window.index(self.window.n_max) + 1
        m[lo:hi, lo:hi] = self.entries
        return ModeOperator(window, m, self.tail)

    def _pair(self, other: "ModeOperator") -> tuple["ModeOperator", "ModeOperator"]:
        if self.window.n_max == other.window.n_max:
            return self, other
        big = self.window if self.window.n_max > other.window.n_max else other.window
        return self.embed_to(big), other.embed_to(big)

    def compose(self, other: "ModeOperator") -> "ModeOperator":
        a, b = self._pair(other)
        tail = (a.tail[0] * b.tail[0], a.tail[1] * b.tail[1])
        return ModeOperator(a.window, a.entries @ b.entries, tail)

    def __matmul__(self, other: "ModeOperator") -> "ModeOperator":
        return self.compose(other)

    def __add__(self, other: "ModeOperator") -> "ModeOperator":
        a, b = self._pair(other)
        tail = (a.tail[0] + b.tail[0], a.tail[1] + b.tail[1])
        return ModeOperator(a.window, a.entries + b.entries, tail)

    def __sub__(self, other: "ModeOperator") -> "ModeOperator":
        a, b = self._pair(other)
        tail = (a.tail[0] - b.tail[0], a.tail[1] - b.tail[1])
        return ModeOperator(a.window, a.entries - b.entries, tail)

    def __mul__(self, scalar: complex) -> "ModeOperator":
        s = complex(scalar)
        return ModeOperator(self.window, s * self.entries, (s * self.tail[0], s * self.tail[1]))

    __rmul__ = __mul__

    def adjoint(self) -> "ModeOperator":
        tail = (self.tail[0].conjugate(), self.tail[1].conjugate())
        return ModeOperator(self.window, self.entries.conj().T, tail)

    def inverse(self) -> "ModeOperator":
        """Inverse of an operator with nonzero tails and invertible window block."""
        if abs(self.tail[0]) < 1e-14 or abs(self.tail[1]) < 1e-14:
            raise NotInvertible("tails vanish; the operator is not invertible")
        sv = np.linalg.svd(self.entries, compute_uv=False)
        if sv[-1] < CHART_SVD_THRESHOLD:
            raise NotInvertible(f"window block is numerically singular (sv_min = {sv[-1]:.3e})")
        tail = (1.0 / self.tail[0], 1.0 / self.tail[1])
        return ModeOperator(self.window, np.linalg.inv(self.entries), tail)

    def trace(self) -> complex:
        """Window trace; defined only when both tails vanish."""
        if self.tail != (0j, 0j):
            raise NotCommensurable(f"trace undefined for tails {self.tail}")
        return complex(np.trace(self.entries))

    def is_projection(self, tol: float = PROJECTION_TOL) -> bool:
        m = self.entries
        hermitian = np.max(np.abs(m - m.conj().T)) <= tol
        idem = np.max(np.abs(m @ m - m)) <= tol
        tails_ok = all(abs(t * t - t) <= tol and abs(t.imag) <= tol for t in self.tail)
        return bool(hermitian and idem and tails_ok)

    def window_rank(self, threshold: float = RANK_SVD_THRESHOLD) -> int:
        sv = np.linalg.svd(self.entries, compute_uv=False)
        return int(np.sum(sv > threshold))


class ProjectionFamily:
    """A smooth two-parameter family of APS-type projections.

    Evaluating at (t1, t2) in the unit square yields a ModeOperator that is
    idempotent and Hermitian, with tail identity above the window and zero
    below, and whose difference from the value at t = 0 stays window
    supported.
    """

    def __init__(self, window: ModeWindow, map_fn: Callable[[float, float], np.ndarray]):
        self.window = window
        self._map = map_fn

    def __call__(self, t1: float, t2: float) -> ModeOperator:
        op = ModeOperator(self.window, self._map(float(t1), float(t2)), TAIL_APS)
        if not op.is_projection():
            raise DomainError(f"family value at ({t1}, {t2}) is not a projection")
        return op


def spectral_projection(w: ModeWindow, k: int) -> ModeOperator:
    """The spectral projection onto modes n >= k (diagonal on the window)."""
    if abs(k) > w.n_max:
        raise WindowOverflow(f"cut {k} outside window [-{w.n_max}, {w.n_max}]")
    diag = np.array([1.0 if mode >= k else 0.0 for mode in w.modes()], dtype=complex)
    return ModeOperator(w, np.diag(diag), TAIL_APS)


def rotated_family(w: ModeWindow, modes: tuple[int, int]) -> ProjectionFamily:
    """Rotation family P(t) = U(t) Pi_{>=0} U(t)* mixing one negative and one
    non-negative mode.

    U(t) rotates span{e_m1, e_m2} by the angle pi t1 / 2 with relative phase
    exp(2 pi i t2) and fixes every other mode, so P(0, t2) = Pi_{>=0} and the
    difference P(t) - Pi_{>=0} is supported in the 2x2 block on (m1, m2).
    """
    m1, m2 = modes
    if not (m1 < 0 <= m2):
        raise DomainError(f"need m1 < 0 <= m2, got ({m1}, {m2})")
    i, j = w.index(m1), w.index(m2)
    base = spectral_projection(w, 0).entries

    def value(t1: float, t2: float) -> np.ndarray:
        theta = np.pi * t1 / 2.0
        phase = np.exp(2j * np.pi * t2)
        u = np.eye(w.dim, dtype=complex)
        u[i, i] = np.cos(theta)
        u[j, j] = np.cos(theta)
        u[i, j] = -np.conj(phase) * np.sin(theta)
        u[j, i] = phase * np.sin(theta)
        return u @ base @ u.conj().T

    return ProjectionFamily(w, value)


def fredholm_det(t_op: ModeOperator) -> complex:
    """Fredholm determinant of an identity-plus-window operator.

    The tails contribute factors of one, so the determinant of the window
    block equals the determinant of the untruncated operator whenever the
    perturbation is supported in the window.
    """
    if max(abs(t_op.tail[0] - 1.0), abs(t_op.tail[1] - 1.0)) > 1e-12:
        raise NotDetClass(f"tails must be identity for det_F, got {t_op.tail}")
    return complex(np.linalg.det(t_op.entries))


def _check_commensurable(p: ModeOperator, q: ModeOperator) -> tuple[ModeOperator, ModeOperator]:
    a, b = p._pair(q)
    if max(abs(a.tail[0] - b.tail[0]), abs(a.tail[1] - b.tail[1])) > 1e-12:
        raise NotCommensurable(f"tails differ: {a.tail} vs {b.tail}")
    return a, b


def relative_eta(p: ModeOperator, q: ModeOperator) -> float:
    """Relative eta invariant 2 Tr(P - Q) of commensurable projections.

    Equals Tr((P - P_perp) - (Q - Q_perp)), which needs no regularization
    because the difference is window supported.
    """
    a, b = _check_commensurable(p, q)
    if not (a.is_projection() and b.is_projection()):
        raise DomainError("relative eta needs idempotent Hermitian operators")
    value = 2.0 * (a - b).trace()
    if abs(value.imag) > PROJECTION_TOL:
        raise DomainError(f"relative eta should be real, got {value}")
    return float(value.real)


def relative_index(p: ModeOperator, q: ModeOperator) -> int:
    """Index of Q P : ran P -> ran Q computed from window ranks.

    dim ker is rank P - rank(Q P) and dim coker is rank Q - rank(Q P), both
    on the window blocks with the singular-value threshold for rank decisions.
    The contract relative_eta(P, Q) / 2 = RELATIVE_INDEX_SIGN * relative_index
    holds with one global sign.
    """
    a, b = _check_commensurable(p, q)
    if not (a.is_projection() and b.is_projection()):
        raise DomainError("relative index needs idempotent Hermitian operators")
    rank_p = a.window_rank()
    rank_q = b.window_rank()
    rank_qp = (b @ a).window_rank()
    dim_ker = rank_p - rank_qp
    dim_coker = rank_q - rank_qp
    return dim_ker - dim_coker


def eta_invariant_spectral(a: float) -> float:
    """Regularized eta invariant of d with eigenvalues {n + a : n in Z}.

    The positive part sums to zeta_H(s, a), the negative part to
    zeta_H(s, 1-a); at s = 0 the difference is 1 - 2a.
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"offset a must lie in (0, 1), got {a}")
    value = hurwitz_zeta(HurwitzParams(s=0.0, a=a)) - hurwitz_zeta(HurwitzParams(s=0.0, a=1.0 - a))
    return float(value.real)


def _eta_flipped(a: float, flip_mode: int) -> float:
    """Regularized eta after shifting the eigenvalue at n = flip_mode by -1.

    Expressed through the unflipped Hurwitz sums plus the two swapped
    power terms, each continued to s = 0 where x^(-s) contributes 1.
    """
    base = eta_invariant_spectral(a)
    if flip_mode == 0:
        # a leaves the positive family, 1 - a joins the negative family
        return base - 1.0 - 1.0
    # both old and new eigenvalue keep their sign; the swapped terms cancel
    return base


def eta_finite_rank_check(
    a: float,
    flip_mode: int,
    window: ModeWindow | None = None,
) -> tuple[float, float]:
    """Compare projection and spectral sides of the relative eta invariant.

    The operator d has eigenvalue n + a on mode n; d' shifts the eigenvalue
    at n = flip_mode by -1 (a sign flip exactly when flip_mode = 0).  The
    left side is the relative eta of the two positive spectral projections,
    the right side the difference of regularized eta invariants.
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"offset a must lie in (0, 1), got {a}")
    if window is None:
        window = ModeWindow(6)
    if abs(flip_mode) > window.n_max:
        raise WindowOverflow(f"flip mode {flip_mode} outside the window")
    pi_d = spectral_projection(window, 0)
    diag = pi_d.entries.copy()
    eigenvalue_after = flip_mode - 1 + a
    diag[window.index(flip_mode), window.index(flip_mode)] = 1.0 if eigenvalue_after > 0 else 0.0
    pi_d_flipped = ModeOperator(window, diag, TAIL_APS)
    lhs = relative_eta(pi_d, pi_d_flipped)
    rhs = eta_invariant_spectral(a) - _eta_flipped(a, flip_mode)
    return lhs, rhs


def _restricted_min_sv(s_amb: np.ndarray, rank: int) -> float:
    """Smallest of the leading ``rank`` singular values of an ambient map."""
    sv = np.linalg.svd(s_amb, compute_uv=False)
    if rank == 0 or rank > len(sv):
        raise NotInvertible(f"restriction rank {rank} is out of range")
    return float(sv[rank - 1])


def _fd_matrix(
    func: Callable[[float, float], np.ndarray],
    t: tuple[float, float],
    axis: int,
    st: FdStencil,
) -> np.ndarray:
    """Entrywise first derivative of a matrix-valued map of (t1, t2)."""
    t1, t2 = t
    h = st.step
    acc = None
    for offset, weight in st.first_derivative_weights():
        point = (t1 + offset * h, t2) if axis == 0 else (t1, t2 + offset * h)
        term = weight * func(*point)
        acc = term if acc is None else acc + term
    return acc / h


def _fd_scalar(
    func: Callable[[float, float], complex],
    t: tuple[float, float],
    axis: int,
    st: FdStencil,
) -> complex:
    """First derivative of a scalar map of (t1, t2) along one axis."""
    t1, t2 = t
    h = st.step
    acc = 0j
    for offset, weight in st.first_derivative_weights():
        point = (t1 + offset * h, t2) if axis == 0 else (t1, t2 + offset * h)
        acc += weight * func(*point)
    return acc / h


def _direction_axis(direction) -> int:
    if direction in (0, "t1"):
        return 0
    if direction in (1, "t2"):
        return 1
    raise DomainError(f"direction must be 't1' or 't2', got {direction!r}")


def _s_window(
    fam: ProjectionFamily,
    base: ModeOperator,
    t1: float,
    t2: float,
    perturbation: ModeOperator | None,
) -> tuple[np.ndarray, np.ndarray]:
    """Window blocks of (P + P sigma P) base and of P at a parameter point."""
    p = fam(t1, t2).entries
    b = base.embed_to(fam.window).entries
    if perturbation is None:
        return p @ b, p
    sig = perturbation.embed_to(fam.window)
    if max(abs(sig.tail[0]), abs(sig.tail[1])) > 1e-12:
        raise NotDetClass("chart perturbations must be window supported (zero tails)")
    return (p + p @ sig.entries @ p) @ b, p


def connection_form(
    fam: ProjectionFamily,
    base: ModeOperator,
    t: tuple[float, float],
    direction="t1",
    st: FdStencil | None = None,
    perturbation: ModeOperator | None = None,
) -> complex:
    """Connection 1-form component Tr(S^{-1} P (dS) base) over ran(base).

    S is the Fredholm family (P + P sigma P) base : ran(base) -> ran(P) of the
    chart labelled by the window-supported perturbation sigma (identity chart
    for sigma = None).  The ambient connection is the flat derivative in the
    fixed mode basis, realised entrywise by the stencil; the compression
    P (dS) base is the induced hom-bundle derivative, and the trace over
    ran(base) is computed with the pseudo-inverse standing in for the
    inverse of the restricted map.
    """
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="first-derivative")
    axis = _direction_axis(direction)
    if not base.is_projection():
        raise DomainError("base must be a projection")
    rank = base.embed_to(fam.window).window_rank()

    s_now, p_now = _s_window(fam, base, t[0], t[1], perturbation)
    if _restricted_min_sv(s_now, rank) < CHART_SVD_THRESHOLD:
        raise NotInvertible(f"S(P) is singular on ran(base) at t = {t}")

    def s_at(t1: float, t2: float) -> np.ndarray:
        return _s_window(fam, base, t1, t2, perturbation)[0]

    ds = _fd_matrix(s_at, t, axis, st)
    b = base.embed_to(fam.window).entries
    s_pinv = np.linalg.pinv(s_now, rcond=RANK_SVD_THRESHOLD)
    return complex(np.trace(s_pinv @ p_now @ ds @ b))


def tr_p_dp_dp(
    fam: ProjectionFamily,
    t: tuple[float, float],
    st: FdStencil | None = None,
) -> complex:
    """Curvature density Tr(P [d1 P, d2 P]) of the family, by stencil derivatives."""
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="first-derivative")

    def p_at(t1: float, t2: float) -> np.ndarray:
        return fam(t1, t2).entries

    p = p_at(*t)
    d1 = _fd_matrix(p_at, t, 0, st)
    d2 = _fd_matrix(p_at, t, 1, st)
    return complex(np.trace(p @ (d1 @ d2 - d2 @ d1)))


def curvature_rkw(
    fam: ProjectionFamily,
    base: ModeOperator,
    t: tuple[float, float],
    st: FdStencil | None = None,
    perturbation: ModeOperator | None = None,
) -> complex:
    """Curvature two-form d omega = d1 omega_2 - d2 omega_1 at a parameter point.

    The outer derivatives use the stencil step; the inner connection forms use
    a finer step so the nested differencing stays well below the 1e-3
    agreement tolerance with Tr(P [d1 P, d2 P]).
    """
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="first-derivative")
    inner = FdStencil(step=min(1e-5, st.step / 10.0), order=4, kind="first-derivative")

    def omega(axis_inner: int) -> Callable[[float, float], complex]:
        def value(t1: float, t2: float) -> complex:
            return connection_form(fam, base, (t1, t2), axis_inner, inner, perturbation)

        return value

    return _fd_scalar(omega(1), t, 0, st) - _fd_scalar(omega(0), t, 1, st)


def transition_det(
    fam: ProjectionFamily,
    base: ModeOperator,
    t: tuple[float, float],
    sigma1: ModeOperator | None,
    sigma2: ModeOperator | None,
) -> complex:
    """Transition function between two perturbation charts of one family.

    Both charts trivialize the determinant line of S(P) over the locus where
    their perturbed Fredholm families are invertible; the transition function
    is the Fredholm determinant of S_1 S_2^{-1} on ran(P), computed through
    the identity-extended representatives S_i + (I - P).
    """
    w = fam.window
    rank = base.embed_to(w).window_rank()
    s1, p = _s_window(fam, base, t[0], t[1], sigma1)
    s2, _ = _s_window(fam, base, t[0], t[1], sigma2)
    for s in (s1, s2):
        if _restricted_min_sv(s, rank) < CHART_SVD_THRESHOLD:
            raise NotInvertible(f"chart is singular at t = {t}")
    eye = np.eye(w.dim, dtype=complex)
    s1_hat = ModeOperator(w, s1 + eye - p, TAIL_IDENTITY)
    s2_hat = ModeOperator(w, s2 + eye - p, TAIL_IDENTITY)
    return fredholm_det(s1_hat @ s2_hat.inverse())


def perturbation_patching_check(
    fam: ProjectionFamily,
    base: ModeOperator,
    sigma1: ModeOperator | None,
    sigma2: ModeOperator | None,
    t: tuple[float, float],
    direction="t1",
    st: FdStencil | None = None,
) -> tuple[complex, complex]:
    """Patching identity between two perturbation charts of one family.

    Returns (lhs, rhs) with lhs the logarithmic derivative of the transition
    determinant and rhs the difference of the chart connection forms; the two
    agree up to finite-difference error.
    """
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="first-derivative")
    axis = _direction_axis(direction)

    def g_at(t1: float, t2: float) -> complex:
        return transition_det(fam, base, (t1, t2), sigma1, sigma2)

    lhs = _fd_scalar(g_at, t, axis, st) / g_at(*t)
    rhs = connection_form(fam, base, t, direction, None, sigma1) - connection_form(
        fam, base, t, direction, None, sigma2
    )
    return complex(lhs), complex(rhs)


def patching_identity_check(
    fam1: ProjectionFamily,
    fam2: ProjectionFamily,
    base: ModeOperator,
    t: tuple[float, float],
    direction="t1",
    st: FdStencil | None = None,
) -> tuple[complex, complex]:
    """Patching identity between the identity charts of two projection families.

    The transition function is the determinant-line ratio of the identity
    extensions S_i + (I - base); it patches the two trivializations whenever
    the families are charts of one line bundle (for instance conjugate by a
    constant unitary commuting with base).  Returns (lhs, rhs) with lhs the
    logarithmic derivative of that ratio and rhs = omega_1 - omega_2.
    """
    if st is None:
        st = FdStencil(step=default_fd_step(), order=4, kind="first-derivative")
    axis = _direction_axis(direction)
    if fam1.window.n_max != fam2.window.n_max:
        raise NotCommensurable("families must share one mode window")
    w = fam1.window
    b = base.embed_to(w)
    rank = b.window_rank()
    eye = np.eye(w.dim, dtype=complex)

    def g_at(t1: float, t2: float) -> complex:
        s1, _ = _s_window(fam1, base, t1, t2, None)
        s2, _ = _s_window(fam2, base, t1, t2, None)
        for s in (s1, s2):
            if _restricted_min_sv(s, rank) < CHART_SVD_THRESHOLD:
                raise NotInvertible(f"chart is singular at t = ({t1}, {t2})")
        diff = (fam1(t1, t2) - fam2(t1, t2)).tail
        if max(abs(diff[0]), abs(diff[1])) > 1e-12:
            raise NotCommensurable("family difference is not window supported")
        s1_hat = ModeOperator(w, s1 + eye - b.entries, TAIL_IDENTITY)
        s2_hat = ModeOperator(w, s2 + eye - b.entries, TAIL_IDENTITY)
        return fredholm_det(s1_hat @ s2_hat.inverse())

    lhs = _fd_scalar(g_at, t, axis, st) / g_at(*t)
    rhs = connection_form(fam1, base, t, direction, None) - connection_form(
        fam2, base, t, direction, None
    )
    return complex(lhs), complex(rhs)
