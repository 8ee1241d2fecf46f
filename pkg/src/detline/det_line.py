"""Abstract determinant-line algebra over window-truncated operators.

A point of the determinant line attached to a Fredholm representative T is an
equivalence class [S, lambda] with S - T window supported, modulo
(S q, lambda) ~ (S, lambda det_F q) for determinant-class q.  Ratios of
nonzero points are computed by Fredholm determinants and are the only
coordinate-free scalars; equality of points means ratio one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZeroPoint, DomainError, NotDetClass
from .grassmannian import ModeOperator, RANK_SVD_THRESHOLD, fredholm_det

__all__ = ["DetPoint", "det_point", "ratio", "tensor_split", "range_map_index"]

_SINGULAR_TOL = 1e-10


def _require_det_class(t_op: ModeOperator) -> None:
    if max(abs(t_op.tail[0] - 1.0), abs(t_op.tail[1] - 1.0)) > 1e-12:
        raise NotDetClass(f"representative must have identity tails, got {t_op.tail}")


def _is_singular(t_op: ModeOperator) -> bool:
    sv = np.linalg.svd(t_op.entries, compute_uv=False)
    return bool(sv[-1] < _SINGULAR_TOL * max(1.0, sv[0]))


@dataclass(frozen=True)
class DetPoint:
    """A point [rep, scale] of the determinant line of its representative.

    Zero points are flagged explicitly rather than encoded as scale = 0, so
    "det T is nonzero iff T is invertible" stays decidable independently of
    the scalar action.
    """

    rep: ModeOperator
    scale: complex
    is_zero: bool

    def scaled(self, mu: complex) -> "DetPoint":
        """Scalar action mu . [S, lambda] = [S, mu lambda]."""
        return DetPoint(self.rep, complex(mu) * self.scale, self.is_zero)

    def normal_form(self) -> "DetPoint":
        """Canonical representative: [I, lambda det_F(rep)] for nonzero points.

        Realizes the defining equivalence (S q, lambda) ~ (S, lambda det_F q)
        with q = rep itself; zero points are returned unchanged since their
        representative cannot be divided out.
        """
        if self.is_zero:
            return self
        identity = ModeOperator.identity(self.rep.window)
        return DetPoint(identity, self.scale * fredholm_det(self.rep), False)


def det_point(t_op: ModeOperator) -> DetPoint:
    """The determinant det T = [T, 1], nonzero exactly when T is invertible."""
    _require_det_class(t_op)
    return DetPoint(t_op, 1.0 + 0j, _is_singular(t_op))


def ratio(p: DetPoint, q: DetPoint) -> complex:
    """Coordinate-free ratio (lambda_p / lambda_q) det_F(T_p T_q^{-1})."""
    if q.is_zero:
        raise DivisionByZeroPoint("cannot divide by the zero point")
    _require_det_class(p.rep)
    _require_det_class(q.rep)
    if p.is_zero:
        return 0j
    # composition aligns mismatched windows by tail extension
    return (p.scale / q.scale) * fredholm_det(p.rep @ q.rep.inverse())


def tensor_split(
    a_op: ModeOperator, b_op: ModeOperator
) -> tuple[DetPoint, tuple[DetPoint, DetPoint]]:
    """Split det(A B) into the pair (det A, det B).

    Under the canonical isomorphism Det(A B) = Det A tensor Det B the point
    det(A B) corresponds to det A tensor det B: for invertible perturbations
    A', B' the ratio of det(A' B') against det(A B) factors exactly as
    det_F(A' A^{-1} conjugated) times det_F(B' B^{-1}).
    """
    _require_det_class(a_op)
    _require_det_class(b_op)
    return det_point(a_op @ b_op), (det_point(a_op), det_point(b_op))


def range_map_index(
    t_op: ModeOperator,
    domain: ModeOperator,
    codomain: ModeOperator,
    threshold: float = RANK_SVD_THRESHOLD,
) -> int:
    """Index of cod T dom : ran(domain) -> ran(codomain) by rank-nullity.

    dim ker = rank(domain) - rank(restriction) and
    dim coker = rank(codomain) - rank(restriction), with ranks decided by the
    singular-value threshold on window blocks.
    """
    if not (domain.is_projection() and codomain.is_projection()):
        raise DomainError("domain and codomain must be projections")
    restricted = codomain @ t_op @ domain
    rank_restricted = restricted.window_rank(threshold)
    dim_ker = domain.window_rank(threshold) - rank_restricted
    dim_coker = codomain.window_rank(threshold) - rank_restricted
    return dim_ker - dim_coker
