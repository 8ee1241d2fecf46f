"""Tour of the determinant-line algebra.

The determinant of a Fredholm operator lives in a complex line, not in the
scalars: only ratios of nonzero points are numbers.  On window-truncated
operators every statement becomes finite linear algebra, so the equivalence
relation, the scalar action, multiplicativity, and index additivity can all
be checked exactly.

Run:  python demos/03_determinant_lines.py
"""

import numpy as np

from detline import det_line, grassmannian as gr

rng = np.random.default_rng(5)
window = gr.ModeWindow(3)


def det_class(scale=0.4):
    k = scale * (rng.standard_normal((window.dim,) * 2) + 1j * rng.standard_normal((window.dim,) * 2))
    return gr.ModeOperator(window, np.eye(window.dim, dtype=complex) + k, gr.TAIL_IDENTITY)


# 1. det T = [T, 1] is nonzero exactly when T is invertible.
ident = gr.ModeOperator.identity(window)
singular_entries = np.eye(window.dim, dtype=complex)
singular_entries[0, 0] = 0.0
singular = gr.ModeOperator(window, singular_entries, gr.TAIL_IDENTITY)
print(f"det(I) is zero: {det_line.det_point(ident).is_zero}")
print(f"det(singular) is zero: {det_line.det_point(singular).is_zero}")

# 2. The defining equivalence [S q, l] ~ [S, l det q] makes ratios well defined.
s, q = det_class(), det_class()
left = det_line.DetPoint(s @ q, 1.0 + 0j, False)
right = det_line.DetPoint(s, gr.fredholm_det(q), False)
print(f"\nratio of equivalent pairs: {det_line.ratio(left, right):.12f}")

# 3. Ratios multiply transitively and carry the scalar action.
p1, p2, p3 = (det_line.det_point(det_class()) for _ in range(3))
chain = det_line.ratio(p1, p2) * det_line.ratio(p2, p3)
print(f"transitivity defect: {abs(chain - det_line.ratio(p1, p3)):.2e}")
print(f"scalar action: ratio(2.5 p, p) = {det_line.ratio(p1.scaled(2.5), p1):.6f}")

# 4. det(A B) corresponds to det A tensor det B: perturbation ratios factor.
a, b = det_class(0.3), det_class(0.3)
a2, b2 = det_class(0.3), det_class(0.3)
joint, (pa, pb) = det_line.tensor_split(a, b)
lhs = det_line.ratio(det_line.det_point(a2 @ b2), joint)
rhs = det_line.ratio(det_line.det_point(a2), pa) * det_line.ratio(det_line.det_point(b2), pb)
print(f"\nmultiplicativity: joint ratio {lhs:.8f} vs factored {rhs:.8f}")

# 5. Indices add under composition: a rank-deficient partial isometry between
#    range projections has computable kernel and cokernel dimensions.
u = np.linalg.qr(rng.standard_normal((window.dim,) * 2))[0].astype(complex)
v = np.linalg.qr(rng.standard_normal((window.dim,) * 2))[0].astype(complex)
dom = gr.ModeOperator(window, u[:, :5] @ u[:, :5].conj().T, gr.TAIL_ZERO)
cod = gr.ModeOperator(window, v[:, :3] @ v[:, :3].conj().T, gr.TAIL_ZERO)
iso = gr.ModeOperator(window, v[:, :2] @ u[:, :2].conj().T, gr.TAIL_ZERO)
print(f"index of a rank-2 map from a rank-5 range to a rank-3 range: "
      f"{det_line.range_map_index(iso, dom, cod)}  (ker 3, coker 1)")
