"""Seidel spectra and exact integer characteristic polynomials.

Two backends live here.  The floating-point one is a cyclic Jacobi
eigensolver (threshold strategy, residual certificate) that also runs in
batch over stacks of matrices so exhaustive scans stay fast.  The exact one
computes integer characteristic polynomials by the Faddeev-LeVerrier
recurrence in arbitrary precision, from which the elementary symmetric
functions S_k(A^2) fall out sign-unwound; single minors go through
fraction-free Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .graphs import Graph, seidel_matrix

JACOBI_TOL_FACTOR = 1e-12  # off-diagonal Frobenius target is factor * n
JACOBI_MAX_SWEEPS = 60


class JacobiConvergenceError(RuntimeError):
    """Jacobi sweeps hit the cap; carries the achieved off-diagonal norm."""

    def __init__(self, off_norm: float):
        super().__init__(
            f"Jacobi did not converge within {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
        self.off_norm = off_norm


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted descending plus a reconstruction residual."""

    values: tuple[float, ...]
    residual: float

    @property
    def n(self) -> int:
        return len(self.values)


def check_seidel_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("Seidel matrix must be square")
    if np.any(np.diag(a) != 0):
        raise ValueError("Seidel matrix must have zero diagonal")
    off = a[~np.eye(a.shape[0], dtype=bool)]
    if a.shape[0] > 1 and not np.all(np.abs(off) == 1):
        raise ValueError("off-diagonal Seidel entries must be +-1")
    if np.any(a != a.T):
        raise ValueError("Seidel matrix must be symmetric")
    return a


def _jacobi_batch(mats: np.ndarray, vectors: bool = False):
    """Cyclic Jacobi on a (B, n, n) stack of symmetric matrices.

    Rotation targets (p, q) advance in the same cyclic order for the whole
    batch; matrices whose pivot is already below threshold get the identity
    rotation.  Returns (eigenvalues descending (B, n), off-norms (B,),
    eigenvectors (B, n, n) or None).
    """
    a = np.array(mats, dtype=np.float64)
    if a.ndim == 2:
        a = a[None, :, :]
    bsz, n, _ = a.shape
    q_acc = np.broadcast_to(np.eye(n), (bsz, n, n)).copy() if vectors else None
    if n == 1:
        vals = a[:, :, 0].copy()
        return vals, np.zeros(bsz), q_acc
    tol = JACOBI_TOL_FACTOR * n
    skip2 = (tol / (n * n)) ** 2
    iu = np.triu_indices(n, 1)

    def off_norm(m):
        return np.sqrt(2.0 * np.sum(m[:, iu[0], iu[1]] ** 2, axis=1))

    off = off_norm(a)
    for _ in range(JACOBI_MAX_SWEEPS):
        if np.all(off <= tol):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                skip = apq * apq <= skip2
                if skip.all():
                    continue
                safe = np.where(skip, 1.0, apq)
                theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (
                    np.abs(theta) + np.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c = np.where(skip, 1.0, c)[:, None]
                s = np.where(skip, 0.0, s)[:, None]
                rp = a[:, p, :].copy()
                rq = a[:, q, :].copy()
                a[:, p, :] = c * rp - s * rq
                a[:, q, :] = s * rp + c * rq
                cp = a[:, :, p].copy()
                cq = a[:, :, q].copy()
                a[:, :, p] = c * cp - s * cq
                a[:, :, q] = s * cp + c * cq
                # a skipped rotation must be a true no-op so batch results do
                # not depend on batch composition
                zeroed = np.where(skip, apq, 0.0)
                a[:, p, q] = zeroed
                a[:, q, p] = zeroed
                if vectors:
                    vp = q_acc[:, :, p].copy()
                    vq = q_acc[:, :, q].copy()
                    q_acc[:, :, p] = c * vp - s * vq
                    q_acc[:, :, q] = s * vp + c * vq
        off = off_norm(a)
    vals = np.take_along_axis(
        np.diagonal(a, axis1=1, axis2=2).copy(),
        np.argsort(-np.diagonal(a, axis1=1, axis2=2), axis=1, kind="stable"),
        axis=1,
    )
    if vectors:
        order = np.argsort(-np.diagonal(a, axis1=1, axis2=2), axis=1, kind="stable")
        q_acc = np.take_along_axis(q_acc, order[:, None, :], axis=2)
    return vals, off, q_acc


def eigenvalues_batch(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batch spectra for a (B, n, n) stack; raises on any non-convergence."""
    vals, off, _ = _jacobi_batch(mats)
    n = mats.shape[-1]
    bad = off > JACOBI_TOL_FACTOR * n
    if bad.any():
        raise JacobiConvergenceError(float(off[bad].max()))
    return vals, off


def eigenvalues(a: np.ndarray | Graph) -> Spectrum:
    """Certified Seidel spectrum of one matrix via cyclic Jacobi.

    The residual is max |(Q diag(w) Q^T - A)_ij|; trace and Frobenius
    sanity of the eigenvalues are enforced before returning.
    """
    if isinstance(a, Graph):
        a = seidel_matrix(a)
    a = check_seidel_matrix(a)
    n = a.shape[0]
    vals, off, q = _jacobi_batch(a.astype(np.float64), vectors=True)
    if off[0] > JACOBI_TOL_FACTOR * n:
        raise JacobiConvergenceError(float(off[0]))
    w, qm = vals[0], q[0]
    residual = float(np.max(np.abs((qm * w) @ qm.T - a)))
    if abs(w.sum()) > 1e-9 * n:
        raise ValueError(f"eigenvalue sum {w.sum():.3e} violates zero trace")
    if abs(np.sum(w * w) - n * (n - 1)) > 1e-8 * n * n:
        raise ValueError("eigenvalue square sum violates trace of A^2")
    return Spectrum(tuple(float(x) for x in w), residual)


EIGENVALUE_SNAP = 1e-9  # |lambda| below this is treated as an exact zero


def p_energy(s: Spectrum | np.ndarray, p: float) -> float:
    """Sum of |lambda_i|^p; p = 1 is the Seidel energy.

    Eigenvalues smaller than EIGENVALUE_SNAP in magnitude are treated as
    exact zeros: for p < 1 the map |x|^p amplifies solver noise at a true
    zero eigenvalue (1e-17 noise contributes ~1e-5 at p = 0.3), far above
    the certified accuracy of the spectrum itself.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    vals = np.asarray(s.values if isinstance(s, Spectrum) else s, dtype=np.float64)
    mags = np.abs(vals)
    mags = np.where(mags < EIGENVALUE_SNAP, 0.0, mags)
    return float(np.sum(mags**p))


# ---------------------------------------------------------------------------
# exact integer backend


@dataclass(frozen=True)
class ExactCharPoly:
    """Monic characteristic polynomial with exact integer coefficients.

    coeffs[k] is the coefficient of x^k; coeffs[n] = 1.
    """

    coeffs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def char_poly_exact(a) -> ExactCharPoly:
    """det(xI - A) for an integer matrix by Faddeev-LeVerrier.

    All arithmetic is in Python integers; every division in the recurrence
    is exact and asserted so.
    """
    m = np.array(a, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    n = m.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = np.eye(n, dtype=object)
    mk = m.copy()
    for k in range(1, n + 1):
        tr = int(np.trace(mk))
        if tr % k:
            raise ArithmeticError("inexact division in Faddeev-LeVerrier recurrence")
        ck = -(tr // k)
        coeffs[n - k] = ck
        if k < n:
            mk = m @ (mk + ck * ident)
    return ExactCharPoly(tuple(int(c) for c in coeffs))


def charpoly_batch_i64(mats: np.ndarray) -> np.ndarray:
    """Faddeev-LeVerrier over a (B, n, n) int64 stack; returns (B, n+1)
    coefficients in ascending power order.

    Exact only while intermediates fit int64; callers gate on matrix order
    (safe for Seidel A^2 up to n = 8).
    """
    m = np.asarray(mats, dtype=np.int64)
    bsz, n, _ = m.shape
    coeffs = np.zeros((bsz, n + 1), dtype=np.int64)
    coeffs[:, n] = 1
    ident = np.eye(n, dtype=np.int64)
    mk = m.copy()
    for k in range(1, n + 1):
        tr = np.einsum("bii->b", mk)
        ck = -(tr // k)  # exact: the recurrence divides evenly
        coeffs[:, n - k] = ck
        if k < n:
            mk = m @ (mk + ck[:, None, None] * ident)
    return coeffs


def elementary_symmetric_A2(a: np.ndarray | Graph) -> list[int]:
    """Exact S_0..S_n of the squared Seidel eigenvalues.

    Computed as the characteristic polynomial of the integer matrix A^2 with
    signs unwound: S_k = (-1)^k c_{n-k}.
    """
    if isinstance(a, Graph):
        a = seidel_matrix(a)
    a = check_seidel_matrix(a)
    n = a.shape[0]
    sq = np.array(a, dtype=object) @ np.array(a, dtype=object)
    cp = char_poly_exact(sq)
    sk = [(-1) ** k * cp.coeffs[n - k] for k in range(n + 1)]
    if sk[0] != 1 or any(v < 0 for v in sk):
        raise AssertionError("S_k of a squared symmetric matrix must be nonnegative")
    return sk


def sk_from_charpoly_coeffs(coeffs) -> list[int]:
    """Sign-unwind ascending char-poly coefficients of A^2 into S_0..S_n."""
    n = len(coeffs) - 1
    return [(-1) ** k * int(coeffs[n - k]) for k in range(n + 1)]


def bareiss_det(mat) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [[int(x) for x in row] for row in np.asarray(mat, dtype=object)]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def submatrix_det_parity(a: np.ndarray | Graph, rows, cols) -> int:
    """Exact determinant of the Seidel submatrix A_{I,J}.

    When |I ∩ J| = |I| - 1 the result is odd; when the symmetric difference
    is an odd pair's 2x2 block extension, |det| >= 2.
    """
    if isinstance(a, Graph):
        a = seidel_matrix(a)
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols) or not rows:
        raise ValueError("row and column sets must be nonempty and equal-sized")
    sub = np.asarray(a)[np.ix_(rows, cols)]
    return bareiss_det(sub)


def cauchy_binet_check(r, k: int) -> tuple[int, int]:
    """Both sides of S_k(R R^T) = sum over k-subsets I, J of det(R_{I,J})^2.

    Returns (lhs via exact char poly of R R^T, rhs via exact minors)."""
    rm = np.array(r, dtype=object)
    if rm.ndim != 2:
        raise ValueError("R must be a matrix")
    m, q = rm.shape
    if not 1 <= k <= min(m, q):
        raise ValueError(f"k={k} outside 1..min({m},{q})")
    b = rm @ rm.T
    cp = char_poly_exact(b)
    lhs = (-1) ** k * cp.coeffs[m - k]
    rhs = 0
    for rows in combinations(range(m), k):
        for cols in combinations(range(q), k):
            d = bareiss_det(rm[np.ix_(rows, cols)])
            rhs += d * d
    return int(lhs), int(rhs)


def binomial(a: int, b: int) -> int:
    """C(a, b) with the vanishing convention outside 0 <= b <= a."""
    if b < 0 or b > a or a < 0:
        return 0
    return comb(a, b)
