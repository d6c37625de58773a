"""Dense Hermitian eigensolver and small matrix helpers.

The eigensolver is a cyclic Jacobi iteration for complex Hermitian
matrices: sweeps of plane rotations zero one off-diagonal element at a
time until the off-diagonal Frobenius norm falls below tolerance.  It is
self-contained, numerically transparent, and adequate for the matrix
sizes this package produces (density matrices up to 256 x 256).  Bulk
spectra of larger reshaped state tensors go through dedicated
Schmidt-decomposition paths elsewhere; this module is the single
implementation behind the density-matrix contracts.
"""

from __future__ import annotations

import math

import numpy as np

JACOBI_TOL = 1e-13
MAX_SWEEPS = 100


def jacobi_eigh(
    a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (n, n) array_like, Hermitian up to round-off.
    tol : relative off-diagonal Frobenius tolerance for convergence.
    max_sweeps : hard sweep cap; non-convergence raises ``LinAlgError``.

    Returns
    -------
    w : (n,) float64, eigenvalues ascending.
    v : (n, n) complex128, unitary with ``a @ v[:, k] == w[k] * v[:, k]``.
    """
    m = np.array(a, dtype=np.complex128, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([m[0, 0].real]), v

    scale = np.linalg.norm(m)
    if scale == 0.0:
        return np.zeros(n), v
    skew = np.linalg.norm(m - m.conj().T)
    if skew > 1e-10 * max(1.0, scale):
        raise ValueError(f"matrix is not Hermitian (skew norm {skew:.3e})")
    threshold = tol * scale

    for _ in range(max_sweeps):
        hollow = m.copy()
        np.fill_diagonal(hollow, 0.0)
        if np.linalg.norm(hollow) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (m[q, q].real - m[p, p].real) / (2.0 * mag)
                sign = 1.0 if tau >= 0.0 else -1.0
                # hypot keeps sqrt(1 + tau^2) finite for huge tau
                t = sign / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                # columns: m <- m @ r with r = [[c, s*phase], [-s*conj(phase), c]]
                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * np.conj(phase) * col_q
                m[:, q] = s * phase * col_p + c * col_q
                # rows: m <- r^dagger @ m
                row_p = m[p, :].copy()
                row_q = m[q, :].copy()
                m[p, :] = c * row_p - s * phase * row_q
                m[q, :] = s * np.conj(phase) * row_p + c * row_q
                # rotation leaves tiny imaginary residue on the diagonal
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                m[p, q] = 0.0
                m[q, p] = 0.0

                vc_p = v[:, p].copy()
                vc_q = v[:, q].copy()
                v[:, p] = c * vc_p - s * np.conj(phase) * vc_q
                v[:, q] = s * phase * vc_p + c * vc_q
    else:
        raise np.linalg.LinAlgError(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps"
        )

    w = np.diag(m).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh_jacobi(a: np.ndarray, tol: float = JACOBI_TOL) -> np.ndarray:
    """Eigenvalues only, ascending."""
    w, _ = jacobi_eigh(a, tol=tol)
    return w


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value.

    Hermitian and anti-Hermitian inputs take the eigenvalue fast path
    (anti-Hermitian ``a`` via the Hermitian matrix ``1j * a``); anything
    else goes through the Gram matrix.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.size == 0:
        return 0.0
    herm_err = np.max(np.abs(m - m.conj().T))
    anti_err = np.max(np.abs(m + m.conj().T))
    tiny = 1e-12 * max(1.0, float(np.max(np.abs(m))))
    if herm_err <= tiny:
        return float(np.max(np.abs(eigvalsh_jacobi(m))))
    if anti_err <= tiny:
        return float(np.max(np.abs(eigvalsh_jacobi(1j * m))))
    w = eigvalsh_jacobi(m.conj().T @ m)
    return float(math.sqrt(max(0.0, float(w[-1]))))


def matrix_sqrt_psd(a: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Small negative eigenvalues from rounding are clipped to zero.
    """
    w, v = jacobi_eigh(np.asarray(a))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
