"""Dense eigenvalue and index routines for 4x4 two-qubit operators.

Eigenvalues of Hermitian matrices are computed with cyclic Jacobi rotations on
the real-symmetric embedding [[Re H, -Im H], [Im H, Re H]], whose spectrum is
that of H with every eigenvalue doubled.  At 8x8 this converges in a handful
of sweeps and keeps the numerical core of the package self-contained.
"""

from __future__ import annotations

import math

import numpy as np

JACOBI_OFF_TOL = 1e-13
_MAX_SWEEPS = 100


def real_symmetric_embedding(h: np.ndarray) -> np.ndarray:
    """Embed a complex Hermitian matrix into a real symmetric one of twice the size."""
    a = np.real(h)
    b = np.imag(h)
    return np.block([[a, -b], [b, a]])


def _off_norm(a: np.ndarray) -> float:
    return math.sqrt(2.0 * float(np.sum(np.tril(a, -1) ** 2)))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """One Jacobi rotation zeroing a[p, q], applied in place."""
    apq = a[p, q]
    if apq == 0.0:
        return
    diff = a[q, q] - a[p, p]
    if abs(apq) < 1e-36 * abs(diff):  # rotation angle below float resolution
        t = apq / diff
    else:
        theta = diff / (2.0 * apq)
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(sym: np.ndarray, off_tol: float = JACOBI_OFF_TOL) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, ascending, by cyclic Jacobi sweeps."""
    a = np.array(sym, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigenvalues expects a square matrix")
    for _ in range(_MAX_SWEEPS):
        if _off_norm(a) < off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, ascending.

    Hermiticity is assumed (the callers build their matrices Hermitian by
    construction); the skew part is symmetrised away to keep the embedding
    exactly symmetric.
    """
    h = np.asarray(h, dtype=complex)
    h = 0.5 * (h + h.conj().T)
    doubled = jacobi_eigenvalues(real_symmetric_embedding(h))
    # The embedding doubles every eigenvalue; take one of each adjacent pair.
    return doubled[::2]


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Partial transpose of a 4x4 two-qubit operator over the second qubit."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError("partial_transpose expects a 4x4 matrix")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
