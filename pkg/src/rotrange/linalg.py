"""Dense complex matrix helpers and a cyclic Jacobi Hermitian eigensolver.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` and shape
``(d, d)``.  Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

DEFAULT_TOL = 1e-12
HERMITICITY_GATE = 1e-10
MAX_SWEEPS = 64


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues of a Hermitian matrix in ascending order.

    ``residual`` is ``max_j ||H v_j - lambda_j v_j||`` when eigenvectors were
    requested, otherwise the off-diagonal Frobenius norm left by the last
    sweep (a bound on the absolute eigenvalue error).
    """

    eigenvalues: np.ndarray
    residual: float
    vectors: np.ndarray | None = None

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def top_gap(self) -> float:
        if len(self.eigenvalues) < 2:
            return np.inf
        return float(self.eigenvalues[-1] - self.eigenvalues[-2])


def as_matrix(A) -> np.ndarray:
    """Validate ``A`` as a finite square matrix and return a complex copy."""
    M = np.array(A, dtype=complex)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def norm(A: np.ndarray) -> float:
    """Frobenius norm; the scale used by every relative tolerance."""
    return float(np.sqrt(np.sum(np.abs(A) ** 2)))


def adjoint(A: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(A, dtype=complex)).T.copy()


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.ndim != 2:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def hermitian_part(A: np.ndarray, theta: float) -> np.ndarray:
    """Return ``(exp(-i theta) A + exp(i theta) A^*) / 2``."""
    A = np.asarray(A, dtype=complex)
    z = np.exp(-1j * theta)
    return 0.5 * (z * A + np.conj(z) * np.conj(A).T)


def _jacobi_sweeps(H: list, V: list | None, target2: float, max_sweeps: int) -> float:
    # In-place cyclic Jacobi on a list-of-lists Hermitian matrix.  Plain Python
    # scalars beat numpy slicing by ~5x for the d <= 16 matrices used here.
    d = len(H)
    sweeps = 0
    while True:
        off2 = 0.0
        for p in range(d):
            row = H[p]
            for q in range(d):
                if p != q:
                    off2 += abs(row[q]) ** 2
        if off2 <= target2:
            return math.sqrt(off2)
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off={math.sqrt(off2):.3e})")
        for p in range(d - 1):
            Hp = H[p]
            for q in range(p + 1, d):
                Hq = H[q]
                h = Hp[q]
                r = abs(h)
                if r == 0.0:
                    continue
                # symmetric 2x2 Schur step (Golub & Van Loan) after removing the phase
                tau = (Hq[q].real - Hp[p].real) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph = h.conjugate() / r
                # G = [[c, s], [-s ph, c ph]] on (p, q); H <- G^* H G
                sph, cph = s * ph, c * ph
                for row in H:
                    a, b = row[p], row[q]
                    row[p] = c * a - sph * b
                    row[q] = s * a + cph * b
                sphc, cphc = sph.conjugate(), cph.conjugate()
                for j in range(d):
                    a, b = Hp[j], Hq[j]
                    Hp[j] = c * a - sphc * b
                    Hq[j] = s * a + cphc * b
                Hp[q] = 0j
                Hq[p] = 0j
                if V is not None:
                    for row in V:
                        a, b = row[p], row[q]
                        row[p] = c * a - sph * b
                        row[q] = s * a + cph * b
        sweeps += 1


def hermitian_eigenvalues(H: np.ndarray, tol: float = DEFAULT_TOL, *,
                          max_sweeps: int = MAX_SWEEPS,
                          vectors: bool = False) -> HermitianSpectrum:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    H : array_like
        Square matrix, Hermitian up to ``1e-10 * ||H||`` (it is symmetrized
        before iterating).
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm is at most
        ``tol * ||H||``.
    max_sweeps : int
        Raise :class:`NoConvergence` when exceeded.
    vectors : bool
        Also accumulate eigenvectors and report the true residual.

    Returns
    -------
    HermitianSpectrum
    """
    H = as_matrix(H)
    d = H.shape[0]
    scale = norm(H)
    if np.max(np.abs(H - H.conj().T)) > HERMITICITY_GATE * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10 relative")
    H = 0.5 * (H + H.conj().T)
    work = H.tolist()
    V = np.eye(d, dtype=complex).tolist() if vectors else None
    off = _jacobi_sweeps(work, V, (tol * scale) ** 2, max_sweeps)

    lam = np.array([work[i][i].real for i in range(d)])
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    if V is not None:
        Vm = np.array(V, dtype=complex)[:, order]
        resid = float(np.max(np.linalg.norm(H @ Vm - Vm * lam, axis=0)))
        return HermitianSpectrum(lam, resid, Vm)
    return HermitianSpectrum(lam, off)


def determinant(A: np.ndarray) -> complex:
    """Determinant by LU factorization with partial pivoting (0 if singular)."""
    U = as_matrix(A).copy()
    d = U.shape[0]
    det = 1.0 + 0j
    for k in range(d):
        piv = k + int(np.argmax(np.abs(U[k:, k])))
        if U[piv, k] == 0:
            return 0j
        if piv != k:
            U[[k, piv]] = U[[piv, k]]
            det = -det
        det *= U[k, k]
        if k + 1 < d:
            m = U[k + 1:, k] / U[k, k]
            U[k + 1:, k:] -= np.outer(m, U[k, k:])
    return complex(det)


def mat_power(A: np.ndarray, k: int) -> np.ndarray:
    A = as_matrix(A)
    if k < 0:
        raise ValueError("k must be non-negative")
    out = np.eye(A.shape[0], dtype=complex)
    for _ in range(k):
        out = out @ A
    return out


def trace_power(A: np.ndarray, k: int) -> complex:
    if k < 1:
        raise ValueError("k must be >= 1")
    return complex(np.trace(mat_power(A, k)))


def singular_values(A: np.ndarray) -> np.ndarray:
    """Singular values in descending order, via the eigenvalues of ``A^* A``."""
    A = as_matrix(A)
    lam = hermitian_eigenvalues(A.conj().T @ A, tol=1e-14).eigenvalues
    return np.sqrt(np.clip(lam, 0.0, None))[::-1]


def spectral_norm(A: np.ndarray) -> float:
    return float(singular_values(A)[0])


def commutator_norm(A: np.ndarray) -> float:
    """``max |A A^* - A^* A|``; zero exactly for normal matrices."""
    A = as_matrix(A)
    Ah = A.conj().T
    return float(np.max(np.abs(A @ Ah - Ah @ A)))
