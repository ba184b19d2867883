"""Certification of 2*pi/d rotational symmetry of the numerical range.

The test is algebraic: with ``q_k(theta) = trace((exp(-i theta) A +
exp(i theta) A^*)^k)``, the numerical range is invariant under rotation by
``2 pi / d`` when ``q_1..q_{d-1}`` are constant and ``q_d`` only carries the
harmonics ``0`` and ``+-d``.  For nonsingular ``A`` the condition is also
necessary and forces ``A^d = (-1)^{d-1} det(A) I``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DimensionTooSmall, NotCertified, SingularMatrix, UnsupportedDimension
from .linalg import as_matrix, determinant, mat_power, norm
from .trig import charpoly_theta, power_traces

DEFAULT_TOL = 1e-10
SINGULAR_GATE = 1e-12


def _scale(A: np.ndarray) -> float:
    return max(1.0, norm(A))


def is_singular(A: np.ndarray, det: complex | None = None) -> bool:
    A = as_matrix(A)
    if det is None:
        det = determinant(A)
    return abs(det) <= SINGULAR_GATE * max(norm(A), 1e-300) ** A.shape[0]


def symmetry_phase(A: np.ndarray, det: complex | None = None) -> float:
    """Direction ``phi`` of maximal support, in ``(-pi/d, pi/d]``.

    ``(-1)^{d-1} det(A) = |det A| exp(i d phi)``; for a certified matrix the
    support function peaks at ``phi + 2 pi k / d`` and dips at
    ``phi + pi/d + 2 pi k / d``.
    """
    A = as_matrix(A)
    d = A.shape[0]
    if det is None:
        det = determinant(A)
    arg = cmath.phase((-1) ** (d - 1) * det)
    if arg == -math.pi:
        arg = math.pi
    return arg / d


def normalize(A) -> tuple[complex, np.ndarray]:
    """Return ``(c, cA)`` with ``det(cA) = (-1)^{d-1}``.

    ``c`` is the principal ``d``-th root, ``arg c`` in ``(-pi/d, pi/d]``; any
    other root differs by a rotation that maps ``W(cA)`` to itself.
    """
    A = as_matrix(A)
    d = A.shape[0]
    det = determinant(A)
    if is_singular(A, det):
        raise SingularMatrix("det(A) is numerically zero; normalization undefined (disk regime)")
    target = (-1) ** (d - 1) / det
    arg = cmath.phase(target)
    if arg == -math.pi:  # negative zero imaginary part
        arg = math.pi
    c = abs(target) ** (1.0 / d) * cmath.exp(1j * arg / d)
    return complex(c), c * A


@dataclass(frozen=True)
class SymmetryCertificate:
    d: int
    passes: bool
    residual_qk: list[float]
    residual_qd: float
    residual_qd_anchor: float
    residual_power_identity: float
    normalization: complex | None
    tol: float
    det: complex
    scale: float
    disk_regime: bool
    scaled_residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max([*self.residual_qk, self.residual_qd, self.residual_qd_anchor,
                    self.residual_power_identity])

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("normalization", "det"):
            z = out[key]
            out[key] = None if z is None else [z.real, z.imag]
        return out


def certify(A, tol: float = DEFAULT_TOL) -> SymmetryCertificate:
    """Check the trace conditions and the power identity for ``A``.

    Each residual of homogeneous degree ``k`` in ``A`` is compared to
    ``tol * max(1, ||A||_F)^k``.  Singular inputs are still checked (their
    power identity reads ``A^d = 0``) and are flagged as the disk regime.
    """
    A = as_matrix(A)
    d = A.shape[0]
    if d < 3:
        raise DimensionTooSmall("rotation symmetry is only meaningful for d >= 3")
    s = _scale(A)
    q = power_traces(A, d)
    res_qk = [q[k - 1].max_outside({0}) for k in range(1, d)]
    res_qd = q[d - 1].max_outside({0, d, -d})
    Ad = mat_power(A, d)
    res_anchor = abs(q[d - 1][-d] - complex(np.trace(Ad)))
    det = determinant(A)
    singular = is_singular(A, det)
    res_power = float(np.max(np.abs(Ad - (-1) ** (d - 1) * det * np.eye(d))))

    scaled = {f"q{k}": res_qk[k - 1] / s ** k for k in range(1, d)}
    scaled[f"q{d}"] = res_qd / s ** d
    scaled["q_anchor"] = res_anchor / s ** d
    scaled["power_identity"] = res_power / s ** d
    passes = all(v <= tol for v in scaled.values())

    c = None
    if not singular:
        c, _ = normalize(A)
    return SymmetryCertificate(
        d=d, passes=passes, residual_qk=[float(r) for r in res_qk], residual_qd=float(res_qd),
        residual_qd_anchor=float(res_anchor), residual_power_identity=res_power,
        normalization=c, tol=tol, det=det, scale=s, disk_regime=singular,
        scaled_residuals=scaled)


def simplified_conditions(A, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Named trace residuals of the reduced condition sets for ``d = 3, 4, 5``.

    Values are scaled by ``max(1, ||A||_F)^k`` like :func:`certify`; the key
    ``"passes"`` is ``1.0`` when every residual is within ``tol``.  The lower
    power traces ``trace(A^k)``, ``k < d``, are listed explicitly: the power
    identity alone does not force them (``A = I`` satisfies ``A^3 = det(A) I``).
    """
    A = as_matrix(A)
    d = A.shape[0]
    if d not in (3, 4, 5):
        raise UnsupportedDimension("reduced conditions exist only for d in {3, 4, 5}")
    det = determinant(A)
    if is_singular(A, det):
        raise SingularMatrix("reduced conditions assume det(A) != 0")
    s = _scale(A)
    Ah = A.conj().T
    P = [np.eye(d, dtype=complex)]
    for _ in range(d):
        P.append(P[-1] @ A)

    out: dict[str, float] = {}
    out[f"A^{d} - (-1)^{d - 1} det(A) I"] = float(
        np.max(np.abs(P[d] - (-1) ** (d - 1) * det * np.eye(d)))) / s ** d
    for k in range(1, d):
        out[f"trace(A^{k})"] = abs(np.trace(P[k])) / s ** k
    out["trace(A* A^2)"] = abs(np.trace(Ah @ P[2])) / s ** 3
    if d >= 4:
        out["trace(A* A^3)"] = abs(np.trace(Ah @ P[3])) / s ** 4
    if d == 5:
        out["trace(A* A^4)"] = abs(np.trace(Ah @ P[4])) / s ** 5
        out["trace(A*^2 A^3) + trace(A* A A* A^2)"] = abs(
            np.trace(Ah @ Ah @ P[3]) + np.trace(Ah @ A @ Ah @ P[2])) / s ** 5
    out["passes"] = float(all(v <= tol for v in out.values()))
    return out


def extended_harmonic_check(A, kmax: int) -> dict[int, float]:
    """For ``d < k <= kmax``, the largest unscaled harmonic of ``q_k`` off ``d Z``."""
    A = as_matrix(A)
    d = A.shape[0]
    if kmax < d:
        raise ValueError("kmax must be >= d")
    q = power_traces(A, kmax)
    return {k: q[k - 1].max_outside(lambda j: j % d == 0) for k in range(d + 1, kmax + 1)}


@dataclass(frozen=True)
class ExtractedP:
    """``det(w I - B(theta)) = P(w) - (-1/2)^{d-1} Re(exp(-i d theta) det A)``.

    ``oscillation`` is the measured ``exp(-i d theta)`` coefficient of ``t_d``;
    ``convention_sign`` is ``+1`` when it equals ``(-1)^d det(A) / 2^d`` (the
    sign displayed above), ``-1`` for the opposite sign.
    """

    P: Polynomial
    sigma: tuple[float, ...]
    det: complex
    oscillation: complex
    convention_sign: int
    normalized: bool

    @property
    def amplitude(self) -> float:
        """``|det A| / 2^{d-1}``: half-range of ``P`` along the support curve."""
        d = len(self.sigma)
        return abs(self.det) / 2.0 ** (d - 1)


def extract_P(A, tol: float = DEFAULT_TOL) -> ExtractedP:
    """The theta-independent part ``P`` of the characteristic polynomial."""
    A = as_matrix(A)
    d = A.shape[0]
    cert = certify(A, tol)
    if not cert.passes:
        raise NotCertified("extract_P requires a certified matrix")
    if cert.disk_regime:
        raise SingularMatrix("extract_P requires det(A) != 0")
    t = charpoly_theta(A)
    sigma = tuple(tk.const for tk in t)
    P = Polynomial(np.array([*sigma[::-1], 1.0]))
    osc = t[d - 1][-d]
    expected = (-1) ** d * cert.det / 2.0 ** d
    sc = max(abs(expected), 1e-300)
    if abs(osc - expected) <= 1e-8 * sc:
        sign = 1
    elif abs(osc + expected) <= 1e-8 * sc:
        sign = -1
    else:
        sign = 0
    normalized = abs(cert.det - (-1) ** (d - 1)) <= 1e-10
    return ExtractedP(P, sigma, cert.det, complex(osc), sign, normalized)


def largest_root_of_level(ext: ExtractedP, level: float) -> float:
    """Largest real solution of ``P(w) = level`` (numpy root finder)."""
    roots = (ext.P - level).roots()
    real = roots[np.abs(roots.imag) <= 1e-6 * max(1.0, np.max(np.abs(roots)))].real
    return float(np.max(real))

