"""Support function, tangential boundary curve and flat-part analysis.

For a certified nonsingular matrix the support function ``w_M`` solves
``P(w) = |det A| 2^{1-d} cos(d (theta - phi))`` where ``phi`` is
:func:`~rotrange.certify.symmetry_phase`.  It peaks at ``theta = phi`` and
dips at ``phi + pi/d``, where a repeated root of ``P`` produces a straight
piece of boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .certify import certify, extract_P, is_singular, normalize, symmetry_phase
from .errors import InconsistentCurvature, OriginOutside
from .linalg import (as_matrix, commutator_norm, determinant, hermitian_eigenvalues,
                     hermitian_part, norm)
from .trig import TrigPolynomial, charpoly_theta

FD_STEP = 1e-5
REPEATED_ROOT_TOL = 1e-8
FLAT_GAP_TOL = 1e-6


@dataclass(frozen=True)
class BoundarySample:
    """One point of the tangential representation.

    ``flag`` is ``""`` for a regular sample, ``"fd"`` when the derivative came
    from central differences, and ``"left"`` / ``"right"`` for the two
    one-sided limits emitted at a kink of ``w_M``.
    """

    theta: float
    wM: float
    dwM: float
    zeta: complex
    flag: str = ""


@dataclass(frozen=True)
class FlatSegment:
    """A straight piece of boundary orthogonal to ``exp(i normal_angle)``.

    ``gamma1 = (2^{d-3} P''(w1) / |det A|)^{-1/2}``; the one-sided slopes of
    ``w_M`` at the segment angle are ``-+ (d/2) gamma1``, so the segment
    half-length is ``half_length = d * gamma1 / 2``.
    """

    sector: int
    normal_angle: float
    w1: float
    gamma1: float
    half_length: float
    endpoint_minus: complex
    endpoint_plus: complex

    @property
    def psi_end(self) -> float:
        """Polar angle of ``endpoint_minus``: ``normal_angle - arctan(half_length / w1)``."""
        return self.normal_angle - math.atan2(self.half_length, self.w1)


@dataclass(frozen=True)
class GeometryReport:
    is_polygon: bool
    arg_monotone: bool
    modulus_monotone_on_sector: bool
    support_monotone_on_sector: bool
    periodicity_residual: float
    evenness_residual: float
    convexity_bound_ok: bool
    p_prime_at_max_positive: bool
    rotation_distance: float
    certified: bool
    scale: float
    details: dict = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        tol = 1e-9 * self.scale
        return (self.certified and self.arg_monotone and self.modulus_monotone_on_sector
                and self.support_monotone_on_sector and self.periodicity_residual < tol
                and self.evenness_residual < tol and self.convexity_bound_ok
                and self.p_prime_at_max_positive and self.rotation_distance < 1e-8 * self.scale)

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in (
            "is_polygon", "arg_monotone", "modulus_monotone_on_sector",
            "support_monotone_on_sector", "periodicity_residual", "evenness_residual",
            "convexity_bound_ok", "p_prime_at_max_positive", "rotation_distance",
            "certified", "scale")}
        out["passes"] = self.passes
        out["details"] = self.details
        return out


def support(A, theta: float) -> float:
    """Largest eigenvalue of ``(exp(-i theta) A + exp(i theta) A^*) / 2``."""
    return hermitian_eigenvalues(hermitian_part(A, theta)).largest


class _Curve:
    # Per-matrix cache: the exact charpoly harmonics and their theta-derivatives.

    def __init__(self, A, charpoly: list[TrigPolynomial] | None = None):
        self.A = as_matrix(A)
        self.d = self.A.shape[0]
        self.t = charpoly if charpoly is not None else charpoly_theta(self.A)
        self.dt = [tk.derivative() for tk in self.t]
        self.scale = max(1.0, norm(self.A))

    def spectrum(self, theta):
        return hermitian_eigenvalues(hermitian_part(self.A, theta))

    def w(self, theta) -> float:
        return self.spectrum(theta).largest

    def partials(self, theta, w) -> tuple[float, float]:
        d = self.d
        Fw = d * w ** (d - 1)
        Ft = 0.0
        for k in range(1, d + 1):
            if d - k >= 1:
                Fw += (d - k) * self.t[k - 1](theta) * w ** (d - k - 1)
            Ft += self.dt[k - 1](theta) * w ** (d - k)
        return Fw, Ft

    def derivative(self, theta, w=None) -> tuple[float, bool]:
        """``(w_M'(theta), flagged)`` by implicit differentiation."""
        if w is None:
            w = self.w(theta)
        Fw, Ft = self.partials(theta, w)
        if abs(Fw) < REPEATED_ROOT_TOL * self.scale ** (self.d - 1):
            h = FD_STEP
            return (self.w(theta + h) - self.w(theta - h)) / (2 * h), True
        return -Ft / Fw, False

    def one_sided(self, theta, w) -> tuple[float, float]:
        h = FD_STEP
        left = (3 * w - 4 * self.w(theta - h) + self.w(theta - 2 * h)) / (2 * h)
        right = (-3 * w + 4 * self.w(theta + h) - self.w(theta + 2 * h)) / (2 * h)
        return left, right


def support_derivative(A, theta: float, charpoly: list[TrigPolynomial] | None = None) -> float:
    """``w_M'(theta)`` from the exact charpoly, ``-(dT/dtheta) / (dT/dw)``.

    Near a repeated top eigenvalue the implicit formula is ill-conditioned and
    a central difference with step ``1e-5`` is returned instead.
    """
    return _Curve(A, charpoly).derivative(theta)[0]


def _zeta(theta: float, w: float, dw: float) -> complex:
    return complex((w + 1j * dw) * np.exp(1j * theta))


def boundary_curve(A, n_samples: int, charpoly: list[TrigPolynomial] | None = None
                   ) -> list[BoundarySample]:
    """Sample ``zeta(theta) = (w_M + i w_M') exp(i theta)`` on a uniform grid.

    At a kink of ``w_M`` (repeated top eigenvalue with distinct one-sided
    slopes) two samples are emitted, tagged ``"left"`` and ``"right"``.
    """
    curve = _Curve(A, charpoly)
    if n_samples < 8 * curve.d:
        raise ValueError(f"n_samples must be >= 8d = {8 * curve.d}")
    out: list[BoundarySample] = []
    for j in range(n_samples):
        theta = 2 * math.pi * j / n_samples
        w = curve.w(theta)
        dw, flagged = curve.derivative(theta, w)
        if not flagged:
            out.append(BoundarySample(theta, w, dw, _zeta(theta, w, dw)))
            continue
        left, right = curve.one_sided(theta, w)
        if abs(right - left) <= 1e-6 * curve.scale:
            out.append(BoundarySample(theta, w, dw, _zeta(theta, w, dw), "fd"))
        else:
            out.append(BoundarySample(theta, w, left, _zeta(theta, w, left), "left"))
            out.append(BoundarySample(theta, w, right, _zeta(theta, w, right), "right"))
    return out


def detect_polygon(A, tol: float = 1e-8) -> tuple[bool, np.ndarray]:
    """Whether ``W(A)`` is a regular ``d``-gon centred at 0, and its vertices.

    True iff ``A`` is normal and its eigenvalues are the ``d``-th roots of
    ``(-1)^{d-1} det A``; the eigenvalue claim is verified through the power
    sums ``trace(A^k)``, ``k = 1..d``.
    """
    A = as_matrix(A)
    d = A.shape[0]
    det = determinant(A)
    if is_singular(A, det):
        return False, np.empty(0, dtype=complex)
    s = max(1.0, norm(A))
    radius = abs(det) ** (1.0 / d)
    phi = symmetry_phase(A, det)
    vertices = radius * np.exp(1j * (phi + 2 * np.pi * np.arange(d) / d))
    if commutator_norm(A) > tol * s * s:
        return False, vertices
    P = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        P = P @ A
        if abs(np.trace(P) - np.sum(vertices ** k)) > tol * s ** k:
            return False, vertices
    return True, vertices


def detect_flat_parts(A, tol: float = 1e-8) -> list[FlatSegment]:
    """Straight boundary pieces of a certified nonsingular matrix.

    A flat piece sits at ``theta1 = phi + pi/d`` exactly when
    ``w1 = w_M(theta1)`` is a repeated root of ``P``.  Both a vanishing
    ``P'(w1)`` (relative to the coefficients of ``P``) and an eigenvalue gap
    below ``1e-6`` are required.  For a polygon the segments are its edges.
    """
    A = as_matrix(A)
    d = A.shape[0]
    ext = extract_P(A)
    phi = symmetry_phase(A, ext.det)
    theta1 = phi + math.pi / d
    spec = hermitian_eigenvalues(hermitian_part(A, theta1))
    w1 = spec.largest
    dP = ext.P.deriv()
    pscale = max(1.0, float(np.max(np.abs(ext.P.coef))))
    if abs(dP(w1)) > tol * pscale * max(1.0, abs(w1)) ** (d - 1) or spec.top_gap >= FLAT_GAP_TOL:
        return []
    curv = float(ext.P.deriv(2)(w1))
    if curv <= 0:
        raise InconsistentCurvature(f"P''(w1) = {curv:.3e} <= 0 at a repeated root")
    gamma1 = (2.0 ** (d - 3) * curv / abs(ext.det)) ** -0.5
    half = d * gamma1 / 2
    segs = []
    for k in range(d):
        ang = theta1 + 2 * math.pi * k / d
        rot = np.exp(1j * ang)
        segs.append(FlatSegment(k, ang, w1, gamma1, half,
                                complex((w1 - 1j * half) * rot), complex((w1 + 1j * half) * rot)))
    return segs


def polar_radius(A, psi: float, boundary: list[BoundarySample],
                 iterations: int = 60) -> float:
    """Radius of ``W(A)`` in direction ``psi``: ``min_theta w_M / cos(psi - theta)``.

    The sampled minimiser is refined by golden-section search on the exact
    support function over the two neighbouring grid cells.
    """
    A = as_matrix(A)
    thetas = np.array([b.theta for b in boundary])
    ws = np.array([b.wM for b in boundary])
    if np.any(ws <= 0):
        raise OriginOutside("0 is not interior to W(A); polar form undefined")
    thetas, idx = np.unique(thetas, return_index=True)
    ws = ws[idx]
    cosv = np.cos(psi - thetas)
    ratio = np.where(cosv > 1e-12, ws / np.where(cosv > 1e-12, cosv, 1.0), np.inf)
    j = int(np.argmin(ratio))
    step = 2 * math.pi / len(thetas)
    lo, hi = thetas[j] - step, thetas[j] + step

    def f(th):
        c = math.cos(psi - th)
        return support(A, th) / c if c > 1e-12 else math.inf

    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if hi - lo < 1e-10:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
    return float(min(f1, f2, ratio[j]))


def _point_to_polyline(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    a = poly
    b = np.roll(poly, -1)
    ab = b - a
    denom = np.where(np.abs(ab) ** 2 > 0, np.abs(ab) ** 2, 1.0)
    diff = points[:, None] - a[None, :]
    t = np.clip(np.real(diff * np.conj(ab)[None, :]) / denom[None, :], 0.0, 1.0)
    proj = a[None, :] + t * ab[None, :]
    return np.min(np.abs(points[:, None] - proj), axis=1)


def rotation_distance(boundary: list[BoundarySample], d: int) -> float:
    """Max distance from ``exp(2 pi i/d) zeta`` to the closed sampled polyline."""
    z = np.array([b.zeta for b in boundary])
    return float(np.max(_point_to_polyline(np.exp(2j * np.pi / d) * z, z)))


def validate_geometry(A, boundary: list[BoundarySample] | None = None, *,
                      n_samples: int | None = None, n_sector: int = 180) -> GeometryReport:
    """Check the shape properties of a symmetric numerical range.

    The matrix is first rescaled to ``det = (-1)^{d-1}`` (so the support
    function peaks at ``theta = 0``); a singular matrix is analysed as is.
    On that matrix: evenness and ``2 pi/d`` periodicity of ``w_M``, strict
    decrease of ``w_M`` and ``|zeta|`` on ``n_sector`` interior points of
    ``(0, pi/d)`` (non-strict for a polygon, whose boundary point is a fixed
    vertex there), monotone ``arg zeta``, the convexity bound
    ``w_M(pi/d) >= cos(pi/d) w_M(0)``, ``P'(w_M(0)) > 0`` and the distance of
    the rotated sampled boundary to itself.  When ``boundary`` is given (for
    ``A`` itself) the rotation distance is measured on it.
    """
    A = as_matrix(A)
    d = A.shape[0]
    cert = certify(A)
    An = A if cert.disk_regime else normalize(A)[1]
    curve = _Curve(An)
    s = max(1.0, norm(An))
    polygon, _ = detect_polygon(An)
    strict = not polygon

    grid = np.linspace(0.0, 2 * math.pi / d, 65)
    w_grid = np.array([curve.w(t) for t in grid])
    even_res = max(abs(curve.w(-t) - wt) for t, wt in zip(grid, w_grid))
    per_res = max(abs(curve.w(t + 2 * math.pi / d) - wt) for t, wt in zip(grid, w_grid))

    sector = np.linspace(0.0, math.pi / d, n_sector + 2)[1:-1]
    ws = np.array([curve.w(t) for t in sector])
    dws = np.array([curve.derivative(t, w)[0] for t, w in zip(sector, ws)])
    mods = np.hypot(ws, dws)
    slack = 0.0 if strict else 1e-9 * s
    w_mono = bool(np.all(np.diff(ws) < slack))
    mod_mono = bool(np.all(np.diff(mods) < slack))

    if boundary is None:
        n = n_samples or 720
        n = 2 * d * math.ceil(n / (2 * d))
        bnd_norm = boundary_curve(An, n, curve.t)
        bnd = bnd_norm
        rot_scale = 1.0
    else:
        bnd_norm = boundary_curve(An, max(2 * d * math.ceil(len(boundary) / (2 * d)), 8 * d),
                                  curve.t)
        bnd = boundary
        rot_scale = 1.0 if cert.normalization is None else abs(cert.normalization)

    args = np.unwrap(np.angle([b.zeta for b in bnd_norm]))
    steps = np.diff(args)
    arg_mono = bool(np.all(steps > 0) if strict else np.all(steps > -1e-9))
    winding = float(args[-1] - args[0] + np.angle(bnd_norm[0].zeta / bnd_norm[-1].zeta))

    w0 = curve.w(0.0)
    wpi = curve.w(math.pi / d)
    convex_ok = bool(wpi >= math.cos(math.pi / d) * w0 - 1e-9 * s)

    pprime_ok = False
    pprime = float("nan")
    if cert.passes and not cert.disk_regime:
        ext = extract_P(An)
        pprime = float(ext.P.deriv()(w0))
        pprime_ok = pprime > 0

    rot = rotation_distance(bnd, d) * rot_scale

    details = {
        "w_max": w0, "w_min": wpi, "p_prime_at_max": pprime, "winding": winding,
        "normalization": None if cert.normalization is None
        else [cert.normalization.real, cert.normalization.imag],
        "strict_monotonicity": strict,
    }
    return GeometryReport(
        is_polygon=polygon, arg_monotone=arg_mono, modulus_monotone_on_sector=mod_mono,
        support_monotone_on_sector=w_mono, periodicity_residual=float(per_res),
        evenness_residual=float(even_res), convexity_bound_ok=convex_ok,
        p_prime_at_max_positive=pprime_ok, rotation_distance=rot, certified=cert.passes,
        scale=s, details=details)
