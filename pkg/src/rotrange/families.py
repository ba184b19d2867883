"""Explicit matrix families with rotationally symmetric numerical ranges.

* ``perm_family``: cyclic permutation times a diagonal, ``M(a_1, ..., a_d)``.
* ``d4_family``: ``A = D + E`` with ``D = diag(1, i, -1, -i)`` and ``E``
  strictly upper triangular, for the five known solution families.
* ``disk_counterexample``: a singular 3x3 matrix whose range is the unit disk
  although it fails the trace conditions.

Closed-form resultants for the permutation family (``d = 3, 4, 5``) are
checked against a Sylvester-matrix oracle built from the extracted ``P``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .boundary import support
from .certify import extract_P
from .errors import InvalidSpec, OutOfDomain, UnsupportedDimension
from .linalg import as_matrix, determinant, singular_values, spectral_norm
from .trig import hadamard_bound, sylvester_resultant

D4_VARIANTS = ("b-family", "a-plus", "a-minus", "alphagamma-plus", "alphagamma-minus",
               "rho-theta")


# --------------------------------------------------------------------------
# permutation-scaled family

@dataclass(frozen=True)
class PermFamilySpec:
    alphas: tuple

    def __post_init__(self):
        alphas = tuple(complex(a) for a in self.alphas)
        if len(alphas) < 2:
            raise InvalidSpec("need at least two alphas")
        if not all(cmath.isfinite(a) for a in alphas):
            raise InvalidSpec("alphas must be finite")
        if any(abs(a) == 0 for a in alphas):
            raise InvalidSpec("alphas must be nonzero")
        if all(a.imag == 0 for a in alphas) and any(a.real < 0 for a in alphas):
            raise InvalidSpec("real alphas must be positive")
        object.__setattr__(self, "alphas", alphas)

    @property
    def d(self) -> int:
        return len(self.alphas)


def perm_family(spec) -> np.ndarray:
    """``M[k, k+1 mod d] = alphas[k]``; ``(1, 1, 1)`` is the 3-cycle.

    Accepts a :class:`PermFamilySpec` or any sequence of alphas.
    """
    if not isinstance(spec, PermFamilySpec):
        spec = PermFamilySpec(tuple(spec))
    return np.roll(np.diag(np.array(spec.alphas, dtype=complex)), 1, axis=1)


def perm_canonical_form(alphas) -> tuple[float, np.ndarray]:
    """``(psi, |alphas|)`` with ``M(alphas)`` unitarily similar to ``exp(i psi) M(|alphas|)``.

    The similarity is diagonal: conjugating by ``diag(exp(i x_k))`` moves the
    phases around the cycle until each equals their mean ``psi``.
    """
    spec = alphas if isinstance(alphas, PermFamilySpec) else PermFamilySpec(tuple(alphas))
    a = np.array(spec.alphas)
    psi = float(np.sum(np.angle(a)) / len(a))
    return psi, np.abs(a)


def d3_charpoly_closed(alphas, theta: float) -> np.ndarray:
    """Ascending coefficients of ``det(w I - B(theta))`` for ``M(a1, a2, a3)``.

    ``w^3 - (a1^2 + a2^2 + a3^2) w / 4 - Re(exp(-3 i theta) det M) / 4``.
    """
    a = np.asarray(alphas, dtype=complex)
    if a.shape != (3,):
        raise InvalidSpec("d3_charpoly_closed needs exactly three alphas")
    det = complex(np.prod(a))
    const = -0.25 * (cmath.exp(-3j * theta) * det).real
    return np.array([const, -0.25 * float(np.sum(np.abs(a) ** 2)), 0.0, 1.0])


# --------------------------------------------------------------------------
# resultants

@dataclass(frozen=True)
class ResultantReport:
    """Closed-form resultant against the Sylvester oracle ``Res(Q, Q')``.

    ``Q(w) = P(w) - P(w_M(pi/d))`` for ``M(alphas)``; ``flat_predicted`` is
    decided by the closed form.  For ``d = 4`` the printed and the computed
    factorizations of ``a^2 - 4b`` are carried alongside.
    """

    d: int
    alphas: tuple
    a: float
    b: float
    c: float
    closed_form: float
    oracle: float
    ratio: float
    flat_predicted: bool
    tol: float
    Q: tuple = ()
    factorizations: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "d": self.d, "alphas": list(self.alphas), "a": self.a, "b": self.b, "c": self.c,
            "closed_form": self.closed_form, "oracle": self.oracle,
            "ratio": None if math.isnan(self.ratio) else self.ratio,
            "flat_predicted": self.flat_predicted, "tol": self.tol, "Q": list(self.Q),
            "factorizations": self.factorizations,
        }


def _abc(d: int, al: np.ndarray) -> tuple[float, float, float]:
    a = float(np.sum(al ** 2))
    if d == 3:
        return a, float(np.prod(al)), 0.0
    if d == 4:
        return a, float((al[0] * al[2] + al[1] * al[3]) ** 2), 0.0
    b = float(sum(al[i] ** 2 * al[(i + 2) % 5] ** 2 for i in range(5)))
    return a, b, float(np.prod(al))


def _closed(d: int, a: float, b: float, c: float) -> float:
    if d == 3:
        return a ** 3 - 27 * b ** 2
    if d == 4:
        return a ** 2 - 4 * b
    return (3125 * c ** 4 - a * (27 * a ** 4 - 225 * a ** 2 * b + 500 * b ** 2) * c ** 2
            + b ** 3 * (a ** 2 - 4 * b) ** 2)


def d4_factorizations(alphas) -> dict[str, float]:
    """``a^2 - 4b`` next to its printed and its verified factorization."""
    al = np.asarray(alphas, dtype=float)
    a, b, _ = _abc(4, al)
    minus = (al[0] - al[2]) ** 2 + (al[1] - al[3]) ** 2
    plus = (al[0] + al[2]) ** 2 + (al[1] + al[3]) ** 2
    return {
        "a2_minus_4b": float(a ** 2 - 4 * b),
        "printed": float((a + b) * minus ** 3),
        "computed": float(minus * plus),
    }


def resultant_oracle(alphas) -> tuple[float, np.ndarray]:
    """``(Res(Q, Q'), Q)`` with ``Q = P - P(w_M(pi/d))`` for ``M(alphas)``."""
    A = perm_family(alphas)
    d = A.shape[0]
    ext = extract_P(A)
    w1 = support(A, math.pi / d)
    Q = ext.P - ext.P(w1)
    return float(sylvester_resultant(Q, Q.deriv()).real), Q.coef


def oracle_sign(alphas, rtol: float = 1e-14) -> tuple[float, int]:
    """``(Res(Q, Q'), sign)`` with sign ``0`` below ``rtol`` times the Hadamard bound.

    Rounding noise in the Sylvester determinant stays near ``1e-16`` of that
    bound, while genuine values are many orders larger.
    """
    oracle, coef = resultant_oracle(alphas)
    Q = Polynomial(coef)
    if abs(oracle) <= rtol * hadamard_bound(Q, Q.deriv()):
        return oracle, 0
    return oracle, 1 if oracle > 0 else -1


def resultant_closed(d: int, alphas, tol: float = 1e-9) -> ResultantReport:
    """Closed-form resultant for ``M(alphas)`` and its Sylvester oracle.

    ``a = sum alpha^2`` throughout; ``b = prod alpha`` (``d = 3``),
    ``(a1 a3 + a2 a4)^2`` (``d = 4``) or ``sum a_i^2 a_{i+2}^2`` (``d = 5``);
    ``c = prod alpha`` for ``d = 5``.  ``flat_predicted`` is
    ``|closed_form| <= tol * max(1, |alphas|)^deg``.
    """
    if d not in (3, 4, 5):
        raise UnsupportedDimension("closed-form resultants exist for d in {3, 4, 5}")
    al = np.asarray([float(x) for x in alphas])
    if al.shape != (d,):
        raise InvalidSpec(f"expected {d} alphas, got {al.size}")
    if not np.all(np.isfinite(al)) or np.any(al <= 0):
        raise InvalidSpec("alphas must be finite and positive")
    a, b, c = _abc(d, al)
    closed = _closed(d, a, b, c)
    oracle, Q = resultant_oracle(al)
    degree = {3: 6, 4: 4, 5: 20}[d]
    scale = max(1.0, float(np.linalg.norm(al))) ** degree
    ratio = closed / oracle if oracle != 0 else math.nan
    facts = d4_factorizations(al) if d == 4 else {}
    return ResultantReport(d, tuple(float(x) for x in al), a, b, c, closed, oracle, ratio,
                           abs(closed) <= tol * scale, tol, tuple(float(x) for x in Q), facts)


# --------------------------------------------------------------------------
# d = 4 families

@dataclass(frozen=True)
class D4FamilySpec:
    """One member of a d = 4 family; only the variant's parameters are read.

    ``b-family``: ``b >= 0``; ``a-plus``: ``a >= 0``; ``a-minus``:
    ``0 <= a < sqrt(2)``; ``alphagamma-*``: ``alpha, gamma > 0``;
    ``rho-theta``: ``rho > 0``, ``-pi/4 < theta < pi/4``.
    """

    variant: str
    a: float | None = None
    b: float | None = None
    alpha: float | None = None
    gamma: float | None = None
    rho: float | None = None
    theta: float | None = None

    def __post_init__(self):
        if self.variant not in D4_VARIANTS:
            raise InvalidSpec(f"unknown variant {self.variant!r}; choose from {D4_VARIANTS}")


def _need(spec: D4FamilySpec, *names: str) -> list[float]:
    vals = []
    for n in names:
        v = getattr(spec, n)
        if v is None:
            raise InvalidSpec(f"variant {spec.variant} needs parameter {n}")
        v = float(v)
        if not math.isfinite(v):
            raise OutOfDomain(f"{n} must be finite")
        vals.append(v)
    return vals


def d4_parameters(spec: D4FamilySpec) -> dict[str, complex]:
    """Raw entries ``alpha, beta, gamma, delta, epsilon, phi`` of ``E``.

    For the alphagamma families ``beta`` is returned as given by the formula
    and may be negative; :func:`d4_family` then flips signs by a diagonal
    unitary similarity.
    """
    v = spec.variant
    if v == "b-family":
        (b,) = _need(spec, "b")
        if b < 0:
            raise OutOfDomain("b must be >= 0")
        p = (0, b, 0, 0, 1j * b, 0)
    elif v in ("a-plus", "a-minus"):
        (a,) = _need(spec, "a")
        if a < 0:
            raise OutOfDomain("a must be >= 0")
        if v == "a-minus" and a >= math.sqrt(2):
            raise OutOfDomain("a-minus requires a < sqrt(2)")
        sgn = 1 if v == "a-plus" else -1
        g = math.sqrt(2 * a * a / (2 + sgn * a * a))
        p = (a, 0, g, sgn * 1j * g, 0, -a)
    elif v in ("alphagamma-plus", "alphagamma-minus"):
        al, ga = _need(spec, "alpha", "gamma")
        if al <= 0 or ga <= 0:
            raise OutOfDomain("alpha and gamma must be > 0")
        be = (ga * ga - al * al) / (al * ga)
        eps = al * ga + be if v == "alphagamma-plus" else al * ga - be
        p = (al, be, ga, ga, eps, -al)
    else:
        rho, th = _need(spec, "rho", "theta")
        if rho <= 0:
            raise OutOfDomain("rho must be > 0")
        if not -math.pi / 4 < th < math.pi / 4:
            raise OutOfDomain("theta must lie in (-pi/4, pi/4)")
        eps = 2 / math.sqrt(math.cos(2 * th))
        phi = rho * math.sqrt(math.tan(th + math.pi / 4))
        p = (0, math.sqrt(rho * rho + eps * eps + phi * phi), 0, rho * cmath.exp(1j * th),
             eps, phi)
    names = ("alpha", "beta", "gamma", "delta", "epsilon", "phi")
    return {n: complex(x) for n, x in zip(names, p)}


def _d4_matrix(p: dict[str, complex]) -> np.ndarray:
    A = np.diag(np.array([1, 1j, -1, -1j]))
    A[0, 1], A[0, 2], A[0, 3] = p["alpha"], p["beta"], p["gamma"]
    A[1, 2], A[1, 3], A[2, 3] = p["delta"], p["epsilon"], p["phi"]
    return A


def d4_family(spec: D4FamilySpec) -> np.ndarray:
    """``A = diag(1, i, -1, -i) + E`` for the chosen family member.

    A negative ``beta`` (alphagamma families with ``gamma < alpha``) is made
    positive by the similarity ``diag(1, 1, -1, 1)``, which also negates
    ``delta`` and ``phi``; the numerical range is unchanged.
    """
    p = d4_parameters(spec)
    if p["beta"].real < 0:
        p = dict(p, beta=-p["beta"], delta=-p["delta"], phi=-p["phi"])
    return _d4_matrix(p)


def d4_invariance_residuals(alpha, beta, gamma, delta, epsilon, phi) -> tuple[complex, complex]:
    """Both symmetry equations for ``D + E``, evaluated term by term.

    They are ``trace(A^* A^2)`` and ``trace(A^* A^3)`` written out in the
    entries of ``E``; a ``D + E`` matrix has a 4-fold symmetric range iff
    both vanish.
    """
    al, be, ga = alpha, beta, gamma
    de, ep, ph = complex(delta), complex(epsilon), complex(phi)
    epc = ep.conjugate()
    r1 = (al ** 2 + ga ** 2 - abs(de) ** 2 - abs(ph) ** 2 + al * be * de + al * ga * ep
          + be * ga * ph + de * epc * ph
          + 1j * (al ** 2 + abs(de) ** 2 - ga ** 2 - abs(ph) ** 2))
    r2 = (be ** 2 - abs(ep) ** 2 + al * ga * ep - de * epc * ph + al * ga * de * ph
          + 1j * (al ** 2 - abs(de) ** 2 - ga ** 2 + abs(ph) ** 2 + al * be * de - be * ga * ph))
    return complex(r1), complex(r2)


# --------------------------------------------------------------------------
# disk counterexample and the d = 3 structure check

def disk_counterexample(a: float) -> np.ndarray:
    """``[[0, 2, 0], [0, 0, 0], [0, 0, a]]``: range is the unit disk for ``0 < a <= 1``."""
    a = float(a)
    if not 0 < a <= 1:
        raise OutOfDomain("a must lie in (0, 1]")
    return np.array([[0, 2, 0], [0, 0, 0], [0, 0, a]], dtype=complex)


@dataclass(frozen=True)
class D3StructureReport:
    applicable: bool
    invariants: dict = field(default_factory=dict)
    singular_values: tuple = ()
    det_vs_product: float = math.nan
    square_norm: float = math.nan
    nearest_pair_product: float = math.nan
    passes: bool = False
    reason: str = ""


def d3_structure_check(A, tol: float = 1e-10) -> D3StructureReport:
    """Necessary invariants for ``A`` to be unitarily similar to some ``M(a1, a2, a3)``.

    Checks ``trace(A) = trace(A^2) = trace(A^* A^2) = trace((A^* A)^2 A) = 0``,
    ``|det A| = s1 s2 s3`` and that ``||A^2||`` is a product of two singular
    values.  Residuals are relative to ``max(1, ||A||_F)^k``.
    """
    A = as_matrix(A)
    if A.shape[0] != 3:
        return D3StructureReport(False, reason="d3_structure_check requires d = 3")
    s = max(1.0, float(np.linalg.norm(A)))
    Ah = A.conj().T
    A2 = A @ A
    inv = {
        "trace(A)": abs(np.trace(A)) / s,
        "trace(A^2)": abs(np.trace(A2)) / s ** 2,
        "trace(A* A^2)": abs(np.trace(Ah @ A2)) / s ** 3,
        "trace((A* A)^2 A)": abs(np.trace(Ah @ A @ Ah @ A @ A)) / s ** 5,
    }
    sv = singular_values(A)
    det_gap = abs(abs(determinant(A)) - float(np.prod(sv))) / s ** 3
    n2 = spectral_norm(A2)
    prods = [sv[i] * sv[j] for i, j in itertools.combinations(range(3), 2)]
    nearest = min(prods, key=lambda p: abs(p - n2))
    ok = (all(v <= tol for v in inv.values()) and det_gap <= tol
          and abs(nearest - n2) <= tol * s * s)
    inv = {k: float(v) for k, v in inv.items()}
    return D3StructureReport(True, inv, tuple(float(x) for x in sv), float(det_gap), n2,
                             float(nearest), bool(ok))

