"""Exact harmonic expansions of matrix trigonometric polynomials.

A trigonometric polynomial is stored by its Laurent coefficients in
``exp(i theta)``: ``f(theta) = sum_j c_j exp(i j theta)``.  Everything in this
module works on those coefficients directly, so "constant in theta" is a
statement about coefficients and never about samples.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .errors import RealvaluednessViolated, ZeroPolynomial
from .linalg import as_matrix, determinant

REAL_TOL = 1e-12
TRACE_REAL_TOL = 1e-10


def _coeff_scale(harmonics: Mapping[int, complex]) -> float:
    return max([1.0] + [abs(c) for c in harmonics.values()])


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Real-valued trigonometric polynomial ``sum_j c_j exp(i j theta)``.

    Construction checks ``c_{-j} == conj(c_j)`` to ``1e-12`` relative and then
    symmetrizes the stored coefficients exactly.
    """

    harmonics: dict[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        h = {int(j): complex(c) for j, c in dict(self.harmonics).items()}
        scale = _coeff_scale(h)
        clean: dict[int, complex] = {}
        for j in set(h) | {-k for k in h}:
            cj = h.get(j, 0j)
            cm = h.get(-j, 0j)
            if abs(cm - cj.conjugate()) > REAL_TOL * scale:
                raise RealvaluednessViolated(
                    f"harmonics {j} and {-j} are not conjugate: {cj!r} vs {cm!r}")
            v = 0.5 * (cj + cm.conjugate())
            if j == 0:
                v = complex(v.real, 0.0)
            if v != 0:
                clean[j] = v
        object.__setattr__(self, "harmonics", dict(sorted(clean.items())))

    @classmethod
    def constant(cls, value: float) -> "TrigPolynomial":
        return cls({0: value})

    @classmethod
    def cosine(cls, n: int, amplitude: float = 1.0) -> "TrigPolynomial":
        """``amplitude * cos(n theta)``."""
        if n == 0:
            return cls({0: amplitude})
        return cls({n: amplitude / 2, -n: amplitude / 2})

    def __getitem__(self, j: int) -> complex:
        return self.harmonics.get(j, 0j)

    @property
    def degree(self) -> int:
        return max((abs(j) for j in self.harmonics), default=0)

    @property
    def const(self) -> float:
        return self[0].real

    def is_zero(self) -> bool:
        return not self.harmonics

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros_like(theta)
        for j, c in self.harmonics.items():
            if j > 0:
                out = out + 2.0 * np.real(c * np.exp(1j * j * theta))
            elif j == 0:
                out = out + c.real
        return out if out.ndim else float(out)

    def derivative(self) -> "TrigPolynomial":
        return TrigPolynomial({j: 1j * j * c for j, c in self.harmonics.items()})

    def __add__(self, other):
        if not isinstance(other, TrigPolynomial):
            other = TrigPolynomial.constant(float(other))
        h = dict(self.harmonics)
        for j, c in other.harmonics.items():
            h[j] = h.get(j, 0j) + c
        return TrigPolynomial(h)

    __radd__ = __add__

    def __neg__(self):
        return TrigPolynomial({j: -c for j, c in self.harmonics.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TrigPolynomial):
            s = float(other)
            return TrigPolynomial({j: s * c for j, c in self.harmonics.items()})
        h: dict[int, complex] = {}
        for j, a in self.harmonics.items():
            for k, b in other.harmonics.items():
                h[j + k] = h.get(j + k, 0j) + a * b
        return TrigPolynomial(h)

    __rmul__ = __mul__

    def __truediv__(self, s: float):
        return self * (1.0 / float(s))

    def max_outside(self, allowed) -> float:
        """Largest ``|c_j|`` over harmonics ``j`` rejected by ``allowed``.

        ``allowed`` is a container of harmonics or a predicate ``j -> bool``.
        """
        ok = allowed if callable(allowed) else (lambda j: j in allowed)
        return max((abs(c) for j, c in self.harmonics.items() if not ok(j)), default=0.0)

    def __repr__(self):
        body = ", ".join(f"{j}: {c:.6g}" for j, c in self.harmonics.items())
        return f"TrigPolynomial({{{body}}})"


@dataclass(frozen=True)
class LaurentMatrixPolynomial:
    """Map from harmonic ``j`` to the matrix coefficient of ``exp(i j theta)``."""

    harmonics: dict[int, np.ndarray]
    dim: int

    def __getitem__(self, j: int) -> np.ndarray:
        return self.harmonics.get(j, np.zeros((self.dim, self.dim), dtype=complex))

    def __call__(self, theta: float) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for j, M in self.harmonics.items():
            out = out + np.exp(1j * j * theta) * M
        return out


def laurent_power(A, k: int) -> LaurentMatrixPolynomial:
    """Harmonic expansion of ``(exp(-i theta) A + exp(i theta) A^*)^k``.

    Built by repeated right multiplication; ``O(k^2)`` matrix products.  The
    ``-k`` harmonic is ``A^k`` and the ``+k`` harmonic is ``(A^*)^k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    A = as_matrix(A)
    Ah = A.conj().T
    cur = {-1: A.copy(), 1: Ah.copy()}
    for _ in range(k - 1):
        nxt: dict[int, np.ndarray] = {}
        for j, M in cur.items():
            for shift, F in ((-1, A), (1, Ah)):
                P = M @ F
                if j + shift in nxt:
                    nxt[j + shift] = nxt[j + shift] + P
                else:
                    nxt[j + shift] = P
        cur = nxt
    return LaurentMatrixPolynomial(cur, A.shape[0])


def trace_trig(L: LaurentMatrixPolynomial) -> TrigPolynomial:
    """Harmonic-wise trace of a Laurent matrix polynomial."""
    h = {j: complex(np.trace(M)) for j, M in L.harmonics.items()}
    scale = _coeff_scale(h)
    for j, c in h.items():
        if abs(h.get(-j, 0j) - c.conjugate()) > TRACE_REAL_TOL * scale:
            raise RealvaluednessViolated(
                f"trace harmonics {j}, {-j} are not conjugate; input was not Hermitian-generated")
    # conjugacy now holds to 1e-10; TrigPolynomial re-checks at 1e-12, so pre-symmetrize
    sym = {j: 0.5 * (c + h.get(-j, 0j).conjugate()) for j, c in h.items()}
    for j in list(sym):
        sym.setdefault(-j, sym[j].conjugate())
    return TrigPolynomial(sym)


def power_traces(A, kmax: int) -> list[TrigPolynomial]:
    """Unscaled ``trace((exp(-i theta) A + exp(i theta) A^*)^k)`` for ``k = 1..kmax``.

    Shares the running Laurent product between consecutive ``k``.
    """
    A = as_matrix(A)
    Ah = A.conj().T
    out = []
    cur = {-1: A.copy(), 1: Ah.copy()}
    for k in range(1, kmax + 1):
        if k > 1:
            nxt: dict[int, np.ndarray] = {}
            for j, M in cur.items():
                for shift, F in ((-1, A), (1, Ah)):
                    P = M @ F
                    nxt[j + shift] = nxt[j + shift] + P if j + shift in nxt else P
            cur = nxt
        out.append(trace_trig(LaurentMatrixPolynomial(cur, A.shape[0])))
    return out


def newton_to_elementary(q: Sequence[TrigPolynomial]) -> list[TrigPolynomial]:
    """Power sums ``q_1..q_d`` to characteristic coefficients ``t_1..t_d``.

    The ``t_k`` are the coefficients of ``det(w I - B) = w^d + t_1 w^{d-1} +
    ... + t_d``, i.e. ``t_k = (-1)^k e_k`` with ``e_k`` the elementary
    symmetric functions of the eigenvalues.  Newton's identities
    ``k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} q_i`` are solved with integer
    division only.
    """
    q = [qi if isinstance(qi, TrigPolynomial) else TrigPolynomial.constant(qi) for qi in q]
    e = [TrigPolynomial.constant(1.0)]
    for k in range(1, len(q) + 1):
        acc = TrigPolynomial()
        for i in range(1, k + 1):
            term = e[k - i] * q[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / k)
    return [e[k] if k % 2 == 0 else -e[k] for k in range(1, len(q) + 1)]


def elementary_to_newton(t: Sequence[TrigPolynomial]) -> list[TrigPolynomial]:
    """Inverse of :func:`newton_to_elementary` for ``k = 1..d``."""
    t = [ti if isinstance(ti, TrigPolynomial) else TrigPolynomial.constant(ti) for ti in t]
    e = [TrigPolynomial.constant(1.0)] + [t[k - 1] if k % 2 == 0 else -t[k - 1]
                                          for k in range(1, len(t) + 1)]
    q: list[TrigPolynomial] = []
    for k in range(1, len(t) + 1):
        # q_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i q_{k-i} + (-1)^{k-1} k e_k
        acc = e[k] * (k if k % 2 == 1 else -k)
        for i in range(1, k):
            term = e[i] * q[k - i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        q.append(acc)
    return q


def charpoly_theta(A) -> list[TrigPolynomial]:
    """Coefficients ``t_1(theta)..t_d(theta)`` of ``det(w I - B(theta))``.

    ``B(theta) = (exp(-i theta) A + exp(i theta) A^*) / 2``; computed exactly
    in harmonics from ``q_k = 2^{-k} trace((...)^k)``.
    """
    A = as_matrix(A)
    d = A.shape[0]
    q = [qk / 2.0 ** k for k, qk in enumerate(power_traces(A, d), start=1)]
    return newton_to_elementary(q)


def charpoly_at(t: Sequence[TrigPolynomial], theta: float) -> np.ndarray:
    """Ascending real coefficients of ``det(w I - B(theta))`` at one angle."""
    d = len(t)
    coeffs = np.empty(d + 1)
    coeffs[d] = 1.0
    for k, tk in enumerate(t, start=1):
        coeffs[d - k] = tk(theta)
    return coeffs


# -- real univariate polynomials --------------------------------------------
# RealPolynomial is numpy's ascending-coefficient Polynomial, trimmed so the
# leading coefficient is nonzero.

RealPolynomial = Polynomial


def real_polynomial(coeffs: Iterable[float]) -> Polynomial:
    return Polynomial(np.asarray(list(coeffs), dtype=float)).trim()


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.deriv().trim()


def poly_eval(p: Polynomial, x):
    return p(x)


def _is_zero(p: Polynomial) -> bool:
    return not np.any(p.coef)


def sylvester_matrix(p: Polynomial, q: Polynomial) -> np.ndarray:
    """Sylvester matrix with ``deg q`` rows of ``p`` above ``deg p`` rows of ``q``."""
    a = p.trim().coef[::-1]
    b = q.trim().coef[::-1]
    m, n = len(a) - 1, len(b) - 1
    S = np.zeros((m + n, m + n))
    for i in range(n):
        S[i, i:i + m + 1] = a
    for i in range(m):
        S[n + i, i:i + n + 1] = b
    return S


def sylvester_resultant(p: Polynomial, q: Polynomial) -> float:
    """``Res(p, q)`` as the determinant of the Sylvester matrix."""
    p = Polynomial(p.coef).trim()
    q = Polynomial(q.coef).trim()
    if _is_zero(p) or _is_zero(q):
        raise ZeroPolynomial("resultant of a zero polynomial is undefined")
    S = sylvester_matrix(p, q)
    if S.size == 0:
        return 1.0
    return float(determinant(S).real)


def hadamard_bound(p: Polynomial, q: Polynomial) -> float:
    """Product of the Sylvester row norms, an upper bound for ``|Res(p, q)|``."""
    S = sylvester_matrix(Polynomial(p.coef).trim(), Polynomial(q.coef).trim())
    return float(np.prod(np.linalg.norm(S, axis=1))) if S.size else 1.0
