import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from conftest import M
from rotrange.errors import RealvaluednessViolated, ZeroPolynomial
from rotrange.families import disk_counterexample
from rotrange.linalg import hermitian_part
from rotrange.trig import (LaurentMatrixPolynomial, TrigPolynomial, charpoly_at,
                           charpoly_theta, elementary_to_newton, laurent_power,
                           newton_to_elementary, poly_derivative, poly_eval, power_traces,
                           real_polynomial, sylvester_matrix, sylvester_resultant, trace_trig)


def const(c):
    return TrigPolynomial.constant(c)


class TestTrigPolynomial:
    def test_evaluation(self):
        p = TrigPolynomial.cosine(3, 2.0) + 1.5
        for th in np.linspace(0, 6, 7):
            assert p(th) == pytest.approx(2 * math.cos(3 * th) + 1.5)

    def test_rejects_non_real(self):
        with pytest.raises(RealvaluednessViolated):
            TrigPolynomial({1: 1.0})

    def test_product_is_convolution(self):
        c = TrigPolynomial.cosine(1)
        sq = c * c
        assert sq[0] == pytest.approx(0.5) and sq[2] == pytest.approx(0.25)

    def test_derivative(self):
        s = TrigPolynomial({1: -0.5j, -1: 0.5j})  # sin
        assert s.derivative()(0.3) == pytest.approx(math.cos(0.3))

    def test_max_outside(self):
        p = TrigPolynomial.cosine(3, 1.0) + TrigPolynomial.cosine(1, 0.1)
        assert p.max_outside({0, 3, -3}) == pytest.approx(0.05)
        assert p.max_outside(lambda j: j % 3 == 0) == pytest.approx(0.05)


class TestLaurentPower:
    def test_k1(self, rng):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        L = laurent_power(A, 1)
        assert np.allclose(L[-1], A) and np.allclose(L[1], A.conj().T)

    def test_k2(self, rng):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        Ah = A.conj().T
        L = laurent_power(A, 2)
        assert np.allclose(L[-2], A @ A)
        assert np.allclose(L[0], A @ Ah + Ah @ A)
        assert np.allclose(L[2], Ah @ Ah)

    def test_k3_middle(self, rng):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        Ah = A.conj().T
        L = laurent_power(A, 3)
        assert np.allclose(L[-1], A @ A @ Ah + A @ Ah @ A + Ah @ A @ A)

    def test_harmonic_support(self, rng):
        A = rng.normal(size=(3, 3))
        L = laurent_power(A, 4)
        assert set(L.harmonics) <= {-4, -2, 0, 2, 4}

    def test_matches_direct_power(self, rng):
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        th = 0.77
        B2 = 2 * hermitian_part(A, th)
        assert np.allclose(laurent_power(A, 3)(th), B2 @ B2 @ B2)


class TestTraceTrig:
    def test_traceless(self):
        assert trace_trig(laurent_power(M(1, 2, 3), 1)).is_zero()

    def test_cycle_cubed(self):
        assert trace_trig(laurent_power(M(1, 1, 1), 3))[-3] == pytest.approx(3)

    def test_m123_square(self):
        q2 = trace_trig(laurent_power(M(1, 2, 3), 2))
        assert q2[2] == 0 and q2[-2] == 0
        assert q2[0] == pytest.approx(28)

    def test_non_hermitian_generated(self):
        L = LaurentMatrixPolynomial({1: np.eye(2), -1: np.zeros((2, 2))}, 2)
        with pytest.raises(RealvaluednessViolated):
            trace_trig(L)


class TestNewton:
    def test_zero(self):
        t = newton_to_elementary([const(0)] * 4)
        assert all(tk.is_zero() for tk in t)

    def test_d2(self):
        t = newton_to_elementary([const(0), const(3.0)])
        assert t[0].is_zero() and t[1].const == pytest.approx(-1.5)

    def test_eigenvalue_set(self):
        lam = np.array([1, -0.5, -0.5])
        t = newton_to_elementary([const(float(np.sum(lam ** k))) for k in (1, 2, 3)])
        assert [tk.const for tk in t] == pytest.approx([0, -0.75, -0.25])

    def test_round_trip(self, rng):
        A = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        q = power_traces(A, 5)
        back = elementary_to_newton(newton_to_elementary(q))
        for a, b in zip(q, back):
            keys = set(a.harmonics) | set(b.harmonics)
            assert max(abs(a[j] - b[j]) for j in keys) < 1e-9


class TestCharpoly:
    @pytest.mark.parametrize("a", [0.25, 0.5, 1.0])
    def test_disk_example(self, a):
        # det(B + wI) = w^3 + a cos w^2 - w - a cos, so det(wI - B) has t = (-a cos, -1, a cos)
        t = charpoly_theta(disk_counterexample(a))
        for th in np.linspace(0, 2 * math.pi, 9):
            assert [tk(th) for tk in t] == pytest.approx(
                [-a * math.cos(th), -1.0, a * math.cos(th)], abs=1e-12)

    def test_zero(self):
        assert all(tk.is_zero() for tk in charpoly_theta(np.zeros((3, 3))))

    def test_cycle(self):
        t1, t2, t3 = charpoly_theta(M(1, 1, 1))
        assert t1.is_zero()
        assert t2.const == pytest.approx(-0.75) and t2.degree == 0
        assert set(t3.harmonics) <= {-3, 0, 3}
        assert abs(t3.const) < 1e-15 and abs(t3[-3]) == pytest.approx(1 / 8)

    def test_harmonic_support(self, rng):
        A = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        for k, tk in enumerate(charpoly_theta(A), start=1):
            assert all(abs(j) <= k and (j - k) % 2 == 0 for j in tk.harmonics)

    def test_against_eigenvalues(self, rng):
        for d in range(2, 7):
            A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            t = charpoly_theta(A)
            for th in rng.uniform(0, 2 * math.pi, 4):
                lam = np.linalg.eigvalsh(hermitian_part(A, th))
                assert np.allclose(charpoly_at(t, th)[::-1], np.poly(lam), atol=1e-10)


class TestResultant:
    def test_shared_root(self):
        assert sylvester_resultant(Polynomial([-1, 0, 1]), Polynomial([-1, 1])) == \
            pytest.approx(0, abs=1e-15)

    def test_value_two(self):
        assert sylvester_resultant(Polynomial([1, 0, 1]), Polynomial([-1, 1])) == \
            pytest.approx(2)

    def test_cubic_repeated_root(self):
        p = Polynomial.fromroots([0.5, 0.5, -1])
        assert p.coef[2] == pytest.approx(0) and p.coef[1] == pytest.approx(-0.75)
        assert sylvester_resultant(p, p.deriv()) == pytest.approx(0, abs=1e-14)

    def test_distinct_roots_nonzero(self):
        p = Polynomial.fromroots([1, 2, 3])
        # discriminant 4, Res(p, p') = (-1)^{n(n-1)/2} disc = -4
        assert sylvester_resultant(p, p.deriv()) == pytest.approx(-4)

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            sylvester_resultant(Polynomial([0]), Polynomial([1, 1]))

    def test_sylvester_shape(self):
        S = sylvester_matrix(Polynomial([1, 2, 3]), Polynomial([4, 5]))
        assert S.shape == (3, 3)
        assert np.array_equal(S[0], [3, 2, 1])


def test_poly_helpers():
    p = real_polynomial([0.25, -0.75, 0, 1])
    assert np.allclose(poly_derivative(p).coef, [-0.75, 0, 3])
    assert poly_eval(p, 0.5) == pytest.approx(0)
    assert poly_eval(real_polynomial([-0.25, -0.75, 0, 1]), 1.0) == pytest.approx(0)
