import numpy as np
import pytest

from rotrange.families import D4FamilySpec, d4_family, disk_counterexample, perm_family


def M(*alphas):
    return perm_family(alphas)


def random_unitary(d, rng):
    Z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def certified_corpus():
    """Named matrices known to have 2 pi/d-symmetric numerical ranges."""
    rng = np.random.default_rng(20240607)
    out = {
        "M(1,1,1)": M(1, 1, 1),
        "M(1,2,3)": M(1, 2, 3),
        "M(1,1,2)": M(1, 1, 2),
        "M(1,2,1,2)": M(1, 2, 1, 2),
        "M(1,2,3,4,5)": M(1, 2, 3, 4, 5),
        "M(0.5,1.5,1,2,0.7,1.1)": M(0.5, 1.5, 1, 2, 0.7, 1.1),
        "M(complex)": M(1j, 2, np.exp(0.3j)),
        "diag(1,i,-1,-i)": np.diag([1, 1j, -1, -1j]),
        "b-family b=1": d4_family(D4FamilySpec("b-family", b=1.0)),
        "a-plus a=1": d4_family(D4FamilySpec("a-plus", a=1.0)),
        "a-minus a=0.8": d4_family(D4FamilySpec("a-minus", a=0.8)),
        "alphagamma-plus": d4_family(D4FamilySpec("alphagamma-plus", alpha=1.3, gamma=0.6)),
        "alphagamma-minus": d4_family(D4FamilySpec("alphagamma-minus", alpha=0.7, gamma=1.4)),
        "rho-theta": d4_family(D4FamilySpec("rho-theta", rho=0.9, theta=-0.4)),
    }
    for name in ("M(1,2,3)", "a-plus a=1", "M(1,2,3,4,5)"):
        A = out[name]
        U = random_unitary(A.shape[0], rng)
        c = 0.7 * np.exp(0.9j)
        out[f"rotated {name}"] = c * (U.conj().T @ A @ U)
    return out


CORPUS = certified_corpus()


def non_certified_corpus():
    rng = np.random.default_rng(7)
    out = {f"random d={d}": rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
           for d in (3, 4, 5)}
    out["disk a=0.5"] = disk_counterexample(0.5)
    out["identity"] = np.eye(3, dtype=complex)
    return out


NON_CERTIFIED = non_certified_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
