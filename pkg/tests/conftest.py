import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy


def exact_lstsq_err(A):
    """Rational min ||A x - 1||^2 via the exact pseudo-inverse (sympy)."""
    A = np.asarray(A)
    n, r = A.shape
    if r == 0:
        return Fraction(n)
    M = sympy.Matrix(n, r, lambda i, j: sympy.Integer(int(A[i, j])))
    ones = sympy.ones(n, 1)
    x = M.pinv() * ones
    res = M * x - ones
    val = sympy.nsimplify((res.T * res)[0, 0])
    return Fraction(int(val.p), int(val.q))


def rotation_classes(n, r):
    """Group all weight-r bit strings by rotation, plain Python."""
    seen = {}
    for ones in itertools.combinations(range(n), r):
        s = "".join("1" if i in ones else "0" for i in range(n))
        rots = {s[k:] + s[:k] for k in range(n)}
        seen[min(rots)] = len(rots)
    return dict(sorted(seen.items()))


@pytest.fixture
def baseline_params():
    from hetgc.stragglers import StragglerParams

    return StragglerParams(p_hat=0.3, p_ss=0.8, p_as=0.01)


def centralized_gd(task, X, y, n, eta, lam, L):
    """Standalone full-gradient descent; partition gradients summed in index order."""
    size = len(y) // n
    beta = np.zeros(X.shape[1])
    betas, losses = [], []
    for _ in range(L):
        g = np.zeros_like(beta)
        for j in range(n):
            Xj, yj = X[j * size:(j + 1) * size], y[j * size:(j + 1) * size]
            if task == "linear":
                gj = 2.0 * (Xj.T @ (Xj @ beta - yj))
            else:
                gj = Xj.T @ (0.5 * (1.0 + np.tanh(0.5 * (Xj @ beta))) - yj)
            g = g + gj
        g = g + lam * beta
        beta = beta - eta * g
        z = X @ beta
        if task == "linear":
            data = float(np.sum((z - y) ** 2))
        else:
            data = float(np.sum(np.logaddexp(0.0, z) - y * z))
        betas.append(beta)
        losses.append(data + 0.5 * lam * float(beta @ beta))
    return betas, losses


ACCEPTANCE_LINES = []


def report(label, ok, detail):
    """Record one acceptance line; the caller asserts ``ok`` afterwards."""
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
