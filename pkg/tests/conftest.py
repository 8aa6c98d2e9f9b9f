import numpy as np
import pytest


def rank_mod(M, ell: int) -> int:
    """Plain Gaussian elimination over Z/ell, written independently of kalg."""
    A = [list(map(int, row)) for row in np.asarray(M) % ell]
    rows, cols = len(A), len(A[0]) if A else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] % ell), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, ell)
        A[r] = [x * inv % ell for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % ell for x, y in zip(A[i], A[r])]
        r += 1
    return r


def bareiss_det(M) -> int:
    """Fraction-free determinant over Z."""
    A = [list(map(int, row)) for row in np.asarray(M)]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def val(x: int, ell: int) -> int:
    x = abs(int(x))
    if x == 0:
        return 10 ** 9
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


@pytest.fixture
def oracles():
    return {"rank_mod": rank_mod, "det": bareiss_det, "val": val}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.pytest_sessionfinish_lines():
        terminalreporter.write_line(line)
