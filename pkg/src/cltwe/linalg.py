"""Exact rational linear algebra and integer root finding for small matrices.

Matrices are lists of rows. Entries may be ints or Fractions; nothing here
touches floating point.
"""

from fractions import Fraction
from math import isqrt


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def inverse(M):
    """Gauss-Jordan inverse over the rationals; None when ``M`` is singular."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det_bareiss(M) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def charpoly_faddeev(M):
    """Characteristic polynomial ``det(xI - M)`` by Faddeev-LeVerrier.

    Returns coefficients highest degree first, starting with 1.
    """
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    I = identity(n)
    for k in range(1, n + 1):
        AM = matmul(A, Mk)
        Mk = [[AM[i][j] + coeffs[-1] * I[i][j] for j in range(n)] for i in range(n)]
        AMk = matmul(A, Mk)
        coeffs.append(-sum(AMk[i][i] for i in range(n)) / k)
    return coeffs


def charpoly_pencil(W, Wp):
    """``det(xI - W Wp^-1)`` computed as ``det(x Wp - W) / det(Wp)``.

    Evaluates the integer determinant at ``n + 1`` points with Bareiss and
    interpolates, so it shares no code path with charpoly_faddeev.
    """
    n = len(W)
    dp = det_bareiss(Wp)
    if dp == 0:
        raise ZeroDivisionError("pencil denominator is singular")
    xs = list(range(n + 1))
    ys = [det_bareiss([[x * Wp[i][j] - W[i][j] for j in range(n)] for i in range(n)])
          for x in xs]
    poly = [Fraction(0)] * (n + 1)   # lowest degree first while building
    for k, xk in enumerate(xs):
        basis = [Fraction(1)]
        denom = 1
        for m, xm in enumerate(xs):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xk - xm
        for t in range(n + 1):
            poly[t] += ys[k] * basis[t] / denom
    return [c / dp for c in reversed(poly)]


def poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def deflate(coeffs, root):
    """Divide by ``(x - root)``; the remainder must be zero."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + root * out[-1])
    if coeffs[-1] + root * out[-1] != 0:
        raise ValueError(f"{root} is not a root")
    return out


def as_integer_poly(coeffs):
    """Integer coefficients, or None when any coefficient is not integral."""
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            return None
        out.append(c.numerator)
    return out


def integer_roots_scan(coeffs, bound: int):
    """Distinct integer roots in ``(-bound, bound)`` by exhaustive evaluation."""
    degree = len(coeffs) - 1
    roots = []
    for x in range(-bound + 1, bound):
        if poly_eval(coeffs, x) == 0:
            roots.append(x)
            if len(roots) == degree:
                break
    return roots


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def integer_roots_divisors(coeffs):
    """Distinct integer roots of a monic integer polynomial via the rational
    root theorem. Trial division: only for small constant terms."""
    coeffs = list(coeffs)
    roots = []
    while len(coeffs) > 1 and coeffs[-1] == 0:
        if 0 not in roots:
            roots.append(0)
        coeffs = coeffs[:-1]
    if len(coeffs) > 1:
        for d in _divisors(coeffs[-1]):
            for x in (d, -d):
                if poly_eval(coeffs, x) == 0:
                    roots.append(x)
    return sorted(set(roots))


def integer_roots_newton(coeffs):
    """Integer roots of a monic integer polynomial whose roots are all real.

    Beyond the largest real root every derivative of a monic real-rooted
    polynomial is positive, so Newton's iteration started above the Cauchy
    bound descends monotonically onto it. Steps are floored, which keeps
    each iterate at or above the root when the root is an integer; found
    roots are deflated out exactly. Returns None as soon as the iteration
    leaves the root bound, which happens when some root is not a real integer.
    """
    coeffs = list(coeffs)
    roots = []
    while len(coeffs) > 1:
        bound = 1 + max(abs(c) for c in coeffs[1:])
        deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
        x = bound
        while True:
            fx = poly_eval(coeffs, x)
            if fx == 0:
                break
            dfx = poly_eval(deriv, x)
            if fx < 0 or dfx <= 0:
                return None
            x -= max(1, fx // dfx)
            if x < -bound:
                return None
        roots.append(x)
        coeffs = deflate(coeffs, x)
    return sorted(roots)
