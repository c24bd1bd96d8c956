"""Exact dense linear algebra over Q and Q(sqrt d).

Matrices are lists of rows; entries are anything supporting field
arithmetic (``mpq`` or :class:`~codealg.scalar.ExactScalar`). Row operations
skip zero entries, which keeps the sparse structure matrices of code algebras
cheap to reduce.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

from .scalar import is_rational

ZERO = mpq(0)
ONE = mpq(1)


def zeros(rows: int, cols: int) -> list[list]:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> list[list]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m: list[list]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: list[list], b: list[list]) -> list[list]:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(m: list[list], v) -> list:
    nz = [(k, x) for k, x in enumerate(v) if x]
    out = []
    for row in m:
        acc = ZERO
        for k, x in nz:
            y = row[k]
            if y:
                acc += y * x
        out.append(acc)
    return out


def rref(m: list[list], ncols: int | None = None):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``; zero rows dropped."""
    rows = [list(r) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow = rows[r] = [x * inv if x else x for x in prow]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: list[list], ncols: int | None = None) -> int:
    return len(rref(m, ncols)[1])


def kernel(m: list[list], ncols: int | None = None) -> list[list]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows, pivots = rref(m, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(m: list[list], b: list):
    """One solution of ``m x = b`` or ``None``."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return x


def inverse(m: list[list]) -> list[list]:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    rows, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def det(m: list[list]):
    rows = [list(r) for r in m]
    n = len(rows)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            out = -out
        pivot = rows[c][c]
        out = out * pivot
        prow = rows[c]
        nz = [j for j in range(c + 1, n) if prow[j]]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / pivot
                row = rows[i]
                for j in nz:
                    row[j] -= f * prow[j]
    return out


def span_rank(vectors: list, dim: int) -> int:
    return rank(vectors, dim) if vectors else 0


def same_span(a: list, b: list, dim: int) -> bool:
    ra = span_rank(a, dim)
    return ra == span_rank(b, dim) == span_rank(list(a) + list(b), dim)


def in_span(v, basis_rows, pivots) -> bool:
    """``v`` lies in the row space of an RREF basis with the given pivots."""
    w = list(v)
    for row, p in zip(basis_rows, pivots):
        f = w[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    w[j] -= f * x
    return not any(w)


class SpanBuilder:
    """Incrementally maintained RREF basis of a growing subspace."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> list:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                for j in range(p, self.dim):
                    x = row[j]
                    if x:
                        w[j] -= f * x
        return w

    def add(self, v) -> bool:
        """Insert ``v``; returns whether the span grew."""
        w = self.reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = ONE / w[p]
        w = [x * inv if x else x for x in w]
        for row in self.rows:
            f = row[p]
            if f:
                for j in range(p, self.dim):
                    if w[j]:
                        row[j] -= f * w[j]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, w)
        self.pivots.insert(k, p)
        return True

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def __len__(self) -> int:
        return len(self.rows)


def charpoly(m: list[list]) -> list:
    """Coefficients (constant term first) of ``det(m - x I)``.

    Evaluated at ``n + 1`` integer points and recovered by Newton
    interpolation, so only field arithmetic is needed.
    """
    n = len(m)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = [list(row) for row in m]
        for i in range(n):
            shifted[i][i] = shifted[i][i] - x
        ys.append(det(shifted))
    # divided differences
    coef = list(ys)
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial basis
    poly = [coef[n]]
    for i in range(n - 1, -1, -1):
        shifted = [ZERO] + poly
        for k in range(len(poly)):
            shifted[k] -= xs[i] * poly[k]
        shifted[0] += coef[i]
        poly = shifted
    return poly


def _divisors(n: int, limit: int) -> list[int] | None:
    n = abs(int(n))
    if n == 0:
        return [0]
    from sympy import divisor_count, divisors

    if divisor_count(n) > limit:
        return None
    return divisors(n)


def rational_roots(poly: list, limit: int = 20000) -> list:
    """Distinct rational roots of a polynomial with rational coefficients.

    Candidates ``p/q`` come from divisors of the trailing and leading
    coefficients; returns ``None`` if the search would exceed ``limit``
    candidates (or the coefficients are not rational).
    """
    if not all(is_rational(c) for c in poly):
        return None
    coeffs = [mpq(c) for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    while coeffs[0] == 0:
        coeffs.pop(0)
        if mpq(0) not in roots:
            roots.append(mpq(0))
    den = mpz(1)
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    ps = _divisors(ints[0], limit)
    qs = _divisors(ints[-1], limit)
    if ps is None or qs is None or len(ps) * len(qs) > limit:
        return None
    cur = coeffs
    for p in ps:
        for q in qs:
            for cand in (mpq(p, q), mpq(-p, q)):
                if cand in roots:
                    continue
                while len(cur) > 1:
                    quot, rem = _synthetic_division(cur, cand)
                    if rem != 0:
                        break
                    cur = quot
                    if cand not in roots:
                        roots.append(cand)
    return roots


def _gcd(a, b):
    from gmpy2 import gcd

    return gcd(a, b)


def _synthetic_division(coeffs: list, r):
    # coeffs constant-first
    n = len(coeffs) - 1
    out = [ZERO] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * r
    return out, acc
