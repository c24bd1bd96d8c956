from __future__ import annotations

import random
from itertools import combinations

import pytest
import sympy as sp
from gmpy2 import mpq

from codealg import codes
from codealg.algebra import build_algebra, constant_params
from codealg.codes import support

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")


# small shared corpus


def hamming():
    return codes.extended_hamming_code()


def even3():
    return codes.even_weight_code(3)


def f2sq():
    return codes.full_space(2)


def algebra(code, a, b, c):
    return build_algebra(code, constant_params(code, mpq(a), mpq(b), mpq(c)))


@pytest.fixture
def even3_algebra():
    return algebra(even3(), mpq(1, 2), mpq(1, 2), 1)


@pytest.fixture
def hamming_algebra():
    return algebra(hamming(), mpq(1, 4), mpq(1, 2), 1)


def random_rational(rng: random.Random, nonzero: bool = True, avoid=()):
    while True:
        x = mpq(rng.randint(-6, 6), rng.randint(1, 4))
        if (x or not nonzero) and x not in avoid:
            return x


def random_full_support_code(rng: random.Random, n: int, k: int | None = None):
    """Random code whose support is all of ``[n]`` and whose C* is nonempty."""
    while True:
        kk = k or rng.randint(2, min(n, 4))
        gens = [rng.randrange(1, 1 << n) for _ in range(kk)]
        C = codes.span(gens, n)
        if len(C.support) == n and C.nonconstant:
            return C


def exceptional_codes(max_n: int = 8):
    """Every ``{0, 1, alpha, alpha^c}`` up to coordinate order, for n <= max_n."""
    out = []
    for n in range(2, max_n + 1):
        full = (1 << n) - 1
        for w in range(1, n // 2 + 1):
            alpha = full ^ ((1 << (n - w)) - 1)
            out.append(codes.span([alpha, full], n))
    return out


def oracle_product(code, params, p, q):
    """Product of two basis vectors read straight off the defining rules, in sympy rationals.

    Basis entries are ``("t", i)`` or ``("e", word)``; the result maps basis
    entries to coefficients.
    """
    n = code.n
    full = code.ones

    def R(x):
        return sp.Rational(int(mpq(x).numerator), int(mpq(x).denominator))

    (kp, x), (kq, y) = p, q
    if kp == "t" and kq == "t":
        return {("t", x): sp.Integer(1)} if x == y else {}
    if kp == "e" and kq == "t":
        (kp, x), (kq, y) = q, p
    if kp == "t":
        return {("e", y): R(params.a_(x, y))} if x in support(y, n) else {}
    if x == y:
        return {("t", i): R(params.c_(i, x)) for i in support(x, n)}
    if x ^ y == full:
        return {}
    return {("e", x ^ y): R(params.b_(x, y))}


def basis_keys(A):
    return [("t", i) for i in range(A.n)] + [("e", w) for w in A.words]


def subcodes(code):
    """Every linear subcode, as generator tuples (small codes only)."""
    seen = {}
    words = [w for w in code.words if w]
    for r in range(0, code.k + 1):
        for gens in combinations(words, r):
            D = codes.span(gens, code.n)
            seen.setdefault(D.words, D)
    return list(seen.values())
