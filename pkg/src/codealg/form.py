"""Frobenius (associating) bilinear forms on code algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .algebra import CodeAlgebra, LinearMap, is_nondegenerate
from .codes import support, weight
from .errors import AnalysisError, CodeAlgebraError
from .linalg import ZERO, kernel, matmul, rank, transpose
from .scalar import format_scalar, sign
from .spectral import EigenDecomposition

ONE = mpq(1)


class ConditionOneFails(AnalysisError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class ConditionTwoFails(AnalysisError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class Degenerate(AnalysisError):
    pass


@dataclass(frozen=True)
class GramForm:
    """Symmetric Gram matrix with its defining weights."""

    matrix: tuple[tuple, ...]
    lambda_toral: tuple = ()
    lambda_codeword: Mapping[int, object] = field(default_factory=dict)
    exceptional: Mapping[tuple[int, int], object] = field(default_factory=dict)

    @classmethod
    def from_matrix(cls, mat) -> "GramForm":
        return cls(tuple(tuple(r) for r in mat))

    def __call__(self, u, w):
        acc = ZERO
        m = self.matrix
        wnz = [(k, y) for k, y in enumerate(w) if y]
        for j, x in enumerate(u):
            if x:
                row = m[j]
                for k, y in wnz:
                    g = row[k]
                    if g:
                        acc += x * g * y
        return acc

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def diagonal(self) -> list:
        return [self.matrix[i][i] for i in range(len(self.matrix))]

    def to_dict(self, A: CodeAlgebra | None = None) -> dict:
        out = {"diagonal": [format_scalar(x) for x in self.diagonal()]}
        off = []
        for i, row in enumerate(self.matrix):
            for j in range(i + 1, len(row)):
                if row[j]:
                    off.append([i, j, format_scalar(row[j])])
        out["off_diagonal"] = off
        return out


def _lambda_alpha(A: CodeAlgebra, lam: Sequence, alpha: int):
    supp = support(alpha, A.n)
    vals = [A.params.c_(i, alpha) / A.params.a_(i, alpha) * lam[i] for i in supp]
    for i, v in zip(supp, vals):
        if v != vals[0]:
            raise ConditionOneFails(
                f"lambda_alpha differs at coordinates {supp[0] + 1} and {i + 1} for {A.code.bits(alpha)}",
                (supp[0], i, alpha),
            )
    return vals[0]


def _triples(A: CodeAlgebra):
    """Unordered ``{alpha, beta, gamma}`` in C* with ``alpha + beta = gamma``."""
    words = A.words
    ws = set(words)
    out = []
    for x, al in enumerate(words):
        for be in words[x + 1 :]:
            ga = al ^ be
            if ga in ws and be < ga:
                out.append((al, be, ga))
    return out


def exceptional_slots(A: CodeAlgebra) -> list[tuple[int, int]]:
    """``(i, alpha)`` pairs where ``(t_i, e^alpha)`` is unconstrained."""
    code = A.code
    if not (code.has_ones and code.size == 4):
        return []
    out = []
    for al in A.words:
        if weight(al) == 1:
            (i,) = support(al, A.n)
            if A.params.a_(i, al) == 1:
                out.append((i, al))
    return out


def frobenius_form(
    A: CodeAlgebra, lambda_toral: Sequence | None = None, exceptional: Mapping | None = None
) -> GramForm:
    """Build the form from toral weights (default all ones), checking both conditions."""
    if not is_nondegenerate(A):
        raise Degenerate("Frobenius forms are only classified for non-degenerate algebras")
    lam = [mpq(1)] * A.n if lambda_toral is None else list(lambda_toral)
    if len(lam) != A.n:
        raise ValueError(f"expected {A.n} toral weights")
    lam_a = {al: _lambda_alpha(A, lam, al) for al in A.words}
    for al, be, ga in _triples(A):
        x = A.params.b_(al, be) * lam_a[ga]
        y = A.params.b_(al, ga) * lam_a[be]
        z = A.params.b_(be, ga) * lam_a[al]
        if not x == y == z:
            bits = tuple(A.code.bits(w) for w in (al, be, ga))
            raise ConditionTwoFails(f"b-condition fails on {bits}", (al, be, ga))
    slots = exceptional_slots(A)
    exc = {}
    for key, val in (exceptional or {}).items():
        if key not in slots:
            raise ValueError(f"(t_{key[0] + 1}, e^{A.code.bits(key[1])}) is not a free entry")
        exc[key] = val
    mat = [[ZERO] * A.dim for _ in range(A.dim)]
    for i in range(A.n):
        mat[i][i] = lam[i]
    for al in A.words:
        j = A.index[al]
        mat[j][j] = lam_a[al]
    for (i, al), val in exc.items():
        j = A.index[al]
        mat[i][j] = mat[j][i] = val
    return GramForm(tuple(map(tuple, mat)), tuple(lam), lam_a, exc)


def frobenius_exists(A: CodeAlgebra, lambda_toral: Sequence | None = None) -> bool:
    try:
        frobenius_form(A, lambda_toral)
    except (ConditionOneFails, ConditionTwoFails, Degenerate):
        return False
    return True


def lambda_solution_space(A: CodeAlgebra) -> list[list]:
    """Basis of toral weight vectors satisfying both conditions (a linear system)."""
    n = A.n
    rows = []

    def lam_alpha_row(al):
        i = support(al, n)[0]
        r = [ZERO] * n
        r[i] = A.params.c_(i, al) / A.params.a_(i, al)
        return r

    for al in A.words:
        supp = support(al, n)
        base = lam_alpha_row(al)
        for j in supp[1:]:
            r = list(base)
            r[j] -= A.params.c_(j, al) / A.params.a_(j, al)
            rows.append(r)
    for al, be, ga in _triples(A):
        la, lb, lg = lam_alpha_row(al), lam_alpha_row(be), lam_alpha_row(ga)
        x, y, z = A.params.b_(al, be), A.params.b_(al, ga), A.params.b_(be, ga)
        rows.append([x * p - y * q for p, q in zip(lg, lb)])
        rows.append([y * p - z * q for p, q in zip(lb, la)])
    if not rows:
        return [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
    return kernel(rows, n)


def frobenius_family(A: CodeAlgebra) -> list[GramForm]:
    """Spanning set of every form the closed-form construction produces."""
    out = [frobenius_form(A, lam) for lam in lambda_solution_space(A)]
    zero_lam = [ZERO] * A.n
    for key in exceptional_slots(A):
        out.append(frobenius_form(A, zero_lam, {key: ONE}))
    return out


def brute_force_forms(A: CodeAlgebra) -> list[list[list]]:
    """All bilinear forms with ``(b_i b_j, b_k) = (b_i, b_j b_k)``, as Gram matrices.

    Unknowns are the ``dim**2`` Gram entries; symmetry is not assumed.
    """
    dim = A.dim
    rows = []
    for i, j, k in product(range(dim), repeat=3):
        r = {}
        for s, cf in A.product_terms(i, j):  # (b_i b_j, b_k)
            r[s * dim + k] = r.get(s * dim + k, ZERO) + cf
        for s, cf in A.product_terms(j, k):  # (b_i, b_j b_k)
            r[i * dim + s] = r.get(i * dim + s, ZERO) - cf
        if any(r.values()):
            dense = [ZERO] * (dim * dim)
            for key, val in r.items():
                dense[key] = val
            rows.append(dense)
    sols = kernel(rows, dim * dim) if rows else [
        [ONE if x == y else ZERO for x in range(dim * dim)] for y in range(dim * dim)
    ]
    return [[v[r * dim : (r + 1) * dim] for r in range(dim)] for v in sols]


def same_form_space(forms_a: Iterable, forms_b: Iterable) -> bool:
    flat = lambda m: [x for row in (m.matrix if isinstance(m, GramForm) else m) for x in row]
    a = [flat(m) for m in forms_a]
    b = [flat(m) for m in forms_b]
    width = len(a[0]) if a else (len(b[0]) if b else 0)
    ra = rank(a, width) if a else 0
    rb = rank(b, width) if b else 0
    return ra == rb == (rank(a + b, width) if a or b else 0)


def verify_associative(A: CodeAlgebra, form: GramForm):
    """``(ok, witness)`` over all ordered basis triples; witness is ``(i, j, k)``."""
    m = form.matrix
    dim = A.dim
    for i in range(dim):
        for j in range(dim):
            left = A.product_terms(i, j)
            for k in range(dim):
                lhs = ZERO
                for s, cf in left:
                    g = m[s][k]
                    if g:
                        lhs += cf * g
                rhs = ZERO
                for s, cf in A.product_terms(j, k):
                    g = m[i][s]
                    if g:
                        rhs += cf * g
                if lhs != rhs:
                    return False, (i, j, k)
    return True, None


def is_frobenius(A: CodeAlgebra, form: GramForm) -> bool:
    """Associating and nonzero."""
    return not form.is_zero() and verify_associative(A, form)[0]


def eigenspace_orthogonality(A: CodeAlgebra, form: GramForm, x, dec: EigenDecomposition):
    """``(ok, witness)``: vectors from distinct eigenspaces are orthogonal."""
    spaces = dec.spaces
    for p in range(len(spaces)):
        for q in range(p + 1, len(spaces)):
            for u in spaces[p]:
                for w in spaces[q]:
                    if form(u, w):
                        return False, (dec.eigenvalues[p], dec.eigenvalues[q])
    return True, None


def g_invariance(A: CodeAlgebra, form: GramForm, group: Iterable) -> bool:
    """``(x^g, y^g) = (x, y)`` on all basis pairs for every map in ``group``."""
    G = [list(r) for r in form.matrix]
    for g in group:
        mat = g.matrix if isinstance(g, LinearMap) else g.to_linear_map().matrix
        if matmul(matmul(transpose(mat), G), mat) != G:
            return False
    return True


def positive_definite(form: GramForm) -> bool:
    """All pivots of a symmetric elimination are positive under the real embedding."""
    m = [list(r) for r in form.matrix]
    n = len(m)
    for c in range(n):
        p = m[c][c]
        if sign(p) <= 0:
            return False
        prow = m[c]
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f / p
                row = m[r]
                for k in range(c, n):
                    if prow[k]:
                        row[k] -= f * prow[k]
    return True
