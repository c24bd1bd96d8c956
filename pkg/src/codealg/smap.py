"""Idempotents from constant-weight subcodes, small idempotents and generation."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import codes
from .algebra import CodeAlgebra, Element, NotASubcode
from .codes import LinearCode, NotConstantWeight, dot, support, weight
from .errors import AnalysisError
from .linalg import ZERO, SpanBuilder, same_span
from .scalar import DiscriminantMismatch, choose_discriminant, is_rational, sqrt_in_field
from .spectral import EigenDecomposition, _decomposition, eigen_decompose

HALF = mpq(1, 2)


class ParamsNotConstantOnD(AnalysisError):
    pass


class NoRootInField(AnalysisError):
    pass


class DegenerateMuZero(AnalysisError):
    pass


class DegenerateHalfCase(AnalysisError):
    pass


class DegenerateThirdCase(AnalysisError):
    pass


class HypothesisFails(AnalysisError):
    pass


@dataclass(frozen=True)
class SMapSpec:
    D: LinearCode
    v: int
    e: int
    d: int
    m: int
    lam: object
    mu: object
    root: str
    element: Element


def _root_of(A: CodeAlgebra, q):
    """Square root of ``q`` in the algebra's field, extending plain Q if needed.

    Returns ``(root, algebra)`` where ``algebra`` may be the re-founded one.
    """
    if not q:
        return mpq(0), A
    try:
        r = sqrt_in_field(q, A.disc)
    except DiscriminantMismatch:
        r = None
    if r is not None:
        return r, A
    if A.disc == 1 and is_rational(q):
        d = choose_discriminant(q)
        return sqrt_in_field(q, d), A.with_discriminant(d)
    raise NoRootInField(f"no square root of {q} in Q(sqrt({A.disc}))")


def _subcode_data(A: CodeAlgebra, D: LinearCode):
    if not A.code.contains_code(D):
        raise NotASubcode(f"{D!r} is not contained in {A.code!r}")
    words = [w for w in D.words if w and w != A.code.ones]
    if not words:
        raise codes.EmptyCStar("subcode has no non-constant words")
    weights = {weight(w) for w in words}
    if len(weights) != 1:
        raise NotConstantWeight(f"subcode weights {sorted(weights)}")
    triple = A.params.constant_triple(words)
    if triple is None:
        raise ParamsNotConstantOnD("structure parameters are not constant on D*")
    return words, weights.pop(), triple


def smap_spec(A: CodeAlgebra, D: LinearCode, v: int, root: str = "plus") -> SMapSpec:
    """Solve for ``lam, mu`` and build ``s(D, v)``, verified idempotent."""
    if root not in ("plus", "minus"):
        raise ValueError("root must be 'plus' or 'minus'")
    words, d, (a, b, c) = _subcode_data(A, D)
    size = D.size
    e = 2 * len(words) - size
    m = len(D.support)
    b = b if b is not None else ZERO
    qa = b * b * e * e + 4 * a * a * c * len(words) * mpq(d**3, m)
    qb = 2 * b * e * (a * d - 1)
    qc = 1 - 2 * a * d
    if qa == 0:
        if qb == 0:
            raise NoRootInField("the equation for mu is degenerate")
        mu = -qc / qb
    else:
        r, A = _root_of(A, qb * qb - 4 * qa * qc)
        mu = (-qb + r) / (2 * qa) if root == "plus" else (-qb - r) / (2 * qa)
    if mu == 0:
        raise DegenerateMuZero("mu = 0: the s-map collapses to t_D")
    lam = (1 - b * e * mu) / (2 * a * d)
    coords = [ZERO] * A.dim
    for i in D.support:
        coords[i] = lam
    for w in words:
        coords[A.index[w]] = -mu if dot(v, w) else mu
    x = Element(A, coords)
    if x * x != x:
        raise AnalysisError("s-map element failed the idempotent check")
    return SMapSpec(D, v, e, d, m, lam, mu, root, x)


def smap_idempotent(A: CodeAlgebra, D: LinearCode, v: int, root: str = "plus") -> Element:
    """``s(D, v) = lam t_D + mu sum (-1)^{(v, alpha)} e^alpha``.

    The returned element may live in a re-founded algebra over Q(sqrt d).
    """
    return smap_spec(A, D, v, root).element


def enumerate_smap(A: CodeAlgebra, D: LinearCode, roots=("plus", "minus")) -> list[Element]:
    """Distinct ``s(D, v)`` over coset representatives of ``D^perp``."""
    out, seen = [], set()
    for root in roots:
        for v in codes.coset_reps(D):
            x = smap_idempotent(A, D, v, root)
            if x.coords not in seen:
                seen.add(x.coords)
                out.append(x)
    return out


def _alpha_constants(A: CodeAlgebra, alpha: int):
    n = A.n
    supp = support(alpha, n)
    avals = {A.params.a_(i, alpha) for i in supp}
    cvals = {A.params.c_(i, alpha) for i in supp}
    if len(avals) != 1 or len(cvals) != 1:
        raise ParamsNotConstantOnD(f"a or c varies over supp({A.code.bits(alpha)})")
    return avals.pop(), cvals.pop()


def small_idempotents(A: CodeAlgebra, alpha: int) -> tuple[Element, Element]:
    """``e+- = lam t_alpha +- mu e^alpha`` with ``mu`` the canonical root."""
    if alpha not in A.index:
        raise ValueError("alpha must be a non-constant codeword")
    a, c = _alpha_constants(A, alpha)
    w = weight(alpha)
    if a == mpq(1, 2 * w):
        raise DegenerateHalfCase("a = 1/(2|alpha|) gives e+- = t_alpha")
    lam = 1 / (2 * a * w)
    mu, A = _root_of(A, (lam - lam * lam) / c)
    out = []
    for s in (mu, -mu):
        coords = [ZERO] * A.dim
        for i in support(alpha, A.n):
            coords[i] = lam
        coords[A.index[alpha]] = s
        x = Element(A, coords)
        if x * x != x:
            raise AnalysisError("small idempotent failed the idempotent check")
        out.append(x)
    return out[0], out[1]


def small_idempotent_spectrum(
    A: CodeAlgebra, alpha: int, e: Element, cross_check: bool = True
) -> EigenDecomposition:
    """Closed-form eigenbasis of a small idempotent, checked vector by vector.

    With ``cross_check`` the spans are compared with :func:`eigen_decompose`.
    """
    A = e.algebra
    n, full = A.n, A.code.ones
    ok, _ = codes.is_constant_weight(A.code)
    if not ok:
        raise NotConstantWeight("closed-form spectrum needs a constant-weight code")
    a, c = _alpha_constants(A, alpha)
    w = weight(alpha)
    if a == mpq(1, 3 * w):
        raise DegenerateThirdCase("a = 1/(3|alpha|): the lam - 1/2 vector is a multiple of e")
    if a == mpq(1, 2 * w):
        raise DegenerateHalfCase("a = 1/(2|alpha|)")
    supp = support(alpha, n)
    lam = e.coords[supp[0]]
    mu = e.coords[A.index[alpha]]
    if lam != 1 / (2 * a * w) or mu == 0:
        raise ValueError("e is not a small idempotent for alpha")

    def vec(pairs):
        v = [ZERO] * A.dim
        for j, x in pairs:
            v[j] = v[j] + x
        return v

    groups: dict = {}

    def put(val, v):
        groups.setdefault(val, []).append(v)

    put(mpq(1), list(e.coords))
    for i in range(n):
        if i not in supp:
            put(ZERO, vec([(i, 1)]))
    if full in A.code and (alpha ^ full) in A.index:
        put(ZERO, vec([(A.index[alpha ^ full], 1)]))
    for j in supp[1:]:
        put(lam, vec([(supp[0], 1), (j, -1)]))
    put(lam - HALF, vec([(i, 2 * mu * c) for i in supp] + [(A.index[alpha], -1)]))
    done = set()
    for beta in A.words:
        if beta in (alpha, alpha ^ full) or beta in done:
            continue
        gamma = alpha ^ beta
        done.update((beta, gamma))
        ab = {A.params.a_(i, beta) for i in support(beta, n)}
        if len(ab) != 1:
            raise HypothesisFails(f"a varies over supp({A.code.bits(beta)})")
        base = ab.pop() / (4 * a)
        bb = A.params.b_(alpha, beta)
        ib, ig = A.index[beta], A.index[gamma]
        put(base + mu * bb, vec([(ib, 1), (ig, 1)]))
        put(base - mu * bb, vec([(ib, 1), (ig, -1)]))
    for val, vecs in groups.items():
        for v in vecs:
            if A.multiply_coords(e.coords, v) != [val * x for x in v]:
                raise HypothesisFails(f"closed-form vector fails for eigenvalue {val}")
    dec = _decomposition(groups, A.dim)
    if sum(len(s) for s in dec.spaces) != A.dim:
        raise HypothesisFails("closed-form eigenvectors do not fill the algebra")
    if cross_check:
        generic = eigen_decompose(A, e, hints=dec.eigenvalues)
        if set(generic.eigenvalues) != set(dec.eigenvalues) or not all(
            same_span(list(dec.space(x)), list(generic.space(x)), A.dim) for x in dec.eigenvalues
        ):
            raise AnalysisError("closed-form spectrum disagrees with the generic solver")
    return dec


@dataclass(frozen=True)
class GenerationReport:
    generates: bool
    dim: int
    span_rank: int
    one_closed: bool

    def __str__(self):
        head = "generates" if self.generates else f"proper-subalgebra(dim {self.dim})"
        return f"{head}; span rank {self.span_rank}; 1-closed: {self.one_closed}"


def axial_generation_check(A: CodeAlgebra, generators) -> GenerationReport:
    """Close the span of ``generators`` under multiplication."""
    span = SpanBuilder(A.dim)
    vecs = []
    for g in generators:
        coords = g.coords if isinstance(g, Element) else g
        if span.add(coords):
            vecs.append(list(coords))
    rank0 = len(span)
    frontier = list(vecs)
    while frontier and len(span) < A.dim:
        fresh = []
        for u in frontier:
            for w in list(vecs):
                p = A.multiply_coords(u, w)
                if span.add(p):
                    vecs.append(p)
                    fresh.append(p)
                    if len(span) == A.dim:
                        break
            if len(span) == A.dim:
                break
        frontier = fresh
    return GenerationReport(len(span) == A.dim, len(span), rank0, rank0 == A.dim)
