"""Ideals and simplicity."""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import CodeAlgebra, Element, is_nondegenerate
from .codes import LinearCode, support
from .errors import AnalysisError
from .form import Degenerate
from .linalg import ZERO, SpanBuilder, same_span
from .scalar import format_scalar


@dataclass(frozen=True)
class Ideal:
    """Row-reduced basis of an ideal (coordinate tuples)."""

    basis: tuple[tuple, ...]
    ambient: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        sb = SpanBuilder(self.ambient)
        for r in self.basis:
            sb.add(r)
        return v in sb

    def same_as(self, other: "Ideal") -> bool:
        return same_span(list(self.basis), list(other.basis), self.ambient)

    def rows(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.basis]


def _closure(A: CodeAlgebra, seeds) -> SpanBuilder:
    span = SpanBuilder(A.dim)
    frontier = []
    for s in seeds:
        if span.add(s):
            frontier.append(list(s))
    while frontier and len(span) < A.dim:
        fresh = []
        for u in frontier:
            ad = A.adjoint_matrix(u)
            for j in range(A.dim):
                col = [ad[r][j] for r in range(A.dim)]
                if any(col) and span.add(col):
                    fresh.append(col)
                    if len(span) == A.dim:
                        return span
        frontier = fresh
    return span


def ideal_generated(A: CodeAlgebra, x) -> Ideal:
    """Smallest subspace containing ``x`` and closed under multiplication by ``A``."""
    coords = x.coords if isinstance(x, Element) else x
    span = _closure(A, [coords] if any(coords) else [])
    return Ideal(tuple(tuple(r) for r in span.rows), A.dim)


def exceptional_word(code: LinearCode):
    """``alpha`` when ``C = {0, 1, alpha, alpha^c}`` (the one covering coordinate 1), else ``None``."""
    if code.has_ones and code.size == 4:
        return max(code.nonconstant)
    return None


def structurally_simple(code: LinearCode) -> bool:
    return exceptional_word(code) is None


@dataclass(frozen=True)
class SimplicityReport:
    """``ideals`` are the two exceptional ideals; ``extra`` lists any other proper ideal met.

    ``extra`` is nonempty only when an exceptional ideal splits further, e.g.
    ``<t_1 +- c^(-1/2) e^alpha>`` inside ``<t_1, e^alpha>`` when ``|alpha| = 1``,
    ``a = 1`` and ``c`` is a square.
    """

    simple: bool
    ideals: tuple[Ideal, ...]
    proper_found: int
    extra: tuple[Ideal, ...] = ()

    def __str__(self):
        if self.simple:
            return "simple"
        more = f", {len(self.extra)} more" if self.extra else ""
        return f"nonsimple({len(self.ideals)} ideals{more})"


def is_simple(A: CodeAlgebra, samples: int = 64, seed: int = 0) -> SimplicityReport:
    """Ideal closure from every basis element and random elements, checked against the code criterion."""
    if not is_nondegenerate(A):
        raise Degenerate("simplicity is only decided for non-degenerate algebras")
    rng = random.Random(seed)
    seeds = [[mpq(1) if k == j else ZERO for k in range(A.dim)] for j in range(A.dim)]
    for _ in range(samples):
        seeds.append([mpq(rng.randint(-3, 3)) for _ in range(A.dim)])
    found = []
    for s in seeds:
        if not any(s):
            continue
        span = _closure(A, [s])
        if len(span) < A.dim:
            found.append(Ideal(tuple(tuple(r) for r in span.rows), A.dim))
    computed_simple = not found
    alpha = exceptional_word(A.code)
    if computed_simple != (alpha is None):
        raise AnalysisError("ideal closure disagrees with the code criterion")
    if alpha is None:
        return SimplicityReport(True, (), 0)
    ideals = (ideal_generated(A, A.e(alpha)), ideal_generated(A, A.e(alpha ^ A.code.ones)))
    extra: list[Ideal] = []
    for I in found:
        if not any(I.same_as(J) for J in ideals + tuple(extra)):
            extra.append(I)
    return SimplicityReport(False, ideals, len(found), tuple(extra))


def exceptional_ideal_basis(A: CodeAlgebra, alpha: int) -> list[list]:
    """``t_i`` for ``i`` in ``supp(alpha)`` together with ``e^alpha``."""
    out = []
    for i in support(alpha, A.n):
        out.append(list(A.t(i).coords))
    out.append(list(A.e(alpha).coords))
    return out
