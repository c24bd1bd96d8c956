"""Code algebras: structure parameters, basis, exact multiplication.

Basis order is ``t_0 .. t_{n-1}`` followed by ``e^alpha`` for ``alpha`` in
``C*`` in lexicographic order. Toral indices are 0-based throughout the
library (the CLI and config files use 1-based ``t 1 .. t n``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from . import codes
from .codes import LinearCode, dot, permute_word, support, weight
from .errors import AnalysisError, CodeAlgebraError
from .linalg import ZERO, identity, kernel, matmul, matvec
from .scalar import DiscriminantMismatch, ExactScalar, Q, disc_of, format_scalar

DEFAULT_MAX_DIM = 200


class MissingParam(CodeAlgebraError, KeyError):
    pass


class NotAnAutomorphism(AnalysisError):
    pass


class NotRegular(AnalysisError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASubcode(AnalysisError):
    pass


def _b_key(alpha: int, beta: int) -> tuple[int, int]:
    return (alpha, beta) if alpha < beta else (beta, alpha)


def _coerce(x):
    return x if isinstance(x, ExactScalar) else Q(x)


@dataclass(frozen=True)
class StructureParams:
    """The maps ``a[(i, alpha)]``, ``b[{alpha, beta}]`` and ``c[(i, alpha)]``.

    ``b`` is stored once per unordered pair under ``(min, max)``.
    """

    a: Mapping[tuple[int, int], object]
    b: Mapping[tuple[int, int], object]
    c: Mapping[tuple[int, int], object]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            raw = getattr(self, name)
            fixed = {}
            for key, val in raw.items():
                if name == "b":
                    key = _b_key(*key)
                fixed[key] = _coerce(val)
            object.__setattr__(self, name, MappingProxyType(fixed))

    def a_(self, i: int, alpha: int):
        return self.a[(i, alpha)]

    def b_(self, alpha: int, beta: int):
        return self.b[_b_key(alpha, beta)]

    def c_(self, i: int, alpha: int):
        return self.c[(i, alpha)]

    def values(self) -> list:
        return [*self.a.values(), *self.b.values(), *self.c.values()]

    def disc(self) -> int:
        ds = {disc_of(v) for v in self.values()} - {1}
        if len(ds) > 1:
            raise DiscriminantMismatch(f"parameters mix fields {sorted(ds)}")
        return ds.pop() if ds else 1

    def __eq__(self, other):
        if not isinstance(other, StructureParams):
            return NotImplemented
        return dict(self.a) == dict(other.a) and dict(self.b) == dict(other.b) and dict(self.c) == dict(other.c)

    def __hash__(self):
        return hash((frozenset(self.a.items()), frozenset(self.b.items()), frozenset(self.c.items())))

    def constant_triple(self, words: Iterable[int] | None = None, n: int | None = None):
        """``(a, b, c)`` if the parameters touching ``words`` are constant, else ``None``."""
        if words is None:
            avals, bvals, cvals = set(self.a.values()), set(self.b.values()), set(self.c.values())
        else:
            ws = set(words)
            avals = {v for (i, al), v in self.a.items() if al in ws}
            cvals = {v for (i, al), v in self.c.items() if al in ws}
            bvals = {v for (al, be), v in self.b.items() if al in ws and be in ws}
        if len(avals) > 1 or len(cvals) > 1 or len(bvals) > 1:
            return None
        pick = lambda s: next(iter(s)) if s else None
        return pick(avals), pick(bvals), pick(cvals)

    def with_overrides(self, a=None, b=None, c=None) -> "StructureParams":
        return StructureParams(
            {**self.a, **(a or {})},
            {**self.b, **{_b_key(*k): v for k, v in (b or {}).items()}},
            {**self.c, **(c or {})},
        )


def param_domain(code: LinearCode):
    """Keys required by the parameter maps of ``code``."""
    n = code.n
    cstar = code.nonconstant
    full = code.ones
    ac = [(i, al) for al in cstar for i in support(al, n)]
    bk = [
        (al, be)
        for idx, al in enumerate(cstar)
        for be in cstar[idx + 1 :]
        if be != al ^ full
    ]
    return ac, bk


def constant_params(code: LinearCode, a, b, c) -> StructureParams:
    ac, bk = param_domain(code)
    a, b, c = _coerce(a), _coerce(b), _coerce(c)
    return StructureParams({k: a for k in ac}, {k: b for k in bk}, {k: c for k in ac})


def voa_params(code: LinearCode, lam) -> StructureParams:
    """Code VOA parameters ``(1/4, lam, 4 lam^2)``."""
    lam = _coerce(lam)
    return constant_params(code, mpq(1, 4), lam, 4 * lam * lam)


def check_param_domain(code: LinearCode, params: StructureParams) -> None:
    ac, bk = param_domain(code)
    for name, keys in (("a", ac), ("b", bk), ("c", ac)):
        have = getattr(params, name)
        missing = [k for k in keys if k not in have]
        if missing:
            raise MissingParam(f"{name} missing for {_fmt_key(name, missing[0], code.n)}")
        extra = set(have) - set(keys)
        if extra:
            raise MissingParam(f"{name} has key outside the domain: {_fmt_key(name, sorted(extra)[0], code.n)}")


def _fmt_key(name: str, key, n: int) -> str:
    x, y = key
    if name == "b":
        return f"({codes.to_bits(x, n)}, {codes.to_bits(y, n)})"
    return f"({x + 1}, {codes.to_bits(y, n)})"


class CodeAlgebra:
    """The commutative algebra ``A_C(Lambda)`` with a cached multiplication table."""

    def __init__(
        self,
        code: LinearCode,
        params: StructureParams,
        disc: int = 1,
        max_dim: int = DEFAULT_MAX_DIM,
        _table=None,
    ):
        if not code.nonconstant:
            raise codes.EmptyCStar("code algebra needs a non-constant codeword")
        self.code = code
        self.params = params
        self.n = code.n
        self.words: tuple[int, ...] = code.nonconstant
        self.dim = self.n + len(self.words)
        if self.dim > max_dim:
            raise codes.TooLarge(f"algebra dimension {self.dim} exceeds max_dim={max_dim}")
        pd = params.disc()
        if pd != 1 and disc not in (1, pd):
            raise DiscriminantMismatch(f"parameters live in Q(sqrt({pd})), algebra in Q(sqrt({disc}))")
        self.disc = pd if pd != 1 else disc
        self.index = {al: self.n + j for j, al in enumerate(self.words)}
        if _table is None:
            check_param_domain(code, params)
            _table = self._build_table()
        self._table = _table

    def _build_table(self):
        n, dim, p = self.n, self.dim, self.params
        full = self.code.ones
        table = [[() for _ in range(dim)] for _ in range(dim)]
        for i in range(n):
            table[i][i] = ((i, mpq(1)),)
        for al in self.words:
            ia = self.index[al]
            for i in support(al, n):
                entry = ((ia, p.a_(i, al)),)
                table[i][ia] = table[ia][i] = entry
            table[ia][ia] = tuple((i, p.c_(i, al)) for i in support(al, n))
            for be in self.words:
                if be == al or be == al ^ full:
                    continue
                table[ia][self.index[be]] = ((self.index[al ^ be], p.b_(al, be)),)
        return table

    def with_discriminant(self, d: int) -> "CodeAlgebra":
        """Same algebra over Q(sqrt d); the multiplication table is shared."""
        if d == self.disc:
            return self
        if self.disc != 1:
            raise DiscriminantMismatch(f"algebra already over Q(sqrt({self.disc}))")
        return CodeAlgebra(self.code, self.params, disc=d, max_dim=self.dim, _table=self._table)

    def same_structure(self, other: "CodeAlgebra") -> bool:
        return self is other or (self.code == other.code and self.params == other.params)

    def product_terms(self, p: int, q: int):
        """Sparse ``b_p * b_q`` as ``((index, coefficient), ...)``."""
        return self._table[p][q]

    # basis and elements

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, [ZERO] * self.dim)

    def basis(self, j: int) -> "Element":
        v = [ZERO] * self.dim
        v[j] = mpq(1)
        return Element(self, v)

    def t(self, i: int) -> "Element":
        return self.basis(i)

    def e(self, alpha: int | str) -> "Element":
        if isinstance(alpha, str):
            alpha = codes.parse_word(alpha, self.n)
        return self.basis(self.index[alpha])

    def t_word(self, word: int) -> "Element":
        """``t_alpha``: sum of ``t_i`` over the support of ``word``."""
        v = [ZERO] * self.dim
        for i in support(word, self.n):
            v[i] = mpq(1)
        return Element(self, v)

    def labels(self) -> list[str]:
        return [f"t{i + 1}" for i in range(self.n)] + [f"e^{self.code.bits(al)}" for al in self.words]

    def multiply_coords(self, x: Sequence, y: Sequence) -> list:
        out = [ZERO] * self.dim
        table = self._table
        ynz = [(q, yq) for q, yq in enumerate(y) if yq]
        for p, xp in enumerate(x):
            if not xp:
                continue
            row = table[p]
            for q, yq in ynz:
                terms = row[q]
                if terms:
                    f = xp * yq
                    for r, c in terms:
                        out[r] += f * c
        return out

    def multiply(self, x: "Element", y: "Element") -> "Element":
        return Element(self, self.multiply_coords(x.coords, y.coords), check=False)

    def adjoint_matrix(self, x) -> list[list]:
        coords = x.coords if isinstance(x, Element) else x
        dim, table = self.dim, self._table
        mat = [[ZERO] * dim for _ in range(dim)]
        for p, xp in enumerate(coords):
            if not xp:
                continue
            row = table[p]
            for q in range(dim):
                for r, c in row[q]:
                    mat[r][q] += xp * c
        return mat

    def __repr__(self):
        field = "" if self.disc == 1 else f" over Q(sqrt({self.disc}))"
        return f"CodeAlgebra({self.code!r}, dim={self.dim}{field})"


def _check_scalar(algebra: CodeAlgebra, x):
    if isinstance(x, ExactScalar) and x.disc != algebra.disc:
        raise DiscriminantMismatch(f"coefficient in Q(sqrt({x.disc})) for algebra over Q(sqrt({algebra.disc}))")


class Element:
    """Coordinate vector over the basis of a :class:`CodeAlgebra`.

    ``x * y`` is the algebra product when both are elements and scaling when
    one side is a scalar.
    """

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: CodeAlgebra, coords, check: bool = True):
        coords = tuple(c if isinstance(c, ExactScalar) else mpq(c) for c in coords)
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        if check and algebra.disc != 1:
            for c in coords:
                _check_scalar(algebra, c)
        elif check:
            for c in coords:
                if isinstance(c, ExactScalar):
                    raise DiscriminantMismatch("surd coefficient in an algebra over Q")
        self.algebra = algebra
        self.coords = coords

    def _same(self, other: "Element") -> CodeAlgebra:
        if not self.algebra.same_structure(other.algebra):
            raise ValueError("elements of different algebras")
        if other.algebra.disc != 1 and self.algebra.disc == 1:
            return other.algebra
        return self.algebra

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return Element(self._same(other), [x + y for x, y in zip(self.coords, other.coords)], check=False)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return Element(self._same(other), [x - y for x, y in zip(self.coords, other.coords)], check=False)

    def __neg__(self):
        return Element(self.algebra, [-x for x in self.coords], check=False)

    def __mul__(self, other):
        if isinstance(other, Element):
            A = self._same(other)
            return Element(A, A.multiply_coords(self.coords, other.coords), check=False)
        s = _coerce(other)
        alg = self.algebra
        if isinstance(s, ExactScalar) and alg.disc == 1:
            alg = alg.with_discriminant(s.disc)
        _check_scalar(alg, s)
        return Element(alg, [s * x for x in self.coords], check=False)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        return self * (1 / _coerce(other))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and self.algebra.same_structure(other.algebra)

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_idempotent(self) -> bool:
        return self * self == self

    def lift(self, algebra: CodeAlgebra) -> "Element":
        if not algebra.same_structure(self.algebra):
            raise ValueError("cannot lift into a different algebra")
        return Element(algebra, self.coords)

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        parts = []
        for label, c in zip(self.algebra.labels(), self.coords):
            if c:
                parts.append(f"({format_scalar(c)}){label}" if isinstance(c, ExactScalar) else f"{format_scalar(c)} {label}")
        return " + ".join(parts) if parts else "0"


class LinearMap:
    """A linear endomorphism of an algebra, stored as a matrix acting on columns."""

    def __init__(self, algebra: CodeAlgebra, matrix: list[list]):
        self.algebra = algebra
        self.matrix = matrix

    def __call__(self, x: Element) -> Element:
        return Element(x.algebra, matvec(self.matrix, x.coords), check=False)

    def apply_coords(self, coords) -> list:
        return matvec(self.matrix, coords)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(tuple(map(tuple, self.matrix)))

    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))

    def order_at_most_two(self) -> bool:
        return (self @ self).is_identity()

    def automorphism_witness(self):
        """First basis pair ``(p, q)`` with ``f(b_p b_q) != f(b_p) f(b_q)``, else ``None``."""
        A = self.algebra
        dim = A.dim
        cols = [[self.matrix[r][p] for r in range(dim)] for p in range(dim)]
        for p in range(dim):
            for q in range(p, dim):
                prod = [ZERO] * dim
                for r, c in A.product_terms(p, q):
                    prod[r] += c
                lhs = matvec(self.matrix, prod)
                rhs = A.multiply_coords(cols[p], cols[q])
                if lhs != rhs:
                    return (p, q)
        return None

    def is_automorphism(self) -> bool:
        return self.automorphism_witness() is None


def build_algebra(
    code: LinearCode, params: StructureParams, disc: int = 1, max_dim: int = DEFAULT_MAX_DIM
) -> CodeAlgebra:
    return CodeAlgebra(code, params, disc=disc, max_dim=max_dim)


def multiply(A: CodeAlgebra, x: Element, y: Element) -> Element:
    return x * y


def adjoint_matrix(A: CodeAlgebra, x: Element) -> list[list]:
    """Matrix of ``ad_x``; column ``j`` is ``x * b_j``."""
    return A.adjoint_matrix(x)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def is_nondegenerate(A: CodeAlgebra) -> Verdict:
    reasons = []
    if len(A.code.support) != A.n:
        missing = sorted(set(range(A.n)) - set(A.code.support))
        reasons.append(f"support misses coordinates {[i + 1 for i in missing]}")
    if not A.words:
        reasons.append("C* is empty")
    zero = [k for k, v in (("a", A.params.a), ("b", A.params.b), ("c", A.params.c)) if any(x == 0 for x in v.values())]
    if zero:
        reasons.append(f"zero structure parameters in {', '.join(zero)}")
    return Verdict(not reasons, tuple(reasons))


def is_regular(params: StructureParams, code: LinearCode, group: Iterable[Sequence[int]]) -> bool:
    """Parameters are constant on orbits of ``group`` (permutations ``i -> g[i]``)."""
    n = code.n
    for g in group:
        images = {al: permute_word(al, g, n) for al in code.nonconstant}
        if any(w not in code for w in images.values()):
            raise NotAnAutomorphism(f"{tuple(x + 1 for x in g)} does not preserve the code")
        for (i, al), v in params.a.items():
            if params.a_(g[i], images[al]) != v:
                return False
        for (i, al), v in params.c.items():
            if params.c_(g[i], images[al]) != v:
                return False
        for (al, be), v in params.b.items():
            if params.b_(images[al], images[be]) != v:
                return False
    return True


def induced_automorphism(A: CodeAlgebra, g: Sequence[int]) -> LinearMap:
    """Linear map ``t_i -> t_{g^-1(i)}``, ``e^alpha -> e^{alpha g^-1}``, checked multiplicative."""
    n = A.n
    ginv = codes.invert_perm(g)
    if any(permute_word(al, g, n) not in A.code for al in A.words):
        raise NotAnAutomorphism(f"{tuple(x + 1 for x in g)} does not preserve the code")
    mat = [[ZERO] * A.dim for _ in range(A.dim)]
    for i in range(n):
        mat[ginv[i]][i] = mpq(1)
    for al in A.words:
        mat[A.index[permute_word(al, ginv, n)]][A.index[al]] = mpq(1)
    f = LinearMap(A, mat)
    witness = f.automorphism_witness()
    if witness is not None:
        labels = A.labels()
        raise NotRegular(
            f"induced map breaks the product of {labels[witness[0]]} and {labels[witness[1]]}", witness
        )
    return f


def subalgebra_from_subcode(A: CodeAlgebra, D: LinearCode) -> list[int]:
    """Basis indices of ``<t_i, e^alpha : i in supp(D), alpha in D*>``, verified closed."""
    if not A.code.contains_code(D):
        raise NotASubcode(f"{D!r} is not contained in {A.code!r}")
    idx = list(D.support) + [A.index[al] for al in D.nonconstant]
    allowed = set(idx)
    for p in idx:
        for q in idx:
            for r, _ in A.product_terms(p, q):
                if r not in allowed:
                    raise AssertionError(f"subalgebra not closed at {p}, {q}")
    return sorted(idx)


def toral_unit(A: CodeAlgebra) -> Element:
    """``t = sum t_i``; always idempotent with ``t * t_i = t_i``."""
    return A.t_word(A.code.ones)


def identity_element(A: CodeAlgebra) -> Element | None:
    """``sum t_i`` when it is an identity (every ``a_{i,alpha} = 1/|alpha|``), else ``None``."""
    for al in A.words:
        vals = {A.params.a_(i, al) for i in support(al, A.n)}
        if len(vals) != 1:
            raise AnalysisError(f"a_(i, {A.code.bits(al)}) depends on i; identity criterion needs it constant")
        if vals.pop() != mpq(1, weight(al)):
            return None
    return toral_unit(A)


@dataclass(frozen=True)
class PowerAssociativityReport:
    square_squared: Element
    x_times_x_cube: Element
    closed_form_square_squared: Element
    closed_form_x_times_x_cube: Element
    equal: bool


def power_associativity_witness(A: CodeAlgebra, alpha: int) -> PowerAssociativityReport:
    """Compare ``(x^2)^2`` with ``x(x x^2)`` for ``x = e^alpha`` under constant parameters.

    Closed forms: ``(x^2)^2 = c^2 t_alpha`` and ``x(x x^2) = a c^2 |alpha| t_alpha``,
    so the two agree exactly when ``a |alpha| = 1``.
    """
    triple = A.params.constant_triple()
    if triple is None:
        raise AnalysisError("power associativity witness needs constant parameters")
    a, _, c = triple
    x = A.e(alpha)
    x2 = x * x
    lhs = x2 * x2
    rhs = x * (x * x2)
    t_al = A.t_word(alpha)
    return PowerAssociativityReport(lhs, rhs, c * c * t_al, a * c * c * weight(alpha) * t_al, lhs == rhs)
