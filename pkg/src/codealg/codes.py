"""Binary linear codes with codewords stored as integer bitmasks.

A word of length ``n`` is an ``int`` whose binary expansion, padded to ``n``
digits, is its bit-string: coordinate ``i`` (0-based, left to right) is bit
``n - 1 - i``. Numeric order of the masks is therefore lexicographic order of
the strings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AnalysisError, CodeAlgebraError

MAX_LENGTH = 64
MAX_ENUM_DIM = 20


class LengthMismatch(CodeAlgebraError, ValueError):
    pass


class DependentRows(CodeAlgebraError, ValueError):
    def __init__(self, message: str, dependency: tuple[int, ...]):
        super().__init__(message)
        self.dependency = dependency


class EmptyCStar(AnalysisError):
    pass


class NotConstantWeight(AnalysisError):
    pass


class TooLarge(AnalysisError):
    pass


def weight(word: int) -> int:
    return word.bit_count() if hasattr(word, "bit_count") else bin(word).count("1")


def dot(u: int, v: int) -> int:
    return weight(u & v) & 1


def bit(word: int, i: int, n: int) -> int:
    return (word >> (n - 1 - i)) & 1


def support(word: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if (word >> (n - 1 - i)) & 1)


def from_support(coords: Iterable[int], n: int) -> int:
    w = 0
    for i in coords:
        w |= 1 << (n - 1 - i)
    return w


def unit(i: int, n: int) -> int:
    return 1 << (n - 1 - i)


def ones(n: int) -> int:
    return (1 << n) - 1


def to_bits(word: int, n: int) -> str:
    return format(word, f"0{n}b") if n else ""


def parse_word(text: str, n: int | None = None) -> int:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit-string: {text!r}")
    if n is not None and len(text) != n:
        raise LengthMismatch(f"{text!r} has length {len(text)}, expected {n}")
    return int(text, 2)


def permute_word(word: int, perm: Sequence[int], n: int) -> int:
    """Image of ``word`` under the coordinate permutation ``i -> perm[i]``."""
    out = 0
    for i in range(n):
        if (word >> (n - 1 - i)) & 1:
            out |= 1 << (n - 1 - perm[i])
    return out


def invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p`` after ``q``: ``i -> p[q[i]]``."""
    return tuple(p[j] for j in q)


def _echelon(rows: Sequence[int]):
    """GF(2) elimination keyed on the leading bit; tracks row combinations."""
    basis: list[tuple[int, int]] = []  # (vector, combination mask over input rows)
    for idx, r in enumerate(rows):
        v, comb = r, 1 << idx
        for b, bc in basis:
            if v ^ b < v:
                v ^= b
                comb ^= bc
        if v == 0:
            return None, comb
        basis.append((v, comb))
        basis.sort(reverse=True)
    return [b for b, _ in basis], None


def _reduced_basis(rows: Sequence[int]) -> list[int]:
    basis: dict[int, int] = {}  # leading bit -> row, fully reduced
    for r in rows:
        for lb in sorted(basis, reverse=True):
            if r & lb:
                r ^= basis[lb]
        if r:
            lb = _lead(r)
            for key, b in basis.items():
                if b & lb:
                    basis[key] = b ^ r
            basis[lb] = r
    return sorted(basis.values(), reverse=True)


def _lead(v: int) -> int:
    return 1 << (v.bit_length() - 1) if v else 0


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code of length ``n`` given by independent generators."""

    n: int
    generators: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_LENGTH:
            raise TooLarge(f"length {self.n} outside 0..{MAX_LENGTH}")

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 1 << self.k

    @cached_property
    def words(self) -> tuple[int, ...]:
        if self.k > MAX_ENUM_DIM:
            raise TooLarge(f"dimension {self.k} too large to enumerate")
        out = [0]
        for g in self.generators:
            out += [w ^ g for w in out]
        return tuple(sorted(out))

    @cached_property
    def _word_set(self) -> frozenset:
        return frozenset(self.words)

    @cached_property
    def basis(self) -> tuple[int, ...]:
        """Reduced echelon basis (canonical for the subspace)."""
        return tuple(_reduced_basis(self.generators))

    def __contains__(self, word: int) -> bool:
        if self.k <= MAX_ENUM_DIM:
            return word in self._word_set
        for b in self.basis:
            if word & _lead(b):
                word ^= b
        return word == 0

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    @property
    def ones(self) -> int:
        return ones(self.n)

    @property
    def has_ones(self) -> bool:
        return self.n > 0 and self.ones in self

    @cached_property
    def nonconstant(self) -> tuple[int, ...]:
        """``C*``: all words except the all-zeros and all-ones words, sorted."""
        full = self.ones
        return tuple(w for w in self.words if w != 0 and w != full)

    @cached_property
    def support(self) -> tuple[int, ...]:
        acc = 0
        for g in self.generators:
            acc |= g
        return support(acc, self.n)

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            dist[weight(w)] = dist.get(weight(w), 0) + 1
        return dict(sorted(dist.items()))

    def min_distance(self) -> int | None:
        """Minimum nonzero weight; ``None`` for the zero code."""
        ws = [weight(w) for w in self.words if w]
        return min(ws) if ws else None

    def bits(self, word: int) -> str:
        return to_bits(word, self.n)

    def permuted(self, perm: Sequence[int]) -> "LinearCode":
        return LinearCode(self.n, tuple(permute_word(g, perm, self.n) for g in self.generators))

    def contains_code(self, other: "LinearCode") -> bool:
        return other.n == self.n and all(g in self for g in other.generators)

    def __repr__(self):
        gens = ", ".join(self.bits(g) for g in self.generators)
        return f"LinearCode(n={self.n}, k={self.k}, [{gens}])"


def code_from_generators(rows: Sequence[str | int], n: int | None = None) -> LinearCode:
    """Row span of the given generators; rejects mismatched lengths and dependent rows."""
    words = []
    for r in rows:
        if isinstance(r, str):
            if n is None:
                n = len(r.strip())
            words.append(parse_word(r, n))
        else:
            if n is None:
                raise LengthMismatch("integer rows need an explicit length n")
            if r >> n:
                raise LengthMismatch(f"row {r:b} longer than {n}")
            words.append(int(r))
    if n is None:
        raise LengthMismatch("cannot infer the length of an empty generator list")
    for idx, w in enumerate(words):
        if w == 0:
            raise DependentRows(f"row {idx + 1} is zero", (idx,))
    _, comb = _echelon(words)
    if comb is not None:
        dep = tuple(i for i in range(len(words)) if comb >> i & 1)
        shown = " + ".join(to_bits(words[i], n) for i in dep)
        raise DependentRows(
            f"rows {', '.join(str(i + 1) for i in dep)} are dependent: {shown} = 0", dep
        )
    return LinearCode(n, tuple(words))


def span(words: Iterable[int], n: int) -> LinearCode:
    """Code spanned by arbitrary (possibly dependent) words."""
    return LinearCode(n, tuple(_reduced_basis([w for w in words if w])))


def full_space(n: int) -> LinearCode:
    return LinearCode(n, tuple(unit(i, n) for i in range(n)))


def zero_code(n: int) -> LinearCode:
    return LinearCode(n, ())


def nonconstant_words(code: LinearCode) -> list[int]:
    return list(code.nonconstant)


def split_by_dot(code: LinearCode, v: int) -> tuple[list[int], list[int]]:
    """Partition ``C`` into ``C_0(v)`` and ``C_1(v)`` by the value of ``(alpha, v)``."""
    c0, c1 = [], []
    for w in code.words:
        (c1 if dot(w, v) else c0).append(w)
    return c0, c1


def dual_code(code: LinearCode) -> LinearCode:
    n = code.n
    basis = list(code.basis)
    pivots = [b.bit_length() - 1 for b in basis]
    pivot_set = set(pivots)
    gens = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if b >> f & 1:
                v |= 1 << p
        gens.append(v)
    return LinearCode(n, tuple(sorted(gens, reverse=True)))


def is_constant_weight(code: LinearCode) -> tuple[bool, int | None]:
    """Whether all of ``C*`` shares one weight, and that weight when it does."""
    cstar = code.nonconstant
    if not cstar:
        raise EmptyCStar("C* is empty")
    ws = {weight(w) for w in cstar}
    return (len(ws) == 1, next(iter(ws)) if len(ws) == 1 else None)


def is_projective(code: LinearCode) -> bool:
    """The dual has minimum distance at least 3."""
    d = dual_code(code).min_distance()
    return d is None or d >= 3


def support_intersection_criterion(code: LinearCode) -> bool:
    """Every coordinate is the intersection of the supports of some codewords."""
    n = code.n
    for i in range(n):
        acc = ones(n)
        hit = False
        for w in code.words:
            if bit(w, i, n):
                acc &= w
                hit = True
        if not hit or acc != unit(i, n):
            return False
    return True


@dataclass(frozen=True)
class SimplexJuxtaposition:
    """``m`` copies of the ``[2^r - 1, r, 2^(r-1)]`` simplex code."""

    m: int
    r: int


@dataclass(frozen=True)
class ReedMullerJuxtaposition:
    """``m`` copies of the first-order Reed-Muller ``[2^r, r + 1, 2^(r-1)]`` code."""

    m: int
    r: int


def _columns(rows: Sequence[int], n: int) -> list[tuple[int, ...]]:
    return [tuple(bit(r, i, n) for r in rows) for i in range(n)]


def classify_constant_weight(code: LinearCode):
    """Identify a constant-weight code as a juxtaposed simplex or Reed-Muller code.

    The identification is certified by the column multiset of a generator
    matrix: every nonzero column vector (simplex) or every column ``(1, x)``
    (Reed-Muller, with the all-ones word as first row) occurs exactly ``m``
    times, zero columns aside.
    """
    ok, _ = is_constant_weight(code)
    if not ok:
        raise NotConstantWeight("C* has more than one weight")
    n = code.n
    if code.has_ones:
        full = code.ones
        rest = []
        for b in code.basis:
            if span([full] + rest + [b], n).k == len(rest) + 2:
                rest.append(b)
        r = len(rest)
        cols = _columns(rest, n)
        counts = _count(cols)
        m, rem = divmod(n, 1 << r)
        expected = set(itertools.product((0, 1), repeat=r))
        if rem or set(counts) != expected or set(counts.values()) != {m}:
            raise NotConstantWeight("column multiset is not a Reed-Muller juxtaposition")
        return ReedMullerJuxtaposition(m=m, r=r)
    rows = list(code.basis)
    r = len(rows)
    counts = _count(c for c in _columns(rows, n) if any(c))
    expected = set(itertools.product((0, 1), repeat=r)) - {(0,) * r}
    values = set(counts.values())
    if set(counts) != expected or len(values) != 1:
        raise NotConstantWeight("column multiset is not a simplex juxtaposition")
    return SimplexJuxtaposition(m=values.pop(), r=r)


def _count(items) -> dict:
    out: dict = {}
    for it in items:
        out[it] = out.get(it, 0) + 1
    return out


def simplex_code(r: int) -> LinearCode:
    """``[2^r - 1, r, 2^(r-1)]`` simplex code: columns are all nonzero vectors."""
    cols = [c for c in itertools.product((0, 1), repeat=r) if any(c)]
    return _from_columns(cols)


def reed_muller_code(r: int) -> LinearCode:
    """First-order Reed-Muller ``[2^r, r + 1, 2^(r-1)]`` code."""
    cols = [(1,) + c for c in itertools.product((0, 1), repeat=r)]
    return _from_columns(cols)


def _from_columns(cols: Sequence[tuple[int, ...]]) -> LinearCode:
    n = len(cols)
    k = len(cols[0])
    rows = [from_support([i for i, c in enumerate(cols) if c[j]], n) for j in range(k)]
    return code_from_generators(rows, n)


def juxtapose(code: LinearCode, m: int) -> LinearCode:
    """Generator matrix repeated ``m`` times side by side."""
    n = code.n
    rows = []
    for g in code.generators:
        w = 0
        for _ in range(m):
            w = (w << n) | g
        rows.append(w)
    return LinearCode(n * m, tuple(rows))


def build_juxtaposition(kind) -> LinearCode:
    if isinstance(kind, SimplexJuxtaposition):
        return juxtapose(simplex_code(kind.r), kind.m)
    return juxtapose(reed_muller_code(kind.r), kind.m)


def extended_hamming_code() -> LinearCode:
    """The self-dual ``[8, 4, 4]`` extended Hamming code."""
    return code_from_generators(["11110000", "11001100", "10101010", "11111111"])


def even_weight_code(n: int) -> LinearCode:
    return code_from_generators([to_bits(unit(0, n) | unit(i, n), n) for i in range(1, n)])


def automorphism_group(code: LinearCode, max_n: int = 12) -> list[tuple[int, ...]]:
    """All coordinate permutations mapping ``C`` onto itself.

    Backtracking over images of coordinates ``0, 1, ...``; a partial map
    survives only while the projection of ``C`` onto the mapped prefix equals
    the projection onto its image, which at full length is ``C^g = C``.
    Permutations are tuples with ``perm[i]`` the image of ``i``.
    """
    n = code.n
    if n > max_n:
        raise TooLarge(f"automorphism search limited to n <= {max_n}, got {n}")
    words = code.words
    cols = [tuple(bit(w, i, n) for w in words) for i in range(n)]
    col_weight = [sum(c) for c in cols]
    # prefix projections of the source side, as sets of integers
    src_proj = []
    acc = [0] * len(words)
    for i in range(n):
        acc = [(a << 1) | c for a, c in zip(acc, cols[i])]
        src_proj.append(frozenset(acc))

    found: list[tuple[int, ...]] = []
    perm = [0] * n
    used = [False] * n

    def extend(i: int, proj: list[int]):
        if i == n:
            found.append(tuple(perm))
            return
        target = src_proj[i]
        for j in range(n):
            if used[j] or col_weight[j] != col_weight[i]:
                continue
            nxt = [(a << 1) | c for a, c in zip(proj, cols[j])]
            if frozenset(nxt) != target:
                continue
            used[j] = True
            perm[i] = j
            extend(i + 1, nxt)
            used[j] = False

    extend(0, [0] * len(words))
    return found


def coset_reps(code: LinearCode) -> list[int]:
    """One representative per coset of ``D^perp`` in ``F_2^n`` (``|D|`` of them).

    Representatives are sums of unit vectors at the pivot coordinates of the
    reduced basis of ``D``; distinct subsets give distinct inner-product
    signatures against ``D``.
    """
    pivots = [b.bit_length() - 1 for b in code.basis]
    reps = []
    for r in range(len(pivots) + 1):
        for combo in itertools.combinations(pivots, r):
            reps.append(sum(1 << p for p in combo))
    return sorted(reps)
