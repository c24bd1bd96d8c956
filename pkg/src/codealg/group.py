"""Miyamoto group, the extension by code automorphisms, and axis orbits.

Group elements are :class:`SignedMap` values: a coordinate permutation
``pi`` together with signs, acting by ``t_i -> t_{pi(i)}`` and
``e^alpha -> eps_alpha e^{alpha pi}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from . import codes
from .algebra import CodeAlgebra, Element, LinearMap, NotRegular, is_regular
from .codes import LinearCode, dot, permute_word, unit
from .errors import AnalysisError
from .linalg import ZERO, matvec
from .scalar import format_scalar
from .spectral import (
    NoGrading,
    eigen_decompose,
    fusion_law,
    miyamoto_involution,
    z2_grading,
)

ONE = mpq(1)


class GradingFails(AnalysisError):
    pass


class _WordAction:
    """Cached action of coordinate permutations on the codeword slots of an algebra."""

    def __init__(self, A: CodeAlgebra):
        self.A = A
        self.pos = {w: k for k, w in enumerate(A.words)}
        self._cache: dict = {}
        self.params_ok: dict = {}

    def __call__(self, perm: tuple[int, ...]) -> tuple[int, ...]:
        hit = self._cache.get(perm)
        if hit is None:
            n = self.A.n
            hit = tuple(self.pos[permute_word(w, perm, n)] for w in self.A.words)
            self._cache[perm] = hit
        return hit


_ACTIONS: dict = {}


def _action(A: CodeAlgebra) -> _WordAction:
    act = _ACTIONS.get(id(A))
    if act is None or act.A is not A:
        act = _ACTIONS[id(A)] = _WordAction(A)
    return act


@dataclass(frozen=True)
class SignedMap:
    """``perm[i]`` is the image of coordinate ``i``; bit ``k`` of ``neg`` negates slot ``k``."""

    algebra: CodeAlgebra = field(compare=False, hash=False, repr=False)
    perm: tuple[int, ...]
    neg: int = 0

    def sign(self, k: int) -> int:
        return -1 if self.neg >> k & 1 else 1

    def __matmul__(self, other: "SignedMap") -> "SignedMap":
        """Composition ``self after other``."""
        act = _action(self.algebra)
        wmap = act(other.perm)
        neg = other.neg
        for k, img in enumerate(wmap):
            if self.neg >> img & 1:
                neg ^= 1 << k
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        return SignedMap(self.algebra, perm, neg)

    def inverse(self) -> "SignedMap":
        inv = codes.invert_perm(self.perm)
        act = _action(self.algebra)
        wmap = act(self.perm)
        neg = 0
        for k, img in enumerate(wmap):
            if self.neg >> k & 1:
                neg |= 1 << img
        return SignedMap(self.algebra, tuple(inv), neg)

    def is_identity(self) -> bool:
        return self.neg == 0 and all(p == i for i, p in enumerate(self.perm))

    def to_linear_map(self) -> LinearMap:
        A = self.algebra
        mat = [[ZERO] * A.dim for _ in range(A.dim)]
        for i, p in enumerate(self.perm):
            mat[p][i] = ONE
        wmap = _action(A)(self.perm)
        for k, img in enumerate(wmap):
            mat[A.n + img][A.n + k] = -ONE if self.neg >> k & 1 else ONE
        return LinearMap(A, mat)

    def __call__(self, x: Element) -> Element:
        A = self.algebra
        out = [ZERO] * A.dim
        for i, p in enumerate(self.perm):
            out[p] = x.coords[i]
        for k, img in enumerate(_action(A)(self.perm)):
            c = x.coords[A.n + k]
            out[A.n + img] = -c if self.neg >> k & 1 else c
        return Element(x.algebra, out, check=False)

    def automorphism_witness(self):
        """Symbolic check; returns a description of the first failure or ``None``."""
        A = self.algebra
        perm = self.perm
        act = _action(A)
        if perm not in act.params_ok:
            act.params_ok[perm] = _params_witness(A, perm)
        if act.params_ok[perm] is not None:
            return act.params_ok[perm]
        words = A.words
        neg = self.neg
        for x, y, z in _product_triples(A):
            if (neg >> x ^ neg >> y ^ neg >> z) & 1:
                return ("signs not multiplicative", (words[x], words[y]))
        return None

    def is_automorphism(self) -> bool:
        return self.automorphism_witness() is None

    def describe(self) -> str:
        """Cycle notation (1-based) plus the negated codeword slots."""
        A = self.algebra
        seen, cycles = set(), []
        for i in range(len(self.perm)):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.perm[j]
            if len(cyc) > 1:
                cycles.append("(" + " ".join(map(str, cyc)) + ")")
        signs = [A.code.bits(w) for k, w in enumerate(A.words) if self.neg >> k & 1]
        perm_txt = "".join(cycles) or "()"
        return perm_txt + (" signs -" + ",".join(signs) if signs else "")


def _params_witness(A: CodeAlgebra, perm):
    n, p, words = A.n, A.params, A.words
    for w in words:
        if permute_word(w, perm, n) not in A.code:
            return ("permutation leaves the code", w)
    wmap = _action(A)(perm)
    for (i, al), v in p.a.items():
        if p.a_(perm[i], words[wmap[A.index[al] - n]]) != v:
            return ("a not preserved", (i, al))
    for (i, al), v in p.c.items():
        if p.c_(perm[i], words[wmap[A.index[al] - n]]) != v:
            return ("c not preserved", (i, al))
    for (al, be), v in p.b.items():
        if p.b_(words[wmap[A.index[al] - n]], words[wmap[A.index[be] - n]]) != v:
            return ("b not preserved", (al, be))
    return None


_TRIPLES: dict = {}


def _product_triples(A: CodeAlgebra):
    hit = _TRIPLES.get(id(A))
    if hit is None or hit[0] is not A:
        words = A.words
        pos = {w: k for k, w in enumerate(words)}
        trip = []
        for x, al in enumerate(words):
            for y in range(x + 1, len(words)):
                z = pos.get(al ^ words[y])
                if z is not None and y < z:
                    trip.append((x, y, z))
        hit = _TRIPLES[id(A)] = (A, trip)
    return hit[1]


def sign_map(A: CodeAlgebra, v: int) -> SignedMap:
    """``tau_v``: ``e^alpha -> (-1)^{(v, alpha)} e^alpha``."""
    neg = 0
    for k, w in enumerate(A.words):
        if dot(v, w):
            neg |= 1 << k
    return SignedMap(A, tuple(range(A.n)), neg)


def permutation_map(A: CodeAlgebra, perm: Sequence[int]) -> SignedMap:
    return SignedMap(A, tuple(perm), 0)


def identity_map(A: CodeAlgebra) -> SignedMap:
    return SignedMap(A, tuple(range(A.n)), 0)


@dataclass(frozen=True)
class MiyamotoGroup:
    kernel: LinearCode
    order: int
    generators: tuple[SignedMap, ...]


def _check_gradable(A: CodeAlgebra):
    bad = [(i, al) for (i, al), v in A.params.a.items() if v == 1]
    if bad:
        i, al = bad[0]
        raise GradingFails(f"a_({i + 1}, {A.code.bits(al)}) = 1 merges the eigenvalue with 1")


def miyamoto_group(A: CodeAlgebra) -> MiyamotoGroup:
    """``M = <tau_i>``; ``v -> tau_v`` has kernel ``(span C*)^perp``."""
    _check_gradable(A)
    n = A.n
    ker = codes.dual_code(codes.span(A.words, n))
    gens = tuple(sign_map(A, unit(i, n)) for i in range(n))
    return MiyamotoGroup(ker, 2 ** (n - ker.k), gens)


def miyamoto_elements(A: CodeAlgebra) -> list[SignedMap]:
    """Distinct ``tau_v`` over all ``v`` in F_2^n (small n only)."""
    if A.n > 16:
        raise codes.TooLarge("Miyamoto enumeration is limited to n <= 16")
    seen = {}
    for v in range(1 << A.n):
        s = sign_map(A, v)
        seen.setdefault(s.neg, s)
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class FullGroup:
    order: int
    miyamoto: MiyamotoGroup
    automorphisms: tuple[tuple[int, ...], ...]
    generators: tuple[SignedMap, ...]


def _generating_set(perms: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Greedy small generating set of a permutation group given by all its elements."""
    target = len(perms)
    gens: list = []
    group = {tuple(range(len(perms[0])))}
    for p in perms:
        if len(group) == target:
            break
        if p in group:
            continue
        gens.append(p)
        frontier = list(group)
        group = set(group)
        while frontier:
            new = []
            for g in frontier:
                for h in gens:
                    c = tuple(h[g[i]] for i in range(len(g)))
                    if c not in group:
                        group.add(c)
                        new.append(c)
            frontier = new
    return gens


def full_group(A: CodeAlgebra, max_n: int = 12) -> FullGroup:
    """``G = M : Aut(C)`` with the relation ``P tau_i P^-1 = tau_{pi(i)}`` checked on generators."""
    M = miyamoto_group(A)
    aut = codes.automorphism_group(A.code, max_n=max_n)
    if not is_regular(A.params, A.code, aut):
        raise NotRegular("structure parameters are not Aut(C)-regular")
    perm_gens = _generating_set(aut) if len(aut) > 1 else []
    pmaps = [permutation_map(A, g) for g in perm_gens]
    for P in pmaps:
        Pinv = P.inverse()
        for i, tau in enumerate(M.generators):
            conj = P @ tau @ Pinv
            if conj != M.generators[P.perm[i]]:
                raise AnalysisError(f"conjugation relation fails for {P.describe()} and tau_{i + 1}")
    return FullGroup(M.order * len(aut), M, tuple(aut), tuple(M.generators) + tuple(pmaps))


def enumerate_group(A: CodeAlgebra, G: FullGroup | None = None) -> list[SignedMap]:
    """Every element ``tau_v P_g`` of ``M : Aut(C)``."""
    G = G or full_group(A)
    ms = miyamoto_elements(A)
    out = []
    for g in G.automorphisms:
        P = permutation_map(A, g)
        for m in ms:
            out.append(m @ P)
    return out


@dataclass(frozen=True)
class OrbitResult:
    closed: bool
    count: int
    axes: tuple[Element, ...]
    involutions: tuple[LinearMap, ...] = ()

    def __str__(self):
        return f"closed({self.count})" if self.closed else f"growing({self.count})"


def axis_involution(A: CodeAlgebra, x: Element, hints: Iterable = (), verify: bool = True) -> LinearMap:
    """Miyamoto involution of an axis from its own computed fusion law."""
    dec = eigen_decompose(A, x, hints=hints)
    if not dec.semisimple:
        raise NoGrading(f"axis {x} is not semisimple over the working field")
    law = fusion_law(A, x, dec)
    grading = z2_grading(law)
    return miyamoto_involution(A, x, dec, grading, verify=verify)


def axis_orbit(
    A: CodeAlgebra,
    axes: Sequence[Element],
    bound: int = 512,
    involutions: Sequence[LinearMap] | None = None,
    verify: bool = True,
) -> OrbitResult:
    """Close ``axes`` under their Miyamoto involutions, up to ``bound`` elements.

    Conjugates ``g tau_a g^-1`` are involutions of the images ``g(a)``, so the
    group generated by the initial involutions already gives the whole orbit.
    A ``growing`` result is evidence of an infinite orbit, not a proof.
    """
    if involutions is None:
        involutions = [axis_involution(A, x, verify=verify) for x in axes]
    seen = {x.coords for x in axes}
    order = [x for x in axes]
    frontier = [x.coords for x in axes]
    while frontier:
        fresh = []
        for u in frontier:
            for tau in involutions:
                w = tuple(matvec(tau.matrix, u))
                if w not in seen:
                    seen.add(w)
                    order.append(Element(axes[0].algebra, w, check=False))
                    fresh.append(w)
                    if len(seen) > bound:
                        return OrbitResult(False, len(seen), tuple(order), tuple(involutions))
        frontier = fresh
    return OrbitResult(True, len(seen), tuple(order), tuple(involutions))


def torus_action(tau: LinearMap, tori: Sequence[Sequence[Element]]):
    """Permutation of ``tori`` induced by ``tau`` (``None`` if some torus is not mapped onto one)."""
    keys = [frozenset(x.coords for x in T) for T in tori]
    out = []
    for T in tori:
        img = frozenset(tuple(matvec(tau.matrix, x.coords)) for x in T)
        if img not in keys:
            return None
        out.append(keys.index(img))
    return tuple(out)
