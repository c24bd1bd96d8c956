"""Eigenspaces of adjoint maps, fusion laws, axes, gradings and Miyamoto involutions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .algebra import CodeAlgebra, Element, LinearMap
from .codes import support
from .errors import AnalysisError, CodeAlgebraError
from .linalg import ZERO, charpoly, identity, inverse, kernel, matmul, rational_roots
from .scalar import format_scalar, parse_scalar, sort_key

ONE = mpq(1)


class NotSemisimple(AnalysisError):
    pass


class MissingUnitLabels(CodeAlgebraError):
    pass


class NoGrading(AnalysisError):
    pass


def label_key(x):
    """Display order for eigenvalues: 1, then 0, then the rest."""
    return (x != 1, x != 0, sort_key(x))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues with bases of their eigenspaces (coordinate tuples).

    ``indices`` is set when the decomposition is of the restriction of the
    adjoint to a subalgebra spanned by those basis slots; vectors are then
    still full-length coordinates.
    """

    eigenvalues: tuple
    spaces: tuple[tuple[tuple, ...], ...]
    dim: int
    indices: tuple[int, ...] | None = None

    @property
    def semisimple(self) -> bool:
        return self.residual == 0

    @property
    def residual(self) -> int:
        return self.dim - sum(len(s) for s in self.spaces)

    def dims(self) -> dict:
        return {lam: len(s) for lam, s in zip(self.eigenvalues, self.spaces)}

    def space(self, lam) -> tuple[tuple, ...]:
        for mu, s in zip(self.eigenvalues, self.spaces):
            if mu == lam:
                return s
        return ()

    def __contains__(self, lam) -> bool:
        return any(mu == lam for mu in self.eigenvalues)


def _decomposition(groups: Mapping, dim: int, indices=None) -> EigenDecomposition:
    keys = sorted((k for k, v in groups.items() if v), key=label_key)
    return EigenDecomposition(tuple(keys), tuple(tuple(map(tuple, groups[k])) for k in keys), dim, indices)


def toral_peirce(A: CodeAlgebra, i: int) -> EigenDecomposition:
    """Closed-form eigenspaces of ``ad_{t_i}``; coinciding values share a space."""
    groups: dict = {ONE: [], ZERO: []}

    def unit(j):
        v = [ZERO] * A.dim
        v[j] = ONE
        return v

    groups[ONE].append(unit(i))
    for j in range(A.n):
        if j != i:
            groups[ZERO].append(unit(j))
    bit = 1 << (A.n - 1 - i)
    for al in A.words:
        lam = A.params.a_(i, al) if al & bit else ZERO
        groups.setdefault(lam, []).append(unit(A.index[al]))
    return _decomposition(groups, A.dim)


def _restrict(mat, indices):
    return [[mat[r][c] for c in indices] for r in indices]


def eigen_decompose(
    A: CodeAlgebra, x: Element, hints: Iterable = (), indices: Sequence[int] | None = None
) -> EigenDecomposition:
    """Eigenspaces of ``ad_x`` by exact candidate testing.

    Candidates are the hints, 1, 0 and the structure parameter values; if they
    do not exhaust the dimension, rational roots of the characteristic
    polynomial are added. Any dimension still missing is reported through
    ``residual`` (not semisimple over the working field).
    """
    full = A.adjoint_matrix(x)
    if indices is not None:
        indices = tuple(sorted(indices))
        if any(x.coords[j] for j in range(A.dim) if j not in set(indices)):
            raise ValueError("element lies outside the given subalgebra")
        mat = _restrict(full, indices)
    else:
        mat = full
    dim = len(mat)
    groups: dict = {}
    seen = set()
    total = 0

    def try_value(lam):
        nonlocal total
        if lam in seen:
            return
        seen.add(lam)
        shifted = [list(row) for row in mat]
        for k in range(dim):
            shifted[k][k] = shifted[k][k] - lam
        ker = kernel(shifted, dim)
        if ker:
            groups[lam] = ker
            total += len(ker)

    candidates = list(hints) + [ONE, ZERO]
    for lam in candidates:
        try_value(lam)
        if total == dim:
            break
    if total < dim:
        for lam in sorted(set(A.params.values()), key=sort_key):
            try_value(lam)
            if total == dim:
                break
    if total < dim:
        for lam in rational_roots(charpoly(mat)) or ():
            try_value(lam)
            if total == dim:
                break
    if indices is not None:
        embedded = {}
        for lam, vecs in groups.items():
            out = []
            for v in vecs:
                w = [ZERO] * A.dim
                for k, j in enumerate(indices):
                    w[j] = v[k]
                out.append(w)
            embedded[lam] = out
        groups = embedded
    return _decomposition(groups, dim, indices)


def check_decomposition(A: CodeAlgebra, x: Element, dec: EigenDecomposition) -> bool:
    """Every listed vector satisfies ``x v = lam v`` exactly."""
    for lam, vecs in zip(dec.eigenvalues, dec.spaces):
        for v in vecs:
            if A.multiply_coords(x.coords, v) != [lam * c for c in v]:
                return False
    return True


# fusion laws


@dataclass(frozen=True)
class FusionLaw:
    """Symmetric table ``(label, label) -> frozenset(labels)``."""

    labels: tuple
    table: Mapping

    def __post_init__(self):
        labels = tuple(sorted(set(self.labels), key=label_key))
        table = {}
        for (x, y), zs in self.table.items():
            key = _pair(x, y)
            table[key] = table.get(key, frozenset()) | frozenset(zs)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)

    def __call__(self, x, y) -> frozenset:
        return self.table.get(_pair(x, y), frozenset())

    def __eq__(self, other):
        if not isinstance(other, FusionLaw):
            return NotImplemented
        return set(self.labels) == set(other.labels) and all(
            self(x, y) == other(x, y) for x in self.labels for y in self.labels
        )

    def __hash__(self):
        return hash(frozenset(self.labels))

    def containment_witness(self, pattern: "FusionLaw"):
        """First ``(x, y)`` whose entry is not inside ``pattern``'s, else ``None``."""
        for x in self.labels:
            if x not in pattern.labels:
                return (x, x)
        for x, y in self.pairs():
            if not self(x, y) <= pattern(x, y):
                return (x, y)
        return None

    def contained_in(self, pattern: "FusionLaw") -> bool:
        return self.containment_witness(pattern) is None

    def pairs(self):
        for i, x in enumerate(self.labels):
            for y in self.labels[i:]:
                yield x, y

    def to_dict(self) -> dict:
        return {
            "labels": [format_scalar(x) for x in self.labels],
            "table": [
                [format_scalar(x), format_scalar(y), [format_scalar(z) for z in sorted(self(x, y), key=label_key)]]
                for x, y in self.pairs()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FusionLaw":
        labels = [parse_scalar(s) for s in data["labels"]]
        table = {(parse_scalar(x), parse_scalar(y)): {parse_scalar(z) for z in zs} for x, y, zs in data["table"]}
        return cls(tuple(labels), table)

    def __str__(self):
        rows = [f"{format_scalar(x)} * {format_scalar(y)} = {{{', '.join(format_scalar(z) for z in sorted(self(x, y), key=label_key))}}}" for x, y in self.pairs()]
        return "\n".join(rows)


def _pair(x, y):
    return (x, y) if label_key(x) <= label_key(y) else (y, x)


def _merged(symbolic: dict, values: dict) -> FusionLaw:
    """Evaluate a law on symbolic labels, merging labels with equal values."""
    table = {}
    for (x, y), zs in symbolic.items():
        key = _pair(values[x], values[y])
        table[key] = table.get(key, frozenset()) | frozenset(values[z] for z in zs)
    return FusionLaw(tuple(values.values()), table)


def table1_law(avalues: Iterable) -> FusionLaw:
    """The toral law for ``t_i`` with nontrivial eigenvalues ``avalues``."""
    avalues = list(dict.fromkeys(avalues))
    names = ["1", "0"] + [f"a{j}" for j in range(len(avalues))]
    values = {"1": ONE, "0": ZERO, **{f"a{j}": v for j, v in enumerate(avalues)}}
    alls = names[2:]
    sym = {("1", "1"): {"1"}, ("1", "0"): set(), ("0", "0"): {"0"}}
    for j in alls:
        sym[("1", j)] = {j}
        sym[("0", j)] = set(alls)
        sym[(j, j)] = {"1", "0"}
    for j, k in combinations(alls, 2):
        sym[(j, k)] = {"0"}
    return _merged(sym, values)


def jordan_law(eta) -> FusionLaw:
    return table1_law([eta])


def table2_law(lam, nu_plus, nu_minus, amended: bool = False) -> FusionLaw:
    """The small-idempotent law on labels 1, 0, lam, lam - 1/2, nu+, nu-.

    Unamended, ``lam * (lam - 1/2)`` is empty. It is not once ``|alpha| >= 2``:
    ``(t_i - t_j)(2 mu c t_alpha - e^alpha) = 2 mu c (t_i - t_j)``. ``amended``
    puts ``lam`` in that cell.
    """
    values = {"1": ONE, "0": ZERO, "l": lam, "h": lam - mpq(1, 2), "p": nu_plus, "m": nu_minus}
    everything = set(values)
    sym = {
        ("1", "1"): {"1"}, ("1", "0"): set(), ("1", "l"): {"l"}, ("1", "h"): {"h"},
        ("1", "p"): {"p"}, ("1", "m"): {"m"},
        ("0", "0"): {"0"}, ("0", "l"): set(), ("0", "h"): set(), ("0", "p"): {"p"}, ("0", "m"): {"m"},
        ("l", "l"): {"1", "l", "h"}, ("l", "h"): {"l"} if amended else set(), ("l", "p"): {"m"}, ("l", "m"): {"p"},
        ("h", "h"): {"1", "h"}, ("h", "p"): {"p"}, ("h", "m"): {"m"},
        ("p", "p"): everything, ("p", "m"): {"0", "l"}, ("m", "m"): everything,
    }
    return _merged(sym, values)


def _eigenbasis(dec: EigenDecomposition):
    cols, block = [], []
    for k, vecs in enumerate(dec.spaces):
        for v in vecs:
            cols.append(v)
            block.append(k)
    return cols, block


def _coordinates_solver(A: CodeAlgebra, dec: EigenDecomposition):
    """Map full coordinates to eigenbasis coordinates."""
    cols, block = _eigenbasis(dec)
    idx = list(dec.indices) if dec.indices is not None else list(range(A.dim))
    basis = [[v[j] for v in cols] for j in idx]  # columns are eigenvectors
    inv = inverse(basis)

    def solve(p):
        sub = [p[j] for j in idx]
        nz = [(k, x) for k, x in enumerate(sub) if x]
        out = []
        for row in inv:
            acc = ZERO
            for k, x in nz:
                y = row[k]
                if y:
                    acc += y * x
            out.append(acc)
        return out

    return cols, block, solve


def fusion_law(A: CodeAlgebra, x: Element, dec: EigenDecomposition) -> FusionLaw:
    """Which eigenspaces receive components of products of eigenvectors."""
    if not dec.semisimple:
        raise NotSemisimple(f"adjoint misses {dec.residual} dimensions over the working field")
    cols, block, solve = _coordinates_solver(A, dec)
    labels = dec.eigenvalues
    table = {}
    starts = {}
    for pos, k in enumerate(block):
        starts.setdefault(k, []).append(pos)
    for k1 in range(len(labels)):
        for k2 in range(k1, len(labels)):
            hit = set()
            for p in starts[k1]:
                for q in starts[k2]:
                    if k1 == k2 and q < p:
                        continue
                    prod = A.multiply_coords(cols[p], cols[q])
                    if not any(prod):
                        continue
                    coeff = solve(prod)
                    hit.update(labels[block[r]] for r, c in enumerate(coeff) if c)
            table[(labels[k1], labels[k2])] = hit
    return FusionLaw(labels, table)


def seress_check(law: FusionLaw) -> bool:
    """``0 * lam`` is inside ``{lam}`` for every label ``lam != 1``."""
    if ONE not in law.labels or ZERO not in law.labels:
        raise MissingUnitLabels("law needs labels 1 and 0")
    return all(law(ZERO, lam) <= {lam} for lam in law.labels if lam != ONE)


@dataclass(frozen=True)
class AxisVerdict:
    kind: str  # "primitive-axis", "axis" or "not-axis"
    witness: object = None
    law: FusionLaw | None = None
    decomposition: EigenDecomposition | None = None

    @property
    def is_axis(self) -> bool:
        return self.kind != "not-axis"

    @property
    def primitive(self) -> bool:
        return self.kind == "primitive-axis"


def is_axis(
    A: CodeAlgebra,
    x: Element,
    law: FusionLaw,
    dec: EigenDecomposition | None = None,
    hints: Iterable = (),
) -> AxisVerdict:
    if x * x != x:
        return AxisVerdict("not-axis", ("not idempotent", x * x - x))
    if dec is None:
        dec = eigen_decompose(A, x, hints=tuple(hints) + tuple(law.labels))
    if not dec.semisimple:
        return AxisVerdict("not-axis", ("not semisimple", dec.residual), decomposition=dec)
    extra = [lam for lam in dec.eigenvalues if lam not in law.labels]
    if extra:
        return AxisVerdict("not-axis", ("eigenvalue outside the law", extra[0]), decomposition=dec)
    computed = fusion_law(A, x, dec)
    bad = computed.containment_witness(law)
    if bad is not None:
        return AxisVerdict("not-axis", ("fusion rule violated", bad), computed, dec)
    kind = "primitive-axis" if len(dec.space(ONE)) == 1 else "axis"
    return AxisVerdict(kind, None, computed, dec)


def z2_grading(law: FusionLaw):
    """``(F+, F-)`` with ``{1, 0}`` inside ``F+``, preferring the largest ``F-``.

    The trivial grading ``(labels, ())`` is returned when nothing larger works.
    """
    free = [x for x in law.labels if x != ONE and x != ZERO]
    fixed = [x for x in law.labels if x == ONE or x == ZERO]
    best = None
    for size in range(len(free), -1, -1):
        for minus in combinations(free, size):
            mset = set(minus)
            plus = set(fixed) | (set(free) - mset)
            if _graded(law, plus, mset):
                best = (tuple(sorted(plus, key=label_key)), tuple(sorted(mset, key=label_key)))
                break
        if best is not None:
            break
    return best


def _graded(law, plus, minus) -> bool:
    for x, y in law.pairs():
        same = (x in minus) == (y in minus)
        target = plus if same else minus
        if not law(x, y) <= target:
            return False
    return True


def miyamoto_involution(
    A: CodeAlgebra, x: Element, dec: EigenDecomposition, grading, verify: bool = True
) -> LinearMap:
    """Identity on the even eigenspaces, minus one on the odd ones."""
    if grading is None:
        raise NoGrading("no Z2-grading supplied")
    if not dec.semisimple or dec.indices is not None:
        raise NotSemisimple("Miyamoto involution needs a full semisimple decomposition")
    minus = set(grading[1])
    cols, block = _eigenbasis(dec)
    if not minus:
        return LinearMap(A, identity(A.dim))
    E = [[v[j] for v in cols] for j in range(A.dim)]
    signed = [[(-c if dec.eigenvalues[block[k]] in minus else c) for k, c in enumerate(row)] for row in E]
    tau = LinearMap(A, matmul(signed, inverse(E)))
    if verify:
        if not tau.order_at_most_two():
            raise AnalysisError("Miyamoto map is not an involution")
        w = tau.automorphism_witness()
        if w is not None:
            raise AnalysisError(f"Miyamoto map breaks the product at basis pair {w}")
    return tau


def toral_involution(A: CodeAlgebra, i: int) -> LinearMap:
    """``e^alpha -> (-1)^{alpha_i} e^alpha``, identity on the torus."""
    mat = identity(A.dim)
    bit = 1 << (A.n - 1 - i)
    for al in A.words:
        if al & bit:
            j = A.index[al]
            mat[j][j] = -ONE
    return LinearMap(A, mat)
