"""Worked examples: the full space of length 2, the even code of length 3 and H8.

Each ``run_*`` function returns a JSON-ready summary; :func:`check_fixture`
compares it with the stored golden file.
"""

from __future__ import annotations

import difflib
import json
from importlib import resources

from gmpy2 import mpq

from . import codes
from .algebra import (
    CodeAlgebra,
    Element,
    build_algebra,
    constant_params,
    identity_element,
    is_nondegenerate,
)
from .codes import support, weight
from .errors import AnalysisError
from .form import frobenius_form, verify_associative
from .group import axis_orbit, full_group, torus_action
from .linalg import ZERO, rank
from .scalar import choose_discriminant, format_scalar, sqrt_in_field
from .smap import axial_generation_check, small_idempotents, smap_idempotent
from .spectral import (
    eigen_decompose,
    fusion_law,
    is_axis,
    jordan_law,
    miyamoto_involution,
    toral_peirce,
    z2_grading,
)
from .structure import is_simple

NAMES = ("f2sq", "even3", "hamming8")


class FixtureMismatch(AnalysisError):
    def __init__(self, name: str, diff: str):
        super().__init__(f"fixture {name} differs from its golden file:\n{diff}")
        self.diff = diff


def _fmt(x) -> str:
    return format_scalar(x)


def _dims(dec) -> dict:
    return {_fmt(k): v for k, v in dec.dims().items()}


def _vec(x: Element) -> list[str]:
    return [_fmt(c) for c in x.coords]


def axis_data(A: CodeAlgebra, x: Element, law, toral: int | None = None, verify: bool = True):
    """Decomposition, computed law, verdict and Miyamoto involution for one axis."""
    dec = toral_peirce(A, toral) if toral is not None else eigen_decompose(A, x, hints=law.labels)
    verdict = is_axis(A, x, law, dec=dec)
    computed = verdict.law if verdict.law is not None else fusion_law(A, x, dec)
    tau = miyamoto_involution(A, x, dec, z2_grading(computed), verify=verify)
    return dec, verdict, computed, tau


# F_2^2


def f2sq_idempotent_pair(a, c):
    """``(e+, e-, v+, v-)`` in the subalgebra ``<t_1, e^10>`` for rational ``a, c``.

    ``e+- = (1/(2a)) (t_1 +- r e^10)`` with ``r`` the canonical root of
    ``(2a - 1)/c``; ``v+- = +-(c r / a) t_1 - e^10`` satisfies
    ``e+- v+- = ((1 - a)/(2a)) v+-``.
    """
    a, c = mpq(a), mpq(c)
    q = (2 * a - 1) / c
    d = choose_discriminant(q) if q else 1
    r = sqrt_in_field(q, d)
    code = codes.full_space(2)
    A = build_algebra(code, constant_params(code, a, 1, c)).with_discriminant(d)
    t1, e = A.t(0), A.e("10")
    ep = (1 / (2 * a)) * (t1 + r * e)
    em = (1 / (2 * a)) * (t1 - r * e)
    vp = (c * r / a) * t1 - e
    vm = (-c * r / a) * t1 - e
    return A, ep, em, vp, vm


def subalgebra_idempotents(A: CodeAlgebra):
    """Nonzero idempotents of ``<t_1, e^10>`` from ``p^2 + c q^2 = p``, ``2 a p q = q``."""
    a = A.params.a_(0, 0b10)
    c = A.params.c_(0, 0b10)
    out = [A.t(0)]
    p = 1 / (2 * a)
    q2 = (p - p * p) / c
    r = sqrt_in_field(q2, A.disc) if q2 else None
    if r:
        for s in (r, -r):
            out.append(p * A.t(0) + s * A.e("10"))
    return out


def run_f2sq() -> dict:
    code = codes.full_space(2)
    a, b, c = mpq(-1), mpq(1), mpq(-1)
    A0 = build_algebra(code, constant_params(code, a, b, c))
    simple = is_simple(A0)
    I1, I2 = simple.ideals
    annihilate = all(not any(A0.multiply_coords(u, w)) for u in I1.basis for w in I2.basis)
    form = frobenius_form(A0)
    orthogonal = all(not form(u, w) for u in I1.basis for w in I2.basis)
    A, ep, em, vp, vm = f2sq_idempotent_pair(a, c)
    eig = (1 - a) / (2 * a)
    idems = subalgebra_idempotents(A)
    sub = (0, A.index[0b10])
    t_law = fusion_law(A, A.t(0), eigen_decompose(A, A.t(0), indices=sub))
    same_law = [fusion_law(A, x, eigen_decompose(A, x, indices=sub)) == t_law for x in idems]
    return {
        "params": [_fmt(a), _fmt(b), _fmt(c)],
        "dim": A0.dim,
        "simple": simple.simple,
        "ideals": [I.rows() for I in simple.ideals],
        "other_ideals_found": len(simple.extra),
        "ideals_annihilate": annihilate,
        "ideals_orthogonal": orthogonal,
        "gram_diagonal": [_fmt(x) for x in form.diagonal()],
        "field_disc": A.disc,
        "e_plus": _vec(ep),
        "e_minus": _vec(em),
        "idempotent": [ep * ep == ep, em * em == em],
        "eigenvalue": _fmt(eig),
        "eigenvectors_hold": [ep * vp == eig * vp, em * vm == eig * vm],
        "subalgebra_idempotents": len(idems),
        "subalgebra_law": t_law.to_dict(),
        "same_law_as_t1": same_law,
    }


# even code of length 3


def symmetric_matrix_check(A: CodeAlgebra, sign: int = 1) -> bool:
    """``t_i -> E_ii``, ``e^alpha -> E_ij + E_ji`` against ``(XY + sign YX)/2``."""
    n = A.n

    def image(coords):
        m = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            m[i][i] += coords[i]
        for al in A.words:
            x = coords[A.index[al]]
            if x:
                i, j = support(al, n)
                m[i][j] += x
                m[j][i] += x
        return m

    def mul(X, Y):
        return [[sum((X[i][k] * Y[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]

    for p in range(A.dim):
        for q in range(A.dim):
            X, Y = image(A.basis(p).coords), image(A.basis(q).coords)
            XY, YX = mul(X, Y), mul(Y, X)
            jordan = [[(XY[i][j] + sign * YX[i][j]) / 2 for j in range(n)] for i in range(n)]
            if image((A.basis(p) * A.basis(q)).coords) != jordan:
                return False
    return True


def even3_axes(A: CodeAlgebra):
    toral = [A.t(i) for i in range(A.n)]
    small = [x for al in A.words for x in small_idempotents(A, al)]
    vs = [0b000, 0b100, 0b010, 0b001]
    smaps = [smap_idempotent(A, A.code, v) for v in vs]
    return toral, small, smaps


def run_even3(bound: int = 512) -> dict:
    code = codes.even_weight_code(3)
    A = build_algebra(code, constant_params(code, mpq(1, 2), mpq(1, 2), 1))
    toral, small, smaps = even3_axes(A)
    law = jordan_law(mpq(1, 2))
    axes = toral + small + smaps
    data = [axis_data(A, x, law, toral=i if i < A.n else None) for i, x in enumerate(axes)]
    all_v = {smap_idempotent(A, code, v).coords for v in range(8)}
    taus = [d[3] for d in data]
    big = axis_orbit(A, axes, bound=bound, involutions=taus)
    nine = axis_orbit(A, axes[:9], bound=bound, involutions=taus[:9])
    form = frobenius_form(A)
    return {
        "dim": A.dim,
        "nondegenerate": bool(is_nondegenerate(A)),
        "unital": identity_element(A) is not None,
        "simple": is_simple(A).simple,
        "gram_diagonal": [_fmt(x) for x in form.diagonal()],
        "small_idempotents": [_vec(x) for x in small],
        "smap_idempotents": [_vec(x) for x in smaps],
        "smap_distinct_over_all_v": len(all_v),
        "idempotent": all(x * x == x for x in axes),
        "spectra": [_dims(d[0]) for d in data],
        "jordan_half": [d[2] == law for d in data],
        "primitive": [d[1].primitive for d in data],
        "symmetric_matrices": symmetric_matrix_check(A, 1),
        "commutator_product": symmetric_matrix_check(A, -1),
        "orbit_13": str(big),
        "orbit_9": str(nine),
        "generation": str(axial_generation_check(A, small)),
    }


# extended Hamming code


def hamming_setup():
    code = codes.extended_hamming_code()
    A = build_algebra(code, constant_params(code, mpq(1, 4), mpq(1, 2), 1))
    reps = codes.coset_reps(code)
    odd = [smap_idempotent(A, code, v) for v in reps if weight(v) % 2]
    even = [smap_idempotent(A, code, v) for v in reps if weight(v) % 2 == 0]
    toral = [A.t(i) for i in range(A.n)]
    return A, toral, odd, even


def is_torus(xs) -> bool:
    return all(x * x == x for x in xs) and all(
        not (xs[i] * xs[j]) for i in range(len(xs)) for j in range(i + 1, len(xs))
    )


def run_hamming8() -> dict:
    A, toral, odd, even = hamming_setup()
    code = A.code
    law = jordan_law(mpq(1, 4))
    axes = toral + odd + even
    data = [axis_data(A, x, law, toral=i if i < A.n else None, verify=False) for i, x in enumerate(axes)]
    taus = [d[3] for d in data]
    orbit = axis_orbit(A, axes, involutions=taus)
    tori = [toral, odd, even]
    swaps = []
    for k, tau in enumerate(taus):
        act = torus_action(tau, tori)
        home = 0 if k < 8 else (1 if k < 16 else 2)
        others = [t for t in range(3) if t != home]
        swaps.append(act is not None and act[home] == home and act[others[0]] == others[1])
    form = frobenius_form(A)
    G = full_group(A)
    kind = codes.classify_constant_weight(code)
    t = A.t_word(code.ones)
    return {
        "dim": A.dim,
        "nondegenerate": bool(is_nondegenerate(A)),
        "unital": identity_element(A) == t,
        "simple": is_simple(A).simple,
        "classification": repr(kind),
        "projective": codes.is_projective(code),
        "gram_toral": sorted({_fmt(x) for x in form.lambda_toral}),
        "gram_codeword": sorted({_fmt(x) for x in form.lambda_codeword.values()}),
        "form_associative": verify_associative(A, form)[0],
        "smap_lambda_mu": [_fmt(odd[0].coords[0]), _fmt(odd[0].coords[A.n])],
        "tori": [is_torus(T) for T in tori],
        "tori_sum_to_identity": [sum(T[1:], T[0]) == t for T in tori],
        "axes": len(axes),
        "spectra": sorted({json.dumps(_dims(d[0])) for d in data}),
        "primitive": all(d[1].primitive for d in data),
        "jordan_quarter": all(d[2] == law for d in data),
        "orbit": str(orbit),
        "involution_swaps_other_tori": [sum(swaps[:8]), sum(swaps[8:])],
        "span_rank": rank([list(x.coords) for x in axes], A.dim),
        "generation": str(axial_generation_check(A, axes)),
        "miyamoto_order": G.miyamoto.order,
        "miyamoto_kernel_is_code": G.miyamoto.kernel == code,
        "aut_order": len(G.automorphisms),
        "group_order": G.order,
    }


RUNNERS = {"f2sq": run_f2sq, "even3": run_even3, "hamming8": run_hamming8}


def golden(name: str) -> dict:
    text = resources.files("codealg").joinpath("golden", f"{name}.json").read_text()
    return json.loads(text)


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def check_fixture(name: str) -> dict:
    """Run the named example and compare with its golden file."""
    if name not in RUNNERS:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(NAMES)}")
    got = RUNNERS[name]()
    want = golden(name)
    if got != want:
        diff = "".join(
            difflib.unified_diff(dumps(want).splitlines(True), dumps(got).splitlines(True), "golden", "computed")
        )
        raise FixtureMismatch(name, diff)
    return got
