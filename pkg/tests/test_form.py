from __future__ import annotations

import random

import pytest
from conftest import algebra, even3, exceptional_codes, f2sq, hamming, random_full_support_code, random_rational
from gmpy2 import mpq

from codealg import codes
from codealg.algebra import build_algebra, constant_params, induced_automorphism, is_nondegenerate
from codealg.codes import automorphism_group
from codealg.form import (
    ConditionOneFails,
    ConditionTwoFails,
    Degenerate,
    GramForm,
    brute_force_forms,
    eigenspace_orthogonality,
    exceptional_slots,
    frobenius_exists,
    frobenius_family,
    frobenius_form,
    g_invariance,
    is_frobenius,
    positive_definite,
    same_form_space,
    verify_associative,
)
from codealg.group import miyamoto_elements
from codealg.linalg import matmul
from codealg.scalar import UnorderedField, surd
from codealg.smap import enumerate_smap, small_idempotents
from codealg.spectral import eigen_decompose, toral_peirce

HALF = mpq(1, 2)
QUARTER = mpq(1, 4)


def test_even3_form():
    A = algebra(even3(), HALF, HALF, 1)
    form = frobenius_form(A)
    assert form.diagonal() == [1, 1, 1, 2, 2, 2]
    assert verify_associative(A, form) == (True, None)
    assert positive_definite(form)


def test_hamming_form():
    A = algebra(hamming(), QUARTER, HALF, 1)
    form = frobenius_form(A)
    assert set(form.diagonal()[8:]) == {4}
    assert len(form.diagonal()[8:]) == 14


def test_form_scales_with_weights():
    A = algebra(even3(), HALF, HALF, 1)
    form = frobenius_form(A, [mpq(3)] * 3)
    assert form.diagonal() == [3, 3, 3, 6, 6, 6]


def test_condition_one_witness():
    A = algebra(even3(), HALF, HALF, 1)
    with pytest.raises(ConditionOneFails) as info:
        frobenius_form(A, [1, 2, 1])
    assert info.value.witness[2] in A.words


def test_condition_two_witness():
    A = algebra(even3(), HALF, HALF, 1)
    B = build_algebra(A.code, A.params.with_overrides(b={(0b011, 0b101): 3}))
    with pytest.raises(ConditionTwoFails):
        frobenius_form(B)
    assert not frobenius_exists(B)


def test_degenerate_refused():
    C = codes.code_from_generators(["0110", "0011"])
    with pytest.raises(Degenerate):
        frobenius_form(algebra(C, 1, 1, 1))


def test_identity_gram_is_not_associative_on_even3():
    A = algebra(even3(), HALF, HALF, 1)
    ident = GramForm.from_matrix([[mpq(int(i == j)) for j in range(A.dim)] for i in range(A.dim)])
    ok, witness = verify_associative(A, ident)
    assert not ok and witness is not None


def test_zero_form_associates_but_is_not_frobenius():
    A = algebra(even3(), HALF, HALF, 1)
    zero = GramForm.from_matrix([[mpq(0)] * A.dim for _ in range(A.dim)])
    assert verify_associative(A, zero)[0]
    assert not is_frobenius(A, zero)


def test_exceptional_slots():
    assert set(exceptional_slots(algebra(f2sq(), 1, 1, 3))) == {(0, 0b10), (1, 0b01)}
    assert exceptional_slots(algebra(f2sq(), 2, 1, 3)) == []
    A = algebra(f2sq(), 1, 1, 3)
    form = frobenius_form(A, None, {(0, 0b10): mpq(5)})
    assert verify_associative(A, form)[0]
    assert form.matrix[0][A.index[0b10]] == 5
    with pytest.raises(ValueError):
        frobenius_form(algebra(even3(), 1, 1, 1), None, {(0, 0b110): 1})


def small_corpus():
    rng = random.Random(7)
    out = [algebra(C, rng.choice((1, 2, -1)), random_rational(rng), random_rational(rng)) for C in exceptional_codes(4)]
    for _ in range(25):
        C = random_full_support_code(rng, rng.randint(2, 4))
        if C.n + len(C.nonconstant) > 6:
            continue
        base = constant_params(C, 1, 1, 1)
        if rng.random() < 0.5:
            p = constant_params(C, random_rational(rng), random_rational(rng), random_rational(rng))
        else:
            p = base.with_overrides(
                a={k: random_rational(rng) for k in base.a},
                c={k: random_rational(rng) for k in base.c},
                b={k: random_rational(rng) for k in base.b},
            )
        out.append(build_algebra(C, p))
    return [A for A in out if A.dim <= 6 and is_nondegenerate(A)]


CORPUS = small_corpus()


@pytest.mark.parametrize("A", CORPUS, ids=lambda A: f"{A.code!r}")
def test_family_matches_brute_force(A):
    brute = brute_force_forms(A)
    family = frobenius_family(A)
    assert same_form_space(family, brute)
    for f in family:
        assert verify_associative(A, f)[0]
    for m in brute:
        assert all(m[i][j] == m[j][i] for i in range(A.dim) for j in range(A.dim))


def test_corpus_is_varied():
    assert len(CORPUS) >= 15
    assert any(exceptional_slots(A) for A in CORPUS)
    assert any(not frobenius_exists(A) for A in CORPUS)


@pytest.mark.parametrize("make, abc", [(even3, (HALF, HALF, 1)), (f2sq, (-1, 1, -1)), (hamming, (QUARTER, HALF, 1))])
def test_eigenspaces_orthogonal(make, abc):
    A = algebra(make(), *abc)
    form = frobenius_form(A)
    for i in range(A.n):
        assert eigenspace_orthogonality(A, form, A.t(i), toral_peirce(A, i))[0]
    if make is even3:
        e, _ = small_idempotents(A, 0b011)
        assert eigenspace_orthogonality(A, form, e, eigen_decompose(A, e))[0]


def test_perturbed_form_breaks_orthogonality():
    A = algebra(even3(), HALF, HALF, 1)
    m = [list(r) for r in frobenius_form(A).matrix]
    m[0][1] = m[1][0] = mpq(1)
    bad = GramForm.from_matrix(m)
    ok, witness = eigenspace_orthogonality(A, bad, A.t(0), toral_peirce(A, 0))
    assert not ok and witness is not None


def test_g_invariance():
    A = algebra(even3(), HALF, HALF, 1)
    perms = [induced_automorphism(A, g) for g in automorphism_group(A.code)]
    assert g_invariance(A, frobenius_form(A), perms)
    B = algebra(codes.code_from_generators(["1100", "0011"]), 1, 1, 1)
    swap = induced_automorphism(B, (1, 0, 2, 3))
    uneven = frobenius_form(B, [1, 1, 2, 2])
    assert not g_invariance(B, frobenius_form(B, [1, 1, 2, 2]), [induced_automorphism(B, (2, 3, 0, 1))])
    assert g_invariance(B, uneven, [swap])
    assert g_invariance(A, frobenius_form(A), miyamoto_elements(A))


def test_definiteness():
    assert not positive_definite(frobenius_form(algebra(even3(), HALF, HALF, -1)))
    zero_diag = GramForm.from_matrix([[mpq(1), 0], [0, mpq(0)]])
    assert not positive_definite(zero_diag)
    with pytest.raises(UnorderedField):
        positive_definite(GramForm.from_matrix([[surd(1, 1, -1)]]))


@pytest.mark.parametrize(
    "code, abc, in_field",
    [
        (codes.even_weight_code(3), (HALF, HALF, 1), True),
        (codes.extended_hamming_code(), (QUARTER, HALF, 1), True),
        (codes.simplex_code(3), (mpq(2), mpq(3), mpq(5)), False),
    ],
)
def test_positive_definite_idempotents_are_self_adjoint(code, abc, in_field):
    """``G ad_x`` symmetric with ``G`` positive definite: ``ad_x`` diagonalises over the reals.

    Whether the eigenvalues lie in the working field is a separate matter; for
    the simplex case they do not, and the solver reports a residual.
    """
    A = algebra(code, *abc)
    form = frobenius_form(A)
    assert positive_definite(form)
    found = enumerate_smap(A, A.code, ("plus",))[:6]
    found += [x for al in A.words[:3] for x in small_idempotents(A, al)]
    semisimple = []
    for x in found:
        B = x.algebra
        G = [list(r) for r in form.matrix]
        M = matmul(G, B.adjoint_matrix(x))
        assert all(M[i][j] == M[j][i] for i in range(B.dim) for j in range(B.dim))
        semisimple.append(eigen_decompose(B, x).semisimple)
    assert all(semisimple) == in_field
