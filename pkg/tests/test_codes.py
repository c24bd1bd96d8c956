from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codealg import codes
from codealg.codes import (
    DependentRows,
    EmptyCStar,
    LengthMismatch,
    NotConstantWeight,
    ReedMullerJuxtaposition,
    SimplexJuxtaposition,
    TooLarge,
    automorphism_group,
    classify_constant_weight,
    code_from_generators,
    coset_reps,
    dot,
    dual_code,
    is_constant_weight,
    is_projective,
    nonconstant_words,
    permute_word,
    split_by_dot,
    support_intersection_criterion,
    weight,
)


@st.composite
def small_codes(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=4))
    return codes.span(gens, n)


def brute_dual(code):
    return {v for v in range(1 << code.n) if all(dot(v, w) == 0 for w in code.words)}


def brute_aut(code):
    words = set(code.words)
    return {
        p
        for p in itertools.permutations(range(code.n))
        if {permute_word(w, p, code.n) for w in words} == words
    }


def test_hamming_from_generators():
    C = codes.extended_hamming_code()
    assert C.size == 16
    assert len(nonconstant_words(C)) == 14
    assert {weight(w) for w in C.nonconstant} == {4}


def test_even3_from_generators():
    C = code_from_generators(["011", "101"])
    assert [C.bits(w) for w in C.words] == ["000", "011", "101", "110"]
    assert [C.bits(w) for w in nonconstant_words(C)] == ["011", "101", "110"]


def test_full_space_from_two_rows():
    C = code_from_generators(["11", "10"])
    assert C == codes.full_space(2)
    assert len(C.nonconstant) == 2


def test_dependent_rows_reports_a_dependency():
    with pytest.raises(DependentRows) as info:
        code_from_generators(["1100", "0011", "1111"])
    assert set(info.value.dependency) == {0, 1, 2}


def test_zero_row_is_dependent():
    with pytest.raises(DependentRows):
        code_from_generators(["000", "101"])


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        code_from_generators(["101", "11"])


def test_zero_code_has_no_cstar():
    assert nonconstant_words(codes.zero_code(3)) == []
    with pytest.raises(EmptyCStar):
        is_constant_weight(codes.zero_code(3))


def test_split_even3_by_100():
    C = codes.even_weight_code(3)
    c0, c1 = split_by_dot(C, 0b100)
    assert [C.bits(w) for w in c0] == ["000", "011"]
    assert [C.bits(w) for w in c1] == ["101", "110"]


def test_split_hamming_by_odd_word():
    C = codes.extended_hamming_code()
    for v in range(256):
        if weight(v) % 2:
            c0, c1 = split_by_dot(C, v)
            assert len(c0) == len(c1) == 8


@given(small_codes(), st.integers(0, 127))
def test_split_is_a_balanced_partition(C, v):
    v &= C.ones
    c0, c1 = split_by_dot(C, v)
    assert sorted(c0 + c1) == list(C.words)
    assert codes.span(c0, C.n).size == len(c0)
    if c1:
        assert len(c0) == len(c1)
    if v == 0:
        assert c1 == []


def test_dual_examples():
    H = codes.extended_hamming_code()
    assert dual_code(H) == H
    assert set(dual_code(codes.even_weight_code(3)).words) == {0b000, 0b111}
    assert dual_code(codes.full_space(4)).words == (0,)


@given(small_codes())
def test_dual_matches_enumeration(C):
    D = dual_code(C)
    assert set(D.words) == brute_dual(C)
    assert D.k == C.n - C.k
    assert dual_code(D) == C


@pytest.mark.parametrize(
    "code, w",
    [
        (codes.extended_hamming_code(), 4),
        (codes.even_weight_code(3), 2),
        (code_from_generators(["1100", "0011"]), 2),
    ],
)
def test_constant_weight_examples(code, w):
    assert is_constant_weight(code) == (True, w)


def test_not_constant_weight():
    assert is_constant_weight(code_from_generators(["1100", "0111"])) == (False, None)


def test_projective_examples():
    assert is_projective(codes.extended_hamming_code())
    assert is_projective(codes.even_weight_code(3))
    assert not is_projective(codes.juxtapose(codes.even_weight_code(3), 2))


def test_projective_agrees_with_support_criterion_exhaustively():
    checked = 0
    for n in range(1, 6):
        seen = set()
        for gens in itertools.combinations(range(1, 1 << n), 2):
            C = codes.span(gens, n)
            if C in seen:
                continue
            seen.add(C)
            if len(C.support) == n:
                assert is_projective(C) == support_intersection_criterion(C)
                checked += 1
    assert checked > 50


@given(small_codes(max_n=8))
@settings(max_examples=60)
def test_projective_agrees_with_support_criterion_random(C):
    if len(C.support) == C.n:
        assert is_projective(C) == support_intersection_criterion(C)


def test_classify_examples():
    assert classify_constant_weight(codes.even_weight_code(3)) == SimplexJuxtaposition(m=1, r=2)
    doubled = codes.juxtapose(codes.even_weight_code(3), 2)
    assert classify_constant_weight(doubled) == SimplexJuxtaposition(m=2, r=2)
    assert classify_constant_weight(codes.extended_hamming_code()) == ReedMullerJuxtaposition(m=1, r=3)


def test_classify_rejects_mixed_weights():
    with pytest.raises(NotConstantWeight):
        classify_constant_weight(code_from_generators(["1100", "0111"]))


@pytest.mark.parametrize(
    "kind",
    [SimplexJuxtaposition(1, 2), SimplexJuxtaposition(2, 2), SimplexJuxtaposition(1, 3), ReedMullerJuxtaposition(1, 2), ReedMullerJuxtaposition(2, 2), ReedMullerJuxtaposition(1, 3)],
)
def test_classification_round_trips(kind):
    C = codes.build_juxtaposition(kind)
    assert is_constant_weight(C)[0]
    assert classify_constant_weight(C) == kind
    rng = random.Random(kind.m * 10 + kind.r)
    perm = list(range(C.n))
    rng.shuffle(perm)
    P = C.permuted(perm)
    got = classify_constant_weight(P)
    assert got == kind
    assert codes.build_juxtaposition(got).weight_distribution() == P.weight_distribution()


def test_automorphism_examples():
    assert len(automorphism_group(codes.extended_hamming_code())) == 1344
    assert len(automorphism_group(codes.even_weight_code(3))) == 6
    assert automorphism_group(codes.full_space(1)) == [(0,)]


def test_automorphism_bound():
    with pytest.raises(TooLarge):
        automorphism_group(codes.zero_code(13))


@given(small_codes(max_n=6))
@settings(max_examples=40, deadline=None)
def test_automorphisms_match_brute_force(C):
    got = automorphism_group(C)
    assert set(got) == brute_aut(C)
    group = set(got)
    for p in got:
        assert codes.invert_perm(p) in group
        for q in got[:5]:
            assert codes.compose_perms(p, q) in group


def test_coset_rep_examples():
    assert len(coset_reps(codes.even_weight_code(3))) == 4
    assert coset_reps(codes.zero_code(3)) == [0]
    assert len(coset_reps(codes.extended_hamming_code())) == 16


@given(small_codes())
def test_coset_reps_hit_every_coset_once(C):
    reps = coset_reps(C)
    assert len(reps) == C.size
    signatures = {tuple(dot(v, w) for w in C.basis) for v in reps}
    assert len(signatures) == C.size


@given(small_codes())
def test_words_form_a_subspace(C):
    ws = set(C.words)
    assert 0 in ws
    assert all(u ^ v in ws for u in ws for v in ws)
    assert len(ws) == C.size


@given(small_codes())
def test_complement_implies_all_ones(C):
    ws = set(C.words)
    if any(w ^ C.ones in ws for w in ws):
        assert C.has_ones
