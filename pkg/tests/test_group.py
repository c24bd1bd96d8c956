from __future__ import annotations

import itertools
import random

import pytest
from conftest import algebra, even3, f2sq, hamming
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from codealg import codes, fixtures
from codealg.algebra import NotRegular, build_algebra, constant_params
from codealg.codes import dot
from codealg.group import (
    GradingFails,
    axis_orbit,
    enumerate_group,
    full_group,
    identity_map,
    miyamoto_elements,
    miyamoto_group,
    permutation_map,
    sign_map,
    torus_action,
)
from codealg.spectral import toral_involution

HALF = mpq(1, 2)
QUARTER = mpq(1, 4)


def brute_kernel(A):
    return {v for v in range(1 << A.n) if all(dot(v, w) == 0 for w in A.words)}


@pytest.mark.parametrize(
    "make, abc, order, kernel_size",
    [(hamming, (QUARTER, HALF, 1), 16, 16), (even3, (HALF, HALF, 1), 4, 2), (lambda: codes.full_space(3), (2, 3, 5), 8, 1)],
)
def test_miyamoto_examples(make, abc, order, kernel_size):
    A = algebra(make(), *abc)
    M = miyamoto_group(A)
    assert M.order == order
    assert set(M.kernel.words) == brute_kernel(A)
    assert M.kernel.size == kernel_size
    assert len(miyamoto_elements(A)) == order


def test_hamming_kernel_is_code():
    A = algebra(hamming(), QUARTER, HALF, 1)
    assert miyamoto_group(A).kernel == A.code


def test_grading_fails_when_a_is_one():
    with pytest.raises(GradingFails):
        miyamoto_group(algebra(even3(), 1, 1, 1))


def test_full_group_orders():
    assert full_group(algebra(hamming(), QUARTER, HALF, 1)).order == 21504
    assert full_group(algebra(even3(), HALF, HALF, 1)).order == 24
    C = codes.code_from_generators(["11100", "00111"])
    A = algebra(C, 2, 3, 5)
    G = full_group(A)
    assert G.order == G.miyamoto.order * len(G.automorphisms)


@pytest.mark.parametrize("gens", [["1110000", "0111100", "1000011"], ["110", "011"], ["1100", "0011"]])
def test_group_order_is_miyamoto_times_code_automorphisms(gens):
    C = codes.code_from_generators(gens)
    G = full_group(algebra(C, 2, 3, 5))
    assert G.order == G.miyamoto.order * len(codes.automorphism_group(C))


def test_irregular_params_refused():
    A = algebra(even3(), HALF, HALF, 1)
    B = build_algebra(A.code, A.params.with_overrides(a={(0, 0b110): 3}))
    with pytest.raises(NotRegular):
        full_group(B)


@pytest.mark.parametrize("make, abc", [(even3, (HALF, HALF, 1)), (f2sq, (2, 3, 5)), (lambda: codes.code_from_generators(["1100", "0011"]), (3, 2, 7))])
def test_every_group_element_is_an_automorphism(make, abc):
    A = algebra(make(), *abc)
    elems = enumerate_group(A)
    assert len({(g.perm, g.neg) for g in elems}) == full_group(A).order
    for g in elems:
        assert g.is_automorphism()
        assert g.to_linear_map().is_automorphism()


def test_sign_maps_match_toral_involutions():
    A = algebra(even3(), HALF, HALF, 1)
    for i in range(A.n):
        assert sign_map(A, codes.unit(i, A.n)).to_linear_map() == toral_involution(A, i)


@given(st.integers(0, 255), st.integers(0, 255))
@settings(max_examples=40, deadline=None)
def test_sign_maps_form_a_homomorphism(v, w):
    A = HAMMING
    assert sign_map(A, v) @ sign_map(A, w) == sign_map(A, v ^ w)
    same = sign_map(A, v) == sign_map(A, w)
    assert same == ((v ^ w) in A.code)


HAMMING = algebra(hamming(), QUARTER, HALF, 1)


def test_conjugation_relation_all_generators():
    A = HAMMING
    G = full_group(A)
    for g in G.automorphisms[::50]:
        P = permutation_map(A, g)
        for i in range(A.n):
            tau = sign_map(A, codes.unit(i, A.n))
            assert P @ tau @ P.inverse() == sign_map(A, codes.unit(g[i], A.n))


def test_miyamoto_meets_permutations_trivially():
    A = algebra(even3(), HALF, HALF, 1)
    perms = {permutation_map(A, g) for g in codes.automorphism_group(A.code)}
    signs = set(miyamoto_elements(A))
    assert perms & signs == {identity_map(A)}


def test_signed_map_algebra_matches_matrices():
    A = algebra(even3(), HALF, HALF, 1)
    rng = random.Random(3)
    elems = enumerate_group(A)
    for _ in range(30):
        g, h = rng.choice(elems), rng.choice(elems)
        assert (g @ h).to_linear_map() == g.to_linear_map() @ h.to_linear_map()
        assert (g @ g.inverse()).is_identity()
        x = A.element([mpq(rng.randint(-3, 3)) for _ in range(A.dim)])
        assert g(x) == g.to_linear_map()(x)


def test_describe():
    A = algebra(even3(), HALF, HALF, 1)
    assert identity_map(A).describe() == "()"
    assert permutation_map(A, (1, 2, 0)).describe() == "(1 2 3)"
    assert sign_map(A, 0b100).describe() == "() signs -101,110"


def test_hamming_orbit_closed():
    A, toral, odd, even = fixtures.hamming_setup()
    res = axis_orbit(A, toral + odd + even, verify=False)
    assert str(res) == "closed(24)"


def test_even3_orbits():
    A = algebra(even3(), HALF, HALF, 1)
    toral, small, smaps = fixtures.even3_axes(A)
    assert str(axis_orbit(A, toral + small, bound=512)) == "closed(9)"
    res = axis_orbit(A, toral + small + smaps, bound=14)
    assert not res.closed and res.count == 15


def test_torus_action_swaps_tori():
    A, toral, odd, even = fixtures.hamming_setup()
    tau = toral_involution(A, 0)
    act = torus_action(tau, [toral, odd, even])
    assert act == (0, 2, 1)
    assert torus_action(identity_map(A).to_linear_map(), [toral, odd, even]) == (0, 1, 2)
    assert torus_action(tau, [toral, odd[:4]]) is None
