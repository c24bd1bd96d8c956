from __future__ import annotations

from pathlib import Path

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from codealg import codes
from codealg.algebra import MissingParam
from codealg.codes import DependentRows
from codealg.io import ParseError, format_code, parse_code_text, parse_params_text, read_code, read_params
from codealg.scalar import surd

HAMMING_TEXT = """# extended Hamming code
8 4
11110000
11001100  # trailing comment
10101010

11111111
"""


def test_parse_hamming():
    assert parse_code_text(HAMMING_TEXT) == codes.extended_hamming_code()


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("3\n101\n", 1, 1),
        ("3 1\n1x1\n", 2, 2),
        ("3 1\n  10\n", 2, 3),
        ("3 1\n101\n011\n", 3, 1),
        ("3 2\n101\n", 2, 1),
        ("", 1, 1),
    ],
)
def test_code_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_code_text(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_dependent_rows_in_file():
    with pytest.raises(DependentRows):
        parse_code_text("4 3\n1100\n0011\n1111\n")


@st.composite
def codes_with_rows(draw):
    n = draw(st.integers(1, 10))
    gens = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=5))
    return codes.span(gens, n)


@given(codes_with_rows())
def test_format_round_trip(C):
    assert parse_code_text(format_code(C)) == C


def test_params_with_overrides():
    C = codes.even_weight_code(3)
    text = "a = 1/2\nb = 1/2\nc = 1   # constant base\nd = 5\na[2,011] = 3/4\nb[011,101] = -2\nc[3,011] = 1/2+1/4*sqrt(5)\n"
    p, d = parse_params_text(text, C)
    assert d == 5
    assert p.a_(1, 0b011) == mpq(3, 4)
    assert p.a_(2, 0b011) == mpq(1, 2)
    assert p.b_(0b101, 0b011) == -2
    assert p.c_(2, 0b011) == surd(mpq(1, 2), mpq(1, 4), 5)


@pytest.mark.parametrize(
    "text, line",
    [
        ("a = 1\nb = 1\n", 1),
        ("a = 1\nb = 1\nc = x\n", 3),
        ("a = 1\nb = 1\nc = 1\nd = 4\n", 4),
        ("a = 1\nb = 1\nc = 1\na[9,011] = 1\n", 4),
        ("a = 1\nb = 1\nc = 1\nq = 1\n", 4),
    ],
)
def test_params_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_params_text(text, codes.even_weight_code(3))
    assert info.value.line == line


def test_override_outside_domain():
    with pytest.raises(MissingParam):
        parse_params_text("a = 1\nb = 1\nc = 1\na[1,011] = 2\n", codes.even_weight_code(3))


def test_data_files(tmp_path):
    data = Path(__file__).resolve().parent.parent / "data"
    H = read_code(data / "hamming8.code")
    assert H == codes.extended_hamming_code()
    p, d = read_params(data / "hamming8.params", H)
    assert d == 1 and p.constant_triple() == (mpq(1, 4), mpq(1, 2), 1)
    target = tmp_path / "h.code"
    target.write_text(format_code(H))
    assert read_code(target) == H
