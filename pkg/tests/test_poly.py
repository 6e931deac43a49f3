from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aalpha.engine import alpha_charpoly
from aalpha.families import complete, path
from aalpha.poly import (BiPoly, InexactInterpolationError, Poly, canonical_decode,
                         canonical_encode, encode_rows, fingerprint, interpolate_integer_points,
                         parse_bipoly, render_bipoly, render_uni)

from conftest import graphs

BIG = 2 ** 128
ints = st.integers(-BIG, BIG)
polys = st.lists(ints, max_size=8).map(Poly)


@st.composite
def bipolys(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    rows = [Poly([1])] + [Poly(draw(st.lists(ints, max_size=j + 1))) for j in range(1, n + 1)]
    return BiPoly(rows)


# -- ring ------------------------------------------------------------------------

@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly()
    assert p + Poly() == p and p * Poly([1]) == p


@given(polys, polys)
def test_degree_of_product(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).degree == p.degree + q.degree


@given(polys, polys, ints)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


def test_normalisation():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([Fraction(4, 2)]).coeffs == (2,)
    assert isinstance(Poly([Fraction(4, 2)]).coeffs[0], int)
    assert Poly().degree == -1
    assert Poly([0, Fraction(1, 2)]).is_integral() is False
    assert Poly([3, 1]) ** 2 == Poly([9, 6, 1])
    assert Poly([4, 6]).exact_div(2) == Poly([2, 3])
    with pytest.raises(ArithmeticError):
        Poly([4, 5]).exact_div(2)


# -- interpolation -----------------------------------------------------------------

@pytest.mark.parametrize("points, want", [
    ([(0, 5)], Poly([5])),
    ([(0, 1), (1, 3)], Poly([1, 2])),
    ([(0, 0), (1, 1), (2, 4), (3, 9)], Poly([0, 0, 1])),
    ([(-1, 2), (0, 1), (1, 2)], Poly([1, 0, 1])),
])
def test_interpolation_examples(points, want):
    assert interpolate_integer_points(points) == want


def test_interpolation_errors():
    with pytest.raises(ValueError):
        interpolate_integer_points([(1, 2), (1, 3)])
    with pytest.raises(InexactInterpolationError):
        interpolate_integer_points([(0, 0), (2, 1)])
    with pytest.raises(InexactInterpolationError):
        interpolate_integer_points([(0, 0), (1, 1), (2, 4)], degree=1)


@settings(max_examples=200)
@given(st.lists(ints, max_size=13), st.integers(-20, 20))
def test_interpolation_recovers_integer_polynomials(coeffs, start):
    p = Poly(coeffs)
    deg = max(p.degree, 0)
    nodes = range(start, start + deg + 1)
    assert interpolate_integer_points([(x, p(x)) for x in nodes], degree=deg) == p


# -- bivariate --------------------------------------------------------------------

def test_bipoly_invariants():
    with pytest.raises(ValueError):
        BiPoly([Poly([2])])
    with pytest.raises(ValueError):
        BiPoly([Poly([1]), Poly([0, 0, 1])])
    p = alpha_charpoly(complete(2))
    assert p.coefficient(5) == Poly()
    assert p.to_dict() == {(2, 0): 1, (1, 1): -2, (0, 0): -1, (0, 1): 2}


@pytest.mark.parametrize("a, want", [
    (0, Poly([-1, 0, 1])),
    (1, Poly([1, -2, 1])),
    (Fraction(1, 2), Poly([0, -1, 1])),
])
def test_eval_alpha_k2(a, want):
    assert alpha_charpoly(complete(2)).eval_alpha(a) == want


def test_render_examples():
    assert render_bipoly(alpha_charpoly(complete(2))) == "x^2 - 2*a*x + (2*a - 1)"
    assert render_bipoly(alpha_charpoly(complete(3))) == (
        "x^3 - 6*a*x^2 + (9*a^2 + 6*a - 3)*x - (18*a^2 - 12*a + 2)")
    assert render_uni(Poly([-1, 0, 1])) == "x^2 - 1"
    assert render_uni(Poly([Fraction(-1, 2), 1]), "a") == "a - 1/2"
    assert render_uni(Poly()) == "0"
    assert str(alpha_charpoly(path(1))) == "x"


@settings(max_examples=200)
@given(bipolys())
def test_render_parse_roundtrip(p):
    assert parse_bipoly(render_bipoly(p)) == p


def test_parse_printed_forms():
    a = parse_bipoly("x⁹−36αx⁸+(556α²+36α−18)x⁷")
    b = parse_bipoly("x^9 - 36*a*x^8 + (556*a^2 + 36*a - 18)*x^7")
    assert a == b
    assert a.coefficient(2) == Poly([-18, 36, 556])
    with pytest.raises(ValueError):
        parse_bipoly("x^2 + a^3")
    with pytest.raises(ValueError):
        parse_bipoly("x + ?")


# -- encoding ---------------------------------------------------------------------

@settings(max_examples=300)
@given(bipolys(max_n=9))
def test_encode_decode_roundtrip(p):
    enc = canonical_encode(p)
    assert canonical_decode(enc) == p
    assert len(fingerprint(p)) == 16


def test_encoding_ignores_row_padding():
    p = alpha_charpoly(complete(3))
    padded = [list(c.coeffs) + [0] * (4 - len(c.coeffs)) for c in p.acoeffs]
    assert encode_rows(padded) == canonical_encode(p)


@settings(max_examples=100)
@given(graphs(max_n=7), graphs(max_n=7))
def test_fingerprint_equality_tracks_polynomial_equality(g, h):
    p, q = alpha_charpoly(g), alpha_charpoly(h)
    assert (fingerprint(p) == fingerprint(q)) == (p == q)


def test_encoding_is_stable():
    # pinned bytes: magic, n=2, rows [1], [0, -2], [-1, 2] as (sign, length, magnitude)
    want = "41414231" "02" "01" "000101" "02" "0000" "010102" "02" "010101" "000102"
    assert canonical_encode(alpha_charpoly(complete(2))).hex() == want
    with pytest.raises(ValueError):
        canonical_decode(b"XXXX")
