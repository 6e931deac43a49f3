"""Exact univariate/bivariate polynomials over Z (and Q), interpolation and canonical encoding.

Byte encoding of a :class:`BiPoly` (used for fingerprints)::

    b"AAB1" | varint(n) | for j in 0..n: varint(len) integer*len

where ``len`` is the number of alpha-coefficients of ``c_j`` (lowest power
first) and each integer is a sign byte (0 for >= 0, 1 for < 0), a varint byte
length and the big-endian magnitude.  Varints are unsigned LEB128.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Sequence

import xxhash

Scalar = int | Fraction


class InexactInterpolationError(ArithmeticError):
    """The data did not come from an integer polynomial of the assumed degree."""


class Poly:
    """Immutable dense univariate polynomial; ``coeffs[k]`` is the coefficient of ``var**k``.

    Coefficients are Python ints or Fractions.  Fractions with denominator 1
    are stored as ints so that equality and hashing do not depend on how a
    value was produced.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, Fraction) else acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        return render_uni(self, "x")

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return Poly(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, k: Scalar) -> Poly:
        return Poly(k * c for c in self.coeffs)

    def exact_div(self, k: int) -> Poly:
        """Divide every coefficient by the integer ``k``, insisting the result stays integral."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"{c} is not divisible by {k}")
            out.append(q)
        return Poly(out)


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


def _lift(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly([other])
    return NotImplemented


# -- interpolation ----------------------------------------------------------

def interpolate_integer_points(points: Sequence[tuple[int, int]], degree: int | None = None) -> Poly:
    """Newton divided differences over Z; every division must be exact.

    With ``degree`` given, the divided differences beyond that order must vanish.
    """
    xs = [int(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate interpolation nodes")
    if not xs:
        return Poly()
    if degree is not None and len(xs) < degree + 1:
        raise ValueError(f"{len(xs)} points cannot determine a degree-{degree} polynomial")
    table = [int(y) for _, y in points]
    newton = [table[0]]
    for order in range(1, len(xs)):
        for i in range(len(xs) - order):
            num = table[i + 1] - table[i]
            den = xs[i + order] - xs[i]
            q, r = divmod(num, den)
            if r:
                raise InexactInterpolationError(
                    f"divided difference {num}/{den} at order {order} is not an integer")
            table[i] = q
        newton.append(table[0])
    if degree is not None and any(newton[degree + 1:]):
        raise InexactInterpolationError(f"data is not from a polynomial of degree <= {degree}")
    # expand sum_k newton[k] * prod_{i<k} (x - xs[i]) by Horner from the top
    poly = Poly([newton[-1]])
    for k in range(len(newton) - 2, -1, -1):
        poly = poly * Poly([-xs[k], 1]) + newton[k]
    return poly


# -- bivariate --------------------------------------------------------------

class BiPoly:
    """Monic polynomial in ``x`` of degree ``n`` whose coefficients are polynomials in ``a``.

    ``acoeffs[j]`` is the alpha-polynomial multiplying ``x**(n-j)``.
    """

    __slots__ = ("n", "acoeffs")

    def __init__(self, acoeffs: Sequence[Poly], check: bool = True):
        acoeffs = tuple(p if isinstance(p, Poly) else Poly(p) for p in acoeffs)
        if not acoeffs:
            raise ValueError("BiPoly needs at least the leading coefficient")
        if check:
            if acoeffs[0] != Poly([1]):
                raise ValueError("BiPoly must be monic in x")
            for j, p in enumerate(acoeffs):
                if p.degree > j:
                    raise ValueError(f"alpha-degree of c_{j} is {p.degree} > {j}")
        object.__setattr__(self, "n", len(acoeffs) - 1)
        object.__setattr__(self, "acoeffs", acoeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.acoeffs == other.acoeffs

    def __hash__(self):
        return hash(self.acoeffs)

    def __repr__(self):
        return f"BiPoly({render_bipoly(self)!r})"

    def __str__(self):
        return render_bipoly(self)

    def coefficient(self, j: int) -> Poly:
        """``c_j`` as an alpha-polynomial, zero for ``j > n``."""
        return self.acoeffs[j] if 0 <= j <= self.n else Poly()

    def eval_alpha(self, a) -> Poly:
        a = Fraction(a)
        return Poly(self.acoeffs[self.n - k](a) for k in range(self.n + 1))

    def to_dict(self) -> dict[tuple[int, int], int]:
        """``{(x_power, a_power): coefficient}`` for nonzero terms."""
        return {(self.n - j, k): c for j, p in enumerate(self.acoeffs)
                for k, c in enumerate(p.coeffs) if c}


def bipoly_eval_alpha(p: BiPoly, a) -> Poly:
    return p.eval_alpha(a)


# -- text rendering ---------------------------------------------------------

def _term(c: Scalar, var_part: str) -> str:
    """Render |c|*var_part without sign."""
    c = abs(c)
    if not var_part:
        return str(c)
    if c == 1:
        return var_part
    return f"{str(c)}*{var_part}"


def _power(var: str, k: int) -> str:
    return "" if k == 0 else var if k == 1 else f"{var}^{k}"


def _join(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def render_uni(p: Poly, var: str = "x") -> str:
    terms = [(c < 0, _term(c, _power(var, k))) for k, c in reversed(list(enumerate(p.coeffs))) if c]
    return _join(terms)


def render_bipoly(p: BiPoly) -> str:
    """Decreasing x-powers; multi-term alpha-coefficients are parenthesised.

    A parenthesised coefficient whose leading alpha-term is negative is
    written as ``- (...)`` with the negated polynomial inside.
    """
    terms = []
    for j, c in enumerate(p.acoeffs):
        if c.is_zero():
            continue
        xpart = _power("x", p.n - j)
        nz = [(k, v) for k, v in enumerate(c.coeffs) if v]
        if len(nz) == 1:
            k, v = nz[0]
            var = "*".join(s for s in (_power("a", k), xpart) if s)
            terms.append((v < 0, _term(v, var)))
        else:
            neg = c.coeffs[-1] < 0
            inner = render_uni(-c if neg else c, "a")
            terms.append((neg, f"({inner})*{xpart}" if xpart else f"({inner})"))
    return _join(terms)


_SUPER_DIGITS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_SUPERSCRIPT = re.compile("[⁰¹²³⁴⁵⁶⁷⁸⁹]+")
_TOKEN = re.compile(r"\s*(?:(\d+)|([xa])|(\^)|(\*)|([+-])|(\()|(\)))")


def parse_bipoly(text: str) -> BiPoly:
    """Parse a sum-of-products expression in ``x`` and ``a`` (``α`` is accepted for ``a``).

    Accepts the canonical rendering and the looser form used in printed
    formulas, e.g. ``x^9-36a x^8+(556a^2+36a-18)x^7``.
    """
    src = text.replace("α", "a").replace("\u2212", "-").replace("·", "*")
    src = _SUPERSCRIPT.sub(lambda m: "^" + m.group().translate(_SUPER_DIGITS), src).strip()
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {src[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastindex
        tokens.append((kind, m.group(kind)))
    terms = _Parser(tokens).parse()
    if not terms:
        raise ValueError("empty polynomial")
    n = max(xp for xp, _ in terms)
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    for (xp, ap), c in terms.items():
        if ap > n:
            raise ValueError(f"alpha power {ap} exceeds x-degree {n}")
        rows[n - xp][ap] += c
    return BiPoly([Poly(r) for r in rows])


class _Parser:
    # grammar: expr := ['+'|'-'] product (('+'|'-') product)*
    #          product := factor ('*'? factor)*
    #          factor := INT | VAR ['^' INT] | '(' expr ')'
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        out = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.i}")
        return {k: v for k, v in out.items() if v}

    def expr(self):
        total: dict = {}
        sign = 1
        if self.peek()[0] == 5:
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            for key, c in self.product().items():
                total[key] = total.get(key, 0) + sign * c
            if self.peek()[0] != 5:
                return total
            sign = -1 if self.take()[1] == "-" else 1

    def product(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == 4:
                self.take()
            elif kind not in (1, 2, 6):
                return acc
            acc = _mul_terms(acc, self.factor())

    def factor(self):
        kind, val = self.take()
        if kind == 1:
            return {(0, 0): int(val)}
        if kind == 2:
            k = 1
            if self.peek()[0] == 3:
                self.take()
                kind2, exp = self.take()
                if kind2 != 1:
                    raise ValueError("expected an integer exponent")
                k = int(exp)
            return {(k, 0) if val == "x" else (0, k): 1}
        if kind == 6:
            inner = self.expr()
            if self.take()[0] != 7:
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def _mul_terms(p, q):
    out: dict = {}
    for (x1, a1), c1 in p.items():
        for (x2, a2), c2 in q.items():
            key = (x1 + x2, a1 + a2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


# -- canonical encoding -----------------------------------------------------

_MAGIC = b"AAB1"


def _varint(v: int, out: bytearray):
    while True:
        byte = v & 0x7F
        v >>= 7
        if v:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


def _encode_int(c: int, out: bytearray):
    mag = -c if c < 0 else c
    raw = mag.to_bytes((mag.bit_length() + 7) // 8, "big")
    out.append(1 if c < 0 else 0)
    _varint(len(raw), out)
    out += raw


def encode_rows(rows: Sequence[Sequence[int]]) -> bytes:
    """Encode alpha-coefficient rows (``rows[j][k]``: coefficient of a^k in c_j).

    Trailing zeros in each row are dropped, so a dense padded row and the
    normalised ``Poly.coeffs`` of the same polynomial encode identically.
    """
    out = bytearray(_MAGIC)
    _varint(len(rows) - 1, out)
    for row in rows:
        k = len(row)
        while k and row[k - 1] == 0:
            k -= 1
        _varint(k, out)
        for c in row[:k]:
            _encode_int(c, out)
    return bytes(out)


def canonical_encode(p: BiPoly) -> bytes:
    return encode_rows([c.coeffs for c in p.acoeffs])


def _read_varint(data: bytes, pos: int) -> tuple[int, int]:
    v = shift = 0
    while True:
        byte = data[pos]
        pos += 1
        v |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return v, pos


def canonical_decode(data: bytes) -> BiPoly:
    if not data.startswith(_MAGIC):
        raise ValueError("not a canonical BiPoly encoding")
    pos = len(_MAGIC)
    n, pos = _read_varint(data, pos)
    rows = []
    for _ in range(n + 1):
        k, pos = _read_varint(data, pos)
        row = []
        for _ in range(k):
            neg = data[pos]
            length, pos = _read_varint(data, pos + 1)
            mag = int.from_bytes(data[pos:pos + length], "big")
            pos += length
            row.append(-mag if neg else mag)
        rows.append(Poly(row))
    if pos != len(data):
        raise ValueError("trailing bytes after BiPoly encoding")
    return BiPoly(rows)


def fingerprint_bytes(encoding: bytes) -> bytes:
    """128-bit XXH3 digest of an encoding."""
    return xxhash.xxh3_128_digest(encoding)


def fingerprint(p: BiPoly) -> bytes:
    return fingerprint_bytes(canonical_encode(p))
