"""Closed forms for the first four characteristic coefficients, and their inverse.

All the 1/2 and 1/3 factors are applied by exact integer division of the
assembled numerators; a nonzero remainder raises instead of rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import FamilySpec, FamilySpecError, parse_family_spec
from .graph import BasicCounts, Graph, basic_counts
from .poly import BiPoly, Poly

ALPHA = Poly([0, 1])
ONE_MINUS_ALPHA = Poly([1, -1])


class DecodeError(ValueError):
    """The polynomial is not the A_alpha-characteristic polynomial of any graph."""


@dataclass(frozen=True)
class CoeffInputs:
    n: int
    m: int
    sum_d2: int
    sum_d3: int
    t: int

    def __post_init__(self):
        problems = _invariant_problems(self.n, self.m, self.sum_d2, self.sum_d3, self.t)
        if problems:
            raise ValueError("; ".join(problems))

    @classmethod
    def from_counts(cls, c: BasicCounts) -> CoeffInputs:
        return cls(c.n, c.m, c.sum_d2, c.sum_d3, c.triangle_count)

    @classmethod
    def of(cls, g: Graph) -> CoeffInputs:
        return cls.from_counts(basic_counts(g))


def _invariant_problems(n, m, s2, s3, t) -> list[str]:
    out = []
    if min(n, m, s2, s3, t) < 0:
        out.append("negative count")
    if s2 < 2 * m:
        out.append(f"sum of squared degrees {s2} < 2m = {2 * m}")
    if (2 * m) ** 2 > n * s2:
        out.append(f"(2m)^2 = {(2 * m) ** 2} exceeds n*sum_d2 = {n * s2}")
    if s3 < s2:
        out.append(f"sum of cubed degrees {s3} < sum of squares {s2}")
    return out


def _div(p: Poly, k: int) -> Poly:
    return p.exact_div(k)


def aalpha_first_four(c: CoeffInputs) -> tuple[Poly, Poly, Poly, Poly]:
    """c_{a0}..c_{a3} as integer polynomials in alpha."""
    a, b = ALPHA, ONE_MINUS_ALPHA
    m, s2, s3, t = c.m, c.sum_d2, c.sum_d3, c.t
    c1 = a * (-2 * m)
    # 2 c2 = 4 a^2 m^2 - 2 (1-a)^2 m - a^2 s2
    c2 = _div((a ** 2) * (4 * m * m) - (b ** 2) * (2 * m) - (a ** 2) * s2, 2)
    inner = ((b ** 3) * (6 * t) - a * (b ** 2) * (6 * m * m) + a * (b ** 2) * (3 * s2)
             + (a ** 3) * (4 * m ** 3 - 3 * m * s2 + s3))
    c3 = _div(-inner, 3)
    return Poly([1]), c1, c2, c3


def a_first_four(m: int, t: int) -> tuple[int, int, int, int]:
    return 1, 0, -m, -2 * t


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def l_first_four(c: CoeffInputs) -> tuple[int, int, int, int]:
    m, s2, s3, t = c.m, c.sum_d2, c.sum_d3, c.t
    l2 = _exact(4 * m * m - 2 * m - s2, 2)
    l3 = _exact(-4 * m ** 3 + 6 * m * m + 3 * m * s2 - s3 - 3 * s2 + 6 * t, 3)
    return 1, -2 * m, l2, l3


def q_first_four(c: CoeffInputs) -> tuple[int, int, int, int]:
    m, s2, s3, t = c.m, c.sum_d2, c.sum_d3, c.t
    q2 = _exact(4 * m * m - 2 * m - s2, 2)
    q3 = -_exact(6 * t - 6 * m * m + 4 * m ** 3 + 3 * (1 - m) * s2 + s3, 3)
    return 1, -2 * m, q2, q3


def coeffs_from_traces(m: int, a, t1, t2, t3) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """c_{a0}..c_{a3} at a numeric alpha from the first three power sums of the spectrum."""
    a = Fraction(a)
    return (Fraction(1), -Fraction(t1), 2 * a * a * m * m - Fraction(t2) / 2,
            -(Fraction(t3) - 3 * a * m * t2 + 4 * a ** 3 * m ** 3) / 3)


# -- the displayed examples ----------------------------------------------------

def _poly(*coeffs) -> Poly:
    """Alpha-polynomial from coefficients listed from the highest power down; all must be integers."""
    out = []
    for c in reversed(coeffs):
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral displayed coefficient {c}")
        out.append(c.numerator)
    return Poly(out)


def family_coeffs(spec: FamilySpec | str) -> tuple[Poly, Poly, Poly, Poly]:
    """The displayed c_{a0}..c_{a3} for P_n (n >= 2), K_n, C_n (n >= 4), F_n, W_n (n >= 4), K_{a,b}.

    C_3 and W_3 = K_4 carry extra triangles the displays do not count.
    """
    spec = parse_family_spec(spec) if isinstance(spec, str) else spec
    F = Fraction
    k, p = spec.kind, spec.params
    if k == "P":
        (n,) = p
        _require(n >= 2, spec)
        return (_poly(1), _poly(-2 * (n - 1), 0),
                _poly((2 * n - 3) * (n - 2), 2 * (n - 1), -(n - 1)),
                _poly(F(-2, 3) * (2 * n - 5) * (n - 2) * (n - 3), -4 * (n - 2) ** 2,
                      2 * (n - 2) ** 2, 0))
    if k == "K" and len(p) == 1:
        (n,) = p
        _require(n >= 1, spec)
        return (_poly(1), _poly(-n * (n - 1), 0),
                _poly(F(1, 2) * n * n * (n - 1) * (n - 2), n * (n - 1), F(-1, 2) * n * (n - 1)),
                _poly(F(-1, 6) * n ** 3 * (n - 1) * (n - 2) * (n - 3), -n * n * (n - 1) * (n - 2),
                      F(1, 2) * n * (n - 1) * (n - 2) * (n + 1), F(-1, 3) * n * (n - 1) * (n - 2)))
    if k == "C":
        (n,) = p
        _require(n >= 4, spec)
        return (_poly(1), _poly(-2 * n, 0), _poly(n * (2 * n - 3), 2 * n, -n),
                _poly(F(-2, 3) * n * (n - 2) * (2 * n - 5), -4 * n * (n - 2), 2 * n * (n - 2), 0))
    if k == "F":
        (n,) = p
        _require(n >= 1, spec)
        return (_poly(1), _poly(-6 * n, 0), _poly(n * (16 * n - 7), 6 * n, -3 * n),
                _poly(F(-2, 3) * n * (40 * n - 17) * (n - 1), -2 * n * (14 * n - 5),
                      2 * n * (7 * n - 1), -2 * n))
    if k == "W":
        (n,) = p
        _require(n >= 4, spec)
        return (_poly(1), _poly(-4 * n, 0), _poly(F(1, 2) * n * (15 * n - 13), 4 * n, -2 * n),
                _poly(-n * (n - 1) * (9 * n - 16), -2 * n * (7 * n - 6), n * (7 * n - 3), -2 * n))
    if k == "K" and len(p) == 2:
        a, b = p
        _require(a >= 1 and b >= 1, spec)
        ab = a * b
        return (_poly(1), _poly(-2 * ab, 0),
                _poly(F(1, 2) * ab * (4 * ab - a - b - 2), 2 * ab, -ab),
                _poly(F(-1, 3) * ab * (4 * a * a * b * b - 3 * a * a * b - 3 * a * b * b + a * a
                                       - 6 * ab + b * b + 3 * a + 3 * b),
                      -2 * ab * (2 * ab - a - b), ab * (2 * ab - a - b), 0))
    raise FamilySpecError(f"no displayed coefficient formulas for {spec}")


def family_q_coeffs(spec: FamilySpec | str) -> tuple[int, int, int, int]:
    """The displayed q_0..q_3 (signless Laplacian) for the same families."""
    spec = parse_family_spec(spec) if isinstance(spec, str) else spec
    F = Fraction
    k, p = spec.kind, spec.params
    if k == "P":
        (n,) = p
        _require(n >= 2, spec)
        vals = (1, -2 * (n - 1), (2 * n - 3) * (n - 2), F(-2, 3) * (2 * n - 5) * (n - 2) * (n - 3))
    elif k == "K" and len(p) == 1:
        (n,) = p
        _require(n >= 1, spec)
        vals = (1, -n * (n - 1), F(1, 2) * n * n * (n - 1) * (n - 2),
                F(-1, 6) * n * (n + 1) * (n - 1) * (n - 2) ** 3)
    elif k == "C":
        (n,) = p
        _require(n >= 4, spec)
        vals = (1, -2 * n, n * (2 * n - 3), F(-2, 3) * n * (n - 2) * (2 * n - 5))
    elif k == "F":
        (n,) = p
        _require(n >= 1, spec)
        vals = (1, -6 * n, n * (16 * n - 7), F(-2, 3) * n * (40 * n * n - 57 * n + 23))
    elif k == "W":
        (n,) = p
        _require(n >= 4, spec)
        vals = (1, -4 * n, F(1, 2) * n * (15 * n - 13), -n * (9 * n * n - 25 * n + 20))
    elif k == "K" and len(p) == 2:
        a, b = p
        _require(a >= 1 and b >= 1, spec)
        ab = a * b
        vals = (1, -2 * ab, F(1, 2) * ab * (4 * ab - a - b - 2),
                F(-1, 3) * ab * (4 * a * a * b * b - 3 * a * a * b - 3 * a * b * b + a * a
                                 - 6 * ab + b * b + 3 * a + 3 * b))
    else:
        raise FamilySpecError(f"no displayed signless Laplacian formulas for {spec}")
    out = []
    for v in vals:
        v = Fraction(v)
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral displayed coefficient {v}")
        out.append(v.numerator)
    return tuple(out)


def _require(ok: bool, spec: FamilySpec):
    if not ok:
        raise FamilySpecError(f"{spec} is outside the range of the displayed formulas")


# -- decoding ------------------------------------------------------------------

@dataclass(frozen=True)
class DecodedInvariants:
    n: int
    m: int
    sum_d2: int
    sum_d3: int
    t: int
    is_regular: bool

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "sum_d2": self.sum_d2, "sum_d3": self.sum_d3,
                "triangles": self.t, "regular": self.is_regular}


def decode_invariants(p: BiPoly) -> DecodedInvariants:
    """Read n, m, sum d^2, t and sum d^3 (in that order) off c_0..c_3 and check them."""
    if p.coefficient(0) != Poly([1]):
        raise DecodeError("polynomial is not monic in x")
    n = p.n
    c1, c2, c3 = p.coefficient(1), p.coefficient(2), p.coefficient(3)
    if c1[0] != 0 or c1.degree > 1 or c1[1] % 2:
        raise DecodeError(f"c_1 = {c1} is not of the form -2*m*a")
    m = -c1[1] // 2
    # alpha^2 coefficient of c_2 is 2m^2 - m - s2/2
    s2 = 2 * (2 * m * m - m - c2[2])
    # alpha^0 coefficient of c_3 is -2t
    if c3[0] % 2:
        raise DecodeError(f"constant term of c_3 ({c3[0]}) is odd")
    t = -c3[0] // 2
    # alpha^3 coefficient of c_3 is -(1/3)(-6t - 6m^2 + 3 s2 + 4m^3 - 3m s2 + s3)
    s3 = -3 * c3[3] + 6 * t + 6 * m * m - 3 * s2 - 4 * m ** 3 + 3 * m * s2
    problems = _invariant_problems(n, m, s2, s3, t)
    if m > n * (n - 1) // 2:
        problems.append(f"m = {m} exceeds the {n * (n - 1) // 2} possible edges")
    if problems:
        raise DecodeError("; ".join(problems))
    try:
        expected = aalpha_first_four(CoeffInputs(n, m, s2, s3, t))
    except (ArithmeticError, ValueError) as exc:
        raise DecodeError(f"decoded counts are inconsistent: {exc}") from None
    for j, want in enumerate(expected):
        if j <= n and p.coefficient(j) != want:
            raise DecodeError(f"c_{j} = {p.coefficient(j)} does not match the decoded counts")
        if j > n and not want.is_zero():
            raise DecodeError(f"decoded counts predict a nonzero c_{j} beyond degree {n}")
    return DecodedInvariants(n, m, s2, s3, t, n * s2 == (2 * m) ** 2)
