"""Joint solvability of two count-array equations.

Two row pairs of one candidate matrix impose their inner-product
equations simultaneously, so the case analysis needs the common zero
set of two count arrays, not just each one alone. In one variable that
is a polynomial gcd. In two variables both real parts are linear in the
three cosines (cos t1, cos t2, cos(t1-t2)); when the two linear forms
are independent they cut a line, the cosine-compatibility quadric
(x4 - x2*x3)^2 = (1-x2^2)(1-x3^2) reduces that line to finitely many
candidates, and each candidate is accepted or rejected exactly against
both imaginary parts. The verdict is therefore a proof, not a sampling
claim: NoCommon and SimpleOnlyCommon enumerate every common point.

real_part_system exposes the line-meets-quadric elimination for the
recurring special family where one equation reduces to x_j + 2*x_k = 0
and the other spreads the coefficients {1,1,2,2} over a constant and
the three cosines. Squaring the compatibility relation introduces
spurious roots, so every root carries range and branch annotations
instead of a bare yes/no.

h2_alphabet_relations collects the constraints a 2x2 unimodular
orthogonality pattern forces on a three-entry alphabet {1,a,b} and
solves the pairwise combinations exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy
from sympy import Rational, Symbol

from .arrays import (
    STRUCTURES,
    CountArray,
    Relation,
    is_simple,
    original_equation,
)
from .exactnum import root_of_unity
from .solve import (
    LaurentPoly,
    SolutionSet,
    has_nonsimple_point,
    solve_unit_circle,
)

_Z = Symbol("z")
_T = Symbol("t", real=True)

_CONJ_STRUCT = STRUCTURES["CONJ"]
_GENERIC_STRUCT = STRUCTURES["GENERIC"]

_SIMPLE_COSINES = (
    sympy.Integer(-1),
    Rational(-1, 2),
    sympy.Integer(0),
    Rational(1, 2),
    sympy.Integer(1),
)

# cos(2*pi*turn) for the rational cosines above, used to rebuild exact
# turns from candidate cosine values; the sine sign picks the half.
_COS_TO_TURN = {
    sympy.Integer(1): Fraction(0),
    Rational(1, 2): Fraction(1, 6),
    sympy.Integer(0): Fraction(1, 4),
    Rational(-1, 2): Fraction(1, 3),
    sympy.Integer(-1): Fraction(1, 2),
}


class UnsupportedPair(NotImplementedError):
    """The pair falls outside the implemented elimination shapes."""


def _eq(lhs, rhs=0) -> bool:
    """Exact equality of two sympy constants, refusing to guess.

    False is only returned when the difference is provably nonzero;
    a difference that is numerically tiny but symbolically undecided
    raises instead of silently dropping a candidate.
    """
    diff = sympy.expand(lhs - rhs)
    if diff == 0:
        return True
    verdict = diff.equals(0)
    if verdict is None:
        simplified = sympy.simplify(diff)
        verdict = simplified == 0 or simplified.equals(0) is True
    if not verdict and abs(diff.evalf(40)) < sympy.Float(10) ** -30:
        raise ArithmeticError(f"undecided equality near zero: {diff}")
    return bool(verdict)


def _sign_of(value) -> int:
    if _eq(value, 0):
        return 0
    return 1 if value.evalf(30) > 0 else -1


def _in_unit_interval(value) -> bool:
    return bool(value >= -1) and bool(value <= 1)


# --- one-variable pairs -------------------------------------------------


def _laurent_to_intpoly(p: LaurentPoly):
    low = min(e for (e,) in p.coeffs)
    deg = max(e for (e,) in p.coeffs) - low
    coeffs = [0] * (deg + 1)
    for (e,), c in p.coeffs.items():
        coeffs[deg - (e - low)] = c
    return sympy.Poly(coeffs, _Z)


def _intpoly_to_laurent(poly, variable: str) -> LaurentPoly:
    coeffs = {}
    for monom, c in poly.terms():
        coeffs[(monom[0],)] = int(c)
    return LaurentPoly((variable,), coeffs)


def _normalized(p: LaurentPoly) -> LaurentPoly:
    """Sign-normalized copy so p and -p compare as the same constraint."""
    if p.is_zero():
        return p
    lead = p.coeffs[max(p.coeffs)]
    return -p if lead < 0 else p


def _common_one_variable(pA: LaurentPoly, pB: LaurentPoly) -> "PairVerdict":
    if pA.is_zero() or pB.is_zero():
        # one constraint is vacuous, so the common set is the other's
        common = solve_unit_circle(pB if pA.is_zero() else pA)
        return _verdict_from_set(common, method="vacuous-side")
    g = sympy.gcd(_laurent_to_intpoly(pA), _laurent_to_intpoly(pB))
    g = sympy.Poly(g, _Z)
    if g.degree() == 0:
        empty = SolutionSet((), (), (), complete=True)
        return PairVerdict("NoCommon", common=empty, points=(),
                           witness=None, method="gcd")
    common = solve_unit_circle(_intpoly_to_laurent(g, pA.variables[0]))
    return _verdict_from_set(common, method="gcd")


def _verdict_from_set(common: SolutionSet, method: str) -> "PairVerdict":
    if common.is_empty():
        kind = "NoCommon"
        witness = None
    elif has_nonsimple_point(common):
        kind = "NonSimpleCommon"
        witness = None
        for ap in common.algebraic_points:
            witness = (ap.theta,)
            break
        if witness is None:
            for u in common.exact_points:
                if not is_simple(u, _CONJ_STRUCT):
                    witness = (2 * math.pi * float(u.turn),)
                    break
    else:
        kind = "SimpleOnlyCommon"
        witness = None
    return PairVerdict(kind, common=common, points=(),
                       witness=witness, method=method)


# --- two-variable pairs -------------------------------------------------


def _real_linear(p: LaurentPoly):
    """Coefficients (c, c1, c2, c12) of Re p = c + c1*x2 + c2*x3 + c12*x4."""
    c0 = c1 = c2 = c12 = 0
    for (e1, e2), c in p.coeffs.items():
        if (e1, e2) == (0, 0):
            c0 += c
        elif e2 == 0 and abs(e1) == 1:
            c1 += c
        elif e1 == 0 and abs(e2) == 1:
            c2 += c
        elif (e1, e2) in ((1, -1), (-1, 1)):
            c12 += c
        else:
            raise UnsupportedPair(f"unexpected product exponent {(e1, e2)}")
    return c0, c1, c2, c12


def _imag_linear(p: LaurentPoly):
    """Coefficients (u, v, w) of Im p = u*s1 + v*s2 + w*sin(t1 - t2)."""
    u = v = w = 0
    for (e1, e2), c in p.coeffs.items():
        if (e1, e2) == (1, 0):
            u += c
        elif (e1, e2) == (-1, 0):
            u -= c
        elif (e1, e2) == (0, 1):
            v += c
        elif (e1, e2) == (0, -1):
            v -= c
        elif (e1, e2) == (1, -1):
            w += c
        elif (e1, e2) == (-1, 1):
            w -= c
        elif (e1, e2) != (0, 0):
            raise UnsupportedPair(f"unexpected product exponent {(e1, e2)}")
    return u, v, w


def _imag_vanishes(imcoeffs, x2, x3, s1, s2) -> bool:
    # Im p = s1*(u + w*x3) + s2*(v - w*x2) after expanding sin(t1-t2)
    u, v, w = imcoeffs
    expr = s1 * (u + w * x3) + s2 * (v - w * x2)
    return _eq(expr, 0)


@dataclass(frozen=True)
class CommonPoint:
    """One exact common solution of a two-variable pair.

    Cosines are exact sympy numbers; the sign slots give the sign of
    each sine, 0 when the sine vanishes. ``thetas`` is the float
    witness angle pair.
    """

    cos_a: object
    sign_a: int
    cos_b: object
    sign_b: int
    simple: bool

    @property
    def thetas(self) -> tuple:
        t1 = math.acos(max(-1.0, min(1.0, float(self.cos_a))))
        t2 = math.acos(max(-1.0, min(1.0, float(self.cos_b))))
        if self.sign_a < 0:
            t1 = 2 * math.pi - t1
        if self.sign_b < 0:
            t2 = 2 * math.pi - t2
        return t1, t2


def _sine(sign: int, cos_value):
    if sign == 0:
        return sympy.Integer(0)
    return sign * sympy.sqrt(1 - cos_value**2)


def _candidate_simple(x2, sa, x3, sb) -> bool:
    """Exact test of the ten settled relations at one candidate point."""
    s1 = _sine(sa, x2)
    s2 = _sine(sb, x3)
    checks = (
        (x2 - x3, s1 - s2),                        # a = b
        (x2 - x3, s1 + s2),                        # a = conj(b)
        (x2 + x3, s1 + s2),                        # a = -b
        (x2 + x3, s1 - s2),                        # a = -conj(b)
        (x2 - (2 * x3**2 - 1), s1 - 2 * x3 * s2),  # a = b^2
        (x2 + (2 * x3**2 - 1), s1 + 2 * x3 * s2),  # a = -b^2
        (x3 - (2 * x2**2 - 1), s2 - 2 * x2 * s1),  # b = a^2
        (x3 + (2 * x2**2 - 1), s2 + 2 * x2 * s1),  # b = -a^2
        (x2 + 1, s1),                              # a = -1
        (x3 + 1, s2),                              # b = -1
    )
    return any(_eq(re, 0) and _eq(im, 0) for re, im in checks)


def _solve_real_line(pA: LaurentPoly, pB: LaurentPoly):
    """Parametrize the common zero line of both real parts, if a line.

    Returns the (x2, x3, x4) coordinates as exact linear expressions in
    one parameter, or None when the two linear forms are dependent.
    """
    LA = _real_linear(pA)
    LB = _real_linear(pB)
    rows = (LA[1:], LB[1:])
    consts = (LA[0], LB[0])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
        if det == 0:
            continue
        k = 3 - i - j
        rhs = [
            -consts[r] - rows[r][k] * _T
            for r in range(2)
        ]
        xi = sympy.expand((rhs[0] * rows[1][j] - rhs[1] * rows[0][j]) / det)
        xj = sympy.expand((rhs[1] * rows[0][i] - rhs[0] * rows[1][i]) / det)
        coords = [None, None, None]
        coords[i] = xi
        coords[j] = xj
        coords[k] = _T
        return tuple(coords)
    return None


def _line_candidates(coords, imA, imB):
    """Exact common points on one real-part line.

    Returns None when the line lies inside the compatibility quadric,
    which happens exactly when one coordinate is pinned to +-1; the
    caller then switches to the substitution route.
    """
    x2e, x3e, x4e = coords
    quadric = sympy.expand(
        (x4e - x2e * x3e) ** 2 - (1 - x2e**2) * (1 - x3e**2)
    )
    if quadric == 0:
        return None
    poly = sympy.Poly(quadric, _T)
    points = []
    if poly.degree() == 0:
        return points
    for root in poly.real_roots():
        values = [sympy.simplify(c.subs(_T, root)) for c in coords]
        if any(not _in_unit_interval(v) for v in values):
            continue
        x2v, x3v, x4v = values
        prod = x4v - x2v * x3v
        sa_options = (0,) if _eq(x2v**2, 1) else (1, -1)
        sb_options = (0,) if _eq(x3v**2, 1) else (1, -1)
        for sa in sa_options:
            for sb in sb_options:
                s1 = _sine(sa, x2v)
                s2 = _sine(sb, x3v)
                if not _eq(prod, s1 * s2):
                    continue
                if not _imag_vanishes(imA, x2v, x3v, s1, s2):
                    continue
                if not _imag_vanishes(imB, x2v, x3v, s1, s2):
                    continue
                points.append(CommonPoint(
                    cos_a=x2v, sign_a=sa,
                    cos_b=x3v, sign_b=sb,
                    simple=_candidate_simple(x2v, sa, x3v, sb),
                ))
    return points


def _common_two_variable(pA: LaurentPoly, pB: LaurentPoly) -> "PairVerdict":
    coords = _solve_real_line(pA, pB)
    if coords is None:
        return _difference_route(pA, pB)
    points = _line_candidates(coords, _imag_linear(pA), _imag_linear(pB))
    if points is None:
        return _ruled_line_route(coords, pA, pB)
    deduped = _dedup(points)
    for pt in deduped:
        t1, t2 = pt.thetas
        za = complex(math.cos(t1), math.sin(t1))
        zb = complex(math.cos(t2), math.sin(t2))
        for p in (pA, pB):
            if abs(p.evaluate(za, zb)) > 1e-9:
                raise AssertionError("common point fails re-verification")
    return _verdict_from_points(deduped, method="real-line-quadric")


def _dedup(points) -> tuple:
    deduped = []
    for pt in points:
        if not any(
            pt.sign_a == q.sign_a and pt.sign_b == q.sign_b
            and _eq(pt.cos_a, q.cos_a) and _eq(pt.cos_b, q.cos_b)
            for q in deduped
        ):
            deduped.append(pt)
    return tuple(deduped)


def _verdict_from_points(points, method: str) -> "PairVerdict":
    if not points:
        kind, witness = "NoCommon", None
    else:
        nonsimple = [pt for pt in points if not pt.simple]
        if nonsimple:
            kind, witness = "NonSimpleCommon", nonsimple[0].thetas
        else:
            kind, witness = "SimpleOnlyCommon", None
    return PairVerdict(kind, common=None, points=tuple(points),
                       witness=witness, method=method)


def _difference_route(pA: LaurentPoly, pB: LaurentPoly) -> "PairVerdict":
    """Fallback when the real parts are proportional.

    The difference of the two equations must vanish on any common
    solution; when the difference involves a single variable group its
    unimodular roots pin that group, and values +-1 keep the
    substituted equations over the integers. Anything richer is
    refused rather than approximated.
    """
    d = pA - pB
    exps = list(d.coeffs)
    if all(e2 == 0 for _, e2 in exps):
        group = "a"
        line = LaurentPoly(("a",), {(e1,): c for (e1, _), c in d.coeffs.items()})
    elif all(e1 == 0 for e1, _ in exps):
        group = "b"
        line = LaurentPoly(("b",), {(e2,): c for (_, e2), c in d.coeffs.items()})
    elif all(e1 == -e2 for e1, e2 in exps):
        group = "a/b"
        line = LaurentPoly(("u",), {(e1,): c for (e1, _), c in d.coeffs.items()})
    else:
        raise UnsupportedPair(
            "difference of the pair involves more than one variable group"
        )
    sol = solve_unit_circle(line)
    if sol.algebraic_points or any(
        u.turn not in (Fraction(0), Fraction(1, 2)) for u in sol.exact_points
    ):
        raise UnsupportedPair(
            "difference roots leave the integers; not implemented"
        )
    allowed = {u.turn for u in sol.exact_points}
    points = []
    family = None
    for value, turn in ((1, Fraction(0)), (-1, Fraction(1, 2))):
        if turn not in allowed:
            continue
        batch = _substitution_points(group, value, pA, pB)
        if batch is None:
            family = _family_verdict(group, value)
            if family.kind == "NonSimpleCommon":
                return family
            continue
        points.extend(batch)
    verdict = _verdict_from_points(_dedup(points), method="difference")
    if family is None or verdict.kind == "NonSimpleCommon":
        return verdict
    return family


def _substitute_letter(p: LaurentPoly, group: str, value: int) -> LaurentPoly:
    """Residue of p under a = value, b = value, or a = value*b."""
    acc = {}
    for (e1, e2), c in p.coeffs.items():
        if group == "a":
            key, factor = (e2,), value ** abs(e1)
        elif group == "b":
            key, factor = (e1,), value ** abs(e2)
        else:  # a identified with value * b
            key, factor = (e1 + e2,), value ** abs(e1)
        acc[key] = acc.get(key, 0) + c * factor
    return LaurentPoly(("x",), acc)


def _substitution_points(group: str, value: int, pA, pB):
    """Common points once one letter is pinned or the letters identified.

    Returns None when both residues vanish identically, meaning the
    whole one-parameter family is common.
    """
    rA = _substitute_letter(pA, group, value)
    rB = _substitute_letter(pB, group, value)
    if rA.is_zero() and rB.is_zero():
        return None
    if rA.is_zero() or rB.is_zero():
        shared = solve_unit_circle(rB if rA.is_zero() else rA)
    else:
        g = sympy.Poly(
            sympy.gcd(_laurent_to_intpoly(rA), _laurent_to_intpoly(rB)), _Z)
        if g.degree() == 0:
            return []
        shared = solve_unit_circle(_intpoly_to_laurent(g, "x"))
    turn = Fraction(0) if value == 1 else Fraction(1, 2)
    points = []
    for u in shared.exact_points:
        tx = u.turn
        if group == "a":
            ta, tb = turn, tx
        elif group == "b":
            ta, tb = tx, turn
        else:
            ta, tb = (tx + turn) % 1, tx
        points.append(_point_from_turns(ta, tb))
    for ap in shared.algebraic_points:
        points.extend(_algebraic_line_points(group, value, ap))
    return points


def _family_verdict(group: str, value: int) -> "PairVerdict":
    """Both residues vanished: a full circle of common solutions.

    Pinning a letter to -1 or identifying a = +-b are settled
    relations, so those families are simple throughout; a letter
    pinned to +1 is not, and any point with the free letter away from
    the settled values witnesses a non-simple common solution.
    """
    if value == -1 or group == "a/b":
        return PairVerdict("SimpleOnlyCommon", common=None, points=(),
                           witness=None, method="substitution-family")
    witness = (0.0, 2 * math.pi / 3) if group == "a" else (2 * math.pi / 3, 0.0)
    return PairVerdict("NonSimpleCommon", common=None, points=(),
                       witness=witness, method="substitution-family")


def _ruled_line_route(coords, pA, pB) -> "PairVerdict":
    """The real-part line sits inside the compatibility quadric.

    Every line inside x2^2 + x3^2 + x4^2 - 2 x2 x3 x4 = 1 pins one
    coordinate to +-1 (substituting a constant x2 = c turns the
    quadric into (x3 - c*x4)^2 = (1 - c^2)(1 - x4^2)-free identity
    only at c = +-1, and symmetrically), so the pinned coordinate
    converts to an exact letter substitution.
    """
    for idx, group in ((0, "a"), (1, "b"), (2, "a/b")):
        expr = coords[idx]
        if getattr(expr, "free_symbols", set()):
            continue
        for value in (1, -1):
            if _eq(expr, value):
                pts = _substitution_points(group, value, pA, pB)
                if pts is None:
                    return _family_verdict(group, value)
                return _verdict_from_points(_dedup(pts), method="ruled-line")
    raise UnsupportedPair(
        "line inside the compatibility quadric with no pinned coordinate"
    )


def _algebraic_line_points(group: str, value: int, ap):
    cosv = ap.cos_value
    fixed = sympy.Integer(value)
    out = []
    for sign in (1, -1):
        if group == "a":
            pt = CommonPoint(fixed, 0, cosv, sign,
                             _candidate_simple(fixed, 0, cosv, sign))
        elif group == "b":
            pt = CommonPoint(cosv, sign, fixed, 0,
                             _candidate_simple(cosv, sign, fixed, 0))
        else:
            # a = +-b with the same algebraic b: the identification is
            # itself one of the settled relations, hence simple
            pt = CommonPoint(value * cosv, sign if value == 1 else -sign,
                             cosv, sign, True)
        out.append(pt)
    return out


def _point_from_turns(ta: Fraction, tb: Fraction) -> CommonPoint:
    a = root_of_unity(ta.numerator, ta.denominator)
    b = root_of_unity(tb.numerator, tb.denominator)
    cos_a = sympy.simplify(
        sympy.cos(2 * sympy.pi * Rational(ta.numerator, ta.denominator)))
    cos_b = sympy.simplify(
        sympy.cos(2 * sympy.pi * Rational(tb.numerator, tb.denominator)))
    half = Fraction(1, 2)
    sign_a = 0 if ta in (Fraction(0), half) else (1 if ta < half else -1)
    sign_b = 0 if tb in (Fraction(0), half) else (1 if tb < half else -1)
    return CommonPoint(cos_a, sign_a, cos_b, sign_b,
                       is_simple((a, b), _GENERIC_STRUCT))


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of intersecting two count-array equations.

    ``kind`` is NoCommon, SimpleOnlyCommon or NonSimpleCommon. One
    variable fills ``common`` with the exact shared solution set; two
    variables fill ``points`` with the finitely many common points.
    ``witness`` is a float angle tuple backing a NonSimpleCommon call.
    """

    kind: str
    common: Optional[SolutionSet]
    points: tuple
    witness: Optional[tuple]
    method: str


def common_solutions(arrayA: CountArray, arrayB: CountArray) -> PairVerdict:
    """Exact common-solution verdict for two arrays of one structure.

    Raises ValueError when the two equations are the same constraint
    (equal or conjugate up to sign); comparing an equation against
    itself says nothing, and that situation is the job of the residue
    group-map analysis instead.
    """
    if arrayA.structure.name != arrayB.structure.name:
        raise ValueError("arrays belong to different structures")
    pA = original_equation(arrayA)
    pB = original_equation(arrayB)
    nA, nB = _normalized(pA), _normalized(pB)
    if nA == nB or nA == _normalized(pB.conjugate()):
        raise ValueError(
            "identical or conjugate equations; use the group-map"
            " comparison for same-constraint row pairs"
        )
    if len(pA.variables) == 1:
        return _common_one_variable(pA, pB)
    return _common_two_variable(pA, pB)


# --- the {1,1,2,2} real-part elimination ---------------------------------


@dataclass(frozen=True)
class PairedRealRoot:
    """One real root of the squared elimination, with annotations.

    ``value`` is the eliminated cosine x_k; ``partner`` the forced
    x_j = -2 x_k; ``third`` the remaining cosine recovered from the
    linear equation. ``branch_signs`` lists the signs s for which
    third == partner*value + s*sqrt((1-partner^2)(1-value^2)) holds
    exactly. Squaring made the squared identity automatic at every
    root, so the information is in the sign list and the range flags.
    """

    value: object
    partner: object
    third: object
    simple: bool
    in_range: bool
    partner_in_range: bool
    third_in_range: bool
    branch_signs: tuple

    @property
    def compatible(self) -> bool:
        return (self.in_range and self.partner_in_range
                and self.third_in_range and bool(self.branch_signs))


@dataclass(frozen=True)
class RealPartElimination:
    placement: tuple
    coefficients: tuple  # ascending powers of x_k
    all_roots: tuple     # every real root, exact
    roots: tuple         # PairedRealRoot for the roots inside [-1, 1]


def _exact_real_roots(coefficients):
    """All real roots of an integer polynomial, in radicals when cheap."""
    poly = sympy.Poly(list(reversed(coefficients)), _T)
    found = sympy.roots(poly)
    if sum(found.values()) == poly.degree():
        out = [r for r in found if r.is_real]
        return sorted(out, key=lambda r: float(r.evalf(30)))
    return list(poly.real_roots())


def real_part_system(placement) -> RealPartElimination:
    """Eliminate a cosine pair constrained by x_j = -2 x_k.

    ``placement`` = (a1, ak, aj, ai) distributes the multiset {1,1,2,2}
    over the constant and the cosines x_k, x_j, x_i of the second
    equation a1 + ak*x_k + aj*x_j + ai*x_i = 0. Substituting
    x_j = -2 x_k and squaring the compatibility relation for x_i gives
    an integer polynomial in x_k alone; the spurious roots that
    squaring lets in are flagged through the per-root annotations
    rather than silently dropped.
    """
    placement = tuple(int(v) for v in placement)
    if sorted(placement) != [1, 1, 2, 2]:
        raise ValueError("placement must arrange the multiset {1,1,2,2}")
    a1, ak, aj, ai = placement
    A, B, C = a1, ak - 2 * aj, -2 * ai
    coefficients = [
        A * A - ai * ai,
        2 * A * B,
        B * B + 2 * A * C + 5 * ai * ai,
        2 * B * C,
    ]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    all_roots = tuple(_exact_real_roots(coefficients))
    annotated = []
    for value in all_roots:
        if not _in_unit_interval(value):
            continue
        partner = sympy.expand(-2 * value)
        third = sympy.expand(-(sympy.Integer(A) + B * value) / ai)
        radicand = sympy.expand((1 - partner**2) * (1 - value**2))
        diff = sympy.expand(third - partner * value)
        signs = []
        if _sign_of(radicand) >= 0:
            radical = sympy.sqrt(radicand)
            for s in (1, -1):
                if _eq(diff, s * radical):
                    signs.append(s)
        annotated.append(PairedRealRoot(
            value=value,
            partner=partner,
            third=third,
            simple=any(_eq(value, c) for c in _SIMPLE_COSINES),
            in_range=True,
            partner_in_range=_in_unit_interval(partner),
            third_in_range=_in_unit_interval(third),
            branch_signs=tuple(signs),
        ))
    return RealPartElimination(
        placement=placement,
        coefficients=tuple(coefficients),
        all_roots=all_roots,
        roots=tuple(annotated),
    )


# --- 2x2 orthogonality constraints on {1,a,b} -----------------------------


@dataclass(frozen=True)
class AlphabetRelationReport:
    """What 2x2 unimodular orthogonality forces on an alphabet {1,a,b}.

    ``relations`` are the three constraints, one per admissible 2x2
    pattern. ``pair_solutions`` maps each unordered pattern pair (by
    1-based relation index) to the exact nondegenerate (turn_a, turn_b)
    assignments satisfying both constraints at once.
    ``degenerate_conditions`` names the collapsed alphabets excluded
    before the pattern analysis applies, and ``single_shape_empty``
    records that one pattern combined with a vanishing three-term
    column sum has no unimodular solution at all.
    """

    relations: tuple
    pair_solutions: dict
    degenerate_conditions: tuple
    single_shape_empty: bool


def h2_alphabet_relations() -> AlphabetRelationReport:
    relations = (
        Relation((0, 1), -1, (-1, 0)),  # b = -conj(a)
        Relation((0, 1), -1, (2, 0)),   # b = -a^2
        Relation((1, 0), -1, (0, 2)),   # a = -b^2
    )
    # eliminating b from each pair of constraints leaves one equation in a
    eliminations = {
        (1, 2): LaurentPoly(("a",), {(2,): 1, (-1,): -1}),  # a^2 = conj(a)
        (1, 3): LaurentPoly(("a",), {(1,): 1, (-2,): 1}),   # a = -conj(a)^2
        (2, 3): LaurentPoly(("a",), {(4,): 1, (1,): 1}),    # a = -a^4
    }
    b_from_a = {
        (1, 2): lambda ta: 2 * ta + Fraction(1, 2),         # b = -a^2
        (1, 3): lambda ta: -ta + Fraction(1, 2),            # b = -conj(a)
        (2, 3): lambda ta: 2 * ta + Fraction(1, 2),         # b = -a^2
    }
    half = Fraction(1, 2)
    pair_solutions = {}
    for key, poly in eliminations.items():
        sol = solve_unit_circle(poly)
        assert not sol.algebraic_points
        assignments = []
        for u in sol.exact_points:
            ta = u.turn
            tb = b_from_a[key](ta) % 1
            degenerate = (
                ta == 0 or tb == 0             # a or b equal to 1
                or ta == tb                    # a = b
                or ta == half or tb == half    # -1 in {a, b}
                or (ta - tb) % 1 == half       # a = -b
            )
            if not degenerate:
                assignments.append((ta, tb))
        pair_solutions[key] = tuple(sorted(assignments))
    single_shape = (
        # each relation joined with 1 + a + b = 0, the other letter gone
        LaurentPoly(("a",), {(0,): 1, (1,): 1, (-1,): -1}),  # b = -conj(a)
        LaurentPoly(("a",), {(0,): 1, (1,): 1, (2,): -1}),   # b = -a^2
        LaurentPoly(("b",), {(0,): 1, (1,): 1, (2,): -1}),   # a = -b^2
    )
    single_shape_empty = all(
        solve_unit_circle(p).is_empty() for p in single_shape
    )
    return AlphabetRelationReport(
        relations=relations,
        pair_solutions=pair_solutions,
        degenerate_conditions=("a = -b", "a = -1", "b = -1"),
        single_shape_empty=single_shape_empty,
    )
