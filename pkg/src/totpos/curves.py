"""Positive curves of flags over the circle, and convexity of moment curves.

Points of the circle are rational parameters plus a single point at
infinity (the one-point compactification of the line); cyclic order lists
finite parameters increasingly and then infinity.  Four distinct points
split into two pairs of crossing chords, and a quadruple of flags sitting
over such points is positive when some change of basis sends the first
reference flag to the standard flag, the second to the reversed flag, and
the two side flags into the open positive cell and its primed companion.
Positive diagonal rescalings never change those memberships, so the search
over bases reduces to finitely many sign classes.

The model positive curve is the osculating flag curve of the moment curve
t -> (1, t, t^2, ..., t^m); its flags come from the scaled derivative
columns, which form a unit-determinant triangular matrix.  The same moment
curve is convex: no hyperplane meets it in more than m projective points,
which is checked exactly by Sturm root counting plus a separate test at
infinity.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, InputError
from .flags import Flag, adapted_basis, flag_from_matrix, in_B_pos, in_B_pos_prime, opposed
from .linalg import Matrix, inverse, reversal_permutation
from .scalars import Scalar, as_fraction


@dataclass(frozen=True, order=False)
class CirclePoint:
    """A point of the projective line over the rationals.

    ``param`` is the affine coordinate; None encodes the point at
    infinity, which closes the circle after all finite parameters.
    """

    param: Fraction | None

    @staticmethod
    def at(value: Scalar) -> "CirclePoint":
        return CirclePoint(as_fraction(value))

    @staticmethod
    def infinity() -> "CirclePoint":
        return CirclePoint(None)

    @staticmethod
    def from_angle(degrees: Scalar) -> "CirclePoint":
        """Half-angle chart: the angle maps to tan(angle / 2).

        Right angles hit exact rational parameters; anything else takes
        the exact binary value of the float tangent.
        """
        d = as_fraction(degrees) % 360
        table = {
            Fraction(0): Fraction(0),
            Fraction(90): Fraction(1),
            Fraction(270): Fraction(-1),
        }
        if d == 180:
            return CirclePoint.infinity()
        if d in table:
            return CirclePoint(table[d])
        return CirclePoint(Fraction(math.tan(math.radians(float(d)) / 2)))

    @property
    def is_infinity(self) -> bool:
        return self.param is None

    def sort_key(self) -> tuple[int, Fraction]:
        if self.param is None:
            return (1, Fraction(0))
        return (0, self.param)

    def __str__(self) -> str:
        if self.param is None:
            return "inf"
        if self.param.denominator == 1:
            return str(self.param.numerator)
        return f"{self.param.numerator}/{self.param.denominator}"


@dataclass(frozen=True)
class DihedralQuadruple:
    """Four distinct circle points plus their crossing-chord partition."""

    points: tuple[CirclePoint, CirclePoint, CirclePoint, CirclePoint]
    pairs: tuple[frozenset, frozenset]

    def numbering_is_compatible(self) -> bool:
        """True when positions (1, 3) and (2, 4) realize the partition."""
        first = frozenset((self.points[0], self.points[2]))
        return first in self.pairs


def dihedral_partition(
    p1: CirclePoint, p2: CirclePoint, p3: CirclePoint, p4: CirclePoint
) -> DihedralQuadruple:
    """Partition four distinct points into the two pairs of crossing chords.

    In cyclic order the first and third points pair up, as do the second
    and fourth; the result records the caller's numbering unchanged.
    """
    pts = (p1, p2, p3, p4)
    if len(set(pts)) != 4:
        raise InputError("the four circle points must be distinct")
    cyc = sorted(pts, key=CirclePoint.sort_key)
    pairs = (frozenset((cyc[0], cyc[2])), frozenset((cyc[1], cyc[3])))
    return DihedralQuadruple(points=pts, pairs=pairs)


@dataclass(frozen=True)
class MomentCurve:
    """The rational normal curve t -> (1, t, t^2, ..., t^degree)."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InputError("moment curves need degree >= 1")

    @property
    def n(self) -> int:
        return self.degree + 1


def osculating_flag(curve: MomentCurve, point: CirclePoint) -> Flag:
    """Flag of scaled derivatives of the moment curve at a point.

    Column j holds the (j-1)-st derivative divided by (j-1)!, i.e. entry
    (i, j) is binomial(i-1, j-1) t^{i-j}; at infinity the chain collapses
    to spans of the trailing coordinate vectors.
    """
    n = curve.n
    if point.is_infinity:
        return Flag(reversal_permutation(n))
    t = point.param
    rows = [
        [
            (math.comb(i, j) * t ** (i - j)) if i >= j else Fraction(0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return flag_from_matrix(Matrix(rows))


class OsculatingFlagCurve:
    """Flag curve view of a moment curve."""

    def __init__(self, curve: MomentCurve):
        self.curve = curve
        self.degree = curve.degree
        self.n = curve.n

    def flag_at(self, point: CirclePoint) -> Flag:
        return osculating_flag(self.curve, point)


class TableFlagCurve:
    """Flag curve given by an explicit finite table of samples."""

    def __init__(self, entries: Mapping[CirclePoint, Flag] | Sequence[tuple[CirclePoint, Flag]]):
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        if len(items) < 4:
            raise InputError("a flag curve table needs at least four samples")
        self._table: dict[CirclePoint, Flag] = {}
        sizes = set()
        for point, flag in items:
            if point in self._table:
                raise InputError(f"duplicate sample point {point}")
            self._table[point] = flag
            sizes.add(flag.n)
        if len(sizes) != 1:
            raise InputError("all sampled flags must share one dimension")
        self.n = sizes.pop()
        self.degree = self.n - 1

    @property
    def points(self) -> tuple[CirclePoint, ...]:
        return tuple(self._table)

    def flag_at(self, point: CirclePoint) -> Flag:
        try:
            return self._table[point]
        except KeyError:
            raise InputError(f"no sample stored at point {point}") from None


def is_positive_quadruple(
    flags: Sequence[Flag],
    quadruple: DihedralQuadruple,
) -> bool:
    """Positivity of four flags in the numbering of the given quadruple.

    Flags 1 and 3 are the reference pair (they must be opposed); flags 2
    and 4 are tested for landing in the open positive cell and its primed
    companion after the change of basis adapted to the reference pair.
    All sign classes of the residual diagonal freedom are searched; the
    verdict does not depend on which compatible numbering was chosen, and
    an incompatible numbering simply fails.
    """
    if len(flags) != 4:
        raise InputError("a quadruple test needs exactly four flags")
    f1, f2, f3, f4 = flags
    n = f1.n
    if any(f.n != n for f in flags):
        raise InputError("all four flags must share one dimension")
    if any(not f.rep.is_exact for f in flags):
        raise InputError("quadruple tests require exact flag representatives")
    if len(set(quadruple.points)) != 4:
        raise InputError("quadruple points must be distinct")
    if not opposed(f1, f3):
        raise DomainError("reference flags (positions 1 and 3) must be opposed")
    w = adapted_basis(f1, f3)
    h = inverse(w)
    r2 = h @ f2.rep
    r4 = h @ f4.rep
    for signs in itertools.product((1, -1), repeat=n):
        s = Matrix.diagonal(list(signs))
        cert2 = in_B_pos(flag_from_matrix(s @ r2))
        if cert2 is None:
            continue
        cert4 = in_B_pos_prime(flag_from_matrix(s @ r4))
        if cert4 is not None:
            return True
    return False


@dataclass(frozen=True)
class CurveReport:
    """Tally of quadruple tests over a sampled flag curve."""

    degree: int
    n_points: int
    mode: str
    seed: int
    total: int
    passed: int
    failed: int
    first_failure: tuple[str, str, str, str] | None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.total > 0


def _default_points(samples: int) -> tuple[CirclePoint, ...]:
    # symmetric half-integer ladder, all distinct and exact
    return tuple(
        CirclePoint(Fraction(2 * j - (samples - 1), 2)) for j in range(samples)
    )


def is_positive_curve_sampled(
    curve,
    samples: int = 8,
    mode: str = "exhaustive",
    seed: int = 0,
    points: Sequence[CirclePoint] | None = None,
    trials: int | None = None,
) -> CurveReport:
    """Test every (or a sampled set of) cyclically ordered 4-point subset.

    ``curve`` is any object with ``degree`` and ``flag_at``;  explicit
    ``points`` win over a table's own samples, which win over a default
    ladder of ``samples`` half-integers.  Exhaustive mode checks all
    4-subsets; random mode draws ``trials`` subsets with a seeded
    generator.
    """
    if mode not in ("exhaustive", "random"):
        raise InputError(f"unknown sampling mode {mode!r}")
    if points is None:
        if isinstance(curve, TableFlagCurve):
            points = curve.points
        else:
            if samples < 4:
                raise InputError("need at least four sample points")
            points = _default_points(samples)
    pts = sorted(set(points), key=CirclePoint.sort_key)
    if len(pts) != len(points):
        raise InputError("sample points must be distinct")
    if len(pts) < 4:
        raise InputError("need at least four sample points")
    flags = {p: curve.flag_at(p) for p in pts}
    if mode == "exhaustive":
        subsets = list(itertools.combinations(range(len(pts)), 4))
    else:
        rng = random.Random(seed)
        count = trials if trials is not None else 100
        subsets = [
            tuple(sorted(rng.sample(range(len(pts)), 4))) for _ in range(count)
        ]
    passed = 0
    failed = 0
    first_failure: tuple[str, str, str, str] | None = None
    for subset in subsets:
        quad_points = tuple(pts[i] for i in subset)
        quadruple = dihedral_partition(*quad_points)
        ok = is_positive_quadruple([flags[p] for p in quad_points], quadruple)
        if ok:
            passed += 1
        else:
            failed += 1
            if first_failure is None:
                first_failure = tuple(str(p) for p in quad_points)
    return CurveReport(
        degree=curve.degree,
        n_points=len(pts),
        mode=mode,
        seed=seed,
        total=len(subsets),
        passed=passed,
        failed=failed,
        first_failure=first_failure,
    )


# -- hyperplane sections of the moment curve --------------------------------


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deriv(p: list[Fraction]) -> list[Fraction]:
    return [p[i] * i for i in range(1, len(p))]


def _poly_divmod(
    a: list[Fraction], b: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    r = _poly_trim(list(a))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv_lead = 1 / b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        factor = r[-1] * inv_lead
        q[shift] = factor
        for i in range(len(b)):
            r[shift + i] -= factor * b[i]
        r.pop()
        _poly_trim(r)
    return _poly_trim(q), r


def sturm_distinct_real_roots(coeffs: Sequence[Scalar]) -> int:
    """Number of distinct real roots, by one Sturm chain over the rationals.

    Ascending coefficient order.  Works for non-square-free input: a
    common factor scales whole chain evaluations without changing sign
    variation counts.  The zero polynomial is rejected.
    """
    p = _poly_trim([as_fraction(x) for x in coeffs])
    if not p:
        raise InputError("the zero polynomial has no root count")
    if len(p) == 1:
        return 0
    chain = [p]
    current = _poly_trim(_poly_deriv(p))
    while current:
        chain.append(current)
        if len(current) == 1:
            break
        _, rem = _poly_divmod(chain[-2], chain[-1])
        current = [-x for x in rem]

    def variations(at_plus_infinity: bool) -> int:
        signs = []
        for poly in chain:
            s = 1 if poly[-1] > 0 else -1
            if not at_plus_infinity and (len(poly) - 1) % 2:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)


def hyperplane_intersection_count(
    curve: MomentCurve, coeffs: Sequence[Scalar]
) -> int:
    """Distinct projective intersection points of a hyperplane with the curve.

    ``coeffs`` lists the hyperplane against the coordinates 1, t, ...,
    t^degree.  Finite intersections are the distinct real roots of the
    dot-product polynomial; the point at infinity is an extra intersection
    exactly when the top coefficient vanishes.
    """
    n = curve.n
    if len(coeffs) != n:
        raise InputError(f"hyperplane needs {n} coefficients")
    h = [as_fraction(x) for x in coeffs]
    if all(x == 0 for x in h):
        raise InputError("hyperplane coefficients must not all vanish")
    finite = sturm_distinct_real_roots(h)
    at_infinity = 1 if h[-1] == 0 else 0
    return finite + at_infinity


@dataclass(frozen=True)
class ConvexReport:
    """Outcome of sampling hyperplane sections of a moment curve."""

    degree: int
    trials: int
    seed: int
    coeff_bound: int
    max_count: int

    @property
    def ok(self) -> bool:
        return self.max_count <= self.degree


def convex_curve_check(
    curve: MomentCurve,
    trials: int = 1000,
    seed: int = 0,
    coeff_bound: int = 9,
) -> ConvexReport:
    """Sample random integer hyperplanes and verify the convexity bound.

    No hyperplane may meet the curve in more than ``degree`` distinct
    projective points.
    """
    if trials < 1:
        raise InputError("need at least one trial")
    if coeff_bound < 1:
        raise InputError("coefficient bound must be positive")
    rng = random.Random(seed)
    n = curve.n
    worst = 0
    for _ in range(trials):
        h = [Fraction(rng.randint(-coeff_bound, coeff_bound)) for _ in range(n)]
        while all(x == 0 for x in h):
            h = [Fraction(rng.randint(-coeff_bound, coeff_bound)) for _ in range(n)]
        worst = max(worst, hyperplane_intersection_count(curve, h))
    return ConvexReport(
        degree=curve.degree,
        trials=trials,
        seed=seed,
        coeff_bound=coeff_bound,
        max_count=worst,
    )
