"""Dense matrices over exact rationals or floats, with minor machinery.

Matrices are immutable.  A matrix whose entries are all ``int``/``Fraction``
runs on the exact backend; any float entry switches the whole matrix to the
float backend (mixed entries coerce to float).  Row/column indices on
:class:`Matrix` methods are 0-based Python indices; the index-set functions
(:func:`minor`, :func:`submatrix`, :func:`ksubsets`) speak the 1-based,
strictly increasing convention used throughout the public API.

Determinants on the exact backend use fraction-free Bareiss elimination after
clearing denominators row by row; minors of all orders come from a dynamic
program that expands each order-k minor along its last row using the order
k-1 table, which is far cheaper than independent eliminations when a caller
needs every minor of every order.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError, SingularityError
from .scalars import (
    DEFAULT_POLICY,
    Scalar,
    TolerancePolicy,
    as_fraction,
    is_exact_scalar,
)

IndexSet = tuple[int, ...]


class Matrix:
    """Immutable dense matrix with an exact or float entry domain."""

    __slots__ = ("rows", "cols", "_entries", "_exact")

    def __init__(self, entries: Iterable[Iterable[Scalar]]):
        data = tuple(tuple(row) for row in entries)
        if not data or not data[0]:
            raise InputError("matrix must have at least one row and one column")
        width = len(data[0])
        for row in data:
            if len(row) != width:
                raise InputError("ragged rows: all rows must have equal length")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, Fraction, float)):
                    raise InputError(f"entry {x!r} is not a supported scalar")
        exact = all(is_exact_scalar(x) for row in data for x in row)
        if not exact:
            data = tuple(tuple(float(x) for x in row) for row in data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_entries", data)
        object.__setattr__(self, "_exact", exact)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Matrix is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self._exact

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def zero(self) -> Scalar:
        return 0 if self._exact else 0.0

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self._entries[i][j]

    def row_tuple(self, i: int) -> tuple[Scalar, ...]:
        return self._entries[i]

    def col_tuple(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self._entries)

    def to_lists(self) -> list[list[Scalar]]:
        return [list(row) for row in self._entries]

    def entry_scale(self) -> float:
        """Max |entry|, used as the scale argument of tolerance tests."""
        return max(abs(float(x)) for row in self._entries for x in row)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Matrix":
        if n < 1:
            raise InputError("identity needs n >= 1")
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(values: Sequence[Scalar]) -> "Matrix":
        n = len(values)
        if n < 1:
            raise InputError("diagonal needs at least one value")
        return Matrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence[Scalar]]) -> "Matrix":
        if not columns:
            raise InputError("need at least one column")
        n = len(columns[0])
        return Matrix([[col[i] for col in columns] for i in range(n)])

    # -- algebra ---------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError(
                f"shape mismatch for product: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        bt = list(zip(*other._entries))
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in bt]
                for row in self._entries
            ]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._entries, other._entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._entries, other._entries)
            ]
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self._entries])

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix([[c * x for x in row] for row in self._entries])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._entries)))

    def apply(self, vector: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vector) != self.cols:
            raise InputError("vector length must equal the column count")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self._entries)

    def map_entries(self, fn: Callable[[Scalar], Scalar]) -> "Matrix":
        return Matrix([[fn(x) for x in row] for row in self._entries])

    def to_float(self) -> "Matrix":
        return Matrix([[float(x) for x in row] for row in self._entries])

    def to_exact(self) -> "Matrix":
        """Exact view; float entries convert via their binary expansion."""
        if self._exact:
            return self
        return Matrix([[as_fraction(x) for x in row] for row in self._entries])

    # -- comparison ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                a == b
                for r1, r2 in zip(self._entries, other._entries)
                for a, b in zip(r1, r2)
            )
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def approx_equal(
        self, other: "Matrix", policy: TolerancePolicy | None = None
    ) -> bool:
        if self.rows != other.rows or self.cols != other.cols:
            return False
        p = policy or DEFAULT_POLICY
        scale = max(self.entry_scale(), other.entry_scale(), 1.0)
        return all(
            p.is_zero(float(a) - float(b), scale)
            for r1, r2 in zip(self._entries, other._entries)
            for a, b in zip(r1, r2)
        )

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self._entries
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def _require_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError("shape mismatch")


# -- index sets ----------------------------------------------------------


def index_set(indices: Iterable[int], bound: int) -> IndexSet:
    """Validate a 1-based, strictly increasing index tuple within [1, bound]."""
    t = tuple(indices)
    if not t:
        raise InputError("index set must be nonempty")
    prev = 0
    for i in t:
        if not isinstance(i, int) or isinstance(i, bool):
            raise InputError(f"index {i!r} is not an integer")
        if i <= prev:
            raise InputError(f"indices must be strictly increasing, got {t}")
        prev = i
    if t[-1] > bound:
        raise InputError(f"index {t[-1]} exceeds bound {bound}")
    return t


def ksubsets(n: int, k: int) -> tuple[IndexSet, ...]:
    """All 1-based k-subsets of [1, n] in lexicographic order."""
    if not 1 <= k <= n:
        raise InputError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    return tuple(itertools.combinations(range(1, n + 1), k))


def submatrix(m: Matrix, row_set: Iterable[int], col_set: Iterable[int]) -> Matrix:
    rs = index_set(row_set, m.rows)
    cs = index_set(col_set, m.cols)
    return Matrix([[m[i - 1, j - 1] for j in cs] for i in rs])


# -- determinants ---------------------------------------------------------


def _det_exact(m: Matrix) -> Fraction:
    """Fraction-free Bareiss determinant after per-row denominator clearing."""
    n = m.rows
    a: list[list[int]] = []
    scale = Fraction(1)
    for i in range(n):
        row = [as_fraction(x) for x in m.row_tuple(i)]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        scale *= den
        a.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update: exact integer division by the previous pivot
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1]) / scale


def _det_float(m: Matrix, policy: TolerancePolicy) -> float:
    n = m.rows
    a = [list(map(float, m.row_tuple(i))) for i in range(n)]
    scale = max(m.entry_scale(), 1.0)
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if policy.is_zero(a[p][k], scale):
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        inv = 1.0 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f == 0.0:
                continue
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return det


def det(m: Matrix, policy: TolerancePolicy | None = None) -> Scalar:
    """Determinant; exact input gives an exact Fraction."""
    if not m.is_square:
        raise InputError("determinant requires a square matrix")
    if m.is_exact:
        return _det_exact(m)
    return _det_float(m, policy or DEFAULT_POLICY)


def minor(
    m: Matrix,
    row_set: Iterable[int],
    col_set: Iterable[int],
    policy: TolerancePolicy | None = None,
) -> Scalar:
    """Determinant of the submatrix on 1-based index sets of equal size."""
    rs = index_set(row_set, m.rows)
    cs = index_set(col_set, m.cols)
    if len(rs) != len(cs):
        raise InputError("minor requires equally sized row and column sets")
    return det(submatrix(m, rs, cs), policy)


def minor_levels(
    m: Matrix, max_order: int | None = None
) -> Iterator[tuple[int, dict[tuple[IndexSet, IndexSet], Scalar]]]:
    """Yield (k, table of all order-k minors), for k = 1, 2, ....

    Each order-k minor is expanded along its last row against the order k-1
    table.  Square matrices only.  Callers may stop iterating early; nothing
    beyond the consumed level is computed.
    """
    if not m.is_square:
        raise InputError("minor tables require a square matrix")
    n = m.rows
    top = n if max_order is None else min(max_order, n)
    level: dict[tuple[IndexSet, IndexSet], Scalar] = {
        ((i,), (j,)): m[i - 1, j - 1]
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    if top >= 1:
        yield 1, level
    for k in range(2, top + 1):
        nxt: dict[tuple[IndexSet, IndexSet], Scalar] = {}
        for rset in itertools.combinations(range(1, n + 1), k):
            r_last = rset[-1]
            r_head = rset[:-1]
            row = m.row_tuple(r_last - 1)
            for cset in itertools.combinations(range(1, n + 1), k):
                acc = m.zero
                for pos, c in enumerate(cset):
                    entry = row[c - 1]
                    if entry == 0:
                        continue
                    sub = level[(r_head, cset[:pos] + cset[pos + 1 :])]
                    term = entry * sub
                    # cofactor sign for position (k, pos+1)
                    if (k + pos + 1) % 2 == 0:
                        acc += term
                    else:
                        acc -= term
                nxt[(rset, cset)] = acc
        level = nxt
        yield k, level


def compound(m: Matrix, k: int, policy: TolerancePolicy | None = None) -> Matrix:
    """Order-k multiplicative compound: minors on lexicographic k-subsets."""
    if not m.is_square:
        raise InputError("compound requires a square matrix")
    if not 1 <= k <= m.rows:
        raise InputError(f"compound order must lie in [1, {m.rows}], got {k}")
    subsets = ksubsets(m.rows, k)
    table: dict[tuple[IndexSet, IndexSet], Scalar] = {}
    for order, lvl in minor_levels(m, k):
        if order == k:
            table = lvl
    return Matrix([[table[(r, c)] for c in subsets] for r in subsets])


# -- rank, inverses, nullspace --------------------------------------------


def _echelon_exact(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place forward elimination; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m: Matrix, policy: TolerancePolicy | None = None) -> int:
    if m.is_exact:
        rows = [[as_fraction(x) for x in m.row_tuple(i)] for i in range(m.rows)]
        _, pivots = _echelon_exact(rows)
        return len(pivots)
    p = policy or DEFAULT_POLICY
    scale = max(m.entry_scale(), 1.0)
    a = [list(map(float, m.row_tuple(i))) for i in range(m.rows)]
    r = 0
    for c in range(m.cols):
        piv = max(range(r, m.rows), key=lambda i: abs(a[i][c]), default=None)
        if piv is None or p.is_zero(a[piv][c], scale):
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1.0 / a[r][c]
        for i in range(r + 1, m.rows):
            f = a[i][c] * inv
            for j in range(c, m.cols):
                a[i][j] -= f * a[r][j]
        r += 1
        if r == m.rows:
            break
    return r


def inverse(m: Matrix, policy: TolerancePolicy | None = None) -> Matrix:
    """Matrix inverse; raises SingularityError when no inverse exists."""
    if not m.is_square:
        raise InputError("inverse requires a square matrix")
    n = m.rows
    if m.is_exact:
        aug = [
            [as_fraction(x) for x in m.row_tuple(i)]
            + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
        _, pivots = _echelon_exact(aug)
        if pivots != list(range(n)):
            raise SingularityError("matrix is singular")
        return Matrix([row[n:] for row in aug])
    p = policy or DEFAULT_POLICY
    scale = max(m.entry_scale(), 1.0)
    a = [
        list(map(float, m.row_tuple(i)))
        + [1.0 if j == i else 0.0 for j in range(n)]
        for i in range(n)
    ]
    for c in range(n):
        piv = max(range(c, n), key=lambda i: abs(a[i][c]))
        if p.is_zero(a[piv][c], scale):
            raise SingularityError("matrix is numerically singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1.0 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0.0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix([row[n:] for row in a])


def transpose_inverse(m: Matrix, policy: TolerancePolicy | None = None) -> Matrix:
    """The map M -> (M^T)^{-1}, an involutive group automorphism."""
    return inverse(m, policy).transpose()


def solve(m: Matrix, rhs: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Exact solve of a square system; raises SingularityError if singular."""
    if not m.is_square:
        raise InputError("solve requires a square matrix")
    n = m.rows
    if len(rhs) != n:
        raise InputError("right-hand side length mismatch")
    aug = [
        [as_fraction(x) for x in m.row_tuple(i)] + [as_fraction(rhs[i])]
        for i in range(n)
    ]
    _, pivots = _echelon_exact(aug)
    if pivots != list(range(n)):
        raise SingularityError("matrix is singular")
    return tuple(row[n] for row in aug)


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Exact kernel basis (possibly empty) of an exact matrix."""
    rows = [[as_fraction(x) for x in m.row_tuple(i)] for i in range(m.rows)]
    reduced, pivots = _echelon_exact(rows)
    free = [c for c in range(m.cols) if c not in pivots]
    basis: list[tuple[Fraction, ...]] = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def reversal_permutation(n: int) -> Matrix:
    """Permutation matrix sending basis vector e_i to e_{n+1-i}."""
    return Matrix(
        [[1 if j == n - 1 - i else 0 for j in range(n)] for i in range(n)]
    )
