"""Factorization of totally positive matrices into elementary bidiagonals.

Every totally positive matrix factors uniquely as

    (product of lower elementary matrices over a fixed word)
    * (positive diagonal)
    * (product of upper elementary matrices over the same word),

where the word is a fixed reduced sequence of row indices of length
n(n-1)/2.  Two words are supported: the standard word 1,2,...,n-1,
1,...,n-2, ..., 1 and its reversed companion n-1,...,1, n-1,...,2, ...,
n-1.  Synthesis multiplies generators; factorization runs a Gauss
decomposition into L * diag * U followed by a greedy peel of each
unitriangular factor, stripping one generator at a time from the right
(standard word) or the left (reversed word).  The peel rules below are
exact on the image of the parameter map and detect non-membership by a
failed final identity check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import (
    ConditioningError,
    DomainError,
    InputError,
    SingularityError,
)
from .linalg import Matrix, det, reversal_permutation
from .scalars import DEFAULT_POLICY, Scalar, TolerancePolicy, sign_of

WordKind = Literal["standard", "reversed"]
Side = Literal["lower", "upper"]


def standard_word(n: int) -> tuple[int, ...]:
    """1, 2, ..., n-1, 1, ..., n-2, ..., 1; length n(n-1)/2."""
    if n < 1:
        raise InputError("word size needs n >= 1")
    out: list[int] = []
    for top in range(n - 1, 0, -1):
        out.extend(range(1, top + 1))
    return tuple(out)


def reversed_word(n: int) -> tuple[int, ...]:
    """n-1, ..., 1, n-1, ..., 2, ..., n-1; length n(n-1)/2."""
    if n < 1:
        raise InputError("word size needs n >= 1")
    out: list[int] = []
    for low in range(1, n):
        out.extend(range(n - 1, low - 1, -1))
    return tuple(out)


def word_for(n: int, kind: WordKind) -> tuple[int, ...]:
    if kind == "standard":
        return standard_word(n)
    if kind == "reversed":
        return reversed_word(n)
    raise InputError(f"unknown word kind {kind!r}")


def _standard_blocks(n: int) -> tuple[tuple[int, int], ...]:
    """(letter, block) pairs for the standard word; block j holds 1..n-j."""
    out: list[tuple[int, int]] = []
    for j in range(1, n):
        out.extend((i, j) for i in range(1, n - j + 1))
    return tuple(out)


def _reversed_blocks(n: int) -> tuple[tuple[int, int], ...]:
    """(letter, block) pairs for the reversed word; block j holds n-1..j."""
    out: list[tuple[int, int]] = []
    for j in range(1, n):
        out.extend((i, j) for i in range(n - 1, j - 1, -1))
    return tuple(out)


def gen_x(i: int, a: Scalar, n: int) -> Matrix:
    """Lower elementary generator: identity plus ``a`` at entry (i+1, i)."""
    if not 1 <= i <= n - 1:
        raise InputError(f"generator index must lie in [1, {n - 1}], got {i}")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i][i - 1] = a
    return Matrix(rows)


def gen_y(i: int, a: Scalar, n: int) -> Matrix:
    """Upper elementary generator: identity plus ``a`` at entry (i, i+1)."""
    if not 1 <= i <= n - 1:
        raise InputError(f"generator index must lie in [1, {n - 1}], got {i}")
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i] = a
    return Matrix(rows)


def _validate_params(
    values: Sequence[Scalar], strict: bool, label: str
) -> tuple[Scalar, ...]:
    out = tuple(values)
    for v in out:
        if strict and not v > 0:
            raise InputError(f"{label} parameters must be strictly positive, got {v}")
        if not strict and v < 0:
            raise InputError(f"{label} parameters must be nonnegative, got {v}")
    return out


@dataclass(frozen=True)
class TPParameters:
    """Factorization data: word, lower/upper parameters and the diagonal.

    ``strict=True`` demands every lower/upper parameter be positive, which
    is exactly the totally positive stratum; ``strict=False`` allows zeros
    and lands in the nonnegative closure.  The diagonal is positive in
    either state.
    """

    n: int
    word: tuple[int, ...]
    a: tuple[Scalar, ...]
    t: tuple[Scalar, ...]
    b: tuple[Scalar, ...]
    strict: bool = True

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise InputError("parameters need n >= 1")
        expected = n * (n - 1) // 2
        if len(self.word) != expected:
            raise InputError(
                f"word length must be n(n-1)/2 = {expected}, got {len(self.word)}"
            )
        for i in self.word:
            if not 1 <= i <= n - 1:
                raise InputError(f"word letter {i} outside [1, {n - 1}]")
        if len(self.a) != expected or len(self.b) != expected:
            raise InputError("parameter tuples must match the word length")
        if len(self.t) != n:
            raise InputError("diagonal must have n entries")
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "a", _validate_params(self.a, self.strict, "lower"))
        object.__setattr__(self, "b", _validate_params(self.b, self.strict, "upper"))
        for v in self.t:
            if not v > 0:
                raise InputError(f"diagonal entries must be positive, got {v}")
        object.__setattr__(self, "t", tuple(self.t))


@dataclass(frozen=True)
class UniParams:
    """One-sided factorization data over a word, with declared strictness."""

    n: int
    word: tuple[int, ...]
    side: Side
    c: tuple[Scalar, ...]
    strict: bool

    def __post_init__(self) -> None:
        if self.side not in ("lower", "upper"):
            raise InputError(f"side must be 'lower' or 'upper', got {self.side!r}")
        if len(self.c) != len(self.word):
            raise InputError("parameter tuple must match the word length")
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "c", _validate_params(self.c, self.strict, self.side))


def synthesize_uni(p: UniParams) -> Matrix:
    gen = gen_x if p.side == "lower" else gen_y
    result = Matrix.identity(p.n)
    for i, c in zip(p.word, p.c):
        result = result @ gen(i, c, p.n)
    return result


def synthesize(p: TPParameters) -> Matrix:
    """Multiply out lower generators, the diagonal, then upper generators.

    Strict parameters yield a totally positive matrix; relaxed parameters
    yield an invertible totally nonnegative one.
    """
    lower = synthesize_uni(UniParams(p.n, p.word, "lower", p.a, p.strict))
    upper = synthesize_uni(UniParams(p.n, p.word, "upper", p.b, p.strict))
    return lower @ Matrix.diagonal(list(p.t)) @ upper


# -- Gauss decomposition ---------------------------------------------------


def _is_zero(x: Scalar, exact: bool, policy: TolerancePolicy, scale: float) -> bool:
    if exact:
        return x == 0
    return policy.is_zero(float(x), scale)


def gauss_ldu(
    m: Matrix, policy: TolerancePolicy | None = None
) -> tuple[Matrix, tuple[Scalar, ...], Matrix] | None:
    """Pivot-free M = L * diag(d) * U with L, U unitriangular.

    Exists iff every leading principal minor is nonzero; returns None
    otherwise.  No row exchanges: the decomposition must respect the
    triangular structure, so a vanishing pivot is a genuine obstruction.
    """
    if not m.is_square:
        raise InputError("decomposition requires a square matrix")
    p = policy or DEFAULT_POLICY
    n = m.rows
    exact = m.is_exact
    scale = max(m.entry_scale(), 1.0)
    a = [list(m.row_tuple(i)) for i in range(n)]
    lower = [[1 if i == j else (0 if exact else 0.0) for j in range(n)] for i in range(n)]
    diag: list[Scalar] = []
    for k in range(n):
        pivot = a[k][k]
        if _is_zero(pivot, exact, p, scale):
            return None
        diag.append(pivot)
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            lower[i][k] = f
            if f != 0:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    upper = [
        [
            (a[i][j] / diag[i]) if j > i else (1 if i == j else (0 if exact else 0.0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return Matrix(lower), tuple(diag), Matrix(upper)


# -- peels ------------------------------------------------------------------


def _check_identity(
    a: list[list[Scalar]], exact: bool, policy: TolerancePolicy, scale: float
) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(n):
            target = 1 if i == j else 0
            if exact:
                if a[i][j] != target:
                    return False
            elif not policy.is_zero(float(a[i][j]) - target, scale):
                return False
    return True


def _peel_ratio(
    num: Scalar, den: Scalar, exact: bool, policy: TolerancePolicy, scale: float
) -> Scalar | None:
    """num/den with domain-aware zero handling; None marks non-membership."""
    if _is_zero(den, exact, policy, scale):
        if _is_zero(num, exact, policy, scale):
            return 0 if exact else 0.0
        if not exact:
            raise ConditioningError(
                "peel pivot fell inside the zero band while the stripped "
                "entry did not; refusing to divide"
            )
        return None
    return num / den


def _peel_lower_standard(
    m: Matrix, policy: TolerancePolicy
) -> tuple[Scalar, ...] | None:
    """Strip lower generators right-to-left along the standard word.

    When the rightmost remaining generator has letter i and lives in block
    j, writing the product as X * gen_x(i, c) forces the identity
    Q[i+j, i] = c * Q[i+j, i+1]: column i of the block-(< j) prefix cannot
    reach row i+j, while column i+1 can.  The ratio at that fixed position
    recovers c even when other parameters vanish (0/0 resolves to 0); the
    generator is then removed by a column operation, and a final identity
    check rejects matrices outside the image of the parameter map.
    """
    n = m.rows
    letters = _standard_blocks(n)
    exact = m.is_exact
    scale = max(m.entry_scale(), 1.0)
    a = [list(m.row_tuple(i)) for i in range(n)]
    out: list[Scalar] = [0 if exact else 0.0] * len(letters)
    for s in range(len(letters) - 1, -1, -1):
        i, j = letters[s]
        r = i + j - 1  # 0-based row i+j
        c = _peel_ratio(a[r][i - 1], a[r][i], exact, policy, scale)
        if c is None:
            return None
        out[s] = c
        if c != 0:
            for row in range(n):
                a[row][i - 1] -= c * a[row][i]
    if not _check_identity(a, exact, policy, scale):
        return None
    return tuple(out)


def _peel_lower_reversed(
    m: Matrix, policy: TolerancePolicy
) -> tuple[Scalar, ...] | None:
    """Strip lower generators left-to-right along the reversed word.

    Mirror of the standard peel: the leftmost remaining generator with
    letter i in block j satisfies Q[i+1, j] = c * Q[i, j] once the earlier
    blocks have been stripped, because rows i and i+1 are zero to the left
    of column j by then.  Row operations remove each generator in turn.
    """
    n = m.rows
    letters = _reversed_blocks(n)
    exact = m.is_exact
    scale = max(m.entry_scale(), 1.0)
    a = [list(m.row_tuple(i)) for i in range(n)]
    out: list[Scalar] = [0 if exact else 0.0] * len(letters)
    for s in range(len(letters)):
        i, j = letters[s]
        c = _peel_ratio(a[i][j - 1], a[i - 1][j - 1], exact, policy, scale)
        if c is None:
            return None
        out[s] = c
        if c != 0:
            for col in range(n):
                a[i][col] -= c * a[i - 1][col]
    if not _check_identity(a, exact, policy, scale):
        return None
    return tuple(out)


def _is_unitriangular(m: Matrix, side: Side) -> bool:
    n = m.rows
    for i in range(n):
        if m[i, i] != 1:
            return False
        for j in range(n):
            if side == "lower" and j > i and m[i, j] != 0:
                return False
            if side == "upper" and j < i and m[i, j] != 0:
                return False
    return True


def membership_uni(
    m: Matrix,
    side: Side,
    word: WordKind = "standard",
    policy: TolerancePolicy | None = None,
) -> UniParams | None:
    """Factor a unitriangular matrix over the chosen word, if possible.

    Returns UniParams whose ``strict`` flag records whether all parameters
    came out positive, or None when the matrix is not a product of
    nonnegative generators over that word.
    """
    if not m.is_square:
        raise InputError("membership requires a square matrix")
    if not _is_unitriangular(m, side):
        raise DomainError(f"matrix is not {side} unitriangular")
    p = policy or DEFAULT_POLICY
    n = m.rows
    if side == "lower":
        target = m
        kind = word
    else:
        # conjugating by the reversal permutation swaps the two sides and
        # the two words while preserving parameter order
        rho = reversal_permutation(n)
        target = rho @ m @ rho
        kind = "reversed" if word == "standard" else "standard"
    if kind == "standard":
        cs = _peel_lower_standard(target, p)
    elif kind == "reversed":
        cs = _peel_lower_reversed(target, p)
    else:
        raise InputError(f"unknown word kind {word!r}")
    if cs is None:
        return None
    if any(c < 0 for c in cs):
        return None
    strict = all(c > 0 for c in cs)
    return UniParams(n, word_for(n, word), side, cs, strict)


def factorize(
    m: Matrix,
    word: WordKind = "standard",
    policy: TolerancePolicy | None = None,
) -> TPParameters:
    """Recover the unique factorization parameters of a totally positive matrix.

    Raises DomainError when the input is provably not totally positive (the
    Gauss decomposition or a peel fails, or a recovered parameter is not
    positive).  The caller may run :func:`totpos.classify.is_totally_positive`
    first for a certificate; this routine only needs the structure it uses.
    """
    if not m.is_square:
        raise InputError("factorization requires a square matrix")
    p = policy or DEFAULT_POLICY
    n = m.rows
    ldu = gauss_ldu(m, p)
    if ldu is None:
        raise DomainError(
            "a leading principal minor vanishes; the matrix is not totally positive"
        )
    lower_mat, diag, upper_mat = ldu
    if any(not d > 0 for d in diag):
        raise DomainError("a leading principal minor ratio is not positive")
    lower = membership_uni(lower_mat, "lower", word, p)
    upper = membership_uni(upper_mat, "upper", word, p)
    if lower is None or upper is None:
        raise DomainError("unitriangular factor is outside the nonnegative cone")
    if not (lower.strict and upper.strict):
        raise DomainError(
            "factorization parameters are not all strictly positive; "
            "the matrix is totally nonnegative at best"
        )
    return TPParameters(n, word_for(n, word), lower.c, diag, upper.c, strict=True)


def monoid_generate_check(m: Matrix, policy: TolerancePolicy | None = None) -> bool:
    """True iff the matrix lies in the invertible totally nonnegative monoid.

    Equivalent to membership in the closure of products of nonnegative
    elementary generators and positive diagonals.  Singular input is a
    domain error, not a negative answer.
    """
    from .classify import is_totally_nonnegative

    if not m.is_square:
        raise InputError("monoid membership requires a square matrix")
    p = policy or DEFAULT_POLICY
    if sign_of(det(m, p), p, max(m.entry_scale(), 1.0) ** m.rows) == 0:
        raise SingularityError("monoid membership test requires invertibility")
    return is_totally_nonnegative(m, p)
