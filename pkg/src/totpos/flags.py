"""Complete flags, positivity cells, and stable flag pairs of positive maps.

A flag is the increasing chain of column spans of an invertible matrix.
Each flag owns a unique column-echelon representative: scanning columns
left to right, every column is reduced against the pivots already chosen,
scaled so its bottommost nonzero entry is 1, and earlier pivot rows are
zeroed.  Two matrices generate the same flag exactly when their canonical
representatives coincide, which turns flag equality into matrix equality.

The open positive cell consists of flags of strictly-factorizable lower
unitriangular matrices; its primed companion consists of flags of inverses
of such matrices.  A totally positive matrix fixes exactly one flag from
each cell, spanned by its eigenbasis in decreasing respectively increasing
eigenvalue order, and the induced action on the tangent spaces at those
fixed flags dilates at one and contracts at the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .bilinear import c0_matrix, tilde
from .classify import is_totally_positive
from .errors import (
    ConsistencyError,
    DomainError,
    InputError,
    SingularityError,
)
from .linalg import (
    Matrix,
    inverse,
    nullspace,
    rank,
    reversal_permutation,
    transpose_inverse,
)
from .scalars import DEFAULT_POLICY, TolerancePolicy, as_fraction
from .spectra import SpectralOptions, gk_spectrum, refine_eigenbasis
from .whitney import UniParams, gauss_ldu, membership_uni

SigmaMode = Literal["identity", "tilde"]


@dataclass(frozen=True)
class Flag:
    """A complete flag, stored through its canonical representative."""

    rep: Matrix

    @property
    def n(self) -> int:
        return self.rep.rows

    def approx_equal(self, other: "Flag", policy: TolerancePolicy | None = None) -> bool:
        return self.rep.approx_equal(other.rep, policy)


def _canonical_rep(g: Matrix, policy: TolerancePolicy) -> Matrix:
    n = g.rows
    exact = g.is_exact
    scale = max(g.entry_scale(), 1.0)

    def is_zero(x) -> bool:
        if exact:
            return x == 0
        return policy.is_zero(float(x), scale)

    canon: list[list] = []
    pivots: list[int] = []
    for j in range(n):
        v = [as_fraction(x) for x in g.col_tuple(j)] if exact else [
            float(x) for x in g.col_tuple(j)
        ]
        for p, u in zip(pivots, canon):
            f = v[p]
            if f != 0:
                v = [a - f * b for a, b in zip(v, u)]
        piv = next((i for i in range(n - 1, -1, -1) if not is_zero(v[i])), None)
        if piv is None:
            raise SingularityError("matrix columns are linearly dependent")
        inv = 1 / v[piv]
        v = [a * inv for a in v]
        v[piv] = 1 if exact else 1.0
        for p in pivots:
            v[p] = 0 if exact else 0.0
        canon.append(v)
        pivots.append(piv)
    return Matrix.from_columns(canon)


def flag_from_matrix(g: Matrix, policy: TolerancePolicy | None = None) -> Flag:
    """Flag of the column-span chain of an invertible matrix."""
    if not g.is_square:
        raise InputError("flags come from square invertible matrices")
    return Flag(_canonical_rep(g, policy or DEFAULT_POLICY))


def standard_flag(n: int) -> Flag:
    return Flag(Matrix.identity(n))


def reversed_flag(n: int) -> Flag:
    return Flag(reversal_permutation(n))


def opposed(f1: Flag, f2: Flag, policy: TolerancePolicy | None = None) -> bool:
    """General position: every split of the two chains spans everything."""
    if f1.n != f2.n:
        raise InputError("flags must live in the same dimension")
    n = f1.n
    if n == 1:
        return True
    p = policy or DEFAULT_POLICY
    for k in range(1, n):
        cols = [list(f1.rep.col_tuple(j)) for j in range(k)] + [
            list(f2.rep.col_tuple(j)) for j in range(n - k)
        ]
        if rank(Matrix.from_columns(cols), p) < n:
            return False
    return True


def _gauss_lower_rep(f: Flag, policy: TolerancePolicy) -> Matrix | None:
    """Unique lower-unitriangular representative, when one exists."""
    ldu = gauss_ldu(f.rep, policy)
    if ldu is None:
        return None
    return ldu[0]


def in_B_pos(f: Flag, policy: TolerancePolicy | None = None) -> UniParams | None:
    """Certificate that the flag lies in the open positive cell.

    Returns strictly positive factorization parameters of the flag's lower
    unitriangular representative, or None when the flag is outside the
    open cell (including its boundary).
    """
    p = policy or DEFAULT_POLICY
    lower = _gauss_lower_rep(f, p)
    if lower is None:
        return None
    params = membership_uni(lower, "lower", "standard", p)
    if params is None or not params.strict:
        return None
    return params


def in_B_pos_prime(f: Flag, policy: TolerancePolicy | None = None) -> UniParams | None:
    """Certificate for the primed cell: the representative's inverse factors."""
    p = policy or DEFAULT_POLICY
    lower = _gauss_lower_rep(f, p)
    if lower is None:
        return None
    params = membership_uni(inverse(lower), "lower", "standard", p)
    if params is None or not params.strict:
        return None
    return params


def adapted_basis(f1: Flag, f2: Flag) -> Matrix:
    """Basis with w_k spanning the line F1_k intersect F2_{n-k+1}.

    Requires opposed flags with exact representatives; each column is
    scaled so its bottommost nonzero entry is 1.  The change of basis to
    this frame sends f1 to the standard flag and f2 to the reversed one.
    """
    if f1.n != f2.n:
        raise InputError("flags must live in the same dimension")
    if not (f1.rep.is_exact and f2.rep.is_exact):
        raise InputError("adapted bases require exact representatives")
    n = f1.n
    columns: list[list[Fraction]] = []
    for k in range(1, n + 1):
        span_cols = [list(f1.rep.col_tuple(j)) for j in range(k)] + [
            list(f2.rep.col_tuple(j)) for j in range(n - k + 1)
        ]
        kernel = nullspace(Matrix.from_columns(span_cols))
        if len(kernel) != 1:
            raise DomainError(
                "flags are not opposed; the adapted basis does not exist"
            )
        coeffs = kernel[0][:k]
        w = [
            sum(c * f1.rep[i, j] for j, c in enumerate(coeffs))
            for i in range(n)
        ]
        piv = next((i for i in range(n - 1, -1, -1) if w[i] != 0), None)
        if piv is None:
            raise ConsistencyError("adapted basis vector vanished")
        inv = 1 / w[piv]
        columns.append([x * inv for x in w])
    basis = Matrix.from_columns(columns)
    # opposedness makes the n chosen lines independent
    if len(nullspace(basis)) != 0:
        raise ConsistencyError("adapted basis is singular")
    return basis


@dataclass(frozen=True)
class StableFlagPair:
    """The two fixed flags of a positive map, with transversal data.

    ``dilation_moduli`` are the absolute eigenvalues of the induced action
    on the tangent space at the repelling flag (all above 1),
    ``contraction_moduli`` the same at the attracting flag (all below 1),
    and ``finite_order_moduli`` the absolute eigenvalues on the common
    stabilizer directions (all equal to 1 in theory).  ``margin`` is the
    least factorization parameter across both positivity certificates.
    """

    flag: Flag
    flag_prime: Flag
    params: UniParams
    params_prime: UniParams
    eigenvalues: tuple[float, ...]
    dilation_moduli: tuple[float, ...]
    contraction_moduli: tuple[float, ...]
    finite_order_moduli: tuple[float, ...]
    stability_residual: float
    margin: float
    sigma_mode: SigmaMode


def _rationalize_columns(v: Matrix, max_denominator: int = 10**12) -> Matrix:
    return Matrix(
        [
            [
                Fraction(float(v[i, j])).limit_denominator(max_denominator)
                for j in range(v.cols)
            ]
            for i in range(v.rows)
        ]
    )


def _flag_distance(a: Flag, b: Flag) -> float:
    diff = a.rep.to_float() - b.rep.to_float()
    return max(abs(float(x)) for row in diff.to_lists() for x in row)


def _transport_blocks(
    g_w: Matrix, sigma_mode: SigmaMode, k_mat: Matrix | None
) -> tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]:
    """Moduli of the induced map on strictly-upper, strictly-lower and
    diagonal matrix coordinates in the adapted frame."""
    n = g_w.rows
    g = np.array(g_w.to_float().to_lists(), dtype=np.float64)
    g_inv = np.linalg.inv(g)
    if sigma_mode == "tilde":
        assert k_mat is not None
        k = np.array(k_mat.to_float().to_lists(), dtype=np.float64)
        k_inv = np.linalg.inv(k)

    def transport(y: np.ndarray) -> np.ndarray:
        if sigma_mode == "tilde":
            y = -k @ y.T @ k_inv
        return g @ y @ g_inv

    upper = [(i, j) for i in range(n) for j in range(n) if i < j]
    lower = [(i, j) for i in range(n) for j in range(n) if i > j]
    diag = [(i, i) for i in range(n)]

    def block_moduli(coords: list[tuple[int, int]]) -> tuple[float, ...]:
        if not coords:
            return ()
        op = np.zeros((len(coords), len(coords)))
        for col, (i, j) in enumerate(coords):
            e = np.zeros((n, n))
            e[i, j] = 1.0
            t = transport(e)
            for row, (a, b) in enumerate(coords):
                op[row, col] = t[a, b]
        return tuple(sorted((float(abs(x)) for x in np.linalg.eigvals(op)), reverse=True))

    return block_moduli(upper), block_moduli(lower), block_moduli(diag)


def stable_flags(
    g: Matrix,
    sigma_mode: SigmaMode = "identity",
    options: SpectralOptions | None = None,
    policy: TolerancePolicy | None = None,
    stability_tol: float = 1e-6,
) -> StableFlagPair:
    """Fixed flags of the twisted conjugation action of a positive map.

    In identity mode the input must be totally positive; in tilde mode the
    input times its twist must be.  The attracting flag collects the
    eigenvectors in decreasing eigenvalue order and lands in the open
    positive cell; the repelling flag takes the increasing order and lands
    in the primed cell.  Both fixed-point claims are re-verified on the
    computed flags, as are the cell memberships and the transversal
    dilation/contraction moduli.
    """
    if not g.is_square:
        raise InputError("stable flags require a square matrix")
    p = policy or DEFAULT_POLICY
    n = g.rows
    if sigma_mode == "identity":
        if not is_totally_positive(g, p):
            raise DomainError("identity mode requires a totally positive matrix")
        composite = g
    elif sigma_mode == "tilde":
        twisted = g @ tilde(g, p)
        if not is_totally_positive(twisted, p):
            raise DomainError(
                "tilde mode requires the matrix times its twist to be totally positive"
            )
        composite = twisted
    else:
        raise InputError(f"unknown sigma mode {sigma_mode!r}")
    spectrum = gk_spectrum(composite, options, p, assume_tp=True)
    if composite.is_exact:
        v = refine_eigenbasis(composite, spectrum.eigenvalues, spectrum.eigenvectors)
    else:
        v = _rationalize_columns(spectrum.eigenvectors)
    flag = flag_from_matrix(v, p)
    flag_prime = flag_from_matrix(
        Matrix.from_columns([list(v.col_tuple(j)) for j in range(n - 1, -1, -1)]), p
    )
    params = in_B_pos(flag, p)
    if params is None:
        raise ConsistencyError("attracting flag missed the open positive cell")
    params_prime = in_B_pos_prime(flag_prime, p)
    if params_prime is None:
        raise ConsistencyError("repelling flag missed the primed positive cell")
    if not opposed(flag, flag_prime, p):
        raise ConsistencyError("stable flags are not opposed")

    def alpha_image(f: Flag) -> Flag:
        rep = f.rep if sigma_mode == "identity" else tilde(f.rep, p)
        return flag_from_matrix(g @ rep, p)

    residual = max(
        _flag_distance(alpha_image(flag), flag),
        _flag_distance(alpha_image(flag_prime), flag_prime),
    )
    if residual > stability_tol:
        raise ConsistencyError(
            f"computed flags move under the action by {residual:.3e}, "
            f"beyond the stability tolerance {stability_tol:.3e}"
        )
    w = adapted_basis(flag, flag_prime)
    w_inv = inverse(w)
    g_w = w_inv @ g @ w
    k_mat = None
    if sigma_mode == "tilde":
        k_mat = w_inv @ c0_matrix(n) @ transpose_inverse(w)
    dilation, contraction, finite = _transport_blocks(g_w, sigma_mode, k_mat)
    margin = min(
        min(float(c) for c in params.c),
        min(float(c) for c in params_prime.c),
    )
    return StableFlagPair(
        flag=flag,
        flag_prime=flag_prime,
        params=params,
        params_prime=params_prime,
        eigenvalues=spectrum.eigenvalues,
        dilation_moduli=dilation,
        contraction_moduli=contraction,
        finite_order_moduli=finite,
        stability_residual=residual,
        margin=margin,
        sigma_mode=sigma_mode,
    )


def identity_component_check(
    g: Matrix,
    pair: StableFlagPair,
    policy: TolerancePolicy | None = None,
    rel_tol: float = 1e-8,
) -> bool:
    """True when the map is diagonal with positive entries in the frame
    adapted to its stable pair, i.e. lies on the positive torus through the
    identity rather than a twisted component."""
    if not g.is_square:
        raise InputError("component check requires a square matrix")
    w = adapted_basis(pair.flag, pair.flag_prime)
    d = inverse(w).to_float() @ g.to_float() @ w.to_float()
    n = d.rows
    diag = [float(d[i, i]) for i in range(n)]
    scale = max(abs(x) for x in diag)
    if scale == 0.0:
        return False
    for i in range(n):
        for j in range(n):
            if i != j and abs(float(d[i, j])) > rel_tol * scale:
                return False
    return all(x > 0 for x in diag)
