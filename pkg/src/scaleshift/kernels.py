"""Dense complex linear algebra for small recovery problems.

Generalized eigenproblems (QZ via scipy), singular values, condition
numbers, Vandermonde-structured least-squares solves, and the
recurrence-based row builders that turn pencil eigenvalues into the
coefficient matrices of the translated-stage systems.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import (
    ClusterWarning,
    DegenerateNodes,
    NoConvergence,
    PairingFailure,
    SchemaError,
    SingularB,
)
from .structmat import Pencil

__all__ = [
    "EigenPairs",
    "generalized_eig",
    "singular_values",
    "cond2",
    "vandermonde_solve",
    "least_squares_solve",
    "pair_by_correlation",
    "cosine_rows",
    "sine_progression",
    "spread_rows",
]


@dataclass(frozen=True, eq=False)
class EigenPairs:
    """Ordered generalized eigenvalues with matching right eigenvectors.

    ``vectors[:, i]`` is the unit-norm eigenvector for ``values[i]``,
    phase-normalized so its largest-magnitude entry is real positive.
    ``residuals[i]`` is the absolute backward error ``|A v - lambda B v|_2``.
    """

    values: tuple[complex, ...]
    vectors: np.ndarray
    residuals: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.vectors.shape[1] or len(self.values) != len(
            self.residuals
        ):
            raise SchemaError("eigenvalues, vectors, and residuals must align")

    @property
    def n(self) -> int:
        return len(self.values)


def _canonical_order(values: np.ndarray) -> list[int]:
    """Descending |lambda|; magnitude near-ties ordered by ascending angle."""
    idx = sorted(range(len(values)), key=lambda i: -abs(values[i]))
    scale = max((abs(values[i]) for i in idx), default=0.0)
    if scale == 0.0:
        return idx
    out: list[int] = []
    group: list[int] = []
    group_mag = None
    for i in idx:
        mag = abs(values[i])
        if group and abs(mag - group_mag) > 1e-9 * scale:  # type: ignore[operator]
            group.sort(key=lambda g: cmath.phase(values[g]))
            out.extend(group)
            group = []
        if not group:
            group_mag = mag
        group.append(i)
    group.sort(key=lambda g: cmath.phase(values[g]))
    out.extend(group)
    return out


def generalized_eig(pencil: Pencil, tol: float = 1e-10) -> EigenPairs:
    """Solve ``A v = lambda B v`` for a small dense pencil.

    ``tol`` gates the B-singularity precheck: the smallest singular
    value of B must exceed ``tol`` times the largest. Eigenvalues come
    back in a deterministic order (descending magnitude, near-ties by
    ascending angle); a ``ClusterWarning`` flags eigenvalues closer
    than 1e-6 relative, where accuracy claims no longer hold.
    """
    A, B = pencil.A, pencil.B
    sv = singular_values(B)
    if sv[0] == 0.0 or sv[-1] <= tol * sv[0]:
        raise SingularB(
            f"pencil matrix {pencil.labels[1]} is numerically singular "
            f"(singular-value ratio {0.0 if sv[0] == 0 else sv[-1] / sv[0]:.2e}); "
            "the working order may exceed the true sparsity, or this "
            "dilation hits a degenerate translation"
        )
    try:
        w, vr = scipy.linalg.eig(A, B)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(f"generalized eigensolver failed: {exc}") from exc
    if not np.all(np.isfinite(w.real)) or not np.all(np.isfinite(w.imag)):
        raise NoConvergence(
            "generalized eigenvalues include non-finite entries despite a "
            "nonsingular B; the pencil is numerically degenerate"
        )
    order = _canonical_order(w)
    w = w[order]
    vr = vr[:, order]

    vectors = np.empty_like(vr)
    residuals = []
    for i in range(len(w)):
        v = vr[:, i]
        norm = np.linalg.norm(v)
        if norm == 0.0:  # pragma: no cover - LAPACK never returns zero vectors
            raise NoConvergence("eigensolver returned a zero eigenvector")
        v = v / norm
        pivot = int(np.argmax(np.abs(v)))
        phase = v[pivot] / abs(v[pivot])
        v = v * phase.conjugate()
        vectors[:, i] = v
        residuals.append(float(np.linalg.norm(A @ v - w[i] * (B @ v))))

    scale = float(np.max(np.abs(w))) if len(w) else 0.0
    if scale > 0.0:
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                if abs(w[i] - w[j]) < 1e-6 * scale:
                    warnings.warn(
                        f"generalized eigenvalues {w[i]:.6g} and {w[j]:.6g} "
                        "are clustered; recovered parameters near this "
                        "cluster are unreliable",
                        ClusterWarning,
                        stacklevel=2,
                    )
                    break
            else:
                continue
            break

    return EigenPairs(
        values=tuple(complex(v) for v in w),
        vectors=vectors,
        residuals=tuple(residuals),
    )


def singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values of a matrix, descending."""
    return np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)


def cond2(M: np.ndarray) -> float:
    """2-norm condition number ``s_max / s_min`` (inf when singular)."""
    sv = singular_values(M)
    if sv[0] == 0.0:
        return math.inf
    if sv[-1] == 0.0:
        return math.inf
    return float(sv[0] / sv[-1])


def vandermonde_solve(
    nodes: Sequence[complex], rhs: Sequence[complex], rows: int | None = None
) -> np.ndarray:
    """Least-squares solve of ``sum_i c_i z_i^j = rhs_j``, ``j = 0..rows-1``.

    Raises ``DegenerateNodes`` when two nodes coincide within a relative
    1e-12, since the system then cannot separate their coefficients.
    """
    z = np.asarray(list(nodes), dtype=complex)
    b = np.asarray(list(rhs), dtype=complex)
    if rows is None:
        rows = len(b)
    elif rows != len(b):
        raise SchemaError(f"rows={rows} disagrees with len(rhs)={len(b)}")
    if rows < len(z):
        raise SchemaError(f"need at least {len(z)} rows, got {rows}")
    scale = max(1.0, float(np.max(np.abs(z))) if len(z) else 1.0)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            if abs(z[i] - z[j]) <= 1e-12 * scale:
                raise DegenerateNodes(
                    f"nodes {z[i]} and {z[j]} coincide; the Vandermonde "
                    "system is rank-deficient"
                )
    V = z[np.newaxis, :] ** np.arange(rows)[:, np.newaxis]
    return least_squares_solve(V, b)


def least_squares_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Plain least-squares solve for the small dense stage systems."""
    A = np.asarray(A, dtype=complex)
    b = np.asarray(b, dtype=complex)
    solution, *_ = np.linalg.lstsq(A, b, rcond=None)
    return solution


def pair_by_correlation(primary: np.ndarray, secondary: np.ndarray) -> list[int]:
    """Match eigenvector columns across two pencils sharing eigenvectors.

    Returns ``perm`` with ``secondary[:, perm[i]]`` the partner of
    ``primary[:, i]`` (largest absolute inner product). Raises
    ``PairingFailure`` when the greedy assignment is not a bijection,
    which signals genuinely mixed or degenerate eigenspaces.
    """
    P = np.asarray(primary, dtype=complex)
    S = np.asarray(secondary, dtype=complex)
    if P.shape != S.shape:
        raise SchemaError(f"vector blocks must agree in shape, {P.shape} vs {S.shape}")
    n = P.shape[1]
    corr = np.abs(P.conj().T @ S)
    perm = [int(np.argmax(corr[i])) for i in range(n)]
    if len(set(perm)) != n:
        raise PairingFailure(
            "eigenvector correlation does not produce a one-to-one pairing; "
            "the two pencils disagree on eigenspaces"
        )
    return perm


# -- recurrence row builders -------------------------------------------------


def cosine_rows(values: Sequence[complex], count: int, start: int = 0) -> np.ndarray:
    """Rows ``T_j(c_i)`` for ``j = start .. start+count-1``.

    With ``c_i = cos(phi_i x)`` the entries are ``cos(phi_i j x)``; the
    recurrence also holds verbatim for hyperbolic data where
    ``c_i = cosh(phi_i x)``.
    """
    c = np.asarray(list(values), dtype=complex)
    if count < 1 or start < 0:
        raise SchemaError(f"bad row range start={start}, count={count}")
    top = start + count
    rows = np.empty((top, len(c)), dtype=complex)
    rows[0] = 1.0
    if top > 1:
        rows[1] = c
    for j in range(2, top):
        rows[j] = 2.0 * c * rows[j - 1] - rows[j - 2]
    return rows[start:top]


def sine_progression(
    values: Sequence[complex],
    first: Sequence[complex],
    count: int,
    start: int = 1,
) -> np.ndarray:
    """Rows ``g_j`` of the sine progression from ``g_1`` and ``cos`` values.

    Given ``c_i = cos(phi_i x)`` and ``g_1[i] = w_i sin(phi_i x)`` (any
    per-term weight ``w_i``), the angle-addition recursion
    ``g_{j+1} = g_j c + T_j(c) g_1`` produces ``g_j[i] = w_i
    sin(phi_i j x)`` without knowing ``phi_i`` or ``w_i`` separately.
    """
    c = np.asarray(list(values), dtype=complex)
    g1 = np.asarray(list(first), dtype=complex)
    if c.shape != g1.shape:
        raise SchemaError("cos values and first products must align")
    if count < 1 or start < 0:
        raise SchemaError(f"bad row range start={start}, count={count}")
    top = start + count
    rows = np.empty((max(top, 2), len(c)), dtype=complex)
    rows[0] = 0.0
    rows[1] = g1
    t_prev = np.ones_like(c)
    t_cur = c.copy()
    for j in range(1, top - 1):
        rows[j + 1] = rows[j] * c + t_cur * g1
        t_next = 2.0 * c * t_cur - t_prev
        t_prev, t_cur = t_cur, t_next
    return rows[start:top]


def spread_rows(values: Sequence[float], count: int, start: int = 0) -> np.ndarray:
    """Rows ``S_{m_i}(sin^2(j x))`` from eigenvalues ``s_i = sin^2(m_i x)``.

    Uses the double-angle sequence ``c_j = cos(2 m_i j x)`` with
    ``c_1 = 1 - 2 s_i`` and the Chebyshev recurrence, then maps back via
    ``sin^2 = (1 - cos)/2``.
    """
    s = np.asarray(list(values), dtype=complex)
    if count < 1 or start < 0:
        raise SchemaError(f"bad row range start={start}, count={count}")
    top = start + count
    c1 = 1.0 - 2.0 * s
    cos_rows = np.empty((max(top, 2), len(s)), dtype=complex)
    cos_rows[0] = 1.0
    cos_rows[1] = c1
    for j in range(2, top):
        cos_rows[j] = 2.0 * c1 * cos_rows[j - 1] - cos_rows[j - 2]
    return (1.0 - cos_rows[start:top]) / 2.0
