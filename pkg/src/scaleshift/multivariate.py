"""Recovery of multivariate exponential and Gaussian sums.

Samples live on ``d`` lines sharing one direction vector: the main line
through the origin carries a full one-dimensional recovery problem, and
each shifted line adds one linear equation per term. Solving the
direction system (the step vector and the shift vectors as rows) turns
the per-line logarithms into the parameter vectors.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np

from .analyzers import (
    Tolerances,
    _finish,
    _require_order,
    _safe_quotients,
    _warn_pencil_residuals,
)
from .errors import CollisionDetected, SchemaError, SingularDirections
from .kernels import cond2, generalized_eig, vandermonde_solve
from .models import BaseFamily, RecoveryResult, SparseModel, Term
from .sampling import SamplingScheme
from .structmat import Pencil, build_hankel, line_fetch

__all__ = [
    "solve_direction_system",
    "analyze_multi_exponential",
    "analyze_multi_gaussian",
]


def solve_direction_system(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve the square direction system mapping logarithms to parameters.

    The matrix rows are the step vector and the shift vectors; ill
    conditioning here directly inflates every recovered parameter, so a
    condition number above 1e8 draws a warning and a numerically
    singular system raises instead of returning garbage.
    """
    M = np.asarray(matrix, dtype=complex)
    b = np.asarray(rhs, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SchemaError(f"direction system must be square, got {M.shape}")
    if M.shape[0] != b.shape[0]:
        raise SchemaError("direction system and right-hand side must align")
    c = cond2(M)
    if not math.isfinite(c):
        raise SingularDirections(
            "the direction vectors are numerically dependent; no unique "
            "parameter vector exists"
        )
    if c > 1e8:
        warnings.warn(
            f"direction system condition number {c:.2e}; recovered parameter "
            "vectors may lose up to that many digits",
            UserWarning,
            stacklevel=2,
        )
    try:
        x = np.linalg.solve(M, b)
    except np.linalg.LinAlgError as exc:
        raise SingularDirections(f"direction system solve failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularDirections("direction system produced non-finite parameters")
    return x


def _node_collision_check(nodes: list[complex]) -> None:
    scale = max((abs(z) for z in nodes), default=0.0)
    gate = 1e-9 * scale
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if abs(nodes[i] - nodes[j]) <= gate:
                raise CollisionDetected(
                    "two parameter vectors project onto the same node on the "
                    "main line; choose a different step direction"
                )


def analyze_multi_exponential(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i exp(<phi_i, x>)`` from line samples.

    The main line fixes the weights and one log-projection per term;
    each shifted line contributes another projection via an n-row
    solve against the same Vandermonde nodes.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    d = scheme.dim
    M = scheme.direction_matrix()
    main = line_fetch(samples, 1)
    A = build_hankel(main, 1, 1, n)
    B = build_hankel(main, 1, 0, n)
    pencil = Pencil(A, B, BaseFamily.MULTI_EXP, ("H(1,1) line 1", "H(1,0) line 1"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    nodes = list(pairs.values)
    _node_collision_check(nodes)
    alpha = vandermonde_solve(nodes, [main(j) for j in range(2 * n)])
    projections = np.empty((d, n), dtype=complex)
    projections[0] = [cmath.log(z) for z in nodes]
    for k in range(2, d + 1):
        shifted = line_fetch(samples, k)
        w = vandermonde_solve(nodes, [shifted(j) for j in range(n)])
        q = _safe_quotients(w, alpha)
        projections[k - 1] = [cmath.log(z) for z in q]
    terms = []
    for i in range(n):
        phi_vec = solve_direction_system(M, projections[:, i])
        terms.append(Term(alpha=complex(alpha[i]), phi_vec=tuple(map(complex, phi_vec))))
    model = SparseModel(family=BaseFamily.MULTI_EXP, terms=tuple(terms), dim=d)
    log = [f"{d} direction(s): one projection from each line, principal logs"]
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


def analyze_multi_gaussian(
    samples,
    scheme: SamplingScheme,
    n: int,
    width: float = 1.0,
    tol: Tolerances | None = None,
) -> RecoveryResult:
    """Recover ``sum alpha_i exp(-|x - phi_i|^2 / width)`` from line samples.

    Stripping the per-line quadratic envelope reduces every line to the
    exponential situation with doubled projections ``2 <phi_i, b>``; the
    recovered logarithms are halved before the direction solve. A
    non-unit width rescales the geometry up front and the centers scale
    back at the end.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    if width <= 0:
        raise SchemaError(f"width must be positive, got {width}")
    root = math.sqrt(width)
    d = scheme.dim
    M = scheme.direction_matrix() / root
    b = np.asarray(scheme.delta_vec, dtype=complex) / root
    b2 = complex(np.dot(b, b))
    main = line_fetch(samples, 1)

    def stripped_main(j: int) -> complex:
        return cmath.exp(j * j * b2) * main(j)

    A = build_hankel(stripped_main, 1, 1, n)
    B = build_hankel(stripped_main, 1, 0, n)
    pencil = Pencil(A, B, BaseFamily.MULTI_GAUSS, ("G(1,1) line 1", "G(1,0) line 1"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    nodes = list(pairs.values)  # exp(2 <phi', b'>)
    _node_collision_check(nodes)
    w0 = vandermonde_solve(nodes, [stripped_main(j) for j in range(2 * n)])
    projections = np.empty((d, n), dtype=complex)
    projections[0] = [0.5 * cmath.log(z) for z in nodes]
    for k in range(2, d + 1):
        shift = np.asarray(scheme.shift_vecs[k - 2], dtype=complex) / root
        cross = complex(np.dot(shift, b))
        shift2 = complex(np.dot(shift, shift))
        fk = line_fetch(samples, k)
        series = [cmath.exp(j * j * b2 + 2 * j * cross) * fk(j) for j in range(n)]
        v = vandermonde_solve(nodes, series)
        q = _safe_quotients(v, w0) * cmath.exp(shift2)
        projections[k - 1] = [0.5 * cmath.log(z) for z in q]
    terms = []
    for i in range(n):
        phi_unit = solve_direction_system(M, projections[:, i])
        self_dot = complex(np.dot(phi_unit, phi_unit))
        alpha = complex(w0[i]) * cmath.exp(self_dot)
        centers = tuple(complex(root * c) for c in phi_unit)
        terms.append(Term(alpha=alpha, phi_vec=centers))
    model = SparseModel(
        family=BaseFamily.MULTI_GAUSS, terms=tuple(terms), width=width, dim=d
    )
    log = [f"{d} direction(s): halved logs of the envelope-stripped nodes"]
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)
