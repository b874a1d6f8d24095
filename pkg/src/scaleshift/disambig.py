"""Candidate parameter sets and aliasing resolution.

A dilated grid folds the parameter line: one eigenvalue of the dilated
pencil is consistent with finitely many parameters, enumerated here as
candidate sets over the inverse-function branches. Intersecting the
dilation set with the translation set leaves at most two survivors, and
a single extra shifted evaluation (``rho = sigma + tau``) decides the
remaining tie. Exponential-type data never needs the third value: its
two sets intersect in exactly one point for coprime (sigma, tau).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    EmptyIntersection,
    MultipleMatches,
    NeedsThirdValue,
    NonIntegerCandidate,
    SchemaError,
    StillAmbiguous,
)

__all__ = [
    "CandidateSet",
    "exp_candidates",
    "exp_resolve",
    "cos_candidates",
    "cos_resolve",
    "spread_candidates",
    "spread_resolve",
    "integer_snap",
]


@dataclass(frozen=True)
class CandidateSet:
    """Finite set of parameters consistent with one scaled evaluation.

    ``branch_tags[i]`` records how ``values[i]`` was generated: the
    branch offset ``l`` and a small branch discriminator (the sign of
    the principal log for exponential sets, the progression index 1/2
    for cosine sets, the Arcsin branch sign for spread sets).
    """

    values: tuple
    branch_tags: tuple[tuple[int, int], ...]
    source: str = "sigma"
    bound: float | None = None

    def __len__(self) -> int:
        return len(self.values)


def _merge_close(values, tags, tol: float):
    """Drop candidates that duplicate an earlier one within ``tol``."""
    kept_values: list = []
    kept_tags: list = []
    for v, t in zip(values, tags):
        if any(abs(v - u) <= tol for u in kept_values):
            continue
        kept_values.append(v)
        kept_tags.append(t)
    return kept_values, kept_tags


# -- exponential sets --------------------------------------------------------


def exp_candidates(
    lam: complex, scale: int, delta: float, source: str = "sigma"
) -> CandidateSet:
    """Parameters with ``exp(phi * scale * delta) = lam``.

    The principal log fixes one candidate; the rest differ by imaginary
    multiples of ``2*pi/(scale*delta)``. The branch range is one-sided
    by the sign of ``Im Ln(lam)`` so every candidate stays inside the
    open window ``|Im phi| < pi/delta``; a real positive ``lam``
    (sign 0) aliases nothing and yields a singleton.
    """
    lam = complex(lam)
    if lam == 0:
        raise SchemaError("a zero eigenvalue admits no exponential parameter")
    if scale < 1:
        raise SchemaError(f"scale must be a positive integer, got {scale}")
    L = cmath.log(lam)
    s = (L.imag > 0) - (L.imag < 0)
    if s == 0:
        ells = [0]
    elif s > 0:
        ells = list(range(-(scale // 2), (scale + 1) // 2))
    else:
        ells = list(range(-((scale + 1) // 2 - 1), scale // 2 + 1))
    step = 2.0 * math.pi / (scale * delta)
    values = tuple((L / (scale * delta)) + 1j * step * ell for ell in ells)
    tags = tuple((ell, s) for ell in ells)
    return CandidateSet(values=values, branch_tags=tags, source=source, bound=math.pi / delta)


def exp_resolve(
    lambda_sigma: complex,
    lambda_tau: complex,
    sigma: int,
    tau: int,
    delta: float,
    tol: float | None = None,
) -> complex:
    """The unique parameter consistent with both scaled evaluations.

    For coprime (sigma, tau) the two candidate sets intersect in exactly
    one point, so anything else is a data problem: no match means the
    inputs are inconsistent (or noise exceeds the tolerance), several
    matches mean the tolerance is too loose.
    """
    if sigma == 1:
        return cmath.log(complex(lambda_sigma)) / delta
    if tau == 0:
        raise SchemaError("a dilated grid needs a nonzero translation to resolve")
    if tau < 0:
        lambda_tau = 1.0 / complex(lambda_tau)
        tau = -tau
    if tol is None:
        tol = 1e-9 * math.pi / delta
    S = exp_candidates(lambda_sigma, sigma, delta, "sigma")
    T = exp_candidates(lambda_tau, tau, delta, "tau")
    matches = [
        v for v in S.values if any(abs(v - w) <= tol for w in T.values)
    ]
    matches, _ = _merge_close(matches, [(0, 0)] * len(matches), tol)
    if not matches:
        raise EmptyIntersection(
            "the dilation and translation candidate sets do not intersect; "
            "the samples are inconsistent or too noisy for the tolerance"
        )
    if len(matches) > 1:
        raise MultipleMatches(
            f"{len(matches)} parameters fit both evaluations at tolerance "
            f"{tol:.2e}; tighten the tolerance or check gcd(sigma, tau)"
        )
    return matches[0]


# -- cosine sets (Appendix machinery) ----------------------------------------


def _clamped_arccos(C: float) -> float:
    return math.acos(min(1.0, max(-1.0, C)))


def cos_candidates(
    C: float,
    scale: int,
    R: float,
    delta: float | None = None,
    source: str = "sigma",
) -> CandidateSet:
    """Parameters in ``[0, R)`` with ``cos(phi * scale * delta) = C``.

    Two arithmetic progressions of step ``2*pi/(scale*delta)`` cover the
    Arccos branches: one starting at ``phi_scale``, one at the mirrored
    point ``step - phi_scale`` (suppressed to 0 when ``phi_scale`` is 0,
    where the two progressions coincide). ``delta`` defaults to
    ``pi/R``, the canonical grid for a declared frequency window.
    """
    if scale < 1:
        raise SchemaError(f"scale must be a positive integer, got {scale}")
    if delta is None:
        delta = math.pi / R
    phi_scale = _clamped_arccos(float(C)) / (scale * delta)
    step = 2.0 * math.pi / (scale * delta)
    count = (scale + 1) // 2
    values: list[float] = []
    tags: list[tuple[int, int]] = []
    for ell in range(count):
        values.append(phi_scale + step * ell)
        tags.append((ell, 1))
    mirrored = (step - phi_scale) if phi_scale > 0.0 else 0.0
    for ell in range(count):
        values.append(mirrored + step * ell)
        tags.append((ell, 2))
    tol = 1e-9 * R
    kept_v: list[float] = []
    kept_t: list[tuple[int, int]] = []
    for v, t in zip(values, tags):
        if not (-tol <= v < R):
            continue
        kept_v.append(max(v, 0.0))
        kept_t.append(t)
    kept_v, kept_t = _merge_close(kept_v, kept_t, tol)
    order = sorted(range(len(kept_v)), key=kept_v.__getitem__)
    return CandidateSet(
        values=tuple(kept_v[i] for i in order),
        branch_tags=tuple(kept_t[i] for i in order),
        source=source,
        bound=R,
    )


def cos_resolve(
    C_sigma: float,
    C_tau: float,
    sigma: int,
    tau: int,
    R: float,
    C_rho: float | None = None,
    rho: int | None = None,
    delta: float | None = None,
    tol: float | None = None,
) -> float:
    """Intersect the dilation and translation cosine candidate sets.

    At most two candidates survive the pairwise intersection. A unique
    survivor is returned directly; with two survivors the third value
    (``C_rho`` at scale ``rho``, canonically ``sigma + tau``) decides.
    ``NeedsThirdValue`` carries the surviving pair on its ``candidates``
    attribute so the caller knows what an extra evaluation must settle.
    """
    if delta is None:
        delta = math.pi / R
    if tol is None:
        tol = 1e-9 * R
    if sigma == 1:
        return _clamped_arccos(float(C_sigma)) / delta
    S = cos_candidates(C_sigma, sigma, R, delta, "sigma")
    T = cos_candidates(C_tau, abs(tau), R, delta, "tau")
    survivors = [v for v in S.values if any(abs(v - w) <= tol for w in T.values)]
    survivors, _ = _merge_close(survivors, [(0, 0)] * len(survivors), tol)
    if not survivors:
        raise EmptyIntersection(
            "no parameter is consistent with both the dilated and the "
            "translated cosine values"
        )
    if len(survivors) == 1:
        return survivors[0]
    if len(survivors) > 2:
        raise StillAmbiguous(
            f"{len(survivors)} candidates survived a two-set intersection "
            "that can admit at most two; raise the working precision"
        )
    if C_rho is None or rho is None:
        err = NeedsThirdValue(
            "two candidates survive the (sigma, tau) intersection; "
            "an evaluation at the third shift rho = sigma + tau decides"
        )
        err.candidates = tuple(survivors)
        raise err
    P = cos_candidates(C_rho, rho, R, delta, "rho")
    final = [v for v in survivors if any(abs(v - w) <= tol for w in P.values)]
    if not final:
        raise EmptyIntersection(
            "the third shifted value eliminated both remaining candidates; "
            "the samples are inconsistent"
        )
    if len(final) > 1:
        raise StillAmbiguous(
            "both candidates survived the third shifted value; "
            "raise the working precision or change sigma"
        )
    return final[0]


# -- spread sets -------------------------------------------------------------


def spread_candidates(
    S: float,
    scale: int,
    M: int,
    delta: float,
    source: str = "sigma",
    snap_tol: float = 0.25,
) -> CandidateSet:
    """Integer degrees ``m`` in ``[0, M)`` with ``sin^2(m*scale*delta) = S``.

    The two Arcsin branches form progressions of step
    ``pi/(scale*delta)``; each progression value is snapped to the
    nearest integer within ``snap_tol`` grid units (candidates farther
    from an integer are discarded as branch artifacts).
    """
    if scale < 1:
        raise SchemaError(f"scale must be a positive integer, got {scale}")
    theta = math.asin(math.sqrt(min(1.0, max(0.0, float(S)))))
    base = theta / (scale * delta)
    step = math.pi / (scale * delta)
    raw: list[tuple[float, tuple[int, int]]] = []
    for ell in range((scale + 1) // 2):
        raw.append((base + step * ell, (ell, 1)))
    for ell in range(1, scale // 2 + 1):
        raw.append((-base + step * ell, (ell, -1)))
    values: list[int] = []
    tags: list[tuple[int, int]] = []
    for v, t in raw:
        m = round(v)
        if abs(v - m) <= snap_tol and 0 <= m < M and m not in values:
            values.append(int(m))
            tags.append(t)
    order = sorted(range(len(values)), key=values.__getitem__)
    return CandidateSet(
        values=tuple(values[i] for i in order),
        branch_tags=tuple(tags[i] for i in order),
        source=source,
        bound=float(M),
    )


def spread_resolve(
    S_sigma: float,
    S_tau: float,
    sigma: int,
    tau: int,
    M: int,
    delta: float,
    S_rho: float | None = None,
    rho: int | None = None,
    snap_tol: float = 0.25,
) -> int:
    """Intersect integer spread candidate sets, with third-value fallback."""
    if sigma == 1:
        single = spread_candidates(S_sigma, 1, M, delta, "sigma", snap_tol)
        if len(single) != 1:
            raise NonIntegerCandidate(
                f"the unit-grid spread value yields {len(single)} integer "
                f"candidates (expected exactly one) at snap tolerance {snap_tol}"
            )
        return int(single.values[0])
    S = spread_candidates(S_sigma, sigma, M, delta, "sigma", snap_tol)
    T = spread_candidates(S_tau, abs(tau), M, delta, "tau", snap_tol)
    survivors = sorted(set(S.values) & set(T.values))
    if not survivors:
        raise EmptyIntersection(
            "no integer degree is consistent with both spread evaluations"
        )
    if len(survivors) == 1:
        return int(survivors[0])
    if len(survivors) > 2:
        raise StillAmbiguous(
            f"{len(survivors)} degrees survived a two-set intersection that "
            "can admit at most two; raise the working precision"
        )
    if S_rho is None or rho is None:
        err = NeedsThirdValue(
            "two degrees survive the (sigma, tau) intersection; an "
            "evaluation at the third shift rho = sigma + tau decides"
        )
        err.candidates = tuple(survivors)
        raise err
    P = spread_candidates(S_rho, rho, M, delta, "rho", snap_tol)
    final = sorted(set(survivors) & set(P.values))
    if not final:
        raise EmptyIntersection(
            "the third shifted value eliminated both remaining degrees"
        )
    if len(final) > 1:
        raise StillAmbiguous("both degrees survived the third shifted value")
    return int(final[0])


def integer_snap(candidates, M: int, tol: float = 0.25) -> set[int]:
    """Snap candidates to integers in ``[0, M)``, dropping the rest."""
    values = candidates.values if isinstance(candidates, CandidateSet) else candidates
    out: set[int] = set()
    for v in values:
        m = round(float(v))
        if abs(float(v) - m) <= tol and 0 <= m < M:
            out.add(int(m))
    return out
