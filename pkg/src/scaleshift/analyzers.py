"""Recovery pipelines for every supported base family.

Each analyzer follows the same arc: build the dilation-grid pencil,
read the nonlinear parameters off its generalized eigenvalues, solve
small structured systems for the coefficients and the translated-stage
quotients, resolve grid aliasing by intersecting candidate sets, and
verify the assembled model against every sample that was consumed.
Escalation to a third shift happens automatically (and is logged) for
the trigonometric families whose two-set intersection can tie; the
exponential-type families never need it.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .disambig import (
    cos_resolve,
    exp_resolve,
    integer_snap,
    spread_candidates,
    spread_resolve,
)
from .errors import (
    AmbiguityError,
    CollisionDetected,
    DomainError,
    GammaPole,
    NearZeroVectorEntry,
    NeedsThirdValue,
    NonIntegerCandidate,
    NumericalError,
    PairingFailure,
    PoleDetected,
    SchemaError,
    SinNodeZero,
)
from .kernels import (
    EigenPairs,
    cond2,
    cosine_rows,
    generalized_eig,
    least_squares_solve,
    sine_progression,
    spread_rows,
    vandermonde_solve,
)
from .models import (
    BaseFamily,
    OrderEstimate,
    RecoveryResult,
    SparseModel,
    Term,
    evaluate,
    model_to_dict,
)
from .order import estimate_order
from .sampling import (
    SamplingScheme,
    _reduced_polynomial_value,
    grid_point,
)
from .structmat import (
    Pencil,
    as_fetch,
    build_cosine_matrix,
    build_gamma_hankel,
    build_gauss_hankel,
    build_hankel,
    build_sine_matrix,
    build_spread_matrices,
    cosine_transform,
    even_extension,
    gamma_levels,
    gauss_transform,
    odd_extension,
    ramp_transform,
    sine_transform,
    spread_extension,
    spread_transform,
)

__all__ = [
    "Tolerances",
    "analyze",
    "analyze_exponential",
    "analyze_exponential_variant",
    "analyze_cosine",
    "analyze_sine",
    "analyze_phase_sine",
    "analyze_hyperbolic",
    "analyze_chebyshev",
    "analyze_spread",
    "analyze_sinc",
    "analyze_gamma",
    "analyze_gaussian",
    "report_dict",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical gates shared by the recovery pipelines.

    ``pencil`` is the relative backward-error level above which eigenpairs
    draw a warning; ``intersection`` scales the natural bound (``pi/delta``
    or the frequency window) into the candidate-matching tolerance;
    ``snap`` is the maximum distance to an integer degree; ``singular_b``
    gates the pencil B-matrix singularity precheck.
    """

    pencil: float = 1e-9
    intersection: float = 1e-9
    snap: float = 0.25
    singular_b: float = 1e-10


def _require_order(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"the working order must be a positive integer, got {n!r}")
    return int(n)



def _require_shift(scheme: SamplingScheme) -> None:
    """Reject recovery from a purely dilated grid.

    With sigma > 1 and no translation the aliased parameters cannot be
    told apart, no matter how many samples are taken.
    """
    if scheme.sigma > 1 and scheme.tau == 0:
        raise AmbiguityError(
            "sigma > 1 aliases the parameters and tau = 0 provides no "
            "second reading; sample a translated stage with a coprime "
            "nonzero tau"
        )

def _warn_pencil_residuals(pairs: EigenPairs, pencil: Pencil, tol: Tolerances) -> None:
    norm_a = float(np.linalg.norm(pencil.A))
    norm_b = float(np.linalg.norm(pencil.B))
    worst = 0.0
    for lam, res in zip(pairs.values, pairs.residuals):
        gate = norm_a + abs(lam) * norm_b
        if gate > 0:
            worst = max(worst, res / gate)
    if worst > tol.pencil:
        warnings.warn(
            f"eigenpair backward error {worst:.2e} exceeds the trust level "
            f"{tol.pencil:.0e}; recovered parameters may be degraded",
            UserWarning,
            stacklevel=3,
        )


def _safe_quotients(w: np.ndarray, weights: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(weights))) if len(weights) else 0.0
    if scale == 0.0 or np.any(np.abs(weights) < 1e-14 * scale):
        raise NumericalError(
            "a recovered coefficient is numerically zero; the working order "
            "likely exceeds the true number of terms"
        )
    return np.asarray(w, dtype=complex) / np.asarray(weights, dtype=complex)


def _model_value(model: SparseModel, scheme: SamplingScheme, key) -> complex:
    """Evaluate the model at a grid key the way the simulator would."""
    fam = model.family
    if fam.is_multivariate:
        line, j = key
        base = np.asarray(scheme.delta_vec, dtype=float)
        if line == 1:
            point = j * base
        else:
            point = np.asarray(scheme.shift_vecs[line - 2], dtype=float) + j * base
        return complex(evaluate(model, point))
    if fam is BaseFamily.GAMMA:
        return complex(evaluate(model, scheme.delta + int(key)))
    if fam.is_integer_family:
        K = scheme.angular_period()
        if K is not None:
            return complex(_reduced_polynomial_value(model, int(key), K))
    return complex(evaluate(model, grid_point(fam, scheme, int(key))))


def _finish(
    model: SparseModel,
    samples,
    scheme: SamplingScheme,
    cond_A: float,
    cond_B: float,
    log: list,
    order_estimate: OrderEstimate | None = None,
    extra_residual: float = 0.0,
) -> RecoveryResult:
    worst = float(extra_residual)
    touched = getattr(samples, "touched", None)
    if touched:
        for key in touched:
            value = samples.peek(key)
            worst = max(worst, abs(_model_value(model, scheme, key) - value))
    return RecoveryResult(
        model=model.canonical(),
        order_estimate=order_estimate,
        residual_max=worst,
        cond_A=cond_A,
        cond_B=cond_B,
        ambiguity_log=tuple(log),
    )


# -- exponential --------------------------------------------------------------


def analyze_exponential(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i exp(phi_i t)`` from dilated/translated samples.

    The (sigma, tau) candidate intersection is provably a singleton for
    coprime parameters, so this pipeline never escalates to a third
    shift. With ``sigma = 1`` the principal logarithm is already
    alias-free and the translated stage is skipped entirely.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    sigma, tau = scheme.sigma, scheme.tau
    d = scheme.delta_real
    fetch = as_fetch(samples)
    A = build_hankel(fetch, sigma, sigma, n)
    B = build_hankel(fetch, sigma, 0, n)
    pencil = Pencil(A, B, BaseFamily.EXP, (f"H({sigma},{sigma})", f"H({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    lam = list(pairs.values)
    alpha = vandermonde_solve(lam, [fetch(j * sigma) for j in range(2 * n)])
    log: list[str] = []
    if sigma == 1:
        phis = [cmath.log(z) / d for z in lam]
        log.append("sigma = 1: principal logarithm is alias-free")
    else:
        w = vandermonde_solve(lam, [fetch(tau + j * sigma) for j in range(n)])
        quotients = _safe_quotients(w, alpha)
        phis = []
        for i in range(n):
            phi = exp_resolve(
                lam[i], quotients[i], sigma, tau, d,
                tol=tol.intersection * math.pi / d,
            )
            phis.append(phi)
        log.append(
            f"{n} term(s) resolved uniquely in the ({sigma},{tau}) intersection"
        )
    terms = tuple(Term(alpha=complex(alpha[i]), phi=complex(phis[i])) for i in range(n))
    model = SparseModel(family=BaseFamily.EXP, terms=terms)
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


def analyze_exponential_variant(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Exponential recovery with the translation inside the pencil.

    The pencil pair is the translated Hankel against the plain one, so
    the eigenvalues carry ``exp(phi tau delta)`` and the dilation-grid
    progression ``exp(phi sigma delta)`` is read from consecutive
    entries of the eigenvector images under the plain matrix. Runs on
    two samples fewer than the standard route.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    sigma, tau = scheme.sigma, scheme.tau
    if tau == 0:
        raise SchemaError("the translated-pencil route needs a nonzero tau")
    d = scheme.delta_real
    fetch = as_fetch(samples)
    A = build_hankel(fetch, sigma, tau, n)
    B = build_hankel(fetch, sigma, 0, n)
    pencil = Pencil(A, B, BaseFamily.EXP, (f"H({sigma},{tau})", f"H({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    mu = list(pairs.values)
    lam: list[complex] = []
    if n == 1:
        lam.append(fetch(sigma) / fetch(0))
    else:
        for i in range(n):
            u = B @ pairs.vectors[:, i]
            peak = float(np.max(np.abs(u)))
            if peak == 0.0 or np.any(np.abs(u[:-1]) < 1e-9 * peak):
                raise NearZeroVectorEntry(
                    "an eigenvector image has a near-zero entry; consecutive "
                    "quotients cannot recover the dilation progression"
                )
            num = np.vdot(u[:-1], u[1:])
            den = np.vdot(u[:-1], u[:-1])
            lam.append(complex(num / den))
    alpha = vandermonde_solve(lam, [fetch(j * sigma) for j in range(2 * n - 1)])
    phis = [
        exp_resolve(lam[i], mu[i], sigma, tau, d, tol=tol.intersection * math.pi / d)
        for i in range(n)
    ]
    log = [f"translated pencil: eigenvalues carry the tau = {tau} progression"]
    terms = tuple(Term(alpha=complex(alpha[i]), phi=complex(phis[i])) for i in range(n))
    model = SparseModel(family=BaseFamily.EXP, terms=terms)
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


# -- phase-shifted sine --------------------------------------------------------


def analyze_phase_sine(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i sin(phi_i t - psi_i)`` with real parameters.

    The model embeds into a ``2n``-term exponential sum over conjugate
    frequency pairs; after the exponential pipeline resolves the
    frequencies, each ``+phi/-phi`` pair is matched and its two complex
    weights convert into the real amplitude and phase offset. ``psi`` is
    canonicalized into ``(-pi/2, pi/2]`` by flipping the sign of alpha.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    N = 2 * n
    sigma, tau = scheme.sigma, scheme.tau
    d = scheme.delta_real
    fetch = as_fetch(samples)
    A = build_hankel(fetch, sigma, sigma, N)
    B = build_hankel(fetch, sigma, 0, N)
    pencil = Pencil(
        A, B, BaseFamily.PHASE_SINE, (f"H({sigma},{sigma})", f"H({sigma},0)")
    )
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    lam = list(pairs.values)
    beta = vandermonde_solve(lam, [fetch(j * sigma) for j in range(2 * N)])
    log: list[str] = []
    if sigma == 1:
        phi_exp = [cmath.log(z) / d for z in lam]
        log.append("sigma = 1: principal logarithm is alias-free")
    else:
        w = vandermonde_solve(lam, [fetch(tau + j * sigma) for j in range(N)])
        quotients = _safe_quotients(w, beta)
        phi_exp = [
            exp_resolve(
                lam[i], quotients[i], sigma, tau, d,
                tol=tol.intersection * math.pi / d,
            )
            for i in range(N)
        ]
        log.append(
            f"{N} embedded frequencies resolved in the ({sigma},{tau}) intersection"
        )
    # exp(i zeta t) recovered as phi_exp = i zeta
    zeta = [complex(p) / 1j for p in phi_exp]
    order = sorted(range(N), key=lambda i: zeta[i].real)
    pair_tol = 1e-9 * math.pi / d
    terms = []
    for step in range(n):
        neg, pos = order[step], order[N - 1 - step]
        if zeta[pos].real <= 0 or abs(zeta[pos].real + zeta[neg].real) > pair_tol:
            raise PairingFailure(
                "embedded frequencies do not split into +phi/-phi pairs; "
                "the data is not a real phase-shifted sine sum"
            )
        phi = 0.5 * (zeta[pos].real - zeta[neg].real)
        bp, bm = beta[pos], beta[neg]
        s = -(bp + bm)  # alpha sin(psi)
        c = 1j * (bp - bm)  # alpha cos(psi)
        psi = math.atan2(s.real, c.real)
        amp = math.hypot(s.real, c.real)
        if psi > math.pi / 2:
            psi -= math.pi
            amp = -amp
        elif psi <= -math.pi / 2:
            psi += math.pi
            amp = -amp
        terms.append(Term(alpha=complex(amp), phi=complex(phi), psi=float(psi)))
    model = SparseModel(family=BaseFamily.PHASE_SINE, terms=tuple(terms))
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


# -- cosine-type stage ---------------------------------------------------------


@dataclass(eq=False)
class _TrigStage:
    pairs: EigenPairs
    weights: np.ndarray
    c_sigma: np.ndarray
    c_tau: np.ndarray | None
    rho_values: object
    cond_A: float
    cond_B: float


def _cosine_stage(
    even, scheme: SamplingScheme, n: int, tol: Tolerances, family: BaseFamily
) -> _TrigStage:
    """Pencil, coefficients, and translated quotients for even data.

    ``weights`` are the plain coefficients ``alpha_i``; ``c_sigma`` and
    ``c_tau`` are the cosine values at the dilated and translated
    scales. ``rho_values()`` lazily computes the third-shift cosine
    values, consuming exactly one extra sample.
    """
    sigma, tau = scheme.sigma, abs(scheme.tau)
    A = build_cosine_matrix(even, sigma, sigma, n)
    B = build_cosine_matrix(even, sigma, 0, n)
    pencil = Pencil(A, B, family, (f"C({sigma},{sigma})", f"C({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    c_sigma = np.asarray(pairs.values, dtype=complex)
    rows = cosine_rows(c_sigma, 2 * n, start=0)
    rhs = [even(j * sigma) for j in range(2 * n)]
    weights = least_squares_solve(rows, rhs)
    c_tau = None
    rho_values = None
    if sigma > 1:
        square = cosine_rows(c_sigma, n, start=0)
        F = cosine_transform(even, sigma, tau)
        w = least_squares_solve(square, [F(j) for j in range(n)])
        c_tau = _safe_quotients(w, weights)

        def rho_values() -> np.ndarray:
            G = cosine_transform(even, sigma, sigma + tau)
            w2 = least_squares_solve(square, [G(j) for j in range(n)])
            return _safe_quotients(w2, weights)

    return _TrigStage(pairs, weights, c_sigma, c_tau, rho_values, cond2(A), cond2(B))


def _sine_stage(
    odd, scheme: SamplingScheme, n: int, tol: Tolerances, family: BaseFamily
) -> _TrigStage:
    """Pencil, weighted coefficients, and quotients for odd data.

    The pencil eigenvalues are ``cos(phi_i sigma delta)`` even though
    the data is sine-type; ``weights`` carry the sine products
    ``alpha_i sin(phi_i sigma delta)``, which the row recursion needs no
    frequency knowledge to use.
    """
    sigma, tau = scheme.sigma, abs(scheme.tau)
    A = build_sine_matrix(odd, sigma, sigma, n)
    B = build_sine_matrix(odd, sigma, 0, n)
    pencil = Pencil(A, B, family, (f"B({sigma},{sigma})", f"B({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    c_sigma = np.asarray(pairs.values, dtype=complex)
    ones = np.ones(n, dtype=complex)
    U = sine_progression(c_sigma, ones, 2 * n, start=1)
    rhs = [odd(j * sigma) for j in range(1, 2 * n + 1)]
    weights = least_squares_solve(U, rhs)
    c_tau = None
    rho_values = None
    if sigma > 1:
        square = U[:n]
        F = sine_transform(odd, sigma, tau)
        w = least_squares_solve(square, [F(j) for j in range(1, n + 1)])
        c_tau = _safe_quotients(w, weights)

        def rho_values() -> np.ndarray:
            G = sine_transform(odd, sigma, sigma + tau)
            w2 = least_squares_solve(square, [G(j) for j in range(1, n + 1)])
            return _safe_quotients(w2, weights)

    return _TrigStage(pairs, weights, c_sigma, c_tau, rho_values, cond2(A), cond2(B))


def _resolve_trig(
    stage: _TrigStage,
    scheme: SamplingScheme,
    R: float,
    tol: Tolerances,
    log: list,
) -> list[float]:
    """Turn stage cosine values into frequencies, escalating on ties."""
    sigma, tau = scheme.sigma, abs(scheme.tau)
    d = scheme.delta_real
    if sigma == 1:
        log.append("sigma = 1: Arccos is alias-free")
        return [
            math.acos(min(1.0, max(-1.0, c.real))) / d for c in stage.c_sigma
        ]
    assert stage.c_tau is not None
    rho = sigma + tau
    rho_cache: np.ndarray | None = None
    phis: list[float] = []
    for i, (cs, ct) in enumerate(zip(stage.c_sigma, stage.c_tau)):
        try:
            phi = cos_resolve(
                cs.real, ct.real, sigma, tau, R,
                delta=d, tol=tol.intersection * R,
            )
        except NeedsThirdValue as exc:
            if rho_cache is None:
                rho_cache = stage.rho_values()
                log.append(f"escalated to the third shift rho = {rho}")
            phi = cos_resolve(
                cs.real, ct.real, sigma, tau, R,
                C_rho=rho_cache[i].real, rho=rho,
                delta=d, tol=tol.intersection * R,
            )
            log.append(
                f"term {i}: tie between {tuple(round(v, 6) for v in exc.candidates)} "
                "decided by the third shift"
            )
        phis.append(phi)
    if rho_cache is None:
        log.append(f"{len(phis)} term(s) resolved without the third shift")
    return phis


def analyze_cosine(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i cos(phi_i t)`` from even sample data."""
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    d = scheme.delta_real
    even = even_extension(samples)
    stage = _cosine_stage(even, scheme, n, tol, BaseFamily.COS)
    R = scheme.R if scheme.R is not None else math.pi / d
    log: list[str] = []
    phis = _resolve_trig(stage, scheme, R, tol, log)
    terms = tuple(
        Term(alpha=complex(stage.weights[i]), phi=complex(phis[i])) for i in range(n)
    )
    model = SparseModel(family=BaseFamily.COS, terms=terms)
    return _finish(model, samples, scheme, stage.cond_A, stage.cond_B, log)


def analyze_sine(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i sin(phi_i t)`` from odd sample data.

    The final division by ``sin(phi_i sigma delta)`` turns the stage
    weights into plain coefficients; a vanishing divisor means the
    dilated grid sits on a node of that frequency and is reported as
    such rather than silently amplified.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    d = scheme.delta_real
    odd = odd_extension(samples)
    stage = _sine_stage(odd, scheme, n, tol, BaseFamily.SIN)
    R = scheme.R if scheme.R is not None else math.pi / d
    log: list[str] = []
    phis = _resolve_trig(stage, scheme, R, tol, log)
    sigma = scheme.sigma
    terms = []
    for i in range(n):
        divisor = math.sin(phis[i] * sigma * d)
        if abs(divisor) < 1e-12:
            raise SinNodeZero(
                f"sin(phi * sigma * delta) vanishes for phi = {phis[i]}; "
                "this dilation cannot weight that frequency"
            )
        terms.append(Term(alpha=complex(stage.weights[i] / divisor), phi=complex(phis[i])))
    model = SparseModel(family=BaseFamily.SIN, terms=tuple(terms))
    return _finish(model, samples, scheme, stage.cond_A, stage.cond_B, log)


def analyze_sinc(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i sinc(phi_i t)`` via the abscissa ramp.

    Multiplying even cardinal-sine samples by ``t`` produces an odd
    sine-type sequence with weights ``alpha_i / phi_i``; the sine
    pipeline runs unchanged and the final multiplication restores the
    coefficients. A frequency at (or numerically near) zero leaves the
    ramped data blind to that term.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    d = scheme.delta_real
    ramp = ramp_transform(even_extension(samples), d)

    def odd(i: int) -> complex:
        return 0j if i == 0 else ramp(i)

    stage = _sine_stage(odd, scheme, n, tol, BaseFamily.SINC)
    R = scheme.R if scheme.R is not None else math.pi / d
    log: list[str] = []
    phis = _resolve_trig(stage, scheme, R, tol, log)
    sigma = scheme.sigma
    terms = []
    for i in range(n):
        if abs(phis[i]) <= 1e-12 * (math.pi / d):
            raise PoleDetected(
                "a recovered frequency sits at the removable pole phi = 0; "
                "the ramped samples carry no information about that term"
            )
        divisor = math.sin(phis[i] * sigma * d)
        if abs(divisor) < 1e-12:
            raise SinNodeZero(
                f"sin(phi * sigma * delta) vanishes for phi = {phis[i]}; "
                "this dilation cannot weight that frequency"
            )
        alpha = (stage.weights[i] / divisor) * phis[i]
        terms.append(Term(alpha=complex(alpha), phi=complex(phis[i])))
    model = SparseModel(family=BaseFamily.SINC, terms=tuple(terms))
    return _finish(model, samples, scheme, stage.cond_A, stage.cond_B, log)


# -- hyperbolic ----------------------------------------------------------------


def analyze_hyperbolic(
    samples,
    scheme: SamplingScheme,
    n: int,
    kind: str = "cosh",
    tol: Tolerances | None = None,
) -> RecoveryResult:
    """Recover hyperbolic-cosine or hyperbolic-sine sums (real phi).

    Hyperbolic data never aliases: ``arccosh`` of the pencil eigenvalue
    recovers ``|phi|`` directly, with the sign fixed by the even/odd
    symmetry of the base function. The translated stage is still solved
    (when a translation exists) as a consistency check whose misfit is
    folded into the reported residual.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    if kind not in ("cosh", "sinh"):
        raise SchemaError(f"kind must be 'cosh' or 'sinh', got {kind!r}")
    sigma, tau = scheme.sigma, abs(scheme.tau)
    d = scheme.delta_real
    log: list[str] = ["hyperbolic eigenvalues invert without aliasing"]
    if kind == "cosh":
        family = BaseFamily.COSH
        even = even_extension(samples)
        A = build_cosine_matrix(even, sigma, sigma, n)
        B = build_cosine_matrix(even, sigma, 0, n)
        pencil = Pencil(A, B, family, (f"C({sigma},{sigma})", f"C({sigma},0)"))
    else:
        family = BaseFamily.SINH
        odd = odd_extension(samples)
        A = build_sine_matrix(odd, sigma, sigma, n)
        B = build_sine_matrix(odd, sigma, 0, n)
        pencil = Pencil(A, B, family, (f"B({sigma},{sigma})", f"B({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    phis: list[float] = []
    for z in pairs.values:
        value = z.real
        if value < 1.0 - 1e-6:
            raise DomainError(
                f"pencil eigenvalue {value:.6g} lies below 1; the samples are "
                f"not a real {kind} sum on this grid"
            )
        phis.append(math.acosh(max(1.0, value)) / (sigma * d))
    if kind == "cosh":
        rows = np.array(
            [[math.cosh(p * j * sigma * d) for p in phis] for j in range(2 * n)]
        )
        rhs = [even(j * sigma) for j in range(2 * n)]
        alpha = least_squares_solve(rows, rhs)
        extra = 0.0
        if tau:
            F = cosine_transform(even, sigma, tau)
            square = rows[:n]
            w = least_squares_solve(square, [F(j) for j in range(n)])
            predicted = alpha * np.array([math.cosh(p * tau * d) for p in phis])
            extra = float(np.max(np.abs(w - predicted)))
            log.append(f"translated-stage consistency misfit {extra:.2e}")
    else:
        rows = np.array(
            [[math.sinh(p * j * sigma * d) for p in phis] for j in range(1, 2 * n + 1)]
        )
        rhs = [odd(j * sigma) for j in range(1, 2 * n + 1)]
        alpha = least_squares_solve(rows, rhs)
        extra = 0.0
        if tau:
            F = sine_transform(odd, sigma, tau)
            square = rows[:n]
            w = least_squares_solve(square, [F(j) for j in range(1, n + 1)])
            predicted = alpha * np.array([math.cosh(p * tau * d) for p in phis])
            extra = float(np.max(np.abs(w - predicted)))
            log.append(f"translated-stage consistency misfit {extra:.2e}")
    terms = tuple(Term(alpha=complex(alpha[i]), phi=complex(phis[i])) for i in range(n))
    model = SparseModel(family=family, terms=terms)
    return _finish(
        model, samples, scheme, cond2(A), cond2(B), log, extra_residual=extra
    )


# -- Chebyshev (all four kinds) ------------------------------------------------


_CHEB_FAMILY = {
    1: BaseFamily.CHEB1,
    2: BaseFamily.CHEB2,
    3: BaseFamily.CHEB3,
    4: BaseFamily.CHEB4,
}
_CHEB_OFFSET = {1: 0.0, 2: 1.0, 3: 0.5, 4: 0.5}


def _exact_trig(fn, m: int, offset: float, j: int, sigma: int, d: float, K):
    """``fn((m + offset) j sigma d)`` with integer phase reduction.

    On an angular grid ``delta = pi/K`` the phase is reduced modulo the
    trig period as an exact integer before touching floating point, so
    degree-40000 rows are as accurate as degree-4 ones.
    """
    if K is None:
        return fn((m + offset) * j * sigma * d)
    if offset == 0.5:
        units = ((2 * m + 1) * j * sigma) % (4 * K)
        return fn(units * (d / 2.0))
    units = ((m + int(offset)) * j * sigma) % (2 * K)
    return fn(units * d)


def analyze_chebyshev(
    samples,
    scheme: SamplingScheme,
    n: int,
    kind: int = 1,
    tol: Tolerances | None = None,
) -> RecoveryResult:
    """Recover sparse Chebyshev expansions of the four classical kinds.

    On the angular grid the four kinds premultiply into plain cosine or
    sine sums with frequencies ``m``, ``m+1``, or ``m+1/2``; the
    matching trigonometric pipeline runs on the weighted samples and
    the resolved frequencies snap back to integer degrees. Coefficients
    are then refined against exact-phase rows, which keeps huge degrees
    at full accuracy.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    if kind not in _CHEB_FAMILY:
        raise SchemaError(f"kind must be 1, 2, 3, or 4, got {kind!r}")
    family = _CHEB_FAMILY[kind]
    offset = _CHEB_OFFSET[kind]
    if scheme.M is None:
        raise SchemaError("Chebyshev analysis needs the degree bound M on the scheme")
    M = scheme.M
    sigma = scheme.sigma
    d = scheme.delta_real
    K = scheme.angular_period()
    even = even_extension(samples)
    log: list[str] = []
    if kind == 1:
        g = even
        stage = _cosine_stage(g, scheme, n, tol, family)
    elif kind == 3:
        g = lambda j: even(j) * math.cos(j * d / 2.0)
        stage = _cosine_stage(g, scheme, n, tol, family)
    else:
        half = kind == 4
        weight = (lambda j: math.sin(j * d / 2.0)) if half else (lambda j: math.sin(j * d))

        def g(j: int) -> complex:
            return 0j if j == 0 else even(j) * weight(j)

        stage = _sine_stage(g, scheme, n, tol, family)
    R = float(M) + offset
    phis = _resolve_trig(stage, scheme, R, tol, log)
    degrees: list[int] = []
    for i, phi in enumerate(phis):
        snapped = integer_snap([phi - offset], M, tol.snap)
        if len(snapped) != 1:
            raise NonIntegerCandidate(
                f"resolved frequency {phi:.9g} is not within {tol.snap} of an "
                f"integer degree below M = {M} after removing the kind offset"
            )
        degrees.append(snapped.pop())
    if len(set(degrees)) != n:
        raise CollisionDetected(
            f"recovered degrees {sorted(degrees)} contain duplicates; "
            "distinct terms alias onto the same frequency on this grid"
        )
    log.append(f"degrees snapped to integers: {sorted(degrees)}")
    # refinement: exact-phase rows at the now-known integer degrees
    if kind in (1, 3):
        js = range(2 * n)
        rows = np.array(
            [[_exact_trig(math.cos, m, offset, j, sigma, d, K) for m in degrees] for j in js]
        )
        rhs = [g(j * sigma) for j in js]
    else:
        js = range(1, 2 * n + 1)
        rows = np.array(
            [[_exact_trig(math.sin, m, offset, j, sigma, d, K) for m in degrees] for j in js]
        )
        rhs = [g(j * sigma) for j in js]
    alpha = least_squares_solve(rows, rhs)
    terms = tuple(Term(alpha=complex(alpha[i]), m=degrees[i]) for i in range(n))
    model = SparseModel(family=family, terms=terms)
    return _finish(model, samples, scheme, stage.cond_A, stage.cond_B, log)


# -- spread polynomials ---------------------------------------------------------


def analyze_spread(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover sparse spread-polynomial sums (integer degrees).

    The pencil pairs the product-combination matrix built from the
    dilated auxiliary series against the raw spread matrix; eigenvalues
    are ``sin^2`` of the dilated frequencies, and candidate degrees are
    integers from the start, so the intersection works on snapped sets.
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    if scheme.M is None:
        raise SchemaError("spread analysis needs the degree bound M on the scheme")
    M = scheme.M
    sigma, tau = scheme.sigma, abs(scheme.tau)
    d = scheme.delta_real
    K = scheme.angular_period()
    wrap = spread_extension(samples)
    F_sigma = spread_transform(wrap, sigma, sigma)
    J, Kmat = build_spread_matrices(samples, F_sigma, sigma, n)
    pencil = Pencil(Kmat, J, BaseFamily.SPREAD, (f"K({sigma},{sigma})", "J"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    s_sigma = np.asarray(pairs.values, dtype=complex)
    rows = spread_rows(s_sigma, 2 * n + 1, start=1)
    rhs = [wrap(j * sigma) for j in range(1, 2 * n + 2)]
    weights = least_squares_solve(rows, rhs)
    log: list[str] = []
    degrees: list[int] = []
    if sigma == 1:
        log.append("sigma = 1: spread values snap directly")
        for i in range(n):
            cand = spread_candidates(
                s_sigma[i].real, 1, M, d, snap_tol=tol.snap
            )
            if len(cand) != 1:
                raise NonIntegerCandidate(
                    f"spread value {s_sigma[i].real:.9g} yields "
                    f"{len(cand)} integer candidates instead of one"
                )
            degrees.append(int(cand.values[0]))
    else:
        F_tau = spread_transform(wrap, sigma, tau)
        square = rows[:n]
        w = least_squares_solve(square, [F_tau(j) for j in range(1, n + 1)])
        s_tau = _safe_quotients(w, weights)
        rho = sigma + tau
        rho_cache: np.ndarray | None = None
        for i in range(n):
            try:
                m = spread_resolve(
                    s_sigma[i].real, s_tau[i].real, sigma, tau, M, d,
                    snap_tol=tol.snap,
                )
            except NeedsThirdValue as exc:
                if rho_cache is None:
                    F_rho = spread_transform(wrap, sigma, rho)
                    w2 = least_squares_solve(
                        square, [F_rho(j) for j in range(1, n + 1)]
                    )
                    rho_cache = _safe_quotients(w2, weights)
                    log.append(f"escalated to the third shift rho = {rho}")
                m = spread_resolve(
                    s_sigma[i].real, s_tau[i].real, sigma, tau, M, d,
                    S_rho=rho_cache[i].real, rho=rho, snap_tol=tol.snap,
                )
                log.append(
                    f"term {i}: tie between {exc.candidates} decided by the third shift"
                )
            degrees.append(m)
        if rho_cache is None:
            log.append(f"{n} degree(s) resolved without the third shift")
    if len(set(degrees)) != n:
        raise CollisionDetected(
            f"recovered degrees {sorted(degrees)} contain duplicates; "
            "distinct terms alias onto the same spread value on this grid"
        )
    # refinement with exact-phase spread rows
    def exact_spread(m: int, j: int) -> float:
        if K is None:
            return math.sin(m * j * sigma * d) ** 2
        return math.sin(((m * j * sigma) % K) * d) ** 2

    refine_rows = np.array(
        [[exact_spread(m, j) for m in degrees] for j in range(1, 2 * n + 2)]
    )
    alpha = least_squares_solve(refine_rows, rhs)
    terms = tuple(Term(alpha=complex(alpha[i]), m=degrees[i]) for i in range(n))
    model = SparseModel(family=BaseFamily.SPREAD, terms=terms)
    return _finish(model, samples, scheme, cond2(Kmat), cond2(J), log)


# -- gamma ----------------------------------------------------------------------


def analyze_gamma(
    samples, scheme: SamplingScheme, n: int, tol: Tolerances | None = None
) -> RecoveryResult:
    """Recover ``sum alpha_i Gamma(t + phi_i)`` on a unit-step line.

    The difference recursion turns the samples into a series whose
    Hankel pencil has the parameters themselves as eigenvalues — no
    aliasing and no translated stage. Coefficients divide out the gamma
    values at the recovered arguments; a complex ``delta`` keeps the
    evaluation line clear of the poles.
    """
    from scipy.special import gamma as gamma_fn

    tol = tol or Tolerances()
    n = _require_order(n)
    levels = gamma_levels(samples, scheme.delta, 2 * n)
    A = build_gamma_hankel(levels, 1, n)
    B = build_gamma_hankel(levels, 0, n)
    pencil = Pencil(A, B, BaseFamily.GAMMA, ("H1(levels)", "H0(levels)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    phis = list(pairs.values)
    coeff = vandermonde_solve(phis, levels)
    terms = []
    for i in range(n):
        z = scheme.delta + phis[i]
        nearest = round(z.real)
        if abs(z.imag) < 1e-9 and nearest <= 0 and abs(z.real - nearest) < 1e-9:
            raise GammaPole(
                f"coefficient recovery divides by Gamma({z:.6g}), which sits on "
                "a pole; move the evaluation line with a complex delta"
            )
        g = complex(gamma_fn(z))
        terms.append(Term(alpha=complex(coeff[i]) / g, phi=complex(phis[i])))
    model = SparseModel(family=BaseFamily.GAMMA, terms=tuple(terms))
    log = ["gamma pencil eigenvalues are the parameters themselves"]
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


# -- Gaussian --------------------------------------------------------------------


def analyze_gaussian(
    samples,
    scheme: SamplingScheme,
    n: int,
    width: float = 1.0,
    tol: Tolerances | None = None,
) -> RecoveryResult:
    """Recover ``sum alpha_i exp(-(t - phi_i)^2 / width)``.

    A non-unit width rescales the grid step so the pipeline always runs
    on the canonical unit-width form; centers scale back at the end.
    Stripping the quadratic envelope turns the samples into exponential
    sums in ``exp(2 phi sigma delta)``, and the doubled frequency rides
    the standard exponential intersection (alias-free, window ``2 delta``).
    """
    tol = tol or Tolerances()
    n = _require_order(n)
    _require_shift(scheme)
    if width <= 0:
        raise SchemaError(f"width must be positive, got {width}")
    root = math.sqrt(width)
    d = scheme.delta_real / root
    sigma, tau = scheme.sigma, scheme.tau
    A = build_gauss_hankel(samples, sigma, sigma, n, d)
    B = build_gauss_hankel(samples, sigma, 0, n, d)
    pencil = Pencil(A, B, BaseFamily.GAUSS, (f"G({sigma},{sigma})", f"G({sigma},0)"))
    pairs = generalized_eig(pencil, tol.singular_b)
    _warn_pencil_residuals(pairs, pencil, tol)
    envelope = math.exp(sigma * sigma * d * d)
    nodes = [z * envelope for z in pairs.values]  # exp(2 phi' sigma delta')
    F0 = gauss_transform(samples, sigma, 0, d)
    w0 = vandermonde_solve(nodes, [F0(j) for j in range(2 * n)])
    log: list[str] = []
    if sigma == 1:
        psis = [cmath.log(z) / d for z in nodes]
        log.append("sigma = 1: principal logarithm is alias-free")
    else:
        Ft = gauss_transform(samples, sigma, tau, d)
        w = vandermonde_solve(nodes, [Ft(j) for j in range(n)])
        quotients = _safe_quotients(w, w0) * math.exp(tau * tau * d * d)
        psis = [
            exp_resolve(
                nodes[i], quotients[i], sigma, tau, d,
                tol=tol.intersection * math.pi / d,
            )
            for i in range(n)
        ]
        log.append(
            f"{n} doubled center(s) resolved in the ({sigma},{tau}) intersection"
        )
    terms = []
    for i in range(n):
        phi_unit = complex(psis[i]) / 2.0
        alpha = complex(w0[i]) * cmath.exp(phi_unit * phi_unit)
        terms.append(Term(alpha=alpha, phi=root * phi_unit))
    model = SparseModel(family=BaseFamily.GAUSS, terms=tuple(terms), width=width)
    return _finish(model, samples, scheme, cond2(A), cond2(B), log)


# -- dispatch --------------------------------------------------------------------


def analyze(
    samples,
    family,
    scheme: SamplingScheme,
    n: int | None = None,
    width: float = 1.0,
    nu_max: int = 12,
    threshold: float = 1e-10,
    tol: Tolerances | None = None,
    variant: bool = False,
) -> RecoveryResult:
    """Recover a sparse model, estimating the order first when ``n`` is None.

    ``variant`` switches the exponential family to the translated-pencil
    route. ``width`` applies to the Gaussian families only. The order
    estimate, when one is computed, is attached to the result.
    """
    family = BaseFamily(family)
    gaussian = family in (BaseFamily.GAUSS, BaseFamily.MULTI_GAUSS)
    if width != 1.0 and not gaussian:
        raise SchemaError(f"width applies to the Gaussian families, not {family.value}")
    if variant and family is not BaseFamily.EXP:
        raise SchemaError("the translated-pencil variant exists for exponentials only")
    estimate: OrderEstimate | None = None
    if n is None:
        estimate = estimate_order(
            samples, family, scheme, nu_max=nu_max, threshold=threshold,
            width=width if gaussian else 1.0,
        )
        n = estimate.n
        if family is BaseFamily.PHASE_SINE:
            if n % 2:
                raise PairingFailure(
                    f"the order estimate found {n} embedded frequencies, an odd "
                    "count that cannot split into conjugate pairs"
                )
            n //= 2
        if n == 0:
            raise SchemaError("the order estimate found no active terms")
    if family is BaseFamily.EXP:
        result = (
            analyze_exponential_variant(samples, scheme, n, tol)
            if variant
            else analyze_exponential(samples, scheme, n, tol)
        )
    elif family is BaseFamily.COS:
        result = analyze_cosine(samples, scheme, n, tol)
    elif family is BaseFamily.SIN:
        result = analyze_sine(samples, scheme, n, tol)
    elif family is BaseFamily.PHASE_SINE:
        result = analyze_phase_sine(samples, scheme, n, tol)
    elif family is BaseFamily.COSH:
        result = analyze_hyperbolic(samples, scheme, n, "cosh", tol)
    elif family is BaseFamily.SINH:
        result = analyze_hyperbolic(samples, scheme, n, "sinh", tol)
    elif family in (BaseFamily.CHEB1, BaseFamily.CHEB2, BaseFamily.CHEB3, BaseFamily.CHEB4):
        kind = int(family.value[-1])
        result = analyze_chebyshev(samples, scheme, n, kind, tol)
    elif family is BaseFamily.SPREAD:
        result = analyze_spread(samples, scheme, n, tol)
    elif family is BaseFamily.SINC:
        result = analyze_sinc(samples, scheme, n, tol)
    elif family is BaseFamily.GAMMA:
        result = analyze_gamma(samples, scheme, n, tol)
    elif family is BaseFamily.GAUSS:
        result = analyze_gaussian(samples, scheme, n, width, tol)
    elif family.is_multivariate:
        from .multivariate import analyze_multi_exponential, analyze_multi_gaussian

        if family is BaseFamily.MULTI_EXP:
            result = analyze_multi_exponential(samples, scheme, n, tol)
        else:
            result = analyze_multi_gaussian(samples, scheme, n, width, tol)
    else:  # pragma: no cover - the enum is fully enumerated above
        raise SchemaError(f"no analyzer for family {family.value}")
    if estimate is not None:
        result = replace(result, order_estimate=estimate)
    return result


def report_dict(result: RecoveryResult, samples=None) -> dict:
    """JSON-ready report: model, fit quality, and consumed samples."""
    out: dict = {
        "family": result.model.family.value,
        "n": result.model.n,
        "model": model_to_dict(result.model),
        "residual_max": result.residual_max,
        "cond_A": result.cond_A if math.isfinite(result.cond_A) else None,
        "cond_B": result.cond_B if math.isfinite(result.cond_B) else None,
        "ambiguity_log": list(result.ambiguity_log),
    }
    est = result.order_estimate
    if est is not None:
        out["order_estimate"] = {
            "n": est.n,
            "gap_ratio": est.gap_ratio if math.isfinite(est.gap_ratio) else None,
            "profile": list(est.profile),
        }
    if samples is not None and hasattr(samples, "touched"):
        consumed = sorted(samples.touched)
        out["consumed"] = [list(k) if isinstance(k, tuple) else k for k in consumed]
        out["consumed_count"] = len(consumed)
    return out
