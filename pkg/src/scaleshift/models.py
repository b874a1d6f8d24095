"""Model types: base-function families, terms, sparse models, results.

A sparse model is a weighted sum of ``n`` copies of one base function,
each copy carrying its own nonlinear parameter:

* a complex frequency ``phi`` for the continuous families,
* an integer degree ``m`` for the polynomial families,
* a parameter vector ``phi_vec`` for the multivariate families,
* and, for the phase-shifted sine only, an extra real phase ``psi``.

Everything downstream (sampling, recovery) consumes these types.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, SchemaError, ZeroCoefficient

__all__ = [
    "BaseFamily",
    "Term",
    "SparseModel",
    "OrderEstimate",
    "RecoveryResult",
    "model_to_dict",
    "model_from_dict",
    "model_to_json",
    "model_from_json",
]


class BaseFamily(str, enum.Enum):
    """Supported base-function families.

    The value doubles as the JSON tag and the CLI ``--family`` argument.
    """

    EXP = "exp"
    COS = "cos"
    SIN = "sin"
    PHASE_SINE = "phase-sine"
    COSH = "cosh"
    SINH = "sinh"
    CHEB1 = "cheb1"
    CHEB2 = "cheb2"
    CHEB3 = "cheb3"
    CHEB4 = "cheb4"
    SPREAD = "spread"
    SINC = "sinc"
    GAMMA = "gamma"
    GAUSS = "gauss"
    MULTI_EXP = "multi-exp"
    MULTI_GAUSS = "multi-gauss"

    @property
    def is_integer_family(self) -> bool:
        """Families whose nonlinear parameter is an integer degree."""
        return self in _INTEGER_FAMILIES

    @property
    def is_multivariate(self) -> bool:
        return self in (BaseFamily.MULTI_EXP, BaseFamily.MULTI_GAUSS)


_INTEGER_FAMILIES = frozenset(
    {
        BaseFamily.CHEB1,
        BaseFamily.CHEB2,
        BaseFamily.CHEB3,
        BaseFamily.CHEB4,
        BaseFamily.SPREAD,
    }
)


@dataclass(frozen=True)
class Term:
    """One summand: a weight plus exactly one nonlinear parameter.

    Parameters
    ----------
    alpha:
        Complex weight. Must be nonzero; a zero weight silently lowers
        the model order and breaks every rank-based contract.
    phi:
        Complex frequency (continuous univariate families).
    m:
        Integer degree (polynomial families). Nonnegative.
    psi:
        Real phase, phase-shifted sine only.
    phi_vec:
        Parameter vector (multivariate families).
    """

    alpha: complex
    phi: complex | None = None
    m: int | None = None
    psi: float | None = None
    phi_vec: tuple[complex, ...] | None = None

    def __post_init__(self) -> None:
        if self.alpha == 0:
            raise ZeroCoefficient("term weight alpha must be nonzero")
        kinds = [self.phi is not None, self.m is not None, self.phi_vec is not None]
        if sum(kinds) != 1:
            raise SchemaError(
                "a term must set exactly one of phi, m, phi_vec "
                f"(got phi={self.phi!r}, m={self.m!r}, phi_vec={self.phi_vec!r})"
            )
        if self.m is not None:
            if not isinstance(self.m, int) or isinstance(self.m, bool):
                raise SchemaError(f"degree m must be an int, got {self.m!r}")
            if self.m < 0:
                raise SchemaError(f"degree m must be nonnegative, got {self.m}")
        if self.phi_vec is not None and len(self.phi_vec) == 0:
            raise SchemaError("phi_vec must have at least one component")

    @property
    def parameter(self) -> complex | int | tuple[complex, ...]:
        """Whichever nonlinear parameter this term carries."""
        if self.phi is not None:
            return self.phi
        if self.m is not None:
            return self.m
        assert self.phi_vec is not None
        return self.phi_vec


@dataclass(frozen=True)
class SparseModel:
    """A sparse expansion ``f(t) = sum_i alpha_i g(param_i; t)``.

    ``width`` only matters for the Gaussian families: the base function is
    ``exp(-(t - phi)^2 / width)``, i.e. a bell curve written with standard
    deviation ``w`` stores ``width = 2 w^2``. The default ``1.0`` is the
    canonical unit-width form. A model with no terms is the zero
    function; it simulates to all-zero samples but offers nothing to
    recover.
    """

    family: BaseFamily
    terms: tuple[Term, ...]
    width: float = 1.0
    dim: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.family, BaseFamily):
            raise SchemaError(f"unknown family {self.family!r}")
        if self.width <= 0:
            raise SchemaError(f"width must be positive, got {self.width}")
        for term in self.terms:
            self._check_term(term)
        if self.family.is_multivariate:
            dims = {len(t.phi_vec) for t in self.terms}  # type: ignore[arg-type]
            if self.terms and dims != {self.dim}:
                raise SchemaError(
                    f"all phi_vec lengths must equal dim={self.dim}, got {sorted(dims)}"
                )
        elif self.dim != 1:
            raise SchemaError("dim must be 1 for univariate families")

    def _check_term(self, term: Term) -> None:
        fam = self.family
        if fam.is_multivariate:
            if term.phi_vec is None:
                raise SchemaError(f"family {fam.value} requires phi_vec terms")
        elif fam.is_integer_family:
            if term.m is None:
                raise SchemaError(f"family {fam.value} requires integer-degree terms")
            if fam is BaseFamily.SPREAD and term.m == 0:
                raise SchemaError(
                    "spread degree m must be positive (the degree-0 polynomial is zero)"
                )
        else:
            if term.phi is None:
                raise SchemaError(f"family {fam.value} requires phi terms")
        if (term.psi is not None) != (fam is BaseFamily.PHASE_SINE):
            raise SchemaError("psi is set exactly for the phase-shifted sine family")
        if fam in (BaseFamily.COSH, BaseFamily.SINH) and term.phi is not None:
            if abs(complex(term.phi).imag) > 0:
                raise DomainError(
                    f"family {fam.value} requires real phi "
                    "(complex arguments leave the supported recovery window)"
                )

    @property
    def n(self) -> int:
        """Number of terms (the sparsity)."""
        return len(self.terms)

    # -- evaluation --------------------------------------------------------

    def __call__(self, t):
        return evaluate(self, t)

    def canonical(self) -> "SparseModel":
        """Return the model with terms sorted for stable comparison."""

        def key(term: Term):
            p = term.parameter
            if isinstance(p, tuple):
                return tuple((complex(c).real, complex(c).imag) for c in p)
            c = complex(p)
            return ((c.real, c.imag),)

        return SparseModel(
            family=self.family,
            terms=tuple(sorted(self.terms, key=key)),
            width=self.width,
            dim=self.dim,
        )


def _cheb_t(m: int, theta: float) -> float:
    return math.cos(m * theta)


def _cheb_u(m: int, theta: float) -> float:
    s = math.sin(theta)
    if abs(s) < 1e-15:
        sign = 1.0 if math.cos(theta) > 0 else (-1.0) ** (m % 2)
        return sign * (m + 1)
    return math.sin((m + 1) * theta) / s


def _cheb_v(m: int, theta: float) -> float:
    c = math.cos(theta / 2.0)
    if abs(c) < 1e-15:
        return (-1.0) ** (m % 2) * (2 * m + 1)
    return math.cos((m + 0.5) * theta) / c


def _cheb_w(m: int, theta: float) -> float:
    s = math.sin(theta / 2.0)
    if abs(s) < 1e-15:
        return float(2 * m + 1)
    return math.sin((m + 0.5) * theta) / s


def _cheb_t_rec(m: int, x: float) -> float:
    """T_m(x) by the three-term recurrence (any real x, diagnostics only)."""
    if m == 0:
        return 1.0
    prev, cur = 1.0, x
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def _cheb_u_rec(m: int, x: float) -> float:
    """U_m(x) by the three-term recurrence."""
    if m == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * x
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def _eval_polynomial_anywhere(model: SparseModel, t: float) -> complex:
    """Recurrence-based evaluation off the trigonometric domain."""
    fam = model.family
    total = 0.0
    for term in model.terms:
        m = term.m  # type: ignore[assignment]
        if fam is BaseFamily.CHEB1:
            value = _cheb_t_rec(m, t)
        elif fam is BaseFamily.CHEB2:
            value = _cheb_u_rec(m, t)
        elif fam is BaseFamily.CHEB3:
            value = _cheb_u_rec(m, t) - (_cheb_u_rec(m - 1, t) if m else 0.0)
        elif fam is BaseFamily.CHEB4:
            value = _cheb_u_rec(m, t) + (_cheb_u_rec(m - 1, t) if m else 0.0)
        else:  # spread: S_m(t) = (1 - T_m(1 - 2t)) / 2
            value = 0.5 * (1.0 - _cheb_t_rec(m, 1.0 - 2.0 * t))
        total += term.alpha.real * value
    return complex(total)


def _eval_polynomial(model: SparseModel, t: float, strict: bool = True) -> complex:
    fam = model.family
    if fam is BaseFamily.SPREAD:
        if t < -1e-12 or t > 1.0 + 1e-12:
            if strict:
                raise DomainError(f"spread polynomials live on [0, 1], got t={t}")
            return _eval_polynomial_anywhere(model, t)
        theta = math.asin(math.sqrt(min(max(t, 0.0), 1.0)))
        return sum(
            term.alpha * math.sin(term.m * theta) ** 2 for term in model.terms  # type: ignore[arg-type]
        )
    if abs(t) > 1.0 + 1e-12:
        if strict:
            raise DomainError(f"Chebyshev polynomials are sampled on [-1, 1], got t={t}")
        return _eval_polynomial_anywhere(model, t)
    theta = math.acos(min(max(t, -1.0), 1.0))
    kind = {
        BaseFamily.CHEB1: _cheb_t,
        BaseFamily.CHEB2: _cheb_u,
        BaseFamily.CHEB3: _cheb_v,
        BaseFamily.CHEB4: _cheb_w,
    }[fam]
    return sum(term.alpha * kind(term.m, theta) for term in model.terms)  # type: ignore[arg-type]


def _sinc(z: complex) -> complex:
    if abs(z) < 1e-8:
        # two-term series keeps full double accuracy below the cutoff
        return 1.0 - z * z / 6.0
    return cmath.sin(z) / z


def _eval_scalar(model: SparseModel, t: complex, strict: bool = True) -> complex:
    fam = model.family
    if fam.is_integer_family:
        return _eval_polynomial(
            model, float(t.real if isinstance(t, complex) else t), strict
        )
    if fam is BaseFamily.GAMMA:
        from scipy.special import gamma as _gamma_fn

        total = 0j
        for term in model.terms:
            z = t + term.phi
            if abs(z.imag) < 1e-300 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-12:
                from .errors import GammaPole

                raise GammaPole(
                    f"evaluation at {t} hits a gamma pole for phi={term.phi}; "
                    "shift the evaluation line with a complex translation"
                )
            total += term.alpha * complex(_gamma_fn(z))
        return total
    if fam is BaseFamily.GAUSS:
        return sum(
            term.alpha * cmath.exp(-((t - term.phi) ** 2) / model.width)
            for term in model.terms
        )
    if fam is BaseFamily.EXP:
        return sum(term.alpha * cmath.exp(term.phi * t) for term in model.terms)
    if fam is BaseFamily.COS:
        return sum(term.alpha * cmath.cos(term.phi * t) for term in model.terms)
    if fam is BaseFamily.SIN:
        return sum(term.alpha * cmath.sin(term.phi * t) for term in model.terms)
    if fam is BaseFamily.PHASE_SINE:
        return sum(
            term.alpha * cmath.sin(term.phi * t - term.psi) for term in model.terms
        )
    if fam is BaseFamily.COSH:
        return sum(term.alpha * cmath.cosh(term.phi * t) for term in model.terms)
    if fam is BaseFamily.SINH:
        return sum(term.alpha * cmath.sinh(term.phi * t) for term in model.terms)
    if fam is BaseFamily.SINC:
        return sum(term.alpha * _sinc(term.phi * t) for term in model.terms)
    raise SchemaError(f"scalar evaluation does not apply to family {fam.value}")


def _eval_vector(model: SparseModel, x: Sequence[complex]) -> complex:
    xv = np.asarray(x, dtype=complex)
    if xv.shape != (model.dim,):
        raise SchemaError(f"expected a point of dimension {model.dim}, got shape {xv.shape}")
    total = 0j
    for term in model.terms:
        pv = np.asarray(term.phi_vec, dtype=complex)
        if model.family is BaseFamily.MULTI_EXP:
            total += term.alpha * cmath.exp(complex(np.dot(pv, xv)))
        else:
            diff = xv - pv
            total += term.alpha * cmath.exp(-complex(np.dot(diff, diff)) / model.width)
    return total


def evaluate(model: SparseModel, t, *, strict: bool = True) -> complex | np.ndarray:
    """Evaluate the model at ``t``.

    ``t`` may be a scalar, an array of scalars (univariate families), or a
    single point / array of points with ``dim`` coordinates (multivariate
    families). Chebyshev and spread models are restricted to their
    trigonometric domains ([-1, 1] resp. [0, 1]) unless ``strict=False``,
    which switches to the three-term recurrences for diagnostics off the
    sampling geometry.
    """
    if model.family.is_multivariate:
        arr = np.asarray(t, dtype=complex)
        if arr.ndim == 1:
            return _eval_vector(model, arr)
        return np.array([_eval_vector(model, row) for row in arr])
    if np.ndim(t) == 0:
        return _eval_scalar(model, complex(t), strict)
    return np.array(
        [_eval_scalar(model, complex(v), strict) for v in np.ravel(t)]
    ).reshape(np.shape(t))


# -- results ---------------------------------------------------------------


@dataclass(frozen=True)
class OrderEstimate:
    """Estimated sparsity from a singular-value profile.

    ``gap_ratio`` is the ratio of the last kept singular value to the
    first discarded one; small ratios mean the cut was not clear.
    """

    n: int
    gap_ratio: float
    profile: tuple[float, ...]


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of a recovery run.

    ``residual_max`` is the largest absolute misfit of the recovered model
    against every sample that was consumed. ``cond_A`` / ``cond_B`` are
    the 2-norm condition numbers of the pencil pair at the working order.
    ``ambiguity_log`` records candidate-set sizes and any escalation.
    """

    model: SparseModel
    order_estimate: OrderEstimate | None
    residual_max: float
    cond_A: float
    cond_B: float
    ambiguity_log: tuple[str, ...] = field(default_factory=tuple)


# -- JSON ------------------------------------------------------------------


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _from_pair(value, what: str) -> complex:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise SchemaError(f"{what} must be a [re, im] pair, got {value!r}")
    re, im = value
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
        raise SchemaError(f"{what} entries must be numbers, got {value!r}")
    return complex(re, im)


def model_to_dict(model: SparseModel) -> dict:
    terms = []
    for term in model.terms:
        entry: dict = {"alpha": _pair(term.alpha)}
        if term.phi is not None:
            entry["phi"] = _pair(term.phi)
        if term.m is not None:
            entry["m"] = term.m
        if term.psi is not None:
            entry["psi"] = term.psi
        if term.phi_vec is not None:
            entry["phi_vec"] = [_pair(c) for c in term.phi_vec]
        terms.append(entry)
    out: dict = {"family": model.family.value, "terms": terms}
    if model.family in (BaseFamily.GAUSS, BaseFamily.MULTI_GAUSS) and model.width != 1.0:
        out["width"] = model.width
    if model.family.is_multivariate:
        out["dim"] = model.dim
    return out


def model_from_dict(data: dict) -> SparseModel:
    if not isinstance(data, dict):
        raise SchemaError(f"model document must be an object, got {type(data).__name__}")
    try:
        family = BaseFamily(data["family"])
    except KeyError:
        raise SchemaError("model document lacks the 'family' tag") from None
    except ValueError:
        raise SchemaError(f"unknown family tag {data.get('family')!r}") from None
    raw_terms = data.get("terms")
    if not isinstance(raw_terms, list):
        raise SchemaError("'terms' must be a list")
    terms = []
    for i, entry in enumerate(raw_terms):
        if not isinstance(entry, dict):
            raise SchemaError(f"term {i} must be an object")
        if "alpha" not in entry:
            raise SchemaError(f"term {i} lacks 'alpha'")
        kwargs: dict = {"alpha": _from_pair(entry["alpha"], f"term {i} alpha")}
        if "phi" in entry:
            kwargs["phi"] = _from_pair(entry["phi"], f"term {i} phi")
        if "m" in entry:
            m = entry["m"]
            if not isinstance(m, int) or isinstance(m, bool):
                raise SchemaError(f"term {i} degree m must be an integer, got {m!r}")
            kwargs["m"] = m
        if "psi" in entry:
            psi = entry["psi"]
            if not isinstance(psi, (int, float)) or isinstance(psi, bool):
                raise SchemaError(f"term {i} psi must be a number, got {psi!r}")
            kwargs["psi"] = float(psi)
        if "phi_vec" in entry:
            vec = entry["phi_vec"]
            if not isinstance(vec, list) or not vec:
                raise SchemaError(f"term {i} phi_vec must be a nonempty list of pairs")
            kwargs["phi_vec"] = tuple(
                _from_pair(c, f"term {i} phi_vec[{j}]") for j, c in enumerate(vec)
            )
        terms.append(Term(**kwargs))
    width = data.get("width", 1.0)
    if not isinstance(width, (int, float)) or isinstance(width, bool):
        raise SchemaError(f"width must be a number, got {width!r}")
    dim = data.get(
        "dim",
        len(terms[0].phi_vec) if terms and terms[0].phi_vec is not None else 1,
    )
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SchemaError(f"dim must be an integer, got {dim!r}")
    return SparseModel(family=family, terms=tuple(terms), width=float(width), dim=dim)


def model_to_json(model: SparseModel, indent: int | None = 2) -> str:
    return json.dumps(model_to_dict(model), indent=indent)


def model_from_json(text: str) -> SparseModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return model_from_dict(data)
