"""Sampling schemes, sample sets, and the reference simulator.

Samples are addressed by integer grid index, never by abscissa: index
``j`` means the point ``j * delta`` for the frequency families,
``cos(j * delta)`` for the Chebyshev families, ``sin(j * delta)^2`` for
the spread family, and ``delta + j`` (a horizontal line in the complex
plane) for the gamma family. Multivariate samples carry a line tag in
front of the index: line 1 is the base direction, lines ``2 .. d`` are
the shifted directions.

A dilation factor ``sigma`` stretches the grid deliberately -- aliasing
the frequencies -- and a translation ``tau`` with ``gcd(sigma, tau) = 1``
restores uniqueness. Schemes validate that arithmetic; model-dependent
window conditions are checked at simulation time.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, GammaPole, MissingSample, PoleDetected, SchemaError
from .models import BaseFamily, SparseModel, Term, evaluate

__all__ = [
    "SamplingScheme",
    "SampleSet",
    "simulate",
    "sample_plan",
    "grid_point",
    "grid_points",
    "aux_transform",
    "gamma_transform",
    "scheme_to_dict",
    "scheme_from_dict",
    "scheme_from_json",
    "scheme_to_json",
    "samples_to_csv",
    "samples_from_csv",
]


@dataclass(frozen=True)
class SamplingScheme:
    """Where to sample: step, dilation, translation, and bounds.

    Parameters
    ----------
    delta:
        Grid step. Real for every family except gamma, where a complex
        value places the evaluation line ``delta + j`` away from the
        poles on the negative real axis.
    sigma:
        Dilation factor, a positive integer.
    tau:
        Translation, an integer coprime with ``sigma``. ``tau = 0``
        describes a pure dilation grid; recovering aliased parameters
        from it alone is ambiguous, which the analyzers reject.
    R:
        Optional frequency window ``[0, R)`` for the cosine-type
        families. When present it must be consistent with ``delta``
        being ``pi/R`` or ``pi/(2R)``.
    M:
        Optional exclusive degree bound for the integer families.
    dim, delta_vec, shift_vecs:
        Multivariate geometry: ``delta_vec`` spans the base line and
        ``shift_vecs`` holds the ``d - 1`` extra directions.
    """

    delta: complex
    sigma: int = 1
    tau: int = 0
    R: float | None = None
    M: int | None = None
    dim: int = 1
    delta_vec: tuple[float, ...] | None = None
    shift_vecs: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", complex(self.delta))
        if self.delta == 0:
            raise SchemaError("delta must be nonzero")
        if not isinstance(self.sigma, int) or isinstance(self.sigma, bool) or self.sigma < 1:
            raise SchemaError(f"sigma must be a positive integer, got {self.sigma!r}")
        if not isinstance(self.tau, int) or isinstance(self.tau, bool):
            raise SchemaError(f"tau must be an integer, got {self.tau!r}")
        # tau = 0 with sigma > 1 is a legal grid (the deliberately aliased
        # stage); recovery on such a scheme is what is ambiguous, and the
        # analyzers enforce that separately.
        if self.tau != 0 and math.gcd(self.sigma, abs(self.tau)) != 1:
            raise SchemaError(
                f"sigma and tau must be coprime, got gcd({self.sigma}, {self.tau}) = "
                f"{math.gcd(self.sigma, abs(self.tau))}"
            )
        if self.R is not None and self.R <= 0:
            raise SchemaError(f"R must be positive, got {self.R}")
        if self.M is not None and (not isinstance(self.M, int) or self.M < 2):
            raise SchemaError(f"M must be an integer bound of at least 2, got {self.M!r}")
        if self.dim < 1:
            raise SchemaError(f"dim must be at least 1, got {self.dim}")
        if self.delta_vec is not None:
            object.__setattr__(self, "delta_vec", tuple(float(v) for v in self.delta_vec))
            if len(self.delta_vec) != self.dim:
                raise SchemaError(
                    f"delta_vec has {len(self.delta_vec)} components, expected dim={self.dim}"
                )
        if self.shift_vecs is not None:
            vecs = tuple(tuple(float(v) for v in vec) for vec in self.shift_vecs)
            object.__setattr__(self, "shift_vecs", vecs)
            for vec in vecs:
                if len(vec) != self.dim:
                    raise SchemaError(
                        f"every shift vector needs dim={self.dim} components, got {len(vec)}"
                    )

    @property
    def delta_real(self) -> float:
        """The step as a real number; complex steps are gamma-only."""
        if abs(self.delta.imag) > 0:
            raise DomainError(
                "this family needs a real grid step; complex delta applies to gamma only"
            )
        return self.delta.real

    def direction_matrix(self) -> np.ndarray:
        """Stack base and shift directions into the d x d system matrix."""
        from .errors import DependentDirections

        if self.delta_vec is None:
            raise SchemaError("multivariate schemes need delta_vec")
        rows = [self.delta_vec]
        rows.extend(self.shift_vecs or ())
        mat = np.asarray(rows, dtype=float)
        if mat.shape != (self.dim, self.dim):
            raise SchemaError(
                f"need {self.dim - 1} shift vectors for dim={self.dim}, "
                f"got {mat.shape[0] - 1}"
            )
        if np.linalg.matrix_rank(mat) < self.dim:
            raise DependentDirections(
                "base and shift directions are linearly dependent; "
                "recovery cannot separate the coordinates"
            )
        return mat

    def angular_period(self) -> int | None:
        """Return K when ``delta`` is ``pi / K`` for an integer K.

        Grids of that form admit exact integer phase reduction in the
        simulator, which keeps sample error at the rounding level even
        for extremely large degrees.
        """
        if abs(self.delta.imag) > 0:
            return None
        ratio = math.pi / self.delta.real
        k = round(ratio)
        if k >= 1 and abs(ratio - k) < 1e-9 * abs(ratio):
            return k
        return None


class SampleSet:
    """Samples keyed by grid index, with consumption tracking.

    Univariate keys are integers; multivariate keys are ``(line, index)``
    pairs. Reading an index that was never provided raises
    ``MissingSample``. Every successful read is recorded in ``touched``
    so a recovery run can be audited for its exact sample consumption.
    """

    def __init__(self, data: Mapping | None = None) -> None:
        self._data: dict = {}
        self.touched: set = set()
        if data:
            for key, value in data.items():
                self[key] = value

    @staticmethod
    def _norm_key(key):
        if isinstance(key, tuple):
            line, idx = key
            return (int(line), int(idx))
        if isinstance(key, (int, np.integer)):
            return int(key)
        raise SchemaError(f"sample keys are ints or (line, index) pairs, got {key!r}")

    def __setitem__(self, key, value) -> None:
        self._data[self._norm_key(key)] = complex(value)

    def __getitem__(self, key) -> complex:
        k = self._norm_key(key)
        try:
            value = self._data[k]
        except KeyError:
            raise MissingSample(k) from None
        self.touched.add(k)
        return value

    def __contains__(self, key) -> bool:
        return self._norm_key(key) in self._data

    def __len__(self) -> int:
        return len(self._data)

    def indices(self) -> list:
        return sorted(self._data)

    def items(self):
        return self._data.items()

    def peek(self, key) -> complex:
        """Read without recording consumption (for diagnostics)."""
        k = self._norm_key(key)
        try:
            return self._data[k]
        except KeyError:
            raise MissingSample(k) from None

    def reset_tracking(self) -> None:
        self.touched = set()

    @property
    def consumed(self) -> int:
        """Distinct samples read since tracking was last reset."""
        return len(self.touched)


# -- grid geometry -----------------------------------------------------------


def grid_point(family: BaseFamily, scheme: SamplingScheme, index: int):
    """Map a grid index to the abscissa the sample lives at."""
    if family is BaseFamily.GAMMA:
        return scheme.delta + index
    d = scheme.delta_real
    if family.is_integer_family:
        if family is BaseFamily.SPREAD:
            return math.sin(index * d) ** 2
        return math.cos(index * d)
    return index * d


def _line_point(scheme: SamplingScheme, line: int, j: int) -> np.ndarray:
    """Vector abscissa of multivariate sample ``(line, j)``."""
    base = np.asarray(scheme.delta_vec, dtype=float)
    if line == 1:
        return j * base
    vecs = scheme.shift_vecs or ()
    if line - 2 >= len(vecs):
        raise SchemaError(f"sample line {line} has no shift vector")
    return np.asarray(vecs[line - 2], dtype=float) + j * base


def grid_points(family: BaseFamily, scheme: SamplingScheme, j_range: Iterable):
    """Indices and abscissae for pencil rows ``j`` in ``j_range``.

    Returns ``(index, location)`` pairs with ``index = tau + j * sigma``
    and the location from ``grid_point`` (gamma rows keep ``index = j``
    on the line ``delta + j``). Multivariate rows are addressed as
    ``(line, j)`` pairs and map to vector locations.
    """
    out = []
    for j in j_range:
        if isinstance(j, tuple):
            line, jj = (int(j[0]), int(j[1]))
            out.append(((line, jj), _line_point(scheme, line, jj)))
            continue
        if family is BaseFamily.GAMMA:
            index = int(j)
        else:
            index = scheme.tau + int(j) * scheme.sigma
        out.append((index, grid_point(family, scheme, index)))
    return out


def aux_transform(family: BaseFamily, samples, scheme: SamplingScheme, j: int) -> complex:
    """One value of the family's shift-separating series F at row ``j``.

    F combines translated samples so the shift factors out of the
    dilation grid: the even families average ``f`` at ``tau +- j*sigma``,
    the odd families at ``+-tau + j*sigma``, spread takes its product
    combination, the Gaussian strips the quadratic envelope, and the
    cardinal sine multiplies by the abscissa first (turning the even data
    odd). Symmetric families fill negative indices by their parity;
    anything else missing raises ``MissingSample``.
    """
    # structmat hosts the transform machinery next to the matrix builders;
    # imported lazily since it sits a layer above the sample containers.
    from . import structmat as sm

    sigma, tau = scheme.sigma, scheme.tau
    if family in (BaseFamily.COS, BaseFamily.COSH, BaseFamily.CHEB1, BaseFamily.CHEB3):
        return complex(sm.cosine_transform(sm.even_extension(samples), sigma, tau)(j))
    if family in (BaseFamily.SIN, BaseFamily.SINH, BaseFamily.CHEB2, BaseFamily.CHEB4):
        return complex(sm.sine_transform(sm.odd_extension(samples), sigma, tau)(j))
    if family is BaseFamily.SINC:
        ramp = sm.ramp_transform(sm.even_extension(samples), scheme.delta_real)
        return complex(sm.odd_extension(ramp)(tau + j * sigma))
    if family is BaseFamily.SPREAD:
        return complex(
            sm.spread_transform(sm.spread_extension(samples), sigma, tau)(j)
        )
    if family is BaseFamily.GAUSS:
        return complex(sm.gauss_transform(samples, sigma, tau, scheme.delta_real)(j))
    raise SchemaError(
        f"family {family.value} has no auxiliary series; its samples feed "
        "the recovery directly"
    )


def gamma_transform(samples, base: complex, depth: int):
    """Difference-recursion series F_0 .. F_depth for gamma-type data.

    ``base`` is the abscissa of sample 0 (the translation plus the step),
    so sample ``j`` sits at ``base + j`` and level ``j`` satisfies
    ``F_j = sum_i alpha_i phi_i^j Gamma(base + phi_i)``.
    """
    from . import structmat as sm

    zb = complex(base)
    if abs(zb.imag) < 1e-300:
        for m in range(depth + 1):
            z = zb.real + m
            if z <= 0 and abs(z - round(z)) < 1e-12:
                raise PoleDetected(
                    f"the evaluation line hits a gamma pole at {z}; "
                    "choose a complex translation"
                )
    return sm.gamma_levels(samples, zb, depth + 1)


def _nyquist_bound(family: BaseFamily, term: Term, scheme: SamplingScheme) -> None:
    """Reject models whose frequencies alias already on the unit grid."""
    d = scheme.delta_real
    if family is BaseFamily.GAUSS:
        if abs(complex(term.phi).imag) * 2 * d >= math.pi:
            raise DomainError(
                f"|Im phi| = {abs(complex(term.phi).imag)} leaves the window "
                f"|Im phi| * 2 delta < pi for the Gaussian family"
            )
        return
    if family in (BaseFamily.COS, BaseFamily.SIN, BaseFamily.PHASE_SINE, BaseFamily.SINC):
        phi = complex(term.phi)
        if abs(phi.imag) * d >= math.pi:
            raise DomainError(
                f"|Im phi| * delta = {abs(phi.imag) * d} must stay below pi"
            )
        if abs(phi.real) * d >= math.pi:
            raise DomainError(
                f"|phi| * delta = {abs(phi.real) * d} must stay below pi "
                "for unambiguous recovery on the unit grid"
            )
        return
    if family is BaseFamily.EXP:
        if abs(complex(term.phi).imag) * d >= math.pi:
            raise DomainError(
                f"|Im phi| * delta = {abs(complex(term.phi).imag) * d} must stay below pi"
            )
        return
    if family in (BaseFamily.COSH, BaseFamily.SINH):
        # real phi enforced at model level; the exp-side window applies
        if abs(complex(term.phi).real) * d >= math.pi:
            raise DomainError("|phi| * delta must stay below pi for hyperbolic data")


def _check_model_scheme(model: SparseModel, scheme: SamplingScheme) -> None:
    fam = model.family
    if fam.is_integer_family:
        if scheme.M is not None:
            for term in model.terms:
                if term.m >= scheme.M:  # type: ignore[operator]
                    raise DomainError(
                        f"degree {term.m} exceeds the declared bound M={scheme.M}"
                    )
        d = scheme.delta_real
        if scheme.M is not None:
            limit = math.pi / (2 * scheme.M) if fam is BaseFamily.SPREAD else math.pi / scheme.M
            if d > limit * (1 + 1e-12):
                raise DomainError(
                    f"delta={d} is too coarse for M={scheme.M}; "
                    f"the bound requires delta <= {limit}"
                )
    elif fam is BaseFamily.GAMMA:
        pass
    elif fam.is_multivariate:
        if scheme.delta_vec is None:
            raise SchemaError("multivariate sampling needs delta_vec")
        dvec = np.asarray(scheme.delta_vec)
        shifts = [np.asarray(v) for v in (scheme.shift_vecs or ())]
        for term in model.terms:
            pv = np.asarray(term.phi_vec, dtype=complex)
            if fam is BaseFamily.MULTI_GAUSS:
                pv = 2.0 * pv  # the transform doubles the effective frequency
            if abs(complex(np.dot(pv, dvec)).imag) >= math.pi:
                raise DomainError("|Im <phi, delta_vec>| must stay below pi")
            for vec in shifts:
                if abs(complex(np.dot(pv, vec)).imag) >= math.pi:
                    raise DomainError(
                        "|Im <phi, shift>| reaches pi for a shift vector; "
                        "shrink that shift or rescale the model"
                    )
    else:
        for term in model.terms:
            _nyquist_bound(fam, term, scheme)


# -- index plans -------------------------------------------------------------


def sample_plan(
    family: BaseFamily,
    scheme: SamplingScheme,
    n: int,
    *,
    order_rows: int | None = None,
    with_escalation: bool = True,
    variant: bool = False,
) -> list:
    """Indices a recovery at sparsity ``n`` may read, in sorted order.

    The plan covers the dilation-grid pencil, the translated stage, and
    (by default) the third-shift escalation reserve, plus the wider
    square matrix used for order estimation when ``order_rows`` exceeds
    ``n``. Symmetric families list only canonical nonnegative indices.
    ``variant`` widens the translated stage to the 4n-2 layout used by
    the eigenvalue-in-tau pencil route.
    """
    sigma, tau = scheme.sigma, scheme.tau
    nn = max(n, order_rows or 0)
    idx: set[int] = set()
    if family is BaseFamily.GAMMA:
        return [j for j in range(2 * nn)]
    if family.is_multivariate:
        plan: list = [(1, j) for j in range(2 * nn)]
        for k in range(2, scheme.dim + 1):
            plan.extend((k, j) for j in range(n))
        return plan
    if family in (BaseFamily.EXP, BaseFamily.PHASE_SINE, BaseFamily.GAUSS):
        # No escalation reserve: the exponential-type intersection is
        # provably unique for coprime (sigma, tau), so no third shift.
        reach = 2 if family is BaseFamily.PHASE_SINE else 1
        idx.update(j * sigma for j in range(2 * nn * reach))
        if tau:
            idx.update(tau + j * sigma for j in range(n * reach))
            if variant:
                idx.update(tau + j * sigma for j in range(2 * nn * reach - 1))
        return sorted(idx)
    if family in (BaseFamily.COS, BaseFamily.COSH, BaseFamily.CHEB1,
                  BaseFamily.CHEB3):
        idx.update(j * sigma for j in range(2 * nn))
        if tau:
            idx.update(abs(tau + j * sigma) for j in range(-(n - 1), n))
            if with_escalation:
                idx.add(abs(tau + n * sigma))
        return sorted(idx)
    if family in (BaseFamily.SIN, BaseFamily.SINH, BaseFamily.SINC,
                  BaseFamily.CHEB2, BaseFamily.CHEB4):
        idx.update(j * sigma for j in range(1, 2 * nn + 1))
        if tau:
            idx.update(abs(tau + j * sigma) for j in range(1, n + 1))
            idx.update(abs(-tau + j * sigma) for j in range(1, n + 1))
            if with_escalation:
                idx.add(abs(tau + (n + 1) * sigma))
                idx.add(abs(tau))
        return sorted(idx)
    if family is BaseFamily.SPREAD:
        idx.update(j * sigma for j in range(1, 2 * nn + 2))
        if tau:
            idx.add(abs(tau))
            idx.update(abs(tau + j * sigma) for j in range(1, n + 1))
            idx.update(abs(tau - j * sigma) for j in range(1, n + 1))
            if with_escalation:
                idx.add(abs(tau + (n + 1) * sigma))
        return sorted(idx)
    raise SchemaError(f"no sampling plan for family {family.value}")


# -- simulation --------------------------------------------------------------


def _reduced_polynomial_value(model: SparseModel, index: int, K: int) -> complex:
    """Exact-phase evaluation on an angular grid ``delta = pi / K``.

    Phases ``m * index * delta`` are reduced as integers modulo the trig
    period before touching floating point, so the sample error stays at
    the few-ulp level no matter how large the degrees are.
    """
    d = math.pi / K
    fam = model.family
    total = 0j
    for term in model.terms:
        m = term.m
        if fam is BaseFamily.CHEB1:
            total += term.alpha * math.cos(((m * index) % (2 * K)) * d)
        elif fam is BaseFamily.SPREAD:
            total += term.alpha * math.sin(((m * index) % K) * d) ** 2
        elif fam is BaseFamily.CHEB2:
            s = math.sin(index * d)
            num = math.sin((((m + 1) * index) % (2 * K)) * d)
            if abs(s) < 1e-15:
                sign = 1.0 if math.cos(index * d) > 0 else (-1.0) ** (m % 2)
                total += term.alpha * sign * (m + 1)
            else:
                total += term.alpha * num / s
        elif fam in (BaseFamily.CHEB3, BaseFamily.CHEB4):
            # half-angle phases (2m+1) * index * delta / 2 on a 4K period
            half = d / 2.0
            phase = ((2 * m + 1) * index) % (4 * K)
            if fam is BaseFamily.CHEB3:
                den = math.cos(index * d / 2.0)
                num = math.cos(phase * half)
                if abs(den) < 1e-15:
                    total += term.alpha * (-1.0) ** (m % 2) * (2 * m + 1)
                else:
                    total += term.alpha * num / den
            else:
                den = math.sin(index * d / 2.0)
                num = math.sin(phase * half)
                if abs(den) < 1e-15:
                    total += term.alpha * (2 * m + 1)
                else:
                    total += term.alpha * num / den
        else:  # pragma: no cover - guarded by caller
            raise SchemaError(f"no reduced evaluation for {fam.value}")
    return total


def simulate(
    model: SparseModel,
    scheme: SamplingScheme,
    indices: Iterable | None = None,
    *,
    n: int | None = None,
    order_rows: int | None = None,
    variant: bool = False,
    noise: float = 0.0,
    seed: int | None = None,
) -> SampleSet:
    """Evaluate ``model`` on the scheme's grid at the requested indices.

    When ``indices`` is omitted, the plan for sparsity ``n`` (default:
    the model's own order) is generated, escalation reserve included;
    ``variant`` widens it for the eigenvalue-in-shift recovery route.
    Gaussian noise of scale ``noise`` is added per component when
    requested; the generator is seeded for reproducibility.
    """
    _check_model_scheme(model, scheme)
    if indices is None:
        indices = sample_plan(
            model.family, scheme, n or model.n, order_rows=order_rows, variant=variant
        )
    out = SampleSet()
    K = scheme.angular_period() if model.family.is_integer_family else None
    for key in indices:
        if model.family.is_multivariate:
            line, j = key
            value = evaluate(model, _line_point(scheme, int(line), int(j)))
        elif K is not None:
            value = _reduced_polynomial_value(model, int(key), K)
        elif model.family is BaseFamily.GAMMA:
            z = scheme.delta + int(key)
            value = evaluate(model, z)
        else:
            value = evaluate(model, grid_point(model.family, scheme, int(key)))
        out[key] = value
    if noise:
        rng = np.random.default_rng(seed)
        for key in list(out._data):
            bump = complex(rng.normal(0.0, noise), rng.normal(0.0, noise))
            out._data[key] = out._data[key] + bump
    return out


# -- JSON / CSV formats ------------------------------------------------------


def scheme_to_dict(scheme: SamplingScheme) -> dict:
    out: dict = {"sigma": scheme.sigma, "tau": scheme.tau}
    if scheme.delta.imag:
        out["delta"] = [scheme.delta.real, scheme.delta.imag]
    else:
        out["delta"] = scheme.delta.real
    if scheme.R is not None:
        out["R"] = scheme.R
    if scheme.M is not None:
        out["M"] = scheme.M
    if scheme.delta_vec is not None:
        out["delta_vec"] = list(scheme.delta_vec)
        out["dim"] = scheme.dim
    if scheme.shift_vecs is not None:
        out["shift_vecs"] = [list(v) for v in scheme.shift_vecs]
    return out


def scheme_from_dict(data: dict) -> SamplingScheme:
    if not isinstance(data, dict):
        raise SchemaError(f"scheme document must be an object, got {type(data).__name__}")
    if "delta" not in data:
        raise SchemaError("scheme document lacks 'delta'")
    raw = data["delta"]
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise SchemaError(f"complex delta must be a [re, im] pair, got {raw!r}")
        delta = complex(raw[0], raw[1])
    elif isinstance(raw, (int, float)) and not isinstance(raw, bool):
        delta = complex(raw)
    else:
        raise SchemaError(f"delta must be a number or [re, im] pair, got {raw!r}")
    kwargs: dict = {
        "delta": delta,
        "sigma": data.get("sigma", 1),
        "tau": data.get("tau", 0),
    }
    if "R" in data:
        kwargs["R"] = float(data["R"])
    if "M" in data:
        kwargs["M"] = data["M"]
    if "delta_vec" in data:
        kwargs["delta_vec"] = tuple(data["delta_vec"])
        kwargs["dim"] = data.get("dim", len(data["delta_vec"]))
    if "shift_vecs" in data:
        kwargs["shift_vecs"] = tuple(tuple(v) for v in data["shift_vecs"])
    return SamplingScheme(**kwargs)


def scheme_from_json(text: str) -> SamplingScheme:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return scheme_from_dict(data)


def scheme_to_json(scheme: SamplingScheme, indent: int | None = 2) -> str:
    return json.dumps(scheme_to_dict(scheme), indent=indent)


def samples_to_csv(samples: SampleSet) -> str:
    """Serialize: ``index,re,im`` rows, or ``line,index,re,im``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for key in samples.indices():
        value = samples.peek(key)
        if isinstance(key, tuple):
            writer.writerow([key[0], key[1], repr(value.real), repr(value.imag)])
        else:
            writer.writerow([key, repr(value.real), repr(value.imag)])
    return buf.getvalue()


def samples_from_csv(text: str) -> SampleSet:
    out = SampleSet()
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        try:
            if len(row) == 3:
                key: object = int(row[0])
                value = complex(float(row[1]), float(row[2]))
            elif len(row) == 4:
                key = (int(row[0]), int(row[1]))
                value = complex(float(row[2]), float(row[3]))
            else:
                raise ValueError(f"expected 3 or 4 fields, got {len(row)}")
        except ValueError as exc:
            raise SchemaError(f"bad sample row {lineno}: {exc}") from exc
        out[key] = value
    return out
