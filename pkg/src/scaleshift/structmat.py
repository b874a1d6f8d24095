"""Structured matrices assembled from samples and auxiliary series.

Every recovery pipeline pairs two of these matrices into a pencil whose
generalized eigenvalues carry the nonlinear parameters. Builders fetch
values by integer grid index, so they accept ``SampleSet`` instances,
plain mappings, precomputed series, or closures. Symmetric extensions
for even/odd data are explicit fetch wrappers, never applied behind the
caller's back; the one exception is the spread builder, whose data is
even with a free zero at the origin by construction.

Index conventions mirror the factorization theorems the builders are
tested against: entries live at ``tau + (k +/- l) * sigma`` with
0-based ``k, l``, except the sine-type combination whose rows run
``k = 1..n`` (stored 0-based).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import MissingSample, SchemaError
from .models import BaseFamily

Fetch = Callable[[int], complex]

__all__ = [
    "Pencil",
    "as_fetch",
    "even_extension",
    "odd_extension",
    "spread_extension",
    "ramp_transform",
    "cosine_transform",
    "sine_transform",
    "spread_transform",
    "gauss_transform",
    "gamma_levels",
    "build_hankel",
    "build_toeplitz",
    "build_cosine_matrix",
    "build_sine_matrix",
    "build_spread_matrices",
    "build_gauss_hankel",
    "build_gamma_hankel",
    "line_fetch",
    "build_multivariate_hankel",
    "matrix_to_csv",
    "matrix_from_csv",
]


@dataclass(frozen=True, eq=False)
class Pencil:
    """An ordered matrix pair (A, B) for the problem ``A v = lambda B v``.

    ``labels`` describes the (sigma, tau) roles of A and B so reports
    and dumps stay self-explanatory.
    """

    A: np.ndarray
    B: np.ndarray
    family: BaseFamily
    labels: tuple[str, str] = ("A", "B")

    def __post_init__(self) -> None:
        A = np.asarray(self.A, dtype=complex)
        B = np.asarray(self.B, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise SchemaError(f"pencil matrices must be square, got A {A.shape}")
        if B.shape != A.shape:
            raise SchemaError(
                f"pencil matrices must agree in size, got {A.shape} and {B.shape}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]


# -- fetch adapters ----------------------------------------------------------


def as_fetch(source) -> Fetch:
    """Normalize a sample source into ``index -> complex``.

    Accepts callables, ``SampleSet``/mapping objects, and finite series
    (list/tuple/ndarray, indexed from 0 with explicit bounds checking —
    no silent negative-index wraparound).
    """
    if callable(source):
        return source
    if isinstance(source, (list, tuple, np.ndarray)):
        seq = source

        def fetch_seq(i: int) -> complex:
            if i < 0 or i >= len(seq):
                raise MissingSample(i)
            return complex(seq[i])

        return fetch_seq
    getter = getattr(source, "__getitem__", None)
    if getter is None:
        raise SchemaError(f"cannot fetch samples from {type(source).__name__}")

    def fetch_map(i: int) -> complex:
        try:
            return complex(getter(i))
        except MissingSample:
            raise
        except KeyError:
            raise MissingSample(i) from None

    return fetch_map


def even_extension(source) -> Fetch:
    """Wrap even data: ``f(-i) = f(i)``."""
    fetch = as_fetch(source)
    return lambda i: fetch(abs(i))


def odd_extension(source) -> Fetch:
    """Wrap odd data: ``f(-i) = -f(i)`` and ``f(0) = 0`` for free."""
    fetch = as_fetch(source)

    def fetch_odd(i: int) -> complex:
        if i == 0:
            return 0j
        if i < 0:
            return -fetch(-i)
        return fetch(i)

    return fetch_odd


def spread_extension(source) -> Fetch:
    """Wrap spread data: even, with the free zero ``f(0) = 0``."""
    fetch = as_fetch(source)

    def fetch_spread(i: int) -> complex:
        if i == 0:
            return 0j
        return fetch(abs(i))

    return fetch_spread


# -- auxiliary transforms ----------------------------------------------------


def ramp_transform(source, delta: float) -> Fetch:
    """Multiply samples by their abscissa: ``i -> i*delta*f(i)``.

    Turns even cardinal-sine data into an odd sine-type sequence.
    """
    fetch = as_fetch(source)
    return lambda i: (i * delta) * fetch(i)


def cosine_transform(source, sigma: int, tau: int) -> Fetch:
    """``j -> (f(tau+j*sigma) + f(tau-j*sigma)) / 2`` (cosine/cosh)."""
    fetch = as_fetch(source)
    return lambda j: 0.5 * (fetch(tau + j * sigma) + fetch(tau - j * sigma))


def sine_transform(source, sigma: int, tau: int) -> Fetch:
    """``j -> (f(tau+j*sigma) + f(-tau+j*sigma)) / 2`` (sine/sinh)."""
    fetch = as_fetch(source)
    return lambda j: 0.5 * (fetch(tau + j * sigma) + fetch(-tau + j * sigma))


def spread_transform(source, sigma: int, tau: int) -> Fetch:
    """Spread product combination in the translated samples.

    ``j -> (f(tau) + f(j*sigma))/2 - (f(tau+j*sigma) + f(tau-j*sigma))/4``.
    """
    fetch = as_fetch(source)

    def value(j: int) -> complex:
        return 0.5 * (fetch(tau) + fetch(j * sigma)) - 0.25 * (
            fetch(tau + j * sigma) + fetch(tau - j * sigma)
        )

    return value


def gauss_transform(source, sigma: int, tau: int, delta: float) -> Fetch:
    """Gaussian auxiliary series for one (sigma, tau) pair.

    ``F_j = exp(2*tau*j*sigma*delta^2) * exp(j^2*sigma^2*delta^2)
    * f(tau+j*sigma)``; the exponential factors strip the quadratic
    envelope so F is a plain exponential sum in ``exp(2*phi*sigma*delta)``.
    """
    fetch = as_fetch(source)
    d2 = float(delta) * float(delta)

    def value(j: int) -> complex:
        scale = math.exp((2 * tau * j * sigma + j * j * sigma * sigma) * d2)
        return scale * fetch(tau + j * sigma)

    return value


def gamma_levels(source, base: complex, count: int) -> np.ndarray:
    """Difference-recursion levels for gamma-type data.

    Level 0 is ``f(base + m)``; each step applies
    ``F_j(z) = F_{j-1}(z+1) - z*F_{j-1}(z)`` entrywise, so level ``j``
    evaluated at ``z = base`` equals ``sum_i alpha_i phi_i^j
    Gamma(base + phi_i)``. Consumes ``count`` raw samples and returns
    the ``count`` level-0-at-base values F_0 .. F_{count-1}.
    """
    fetch = as_fetch(source)
    if count < 1:
        raise SchemaError(f"need at least one level, got count={count}")
    level = [fetch(m) for m in range(count)]
    out = [level[0]]
    z = complex(base)
    for _ in range(1, count):
        level = [
            level[m + 1] - (z + m) * level[m] for m in range(len(level) - 1)
        ]
        out.append(level[0])
    return np.asarray(out, dtype=complex)


# -- matrix builders ---------------------------------------------------------


def build_hankel(samples, sigma: int, tau: int, n: int) -> np.ndarray:
    """Hankel matrix with entry ``(k, l) = f(tau + (k+l)*sigma)``."""
    fetch = as_fetch(samples)
    out = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(k, n):
            value = fetch(tau + (k + l) * sigma)
            out[k, l] = value
            out[l, k] = value
    return out


def build_toeplitz(samples, sigma: int, tau: int, n: int) -> np.ndarray:
    """Toeplitz matrix with entry ``(k, l) = f(tau + (k-l)*sigma)``."""
    fetch = as_fetch(samples)
    diagonals = {d: fetch(tau + d * sigma) for d in range(-(n - 1), n)}
    out = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            out[k, l] = diagonals[k - l]
    return out


def build_cosine_matrix(samples, sigma: int, tau: int, n: int) -> np.ndarray:
    """Quarter-sum of the two Hankel and two Toeplitz matrices.

    Entry ``(k, l)`` averages the samples at ``tau +/- (k+l)*sigma`` and
    ``tau +/- (k-l)*sigma``; on cosine-type data this symmetrizes away
    the translation sign.
    """
    fetch = as_fetch(samples)
    return 0.25 * (
        build_hankel(fetch, sigma, tau, n)
        + build_hankel(fetch, -sigma, tau, n)
        + build_toeplitz(fetch, sigma, tau, n)
        + build_toeplitz(fetch, -sigma, tau, n)
    )


def build_sine_matrix(samples, sigma: int, tau: int, n: int) -> np.ndarray:
    """Quarter-sum matrix for sine-type data, rows ``k = 1..n``.

    Entry at (row k, column l+1), 0-based storage (k-1, l):
    ``(f(tau+(k+l)s) + f(-tau+(k+l)s) + f(tau+(k-l)s) + f(-tau+(k-l)s))/4``.
    Negative combined indices are the caller's concern: wrap the samples
    in ``odd_extension`` for pure sine data, or supply them explicitly.
    """
    fetch = as_fetch(samples)
    return 0.25 * (
        build_hankel(fetch, sigma, sigma + tau, n)
        + build_hankel(fetch, sigma, sigma - tau, n)
        + build_toeplitz(fetch, sigma, sigma + tau, n)
        + build_toeplitz(fetch, sigma, sigma - tau, n)
    )


def build_spread_matrices(samples, F, sigma: int, n: int):
    """The spread pencil pair ``(J, K)``, rows and columns ``1..n``.

    ``J`` is assembled from raw samples (even data, free zero at the
    origin): entry ``(k, l) = f(k*s)/2 + f(l*s)/2 - f((k+l)*s)/4 -
    f((k-l)*s)/4``. ``K`` applies the same combination to the auxiliary
    series ``F`` (see ``spread_transform``): ``F(k)/2 + F(l)/2 -
    F(k+l)/4 - F(|k-l|)/4``. Pass ``F=None`` to skip K (order
    estimation needs J alone).
    """
    raw = spread_extension(samples)
    J = np.empty((n, n), dtype=complex)
    for k in range(1, n + 1):
        for l in range(k, n + 1):
            value = (
                0.5 * raw(k * sigma)
                + 0.5 * raw(l * sigma)
                - 0.25 * raw((k + l) * sigma)
                - 0.25 * raw((k - l) * sigma)
            )
            J[k - 1, l - 1] = value
            J[l - 1, k - 1] = value
    if F is None:
        return J, None
    Ff = as_fetch(F)
    K = np.empty((n, n), dtype=complex)
    for k in range(1, n + 1):
        for l in range(k, n + 1):
            value = (
                0.5 * Ff(k) + 0.5 * Ff(l) - 0.25 * Ff(k + l) - 0.25 * Ff(abs(k - l))
            )
            K[k - 1, l - 1] = value
            K[l - 1, k - 1] = value
    return J, K


def build_gauss_hankel(samples, sigma: int, tau: int, n: int, delta: float) -> np.ndarray:
    """Hankel matrix in the Gaussian auxiliary series for (sigma, tau).

    Entry ``(k, l)`` is the transformed value of the sample at
    ``tau + (k+l)*sigma``; the quadratic-envelope factors come from
    ``gauss_transform``, which needs the grid step ``delta``.
    """
    F = gauss_transform(samples, sigma, tau, delta)
    return build_hankel(lambda j: F(j), 1, 0, n)


def build_gamma_hankel(F, k: int, n: int) -> np.ndarray:
    """Hankel matrix of gamma recursion levels with offset ``k``.

    Entry ``(r, c) = F[k + r + c]`` where ``F`` is the level series from
    ``gamma_levels``; offsets 0 and 1 form the recovery pencil.
    """
    fetch = as_fetch(F)
    return build_hankel(fetch, 1, k, n)


def line_fetch(samples, line: int) -> Fetch:
    """Reduce ``(line, index)``-keyed samples to a fetch over one line."""
    getter = samples.__getitem__ if not callable(samples) else samples

    def fetch(j: int) -> complex:
        try:
            return complex(getter((line, j)))
        except MissingSample:
            raise
        except KeyError:
            raise MissingSample((line, j)) from None

    return fetch


def build_multivariate_hankel(samples, line: int, sigma: int, n: int) -> np.ndarray:
    """Hankel matrix of the samples on one shifted line.

    ``samples`` is keyed by ``(line, index)``; entry ``(k, l)`` is the
    value at index ``(k+l)*sigma`` on that line.
    """
    return build_hankel(line_fetch(samples, line), sigma, 0, n)


# -- dumps -------------------------------------------------------------------


def matrix_to_csv(M: np.ndarray) -> str:
    """Serialize a complex matrix as CSV of re,im pairs, row-major."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise SchemaError(f"matrix dump needs a 2-d array, got shape {M.shape}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in M:
        flat: list[str] = []
        for value in row:
            flat.append(repr(value.real))
            flat.append(repr(value.imag))
        writer.writerow(flat)
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    """Parse the ``matrix_to_csv`` format back into a complex matrix."""
    rows: list[list[complex]] = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) % 2 != 0:
            raise SchemaError(
                f"matrix row {lineno} has {len(row)} fields, expected re,im pairs"
            )
        try:
            values = [float(v) for v in row]
        except ValueError as exc:
            raise SchemaError(f"bad matrix row {lineno}: {exc}") from exc
        rows.append(
            [complex(values[i], values[i + 1]) for i in range(0, len(values), 2)]
        )
    if not rows:
        raise SchemaError("matrix document is empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise SchemaError("matrix rows have inconsistent lengths")
    return np.asarray(rows, dtype=complex)
