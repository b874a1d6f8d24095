"""Shared test fixtures: seeded model generators and recovery comparison.

Every generator draws from a ``numpy.random.Generator`` supplied by the
test, so each trial is reproducible from its seed. Parameters are
rejection-sampled to keep the pencil nodes well separated; the margins
mirror the documented separation assumptions (relative gaps of roughly
one percent of the natural parameter window).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from scaleshift import BaseFamily, SamplingScheme, SparseModel, Term

# Natural parameter windows used by the generators, family by family.
COS_WINDOW = 30.0  # frequencies in (0, 30), delta = pi / 30
CHEB_DEGREE_CAP = 60  # degrees below 60, delta = pi / 60
SPREAD_DEGREE_CAP = 40  # degrees 1..39, delta = pi / 80


def _draw_distinct(rng, low, high, n, min_gap):
    """Uniform draws in [low, high] with pairwise distance >= min_gap."""
    for _ in range(400):
        values = sorted(rng.uniform(low, high) for _ in range(n))
        if all(b - a >= min_gap for a, b in zip(values, values[1:])):
            return values
    raise RuntimeError("rejection sampling failed; widen the window")


def _draw_alphas(rng, n, complex_ok):
    out = []
    for _ in range(n):
        mag = rng.uniform(0.4, 2.0)
        if complex_ok:
            out.append(mag * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
        else:
            out.append(mag if rng.uniform() < 0.5 else -mag)
    return out


def _separated(values, min_gap):
    vals = list(values)
    return all(
        abs(a - b) >= min_gap for i, a in enumerate(vals) for b in vals[i + 1 :]
    )


def make_case(family, n, rng, stretched=False):
    """A well-separated random model plus a sampling scheme for it.

    ``stretched`` selects a dilated/translated scheme (sigma > 1) for the
    families that support one; the others keep sigma = 1.
    """
    family = BaseFamily(family)

    if family is BaseFamily.EXP:
        delta = 0.1
        scheme = SamplingScheme(delta=delta, sigma=3, tau=2) if stretched else SamplingScheme(delta=delta)
        for _ in range(400):
            phis = [
                complex(rng.uniform(-0.8, 0.8), rng.uniform(-8.0, 8.0))
                for _ in range(n)
            ]
            nodes = [cmath.exp(p * scheme.sigma * delta) for p in phis]
            if _separated(phis, 0.35) and _separated(nodes, 0.05):
                break
        else:
            raise RuntimeError("exp generator failed")
        terms = tuple(
            Term(a, phi=p) for a, p in zip(_draw_alphas(rng, n, True), phis)
        )
        return SparseModel(family, terms), scheme

    if family in (BaseFamily.COS, BaseFamily.SIN, BaseFamily.SINC):
        delta = math.pi / COS_WINDOW
        scheme = SamplingScheme(delta=delta, sigma=4, tau=3) if stretched else SamplingScheme(delta=delta)
        for _ in range(400):
            phis = _draw_distinct(rng, 0.8, COS_WINDOW - 0.8, n, 0.45)
            nodes = [math.cos(p * scheme.sigma * delta) for p in phis]
            sines = [math.sin(p * scheme.sigma * delta) for p in phis]
            if not _separated(nodes, 4e-3):
                continue
            if family is not BaseFamily.COS and any(abs(s) < 0.06 for s in sines):
                continue
            break
        else:
            raise RuntimeError("trig generator failed")
        terms = tuple(
            Term(a, phi=p) for a, p in zip(_draw_alphas(rng, n, False), phis)
        )
        return SparseModel(family, terms), scheme

    if family is BaseFamily.PHASE_SINE:
        delta = 0.2
        scheme = SamplingScheme(delta=delta, sigma=3, tau=2) if stretched else SamplingScheme(delta=delta)
        for _ in range(400):
            phis = _draw_distinct(rng, 0.4, 4.5, n, 0.35)
            nodes = [cmath.exp(1j * p * scheme.sigma * delta) for p in phis]
            # the exponential reduction uses +phi and -phi nodes together
            if _separated(nodes + [z.conjugate() for z in nodes], 0.06):
                break
        else:
            raise RuntimeError("phase-sine generator failed")
        terms = tuple(
            Term(abs(a), phi=p, psi=rng.uniform(0.15, 1.35))
            for a, p in zip(_draw_alphas(rng, n, False), phis)
        )
        return SparseModel(family, terms), scheme

    if family in (BaseFamily.COSH, BaseFamily.SINH):
        delta = 0.2 if stretched else 0.4
        scheme = SamplingScheme(delta=delta, sigma=3, tau=2) if stretched else SamplingScheme(delta=delta)
        for _ in range(400):
            phis = _draw_distinct(rng, 0.3, 2.2, n, 0.25)
            nodes = [math.cosh(p * scheme.sigma * delta) for p in phis]
            if _separated(nodes, 2e-2):
                break
        else:
            raise RuntimeError("hyperbolic generator failed")
        terms = tuple(
            Term(a, phi=p) for a, p in zip(_draw_alphas(rng, n, False), phis)
        )
        return SparseModel(family, terms), scheme

    if family in (BaseFamily.CHEB1, BaseFamily.CHEB2, BaseFamily.CHEB3, BaseFamily.CHEB4):
        delta = math.pi / CHEB_DEGREE_CAP
        scheme = SamplingScheme(delta=delta, sigma=7, tau=4, M=CHEB_DEGREE_CAP) if stretched else SamplingScheme(delta=delta, M=CHEB_DEGREE_CAP)
        offset = {
            BaseFamily.CHEB1: 0.0,
            BaseFamily.CHEB2: 1.0,
            BaseFamily.CHEB3: 0.5,
            BaseFamily.CHEB4: 0.5,
        }[family]
        sine_type = family in (BaseFamily.CHEB2, BaseFamily.CHEB4)
        for _ in range(800):
            ms = sorted(rng.choice(np.arange(1, CHEB_DEGREE_CAP - 1), size=n, replace=False).tolist())
            nus = [m + offset for m in ms]
            nodes = [math.cos(v * scheme.sigma * delta) for v in nus]
            sines = [math.sin(v * scheme.sigma * delta) for v in nus]
            if not _separated(nodes, 4e-3):
                continue
            if sine_type and any(abs(s) < 0.05 for s in sines):
                continue
            break
        else:
            raise RuntimeError("chebyshev generator failed")
        terms = tuple(
            Term(a, m=int(m)) for a, m in zip(_draw_alphas(rng, n, False), ms)
        )
        return SparseModel(family, terms), scheme

    if family is BaseFamily.SPREAD:
        delta = math.pi / (2 * SPREAD_DEGREE_CAP)
        scheme = SamplingScheme(delta=delta, sigma=3, tau=2, M=SPREAD_DEGREE_CAP) if stretched else SamplingScheme(delta=delta, M=SPREAD_DEGREE_CAP)
        for _ in range(800):
            ms = sorted(rng.choice(np.arange(1, SPREAD_DEGREE_CAP), size=n, replace=False).tolist())
            nodes = [math.sin(m * scheme.sigma * delta) ** 2 for m in ms]
            if _separated(nodes, 1e-3) and all(v >= 3e-3 for v in nodes):
                break
        else:
            raise RuntimeError("spread generator failed")
        terms = tuple(
            Term(a, m=int(m)) for a, m in zip(_draw_alphas(rng, n, False), ms)
        )
        return SparseModel(family, terms), scheme

    if family is BaseFamily.GAMMA:
        scheme = SamplingScheme(delta=0.3)
        for _ in range(400):
            phis = [
                complex(rng.uniform(0.3, 3.0), rng.uniform(-1.0, 1.0))
                for _ in range(n)
            ]
            if _separated(phis, 0.25):
                break
        else:
            raise RuntimeError("gamma generator failed")
        terms = tuple(
            Term(a, phi=p) for a, p in zip(_draw_alphas(rng, n, True), phis)
        )
        return SparseModel(family, terms), scheme

    if family is BaseFamily.GAUSS:
        delta = 0.25
        scheme = SamplingScheme(delta=delta, sigma=3, tau=2) if stretched else SamplingScheme(delta=delta)
        phis = _draw_distinct(rng, 0.2, 2.8, n, 0.3)
        terms = tuple(
            Term(a, phi=p) for a, p in zip(_draw_alphas(rng, n, True), phis)
        )
        return SparseModel(family, terms), scheme

    raise ValueError(f"make_case does not handle {family}")


MULTI_DELTAS = {
    2: (0.3, 0.2),
    3: (0.3, 0.2, 0.25),
}
MULTI_SHIFTS = {
    2: ((0.1, -0.1),),
    3: ((0.1, -0.1, 0.05), (-0.07, 0.12, 0.1)),
}


def make_multi_case(family, n, rng, dim=2):
    """Random multivariate model plus its line-sampling scheme."""
    family = BaseFamily(family)
    deltas = MULTI_DELTAS[dim]
    shifts = MULTI_SHIFTS[dim]
    scheme = SamplingScheme(delta=1.0, dim=dim, delta_vec=deltas, shift_vecs=shifts)
    if family is BaseFamily.MULTI_EXP:
        for _ in range(800):
            vecs = [
                tuple(
                    complex(rng.uniform(-0.7, 0.7), rng.uniform(-2.0, 2.0))
                    for _ in range(dim)
                )
                for _ in range(n)
            ]
            nodes = [
                cmath.exp(sum(p * d for p, d in zip(v, deltas))) for v in vecs
            ]
            aux = [
                [cmath.exp(sum(p * s for p, s in zip(v, sh))) for v in vecs]
                for sh in shifts
            ]
            if _separated(nodes, 0.04) and all(
                _separated(level, 0.02) for level in aux
            ):
                break
        else:
            raise RuntimeError("multi-exp generator failed")
        terms = tuple(
            Term(a, phi_vec=v) for a, v in zip(_draw_alphas(rng, n, True), vecs)
        )
        return SparseModel(family, terms, dim=dim), scheme
    if family is BaseFamily.MULTI_GAUSS:
        for _ in range(800):
            vecs = [
                tuple(rng.uniform(0.2, 1.8) for _ in range(dim))
                for _ in range(n)
            ]
            nodes = [
                math.exp(2.0 * sum(p * d for p, d in zip(v, deltas)))
                for v in vecs
            ]
            if _separated(nodes, 0.03):
                break
        else:
            raise RuntimeError("multi-gauss generator failed")
        terms = tuple(
            Term(a, phi_vec=v) for a, v in zip(_draw_alphas(rng, n, True), vecs)
        )
        return SparseModel(family, terms, dim=dim), scheme
    raise ValueError(f"make_multi_case does not handle {family}")


# -- recovery comparison ------------------------------------------------------


def _wrap_angle(value):
    out = math.fmod(value, 2.0 * math.pi)
    if out > math.pi:
        out -= 2.0 * math.pi
    if out <= -math.pi:
        out += 2.0 * math.pi
    return out


def canonical_terms(model):
    """Terms reduced to comparable (parameter, alpha, extra) triples.

    Handles the representation freedoms of each family: even bases lose
    the sign of phi, pure sine bases flip (alpha, phi) together, and the
    phase-shifted sine flips (alpha, psi) by pi.
    """
    fam = model.family
    rows = []
    for t in model.terms:
        if fam.is_multivariate:
            rows.append((tuple(complex(p) for p in t.phi_vec), complex(t.alpha), 0.0))
            continue
        if t.m is not None:
            rows.append((float(t.m), complex(t.alpha), 0.0))
            continue
        alpha = complex(t.alpha)
        phi = complex(t.phi)
        psi = 0.0
        if fam in (BaseFamily.COS, BaseFamily.COSH):
            if phi.real < 0 or (phi.real == 0 and phi.imag < 0):
                phi = -phi
        elif fam in (BaseFamily.SIN, BaseFamily.SINH, BaseFamily.SINC):
            if phi.real < 0 or (phi.real == 0 and phi.imag < 0):
                phi, alpha = -phi, -alpha
        elif fam is BaseFamily.PHASE_SINE:
            psi = float(t.psi)
            if phi.real < 0:
                phi, psi = -phi, math.pi - psi
                alpha = -alpha
            if alpha.real < 0:
                alpha, psi = -alpha, psi - math.pi
            psi = _wrap_angle(psi)
        rows.append((phi, alpha, psi))
    return sorted(rows, key=lambda r: _sort_key(r[0]))


def _sort_key(param):
    if isinstance(param, tuple):
        return tuple(x for p in param for x in (p.real, p.imag))
    p = complex(param)
    return (round(p.real, 9), round(p.imag, 9))


def recovery_error(found, truth):
    """Worst relative parameter/coefficient error between two models."""
    rows_f = canonical_terms(found)
    rows_t = canonical_terms(truth)
    assert len(rows_f) == len(rows_t), (
        f"term count {len(rows_f)} != {len(rows_t)}"
    )
    worst = 0.0
    for (pf, af, sf), (pt, at, st) in zip(rows_f, rows_t):
        if isinstance(pt, tuple):
            perr = max(
                abs(a - b) / max(1.0, abs(b)) for a, b in zip(pf, pt)
            )
        else:
            perr = abs(pf - pt) / max(1.0, abs(pt))
        aerr = abs(af - at) / max(1.0, abs(at))
        serr = abs(_wrap_angle(sf - st))
        worst = max(worst, perr, aerr, serr)
    return worst


def assert_recovered(found, truth, rtol=1e-7):
    err = recovery_error(found, truth)
    assert err <= rtol, f"worst relative error {err:.3e} > {rtol:.1e}"


UNIVARIATE_FAMILIES = (
    BaseFamily.EXP,
    BaseFamily.COS,
    BaseFamily.SIN,
    BaseFamily.PHASE_SINE,
    BaseFamily.COSH,
    BaseFamily.SINH,
    BaseFamily.CHEB1,
    BaseFamily.CHEB2,
    BaseFamily.CHEB3,
    BaseFamily.CHEB4,
    BaseFamily.SPREAD,
    BaseFamily.SINC,
    BaseFamily.GAMMA,
    BaseFamily.GAUSS,
)
STRETCHABLE = tuple(
    f for f in UNIVARIATE_FAMILIES if f is not BaseFamily.GAMMA
)
