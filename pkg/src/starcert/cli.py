"""Command-line surface for batch verification runs.

Subcommands
-----------
check       run one criterion against a function spec file
extremal    construct an extremal family member and self-check it
jack        locate a circle maximum and report z0 w'(z0)/w(z0)
identities  randomized conformance sweep of the rewrite identities

Exit codes: 0 = certified / assertions pass, 1 = hypothesis or conclusion
failure, 2 = inadmissible or degenerate input, 3 = usage error.

Function spec files are JSON with complex scalars as two-element
``[re, im]`` arrays::

    {"kind": "BUILTIN", "builtin": "koebe", "n": 1, "trunc": 128}
    {"kind": "COEFFS", "n": 2, "trunc": 64, "coeffs": [[0,0], [0.1,0.2]]}
    {"kind": "EXTREMAL_B", "n": 1, "trunc": 128,
     "extremal": {"alpha": 0.5, "beta": [1,0], "gamma": [1,0]}}

For ``check``/``extremal`` the ``coeffs`` list gives ``a_2, a_3, ...``
(``a_1`` is implied 1).  For ``jack`` a COEFFS file is the probed series
itself: entries are ``c_1, c_2, ...`` with ``c_0 = 0`` implied.

Reports are written as JSON with a ``timestamp`` header and a ``report``
body; the body is deterministic for identical inputs and tool version.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np

from . import __version__
from .series import (
    DEFAULT_TRUNC_ORDER,
    SchlichtCandidate,
    Series,
    SeriesError,
    builtin_candidate,
    make_series,
    schlicht_from_tail,
)
from .functionals import ParameterError, identity_sweep, w_func
from .criteria import CriterionKind, CriterionParams
from .extremals import (
    DegenerateExtremalError,
    ExtremalFamily,
    ExtremalParams,
    InadmissibleExtremalError,
    build_extremal,
    probe_identity_a,
    verify_identity_b,
)
from .oracle import (
    DegenerateSeriesError,
    SamplingConfig,
    Verdict,
    VerificationReport,
    check_criterion,
    jack_demo,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_REJECTED = 2
EXIT_USAGE = 3

_VERDICT_EXIT = {
    Verdict.CERTIFIED_SAMPLED: EXIT_OK,
    Verdict.HYPOTHESIS_FAILED: EXIT_FAILED,
    Verdict.CONCLUSION_FAILED: EXIT_FAILED,
    Verdict.INADMISSIBLE: EXIT_REJECTED,
    Verdict.DEGENERATE: EXIT_REJECTED,
}

_BUILTINS = ("identity", "koebe", "halfplane")


class UsageError(Exception):
    pass


class SpecFileError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected a complex scalar as 're' or 're,im', got {text!r}")


def _parse_radii(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated radii, got {text!r}")


def _complex_from_pair(value, where: str) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) for v in value)):
        raise SpecFileError(f"{where}: complex scalars are [re, im] pairs, got {value!r}")
    return complex(value[0], value[1])


@dataclasses.dataclass(frozen=True)
class FunctionSpec:
    """Parsed function spec file."""

    kind: str
    n: int
    trunc: int
    coeffs: tuple[complex, ...] | None = None
    alpha: float | None = None
    beta: complex | None = None
    gamma: complex | None = None
    builtin: str | None = None


_SPEC_FIELDS = {
    "COEFFS": {"kind", "n", "trunc", "coeffs"},
    "BUILTIN": {"kind", "n", "trunc", "builtin"},
    "EXTREMAL_A": {"kind", "n", "trunc", "extremal"},
    "EXTREMAL_B": {"kind", "n", "trunc", "extremal"},
}


def parse_function_spec(data: dict) -> FunctionSpec:
    if not isinstance(data, dict):
        raise SpecFileError("spec file must hold a JSON object")
    kind = data.get("kind")
    if kind not in _SPEC_FIELDS:
        raise SpecFileError(
            f"field 'kind': expected one of {sorted(_SPEC_FIELDS)}, got {kind!r}")
    allowed = _SPEC_FIELDS[kind]
    extra = set(data) - allowed
    if extra:
        raise SpecFileError(f"unexpected fields for kind {kind}: {sorted(extra)}")
    missing = allowed - set(data)
    if missing:
        raise SpecFileError(f"missing fields for kind {kind}: {sorted(missing)}")
    n = data["n"]
    trunc = data["trunc"]
    if not isinstance(n, int) or n < 1:
        raise SpecFileError(f"field 'n': positive integer required, got {n!r}")
    if not isinstance(trunc, int) or trunc < n + 2:
        raise SpecFileError(
            f"field 'trunc': integer >= n+2 = {n + 2} required, got {trunc!r}")
    if kind == "COEFFS":
        raw = data["coeffs"]
        if not isinstance(raw, list):
            raise SpecFileError("field 'coeffs': list of [re, im] pairs required")
        if len(raw) > trunc - 1:
            raise SpecFileError(
                f"field 'coeffs': {len(raw)} entries exceed trunc-1 = {trunc - 1}")
        coeffs = tuple(_complex_from_pair(v, f"coeffs[{i}]")
                       for i, v in enumerate(raw))
        return FunctionSpec(kind=kind, n=n, trunc=trunc, coeffs=coeffs)
    if kind == "BUILTIN":
        name = data["builtin"]
        if name not in _BUILTINS:
            raise SpecFileError(
                f"field 'builtin': expected one of {_BUILTINS}, got {name!r}")
        return FunctionSpec(kind=kind, n=n, trunc=trunc, builtin=name)
    ext = data["extremal"]
    if not isinstance(ext, dict) or set(ext) != {"alpha", "beta", "gamma"}:
        raise SpecFileError(
            "field 'extremal': object with exactly alpha, beta, gamma required")
    alpha = ext["alpha"]
    if not isinstance(alpha, (int, float)):
        raise SpecFileError(f"field 'extremal.alpha': number required, got {alpha!r}")
    return FunctionSpec(
        kind=kind, n=n, trunc=trunc, alpha=float(alpha),
        beta=_complex_from_pair(ext["beta"], "extremal.beta"),
        gamma=_complex_from_pair(ext["gamma"], "extremal.gamma"),
    )


def function_spec_to_dict(fs: FunctionSpec) -> dict:
    out: dict = {"kind": fs.kind, "n": fs.n, "trunc": fs.trunc}
    if fs.kind == "COEFFS":
        out["coeffs"] = [[c.real, c.imag] for c in fs.coeffs]
    elif fs.kind == "BUILTIN":
        out["builtin"] = fs.builtin
    else:
        out["extremal"] = {
            "alpha": fs.alpha,
            "beta": [fs.beta.real, fs.beta.imag],
            "gamma": [fs.gamma.real, fs.gamma.imag],
        }
    return out


def load_function_spec(path: str) -> FunctionSpec:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SpecFileError(f"cannot read spec file {path}: {e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFileError(
            f"malformed JSON in {path} at line {e.lineno}, column {e.colno}: {e.msg}")
    return parse_function_spec(data)


def candidate_from_spec(fs: FunctionSpec) -> SchlichtCandidate:
    if fs.kind == "BUILTIN":
        return builtin_candidate(fs.builtin, fs.trunc, fs.n)
    if fs.kind == "COEFFS":
        return schlicht_from_tail(fs.n, fs.coeffs, fs.trunc)
    family = ExtremalFamily(fs.kind)
    params = ExtremalParams(family=family, n=fs.n, alpha=fs.alpha,
                            beta=fs.beta, gamma=fs.gamma)
    return build_extremal(params, fs.trunc)


def probe_series_from_spec(fs: FunctionSpec) -> Series:
    """Series the jack command probes: COEFFS files are taken verbatim as
    ``c_1, c_2, ...`` (c_0 = 0); other kinds contribute their w-transform."""
    if fs.kind == "COEFFS":
        arr = np.zeros(fs.trunc + 1, dtype=np.complex128)
        for i, c in enumerate(fs.coeffs):
            arr[i + 1] = c
        return make_series(arr)
    return w_func(candidate_from_spec(fs))


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonable(obj.item())
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def render_report_body(command: str, sections: dict) -> str:
    body = {"tool": {"name": "starcert", "version": __version__},
            "command": command}
    body.update(sections)
    return json.dumps(_jsonable(body), sort_keys=True, indent=2) + "\n"


def write_report(path: str, body_text: str) -> None:
    stamp = datetime.now(timezone.utc).isoformat()
    payload = ('{\n"timestamp": ' + json.dumps(stamp) + ',\n"report":\n'
               + body_text.rstrip("\n") + "\n}\n")
    Path(path).write_text(payload)


def _fmt_c(z: complex | None) -> str:
    if z is None:
        return "none"
    return f"[{z.real!r}, {z.imag!r}]"


def _fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _sampling_config(args) -> SamplingConfig:
    kwargs = {}
    if getattr(args, "radii", None):
        kwargs["radii"] = args.radii
    if getattr(args, "angles", None):
        kwargs["angles"] = args.angles
    if getattr(args, "no_refine", False):
        kwargs["refine"] = False
    try:
        return SamplingConfig(**kwargs)
    except ValueError as e:
        raise UsageError(str(e))


def _criterion_params(args, default_n: int) -> CriterionParams:
    kind = CriterionKind(args.kind)
    n = args.n if args.n is not None else default_n
    if n != default_n:
        raise UsageError(
            f"--n {n} conflicts with the function's class index {default_n}")
    kwargs = dict(kind=kind, n=n, gamma=args.gamma,
                  alpha=args.alpha, rho=args.rho)
    if args.beta is not None:
        kwargs["beta"] = args.beta
    try:
        return CriterionParams(**kwargs)
    except ParameterError as e:
        raise UsageError(str(e))


def _print_verification(rep: VerificationReport) -> None:
    spec = rep.spec
    print(f"criterion: {rep.kind.value}  lhs={spec.lhs.value}  "
          f"beta={_fmt_c(spec.eff_beta)} gamma={_fmt_c(spec.eff_gamma)} "
          f"alpha={_fmt(spec.alpha)} rho={_fmt(spec.rho)}")
    print(f"admissible: {'yes' if spec.admissible else 'NO'} "
          f"(margin {_fmt(spec.admissibility_margin)})")
    if rep.verdict is Verdict.INADMISSIBLE:
        print("verdict: INADMISSIBLE")
        return
    if spec.hypothesis_shape == "positive_real":
        print(f"hypothesis: min Re(lhs) = {_fmt(rep.hypothesis_sup)} "
              f"(needs > 0) -> margin {_fmt(rep.hypothesis_margin)}")
    else:
        print(f"hypothesis: sup |lhs| = {_fmt(rep.hypothesis_sup)} "
              f"+ tail {_fmt(rep.hypothesis_tail)} vs bound "
              f"{_fmt(spec.rhs_bound)} -> margin {_fmt(rep.hypothesis_margin)}")
        print(f"conclusion: sup |f/(zf') - {_fmt(spec.conclusion_center)}| = "
              f"{_fmt(rep.conclusion_sup)} vs {_fmt(spec.conclusion_radius)} "
              f"-> margin {_fmt(rep.conclusion_margin)}")
        if rep.cross_min_re is not None:
            print(f"cross-check: min Re(zf'/f) = {_fmt(rep.cross_min_re)} vs "
                  f"alpha {_fmt(spec.alpha)} -> margin {_fmt(rep.cross_margin)}")
    if rep.hypothesis_witness is not None:
        r, th = rep.hypothesis_witness
        print(f"worst witness: r={_fmt(r)} theta={_fmt(th)}")
    print(f"denominator violations: {len(rep.denominator_violations)}")
    if rep.skipped_radii:
        print(f"skipped radii (tail heuristic refused): "
              f"{[float(r) for r in rep.skipped_radii]}")
    print(f"note: {rep.tail_flag}")
    if rep.escalation:
        print(f"ESCALATION: {rep.escalation}")
    print(f"verdict: {rep.verdict.value}")


def cmd_check(args) -> int:
    fs = load_function_spec(args.spec)
    cfg = _sampling_config(args)
    try:
        f = candidate_from_spec(fs)
    except (DegenerateExtremalError, InadmissibleExtremalError, SeriesError) as e:
        print(f"cannot build function from spec: {e}", file=sys.stderr)
        return EXIT_REJECTED
    params = _criterion_params(args, fs.n)
    rep = check_criterion(f, params, cfg)
    _print_verification(rep)
    if args.out:
        body = render_report_body("check", {
            "function": function_spec_to_dict(fs),
            "criterion_params": params,
            "sampling": cfg,
            "result": rep,
        })
        write_report(args.out, body)
        print(f"report written to {args.out}")
    return _VERDICT_EXIT[rep.verdict]


def cmd_extremal(args) -> int:
    cfg = _sampling_config(args)
    try:
        params = ExtremalParams(
            family=ExtremalFamily(args.family), n=args.n, alpha=args.alpha,
            beta=args.beta, gamma=args.gamma)
    except InadmissibleExtremalError as e:
        print(f"inadmissible: {e.constraint} violated (margin {e.margin!r})",
              file=sys.stderr)
        return EXIT_REJECTED
    except (DegenerateExtremalError, SeriesError) as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_REJECTED
    try:
        f = build_extremal(params, args.trunc)
    except SeriesError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_REJECTED

    print(f"family: {params.family.value}  n={params.n}  "
          f"alpha={params.alpha!r}  beta={_fmt_c(params.beta)}  "
          f"gamma={_fmt_c(params.gamma)}  S={params.S!r}")
    print(f"normalization snap delta: {f.snap_delta!r}")
    k = min(args.emit_coeffs, f.trunc_order)
    for i in range(1, k + 1):
        c = f.series.coeffs[i]
        print(f"a_{i} = {_fmt_c(complex(c))}")

    selfcheck: dict = {}
    if params.family is ExtremalFamily.EXTREMAL_B:
        resid = verify_identity_b(f, params)
        print(f"identity residual |lhs_b - S z^n|: {resid!r}")
        selfcheck["identity_residual"] = resid
        crit_kind = CriterionKind.THM_B
    else:
        probe = probe_identity_a(f, params, cfg)
        print(f"closed-form match: {probe.matched} "
              f"(beta-form residual {probe.residual_beta_form!r}, "
              f"gamma-form residual {probe.residual_gamma_form!r})")
        print(f"sampled sup |lhs_a| = {probe.sampled_sup!r} vs S = "
              f"{probe.bound!r} -> margin {probe.sup_margin!r}")
        selfcheck["probe"] = probe
        crit_kind = CriterionKind.THM_A

    crit = CriterionParams(kind=crit_kind, n=params.n, beta=params.beta,
                           gamma=params.gamma, alpha=params.alpha)
    rep = check_criterion(f, crit, cfg)
    _print_verification(rep)
    if args.out:
        body = render_report_body("extremal", {
            "extremal_params": params,
            "trunc": args.trunc,
            "coefficients": [complex(c) for c in f.series.coeffs[: k + 1]],
            "selfcheck": selfcheck,
            "criterion_params": crit,
            "sampling": cfg,
            "result": rep,
        })
        write_report(args.out, body)
        print(f"report written to {args.out}")
    return _VERDICT_EXIT[rep.verdict]


def cmd_jack(args) -> int:
    fs = load_function_spec(args.spec)
    cfg = _sampling_config(args)
    try:
        w = probe_series_from_spec(fs)
    except (DegenerateExtremalError, InadmissibleExtremalError, SeriesError) as e:
        print(f"cannot build series from spec: {e}", file=sys.stderr)
        return EXIT_REJECTED
    order = args.order if args.order is not None else fs.n
    try:
        res = jack_demo(w, order, args.radius, cfg)
    except DegenerateSeriesError as e:
        print(f"degenerate: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except ValueError as e:
        raise UsageError(str(e))
    print(f"k_est = {_fmt_c(res.k_est)}")
    print(f"max point z0 = {_fmt_c(res.max_point)}  |w(z0)| = {res.max_modulus!r}")
    print(f"imaginary part within tolerance: {'yes' if res.imag_ok else 'NO'}")
    print(f"real part >= order {order}: {'yes' if res.real_ok else 'NO'}")
    print(f"conforms: {'yes' if res.conforms else 'NO'}")
    if args.out:
        body = render_report_body("jack", {
            "function": function_spec_to_dict(fs),
            "order": order,
            "radius": args.radius,
            "sampling": cfg,
            "result": res,
        })
        write_report(args.out, body)
        print(f"report written to {args.out}")
    return EXIT_OK if res.conforms else EXIT_FAILED


def cmd_identities(args) -> int:
    res = identity_sweep(per_n=args.per_n, pairs=args.pairs,
                         trunc_order=args.trunc, seed=args.seed)
    print(f"functions per class index: {args.per_n}; (beta, gamma) pairs: "
          f"{args.pairs}; truncation order {args.trunc}; seed {args.seed}")
    print(f"max residual, identity A (lhs_a (1+w) = beta - gamma z w'): "
          f"{res.max_residual_a!r}")
    print(f"max residual, identity B (lhs_b (1+w) = -(beta w + gamma (z w' + w))): "
          f"{res.max_residual_b!r}")
    ok = res.max_residual_a < args.tol and res.max_residual_b < args.tol
    print(f"tolerance {args.tol!r}: {'PASS' if ok else 'FAIL'}")
    if args.out:
        body = render_report_body("identities", {"sweep": res, "tol": args.tol})
        write_report(args.out, body)
        print(f"report written to {args.out}")
    return EXIT_OK if ok else EXIT_FAILED


def _add_sampling_flags(sp) -> None:
    sp.add_argument("--radii", type=_parse_radii, default=None,
                    help="comma-separated sampling radii (default 0.10..0.99 "
                         "step 0.01 plus 0.995)")
    sp.add_argument("--angles", type=int, default=None,
                    help="samples per circle (default 2048)")
    sp.add_argument("--no-refine", action="store_true",
                    help="skip golden-section refinement of circle extrema")
    sp.add_argument("--out", default=None, help="write a JSON report here")


def build_parser() -> _Parser:
    parser = _Parser(prog="starcert",
                     description="sampled certification of starlikeness criteria")
    parser.add_argument("--version", action="version",
                        version=f"starcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run one criterion against a function spec")
    p.add_argument("spec", help="path to a function spec file (JSON)")
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in CriterionKind])
    p.add_argument("--n", type=int, default=None,
                   help="class index (default: the spec file's n)")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=_parse_complex, default=None,
                   help="complex as 're,im' (COR_A fixes beta = 1)")
    p.add_argument("--gamma", type=_parse_complex, required=True,
                   help="complex as 're,im'")
    p.add_argument("--rho", type=float, default=None,
                   help="disk radius for the LEMMA_* kinds")
    _add_sampling_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extremal", help="construct and self-check an extremal")
    p.add_argument("--family", required=True,
                   choices=[f.value for f in ExtremalFamily])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=_parse_complex, required=True)
    p.add_argument("--gamma", type=_parse_complex, required=True)
    p.add_argument("--trunc", type=int, default=DEFAULT_TRUNC_ORDER)
    p.add_argument("--emit-coeffs", type=int, default=12,
                   help="how many leading coefficients to print")
    _add_sampling_flags(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("jack", help="probe the circle maximum of a series")
    p.add_argument("spec", help="path to a function spec file (JSON)")
    p.add_argument("--order", type=int, default=None,
                   help="claimed vanishing order (default: the file's n)")
    p.add_argument("--radius", type=float, default=0.9)
    _add_sampling_flags(p)
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("identities",
                       help="randomized sweep of the rewrite identities")
    p.add_argument("--per-n", type=int, default=100)
    p.add_argument("--pairs", type=int, default=5)
    p.add_argument("--trunc", type=int, default=48)
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_identities)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version paths
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SpecFileError as e:
        print(f"spec file error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
