"""Command-line interface.

Five subcommands mirror the library's public surface: ``norm`` and
``carleson`` evaluate certified constants for one function, ``probe``
runs a boundedness probe for one operator between two spaces, ``gap``
classifies a lacunary coefficient sequence, and ``verify`` executes
registered statement suites and writes the report tree.

Functions are written in the expression mini-language of
:func:`cisl.funcs.parse_expr`: atoms like ``poly:[1,0,2]``,
``fa:a=0.9,p=2``, ``fp:p=3,depth=24``, ``blaschke:[0.5,-0.3i]``,
combined with ``*`` and ``+`` (quote the whole expression).

Exit codes: 0 success (for ``verify``: all suites pass), 1 any failing
suite, 2 invalid input, 3 no failures but at least one inconclusive
suite.
"""

from __future__ import annotations

import argparse
import json
import sys

from .funcs import DomainError, GapSeries, ParseError, parse_expr
from .gapseries import divergence_scan, lacunary_membership, m2_gap_bound
from .carleson import carleson_constant, density_from
from .harness import REGISTRY, SuiteConfig, registry_ids, run_suite
from .norms import MobiusGrid, norm_value, parse_space, seminorm
from .operators import companion, multiplier, probe_boundedness, volterra
from .quad import DiscScheme

__all__ = ["main", "build_parser"]


def _parse_kv_options(text: str, what: str) -> dict:
    out = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep or not key.strip() or not val.strip():
            raise DomainError(f"malformed {what} option {item!r}")
        out[key.strip()] = val.strip()
    return out


def _grid_from(text: str | None) -> MobiusGrid | None:
    if text is None:
        return None
    kv = _parse_kv_options(text, "grid")
    allowed = {"n_max", "angle_factor", "angcap"}
    unknown = sorted(set(kv) - allowed)
    if unknown:
        raise DomainError(f"unknown grid keys: {', '.join(unknown)}")
    try:
        return MobiusGrid(**{k: int(v) for k, v in kv.items()})
    except ValueError as exc:
        raise DomainError(f"bad grid option: {exc}") from exc


def _scheme_from(text: str | None) -> DiscScheme | None:
    if text is None:
        return None
    kv = _parse_kv_options(text, "scheme")
    ints = {"bands", "nodes_per_band", "angles"}
    allowed = ints | {"profile_q"}
    unknown = sorted(set(kv) - allowed)
    if unknown:
        raise DomainError(f"unknown scheme keys: {', '.join(unknown)}")
    try:
        kwargs = {k: (int(v) if k in ints else float(v))
                  for k, v in kv.items()}
    except ValueError as exc:
        raise DomainError(f"bad scheme option: {exc}") from exc
    return DiscScheme.build(**kwargs)


def _jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(args, payload: dict, csv_lines) -> None:
    if args.out_format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in csv_lines:
            print(line)


def _cmd_norm(args) -> int:
    spec = parse_space(args.space)
    f = parse_expr(args.func)
    grid = _grid_from(args.grid)
    scheme = _scheme_from(args.scheme)
    if args.seminorm_only:
        rep = seminorm(spec, f, grid, scheme)
        value = rep.value
    else:
        value, rep = norm_value(spec, f, grid, scheme)
    payload = {
        "space": spec.label(),
        "value": value,
        "seminorm": rep.value,
        "witness": _jsonable(rep.witness),
        "converged": rep.converged,
        "refinement_trace": _jsonable(rep.refinement_trace),
    }
    lines = [f"space,{spec.label()}",
             f"value,{value!r}",
             f"seminorm,{rep.value!r}",
             f"converged,{rep.converged}",
             f"witness,{rep.witness!r}"]
    _emit(args, payload, lines)
    return 0


def _cmd_carleson(args) -> int:
    f = parse_expr(args.func)
    mu = density_from(f, args.s)
    methods = ("box", "zhao") if args.method == "both" else (args.method,)
    payload = {"s": args.s, "alpha": args.alpha}
    lines = [f"s,{args.s!r}", f"alpha,{args.alpha!r}"]
    values = {}
    for method in methods:
        rep = carleson_constant(mu, args.s, alpha=args.alpha, method=method)
        values[method] = rep.value
        payload[method] = {"value": rep.value, "converged": rep.converged}
        lines.append(f"{method},{rep.value!r},{rep.converged}")
    if len(methods) == 2:
        ratio = values["zhao"] / max(values["box"], 1e-300)
        payload["zhao_over_box"] = ratio
        lines.append(f"zhao_over_box,{ratio!r}")
    _emit(args, payload, lines)
    return 0


_OPS = {"T": volterra, "I": companion, "M": multiplier}


def _parse_family(text: str) -> tuple[str, float | None]:
    name, sep, payload = text.partition(":")
    p = None
    if sep:
        for key, value in _parse_kv_options(payload, "family").items():
            if key != "p":
                raise DomainError(f"unknown family parameter {key!r}")
            try:
                p = float(value)
            except ValueError as exc:
                raise DomainError(f"bad family index {value!r}") from exc
    return name.strip(), p


def _cmd_probe(args) -> int:
    op = _OPS[args.op](parse_expr(args.symbol))
    x_spec = parse_space(args.source)
    y_spec = parse_space(args.target)
    family, p = _parse_family(args.family)
    if args.hi <= args.lo:
        raise DomainError("need lo < hi")
    rep = probe_boundedness(op, x_spec, y_spec, family,
                            schedule=tuple(range(args.lo, args.hi + 1)),
                            p=p, seed=args.seed)
    payload = {
        "op": rep.op_label, "family": rep.family,
        "from": rep.x_label, "to": rep.y_label,
        "rows": [{"param": a, "x_norm": b, "y_norm": c, "ratio": d}
                 for a, b, c, d in zip(rep.params, rep.x_norms,
                                       rep.y_norms, rep.ratios)],
        "sup_ratio": rep.sup_ratio,
        "trend_slope": rep.trend_slope,
        "tail_growth": rep.tail_growth,
        "verdict": rep.verdict,
    }
    lines = ["param,x_norm,y_norm,ratio"]
    for row in zip(rep.params, rep.x_norms, rep.y_norms, rep.ratios):
        lines.append(",".join(repr(v) for v in row))
    lines += [f"sup_ratio,{rep.sup_ratio!r}",
              f"trend_slope,{rep.trend_slope!r}",
              f"tail_growth,{rep.tail_growth!r}",
              f"verdict,{rep.verdict}"]
    _emit(args, payload, lines)
    return 0


def _gap_coeffs(text: str):
    f = parse_expr(text)
    if not isinstance(f, GapSeries):
        raise DomainError("the gap command needs a lacunary series, "
                          "e.g. fp:p=3,depth=24 or gap:[0.5,0.25]")
    return f.coeffs


def _cmd_gap(args) -> int:
    coeffs = _gap_coeffs(args.coeffs)
    test = args.test.strip()
    if test.lower() == "m2bound":
        rows = m2_gap_bound(coeffs)
        payload = {"test": "m2bound",
                   "rows": [{"level": n, "radius": r, "deriv_m2_sq": v,
                             "envelope_ratio": e}
                            for n, r, v, e in rows]}
        lines = ["level,radius,deriv_m2_sq,envelope_ratio"]
        for n, r, v, e in rows:
            tail = "" if e is None else repr(e)
            lines.append(f"{n},{r!r},{v!r},{tail}")
        _emit(args, payload, lines)
        return 0
    if test.lower().startswith("diverge:"):
        body = test[len("diverge:"):]
        # the symbol expression may itself contain commas, so the s field
        # is split off from the right
        g_part, sep, s_part = body.rpartition(",s=")
        if not sep or not g_part.startswith("g="):
            raise DomainError("divergence test needs diverge:g=<expr>,s=S")
        try:
            s = float(s_part)
        except ValueError as exc:
            raise DomainError(f"bad exponent {s_part!r}") from exc
        g = parse_expr(g_part[len("g="):])
        rep = divergence_scan(g, coeffs, s)
        payload = {"test": "diverge", "s": s, "verdict": rep.verdict,
                   "rows": [{"radius": r, "increment": i, "partial": q}
                            for r, i, q in zip(rep.radii, rep.increments,
                                               rep.partials)]}
        lines = ["radius,increment,partial"]
        for r, i, q in zip(rep.radii, rep.increments, rep.partials):
            lines.append(f"{r!r},{i!r},{q!r}")
        lines.append(f"verdict,{rep.verdict}")
        _emit(args, payload, lines)
        return 0
    spec = parse_space(test)
    verdict = lacunary_membership(coeffs, spec)
    ratios = [None] + list(verdict.doubling_ratios)
    payload = {"test": verdict.space_label,
               "classification": verdict.classification,
               "rows": [{"level": k + 1, "partial_sum": total,
                         "doubling_ratio": ratios[k] if k < len(ratios)
                         else None}
                        for k, total in enumerate(verdict.partial_sums)]}
    lines = [f"space,{verdict.space_label}", "level,partial_sum,doubling_ratio"]
    for k, total in enumerate(verdict.partial_sums):
        r = ratios[k] if k < len(ratios) else None
        lines.append(f"{k + 1},{total!r},{'' if r is None else repr(r)}")
    lines.append(f"classification,{verdict.classification}")
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    if args.ids.strip().lower() == "all":
        ids = list(registry_ids())
    else:
        ids = [t.strip() for t in args.ids.split(",") if t.strip()]
    mapping = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise DomainError("config file must hold a JSON object")
        mapping.update(loaded)
    if args.out_dir:
        mapping["out_dir"] = args.out_dir
    if args.parallelism is not None:
        mapping["parallelism"] = args.parallelism
    defaults = SuiteConfig().to_mapping()
    defaults.update(mapping)
    cfg = SuiteConfig.from_mapping(defaults)
    report = run_suite(ids, cfg)
    for verdict in report["verdicts"]:
        grades = verdict["grades"]
        counts = (f"{grades.count('pass')} pass, "
                  f"{grades.count('fail')} fail, "
                  f"{grades.count('inconclusive')} inconclusive")
        print(f"{verdict['id']}: {verdict['status']} ({counts})")
    print(f"report: {cfg.out_dir}/report.json")
    return int(report["exit_code"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cisl",
        description="Certified constants, boundedness probes, and "
                    "statement suites for conformally invariant spaces "
                    "on the unit disc.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="certified norm of one function")
    p_norm.add_argument("--space", required=True,
                        help="space spec, e.g. besov:p=2, qs:s=0.5, bloch")
    p_norm.add_argument("--func", required=True,
                        help="function expression, e.g. poly:[1,0.5]")
    p_norm.add_argument("--grid", default=None,
                        help="centre-grid overrides, e.g. n_max=20,angcap=512")
    p_norm.add_argument("--scheme", default=None,
                        help="quadrature overrides, e.g. bands=120,angles=1024")
    p_norm.add_argument("--seminorm-only", action="store_true")
    p_norm.add_argument("--out", dest="out_format", choices=("json", "csv"),
                        default="csv")
    p_norm.set_defaults(run=_cmd_norm)

    p_car = sub.add_parser("carleson",
                           help="Carleson constants of a derivative measure")
    p_car.add_argument("--func", required=True)
    p_car.add_argument("--s", type=float, required=True)
    p_car.add_argument("--alpha", type=float, default=0.0)
    p_car.add_argument("--method", choices=("box", "zhao", "both"),
                       default="both")
    p_car.add_argument("--out", dest="out_format", choices=("json", "csv"),
                       default="csv")
    p_car.set_defaults(run=_cmd_carleson)

    p_probe = sub.add_parser("probe", help="operator boundedness probe")
    p_probe.add_argument("--op", choices=sorted(_OPS), required=True,
                         help="T integrates g' f, I integrates g f', "
                              "M multiplies by g")
    p_probe.add_argument("--symbol", required=True)
    p_probe.add_argument("--from", dest="source", required=True)
    p_probe.add_argument("--to", dest="target", required=True)
    p_probe.add_argument("--family", default="fa",
                         help="probe family, e.g. fa, ha:..., fp:p=3")
    p_probe.add_argument("--lo", type=int, default=3)
    p_probe.add_argument("--hi", type=int, default=9)
    p_probe.add_argument("--seed", type=int, default=20260817)
    p_probe.add_argument("--out", dest="out_format", choices=("json", "csv"),
                         default="csv")
    p_probe.set_defaults(run=_cmd_probe)

    p_gap = sub.add_parser("gap", help="lacunary series diagnostics")
    p_gap.add_argument("--coeffs", required=True,
                       help="lacunary series, e.g. fp:p=3,depth=24")
    p_gap.add_argument("--test", required=True,
                       help="space spec (membership), m2bound, or "
                            "diverge:g=<expr>,s=S")
    p_gap.add_argument("--out", dest="out_format", choices=("json", "csv"),
                       default="csv")
    p_gap.set_defaults(run=_cmd_gap)

    p_ver = sub.add_parser("verify", help="run statement suites")
    p_ver.add_argument("--ids", default="all",
                       help="'all' or comma-separated ids "
                            f"({', '.join(REGISTRY)})")
    p_ver.add_argument("--config", default=None,
                       help="JSON file of SuiteConfig overrides")
    p_ver.add_argument("--out", dest="out_dir", default=None,
                       help="report directory")
    p_ver.add_argument("--parallelism", type=int, default=None)
    p_ver.set_defaults(run=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    try:
        return args.run(args)
    except (DomainError, ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
