"""Command-line interface.

Exit codes: 0 success, 1 validation or semantic errors in an input
file, 2 parse errors, 3 usage errors.  All diagnostics go to stderr;
output for fixed input bytes and arguments is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import brauer, dsl, model, toric

__all__ = ["run", "main", "report_json"]

OK = 0
INVALID = 1
PARSE_ERROR = 2
USAGE = 3


def report_json(r: brauer.BrauerReport) -> str:
    """Deterministic JSON for a report: fixed key order, integers only."""
    doc = {
        "dims": r.dims,
        "p_labels": list(r.p_labels),
        "q_labels": list(r.q_labels),
        "r_labels": list(r.r_labels),
        "m_pr": r.m_pr.to_lists(),
        "m_qp": r.m_qp.to_lists(),
        "m_sp": r.m_sp.to_lists(),
        "generators": [
            {
                "vector": list(g.vector.bits),
                "ramification": {
                    cid: sorted(cls.symbols) for cid, cls in g.ramification
                },
            }
            for g in r.generators
        ],
        "assertions": dict(r.assertions),
    }
    return json.dumps(doc, indent=2)


def _matrix_lines(m, row_labels, col_note: str) -> list[str]:
    if m.rows == 0 or m.cols == 0:
        return [f"  ({m.rows}x{m.cols}, {col_note})"]
    width = max(len(lbl) for lbl in row_labels)
    out = []
    for i, lbl in enumerate(row_labels):
        bits = " ".join(str(b) for b in m.row(i).bits)
        out.append(f"  {lbl.ljust(width)}  [{bits}]")
    return out


def _format_report(r: brauer.BrauerReport, symbols: tuple[str, ...]) -> str:
    lines = []
    lines.append("dims:")
    for key in ("s", "p", "q", "r"):
        lines.append(f"  {key}: {r.dims[key]}")
    lines.append(f"kernel_dim: {r.kernel_dim}")
    lines.append(f"h2nr_dim: {r.h2nr_dim}")
    lines.append(f"p_basis: {', '.join(r.p_labels) or '(empty)'}")
    lines.append(f"q_basis: {', '.join(r.q_labels) or '(empty)'}")
    lines.append(f"r_basis: {', '.join(r.r_labels) or '(empty)'}")
    if r.s_labels:
        lines.append(f"s_generators: {', '.join(r.s_labels)}")
    lines.append("m_pr (rows R, cols P):")
    lines.extend(_matrix_lines(r.m_pr, r.r_labels, "no constraints"))
    lines.append("m_qp (rows P, cols Q):")
    lines.extend(_matrix_lines(r.m_qp, r.p_labels, "no relations"))
    if not r.generators:
        lines.append("generators: (none)")
    for i, g in enumerate(r.generators, start=1):
        lines.append(f"generator g{i}: {g.vector}")
        if not g.ramification:
            lines.append("  unramified over every curve")
        for cid, cls in g.ramification:
            lines.append(f"  ramified at {cid}: {cls.render(symbols)}")
    lines.append("assertions: " + ", ".join(f"{k}={v}" for k, v in r.assertions))
    return "\n".join(lines) + "\n"


def _print_validation(report: model.ValidationReport, out, err) -> None:
    stream = err if report.errors else out
    if report.errors:
        print("errors:", file=stream)
        for d in report.errors:
            print(f"  [{d.code}] {d.subject}: {d.message}", file=stream)
    else:
        print("errors: (none)", file=stream)
    target = err if report.errors else out
    if report.warnings:
        print("warnings:", file=target)
        for d in report.warnings:
            print(f"  [{d.code}] {d.subject}: {d.message}", file=target)
    else:
        print("warnings: (none)", file=target)


def _load_config(path: str, err) -> model.Configuration | int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=err)
        return USAGE
    try:
        return dsl.parse(text)
    except dsl.ConfigParseError as exc:
        for diag in exc.diagnostics:
            print(f"{path}:{diag}", file=err)
        return PARSE_ERROR


def _cmd_validate(args, out, err) -> int:
    cfg = _load_config(args.file, err)
    if isinstance(cfg, int):
        return cfg
    report = model.validate(cfg)
    _print_validation(report, out, err)
    if report.errors:
        return INVALID
    print("result: ok", file=out)
    return OK


def _compute_and_print(cfg: model.Configuration, as_json: bool, out, err) -> int:
    report = model.validate(cfg)
    if report.errors:
        _print_validation(report, out, err)
        return INVALID
    result = brauer.unramified_brauer(cfg)
    if as_json:
        print(report_json(result), file=out)
    else:
        print(_format_report(result, cfg.symbols), end="", file=out)
    return OK


def _cmd_compute(args, out, err) -> int:
    cfg = _load_config(args.file, err)
    if isinstance(cfg, int):
        return cfg
    return _compute_and_print(cfg, args.json, out, err)


def _cmd_explain(args, out, err) -> int:
    cfg = _load_config(args.file, err)
    if isinstance(cfg, int):
        return cfg
    report = model.validate(cfg)
    if report.errors:
        _print_validation(report, out, err)
        return INVALID
    symbols = cfg.symbols
    for c in cfg.curves:
        behavior = c.cover_behavior.value
        print(f"curve {c.id} (type {c.deg_type.value}, {behavior}):", file=out)
        gens = brauer.residue_kernel(cfg, c)
        if gens:
            rendered = ", ".join(g.render(symbols) for g in gens)
            print(f"  local kernel generators: {rendered}", file=out)
        else:
            print("  local kernel generators: (none)", file=out)
        # 2-torsion setting: the odd-part injectivity means only these
        # residues can obstruct, which is why the local list is complete.
    space, description = brauer.restriction_kernel(cfg)
    print(f"restriction kernel (dim {space.dim}): {description}", file=out)
    for d in report.warnings:
        print(f"note: [{d.code}] {d.subject}: {d.message}", file=out)
    return OK


def _cmd_example(args, out, err) -> int:
    try:
        source = dsl.builtin_source(args.name)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    if args.emit:
        print(source, end="", file=out)
        return OK
    return _compute_and_print(dsl.parse(source), False, out, err)


def _format_cone(c: toric.Cone) -> str:
    return " ".join("(" + ",".join(str(x) for x in r) + ")" for r in c.rays)


def _cmd_toric_demo(args, out, err) -> int:
    report = toric.resolve_demo()
    print(f"cone: {_format_cone(report.cone)}", file=out)
    print(f"singular faces: {len(report.singular)}", file=out)
    for f in report.singular:
        print(f"  dim {f.dim}: {_format_cone(f)}", file=out)
    cands = " ".join("(" + ",".join(str(x) for x in v) + ")" for v in report.candidates)
    print(f"candidate rays: {cands}", file=out)
    for i, step in enumerate(report.steps, start=1):
        ray = "(" + ",".join(str(x) for x in step.ray) + ")"
        support = "preserved" if step.support_ok else "BROKEN"
        print(
            f"step {i}: subdivide at {ray} -> {len(step.fan.maximal_cones)} maximal cones,"
            f" support {support} ({report.samples} samples)",
            file=out,
        )
    for cert in report.smoothness.certificates:
        print(f"  cone {_format_cone(cert.cone)}: {cert.reason}", file=out)
    print(f"smooth: {'true' if report.smoothness.smooth else 'false'}", file=out)
    return OK if report.smoothness.smooth else INVALID


def _cmd_toric_check(args, out, err) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=err)
        return USAGE
    try:
        script = toric.parse_fan_script(text)
    except toric.FanParseError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: {exc.args[0].split(': ', 1)[-1]}", file=err)
        return PARSE_ERROR
    except toric.FanScriptError as exc:
        print(f"{args.file}: {exc}", file=err)
        return INVALID
    fan = script.fan
    for lineno, ray in script.subdivisions:
        try:
            fan = toric.star_subdivide(fan, ray)
        except ValueError as exc:
            print(f"{args.file}: line {lineno}: {exc}", file=err)
            return INVALID
        print(
            f"subdivide ({','.join(str(x) for x in ray)}) -> {len(fan.maximal_cones)} maximal cones",
            file=out,
        )
    report = toric.is_smooth(fan)
    for cert in report.certificates:
        print(f"cone {_format_cone(cert.cone)}: {cert.reason}", file=out)
    print(f"smooth: {'true' if report.smooth else 'false'}", file=out)
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isbbrauer",
        description="Unramified Brauer groups of simple involution surface bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a configuration file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("compute", help="compute the Brauer report for a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("explain", help="per-curve local kernels and the restriction kernel")
    p.add_argument("file")
    p.set_defaults(func=_cmd_explain)

    p = sub.add_parser("example", help="run or emit a built-in example")
    p.add_argument("name", metavar="NAME", help=", ".join(dsl.BUILTIN_NAMES))
    p.add_argument("--emit", action="store_true", help="print the canonical source instead")
    p.set_defaults(func=_cmd_example)

    p = sub.add_parser("toric", help="toric resolution tools")
    tsub = p.add_subparsers(dest="toric_command", required=True)
    t = tsub.add_parser("demo", help="resolve the uv=xyz cone and certify smoothness")
    t.set_defaults(func=_cmd_toric_demo)
    t = tsub.add_parser("check", help="parse a fan file, apply subdivisions, report smoothness")
    t.add_argument("file")
    t.set_defaults(func=_cmd_toric_check)

    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    """Execute the CLI; returns the exit status instead of raising."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage problems; our code 2
        # is reserved for input-file parse errors, so usage maps to 3.
        return OK if exc.code == 0 else USAGE
    return args.func(args, out, err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
