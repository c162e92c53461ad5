"""Command-line front end: coefficient tables, verification, kernels, transforms.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import appell, fueter_map, spaces, transforms, verify
from .config import ENV_CONFIG, RunConfig
from .errors import AppellKitError, OutOfDomain
from .quaternion import QuaternionFloat


def _parse_quaternion(text: str) -> QuaternionFloat:
    parts = [float(p) for p in text.split(",")]
    if len(parts) == 1:
        parts += [0.0, 0.0, 0.0]
    if len(parts) != 4:
        raise ValueError(f"expected 1 or 4 comma-separated components, got {text!r}")
    return QuaternionFloat(*parts)


def _load_config(args) -> RunConfig:
    cfg = RunConfig.load(getattr(args, "config", None))
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "fmt", None):
        cfg.fmt = args.fmt
    if getattr(args, "inject_gamma_fault", None) is not None:
        cfg.inject_gamma_fault = args.inject_gamma_fault
    return cfg


def _write_rows(path: Path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        for row in rows:
            writer.writerow(row)


def cmd_tables(args) -> int:
    kmax = args.kmax
    if kmax > 64:
        print("kmax must be at most 64", file=sys.stderr)
        return 2
    out_dir = Path(args.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        coeff_rows = [("k", "j", "T")]
        for k in range(kmax + 1):
            for j in range(k + 1):
                coeff_rows.append((k, j, str(appell.tjk(k, j))))
        _write_rows(out_dir / "appell_coefficients.csv", coeff_rows)

        ck_rows = [("k", "c")]
        for k in range(kmax + 1):
            ck_rows.append((k, str(appell.ck(k))))
        _write_rows(out_dir / "alternating_sums.csv", ck_rows)

        weight_rows = [("k", "weight", "c_k", "b_k")]
        for name, factory in spaces.NAMED_WEIGHTS.items():
            weight = factory()
            transported = fueter_map.b_from_c(weight)
            for k in range(kmax + 1):
                weight_rows.append((k, name, str(weight(k)), str(transported(k))))
        _write_rows(out_dir / "weights.csv", weight_rows)
    except OSError as exc:
        print(f"table export failed: {exc}", file=sys.stderr)
        return 2
    print(f"wrote 3 tables to {out_dir}")
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    rep = verify.report(args.suite, cfg)
    text = _format_report(rep, cfg.fmt)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text)
    return 0 if rep["passed"] else 1


def _format_report(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2)
    if fmt == "csv":
        lines = ["identity,statement,instances,max_defect,passed,note"]
        for r in rep["results"]:
            statement = r["statement"].replace('"', "'")
            lines.append(f"{r['identity']},\"{statement}\",{r['instances']},"
                         f"{r['max_defect']:.6e},{r['passed']},\"{r['note']}\"")
        return "\n".join(lines)
    lines = [f"# verification report: suite {rep['suite']}", ""]
    lines.append("| identity | instances | max defect | pass |")
    lines.append("|---|---|---|---|")
    for r in rep["results"]:
        lines.append(f"| {r['identity']} | {r['instances']} | "
                     f"{r['max_defect']:.3e} | {'yes' if r['passed'] else 'NO'} |")
    lines.append("")
    lines.append(f"overall: {'pass' if rep['passed'] else 'FAIL'}")
    return "\n".join(lines)


def cmd_kernel(args) -> int:
    if args.space not in spaces.NAMED_WEIGHTS:
        print(f"unknown space {args.space!r}", file=sys.stderr)
        return 2
    weight = spaces.NAMED_WEIGHTS[args.space]()
    trunc = args.trunc
    try:
        if args.grid:
            half = args.radius
            count = args.grid
            step = 2 * half / (count - 1) if count > 1 else 0.0
            points = [QuaternionFloat(-half + i * step) for i in range(count)]
            rows = [("x0_q", "x1_q", "x2_q", "x3_q", "x0_p", "x1_p", "x2_p", "x3_p",
                     "re", "i", "j", "k", "tail")]
            rows.extend(spaces.kernel_grid_rows(weight, points, points, trunc))
            _write_rows(Path(args.output or f"kernel_{args.space}.csv"), rows)
            print(f"wrote {len(rows) - 1} kernel values")
            return 0
        q = _parse_quaternion(args.q)
        p = _parse_quaternion(args.p)
        ball = math.sqrt(weight.radius)
        if max(abs(q), abs(p)) >= ball:
            raise OutOfDomain(
                f"points must lie in the ball of radius {ball} for {args.space}")
        value, tail = spaces.kernel_eval(weight, q, p, trunc)
        print(json.dumps({"space": args.space,
                          "value": [value.x0, value.x1, value.x2, value.x3],
                          "tail": tail}))
        return 0
    except AppellKitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def cmd_transform(args) -> int:
    cfg = _load_config(args)
    try:
        data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        coeffs = tuple(QuaternionFloat(*entry) for entry in data)
    except (OSError, ValueError, TypeError) as exc:
        print(f"cannot read Hermite coefficients: {exc}", file=sys.stderr)
        return 2
    phi = transforms.L2Function(coeffs)
    try:
        image = transforms.bargmann_bf(phi)
        if args.check_quadrature:
            rule = transforms.gauss_hermite_line(cfg.hermite_nodes)
            transforms.bargmann_bf(phi, mode="quadrature", rule=rule)
    except AppellKitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    payload = [[float(c) for c in q.components()] for q in image.coefficients]
    out = Path(args.output)
    out.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    print(f"wrote {len(payload)} Appell coefficients to {out}")
    return 0


def cmd_bkernel(args) -> int:
    q = _parse_quaternion(args.q)
    xs = [args.x_min + i * (args.x_max - args.x_min) / max(args.x_count - 1, 1)
          for i in range(args.x_count)]
    rows = [("x", "re", "i", "j", "k", "tail")]
    for x in xs:
        if args.kind == "af":
            value, tail = transforms.kernel_af(q, x, trunc=args.trunc)
        else:
            res = transforms.kernel_as(q, x, trunc=args.trunc)
            value, tail = res.series, res.tail
        rows.append((x, value.x0, value.x1, value.x2, value.x3, tail))
    _write_rows(Path(args.output or f"bkernel_{args.kind}.csv"), rows)
    print(f"wrote {len(rows) - 1} kernel samples")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="appellkit",
        description="Clifford-Appell polynomial toolkit: tables, verification "
                    "suites, kernels and coherent-state transforms.",
        epilog=f"A JSON config file may be given via --config or ${ENV_CONFIG}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="export coefficient tables as CSV")
    p_tables.add_argument("--kmax", type=int, default=16)
    p_tables.add_argument("--output-dir", default="tables")
    p_tables.set_defaults(func=cmd_tables)

    p_verify = sub.add_parser("verify", help="run identity verification suites")
    p_verify.add_argument("--suite", default="all",
                          choices=["all", *verify.SUITES])
    p_verify.add_argument("--config")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--format", dest="fmt", choices=["json", "csv", "md"])
    p_verify.add_argument("--output")
    p_verify.add_argument("--inject-gamma-fault", type=float, default=None,
                          help="negative-control fixture: overrides gamma_1")
    p_verify.set_defaults(func=cmd_verify)

    p_kernel = sub.add_parser("kernel", help="evaluate a reproducing kernel")
    p_kernel.add_argument("--space", default="fock")
    p_kernel.add_argument("--q", default="0.0")
    p_kernel.add_argument("--p", default="0.0")
    p_kernel.add_argument("--trunc", type=int, default=48)
    p_kernel.add_argument("--grid", type=int, default=0,
                          help="export an NxN real grid instead of one value")
    p_kernel.add_argument("--radius", type=float, default=0.5)
    p_kernel.add_argument("--output")
    p_kernel.set_defaults(func=cmd_kernel)

    p_transform = sub.add_parser(
        "transform", help="Hermite coefficient file to Appell coefficient file")
    p_transform.add_argument("--input", required=True)
    p_transform.add_argument("--output", default="appell_coefficients.json")
    p_transform.add_argument("--check-quadrature", action="store_true")
    p_transform.add_argument("--config")
    p_transform.add_argument("--seed", type=int)
    p_transform.set_defaults(func=cmd_transform)

    p_bkernel = sub.add_parser("bkernel", help="coherent-state kernel grid to CSV")
    p_bkernel.add_argument("--kind", choices=["as", "af"], default="af")
    p_bkernel.add_argument("--q", default="0.5")
    p_bkernel.add_argument("--x-min", type=float, default=-3.0)
    p_bkernel.add_argument("--x-max", type=float, default=3.0)
    p_bkernel.add_argument("--x-count", type=int, default=41)
    p_bkernel.add_argument("--trunc", type=int, default=60)
    p_bkernel.add_argument("--output")
    p_bkernel.set_defaults(func=cmd_bkernel)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except AppellKitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
