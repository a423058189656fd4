"""Command-line interface: fan reports, module documents and pipelines.

Exit codes: 0 success, 2 parse/usage error, 3 semantic validation error,
4 precondition violation in a pipeline.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys

from .errors import (FanValidationError, InhomogeneousInput, NotInJp,
                     ParseError, PreconditionViolated, ToricDmodError,
                     UnknownCone)
from .fan_cox import (Fan, GradingData, euler_operators, grading_data,
                      irrelevant_ideal, validate_smooth_fan)
from .groebner import format_poly
from .weyl import format_weyl, parse_weyl, parse_theta_poly, tp_format
from . import dmod
from . import charvar


def _strip_comment(line: str) -> str:
    out = []
    quote = None
    for ch in line:
        if quote:
            out.append(ch)
            if ch == quote:
                quote = None
            continue
        if ch in "'\"":
            quote = ch
            out.append(ch)
            continue
        if ch == "#":
            break
        out.append(ch)
    return "".join(out)


def read_document(path: str) -> dict:
    """Key = value lines; values are Python-literal scalars/lists, possibly
    spanning lines until brackets balance. Comments start with #."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    doc: dict = {}
    pending_key = None
    pending_value = ""
    for lineno, line in enumerate(raw.splitlines(), 1):
        text = _strip_comment(line).strip()
        if not text and pending_key is None:
            continue
        if pending_key is None:
            if "=" not in text:
                raise ParseError(f"{path}:{lineno}: expected 'key = value'")
            key, value = text.split("=", 1)
            pending_key, pending_value = key.strip(), value.strip()
        else:
            pending_value += " " + text
        if pending_value.count("[") == pending_value.count("]"):
            try:
                doc[pending_key] = ast.literal_eval(pending_value)
            except (ValueError, SyntaxError) as exc:
                raise ParseError(
                    f"{path}:{lineno}: bad value for {pending_key!r}: {exc}") from exc
            pending_key, pending_value = None, ""
    if pending_key is not None:
        raise ParseError(f"{path}: unterminated value for {pending_key!r}")
    return doc


def load_fan(path: str) -> Fan:
    doc = read_document(path)
    for key in ("n", "rays", "max_cones"):
        if key not in doc:
            raise ParseError(f"{path}: missing key {key!r}")
    n, rays, cones = doc["n"], doc["rays"], doc["max_cones"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError(f"{path}: n must be a positive integer")
    if not isinstance(rays, list) or not rays or \
            not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rays):
        raise ParseError(f"{path}: rays must be a nonempty list of integer vectors")
    if not isinstance(cones, list) or \
            not all(isinstance(c, list) and all(isinstance(i, int) for i in c) for c in cones):
        raise ParseError(f"{path}: max_cones must be a list of index lists")
    for c in cones:
        for i in c:
            if not 1 <= i <= len(rays):
                raise ParseError(f"{path}: cone index {i} out of range")
    return Fan(n, rays, [[i - 1 for i in c] for c in cones])


def load_module(path: str, grading: GradingData) -> dmod.GradedPresentation:
    doc = read_document(path)
    for key in ("side", "generator_degrees", "relations"):
        if key not in doc:
            raise ParseError(f"{path}: missing key {key!r}")
    side = doc["side"]
    if side not in ("left", "right"):
        raise ParseError(f"{path}: side must be 'left' or 'right'")
    degs = doc["generator_degrees"]
    group = grading.class_group
    width = group.free_rank + len(group.torsion_orders)
    if not isinstance(degs, list) or not degs or \
            not all(isinstance(t, list) and len(t) == width
                    and all(isinstance(x, int) for x in t) for t in degs):
        raise ParseError(
            f"{path}: generator_degrees must be integer vectors of length {width}")
    rel_rows = doc["relations"]
    if not isinstance(rel_rows, list) or \
            not all(isinstance(r, list) and len(r) == len(degs)
                    and all(isinstance(s, str) for s in r) for r in rel_rows):
        raise ParseError(
            f"{path}: relations must be rows of {len(degs)} expression strings")
    rows = []
    for row in rel_rows:
        rows.append(tuple(parse_weyl(s, grading.d) for s in row))
    try:
        return dmod.GradedPresentation(grading, side, [tuple(t) for t in degs], rows)
    except InhomogeneousInput as exc:
        # bad input document, not a pipeline precondition
        raise ToricDmodError(f"{path}: {exc}") from exc


def parse_class(text: str, grading: GradingData):
    group = grading.class_group
    width = group.free_rank + len(group.torsion_orders)
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad class coordinates {text!r}") from exc
    if len(coords) != width:
        raise ParseError(
            f"class coordinates {text!r} have arity {len(coords)}, expected {width}")
    return group.reduce(coords)


def parse_cone(text: str, fan: Fan):
    try:
        idx = tuple(sorted(int(x) - 1 for x in text.split(",")))
    except ValueError as exc:
        raise ParseError(f"bad cone {text!r}") from exc
    if any(i < 0 or i >= fan.d for i in idx):
        raise ParseError(f"cone {text!r} has a ray index out of range")
    return idx


def parse_point(text: str, n: int):
    try:
        p = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad lattice point {text!r}") from exc
    if len(p) != n:
        raise ParseError(f"lattice point {text!r} must have {n} coordinates")
    return p


class Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value: str):
        self.lines.append((key, value))

    def emit(self):
        for key, value in self.lines:
            if self.fmt == "machine":
                sys.stdout.write(f"{key}\t{value}\n")
            else:
                sys.stdout.write(f"{key}: {value}\n")


def class_group_name(grading: GradingData) -> str:
    group = grading.class_group
    parts = []
    if group.free_rank == 1:
        parts.append("Z")
    elif group.free_rank > 1:
        parts.append(f"Z^{group.free_rank}")
    parts.extend(f"Z/{k}" for k in group.torsion_orders)
    return " x ".join(parts) if parts else "0"


def _cls_list(cls) -> str:
    return json.dumps(list(cls))


def _laurent_monomial(names, exps) -> str:
    parts = [f"{nm}^{e}" if e != 1 else nm for nm, e in zip(names, exps) if e]
    return "*".join(parts) if parts else "1"


def _ideal_str(gens) -> str:
    if not gens:
        return "(0)"
    return "(" + ", ".join(sorted(format_poly(g) for g in gens)) + ")"


def _add_cl_header(report: Report, grading: GradingData):
    report.add("cl", class_group_name(grading))
    report.add("cl-basis", "coordinates are free part then torsion residues")


def cmd_fan_info(args) -> int:
    fan = load_fan(args.fan)
    validate_smooth_fan(fan)
    grading = GradingData(fan)
    report = Report(args.format)
    report.add("n", str(fan.n))
    report.add("d", str(fan.d))
    report.add("rays", json.dumps([list(r) for r in fan.rays]))
    report.add("max-cones", json.dumps([[i + 1 for i in c] for c in fan.max_cones]))
    _add_cl_header(report, grading)
    report.add("degrees", json.dumps([list(grading.degree_x(i)) for i in range(fan.d)]))
    report.add("e-bar", _cls_list(grading.e_bar))
    report.add("dual-basis", json.dumps([list(u) for u in grading.dual_basis]))
    xnames = [f"x{i + 1}" for i in range(fan.d)]
    bgens = sorted(_laurent_monomial(xnames, g)
                   for g in irrelevant_ideal(fan).generators)
    report.add("irrelevant-ideal", "(" + ", ".join(bgens) + ")")
    ops = [format_weyl(t) for t in euler_operators(grading)]
    report.add("euler-operators", "(" + ", ".join(ops) + ")")
    report.emit()
    return 0


def _emit_module_document(pres: dmod.GradedPresentation, grading: GradingData):
    sys.stdout.write("# toric-dmod module document\n")
    sys.stdout.write(f"# cl = {class_group_name(grading)}"
                     " (degree coordinates: free part then torsion residues)\n")
    sys.stdout.write(f"side = {json.dumps(pres.side)}\n")
    sys.stdout.write("generator_degrees = "
                     + json.dumps([list(t) for t in pres.twists]) + "\n")
    rows = [[format_weyl(g) for g in row] for row in pres.relations]
    sys.stdout.write("relations = " + json.dumps(rows) + "\n")


def cmd_dl(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    cls = parse_class(args.degree, grading)
    pres = dmod.d_module_left(grading, cls)
    _emit_module_document(pres, grading)
    return 0


def cmd_dr(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    cls = parse_class(args.degree, grading)
    pres = dmod.d_module_right(grading, cls)
    _emit_module_document(pres, grading)
    return 0


def cmd_check(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    pres = load_module(args.module, grading)
    ok, cert = dmod.check_theta_condition(pres)
    report = Report(args.format)
    _add_cl_header(report, grading)
    report.add("side", pres.side)
    if ok:
        report.add("theta-condition", "OK")
    else:
        report.add("theta-condition", f"FAIL at generator {cert[0]}, u = u{cert[1]}")
    report.emit()
    return 0


def cmd_charvar(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    pres = load_module(args.module, grading)
    rep = charvar.dimension_report(grading, pres)
    report = Report(args.format)
    _add_cl_header(report, grading)
    report.add("char-ideal", _ideal_str(rep.char_ideal))
    report.add("dim", str(rep.dim))
    if args.saturate:
        report.add("saturated", _ideal_str(rep.saturated))
    report.add("torsion", "yes" if rep.torsion else "no")
    report.add("sheaf-dim", str(rep.sheaf_dim))
    report.add("holonomic-module", "yes" if rep.holonomic_module else "no")
    report.add("holonomic-sheaf", "yes" if rep.holonomic_sheaf else "no")
    if args.charts:
        for cone in grading.fan.max_cones:
            label = f"chart-{','.join(str(i + 1) for i in cone)}"
            chart = charvar.chart_ideal_from_saturated(grading, rep.saturated, cone)
            d = grading.d
            xnames = [f"x{i + 1}" for i in range(d)]
            xinames = [f"xi{i + 1}" for i in range(d)]
            gens = []
            for nm, xe, xie in chart.generator_monomials:
                gens.append(f"{nm} = " + _laurent_monomial(xnames + xinames,
                                                           tuple(xe) + tuple(xie)))
            report.add(f"{label}-generators", "; ".join(gens))
            report.add(f"{label}-window", chart.window)
            report.add(f"{label}-presentation", _ideal_str(chart.presentation_ideal))
            report.add(f"{label}-image", _ideal_str(chart.image_ideal))
            report.add(f"{label}-dim", str(chart.dimension))
    report.emit()
    return 0


def cmd_swap(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    pres = load_module(args.module, grading)
    _emit_module_document(dmod.left_right_swap(pres), grading)
    return 0


def cmd_local(args) -> int:
    fan = load_fan(args.fan)
    grading = grading_data(fan)
    cone = parse_cone(args.cone, fan)
    if not fan.has_cone(cone):
        raise UnknownCone(f"cone {args.cone} is not in the fan")
    p = parse_point(args.p, fan.n)
    report = Report(args.format)
    _add_cl_header(report, grading)
    report.add("cone", ",".join(str(i + 1) for i in cone))
    report.add("p", ",".join(str(x) for x in p))
    report.add("iota-p", json.dumps(list(grading.iota_of(p))))
    hp, factors = dmod.h_p(fan, grading, cone, p)
    thnames = [f"th{i + 1}" for i in range(fan.d)]
    vnames = [f"v{i + 1}" for i in range(fan.n)]
    report.add("h_p", tp_format(hp, thnames))
    report.add("h_p-factors",
               " * ".join(f"(th{i + 1} - {m})" if m else f"th{i + 1}"
                          for i, m in factors) if factors else "1")
    report.add("rho-h_p", tp_format(dmod.rho(grading, hp), vnames))
    ip = dmod.i_p_ideal(grading, cone, p)
    report.add("i_p", tp_format(ip, vnames))
    radius = max([1] + [abs(v) for v in grading.iota_of(p)]) + 1
    oracle_poly, _ = dmod.j_p_oracle(grading, cone, p, radius)
    report.add("oracle", "AGREE" if oracle_poly == hp else "DISAGREE")
    alt = _inclusive_variant(grading, cone, p)
    report.add("inclusive-bound-variant",
               "AGREE" if alt == oracle_poly else "DISAGREE (off-by-one)")
    ymatch = dmod.i_p_matches_y_p(grading, cone, p, 2 * radius)
    report.add("y_p-vanishing", "AGREE" if ymatch else "DISAGREE")
    if args.g is not None:
        g = parse_theta_poly(args.g, fan.d)
        pair = dmod.local_op_image(grading, cone, p, g)
        report.add("g", tp_format(g, thnames))
        report.add("g-image", f"({','.join(str(x) for x in pair[0])}; "
                              f"{tp_format(pair[1], vnames)})")
    report.emit()
    return 0


def _inclusive_variant(grading: GradingData, cone, p):
    """h_p with the index range widened by one (0 <= m <= -iota(p)_i)."""
    from .weyl import tp_const, tp_linear, tp_mul
    ip = grading.iota_of(p)
    poly = tp_const(grading.d, 1)
    for i in cone:
        for m in range(0, -ip[i] + 1):
            poly = tp_mul(poly, tp_linear(grading.d, i, -m))
    return poly


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-dmod",
        description="Cox-graded Weyl algebra computations over smooth toric fans")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("plain", "machine"), default="plain")

    p = sub.add_parser("fan-info", help="class group, degrees and Euler operators")
    p.add_argument("fan")
    common(p)
    p.set_defaults(func=cmd_fan_info)

    p = sub.add_parser("dl", help="twisted left module document")
    p.add_argument("fan")
    p.add_argument("degree", help="comma-separated class coordinates")
    common(p)
    p.set_defaults(func=cmd_dl)

    p = sub.add_parser("dr", help="twisted right module document")
    p.add_argument("fan")
    p.add_argument("degree")
    common(p)
    p.set_defaults(func=cmd_dr)

    p = sub.add_parser("check", help="theta-condition membership test")
    p.add_argument("fan")
    p.add_argument("module")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("charvar", help="characteristic ideal and dimensions")
    p.add_argument("fan")
    p.add_argument("module")
    p.add_argument("--charts", action="store_true", help="per-cone chart ideals")
    p.add_argument("--saturate", action="store_true",
                   help="print the saturated ideal generators")
    common(p)
    p.set_defaults(func=cmd_charvar)

    p = sub.add_parser("swap", help="left-right swap of a module document")
    p.add_argument("fan")
    p.add_argument("module")
    common(p)
    p.set_defaults(func=cmd_swap)

    p = sub.add_parser("local", help="chart eigenspace data for a cone and p")
    p.add_argument("fan")
    p.add_argument("--cone", required=True, help="comma-separated 1-based ray indices")
    p.add_argument("--p", required=True, dest="p",
                   help="comma-separated lattice point (use --p=-1,0 for negatives)")
    p.add_argument("--g", help="theta polynomial to map through the chart")
    common(p)
    p.set_defaults(func=cmd_local)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (FanValidationError, UnknownCone) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (NotInJp, PreconditionViolated) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 4
    except ToricDmodError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
