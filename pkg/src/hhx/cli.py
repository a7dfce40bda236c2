"""Command-line driver.

Subcommands: validate, homology, induced, square, demo.  Human-readable
tables go to stdout; the full machine-readable report can be written with
--json-out.  Exit codes: 0 success, 1 validation or verdict failure,
2 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .algebras import (
    regular_module,
    validate_algebra,
    validate_coalgebra,
    validate_comodule,
    validate_module,
)
from .document import load_document, parse_element, parse_document
from .errors import (
    HHXError,
    InvalidDimension,
    ParseError,
    TruncationTooShallow,
    UnknownBasisName,
    UnresolvedReference,
)
from .hochschild import (
    LodayModule,
    chain_complex,
    homology_map,
    measuring_chain_map,
    verify_naturality_square,
)
from .measurings import (
    self_comodule_measuring,
    validate_comodule_measuring,
    validate_measuring,
)
from .simplicial import from_name, validate_simplicial_map, validate_simplicial_set

USAGE_ERROR = 2
FAILURE = 1
OK = 0


def _matrix_json(m):
    fmt = m.field.format
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[r, c, fmt(v)] for (r, c), v in m.items()],
    }


def _matrix_lines(m):
    fmt = m.field.format
    dense = m.to_rows()
    if m.rows == 0 or m.cols == 0:
        return [f"    (empty {m.rows}x{m.cols} matrix)"]
    widths = [
        max(len(fmt(dense[r][c])) for r in range(m.rows)) for c in range(m.cols)
    ]
    lines = []
    for r in range(m.rows):
        cells = "  ".join(fmt(dense[r][c]).rjust(widths[c]) for c in range(m.cols))
        lines.append(f"    [ {cells} ]")
    return lines


def _base_report(command, ws, args=None):
    report = {
        "tool": {"name": "hhx", "version": __version__},
        "command": command,
        "field": ws.field.name,
    }
    if ws.field.characteristic:
        report["advisory"] = (
            "results over a prime field are advisory; the rational field is "
            "authoritative"
        )
    return report


def _validate_workspace(ws):
    """Run every validator over the workspace, in a fixed object order."""
    rows = []

    def add(obj_label, report):
        for check in report.checks:
            rows.append(
                {
                    "object": obj_label,
                    "check": check.name,
                    "passed": check.passed,
                    "location": list(check.location) if check.location else None,
                    "message": check.message,
                }
            )

    for name in sorted(ws.algebras):
        add(f"algebra {name}", validate_algebra(ws.algebras[name]))
    for name in sorted(ws.modules):
        add(f"module {name}", validate_module(ws.modules[name]))
    for name in sorted(ws.coalgebras):
        add(f"coalgebra {name}", validate_coalgebra(ws.coalgebras[name]))
    for name in sorted(ws.comodules):
        add(f"comodule {name}", validate_comodule(ws.comodules[name]))
    for name in sorted(ws.measurings):
        psi = ws.measurings[name]
        report = validate_measuring(psi)
        cocom = report.check_named("cocommutative-coalgebra")
        if not cocom.passed:
            cname = _label_of(ws.coalgebras, psi.coalgebra)
            cocom.message = f"coalgebra {cname} is not cocommutative"
        add(f"measuring {name}", report)
    for name in sorted(ws.comodule_measurings):
        add(
            f"comodule measuring {name}",
            validate_comodule_measuring(ws.comodule_measurings[name]),
        )
    for name in sorted(ws.simplicial_sets):
        add(f"simplicial set {name}", validate_simplicial_set(ws.simplicial_sets[name]))
    for name in sorted(ws.simplicial_maps):
        add(f"simplicial map {name}", validate_simplicial_map(ws.simplicial_maps[name]))
    return rows


def _label_of(table, obj):
    for name in sorted(table):
        if table[name] == obj:
            return name
    return "?"


def _print_validation(rows, out):
    width = max((len(r["object"]) for r in rows), default=10) + 2
    cwidth = max((len(r["check"]) for r in rows), default=10) + 2
    for r in rows:
        status = "ok" if r["passed"] else "FAIL"
        suffix = ""
        if not r["passed"] and r["location"]:
            suffix = f"  at {tuple(r['location'])}"
        if not r["passed"] and r["message"]:
            suffix += f"  {r['message']}"
        print(f"{r['object']:<{width}}{r['check']:<{cwidth}}{status}{suffix}", file=out)


def _emit(report, json_out):
    if json_out:
        with open(json_out, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(report, indent=2, sort_keys=True))
            handle.write("\n")


def _resolve_space(ws, name, truncation):
    if name in ws.simplicial_sets:
        return ws.simplicial_sets[name]
    try:
        return from_name(name, truncation)
    except ValueError:
        raise UnresolvedReference(
            f"{name!r} is neither a document simplicial set nor a built-in name"
        ) from None


def _resolve_comodule_measuring(ws, name):
    if name in ws.comodule_measurings:
        return ws.comodule_measurings[name]
    if name in ws.measurings:
        return self_comodule_measuring(ws.measurings[name])
    raise UnresolvedReference(f"unknown measuring {name!r}")


# -- commands --------------------------------------------------------------------


def cmd_validate(ws, json_out=None, out=sys.stdout):
    rows = _validate_workspace(ws)
    report = _base_report("validate", ws)
    report["checks"] = rows
    report["ok"] = all(r["passed"] for r in rows)
    _print_validation(rows, out)
    print(f"overall: {'ok' if report['ok'] else 'FAIL'}", file=out)
    _emit(report, json_out)
    return report


def cmd_homology(ws, space_name, algebra_name, module_name, max_degree,
                 normalized=True, truncation=None, json_out=None,
                 out=sys.stdout):
    if max_degree < 0:
        raise InvalidDimension("max degree must be nonnegative")
    needed = max_degree + 1
    y = _resolve_space(ws, space_name, truncation if truncation is not None else needed)
    if y.truncation < needed:
        raise TruncationTooShallow(
            f"homology through degree {max_degree} needs truncation >= {needed}, "
            f"have {y.truncation}"
        )

    algebra = _resolve(ws.algebras, algebra_name, "algebra")
    if module_name is None:
        module = regular_module(algebra)
        module_label = f"regular({algebra_name})"
    else:
        module = _resolve(ws.modules, module_name, "module")
        module_label = module_name

    rows = _validate_workspace(ws)
    report = _base_report("homology", ws)
    report.update(
        {
            "space": y.name or space_name,
            "truncation": y.truncation,
            "algebra": algebra_name,
            "module": module_label,
            "normalized": normalized,
            "validation_ok": all(r["passed"] for r in rows),
        }
    )
    if not report["validation_ok"]:
        report["checks"] = [r for r in rows if not r["passed"]]
        _print_validation(report["checks"], out)
        _emit(report, json_out)
        return report

    loday = LodayModule(algebra, module)
    cc = chain_complex(loday, y, normalized=normalized)
    table = []
    for n in range(max_degree + 1):
        pres = cc.homology(n)
        table.append(
            {
                "degree": n,
                "homology_dimension": pres.dimension,
                "chain_dimension": cc.dimension(n),
            }
        )
    report["table"] = table

    flavor = "normalized" if normalized else "unnormalized"
    print(
        f"homology of order {report['space']} for ({algebra_name}, {module_label}) "
        f"over {ws.field.name} [{flavor}]",
        file=out,
    )
    print("  n   dim HH_n   dim C_n", file=out)
    for row in table:
        print(
            f"  {row['degree']:<3} {row['homology_dimension']:<10} "
            f"{row['chain_dimension']}",
            file=out,
        )
    if ws.field.characteristic:
        print("  (advisory: prime-field dimensions)", file=out)
    _emit(report, json_out)
    return report


def _resolve(table, name, kind):
    if name not in table:
        raise UnresolvedReference(f"unknown {kind} {name!r}")
    return table[name]


def cmd_induced(ws, measuring_name, element_expr, space_name, max_degree,
                normalized=True, truncation=None, with_chain=False,
                json_out=None, out=sys.stdout):
    if max_degree < 0:
        raise InvalidDimension("max degree must be nonnegative")
    phi = _resolve_comodule_measuring(ws, measuring_name)
    coeffs = parse_element(element_expr, phi.comodule.basis, ws.field)
    needed = max_degree + 1
    y = _resolve_space(ws, space_name, truncation if truncation is not None else needed)
    if y.truncation < needed:
        raise TruncationTooShallow(
            f"induced maps through degree {max_degree} need truncation >= "
            f"{needed}, have {y.truncation}"
        )

    rows = _validate_workspace(ws)
    report = _base_report("induced", ws)
    report.update(
        {
            "measuring": measuring_name,
            "element": element_expr,
            "space": y.name or space_name,
            "normalized": normalized,
            "validation_ok": all(r["passed"] for r in rows),
        }
    )
    if not report["validation_ok"]:
        report["checks"] = [r for r in rows if not r["passed"]]
        _print_validation(report["checks"], out)
        _emit(report, json_out)
        return report

    l_src = LodayModule(phi.measuring.source, phi.source)
    l_dst = LodayModule(phi.measuring.target, phi.target)
    cm = measuring_chain_map(phi, coeffs, l_src, l_dst, y, normalized=normalized)

    degrees = []
    print(
        f"maps induced by {element_expr} on homology of order {report['space']}",
        file=out,
    )
    for n in range(max_degree + 1):
        matrix = homology_map(cm, n)
        src_pres = cm.source.homology(n)
        dst_pres = cm.target.homology(n)
        degrees.append(
            {
                "degree": n,
                "matrix": _matrix_json(matrix),
                "source": {
                    "dimension": src_pres.dimension,
                    "representatives": _matrix_json(src_pres.representatives),
                },
                "target": {
                    "dimension": dst_pres.dimension,
                    "representatives": _matrix_json(dst_pres.representatives),
                },
            }
        )
        print(
            f"  degree {n}: {dst_pres.dimension}x{src_pres.dimension} matrix",
            file=out,
        )
        for line in _matrix_lines(matrix):
            print(line, file=out)
    report["degrees"] = degrees
    if with_chain:
        report["chain_level"] = [
            {"degree": k, "matrix": _matrix_json(cm.component(k))}
            for k in range(y.truncation + 1)
        ]
        print("chain-level components:", file=out)
        for k in range(y.truncation + 1):
            print(f"  degree {k}:", file=out)
            for line in _matrix_lines(cm.component(k)):
                print(line, file=out)
    _emit(report, json_out)
    return report


def cmd_square(ws, map_name, measuring_name, element_expr, max_degree,
               normalized=True, json_out=None, out=sys.stdout):
    if max_degree < 0:
        raise InvalidDimension("max degree must be nonnegative")
    g = _resolve(ws.simplicial_maps, map_name, "simplicial map")
    phi = _resolve_comodule_measuring(ws, measuring_name)
    coeffs = parse_element(element_expr, phi.comodule.basis, ws.field)
    needed = max_degree + 1
    if g.source.truncation < needed:
        raise TruncationTooShallow(
            f"the square through degree {max_degree} needs truncation >= {needed}"
        )

    rows = _validate_workspace(ws)
    validation_ok = all(r["passed"] for r in rows)
    report = _base_report("square", ws)
    report.update(
        {
            "map": map_name,
            "measuring": measuring_name,
            "element": element_expr,
            "normalized": normalized,
            "validation_ok": validation_ok,
        }
    )
    if not validation_ok:
        report["checks"] = [r for r in rows if not r["passed"]]
        _print_validation(report["checks"], out)
        print("(validation failed; computing the square as a diagnostic)", file=out)

    l_src = LodayModule(phi.measuring.source, phi.source)
    l_dst = LodayModule(phi.measuring.target, phi.target)
    square = verify_naturality_square(
        g, phi, coeffs, l_src, l_dst, list(range(max_degree + 1)),
        normalized=normalized,
    )

    report["chain_level"] = []
    for k, equal in enumerate(square.chain_equal):
        entry = {"degree": k, "equal": equal}
        if not equal:
            lhs, rhs = square.chain_mismatches[k]
            entry["lhs"] = _matrix_json(lhs)
            entry["rhs"] = _matrix_json(rhs)
        report["chain_level"].append(entry)
    report["homology_level"] = [
        {
            "degree": n,
            "equal": sq.equal,
            "lhs": _matrix_json(sq.lhs),
            "rhs": _matrix_json(sq.rhs),
        }
        for n, sq in sorted(square.homology.items())
    ]
    report["note"] = square.note
    report["ok"] = validation_ok and square.ok

    print(f"compatibility square for {element_expr} along {map_name}:", file=out)
    for entry in report["chain_level"]:
        verdict = "equal" if entry["equal"] else "UNEQUAL"
        print(f"  chain degree {entry['degree']}: {verdict}", file=out)
        if not entry["equal"]:
            lhs, rhs = square.chain_mismatches[entry["degree"]]
            print("   one composite:", file=out)
            for line in _matrix_lines(lhs):
                print(line, file=out)
            print("   other composite:", file=out)
            for line in _matrix_lines(rhs):
                print(line, file=out)
            print("   difference:", file=out)
            for line in _matrix_lines(lhs - rhs):
                print(line, file=out)
    for entry in report["homology_level"]:
        verdict = "equal" if entry["equal"] else "UNEQUAL"
        print(f"  homology degree {entry['degree']}: {verdict}", file=out)
    if square.note:
        print(f"  note: {square.note}", file=out)
    print(f"square verdict: {'ok' if report['ok'] else 'FAIL'}", file=out)
    _emit(report, json_out)
    return report


def bundled_document_path(name="dual-numbers.hhx.json"):
    return resources.files("hhx").joinpath("data", name)


def cmd_demo(json_out=None, out=sys.stdout):
    """Run the bundled example document end-to-end."""
    path = bundled_document_path()
    data = json.loads(path.read_text(encoding="utf-8"))
    ws = parse_document(data)
    print(f"bundled document: {path.name}", file=out)
    reports = [cmd_validate(ws, out=out)]
    for req in ws.requests:
        print("", file=out)
        reports.append(_run_request(ws, req, out=out))
    combined = {
        "tool": {"name": "hhx", "version": __version__},
        "command": "demo",
        "reports": reports,
    }
    _emit(combined, json_out)
    return combined


def _run_request(ws, req, out=sys.stdout):
    kind = req.get("kind")
    if kind == "homology":
        return cmd_homology(
            ws, req["space"], req["algebra"], req.get("module"),
            req["max_degree"], normalized=req.get("normalized", True), out=out,
        )
    if kind == "induced":
        return cmd_induced(
            ws, req["measuring"], req["element"], req["space"],
            req["max_degree"], normalized=req.get("normalized", True),
            with_chain=req.get("chain", False), out=out,
        )
    if kind == "square":
        return cmd_square(
            ws, req["map"], req["measuring"], req["element"],
            req["max_degree"], normalized=req.get("normalized", True), out=out,
        )
    raise ParseError(f"unknown request kind {kind!r}")


# -- argument parsing --------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hhx",
        description=(
            "Exact Hochschild homology of commutative algebras over pointed "
            "simplicial sets, with the maps induced by coalgebra measurings."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field=True):
        p.add_argument("--json-out", metavar="PATH", default=None)
        if field:
            p.add_argument(
                "--field", default=None, metavar="F",
                help="override the document field: rational or prime:p",
            )

    p = sub.add_parser("validate", help="run every validator in a document")
    p.add_argument("document")
    common(p)

    p = sub.add_parser("homology", help="homology dimension table")
    p.add_argument("document")
    p.add_argument("space", help="document simplicial set or built-in name")
    p.add_argument("algebra")
    p.add_argument("module", nargs="?", default=None,
                   help="defaults to the algebra acting on itself")
    p.add_argument("--max-degree", "-n", type=int, required=True)
    p.add_argument("--truncation", type=int, default=None)
    norm = p.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true",
                      default=True)
    norm.add_argument("--unnormalized", dest="normalized", action="store_false")
    common(p)

    p = sub.add_parser("induced", help="matrices induced on homology by a measuring element")
    p.add_argument("document")
    p.add_argument("measuring")
    p.add_argument("element", help="linear combination of basis names, e.g. '2*g + d'")
    p.add_argument("space")
    p.add_argument("--max-degree", "-n", type=int, required=True)
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--chain", action="store_true",
                   help="also report the chain-level matrices")
    norm = p.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true",
                      default=True)
    norm.add_argument("--unnormalized", dest="normalized", action="store_false")
    common(p)

    p = sub.add_parser("square", help="check the measuring/simplicial-map square")
    p.add_argument("document")
    p.add_argument("map")
    p.add_argument("measuring")
    p.add_argument("element")
    p.add_argument("--max-degree", "-n", type=int, required=True)
    norm = p.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true",
                      default=True)
    norm.add_argument("--unnormalized", dest="normalized", action="store_false")
    common(p)

    p = sub.add_parser("demo", help="run the bundled example end-to-end")
    common(p, field=False)
    return parser


def main(argv=None, out=sys.stdout, err=sys.stderr):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR

    try:
        if args.command == "demo":
            cmd_demo(json_out=args.json_out, out=out)
            return OK

        ws = load_document(args.document, field_override=args.field)
        if args.command == "validate":
            report = cmd_validate(ws, json_out=args.json_out, out=out)
            return OK if report["ok"] else FAILURE
        if args.command == "homology":
            report = cmd_homology(
                ws, args.space, args.algebra, args.module, args.max_degree,
                normalized=args.normalized, truncation=args.truncation,
                json_out=args.json_out, out=out,
            )
            return OK if report["validation_ok"] else FAILURE
        if args.command == "induced":
            report = cmd_induced(
                ws, args.measuring, args.element, args.space, args.max_degree,
                normalized=args.normalized, truncation=args.truncation,
                with_chain=args.chain, json_out=args.json_out, out=out,
            )
            return OK if report["validation_ok"] else FAILURE
        if args.command == "square":
            report = cmd_square(
                ws, args.map, args.measuring, args.element, args.max_degree,
                normalized=args.normalized, json_out=args.json_out, out=out,
            )
            return OK if report["ok"] else FAILURE
        raise AssertionError(f"unhandled command {args.command}")
    except (ParseError, UnresolvedReference, UnknownBasisName,
            TruncationTooShallow, InvalidDimension) as exc:
        print(f"error: {exc}", file=err)
        return USAGE_ERROR
    except HHXError as exc:
        print(f"error: {exc}", file=err)
        return FAILURE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
