"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification failure,
4 crosscheck mismatch.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import weights as W
from .criterion import (
    CriterionError,
    Witness,
    WitnessError,
    check_irreducible_any,
    check_nonzero,
    cross_validate,
    verify_witness,
)
from .exprs import ParseError, format_elem, parse_expr
from .fields import FieldCtx
from .flows import FlowError, enumerate_family, sign_i
from .hyperalgebra.commutators import xi
from .oracle import OracleError, monomial_rank, primitive_space, weyl_context

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _field(args) -> FieldCtx:
    try:
        return FieldCtx.parse(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weight(args, dominant=True) -> tuple:
    w = _int_list(args.weight)
    if len(w) != args.n - 1:
        raise UsageError(f"--weight needs {args.n - 1} coordinates for n={args.n}, got {len(w)}")
    if dominant and not W.is_dominant(w):
        raise UsageError(f"weight {w} is not dominant")
    return w


def _expr(args, field):
    return parse_expr(args.expr, args.n, field)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _base(args, field, weight=None) -> dict:
    out = {"command": args.command, "n": args.n, "field": str(field)}
    if weight is not None:
        out["weight"] = list(weight)
    return out


def cmd_check(args) -> int:
    field = _field(args)
    w = _weight(args)
    F = _expr(args, field)
    res = check_nonzero(F, w)
    payload = _base(args, field, w)
    payload.update(expr=format_elem(F), nonzero=res.nonzero)
    lines = [f"{'nonzero' if res.nonzero else 'zero'}: F e+ for F = {format_elem(F)} in Delta({','.join(map(str, w))}) over {field}"]
    if args.witness:
        payload["witnesses"] = [
            {"component": format_elem(cw.component), "witness": cw.witness.to_json(field)}
            for cw in res.witnesses
        ]
        for cw in res.witnesses:
            lines.append(f"  component {format_elem(cw.component)}: witness {cw.witness}, scalar {field.format(cw.witness.scalar)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args) -> int:
    field = _field(args)
    w = _weight(args)
    F = _expr(args, field)
    ctx = weyl_context(args.n, w, field)
    v = ctx.vector_of(F)
    payload = _base(args, field, w)
    payload.update(expr=format_elem(F), nonzero=bool(v), terms=len(v))
    _emit(args, payload, f"{'nonzero' if v else 'zero'}: oracle vector has {len(v)} terms")
    return EXIT_OK


def _load_witness(path: str) -> Witness:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read witness file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise WitnessError(f"witness file is not valid JSON: {exc}") from None
    return Witness.from_json(data)


def cmd_verify(args) -> int:
    field = _field(args)
    w = _weight(args)
    F = _expr(args, field)
    witness = _load_witness(args.witness_file)
    c = verify_witness(F, w, witness)
    payload = _base(args, field, w)
    payload.update(expr=format_elem(F), scalar=str(field.format(c)), verified=True)
    _emit(args, payload, f"verified: replay ends at ({field.format(c)}, 0)")
    return EXIT_OK


def cmd_irr(args) -> int:
    field = _field(args)
    w = _weight(args)
    F = _expr(args, field)
    verdict = bool(F) and check_irreducible_any(F, w)
    payload = _base(args, field, w)
    payload.update(expr=format_elem(F), nonzero=verdict)
    _emit(args, payload, f"{'nonzero' if verdict else 'zero'}: F v+ in L({','.join(map(str, w))}) by raising alone")
    return EXIT_OK


def cmd_flows(args) -> int:
    a, b = _int_list(args.sources), _int_list(args.sinks)
    fam = enumerate_family(args.n, args.i, a, b)
    rows = [(f, sign_i(f, args.i)) for f in fam]
    payload = {
        "command": "flows",
        "n": args.n,
        "i": args.i,
        "sources": list(a),
        "sinks": list(b),
        "count": len(rows),
        "flows": [{"edges": [list(e) for e in f.by_end()], "sign": s} for f, s in rows],
    }
    text = [f"{len(rows)} flows in F_{args.i}({','.join(map(str, a))}; {','.join(map(str, b))})"]
    text += [f"{s:+d}  {f if len(f) else '(empty)'}" for f, s in rows]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_xi(args) -> int:
    field = _field(args)
    a, b = _int_list(args.sources), _int_list(args.sinks)
    F = _expr(args, field)
    out = xi(args.i, a, b, F)
    payload = _base(args, field)
    payload.update(i=args.i, sources=list(a), sinks=list(b), expr=format_elem(F), result=format_elem(out))
    _emit(args, payload, format_elem(out))
    return EXIT_OK


def cmd_dim(args) -> int:
    field = _field(args)
    w = _weight(args)
    ctx = weyl_context(args.n, w, field)
    count = ctx.dim
    rank = monomial_rank(ctx)
    payload = _base(args, field, w)
    payload.update(standard_tableaux=count, oracle_rank=rank, match=count == rank)
    _emit(args, payload, f"{count} = {rank}" if count == rank else f"{count} != {rank}")
    return EXIT_OK if count == rank else EXIT_VERIFY


def cmd_primitive(args) -> int:
    field = _field(args)
    w = _weight(args)
    target = _int_list(args.target)
    if len(target) != args.n - 1:
        raise UsageError(f"--target needs {args.n - 1} coordinates")
    ctx = weyl_context(args.n, w, field)
    vecs = primitive_space(ctx, target)
    described = []
    for v in vecs:
        coords = sorted(ctx.tableau_coords(v).items())
        described.append([{"tableau": [list(r) for r in T], "coeff": str(field.format(c))} for T, c in coords])
    payload = _base(args, field, w)
    payload.update(target=list(target), dimension=len(vecs), vectors=described)
    text = [f"{len(vecs)} primitive vector(s) of weight {','.join(map(str, target))}"]
    for k, d in enumerate(described, 1):
        parts = [
            ("" if x["coeff"] == "1" else f"{x['coeff']}*") + f"F_{_tab_text(x['tableau'])}" for x in d
        ]
        text.append(f"  v{k} = " + " + ".join(parts) + " applied to e+")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def _tab_text(rows) -> str:
    return "[" + "|".join("".join(map(str, r)) for r in rows) + "]"


def cmd_crosscheck(args) -> int:
    fields = []
    for name in args.fields.split(","):
        try:
            fields.append(FieldCtx.parse(name))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    report = cross_validate(
        args.max_n, args.max_coeff, args.max_degree, fields,
        jobs=args.jobs, samples=args.samples, seed=args.seed,
    )
    report["command"] = "crosscheck"
    bad = report["mismatches"]
    lines = [
        f"{report['cases']} cases in {report['cells']} cells, "
        f"{report['positives']} nonzero, {len(bad)} mismatches"
    ]
    for m in bad:
        lines.append(f"  MISMATCH {m}")
    _emit(args, report, "\n".join(lines))
    return EXIT_MISMATCH if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weylcrit", description="Nonvanishing of F e+ in Weyl modules of type A.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, weight=True, expr=True):
        sp.add_argument("-n", type=int, required=True, help="rank parameter (type A_{n-1})")
        sp.add_argument("--field", default="Q", help="Q or F<p> (default Q)")
        if weight:
            sp.add_argument("--weight", required=True, help="fundamental coefficients a1,...,a_{n-1}")
        if expr:
            sp.add_argument("--expr", required=True, help='element such as "E(2,1)^(2)*E(3,2)"')
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("check", help="decide F e+ != 0 by the reduction criterion")
    common(sp)
    sp.add_argument("--witness", action="store_true", help="print replayable witnesses")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("oracle", help="decide F e+ != 0 in the tensor-space model")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="replay a witness file")
    common(sp)
    sp.add_argument("--witness-file", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("irr", help="raising-only check for the irreducible module")
    common(sp)
    sp.set_defaults(func=cmd_irr)

    sp = sub.add_parser("flows", help="list a flow family with signs")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("--sources", default="")
    sp.add_argument("--sinks", default="")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_flows)

    sp = sub.add_parser("xi", help="apply the flow-sum operator xi_i(a; b)")
    common(sp, weight=False)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("--sources", default="")
    sp.add_argument("--sinks", default="")
    sp.set_defaults(func=cmd_xi)

    sp = sub.add_parser("dim", help="standard tableau count versus oracle rank")
    common(sp, expr=False)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("primitive", help="primitive vectors of a given weight")
    common(sp, expr=False)
    sp.add_argument("--target", required=True, help="target weight in fundamental coordinates")
    sp.set_defaults(func=cmd_primitive)

    sp = sub.add_parser("crosscheck", help="checker versus oracle over a grid")
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--max-coeff", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--fields", default="Q,F2")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=0, help="random combinations per grid cell")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc.message} at position {exc.pos}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.pos}^", file=sys.stderr)
        return EXIT_PARSE
    except WitnessError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, CriterionError, OracleError, FlowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
