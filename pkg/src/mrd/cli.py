"""``mrd``: build, multiply, invert, characterize and compress (multiple) Riordan arrays.

Exit status: 0 on success, 2 for parse and validation errors, 1 for
mathematical errors, 3 when a minor enumeration exceeds its budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from . import compress as C
from . import identities as I
from . import multiriordan as M
from . import riordan as R
from .errors import GFSyntaxError, InsufficientTruncation, InvalidSpec, MRDError
from .gfexpr import GRAMMAR, evaluate
from .matrix import RationalMatrix
from .series import Series, format_rational, parse_rational

FORMATS = ("text", "csv", "json")


class CLIError(InvalidSpec):
    pass


# -- input --------------------------------------------------------------------


def _caret(text: str, byte_pos: int) -> str:
    prefix = text.encode("utf-8")[:byte_pos].decode("utf-8", errors="ignore")
    return f"    {text}\n    {' ' * len(prefix)}^"


def parse_gf(label: str, text: str, order: int) -> Series:
    try:
        return evaluate(text, order)
    except MRDError as exc:
        pos = getattr(exc, "position", None)
        msg = f"{label}: {exc}"
        if pos is not None:
            msg += "\n" + _caret(text, pos)
        exc.args = (msg,)
        raise


def _series_from(label, value, order):
    if isinstance(value, str):
        return parse_gf(label, value, order)
    try:
        return Series.from_json(value)
    except (KeyError, TypeError, ValueError) as exc:
        raise CLIError(f"{label}: not a series object ({exc})") from None


def _spec_from_parts(g, fs, ell, kind):
    if ell is None:
        ell = len(fs)
    if len(fs) != ell:
        raise CLIError(f"--ell {ell} needs {ell} --f flags, got {len(fs)}")
    if ell == 1:
        return R.RiordanSpec(g, fs[0], kind)
    return M.MultiRiordanSpec(ell, g, tuple(fs), kind)


def load_spec(args, order: int, suffix: str = ""):
    """A spec from ``--spec FILE`` or from ``--g/--f`` (optionally suffixed, e.g. ``--g2``)."""
    spec_file = getattr(args, "spec" + suffix, None)
    kind = "type" if getattr(args, "type", False) else None
    if spec_file:
        try:
            with open(spec_file, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CLIError(f"cannot read spec file {spec_file}: {exc}") from None
        fs = obj.get("f")
        if "g" not in obj or not isinstance(fs, list) or not fs:
            raise CLIError(f"{spec_file}: needs 'g' and a nonempty list 'f'")
        g = _series_from("g", obj["g"], order)
        fs = [_series_from(f"f{i + 1}", f, order) for i, f in enumerate(fs)]
        return _spec_from_parts(g, fs, obj.get("ell"), obj.get("kind") or kind)
    g_text = getattr(args, "g" + suffix)
    f_texts = getattr(args, "f" + suffix)
    if g_text is None or not f_texts:
        flag = "--spec" + suffix
        raise CLIError(f"give --g{suffix} and at least one --f{suffix}, or {flag}")
    g = parse_gf(f"--g{suffix}", g_text, order)
    fs = [parse_gf(f"--f{suffix} #{i + 1}", t, order) for i, t in enumerate(f_texts)]
    return _spec_from_parts(g, fs, getattr(args, "ell", None), kind)


def with_order(fn, start: int, tries: int = 5):
    """Run ``fn(order)``, raising the working order while series run out."""
    order = start
    for attempt in range(tries):
        try:
            return fn(order)
        except InsufficientTruncation:
            if attempt == tries - 1:
                raise
            order = 2 * order + 8


# -- output -------------------------------------------------------------------


def _join(xs, sep=", "):
    return sep.join(format_rational(x) for x in xs)


def spec_json(spec) -> dict:
    return spec.to_json()


def spec_lines(spec) -> list[str]:
    lines = [f"g: {_join(spec.g.coeffs)}"]
    fs = spec.f if isinstance(spec.f, tuple) else (spec.f,)
    for i, f in enumerate(fs, 1):
        lines.append(f"f{i}: {_join(f.coeffs)}")
    return lines


def emit(args, *, text=None, csv=None, obj=None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(obj, indent=2)
    elif fmt == "csv":
        out = csv if csv is not None else text
    else:
        out = text
    sys.stdout.write(out.rstrip("\n") + "\n")


def emit_matrix(args, m: RationalMatrix):
    emit(args, text=m.to_text(), csv=m.to_csv(), obj=m.to_json())


def emit_spec(args, spec):
    lines = spec_lines(spec)
    csv = "\n".join(ln.replace(": ", ",").replace(", ", ",") for ln in lines)
    emit(args, text="\n".join(lines), csv=csv, obj=spec_json(spec))


# -- commands -----------------------------------------------------------------


def cmd_eval(args):
    s = parse_gf("EXPR", args.expr, args.order)
    emit(args, text=_join(s.coeffs), csv=_join(s.coeffs, ","), obj=s.to_json())


def _default_order(args, *dims):
    return args.order if args.order is not None else sum(dims)


def cmd_build(args):
    spec = load_spec(args, _default_order(args, args.rows, args.cols))
    if isinstance(spec, R.RiordanSpec):
        m = R.build(spec, args.rows, args.cols)
    else:
        m = M.mbuild(spec, args.rows, args.cols)
    emit_matrix(args, m)


def _group_result(args, spec):
    if args.rows:
        cols = args.cols or args.rows
        m = R.build(spec, args.rows, cols) if isinstance(spec, R.RiordanSpec) else M.mbuild(spec, args.rows, cols)
        emit_matrix(args, m)
    else:
        emit_spec(args, spec)


def cmd_mul(args):
    order = _default_order(args, args.rows or 8, args.cols or args.rows or 8)
    a = load_spec(args, order)
    b = load_spec(args, order, "2")
    if type(a) is not type(b):
        raise CLIError("cannot multiply a classical array by a multiple one")
    out = R.mul(a, b) if isinstance(a, R.RiordanSpec) else M.mmul(a, b)
    _group_result(args, out)


def cmd_inv(args):
    a = load_spec(args, _default_order(args, args.rows or 8, args.cols or args.rows or 8))
    out = R.inv(a) if isinstance(a, R.RiordanSpec) else M.minv(a)
    _group_result(args, out)


def _seq_names(ell):
    return ["A", "Z"] if ell == 1 else ["A"] + [f"Z{m}" for m in range(ell)]


def cmd_seq(args):
    terms = args.terms

    def compute(order):
        spec = load_spec(args, order)
        if isinstance(spec, R.RiordanSpec):
            seqs = {"A": R.a_sequence(spec, terms), "Z": R.z_sequence(spec, terms)}
            return 1, seqs
        sc = M.mseq(spec)
        seqs = {"A": sc.A, **{f"Z{m}": z for m, z in enumerate(sc.Z)}}
        for name, s in seqs.items():
            if s.order < terms - 1:
                raise InsufficientTruncation(f"{name} known to {s.order + 1} terms")
        return spec.ell, seqs

    ell, seqs = with_order(compute, args.order or 2 * terms + 8)
    names = _seq_names(ell)
    which = args.which
    if which == "Z0" and ell == 1:
        which = "Z"
    if which is not None and which not in names:
        raise CLIError(f"--which must be one of {', '.join(names)}")
    chosen = [which] if which else names
    raw = {n: list(seqs[n].coeffs[:terms]) for n in chosen}
    if which:
        text = _join(raw[which])
        csv = _join(raw[which], ",")
    else:
        text = "\n".join(f"{n}: {_join(v)}" for n, v in raw.items())
        csv = "\n".join(f"{n},{_join(v, ',')}" for n, v in raw.items())
    obj = {
        "ell": ell,
        "stride": ell,
        "terms": terms,
        "sequences": {n: [format_rational(x) for x in v[::ell]] for n, v in raw.items()},
        "raw": {n: [format_rational(x) for x in v] for n, v in raw.items()},
    }
    emit(args, text=text, csv=csv, obj=obj)


def cmd_prodmat(args):
    size = args.size

    def compute(order):
        spec = load_spec(args, order)
        if isinstance(spec, R.RiordanSpec):
            return R.production_matrix(spec, size)
        return M.production_matrix(spec, size)

    emit_matrix(args, with_order(compute, args.order or 2 * size + 8))


def cmd_compress(args):
    rows, cols = args.rows, args.cols or args.rows
    kind = "type" if args.type else "proper"
    order = args.order or (rows + cols) * 4

    def compute(order):
        spec = load_spec(args, order)
        if not isinstance(spec, M.MultiRiordanSpec):
            raise CLIError("compression needs a multiple array (two or more --f flags)")
        if spec.kind != kind:
            raise CLIError(f"spec is a {spec.kind} array; {'drop' if args.type else 'add'} --type")
        m = C.compress_type(spec, rows, cols) if args.type else C.compress(spec, rows, cols)
        return C.compress_spec(spec), m

    cspec, m = with_order(compute, order)
    lines = [f"g^: {_join(cspec.g.coeffs[:rows])}"]
    lines += [f"f^{i}: {_join(f.coeffs[:rows])}" for i, f in enumerate(cspec.f, 1)]
    text = "\n".join(lines) + "\n\n" + m.to_text()
    emit(args, text=text, csv=m.to_csv(), obj={"spec": cspec.to_json(), "matrix": m.to_json()})


def _tp_emit(args, rep: C.TPReport):
    if rep.ok:
        text = f"ok: {rep.minors_checked} minors of order <= {rep.order} on the {rep.block}x{rep.cols} block are nonnegative"
    else:
        w = rep.witness
        text = f"negative minor: rows {w['rows']} cols {w['cols']} = {w['value']} (after {rep.minors_checked} minors)"
    w = rep.witness or {}
    csv = ",".join(
        str(x)
        for x in (
            rep.order,
            rep.block,
            str(rep.ok).lower(),
            " ".join(map(str, w.get("rows", []))),
            " ".join(map(str, w.get("cols", []))),
            w.get("value", ""),
        )
    )
    emit(args, text=text, csv=csv, obj=rep.to_json())


def cmd_tp(args):
    n = args.rows
    if args.matrix:
        try:
            with open(args.matrix, encoding="utf-8") as fh:
                m = RationalMatrix.from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CLIError(f"cannot read matrix file {args.matrix}: {exc}") from None
    else:
        order = args.order or (4 * n if args.compressed else 2 * n)

        def compute(order):
            spec = load_spec(args, order)
            if args.compressed:
                if not isinstance(spec, M.MultiRiordanSpec):
                    raise CLIError("--compressed needs a multiple array")
                if spec.kind == "type":
                    return C.compress_type(spec, n, n)
                return C.compress(spec, n, n)
            if isinstance(spec, R.RiordanSpec):
                return R.build(spec, n, n)
            return M.mbuild(spec, n, n)

        m = with_order(compute, order)
    _tp_emit(args, C.tp_check(m, args.max_order, args.budget))


def cmd_pf(args):
    if (args.seq is None) == (args.expr is None):
        raise CLIError("give exactly one of --seq and --expr")
    if args.seq is not None:
        try:
            seq = [parse_rational(x) for x in args.seq.split(",") if x.strip()]
        except ValueError as exc:
            raise CLIError(f"--seq: {exc}") from None
    else:
        seq = list(parse_gf("--expr", args.expr, args.terms - 1).coeffs)
    _tp_emit(args, C.pf_check(seq, args.depth, args.terms, args.budget))


def _grid(value, grid):
    return range(value + 1) if grid else [value]


def _identity_emit(args, report: I.IdentityReport):
    def key(p):
        return p.params.get("form") or p.params.get("check") or report.identity

    total = Counter(key(p) for p in report.points)
    passed = Counter(key(p) for p in report.points if p.ok)
    lines = [f"{name:<14} {passed[name]}/{total[name]} pass" for name in total]
    if args.verbose or report.failures:
        shown = report.points if args.verbose else report.failures
        for p in shown:
            params = " ".join(f"{k}={format_rational(v) if isinstance(v, Fraction) else v}" for k, v in p.params.items())
            lines.append(f"  {'ok  ' if p.ok else 'FAIL'} {params}: {format_rational(p.left)} vs {format_rational(p.right)}")
    lines.append(f"verdict: {report.verdict} ({len(report.points)} points)")
    csv = "\n".join(f"{name},{passed[name]},{total[name]}" for name in total)
    emit(args, text="\n".join(lines), csv=csv, obj=report.to_json())


def cmd_identity(args):
    which = args.identity
    if which == "umbral":
        report = I.IdentityReport("umbral")
        xs = args.x or ["1"]
        for m in _grid(args.m, args.grid):
            for n in _grid(args.n, args.grid):
                for x in xs:
                    report.extend(I.umbral_check(m, n, parse_rational(x)))
    elif which == "riosum":
        report = I.IdentityReport("riosum")
        spec = load_spec(args, _default_order(args, args.s, 2))
        if not isinstance(spec, R.RiordanSpec):
            raise CLIError("riosum needs a classical array (one --f)")
        for m in _grid(args.m, args.grid):
            for n in _grid(args.n, args.grid):
                for s in _grid(args.s, args.grid):
                    report.extend(I.riosum_check(spec, m, n, s))
    elif which == "grunert":
        f = parse_gf("--expr", args.expr, args.order)
        report = I.IdentityReport("grunert")
        for m in _grid(args.m, args.grid):
            report.extend(I.grunert_check(f, m))
    else:
        report = I.IdentityReport("fuss")
        for m in _grid(args.m, args.grid):
            for n in _grid(args.n, args.grid):
                for s in _grid(args.s, args.grid):
                    report.extend(I.fuss_identity_check(args.ell, args.p, m, n, s))
    _identity_emit(args, report)


def cmd_grammar(args):
    sys.stdout.write(GRAMMAR)


# -- parser -------------------------------------------------------------------


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _spec_flags(p, suffix="", with_type=True):
    p.add_argument(f"--g{suffix}", metavar="EXPR", help="GF of column 0")
    p.add_argument(f"--f{suffix}", metavar="EXPR", action="append", default=[], help="multiplier GF (repeat for multiple arrays)")
    p.add_argument(f"--spec{suffix}", metavar="FILE", help="JSON spec instead of --g/--f")
    if not suffix:
        p.add_argument("--ell", type=_positive, help="number of multipliers (default: count of --f)")
        if with_type:
            p.add_argument("--type", action="store_true", help="square type array (f has nonzero constant term)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--order", type=_nonneg, help="truncation order of the input series")

    parser = argparse.ArgumentParser(prog="mrd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="expand a GF expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval, order=10)

    p = sub.add_parser("build", parents=[common], help="leading block of an array")
    _spec_flags(p)
    p.add_argument("--rows", type=_nonneg, required=True)
    p.add_argument("--cols", type=_nonneg, required=True)
    p.set_defaults(func=cmd_build)

    for name, func, two in (("mul", cmd_mul, True), ("inv", cmd_inv, False)):
        p = sub.add_parser(name, parents=[common], help=f"group {'product' if two else 'inverse'} of proper arrays")
        _spec_flags(p, with_type=False)
        if two:
            _spec_flags(p, "2")
        p.add_argument("--rows", type=_nonneg, help="print the matrix instead of the (g; f) description")
        p.add_argument("--cols", type=_nonneg)
        p.set_defaults(func=func)

    p = sub.add_parser("seq", parents=[common], help="A- and Z-sequences")
    _spec_flags(p)
    p.add_argument("--which", help="A, Z (classical) or A, Z0..Z(ell-1)")
    p.add_argument("--terms", type=_positive, default=8, help="coefficients of t^0 .. t^(terms-1)")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("prodmat", parents=[common], help="production matrix")
    _spec_flags(p, with_type=False)
    p.add_argument("--size", type=_positive, required=True)
    p.set_defaults(func=cmd_prodmat)

    p = sub.add_parser("compress", parents=[common], help="compressed array and its spec")
    _spec_flags(p)
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--cols", type=_positive)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("tp", parents=[common], help="total positivity of a leading block")
    _spec_flags(p)
    p.add_argument("--matrix", metavar="FILE", help="JSON matrix instead of a spec")
    p.add_argument("--compressed", action="store_true", help="test the compression of a multiple array")
    p.add_argument("--rows", type=_positive, default=8, help="block size")
    p.add_argument("--max-order", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=C.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_tp)

    p = sub.add_parser("pf", parents=[common], help="Polya frequency test via the Toeplitz matrix")
    p.add_argument("--seq", help="comma-separated terms, e.g. 1,2,1")
    p.add_argument("--expr", help="GF whose coefficients form the sequence")
    p.add_argument("--depth", type=_positive, required=True, help="largest minor order")
    p.add_argument("--terms", type=_positive, required=True, help="Toeplitz block size")
    p.add_argument("--budget", type=_positive, default=C.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_pf)

    p = sub.add_parser("identity", help="check the summation identities")
    isub = p.add_subparsers(dest="identity", required=True)
    shared = argparse.ArgumentParser(add_help=False, parents=[common])
    shared.add_argument("--grid", action="store_true", help="sweep every integer parameter from 0")
    shared.add_argument("--verbose", action="store_true", help="list every point")
    q = isub.add_parser("umbral", parents=[shared])
    q.add_argument("--m", type=_nonneg, default=2)
    q.add_argument("--n", type=_nonneg, default=3)
    q.add_argument("--x", action="append", help="rational value (repeatable)")
    q = isub.add_parser("riosum", parents=[shared])
    _spec_flags(q, with_type=False)
    q.add_argument("--m", type=_nonneg, default=2)
    q.add_argument("--n", type=_nonneg, default=3)
    q.add_argument("--s", type=_nonneg, default=3)
    q = isub.add_parser("grunert", parents=[shared])
    q.add_argument("--expr", default="1/(1-t)")
    q.add_argument("--m", type=_nonneg, default=2)
    q.set_defaults(order=12)
    q = isub.add_parser("fuss", parents=[shared])
    q.add_argument("--ell", type=_positive, default=2)
    q.add_argument("--p", type=_positive, default=1)
    q.add_argument("--m", type=_nonneg, default=2)
    q.add_argument("--n", type=_nonneg, default=3)
    q.add_argument("--s", type=_nonneg, default=3)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("grammar", help="print the GF expression grammar")
    p.set_defaults(func=cmd_grammar, format="text")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except GFSyntaxError as exc:
        print(f"mrd: syntax error: {exc}", file=sys.stderr)
        return exc.exit_code
    except MRDError as exc:
        print(f"mrd: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
