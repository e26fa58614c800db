"""Command-line front end.

    quasimaps invariant --preset gr:2,4 --degree 0 --insertion "(u1*u2)^2"
    quasimaps series    --preset p:1 --insertion "u1^3" --q 0.1 --kappa-bound 8
    quasimaps vi        --preset p:1 --insertion "u1^3" --q 0.1
    quasimaps check     --preset p:1 --insertion "u1^3" --q 0.1 --kappa-bound 8
    quasimaps explain   --preset p:1 --degree 1 --insertion "u1^3" --mode equivariant
    quasimaps presets

Exit status: 0 on success, 1 on domain errors (a JSON error object is
printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import presets
from .errors import PolynomialSyntaxError, PresentationError, QuasimapError
from .git_model import GitPresentation, as_dual_point, load_presentation
from .invariants import (EQUIVARIANT, NONEQUIVARIANT, THREADS_ENV, InvariantRequest,
                         invariant, series_terms, sum_series,
                         virtual_dimension)
from .ratfun import parse_polynomial
from .vafa_intriligator import embed_g_point, sigma_shift, vi_sum, vi_vs_series_check


class UsageError(Exception):
    pass


def _complex_json(c: complex):
    return [float(c.real), float(c.imag)]


def _parse_ints(text: str, what: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad {what} {text!r}: expected comma-separated integers") from None


def _parse_q(text: str):
    try:
        return tuple(complex(x.replace(" ", "")) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --q {text!r}: expected comma-separated numbers") from None


def _presentation(args) -> GitPresentation:
    if bool(args.preset) == bool(args.custom):
        raise UsageError("give exactly one of --preset and --custom")
    if args.custom:
        try:
            return load_presentation(args.custom)
        except OSError as exc:
            raise UsageError(f"cannot read {args.custom}: {exc}") from None
    try:
        return presets.build(args.preset)
    except PresentationError as exc:
        raise UsageError(str(exc)) from None


def _insertion(args, p: GitPresentation):
    try:
        return parse_polynomial(args.insertion, p.rank)
    except PolynomialSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _request(args, p, mode=None):
    degree = _parse_ints(args.degree, "--degree")
    return InvariantRequest(p, degree, _insertion(args, p), mode or args.mode,
                            dualize=args.dualize, skip_insertion_check=args.no_insertion_check)


def _cmd_invariant(args, explain=False):
    p = _presentation(args)
    req = _request(args, p)
    res = invariant(req, threads=args.threads, explain=explain or args.explain)
    out = {"presentation": str(p), "degree": list(req.degree), "mode": req.mode,
           "insertion": str(req.insertion), "dualize": req.dualize,
           "virtual_dimension": virtual_dimension(req.degree, p)}
    out.update(res.to_json())
    out["value_str"] = str(res.value)
    # the opposite sign convention for insertions, reported alongside
    other = InvariantRequest(p, req.degree, req.insertion, req.mode, dualize=not req.dualize,
                             skip_insertion_check=True)
    out["value_other_convention"] = str(invariant(other, threads=args.threads).value)
    if res.residue_report is not None:
        out["residues"] = res.residue_report
    return out


def _cmd_series(args):
    p = _presentation(args)
    ins = _insertion(args, p)
    q = as_dual_point(_parse_q(args.q))
    terms = series_terms(p, ins, args.kappa_bound, args.threads, dualize=args.dualize,
                         skip_insertion_check=args.no_insertion_check)
    value = sum_series(p, terms, q)
    return {"presentation": str(p), "insertion": str(ins), "q": q.to_json(),
            "kappa_bound": args.kappa_bound, "weyl_order": p.weyl_order,
            "terms": [{"degree": list(d), "invariant": str(v)} for d, v in terms if v],
            "value": _complex_json(value)}


def _cmd_vi(args):
    p = _presentation(args)
    ins = _insertion(args, p).map_coefficients(lambda c: c.at_zero())
    q = as_dual_point(_parse_q(args.q))
    q_t = embed_g_point(q, p)
    sq = sigma_shift(q_t, p)
    return {"presentation": str(p), "insertion": str(ins), "q": q.to_json(),
            "torus_q": q_t.to_json(), "sigma_q": sq.to_json(),
            "vi_value": _complex_json(vi_sum(ins, sq, p)),
            "vi_value_unshifted": _complex_json(vi_sum(ins, q_t, p))}


def _cmd_check(args):
    p = _presentation(args)
    ins = _insertion(args, p)
    report = vi_vs_series_check(ins, _parse_q(args.q), p, args.kappa_bound,
                                threads=args.threads)
    report["presentation"] = str(p)
    return report


def _cmd_presets(args):
    return {"presets": [{"syntax": k, "description": v} for k, v in presets.CATALOG.items()]}


def _table(obj, indent=0) -> List[str]:
    lines = []
    pad = " " * indent
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list))
                                                       for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{str(k).ljust(width)} :")
                lines += _table(v, indent + 2)
            else:
                lines.append(f"{pad}{str(k).ljust(width)} : {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines += _table(item, indent + 2)
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(pad + json.dumps(obj))
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasimaps",
                                     description="Quasimap invariants via residues.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, degree=False, q=False, bound=False):
        sp.add_argument("--preset", help="preset string, e.g. p:2, pp:1,1, gr:2,4")
        sp.add_argument("--custom", help="presentation JSON file")
        sp.add_argument("--insertion", required=True, help='polynomial such as "(u1*u2)^2"')
        if degree:
            sp.add_argument("--degree", required=True, help="G-degree, comma separated")
            sp.add_argument("--mode", choices=[EQUIVARIANT, NONEQUIVARIANT],
                            default=NONEQUIVARIANT)
            sp.add_argument("--explain", action="store_true",
                            help="include residue computations and term breakdown")
        if q:
            sp.add_argument("--q", required=True, help="point of the degree torus")
        if bound:
            sp.add_argument("--kappa-bound", type=int, default=8)
        sp.add_argument("--dualize", action="store_true",
                        help="substitute u -> -u in the insertion")
        sp.add_argument("--no-insertion-check", action="store_true",
                        help="accept insertions that are not Weyl-invariant")
        sp.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default from ${THREADS_ENV} or 1)")
        sp.add_argument("--format", choices=["json", "table"], default="json")

    common(sub.add_parser("invariant", help="one invariant"), degree=True)
    common(sub.add_parser("explain", help="invariant with residue details"), degree=True)
    common(sub.add_parser("series", help="truncated generating series"), q=True, bound=True)
    common(sub.add_parser("vi", help="fiber sum at the shifted point"), q=True)
    common(sub.add_parser("check", help="series against fiber sum"), q=True, bound=True)
    sp = sub.add_parser("presets", help="list preset syntax")
    sp.add_argument("--format", choices=["json", "table"], default="json")
    return parser


COMMANDS = {
    "invariant": _cmd_invariant,
    "explain": lambda a: _cmd_invariant(a, explain=True),
    "series": _cmd_series,
    "vi": _cmd_vi,
    "check": _cmd_check,
    "presets": _cmd_presets,
}


def _emit(obj, fmt, stream):
    if fmt == "table":
        stream.write("\n".join(_table(obj)) + "\n")
    else:
        stream.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"quasimaps: error: {exc}\n")
        _emit({"error": "usage", "message": str(exc)}, "json", stdout)
        return 2
    except QuasimapError as exc:
        err = exc.to_dict()
        if getattr(exc, "breakdown", None):
            err["breakdown"] = exc.breakdown
        _emit(err, "json", stdout)
        return 1
    _emit(out, args.format, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
