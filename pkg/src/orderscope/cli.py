"""``orderscope`` command line.

Exit codes: 0 verdict computed, 1 internal error, 2 indeterminate or a
resource cap was hit, 64 usage error (bad flags, invalid field, bad literal).
JSON output is key-sorted and contains no timings, so identical requests
print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import _kernels
from .abelian import parse_group
from .caps import _parse as _parse_caps
from .errors import (DomainError, InvalidFieldError, InvalidGroupError, NotProperOrderError,
                     OrderscopeError, ResourceLimitError)
from .localmonoid import local_context
from .ordercore import order_context
from .quadfield import QuadField, is_squarefree, parse_quadint
from .transfer import (INDETERMINATE, beta, decide, is_order_atom, lengths_in_order,
                       oracle_check, verify_T2)
from .zerosum import atoms_up_to, davenport, parse_sequence, sequence_report

EXIT_OK, EXIT_INTERNAL, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# -- reports ------------------------------------------------------------------------------


def field_report(K: QuadField) -> dict:
    from .classgroup import class_group
    cl = class_group(K)
    return {
        "d": K.d,
        "disc": K.disc,
        "omega": K.omega_str,
        "signature": K.signature,
        "class_group": {"invariants": list(cl.group.invariant_factors), "order": cl.h},
    }


def analyze_report(d: int, f: int, verify: bool = False, norm_bound: int = 1000) -> dict:
    octx = order_context(QuadField(d), f)
    v = decide(octx)
    report = {"field": field_report(octx.field)}
    if v.verdict == INDETERMINATE:
        report.update(v.to_dict())
        report["transfer_krull"] = None
        return report
    iso, pic_order, pic_witness = octx.picard_comparison()
    spec = octx.spec_map()
    report["order"] = {
        "f": f,
        "pic_order": pic_order,
        "pic_iso": iso,
        "pic_witness": str(pic_witness) if pic_witness is not None else None,
        "spec_bijective": spec.bijective,
        "spec": spec.to_dict(),
        "condition_a": octx.condition_a().to_dict(),
    }
    report["local"] = [local_context(octx, p).to_dict() for p in sorted(v.profiles)]
    report.update(v.to_dict())
    report["transfer_krull"] = v.is_transfer_krull
    if verify:
        chk = oracle_check(octx, norm_bound, v)
        report["oracle"] = {"t1": chk["t1"], "t2": chk["t2"], "anomaly": chk["anomaly"],
                            "agrees": chk["agrees"], "coverage": chk["coverage"]}
    else:
        report["oracle"] = None
    return report


def sweep_row(args) -> dict:
    d, f, verify, norm_bound = args
    row = {"d": d, "f": f}
    try:
        r = analyze_report(d, f, verify, norm_bound)
    except ResourceLimitError as exc:
        row.update(verdict=INDETERMINATE, error=str(exc))
        return row
    except (InvalidFieldError, NotProperOrderError) as exc:
        row.update(verdict=None, error=str(exc))
        return row
    row.update(
        verdict=r["verdict"],
        branch=r["branch"],
        class_number=r["field"]["class_group"]["order"],
        condition_a=r["condition_a"],
        condition_b=r["condition_b"],
        transfer_krull=r["transfer_krull"],
    )
    if verify and r.get("oracle"):
        row["oracle_agrees"] = r["oracle"]["agrees"]
    return row


# -- text rendering --------------------------------------------------------------------------


def _fmt_b(w: dict) -> str:
    val = "" if w["valuation"] is None else f" valuation {w['valuation']}"
    return f"{w['prime']}{val} ({w['reason']})"


def _text_analyze(r: dict) -> str:
    fld = r["field"]
    cg = fld["class_group"]
    lines = [f"field     d={fld['d']} disc={fld['disc']} w={fld['omega']} ({fld['signature']})",
             f"Cl(R)     order {cg['order']} invariants {cg['invariants'] or 'trivial'}"]
    if "order" in r:
        o = r["order"]
        lines.append(f"order     f={o['f']} |Pic|={o['pic_order']} Pic~Cl: {o['pic_iso']} "
                     f"spec bijective: {o['spec_bijective']}")
        for loc in r["local"]:
            lines.append(f"local p={loc['prime']['over']} rank={loc['rank']} alpha={loc['alpha']} "
                         f"atom valuations={loc['atom_valuations']}")
        ca, cb = r["condition_a"], r["condition_b"]
        lines.append(f"cond (a)  {ca['holds']}" + (f"  witness {ca['witness']}" if ca["witness"] else ""))
        lines.append(f"cond (b)  {cb['holds']}" + (f"  witness {_fmt_b(cb['witness'])}" if cb["witness"] else ""))
    lines.append(f"verdict   {r['verdict']} (branch {r['branch']})")
    if r.get("consequences"):
        lines.append(f"inclusion O -> R is a transfer: {r['consequences']['inclusion_is_transfer_hom']}")
    if r.get("oracle"):
        lines.append(f"oracle    agrees={r['oracle']['agrees']} t2={r['oracle']['t2']['ok']} "
                     f"coverage={r['oracle']['coverage']}")
    return "\n".join(lines)


def _emit(obj, as_json: bool, text: str | None = None):
    print(dumps(obj) if as_json else (text if text is not None else dumps(obj)))


# -- commands ----------------------------------------------------------------------------------


def cmd_analyze(ns) -> int:
    r = analyze_report(ns.d, ns.f, ns.verify, ns.norm_bound)
    _emit(r, ns.json, _text_analyze(r))
    if r["verdict"] == INDETERMINATE:
        return EXIT_INDETERMINATE
    return EXIT_OK


def cmd_zerosum(ns) -> int:
    G = parse_group(ns.group)
    out = {"group": list(G.invariant_factors), "order": G.order}
    if ns.davenport:
        out["davenport"] = davenport(G)
    if ns.atoms:
        out["atoms"] = sorted(str(A) for A in atoms_up_to(G, ns.atoms))
    if ns.sequence is not None:
        out["sequence"] = sequence_report(parse_sequence(G, ns.sequence))
    text = None
    if not ns.json and ns.davenport and len(out) == 3:
        text = str(out["davenport"])
    _emit(out, ns.json, text)
    return EXIT_OK


def cmd_verify_t2(ns) -> int:
    octx = order_context(QuadField(ns.d), ns.f)
    rep = verify_T2(octx, ns.norm_bound)
    out = {"d": ns.d, "f": ns.f, **rep.to_dict()}
    text = f"T2 {'holds' if rep.ok else 'fails'} on {rep.checked} elements up to norm {ns.norm_bound}"
    if rep.witness:
        w = rep.witness
        text += f"\nwitness u={w.u} = ({w.b})*({w.c}); no unit moves both factors into O"
    _emit(out, ns.json, text)
    return EXIT_OK


def cmd_lengths(ns) -> int:
    octx = order_context(QuadField(ns.d), ns.f)
    x = parse_quadint(octx.field, ns.element)
    L = lengths_in_order(octx, x)
    b = beta(octx, x)
    out = {"d": ns.d, "f": ns.f, "element": str(x), "norm": x.norm(),
           "lengths": sorted(L), "is_atom": is_order_atom(octx, x), "beta": str(b)}
    _emit(out, ns.json, f"L({x}) = {{{', '.join(map(str, sorted(L)))}}}")
    return EXIT_OK


def _parse_values(text: str, skip_invalid_d: bool = False) -> list[int]:
    vals = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = (int(x) for x in part.split(".."))
            rng = range(lo, hi + 1)
            if skip_invalid_d:
                rng = [d for d in rng if d not in (0, 1) and is_squarefree(d)]
            vals.extend(rng)
        else:
            vals.append(int(part))
    return vals


def cmd_sweep(ns) -> int:
    try:
        ds = _parse_values(ns.d, skip_invalid_d=True)
        fs = _parse_values(ns.f)
    except ValueError:
        raise _UsageError("ranges look like '-6..13' or '2,3,5'") from None
    cells = [(d, f, ns.verify, ns.norm_bound) for d in ds for f in fs]
    if ns.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = pool.map(sweep_row, cells)  # yields in submission order
            code = _stream(rows, ns.json)
    else:
        code = _stream(map(sweep_row, cells), ns.json)
    return code


def _stream(rows, as_json) -> int:
    code = EXIT_OK
    for row in rows:
        if as_json:
            print(dumps(row), flush=True)
        else:
            extra = f" oracle_agrees={row['oracle_agrees']}" if "oracle_agrees" in row else ""
            err = f" error={row['error']}" if "error" in row else ""
            print(f"d={row['d']:>4} f={row['f']:>3} {row['verdict']}{extra}{err}", flush=True)
        if row.get("verdict") == INDETERMINATE:
            code = EXIT_INDETERMINATE
    return code


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orderscope",
                description="Decide whether an order Z + f*O_K in a quadratic field is transfer Krull.")
    p.add_argument("--caps", help="resource caps, e.g. 'seq_len=30,disc=50000' (same as ORDERSCOPE_CAPS)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def order_args(sp):
        sp.add_argument("--d", type=int, required=True, help="squarefree d of Q(sqrt(d))")
        sp.add_argument("--f", type=int, required=True, help="conductor index f >= 2")
        sp.add_argument("--json", action="store_true")

    a = sub.add_parser("analyze", help="verdict with conditions, local profiles and optional oracle")
    order_args(a)
    a.add_argument("--verify", action="store_true", help="cross-check with the brute-force verifiers")
    a.add_argument("--norm-bound", type=int, default=1000)
    a.set_defaults(func=cmd_analyze)

    z = sub.add_parser("zerosum", help="zero-sum sequences over a finite abelian group")
    z.add_argument("--group", required=True, help="cyclic orders, e.g. '3,3'")
    z.add_argument("--davenport", action="store_true")
    z.add_argument("--atoms", type=int, metavar="MAXLEN", help="list minimal zero-sum sequences")
    z.add_argument("--sequence", help="e.g. '(1)x4 (2)x4'")
    z.add_argument("--json", action="store_true")
    z.set_defaults(func=cmd_zerosum)

    t = sub.add_parser("verify-t2", help="lifting check for the inclusion O -> R")
    order_args(t)
    t.add_argument("--norm-bound", type=int, default=1000)
    t.set_defaults(func=cmd_verify_t2)

    ln = sub.add_parser("lengths", help="set of lengths of an element of O")
    order_args(ln)
    ln.add_argument("--element", required=True, help="literal 'a+b*w'")
    ln.set_defaults(func=cmd_lengths)

    s = sub.add_parser("sweep", help="verdict table over ranges of d and f")
    s.add_argument("--d", required=True, help="e.g. '-6..13' or '-5,-1,10' (use --d=-6..13)")
    s.add_argument("--f", required=True, help="e.g. '2..5'")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--norm-bound", type=int, default=400)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.caps:
        try:
            _parse_caps(ns.caps)
        except (OrderscopeError, ValueError) as exc:
            print(f"orderscope: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        os.environ["ORDERSCOPE_CAPS"] = ns.caps
    if getattr(ns, "norm_bound", 2) < 2:
        print("orderscope: error: --norm-bound must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return ns.func(ns)
    except ResourceLimitError as exc:
        print(f"orderscope: resource limit: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (InvalidFieldError, InvalidGroupError, NotProperOrderError, DomainError, _UsageError) as exc:
        print(f"orderscope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"orderscope: internal error: {exc!r} (backend {_kernels.BACKEND})", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
