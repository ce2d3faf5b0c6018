"""``valtop`` command line.

Exit status: 0 when the result is verified or consistent, 1 when the run
found a violation, refutation, counterexample or strict witness, and 2 on
usage or data errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import closeness as cl
from . import topocompare as cmp
from . import spectra as sp
from .groups import (
    INF, GroupTypeError, NonNegative, format_value, parse_monoid,
    parse_value, value_to_json,
)
from .opensets import (
    OpenSet, infinity_basis, openset_from_json, openset_to_json, parse_topology,
)
from .rings import QQ, QX, QXY, ZZ, FractionsOf, ParseError, format_elem, parse_elem, parse_ring
from .valuations import (
    ValuationSpecError, check_axioms, evaluate, parse_valuation, probe_set,
)

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def infer_ring(text: str):
    """The smallest supported ring in which ``text`` parses."""
    widest = FractionsOf(QXY)
    fallback = parse_elem(text, widest)  # syntax errors surface here
    for R in (ZZ, QQ, QX, QXY, FractionsOf(QX)):
        try:
            return R, parse_elem(text, R)
        except ParseError:
            continue
    return widest, fallback


def _elem(text: str, ring: str | None):
    if ring:
        R = parse_ring(ring)
        return R, parse_elem(text, R)
    return infer_ring(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# --------------------------------------------------------------------------
# subcommands; each returns (exit status, json payload, text lines)
# --------------------------------------------------------------------------


def cmd_eval(args):
    nu = parse_valuation(args.valuation)
    R, a = _elem(args.elem, args.ring)
    v = evaluate(nu, a)
    payload = {"valuation": str(nu), "ring": str(R), "elem": format_elem(a), "value": value_to_json(v)}
    return EXIT_OK, payload, [f"{nu}({format_elem(a)}) = {format_value(v)}"]


def _probes(args, g):
    if getattr(args, "probe", None):
        return [parse_valuation(p) for p in args.probe]
    return probe_set(g)


def cmd_check(args):
    table = cl.table_from_json(_load_json(args.table))
    v = check_axioms(table)
    if v is None:
        return EXIT_OK, {"violation": None}, ["no checkable violation"]
    cert = cl.synthesize_separating_open(table, v)
    cert = cl.Certificate(cert.violation, cert.cylinder, cert.side_data, cert.ring, cert.monoid, args.window)
    verdict = cl.verify_certificate(cert, table, _probes(args, table.group))
    out = args.out or str(Path(args.table).with_suffix("")) + ".cert.json"
    Path(out).write_text(_dump(cl.certificate_to_json(cert)) + "\n")
    payload = {
        "violation": cl.violation_to_json(v),
        "certificate": out,
        "verified": verdict.ok,
        "probes_checked": verdict.probes_checked,
    }
    lines = [f"violation: {v.describe()}", f"cylinder: {cert.cylinder}",
             f"certificate written to {out}", f"verified against {verdict.probes_checked} probes: {verdict.ok}"]
    return EXIT_FOUND, payload, lines


def cmd_separate(args):
    table = cl.table_from_json(_load_json(args.table))
    if args.cert:
        cert = cl.certificate_from_json(_load_json(args.cert))
    else:
        v = check_axioms(table)
        if v is None:
            raise UsageError("the table satisfies every checkable axiom; nothing to separate")
        cert = cl.synthesize_separating_open(table, v)
        cert = cl.Certificate(cert.violation, cert.cylinder, cert.side_data, cert.ring, cert.monoid, args.window)
    verdict = cl.verify_certificate(cert, table, _probes(args, table.group))
    payload = {
        "certificate": cl.certificate_to_json(cert),
        "verdict": {
            "contains_table": verdict.contains_f,
            "conditions_hold": verdict.conditions_hold,
            "probes_excluded": verdict.probes_excluded,
            "probes_checked": verdict.probes_checked,
            "probes_skipped": verdict.probes_skipped,
            "failures": verdict.failures,
            "ok": verdict.ok,
        },
    }
    lines = [f"violation: {cert.violation.describe()}", f"cylinder: {cert.cylinder}"]
    lines += [f"  {role}: {O}" for role, O in cert.side_data]
    lines.append(f"table inside: {verdict.contains_f}; conditions: {verdict.conditions_hold}; "
                 f"probes excluded: {verdict.probes_excluded} ({verdict.probes_checked} checked)")
    lines += [f"  ! {f}" for f in verdict.failures]
    return (EXIT_OK if verdict.ok else EXIT_FOUND), payload, lines


def cmd_witness_t1(args):
    nu = parse_valuation(args.valuation)
    R, a0 = _elem(args.a0, args.ring)
    g = nu.group
    gamma2 = parse_value(args.gamma2, g)
    t = parse_topology(args.topology, g)
    table, rep = cl.t1_counterexample(nu, a0, gamma2, t, window=args.window)
    payload = {
        "table": cl.table_to_json(table),
        "branch": rep.branch,
        "gamma": value_to_json(rep.gamma),
        "gamma2": value_to_json(rep.gamma2),
        "violation": cl.violation_to_json(rep.violation),
        "coordinates": [format_elem(a) for a in rep.coordinates],
        "cylinders_containing_table": rep.cylinders_checked,
        "exceptions": rep.exceptions,
        "window": rep.window,
    }
    lines = [f"altered table: {nu} with {format_elem(rep.target)} -> {format_value(gamma2)} ({rep.branch} branch)",
             f"violation: {rep.violation.describe()}",
             f"basic cylinders containing it (window {rep.window}): {rep.cylinders_checked}; "
             f"without {nu}: {rep.exceptions}"]
    return EXIT_FOUND, payload, lines


def _load_samples(path, g):
    data = _load_json(path)
    if isinstance(data, dict):
        data = data["samples"]
    return [openset_from_json(item, g) for item in data]


def cmd_topo_compare(args):
    m = parse_monoid(args.group)
    g = m.group
    monoid = m if isinstance(m, NonNegative) else None
    fine, coarse = parse_topology(args.fine, g), parse_topology(args.coarse, g)
    samples = cmp.standard_samples(g, monoid)
    if args.samples:
        samples = samples + _load_samples(args.samples, g)
    r = cmp.refines(fine, coarse, g, samples, monoid)
    payload = {
        "group": str(m),
        "fine": str(fine),
        "coarse": str(coarse),
        "suite_version": cmp.SUITE_VERSION,
        "samples": r.checked,
        "consistent": r.consistent,
        "refuted": None if r.refuted is None else openset_to_json(r.refuted),
        "strict": None if r.strict is None else openset_to_json(r.strict),
    }
    lines = [f"{fine} refines {coarse} on {r.checked} samples over {m}: {r.consistent}"]
    if r.refuted is not None:
        lines.append(f"  open in {coarse} but not {fine}: {r.refuted}")
    if r.strict is not None:
        lines.append(f"  strict: open in {fine} but not {coarse}: {r.strict}")
    return (EXIT_OK if r.equal else EXIT_FOUND), payload, lines


def cmd_topo_props(args):
    from .groups import unit, zero

    m = parse_monoid(args.group)
    g = m.group
    t = parse_topology(args.topology, g)
    u = unit(g)
    if u is None:
        raise UsageError("the trivial group has nothing to separate")
    z = zero(g)
    p2_pairs = [(z, u), (z, INF), (-u, z)]
    p2 = []
    for a, b in p2_pairs:
        res = cl.check_P2(t, a, b)
        item = {"gamma": value_to_json(a), "gamma2": value_to_json(b)}
        if isinstance(res, cl.Witness):
            item.update(holds=True, U=openset_to_json(res.U), U2=openset_to_json(res.U2))
        else:
            item["holds"] = False
            if t.kind in ("A2", "A3"):
                nb = infinity_basis(t, g, (-u - u, u + u + u)) if t.kind == "A2" else \
                    infinity_basis(t, g, [-u - u, u + u + u])
                low = cl.Refutation(t, a, b).counter(OpenSet.finite(g), nb)[1]
                item.update(neighbourhood=openset_to_json(nb), below=value_to_json(low))
        p2.append(item)
    p1 = {"holds": t.kind == "A1"}
    if t.kind in ("A2", "A3"):
        fail = cl.check_P1_failure(t, g)
        bounds = (-u.scale(5), u.scale(7))
        V = infinity_basis(t, g, bounds if t.kind == "A2" else list(bounds))
        w = fail.witness(V, V)
        p1.update(U=openset_to_json(fail.U), V=openset_to_json(V), gamma=value_to_json(w.gamma))
    elif t.kind == "A1":
        V, V2 = cl.check_P1_order(u, u, OpenSet.everything(g))
        p1.update(example_V=openset_to_json(V), example_V2=openset_to_json(V2))
    else:
        p1["holds"] = None
    payload = {"topology": str(t), "group": str(m), "P1": p1, "P2": p2}
    lines = [f"{t} over {m}", f"P1: {p1['holds']}"]
    lines += [f"P2 at ({format_value(a)}, {format_value(b)}): {it['holds']}" for (a, b), it in zip(p2_pairs, p2)]
    found = p1["holds"] is False or not all(it["holds"] for it in p2)
    return (EXIT_FOUND if found else EXIT_OK), payload, lines


def cmd_spectra(args):
    nu = parse_valuation(args.valuation)
    q = args.query
    need = {"zariski": 1, "patch": 2, "valspec": 2, "weak": 2}[q]
    if len(args.args) != need:
        raise UsageError(f"{q} takes {need} argument(s), got {len(args.args)}")
    ring = args.ring
    if q == "zariski":
        R, a = _elem(args.args[0], ring)
        member = sp.zariski_member(nu, a)
        values = {format_elem(a): value_to_json(_val(nu, a))}
    elif q in ("patch", "valspec"):
        (R, a), (_, b) = _elem(args.args[0], ring), _elem(args.args[1], ring)
        member = sp.patch_member(nu, a, b) if q == "patch" else sp.valspec_member(nu, a, b)
        values = {format_elem(a): value_to_json(_val(nu, a)), format_elem(b): value_to_json(_val(nu, b))}
    else:
        R, a = _elem(args.args[0], ring or "Q[x,y]")
        alpha = INF if args.args[1] in ("inf", "oo") else Fraction(args.args[1])
        member = sp.weak_member(nu, a, alpha, above=args.side == "above")
        values = {format_elem(a): value_to_json(_val(nu, a))}
    payload = {"valuation": str(nu), "query": q, "member": member, "values": values}
    return EXIT_OK, payload, [f"{q} membership of {nu}: {member}"]


def _val(nu, a):
    from .valuations import evaluate_fraction

    return evaluate_fraction(nu, a)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="valtop", description="Exact valuation and topology witnesses.")
    p.add_argument("--json", action="store_true", help="emit canonical JSON")
    p.add_argument("--window", type=int, default=cl.DEFAULT_WINDOW, help="basic-open search bound")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a valuation")
    e.add_argument("--valuation", required=True)
    e.add_argument("--elem", required=True)
    e.add_argument("--ring")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="check a function table against the axioms")
    c.add_argument("--table", required=True)
    c.add_argument("--out", help="certificate path (default: <table>.cert.json)")
    c.add_argument("--probe", action="append", help="probe valuation (repeatable)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("separate", help="synthesize or verify a separating certificate")
    s.add_argument("--table", required=True)
    s.add_argument("--cert", help="verify this certificate instead of synthesizing")
    s.add_argument("--probe", action="append", help="probe valuation (repeatable)")
    s.set_defaults(func=cmd_separate)

    w = sub.add_parser("witness-t1", help="counterexample for a non-T1 topology")
    w.add_argument("--valuation", required=True)
    w.add_argument("--a0", required=True)
    w.add_argument("--gamma2", required=True)
    w.add_argument("--topology", required=True)
    w.add_argument("--ring")
    w.set_defaults(func=cmd_witness_t1)

    t = sub.add_parser("topo", help="topology comparisons")
    tsub = t.add_subparsers(dest="topo_command", required=True)
    tc = tsub.add_parser("compare")
    tc.add_argument("--group", required=True)
    tc.add_argument("--fine", required=True)
    tc.add_argument("--coarse", required=True)
    tc.add_argument("--samples")
    tc.set_defaults(func=cmd_topo_compare)
    tp = tsub.add_parser("props")
    tp.add_argument("--topology", required=True)
    tp.add_argument("--group", required=True)
    tp.set_defaults(func=cmd_topo_props)

    q = sub.add_parser("spectra", help="subbasic-open membership")
    q.add_argument("--valuation", required=True)
    q.add_argument("--query", required=True, choices=["zariski", "patch", "valspec", "weak"])
    q.add_argument("--args", nargs="+", required=True)
    q.add_argument("--side", choices=["above", "below"], default="above")
    q.add_argument("--ring")
    q.set_defaults(func=cmd_spectra)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, payload, lines = args.func(args)
    except (UsageError, ValueError, KeyError, OSError, GroupTypeError, ValuationSpecError) as exc:
        print(f"valtop: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(_dump(payload))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
