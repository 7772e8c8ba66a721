"""Command line front end.

Exit codes: 0 success, 1 parse or validation failure, 2 capacity exceeded,
3 a verifier check failed.  Diagnostics go to stderr, data to stdout or --out.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import bits, catalog, verifier
from .acts import (NotACongruenceError, congruence_closure, find_w_sequence,
                   min_generators_congruence)
from .deciders import (CoordSystem, coordinate_system_check, howson_report,
                       is_n_left_coordinated, is_principally_ideal_howson, min_coordinate_system)
from .expansion import expand_S, expand_Sz, materialize
from .monoid import CapacityError, MonoidError, MonoidView, load, save, validate
from .relations import (classify, greens_relations, idempotents, relation_Lstar, relation_Ltilde,
                        relation_Rstar, relation_Rtilde)

EXIT_OK, EXIT_INVALID, EXIT_CAPACITY, EXIT_CHECK = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _emit(data, args, text: str | None = None) -> None:
    out = getattr(args, "out", None) if getattr(args, "out_is_data", True) else None
    if getattr(args, "json", False) or text is None:
        payload = json.dumps(data, indent=2, ensure_ascii=False)
    else:
        payload = text
    if out:
        with open(out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _view(args) -> MonoidView:
    m = load(args.input)
    kind = getattr(args, "view", "M")
    if kind == "S":
        return expand_S(m)
    if kind == "Sz":
        return expand_Sz(m)
    return m


def _element(v: MonoidView, tok: str) -> int:
    tok = tok.strip()
    if re.fullmatch(r"-?\d+", tok):
        x = int(tok)
        if not 0 <= x < v.order:
            raise UsageError(f"element {x} is not in 0..{v.order - 1}")
        return x
    labels = v.labels()
    if tok in labels:
        return labels.index(tok)
    raise UsageError(f"unknown element {tok!r}")


def parse_pairs(v: MonoidView, text: str) -> list[tuple[int, int]]:
    """Parse ``"(1,2);(0,3)"`` into index pairs (labels are accepted too)."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        m = re.fullmatch(r"\(?\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)?", chunk)
        if not m:
            raise UsageError(f"cannot parse pair {chunk!r}")
        out.append((_element(v, m.group(1)), _element(v, m.group(2))))
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_inspect(args) -> int:
    v = _view(args)
    bad = validate(v)
    if bad is not None:
        print(f"invalid monoid: {bad}", file=sys.stderr)
        return EXIT_INVALID
    rep = classify(v)
    E = idempotents(v)
    data = {"order": v.order, "identity": v.identity, "idempotents": [v.label(e) for e in bits.iter_members(E)],
            "classification": rep.as_dict()}
    data["classification"]["E"] = [v.label(e) for e in rep.E]
    flags = [k for k, val in rep.as_dict().items() if val is True]
    text = f"order {v.order}, {bits.size(E)} idempotents\n" + "\n".join(f"  {k}" for k in flags)
    _emit(data, args, text)
    return EXIT_OK


def cmd_expand(args) -> int:
    m = load(args.input)
    v = expand_S(m) if args.kind == "S" else expand_Sz(m)
    if args.materialize or args.out:
        mm = materialize(v)
        if args.out:
            save(mm, args.out)
            print(f"wrote {args.kind}(M) of order {mm.order} to {args.out}", file=sys.stderr)
            return EXIT_OK
    data = {"kind": args.kind, "base_order": m.order, "order": v.order}
    print(json.dumps(data) if args.json else f"{args.kind}(M): order {v.order}")
    return EXIT_OK


RELATIONS = {
    "L*": lambda v, E: relation_Lstar(v),
    "R*": lambda v, E: relation_Rstar(v),
    "~L": relation_Ltilde,
    "~R": relation_Rtilde,
    "L": lambda v, E: greens_relations(v).L,
    "R": lambda v, E: greens_relations(v).R,
    "H": lambda v, E: greens_relations(v).H,
    "D": lambda v, E: greens_relations(v).D,
    "J": lambda v, E: greens_relations(v).J,
}


def cmd_relations(args) -> int:
    v = _view(args)
    if args.E == "all":
        E = idempotents(v)
    elif args.E == "script":
        if not hasattr(v, "script_e"):
            raise UsageError("--E script needs --view S")
        E = v.script_e()
    else:
        E = bits.mask(_element(v, t) for t in args.E.split(","))
    names = args.relation or list(RELATIONS)
    data = {}
    for nm in names:
        if nm not in RELATIONS:
            raise UsageError(f"unknown relation {nm!r}; choose from {', '.join(RELATIONS)}")
        rel = RELATIONS[nm](v, E)
        data[nm] = [[v.label(x) for x in c] for c in rel.classes()]
    text = "\n".join(f"{nm}: " + " | ".join(" ".join(c) for c in cl) for nm, cl in data.items())
    _emit(data, args, text)
    return EXIT_OK


def cmd_congruence(args) -> int:
    v = _view(args)
    W = parse_pairs(v, args.pairs)
    rel = congruence_closure(v, W, args.side)
    data = {"side": args.side, "generators": [[v.label(x), v.label(y)] for x, y in W],
            "classes": [[v.label(x) for x in c] for c in rel.classes()],
            "num_classes": rel.num_classes}
    if args.witness:
        a, b = (_element(v, t) for t in args.witness.split(","))
        if args.side == "two-sided":
            raise UsageError("witnesses are one-sided; use --side right or left")
        ws = find_w_sequence(v, W, args.side, a, b)
        data["witness"] = None if ws is None else {
            "length": len(ws), "steps": [[v.label(c), v.label(d), v.label(t)] for c, d, t in ws.steps],
            "replays": ws.replay(v, W)}
    if args.min_gens:
        r = min_generators_congruence(v, rel, args.side)
        data["min_generators"] = {"exact": r.exact, "lower": r.lower, "upper": r.upper,
                                  "generators": [[v.label(x), v.label(y)] for x, y in r.generators]}
    text = f"{rel.num_classes} classes: " + " | ".join(" ".join(c) for c in data["classes"])
    if "witness" in data:
        text += f"\nwitness: {data['witness']}"
    if "min_generators" in data:
        text += f"\nminimum generators: {data['min_generators']}"
    _emit(data, args, text)
    return EXIT_OK


def cmd_howson(args) -> int:
    v = _view(args)
    if args.principal and not args.profile:
        ok, wit = is_principally_ideal_howson(v, args.side)
        data = {"side": args.side, "verdict": ok, "principally": ok,
                "witness": None if wit is None else [v.label(x) for x in wit], "sampled": False}
    else:
        rep = howson_report(v, args.side, profile=args.profile or not args.principal)
        data = rep.as_dict(v)
        data["verdict"] = rep.principally if args.principal else rep.ideal_howson
        data["sampled"] = False
    _emit(data, args, f"{args.side} principally ideal Howson: {data['principally']}")
    return EXIT_OK


def _bitmask(v: MonoidView, text: str) -> int:
    text = text.strip()
    if text.startswith("{"):
        inner = text[1:-1]
        return bits.mask(_element(v, t) for t in inner.split(",") if t.strip())
    return int(text, 0)


def cmd_coordinate(args) -> int:
    v = _view(args)
    given = [args.a, args.b, args.A, args.B]
    if any(g is not None for g in given):
        if any(g is None for g in given):
            raise UsageError("--a, --b, --A and --B go together")
        a, b = _element(v, args.a), _element(v, args.b)
        A, B = _bitmask(v, args.A), _bitmask(v, args.B)
        if args.pairs:
            pairs = parse_pairs(v, args.pairs)
            ok, bad = coordinate_system_check(v, CoordSystem(a, b, A, B, tuple(pairs)))
            data = {"verdict": ok, "witness": None if bad is None else [v.label(x) for x in bad],
                    "sampled": False}
        else:
            res = min_coordinate_system(v, a, b, A, B, cap_n=args.cap)
            data = {"verdict": res.size is not None and res.size <= args.n, "minimum": res.size,
                    "exact": res.exact, "upper": res.upper, "sampled": False,
                    "witness": [[v.label(p), v.label(q)] for p, q in res.pairs]}
    else:
        cv = is_n_left_coordinated(v, args.n, exhaustive_upto=args.exhaustive_upto,
                                   samples=args.samples, seed=args.seed)
        data = cv.as_dict(v)
        data["witness"] = data["failing"]
    _emit(data, args, json.dumps(data, ensure_ascii=False))
    return EXIT_OK


def cmd_verify(args) -> int:
    config = verifier.SuiteConfig(
        checks=args.checks.split(",") if args.checks else None, order_max=args.order_max,
        catalog=args.catalog.split(";") if args.catalog else None, seed=args.seed,
        samples=args.samples, mutate=args.mutate, out_dir=args.counterexamples, jobs=args.jobs)
    if args.list:
        for c in verifier.CHECKS:
            print(f"{c.id:18} {c.topic:34} {c.claim}")
        return EXIT_OK
    rep = verifier.run_suite(config)
    data = rep.as_dict()
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(data, fh, indent=2, ensure_ascii=False)
    for r in rep.results:
        line = f"{r.check_id:18} {r.status:12} {r.elapsed_ms / 1000:7.2f}s  {r.universe}"
        print(line, file=sys.stderr)
        if r.counterexample:
            print(f"  counterexample: {json.dumps(r.counterexample, ensure_ascii=False)}", file=sys.stderr)
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_enumerate(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    count = 0
    for i, m in enumerate(catalog.enumerate_monoids(args.order, args.limit)):
        save(m, os.path.join(args.out, f"monoid{args.order}_{i:04d}.mon"))
        count += 1
    print(json.dumps({"order": args.order, "count": count}) if args.json
          else f"{count} monoids of order {args.order} written to {args.out}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.get:
        e = catalog.get(args.get)
        if args.out:
            save(e.monoid, args.out)
        else:
            sys.stdout.write(json.dumps({"name": e.key, "order": e.order, "provenance": e.provenance,
                                         "table": e.monoid.as_lists(), "labels": e.monoid.labels()})
                             + "\n")
        return EXIT_OK
    rows = [{"name": e.key, "order": e.order, "provenance": e.provenance} for e in catalog.entries()]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['name']:28} {r['order']:4}  {r['provenance']}")
    return EXIT_OK


def _orders(text: str) -> range:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return range(int(lo), int(hi) + 1)
    return range(1, int(text) + 1)


def cmd_search(args) -> int:
    if args.list:
        for p in verifier.PREDICATES.values():
            print(f"{p.id:28} {p.description}")
        return EXIT_OK
    if not args.predicate:
        raise UsageError("--predicate is required")
    res = verifier.search_counterexample(args.predicate, _orders(args.orders), out=args.out,
                                         use_catalog=not args.no_catalog)
    data = {"predicate": args.predicate, "found": res is not None}
    if res is not None:
        data.update({"name": res.name, "order": res.monoid.order, "examined": res.examined,
                     "table": res.monoid.as_lists(), "file": res.file})
    text = (f"smallest failure: {res.name} (order {res.monoid.order})" if res
            else "no failure in range")
    _emit(data, args, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semidirect",
                                description="Computations on S(M) = P(M) ⋊ M for finite monoids M.")
    p.add_argument("--version", action="version", version=verifier.version_string())
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp, view=True):
        sp.add_argument("--in", dest="input", required=True, help="monoid file (.mon text or .json)")
        if view:
            sp.add_argument("--view", choices=["M", "S", "Sz"], default="M",
                            help="work on M itself or on its expansion S(M) / Sz(M)")
        sp.add_argument("--json", action="store_true", help="JSON output")
        sp.add_argument("--out", help="write the output here instead of stdout")
        return sp

    with_input(sub.add_parser("inspect", help="order, idempotents and classification"))

    sp = sub.add_parser("expand", help="build S(M) or Sz(M)")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--kind", choices=["S", "Sz"], default="S")
    sp.add_argument("--materialize", action="store_true", help="build and validate the full table")
    sp.add_argument("--out", help="write the materialized table (.mon or .json)")
    sp.add_argument("--json", action="store_true")

    sp = with_input(sub.add_parser("relations", help="Green's, starred and tilde relations"))
    sp.add_argument("--relation", action="append", help="one of L*, R*, ~L, ~R, L, R, H, D, J (repeatable)")
    sp.add_argument("--E", default="all",
                    help="idempotent set for ~L/~R: all, script ({(A,1)} on S views) or a list of elements")

    sp = with_input(sub.add_parser("congruence", help="closure, witnesses and minimum generators"))
    sp.add_argument("--side", choices=["right", "left", "two-sided"], default="right")
    sp.add_argument("--pairs", required=True, help='generating pairs, e.g. "(1,2);(0,3)"')
    sp.add_argument("--witness", help="a,b: print a shortest W-sequence from a to b")
    sp.add_argument("--min-gens", action="store_true", help="least generating set of the closure")

    sp = with_input(sub.add_parser("howson", help="right/left ideal Howson verdicts"))
    sp.add_argument("--side", choices=["right", "left"], default="right")
    sp.add_argument("--principal", action="store_true", help="only the principal verdict")
    sp.add_argument("--profile", action="store_true", help="include the generator-count profile")

    sp = with_input(sub.add_parser("coordinate", help="left co-ordinate systems"))
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--A", help="bitmask (e.g. 0b101) or {x,y}")
    sp.add_argument("--B")
    sp.add_argument("--pairs", help="check this system instead of searching for a least one")
    sp.add_argument("--cap", type=int, default=None, help="exact search cap for the least system")
    sp.add_argument("--exhaustive-upto", type=int, default=5)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=verifier.DEFAULT_SEED)

    sp = sub.add_parser("verify", help="run the claim suite")
    sp.add_argument("--checks", help="comma-separated check ids")
    sp.add_argument("--order-max", type=int)
    sp.add_argument("--catalog", help='restrict to catalog entries, separated by ";"')
    sp.add_argument("--seed", type=int, default=verifier.DEFAULT_SEED)
    sp.add_argument("--samples", type=int, default=verifier.DEFAULT_SAMPLES)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--mutate", action="store_true", help="fault injection: corrupt one S(M) product")
    sp.add_argument("--counterexamples", help="directory for counterexample files")
    sp.add_argument("--report", help="write the JSON report here")
    sp.add_argument("--list", action="store_true", help="list the checks and exit")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("enumerate", help="all monoids of one order up to isomorphism")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--limit", type=int)
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("catalog", help="named example monoids")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--get", help='entry name, e.g. "fountain(2)"')
    sp.add_argument("--out")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("search", help="smallest monoid failing a predicate")
    sp.add_argument("--predicate")
    sp.add_argument("--orders", default="1-5", help="range like 1-5, or a maximum")
    sp.add_argument("--no-catalog", action="store_true")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--out", help="write the failing monoid here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(out_is_data=False)
    return p


COMMANDS = {
    "inspect": cmd_inspect, "expand": cmd_expand, "relations": cmd_relations,
    "congruence": cmd_congruence, "howson": cmd_howson, "coordinate": cmd_coordinate,
    "verify": cmd_verify, "enumerate": cmd_enumerate, "catalog": cmd_catalog, "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (MonoidError, UsageError, NotACongruenceError, verifier.UnknownCheckError,
            KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
