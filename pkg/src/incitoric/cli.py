"""Command-line front end.

Subcommands mirror the library modules; every command prints a single
JSON document (or CSV where noted) and exits 0 on success, 1 when a
verification fails, 2 on usage or budget errors.  Output is reproducible:
identical invocations give byte-identical JSON once the timestamp is
suppressed with --no-meta.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import acceptance, complexes, designs, threepoint, toric
from .combinat import subset_label, subsets_colex
from .config import DEFAULT_CONFIG, RunConfig
from .errors import BudgetExceeded, IncitoricError
from .incidence import build_matrix, check_rank_laws
from .polytope import PointConfig, is_face, neighborliness, normalized_volume, placing_triangulation

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def _emit(payload: dict, args) -> None:
    if not getattr(args, "no_meta", False):
        payload = dict(payload)
        payload["meta"] = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z")}
    out = json.dumps(payload, indent=2, sort_keys=True)
    print(out)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out + "\n")


def _labels(n: int, k: int) -> list:
    return [subset_label(s, n) for s in subsets_colex(n, k)]


def _cmd_incidence_matrix(args) -> int:
    inc = build_matrix(args.n, args.k, args.t)
    if args.format == "csv":
        print("," + ",".join(subset_label(s, args.n) for s in inc.col_labels))
        for label, row in zip(inc.row_labels, inc.matrix.entries):
            print(subset_label(label, args.n) + "," + ",".join(str(x) for x in row))
        return EXIT_OK
    _emit(
        {
            "n": args.n,
            "k": args.k,
            "t": args.t,
            "rows": [subset_label(s, args.n) for s in inc.row_labels],
            "cols": [subset_label(s, args.n) for s in inc.col_labels],
            "matrix": inc.matrix.to_json_dict(),
        },
        args,
    )
    return EXIT_OK


def _cmd_incidence_ranks(args) -> int:
    report = check_rank_laws(args.n_max)
    payload = {
        "n_max": args.n_max,
        "primes": list(report.primes),
        "all_ok": report.all_ok,
        "entries": [
            {
                "n": e.n,
                "k": e.k,
                "t": e.t,
                "rank_q": e.rank_over_q,
                "expected": e.expected_rank,
                "rank_law_ok": e.rank_law_ok,
                "mod_p": [
                    {"p": p, "matrix_rank": rp, "map_full": mf, "predicted_full": pf, "ok": ok}
                    for (p, rp, mf, pf, ok) in e.mod_p
                ],
            }
            for e in report.entries
        ],
    }
    _emit(payload, args)
    return EXIT_OK if report.all_ok else EXIT_VERIFICATION


def _cmd_toric(args) -> int:
    inc = build_matrix(args.n, args.k, args.t)
    config = _config(args)
    labels = _labels(args.n, args.k)
    if args.kind == "markov":
        basis = toric.minimal_markov(inc, config)
    elif args.kind == "graver":
        basis = toric.graver_basis(inc, config)
    elif args.kind == "octahedral":
        basis = toric.octahedral_generators(args.n, args.k, args.t)
    elif args.kind == "groebner":
        basis = toric.lattice_ideal_groebner(inc, config)
    else:  # saturate
        oct_basis = toric.octahedral_generators(args.n, args.k, args.t)
        ok = toric.saturation_equals(oct_basis, inc, config)
        _emit(
            {
                "n": args.n,
                "k": args.k,
                "t": args.t,
                "octahedral_generators": len(oct_basis.elements),
                "saturation_equals_lattice_ideal": ok,
            },
            args,
        )
        return EXIT_OK if ok else EXIT_VERIFICATION
    degrees: dict = {}
    for b in basis.elements:
        degrees[b.degree] = degrees.get(b.degree, 0) + 1
    _emit(
        {
            "n": args.n,
            "k": args.k,
            "t": args.t,
            "kind": basis.kind,
            "order": basis.order_name,
            "count": len(basis.elements),
            "degrees": {str(d): c for d, c in sorted(degrees.items())},
            "elements": basis.to_json_list(labels),
        },
        args,
    )
    return EXIT_OK


def _cmd_polytope(args) -> int:
    inc = build_matrix(args.n, args.k, args.t)
    cfg = PointConfig.from_incidence(inc)
    config = _config(args)
    if args.what == "volume":
        lattice = "euclidean" if args.lattice == "euclidean" else "column_lattice"
        tri = placing_triangulation(cfg, config=config)
        vol = normalized_volume(cfg, lattice, tri, config)
        _emit(
            {
                "n": args.n,
                "k": args.k,
                "t": args.t,
                "lattice": lattice,
                "dimension": tri.dim,
                "simplices": len(tri.simplices),
                "normalized_volume": vol,
            },
            args,
        )
        return EXIT_OK
    if args.what == "faces":
        labels = _labels(args.n, args.k)
        idx = {lbl: i for i, lbl in enumerate(labels)}
        try:
            subset = [idx[s.strip()] for s in args.subset.split(",")]
        except KeyError as e:
            print(f"unknown vertex label {e}", file=sys.stderr)
            return EXIT_USAGE
        cert = is_face(cfg, subset)
        payload = {
            "n": args.n,
            "k": args.k,
            "t": args.t,
            "subset": sorted(labels[i] for i in subset),
            "is_face": cert.is_face,
        }
        if cert.is_face:
            c, beta = cert.functional
            payload["functional"] = {"coeffs": [str(x) for x in c], "rhs": str(beta)}
        else:
            payload["witness"] = {
                labels[i]: v for i, v in enumerate(cert.witness) if v
            }
        _emit(payload, args)
        return EXIT_OK
    # neighborly
    rep = neighborliness(cfg, args.s_max, config)
    payload = {
        "n": args.n,
        "k": args.k,
        "t": args.t,
        "s_max": args.s_max,
        "neighborliness": rep.neighborliness,
        "face_tests": rep.subsets_tested,
    }
    if rep.non_face_witness:
        labels = _labels(args.n, args.k)
        subset, witness = rep.non_face_witness
        payload["non_face"] = sorted(labels[i] for i in subset)
    _emit(payload, args)
    return EXIT_OK


def _cmd_complex(args) -> int:
    with open(args.file) as fh:
        delta = complexes.parse_complex_file(fh.read())
    report = complexes.verify(delta)
    if args.what == "verify":
        _emit({"file": args.file, "report": report.as_dict()}, args)
        return EXIT_OK
    try:
        binom = complexes.orientation_binomial(delta, report.orientation)
    except IncitoricError as e:
        print(f"cannot build orientation binomial: {e}", file=sys.stderr)
        return EXIT_VERIFICATION
    k = report.dimension + 1
    labels = _labels(delta.n, k)
    _emit(
        {
            "file": args.file,
            "n": delta.n,
            "k": k,
            "degree": binom.degree,
            "plus": {labels[i]: e for i, e in enumerate(binom.plus) if e},
            "minus": {labels[i]: e for i, e in enumerate(binom.minus) if e},
        },
        args,
    )
    return EXIT_OK


def _cmd_designs(args) -> int:
    config = _config(args)
    if args.what == "pods":
        pods = list(designs.pods(args.n, args.k, args.t))
        span_ok = designs.pods_span_kernel(args.n, args.k, args.t)
        _emit(
            {
                "n": args.n,
                "k": args.k,
                "t": args.t,
                "count": len(pods),
                "span_equals_kernel": span_ok,
                "designs": [designs.pod_expand(p, args.n).to_json_dict() for p in pods],
            },
            args,
        )
        return EXIT_OK if span_ok else EXIT_VERIFICATION
    scan = designs.min_support_scan(args.n, args.k, args.t, config=config)
    payload = {
        "n": args.n,
        "k": args.k,
        "t": args.t,
        "min_positive_support": scan.min_positive_support,
        "subsets_enumerated": scan.subsets_enumerated,
    }
    if scan.witness is not None:
        payload["witness"] = scan.witness.to_json_dict()
    _emit(payload, args)
    return EXIT_OK


def _cmd_threepoint(args) -> int:
    config = _config(args)
    if args.what == "check":
        report = threepoint.check_section5(args.n, config)
        _emit(report.as_dict(), args)
        return EXIT_OK if report.all_passed else EXIT_VERIFICATION
    if args.what == "fibers":
        from .combinat import derangements

        rows = []
        ok = True
        for d in derangements(args.n):
            size = len(threepoint.fiber(threepoint.phi(d), args.n, config))
            expected = threepoint.fiber_size_formula(d)
            ok = ok and size == expected
            rows.append(
                {
                    "images": list(d.images),
                    "cycles": [list(c) for c in d.cycles],
                    "fiber": size,
                    "formula": expected,
                }
            )
        _emit({"n": args.n, "all_match": ok, "derangements": rows}, args)
        return EXIT_OK if ok else EXIT_VERIFICATION
    # det
    expr = threepoint.det_as_c_expression(args.n, config)
    tri_labels = _labels(args.n, 3)
    payload = {
        "n": args.n,
        "numerator_terms": expr.f.term_count(),
        "denominator": {tri_labels[i]: e for i, e in enumerate(expr.g_exps) if e},
    }
    if args.emit:
        payload["numerator"] = [
            {"coeff": c, "monomial": {tri_labels[i]: e for i, e in enumerate(k) if e}}
            for k, c in expr.f.terms
        ]
    _emit(payload, args)
    return EXIT_OK


def _cmd_acceptance(args) -> int:
    only = set(args.only) if args.only else None
    ws = acceptance.Workspace(_config(args))
    results = acceptance.run_acceptance(ws, only)
    if not results:
        print("no matching criteria (valid numbers are 1..14)", file=sys.stderr)
        return EXIT_USAGE
    all_ok = all(r.passed for r in results)
    if args.json:
        _emit({"criteria": [r.as_dict() for r in results], "all_passed": all_ok}, args)
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] {r.number:2d} {r.name:<{width}}  {r.elapsed:7.1f}s  {r.detail}")
        print(f"{'all passed' if all_ok else 'FAILURES PRESENT'}")
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def _config(args) -> RunConfig:
    kwargs = {}
    if getattr(args, "workers", None):
        kwargs["workers"] = args.workers
    if getattr(args, "pair_budget", None):
        kwargs["pair_queue_budget"] = args.pair_budget
    if not kwargs:
        return DEFAULT_CONFIG
    return RunConfig(**kwargs)


def _add_nkt(p, t_required=True):
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=int, required=t_required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incitoric",
        description="Exact computations around subset-incidence toric ideals",
    )
    parser.add_argument("--no-meta", action="store_true", help="suppress the timestamp field")
    parser.add_argument("--out", help="also write the JSON payload to this file")
    parser.add_argument("--workers", type=int, help="worker pool size for parallel scans")
    parser.add_argument("--pair-budget", type=int, help="pair queue budget for basis computations")
    sub = parser.add_subparsers(dest="command", required=True)

    inc = sub.add_parser("incidence", help="incidence matrices and rank laws")
    inc_sub = inc.add_subparsers(dest="what", required=True)
    m = inc_sub.add_parser("matrix")
    _add_nkt(m)
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.set_defaults(func=_cmd_incidence_matrix)
    rk = inc_sub.add_parser("ranks")
    rk.add_argument("--n-max", type=int, default=8)
    rk.set_defaults(func=_cmd_incidence_ranks)

    tor = sub.add_parser("toric", help="Markov, Graver, octahedral and Groebner bases")
    tor.add_argument("kind", choices=("markov", "graver", "octahedral", "groebner", "saturate"))
    _add_nkt(tor)
    tor.set_defaults(func=_cmd_toric)

    poly = sub.add_parser("polytope", help="face tests, neighborliness, volumes")
    poly.add_argument("what", choices=("volume", "faces", "neighborly"))
    _add_nkt(poly)
    poly.add_argument("--lattice", choices=("euclidean", "column"), default="euclidean")
    poly.add_argument("--subset", help="comma-separated vertex labels for face tests")
    poly.add_argument("--s-max", type=int, default=3)
    poly.set_defaults(func=_cmd_polytope)

    cx = sub.add_parser("complex", help="verify complexes and build orientation binomials")
    cx.add_argument("what", choices=("verify", "binomial"))
    cx.add_argument("file")
    cx.set_defaults(func=_cmd_complex)

    dg = sub.add_parser("designs", help="pods and support scans")
    dg.add_argument("what", choices=("pods", "scan"))
    _add_nkt(dg)
    dg.set_defaults(func=_cmd_designs)

    tp = sub.add_parser("threepoint", help="derangement and coset calculus")
    tp.add_argument("what", choices=("check", "det", "fibers"))
    tp.add_argument("-n", type=int, required=True)
    tp.add_argument("--emit", action="store_true", help="include the full numerator")
    tp.set_defaults(func=_cmd_threepoint)

    acc = sub.add_parser("acceptance", help="run the acceptance suite")
    acc.add_argument("--all", action="store_true", help="run every criterion (default)")
    acc.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    acc.add_argument("--json", action="store_true", help="JSON output instead of a table")
    acc.set_defaults(func=_cmd_acceptance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_USAGE
    except IncitoricError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
