"""Command line front end.

Problem files are JSON:

    {
      "p": 5,
      "precision": 1000,
      "generators": [[["5", "0"], ["0", "1"]], [["1", "0"], ["0", "1/5"]]],
      "generators_b": ...,      optional, for `equal`
      "query": [["25", "0"], ["0", "1"]],     optional, for `membership`
      "vertex": {"level": 3, "offset": "7"}   optional, for `orbit-rep`
    }

Matrix entries are rational strings (or ints); "precision" defaults to 1000
and may be overridden with --precision.  Exit codes: 0 affirmative, 1
negative answer, 2 undecided (precision exhausted or bad input), 3 the
generated group contains a nontrivial elliptic element.  Diagnostics go to
stderr, results to stdout.
"""

import argparse
import json
import sys
from fractions import Fraction

from .bench import bench_orbit, bench_reduce, rows_to_csv
from .bttree import BruhatTitsTree
from .errors import EllipticEncountered, TreeGroupsError
from .errors import PrecisionExhausted
from .fundamental import (
    in_fundamental_domain,
    membership,
    to_fundamental_domain,
)
from .nielsen import reduce as reduce_basis
from .padic import PadicContext
from .projlinear import ProjMatrix


def _load_problem(args, need_generators=True):
    with open(args.input) as fh:
        data = json.load(fh)
    p = data["p"]
    precision = args.precision or data.get("precision", 1000)
    ctx = PadicContext(p, precision)
    action = BruhatTitsTree(ctx)
    gens = [
        ProjMatrix.from_rationals(ctx, rows) for rows in data.get("generators", ())
    ]
    if need_generators and not gens:
        raise ValueError("problem file has no generators")
    return data, ctx, action, gens


def _matrix_arg(ctx, args, data, field):
    inline = getattr(args, field.replace("-", "_"), None)
    rows = json.loads(inline) if inline else data.get(field)
    if rows is None:
        raise ValueError(f"no {field!r} given (flag or problem-file field)")
    return ProjMatrix.from_rationals(ctx, rows)


def _word_str(word):
    if not word:
        return "1"
    return "*".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in word)


def _emit(args, payload, human_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in human_lines:
            print(line)


def cmd_reduce(args):
    _, _, action, gens = _load_problem(args)
    out = reduce_basis(action, gens)
    payload = {
        "status": out.flag.value,
        "iterations": out.iterations,
        "rank": len(out.basis) if out.is_free_basis else None,
        "basis": [repr(t.element) for t in out.basis],
        "words": [list(t.word) for t in out.basis],
    }
    lines = [f"status: {out.flag.value}", f"iterations: {out.iterations}"]
    if out.is_free_basis:
        lines.append(f"rank: {len(out.basis)}")
        for i, t in enumerate(out.basis):
            lines.append(f"basis[{i}] = {t.element!r}   word: {_word_str(t.word)}")
        _emit(args, payload, lines)
        return 0
    payload["witness"] = repr(out.witness.element)
    payload["witness_word"] = list(out.witness.word)
    lines.append(f"elliptic witness: {out.witness.element!r}")
    lines.append(f"witness word: {_word_str(out.witness.word)}")
    _emit(args, payload, lines)
    return 3


def cmd_membership(args):
    data, ctx, action, gens = _load_problem(args)
    g = _matrix_arg(ctx, args, data, "query")
    res = membership(action, gens, g)
    payload = {
        "member": res.member,
        "basis_word": list(res.basis_word) if res.member else None,
        "input_word": list(res.input_word) if res.member else None,
    }
    lines = [f"member: {str(res.member).lower()}"]
    if res.member:
        lines.append(f"over reduced basis: {_word_str(res.basis_word)}")
        lines.append(f"over input generators: {_word_str(res.input_word)}")
    _emit(args, payload, lines)
    return 0 if res.member else 1


def cmd_equal(args):
    from .nielsen import groups_equal

    data, ctx, action, gens = _load_problem(args)
    if args.input_b:
        with open(args.input_b) as fh:
            rows_b = json.load(fh)["generators"]
    else:
        rows_b = data.get("generators_b")
    if not rows_b:
        raise ValueError("no second generating set (--input-b or generators_b)")
    gens_b = [ProjMatrix.from_rationals(ctx, rows) for rows in rows_b]
    same = groups_equal(action, gens, gens_b)
    _emit(args, {"equal": same}, [f"equal: {str(same).lower()}"])
    return 0 if same else 1


def cmd_orbit_rep(args):
    data, ctx, action, gens = _load_problem(args)
    spec = json.loads(args.vertex) if args.vertex else data.get("vertex")
    if spec is None:
        raise ValueError("no vertex given (--vertex or problem-file field)")
    v = action.vertex(spec["level"], Fraction(str(spec.get("offset", 0))))
    out = reduce_basis(action, gens)
    if not out.is_free_basis:
        raise EllipticEncountered("group contains a nontrivial elliptic")
    rep, word = to_fundamental_domain(action, out.elements, v, verify=False)
    payload = {
        "representative": {"level": rep.level, "offset": str(rep.offset)},
        "word": list(word),
    }
    _emit(
        args,
        payload,
        [f"representative: {rep}", f"word over reduced basis: {_word_str(word)}"],
    )
    return 0


def cmd_export_ball(args):
    highlight = ()
    if args.input:
        _, _, action, gens = _load_problem(args)
        if gens:
            out = reduce_basis(action, gens)
            if not out.is_free_basis:
                raise EllipticEncountered("group contains a nontrivial elliptic")
            basis = out.elements
            highlight = [
                v
                for v in action.ball(args.radius)
                if in_fundamental_domain(action, basis, v, verify=False)
            ]
    else:
        if args.p is None:
            raise ValueError("either --input or -p is required")
        action = BruhatTitsTree(PadicContext(args.p, args.precision or 1000))
    dot = action.to_dot(args.radius, highlight=highlight)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return 0


def cmd_bench(args):
    rows = []
    if args.sizes:
        sizes = [int(s) for s in args.sizes.split(",")]
        rows += bench_reduce(
            args.p, sizes, args.trials, args.seed, precision=args.precision or 1000
        )
    if args.distances:
        dists = [int(s) for s in args.distances.split(",")]
        rows += bench_orbit(
            args.p, dists, args.trials, args.seed, precision=args.precision or 1000
        )
    if not rows:
        raise ValueError("nothing to benchmark (use --sizes and/or --distances)")
    csv_text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="treegroups",
        description="Free bases, membership, and fundamental domains for "
        "matrix groups acting on the p-adic tree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, input_required=True):
        sp.add_argument("--input", required=input_required, help="problem JSON file")
        sp.add_argument("--precision", type=int, help="override working precision")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("reduce", help="compute the reduced basis or an elliptic witness")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("membership", help="decide membership and express the element")
    common(sp)
    sp.add_argument("--query", help="query matrix as inline JSON")
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("equal", help="decide whether two sets generate the same group")
    common(sp)
    sp.add_argument("--input-b", help="second problem JSON file")
    sp.set_defaults(func=cmd_equal)

    sp = sub.add_parser("orbit-rep", help="canonical orbit representative of a vertex")
    common(sp)
    sp.add_argument("--vertex", help='vertex as inline JSON {"level": .., "offset": ..}')
    sp.set_defaults(func=cmd_orbit_rep)

    sp = sub.add_parser("export-ball", help="Graphviz drawing of a ball in the tree")
    common(sp, input_required=False)
    sp.add_argument("-p", type=int, help="prime, when no problem file is given")
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--output", help="write DOT here instead of stdout")
    sp.set_defaults(func=cmd_export_ball)

    sp = sub.add_parser("bench", help="timing table as CSV")
    sp.add_argument("-p", type=int, default=5)
    sp.add_argument("--precision", type=int)
    sp.add_argument("--sizes", help="comma-separated generator counts")
    sp.add_argument("--distances", help="comma-separated start distances")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", help="write CSV here instead of stdout")
    sp.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrecisionExhausted as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return 2
    except EllipticEncountered as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TreeGroupsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
