"""Command-line front end.

Exit codes: 0 success or verified, 1 structure found / verdict false /
violations present, 2 usage or input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import decomposition as dec
from . import detectors as det
from . import harness as hs
from . import narrowness as nar
from .coherence import CoherenceError, big_component, check_coherence
from .formats import FormatError, parse_weights, read_graphs, to_graph6
from .graph import Graph, GraphError, bits
from .reports import LEMMA_IDS, VARIANT_IDS

OK, FOUND, USAGE, INCONCLUSIVE = 0, 1, 2, 3

DETECT_KINDS = ("hole", "hole-with-hat", "house", "forcer", "imperfect")
DECOMPOSE_KINDS = ("fracture", "y-fractures", "homogeneous", "guarded")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _mask(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vertex mask: {text!r}") from None


def _set(mask: int) -> str:
    return "{" + ",".join(map(str, bits(mask))) + "}"


def _graphs(path: str) -> list[Graph]:
    if not Path(path).exists():
        raise UsageError(f"{path}: no such file")
    return read_graphs(path)


def _weights(path: str, n: int) -> list[Fraction]:
    if not Path(path).exists():
        raise UsageError(f"{path}: no such file")
    w = parse_weights(Path(path).read_text())
    if len(w) != n:
        raise UsageError(f"{path}: {len(w)} weights for a graph on {n} vertices")
    return w


def _one(graphs: list[Graph], path: str) -> Graph:
    if len(graphs) != 1:
        raise UsageError(f"{path}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]


# ---------------------------------------------------------------- verbs


def cmd_detect(args, out) -> int:
    found = False
    for i, g in enumerate(_graphs(args.input)):
        prefix = f"graph {i}: "
        if args.what == "hole":
            hs_ = det.holes(g)
            witness = f"hole {hs_[0]}" if hs_ else None
        elif args.what == "hole-with-hat":
            h = det.find_hole_with_hat(g)
            witness = f"hole {h.hole} hat {h.hat}" if h else None
        elif args.what == "house":
            h = det.find_house(g)
            witness = f"hole {h.hole} hat {h.hat}" if h else None
        elif args.what == "forcer":
            f = det.find_forcer(g)
            witness = f"paths {f.path1} {f.path2}" if f else None
        else:
            p = det.is_perfect(g)
            witness = None if p.verdict else f"odd {p.side} {p.cycle}"
        if witness:
            found = True
            print(prefix + witness, file=out)
        else:
            print(prefix + "none", file=out)
    return FOUND if found else OK


def cmd_decompose(args, out) -> int:
    g = _one(_graphs(args.input), args.input)
    if args.what == "y-fractures":
        frs = dec.all_y_fractures(g)
        for fr in frs:
            print(f"A={_set(fr.A)} C={_set(fr.C)} D={_set(fr.D)} B={_set(fr.B)} Y={_set(fr.Y)}", file=out)
        print(f"{len(frs)} fractures", file=out)
        return OK
    if args.what == "guarded":
        ok, forcer = dec.is_guarded(g)
        if ok:
            print("guarded", file=out)
            return OK
        print(f"unguarded forcer {forcer.path1} {forcer.path2}", file=out)
        return FOUND
    if args.what == "homogeneous":
        Z = g.full if args.Z is None else args.Z
        part = dec.homogeneous_partition(g, Z)
        for W in part.parts:
            print(_set(W), file=out)
        return OK
    if args.weights is None or args.eps is None:
        raise UsageError("decompose --what fracture needs --weights and --eps")
    w = _weights(args.weights, g.n)
    forcer = det.find_forcer(g)
    if forcer is None:
        print("no forcer: nothing to decompose", file=out)
        return OK
    try:
        split, opt, fr = dec.fracture_pipeline(g, w, args.eps, forcer)
    except dec.DecompositionError as exc:
        print(f"precondition failed: {exc}", file=out)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=out)
        return FOUND
    print(f"split C={_set(split.C)} D={_set(split.D)}", file=out)
    print(f"optimal C={_set(opt.C)} D={_set(opt.D)}", file=out)
    print(f"fracture A={_set(fr.A)} C={_set(fr.C)} D={_set(fr.D)} B={_set(fr.B)} Y={_set(fr.Y)}", file=out)
    return OK


def cmd_coherence(args, out) -> int:
    g = _one(_graphs(args.input), args.input)
    w = _weights(args.weights, g.n)
    rep = check_coherence(g, w, args.eps)
    for v in rep.violations:
        print(f"{v.condition} " + " ".join(f"{m:#x}" for m in v.sets), file=out)
    if rep.ok:
        print(f"{args.eps}-coherent", file=out)
        if args.big_component is not None:
            Y = big_component(g, w, args.eps, args.big_component)
            print(f"big component {_set(Y)}", file=out)
        return OK
    return FOUND


def cmd_certify(args, out) -> int:
    worst = OK
    for i, g in enumerate(_graphs(args.input)):
        if args.threshold:
            th = nar.narrowness_threshold(g)
            print(f"graph {i}: threshold {th:.9f}", file=out)
            continue
        cert = nar.certify_narrow(g, args.alpha)
        argmax = " ".join(str(x) for x in cert.argmax)
        verdict = {True: "narrow", False: "not narrow", None: "inconclusive"}[cert.verdict]
        print(f"graph {i}: alpha {cert.alpha} max_value {cert.max_value} argmax [{argmax}] {verdict}", file=out)
        if cert.verdict is False:
            worst = FOUND
        elif cert.verdict is None and worst == OK:
            worst = INCONCLUSIVE
    return worst


def cmd_verify(args, out) -> int:
    spec = hs.EnumSpec.make(args.n, args.filter, min_n=args.min_n)
    t0 = time.perf_counter()
    rep = hs.verify_lemma(args.lemma, spec, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    lines = [hs.violation_record(args.lemma, v) for v in rep.violations]
    if args.report:
        Path(args.report).write_text("".join(ln + "\n" for ln in lines))
    else:
        for ln in lines[: args.show]:
            print(ln, file=out)
    summary = rep.summary()
    summary.update(runtime_seconds=round(elapsed, 3), verdict="verified" if rep.ok else "violations",
                   n=args.n, min_n=spec.sizes.start, filters=sorted(spec.filters))
    if args.summary:
        Path(args.summary).write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary), file=out)
    return OK if rep.ok else FOUND


def cmd_enumerate(args, out) -> int:
    spec = hs.EnumSpec.make(args.n, args.filter, min_n=args.min_n)
    count = 0
    sink = open(args.out, "w") if args.out else None
    try:
        for g in hs.enumerate_graphs(spec, seed=args.seed):
            count += 1
            if sink:
                sink.write(to_graph6(g) + "\n")
            elif not args.count:
                print(to_graph6(g), file=out)
    finally:
        if sink:
            sink.close()
    print(f"{count} graphs", file=out if args.count or sink else sys.stderr)
    return OK


def cmd_stats(args, out) -> int:
    st = hs.eh_statistics(args.n, args.filter)
    arg = to_graph6(st.argmin) if st.argmin is not None else "-"
    print(json.dumps({"n": st.n, "graphs": st.graphs, "minimum": st.minimum,
                      "exponent": st.exponent, "argmin": arg}), file=out)
    return OK


def cmd_search(args, out) -> int:
    base = _one(_graphs(args.base), args.base) if args.base else None
    spec = hs.InstanceSearchSpec(builder=args.builder, base=base, eps=args.eps, seed=args.seed,
                                 n=args.size, attempts=args.attempts, density=args.density)
    found = hs.search_instances(spec)
    if not found:
        print(f"search emitted zero instances ({args.attempts} attempts, seed {args.seed})", file=out)
        return OK
    bad = 0
    for g, w, eps in found:
        forcer = det.find_forcer(g)
        line = to_graph6(g)
        if forcer is None:
            print(f"{line} no forcer", file=out)
            continue
        try:
            _, _, fr = dec.fracture_pipeline(g, w, eps, forcer)
            fails = dec.fracture_failures(g, fr)
        except (dec.DecompositionError, GraphError, CoherenceError) as exc:
            fails = [str(exc)]
        if fails:
            bad += 1
            print(f"{line} pipeline failed: {'; '.join(fails)}", file=out)
        else:
            print(f"{line} fracture Y={_set(fr.Y)} C={_set(fr.C)}", file=out)
    print(f"{len(found)} instances, {bad} pipeline failures", file=out)
    return FOUND if bad else OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holehat", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    # the same options are accepted after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    d = verb("detect", help="find a hole, hole-with-hat, house, forcer or imperfection witness")
    d.add_argument("--what", choices=DETECT_KINDS, required=True)
    d.add_argument("--in", dest="input", required=True)
    d.set_defaults(func=cmd_detect)

    d = verb("decompose", help="splits, fractures, homogeneous partitions")
    d.add_argument("--what", choices=DECOMPOSE_KINDS, required=True)
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--weights")
    d.add_argument("--eps", type=_fraction)
    d.add_argument("--Z", type=_mask, help="vertex mask for --what homogeneous (default: all)")
    d.set_defaults(func=cmd_decompose)

    d = verb("coherence", help="check eps-coherence of a weighted graph")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--weights", required=True)
    d.add_argument("--eps", type=_fraction, required=True)
    d.add_argument("--big-component", type=_mask, help="also report the big component of this mask")
    d.set_defaults(func=cmd_coherence)

    d = verb("certify", help="alpha-narrowness certificate")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--alpha", type=_fraction, default=Fraction(1))
    d.add_argument("--threshold", action="store_true", help="bisect the narrowness threshold instead")
    d.set_defaults(func=cmd_certify)

    d = verb("verify", help="exhaustive lemma check")
    d.add_argument("--lemma", choices=LEMMA_IDS + VARIANT_IDS, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--min-n", type=int, default=1, help="smallest vertex count (default 1)")
    d.add_argument("--filter", action="append", default=[])
    d.add_argument("--report", help="write violation records here")
    d.add_argument("--summary", help="write the JSON summary here")
    d.add_argument("--show", type=int, default=20, help="violations echoed without --report")
    d.set_defaults(func=cmd_verify)

    d = verb("enumerate", help="one graph per isomorphism class")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--min-n", type=int)
    d.add_argument("--filter", action="append", default=[])
    d.add_argument("--out")
    d.add_argument("--count", action="store_true")
    d.set_defaults(func=cmd_enumerate)

    d = verb("stats", help="min of max(clique, stable) over a class")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--filter", action="append", default=[])
    d.set_defaults(func=cmd_stats)

    d = verb("search", help="look for coherent hole-with-hat-free instances")
    d.add_argument("--builder", choices=("random-filtered", "substitution"), default="random-filtered")
    d.add_argument("--base", help="base graph for substitution")
    d.add_argument("--eps", type=_fraction, default=Fraction(1, 5))
    d.add_argument("--size", type=int, default=16, help="weighted part size for random-filtered")
    d.add_argument("--attempts", type=int, default=200)
    d.add_argument("--density", type=float, default=0.2)
    d.set_defaults(func=cmd_search)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args, out)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, hs.HarnessError, nar.NarrownessError, CoherenceError, GraphError,
            dec.DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
