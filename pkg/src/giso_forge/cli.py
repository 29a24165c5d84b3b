"""Command-line entry point: python -m giso_forge <command> ..."""
import argparse
import json
import sys
from pathlib import Path

from . import formats
from .abelian import (
    AdditiveCspInstance,
    additive_completeness_map,
    additive_decode,
    gadget_audit,
    plant_additive,
    reduce_additive,
    sample_random_additive,
    sum_zero_predicate,
)
from .abelian.groups import AbelianGroup, SubgroupPredicate
from .asymmetry import monte_carlo_asymmetry, monte_carlo_report_json
from .baseline import wl_distinguish
from .graphs import VertexMap, gi_score
from .reduction import completeness_map, decode, reduce
from .sos import verify_sos_reduction
from .xor import ThreeXorInstance, plant, sample_random_3xor


def _write(args, text, suffix=""):
    if args.out:
        Path(str(args.out) + suffix).write_text(text)
    else:
        sys.stdout.write(text)


def _require_seed(args):
    if args.seed is None:
        raise SystemExit(f"{args.command}: --seed is required")
    return args.seed


def load_instance(path):
    d = json.loads(Path(path).read_text())
    if "moduli" in d:
        return AdditiveCspInstance.from_json(d)
    return ThreeXorInstance.from_json(d)


def _load_predicate(args):
    if args.predicate:
        return SubgroupPredicate.from_json(Path(args.predicate).read_text())
    return sum_zero_predicate(AbelianGroup.parse(args.group), args.k)


def _pair(inst):
    return reduce_additive(inst) if isinstance(inst, AdditiveCspInstance) else reduce(inst)


def _load_map(args, inst):
    if args.map:
        return VertexMap(json.loads(Path(args.map).read_text()))
    tau = json.loads(Path(args.tau).read_text()) if Path(args.tau).exists() else json.loads(args.tau)
    if isinstance(inst, AdditiveCspInstance):
        return additive_completeness_map(inst, tau)
    return completeness_map(inst, tau)


def cmd_gen_3xor(args):
    inst = sample_random_3xor(args.n, args.m, _require_seed(args), replacement=not args.distinct)
    _write(args, inst.to_json() + "\n")


def cmd_gen_additive(args):
    inst = sample_random_additive(args.n, args.m, _load_predicate(args), _require_seed(args))
    _write(args, inst.to_json() + "\n")


def cmd_plant(args):
    seed = _require_seed(args)
    if args.group:
        inst, tau = plant_additive(args.n, args.m, _load_predicate(args), args.eps, seed)
        d = json.loads(inst.to_json())
        d["planted_tau"] = [list(a) for a in tau]
    else:
        inst, tau = plant(args.n, args.m, args.eps, seed, replacement=not args.distinct)
        d = json.loads(inst.to_json())
        d["planted_tau"] = list(tau)
    _write(args, json.dumps(d) + "\n")


def cmd_reduce(args):
    inst = load_instance(args.instance)
    G, Gh = _pair(inst)
    fmt = args.format or "graph6"
    if fmt == "graph6":
        _write(args, formats.to_graph6(G.graph) + "\n" + formats.to_graph6(Gh.graph) + "\n")
    elif fmt == "dimacs":
        _write(args, formats.to_dimacs(G.graph, "instance graph"), ".1.dimacs" if args.out else "")
        _write(args, formats.to_dimacs(Gh.graph, "homogeneous graph"), ".2.dimacs" if args.out else "")
    elif fmt == "json":
        _write(args, json.dumps({
            "g": {"n": G.N, "edges": [list(e) for e in G.graph.edge_list]},
            "h": {"n": Gh.N, "edges": [list(e) for e in Gh.graph.edge_list]},
        }) + "\n")
    else:
        raise SystemExit(f"unknown format {fmt!r}")
    side = G.sidecar()
    side["homog_names"] = list(Gh.graph.names)
    side["N"], side["M"] = G.N, G.M
    if args.out:
        Path(str(args.out) + ".labels.json").write_text(json.dumps(side) + "\n")
    elif args.sidecar:
        Path(args.sidecar).write_text(json.dumps(side) + "\n")


def cmd_score(args):
    inst = load_instance(args.instance)
    G, Gh = _pair(inst)
    s = gi_score(G.graph, Gh.graph, _load_map(args, inst))
    _write(args, json.dumps({"satisfied": s.satisfied, "denominator": s.denominator,
                             "ratio": str(s.ratio)}) + "\n")


def cmd_decode(args):
    inst = load_instance(args.instance)
    pair = _pair(inst)
    pi = _load_map(args, inst)
    run = additive_decode if isinstance(inst, AdditiveCspInstance) else decode
    rep = run(pair, pi, args.eps, args.beta, args.gamma, args.c)
    _write(args, rep.to_json() + "\n")


def cmd_asymmetry_scan(args):
    lines = []

    def emit(rec):
        lines.append(json.dumps(rec))
        if not args.out:
            print(lines[-1], flush=True)

    rep = monte_carlo_asymmetry(args.n, args.m, args.beta, args.gamma, args.trials, args.budget,
                                _require_seed(args), k=args.k, fallback=args.fallback, on_trial=emit)
    summary = monte_carlo_report_json(rep)
    if args.out:
        Path(args.out).write_text("\n".join(lines + [summary]) + "\n")
    else:
        print(summary)


def cmd_sos_verify(args):
    inst = load_instance(args.instance)
    if args.stream:
        out = []
        rep = verify_sos_reduction(inst, on_record=lambda r: out.append(json.dumps(r)))
        _write(args, "\n".join(out + [json.dumps(rep)]) + "\n")
    else:
        rep = verify_sos_reduction(inst)
        _write(args, json.dumps(rep) + "\n")
    return 0 if rep["all_passed"] else 1


def cmd_wl(args):
    g1 = formats.from_graph6(Path(args.g1).read_text().splitlines()[0])
    g2 = formats.from_graph6(Path(args.g2).read_text().splitlines()[0])
    verdict = wl_distinguish(g1, g2, args.k)
    print(verdict)
    return 0 if verdict == "maybe" else 1


def cmd_gadget_audit(args):
    _write(args, json.dumps(gadget_audit(AbelianGroup.parse(args.group))) + "\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["graph6", "dimacs", "json"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="giso-forge", description=__doc__)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["graph6", "dimacs", "json"], default=None)
    p.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    def group_flags(sp, required=False):
        sp.add_argument("--group", required=required, help="e.g. Z3 or Z2xZ2")
        sp.add_argument("--k", type=int, default=3)
        sp.add_argument("--predicate", help="predicate JSON (default: sum-zero)")

    sp = add("gen-3xor", cmd_gen_3xor, help="sample a random 3XOR instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--distinct", action="store_true", help="sample distinct triples")

    sp = add("gen-additive", cmd_gen_additive, help="sample an Additive-CSP instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    group_flags(sp, required=True)

    sp = add("plant", cmd_plant, help="instance with a planted (1-eps)-satisfying assignment")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--eps", type=str, default="0")
    sp.add_argument("--distinct", action="store_true")
    group_flags(sp)

    sp = add("reduce", cmd_reduce, help="emit the graph pair of an instance")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--sidecar", help="label sidecar path when writing to stdout")

    for name, fn, hlp in (("score", cmd_score, "GI score of a map"),
                          ("decode", cmd_decode, "run the soundness decoder")):
        sp = add(name, fn, help=hlp)
        sp.add_argument("--instance", required=True)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--tau", help="assignment (JSON list or file) for the completeness map")
        src.add_argument("--map", help="JSON file with the vertex map")
        if name == "decode":
            sp.add_argument("--eps", type=str, required=True)
            sp.add_argument("--beta", type=str, required=True)
            sp.add_argument("--gamma", type=str, required=True)
            sp.add_argument("--c", type=str, default=None)

    sp = add("asymmetry-scan", cmd_asymmetry_scan, help="Monte Carlo asymmetry falsifier")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--beta", type=str, required=True)
    sp.add_argument("--gamma", type=str, required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--budget", type=int, default=10, help="hill-climb restarts per trial")
    sp.add_argument("--fallback", choices=["bruteforce"], default=None)

    sp = add("sos-verify", cmd_sos_verify, help="check the SOS substitution identities")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--stream", action="store_true", help="one JSON line per checked item")

    sp = add("wl", cmd_wl, help="WL refinement on two graph6 files")
    sp.add_argument("--k", type=int, choices=[1, 2], default=1)
    sp.add_argument("g1")
    sp.add_argument("g2")

    sp = add("gadget-audit", cmd_gadget_audit, help="variable gadget counts and automorphisms")
    sp.add_argument("--group", required=True)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    rc = args.func(args)
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
