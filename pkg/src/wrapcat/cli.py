"""Command-line entry point: validate / compute / entangle on setup files.

Exit codes: 0 pass, 1 strict failure or mismatch, 2 input error.  Reports
are emitted as canonical JSON (default) or a text table; bytes are stable
across runs and thread counts.
"""

from __future__ import annotations

import argparse
import sys

from .ainf import check_ainf_relations, classify_unitality, cohomology_category
from .errors import (NotStabilized, OracleIncomplete, ParseError, SchemaError,
                     WrapcatError)
from .floer import (canonical_envelope, choose_compatible_collection,
                    validate_setup)
from .localization import check_right_multiplicative_system
from .posets import DecoratedPoset, build_O_P, poset_continuation_cset
from .quotient import localize_by_cones
from .report import Report, parallel_map
from .setupfile import load_setup
from .sss import (SimplexOracle, canonical_sss, check_bridge, entangle,
                  tau_compare)
from .wrap import (check_localization_agreement, continuation_cset,
                   generating_subset, validate_continuation_system,
                   wrapped_df_category)


def _prepare(setup):
    col = choose_compatible_collection(setup)
    env = canonical_envelope(setup, col)
    hcat = cohomology_category(env, check_arity=0)
    cset = continuation_cset(setup, hcat)
    return col, env, hcat, cset


def bundled_wrapped_poset(setup, hcat, cset) -> DecoratedPoset:
    """The bundled sufficiently wrapped poset: one chain per wrapping family
    (base below its wrapped stages), families stacked in sorted order."""
    succ = {}
    targets = set()
    for c in cset:
        if cset.is_identity(c):
            continue
        succ.setdefault(c.tgt, []).append(c.src)
        targets.add(c.tgt)
    sources_of = {c.src for c in cset if not cset.is_identity(c)}
    bases = sorted(l for l in setup.lagrangians
                   if l not in sources_of)
    order = []
    seen = set()
    for b in bases:
        chain = [b]
        cur = b
        while succ.get(cur):
            nxt = sorted(succ[cur])[0]
            if nxt in seen or nxt in chain:
                break
            chain.append(nxt)
            cur = nxt
        for x in chain:
            if x not in seen:
                seen.add(x)
                order.append(x)
    for l in sorted(setup.lagrangians):
        if l not in seen:
            order.append(l)
            seen.add(l)
    elements = [f"p{i}" for i in range(len(order))]
    less = [(elements[i], elements[j]) for i in range(len(order))
            for j in range(i + 1, len(order))]
    lag = {elements[i]: order[i] for i in range(len(order))}
    return DecoratedPoset(setup, elements, less, lag)


def cmd_validate(path, mode="finite", profile="auto"):
    setup = load_setup(path)
    rep = Report("validate", setup.name)
    res = validate_setup(setup, mode=mode)
    rep.add("setup_axioms", res)
    passed = res["passed"]
    cont = None
    if passed:
        try:
            col, env, hcat, cset = _prepare(setup)
            cont = validate_continuation_system(setup, hcat, cset, mode=mode)
            rep.add("continuation_conditions", cont)
            passed = passed and cont["passed"]
        except WrapcatError as exc:
            rep.add("continuation_conditions",
                    {"passed": False, "error": str(exc)})
            passed = False
    rep.set_verdict(passed)
    return rep


def cmd_compute(path, what="hw", depth=4, mode="finite"):
    setup = load_setup(path)
    rep = Report(f"compute:{what}", setup.name)
    val = validate_setup(setup, mode=mode)
    if not val["passed"]:
        rep.add("validation", val)
        rep.set_verdict(False)
        return rep
    col, env, hcat, cset = _prepare(setup)
    if what == "hw":
        wdf = wrapped_df_category(setup, env, hcat, cset, depth=depth)
        rep.add("hw_table", wdf.hw_table())
        unstab = sorted(str(p) for p, s in wdf.stabilization.items() if not s)
        rep.add("unstabilized_pairs", unstab)
        rep.set_verdict(not unstab)
        if unstab:
            rep.add("error", "NotStabilized")
        return rep
    if what == "dfcat":
        wdf = wrapped_df_category(setup, env, hcat, cset, depth=depth)
        rep.add("hw_table", wdf.hw_table())
        axioms = wdf.verify_category_axioms()
        locality = wdf.check_right_locality()
        functor = wdf.check_canonical_functor()
        rep.add("category_axioms", axioms)
        rep.add("right_locality", locality)
        rep.add("canonical_functor", functor)
        rep.set_verdict(axioms["passed"] and locality["passed"]
                        and functor["passed"])
        return rep
    if what == "localize":
        gens = generating_subset(hcat, cset)
        w_classes = [(c.src, c.tgt, c.coords) for c in gens]
        pairs = [(a, b) for a in env.objects for b in env.objects]
        quo, _ = localize_by_cones(env, hcat, w_classes, depth=depth,
                                   pairs=pairs, check_relations=False)
        rows = parallel_map(
            lambda p: {"pair": [p[0], p[1]],
                       "h0_rank": quo.h0_rank(*p),
                       "stabilized": quo.stabilized(*p)}, pairs)
        rep.add("quotient_h0", rows)
        rep.add("cone_classes", [repr(c) for c in gens])
        unstab = [r["pair"] for r in rows if not r["stabilized"]]
        rep.set_verdict(not unstab)
        if unstab:
            rep.add("error", "NotStabilized")
        return rep
    if what == "agree":
        wdf = wrapped_df_category(setup, env, hcat, cset, depth=depth)
        ag = check_localization_agreement(setup, env, hcat, cset, depth=depth,
                                          wdf=wdf)
        rep.add("agreement", ag)
        rep.set_verdict(ag["passed"])
        return rep
    raise SchemaError(f"unknown computation {what!r}")


def cmd_entangle(path, level=1, compare=False, depth=4):
    setup = load_setup(path)
    rep = Report(f"entangle:{level}", setup.name)
    col, env, hcat, cset = _prepare(setup)
    oracle = SimplexOracle(setup)
    e_delta = canonical_sss(setup, col)
    stages = [("E_delta", e_delta)]
    e0 = entangle(setup, [e_delta], 0, oracle, name="E0")
    stages.append(("E0", e0))
    for n in range(1, level + 1):
        blocks = [e0] * (n + 1)
        stages.append((f"E{n}", entangle(setup, blocks, n, oracle,
                                         name=f"E{n}")))
    rep.add("stages", {name: E.stats() for name, E in stages})
    passed = True
    if compare:
        bridges = {}
        for (na, Ea), (nb, Eb) in zip(stages, stages[1:]):
            if na == "E_delta":
                inc = {v: v for v in Ea.vertices}
            elif nb == "E1":
                inc = {v: f"b0.{v}" for v in Ea.vertices}
            else:
                inc = {v: v for v in Ea.vertices}
            br = check_bridge(setup, Ea, Eb, inclusion=inc, depth=depth)
            bridges[f"{na}->{nb}"] = {
                "passed": br["passed"],
                "waived_pairs": len(br["waived_pairs"]),
                "hom_stability_failures": [r for r in br["hom_stability"]
                                           if not r["iso"]],
                "essential_surjectivity_failures": [
                    r for r in br["essential_surjectivity"] if not r["passed"]],
            }
            passed = passed and br["passed"]
        rep.add("bridges", bridges)
        P = bundled_wrapped_poset(setup, hcat, cset)
        tau_rep, _ = tau_compare(setup, P, e_delta, depth=depth)
        rep.add("tau", {"passed": tau_rep["passed"],
                        "fully_faithful_failures": [
                            r for r in tau_rep["fully_faithful"] if not r["iso"]],
                        "essential_surjectivity_failures": [
                            r for r in tau_rep["essential_surjectivity"]
                            if not r["passed"]]})
        passed = passed and tau_rep["passed"]
    rep.set_verdict(passed)
    return rep


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="wrapcat",
        description="Exact finite-scale computations for weak wrapped Floer "
                    "setups: validation, wrapping colimits, localization, "
                    "entanglement comparisons.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_val = sub.add_parser("validate", help="validate a setup file")
    p_val.add_argument("file")
    p_val.add_argument("--mode", choices=["strict", "finite"], default="finite")
    p_val.add_argument("--profile", default="auto")
    p_cmp = sub.add_parser("compute", help="run a computation")
    p_cmp.add_argument("file")
    p_cmp.add_argument("--what", choices=["hw", "dfcat", "localize", "agree"],
                       default="hw")
    p_cmp.add_argument("--depth", type=int, default=4)
    p_cmp.add_argument("--mode", choices=["strict", "finite"], default="finite")
    p_ent = sub.add_parser("entangle", help="build entanglement stages")
    p_ent.add_argument("file")
    p_ent.add_argument("--level", type=int, default=1)
    p_ent.add_argument("--compare", action="store_true")
    p_ent.add_argument("--depth", type=int, default=4)
    for p in (p_val, p_cmp, p_ent):
        p.add_argument("--text", action="store_true",
                       help="human-readable table instead of JSON")
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            rep = cmd_validate(args.file, mode=args.mode, profile=args.profile)
        elif args.command == "compute":
            rep = cmd_compute(args.file, what=args.what, depth=args.depth,
                              mode=args.mode)
        else:
            rep = cmd_entangle(args.file, level=args.level,
                               compare=args.compare, depth=args.depth)
    except (ParseError, SchemaError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except OracleIncomplete as exc:
        sys.stderr.write(f"oracle incomplete: {exc}\n")
        return 1
    except NotStabilized as exc:
        sys.stderr.write(f"not stabilized: {exc}\n")
        return 1
    sys.stdout.write(rep.to_text() if args.text else rep.to_json())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
