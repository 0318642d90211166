"""Command-line front end.

Subcommands
-----------
hom         evaluate hom / t / inj / t_inj of a pattern (or quantum graph)
connmat     connection-matrix sections and the E / C / B special matrices
spectrum    step-graphon eigenvalues and spectral cycle densities
moments     moment-sequence checks and finite-support recovery
rankgrowth  dimension growth profile of a randomly weighted target
sample      sampling convergence experiment (CSV output)
verify      built-in verification suites
graph       pattern-graph utilities (families, gluing, codes, enumeration)

Exit codes: 0 success, 1 a verification failed (a witness is printed when
there is one), 2 malformed input or out-of-budget request.

Rational values are serialized as "p/q" strings throughout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import connection, homs, moments, rankgrowth, sampling, spectral
from .errors import GraphmomentsError, InputError
from .exactla import psd_check, rank_float
from .graphs import (Multigraph, canonical_code, complete, complete_bipartite,
                     cycle, disjoint_union, edgeless, enumerate_k_labeled,
                     enumerate_unlabeled, eulerian_orientation_count,
                     glue_product, graph_from_json, graph_to_json,
                     labeled_pair_power, labeled_path_of_length,
                     labeled_star_pair, multi_edge, path, simple_glue_product,
                     single_node, subdivide)
from .moments import MomentSequence, hausdorff_check, hankel_psd_rank, recover_finite_support
from .randomgen import random_measure, random_rw, random_step_graphon
from .rationals import frac_str
from .targets import (RandomWeightedGraph, StepGraphon, WeightedGraph,
                      coin_node, constant_target, target_from_json)


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(payload, out_path) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_ints(text: str, what: str):
    """Accept "2..5" (inclusive range) or "25,100,400" (list)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"cannot parse {what} specification {text!r} "
                         "(expected e.g. 3..8 or 25,100,400)") from None


def _load_target(path: str):
    return target_from_json(_load_json(path))


def _require_exactable(target, use_float: bool):
    if isinstance(target, StepGraphon) and target.mode == "float" and not use_float:
        raise InputError("target is a float-mode graphon; pass --float "
                         "(exact arithmetic is unavailable for it)")


# ---------------------------------------------------------------------------
# hom
# ---------------------------------------------------------------------------


def cmd_hom(args) -> int:
    target = _load_target(args.target)
    graph_payload = _load_json(args.graph)
    float_graphon = isinstance(target, StepGraphon) and target.mode == "float"
    if float_graphon or args.use_float:
        if args.injective:
            raise InputError("injective counts are exact-only; drop --injective "
                             "or supply an exact target")
        if not args.density:
            raise InputError("float evaluation is density-only; pass --density")
        fn = lambda g: homs.t_float(g, target)
    elif args.injective and args.density:
        fn = lambda g: homs.t_inj(g, target)
    elif args.injective:
        fn = lambda g: homs.inj(g, target)
    elif args.density:
        fn = lambda g: homs.t(g, target)
    else:
        fn = lambda g: homs.hom(g, target)
    if isinstance(graph_payload, dict) and "terms" in graph_payload:
        qg = homs.QuantumGraph.from_json(graph_payload)
        value = homs.evaluate_quantum(fn, qg)
    else:
        value = fn(graph_from_json(graph_payload))
    _emit(_fmt(value), args.out)
    return 0


# ---------------------------------------------------------------------------
# connmat
# ---------------------------------------------------------------------------


def cmd_connmat(args) -> int:
    target = _load_target(args.target)
    if args.special:
        return _connmat_special(args, target)
    if args.k is None:
        raise InputError("connmat needs --k (or --special E|C|B)")
    _require_exactable(target, use_float=False)
    param = (homs.density_parameter(target) if args.density
             else homs.hom_parameter(target))
    matrix = connection.connection_submatrix(
        param, args.k, node_budget=args.nodes, mult_budget=args.mult,
        method=args.method)
    payload = {"k": args.k, "node_budget": args.nodes,
               "mult_budget": args.mult, "size": matrix.nrows}
    payload.update(matrix.to_json())
    code = 0
    if args.psd:
        res = psd_check(matrix)
        payload["psd"] = res.ok
        if not res.ok:
            payload["witness"] = [frac_str(x) for x in res.witness]
            payload["witness_value"] = frac_str(res.value)
            code = 1
    _emit(payload, args.out)
    return code


def _connmat_special(args, target) -> int:
    kind, size = args.special, args.size
    float_mode = args.use_float or (isinstance(target, StepGraphon)
                                    and target.mode == "float")
    if float_mode:
        if not isinstance(target, StepGraphon):
            raise InputError("float special matrices need a step graphon")
        m = connection.special_matrix_float(target, kind, size)
        rank, cond, _ = rank_float(m)
        payload = {"kind": kind, "size": size, "mode": "float",
                   "rows": [list(map(float, row)) for row in m],
                   "rank": rank, "condition": cond}
        _emit(payload, args.out)
        return 0
    param = (homs.density_parameter(target) if args.density
             else homs.hom_parameter(target))
    build = {"E": connection.E_matrix, "C": connection.C_matrix,
             "B": connection.B_matrix}[kind]
    matrix = build(param, size)
    payload = {"kind": kind, "size": size, "mode": "exact"}
    payload.update(matrix.to_json())
    code = 0
    if args.psd:
        res = psd_check(matrix)
        payload["psd"] = res.ok
        if not res.ok:
            payload["witness"] = [frac_str(x) for x in res.witness]
            payload["witness_value"] = frac_str(res.value)
            code = 1
    _emit(payload, args.out)
    return code


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    target = _load_target(args.graphon)
    if isinstance(target, WeightedGraph):
        target = target.normalize().to_step_graphon()
    if not isinstance(target, StepGraphon):
        raise InputError("spectrum needs a step graphon (or a weighted graph "
                         "to normalize into one)")
    lam = spectral.eigenvalues_step(target, drop_tol=args.drop_tol)
    payload = {
        "steps": target.steps,
        "eigenvalues": lam,
        "distinct_nonzero": spectral.distinct_eigenvalues(lam),
    }
    code = 0
    if args.cycles:
        rows = []
        for n in _parse_ints(args.cycles, "--cycles"):
            if n < 2:
                raise InputError("cycle densities need n >= 2")
            row = {"n": n, "spectral": spectral.cycle_density_spectral(target, n)}
            if target.mode == "exact":
                exact = homs.t(cycle(n), target)
                row["exact"] = frac_str(exact)
                row["difference"] = abs(row["spectral"] - float(exact))
                if row["difference"] > 1e-9:
                    code = 1
            rows.append(row)
        payload["cycles"] = rows
    _emit(payload, args.out)
    return code


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def cmd_moments_check(args) -> int:
    seq = MomentSequence.from_json(_load_json(args.seq))
    res, rank = hankel_psd_rank(seq)
    payload = {"length": len(seq), "hankel_psd": res.ok, "hankel_rank": rank}
    ok = res.ok
    if not res.ok:
        payload["witness"] = [frac_str(x) for x in res.witness]
        payload["witness_value"] = frac_str(res.value)
    if args.domain == "01":
        h_ok, violation = hausdorff_check(seq)
        payload["hausdorff"] = h_ok
        if not h_ok:
            n, k, value = violation
            payload["hausdorff_violation"] = {"n": n, "k": k,
                                              "value": frac_str(value)}
        ok = ok and h_ok
    payload["ok"] = ok
    _emit(payload, args.out)
    return 0 if ok else 1


def cmd_moments_recover(args) -> int:
    seq = MomentSequence.from_json(_load_json(args.seq))
    measure = recover_finite_support(seq, args.atoms)
    _emit(measure.to_json(), args.out)
    return 0


# ---------------------------------------------------------------------------
# rankgrowth
# ---------------------------------------------------------------------------


def cmd_rankgrowth(args) -> int:
    target = _load_target(args.target)
    if isinstance(target, StepGraphon):
        raise InputError("rankgrowth needs a (randomly) weighted target")
    ns = _parse_ints(args.n, "--n")
    budget = args.budget if args.budget else rankgrowth.DIM_BUDGET
    report = rankgrowth.classify_growth(target, ns, budget)
    bounds = [rankgrowth.verify_rank_bounds(target, n, budget=budget)
              for n in ns]
    payload = report.to_json()
    payload["bounds"] = [b.to_json() for b in bounds]
    ok = all(b.ok for b in bounds)
    payload["bounds_ok"] = ok
    out_path = args.report or args.out
    _emit(payload, out_path)
    if out_path:
        line = (f"{report.kind}: A={report.a_value:.6g} "
                f"dims={report.dims} bounds_ok={ok}")
        print(line)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------


def cmd_sample(args) -> int:
    target = _load_target(args.target)
    pattern = graph_from_json(_load_json(args.graph))
    ns = _parse_ints(args.n, "--n")
    result = sampling.convergence_experiment(pattern, target, ns,
                                             args.reps, args.seed)
    _emit(result.to_csv(), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_constant():
    """t(F, constant 1/2) = 2^-|E(F)| for every small pattern."""
    target = constant_target(Fraction(1, 2))
    out = []
    for g in enumerate_unlabeled(3, 2):
        want = Fraction(1, 2 ** g.edge_count())
        got = homs.t(g, target)
        out.append((f"t(F) F={g.n}n/{g.edge_count()}e", got == want,
                    f"{frac_str(got)} vs {frac_str(want)}"))
    return out


def _suite_coin():
    """Coin-node densities see only the support graph: t = 2^-|E(F')|."""
    coin = coin_node()
    out = []
    for g in enumerate_unlabeled(3, 2):
        want = Fraction(1, 2 ** g.support_count())
        got = homs.t_rw(g, coin)
        ok = got == want
        if g.max_multiplicity() >= 2:
            ok = ok and got != Fraction(1, 2 ** g.edge_count())
        out.append((f"t_rw(F) F={g.n}n/{g.edge_count()}e", ok,
                    f"{frac_str(got)} vs {frac_str(want)}"))
    return out


def _suite_necessity():
    """Connection sections of hom into random targets are PSD."""
    rng = random.Random(7)
    out = []
    for i in range(3):
        h = random_rw(rng, max_q=2, max_support=2)
        param = homs.hom_parameter(h)
        for k in (0, 1):
            m = connection.connection_submatrix(param, k, node_budget=3,
                                                mult_budget=2)
            res = psd_check(m)
            detail = (f"{m.nrows} generators" if res.ok
                      else f"witness value {frac_str(res.value)}")
            out.append((f"target{i} k={k}", res.ok, detail))
    return out


def _suite_spectral():
    """Cycle densities match eigenvalue power sums."""
    rng = random.Random(11)
    out = []
    for i in range(3):
        w = random_step_graphon(rng, 4)
        for n in (3, 5, 6):
            spec_val = spectral.cycle_density_spectral(w, n)
            exact = homs.t(cycle(n), w)
            diff = abs(spec_val - float(exact))
            out.append((f"graphon{i} C_{n}", diff <= 1e-9, f"diff {diff:.2e}"))
    return out


def _suite_subdivision():
    """t(F', W) = t(F, W o W) for the edge subdivision F'."""
    rng = random.Random(13)
    patterns = enumerate_unlabeled(3, 2)
    out = []
    for i in range(2):
        w = random_step_graphon(rng, 3)
        bad = sum(1 for g in patterns if not spectral.check_subdivision(g, w)[2])
        out.append((f"graphon{i}", bad == 0,
                    f"{len(patterns) - bad}/{len(patterns)} patterns"))
    return out


def _suite_moments():
    """Hankel / complete-monotonicity checks and finite-support recovery."""
    out = []
    from .moments import FiniteSupportMeasure
    delta = FiniteSupportMeasure([Fraction(1, 2)], [Fraction(1)])
    seq = delta.moments(6)
    res, rank = hankel_psd_rank(seq)
    h_ok, _ = hausdorff_check(seq)
    out.append(("delta(1/2) moments", res.ok and rank == 1 and h_ok,
                f"psd={res.ok} rank={rank} hausdorff={h_ok}"))

    bad = MomentSequence([1, Fraction(1, 2), Fraction(1, 10), Fraction(1, 10)])
    res_bad, _ = hankel_psd_rank(bad)
    h_bad, violation = hausdorff_check(bad)
    caught = (not res_bad.ok) and (not h_bad) and violation is not None
    out.append(("non-moment sequence rejected", caught,
                f"hankel={res_bad.ok} hausdorff={h_bad}"))

    rec = recover_finite_support(
        MomentSequence([1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]), 2)
    want = FiniteSupportMeasure([0, 1], [Fraction(1, 2), Fraction(1, 2)])
    out.append(("recover fair coin", rec == want, repr(rec)))

    rng = random.Random(17)
    for i in range(3):
        mu = random_measure(rng, max_atoms=3)
        back = recover_finite_support(mu.moments(2 * mu.size + 1), mu.size)
        out.append((f"roundtrip measure{i}", back == mu, f"{mu.size} atoms"))
    return out


def _suite_growth():
    """Entropy exponents and dimension bounds on the pinned examples."""
    out = []
    coin = coin_node()
    a_coin = rankgrowth.compute_A(coin)
    out.append(("A(coin) = 1/2", a_coin.exact == Fraction(1, 2),
                f"A={a_coin.value}"))
    g_coin = rankgrowth.grid_search_A(coin)
    out.append(("grid search matches", abs(g_coin - 0.5) <= 1e-6,
                f"grid={g_coin}"))

    half = Fraction(1, 2)
    cross = RandomWeightedGraph(
        [Fraction(1), Fraction(1)],
        [[((Fraction(1), Fraction(1)),), ((Fraction(0), half), (Fraction(1), half))],
         [((Fraction(0), half), (Fraction(1), half)), ((Fraction(1), Fraction(1)),)]])
    a_cross = rankgrowth.compute_A(cross)
    out.append(("A(cross pair) = 1/4", a_cross.exact == Fraction(1, 4),
                f"A={a_cross.value}"))

    ordinary = RandomWeightedGraph.from_weighted(constant_target(Fraction(1, 3)))
    a_ord = rankgrowth.compute_A(ordinary)
    out.append(("A(ordinary) = 0", a_ord.exact == Fraction(0),
                f"A={a_ord.value}"))

    for n in (2, 3):
        chk = rankgrowth.verify_rank_bounds(coin, n)
        out.append((f"dim bounds coin n={n}", chk.ok,
                    f"{chk.lower:.4g} <= {chk.dim} <= {chk.upper:.4g}"))
    return out


def _suite_sampling():
    """Sampled graphs respect the injective-density distance bound."""
    out = []
    coin = coin_node()
    w = sampling.sample_dense(coin, 60, 123)
    chk = sampling.verify_tavolsag(cycle(3), w, 1)
    out.append(("tavolsag C_3 coin n=60", chk.ok,
                f"diff {chk.difference:.3g} <= {chk.bound:.3g}"))
    half = sampling.sample_dense(constant_target(Fraction(1, 2)), 50, 5)
    chk2 = sampling.verify_tavolsag(complete(3), half, 1)
    out.append(("tavolsag K_3 const n=50", chk2.ok,
                f"diff {chk2.difference:.3g} <= {chk2.bound:.3g}"))
    res = sampling.convergence_experiment(multi_edge(1), coin, [30], 40, 3)
    row = res.rows[0]
    out.append(("convergence K_2 coin", row.variance_ok and row.mean_ok,
                f"mean {row.mean:.4g} ref {row.reference:.4g}"))
    return out


_SUITES = {
    "constant": _suite_constant,
    "coin": _suite_coin,
    "necessity": _suite_necessity,
    "spectral": _suite_spectral,
    "subdivision": _suite_subdivision,
    "moments": _suite_moments,
    "growth": _suite_growth,
    "sampling": _suite_sampling,
}


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(_SUITES)
    failures = 0
    for name in names:
        for label, ok, detail in _SUITES[name]():
            mark = " ok " if ok else "FAIL"
            print(f"[{mark}] {name}: {label} ({detail})")
            failures += 0 if ok else 1
    total = "all suites passed" if not failures else f"{failures} check(s) failed"
    print(total)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# graph utilities
# ---------------------------------------------------------------------------

_FAMILIES = {
    "single": (0, lambda: single_node()),
    "edgeless": (1, edgeless),
    "multiedge": (1, multi_edge),
    "path": (1, path),
    "cycle": (1, cycle),
    "complete": (1, complete),
    "bipartite": (2, complete_bipartite),
    "pairpower": (1, labeled_pair_power),
    "labeledpath": (1, labeled_path_of_length),
    "starpair": (1, labeled_star_pair),
}


def cmd_graph_family(args) -> int:
    arity, build = _FAMILIES[args.kind]
    params = _parse_ints(args.params, "--params") if args.params else []
    if len(params) != arity:
        raise InputError(f"family {args.kind!r} takes {arity} parameter(s), "
                         f"got {len(params)}")
    g = build(*params)
    if args.labels is not None:
        g = g.with_labels(args.labels)
    _emit(graph_to_json(g), args.out)
    return 0


def cmd_graph_glue(args) -> int:
    a = graph_from_json(_load_json(args.a))
    b = graph_from_json(_load_json(args.b))
    if args.disjoint:
        g = disjoint_union(a, b)
    elif args.simple:
        g = simple_glue_product(a, b)
    else:
        g = glue_product(a, b)
    _emit(graph_to_json(g), args.out)
    return 0


def cmd_graph_code(args) -> int:
    g = graph_from_json(_load_json(args.graph))
    mode = "labels-fixed" if args.labels_fixed else "labels-free"
    _emit({"mode": mode, "code": repr(canonical_code(g, mode))}, args.out)
    return 0


def cmd_graph_subdivide(args) -> int:
    g = graph_from_json(_load_json(args.graph))
    _emit(graph_to_json(subdivide(g)), args.out)
    return 0


def cmd_graph_enumerate(args) -> int:
    gens = enumerate_k_labeled(args.k, args.nodes, args.mult)
    payload = {"k": args.k, "max_nodes": args.nodes, "max_mult": args.mult,
               "count": len(gens)}
    if not args.count_only:
        payload["graphs"] = [graph_to_json(g) for g in gens]
    _emit(payload, args.out)
    return 0


def cmd_graph_eulerian(args) -> int:
    g = graph_from_json(_load_json(args.graph))
    _emit(str(eulerian_orientation_count(g)), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="insist on exact arithmetic (default where possible)")
    mode.add_argument("--float", dest="use_float", action="store_true",
                      help="use float arithmetic")
    common.add_argument("--seed", type=int, default=0, help="RNG seed")
    common.add_argument("--budget", type=int, default=0,
                        help="work budget override for guarded computations")
    common.add_argument("--out", help="write the result to this file")

    parser = argparse.ArgumentParser(
        prog="graphmoments",
        description="Multigraph homomorphism densities, moment matrices, "
                    "and rank growth for weighted and randomly weighted "
                    "targets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", parents=[common],
                       help="evaluate a pattern in a target")
    p.add_argument("--graph", required=True, help="pattern JSON (graph or quantum)")
    p.add_argument("--target", required=True, help="target JSON")
    p.add_argument("--density", action="store_true", help="normalized density")
    p.add_argument("--injective", action="store_true", help="injective maps only")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("connmat", parents=[common],
                       help="connection-matrix sections")
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int, help="number of labeled nodes")
    p.add_argument("--nodes", type=int, default=4, help="generator node budget")
    p.add_argument("--mult", type=int, default=2, help="generator multiplicity budget")
    p.add_argument("--special", choices=("E", "C", "B"),
                   help="build a special matrix instead of a section")
    p.add_argument("--size", type=int, default=8, help="special matrix size")
    p.add_argument("--density", action="store_true",
                   help="use densities instead of raw hom numbers")
    p.add_argument("--method", choices=("auto", "factored", "direct"),
                   default="auto")
    p.add_argument("--psd", action="store_true",
                   help="run the exact PSD check on the result")
    p.set_defaults(func=cmd_connmat)

    p = sub.add_parser("spectrum", parents=[common],
                       help="step-graphon spectrum and cycle densities")
    p.add_argument("--graphon", required=True)
    p.add_argument("--cycles", help="cycle lengths, e.g. 3..8")
    p.add_argument("--drop-tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("moments", parents=[common],
                       help="moment-sequence tools")
    msub = p.add_subparsers(dest="moments_command", required=True)
    pc = msub.add_parser("check", parents=[common],
                         help="Hankel / monotonicity checks")
    pc.add_argument("--seq", required=True, help="moment sequence JSON")
    pc.add_argument("--domain", choices=("01", "dd"), default="dd",
                    help="01: measure on [0,1] (adds complete monotonicity); "
                         "dd: measure on [-d,d]")
    pc.set_defaults(func=cmd_moments_check)
    pr = msub.add_parser("recover", parents=[common],
                         help="recover a finite-support measure")
    pr.add_argument("--seq", required=True)
    pr.add_argument("--atoms", type=int, required=True,
                    help="maximum number of atoms")
    pr.set_defaults(func=cmd_moments_recover)

    p = sub.add_parser("rankgrowth", parents=[common],
                       help="dimension growth profile")
    p.add_argument("--target", required=True)
    p.add_argument("--n", required=True, help="levels, e.g. 2..5")
    p.add_argument("--report", help="write the JSON report to this file")
    p.set_defaults(func=cmd_rankgrowth)

    p = sub.add_parser("sample", parents=[common],
                       help="sampling convergence experiment")
    p.add_argument("--target", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--n", required=True, help="sample sizes, e.g. 25,100,400")
    p.add_argument("--reps", type=int, default=200)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common],
                       help="run built-in verification suites")
    p.add_argument("--suite", choices=sorted(_SUITES),
                   help="run one suite (default: all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", parents=[common],
                       help="pattern-graph utilities")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    pf = gsub.add_parser("family", parents=[common], help="build a family graph")
    pf.add_argument("--kind", choices=sorted(_FAMILIES), required=True)
    pf.add_argument("--params", help="integer parameters, e.g. 4 or 3,2")
    pf.add_argument("--labels", type=int, help="declare the first k nodes labeled")
    pf.set_defaults(func=cmd_graph_family)
    pg = gsub.add_parser("glue", parents=[common], help="glue two labeled graphs")
    pg.add_argument("--a", required=True)
    pg.add_argument("--b", required=True)
    pg.add_argument("--simple", action="store_true",
                    help="clamp multiplicities after gluing")
    pg.add_argument("--disjoint", action="store_true",
                    help="disjoint union instead of gluing")
    pg.set_defaults(func=cmd_graph_glue)
    pc = gsub.add_parser("code", parents=[common], help="canonical code")
    pc.add_argument("--graph", required=True)
    pc.add_argument("--labels-fixed", action="store_true",
                    help="keep labeled nodes fixed pointwise")
    pc.set_defaults(func=cmd_graph_code)
    ps = gsub.add_parser("subdivide", parents=[common],
                         help="replace every edge copy by a path of length 2")
    ps.add_argument("--graph", required=True)
    ps.set_defaults(func=cmd_graph_subdivide)
    pe = gsub.add_parser("enumerate", parents=[common],
                         help="enumerate k-labeled multigraphs")
    pe.add_argument("--k", type=int, required=True)
    pe.add_argument("--nodes", type=int, required=True)
    pe.add_argument("--mult", type=int, required=True)
    pe.add_argument("--count-only", action="store_true")
    pe.set_defaults(func=cmd_graph_enumerate)
    pu = gsub.add_parser("eulerian", parents=[common],
                         help="count eulerian orientations")
    pu.add_argument("--graph", required=True)
    pu.set_defaults(func=cmd_graph_eulerian)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except GraphmomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
