"""
Batch front-end: the verification suites as subcommands.

    jetva invariants --preset tj-bundle --algebra sl2 --jet 2 --le 1 \
        --weights 1..4 --expect-total 2
    jetva invariants --preset cdr-fibre --algebra sl2 --jet 3 --check-eight
    jetva invariants --preset cdr-fibre --algebra sl2 --generation --max-weight 4
    jetva invariants --preset tj-bundle --algebra sl2 --jet 2 --lemma-cri --max-weight 3
    jetva vertex --n 2 --verify-n4
    jetva vertex --n 3 --central-charge
    jetva vertex --n 2 --symbol-check
    jetva fock --n 2 --gram --max-weight 2
    jetva fock --n 2 --adjoints [--rule "Q:-n"]
    jetva report --n 2

Exit codes: 0 on success, 1 when an --expect or verification assertion
fails, 2 on unparseable input.  Identical configurations produce
byte-identical reports; every report embeds the engine's convention
block so golden files self-describe.  JETVA_THREADS caps fan-out over
grades; --seed fixes the PRNG of the property samples in `report`.
"""

import argparse
import csv
import io
import json
import os
import random
import sys

from . import fock, invariants, lie, presets, properties, vertex
from .errors import ConfigError, JetvaError
from .ring import qstr

ENGINE = "jetva 0.1.0"

CONVENTIONS = {
    "engine": ENGINE,
    "variable_order": "(family declaration order, index, level)",
    "letter_order": "(kind beta<gamma<b<c, index, derivative)",
    "rep_signs": "fund: g.v_i = sum_a g[a][i] v_a; "
                 "dual: g.u^i = -sum_a g[i][a] u^a",
    "mode_indexing": "bosons weight-adapted, [beta_m, gamma_n] = "
                     "delta_{m+n,0}; fermions field-indexed, "
                     "{b_(m), c_(n)} = delta_{m+n,-1}; adjoints "
                     "beta_m* = (d gamma)_{-m}, b_(n)* = c_(-n-1)",
    "symplectic_form": "J = [[0, I], [-I, 0]]",
}


def parallel_map(fn, items):
    """Deterministic fan-out: output order always matches input order."""
    k = int(os.environ.get("JETVA_THREADS", "1") or "1")
    items = list(items)
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


def _parse_algebra(text):
    text = text.strip().lower()
    for kind in ("sl", "sp"):
        if text.startswith(kind):
            return lie.lie_basis(kind, int(text[len(kind):]))
    raise ConfigError("algebra must look like sl2, sl3, sp4")


def _parse_weights(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ConfigError("empty weight window %s" % text)
        return list(range(lo, hi + 1))
    return [int(text)]


def _emit(payload, fmt, out_path):
    payload = {"conventions": CONVENTIONS, **payload}
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _to_csv(payload)
    else:
        text = _to_text(payload)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(payload):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = payload.get("table")
    if rows:
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(row.values())
    else:
        writer.writerow(["key", "value"])
        for k in sorted(payload):
            if k in ("conventions", "table"):
                continue
            writer.writerow([k, json.dumps(payload[k], sort_keys=True)])
    return buf.getvalue()


def _to_text(payload):
    lines = ["%s report (%s)" % (payload.get("command", "jetva"), ENGINE)]
    for k in sorted(payload):
        if k in ("conventions", "command"):
            continue
        lines.append("  %s: %s" % (k, json.dumps(payload[k],
                                                 sort_keys=True)))
    return "\n".join(lines) + "\n"


def _load_setup(args):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = presets.parse_config(fh.read())
        algebra = cfg["algebra"]
        jet = cfg["jet"]
        preset = cfg["preset"]
        if args.algebra:
            algebra = _parse_algebra(args.algebra)
        if args.jet is not None:
            jet = args.jet
        if args.preset:
            preset = presets.preset(args.preset, algebra.n, jet)
        if algebra is None or preset is None:
            raise ConfigError("config must declare an algebra and families")
        return algebra, jet, preset
    if not args.algebra:
        raise ConfigError("--algebra required without --config")
    algebra = _parse_algebra(args.algebra)
    jet = args.jet
    if not args.preset:
        raise ConfigError("--preset or --config required")
    preset = presets.preset(args.preset, algebra.n, jet)
    return algebra, jet, preset


def cmd_invariants(args):
    algebra, jet, preset = _load_setup(args)
    mode = "minimal" if args.minimal else "full"
    payload = {"command": "invariants", "preset": preset.name,
               "algebra": algebra.label(), "jet": jet, "generators": mode}
    ok = True

    if args.check_eight:
        elements = presets.eight_invariants(preset.alphabet)
        names = list(vertex.SectionSet.NAMES)
        rows = []
        for name, el in zip(names, elements):
            depth = jet if jet is not None else max(
                1, el.grade().conformal_weight(preset.alphabet))
            bad = invariants.check_invariant(el, algebra, depth)
            rows.append({"name": name, "element": el.text(),
                         "t_degrees": depth, "pass": not bad})
            if bad:
                ok = False
                payload.setdefault("first_violation", "%s under t^%d"
                                   % (name, bad[0][0].degree))
        payload["table"] = rows
    elif args.generation:
        gens = presets.eight_invariants(preset.alphabet)
        reports = invariants.generation_gap(gens, preset, algebra,
                                            args.max_weight)
        rows = [r.as_dict() for r in reports]
        gaps = [r for r in reports if r.span_dim != r.invariant_dim]
        payload["table"] = [
            {"grade": json.dumps(r["grade"], sort_keys=True),
             "span_dim": r["span_dim"], "invariant_dim": r["invariant_dim"]}
            for r in rows]
        payload["grades"] = len(reports)
        payload["gaps"] = len(gaps)
        if gaps:
            ok = False
            g = gaps[0]
            payload["first_violation"] = json.dumps(
                g.as_dict(), sort_keys=True)
    elif args.lemma_cri:
        results = invariants.lemma_cri_window(preset, algebra, jet,
                                              args.max_weight)
        payload["table"] = [
            {"grade": json.dumps(g.as_dict(preset.alphabet),
                                 sort_keys=True), "pass": res}
            for g, res in results]
        bad = [g for g, res in results if not res]
        if bad:
            ok = False
            payload["first_violation"] = json.dumps(
                bad[0].as_dict(preset.alphabet), sort_keys=True)
    else:
        if not args.weights:
            raise ConfigError("--weights required for the dimension table")
        weights = _parse_weights(args.weights)
        degrees = {}
        if args.le is not None:
            e_family = {"tj-bundle": "ystar",
                        "cdr-fibre": "beta"}.get(preset.name)
            if e_family is None:
                e_family = preset.alphabet.families[-1].name
            degrees[e_family] = args.le
        for spec_text in args.degree or []:
            fam, val = spec_text.split("=", 1)
            degrees[fam] = int(val)
        reports = parallel_map(
            lambda w: invariants.invariant_basis(
                preset.alphabet, algebra, jet, w, degrees, mode=mode),
            weights)
        payload["grade_window"] = {"degrees": degrees, "weights": weights}
        payload["reports"] = [r.as_dict() for r in reports]
        payload["table"] = [{"weight": w, "dim": r.dim}
                            for w, r in zip(weights, reports)]
        payload["dims"] = [r.dim for r in reports]
        total = sum(r.dim for r in reports)
        payload["total_dim"] = total
        if args.expect_total is not None:
            payload["expect_total"] = args.expect_total
            if total != args.expect_total:
                ok = False
                payload["first_violation"] = (
                    "total_dim %d != expected %d" % (total, args.expect_total))
        if args.expect_dims:
            want = [int(x) for x in args.expect_dims.split(",")]
            payload["expect_dims"] = want
            if want != payload["dims"]:
                ok = False
                payload.setdefault("first_violation",
                                   "dims %s != expected %s"
                                   % (payload["dims"], want))

    payload["pass"] = ok
    _emit(payload, args.format, args.out)
    return 0 if ok else 1


def cmd_vertex(args):
    n = args.n
    sections = vertex.standard_sections(n)
    payload = {"command": "vertex", "n": n}
    ok = True

    def run_central_charge():
        c = vertex.virasoro_central_charge(sections.Ltilde)
        payload["central_charge"] = qstr(c) if c is not None else None
        payload["uncorrected_L_minus_half_J_is_virasoro"] = (
            vertex.virasoro_central_charge(
                sections.L - sections.J.scale(vertex.HALF)) is not None)
        return c is not None and c == 3 * n

    def run_weights():
        table = {}
        good = True
        for name, s in sections.named():
            w = vertex.weight_of(sections.Ltilde, s)
            table[name] = qstr(w) if w is not None else None
            if w is None or qstr(w) not in ("1", "3/2", "2"):
                good = False
        payload["weights"] = table
        return good

    def run_closure():
        failures = []
        checked = 0
        for xn, xs in sections.named():
            for yn, ys in sections.named():
                for m, t in vertex.lambda_bracket(xs, ys):
                    checked += 1
                    member, _ = vertex.strong_span_membership(
                        sections, t, args.max_weight)
                    if not member:
                        failures.append("%s_(%d)%s" % (xn, m, yn))
        payload["closure"] = {"checked": checked, "failures": failures}
        return not failures

    def run_automorphism(mutant):
        sigma = {"Q": 1, "L": 1, "J": 1, "G": 1,
                 "B": -1, "D": -1, "C": -1, "E": -1}
        if mutant:
            sigma = {k: 1 for k in sigma}
            sigma["D"] = -1
        passed = vertex.automorphism_check(sections, sigma,
                                           args.max_weight)
        payload["automorphism"] = {"signs": sigma, "pass": passed}
        return passed

    def run_symbols():
        alphabet = presets.cdr_fibre(n, None).alphabet
        expected = presets.eight_invariants(alphabet)
        rows = []
        good = True
        for (name, s), want in zip(sections.named(), expected):
            deg, sub, img = vertex.symbol_map(s, alphabet)
            match = img.text() == want.text()
            rows.append({"name": name, "n": deg, "s": sub,
                         "image": img.text(), "expected": want.text(),
                         "pass": match})
            good = good and match
        payload["table"] = rows
        return good

    if args.central_charge:
        ok = run_central_charge()
    elif args.symbol_check:
        ok = run_symbols()
    elif args.closure:
        ok = run_closure()
    elif args.automorphism:
        ok = run_automorphism(args.mutant)
    elif args.verify_n4:
        ok = run_central_charge()
        ok = run_weights() and ok
        ok = run_closure() and ok
        ok = run_automorphism(False) and ok
    else:
        raise ConfigError("choose one of --verify-n4 --central-charge "
                          "--symbol-check --closure --automorphism")
    if not ok and "first_violation" not in payload:
        payload["first_violation"] = "see report body"
    payload["pass"] = ok
    _emit(payload, args.format, args.out)
    return 0 if ok else 1


def cmd_fock(args):
    n = args.n
    sections = vertex.standard_sections(n)
    payload = {"command": "fock", "n": n}
    ok = True
    if args.gram:
        reports = fock.gram_reports_up_to(n, args.max_weight)
        payload["table"] = [
            {"weight": qstr(r.weight), "bosons": r.sector[0],
             "fermion_parity": r.sector[1], "dim": len(r.basis),
             "positive_definite": r.positive_definite}
            for r in reports]
        payload["reports"] = [r.as_dict() for r in reports]
        bad = [r for r in reports if not r.positive_definite]
        if bad:
            ok = False
            payload["first_violation"] = ("weight %s sector %s"
                                          % (qstr(bad[0].weight),
                                             bad[0].sector))
    elif args.adjoints:
        rules = fock.default_adjoint_rules(sections)
        names = ["Q", "G", "J", "L", "D", "E"]
        overrides = {}
        for spec_text in args.rule or []:
            name, rule = fock.parse_rule(spec_text, sections)
            overrides[name] = rule
        rows = []
        for name in names:
            rule = overrides.get(name, rules[name])
            passed = fock.adjoint_check(getattr(sections, name), rule,
                                        args.max_weight, n)
            rows.append({"name": name,
                         "rule": "override" if name in overrides
                                 else "standard",
                         "pass": passed})
            if not passed:
                ok = False
                payload.setdefault("first_violation",
                                   "adjoint rule for %s" % name)
        payload["table"] = rows
    else:
        raise ConfigError("choose --gram or --adjoints")
    payload["pass"] = ok
    _emit(payload, args.format, args.out)
    return 0 if ok else 1


def cmd_report(args):
    """Aggregate run of every suite at desk-scale windows."""
    n = args.n
    rng = random.Random(args.seed)
    algebra = lie.lie_basis("sl", n)
    sections = vertex.standard_sections(n)
    out = {"command": "report", "n": n, "seed": args.seed}
    ok = True

    dims = {}
    for m in (1, 2, 3):
        pre = presets.tj_bundle(n, m)
        reps = invariants.invariant_dim_table(
            pre.alphabet, algebra, m, range(1, m + 3), {"ystar": 1})
        dims[str(m)] = [r.dim for r in reps]
        ok = ok and sum(r.dim for r in reps) == m
    out["jet_vector_field_dims"] = dims

    pre = presets.cdr_fibre(n, 3)
    eight = presets.eight_invariants(pre.alphabet)
    out["eight_invariants_pass"] = all(
        not invariants.check_invariant(e, algebra, 3) for e in eight)
    ok = ok and out["eight_invariants_pass"]

    c = vertex.virasoro_central_charge(sections.Ltilde)
    out["central_charge"] = qstr(c) if c is not None else None
    ok = ok and c == 3 * n

    gram = fock.gram_reports_up_to(n, 2)
    out["gram_positive_definite"] = all(r.positive_definite for r in gram)
    ok = ok and out["gram_positive_definite"]

    rules = fock.default_adjoint_rules(sections)
    adj = {name: fock.adjoint_check(getattr(sections, name), rules[name],
                                    1, n)
           for name in ("Q", "G", "J", "L", "D", "E")}
    out["adjoint_rules"] = adj
    ok = ok and all(adj.values())

    samples = args.samples
    prop = {
        "skew_symmetry": properties.sample_skew_symmetry(rng, n, samples),
        "derivative_axioms": properties.sample_derivative_axioms(
            rng, n, samples),
        "commutator": properties.sample_commutator(rng, n, samples),
        "ring_leibniz": properties.sample_ring_leibniz(rng, samples),
        "jet_d_commutation": properties.sample_jet_d_commutation(
            rng, samples),
        "memoization": properties.sample_memoization(rng, n, samples),
    }
    out["property_suites"] = prop
    ok = ok and all(prop.values())

    out["pass"] = ok
    _emit(out, args.format, args.out)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jetva",
        description="exact verification suites for jet-algebra invariants "
                    "and the free-field vertex superalgebra")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("invariants", help="jet invariant suites")
    p.add_argument("--preset", choices=("tj-bundle", "cdr-fibre"))
    p.add_argument("--config", help="declarative ring/algebra file")
    p.add_argument("--algebra", help="sl2, sl3, sp4, ...")
    p.add_argument("--jet", type=int, help="truncation order m")
    p.add_argument("--le", type=int, help="degree of the preset's even "
                   "module family (ystar / beta)")
    p.add_argument("--degree", action="append",
                   help="family=degree constraint, repeatable")
    p.add_argument("--weights", help="window like 1..4")
    p.add_argument("--minimal", action="store_true",
                   help="use the minimal generator set")
    p.add_argument("--check-eight", action="store_true")
    p.add_argument("--generation", action="store_true")
    p.add_argument("--lemma-cri", action="store_true")
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("--expect-total", type=int)
    p.add_argument("--expect-dims")
    common(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("vertex", help="vertex algebra suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-n4", action="store_true")
    p.add_argument("--central-charge", action="store_true")
    p.add_argument("--symbol-check", action="store_true")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--automorphism", action="store_true")
    p.add_argument("--mutant", action="store_true",
                   help="negate only D in the automorphism check")
    p.add_argument("--max-weight", type=int, default=4)
    common(p)
    p.set_defaults(fn=cmd_vertex)

    p = sub.add_parser("fock", help="Hermitian form suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gram", action="store_true")
    p.add_argument("--adjoints", action="store_true")
    p.add_argument("--rule", action="append",
                   help="override like 'Q:-n' (fails by design)")
    p.add_argument("--max-weight", type=int, default=2)
    common(p)
    p.set_defaults(fn=cmd_fock)

    p = sub.add_parser("report", help="aggregate all suites")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    common(p)
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, JetvaError, OSError, ValueError) as exc:
        sys.stderr.write("jetva: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
