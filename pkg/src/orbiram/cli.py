"""Command-line front end.

Exit codes: 0 computed and every consistency check passed, 1 a residual
or consistency check failed, 2 invalid input.  Geometricity verdicts are
results, so NotGeometric still exits 0.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import bundles as bd
from . import covers, genus, geometric
from . import localfield as lf
from .errors import OrbiramError
from .orbifold import branch_to_dict, morphism_from_dict, orbifold_from_dict

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    pass


def load_document(source: str) -> dict:
    """Read a path, '-' for stdin, or an inline JSON object."""
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if doc.get("v") != SCHEMA_VERSION:
        raise InputError(f'schema version field "v": {SCHEMA_VERSION} is required')
    return doc


def exact(obj):
    """Numbers become exact rational strings; containers are converted recursively."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [exact(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _profile_report(P):
    filt = lf.lower_filtration(P)
    return {
        "profile": str(P),
        "degree": P.degree,
        "degram": lf.degram(P),
        "hilbert_sum": lf.hilbert_sum(filt),
        "lower_filtration": [list(t) for t in filt],
    }


def cmd_degram(doc, args):
    if "profile" in doc:
        P = lf.profile_from_dict(doc["profile"], doc.get("p"))
    else:
        P = lf.profile_from_dict({k: v for k, v in doc.items() if k != "v"})
    report = _profile_report(P)
    ok = report["degram"] == report["hilbert_sum"]
    if "sub" in doc:
        S = lf.profile_from_dict(doc["sub"], P.p)
        tower = lf.degram_relative(S, P)
        direct = lf.relative_hilbert_sum(S, P)
        report["relative"] = {"sub": str(S), "index": P.degree // S.degree,
                              "tower": tower, "hilbert_sum": direct}
        ok = ok and tower == direct
    return report, ok


def cmd_genus(doc, args):
    O = orbifold_from_dict(doc)
    g = genus.orbifold_genus(O)
    contrib = {x: genus.profile_genus_contribution(P) for x, P in O.branch.assignment}
    return {"curve_genus": O.curve.genus, "branch": str(O.branch), "contributions": contrib, "genus": g}, True


def _cover_report(spec):
    a = covers.analyze(spec)
    report = {
        "cover": covers.spec_to_dict(spec),
        "genus": a.genus,
        "degree": a.degree,
        "branch": {x: {"e": b.e, "profile": str(b.profile), "local_different": b.local_different}
                   for x, b in a.branch},
        "etale_identity_residual": covers.etale_identity_residual(spec),
    }
    checks = [report["etale_identity_residual"]]
    for target in ("B_f", "O"):
        m = covers.cover_descriptor(a, target)
        rec = covers.galois_record(a, target)
        sub = {
            "rh_residual": genus.rh_residual(m),
            "classical_residual": genus.classical_rh_residual(m),
            "orbifold_hilbert_residual": genus.orbifold_hilbert_rh_residual(rec),
            "divisor_degree": genus.ramification_divisor(m).degree,
        }
        if target == "O":
            sub["hilbert_residual"] = genus.hilbert_rh_residual(rec)
        checks += [v for k, v in sub.items() if k.endswith("residual")]
        report[f"target_{target}"] = sub
    return report, all(c == 0 for c in checks)


def cmd_rh_check(doc, args):
    if "family" in doc:
        return _cover_report(covers.spec_from_dict(doc))
    m = morphism_from_dict(doc)
    report = genus.rh_report(m)
    ok = report["valid"] and report["residual"] == 0 and report["classical_residual"] == 0
    return report, ok


def cmd_geometric(doc, args):
    O = orbifold_from_dict(doc)
    v = geometric.geometric_verdict(O)
    report = {
        "status": v.status.value,
        "rule": v.rule,
        "chain": list(v.chain),
        "citation": v.citation,
        "decomposition": [branch_to_dict(P) for P in v.decomposition],
        "lower_bound": branch_to_dict(geometric.geometric_lower_bound(O)),
    }
    return report, True


def cmd_oracle(doc, args):
    family = args.family
    if family not in ("kummer", "artin_schreier"):
        raise InputError("--family must be kummer or artin_schreier")
    if args.trials < 1:
        raise InputError("--trials must be positive")
    seeds = random.Random(args.seed)
    trials = []
    for i in range(args.trials):
        spec = covers.random_cover_spec(family, seeds.getrandbits(64), args.q)
        a = covers.analyze(spec)
        trials.append({"index": i, "cover": covers.spec_to_dict(spec), "genus": a.genus,
                       "residual": covers.etale_identity_residual(spec)})
    zero = sum(1 for t in trials if t["residual"] == 0)
    report = {"family": family, "seed": args.seed, "trials": args.trials, "zero_residuals": zero,
              "results": trials}
    return report, zero == args.trials


def cmd_bundle_check(doc, args):
    report, ok = {}, True
    if "ledger" in doc:
        items = doc["ledger"] if isinstance(doc["ledger"], list) else [doc["ledger"]]
        ledgers = [bd.ledger_from_dict(x) for x in items]
        report["ledger"] = [{**bd.ledger_to_dict(L), "orb_degree": L.orb_degree, "orb_slope": L.orb_slope}
                            for L in ledgers]
    if "projection" in doc:
        pd = doc["projection"]
        if not isinstance(pd, dict) or not isinstance(pd.get("dcov"), int):
            raise InputError("'projection' needs 'V', 'F' and an integer 'dcov'")
        V, F = bd.ledger_from_dict(pd.get("V")), bd.ledger_from_dict(pd.get("F"))
        lhs, rhs = bd.projection_formula_sides(V, F, pd["dcov"])
        res = bd.projection_formula_residual(V, F, pd["dcov"])
        report["projection"] = {"lhs": bd.ledger_to_dict(lhs), "rhs": bd.ledger_to_dict(rhs), "residual": list(res)}
        ok = ok and res == (0, 0)
    if "equivariant" in doc:
        b = bd.equivariant_from_dict(doc["equivariant"])
        valid = bd.cocycle_validate(b)
        sub = {"group": b.gset.group.name, "rank": b.rank, "cocycle_valid": valid}
        if valid:
            pf = bd.pushforward_invariants(b)
            sub["invariant_ranks"] = list(pf.rank_by_base)
            sub["witness_isomorphism"] = pf.witness_is_isomorphism(b.field)
        report["equivariant"] = sub
        ok = ok and valid
    if not report:
        raise InputError("bundle document needs 'ledger', 'projection' or 'equivariant'")
    return report, ok


COMMANDS = {
    "degram": cmd_degram,
    "genus": cmd_genus,
    "rh-check": cmd_rh_check,
    "geometric": cmd_geometric,
    "oracle": cmd_oracle,
    "bundle-check": cmd_bundle_check,
}


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines += _text(item, indent + 1)
                lines.append("")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def _summary(verb, report):
    if verb == "oracle":
        return [f"{report['zero_residuals']}/{report['trials']} residuals zero"]
    return _text({k: v for k, v in report.items()})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbiram", description="Ramification and orbifold genus toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("input", nargs="?", help="JSON path, '-' for stdin, or an inline JSON object")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--q", type=int, default=None, help="field size for oracle covers")
    parser.add_argument("--family", default="artin_schreier", help="kummer or artin_schreier")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        if args.verb == "oracle":
            doc = None
        elif args.input is None:
            raise InputError(f"{args.verb} needs an input document")
        else:
            doc = load_document(args.input)
        report, ok = COMMANDS[args.verb](doc, args)
    except (InputError, OrbiramError, KeyError, TypeError, ValueError, AttributeError) as exc:
        # malformed documents surface as lookup or type errors deep in the parsers
        code = getattr(exc, "code", "INVALID_INPUT")
        msg = str(exc)
        if args.format == "json":
            print(json.dumps({"error": {"code": code, "message": msg}}, sort_keys=True), file=stdout)
        print(f"error: {msg}", file=stderr)
        return EXIT_INVALID
    report = {"v": SCHEMA_VERSION, "command": args.verb, "ok": ok, **report}
    if args.format == "json":
        print(json.dumps(exact(report), sort_keys=True, indent=2), file=stdout)
    else:
        print("\n".join(_summary(args.verb, report)), file=stdout)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
