"""Command-line front end.

Exit codes: 0 success / property holds, 1 property violated (witness in
the report), 2 usage or format error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog, suites
from .errors import BudgetExceeded, MvwError
from .factorization import (
    WordHomomorphism,
    align,
    l_factorize,
    quotient_homomorphism,
    r_factorize,
    substitution_chain,
    verify_lemma5,
)
from .languages import language_in_join, load_dfa, minimize, syntactic_monoid
from .monoid_core import (
    divides,
    enumerate_monoids,
    green,
    is_l_trivial,
    is_r_trivial,
    load_monoid,
)
from .omega_terms import (
    ASSIGNMENT_CAP,
    check_lemma3,
    check_lemma4,
    in_L,
    in_R,
    in_W,
    parse_identity,
    resolve_identity,
    satisfies_identity,
)
from .word_congruence import (
    CLASS_CAP,
    Alphabet,
    build_quotient,
    class_cap_from_env,
    l_signature,
    mode_equiv,
    r_signature,
)

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- helpers


def _monoid(spec: str):
    if not os.path.exists(spec) and spec in catalog.NAMED:
        return catalog.NAMED[spec]()
    return load_monoid(spec)


def _labels(m, xs):
    return [m.label(x) for x in xs]


def _homomorphism(m, mapping: str) -> WordHomomorphism:
    pairs = {}
    for item in mapping.split(","):
        if "=" not in item:
            raise UsageError(f"--map entries look like letter=element, got {item!r}")
        letter, element = item.split("=", 1)
        letter = letter.strip()
        if len(letter) != 1 or letter in pairs:
            raise UsageError(f"bad letter {letter!r} in --map")
        pairs[letter] = element.strip()
    return WordHomomorphism.from_mapping(m, pairs)


def _encode(phi: WordHomomorphism, word: str):
    return phi.alphabet.encode("" if word == "1" else word)


def _class_cap(args) -> int:
    return args.class_cap if args.class_cap is not None else class_cap_from_env(CLASS_CAP)


# ---------------------------------------------------------------- verbs


def cmd_monoid_check(args):
    m = _monoid(args.file)
    if args.identity_file:
        with open(args.identity_file, encoding="utf-8") as fh:
            identity = parse_identity(fh.read().strip())
    else:
        identity = resolve_identity(args.identity)
    verdict = satisfies_identity(m, identity, args.assignment_cap)
    report = {"identity": str(identity), "size": m.size,
              "result": "satisfies" if verdict.holds else "violates"}
    if not verdict.holds:
        report["witness"] = {k: m.label(x) for k, x in verdict.counterexample.items()}
    return report, EXIT_OK if verdict.holds else EXIT_VIOLATED


def cmd_monoid_green(args):
    m = _monoid(args.file)
    g = green(m)
    return {
        "size": m.size,
        "rClasses": [_labels(m, c) for c in g.r_classes],
        "lClasses": [_labels(m, c) for c in g.l_classes],
        "rTrivial": is_r_trivial(m),
        "lTrivial": is_l_trivial(m),
    }, EXIT_OK


def cmd_monoid_variety(args):
    m = _monoid(args.file)
    report = {"size": m.size, "inR": in_R(m), "inL": in_L(m), "inW": in_W(m),
              "rTrivial": is_r_trivial(m), "lTrivial": is_l_trivial(m),
              "lemma3Violations": [_labels(m, t) for t in check_lemma3(m)][:20],
              "lemma4Violations": [[v.side] + _labels(m, v[1:]) for v in check_lemma4(m)][:20]}
    return report, EXIT_OK


def cmd_monoid_enumerate(args):
    ms = enumerate_monoids(args.order, cap=args.cap)
    return {"order": args.order, "count": len(ms),
            "monoids": [[list(r) for r in m.table] for m in ms]}, EXIT_OK


def cmd_monoid_divides(args):
    m, n = _monoid(args.file), _monoid(args.by)
    w = divides(m, n, cap=args.division_cap)
    if w is None:
        return {"divides": False}, EXIT_VIOLATED
    return {"divides": True, "submonoid": _labels(n, w.submonoid),
            "map": {n.label(s): m.label(x) for s, x in w.homomorphism.items()}}, EXIT_OK


def cmd_words_equiv(args):
    alpha = Alphabet(args.alphabet)
    u, v = alpha.encode(args.u), alpha.encode(args.v)
    same = mode_equiv(u, v, args.n, args.mode)
    return {"u": args.u, "v": args.v, "level": args.n, "mode": args.mode,
            "result": "equivalent" if same else "inequivalent"}, EXIT_OK if same else EXIT_VIOLATED


def cmd_words_signature(args):
    alpha = Alphabet(args.alphabet)
    u = alpha.encode(args.word)
    sig = (r_signature if args.mode == "R" else l_signature)(u, args.n)
    return {"word": args.word, "level": args.n, "mode": args.mode,
            "signature": sig.describe(alpha)}, EXIT_OK


def cmd_quotient_build(args):
    q = build_quotient(Alphabet(args.alphabet), args.n, args.mode, _class_cap(args))
    return q.to_dict(), EXIT_OK


def _factorization_dict(phi, f):
    return {"kind": f.kind, "k": f.k, "markers": list(f.markers),
            "markerLetters": phi.show(f.marker_letters),
            "blocks": [phi.show(b) for b in f.blocks]}


def cmd_factorize(args):
    m = _monoid(args.monoid)
    phi = _homomorphism(m, args.map)
    w = _encode(phi, args.word)
    f = (r_factorize if args.kind == "R" else l_factorize)(phi, w)
    return _factorization_dict(phi, f), EXIT_OK


def _aligned(args):
    m = _monoid(args.monoid)
    phi = _homomorphism(m, args.map)
    u, v = _encode(phi, args.u), _encode(phi, args.v)
    n = args.n if args.n is not None else 2 * m.size
    af = align(phi, u, v, n)
    report = {
        "level": n,
        "rFactorization": _factorization_dict(phi, r_factorize(phi, u)),
        "lFactorization": _factorization_dict(phi, l_factorize(phi, v)),
        "skeleton": {"ell": af.length, "markers": phi.show(af.marker_letters),
                     "origins": list(af.origins),
                     "s": [phi.show(b) for b in af.s_blocks],
                     "t": [phi.show(b) for b in af.t_blocks]},
        "skeletonValid": verify_lemma5(phi, af).ok,
    }
    return m, phi, af, report


def cmd_align(args):
    _, _, _, report = _aligned(args)
    return report, EXIT_OK


def cmd_chain(args):
    m, phi, af, report = _aligned(args)
    steps = substitution_chain(phi, af)
    report["chain"] = [{"word": phi.show(s.word), "image": m.label(s.image)} for s in steps]
    report["verdict"] = "image preserved"
    return report, EXIT_OK


def cmd_quotient_hom(args):
    m = _monoid(args.monoid)
    gens = [g.strip() for g in args.generators.split(",") if g.strip()] if args.generators else []
    verdict = quotient_homomorphism(m, gens, args.n, _class_cap(args))
    return verdict.to_dict(), EXIT_OK if verdict.is_quotient else EXIT_VIOLATED


def cmd_dfa_classify(args):
    d = load_dfa(args.file)
    report = language_in_join(d).to_dict()
    m, _ = syntactic_monoid(d)
    report["minimalStates"] = minimize(d).states
    report["elements"] = list(m.labels) if m.labels else m.size
    return report, EXIT_OK if report["inW"] else EXIT_VIOLATED


def cmd_verify(args):
    start = time.perf_counter()
    if args.suite == "lemmas":
        checks = suites.lemmas(args.max_order)
    elif args.suite == "congruence":
        checks = suites.congruence(args.max_len, args.samples, args.seed)
    else:
        checks = suites.theorem(args.max_order, args.pairs, args.seed)
    ok = all(c.passed for c in checks)
    report = {"suite": args.suite, "passed": ok, "checks": [c.to_dict() for c in checks]}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report, EXIT_OK if ok else EXIT_VIOLATED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--class-cap", type=int, default=None,
                        help="class budget (default: $MVW_BUDGET_CLASSES or 10^6)")
    common.add_argument("--assignment-cap", type=int, default=ASSIGNMENT_CAP)
    common.add_argument("--division-cap", type=int, default=10)

    parser = _Parser(prog="mvw", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    monoid = verbs.add_parser("monoid").add_subparsers(dest="action", required=True,
                                                       parser_class=_Parser)
    p = monoid.add_parser("check", parents=[common])
    p.add_argument("--file", required=True, help="monoid JSON file or a catalog name")
    p.add_argument("--identity", default="W", help="R, L, W or 'lhs = rhs'")
    p.add_argument("--identity-file")
    p.set_defaults(func=cmd_monoid_check)
    for name, func in (("green", cmd_monoid_green), ("variety", cmd_monoid_variety)):
        p = monoid.add_parser(name, parents=[common])
        p.add_argument("--file", required=True)
        p.set_defaults(func=func)
    p = monoid.add_parser("enumerate", parents=[common])
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_monoid_enumerate)
    p = monoid.add_parser("divides", parents=[common])
    p.add_argument("--file", required=True, help="the candidate divisor")
    p.add_argument("--by", required=True, help="the ambient monoid")
    p.set_defaults(func=cmd_monoid_divides)

    words = verbs.add_parser("words").add_subparsers(dest="action", required=True,
                                                     parser_class=_Parser)
    p = words.add_parser("equiv", parents=[common])
    p.add_argument("--alphabet", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=["R", "L", "RL"], default="R")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_words_equiv)
    p = words.add_parser("signature", parents=[common])
    p.add_argument("--alphabet", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=["R", "L"], default="R")
    p.add_argument("word")
    p.set_defaults(func=cmd_words_signature)

    quotient = verbs.add_parser("quotient").add_subparsers(dest="action", required=True,
                                                           parser_class=_Parser)
    p = quotient.add_parser("build", parents=[common])
    p.add_argument("--alphabet", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=["R", "L", "RL"], default="RL")
    p.set_defaults(func=cmd_quotient_build)

    p = verbs.add_parser("factorize", parents=[common])
    p.add_argument("--monoid", required=True)
    p.add_argument("--map", required=True, help="letter=element pairs, e.g. a=x,b=y")
    p.add_argument("--word", required=True)
    p.add_argument("--kind", choices=["R", "L"], default="R")
    p.set_defaults(func=cmd_factorize)
    for name, func in (("align", cmd_align), ("chain", cmd_chain)):
        p = verbs.add_parser(name, parents=[common])
        p.add_argument("--monoid", required=True)
        p.add_argument("--map", required=True)
        p.add_argument("-n", type=int, default=None, help="level (default 2|M|)")
        p.add_argument("u")
        p.add_argument("v")
        p.set_defaults(func=func)

    theorem = verbs.add_parser("theorem").add_subparsers(dest="action", required=True,
                                                         parser_class=_Parser)
    p = theorem.add_parser("quotient-hom", parents=[common])
    p.add_argument("--monoid", required=True)
    p.add_argument("--generators", default="", help="comma-separated element labels")
    p.add_argument("-n", type=int, default=None, help="level (default 2|M|)")
    p.set_defaults(func=cmd_quotient_hom)

    dfa = verbs.add_parser("dfa").add_subparsers(dest="action", required=True,
                                                 parser_class=_Parser)
    p = dfa.add_parser("classify", parents=[common])
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_dfa_classify)

    p = verbs.add_parser("verify", parents=[common])
    p.add_argument("--suite", choices=sorted(suites.SUITES), required=True)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--pairs", type=int, default=4, help="pairs per monoid (theorem suite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    p.set_defaults(func=cmd_verify)
    return parser


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    fmt, output = "json", None
    try:
        args = parser.parse_args(argv)
        fmt, output = args.format, args.output
        report, code = args.func(args)
    except UsageError as exc:
        report, code = {"error": "usage", "message": str(exc)}, EXIT_USAGE
    except BudgetExceeded as exc:
        report = {"error": "budget", "kind": type(exc).__name__, "message": str(exc),
                  "found": exc.found}
        code = EXIT_BUDGET
    except (MvwError, OSError, ValueError) as exc:
        report, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_USAGE
    report = {"exitCode": code, **report}
    text = _render(report, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
