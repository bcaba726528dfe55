"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error (invalid index, degenerate
twist, ...), 2 on a parse error (bad arguments or an unreadable knot file).
"""

import argparse
import sys

from . import load_knot
from .assembly import (
    apply_gluck,
    build_closed_complex,
    build_complement_complex,
    dump,
    h1,
    sphere_certificate,
    vankampen_pi1,
)
from .errors import MissingPeripheral, ParseError, TwistSpinError
from .fpgroup import format_presentation
from .gluing import IDENTITY_NAMES, check_identities, coprime_pairs, proof_kit
from .orbitdata import (
    STRATEGIES,
    Site,
    TwinState,
    classify,
    gluck_rewrite,
    reduce_to_base,
    twin_partner,
    validate_index,
)


class KnotFileError(Exception):
    pass


def parse_knot_file(path):
    try:
        return load_knot(path)
    except OSError as exc:
        raise KnotFileError(f"cannot read knot file {path!r}: {exc.strerror}") from exc
    except (ParseError, MissingPeripheral) as exc:
        raise KnotFileError(f"{path}: {exc}") from exc


def _index(args):
    return validate_index(args.m, args.n)


def cmd_twin(args, out):
    idx = _index(args)
    out(f"{idx} | partner {twin_partner(idx)}")


def cmd_gluck(args, out):
    idx = _index(args)
    site = Site.SECOND if args.along == "partner" else Site.FIRST
    state = gluck_rewrite(TwinState.of(idx), site)
    out(f"{idx} -> {state.first}")
    out(f"twin {TwinState.of(idx)} -> {state}")


def cmd_reduce(args, out):
    for line in reduce_to_base(_index(args), args.strategy).lines():
        out(line)


def cmd_verify(args, out):
    if args.max < 1:
        raise TwistSpinError("--max must be at least 1")
    passed = dict.fromkeys(IDENTITY_NAMES, 0)
    failed = []
    pairs = 0
    for m, n in coprime_pairs(args.max):
        pairs += 1
        for name, ok in check_identities(proof_kit(m, n)).items():
            if ok:
                passed[name] += 1
            else:
                failed.append(f"({m},{n}) {name}")
    out(f"{'identity':<16} {'result':<6} pairs")
    for name in IDENTITY_NAMES:
        verdict = "pass" if passed[name] == pairs else "FAIL"
        out(f"{name:<16} {verdict:<6} {passed[name]}/{pairs}")
    for line in failed:
        out(f"failed {line}")
    if failed:
        out(f"{len(failed)} identity failures ({pairs} pairs)")
        return 1
    out(f"all identities hold ({pairs} pairs)")
    return 0


def _complex(args, K):
    idx = _index(args)
    if getattr(args, "gluck", None):
        return apply_gluck(build_closed_complex(K, idx.m, idx.n), Site(args.gluck))
    if getattr(args, "closed", False):
        return build_closed_complex(K, idx.m, idx.n)
    return build_complement_complex(K, idx.m, idx.n)


def cmd_pi1(args, out):
    c = _complex(args, parse_knot_file(args.knot))
    out(format_presentation(vankampen_pi1(c, simplified=not args.raw)))


def cmd_h1(args, out):
    c = _complex(args, parse_knot_file(args.knot))
    out(f"H1({c.title}) = {h1(c)}")


def cmd_complex(args, out):
    out(dump(_complex(args, parse_knot_file(args.knot))))


def cmd_classify(args, out):
    out(str(classify(_index(args), args.nontrivial)))


def cmd_certify(args, out):
    args.closed = True
    c = _complex(args, parse_knot_file(args.knot))
    report = sphere_certificate(c, args.kmax, args.max_gens)
    for line in report.lines():
        out(line)


def _add_index(p):
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)


def _add_which(p, default_closed=False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--closed", action="store_true", help="the closed S^4 decomposition")
    g.add_argument("--complement", action="store_true", help="the knot exterior (default)")
    g.add_argument("--gluck", choices=[s.value for s in Site],
                   help="the closed complex after a Gluck twist at this site")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistspin",
        description="Index, gluing-matrix and knot-group calculus for branched twist spins.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("twin", help="twin partner of K^{m,n}")
    _add_index(p)
    p.set_defaults(func=cmd_twin)

    p = sub.add_parser("gluck", help="index after a Gluck twist")
    p.add_argument("--along", choices=["partner", "self"], required=True)
    _add_index(p)
    p.set_defaults(func=cmd_gluck)

    p = sub.add_parser("reduce", help="Euclidean reduction trace to some (k,1)")
    p.add_argument("--strategy", choices=STRATEGIES, default="nearest")
    _add_index(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-matrices", help="check the gluing-matrix identities")
    p.add_argument("--max", type=int, required=True, metavar="R")
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("pi1", cmd_pi1, "van Kampen presentation"),
        ("h1", cmd_h1, "first homology"),
        ("complex", cmd_complex, "text dump of the piece complex"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--knot", required=True, metavar="FILE",
                       help="knot file path or bundled name (unknot, trefoil, figure8)")
        _add_index(p)
        _add_which(p)
        if name == "pi1":
            p.add_argument("--raw", action="store_true", help="skip Tietze simplification")
        p.set_defaults(func=func)

    p = sub.add_parser("classify", help="odd-m inequivalence criterion")
    _add_index(p)
    p.add_argument("--nontrivial", action="store_true",
                   help="assert that K^{m,n} is non-trivial")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="H1 and S_k hom-count evidence for S^4")
    p.add_argument("--knot", required=True, metavar="FILE")
    _add_index(p)
    p.add_argument("--gluck", choices=[s.value for s in Site])
    p.add_argument("--kmax", type=int, default=4, choices=range(1, 7), metavar="K")
    p.add_argument("--max-gens", type=int, default=3,
                   help="skip hom counts above this many generators (default 3)")
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def out(line):
        stdout.write(line + "\n")

    try:
        return args.func(args, out) or 0
    except KnotFileError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except TwistSpinError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
