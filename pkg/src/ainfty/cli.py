"""Command line interface: ``ainfty cohomology|check|trivialize|bar-check FILE``.

Exit codes: 0 when every check passes, 1 for a mathematical negative (a
nonzero residual or an obstruction), 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .ainf import (
    bar_differential,
    morphism_residuals,
    stasheff_residuals,
    structure_to_twisting,
    trivialize,
)
from .cohomology import HARRISON, HOCHSCHILD, cohomology_data, degree_range

N_MAX_LIMIT = 8
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(out, fmt, record: dict, text: str):
    if fmt == "machine":
        out.write(json.dumps(record, separators=(",", ":")) + "\n")
    else:
        out.write(text + "\n")


def _load(path):
    try:
        return io.load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except io.DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _structure(doc, path):
    if isinstance(doc, io.AlgebraDocument):
        raise InputError(f"{path}: expected a structure document, got an algebra")
    return doc.structure


def cmd_cohomology(args, out) -> int:
    doc = _load(args.file)
    A = doc.algebra
    n_max = args.n_max
    if n_max > N_MAX_LIMIT:
        raise InputError(f"--n-max {n_max} exceeds the supported limit {N_MAX_LIMIT}")
    if n_max < args.n_min:
        raise InputError("--n-max is below --n-min")
    if args.theory == HARRISON and not A.commutative:
        raise InputError("Harrison cohomology needs an algebra flagged commutative")
    name = "Hoch" if args.theory == HOCHSCHILD else "Harr"
    _emit(out, args.format, {"n_max": n_max, "theory": args.theory, "field": str(A.field)},
          f"{name}^{{n,k}} over {A.field}, n = {args.n_min}..{n_max} (up to truncation {n_max})")
    for n in range(args.n_min, n_max + 1):
        ks = [2 - n] if args.diagonal else list(degree_range(A, None, n))
        for k in ks:
            d = cohomology_data(A, None, n, k, args.theory)
            if not args.diagonal and d.cochains == 0:
                continue
            _emit(out, args.format, {"n": n, "k": k, "dim": d.dim}, f"n={n} k={k} dim={d.dim}")
    return EXIT_OK


def _report_residuals(out, fmt, residuals, label) -> int:
    bad = 0
    for n, r in residuals:
        nnz = r.nnz()
        bad += nnz > 0
        _emit(out, fmt, {"arity": n, "residual_norm0": nnz},
              f"{label} arity {n}: {'ok' if nnz == 0 else f'{nnz} nonzero entries'}")
    return EXIT_OK if bad == 0 else EXIT_NEGATIVE


def cmd_check(args, out) -> int:
    doc = _load(args.file)
    if isinstance(doc, io.EquivalenceDocument):
        F = doc.morphism()
        code = _report_residuals(out, args.format, morphism_residuals(F), "morphism identity")
    else:
        S = _structure(doc, args.file)
        code = _report_residuals(out, args.format, stasheff_residuals(S), "Stasheff identity")
    if args.format == "text":
        out.write(("PASS" if code == EXIT_OK else "FAIL") + "\n")
    return code


def cmd_trivialize(args, out) -> int:
    doc = _load(args.file)
    S = _structure(doc, args.file)
    bad = [n for n, r in stasheff_residuals(S) if not r.is_zero()]
    if bad:
        _emit(out, args.format, {"error": "not a valid structure", "arity": bad[0]},
              f"input fails the Stasheff identity at arity {bad[0]}")
        return EXIT_NEGATIVE
    a = structure_to_twisting(S)
    result = trivialize(a)
    if not result.succeeded:
        cls = result.obstruction
        n, k = cls.bidegree
        _emit(out, args.format,
              {"obstruction": {"n": n, "k": k}, "theory": result.theory, "truncation": result.truncation,
               "representative": io.cochain_entries(cls.representative)},
              f"obstruction in bidegree ({n}, {k}) [{result.theory}], up to truncation {result.truncation}\n"
              + json.dumps(io.cochain_entries(cls.representative), indent=2))
        return EXIT_NEGATIVE
    text = io.dumps(io.equivalence_obj(S, result.theory, result.p))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        _emit(out, args.format, {"trivialized": True, "truncation": result.truncation,
                                 "components": {str(i): c.nnz() for i, c in sorted(result.p.items())}},
              f"equivalent to the trivial structure up to truncation {result.truncation}; "
              f"wrote {args.output}")
    else:
        out.write(text)
    return EXIT_OK


def cmd_bar_check(args, out) -> int:
    doc = _load(args.file)
    S = _structure(doc, args.file)
    length = S.truncation + 1 if args.n_max is None else args.n_max
    if length > N_MAX_LIMIT:
        raise InputError(f"word length {length} exceeds the supported limit {N_MAX_LIMIT}")
    bar = bar_differential(S, length)
    failure = bar.first_square_failure()
    coder = bar.is_coderivation(min(length, 4))
    ok = failure is None and coder
    _emit(out, args.format, {"check": "d_squared", "length": length, "first_failure": failure},
          f"d o d = 0 on words of length <= {length}: " + ("yes" if failure is None else f"no (first at length {failure})"))
    _emit(out, args.format, {"check": "coderivation", "ok": coder}, f"d is a coderivation: {'yes' if coder else 'no'}")
    if S.commutative:
        shuf = bar.is_shuffle_derivation(min(length, 4))
        ok = ok and shuf
        _emit(out, args.format, {"check": "shuffle_derivation", "ok": shuf},
              f"d is a derivation of the shuffle product: {'yes' if shuf else 'no'}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ainfty", description="Hochschild/Harrison cohomology and A-infinity structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theory=False):
        p.add_argument("file", help="JSON algebra or structure document")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        if theory:
            p.add_argument("--theory", choices=(HOCHSCHILD, HARRISON), default=HOCHSCHILD)

    p = sub.add_parser("cohomology", help="bigraded cohomology dimensions")
    common(p, theory=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--diagonal", action="store_true", help="only k = 2 - n")
    p.set_defaults(run=cmd_cohomology)

    p = sub.add_parser("check", help="Stasheff (or morphism) residuals per arity")
    common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("trivialize", help="trivialize a structure or report the obstruction")
    common(p)
    p.add_argument("--output", "-o", help="write the equivalence document here")
    p.set_defaults(run=cmd_trivialize)

    p = sub.add_parser("bar-check", help="check d o d = 0 and the coderivation property")
    common(p)
    p.add_argument("--n-max", type=int, default=None, help="longest word checked (default N + 1)")
    p.set_defaults(run=cmd_bar_check)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
