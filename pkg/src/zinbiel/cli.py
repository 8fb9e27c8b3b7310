"""Command-line interface.

Exit codes: 0 the property holds / success, 1 it fails (violations found,
fingerprints differ, system not refuted), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra as alg
from .constraints import InfeasibilityCertificate, prove_second_type_impossible
from .generators import (
    FamilyParams,
    InvalidParams,
    OutOfRange,
    exceeds_proof_bound,
    make_family,
    make_null_filiform,
    make_split,
    validate_params,
)
from .invariants import (
    Degenerate,
    SamplerConfig,
    characteristic_sequence,
    fingerprint,
    natural_gradation,
)
from .linalg import NotNilpotent

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _sampler(args) -> SamplerConfig:
    kw = {"support": args.cs_support, "samples": args.cs_samples}
    if args.cs_seed is not None:
        kw["seed"] = args.cs_seed
    return SamplerConfig.from_env(**kw)


def _load(path: str) -> alg.Algebra:
    try:
        if path == "-":
            return alg.from_json(sys.stdin.read())
        return alg.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except alg.AlgebraFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(A: alg.Algebra, args, out) -> None:
    if args.out:
        alg.dump(A, args.out)
    else:
        out.write(alg.to_json(A))
    if args.table:
        out.write(alg.format_table(A) + "\n")


def _family_params(args) -> FamilyParams:
    if args.params:
        text = args.params
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            return FamilyParams.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    missing = [flag for flag, v in (("--n", args.n), ("--p", args.p), ("--s", args.s)) if v is None]
    if missing:
        raise UsageError(f"family needs {', '.join(missing)} (or --params)")
    return FamilyParams(args.n, args.p, tuple(args.s), args.r, args.alpha)


def cmd_gen(args, out, err) -> int:
    if args.kind == "family":
        P = _family_params(args)
        problems = validate_params(P)
        if problems:
            err.write("invalid family parameters:\n" + "".join(f"  - {msg}\n" for msg in problems))
            return EXIT_USAGE
        if exceeds_proof_bound(P):
            err.write(f"note: r = {P.r} exceeds s_(n-p-2) = {P.s[-3]}\n")
        A = make_family(P)
    elif args.kind == "nullfiliform":
        if args.n is None:
            raise UsageError("nullfiliform needs --n")
        A = make_null_filiform(args.n)
    else:
        if args.n is None or args.p is None:
            raise UsageError("split needs --n and --p")
        A = make_split(args.n, args.p)
    _emit(A, args, out)
    return EXIT_OK


def cmd_check(args, out, err) -> int:
    A = _load(args.file)
    report = alg.check_zinbiel(A) if args.law == "zinbiel" else alg.check_leibniz(A)
    out.write(f"{args.law}: {len(report)} violating triple(s) of {A.dim ** 3}\n")
    for (i, j, k), residual in report.violations[: args.max_report]:
        terms = " + ".join(f"{c} {A.labels[t]}" for t, c in enumerate(residual) if c)
        out.write(f"  ({i},{j},{k}) [{A.labels[i - 1]}, {A.labels[j - 1]}, {A.labels[k - 1]}]: {terms}\n")
    return EXIT_OK if report.holds else EXIT_FAIL


def cmd_invariants(args, out, err) -> int:
    A = _load(args.file)
    fp = fingerprint(A, _sampler(args))
    cs = characteristic_sequence(A, _sampler(args))
    payload = {
        "nilindex": fp.nilindex,
        "filtration_dims": list(fp.filtration_dims),
        "gradation_dims": list(fp.gradation_dims),
        "char_seq": list(fp.char_seq),
        "char_seq_heuristic": cs.heuristic,
        "ann_dims": {"right": fp.right_ann_dim, "left": fp.left_ann_dim},
        "center_dim": fp.center_dim,
    }
    out.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_grade(args, out, err) -> int:
    A = _load(args.file)
    g = natural_gradation(A)
    err.write(f"layer dims: {list(g.layer_sizes)}\n")
    if not g.compatible:
        err.write("warning: L^i o L^j is not contained in L^(i+j); graded product keeps the top component\n")
    _emit(g.graded_algebra, args, out)
    return EXIT_OK


def cmd_compare(args, out, err) -> int:
    A, B = _load(args.file_a), _load(args.file_b)
    sampler = _sampler(args)
    fa, fb = fingerprint(A, sampler), fingerprint(B, sampler)
    out.write("A: " + json.dumps(fa.to_dict(), sort_keys=True) + "\n")
    out.write("B: " + json.dumps(fb.to_dict(), sort_keys=True) + "\n")
    diff = fa.differences(fb)
    if not diff:
        out.write("inconclusive: fingerprints equal\n")
        return EXIT_OK
    out.write(f"non-isomorphic (certificate: {', '.join(diff)})\n")
    for name in diff:
        va, vb = getattr(fa, name), getattr(fb, name)
        line = f"  {name}: {list(va) if isinstance(va, tuple) else va} vs {list(vb) if isinstance(vb, tuple) else vb}"
        if isinstance(va, int):
            line += f", difference {vb - va}"
        out.write(line + "\n")
    return EXIT_FAIL


def cmd_verify_second_type(args, out, err) -> int:
    try:
        result = prove_second_type_impossible(args.n, args.p)
    except OutOfRange as exc:
        err.write(f"out of range: {exc}\n")
        return EXIT_USAGE
    out.write(result.to_json())
    if isinstance(result, InfeasibilityCertificate):
        return EXIT_OK
    err.write("inconclusive\n")
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zinbiel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def sampler_flags(p):
        p.add_argument("--cs-support", type=int, default=2, help="max support of signed combinations")
        p.add_argument("--cs-samples", type=int, default=64, help="random candidates")
        p.add_argument("--cs-seed", type=lambda t: int(t, 0), default=None,
                       help="sampler seed (ZINBIEL_SEED overrides)")

    def output_flags(p):
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--table", action="store_true", help="also print the multiplication table")

    g = sub.add_parser("gen", help="generate an algebra")
    g.add_argument("--kind", choices=["family", "nullfiliform", "split"], required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--s", type=_int_list)
    g.add_argument("--r", type=int, default=0)
    g.add_argument("--alpha", type=int, default=0)
    g.add_argument("--params", help='family parameters as JSON text or a file: {"n":..,"p":..,"s":[..],"r":..,"alpha":..}')
    output_flags(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="check the Zinbiel or Leibniz identity")
    c.add_argument("file")
    c.add_argument("--law", choices=["zinbiel", "leibniz"], default="zinbiel")
    c.add_argument("--max-report", type=int, default=10)
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("invariants", help="print invariants as JSON")
    i.add_argument("file")
    sampler_flags(i)
    i.set_defaults(func=cmd_invariants)

    gr = sub.add_parser("grade", help="emit the associated graded algebra")
    gr.add_argument("file")
    output_flags(gr)
    gr.set_defaults(func=cmd_grade)

    cp = sub.add_parser("compare", help="compare fingerprints of two algebras")
    cp.add_argument("file_a")
    cp.add_argument("file_b")
    sampler_flags(cp)
    cp.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify-second-type", help="refute second-type laws with n-p >= 4")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=int, required=True)
    v.set_defaults(func=cmd_verify_second_type)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except (UsageError, InvalidParams, OutOfRange, alg.AlgebraFormatError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NotNilpotent, Degenerate) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
