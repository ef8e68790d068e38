"""Command-line front end.

Reports are ``key=value`` lines; enumerators follow a ``name:`` header as
``w:c`` lines.  Exit codes: 0 ok, 2 parse error, 3 invariant violated
(not self-dual, hypotheses fail), 4 incomplete result.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path

from .classify import (
    CLASSIFY_MAX_N,
    CodeDB,
    MassDeficit,
    classify_all,
    classify_extremal_step,
    covering_radius,
    covering_radius_bounds,
    search_s_extremal_via_shadow,
)
from .construct import (
    DegenerateColumns,
    EvenWeightVector,
    HypothesisViolated,
    build_up,
    harada_munemasa_extend,
    recursive_extend,
    subtract_11,
    subtract_11_shadow_tracked,
)
from .equiv import ShapeMismatch, are_equivalent, canonical_form
from .gf2core import BudgetExceeded, GenMatrix, ParseError, word_from_str
from .selfdual import (
    NotSelfDual,
    SelfDualCode,
    WrongDimension,
    mass_audit,
    s_extremal_check,
    validate_self_dual,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_INCOMPLETE = 4


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("sdcodes") / "fixtures" / name))


def _resolve(path: str) -> Path:
    """Existing path as given, else a bundled fixture ('fixtures/x.txt' or 'x.txt')."""
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_path(p.name)
    if bundled.exists():
        return bundled
    raise CliError(EXIT_PARSE, f"no such file: {path}")


def _load_matrix(path: str) -> GenMatrix:
    p = _resolve(path)
    try:
        return GenMatrix.from_text(p.read_text(encoding="utf-8"))
    except (ParseError, ValueError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _load_code(path: str) -> SelfDualCode:
    m = _load_matrix(path)
    try:
        return validate_self_dual(m)
    except (NotSelfDual, WrongDimension) as exc:
        raise CliError(EXIT_INVARIANT, f"{path}: {exc}") from exc


def _load_db(path: str) -> CodeDB:
    p = _resolve(path)
    try:
        return CodeDB.load(p)
    except (ParseError, ValueError, KeyError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _parse_bits(text: str, n: int) -> int:
    """A vector given as a 0/1 string (leftmost = coordinate 0) or 0x-hex."""
    try:
        if text.lower().startswith("0x"):
            v = int(text, 16)
        else:
            if len(text) != n:
                raise ParseError(f"expected {n} bits, got {len(text)}")
            v = word_from_str(text)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad vector {text!r}: {exc}") from exc
    if v >> n:
        raise CliError(EXIT_PARSE, f"vector {text!r} is longer than {n} bits")
    return v


def _emit(out, **kv) -> None:
    for k, v in kv.items():
        out.write(f"{k}={'-' if v is None else v}\n")


def _emit_block(out, name: str, pairs) -> None:
    out.write(f"{name}:\n")
    for w, c in pairs:
        out.write(f"{w}:{c}\n")


def _emit_matrix(out, m: GenMatrix) -> None:
    out.write("matrix:\n")
    out.write(m.to_text())


def _emit_codes(out, codes: list[SelfDualCode]) -> None:
    _emit(out, count=len(codes))
    for i, c in enumerate(codes):
        _emit(out, index=i, n=c.n, d=c.d, s=c.s, type=c.type_tag)
        _emit_matrix(out, c.gen)


# ---------------------------------------------------------------- commands

def cmd_analyze(args, out) -> int:
    c = _load_code(args.path)
    _emit(out, n=c.n, k=c.k, self_dual=1, type=c.type_tag, d=c.d, s=c.s)
    _emit(out, s_extremal=int(s_extremal_check(c)))
    if not args.no_aut:
        try:
            _emit(out, aut=canonical_form(c.gen).aut_order)
        except BudgetExceeded:
            _emit(out, aut=None)
    try:
        _emit(out, rho=covering_radius(c).rho)
    except BudgetExceeded:
        _emit(out, rho=None)
    lo, hi = covering_radius_bounds(c)
    _emit(out, rho_lower=lo, rho_upper=hi)
    _emit_block(out, "weight_enumerator", c.wenum.as_dict().items())
    # a Type II code is its own shadow
    shadow = c.wenum if c.shadow is None else c.shadow.shadow_wenum
    _emit_block(out, "shadow_enumerator", shadow.as_dict().items())
    return EXIT_OK


def _write_db(db: CodeDB, path: str | None) -> None:
    if path:
        db.save(path)


def _report_db(out, db: CodeDB) -> None:
    _emit(out, n=db.n, type=db.type_, count=len(db), complete=int(db.complete))
    if db.entries:
        best, num = db.optimal()
        _emit(out, optimal_d=best, optimal_count=num)
    _emit_block(out, "counts_by_d", db.counts_by_d().items())


def cmd_classify(args, out) -> int:
    n = args.n
    seeds = _load_db(args.seed_db) if args.seed_db else None
    if args.mode == "extremal":
        if seeds is None:
            raise CliError(EXIT_PARSE, "extremal mode needs --seed-db")
        if seeds.n != n - 2:
            raise CliError(EXIT_PARSE, f"seed database has length {seeds.n}, need {n - 2}")
        db = classify_extremal_step(
            seeds,
            partition_size=args.partition_size,
            workers=args.workers,
            d=args.seed_d,
            allow_incomplete=True,
        )
        _write_db(db, args.db_out)
        _report_db(out, db)
        return EXIT_OK if db.complete else EXIT_INCOMPLETE

    if n > CLASSIFY_MAX_N and not args.unsafe_budget and seeds is None:
        raise CliError(EXIT_INVARIANT, f"n={n} exceeds the budget of {CLASSIFY_MAX_N}; pass --unsafe-budget")
    try:
        db = classify_all(n, args.workers, seed_db=seeds, strict=True, unsafe_budget=True)
    except MassDeficit as exc:
        db = exc.db
    audit = mass_audit(db, n)
    if args.type != "both":
        db = db.select(lambda e: e.type_tag == args.type, complete=db.complete, type_=args.type)
    _write_db(db, args.db_out)
    _report_db(out, db)
    _emit(out, mass_found=audit.found, mass_expected=audit.expected, mass_ok=int(audit.complete))
    return EXIT_OK if audit.complete else EXIT_INCOMPLETE


def cmd_extend(args, out) -> int:
    c = _load_code(args.path)
    if args.mode == "recursive":
        _emit_codes(out, recursive_extend(c))
        return EXIT_OK
    if args.mode == "buildup":
        if args.x is None:
            raise CliError(EXIT_PARSE, "buildup mode needs --x")
        try:
            code = build_up(c, _parse_bits(args.x, c.n))
        except EvenWeightVector as exc:
            raise CliError(EXIT_INVARIANT, str(exc)) from exc
        _emit_codes(out, [code])
        return EXIT_OK
    if args.a is None:
        raise CliError(EXIT_PARSE, "hm mode needs --a")
    try:
        a = int(args.a, 16) if args.a.lower().startswith("0x") else word_from_str(args.a)
        codes = harada_munemasa_extend(c, a, skip_weight_two=args.skip_weight_two)
    except (ParseError, ValueError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    _emit_codes(out, codes)
    return EXIT_OK


def cmd_subtract(args, out) -> int:
    c = _load_code(args.path)
    try:
        if args.shadow:
            t = subtract_11_shadow_tracked(c)
            res, (i, j) = t.code, t.coords
        else:
            if args.i is None or args.j is None:
                raise CliError(EXIT_PARSE, "give a column pair I J, or --shadow")
            i, j = args.i, args.j
            res = subtract_11(c, i, j)
    except (DegenerateColumns, HypothesisViolated) as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc
    _emit(out, i=i, j=j, n=res.n, k=res.k, self_dual=1, d=res.d, s=res.s, type=res.type_tag)
    _emit_matrix(out, res.gen)
    return EXIT_OK


def cmd_sextremal(args, out) -> int:
    n, d = args.target
    seeds = _load_db(args.seed_db)
    try:
        db = search_s_extremal_via_shadow(seeds, n, d, workers=args.workers, allow_incomplete=args.allow_incomplete)
    except ValueError as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc
    _write_db(db, args.db_out)
    _emit(out, n=n, d=d, count=len(db), complete=int(db.complete))
    for i, e in enumerate(db.entries):
        _emit(out, index=i, d=e.d, s=e.s, aut=e.aut_order, prov=e.prov)
        _emit_matrix(out, e.code.gen)
    return EXIT_OK if db.complete else EXIT_INCOMPLETE


def cmd_equiv(args, out) -> int:
    a, b = _load_matrix(args.a), _load_matrix(args.b)
    try:
        res = are_equivalent(a, b)
    except ShapeMismatch as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc
    if not res.equivalent:
        out.write("equivalent=0 perm=-\n")
        return EXIT_OK
    perm = res.perm
    text = "identity" if list(perm) == list(range(len(perm))) else ",".join(map(str, perm))
    out.write(f"equivalent=1 perm={text}\n")
    return EXIT_OK


def cmd_covrad(args, out) -> int:
    c = _load_code(args.path)
    try:
        res = covering_radius(c)
    except BudgetExceeded as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc
    lo, hi = covering_radius_bounds(c)
    _emit(out, n=c.n, rho=res.rho, rho_lower=lo, rho_upper=hi)
    _emit_block(out, "leader_weights", enumerate(res.leader_weight_histogram))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sdcodes", description="Binary self-dual code toolkit")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="parameters, enumerators, |Aut| and covering radius")
    p.add_argument("path")
    p.add_argument("--no-aut", action="store_true", help="skip the automorphism search")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="classify self-dual codes of length n")
    p.add_argument("n", type=int)
    p.add_argument("--type", choices=["I", "II", "both"], default="both")
    p.add_argument("--mode", choices=["full", "extremal"], default="full",
                   help="full classification, or one recursive-extension step from --seed-db")
    p.add_argument("--db-out")
    p.add_argument("--seed-db")
    p.add_argument("--seed-d", type=int, help="minimum weight of the seeds to extend (extremal mode)")
    p.add_argument("--partition-size", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--unsafe-budget", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("extend", help="lengthen a code by two")
    p.add_argument("path")
    p.add_argument("--mode", choices=["recursive", "buildup", "hm"], default="recursive")
    p.add_argument("--x", help="odd vector for buildup (0/1 string or 0x-hex)")
    p.add_argument("--a", help="tag vector for hm (0/1 string or 0x-hex)")
    p.add_argument("--skip-weight-two", action="store_true", help="hm: drop completions containing weight-2 words")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("subtract", help="subtraction of (11) on two columns")
    p.add_argument("path")
    p.add_argument("i", type=int, nargs="?")
    p.add_argument("j", type=int, nargs="?")
    p.add_argument("--shadow", action="store_true", help="choose the columns so the shadow weight drops by one")
    p.set_defaults(func=cmd_subtract)

    p = sub.add_parser("sextremal", help="s-extremal codes grown from shadow-weight s-1 seeds")
    p.add_argument("--target", type=int, nargs=2, metavar=("N", "D"), required=True)
    p.add_argument("--seed-db", required=True)
    p.add_argument("--db-out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-incomplete", action="store_true")
    p.set_defaults(func=cmd_sextremal)

    p = sub.add_parser("equiv", help="permutation equivalence of two codes")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("covrad", help="covering radius and coset-leader weights")
    p.add_argument("path")
    p.set_defaults(func=cmd_covrad)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
