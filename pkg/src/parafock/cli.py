"""Batch command-line interface: verification suites and table generation.

Output is JSON lines (CSV available as a flat projection).  Exit codes:
0 = all checks pass, 1 = mathematical mismatch, 2 = usage or config error.
Identical invocations produce byte-identical output; the only concurrency
knob is the PARAFOCK_THREADS environment variable (per-weight Gram blocks).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import algebra, patterns, reduced, symfunc, verma

MAX_LEVEL = 12   # safety cap: desk-scale exact arithmetic
MAX_DEGREE = 12

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class Emitter:
    """Collects records, then writes JSON lines or a CSV projection."""

    def __init__(self, fmt: str, out_path: str | None):
        self.fmt = fmt
        self.out_path = out_path
        self.records: list[dict] = []

    def emit(self, record: dict):
        self.records.append(record)

    def flush(self):
        if self.fmt == "json":
            text = "\n".join(
                json.dumps(r, sort_keys=True, separators=(",", ":"))
                for r in self.records
            )
        else:
            cols: list[str] = []
            for r in self.records:
                for k in r:
                    if k not in cols:
                        cols.append(k)
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(cols)
            for r in self.records:
                writer.writerow(
                    [json.dumps(r[k], sort_keys=True) if k in r else ""
                     for k in cols]
                )
            text = buf.getvalue().rstrip("\n")
        if self.out_path:
            with open(self.out_path, "w") as fh:
                fh.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")


def _threads() -> int:
    raw = os.environ.get("PARAFOCK_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _meta(args, command: str, **extra) -> dict:
    meta = {"meta": command, "schema_version": 1, "seed": args.seed}
    meta.update(extra)
    return meta


def _check_session(args, need_p=True) -> str | None:
    if args.m < 0 or args.n < 0 or args.m + args.n < 1:
        return "need m >= 0, n >= 0 and m + n >= 1"
    if need_p and args.p is not None and min(args.p) < 1:
        return "p must be >= 1"
    levels = getattr(args, "levels", None)
    if levels is not None and not 0 <= levels <= MAX_LEVEL:
        return f"levels must be in 0..{MAX_LEVEL}"
    degree = getattr(args, "degree", None)
    if degree is not None and not 0 <= degree <= MAX_DEGREE:
        return f"degree must be in 0..{MAX_DEGREE}"
    return None


def _single_p(args) -> int:
    if args.p is None:
        return 1
    if len(args.p) != 1:
        raise SystemExit(_fail_usage("this command takes a single --p value"))
    return args.p[0]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify_algebra(args) -> int:
    err = _check_session(args, need_p=False)
    if err:
        return _fail_usage(err)
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "verify-algebra", m=args.m, n=args.n))
    ok = True
    rep = algebra.verify_triple_relations(args.m, args.n)
    ok &= not rep["failures"]
    out.emit({"check": "triple_relations", "checked": rep["checked"],
              "failures": len(rep["failures"])})
    rep = algebra.verify_para_relations(args.m, args.n)
    ok &= not rep["failures"]
    out.emit({"check": "para_relations", "checked": rep["checked"],
              "failures": len(rep["failures"])})
    try:
        basis = algebra.structure_constants(args.m, args.n)
        out.emit({"check": "structure_constants",
                  "dimension": basis.dimension,
                  "even_dimension": algebra.expected_even_dimension(args.m, args.n),
                  "diagonal_subalgebra_size":
                      len(basis.diagonal_subalgebra_labels()),
                  "closed": basis.diagonal_subalgebra_closed()})
        if args.dump:
            with open(args.dump, "w") as fh:
                for label, mat in basis.elements:
                    fh.write(json.dumps(
                        {"label": list(label), "records": mat.to_records()},
                        sort_keys=True) + "\n")
    except ArithmeticError as exc:
        out.emit({"check": "structure_constants", "error": str(exc)})
        ok = False
    out.flush()
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_dims(args) -> int:
    err = _check_session(args, need_p=False)
    if err:
        return _fail_usage(err)
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "dims", m=args.m, n=args.n, levels=args.levels))
    ok = True
    if args.validate:
        with open(args.validate) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rows = json.loads(line)
                pat = patterns.GZPattern.from_rows(args.m, args.n, rows)
                fails = patterns.pattern_failures(pat)
                ok &= not fails
                out.emit({"pattern": rows, "valid": not fails,
                          "failures": fails})
        out.flush()
        return EXIT_OK if ok else EXIT_MISMATCH
    if args.p is not None and len(args.p) != 1:
        return _fail_usage("dims takes at most one --p value")
    p = args.p[0] if args.p else None
    for level in range(args.levels + 1):
        tops = patterns.top_rows_for_level(
            args.m, args.n, p if p else 1, level, cap=p is not None)
        for top in tops:
            la = patterns.partition_from_top_row(top, args.m, args.n)
            fills = patterns.fillings(top, args.m, args.n)
            schur_dim = sum(
                symfunc.super_schur(la, args.m, args.n).coeffs.values())
            ok &= len(fills) == schur_dim
            rec = {"level": level, "top_row": list(top),
                   "partition": list(la), "count": len(fills),
                   "schur_dim": schur_dim, "match": len(fills) == schur_dim}
            out.emit(rec)
            if args.patterns:
                for pat in fills:
                    out.emit({"top_row": list(top),
                              "pattern": pat.to_rows()})
    out.flush()
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_char(args) -> int:
    err = _check_session(args)
    if err:
        return _fail_usage(err)
    p = _single_p(args)
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "char", m=args.m, n=args.n, p=p, degree=args.degree))
    verma_ch = symfunc.verma_character(args.m, args.n, p, args.degree)
    irr = symfunc.irreducible_character(args.m, args.n, p, args.degree)
    for series, ch in (("verma", verma_ch), ("irreducible", irr)):
        for expo, mult in ch.items_sorted():
            out.emit({"series": series, "level": sum(expo),
                      "weight_vector": list(ch.doubled_weight(expo)),
                      "multiplicity": mult})
    rep = symfunc.character_formula_report(args.m, args.n, p, args.degree)
    out.emit({"check": "character_formula", "series_equal": rep["series_equal"],
              "lr_identity_failures": len(rep["lr_identity_failures"]),
              "ok": rep["ok"]})
    both = symfunc.verma_character(args.m, args.n, p, args.degree,
                                   method="schur_sum")
    expansion_ok = both == verma_ch
    out.emit({"check": "weight_series_expansion", "ok": expansion_ok})
    out.flush()
    return EXIT_OK if rep["ok"] and expansion_ok else EXIT_MISMATCH


def _parse_domains(text: str):
    domains = []
    for part in text.split(";"):
        m, n = part.split(",")
        domains.append((int(m), int(n)))
    return domains


def cmd_verify_id2(args) -> int:
    err = _check_session(args)
    if err:
        return _fail_usage(err)
    p_values = args.p or [1, 2, 3]
    if args.domains:
        try:
            domains = _parse_domains(args.domains)
        except ValueError:
            return _fail_usage("--domains expects 'm,n;m,n;...'")
    else:
        domains = [(args.m, args.n)]
    if any(n < 1 for _, n in domains):
        return _fail_usage("the recurrence needs n >= 1 in every domain")
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "verify-id2", domains=[list(d) for d in domains],
                   p=p_values, levels=args.levels))
    if args.variant != "auto":
        try:
            variant = reduced.ParsingVariant.from_short(args.variant)
        except (KeyError, ValueError):
            return _fail_usage(f"unknown variant {args.variant!r}")
        ok = True
        for (m, n) in domains:
            sweep = reduced.residual_sweep(m, n, p_values, args.levels, variant)
            ok &= sweep["ok"]
            out.emit({"domain": [m, n], "variant": variant.short(),
                      "configs": sweep["configs"],
                      "residual_failures": sweep["failure_count"],
                      "zero_division_errors": sweep["errors"],
                      "sample_failures": sweep["failures"][:3]})
        out.emit({"check": "recurrence", "variant": variant.short(), "ok": ok})
        out.flush()
        return EXIT_OK if ok else EXIT_MISMATCH
    if len(p_values) < 2:
        return _fail_usage("variant selection needs at least two --p values")
    try:
        rep = reduced.select_parsing_variant_multi(domains, p_values, args.levels)
    except reduced.VariantSelectionError as exc:
        out.emit({"check": "variant_selection", "ok": False,
                  "error": str(exc)})
        out.flush()
        return EXIT_MISMATCH
    for stat in rep["per_variant"]:
        out.emit({"domain": [stat["m"], stat["n"]],
                  "variant": stat["variant"], "configs": stat["configs"],
                  "residual_failures": stat["failure_count"],
                  "zero_division_errors": stat["errors"]})
    out.emit({"check": "variant_selection", "ok": True,
              "selected": rep["selected"].short(),
              "survivors": rep["survivors"]})
    out.flush()
    return EXIT_OK


def cmd_gk_table(args) -> int:
    err = _check_session(args)
    if err:
        return _fail_usage(err)
    p = _single_p(args)
    try:
        variant = (reduced.DEFAULT_VARIANT if args.variant == "auto"
                   else reduced.ParsingVariant.from_short(args.variant))
    except (KeyError, ValueError):
        return _fail_usage(f"unknown variant {args.variant!r}")
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "gk-table", m=args.m, n=args.n, p=p,
                   levels=args.levels, variant=variant.short()))
    code = EXIT_OK
    for level in range(args.levels + 1):
        for top in patterns.top_rows_for_level(args.m, args.n, p, level,
                                               cap=not args.no_cap):
            for k in range(1, args.m + args.n + 1):
                try:
                    val = reduced.reduced_me(top, k, p, args.m, args.n, variant)
                except (reduced.UncancelledZeroError, ArithmeticError) as exc:
                    out.emit({"top_row": list(top), "k": k, "p": p,
                              "error": str(exc)})
                    code = EXIT_MISMATCH
                    continue
                out.emit({
                    "top_row": list(top), "k": k, "p": p, "sign": val.sign,
                    "radicand_num": val.radicand.numerator,
                    "radicand_den": val.radicand.denominator,
                })
    out.flush()
    return code


def cmd_gram(args) -> int:
    err = _check_session(args)
    if err:
        return _fail_usage(err)
    p = _single_p(args)
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "gram", m=args.m, n=args.n, p=p, levels=args.levels,
                   threads=_threads()))
    ch = symfunc.irreducible_character(args.m, args.n, p, args.levels)
    char_mult = {
        ch.doubled_weight(expo): mult for expo, mult in ch.coeffs.items()
    }
    ok = True
    blocks = verma.collect_gram_blocks(args.m, args.n, p, args.levels,
                                       threads=_threads())
    for blk in blocks:
        expected = char_mult.get(blk.weight, 0)
        match = blk.rank == expected
        ok &= match and blk.psd
        out.emit({"weight": list(blk.weight), "level": sum(blk.content),
                  "block_size": blk.size, "rank": blk.rank,
                  "psd": blk.psd, "char_multiplicity": expected,
                  "match": match})
    if args.n >= 1:
        rep = verma.diagonal_check(args.m, args.n, p, args.levels)
        ok &= rep["ok"]
        out.emit({"check": "diagonal_action", "checked": rep["checked"],
                  "failures": len(rep["failures"]), "ok": rep["ok"]})
    rep = verma.radical_cut_check(args.m, args.n, p, args.levels)
    ok &= rep["ok"]
    out.emit({"check": "radical_cut", "ok": rep["ok"],
              "cut_expected": rep["cut_expected"],
              "cut_witness": rep["cut_witness"]})
    out.flush()
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_matelems(args) -> int:
    err = _check_session(args)
    if err:
        return _fail_usage(err)
    p = _single_p(args)
    out = Emitter(args.format, args.out)
    out.emit(_meta(args, "matelems", m=args.m, n=args.n, p=p,
                   levels=args.levels))
    engine = verma.get_engine(args.m, args.n)
    r = args.m + args.n
    for level in range(args.levels + 1):
        for content in verma.level_contents(args.m, args.n, level):
            blk = verma.gram_block_for_content(args.m, args.n, p, content)
            for mono, norm in zip(blk.basis,
                                  (row[i] for i, row in enumerate(blk.matrix))):
                out.emit({"weight": list(blk.weight),
                          "monomial": {"singles": list(mono.singles),
                                       "pairs": list(mono.pairs)},
                          "norm_sq_num": norm.numerator,
                          "norm_sq_den": norm.denominator})
            if args.n >= 1:
                kept, norms = verma._orthogonalize(blk)
                values = []
                for u, nu in zip(kept, norms):
                    vec = {mo: c for mo, c in zip(blk.basis, u) if c}
                    image = engine.act(("bb", r, r, "-", "+"), vec, p)
                    w = [image.get(mo, 0) for mo in blk.basis]
                    num = sum(
                        u[i] * sum(blk.matrix[i][j] * w[j]
                                   for j in range(blk.size))
                        for i in range(blk.size))
                    values.append(num / nu)
                out.emit({"weight": list(blk.weight),
                          "diagonal_values":
                              [[v.numerator, v.denominator]
                               for v in sorted(values)]})
    out.flush()
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parafock",
        description=(
            "Exact verification engine for parastatistics Fock spaces of "
            "osp(2m+1|2n)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, levels=None, degree=None, variant=False):
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=_p_list, default=None,
                        help="order parameter; comma list where applicable")
        if levels is not None:
            sp.add_argument("--levels", type=int, default=levels)
        if degree is not None:
            sp.add_argument("--degree", type=int, default=degree)
        if variant:
            sp.add_argument("--variant", default="auto",
                            help="auto or eo:zero:tail, e.g. mult:cancel:boson")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0,
                        help="echoed in the meta record; reserved for "
                             "randomized sweeps (current commands are "
                             "exhaustive)")
        sp.add_argument("--out", default=None, help="write output to a file")

    sp = sub.add_parser("verify-algebra",
                        help="defining relations and structure constants")
    common(sp)
    sp.add_argument("--dump", default=None,
                    help="write the basis matrices as JSON lines")
    sp.set_defaults(func=cmd_verify_algebra)

    sp = sub.add_parser("dims", help="pattern counts per top row")
    common(sp, levels=3)
    sp.add_argument("--patterns", action="store_true",
                    help="also emit every pattern as an array of rows")
    sp.add_argument("--validate", default=None,
                    help="validate patterns from a JSON-lines file")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("char", help="characters and the character formula")
    common(sp, degree=4)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("verify-id2",
                        help="diagonal recurrence sweep / variant selection")
    common(sp, levels=4, variant=True)
    sp.add_argument("--domains", default=None,
                    help="joint sweep domains as 'm,n;m,n;...'")
    sp.set_defaults(func=cmd_verify_id2)

    sp = sub.add_parser("gk-table", help="reduced matrix element tables")
    common(sp, levels=3, variant=True)
    sp.add_argument("--no-cap", action="store_true",
                    help="include top rows beyond width p")
    sp.set_defaults(func=cmd_gk_table)

    sp = sub.add_parser("gram", help="Gram blocks, ranks and oracle verdicts")
    common(sp, levels=3)
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("matelems", help="exact norms and diagonal values")
    common(sp, levels=3)
    sp.set_defaults(func=cmd_matelems)

    return parser


def _p_list(text: str):
    return [int(x) for x in text.split(",")]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
