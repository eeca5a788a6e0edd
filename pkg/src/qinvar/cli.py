"""Command-line front end.

Three subcommands drive the engines:

* ``prove``   - symbolic proofs in the free invariant algebra, or the
                accompanying-bracket audit (``--identity accompanying``)
* ``algebra`` - load an algebra file; extract the invariant subalgebra,
                annihilator, embedding, and run concrete identity checks
* ``module``  - load a module file; verify axioms, classify, restrict,
                quotient

Exit codes: 0 all checks pass, 1 at least one mathematical finding,
2 malformed input.  Reports are deterministic given inputs and seed.
"""

from __future__ import annotations

import argparse
import sys

from . import fileio, identities, modules, products
from .fileio import InputError
from .identities import Bindings, check_concrete, parameter_grid, prove_all, select_entries
from .invariant import (
    AlgebraError,
    annihilator,
    invariant_subalgebra,
    left_regular_embedding,
)
from .scalars import QQ, FieldError, field_from_name


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qinvar",
        description="exact identity proofs and structure checks for invariant algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="symbolic proofs over polynomial parameters")
    p.add_argument("--all", action="store_true", help="run the whole catalog")
    p.add_argument("--identity", help="identity selector, e.g. assoc or assoc:huliu:3")
    p.add_argument("--family", help="restrict to one product family")
    p.add_argument("--field", default="Q", help="coefficient field (Q or Fp:<p>)")
    p.add_argument("--report", help="write a JSON report to this path")

    a = sub.add_parser("algebra", help="concrete checks on an algebra file")
    a.add_argument("--file", required=True, help="algebra JSON file")
    a.add_argument("--extract", action="store_true", help="print the invariant subalgebra")
    a.add_argument("--annihilator", action="store_true", help="print the annihilator ideal")
    a.add_argument("--embedding", action="store_true", help="verify the left-regular embedding")
    a.add_argument(
        "--check",
        action="append",
        default=[],
        metavar="SELECTOR",
        help="identity selector to check concretely (repeatable)",
    )
    a.add_argument("--k", help="k parameter value, or 'all' to sweep a finite field")
    a.add_argument("--h", help="h parameter value, or 'all'")
    a.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    a.add_argument("--budget", type=int, default=10**6)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--report", help="write a JSON report to this path")

    m = sub.add_parser("module", help="axioms/classification for a module file")
    m.add_argument("--file", required=True, help="module JSON file")
    m.add_argument("--verify", action="store_true", help="check the module axioms")
    m.add_argument("--classify", action="store_true", help="2-/3-irreducibility")
    m.add_argument("--restrict", action="store_true", help="restrict to W and re-verify")
    m.add_argument(
        "--quotient",
        metavar="W|PATH",
        help="quotient by W, or by a submodule basis from a JSON file {\"basis\": [...]}",
    )
    m.add_argument("--budget", type=int, default=1 << 20)
    m.add_argument("--report", help="write a JSON report to this path")
    return parser


def _finish(report_rows, report_path, failed: bool) -> int:
    if report_path:
        fileio.write_json(report_path, report_rows)
    return 1 if failed else 0


def _cmd_prove(args) -> int:
    field = field_from_name(args.field)
    if args.identity == "accompanying":
        rows = products.audit_accompanying(args.family)
        failed = False
        for row in rows:
            status = "confirmed" if row.ok else "DISCREPANCY"
            failed = failed or not row.ok
            print(f"{row.family}:{row.index}: {status}")
            for v in row.verdicts:
                mark = "ok " if v.confirmed else "!! "
                print(f"    {mark}{v.claim.render()} -> {v.note}")
        print(f"{len(rows)} dot operations audited")
        return _finish([r.to_dict() for r in rows], args.report, failed)

    selector = None if args.all else args.identity
    entries = select_entries(selector, family=args.family)
    if not entries:
        raise InputError(f"no identities match selector {selector!r} family {args.family!r}")
    reports = prove_all(selector, family=args.family, field=field)
    failed = False
    for r in reports:
        print(r.line())
        failed = failed or r.status == "failed"
    proved = sum(1 for r in reports if r.status == "proved")
    print(f"{proved}/{len(reports)} proved")
    return _finish([r.to_dict() for r in reports], args.report, failed)


def _cmd_algebra(args) -> int:
    algebra, q = fileio.load_algebra(args.file)
    inv = invariant_subalgebra(algebra, q)
    f = algebra.field
    rows = []
    failed = False
    if args.extract:
        print(f"invariant subalgebra: dim {inv.dim}")
        for b in inv.basis:
            print("   ", [f.render(v) for v in b])
        rows.append(
            {
                "action": "extract",
                "dim": inv.dim,
                "basis": [[f.render(v) for v in b] for b in inv.basis],
            }
        )
    if args.annihilator:
        ann = annihilator(inv)
        print(f"annihilator: dim {len(ann)}, ideal: yes, inclusions: yes")
        for b in ann:
            print("   ", [f.render(v) for v in b])
        rows.append(
            {
                "action": "annihilator",
                "dim": len(ann),
                "basis": [[f.render(v) for v in b] for b in ann],
                "ideal": True,
                "inclusions": True,
            }
        )
    if args.embedding:
        emb = left_regular_embedding(inv)
        print(f"left-regular embedding: {emb.verdict.summary()}")
        failed = failed or not emb.verdict.ok
        rows.append({"action": "embedding", **emb.verdict.to_dict()})
    for selector in args.check:
        entries = select_entries(selector)
        if not entries:
            raise InputError(f"no identities match selector {selector!r}")
        for entry in entries:
            for bind in parameter_grid(entry, f, k=args.k, h=args.h):
                report = check_concrete(
                    entry, inv, bind, mode=args.mode, budget=args.budget, seed=args.seed
                )
                print(report.line())
                failed = failed or report.status == "failed"
                rows.append(report.to_dict())
    if not rows:
        raise InputError("nothing to do: pass --extract/--annihilator/--embedding/--check")
    return _finish(rows, args.report, failed)


def _cmd_module(args) -> int:
    m = fileio.load_module(args.file)
    f = m.field
    rows = []
    failed = False
    if args.verify:
        verdict = modules.check_module_axioms(m)
        print(f"module axioms: {verdict.summary()}")
        failed = failed or not verdict.ok
        rows.append({"action": "verify", **verdict.to_dict()})
    if args.classify:
        result = modules.classify_irreducibility(m, budget=args.budget)
        dims = [len(b) for b in result.submodules]
        print(f"classification: {result.kind}; submodule dims {dims}")
        if not result.checks.ok:
            print(f"  cross-checks: {result.checks.summary()}")
        failed = failed or not result.checks.ok
        rows.append(
            {
                "action": "classify",
                "kind": result.kind,
                "submodules": [
                    [[f.render(v) for v in b] for b in basis]
                    for basis in result.submodules
                ],
                **result.checks.to_dict(),
            }
        )
    if args.restrict:
        sub = modules.restrict_to_W(m)
        verdict = modules.check_module_axioms(sub)
        print(
            f"W-restriction: dim {sub.v_dim}, "
            f"c' = ({f.render(sub.c[0])}, {f.render(sub.c[1])}), {verdict.summary()}"
        )
        failed = failed or not verdict.ok
        rows.append(
            {
                "action": "restrict",
                "v_dim": sub.v_dim,
                "c": [f.render(v) for v in sub.c],
                **verdict.to_dict(),
            }
        )
    if args.quotient:
        if args.quotient == "W":
            basis = m.w_basis
        else:
            data = fileio._load(args.quotient)
            raw = data.get("basis")
            if raw is None:
                raise InputError(f"{args.quotient}: missing key 'basis'")
            basis = [
                fileio._parse_vector(f, row, m.v_dim, f"basis[{i}]")
                for i, row in enumerate(raw)
            ]
        result = modules.quotient_module(m, basis)
        verdict = modules.check_module_axioms(result.module)
        cs = ", ".join(f.render(v) for v in result.module.c)
        print(
            f"quotient: dim {result.module.v_dim}, c' = ({cs}), {verdict.summary()}"
        )
        failed = failed or not verdict.ok
        rows.append(
            {
                "action": "quotient",
                "v_dim": result.module.v_dim,
                "c": [f.render(v) for v in result.module.c],
                **verdict.to_dict(),
            }
        )
    if not rows:
        raise InputError("nothing to do: pass --verify/--classify/--restrict/--quotient")
    return _finish(rows, args.report, failed)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "prove":
            return _cmd_prove(args)
        if args.command == "algebra":
            return _cmd_algebra(args)
        return _cmd_module(args)
    except (InputError, FieldError, AlgebraError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
