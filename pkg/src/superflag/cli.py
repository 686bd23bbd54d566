"""superflag command line: classify, table, h0, dft-check, verify.

Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .algebra import EXCEPTIONAL_NAMES, Exceptional, Family, FlagType, parse_family, validate_flag_type
from .classify import ClassificationRecord, classify, enumeration_bounds, odd_codimension, table
from .matrixoracle import OracleRefused, codim_oracle, oracle_bounds, stabilizer_phi
from .parabolic import phi_sets
from .realform import catalog_keys, lookup
from .rootspace import Weight

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    enum_bounds: dict
    oracle_bounds: dict
    fmt: str = "json"
    oracle: bool = False
    output: str | None = None

    def __post_init__(self):
        for k, v in self.oracle_bounds.items():
            if v > self.enum_bounds.get(k, v):
                raise UsageError(f"oracle bound {k}={v} exceeds the enumeration bound {self.enum_bounds[k]}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(enumeration_bounds(), oracle_bounds(), getattr(args, "format", "json"),
                   getattr(args, "oracle", False), getattr(args, "output", None))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- argument helpers


def _family(args) -> Family | Exceptional:
    if args.family in EXCEPTIONAL_NAMES:
        return Exceptional(args.family)
    try:
        fam = parse_family(args.family, args.params or "")
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad family {args.family} {args.params!r}: {e}") from None
    variant = getattr(args, "variant", None)
    if variant == "psl" and not fam.psl:
        raise UsageError(f"variant psl needs A(n|n), got {fam}")
    return fam


def _real_form(fam: Family, key: str | None):
    if key is None:
        raise UsageError("--real-form is required; catalogued keys: " + ", ".join(catalog_keys(fam)))
    try:
        return lookup(fam, key)
    except KeyError:
        raise UsageError(f"unknown real form {key!r} for {fam}; catalogued keys: "
                         + ", ".join(catalog_keys(fam))) from None


def _delta(fam, text: str) -> FlagType:
    try:
        delta = FlagType.parse(text)
    except (ValueError, TypeError) as e:
        raise UsageError(f"cannot parse delta {text!r}: {e}") from None
    if isinstance(fam, Family):
        res = validate_flag_type(fam, delta)
        if not res.ok:
            raise UsageError(f"invalid delta {delta} for {fam}: " + "; ".join(res.violations))
    return delta


def _yn(v) -> str:
    return "n/a" if v is None else "yes" if v else "no"


MD_REAL = ("Type", "real form", "delta", "maximal odd dimension", "weak measurability", "strong measurability")
MD_EVEN = ("Type", "even real form", "delta", "weak measurability", "strong measurability")


def _md_rows(recs: list[ClassificationRecord], even: bool) -> str:
    head = MD_EVEN if even else MD_REAL
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for r in recs:
        cells = [r.family, r.real_form, r.delta]
        if not even:
            cells.append(_yn(r.max_odd_dim))
        cells += [_yn(r.berezinian_invariant), _yn(r.strongly_measurable)]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    cfg = RunConfig.from_args(args)
    fam = _family(args)
    if isinstance(fam, Exceptional):
        rec = classify(fam, args.real_form, FlagType.parse(args.delta))
        _emit(cfg, dumps(rec.to_json()) if cfg.fmt == "json" else _md_rows([rec], False))
        return OK
    rf = _real_form(fam, args.real_form)
    delta = _delta(fam, args.delta)
    rec = classify(fam, rf, delta)
    out = rec.to_json()
    status = OK if rec.agreement else FAILED
    if cfg.oracle:
        try:
            same_phi = stabilizer_phi(fam, delta, rf.convention) == phi_sets(fam, rf.convention, delta)
            same_codim = codim_oracle(fam, rf, delta) == odd_codimension(fam, rf, delta)
        except OracleRefused as e:
            raise UsageError(str(e)) from None
        out["oracle"] = {"phi_sets": same_phi, "codimension": same_codim}
        if not (same_phi and same_codim):
            status = FAILED
    _emit(cfg, dumps(out) if cfg.fmt == "json" else _md_rows([rec], rf.kind == "even-real"))
    return status


def cmd_table(args) -> int:
    cfg = RunConfig.from_args(args)
    fam = _family(args)
    if isinstance(fam, Exceptional):
        raise UsageError("table needs a classical family")
    rf = _real_form(fam, args.real_form)
    try:
        rows = table(fam, rf, args.bound, strict=False)
    except RuntimeError as e:
        raise UsageError(str(e)) from None
    recs = [r for _, r in rows]
    if cfg.fmt == "json":
        _emit(cfg, dumps({"family": fam.label(), "real_form": rf.key, "rows": [r.to_json() for r in recs]}))
    else:
        _emit(cfg, _md_rows(recs, rf.kind == "even-real"))
    return OK if all(r.agreement for r in recs) else FAILED


def cmd_h0(args) -> int:
    from .superfun import h0_flag_domain, h0_flag_supermanifold

    cfg = RunConfig.from_args(args)
    fam = _family(args)
    if isinstance(fam, Exceptional):
        raise UsageError("h0 needs a classical family")
    delta = _delta(fam, args.delta)
    if args.real_form is None:
        h = h0_flag_supermanifold(fam, delta)
    else:
        rf = _real_form(fam, args.real_form)
        try:
            h = h0_flag_domain(fam, rf, delta, args.base)
        except ValueError as e:
            raise UsageError(str(e)) from None
    out = {"family": fam.label(), "delta": str(delta), "real_form": args.real_form, "base": args.base,
           "h0": h.to_json(), "display": str(h)}
    _emit(cfg, dumps(out))
    return OK


def cmd_dft_check(args) -> int:
    from .dft import dft_case, dft_report

    cfg = RunConfig.from_args(args)
    fam = _family(args) if args.family else None
    try:
        case = dft_case(args.case, fam, FlagType.parse(args.delta) if args.delta else None)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        lam = Weight.from_json(json.loads(args.weight)) if args.weight else Weight.zero(*case.fam.dims)
        report = dft_report(case, lam, args.s)
    except (ValueError, TypeError) as e:
        raise UsageError(str(e)) from None
    _emit(cfg, dumps(report))
    return OK


def cmd_verify(args) -> int:
    from . import verify

    cfg = RunConfig.from_args(args)
    bounds = None
    if args.max_rank != "default":
        try:
            cap = int(args.max_rank)
        except ValueError:
            raise UsageError("--max-rank takes an integer or 'default'") from None
        bounds = {k: min(v, cap) for k, v in cfg.oracle_bounds.items()}
    bad = set(args.criteria) - set(verify.CRITERIA)
    if bad:
        raise UsageError(f"unknown criteria {''.join(sorted(bad))}; choose from {''.join(verify.CRITERIA)}")
    reports = verify.run(args.criteria, bounds)
    data = verify.stable_json(reports)
    if cfg.fmt == "json":
        _emit(cfg, dumps(data))
    else:
        lines = ["| family | real form | theorem | result | checks |", "|---|---|---|---|---|"]
        for rep in reports:
            for r in rep.rows:
                lines.append(f"| {r.family} | {r.real_form} | {r.theorem} | {'pass' if r.passed else 'FAIL'} | {r.count} |")
        _emit(cfg, "\n".join(lines) + "\n")
    for rep in reports:
        for r in rep.rows:
            for inst in r.failures:
                print(f"FAILED {r.theorem}: {inst}", file=sys.stderr)
    return OK if data["ok"] else FAILED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superflag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, real_form=True):
        sp.add_argument("--family", required=True, help="A B C D P Q, or an exceptional name")
        sp.add_argument("--params", default="", help="n,m for A B D; m for C; n for P Q")
        sp.add_argument("--variant", choices=("sl", "psl"), default=None)
        if real_form:
            sp.add_argument("--real-form", dest="real_form", default=None)
        sp.add_argument("--format", choices=("json", "md"), default="json")
        sp.add_argument("--output", default=None, help="write to this path instead of stdout")

    c = sub.add_parser("classify", help="verdicts for one flag type")
    common(c)
    c.add_argument("--delta", required=True, help='steps "d0|d1,d0|d1,..."')
    c.add_argument("--oracle", action="store_true", help="cross-check against the matrix oracle")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="every flag type for one real form")
    common(t)
    t.add_argument("--bound", "--max-steps", dest="bound", type=int, default=None, help="maximum number of steps")
    t.set_defaults(func=cmd_table)

    h = sub.add_parser("h0", help="global holomorphic superfunctions",
                       description="Conditions I and II use delta with the endpoint n|m appended.")
    common(h)
    h.add_argument("--delta", required=True)
    h.add_argument("--base", default="cycle", choices=("cycle", "hermitian", "mixed:1", "mixed:2"))
    h.set_defaults(func=cmd_h0)

    d = sub.add_parser("dft-check", help="double fibration transform weight tests")
    d.add_argument("--case", required=True, help="e.g. su:1,1|1,0, sostar:2,1, son_sp22m:3,1, g0")
    d.add_argument("--family", default=None, help="needed by the g0 case")
    d.add_argument("--params", default="")
    d.add_argument("--delta", default=None)
    d.add_argument("--lambda", dest="weight", default=None, help='weight JSON {"x": [...], "y": [...]}')
    d.add_argument("--s", type=int, default=2)
    d.add_argument("--output", default=None)
    d.set_defaults(func=cmd_dft_check, format="json")

    v = sub.add_parser("verify", help="oracle and table sweeps at the configured bounds")
    v.add_argument("--max-rank", dest="max_rank", default="default")
    v.add_argument("--criteria", default="123456")
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--output", default=None)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"superflag: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
