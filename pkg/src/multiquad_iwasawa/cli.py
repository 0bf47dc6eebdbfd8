"""Command-line front end.

    python -m multiquad_iwasawa lambda -r "7,3,-1"
    python -m multiquad_iwasawa parity -r "2,-11,33" --json
    python -m multiquad_iwasawa splitting -p 7 -n 0..5
    python -m multiquad_iwasawa genus -r "3,5"
    python -m multiquad_iwasawa verify sweeps.cfg
    python -m multiquad_iwasawa sweep --bound 50 -o table.csv

Exit codes: 0 success (OutOfScope parity included), 1 failed verification
sweep, 2 bad input, 3 hypothesis violated, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources
from itertools import combinations
from typing import List, Optional, Sequence

from . import oracle
from .arith import is_prime
from .errors import HypothesisError, InvariantError
from .field import MultiQuadField, maximal_real_subfield, narrow_genus_field
from .lambda2 import lambda2_multiquad_imaginary
from .parity import Verdict, classify_parity
from .tower import level_report, splitting_Qn_quadratic

log = logging.getLogger("multiquad_iwasawa")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INVARIANT = 0, 1, 2, 3, 4
SWEEP_BOUND_LIMIT = 200
SWEEP_HEADER = ("field", "lambda2", "parity", "case", "assumptions")

GREENBERG_NOTE = "Greenberg's conjecture assumed for K^+: lambda_2(K^+) = 0"


def load_schema(name: str = "report") -> dict:
    text = resources.files(__package__).joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc: dict, name: str = "report") -> None:
    """Raise jsonschema.ValidationError if ``doc`` does not fit the schema."""
    import jsonschema

    jsonschema.validate(doc, load_schema(name))


@dataclass
class Report:
    input: dict
    field: Optional[dict] = None
    lambda_: Optional[dict] = None
    parity: Optional[dict] = None
    genus: Optional[dict] = None
    splitting: Optional[List[dict]] = None
    assumptions: List[str] = dc_field(default_factory=list)
    errors: List[dict] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "field": self.field,
            "lambda": self.lambda_,
            "parity": self.parity,
            "genus": self.genus,
            "splitting": self.splitting,
            "assumptions": list(self.assumptions),
            "errors": list(self.errors),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        validate(d)
        return cls(
            d["input"], d["field"], d["lambda"], d["parity"], d["genus"],
            d["splitting"], list(d["assumptions"]), list(d["errors"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def exit_code(self) -> int:
        return max((e["code"] for e in self.errors), default=EXIT_OK)


def field_dict(K: MultiQuadField) -> dict:
    return {"basis": list(K.basis), "text": K.to_text(), "rank": K.rank, "real": K.is_real}


def _error(exc: BaseException) -> dict:
    if isinstance(exc, HypothesisError):
        return {"code": EXIT_HYPOTHESIS, "kind": "hypothesis", "message": str(exc), "terms": exc.terms}
    if isinstance(exc, InvariantError):
        return {"code": EXIT_INVARIANT, "kind": "invariant", "message": str(exc)}
    return {"code": EXIT_INPUT, "kind": "input", "message": str(exc)}


def parse_levels(text: str) -> range:
    """'a..b' (inclusive) or a single level."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            levels = range(int(lo), int(hi) + 1)
        else:
            levels = range(int(text), int(text) + 1)
    except ValueError:
        raise ValueError(f"malformed level range {text!r}; use e.g. 0..5") from None
    if not levels or levels.start < 0:
        raise ValueError(f"empty or negative level range {text!r}")
    return levels


def _need_field(args) -> MultiQuadField:
    if not args.radicands:
        raise ValueError("this command needs -r/--radicands")
    K = MultiQuadField.from_text(args.radicands)
    if K.rank == 0:
        raise ValueError("radicands generate Q itself")
    return K


# -- report builders, one per field verb ---------------------------------------


def build_lambda(args, rep: Report) -> None:
    K = _need_field(args)
    rep.field = field_dict(K)
    if K.is_real:
        raise HypothesisError(f"{K} is real; lambda_2 here needs an imaginary (CM) field")
    lp = args.lambda_plus
    trivial_plus = maximal_real_subfield(K).rank == 0
    if lp is None and not args.assume_greenberg and not trivial_plus:
        raise HypothesisError(
            "lambda_2(K^+) is unknown: pass --lambda-plus N or keep --assume-greenberg"
        )
    res = lambda2_multiquad_imaginary(K, lp)
    if res.greenberg_assumed:
        rep.assumptions.append(GREENBERG_NOTE)
    elif lp is not None and not trivial_plus:
        rep.assumptions.append(f"lambda_2(K^+) = {lp} supplied by the caller")
    rep.lambda_ = res.to_dict()


def build_parity(args, rep: Report) -> None:
    K = _need_field(args)
    rep.field = field_dict(K)
    verdict = classify_parity(K)
    rep.parity = verdict.to_dict()
    if verdict.verdict is Verdict.OUT_OF_SCOPE:
        print(f"notice: {K} is out of scope for the parity classifier (no sqrt 2)", file=sys.stderr)


def build_genus(args, rep: Report) -> None:
    K = _need_field(args)
    rep.field = field_dict(K)
    rep.genus = narrow_genus_field(K).to_dict()


def build_splitting(args, rep: Report) -> None:
    if args.p is None:
        raise ValueError("splitting needs -p")
    if args.radicands:
        raise ValueError("splitting takes a single radicand via -d, not -r")
    p = args.p
    if p == 2:
        raise ValueError("p = 2 is excluded: only odd primes are supported")
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    rows = []
    for n in parse_levels(args.levels):
        row = level_report(p, n).to_dict()
        if args.d is not None:
            row["behavior"] = splitting_Qn_quadratic(p, args.d, n).value
        rows.append(row)
    rep.splitting = rows


BUILDERS = {
    "lambda": build_lambda,
    "parity": build_parity,
    "genus": build_genus,
    "splitting": build_splitting,
}


def run_field_verb(args) -> Report:
    echo = {"verb": args.verb, "assume_greenberg": args.assume_greenberg}
    for key in ("radicands", "lambda_plus", "p", "levels", "d"):
        val = getattr(args, key, None)
        if val is not None:
            echo[key] = val
    rep = Report(input=echo)
    try:
        BUILDERS[args.verb](args, rep)
    except (ValueError, InvariantError) as exc:
        rep.errors.append(_error(exc))
    try:
        validate(rep.to_dict())
    except Exception as exc:  # jsonschema.ValidationError
        rep.errors.append({"code": EXIT_INVARIANT, "kind": "invariant", "message": f"report fails schema: {exc}"})
    return rep


def render_text(rep: Report) -> str:
    out = io.StringIO()
    if rep.field is not None:
        print(f"field: {MultiQuadField(tuple(rep.field['basis']))}", file=out)
    if rep.lambda_ is not None:
        print(f"lambda_2 = {rep.lambda_['lambda2']}", file=out)
    if rep.parity is not None:
        case = rep.parity["matched_case"]
        print(f"class number parity: {rep.parity['verdict']}" + (f" ({case})" if case else ""), file=out)
    if rep.genus is not None:
        print(f"narrow genus field generators: {rep.genus['narrow']}", file=out)
        print(f"genus field generators: {rep.genus['genus']}", file=out)
    if rep.splitting is not None:
        print(f"{'n':>3} {'e':>3} {'f':>6} {'g':>6}  behavior", file=out)
        for row in rep.splitting:
            print(f"{row['level']:>3} {row['e']:>3} {row['f']:>6} {row['g']:>6}  {row['behavior'] or '-'}", file=out)
    for a in rep.assumptions:
        print(f"assuming: {a}", file=out)
    for e in rep.errors:
        print(f"error ({e['kind']}): {e['message']}", file=out)
    return out.getvalue()


# -- batch tables ---------------------------------------------------------------


def _ramified_primes(K: MultiQuadField) -> List[int]:
    ps = list(K.ramified_odd_primes())
    if any(b % 4 != 1 for b in K.basis):
        ps.append(2)
    return ps


def sweep_universe(bound: int) -> List[MultiQuadField]:
    """Imaginary fields of rank 1 or 2 generated by classes -1, +-2, +-p, +-2p
    (p odd prime) whose ramified primes, 2 included, all lie below ``bound``."""
    classes = [-1, 2, -2]
    for p in oracle.odd_primes_below(bound):
        classes += [p, -p, 2 * p, -2 * p]
    seen = {}
    for k in (1, 2):
        for gens in combinations(classes, k):
            K = MultiQuadField.from_classes(list(gens))
            if K.rank != k or K.is_real or K.basis in seen:
                continue
            if all(q < bound for q in _ramified_primes(K)):
                seen[K.basis] = K
    return sorted(seen.values(), key=lambda K: (K.rank, [abs(b) for b in K.basis], K.basis))


def sweep_rows(bound: int) -> List[dict]:
    if bound > SWEEP_BOUND_LIMIT:
        raise ValueError(f"bound {bound} exceeds the safety limit {SWEEP_BOUND_LIMIT}")
    rows = []
    for K in sweep_universe(bound):
        res = lambda2_multiquad_imaginary(K)
        par = classify_parity(K)
        rows.append({
            "field": K.to_text(),
            "lambda2": res.lambda2,
            "parity": par.verdict.value,
            "case": par.matched_case or "",
            "assumptions": "greenberg" if res.greenberg_assumed else "",
        })
    return rows


def format_rows(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(list(rows), indent=2, sort_keys=True) + "\n"
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=SWEEP_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return out.getvalue()


def cmd_sweep(args) -> int:
    try:
        text = format_rows(sweep_rows(args.bound), args.format)
    except (ValueError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS if isinstance(exc, HypothesisError) else EXIT_INPUT
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    log.info("wrote %s", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cfg = oracle.load_config(args.config) if args.config else oracle.SweepConfig()
    except OSError as exc:
        print(f"error: cannot read config {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not cfg.suites:
        print("no suites selected; nothing to verify", file=sys.stderr)
    report = oracle.run_sweeps(cfg)
    print(f"verified {report.checked} cases in {report.elapsed:.2f}s", file=sys.stderr)
    if args.json:
        sys.stdout.write(oracle.report_json(report) + "\n")
    else:
        for name, counts in sorted(report.per_suite.items()):
            print(f"{name:16s} {counts['checked']:>9d} checked {counts['failed']:>6d} failed")
        for suite, inp, exp, got in report.failures[:20]:
            print(f"FAIL {suite} {inp}: expected {exp}, got {got}")
        if len(report.failures) > 20:
            print(f"... {len(report.failures) - 20} more failures")
    return EXIT_OK if report.passed else EXIT_FAIL


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so flags given before and after the verb merge
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("-r", "--radicands", help='comma-separated radicands, e.g. "7,3,-1"')
    g = common.add_mutually_exclusive_group()
    g.add_argument("--assume-greenberg", dest="assume_greenberg", action="store_true",
                   help="take lambda_2(K^+) = 0 (default)")
    g.add_argument("--no-assume-greenberg", dest="assume_greenberg", action="store_false")
    common.add_argument("--lambda-plus", type=int, metavar="N", help="use lambda_2(K^+) = N")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="multiquad-iwasawa",
        description="lambda_2 invariants, class number parity and prime splitting "
        "for multi-quadratic number fields",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("lambda", parents=[common], help="lambda_2 of an imaginary field")
    sub.add_parser("parity", parents=[common], help="class number parity (fields with sqrt 2)")
    sub.add_parser("genus", parents=[common], help="narrow genus field and genus field")
    sp = sub.add_parser("splitting", parents=[common], help="decomposition of p along Q_n")
    sp.add_argument("-p", type=int, required=True, help="odd prime")
    sp.add_argument("-n", dest="levels", default="0..5", help="level range a..b (default 0..5)")
    sp.add_argument("-d", type=int, help="radicand for the step Q_n(sqrt d)/Q_n")
    vp = sub.add_parser("verify", parents=[common], help="run the brute-force oracle sweeps")
    vp.add_argument("config", nargs="?", help="key = value sweep config (default: built-in)")
    sw = sub.add_parser("sweep", parents=[common], help="write a lambda_2/parity table")
    sw.add_argument("--bound", type=int, required=True, help="ramified primes lie below this")
    sw.add_argument("-o", "--output", help="output path (default stdout)")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    defaults = {"json": False, "radicands": None, "assume_greenberg": True,
                "lambda_plus": None, "verbose": False}
    for k, v in defaults.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.verb == "verify":
        return cmd_verify(args)
    if args.verb == "sweep":
        return cmd_sweep(args)
    rep = run_field_verb(args)
    if args.json:
        sys.stdout.write(rep.to_json())
    else:
        text = render_text(rep)
        (sys.stderr if rep.errors else sys.stdout).write(text)
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
