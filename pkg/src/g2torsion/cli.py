"""``g2torsion`` command line: classify, examples, verify, sample.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import builtin, classifier, engine, verify
from .classifier import SamplingError, TorsionClass
from .exterior import KForm, is_zero_matrix
from .report import (
    BracketInput,
    TorsionReportDoc,
    build_report,
    format_form,
    load_bracket_input,
    parse_bracket_input,
)

__all__ = [
    "ExampleOutcome",
    "cmd_classify",
    "cmd_examples",
    "cmd_verify",
    "cmd_sample",
    "main",
]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def cmd_classify(path: str, oracle: bool = True) -> TorsionReportDoc:
    """Report for the bracket stored at ``path`` (``-`` reads standard input)."""
    if path == "-":
        inp = parse_bracket_input(sys.stdin.read(), "<stdin>")
    else:
        inp = load_bracket_input(path)
    return build_report(inp.A, inp.label, oracle=oracle)


@dataclass(frozen=True)
class ExampleOutcome:
    bracket: str
    name: str
    ok: bool
    expected: object
    actual: object

    @property
    def key(self) -> str:
        return f"{self.bracket}.{self.name}"


def _show(x) -> str:
    if isinstance(x, KForm):
        return format_form(x)
    if isinstance(x, np.ndarray):
        entries = [f"[{i + 1},{j + 1}]={v}" for (i, j), v in np.ndenumerate(x) if v != 0]
        return "{" + ", ".join(entries) + "}" if entries else "0"
    if isinstance(x, list):
        return "(" + ", ".join(str(v) for v in x) + ")"
    return str(x)


def cmd_examples(oracle: bool = True) -> tuple[dict[str, TorsionReportDoc], list[ExampleOutcome]]:
    """Run the built-in brackets and compare against every published value."""
    docs = {name: build_report(builtin.bracket(name), name, oracle=oracle) for name in builtin.BUILTIN_ROWS}
    outcomes = []
    for exp in builtin.EXPECTATIONS:
        ok, got = exp.check(docs[exp.bracket])
        outcomes.append(ExampleOutcome(exp.bracket, exp.name, ok, exp.expected, got))
    return docs, outcomes


def cmd_verify(seed: int, count: int) -> verify.VerifyResult:
    return verify.run(seed, count)


def cmd_sample(label: str, count: int, seed: int | None = None) -> list[BracketInput]:
    """``count`` brackets of exactly the requested class, each re-verified from τ."""
    target = TorsionClass.parse(label)
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        A = classifier.sample_bracket(target, rng)
        t = engine.torsion_closed_form(A)
        if classifier.classify_from_tau(t) != target:
            raise SamplingError(f"witness {k + 1} for {target} failed verification")
        if not target.components and not (
            t.tau0 == 0 and t.tau1.is_zero() and t.tau2.is_zero() and is_zero_matrix(t.j_tau3)
        ):
            raise SamplingError(f"witness {k + 1} for {{0}} is not torsion-free")
        out.append(BracketInput.from_matrix(A, f"{target.label} #{k + 1}"))
    return out


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="g2torsion",
        description="Exact torsion of the canonical G2-structure on almost Abelian Lie algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="report on bracket matrices read from JSON files")
    c.add_argument("paths", nargs="+", metavar="path", help='input file(s); "-" for stdin')
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON, one document per line")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable (default)")
    c.add_argument("--no-oracle", action="store_true", help="skip the definitional cross-checks")

    e = sub.add_parser("examples", help="check the built-in brackets against their published values")
    e.add_argument("--json", action="store_true", help="also print the three reports as JSON lines")
    e.add_argument("--no-oracle", action="store_true", help="skip the definitional cross-checks")

    v = sub.add_parser("verify", help="seeded randomized identity suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=_positive_int, default=100)

    s = sub.add_parser("sample", help="emit verified witness brackets of a torsion class")
    s.add_argument("torsion_class", metavar="class", help='e.g. "W2", "W1+W3", "{0}"')
    s.add_argument("--count", type=_positive_int, default=1)
    s.add_argument("--seed", type=int, default=None)
    return p


def _run_classify(args, out) -> int:
    status = EXIT_OK
    for path in args.paths:
        doc = cmd_classify(path, oracle=not args.no_oracle)
        if args.fmt == "json":
            print(doc.to_json(), file=out)
        else:
            print(doc.to_text(), file=out)
        if not doc.ok:
            print(f"{path}: failed checks: {', '.join(doc.failed_checks)}", file=sys.stderr)
            status = EXIT_FAIL
    return status


def _run_examples(args, out) -> int:
    docs, outcomes = cmd_examples(oracle=not args.no_oracle)
    if args.json:
        for doc in docs.values():
            print(doc.to_json(), file=out)
    failed = []
    for o in outcomes:
        if o.ok:
            print(f"PASS {o.key} = {_show(o.actual)}", file=out)
        else:
            failed.append(o.key)
            print(f"FAIL {o.key}: expected {_show(o.expected)}, got {_show(o.actual)}", file=out)
    for name, doc in docs.items():
        for check in doc.failed_checks:
            failed.append(f"{name}.check.{check}")
            print(f"FAIL {name}.check.{check}", file=out)
    print(f"{len(outcomes) - sum(not o.ok for o in outcomes)}/{len(outcomes)} stated values reproduced", file=out)
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _run_verify(args, out) -> int:
    result = cmd_verify(args.seed, args.count)
    for line in result.summary_lines():
        print(line, file=out)
    for f in result.failures:
        replay = "" if f.A is None else " A=" + BracketInput.from_matrix(f.A).to_json()
        print(f"FAIL {f.suite}[{f.index}] {f.identity}{replay}", file=out)
    return EXIT_OK if result.ok else EXIT_FAIL


def _run_sample(args, out) -> int:
    for doc in cmd_sample(args.torsion_class, args.count, args.seed):
        print(doc.to_json(), file=out)
    return EXIT_OK


_HANDLERS = {
    "classify": _run_classify,
    "examples": _run_examples,
    "verify": _run_verify,
    "sample": _run_sample,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    out = sys.stdout
    try:
        return _HANDLERS[args.command](args, out)
    except ValueError as exc:
        # InputError, InadmissibleClassError and unparseable class labels
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SamplingError, ArithmeticError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
