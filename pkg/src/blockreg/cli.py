"""Command-line interface for blockreg."""

import argparse
import contextlib
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from blockreg import __version__
from blockreg.block_machinery import (
    aligned_window_dual,
    fundamental_collection,
    gram_matrix,
    helix_block,
    k0_class,
    left_dual_classes_k0,
    rank,
    window,
)
from blockreg.errors import (
    BlockregError,
    ExpressionParseError,
    SearchCapExceeded,
    ValidationError,
)
from blockreg.expressions import format_box, parse_sheaf, parse_space
from blockreg.logging_config import get_logger, setup_logging
from blockreg.product_sheaves import MultiDegree, SplitSheaf, Space, cohomology, euler_pairing
from blockreg.regularity import (
    DEFAULT_SEARCH_CAP,
    NEG_INF,
    RegularityVerdict,
    Witness,
    beilinson_terms,
    block_verdict,
    block_witnesses,
    cm_verdict,
    cm_witnesses,
    hw_verdict,
    hw_witnesses,
)
from blockreg.suites import DEFAULT_MAX_DEGREE, DEFAULT_SEED, SUITE_NAMES, SuiteOptions, run_suites
from blockreg.utils import parse_int_vector
from blockreg.validation import InputSanitizer, ManifestReader

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_SEARCH_CAP = 3

Payload = Dict[str, Any]


class CommandOutput:
    """Result of one subcommand: the JSON payload plus its plain-text rendering."""

    def __init__(self, inputs: Payload, result: Any, text: List[str],
                 details: Optional[List[str]] = None,
                 witnesses: Optional[List[Witness]] = None,
                 status: int = EXIT_OK) -> None:
        self.inputs = inputs
        self.result = result
        self.text = text
        self.details = details or []
        self.witnesses = witnesses or []
        self.status = status

    def payload(self) -> Payload:
        return {
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": [witness_to_json(w) for w in self.witnesses],
        }

    def render(self, as_json: bool, quiet: bool) -> str:
        if as_json:
            return json.dumps(self.payload(), indent=2, sort_keys=True) + "\n"
        lines = list(self.text)
        if not quiet:
            lines.extend(self.details)
            lines.extend(f"witness: {w}" for w in self.witnesses)
        return "".join(line + "\n" for line in lines)


def line_name(a: Sequence[int]) -> str:
    return "O(" + ",".join(str(x) for x in a) + ")"


def json_number(value: Any) -> Any:
    """-inf is not valid JSON; it is written as the string '-inf'."""
    if isinstance(value, float) and value == NEG_INF:
        return "-inf"
    return value


def text_number(value: Any) -> str:
    if isinstance(value, float) and value == NEG_INF:
        return "-inf"
    return str(value)


def witness_to_json(w: Witness) -> Payload:
    return {
        "test_object": w.test_object,
        "against": w.against,
        "q": w.q,
        "dimension": w.dimension,
        "twist": list(w.twist) if w.twist is not None else None,
        "member": list(w.member) if w.member is not None else None,
    }


def _sheaves(args: argparse.Namespace, space: Space) -> List[Tuple[str, SplitSheaf]]:
    """The positional sheaf, or every expression of --manifest."""
    if args.manifest:
        sheaves = []
        for number, text in ManifestReader.read_expressions(args.manifest):
            try:
                sheaves.append((text, parse_sheaf(text, space)))
            except ExpressionParseError as e:
                raise e.at_line(number) from None
        return sheaves
    if args.sheaf is None:
        raise ValidationError(
            "A sheaf expression is required",
            suggestions=["Pass the sheaf as a positional argument or use --manifest <path>"],
        )
    return [(args.sheaf, parse_sheaf(args.sheaf, space))]


def _vector(text: str, space: Space) -> MultiDegree:
    return parse_int_vector(text, space.factor_count)


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_cohom(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    sheaves = _sheaves(args, space)
    tables = [(text, cohomology(space, F)) for text, F in sheaves]
    inputs = {"command": "cohom", "space": str(space)}
    if not args.manifest:
        text, table = tables[0]
        inputs["sheaf"] = InputSanitizer.sanitize_for_display(text)
        return CommandOutput(inputs, table.nonzero(), [str(table)],
                             [f"euler characteristic: {table.euler_characteristic}"])
    inputs["manifest"] = args.manifest
    result = [{"sheaf": text, "cohomology": table.nonzero()} for text, table in tables]
    lines = [f"{InputSanitizer.sanitize_for_display(text)}: {table}" for text, table in tables]
    return CommandOutput(inputs, result, lines)


def cmd_euler(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    a, b = _vector(args.a, space), _vector(args.b, space)
    value = euler_pairing(space, a, b)
    inputs = {"command": "euler", "space": str(space), "a": list(a), "b": list(b)}
    return CommandOutput(inputs, value, [str(value)])


def cmd_blocks(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    inputs: Payload = {"command": "blocks", "space": str(space)}
    if args.index is not None:
        block = helix_block(space, args.index)
        members = [line_name(a) for a in block]
        inputs["index"] = args.index
        result = {"index": args.index, "members": members}
        return CommandOutput(inputs, result, [f"E_{args.index}: {', '.join(members)}"])
    collection = fundamental_collection(space)
    blocks = [
        {"index": j, "members": [line_name(a) for a in block]}
        for j, block in enumerate(collection.blocks)
    ]
    lines = [f"E_{b['index']}: {', '.join(b['members'])}" for b in blocks]
    block_type = list(collection.block_type)
    details = ["type: " + " ".join(str(size) for size in block_type)]
    return CommandOutput(inputs, {"blocks": blocks, "type": block_type}, lines, details)


def cmd_gram(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    collection = window(space, args.window) if args.window is not None else \
        fundamental_collection(space)
    gram = gram_matrix(space, collection)
    inputs: Payload = {"command": "gram", "space": str(space)}
    if args.window is not None:
        inputs["window"] = args.window
    width = max(len(str(value)) for row in gram.rows for value in row)
    lines = [" ".join(str(value).rjust(width) for value in row) for row in gram.rows]
    unitriangular = gram.is_unitriangular()
    result = {
        "members": [line_name(a) for a in collection.members],
        "matrix": [list(row) for row in gram.rows],
        "unitriangular": unitriangular,
    }
    details = [f"unitriangular: {'yes' if unitriangular else 'no'}"]
    return CommandOutput(inputs, result, lines, details)


def cmd_dual(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    inputs: Payload = {"command": "dual", "space": str(space)}
    if args.k0:
        base = args.window if args.window is not None else 0
        inputs["window"] = base
        result = []
        lines = []
        for dual in left_dual_classes_k0(space, base):
            coords = list(dual.cls.coords)
            class_rank = rank(space, dual.cls)
            result.append({
                "member": line_name(dual.member),
                "block": dual.block_index,
                "distance": dual.distance,
                "class": coords,
                "rank": class_rank,
            })
            lines.append(
                f"E_{dual.block_index} {line_name(dual.member)}: {coords} rank {class_rank}"
            )
        return CommandOutput(inputs, result, lines)
    k = args.k if args.k is not None else 0
    inputs["k"] = k
    result = []
    lines = []
    for block in aligned_window_dual(space, k):
        for dual in block:
            result.append({
                "member": line_name(dual.member),
                "block": dual.block_index,
                "distance": dual.distance,
                "dual": format_box(dual.obj),
                "class": list(k0_class(space, dual.obj).coords),
            })
            lines.append(f"E_{dual.block_index} {line_name(dual.member)} -> {format_box(dual.obj)}")
    return CommandOutput(inputs, result, lines)


def _verdict_json(verdict: RegularityVerdict) -> Payload:
    interval = None
    if verdict.interval is not None:
        interval = [json_number(x) for x in verdict.interval]
    return {
        "kind": verdict.kind,
        "value": json_number(verdict.value),
        "interval": interval,
        "experimental": verdict.experimental,
        "details": {key: json_number(value) for key, value in verdict.details.items()},
    }


def _verdict_details(verdict: RegularityVerdict) -> List[str]:
    details = []
    if verdict.interval is not None:
        lower, upper = verdict.interval
        details.append(f"interval: ({text_number(lower)}, {text_number(upper)}]")
    if verdict.experimental:
        details.append("experimental: staircase sets beyond two factors")
    return details


def _regularity(args: argparse.Namespace, space: Space, F: SplitSheaf
                ) -> Tuple[Any, List[str], List[str], List[Witness]]:
    kind = args.kind
    if kind == "cm" and not space.is_projective_space:
        raise ValidationError(
            f"Castelnuovo-Mumford regularity needs a single projective factor, got {space}",
            suggestions=["Use --kind block or --kind hw on products"],
        )
    if args.base is not None:
        if kind != "hw":
            raise ValidationError("--base applies to --kind hw only",
                                  suggestions=["Use --at m for cm and block regularity"])
        base = _vector(args.base, space)
        witnesses = hw_witnesses(space, F, base)
        result = {"regular": not witnesses, "base": list(base)}
        return result, ["true" if not witnesses else "false"], [], witnesses
    if args.at is not None:
        if kind == "hw":
            raise ValidationError("--at applies to --kind cm and block only",
                                  suggestions=["Use --base p1,...,pr for hw regularity"])
        if kind == "cm":
            witnesses = cm_witnesses(space.dims[0], F, args.at)
        else:
            witnesses = block_witnesses(space, F, args.at)
        result = {"regular": not witnesses, "m": args.at}
        return result, ["true" if not witnesses else "false"], [], witnesses
    if kind == "cm":
        verdict = cm_verdict(space.dims[0], F, args.search_cap)
    elif kind == "block":
        verdict = block_verdict(space, F, args.search_cap)
    else:
        verdict = hw_verdict(space, F, args.search_cap)
    return (_verdict_json(verdict), [text_number(verdict.value)],
            _verdict_details(verdict), verdict.witnesses)


def cmd_reg(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    sheaves = _sheaves(args, space)
    inputs: Payload = {"command": "reg", "space": str(space), "kind": args.kind}
    if args.at is not None:
        inputs["at"] = args.at
    if args.base is not None:
        inputs["base"] = list(_vector(args.base, space))
    if not args.manifest:
        text, F = sheaves[0]
        inputs["sheaf"] = InputSanitizer.sanitize_for_display(text)
        result, lines, details, witnesses = _regularity(args, space, F)
        return CommandOutput(inputs, result, lines, details, witnesses)
    inputs["manifest"] = args.manifest
    results = []
    lines = []
    for text, F in sheaves:
        result, first, _, _ = _regularity(args, space, F)
        results.append({"sheaf": text, "regularity": result})
        lines.append(f"{InputSanitizer.sanitize_for_display(text)}: {first[0]}")
    return CommandOutput(inputs, results, lines)


def cmd_beilinson(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    F = parse_sheaf(args.sheaf, space)
    resolution = beilinson_terms(space, F, args.m)
    k0_ok = resolution.alternating_class() == k0_class(space, F)
    terms = []
    lines = []
    for term in resolution.terms:
        terms.append({
            "p": term.p,
            "summands": [
                {"member": line_name(degree), "multiplicity": multiplicity}
                for degree, multiplicity in term.summands
            ],
        })
        lines.append(f"L_{term.p}: {term.as_sheaf(space)}")
    inputs = {
        "command": "beilinson",
        "space": str(space),
        "sheaf": InputSanitizer.sanitize_for_display(args.sheaf),
        "m": args.m,
    }
    result = {"m": args.m, "terms": terms, "k0_check": k0_ok}
    details = [f"k0 check: {'ok' if k0_ok else 'FAILED'}"]
    status = EXIT_OK if k0_ok else EXIT_VERIFICATION_FAILED
    return CommandOutput(inputs, result, lines, details, status=status)


def cmd_verify(args: argparse.Namespace) -> CommandOutput:
    space = parse_space(args.space)
    options = SuiteOptions(max_degree=args.max_degree, seed=args.seed, cap=args.search_cap)
    reports = run_suites(space, args.suite, options)
    summary = []
    lines = []
    witnesses: List[Witness] = []
    details: List[str] = []
    for report in reports:
        summary.append({
            "name": report.name,
            "cases": report.cases,
            "failures": len(report.failures),
            "passed": report.passed,
            "skipped": report.skipped,
            "experimental": report.experimental,
        })
        if report.skipped:
            lines.append(f"{report.name}: skipped ({report.skipped})")
        elif report.passed:
            lines.append(f"{report.name}: ok ({report.cases} cases)")
        else:
            lines.append(f"{report.name}: FAILED {len(report.failures)} of {report.cases}")
            for failure in report.failures:
                details.append(f"failure: {report.name}: {failure.details}")
                witnesses.extend(failure.witnesses)
    passed = all(report.passed for report in reports)
    inputs = {
        "command": "verify",
        "space": str(space),
        "suite": args.suite,
        "max_degree": args.max_degree,
        "seed": args.seed,
    }
    status = EXIT_OK if passed else EXIT_VERIFICATION_FAILED
    return CommandOutput(inputs, {"passed": passed, "suites": summary}, lines, details,
                         witnesses, status)


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='emit one JSON object')
    common.add_argument('-q', '--quiet', action='store_true',
                        help='print the result only and log errors only')
    common.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG level')
    common.add_argument('--log-file', default=None, help='also write a DEBUG log to this file')
    common.add_argument('--search-cap', type=int, default=DEFAULT_SEARCH_CAP,
                        help=f'bracket for least-m searches (default {DEFAULT_SEARCH_CAP})')

    parser = argparse.ArgumentParser(
        prog='blockreg',
        description='Cohomology, block collections and regularity on products of '
                    'projective spaces',
        epilog='Vectors beginning with "-" must be attached: --base=-1,0 or written O(-1,0).',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('cohom', parents=[common], help='cohomology table of a split sheaf')
    p.add_argument('space', help="space, e.g. P1xP1")
    p.add_argument('sheaf', nargs='?', help="sheaf expression, e.g. 'O(-1,0) + 2*O(2,-1)'")
    p.add_argument('--manifest', help='file with one sheaf expression per line')
    p.set_defaults(handler=cmd_cohom)

    p = sub.add_parser('euler', parents=[common], help='Euler pairing chi(O(a), O(b))')
    p.add_argument('space')
    p.add_argument('a', help="multidegree, e.g. 'O(-1,-1)' or 1,0")
    p.add_argument('b', help="multidegree")
    p.set_defaults(handler=cmd_euler)

    p = sub.add_parser('blocks', parents=[common], help='fundamental collection or a helix block')
    p.add_argument('space')
    p.add_argument('--index', type=int, default=None, help='helix index of a single block')
    p.set_defaults(handler=cmd_blocks)

    p = sub.add_parser('gram', parents=[common], help='Gram matrix of the Euler form')
    p.add_argument('space')
    p.add_argument('--window', type=int, default=None, help='base index of a helix window')
    p.set_defaults(handler=cmd_gram)

    p = sub.add_parser('dual', parents=[common], help='dual collections')
    p.add_argument('space')
    p.add_argument('--k', type=int, default=None, help='aligned window k(d+1) (closed form)')
    p.add_argument('--k0', action='store_true', help='K0 classes solved from orthogonality')
    p.add_argument('--window', type=int, default=None, help='window base for --k0')
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser('reg', parents=[common], help='regularity of a split sheaf')
    p.add_argument('space')
    p.add_argument('sheaf', nargs='?')
    p.add_argument('--kind', choices=['cm', 'block', 'hw'], required=True)
    where = p.add_mutually_exclusive_group()
    where.add_argument('--at', type=int, default=None, help='test m-regularity at this m')
    where.add_argument('--base', default=None, help='test hw regularity at this multidegree')
    p.add_argument('--manifest', help='file with one sheaf expression per line')
    p.set_defaults(handler=cmd_reg)

    p = sub.add_parser('beilinson', parents=[common], help='terms of the resolution at m')
    p.add_argument('space')
    p.add_argument('sheaf')
    p.add_argument('--m', type=int, required=True, help='m (aligned on products)')
    p.set_defaults(handler=cmd_beilinson)

    p = sub.add_parser('verify', parents=[common], help='run verification suites')
    p.add_argument('space')
    p.add_argument('--suite', choices=SUITE_NAMES, default='all')
    p.add_argument('--max-degree', type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_verify)

    return parser


def _log_level(args: argparse.Namespace) -> int:
    if args.verbose:
        return logging.DEBUG
    if args.quiet:
        return logging.ERROR
    return logging.WARNING


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
        err: Optional[TextIO] = None) -> int:
    """Run one command and return its exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_USAGE

    setup_logging(_log_level(args), args.log_file)
    handler: Callable[[argparse.Namespace], CommandOutput] = args.handler
    logger.debug(f"Running '{args.command}' on {InputSanitizer.sanitize_for_display(args.space)}")
    try:
        output = handler(args)
    except SearchCapExceeded as e:
        err.write(f"Error: {e}\n")
        return EXIT_SEARCH_CAP
    except BlockregError as e:
        err.write(f"Error: {e}\n")
        return EXIT_USAGE

    out.write(output.render(args.json, args.quiet))
    return output.status


def main() -> None:
    """Main entry point for the blockreg command-line tool"""
    sys.exit(run())


if __name__ == "__main__":
    main()
