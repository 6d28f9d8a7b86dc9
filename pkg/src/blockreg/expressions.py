"""
The expression language for spaces and split sheaves.

Spaces are projective factors joined by 'x':

    P2xP1

Sheaves are sums of box products with optional multiplicities:

    EXPR := '0' | TERM ('+' TERM)*
    TERM := [INT '*'] PROD
    PROD := ATOM ('#' ATOM)*          one atom per factor
          | 'O(' INT (',' INT)* ')'  line bundle shorthand, one entry per factor
    ATOM := 'O(' k ')' | 'Om(' p ',' k ')' | 'LT(' p ',' k ')'

Om(p,k) is Omega^p(k) and LT(p,k) is wedge^p T(k); both are normalized when
the expression is resolved against a space.
"""

import re
from dataclasses import dataclass
from typing import List, Tuple

import pyparsing as pp

from blockreg.errors import BlockregError, ExpressionParseError, SheafError
from blockreg.factor_cohomology import FactorSheaf, from_wedge_tangent
from blockreg.logging_config import get_logger
from blockreg.product_sheaves import BoxProduct, SplitSheaf, Space
from blockreg.validation import InputSanitizer

logger = get_logger(__name__)


@dataclass(frozen=True)
class AtomNode:
    kind: str
    args: Tuple[int, ...]
    loc: int


@dataclass(frozen=True)
class MultiplicityNode:
    value: int
    loc: int


@dataclass(frozen=True)
class TermNode:
    multiplicity: MultiplicityNode
    atoms: Tuple[AtomNode, ...]
    loc: int


@dataclass(frozen=True)
class SheafExpr:
    """Parsed sheaf expression, not yet checked against a space."""

    text: str
    terms: Tuple[TermNode, ...]


def _make_sheaf_grammar() -> pp.ParserElement:
    integer = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
    lpar, rpar, comma = pp.Suppress("("), pp.Suppress(")"), pp.Suppress(",")

    line_atom = pp.Keyword("O") + lpar + pp.Group(integer + pp.ZeroOrMore(comma + integer)) + rpar
    omega_atom = pp.Keyword("Om") + lpar + pp.Group(integer + comma + integer) + rpar
    wedge_atom = pp.Keyword("LT") + lpar + pp.Group(integer + comma + integer) + rpar
    atom = omega_atom | wedge_atom | line_atom
    atom.set_parse_action(lambda s, loc, t: AtomNode(t[0], tuple(t[1]), loc))

    multiplicity = integer + pp.Suppress("*")
    multiplicity.set_parse_action(lambda s, loc, t: MultiplicityNode(t[0], loc))

    def make_term(s: str, loc: int, t: pp.ParseResults) -> TermNode:
        tokens = list(t)
        if isinstance(tokens[0], MultiplicityNode):
            return TermNode(tokens[0], tuple(tokens[1:]), loc)
        return TermNode(MultiplicityNode(1, loc), tuple(tokens), loc)

    product = atom + pp.ZeroOrMore(pp.Suppress("#") + atom)
    term = pp.Optional(multiplicity) + product
    term.set_parse_action(make_term)

    zero = pp.Suppress(pp.Literal("0")) + pp.StringEnd()
    total = term + pp.ZeroOrMore(pp.Suppress("+") + term) + pp.StringEnd()
    return zero | total


def _make_space_grammar() -> pp.ParserElement:
    factor = pp.Regex(r"P\d+")
    factor.set_parse_action(lambda s, loc, t: [(int(t[0][1:]), loc)])
    return factor + pp.ZeroOrMore(pp.Suppress(pp.Literal("x")) + factor) + pp.StringEnd()


_SHEAF_GRAMMAR = _make_sheaf_grammar()
_SPACE_GRAMMAR = _make_space_grammar()

_TOKEN_RE = re.compile(r"[A-Za-z]+\d*|[+-]?\d+|\S")


def _token_at(text: str, loc: int) -> str:
    match = _TOKEN_RE.match(text, loc)
    return InputSanitizer.sanitize_for_display(match.group(0) if match else "", 40)


def _syntax_error(text: str, loc: int) -> ExpressionParseError:
    while loc < len(text) and text[loc].isspace():
        loc += 1
    if loc >= len(text):
        return ExpressionParseError.unexpected_end(pp.lineno(loc, text), pp.col(loc, text))
    return ExpressionParseError.unexpected_token(
        _token_at(text, loc), pp.lineno(loc, text), pp.col(loc, text)
    )


def _semantic_error(text: str, loc: int, error: BlockregError) -> ExpressionParseError:
    return ExpressionParseError(
        error.message,
        line=pp.lineno(loc, text),
        column=pp.col(loc, text),
        token=_token_at(text, loc),
        suggestions=error.suggestions,
    )


def parse_space(text: str) -> Space:
    """
    Parse 'P<n>' factors joined by 'x'.

    Raises:
        ExpressionParseError: On malformed input or a factor of dimension 0
    """
    InputSanitizer.check_expression_length(text)
    try:
        factors: List[Tuple[int, int]] = list(_SPACE_GRAMMAR.parse_string(text, parse_all=True))
    except pp.ParseBaseException as e:
        raise _syntax_error(text, e.loc) from None
    for n, loc in factors:
        if n < 1:
            raise ExpressionParseError.bad_dimension(_token_at(text, loc), pp.col(loc, text))
    return Space(tuple(n for n, _ in factors))


def parse_expression(text: str) -> SheafExpr:
    """Syntax-only parse of a sheaf expression."""
    InputSanitizer.check_expression_length(text)
    try:
        terms = tuple(_SHEAF_GRAMMAR.parse_string(text, parse_all=True))
    except pp.ParseBaseException as e:
        raise _syntax_error(text, e.loc) from None
    return SheafExpr(text, terms)


def _resolve_atom(text: str, atom: AtomNode, n: int) -> FactorSheaf:
    try:
        if atom.kind == "O":
            if len(atom.args) != 1:
                raise SheafError.arity_mismatch(1, len(atom.args), "a factor of a box product")
            return FactorSheaf.line(n, atom.args[0])
        p, k = atom.args
        if atom.kind == "Om":
            return FactorSheaf(n, p, k)
        return from_wedge_tangent(n, p, k)
    except BlockregError as e:
        raise _semantic_error(text, atom.loc, e) from None


def _resolve_term(text: str, term: TermNode, space: Space) -> Tuple[int, BoxProduct]:
    if term.multiplicity.value < 1:
        raise _semantic_error(
            text,
            term.multiplicity.loc,
            SheafError.non_positive_multiplicity(term.multiplicity.value),
        )
    r = space.factor_count
    atoms = term.atoms
    if len(atoms) == 1 and atoms[0].kind == "O" and len(atoms[0].args) == r:
        return term.multiplicity.value, BoxProduct.line_bundle(space, atoms[0].args)
    if len(atoms) != r:
        raise _semantic_error(
            text, atoms[0].loc, SheafError.arity_mismatch(r, len(atoms), "box product")
        )
    factors = tuple(_resolve_atom(text, atom, n) for atom, n in zip(atoms, space.dims))
    return term.multiplicity.value, BoxProduct(factors)


def resolve(expr: SheafExpr, space: Space) -> SplitSheaf:
    """Check a parsed expression against `space` and normalize it."""
    return SplitSheaf.from_terms(_resolve_term(expr.text, term, space) for term in expr.terms)


def parse_sheaf(text: str, space: Space) -> SplitSheaf:
    """
    Parse and normalize a split sheaf on `space`.

    Raises:
        ExpressionParseError: On syntax errors, arity mismatches, non-positive
            multiplicities or exterior powers out of range
    """
    sheaf = resolve(parse_expression(text), space)
    logger.debug(f"Parsed '{InputSanitizer.sanitize_for_display(text)}' as {sheaf}")
    return sheaf


def parse_box(text: str, space: Space) -> BoxProduct:
    """Parse a single box product, e.g. a test object."""
    sheaf = parse_sheaf(text, space)
    if len(sheaf.terms) != 1 or sheaf.terms[0][0] != 1:
        raise ExpressionParseError(
            "expected a single box product without multiplicity",
            column=1,
            token=_token_at(text, 0),
        )
    return sheaf.terms[0][1]


def format_sheaf(F: SplitSheaf) -> str:
    """Inverse of parse_sheaf up to normalization."""
    return str(F)


def format_box(box: BoxProduct) -> str:
    """Render one box product in the syntax parse_box reads."""
    return str(box)
