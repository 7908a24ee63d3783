"""
Output Formatters
Renders SymExpr and RationalExpr as plain text (S[2,1] notation), LaTeX
(S_{\\{\\{2,1\\}\\}} notation for brackets) and a JSON term list that parses
back exactly.
"""
import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import sympy

from src.errors import ParseError
from src.rational import RationalExpr
from src.subdivisions import Subdivision
from src.symexpr import (
    N, Atom, Bracket, SymExpr, TermKey, cumulant, falling, moment, power_sum,
)

Expression = Union[SymExpr, RationalExpr]

_n = sympy.Symbol("n")


def display_order(expr: SymExpr) -> List[Tuple[TermKey, Fraction]]:
    """
    Terms grouped by their non-n part, fewest factors first; inside a group
    higher powers of n come first.
    """
    def rank(item):
        key, _ = item
        rest = tuple((a, e) for a, e in key if a != N)
        n_power = dict(key).get(N, 0)
        return (sum(abs(e) for _, e in rest), rest, -n_power)
    return sorted(expr.terms.items(), key=rank)


# ---------------------------------------------------------------- text

def _vector_text(v) -> str:
    return ",".join(str(x) for x in v)


def atom_text(atom: Atom) -> str:
    if atom.kind == "n":
        return "n"
    if atom.kind == "ff":
        return f"(n)_{atom.index[0]}"
    if atom.kind == "AUG":
        return "AUG[" + ",".join("{" + _vector_text(p) + "}" for p in atom.index) + "]"
    return f"{atom.kind}[{_vector_text(atom.index)}]"


def _term_text(key: TermKey, coeff: Fraction, first: bool) -> str:
    factors = [atom_text(a) if e == 1 else f"{atom_text(a)}^{e}" for a, e in key]
    magnitude = abs(coeff)
    if not factors:
        body = str(magnitude)
    elif magnitude == 1:
        body = "*".join(factors)
    else:
        body = f"{magnitude}*" + "*".join(factors)
    if first:
        return f"-{body}" if coeff < 0 else body
    return f" - {body}" if coeff < 0 else f" + {body}"


def _sym_text(expr: SymExpr) -> str:
    if expr.is_zero:
        return "0"
    return "".join(
        _term_text(key, coeff, idx == 0) for idx, (key, coeff) in enumerate(display_order(expr))
    )


def _factored_denominator(den: SymExpr, latex: bool) -> Tuple[List[str], bool]:
    """
    Factor a polynomial in n into printable pieces.

    Returns:
        tuple: (pieces, compound) where compound tells whether parentheses are
            needed around the joined pieces in text output
    """
    coeffs = den.collect_in_n()[()]
    poly = sympy.Poly.from_dict(
        {(p,): sympy.Rational(c.numerator, c.denominator) for p, c in coeffs.items()}, _n
    )
    constant, factors = sympy.factor_list(poly.as_expr(), _n)
    ordered = []
    for factor, mult in factors:
        fpoly = sympy.Poly(factor, _n)
        ordered.append((fpoly.degree(), -fpoly.TC() / fpoly.LC(), fpoly, mult))
    ordered.sort(key=lambda item: (item[0], item[1]))

    pieces = []
    if constant != 1:
        pieces.append(sympy.latex(constant) if latex else str(constant))
    for degree, _, fpoly, mult in ordered:
        if degree == 1 and fpoly.LC() == 1 and fpoly.TC() == 0:
            text = "n"
        else:
            inner = str(fpoly.as_expr()).replace(" ", "").replace("**", "^")
            if latex:
                inner = sympy.latex(fpoly.as_expr()).replace(" ", "")
            text = f"({inner})"
        if mult > 1:
            text = f"{text}^{{{mult}}}" if latex else f"{text}^{mult}"
        pieces.append(text)
    compound = len(pieces) > 1 or any(f[0] > 1 for f in ordered)
    return pieces, compound


def _is_plain_polynomial_in_n(expr: SymExpr) -> bool:
    return bool(expr.atoms()) and expr.atoms() <= {N}


def to_text(expr: Expression) -> str:
    """Plain text, e.g. (n^2*S[3] - 3*n*S[1]*S[2] + 2*S[1]^3) / (n*(n-1)*(n-2))."""
    if isinstance(expr, SymExpr):
        return _sym_text(expr)
    num, den = expr.numerator, expr.denominator
    if den.is_constant and den.constant_value() == 1:
        return _sym_text(num)
    if _is_plain_polynomial_in_n(den):
        pieces, compound = _factored_denominator(den, latex=False)
        den_text = "*".join(pieces)
    else:
        den_text = _sym_text(den)
        compound = len(den) > 1 or any(
            len(key) > 1 or coeff != 1 or key[0][1] != 1 for key, coeff in den.terms.items()
        )
    if compound:
        den_text = f"({den_text})"
    if len(num) > 1:
        return f"({_sym_text(num)}) / {den_text}"
    return f"{_sym_text(num)}/{den_text}"


# ---------------------------------------------------------------- latex

def atom_latex(atom: Atom) -> str:
    if atom.kind == "n":
        return "n"
    if atom.kind == "ff":
        return f"(n)_{{{atom.index[0]}}}"
    if atom.kind == "AUG":
        inner = ",".join(r"\{" + _vector_text(p) + r"\}" for p in atom.index)
        return r"S_{\{" + inner + r"\}}"
    symbol = {"S": "S", "m": "m", "k": r"\kappa"}[atom.kind]
    return f"{symbol}_{{{_vector_text(atom.index)}}}"


def _coeff_latex(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return rf"\frac{{{value.numerator}}}{{{value.denominator}}}"


def _sym_latex(expr: SymExpr) -> str:
    if expr.is_zero:
        return "0"
    out = []
    for idx, (key, coeff) in enumerate(display_order(expr)):
        factors = [atom_latex(a) if e == 1 else f"{atom_latex(a)}^{{{e}}}" for a, e in key]
        magnitude = abs(coeff)
        if not factors:
            body = _coeff_latex(magnitude)
        elif magnitude == 1:
            body = " ".join(factors)
        else:
            body = _coeff_latex(magnitude) + " " + " ".join(factors)
        if idx == 0:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(out)


def to_latex(expr: Expression) -> str:
    r"""LaTeX, e.g. \frac{n^{2} S_{3} - 3 n S_{1} S_{2} + 2 S_{1}^{3}}{n(n-1)(n-2)}."""
    if isinstance(expr, SymExpr):
        return _sym_latex(expr)
    num, den = expr.numerator, expr.denominator
    if den.is_constant and den.constant_value() == 1:
        return _sym_latex(num)
    if _is_plain_polynomial_in_n(den):
        pieces, _ = _factored_denominator(den, latex=True)
        den_latex = "".join(pieces)
    else:
        den_latex = _sym_latex(den)
    return rf"\frac{{{_sym_latex(num)}}}{{{den_latex}}}"


# ---------------------------------------------------------------- json

def _atom_json(atom: Atom, power: int) -> Dict[str, Any]:
    if atom.kind == "AUG":
        index = [list(p) for p in atom.index]
    else:
        index = list(atom.index)
    return {"kind": atom.kind, "index": index, "power": power}


def _atom_from_json(data: Dict[str, Any]) -> Atom:
    kind = data.get("kind")
    index = data.get("index", [])
    if kind == "n":
        return N
    if kind == "ff":
        return falling(int(index[0]))
    if kind == "S":
        return power_sum(index)
    if kind == "m":
        return moment(index)
    if kind == "k":
        return cumulant(index)
    if kind == "AUG":
        return Bracket(tuple(tuple(p) for p in index)).atom()
    raise ParseError(f"unknown atom kind: {kind!r}")


def sym_to_json(expr: SymExpr) -> Dict[str, Any]:
    return {
        "terms": [
            {"coeff": str(coeff), "atoms": [_atom_json(a, e) for a, e in key]}
            for key, coeff in display_order(expr)
        ]
    }


def to_json_data(expr: Expression) -> Dict[str, Any]:
    if isinstance(expr, SymExpr):
        return sym_to_json(expr)
    return {"numerator": sym_to_json(expr.numerator), "denominator": sym_to_json(expr.denominator)}


def to_json(expr: Expression) -> str:
    return json.dumps(to_json_data(expr), sort_keys=True)


def _sym_from_json(data: Dict[str, Any]) -> SymExpr:
    try:
        return SymExpr.from_terms(
            (((_atom_from_json(a), int(a["power"])) for a in term["atoms"]), Fraction(term["coeff"]))
            for term in data["terms"]
        )
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ParseError(f"malformed expression JSON: {e}") from e


def from_json_data(data: Dict[str, Any]) -> Expression:
    if "numerator" in data:
        if "denominator" not in data:
            raise ParseError("rational expression JSON needs a denominator")
        return RationalExpr(_sym_from_json(data["numerator"]), _sym_from_json(data["denominator"]))
    return _sym_from_json(data)


def parse_json(text: str) -> Expression:
    """Inverse of to_json."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    return from_json_data(data)


def render(expr: Expression, fmt: str) -> str:
    if fmt == "text":
        return to_text(expr)
    if fmt == "latex":
        return to_latex(expr)
    if fmt == "json":
        return to_json(expr)
    raise ParseError(f"unknown output format: {fmt!r}")


# ---------------------------------------------------------------- subdivision tables

def _block_names(block, names) -> List[str]:
    return [element.display(names) for element in block.elements()]


def subdivisions_to_text(rows: Sequence[Subdivision], names: Sequence[str] = None) -> str:
    """Two-column table: subdivision and multiplicity, then the total."""
    cells = [(row.display(names), row.multiplicity) for row in rows]
    width = max((len(text) for text, _ in cells), default=11)
    width = max(width, len("subdivision"))
    lines = [f"{'subdivision':<{width}}  multiplicity"]
    lines.extend(f"{text:<{width}}  {count}" for text, count in cells)
    lines.append(f"{'total':<{width}}  {sum(count for _, count in cells)}")
    return "\n".join(lines)


def subdivisions_to_latex(rows: Sequence[Subdivision], names: Sequence[str] = None) -> str:
    lines = [r"\begin{tabular}{lr}", r"subdivision & multiplicity \\ \hline"]
    for row in rows:
        blocks = ", ".join(
            r"\{" + ", ".join(_block_names(block, names)) + r"\}" for block in row.iter_blocks()
        )
        lines.append(rf"$\{{{blocks}\}}$ & {row.multiplicity} \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


def subdivisions_to_json_data(rows: Sequence[Subdivision], names: Sequence[str] = None) -> Dict[str, Any]:
    return {
        "subdivisions": [
            {
                "blocks": [_block_names(block, names) for block in row.iter_blocks()],
                "multiplicity": row.multiplicity,
            }
            for row in rows
        ],
        "total": sum(row.multiplicity for row in rows),
    }
