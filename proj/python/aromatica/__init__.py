"""Exact computations with rooted trees, aromas and aromatic forests.

Structures use the text format of the command-line tool, e.g. ``3(1,2(4))``,
``*3(1)``, ``cycle[1(4);2;3]``. Linear combinations come back as dicts from
text to :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import _core
from ._core import (
    ColourError,
    DomainError,
    IncompleteCoefficientsError,
    StructuralError,
    UnsupportedInputError,
    UsageError,
    abel_identity_holds,
    aroma_code,
    bicomplex_horizontal_homology,
    check_divergence_identity,
    enumerate,
    homology,
    suboperad_span_dimension,
    tree_code,
)

__all__ = [
    "ColourError",
    "DomainError",
    "IncompleteCoefficientsError",
    "StructuralError",
    "UnsupportedInputError",
    "UsageError",
    "abel_identity_holds",
    "action",
    "aroma_code",
    "bicomplex_horizontal_homology",
    "bracket",
    "character_formula",
    "check_divergence_identity",
    "compose",
    "cyclic_brace",
    "div",
    "div0",
    "enumerate",
    "homology",
    "prelie",
    "suboperad_span_dimension",
    "symmetry_order",
    "tree_code",
    "verify",
    "volume_obstruction",
]


def _comb(terms):
    return {text: Fraction(coeff) for text, coeff in terms}


def compose(outer: str, star: str | int, inner: str) -> dict[str, Fraction]:
    return _comb(_core.compose(outer, str(star), inner))


def prelie(a: str, b: str) -> dict[str, Fraction]:
    return _comb(_core.prelie(a, b))


def bracket(a: str, b: str) -> dict[str, Fraction]:
    return _comb(_core.bracket(a, b))


def action(aroma: str, tree: str) -> dict[str, Fraction]:
    return _comb(_core.action(aroma, tree))


def div(tree: str) -> dict[str, Fraction]:
    return _comb(_core.div(tree))


def div0(tree: str) -> dict[str, Fraction]:
    return _comb(_core.div0(tree))


def cyclic_brace(*trees: str) -> dict[str, Fraction]:
    return _comb(_core.cyclic_brace(list(trees)))


def symmetry_order(code: str) -> int:
    return int(_core.symmetry_order(code))


def character_formula(cycle_type) -> int:
    return int(_core.character_formula(list(cycle_type)))


def volume_obstruction(coefficients: dict[int, dict[str, Fraction]] | str) -> dict[int, dict[str, Fraction]]:
    """Obstruction to volume preservation, order by order.

    ``coefficients`` maps an order to ``{tree code: b(tree)}``, or is the JSON
    text accepted by the command-line tool.
    """
    if not isinstance(coefficients, str):
        coefficients = json.dumps(
            {
                str(order): [{"tree": code, "value": str(Fraction(v))} for code, v in trees.items()]
                for order, trees in coefficients.items()
            }
        )
    return {order: _comb(terms) for order, terms in _core.volume_obstruction(coefficients).items()}


def verify(suite: str, max_n: int | None = None, seed: int | None = None, parallel: bool = False) -> dict:
    """Runs a verification suite and returns the parsed JSON report."""
    return json.loads(_core.verify(suite, max_n, seed, parallel))
