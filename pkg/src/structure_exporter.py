"""
Structure Exporter - Finite presentation of the truncated DGLA

Emits the bracket of every pair of basis monomials whose lengths add up to
at most N, and the differential of every basis monomial.
"""

import logging
from typing import Any, Dict, List

import pandas as pd

from derivations import Derivation, apply
from expression_parser import dumps, element_to_records, monomial_record, tree_to_json
from lie_algebra import LieElement, LieMonomial, TruncationContext, basis_upto, bracket, format_tree

logger = logging.getLogger(__name__)


class StructureExporter:
    """Tabulates structure constants and differential values"""

    def __init__(self, context: TruncationContext, differential: Derivation):
        """Initialize with the truncation context and the differential to tabulate"""
        context.require_same(differential.context)
        self.context = context
        self.differential = differential
        self.basis = basis_upto(context)

    def _element(self, monomial: LieMonomial) -> LieElement:
        return LieElement.from_monomial(monomial, self.context)

    def bracket_rows(self) -> List[Dict[str, Any]]:
        rows = []
        limit = self.context.max_length
        for i, left in enumerate(self.basis):
            for right in self.basis[i:]:
                if left.length + right.length > limit:
                    continue
                value = bracket(self._element(left), self._element(right))
                rows.append({"left": left, "right": right, "value": value})
        logger.debug(f"tabulated {len(rows)} brackets at N={limit}")
        return rows

    def differential_rows(self) -> List[Dict[str, Any]]:
        return [
            {"monomial": m, "value": apply(self.differential, self._element(m))}
            for m in self.basis
        ]

    def export(self) -> Dict[str, Any]:
        """
        Machine-readable presentation.

        Returns:
            Dictionary with the alphabet, basis, bracket table and differential table
        """
        alphabet = self.context.alphabet
        return {
            "max_length": self.context.max_length,
            "alphabet": [{"name": g.name, "degree": g.degree} for g in alphabet],
            "basis": [monomial_record(m, self.context) for m in self.basis],
            "brackets": [
                {
                    "left": tree_to_json(row["left"].tree(alphabet)),
                    "right": tree_to_json(row["right"].tree(alphabet)),
                    "value": element_to_records(row["value"]),
                }
                for row in self.bracket_rows()
            ],
            "differential": [
                {
                    "monomial": tree_to_json(row["monomial"].tree(alphabet)),
                    "value": element_to_records(row["value"]),
                }
                for row in self.differential_rows()
            ],
        }

    def render(self, output_format: str = "human") -> str:
        if output_format == "json":
            return dumps(self.export())
        alphabet = self.context.alphabet
        brackets = pd.DataFrame(
            [
                {
                    "left": format_tree(row["left"].tree(alphabet)),
                    "right": format_tree(row["right"].tree(alphabet)),
                    "bracket": row["value"].to_expression(),
                }
                for row in self.bracket_rows()
            ],
            columns=["left", "right", "bracket"],
        )
        differential = pd.DataFrame(
            [
                {
                    "monomial": format_tree(row["monomial"].tree(alphabet)),
                    "differential": row["value"].to_expression(),
                }
                for row in self.differential_rows()
            ],
            columns=["monomial", "differential"],
        )
        return (
            f"Brackets (N={self.context.max_length})\n"
            f"{brackets.to_string(index=False, max_colwidth=None)}\n\n"
            f"Differential\n{differential.to_string(index=False, max_colwidth=None)}"
        )
