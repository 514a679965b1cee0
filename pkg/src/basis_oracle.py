"""
Basis Oracle - Brute-force dimension count for the normal-form basis

Expands every bracketing of every word of a given length into the free
associative algebra and takes the exact rank of their span, one letter
content at a time.
"""

import itertools
import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import sympy

from envelope import NCPolynomial
from lie_algebra import TruncationContext, assoc_expand
from lyndon_words import word_degree

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def tree_shapes(leaves: int) -> Tuple:
    """All full binary tree shapes with the given number of leaves (None marks a leaf)"""
    if leaves == 1:
        return (None,)
    return tuple(
        (left, right)
        for k in range(1, leaves)
        for left in tree_shapes(k)
        for right in tree_shapes(leaves - k)
    )


def _fill(shape, letters: List[str]):
    if shape is None:
        return letters.pop(0)
    left = _fill(shape[0], letters)
    right = _fill(shape[1], letters)
    return (left, right)


def _normalized_row(poly: NCPolynomial, columns: List[tuple]) -> Tuple[Fraction, ...]:
    row = [poly.coefficient(w) for w in columns]
    pivot = next((c for c in row if c), None)
    return tuple(c / pivot for c in row) if pivot else ()


def bracketing_rank(context: TruncationContext, length: int, degree: int) -> int:
    """
    Rank over Q of the envelope images of all bracketings of the given
    length and degree.
    """
    alphabet = context.alphabet
    degrees = alphabet.degrees
    names = alphabet.names
    by_content: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = defaultdict(list)
    for word in itertools.product(range(len(names)), repeat=length):
        if word_degree(word, degrees) == degree:
            by_content[tuple(sorted(word))].append(word)

    total = 0
    for content, words in sorted(by_content.items()):
        columns = sorted(set(words))
        rows = set()
        for word in words:
            for shape in tree_shapes(length):
                tree = _fill(shape, [names[i] for i in word])
                row = _normalized_row(assoc_expand(tree, context), columns)
                if row:
                    rows.add(row)
        if not rows:
            continue
        matrix = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in sorted(rows)])
        rank = matrix.rank()
        logger.debug(f"content {content}: {len(rows)} distinct rows, rank {rank}")
        total += rank
    return total
