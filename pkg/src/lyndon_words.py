"""
Lyndon Words - Combinatorics on words over an ordered alphabet

Words are tuples of letter indices; tuple comparison is the lexicographic
order in which a proper prefix is smaller than the word it starts.
"""

from functools import lru_cache
from typing import Iterator, Sequence, Tuple

Word = Tuple[int, ...]

WORD_CACHE_SIZE = 1 << 16


@lru_cache(maxsize=WORD_CACHE_SIZE)
def is_lyndon(word: Word) -> bool:
    """True iff the word is nonempty and strictly smaller than all its proper rotations"""
    if not word:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


@lru_cache(maxsize=WORD_CACHE_SIZE)
def standard_factorization(word: Word) -> Tuple[Word, Word]:
    """
    Split a Lyndon word of length >= 2 as (u, v) where v is its longest
    proper suffix that is itself a Lyndon word.

    Args:
        word: Lyndon word with at least two letters

    Returns:
        Tuple (u, v) with u + v == word, both Lyndon
    """
    if len(word) < 2 or not is_lyndon(word):
        raise ValueError(f"no standard factorization for {word}")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"no standard factorization for {word}")


def lyndon_words(alphabet_size: int, max_length: int) -> Iterator[Word]:
    """
    Generate every Lyndon word of length <= max_length in lexicographic order
    (Duval's algorithm).
    """
    if alphabet_size < 1 or max_length < 1:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_length:
            w.append(w[-m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()


def word_degree(word: Sequence[int], degrees: Sequence[int]) -> int:
    """Homological degree of a word: the sum of its letter degrees"""
    return sum(degrees[i] for i in word)


def square_root(word: Word) -> Word:
    """Return w if word == w + w, else an empty tuple"""
    half, rem = divmod(len(word), 2)
    if rem or not half or word[:half] != word[half:]:
        return ()
    return word[:half]
