"""Stern-Brocot string encoding, binary and generalized to k letters.

Words are sequences of letter indices ``1..k``. The empty word is the
all-ones vector; appending letter ``j`` replaces entry ``j`` by the sum of
all entries (right multiplication by :func:`alphabet_matrix`).
"""

from __future__ import annotations

import re
from typing import Sequence

from .numerics import QMatrix, QVector

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class InvalidEncodingError(ValueError):
    """The vector is not the encoding of any word."""


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError("the encoding needs an alphabet of at least 2 letters")


def alphabet_matrix(k: int, j: int) -> QMatrix:
    """Identity of size ``k`` with column ``j`` (1-based) replaced by ones."""
    _check_k(k)
    if not 1 <= j <= k:
        raise ValueError(f"letter index {j} outside 1..{k}")
    return QMatrix([[1 if (c == j - 1 or r == c) else 0 for c in range(k)] for r in range(k)])


def inverse_alphabet_matrix(k: int, j: int) -> QMatrix:
    """Inverse of :func:`alphabet_matrix`: entry ``j`` loses the sum of the others."""
    _check_k(k)
    if not 1 <= j <= k:
        raise ValueError(f"letter index {j} outside 1..{k}")
    rows = [[1 if r == c else 0 for c in range(k)] for r in range(k)]
    for r in range(k):
        if r != j - 1:
            rows[r][j - 1] = -1
    return QMatrix(rows)


def encode(k: int, word: Sequence[int]) -> QVector:
    _check_k(k)
    v = [1] * k
    for j in word:
        if not 1 <= j <= k:
            raise ValueError(f"letter index {j} outside 1..{k}")
        v[j - 1] = sum(v)
    return QVector(v)


def decode(v: Sequence) -> tuple[int, ...]:
    """Recover the word whose encoding is ``v``; ``k`` is ``len(v)``.

    Raises :class:`InvalidEncodingError` when no word encodes ``v``.
    """
    k = len(v)
    _check_k(k)
    cur = []
    for x in v:
        if getattr(x, "denominator", 1) != 1:
            raise InvalidEncodingError(f"non-integer entry {x}")
        cur.append(int(x))
    out: list[int] = []
    while True:
        if any(x <= 0 for x in cur):
            raise InvalidEncodingError("non-positive entry")
        if all(x == 1 for x in cur):
            break
        top = max(cur)
        j = cur.index(top)
        if cur.count(top) > 1:
            raise InvalidEncodingError(f"tie for the maximum entry at {cur}")
        rest = sum(cur) - top
        cur[j] = top - rest
        out.append(j + 1)
    out.reverse()
    return tuple(out)


def is_valid(v: Sequence) -> bool:
    try:
        decode(v)
    except InvalidEncodingError:
        return False
    return True


def default_symbols(k: int) -> str:
    """Symbol for letter ``j`` is ``DIGITS[j % k]``.

    For ``k = 2`` this maps ``'1'`` to letter 1 and ``'0'`` to letter 2, the
    classic binary convention where ``0`` adds the first entry to the second.
    """
    _check_k(k)
    if k > len(DIGITS):
        raise ValueError(f"no default symbols for k={k}; pass an explicit alphabet")
    return "".join(DIGITS[j % k] for j in range(1, k + 1))


def word_to_indices(text: str, symbols: str) -> tuple[int, ...]:
    index = {s: i + 1 for i, s in enumerate(symbols)}
    try:
        return tuple(index[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} not in alphabet {symbols!r}") from None


def indices_to_word(word: Sequence[int], symbols: str) -> str:
    return "".join(symbols[j - 1] for j in word)


def encode_binary(bits: str) -> QVector:
    return encode(2, word_to_indices(bits, default_symbols(2)))


def decode_binary(v: Sequence) -> str:
    if len(v) != 2:
        raise ValueError("binary decoding needs a 2-vector")
    return indices_to_word(decode(v), default_symbols(2))


_VECTOR_RE = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]$")


def parse_vector_text(text: str) -> tuple[int, ...]:
    """Parse ``"[2,3]"`` into integers."""
    m = _VECTOR_RE.match(text.strip())
    if m is None:
        raise ValueError(f"bad vector syntax: {text!r}")
    return tuple(int(x) for x in m.group(1).split(","))


def format_vector_text(v: Sequence) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"
