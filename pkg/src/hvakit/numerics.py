"""Exact rational scalars, row vectors and square matrices.

Scalars are plain ``int`` when integral and ``fractions.Fraction`` otherwise,
so every stored value is a normalized rational (``numerator``/``denominator``
are available on both types). Vectors multiply matrices from the left:
``v' = v M``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class SingularMatrixError(ValueError):
    """Matrix has no inverse."""


def rational(value) -> Rational:
    """Coerce ``value`` to a normalized rational (int when integral)."""
    if type(value) is int:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, _RationalABC):
        return rational(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def _norm(x):
    if type(x) is int:
        return x
    return x.numerator if x.denominator == 1 else x


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` with ``q > 0``."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"bad rational literal: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return _norm(Fraction(num, den))


def format_rational(x: Rational) -> str:
    x = rational(x)
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class QVector(tuple):
    """Immutable row vector of exact rationals."""

    __slots__ = ()

    def __new__(cls, entries: Iterable = ()):
        entries = tuple(rational(e) for e in entries)
        if not entries:
            raise DimensionError("vectors must have dimension >= 1")
        return QVector._trusted(entries)

    @staticmethod
    def _trusted(entries) -> "QVector":
        """Wrap already-normalized entries, tagging all-integer vectors."""
        for x in entries:
            if type(x) is not int:
                return tuple.__new__(QVector, entries)
        return tuple.__new__(_IntVector, entries)

    @property
    def dim(self) -> int:
        return len(self)

    def __add__(self, other):
        raise TypeError("use concat() to join vectors")

    def concat(self, other: "QVector") -> "QVector":
        return QVector._trusted(tuple(self) + tuple(other))

    def __reduce__(self):
        return QVector, (tuple(self),)

    def __matmul__(self, m: "QMatrix") -> "QVector":
        return vec_mul_mat(self, m)

    def __repr__(self):
        return f"QVector([{', '.join(format_rational(x) for x in self)}])"

    def to_strings(self) -> list[str]:
        return [format_rational(x) for x in self]


class _IntVector(QVector):
    # marks vectors whose entries are all int, so integer matrices can skip normalization
    __slots__ = ()


def ones(k: int) -> QVector:
    return tuple.__new__(_IntVector, (1,) * k)


class QMatrix:
    """Dense square matrix of exact rationals.

    Keeps a sparse column view for the hot path in :func:`vec_mul_mat`.
    """

    __slots__ = ("rows", "dim", "_cols", "_hash", "_integral", "_apply")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(rational(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise DimensionError("matrices must have dimension >= 1")
        for r in rows:
            if len(r) != n:
                raise DimensionError(
                    f"matrix is not square: row of length {len(r)} in a {n}-row matrix"
                )
        self.rows = rows
        self.dim = n
        self._cols = tuple(
            tuple((i, rows[i][j]) for i in range(n) if rows[i][j] != 0) for j in range(n)
        )
        self._hash = hash(rows)
        self._integral = all(type(x) is int for r in rows for x in r)
        self._apply = _compile_product(self._cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, x) -> "QMatrix":
        return cls([[x]])

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        return mat_mul(self, other)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.rows)
        return f"QMatrix([{body}])"

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self.rows for x in r)

    def transpose(self) -> "QMatrix":
        return QMatrix(list(zip(*self.rows)))

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]


def _compile_product(cols):
    """Build ``lambda v: (col_0 . v, col_1 . v, ...)`` with the sparse columns unrolled.

    Runs the innermost loop of every search, so it is worth a generated function.
    """
    consts = {}
    terms = []
    for j, col in enumerate(cols):
        parts = []
        for i, c in col:
            if c == 1:
                parts.append(f"+v[{i}]")
            elif c == -1:
                parts.append(f"-v[{i}]")
            else:
                name = f"c{i}_{j}"
                consts[name] = c
                parts.append(f"+v[{i}]*{name}")
        terms.append("".join(parts).lstrip("+") if parts else "0")
    return eval("lambda v: (" + ", ".join(terms) + ",)", consts)


def vec_mul_mat(v: QVector, m: QMatrix) -> QVector:
    """Row vector times matrix: ``result[j] = sum_i v[i] * m[i][j]``."""
    if len(v) != m.dim:
        raise DimensionError(f"vector of dimension {len(v)} times {m.dim}x{m.dim} matrix")
    out = m._apply(v)
    if m._integral and type(v) is _IntVector:
        return tuple.__new__(_IntVector, out)
    return QVector._trusted(tuple(x if type(x) is int else _norm(x) for x in out))


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.dim != b.dim:
        raise DimensionError(f"{a.dim}x{a.dim} times {b.dim}x{b.dim}")
    n = a.dim
    return QMatrix(
        [[sum(a.rows[i][t] * b.rows[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    )


def mat_power(m: QMatrix, e: int) -> QMatrix:
    if e < 0:
        return mat_power(mat_inverse(m), -e)
    result = QMatrix.identity(m.dim)
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def mat_inverse(m: QMatrix) -> QMatrix:
    """Gauss-Jordan inversion over the rationals."""
    n = m.dim
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return QMatrix([row[n:] for row in aug])


def determinant(m: QMatrix) -> Rational:
    n = m.dim
    a = [[Fraction(x) for x in row] for row in m.rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return _norm(det)


def block_diag(a: QMatrix, b: QMatrix) -> QMatrix:
    """``a`` in the top-left block, ``b`` in the bottom-right, zeros elsewhere."""
    n, k = a.dim, b.dim
    rows = [list(r) + [0] * k for r in a.rows]
    rows += [[0] * n + list(r) for r in b.rows]
    return QMatrix(rows)
