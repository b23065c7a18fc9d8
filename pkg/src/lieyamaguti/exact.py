"""Exact rational scalars, dense matrices and Gaussian elimination over Q.

Everything here works on :class:`fractions.Fraction` (exported as
``Rational``). Dense tensors are numpy arrays of ``dtype=object`` so that
``np.einsum`` and ordinary arithmetic stay exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats and decimal strings are rejected: they are not exact inputs.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
    raise ValueError(f"not a rational: {value!r}")


def render_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def zeros(shape) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def as_exact(data) -> np.ndarray:
    """Object array of Fractions built from nested sequences or an array."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=object)
    arr.flags.writeable = False
    return arr


def is_zero(arr: np.ndarray) -> bool:
    return not np.any(np.asarray(arr) != 0)


_INT64_LIMIT = 2 ** 62
_to_fraction = np.frompyfunc(Fraction, 2, 1)


def _integer_part(arr: np.ndarray) -> tuple[np.ndarray, int, int]:
    """``(numerators, denominator, max |numerator|)`` with ``arr = numerators / denominator``."""
    if arr.dtype != object:
        ints = arr.astype(object)
        return ints, 1, max((abs(int(v)) for v in ints.flat), default=0)
    den = common_denominator(arr)
    ints = np.empty(arr.shape, dtype=object)
    top = 0
    for idx, v in np.ndenumerate(arr):
        v = Fraction(v)
        n = v.numerator * (den // v.denominator)
        ints[idx] = n
        top = max(top, abs(n))
    return ints, den, top


def _terms_per_entry(spec: str, arrays) -> int:
    """Number of terms in each output entry of the contraction."""
    ins, out = spec.replace(" ", "").split("->")
    terms = ins.split(",")
    sizes = {}
    for t, a in zip(terms, arrays):
        head, _, tail = t.partition("...")
        sizes.update(zip(head, a.shape))
        if tail:
            sizes.update(zip(tail, a.shape[a.ndim - len(tail):]))
    summed = 1
    for label in set("".join(terms).replace(".", "")) - set(out):
        summed *= sizes[label]
    return summed


def _contract_ints(spec: str, ints, tops) -> np.ndarray:
    bound = _terms_per_entry(spec, ints)
    for top in tops:
        bound *= top
    if bound < _INT64_LIMIT:
        ints = [a.astype(np.int64) for a in ints]
    res = np.einsum(spec, *ints, optimize=len(ints) > 2)
    return np.asarray(res).astype(object)


def contract_int(spec: str, *ops) -> np.ndarray:
    """``np.einsum`` for integer tensors; Python ints out, never overflows."""
    arrays = [np.asarray(op) for op in ops]
    tops = [int(np.abs(a).max()) if a.size else 0 for a in arrays]
    return _contract_ints(spec, [a.astype(object) for a in arrays], tops)


def from_integers(arr: np.ndarray, den: int) -> np.ndarray:
    """Object array of ``Fraction(n, den)``."""
    arr = np.asarray(arr, dtype=object)
    return np.asarray(_to_fraction(arr, den), dtype=object) if arr.size else arr


def integer_form(*arrays) -> tuple[list, int, int]:
    """``(numerators, den, top)``: every array (``None`` allowed) as Python-int
    numerators over one common denominator, with ``top`` the largest magnitude."""
    den = common_denominator(*(a for a in arrays if a is not None))
    out, top = [], 0
    for a in arrays:
        if a is None:
            out.append(None)
            continue
        n = np.empty(np.shape(a), dtype=object)
        for idx, v in np.ndenumerate(np.asarray(a)):
            v = Fraction(v)
            n[idx] = v.numerator * (den // v.denominator)
        if n.size:
            top = max(top, int(np.abs(n).max()))
        out.append(n)
    return out, den, top


def narrow(arrays: list, bound: int) -> list:
    """Cast integer arrays to int64 when ``bound`` caps every value a computation can reach."""
    if bound >= _INT64_LIMIT:
        return arrays
    return [None if a is None else a.astype(np.int64) for a in arrays]


def contract(spec: str, *ops) -> np.ndarray:
    """Exact ``np.einsum`` for rational tensors.

    Operands are scaled to integers and contracted in int64 when the worst
    case sum fits, otherwise with Python integers; the result is divided
    once by the product of the denominators. Same values as an object-dtype
    einsum, far fewer Fraction operations.
    """
    parts = [_integer_part(np.asarray(op)) for op in ops]
    den = 1
    for _, d, _ in parts:
        den *= d
    res = _contract_ints(spec, [p[0] for p in parts], [p[2] for p in parts])
    return from_integers(res, den)


def common_denominator(*arrays: np.ndarray) -> int:
    lcm = 1
    for arr in arrays:
        for v in np.asarray(arr).flat:
            d = Fraction(v).denominator
            if d != 1:
                lcm = lcm * d // np.gcd(lcm, d)
    return int(lcm)


class Matrix:
    """Dense ``rows x cols`` matrix of Fractions, row-major."""

    __slots__ = ("a",)

    def __init__(self, data, cols: int | None = None):
        if isinstance(data, Matrix):
            arr = data.a
        else:
            arr = as_exact(data)
            if arr.ndim == 1 and cols is not None:
                arr = arr.reshape(-1, cols) if arr.size else zeros((0, cols))
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        self.a = frozen(arr)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(zeros((rows, cols)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = zeros((n, n))
        for i in range(n):
            m[i, i] = ONE
        return cls(m)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def entries(self) -> tuple:
        return tuple(self.a.flat)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return Matrix(self.a.dot(other.a) if self.cols else zeros((self.rows, other.cols)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.a.shape == other.a.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.a.shape, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(render_rational(v) for v in row) for row in self.a)
        return f"Matrix({self.rows}x{self.cols}: {body})"


# --- elimination -----------------------------------------------------------

def _sparse_rows(rows: Iterable[Sequence]) -> list[dict[int, Fraction]]:
    out = []
    for row in rows:
        out.append({j: Fraction(v) for j, v in enumerate(row) if v != 0})
    return out


def rref_pivots(rows: Iterable[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form of sparse rows.

    Returns ``{pivot_column: row}`` where each row has a 1 at its pivot and
    zeros in every other pivot column. The pivot of a new row is its first
    nonzero column after reduction, so the result is deterministic.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for r in rows:
        r = {c: Fraction(v) for c, v in r.items() if v != 0}
        # pivot rows vanish on each other's pivot columns, so one pass suffices
        for c in [c for c in r if c in pivots]:
            f = r[c]
            for cc, vv in pivots[c].items():
                nv = r.get(cc, ZERO) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for row in pivots.values():
            f = row.get(p)
            if f:
                for cc, vv in r.items():
                    nv = row.get(cc, ZERO) - f * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        pivots[p] = r
    return pivots


def _rows_of(m) -> tuple[list[dict[int, Fraction]], int]:
    if isinstance(m, Matrix):
        return _sparse_rows(m.a), m.cols
    arr = np.asarray(m, dtype=object)
    return _sparse_rows(arr), arr.shape[1]


def rank(m) -> int:
    rows, _ = _rows_of(m)
    return len(rref_pivots(rows))


def sparse_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    return len(rref_pivots(rows))


def kernel_basis(m) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column.

    Free columns are taken in increasing order; vector ``j`` has a 1 in free
    column ``j`` and zeros in the other free columns.
    """
    rows, ncols = _rows_of(m)
    pivots = rref_pivots(rows)
    basis = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = [ZERO] * ncols
        v[j] = ONE
        for p, row in pivots.items():
            if j in row:
                v[p] = -row[j]
        basis.append(tuple(v))
    return basis


def solve(m, b) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    rows, ncols = _rows_of(m)
    b = [Fraction(v) for v in b]
    if len(b) != len(rows):
        raise DimensionMismatch(f"right-hand side has length {len(b)}, matrix has {len(rows)} rows")
    for r, v in zip(rows, b):
        if v:
            r[ncols] = v
    pivots = rref_pivots(rows)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for p, row in pivots.items():
        x[p] = row.get(ncols, ZERO)
    return tuple(x)
