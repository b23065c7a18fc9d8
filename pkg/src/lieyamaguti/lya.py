"""Lie-Yamaguti algebras given by structure constants, and their axiom checks.

A bilinear bracket on a ``d``-dimensional space is stored as a full tensor
``c`` of shape ``(d, d, d)`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``; a
ternary bracket as ``w`` of shape ``(d, d, d, d)``. Identities are evaluated
as tensors over all ordered basis tuples at once with ``np.einsum``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .errors import AxiomFailure, DimensionMismatch, JacobiViolation, MalformedInput
from .exact import Matrix, frozen, zeros
from .report import DEFAULT_MAX_WITNESSES, CheckReport, all_ok, from_residual


def _entries_tensor(dim: int, entries, arity: int) -> np.ndarray:
    """Full tensor from ``(i, j, ..., value)`` tuples listed with ``i < j``."""
    t = zeros((dim,) * (arity + 1))
    if isinstance(entries, dict):
        entries = [(*k, v) for k, v in entries.items()]
    for e in entries:
        *idx, v = e
        if len(idx) != arity + 1:
            raise MalformedInput(f"entry {e!r} needs {arity + 1} indices")
        if any(not 0 <= i < dim for i in idx):
            raise MalformedInput(f"index out of range in entry {e!r} (dim {dim})")
        i, j = idx[0], idx[1]
        if i >= j:
            raise MalformedInput(f"entry {e!r} must have i < j; the skew partner is implied")
        v = exact.parse_rational(v) if not isinstance(v, exact.Fraction) else v
        t[tuple(idx)] += v
        t[(j, i) + tuple(idx[2:])] -= v
    return t


def _check_skew(t: np.ndarray, name: str) -> None:
    if not exact.is_zero(t + np.swapaxes(t, 0, 1)):
        raise MalformedInput(f"{name} is not skew-symmetric in its first two arguments")


def _skew_entries(t: np.ndarray) -> list[tuple]:
    return [(*idx, v) for idx, v in np.ndenumerate(t) if idx[0] < idx[1] and v != 0]


class BilinearMap:
    """Skew-symmetric bilinear map on ``Q^dim``."""

    __slots__ = ("dim", "c")

    def __init__(self, c):
        c = exact.as_exact(c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"bilinear tensor must be (d, d, d), got {c.shape}")
        _check_skew(c, "bilinear bracket")
        self.dim = c.shape[0]
        self.c = frozen(c)

    @classmethod
    def from_entries(cls, dim: int, entries) -> "BilinearMap":
        return cls(_entries_tensor(dim, entries, 2))

    @classmethod
    def zero(cls, dim: int) -> "BilinearMap":
        return cls(zeros((dim,) * 3))

    def entries(self) -> list[tuple]:
        return _skew_entries(self.c)

    def __call__(self, x, y) -> np.ndarray:
        return exact.contract("x,y,xyo->o", np.asarray(x, dtype=object), np.asarray(y, dtype=object), self.c)

    def __eq__(self, other):
        return isinstance(other, BilinearMap) and bool(np.all(self.c == other.c))

    def __repr__(self):
        return f"BilinearMap(dim={self.dim}, entries={self.entries()})"


class TrilinearMap:
    """Trilinear map on ``Q^dim``, skew-symmetric in its first two arguments."""

    __slots__ = ("dim", "c")

    def __init__(self, c):
        c = exact.as_exact(c)
        if c.ndim != 4 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"trilinear tensor must be (d, d, d, d), got {c.shape}")
        _check_skew(c, "ternary bracket")
        self.dim = c.shape[0]
        self.c = frozen(c)

    @classmethod
    def from_entries(cls, dim: int, entries) -> "TrilinearMap":
        return cls(_entries_tensor(dim, entries, 3))

    @classmethod
    def zero(cls, dim: int) -> "TrilinearMap":
        return cls(zeros((dim,) * 4))

    def entries(self) -> list[tuple]:
        return _skew_entries(self.c)

    def __call__(self, x, y, z) -> np.ndarray:
        x, y, z = (np.asarray(v, dtype=object) for v in (x, y, z))
        return exact.contract("x,y,z,xyzo->o", x, y, z, self.c)

    def __eq__(self, other):
        return isinstance(other, TrilinearMap) and bool(np.all(self.c == other.c))

    def __repr__(self):
        return f"TrilinearMap(dim={self.dim}, entries={self.entries()})"


@dataclass(frozen=True, eq=False)
class LyAlgebra:
    dim: int
    pi: BilinearMap
    omega: TrilinearMap
    basis: tuple = ()

    def __post_init__(self):
        if self.pi.dim != self.dim or self.omega.dim != self.dim:
            raise DimensionMismatch("bracket dimensions do not match the algebra dimension")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i + 1}" for i in range(self.dim)))
        elif len(self.basis) != self.dim:
            raise DimensionMismatch("basis labels do not match the dimension")

    @classmethod
    def from_entries(cls, dim: int, bilinear=(), trilinear=(), basis=()) -> "LyAlgebra":
        return cls(dim, BilinearMap.from_entries(dim, bilinear), TrilinearMap.from_entries(dim, trilinear),
                   tuple(basis))

    @classmethod
    def abelian(cls, dim: int) -> "LyAlgebra":
        return cls(dim, BilinearMap.zero(dim), TrilinearMap.zero(dim))

    def __eq__(self, other):
        return (isinstance(other, LyAlgebra) and self.dim == other.dim
                and self.pi == other.pi and self.omega == other.omega)

    def __repr__(self):
        return f"LyAlgebra(dim={self.dim}, pi={self.pi.entries()}, omega={self.omega.entries()})"


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear map ``Q^src -> Q^dst``; ``matrix`` is ``dst x src``."""

    src_dim: int
    dst_dim: int
    matrix: Matrix

    def __post_init__(self):
        if not isinstance(self.matrix, Matrix):
            object.__setattr__(self, "matrix", Matrix(self.matrix))
        if (self.matrix.rows, self.matrix.cols) != (self.dst_dim, self.src_dim):
            raise DimensionMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected {self.dst_dim}x{self.src_dim}")

    @classmethod
    def of(cls, matrix) -> "LinearMap":
        m = Matrix(matrix)
        return cls(m.cols, m.rows, m)

    @property
    def m(self) -> np.ndarray:
        return self.matrix.a

    def __call__(self, x) -> np.ndarray:
        return self.m.dot(np.asarray(x, dtype=object))

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __repr__(self):
        return f"LinearMap({self.matrix!r})"


# --- identity forms ----------------------------------------------------------
# Each form takes raw tensors so that the same code yields an axiom (both
# arguments from one structure) and its mixed polarization (one from each).

def cyclic3(t: np.ndarray) -> np.ndarray:
    """Sum of ``t`` over cyclic permutations of its first three axes."""
    rest = tuple(range(3, t.ndim))
    return t + t.transpose((2, 0, 1) + rest) + t.transpose((1, 2, 0) + rest)


def ly1_bilinear_form(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``[[x,y]_inner, z]_outer`` summed cyclically over ``x, y, z``."""
    return cyclic3(exact.contract("xym,mzo->xyzo", inner, outer))


def ly2_form(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``[[x,y]_inner, z, w]_outer`` summed cyclically over ``x, y, z``."""
    return cyclic3(exact.contract("xym,mzwo->xyzwo", inner, outer))


def ly3_form(om_outer, pi_inner, pi_outer, om_inner) -> np.ndarray:
    """``[x,y,[z,w]] - [[x,y,z],w] - [z,[x,y,w]]`` with the given bracket roles."""
    return (exact.contract("zwm,xymo->xyzwo", pi_inner, om_outer)
            - exact.contract("xyzm,mwo->xyzwo", om_inner, pi_outer)
            - exact.contract("xywm,zmo->xyzwo", om_inner, pi_outer))


def ly4_form(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """``[x,y,[z,w,t]] - [[x,y,z],w,t] - [z,[x,y,w],t] - [z,w,[x,y,t]]``."""
    return (exact.contract("zwtm,xymo->xyzwto", inner, outer)
            - exact.contract("xyzm,mwto->xyzwto", inner, outer)
            - exact.contract("xywm,zmto->xyzwto", inner, outer)
            - exact.contract("xytm,zwmo->xyzwto", inner, outer))


def ly_residuals(pi: np.ndarray, om: np.ndarray) -> dict[str, tuple[np.ndarray, int]]:
    return {
        "LY1": (ly1_bilinear_form(pi, pi) + cyclic3(om), 3),
        "LY2": (ly2_form(om, pi), 4),
        "LY3": (ly3_form(om, pi, pi, om), 4),
        "LY4": (ly4_form(om, om), 5),
    }


def check_lya(a: LyAlgebra, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """Reports for LY1-LY4, each over every ordered basis tuple."""
    return [from_residual(name, r, arity, max_witnesses)
            for name, (r, arity) in ly_residuals(a.pi.c, a.omega.c).items()]


def require_lya(a: LyAlgebra, what: str = "input") -> None:
    reports = check_lya(a)
    if not all_ok(reports):
        failed = ", ".join(r.axiom_id for r in reports if not r.ok)
        raise AxiomFailure(f"{what} is not a Lie-Yamaguti algebra (fails {failed})", reports)


def jacobiator(b: BilinearMap) -> np.ndarray:
    return ly1_bilinear_form(b.c, b.c)


def from_lie(b: BilinearMap, basis=()) -> LyAlgebra:
    """Lie algebra viewed as a Lie-Yamaguti algebra with ``[x,y,z] = [[x,y],z]``."""
    jac = jacobiator(b)
    if not exact.is_zero(jac):
        rep = from_residual("Jacobi", jac, 3, 1)
        raise JacobiViolation(f"bracket violates the Jacobi identity at {rep.witnesses[0][0]}", [rep])
    return LyAlgebra(b.dim, b, TrilinearMap(exact.contract("xym,mzo->xyzo", b.c, b.c)), tuple(basis))


def block_sum(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """Structure tensor of the direct sum: ``t1`` on the first block, ``t2`` on the second."""
    d1, d2 = t1.shape[0], t2.shape[0]
    out = zeros((d1 + d2,) * t1.ndim)
    out[(slice(0, d1),) * t1.ndim] = t1
    out[(slice(d1, None),) * t1.ndim] = t2
    return out


def direct_sum(a: LyAlgebra, b: LyAlgebra, validate: bool = True) -> LyAlgebra:
    if validate:
        require_lya(a, "first summand")
        require_lya(b, "second summand")
    return LyAlgebra(a.dim + b.dim, BilinearMap(block_sum(a.pi.c, b.pi.c)),
                     TrilinearMap(block_sum(a.omega.c, b.omega.c)),
                     tuple(f"{s}" for s in a.basis) + tuple(f"{s}'" for s in b.basis))


def check_homomorphism(a: LyAlgebra, b: LyAlgebra, phi: LinearMap,
                       max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    if (phi.src_dim, phi.dst_dim) != (a.dim, b.dim):
        raise DimensionMismatch("map dimensions do not match the algebras")
    p = phi.m
    bil = (exact.contract("xym,om->xyo", a.pi.c, p)
           - exact.contract("qy,xqo->xyo", p, exact.contract("px,pqo->xqo", p, b.pi.c)))
    t = exact.contract("px,pqro->xqro", p, b.omega.c)
    t = exact.contract("qy,xqro->xyro", p, t)
    t = exact.contract("rz,xyro->xyzo", p, t)
    tri = exact.contract("xyzm,om->xyzo", a.omega.c, p) - t
    return [from_residual("HOM-bilinear", bil, 2, max_witnesses),
            from_residual("HOM-trilinear", tri, 3, max_witnesses)]


def derivation_residuals(pi: np.ndarray, om: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``D[x,y] - [Dx,y] - [x,Dy]`` and the ternary analogue; ``d`` is ``out x in``."""
    bil = (exact.contract("xym,om->xyo", pi, d)
           - exact.contract("px,pyo->xyo", d, pi)
           - exact.contract("py,xpo->xyo", d, pi))
    tri = (exact.contract("xyzm,om->xyzo", om, d)
           - exact.contract("px,pyzo->xyzo", d, om)
           - exact.contract("py,xpzo->xyzo", d, om)
           - exact.contract("pz,xypo->xyzo", d, om))
    return bil, tri


def check_derivation(a: LyAlgebra, d: LinearMap,
                     max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    if (d.src_dim, d.dst_dim) != (a.dim, a.dim):
        raise DimensionMismatch("derivation must be an endomorphism of the algebra")
    bil, tri = derivation_residuals(a.pi.c, a.omega.c, d.m)
    return [from_residual("DER-bilinear", bil, 2, max_witnesses),
            from_residual("DER-trilinear", tri, 3, max_witnesses)]


def linear_solution_space(dim: int, residual_fn) -> list[LinearMap]:
    """Kernel of a linear condition on ``dim x dim`` matrices.

    ``residual_fn(matrix)`` must be linear and return a tuple of tensors.
    """
    columns = []
    for p in range(dim):
        for q in range(dim):
            e = zeros((dim, dim))
            e[p, q] = exact.ONE
            columns.append(np.concatenate([np.asarray(r).ravel() for r in residual_fn(e)]))
    if not columns:
        return []
    mat = np.stack(columns, axis=1)
    return [LinearMap(dim, dim, Matrix(np.array(v, dtype=object).reshape(dim, dim)))
            for v in exact.kernel_basis(mat)]


def derivation_space(a: LyAlgebra) -> list[LinearMap]:
    """Basis of Der(L), ordered by the free matrix entries (row-major)."""
    return linear_solution_space(a.dim, lambda d: derivation_residuals(a.pi.c, a.omega.c, d))


def vector(dim: int, entries: dict[int, object] | Sequence) -> np.ndarray:
    v = zeros(dim)
    items = entries.items() if isinstance(entries, dict) else enumerate(entries)
    for i, x in items:
        v[i] = exact.Fraction(x)
    return v


def basis_vector(dim: int, i: int) -> np.ndarray:
    v = zeros(dim)
    v[i] = exact.ONE
    return v


__all__: Iterable[str] = [
    "BilinearMap", "TrilinearMap", "LyAlgebra", "LinearMap", "CheckReport", "check_lya", "from_lie",
    "direct_sum", "check_homomorphism", "check_derivation", "derivation_space",
]
