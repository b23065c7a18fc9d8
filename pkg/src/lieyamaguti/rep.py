"""Representations ``(V, rho, mu)`` of a Lie-Yamaguti algebra.

``rho`` is stored as an array of shape ``(d, v, v)`` with ``rho[i]`` the
matrix of ``rho(e_i)`` (rows index the output); ``mu`` has shape
``(d, d, v, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import DimensionMismatch
from .exact import Matrix, frozen, zeros
from .lya import BilinearMap, LinearMap, LyAlgebra, TrilinearMap, require_lya
from .report import DEFAULT_MAX_WITNESSES, CheckReport, from_residual


@dataclass(frozen=True, eq=False)
class Representation:
    alg_dim: int
    v_dim: int
    rho: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        rho, mu = exact.as_exact(self.rho), exact.as_exact(self.mu)
        d, v = self.alg_dim, self.v_dim
        if rho.shape != (d, v, v) or mu.shape != (d, d, v, v):
            raise DimensionMismatch(f"rho must be {(d, v, v)} and mu {(d, d, v, v)}; got {rho.shape}, {mu.shape}")
        object.__setattr__(self, "rho", frozen(rho))
        object.__setattr__(self, "mu", frozen(mu))

    @classmethod
    def from_matrices(cls, alg_dim: int, v_dim: int, rho: dict, mu: dict) -> "Representation":
        """``rho`` maps ``i`` to a matrix, ``mu`` maps ``(i, j)`` to a matrix; missing keys are zero."""
        r = zeros((alg_dim, v_dim, v_dim))
        m = zeros((alg_dim, alg_dim, v_dim, v_dim))
        for i, mat in rho.items():
            r[i] = Matrix(mat).a
        for (i, j), mat in mu.items():
            m[i, j] = Matrix(mat).a
        return cls(alg_dim, v_dim, r, m)

    @classmethod
    def zero(cls, alg_dim: int, v_dim: int) -> "Representation":
        return cls(alg_dim, v_dim, zeros((alg_dim, v_dim, v_dim)), zeros((alg_dim, alg_dim, v_dim, v_dim)))

    def rho_map(self, i: int) -> LinearMap:
        return LinearMap(self.v_dim, self.v_dim, Matrix(self.rho[i]))

    def mu_map(self, i: int, j: int) -> LinearMap:
        return LinearMap(self.v_dim, self.v_dim, Matrix(self.mu[i, j]))

    def __repr__(self):
        return f"Representation(alg_dim={self.alg_dim}, v_dim={self.v_dim})"


def _check_dims(a: LyAlgebra, r: Representation) -> None:
    if r.alg_dim != a.dim:
        raise DimensionMismatch(f"representation is for a {r.alg_dim}-dimensional algebra, got {a.dim}")


def d_tensor(pi: np.ndarray, rho: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """``D(x,y) = mu(y,x) - mu(x,y) + [rho(x), rho(y)] - rho([x,y])`` as a (d, d, v, v) array."""
    comm = exact.contract("xom,ymi->xyoi", rho, rho)
    return (mu.transpose(1, 0, 2, 3) - mu + comm - comm.transpose(1, 0, 2, 3)
            - exact.contract("xym,moi->xyoi", pi, rho))


def derived_D(r: Representation, a: LyAlgebra) -> np.ndarray:
    _check_dims(a, r)
    return d_tensor(a.pi.c, r.rho, r.mu)


def derived_D_map(r: Representation, a: LyAlgebra, i: int, j: int) -> LinearMap:
    return LinearMap(r.v_dim, r.v_dim, Matrix(derived_D(r, a)[i, j]))


def _mm(x: str, y: str, out: str, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Pointwise matrix product of two families of matrices, ``p(...) @ q(...)``."""
    return exact.contract(f"{x}om,{y}mi->{out}oi", p, q)


def rep_residuals(pi, om, rho, mu) -> dict[str, tuple[np.ndarray, int]]:
    """Residuals of the five representation conditions, keyed by name."""
    dd = d_tensor(pi, rho, mu)
    r1 = (exact.contract("xym,mzoi->xyzoi", pi, mu)
          - _mm("xz", "y", "xyz", mu, rho) + _mm("yz", "x", "xyz", mu, rho))
    r2 = (exact.contract("yzm,xmoi->xyzoi", pi, mu)
          - _mm("y", "xz", "xyz", rho, mu) + _mm("z", "xy", "xyz", rho, mu))
    r3 = (exact.contract("xyzm,moi->xyzoi", om, rho)
          - _mm("xy", "z", "xyz", dd, rho) + _mm("z", "xy", "xyz", rho, dd))
    r4 = (_mm("zw", "xy", "xyzw", mu, mu) - _mm("yw", "xz", "xyzw", mu, mu)
          - exact.contract("yzwm,xmoi->xyzwoi", om, mu) + _mm("yz", "xw", "xyzw", dd, mu))
    r5 = (exact.contract("xyzm,mwoi->xyzwoi", om, mu) + exact.contract("xywm,zmoi->xyzwoi", om, mu)
          - _mm("xy", "zw", "xyzw", dd, mu) + _mm("zw", "xy", "xyzw", mu, dd))
    return {"REP1": (r1, 3), "REP2": (r2, 3), "REP3": (r3, 3), "REP4": (r4, 4), "REP5": (r5, 4)}


def check_representation(a: LyAlgebra, r: Representation,
                         max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    _check_dims(a, r)
    return [from_residual(name, res, arity, max_witnesses)
            for name, (res, arity) in rep_residuals(a.pi.c, a.omega.c, r.rho, r.mu).items()]


def adjoint_tensors(pi: np.ndarray, om: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``rho(x) z = [x, z]`` and ``mu(x, y) z = [z, x, y]``."""
    rho = np.einsum("xzo->xoz", pi)
    mu = np.einsum("zxyo->xyoz", om)
    return rho, mu


def adjoint(a: LyAlgebra) -> Representation:
    rho, mu = adjoint_tensors(a.pi.c, a.omega.c)
    return Representation(a.dim, a.dim, rho, mu)


def semidirect_tensors(pi, om, rho, mu) -> tuple[np.ndarray, np.ndarray]:
    """Brackets on ``L + V``: ``[x+u, y+v] = [x,y] + rho(x)v - rho(y)u`` and
    ``[x+u, y+v, z+w] = [x,y,z] + D(x,y)w + mu(y,z)u - mu(x,z)v``."""
    d, v = rho.shape[0], rho.shape[1]
    n = d + v
    L, V = slice(0, d), slice(d, n)
    dd = d_tensor(pi, rho, mu)
    c = zeros((n, n, n))
    c[L, L, L] = pi
    c[L, V, V] = np.einsum("xob->xbo", rho)
    c[V, L, V] = -np.einsum("xob->bxo", rho)
    t = zeros((n, n, n, n))
    t[L, L, L, L] = om
    t[L, L, V, V] = np.einsum("xyob->xybo", dd)
    t[V, L, L, V] = np.einsum("yzob->byzo", mu)
    t[L, V, L, V] = -np.einsum("xzob->xbzo", mu)
    return c, t


def semidirect(a: LyAlgebra, r: Representation, validate: bool = True) -> LyAlgebra:
    """Semidirect product ``L x V``; basis is that of ``L`` followed by ``V``."""
    _check_dims(a, r)
    if validate:
        require_lya(a, "base algebra")
    c, t = semidirect_tensors(a.pi.c, a.omega.c, r.rho, r.mu)
    basis = tuple(a.basis) + tuple(f"v{i + 1}" for i in range(r.v_dim))
    return LyAlgebra(a.dim + r.v_dim, BilinearMap(c), TrilinearMap(t), basis)
