"""Cochains on ``wedge^2 L`` and the graded Lie bracket that encodes the LY axioms.

A degree-``n`` cochain (``n >= 1``) is a pair ``(f, g)`` with
``f : (wedge^2 L)^n -> V`` and ``g : (wedge^2 L)^n (x) L -> V``. Each wedge
slot is indexed by the pairs ``(a, b)``, ``a < b``, in lexicographic order,
so ``f`` has shape ``(W,)*n + (v,)`` and ``g`` has shape ``(W,)*n + (d, v)``
with ``W = d(d-1)/2``. Degree 0 is a single linear map stored as ``f`` of
shape ``(d, v)`` (input first) with ``g = None``.

A Lie-Yamaguti structure is the degree-1 cochain ``Pi = (pi, omega)``;
``[Pi, Pi] = 0`` exactly when LY3 and LY4 hold.

Array routines take an optional leading batch axis so that many cochains
can be pushed through the bracket at once.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exact
from .errors import DimensionMismatch
from .exact import zeros
from .lya import LyAlgebra


# --- wedge bookkeeping -----------------------------------------------------

class WedgeBasis:
    """Index tables for the basis ``e_a ^ e_b`` (``a < b``) of ``wedge^2 Q^d``."""

    def __init__(self, dim: int):
        self.dim = dim
        self.pairs = [(a, b) for a in range(dim) for b in range(a + 1, dim)]
        self.size = len(self.pairs)
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.A = np.array([a for a, _ in self.pairs], dtype=np.intp)
        self.B = np.array([b for _, b in self.pairs], dtype=np.intp)
        # coefficient of e_u ^ e_v on the basis wedge w
        wedge = np.zeros((dim, dim, self.size), dtype=np.int64)
        for w, (a, b) in enumerate(self.pairs):
            wedge[a, b, w] = 1
            wedge[b, a, w] = -1
        self.wedge = wedge
        # left[w, m, v]: coefficient of e_a ^ e_m on v, with (a, b) = pairs[w]
        self.left = wedge[self.A, :, :]
        # right[w, m, v]: coefficient of e_m ^ e_b on v
        self.right = wedge[:, self.B, :].transpose(1, 0, 2)

    def of_vectors(self, u, v) -> np.ndarray:
        """Coordinates of ``u ^ v``."""
        u, v = np.asarray(u, dtype=object), np.asarray(v, dtype=object)
        return np.array([u[a] * v[b] - u[b] * v[a] for a, b in self.pairs], dtype=object)


@lru_cache(maxsize=None)
def wedge_basis(dim: int) -> WedgeBasis:
    return WedgeBasis(dim)


# --- cochains ---------------------------------------------------------------

def cochain_shapes(degree: int, dim: int, vdim: int) -> tuple[tuple, tuple | None]:
    if degree == 0:
        return (dim, vdim), None
    w = wedge_basis(dim).size
    return (w,) * degree + (vdim,), (w,) * degree + (dim, vdim)


@dataclass(frozen=True, eq=False)
class Cochain:
    """Degree-``degree`` cochain on a ``dim``-dimensional algebra with values in ``Q^vdim``."""

    degree: int
    dim: int
    vdim: int
    f: np.ndarray
    g: np.ndarray | None = None

    def __post_init__(self):
        fs, gs = cochain_shapes(self.degree, self.dim, self.vdim)
        f = np.asarray(self.f, dtype=object)
        if f.shape != fs:
            raise DimensionMismatch(f"f has shape {f.shape}, expected {fs}")
        object.__setattr__(self, "f", f)
        if gs is None:
            if self.g is not None:
                raise DimensionMismatch("a degree-0 cochain has no g component")
        else:
            g = zeros(gs) if self.g is None else np.asarray(self.g, dtype=object)
            if g.shape != gs:
                raise DimensionMismatch(f"g has shape {g.shape}, expected {gs}")
            object.__setattr__(self, "g", g)

    @classmethod
    def zero(cls, degree: int, dim: int, vdim: int | None = None) -> "Cochain":
        vdim = dim if vdim is None else vdim
        fs, gs = cochain_shapes(degree, dim, vdim)
        return cls(degree, dim, vdim, zeros(fs), None if gs is None else zeros(gs))

    @classmethod
    def from_vector(cls, degree: int, dim: int, vdim: int, vec) -> "Cochain":
        fs, gs = cochain_shapes(degree, dim, vdim)
        vec = np.asarray(vec, dtype=object)
        nf = int(np.prod(fs))
        if vec.shape != (space_dim(degree, dim, vdim),):
            raise DimensionMismatch("vector length does not match the cochain space")
        f = vec[:nf].reshape(fs)
        g = None if gs is None else vec[nf:].reshape(gs)
        return cls(degree, dim, vdim, f, g)

    def vector(self) -> np.ndarray:
        parts = [self.f.ravel()] + ([] if self.g is None else [self.g.ravel()])
        return np.concatenate(parts)

    def is_zero(self) -> bool:
        return exact.is_zero(self.vector())

    def nonzero_entries(self) -> list[tuple[str, tuple, object]]:
        out = [("f", idx, v) for idx, v in np.ndenumerate(self.f) if v != 0]
        if self.g is not None:
            out += [("g", idx, v) for idx, v in np.ndenumerate(self.g) if v != 0]
        return out

    def __add__(self, other: "Cochain") -> "Cochain":
        _same_space(self, other)
        return Cochain(self.degree, self.dim, self.vdim, self.f + other.f,
                       None if self.g is None else self.g + other.g)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, k) -> "Cochain":
        k = exact.Fraction(k)
        return Cochain(self.degree, self.dim, self.vdim, self.f * k, None if self.g is None else self.g * k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain)
                and (self.degree, self.dim, self.vdim) == (other.degree, other.dim, other.vdim)
                and bool(np.all(self.vector() == other.vector())))

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, dim={self.dim}, vdim={self.vdim}, nonzero={len(self.nonzero_entries())})"


def _same_space(a: Cochain, b: Cochain) -> None:
    if (a.degree, a.dim, a.vdim) != (b.degree, b.dim, b.vdim):
        raise DimensionMismatch("cochains live in different spaces")


def space_dim(degree: int, dim: int, vdim: int | None = None) -> int:
    vdim = dim if vdim is None else vdim
    fs, gs = cochain_shapes(degree, dim, vdim)
    return int(np.prod(fs)) + (0 if gs is None else int(np.prod(gs)))


def structure_cochain(pi: np.ndarray, omega: np.ndarray) -> Cochain:
    """The degree-1 cochain ``(pi, omega)`` restricted to wedge slots."""
    wb = wedge_basis(pi.shape[0])
    return Cochain(1, wb.dim, wb.dim, pi[wb.A, wb.B], omega[wb.A, wb.B])


def pi_cochain(a: LyAlgebra) -> Cochain:
    return structure_cochain(a.pi.c, a.omega.c)


# --- shuffles -----------------------------------------------------------------

@dataclass(frozen=True)
class Shuffle:
    """``perm[t]`` is the image of position ``t`` (0-based)."""

    perm: tuple
    sign: int


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple[Shuffle, ...]:
    """All ``(p, q)``-shuffles: increasing on the first ``p`` and on the last ``q`` positions."""
    n = p + q
    out = []
    for head in itertools.combinations(range(n), p):
        tail = [t for t in range(n) if t not in head]
        perm = tuple(head) + tuple(tail)
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append(Shuffle(perm, -1 if inversions % 2 else 1))
    return tuple(out)


def _arrange(t: np.ndarray, perm: tuple, first: int) -> np.ndarray:
    """Evaluate ``t`` at permuted slot arguments.

    Slot ``s`` (axis ``first + s``) of ``t`` receives argument ``perm[s]``;
    axes outside ``first .. first+len(perm)-1`` are untouched. The result is
    indexed by argument position.
    """
    n = len(perm)
    inv = [0] * n
    for s, j in enumerate(perm):
        inv[j] = s
    axes = list(range(first)) + [first + inv[j] for j in range(n)] + list(range(first + n, t.ndim))
    return t.transpose(axes)


def _shuffle_sum(t: np.ndarray, p: int, q: int, first: int, coeff: int, fix_last: bool = False):
    """``coeff * sum_sigma sign(sigma) t(X_sigma)`` over ``(p, q)``-shuffles."""
    total = None
    for sh in shuffles(p, q):
        if fix_last and sh.perm[-1] != p + q - 1:
            continue
        term = _arrange(t, sh.perm, first)
        term = term if sh.sign * coeff == 1 else term * (sh.sign * coeff)
        total = term if total is None else total + term
    return total


E = Ellipsis


def derivation_action(q2: np.ndarray, wb: WedgeBasis) -> np.ndarray:
    """How ``Q2(C, -)`` acts on a wedge as a derivation.

    Input ``(..., C, z, m)``; output ``(..., C, w, v)`` giving the coefficient
    of basis wedge ``v`` in ``Q2(C, x) ^ y + x ^ Q2(C, y)`` for ``w = x ^ y``.
    """
    qa = np.take(q2, wb.A, axis=-2)
    qb = np.take(q2, wb.B, axis=-2)
    return np.einsum("...wm,wmv->...wv", qa, wb.right) + np.einsum("...wm,wmv->...wv", qb, wb.left)


def _labels(n: int, start: int) -> list[int]:
    # einsum sublist labels must stay below 52; blocks of 10 leave room for degree <= 9
    if n > 10:
        raise ValueError("cochain degree too large for the einsum label layout")
    return list(range(start, start + n))


def circle_arrays(p1, p2, p: int, q1, q2, q: int, wb: WedgeBasis) -> tuple[np.ndarray, np.ndarray]:
    """Components of ``P o Q`` for ``p, q >= 1``; arrays may carry a leading batch axis."""
    a, b = _labels(p, 0), _labels(q, 10)
    m, o, z, v, w = 45, 46, 47, 48, 49
    der = derivation_action(q2, wb)  # (..., C, w, v)
    nb = max(p1.ndim - p - 1, q1.ndim - q - 1)

    # P2(X.., Q1(X..)) with the last argument kept last, and P2(X.., Q2(X.., x))
    t = np.einsum(p2, [E] + a + [m, o], q1, [E] + b + [m], [E] + a + b + [o])
    out1 = _shuffle_sum(t, p, q, nb, (-1) ** (p * q), fix_last=True)
    t = np.einsum(p2, [E] + a + [m, o], q2, [E] + b + [z, m], [E] + a + b + [z, o])
    out2 = _shuffle_sum(t, p, q, nb, (-1) ** (p * q))

    # P_i(X.., Der_Q(X..)(X_{k+q}), X..) for k = 1 .. p
    c = _labels(q, 20)
    for k in range(1, p + 1):
        s_before, s_after = _labels(k - 1, 0), _labels(p - k, 30)
        sign = (-1) ** ((k - 1) * q)
        t = np.einsum(p1, [E] + s_before + [v] + s_after + [o], der, [E] + c + [w, v],
                      [E] + s_before + c + [w] + s_after + [o])
        out1 = out1 + _shuffle_sum(t, k - 1, q, nb, sign)
        t = np.einsum(p2, [E] + s_before + [v] + s_after + [z, o], der, [E] + c + [w, v],
                      [E] + s_before + c + [w] + s_after + [z, o])
        out2 = out2 + _shuffle_sum(t, k - 1, q, nb, sign)
    return out1, out2


def insert_linear(p1, p2, p: int, f: np.ndarray, wb: WedgeBasis) -> tuple[np.ndarray, np.ndarray]:
    """``P o f``: substitute the linear map ``f`` (``(..., in, out)``) into every argument of ``P``."""
    fa = np.take(f, wb.A, axis=-2)
    fb = np.take(f, wb.B, axis=-2)
    der = np.einsum("...wm,wmv->...wv", fa, wb.right) + np.einsum("...wm,wmv->...wv", fb, wb.left)
    s = _labels(p, 0)
    v, w, o, z, m = 45, 46, 47, 48, 49
    out1 = out2 = None
    for k in range(p):
        src = s[:k] + [v] + s[k + 1:]
        dst = s[:k] + [w] + s[k + 1:]
        t1 = np.einsum(p1, [E] + src + [o], der, [E, w, v], [E] + dst + [o])
        t2 = np.einsum(p2, [E] + src + [z, o], der, [E, w, v], [E] + dst + [z, o])
        out1 = t1 if out1 is None else out1 + t1
        out2 = t2 if out2 is None else out2 + t2
    out2 = out2 + np.einsum(p2, [E] + s + [m, o], f, [E, z, m], [E] + s + [z, o])
    return out1, out2


def _apply_out(t: np.ndarray, f: np.ndarray, core: int) -> np.ndarray:
    """``f o P`` on one component: apply ``f`` (``(..., in, out)``) to the values.

    ``core`` is the number of non-batch axes of ``t`` (slots plus value axes).
    """
    inner = list(range(core - 1))
    return np.einsum(t, [E] + inner + [50], f, [E, 50, 51], [E] + inner + [51])


# --- bracket on Cochain objects -------------------------------------------

def _require_endo(c: Cochain) -> None:
    if c.vdim != c.dim:
        raise DimensionMismatch("the bracket is defined for L-valued cochains only")


def circle(P: Cochain, Q: Cochain) -> Cochain:
    """``P o Q`` for ``P`` of degree ``p >= 1`` and ``Q`` of degree ``q >= 1``."""
    _require_endo(P), _require_endo(Q)
    if P.dim != Q.dim:
        raise DimensionMismatch("cochains on different algebras")
    if P.degree < 1 or Q.degree < 1:
        raise ValueError("circle product needs degrees >= 1; use graded_bracket for degree 0")
    wb = wedge_basis(P.dim)
    f, g = circle_arrays(P.f, P.g, P.degree, Q.f, Q.g, Q.degree, wb)
    return Cochain(P.degree + Q.degree, P.dim, P.dim, f, g)


def bracket_arrays(p_f, p_g, p: int, q_f, q_g, q: int, wb: WedgeBasis):
    """``[P, Q]`` on raw arrays; degree-0 arguments have ``g = None``."""
    if p >= 1 and q >= 1:
        a1, a2 = circle_arrays(p_f, p_g, p, q_f, q_g, q, wb)
        b1, b2 = circle_arrays(q_f, q_g, q, p_f, p_g, p, wb)
        if (p * q) % 2:
            return a1 + b1, a2 + b2
        return a1 - b1, a2 - b2
    if p >= 1:  # q == 0
        a1, a2 = insert_linear(p_f, p_g, p, q_f, wb)
        return a1 - _apply_out(p_f, q_f, p + 1), a2 - _apply_out(p_g, q_f, p + 2)
    if q >= 1:  # p == 0: [f, Q] = -[Q, f]
        r1, r2 = bracket_arrays(q_f, q_g, q, p_f, p_g, p, wb)
        return -r1, -r2
    # f o h - h o f, where (f o h)(x) = f(h(x))
    return (np.einsum("...im,...mo->...io", q_f, p_f) - np.einsum("...im,...mo->...io", p_f, q_f)), None


def graded_bracket(P: Cochain, Q: Cochain) -> Cochain:
    """``[P, Q] = P o Q - (-1)^{pq} Q o P`` (with the insertion rule in degree 0)."""
    _require_endo(P), _require_endo(Q)
    if P.dim != Q.dim:
        raise DimensionMismatch("cochains on different algebras")
    p, q, d = P.degree, Q.degree, P.dim
    wb = wedge_basis(d)
    # bilinear: work on integer numerators and divide once at the end
    (pf, pg), dp, tp = exact.integer_form(P.f, P.g)
    (qf, qg), dq, tq = exact.integer_form(Q.f, Q.g)
    bound = 8 * (p + q + 2) * comb(p + q, p) * max(wb.size, 1) * max(d, 1) * tp * tq
    pf, pg, qf, qg = exact.narrow([pf, pg, qf, qg], bound)
    f, g = bracket_arrays(pf, pg, p, qf, qg, q, wb)
    den = dp * dq
    return Cochain(p + q, d, d, exact.from_integers(np.asarray(f).astype(object), den),
                   None if g is None else exact.from_integers(np.asarray(g).astype(object), den))


def mc_residual(a: LyAlgebra) -> Cochain:
    """``[Pi, Pi]``; zero exactly when LY3 and LY4 hold."""
    pi = pi_cochain(a)
    return graded_bracket(pi, pi)


def mc_pair_residual(c) -> tuple[Cochain, Cochain, Cochain]:
    """``([Pi1, Pi1], [Pi2, Pi2], [Pi1, Pi2])`` for a compatible pair."""
    p1 = structure_cochain(c.pi1.c, c.omega1.c)
    p2 = structure_cochain(c.pi2.c, c.omega2.c)
    return graded_bracket(p1, p1), graded_bracket(p2, p2), graded_bracket(p1, p2)


def twisted_differential(pi: Cochain, F: Cochain) -> Cochain:
    """``d_Pi F = [Pi, F]``."""
    return graded_bracket(pi, F)
