"""Rota-Baxter operators (weight 0), pre-Lie-Yamaguti algebras and sub-adjacent algebras.

Two forms of the ternary Rota-Baxter identity are supported:

``sec6`` (default)
    ``[Rx,Ry,Rz] = R([Rx,Ry,z] + [Rx,y,Rz] + [x,Ry,Rz])``, inducing
    ``x * y = [Rx, y]`` and ``{x,y,z} = [x, Ry, Rz]``.
``sec2``
    ``[Rx,Ry,Rz] = R([Rx,Ry,z] + [Ry,Rz,x] - [Rx,Rz,y])``, inducing
    ``{x,y,z} = [Ry, Rz, x]``.

The bilinear identity ``[Rx,Ry] = R([Rx,y] + [x,Ry]) = R([Rx,y] - [Ry,x])``
is the same under both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .compat import CompatibleLy, check_compat_homomorphism
from .errors import DimensionMismatch, ResourceCapExceeded
from .exact import Matrix, frozen
from .lya import BilinearMap, LinearMap, LyAlgebra, TrilinearMap, cyclic3
from .rep import Representation
from .report import DEFAULT_MAX_WITNESSES, CheckReport, from_residual

CONVENTIONS = ("sec6", "sec2")
DEFAULT_CONVENTION = "sec6"
SEARCH_CAP = 200_000


def _convention(name: str) -> str:
    if name not in CONVENTIONS:
        raise ValueError(f"unknown convention {name!r}; expected one of {CONVENTIONS}")
    return name


# --- substitution helpers -------------------------------------------------------

def _sub(t: np.ndarray, r: np.ndarray, positions) -> np.ndarray:
    """Feed ``R(arg)`` into each listed argument slot of the multilinear map ``t``."""
    letters = "abcdefgh"[:t.ndim]
    out = list(letters)
    ops, specs = [t], [letters]
    for n, p in enumerate(positions):
        out[p] = "pqrs"[n]
        specs.append(letters[p] + out[p])
        ops.append(r)
    return exact.contract(",".join(specs) + "->" + "".join(out), *ops)


def _out(t: np.ndarray, r: np.ndarray) -> np.ndarray:
    return exact.contract("...k,mk->...m", t, r)


def rb_residuals(pi: np.ndarray, om: np.ndarray, r: np.ndarray, convention: str):
    """Bilinear residuals in both written forms, and the ternary residual."""
    convention = _convention(convention)
    lhs2 = _sub(pi, r, (0, 1))
    a = _sub(pi, r, (0,))          # [Rx, y]
    b = _sub(pi, r, (1,))          # [x, Ry]
    res_sum = lhs2 - _out(a + b, r)
    res_diff = lhs2 - _out(a - a.transpose(1, 0, 2), r)
    lhs3 = _sub(om, r, (0, 1, 2))
    u = _sub(om, r, (0, 1))        # [Rx, Ry, z]
    if convention == "sec6":
        inner = u + _sub(om, r, (0, 2)) + _sub(om, r, (1, 2))
    else:
        inner = u + u.transpose(2, 0, 1, 3) - u.transpose(0, 2, 1, 3)
    return res_sum, res_diff, lhs3 - _out(inner, r)


def check_rb(a: LyAlgebra, R: LinearMap, convention: str = DEFAULT_CONVENTION,
             max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    if (R.src_dim, R.dst_dim) != (a.dim, a.dim):
        raise DimensionMismatch("operator must be an endomorphism of the algebra")
    res_sum, res_diff, tri = rb_residuals(a.pi.c, a.omega.c, R.m, convention)
    # the two written bilinear forms agree because the bracket is skew
    assert np.all(res_sum == res_diff), "bilinear Rota-Baxter forms disagree"
    return [from_residual("RB-bilinear", res_sum, 2, max_witnesses),
            from_residual(f"RB-trilinear-{convention}", tri, 3, max_witnesses)]


def check_rb_compatible(c: CompatibleLy, R: LinearMap, convention: str = DEFAULT_CONVENTION,
                        max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    out = []
    for k, comp in enumerate(c.components(), start=1):
        for rep in check_rb(comp, R, convention, max_witnesses):
            rep.axiom_id = f"{rep.axiom_id}[{k}]"
            out.append(rep)
    return out


# --- pre-Lie-Yamaguti algebras --------------------------------------------------------

class PreLy:
    """``(L, *, {,,})`` with ``star[x, y, o]`` and ``triple[x, y, z, o]``; no symmetry assumed."""

    __slots__ = ("dim", "star", "triple")

    def __init__(self, star, triple):
        star, triple = exact.as_exact(star), exact.as_exact(triple)
        d = star.shape[0]
        if star.shape != (d,) * 3 or triple.shape != (d,) * 4:
            raise DimensionMismatch("star must be (d, d, d) and triple (d, d, d, d)")
        self.dim = d
        self.star = frozen(star)
        self.triple = frozen(triple)

    @classmethod
    def from_entries(cls, dim: int, star=(), triple=()) -> "PreLy":
        s, t = exact.zeros((dim,) * 3), exact.zeros((dim,) * 4)
        for *idx, v in star:
            s[tuple(idx)] += exact.parse_rational(v) if not isinstance(v, exact.Fraction) else v
        for *idx, v in triple:
            t[tuple(idx)] += exact.parse_rational(v) if not isinstance(v, exact.Fraction) else v
        return cls(s, t)

    def __repr__(self):
        return f"PreLy(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class CompatPreLy:
    first: PreLy
    second: PreLy

    def __post_init__(self):
        if self.first.dim != self.second.dim:
            raise DimensionMismatch("components have different dimensions")

    @property
    def dim(self) -> int:
        return self.first.dim


_ci = exact.contract_int


@dataclass
class _Derived:
    s: np.ndarray     # x * y
    t: np.ndarray     # {x, y, z}
    c: np.ndarray     # x * y - y * x
    d: np.ndarray     # {x, y, z}_D


def _derived(s: np.ndarray, t: np.ndarray, ct=exact.contract) -> _Derived:
    comm = s - s.transpose(1, 0, 2)
    assoc = ct("xym,mzo->xyzo", s, s) - ct("yzm,xmo->xyzo", s, s)
    d = (np.einsum("zyxo->xyzo", t) - np.einsum("zxyo->xyzo", t)
         + np.einsum("yxzo->xyzo", assoc) - assoc)
    return _Derived(s, t, comm, d)


def _integral(*ps: PreLy) -> tuple[list[_Derived], int]:
    """Integer copies scaled by ``N`` (product) and ``N^2`` (triple).

    Every identity below is homogeneous when the product has weight 1 and
    the triple weight 2, so an identity of weight ``w`` holds exactly when
    its integer residual vanishes, and the rational residual is that divided
    by ``N^w``.
    """
    n = exact.common_denominator(*(x for p in ps for x in (p.star, p.triple)))

    def ints(arr, k):
        return np.array([int(v * k) for v in arr.flat], dtype=object).reshape(arr.shape)

    return [_derived(ints(p.star, n), ints(p.triple, n * n), _ci) for p in ps], n


def _report(axiom_id: str, res: np.ndarray, arity: int, weight: int, n: int, max_witnesses: int) -> CheckReport:
    if n != 1 and not exact.is_zero(res):
        res = exact.from_integers(res, n ** weight)
    return from_residual(axiom_id, res, arity, max_witnesses)


def _swap01(t: np.ndarray) -> np.ndarray:
    return np.swapaxes(t, 0, 1)


def _pre1(si, tj, ci):
    """``{z,[x,y]_i,w}_j - {y *_i z, x, w}_j + {x *_i z, y, w}_j``."""
    return (_ci("xym,zmwo->xyzwo", ci, tj)
            - _ci("yzm,mxwo->xyzwo", si, tj)
            + _ci("xzm,mywo->xyzwo", si, tj))


def _pre2(t_out, c_in, s_out, t_in):
    """``{x,y,[z,w]_in}_out - z *_out {x,y,w}_in + w *_out {x,y,z}_in``."""
    return (_ci("zwm,xymo->xyzwo", c_in, t_out)
            - _ci("xywm,zmo->xyzwo", t_in, s_out)
            + _ci("xyzm,wmo->xyzwo", t_in, s_out))


def _pre3(ti, di, tj, dj):
    f = "->xyzwto"
    return (_ci("xyzm,mwto" + f, ti, tj) - _ci("xywm,mzto" + f, ti, tj)
            - _ci("zwtm,xymo" + f, di, tj) - _ci("zwtm,xymo" + f, ti, tj)
            + _ci("wztm,xymo" + f, ti, tj) + _ci("xytm,zwmo" + f, ti, dj))


def _pre4(ti, di, tj, dj):
    f = "->xyzwto"
    return (_ci("xywm,zmto" + f, di, tj) + _ci("xywm,zmto" + f, ti, tj)
            - _ci("yxwm,zmto" + f, ti, tj) + _ci("xytm,zwmo" + f, di, tj)
            + _ci("xytm,zwmo" + f, ti, tj) - _ci("yxtm,zwmo" + f, ti, tj)
            - _ci("zwtm,xymo" + f, ti, dj) + _ci("xyzm,mwto" + f, di, tj))


def _pre5(ti, di, si, sj, dj):
    f = "->xyzwo"
    return (_ci("xyzm,mwo" + f, di, sj) + _ci("xyzm,mwo" + f, ti, sj)
            - _ci("yxzm,mwo" + f, ti, sj) - _ci("zwm,xymo" + f, si, dj)
            + _ci("xywm,zmo" + f, dj, si))


# weight of each identity: product 1, triple 2
_WEIGHTS = {1: 3, 2: 3, 3: 4, 4: 4, 5: 3}


def check_pre_lya(p: PreLy, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    [q], n = _integral(p)
    res = {1: (_pre1(q.s, q.t, q.c), 4), 2: (_pre2(q.t, q.c, q.s, q.t), 4), 3: (_pre3(q.t, q.d, q.t, q.d), 5),
           4: (_pre4(q.t, q.d, q.t, q.d), 5), 5: (_pre5(q.t, q.d, q.s, q.s, q.d), 4)}
    return [_report(f"PLY{k}", r, ar, _WEIGHTS[k], n, max_witnesses) for k, (r, ar) in res.items()]


def check_compat_pre_lya(cp: CompatPreLy, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """Both components as pre-LY algebras, then the five mixed identities (summed over ``i != j``)."""
    reports = []
    for k, comp in enumerate((cp.first, cp.second), start=1):
        for r in check_pre_lya(comp, max_witnesses):
            r.axiom_id = f"{r.axiom_id}[{k}]"
            reports.append(r)
    (a, b), n = _integral(cp.first, cp.second)
    mixed = {
        1: (_pre1(a.s, b.t, a.c) + _pre1(b.s, a.t, b.c), 4),
        2: (_pre2(a.t, b.c, a.s, b.t) + _pre2(b.t, a.c, b.s, a.t), 4),
        3: (_pre3(a.t, a.d, b.t, b.d) + _pre3(b.t, b.d, a.t, a.d), 5),
        4: (_pre4(a.t, a.d, b.t, b.d) + _pre4(b.t, b.d, a.t, a.d), 5),
        5: (_pre5(a.t, a.d, a.s, b.s, b.d) + _pre5(b.t, b.d, b.s, a.s, a.d), 4),
    }
    reports += [_report(f"CPLY{k}", r, ar, _WEIGHTS[k], n, max_witnesses) for k, (r, ar) in mixed.items()]
    return reports


def _mixed_cyclic(ci, dj):
    return cyclic3(_ci("xym,mzto->xyzto", ci, dj))


def _mixed_d(ti, di, dj):
    f = "->xyzwto"
    return (_ci("zwtm,xymo" + f, di, dj) - _ci("xyzm,mwto" + f, di, dj)
            - _ci("xyzm,mwto" + f, ti, dj) + _ci("yxzm,mwto" + f, ti, dj)
            - _ci("xywm,zmto" + f, di, dj) - _ci("xywm,zmto" + f, ti, dj)
            + _ci("yxwm,zmto" + f, ti, dj) - _ci("xytm,zwmo" + f, di, dj))


def check_mixed_d_identities(cp: CompatPreLy, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """The two families of mixed identities for each ordered pair ``i != j``."""
    derived, n = _integral(cp.first, cp.second)
    q = dict(zip((1, 2), derived))
    reports = []
    for i, j in ((1, 2), (2, 1)):
        reports.append(_report(f"MIXD-i[{i},{j}]", _mixed_cyclic(q[i].c, q[j].d), 4, 3, n, max_witnesses))
        reports.append(_report(f"MIXD-ii[{i},{j}]", _mixed_d(q[i].t, q[i].d, q[j].d), 5, 4, n, max_witnesses))
    return reports


def subadjacent_tensors(p: PreLy) -> tuple[np.ndarray, np.ndarray]:
    q = _derived(p.star, p.triple)
    return q.c, q.d + q.t - _swap01(q.t)


def subadjacent(p) -> LyAlgebra | CompatibleLy:
    """``[x,y] = x*y - y*x`` and ``[x,y,z] = {x,y,z}_D + {x,y,z} - {y,x,z}`` (per component for a pair)."""
    if isinstance(p, CompatPreLy):
        c1, t1 = subadjacent_tensors(p.first)
        c2, t2 = subadjacent_tensors(p.second)
        return CompatibleLy(p.dim, BilinearMap(c1), TrilinearMap(t1), BilinearMap(c2), TrilinearMap(t2))
    c, t = subadjacent_tensors(p)
    return LyAlgebra(p.dim, BilinearMap(c), TrilinearMap(t))


def induce_tensors(pi: np.ndarray, om: np.ndarray, r: np.ndarray, convention: str):
    convention = _convention(convention)
    star = _sub(pi, r, (0,))
    if convention == "sec6":
        triple = _sub(om, r, (1, 2))
    else:
        triple = _sub(om, r, (0, 1)).transpose(2, 0, 1, 3)
    return star, triple


def induce_pre_lya(a, R: LinearMap, convention: str = DEFAULT_CONVENTION):
    """Pre-LY structure induced by ``R``; on a compatible pair, one per component."""
    if isinstance(a, CompatibleLy):
        return CompatPreLy(*(PreLy(*induce_tensors(x.pi.c, x.omega.c, R.m, convention))
                             for x in a.components()))
    return PreLy(*induce_tensors(a.pi.c, a.omega.c, R.m, convention))


# --- homomorphisms, representations -------------------------------------------------

def check_rb_homomorphism(a: CompatibleLy, Ra: LinearMap, b: CompatibleLy, Rb: LinearMap, phi: LinearMap,
                          max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    reports = check_compat_homomorphism(a, b, phi, max_witnesses)
    comm = phi.m.dot(Ra.m) - Rb.m.dot(phi.m)
    reports.append(from_residual("RB-intertwine", comm.T, 1, max_witnesses))
    return reports


def check_rb_representation(a: LyAlgebra, R: LinearMap, rep: Representation, T: LinearMap,
                            max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """``rho(Rx) T = T(rho(Rx) + rho(x) T)`` and
    ``mu(Rx,Ry) T = T(mu(Rx,Ry) + mu(Rx,y) T + mu(x,Ry) T)``."""
    if rep.alg_dim != a.dim or (T.src_dim, T.dst_dim) != (rep.v_dim, rep.v_dim):
        raise DimensionMismatch("operator shapes do not match")
    r, t = R.m, T.m
    rho_r = exact.contract("mx,moi->xoi", r, rep.rho)                   # rho(Rx)
    mu_rr = exact.contract("mx,ny,mnoi->xyoi", r, r, rep.mu)            # mu(Rx, Ry)
    mu_r_ = exact.contract("mx,myoi->xyoi", r, rep.mu)                  # mu(Rx, y)
    mu__r = exact.contract("ny,xnoi->xyoi", r, rep.mu)                  # mu(x, Ry)

    def left(m):   # M T
        return exact.contract("...om,mi->...oi", m, t)

    def right(m):  # T M
        return exact.contract("om,...mi->...oi", t, m)

    res1 = left(rho_r) - right(rho_r + left(rep.rho))
    res2 = left(mu_rr) - right(mu_rr + left(mu_r_) + left(mu__r))
    return [from_residual("RBREP-rho", res1, 1, max_witnesses),
            from_residual("RBREP-mu", res2, 2, max_witnesses)]


# --- search ------------------------------------------------------------------

def _int_scaled(t: np.ndarray) -> tuple[np.ndarray, int]:
    den = exact.common_denominator(t)
    return np.array([int(x * den) for x in t.flat], dtype=object).reshape(t.shape), den


def _batch_residual_nonzero(pi, om, r, convention: str) -> np.ndarray:
    """Boolean mask of candidates (leading axis of ``r``) that fail some identity."""
    lhs2 = np.einsum("npx,nqy,pqo->nxyo", r, r, pi, optimize=True)
    a = np.einsum("npx,pyo->nxyo", r, pi, optimize=True)
    b = np.einsum("nqy,xqo->nxyo", r, pi, optimize=True)
    res2 = lhs2 - np.einsum("nxym,nom->nxyo", a + b, r, optimize=True)
    u = np.einsum("npx,nqy,pqzo->nxyzo", r, r, om, optimize=True)
    lhs3 = np.einsum("nrz,nxyro->nxyzo", r, u, optimize=True)
    if convention == "sec6":
        v = np.einsum("npx,nrz,pyro->nxyzo", r, r, om, optimize=True)
        w = np.einsum("nqy,nrz,xqro->nxyzo", r, r, om, optimize=True)
        inner = u + v + w
    else:
        inner = u + u.transpose(0, 3, 1, 2, 4) - u.transpose(0, 1, 3, 2, 4)
    res3 = lhs3 - np.einsum("nxyzm,nom->nxyzo", inner, r, optimize=True)
    n = r.shape[0]
    return np.any(res2.reshape(n, -1) != 0, axis=1) | np.any(res3.reshape(n, -1) != 0, axis=1)


def search_rb(a, entry_set=(-1, 0, 1), convention: str = DEFAULT_CONVENTION,
              max_candidates: int = SEARCH_CAP, chunk: int = 4096) -> list[LinearMap]:
    """Every Rota-Baxter operator whose matrix entries all lie in ``entry_set``.

    On a compatible pair, an operator must satisfy the identities for both
    components. Candidates are tested in bulk with integer arithmetic: both
    identities are homogeneous, so structure constants and entries are scaled
    to integers first, and the int64 path is taken only when a bound on every
    intermediate sum fits (Python ints otherwise). The test is therefore exact.
    Results are in row-major lexicographic order of the entry set.
    """
    convention = _convention(convention)
    comps = list(a.components()) if isinstance(a, CompatibleLy) else [a]
    d = comps[0].dim
    values = [exact.Fraction(v) if not isinstance(v, str) else exact.parse_rational(v) for v in entry_set]
    values = list(dict.fromkeys(values))
    total = len(values) ** (d * d)
    if total > max_candidates:
        raise ResourceCapExceeded(f"{len(values)}^{d * d} = {total} candidates exceed the cap {max_candidates}")
    vden = exact.common_denominator(np.array(values, dtype=object))
    ivals = np.array([int(v * vden) for v in values], dtype=object)
    scaled = []
    emax = max([abs(int(v)) for v in ivals] + [1])
    for comp in comps:
        pi_i, _ = _int_scaled(comp.pi.c)
        om_i, _ = _int_scaled(comp.omega.c)
        scaled.append((pi_i, om_i))
    cmax = max([abs(int(x)) for p, o in scaled for x in list(p.flat) + list(o.flat)] + [1])
    # generous bound on any intermediate sum in the screening
    use_int64 = 16 * d ** 5 * emax ** 4 * cmax < 2 ** 62
    dtype = np.int64 if use_int64 else object
    ivals_t = ivals.astype(dtype)
    scaled_t = [(p.astype(dtype), o.astype(dtype)) for p, o in scaled]
    base = len(values)
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.empty((idx.size, d * d), dtype=np.int64)
        rem = idx.copy()
        for k in range(d * d - 1, -1, -1):
            digits[:, k] = rem % base
            rem //= base
        r = ivals_t[digits].reshape(idx.size, d, d)
        bad = np.zeros(idx.size, dtype=bool)
        for p, o in scaled_t:
            bad |= _batch_residual_nonzero(p, o, r, convention)
        for pos in np.nonzero(~bad)[0]:
            m = np.array([values[j] for j in digits[pos]], dtype=object).reshape(d, d)
            found.append(LinearMap(d, d, Matrix(m)))
    return found


def inverse(R: LinearMap) -> LinearMap | None:
    """Exact inverse, or None when singular."""
    n = R.src_dim
    if R.dst_dim != n:
        return None
    cols = []
    for j in range(n):
        e = [exact.ZERO] * n
        e[j] = exact.ONE
        x = exact.solve(R.matrix, e)
        if x is None:
            return None
        cols.append(x)
    if exact.rank(R.matrix) < n:
        return None
    return LinearMap(n, n, Matrix(np.array(cols, dtype=object).T))


__all__ = [
    "check_rb", "check_rb_compatible", "induce_pre_lya", "check_pre_lya", "check_compat_pre_lya",
    "check_mixed_d_identities", "subadjacent", "check_rb_homomorphism", "check_rb_representation", "search_rb",
    "PreLy", "CompatPreLy", "inverse", "CONVENTIONS",
]
