"""Coboundary operators, the compatible complex, cohomology dimensions, deformations.

``delta`` is the Yamaguti coboundary with coefficients in a representation,
transcribed term by term from its defining sums; it shares no code with the
bracket in :mod:`cochain`, which makes ``delta_vs_bracket`` a real
cross-check. For adjoint coefficients, ``delta F = (-1)^n [Pi, F]`` on a
cochain with ``n`` wedge slots.

The compatible complex at level ``m`` is ``m + 1`` copies of the degree-``m``
cochains. Its differential sends ``(F_0, ..., F_m)`` to ``(G_0, ...,
G_{m+1})`` with ``G_i = [Pi_2, F_{i-1}] + [Pi_1, F_i]`` (out-of-range terms
dropped). Level 0 is ``Hom(L, L)``; infinitesimal deformations are level-1
cocycles.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import exact
from .cochain import (Cochain, WedgeBasis, bracket_arrays, cochain_shapes, space_dim, structure_cochain,
                      wedge_basis)
from .compat import CompatibleLy, check_compatible
from .errors import DimensionMismatch, ResourceCapExceeded
from .lya import BilinearMap, LyAlgebra, TrilinearMap
from .rep import Representation, adjoint, d_tensor
from .report import DEFAULT_MAX_WITNESSES, CheckReport, all_ok, from_residual

DEGREE_CAP = 2
DIM_CAP = 4

E = Ellipsis


# --- Yamaguti coboundary -----------------------------------------------------

@dataclass
class _Ctx:
    """Structure data pulled back to wedge slots."""

    wb: WedgeBasis
    pi_w: np.ndarray      # (W, d): [x, y] for w = x ^ y
    om_wz: np.ndarray     # (W, d, d): [x, y, z]
    circ: np.ndarray      # (W, W, W): X_k o X_l on basis wedges
    rho: np.ndarray       # (d, v, v)
    mu: np.ndarray        # (d, d, v, v)
    dw: np.ndarray        # (W, v, v): D(x, y)


def _context(a: LyAlgebra, r: Representation) -> _Ctx:
    wb = wedge_basis(a.dim)
    om_w = a.omega.c[wb.A, wb.B]  # (W, z, out)
    circ = exact.zeros((wb.size,) * 3)
    for k in range(wb.size):
        for l, (x, y) in enumerate(wb.pairs):
            # [X_k, x] ^ y + x ^ [X_k, y]
            ex, ey = np.zeros(a.dim, dtype=object), np.zeros(a.dim, dtype=object)
            ex[x], ey[y] = 1, 1
            circ[k, l] = wb.of_vectors(om_w[k, x], ey) + wb.of_vectors(ex, om_w[k, y])
    dd = d_tensor(a.pi.c, r.rho, r.mu)
    return _Ctx(wb, a.pi.c[wb.A, wb.B], om_w, circ, r.rho, r.mu, dd[wb.A, wb.B])


def _delta0_arrays(ctx: _Ctx, f: np.ndarray):
    """``n = 0``: ``f : L -> V`` given as ``(..., d, v)``."""
    wb = ctx.wb
    fa, fb = np.take(f, wb.A, axis=-2), np.take(f, wb.B, axis=-2)  # (..., W, v)
    ra, rb = ctx.rho[wb.A], ctx.rho[wb.B]                            # (W, v, v)
    d1 = (np.einsum("woi,...wi->...wo", ra, fb) - np.einsum("woi,...wi->...wo", rb, fa)
          - np.einsum("wm,...mo->...wo", ctx.pi_w, f))
    mu_b, mu_a = ctx.mu[wb.B], ctx.mu[wb.A]                          # (W, z, v, v)
    d2 = (np.einsum("woi,...zi->...wzo", ctx.dw, f)
          + np.einsum("wzoi,...wi->...wzo", mu_b, fa)
          - np.einsum("wzoi,...wi->...wzo", mu_a, fb)
          - np.einsum("wzm,...mo->...wzo", ctx.om_wz, f))
    return d1, d2


def _delta_arrays(ctx: _Ctx, f: np.ndarray, g: np.ndarray, n: int):
    """``n >= 1`` wedge slots in, ``n + 1`` out. Arrays may carry a leading batch axis."""
    wb = ctx.wb
    pos = list(range(n + 1))          # labels of output slots X_1 .. X_{n+1}
    o, i, m, z, v = 40, 41, 42, 43, 44
    last = pos[-1]
    head = pos[:-1]
    sgn_n = (-1) ** n

    # (-1)^n [rho(x_{n+1}) g(.., y_{n+1}) - rho(y_{n+1}) g(.., x_{n+1}) - g(.., [x_{n+1}, y_{n+1}])]
    ga, gb = np.take(g, wb.A, axis=-2), np.take(g, wb.B, axis=-2)  # (..., S, W, v)
    t1 = (np.einsum(ctx.rho[wb.A], [last, o, i], gb, [E] + head + [last, i], [E] + pos + [o])
          - np.einsum(ctx.rho[wb.B], [last, o, i], ga, [E] + head + [last, i], [E] + pos + [o])
          - np.einsum(ctx.pi_w, [last, m], g, [E] + head + [m, o], [E] + pos + [o]))
    d1 = sgn_n * t1
    # (-1)^n [mu(y_{n+1}, z) g(.., x_{n+1}) - mu(x_{n+1}, z) g(.., y_{n+1})]
    t2 = (np.einsum(ctx.mu[wb.B], [last, z, o, i], ga, [E] + head + [last, i], [E] + pos + [z, o])
          - np.einsum(ctx.mu[wb.A], [last, z, o, i], gb, [E] + head + [last, i], [E] + pos + [z, o]))
    d2 = sgn_n * t2

    for k in range(n + 1):            # 0-based position of X_k
        rest = pos[:k] + pos[k + 1:]
        sk = (-1) ** k                # equals (-1)^{k+1} for the 1-based index
        # D(X_k) f(.. ^X_k ..), only for k <= n (1-based)
        if k < n:
            d1 = d1 + sk * np.einsum(ctx.dw, [k, o, i], f, [E] + rest + [i], [E] + pos + [o])
        d2 = d2 + sk * np.einsum(ctx.dw, [k, o, i], g, [E] + rest + [z, i], [E] + pos + [z, o])
        # -(-1)^{k+1} g(.. ^X_k .., [x_k, y_k, z])
        d2 = d2 - sk * np.einsum(ctx.om_wz, [k, z, m], g, [E] + rest + [m, o], [E] + pos + [z, o])
        # (-1)^k f(.. ^X_k .., X_k o X_l, ..) for l > k
        for l in range(k + 1, n + 1):
            inner = [v if p == l else p for p in rest]
            d1 = d1 - sk * np.einsum(ctx.circ, [k, l, v], f, [E] + inner + [o], [E] + pos + [o])
            d2 = d2 - sk * np.einsum(ctx.circ, [k, l, v], g, [E] + inner + [z, o], [E] + pos + [z, o])
    return d1, d2


def _check_rep(a: LyAlgebra, rep: Representation | None) -> Representation:
    rep = adjoint(a) if rep is None else rep
    if rep.alg_dim != a.dim:
        raise DimensionMismatch("representation does not match the algebra")
    return rep


def _integral_run(ctx: _Ctx, cochain_arrays: list, n_terms: int, fn):
    """Run ``fn(ctx, *arrays)`` on integer numerators and divide once.

    The coboundary is linear in the cochain and in each structure array
    separately, so every term is one structure numerator times one cochain
    numerator over the same two denominators.
    """
    fields = [ctx.pi_w, ctx.om_wz, ctx.circ, ctx.rho, ctx.mu, ctx.dw]
    ints, den_c, top_c = exact.integer_form(*fields)
    cints, den_f, top_f = exact.integer_form(*cochain_arrays)
    widest = max(ctx.wb.size, ctx.rho.shape[0], ctx.rho.shape[1], 1)
    narrowed = exact.narrow(ints + cints, n_terms * widest * top_c * top_f)
    ictx = _Ctx(ctx.wb, *narrowed[:len(fields)])
    den = den_c * den_f
    return [exact.from_integers(np.asarray(x).astype(object), den) for x in fn(ictx, *narrowed[len(fields):])]


def delta0(f: Cochain, a: LyAlgebra, rep: Representation | None = None) -> Cochain:
    """Coboundary of a linear map ``f : L -> V``."""
    rep = _check_rep(a, rep)
    if f.degree != 0 or f.dim != a.dim or f.vdim != rep.v_dim:
        raise DimensionMismatch("expected a degree-0 cochain matching the algebra and representation")
    d1, d2 = _integral_run(_context(a, rep), [f.f], 8, _delta0_arrays)
    return Cochain(1, a.dim, rep.v_dim, d1, d2)


def delta(F: Cochain, a: LyAlgebra, rep: Representation | None = None) -> Cochain:
    """Yamaguti coboundary; ``rep`` defaults to the adjoint representation."""
    rep = _check_rep(a, rep)
    if F.dim != a.dim or F.vdim != rep.v_dim:
        raise DimensionMismatch("cochain does not match the algebra and representation")
    if F.degree == 0:
        return delta0(F, a, rep)
    n = F.degree
    d1, d2 = _integral_run(_context(a, rep), [F.f, F.g], 5 + 3 * (n + 1) + n * (n + 1),
                           lambda ctx, f, g: _delta_arrays(ctx, f, g, n))
    return Cochain(n + 1, a.dim, rep.v_dim, d1, d2)


def delta_vs_bracket(F: Cochain, a: LyAlgebra) -> Cochain:
    """``delta F - (-1)^n [Pi, F]`` with adjoint coefficients; zero when the two agree."""
    from .cochain import graded_bracket, pi_cochain
    lhs = delta(F, a)
    rhs = graded_bracket(pi_cochain(a), F)
    return lhs - rhs.scale((-1) ** F.degree)


# --- compatible complex --------------------------------------------------------

def _integral_structures(c: CompatibleLy):
    """Structure cochains of both components, scaled to integers when possible.

    Scaling both structures by the same nonzero factor scales the whole
    differential, so kernels and ranks are unchanged.
    """
    p1 = structure_cochain(c.pi1.c, c.omega1.c)
    p2 = structure_cochain(c.pi2.c, c.omega2.c)
    parts = [p1.f, p1.g, p2.f, p2.g]
    den = exact.common_denominator(*parts)
    ints = [np.vectorize(lambda x: int(x * den), otypes=[object])(t) if t.size else t.astype(object)
            for t in parts]
    bound = max([abs(int(x)) for t in ints for x in t.flat] + [1])
    return ints, bound


def _bracket_with(pf, pg, F_f, F_g, n, wb):
    return bracket_arrays(pf, pg, 1, F_f, F_g, n, wb)


def _level_shapes(m: int, dim: int):
    fs, gs = cochain_shapes(m, dim, dim)
    return fs, gs, space_dim(m, dim)


def delta_c(c: CompatibleLy, F: list[Cochain]) -> list[Cochain]:
    """Differential of the compatible complex on a tuple of ``m + 1`` degree-``m`` cochains."""
    from .cochain import graded_bracket
    if not F:
        raise ValueError("empty tuple")
    m = F[0].degree
    if len(F) != m + 1 or any(x.degree != m or x.dim != c.dim or x.vdim != c.dim for x in F):
        raise DimensionMismatch(f"level {m} needs {m + 1} cochains of degree {m} on the algebra")
    p1 = structure_cochain(c.pi1.c, c.omega1.c)
    p2 = structure_cochain(c.pi2.c, c.omega2.c)
    out = []
    for i in range(m + 2):
        acc = Cochain.zero(m + 1, c.dim)
        if i - 1 >= 0:
            acc = acc + graded_bracket(p2, F[i - 1])
        if i <= m:
            acc = acc + graded_bracket(p1, F[i])
        out.append(acc)
    return out


def _basis_batch(m: int, dim: int):
    """All basis cochains of degree ``m`` as a batch (identity in flattened coordinates)."""
    fs, gs, size = _level_shapes(m, dim)
    eye = np.zeros((size, size), dtype=np.int64)
    np.fill_diagonal(eye, 1)
    eye = eye.astype(object)
    nf = int(np.prod(fs))
    f = eye[:, :nf].reshape((size,) + fs)
    g = None if gs is None else eye[:, nf:].reshape((size,) + gs)
    return f, g, size


def _flatten(f, g) -> np.ndarray:
    b = f.shape[0]
    parts = [f.reshape(b, -1)] + ([] if g is None else [g.reshape(b, -1)])
    return np.concatenate(parts, axis=1)


def _check_caps(c: CompatibleLy, m: int, degree_cap: int, dim_cap: int) -> None:
    if c.dim > dim_cap:
        raise ResourceCapExceeded(f"algebra dimension {c.dim} exceeds the cap {dim_cap}")
    if m > degree_cap:
        raise ResourceCapExceeded(f"level {m} exceeds the degree cap {degree_cap}")


def _bracket_images(c: CompatibleLy, m: int):
    """``[Pi_1, E_j]`` and ``[Pi_2, E_j]`` for every basis cochain ``E_j`` of degree ``m``,
    as two ``(size_m, size_{m+1})`` arrays (integers after a common scaling)."""
    wb = wedge_basis(c.dim)
    (p1f, p1g, p2f, p2g), _ = _integral_structures(c)
    bf, bg, _ = _basis_batch(m, c.dim)
    deg = m
    a1, a2 = _bracket_with(p1f, p1g, bf, bg, deg, wb)
    b1, b2 = _bracket_with(p2f, p2g, bf, bg, deg, wb)
    return _flatten(a1, a2), _flatten(b1, b2)


def differential_columns(c: CompatibleLy, m: int) -> tuple[list[dict[int, int]], int, int]:
    """Sparse columns of the level-``m`` differential (up to a nonzero scalar).

    Returns ``(columns, n_cols, n_rows)``; each column is ``{row: value}``.
    """
    img1, img2 = _bracket_images(c, m)
    size_m, size_next = img1.shape
    cols = []
    for i in range(m + 1):           # which copy of the input
        for j in range(size_m):
            col = {}
            # [Pi_1, F_i] lands in output copy i, [Pi_2, F_i] in copy i + 1
            for off, img in ((i * size_next, img1[j]), ((i + 1) * size_next, img2[j])):
                for r in np.nonzero(img != 0)[0]:
                    col[off + int(r)] = int(img[r])
            cols.append(col)
    return cols, (m + 1) * size_m, (m + 2) * size_next


@dataclass
class CohomologyResult:
    n: int
    kernel: int
    image: int
    h: int
    level_dim: int
    rank: int
    image_in_kernel: bool
    timing_ms: float = 0.0

    def as_dict(self) -> dict:
        return {"n": self.n, "kernel": self.kernel, "image": self.image, "h": self.h,
                "level_dim": self.level_dim, "rank": self.rank, "image_in_kernel": self.image_in_kernel}


def cohomology_dim(c: CompatibleLy, n: int, degree_cap: int = DEGREE_CAP, dim_cap: int = DIM_CAP,
                   validate: bool = True) -> CohomologyResult:
    """``dim ker(d_n) - rank(d_{n-1})`` with the rank-nullity and ``im <= ker`` checks."""
    if n < 0:
        raise ValueError("level must be non-negative")
    _check_caps(c, n, degree_cap, dim_cap)
    if validate and not all_ok(check_compatible(c, informational=False)):
        from .errors import AxiomFailure
        raise AxiomFailure("cohomology needs a compatible Lie-Yamaguti algebra")
    t0 = time.perf_counter()
    cols, ncols, _ = differential_columns(c, n)
    rank_n = exact.sparse_rank(cols)
    kernel = ncols - rank_n
    image = 0
    image_in_kernel = True
    if n >= 1:
        prev, _, _ = differential_columns(c, n - 1)
        image = exact.sparse_rank(prev)
        image_in_kernel = _image_in_kernel(c, n, prev)
    return CohomologyResult(n, kernel, image, kernel - image, ncols, rank_n, image_in_kernel,
                            (time.perf_counter() - t0) * 1000)


def _image_in_kernel(c: CompatibleLy, n: int, prev_cols) -> bool:
    """Apply the level-``n`` differential to every image column of level ``n - 1``."""
    dim = c.dim
    size_n = space_dim(n, dim)
    vecs = []
    for col in prev_cols:
        v = np.zeros((n + 1) * size_n, dtype=object)
        for r, x in col.items():
            v[r] = x
        vecs.append(v)
    if not vecs:
        return True
    wb = wedge_basis(dim)
    (p1f, p1g, p2f, p2g), _ = _integral_structures(c)
    fs, gs, _ = _level_shapes(n, dim)
    nf = int(np.prod(fs))
    stacked = np.stack(vecs)  # (B, (n+1)*size_n)
    outs = []
    for i in range(n + 2):
        acc = None
        for src, (pf, pg) in ((i - 1, (p2f, p2g)), (i, (p1f, p1g))):
            if 0 <= src <= n:
                block = stacked[:, src * size_n:(src + 1) * size_n]
                f = block[:, :nf].reshape((-1,) + fs)
                g = block[:, nf:].reshape((-1,) + gs)
                r1, r2 = _bracket_with(pf, pg, f, g, n, wb)
                flat = _flatten(r1, r2)
                acc = flat if acc is None else acc + flat
        outs.append(acc)
    return all(exact.is_zero(x) for x in outs)


# --- deformations -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DeformationGenerator:
    mu1: BilinearMap
    lambda1: TrilinearMap
    mu2: BilinearMap
    lambda2: TrilinearMap

    @classmethod
    def from_level1(cls, F: list[Cochain]) -> "DeformationGenerator":
        """Generator from a level-1 tuple ``(M_1, M_2)`` of degree-1 cochains."""
        if len(F) != 2 or any(x.degree != 1 for x in F):
            raise DimensionMismatch("a generator is a pair of degree-1 cochains")
        (b1, t1), (b2, t2) = (_unwedge(x) for x in F)
        return cls(b1, t1, b2, t2)

    def level1(self) -> list[Cochain]:
        return [structure_cochain(self.mu1.c, self.lambda1.c), structure_cochain(self.mu2.c, self.lambda2.c)]


def _unwedge(x: Cochain) -> tuple[BilinearMap, TrilinearMap]:
    wb = wedge_basis(x.dim)
    pi = exact.zeros((x.dim,) * 3)
    om = exact.zeros((x.dim,) * 4)
    for w, (a, b) in enumerate(wb.pairs):
        pi[a, b], pi[b, a] = x.f[w], -x.f[w]
        om[a, b], om[b, a] = x.g[w], -x.g[w]
    return BilinearMap(pi), TrilinearMap(om)


def deform(c: CompatibleLy, g: DeformationGenerator, t) -> CompatibleLy:
    """``(pi_i + t mu_i, omega_i + t lambda_i)``."""
    t = exact.Fraction(t)
    return CompatibleLy(c.dim,
                        BilinearMap(c.pi1.c + t * g.mu1.c), TrilinearMap(c.omega1.c + t * g.lambda1.c),
                        BilinearMap(c.pi2.c + t * g.mu2.c), TrilinearMap(c.omega2.c + t * g.lambda2.c),
                        c.basis)


def _mc_vectors(c: CompatibleLy) -> list[np.ndarray]:
    from .cochain import mc_pair_residual
    return [x.vector() for x in mc_pair_residual(c)]


_MC_NAMES = ("[Pi1,Pi1]", "[Pi2,Pi2]", "[Pi1,Pi2]")


def mc_coefficients(c: CompatibleLy, g: DeformationGenerator) -> list[list[np.ndarray]]:
    """Coefficients of ``t^0, t^1, t^2`` in each MC residual of the deformed pair.

    Each residual is a polynomial of degree at most 2 in ``t``; it is
    sampled at ``t = 1, 2, 3`` plus ``t = 0`` and interpolated exactly.
    """
    r0, r1, r2, r3 = (_mc_vectors(deform(c, g, t)) for t in (0, 1, 2, 3))
    out = []
    for k in range(3):
        a0 = r0[k]
        # r(t) = a0 + a1 t + a2 t^2 from t = 1, 2
        a2 = (r2[k] - 2 * r1[k] + a0) * exact.Fraction(1, 2)
        a1 = r1[k] - a0 - a2
        # t = 3 guards the degree bound
        if not exact.is_zero(a0 + 3 * a1 + 9 * a2 - r3[k]):
            raise ArithmeticError("MC residual is not quadratic in t")
        out.append([a0, a1, a2])
    return out


def check_deformation_generator(c: CompatibleLy, g: DeformationGenerator,
                                max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """Reports for the order-1 equations (the level-1 cocycle condition) and the
    order-2 equations of ``(pi_i + t mu_i, omega_i + t lambda_i)``."""
    coeffs = mc_coefficients(c, g)
    reports = []
    for order in (1, 2):
        for name, cf in zip(_MC_NAMES, coeffs):
            vec = cf[order]
            rep = from_residual(f"t^{order} {name}", vec.reshape(-1, 1), 1, max_witnesses)
            reports.append(rep)
    return reports


def cocycle_condition(c: CompatibleLy, g: DeformationGenerator) -> list[Cochain]:
    """``delta_c`` of the generator viewed as a level-1 tuple."""
    return delta_c(c, g.level1())


@dataclass
class TheoremOutcome:
    status: str                  # "pass" | "fail" | "vacuous"
    deformation_reports: list
    cocycle: list


def verify_cocycle_theorem(c: CompatibleLy, g: DeformationGenerator) -> TheoremOutcome:
    """If ``deform(c, g, t)`` is compatible for all ``t`` then the generator is a level-1 cocycle.

    All axiom residuals are polynomials of degree at most 2 in ``t``, so
    checking ``t = 1, 2, 3`` (with ``c`` itself at ``t = 0``) decides the
    hypothesis for every ``t``.
    """
    reports = []
    hypothesis = all_ok(check_compatible(c, informational=False))
    for t in (1, 2, 3):
        rs = check_compatible(deform(c, g, t), informational=False)
        reports.append((t, rs))
        hypothesis = hypothesis and all_ok(rs)
    cocycle = cocycle_condition(c, g)
    if not hypothesis:
        return TheoremOutcome("vacuous", reports, cocycle)
    ok = all(x.is_zero() for x in cocycle)
    return TheoremOutcome("pass" if ok else "fail", reports, cocycle)
