"""Compatible pairs of Lie-Yamaguti structures on one space.

The mixed identities CY1-CY4 are the cross terms obtained by substituting
``pi1 + pi2`` and ``omega1 + omega2`` into the homogeneous parts of the
LY axioms and keeping the terms that use both structures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import AxiomFailure, DimensionMismatch
from .lya import (BilinearMap, LinearMap, LyAlgebra, TrilinearMap, block_sum, check_derivation,
                  derivation_residuals, linear_solution_space,
                  check_homomorphism, check_lya, ly1_bilinear_form, ly2_form, ly3_form, ly4_form)
from .rep import Representation, adjoint, check_representation, d_tensor, semidirect_tensors
from .report import DEFAULT_MAX_WITNESSES, CheckReport, all_ok, from_residual, merge


@dataclass(frozen=True, eq=False)
class CompatibleLy:
    dim: int
    pi1: BilinearMap
    omega1: TrilinearMap
    pi2: BilinearMap
    omega2: TrilinearMap
    basis: tuple = ()

    def __post_init__(self):
        if any(m.dim != self.dim for m in (self.pi1, self.omega1, self.pi2, self.omega2)):
            raise DimensionMismatch("component dimensions do not match")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i + 1}" for i in range(self.dim)))

    @classmethod
    def from_components(cls, first: LyAlgebra, second: LyAlgebra) -> "CompatibleLy":
        if first.dim != second.dim:
            raise DimensionMismatch("components live on spaces of different dimension")
        return cls(first.dim, first.pi, first.omega, second.pi, second.omega, first.basis)

    @property
    def first(self) -> LyAlgebra:
        return LyAlgebra(self.dim, self.pi1, self.omega1, self.basis)

    @property
    def second(self) -> LyAlgebra:
        return LyAlgebra(self.dim, self.pi2, self.omega2, self.basis)

    def components(self) -> tuple[LyAlgebra, LyAlgebra]:
        return self.first, self.second

    def __repr__(self):
        return f"CompatibleLy(dim={self.dim}, first={self.first!r}, second={self.second!r})"


def mixed_residuals(c: CompatibleLy) -> dict[str, tuple[np.ndarray, int]]:
    p1, o1, p2, o2 = c.pi1.c, c.omega1.c, c.pi2.c, c.omega2.c
    return {
        "CY1": (ly1_bilinear_form(p2, p1) + ly1_bilinear_form(p1, p2), 3),
        "CY2": (ly2_form(o2, p1) + ly2_form(o1, p2), 4),
        "CY3": (ly4_form(o2, o1) + ly4_form(o1, o2), 5),
        "CY4": (ly3_form(o2, p1, p2, o1) + ly3_form(o1, p2, p1, o2), 4),
    }


def one_sided_derivation_report(c: CompatibleLy, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Whether each ternary bracket acts by derivations on the other bilinear bracket.

    Not implied by CY1-CY4 and not part of pass/fail; witness tuples start with
    ``(j, i)`` meaning ``omega_j`` acting on ``pi_i``.
    """
    p1, o1, p2, o2 = c.pi1.c, c.omega1.c, c.pi2.c, c.omega2.c
    r21 = from_residual("X5", ly3_form(o2, p1, p1, o2), 4, max_witnesses, prefix=(2, 1))
    r12 = from_residual("X5", ly3_form(o1, p2, p2, o1), 4, max_witnesses, prefix=(1, 2))
    rep = merge("X5-one-sided-derivation", [r21, r12], max_witnesses, informational=True)
    rep.note = "ternary bracket of one structure acting by derivations on the other bracket"
    return rep


def check_compatible(c: CompatibleLy, max_witnesses: int = DEFAULT_MAX_WITNESSES,
                     informational: bool = True) -> list[CheckReport]:
    """LY1-LY4 for both components, CY1-CY4, and one informational report."""
    reports = []
    for k, comp in enumerate(c.components(), start=1):
        for r in check_lya(comp, max_witnesses):
            r.axiom_id = f"{r.axiom_id}[{k}]"
            reports.append(r)
    for name, (res, arity) in mixed_residuals(c).items():
        reports.append(from_residual(name, res, arity, max_witnesses))
    if informational:
        reports.append(one_sided_derivation_report(c, max_witnesses))
    return reports


def require_compatible(c: CompatibleLy, what: str = "input") -> None:
    reports = check_compatible(c, informational=False)
    if not all_ok(reports):
        failed = ", ".join(r.axiom_id for r in reports if not r.ok)
        raise AxiomFailure(f"{what} is not a compatible Lie-Yamaguti algebra (fails {failed})", reports)


def linear_combination(c: CompatibleLy, k1, k2) -> LyAlgebra:
    k1, k2 = exact.Fraction(k1), exact.Fraction(k2)
    return LyAlgebra(c.dim, BilinearMap(k1 * c.pi1.c + k2 * c.pi2.c),
                     TrilinearMap(k1 * c.omega1.c + k2 * c.omega2.c), c.basis)


DEFAULT_SAMPLES = ((1, 1), (1, -1), (2, 3), (1, 0), (0, 1))


def check_linear_combinations(c: CompatibleLy, samples=DEFAULT_SAMPLES,
                 max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[tuple[tuple, list[CheckReport]]]:
    """check_lya on ``k1*first + k2*second`` for each weight pair.

    LY1 mixes a quadratic and a linear term, so a combination can fail LY1
    even for a compatible pair; the per-sample reports show exactly where.
    """
    out = []
    for k1, k2 in samples:
        k = (exact.Fraction(k1), exact.Fraction(k2))
        out.append((k, check_lya(linear_combination(c, *k), max_witnesses)))
    return out


def compat_direct_sum(a: CompatibleLy, b: CompatibleLy, validate: bool = True) -> CompatibleLy:
    if validate:
        require_compatible(a, "first summand")
        require_compatible(b, "second summand")
    return CompatibleLy(a.dim + b.dim,
                        BilinearMap(block_sum(a.pi1.c, b.pi1.c)), TrilinearMap(block_sum(a.omega1.c, b.omega1.c)),
                        BilinearMap(block_sum(a.pi2.c, b.pi2.c)), TrilinearMap(block_sum(a.omega2.c, b.omega2.c)),
                        tuple(a.basis) + tuple(f"{s}'" for s in b.basis))


def _tag(reports: list[CheckReport], k: int) -> list[CheckReport]:
    for r in reports:
        r.axiom_id = f"{r.axiom_id}[{k}]"
    return reports


def check_compat_homomorphism(a: CompatibleLy, b: CompatibleLy, phi: LinearMap,
                              max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    return (_tag(check_homomorphism(a.first, b.first, phi, max_witnesses), 1)
            + _tag(check_homomorphism(a.second, b.second, phi, max_witnesses), 2))


def check_compat_derivation(c: CompatibleLy, d: LinearMap, weights=None,
                            max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """Derivation checks for ``d``.

    Without ``weights``: ``d`` must be a derivation of each component.
    With ``weights=(k1, k2)``: ``d`` must be a derivation of the single
    combined structure ``k1*first + k2*second``.
    """
    if weights is None:
        return (_tag(check_derivation(c.first, d, max_witnesses), 1)
                + _tag(check_derivation(c.second, d, max_witnesses), 2))
    k1, k2 = weights
    reports = check_derivation(linear_combination(c, k1, k2), d, max_witnesses)
    for r in reports:
        r.axiom_id = f"{r.axiom_id}[{exact.render_rational(k1)},{exact.render_rational(k2)}]"
    return reports


def compat_derivation_space(c: CompatibleLy) -> list[LinearMap]:
    """Basis of the maps that are derivations of both components."""
    def residuals(d):
        return derivation_residuals(c.pi1.c, c.omega1.c, d) + derivation_residuals(c.pi2.c, c.omega2.c, d)
    return linear_solution_space(c.dim, residuals)


def inner_derivation(c: CompatibleLy, a: int, b: int, k1=1, k2=1) -> LinearMap:
    """``z -> k1 [e_a, e_b, z]_1 + k2 [e_a, e_b, z]_2`` as a matrix."""
    k1, k2 = exact.Fraction(k1), exact.Fraction(k2)
    t = k1 * c.omega1.c[a, b] + k2 * c.omega2.c[a, b]  # (z, out)
    return LinearMap(c.dim, c.dim, exact.Matrix(t.T))


# --- representations ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CompatRepresentation:
    """A pair of representations on the same ``V``, one per component."""

    first: Representation
    second: Representation

    def __post_init__(self):
        if (self.first.alg_dim, self.first.v_dim) != (self.second.alg_dim, self.second.v_dim):
            raise DimensionMismatch("the two representations have different shapes")

    @property
    def alg_dim(self) -> int:
        return self.first.alg_dim

    @property
    def v_dim(self) -> int:
        return self.first.v_dim


def _mm(x: str, y: str, out: str, p, q):
    return exact.contract(f"{x}om,{y}mi->{out}oi", p, q)


def _crep1(pi, rho, mu):
    return (exact.contract("xym,mzoi->xyzoi", pi, mu)
            - _mm("xz", "y", "xyz", mu, rho) + _mm("yz", "x", "xyz", mu, rho))


def _crep2(pi, rho, mu):
    return (exact.contract("yzm,xmoi->xyzoi", pi, mu)
            - _mm("y", "xz", "xyz", rho, mu) + _mm("z", "xy", "xyz", rho, mu))


def _crep3(om, rho_l, dd, rho_z):
    return (exact.contract("xyzm,moi->xyzoi", om, rho_l)
            - _mm("xy", "z", "xyz", dd, rho_z) + _mm("z", "xy", "xyz", rho_z, dd))


def _crep4(om, mu_o, mu_i, dd):
    return (_mm("zw", "xy", "xyzw", mu_o, mu_i) - _mm("yw", "xz", "xyzw", mu_o, mu_i)
            - exact.contract("yzwm,xmoi->xyzwoi", om, mu_o) + _mm("yz", "xw", "xyzw", dd, mu_i))


def _crep5(om, mu_l, dd, mu_r):
    return (exact.contract("xyzm,mwoi->xyzwoi", om, mu_l) + exact.contract("xywm,zmoi->xyzwoi", om, mu_l)
            - _mm("xy", "zw", "xyzw", dd, mu_r) + _mm("zw", "xy", "xyzw", mu_r, dd))


def _crep6(pi1, rho1, pi2, rho2):
    lhs = exact.contract("xym,moi->xyoi", pi2, rho1) + exact.contract("xym,moi->xyoi", pi1, rho2)
    a = _mm("x", "y", "xy", rho1, rho2)
    b = _mm("x", "y", "xy", rho2, rho1)
    return lhs - (a - b.transpose(1, 0, 2, 3)) - (b - a.transpose(1, 0, 2, 3))


def check_compat_representation(c: CompatibleLy, r: CompatRepresentation,
                                max_witnesses: int = DEFAULT_MAX_WITNESSES) -> list[CheckReport]:
    """Each component representation, the six mixed conditions, and ``D = D1 + D2``."""
    if r.alg_dim != c.dim:
        raise DimensionMismatch("representation does not match the algebra dimension")
    reports = (_tag(check_representation(c.first, r.first, max_witnesses), 1)
               + _tag(check_representation(c.second, r.second, max_witnesses), 2))
    p1, o1, p2, o2 = c.pi1.c, c.omega1.c, c.pi2.c, c.omega2.c
    r1, m1, r2, m2 = r.first.rho, r.first.mu, r.second.rho, r.second.mu
    d1, d2 = d_tensor(p1, r1, m1), d_tensor(p2, r2, m2)
    mixed = {
        "CREP1": (_crep1(p1, r1, m2) + _crep1(p2, r2, m1), 3),
        "CREP2": (_crep2(p1, r1, m2) + _crep2(p2, r2, m1), 3),
        "CREP3": (_crep3(o2, r1, d1, r2) + _crep3(o1, r2, d2, r1), 3),
        "CREP4": (_crep4(o1, m2, m1, d2) + _crep4(o2, m1, m2, d1), 4),
        "CREP5": (_crep5(o1, m2, d2, m1) + _crep5(o2, m1, d1, m2), 4),
        "CREP6": (_crep6(p1, r1, p2, r2), 2),
    }
    reports += [from_residual(k, res, ar, max_witnesses) for k, (res, ar) in mixed.items()]
    d_sum = d_tensor(p1 + p2, r1 + r2, m1 + m2) - d1 - d2
    reports.append(from_residual("D=D1+D2", d_sum, 2, max_witnesses))
    return reports


def compat_adjoint(c: CompatibleLy) -> CompatRepresentation:
    return CompatRepresentation(adjoint(c.first), adjoint(c.second))


def compat_semidirect(c: CompatibleLy, r: CompatRepresentation, validate: bool = True) -> CompatibleLy:
    if validate:
        require_compatible(c, "base algebra")
    c1, t1 = semidirect_tensors(c.pi1.c, c.omega1.c, r.first.rho, r.first.mu)
    c2, t2 = semidirect_tensors(c.pi2.c, c.omega2.c, r.second.rho, r.second.mu)
    basis = tuple(c.basis) + tuple(f"v{i + 1}" for i in range(r.v_dim))
    return CompatibleLy(c.dim + r.v_dim, BilinearMap(c1), TrilinearMap(t1), BilinearMap(c2), TrilinearMap(t2), basis)
