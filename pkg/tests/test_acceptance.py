"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict in ``RESULTS``; the lines are printed
as the test runs and again in the pytest terminal summary. Run this file
directly (``python3 tests/test_acceptance.py``) for the ten lines alone.
"""

import random
import time
from fractions import Fraction

import numpy as np

from lieyamaguti import (BilinearMap, Cochain, CompatibleLy, CompatRepresentation, Representation,
                         ResourceCapExceeded, TrilinearMap, check_compat_derivation, check_compat_pre_lya,
                         check_compat_representation,
                         check_compatible, check_deformation_generator, check_lya, check_pre_lya,
                         check_representation, cohomology_dim, compat_semidirect, corpus, delta,
                         delta_c, induce_pre_lya, inner_derivation, io, mc_pair_residual, mc_residual,
                         search_rb, semidirect, subadjacent, verify_cocycle_theorem)
from lieyamaguti.cohom import DeformationGenerator, delta_vs_bracket
from lieyamaguti.rb import CONVENTIONS
from lieyamaguti.report import all_ok
from conftest import corpus_algebras, corpus_pairs, load, random_cochain, single_entry_cochains

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)


def failing(reports):
    return {r.axiom_id: r.total for r in reports if not r.ok and not r.informational}


def all_pairs():
    return corpus_pairs(valid_only=False)


# 1 ------------------------------------------------------------------------------

def dim2_example() -> CompatibleLy:
    """[e1,e2]_1 = e1, [e1,e2,e2]_1 = e1, [e1,e2]_2 = e2, [e1,e2,e2]_2 = e2."""
    pi1, pi2 = np.zeros((2, 2, 2), dtype=object), np.zeros((2, 2, 2), dtype=object)
    om1, om2 = np.zeros((2, 2, 2, 2), dtype=object), np.zeros((2, 2, 2, 2), dtype=object)
    pi1[0, 1, 0], pi2[0, 1, 1] = 1, 1
    om1[0, 1, 1, 0], om2[0, 1, 1, 1] = 1, 1
    for t in (pi1, pi2, om1, om2):
        t[1, 0] = -t[0, 1]
    return CompatibleLy(2, BilinearMap(pi1), TrilinearMap(om1), BilinearMap(pi2), TrilinearMap(om2))


def test_criterion_1_dim2_example():
    c = dim2_example()
    stored = load("paper-dim2.json")
    assert all(np.all(x.c == y.c) for x, y in zip((c.pi1, c.omega1, c.pi2, c.omega2),
                                                   (stored.pi1, stored.omega1, stored.pi2, stored.omega2)))
    t0 = time.perf_counter()
    reports = check_compatible(c)
    elapsed = time.perf_counter() - t0
    bad = failing(reports)
    ok = not bad and elapsed < 1
    record(1, ok, f"dim-2 example: nonzero witnesses in {bad or 'none'} ({elapsed:.2f}s)")
    assert ok, f"the dim-2 example violates {bad}"


# 2 ------------------------------------------------------------------------------

def test_criterion_2_lifted_pair():
    c = load("lifted-compatible-lie.json")
    t0 = time.perf_counter()
    reports = check_compatible(c)
    elapsed = time.perf_counter() - t0
    ok = all_ok(reports) and all(r.total == 0 for r in reports if not r.informational) and elapsed < 1
    record(2, ok, f"lifted compatible Lie pair on Q^3 passes ({elapsed:.2f}s)")
    assert ok


# 3 ------------------------------------------------------------------------------

def test_criterion_3_maurer_cartan():
    t0 = time.perf_counter()
    algebras = corpus_algebras(4)
    alg_ok = {name: mc_residual(a).is_zero() for name, a in algebras}
    pair_mc, pair_valid = {}, {}
    for name, c in all_pairs():
        pair_mc[name] = tuple(x.is_zero() for x in mc_pair_residual(c))
        pair_valid[name] = all_ok(check_compatible(c))
    elapsed = time.perf_counter() - t0
    # on every compatible pair all three brackets vanish; the pair files that
    # are not compatible must show a nonzero bracket (the statement is an iff)
    pairs_ok = all(all(pair_mc[n]) == pair_valid[n] for n in pair_mc)
    compatible = [n for n in pair_mc if pair_valid[n]]
    not_compatible = {n: pair_mc[n] for n in pair_mc if not pair_valid[n]}
    ok = all(alg_ok.values()) and pairs_ok and elapsed < 5 and max(a.dim for _, a in algebras) == 4
    record(3, ok, f"[Pi,Pi]=0 on {len(alg_ok)} algebras (dim<=4); all three brackets vanish on "
                  f"{len(compatible)} compatible pairs; non-compatible {not_compatible} ({elapsed:.2f}s)")
    assert ok


# 4 ------------------------------------------------------------------------------

def test_criterion_4_delta_is_the_signed_bracket():
    checked, bad = 0, []
    for name, a in corpus_algebras(3):
        for degree in (1, 2):
            for key, F in single_entry_cochains(degree, a.dim):
                checked += 1
                if not delta_vs_bracket(F, a).is_zero():
                    bad.append((name, degree, key))
    ok = checked > 0 and not bad
    record(4, ok, f"delta F = (-1)^n [Pi,F] on {checked} single-entry cochains, {len(bad)} mismatches")
    assert ok, bad[:5]


# 5 ------------------------------------------------------------------------------

def test_criterion_5_complexes():
    rng = random.Random(5)
    t0 = time.perf_counter()
    bad, count = [], 0
    for name, a in corpus_algebras():
        for degree in (0, 1, 2):
            for _ in range(50):
                F = random_cochain(rng, degree, a.dim)
                count += 1
                if not delta(delta(F, a), a).is_zero():
                    bad.append((name, degree))
    pairs = corpus_pairs()
    for name, c in pairs:
        for n in (0, 1, 2):
            for _ in range(50):
                F = [random_cochain(rng, n, c.dim) for _ in range(n + 1)]
                count += 1
                if not all(x.is_zero() for x in delta_c(c, delta_c(c, F))):
                    bad.append((name, n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    record(5, ok, f"delta^2 = 0 and delta_c^2 = 0 on {count} random cochains, {len(bad)} failures ({elapsed:.1f}s)")
    assert ok, bad[:5]


# 6 ------------------------------------------------------------------------------

def perturb(arr: np.ndarray, rng: random.Random) -> np.ndarray:
    out = np.array(arr, dtype=object)
    idx = tuple(rng.randrange(s) for s in out.shape)
    out[idx] += rng.choice([1, -1, 2])
    return out


def perturbed_rep(r: Representation, rng: random.Random) -> Representation:
    if rng.random() < 0.5:
        return Representation(r.alg_dim, r.v_dim, perturb(r.rho, rng), r.mu)
    return Representation(r.alg_dim, r.v_dim, r.rho, perturb(r.mu, rng))


def test_criterion_6_semidirect_iff():
    rng = random.Random(6)
    lines, ok, agree = [], True, 0
    for e in corpus.entries_of_kind("rep"):
        a, r = io.read_representation(corpus.path(e["file"]))
        base = all_ok(check_lya(semidirect(a, r)))
        broken = 0
        for _ in range(10):
            p = perturbed_rep(r, rng)
            sd_ok = all_ok(check_lya(semidirect(a, p, validate=False)))
            rep_ok = all_ok(check_representation(a, p))
            agree += sd_ok == rep_ok
            broken += not sd_ok
        ok &= base and broken == 10
        lines.append(f"{e['file']} {broken}/10")
    for e in corpus.entries_of_kind("compat-rep"):
        c, r = io.read_compat_representation(corpus.path(e["file"]))
        base = all_ok(check_compatible(compat_semidirect(c, r), informational=False))
        broken = 0
        for _ in range(10):
            first, second = r.first, r.second
            if rng.random() < 0.5:
                first = perturbed_rep(first, rng)
            else:
                second = perturbed_rep(second, rng)
            p = CompatRepresentation(first, second)
            sd_ok = all_ok(check_compatible(compat_semidirect(c, p, validate=False), informational=False))
            agree += sd_ok == all_ok(check_compat_representation(c, p))
            broken += not sd_ok
        ok &= base and broken == 10
        lines.append(f"{e['file']} {broken}/10")
    n = 10 * len(lines)
    # a perturbation that is still a representation leaves the semidirect product valid
    ok &= agree == n
    record(6, ok, f"semidirect valid iff representation valid in {agree}/{n} perturbations; "
                  "perturbed semidirects failing: " + ", ".join(lines))
    assert ok


# 7 ------------------------------------------------------------------------------

def test_criterion_7_inner_derivations():
    weights = ((1, 0), (0, 1), (1, 1))
    summary, ok = [], True
    for name, c in all_pairs():
        valid = all_ok(check_compatible(c))
        passed = total = 0
        for x in range(c.dim):
            for y in range(c.dim):
                for w in weights:
                    T = inner_derivation(c, x, y, *w)
                    total += 1
                    passed += all_ok(check_compat_derivation(c, T)) and all_ok(check_compat_derivation(c, T, w))
        if valid:
            ok &= passed == total
            summary.append(f"{name} {passed}/{total}")
        else:
            summary.append(f"{name} {passed}/{total} (not compatible, outside the statement)")
    record(7, ok, "inner derivations: " + ", ".join(summary))
    assert ok


# 8 ------------------------------------------------------------------------------

def test_criterion_8_rota_baxter_pipeline():
    found, skipped, bad = {}, [], []
    for conv in CONVENTIONS:
        for name, a in corpus_algebras():
            try:
                sols = search_rb(a, (-1, 0, 1), conv)
            except ResourceCapExceeded:
                skipped.append(f"{name}({conv})")
                continue
            found[name, conv] = {tuple(R.m.flat) for R in sols}
            for R in sols:
                if not all_ok(check_pre_lya(induce_pre_lya(a, R, conv))):
                    bad.append((name, conv, tuple(R.m.flat)))
        for name, c in corpus_pairs():
            sols = search_rb(c, (-1, 0, 1), conv)
            found[name, conv] = {tuple(R.m.flat) for R in sols}
            for R in sols:
                p = induce_pre_lya(c, R, conv)
                if not (all_ok(check_compat_pre_lya(p)) and all_ok(check_compatible(subadjacent(p)))):
                    bad.append((name, conv, tuple(R.m.flat)))
    names = sorted({n for n, _ in found})
    counts = ", ".join(f"{n} {len(found[n, 'sec6'])}/{len(found[n, 'sec2'])}" for n in names)
    same = all(found[n, "sec6"] == found[n, "sec2"] for n in names)
    ok = not bad and bool(found)
    record(8, ok, f"solutions sec6/sec2: {counts}; sets identical: {same}; "
                  f"over the search cap: {', '.join(skipped) or 'none'}; {len(bad)} pipeline failures")
    assert ok, bad[:5]


# 9 ------------------------------------------------------------------------------

def coboundary_generator(c, rng):
    rows = [[Fraction(rng.randint(-2, 2)) for _ in range(c.dim)] for _ in range(c.dim)]
    f0 = Cochain(0, c.dim, c.dim, np.array(rows, dtype=object), None)
    return DeformationGenerator.from_level1(delta_c(c, [f0]))


def random_generator(c, rng):
    F = [random_cochain(rng, 1, c.dim, density=0.3) for _ in range(2)]
    return DeformationGenerator.from_level1(F)


def pencil_generator(c, rng):
    """Generator inside the span of the two structures."""
    a, b, x, y = (Fraction(rng.randint(-2, 2)) for _ in range(4))
    return DeformationGenerator(BilinearMap(a * c.pi1.c + b * c.pi2.c),
                                TrilinearMap(a * c.omega1.c + b * c.omega2.c),
                                BilinearMap(x * c.pi1.c + y * c.pi2.c), TrilinearMap(x * c.omega1.c + y * c.omega2.c))


def test_criterion_9_deformations():
    rng = random.Random(9)
    c = load("lifted-compatible-lie.json")
    first_order = 0
    gens = []
    for _ in range(20):
        g = coboundary_generator(c, rng)
        gens.append((c, g))
        reports = check_deformation_generator(c, g)
        first_order += all(r.ok for r in reports if r.axiom_id.startswith("t^1"))
    base = load("dim2-compatible.json")
    for name in ("gen-dim2-compatible-self.json", "gen-dim2-compatible-coboundary.json",
                 "gen-dim2-compatible-obstructed.json"):
        gens.append((base, io.read_generator(corpus.path(name))))
    for pair in (base, c):
        for _ in range(10):
            gens.append((pair, random_generator(pair, rng)))
            gens.append((pair, pencil_generator(pair, rng)))
    statuses = [verify_cocycle_theorem(p, g).status for p, g in gens]
    counts = {s: statuses.count(s) for s in ("pass", "fail", "vacuous")}
    ok = first_order == 20 and counts["fail"] == 0
    record(9, ok, f"{first_order}/20 coboundaries cocycles at order t; converse over {len(gens)} generators: {counts}")
    assert ok


# 10 -----------------------------------------------------------------------------

def test_criterion_10_linear_algebra():
    results, ok = [], True
    for name, c in corpus_pairs():
        for n in (0, 1, 2):
            r = cohomology_dim(c, n)
            ok &= r.kernel + r.rank == r.level_dim and r.image_in_kernel
            results.append(f"{name.removesuffix('.json')}[{n}] h={r.h}")
    ab = cohomology_dim(load("abelian-pair-2.json"), 1)
    ok &= ab.h == ab.level_dim == 12 and ab.rank == 0
    record(10, ok, f"rank-nullity and im <= ker everywhere; abelian pair n=1 h={ab.h} of {ab.level_dim}; "
                   + ", ".join(results))
    assert ok


if __name__ == "__main__":
    tests = {int(k.split("_")[2]): v for k, v in globals().items() if k.startswith("test_criterion_")}
    for _, fn in sorted(tests.items()):
        try:
            fn()
        except AssertionError:
            pass
