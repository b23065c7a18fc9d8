"""Regenerate the bundled example files and their index.

Run from the repository root:  python3 tools/build_corpus.py
Every file is validated with the declared command before it is written.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from lieyamaguti import io
from lieyamaguti.cli import run
from lieyamaguti.cohom import DeformationGenerator, delta_c
from lieyamaguti.cochain import Cochain
from lieyamaguti.compat import CompatibleLy, compat_adjoint
from lieyamaguti.exact import Fraction
from lieyamaguti.lya import BilinearMap, LinearMap, LyAlgebra, TrilinearMap, direct_sum, from_lie
from lieyamaguti.rb import induce_pre_lya, inverse, search_rb, subadjacent
from lieyamaguti.rep import adjoint

OUT = Path(__file__).resolve().parents[1] / "src" / "lieyamaguti" / "corpus"


def lie(dim, entries, basis=()):
    return from_lie(BilinearMap.from_entries(dim, entries), basis)


def lifted(b1: BilinearMap, b2: BilinearMap) -> CompatibleLy:
    """``[x,y,z]_1 = [[x,y]_2, z]_1`` and ``[x,y,z]_2 = [[x,y]_1, z]_2``."""
    t1 = np.einsum("xym,mzo->xyzo", b2.c, b1.c)
    t2 = np.einsum("xym,mzo->xyzo", b1.c, b2.c)
    return CompatibleLy(b1.dim, b1, TrilinearMap(t1), b2, TrilinearMap(t2))


def main() -> int:
    entries = []

    def add(name, obj, check, expect="pass", description=""):
        path = OUT / name
        path.write_text(io.dumps(obj), encoding="utf-8")
        entries.append({"file": name, "kind": io.detect_kind(path), "check": check + ["corpus/" + name],
                        "expect": expect, "description": description})

    for d in (1, 2, 3):
        add(f"abelian-{d}.json", io.algebra_obj(LyAlgebra.abelian(d)), ["check", "lya"],
            description=f"abelian, dimension {d}")

    lie2 = lie(2, [(0, 1, 1, "1")])
    so3 = lie(3, [(0, 1, 2, "1"), (1, 2, 0, "1"), (0, 2, 1, "-1")])
    heis = lie(3, [(0, 1, 2, "1")])
    add("lie-dim2.json", io.algebra_obj(lie2), ["check", "lya"],
        description="Lie algebra [e1,e2]=e2 with [x,y,z]=[[x,y],z]")
    add("cross-product-3.json", io.algebra_obj(so3), ["check", "lya"],
        description="cross product on Q^3 with [x,y,z]=[[x,y],z]")
    add("heisenberg-3.json", io.algebra_obj(heis), ["check", "lya"],
        description="Heisenberg algebra [e1,e2]=e3 with [x,y,z]=[[x,y],z]")
    add("lie-dim2-sum-4.json", io.algebra_obj(direct_sum(lie2, lie2)), ["check", "lya"],
        description="direct sum of two copies of lie-dim2")

    pd2 = CompatibleLy.from_components(
        LyAlgebra.from_entries(2, [(0, 1, 0, "1")], [(0, 1, 1, 0, "1")]),
        LyAlgebra.from_entries(2, [(0, 1, 1, "1")], [(0, 1, 1, 1, "1")]))
    add("paper-dim2.json", io.compatible_obj(pd2), ["check", "compatible"], "fail",
        "[e1,e2]_1=e1, [e1,e2,e2]_1=e1, [e1,e2]_2=e2, [e1,e2,e2]_2=e2; "
        "the second structure violates the fundamental identity, so the check fails")

    c2 = CompatibleLy.from_components(
        LyAlgebra.from_entries(2, [(0, 1, 0, "1")], [(0, 1, 1, 0, "1")]),
        LyAlgebra.from_entries(2, [(0, 1, 0, "-1")], [(0, 1, 1, 0, "1")]))
    add("dim2-compatible.json", io.compatible_obj(c2), ["check", "compatible"],
        description="[e1,e2]_1=e1, [e1,e2,e2]_1=e1, [e1,e2]_2=-e1, [e1,e2,e2]_2=e1")
    add("abelian-pair-2.json", io.compatible_obj(CompatibleLy.from_components(LyAlgebra.abelian(2),
                                                                             LyAlgebra.abelian(2))),
        ["check", "compatible"], description="pair of zero structures on Q^2")

    b1 = BilinearMap.from_entries(3, [(0, 1, 0, "1"), (0, 1, 2, "1"), (1, 2, 0, "1")])
    b2 = BilinearMap.from_entries(3, [(0, 1, 0, "1"), (0, 1, 2, "1")])
    lift = lifted(b1, b2)
    obj = io.compatible_obj(lift)
    obj["lie_pair"] = {"structure1": {"bilinear": io.tensor_entries(b1.c, True)},
                       "structure2": {"bilinear": io.tensor_entries(b2.c, True)}}
    obj["construction"] = "[x,y]_i from lie_pair; [x,y,z]_1=[[x,y]_2,z]_1, [x,y,z]_2=[[x,y]_1,z]_2"
    add("lifted-compatible-lie.json", obj, ["check", "compatible"],
        description="compatible Lie pair on Q^3 lifted to a compatible LY pair")

    for name, a in (("lie-dim2", lie2), ("cross-product-3", so3), ("heisenberg-3", heis)):
        add(f"rep-adjoint-{name}.json", io.representation_obj(a, adjoint(a)), ["check", "rep"],
            description=f"adjoint representation of {name}")
    for name, c in (("dim2-compatible", c2), ("lifted-compatible-lie", lift)):
        add(f"compat-rep-adjoint-{name}.json", io.compat_representation_obj(c, compat_adjoint(c)),
            ["check", "rep"], description=f"adjoint representation of {name}")

    # Rota-Baxter operators
    der = LinearMap.of([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    rinv = inverse(der)
    add("rb-heisenberg-3.json", io.matrix_obj(rinv), ["check", "rb", "corpus/heisenberg-3.json"],
        description="inverse of the invertible derivation diag(1,1,2) of heisenberg-3")
    add("pre-heisenberg-3.json", io.pre_lya_obj(induce_pre_lya(heis, rinv)), ["check", "pre-lya"],
        description="pre-LY structure induced by rb-heisenberg-3")
    sols = [r for r in search_rb(c2) if any(v != 0 for v in r.m.flat)]
    for n, r in enumerate(sols, start=1):
        add(f"rb-dim2-compatible-{n:02d}.json", io.matrix_obj(r), ["check", "rb", "corpus/dim2-compatible.json"],
            description="nonzero Rota-Baxter operator of dim2-compatible found by search-rb "
                        "(entries -1,0,1, both conventions)")
    # the first operator whose induced pair has a nonzero sub-adjacent structure
    pick = next(n for n, r in enumerate(sols)
                if any(v != 0 for v in subadjacent(induce_pre_lya(c2, r)).pi1.c.flat))
    add("compat-pre-dim2-compatible.json", io.pre_lya_obj(induce_pre_lya(c2, sols[pick])),
        ["check", "compat-pre-lya"],
        description=f"pair induced on dim2-compatible by rb-dim2-compatible-{pick + 1:02d}")

    # deformation generators
    add("gen-dim2-compatible-self.json",
        io.generator_obj(DeformationGenerator(c2.pi1, c2.omega1, c2.pi2, c2.omega2), 2),
        ["deform-verify", "corpus/dim2-compatible.json"],
        description="the structure itself as a generator")
    def coboundary(rows):
        f0 = Cochain(0, 2, 2, np.array([[Fraction(v) for v in r] for r in rows], dtype=object), None)
        return DeformationGenerator.from_level1(delta_c(c2, [f0]))

    add("gen-dim2-compatible-coboundary.json", io.generator_obj(coboundary([[0, 0], [0, 1]]), 2),
        ["deform-verify", "corpus/dim2-compatible.json"],
        description="image of the linear map diag(0,1) under the compatible differential; "
                    "the deformed pair is compatible for every t")
    add("gen-dim2-compatible-obstructed.json", io.generator_obj(coboundary([[1, 2], [0, -1]]), 2),
        ["deform-verify", "corpus/dim2-compatible.json"], "fail",
        "image of [[1,2],[0,-1]] under the compatible differential; the order-t equations hold "
        "but the order-t^2 equations do not, so the cocycle theorem is vacuous for it")

    (OUT / "index.json").write_text(io.dumps({"entries": entries}), encoding="utf-8")

    failures = 0
    for e in entries:
        code = run(e["check"], out=_Null(), err=_Null())
        want = 0 if e["expect"] == "pass" else 1
        if code != want:
            failures += 1
            print(f"{e['file']}: exit {code}, expected {want}", file=sys.stderr)
    print(f"wrote {len(entries)} files to {OUT}; {failures} mismatches")
    return 1 if failures else 0


class _Null:
    def write(self, s):
        return len(s)

    def flush(self):
        pass


if __name__ == "__main__":
    sys.exit(main())
