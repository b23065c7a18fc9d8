from __future__ import annotations

import random
import sys
from fractions import Fraction

import numpy as np
import pytest

from lieyamaguti import Cochain, corpus, io
from lieyamaguti.cochain import cochain_shapes


def load(name: str):
    return io.read_any(corpus.path(name))[1]


def corpus_algebras(max_dim: int = 99) -> list[tuple[str, object]]:
    out = []
    for e in corpus.entries_of_kind("algebra"):
        a = load(e["file"])
        if a.dim <= max_dim:
            out.append((e["file"], a))
    return out


def corpus_pairs(valid_only: bool = True) -> list[tuple[str, object]]:
    return [(e["file"], load(e["file"])) for e in corpus.entries_of_kind("compatible")
            if e["check"][:2] == ["check", "compatible"] and (not valid_only or e["expect"] == "pass")]


def random_cochain(rng: random.Random, degree: int, dim: int, density: float = 0.15,
                   values=(-2, -1, 1, 2, Fraction(1, 2))) -> Cochain:
    """Sparse cochain with small rational entries; at least one entry is nonzero."""
    fs, gs = cochain_shapes(degree, dim, dim)
    parts = []
    for shape in (fs, gs):
        if shape is None:
            parts.append(None)
            continue
        arr = np.full(shape, Fraction(0), dtype=object)
        for idx in np.ndindex(*shape):
            if rng.random() < density:
                arr[idx] = Fraction(rng.choice(values))
        parts.append(arr)
    if all(p is None or not np.any(p != 0) for p in parts) and parts[0].size:
        idx = tuple(rng.randrange(s) for s in fs)
        parts[0][idx] = Fraction(1)
    return Cochain(degree, dim, dim, parts[0], parts[1])


def single_entry_cochains(degree: int, dim: int):
    """Every cochain with exactly one entry equal to 1."""
    fs, gs = cochain_shapes(degree, dim, dim)
    for which, shape in (("f", fs), ("g", gs)):
        if shape is None:
            continue
        for idx in np.ndindex(*shape):
            F = Cochain.zero(degree, dim)
            arr = (F.f if which == "f" else F.g).copy()
            arr[idx] = Fraction(1)
            yield (which, idx), Cochain(degree, dim, dim, arr if which == "f" else F.f,
                                        arr if which == "g" else F.g)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
