import io as _io
import json

import numpy as np
import pytest

from lieyamaguti import corpus, io
from lieyamaguti.cli import run

ENTRIES = corpus.index()


@pytest.mark.parametrize("entry", ENTRIES, ids=[e["file"] for e in ENTRIES])
def test_entry_passes_its_declared_check(entry):
    code = run(entry["check"], out=_io.StringIO(), err=_io.StringIO())
    assert code == {"pass": 0, "fail": 1}[entry["expect"]]


def test_index_lists_every_bundled_file():
    on_disk = {p.name for p in corpus.CORPUS_DIR.glob("*.json")} - {"index.json"}
    assert on_disk == set(corpus.names())


def test_required_instances_are_present():
    names = set(corpus.names())
    assert {"abelian-1.json", "abelian-2.json", "abelian-3.json", "paper-dim2.json", "lie-dim2.json",
            "cross-product-3.json", "lifted-compatible-lie.json"} <= names


def test_lifted_pair_is_rebuilt_from_its_documented_lie_pair():
    stored = json.loads(corpus.path("lifted-compatible-lie.json").read_text(encoding="utf-8"))
    d = stored["dim"]
    gen = io.read_compatible(json.dumps({"dim": d, **stored["lie_pair"]}))
    c = io.read_compatible(corpus.path("lifted-compatible-lie.json"))
    b = [gen.pi1.c, gen.pi2.c]
    for i, j in ((0, 1), (1, 0)):
        # [x,y,z]_i = [[x,y]_j, z]_i
        want = np.einsum("xyk,kzl->xyzl", b[j], b[i])
        assert np.all((c.omega1.c if i == 0 else c.omega2.c) == want)
        assert np.all((c.pi1.c if i == 0 else c.pi2.c) == b[i])


def test_resolve_prefers_local_files(tmp_path, monkeypatch):
    assert corpus.resolve("corpus/abelian-1.json") == str(corpus.path("abelian-1.json"))
    assert corpus.resolve("corpus/missing.json") == "corpus/missing.json"
    monkeypatch.chdir(tmp_path)
    (tmp_path / "corpus").mkdir()
    (tmp_path / "corpus" / "abelian-1.json").write_text("{}")
    assert corpus.resolve("corpus/abelian-1.json") == "corpus/abelian-1.json"
    with pytest.raises(FileNotFoundError):
        corpus.path("missing.json")
