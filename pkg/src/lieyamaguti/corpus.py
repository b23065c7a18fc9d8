"""Bundled example files.

``index.json`` lists each file with its kind, the command that validates it
and the expected outcome. Paths of the form ``corpus/<name>`` resolve to the
bundled copy unless a file with that relative path exists.
"""

from __future__ import annotations

import json
from pathlib import Path

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"
PREFIX = "corpus/"


def index() -> list[dict]:
    return json.loads((CORPUS_DIR / "index.json").read_text(encoding="utf-8"))["entries"]


def names() -> list[str]:
    return [e["file"] for e in index()]


def path(name: str) -> Path:
    p = CORPUS_DIR / name
    if not p.is_file():
        raise FileNotFoundError(f"no bundled file {name!r}")
    return p


def resolve(arg: str) -> str:
    """Map ``corpus/<name>`` to the bundled file when no local file shadows it."""
    if arg.startswith(PREFIX) and not Path(arg).exists() and (CORPUS_DIR / arg[len(PREFIX):]).is_file():
        return str(CORPUS_DIR / arg[len(PREFIX):])
    return arg


def entries_of_kind(*kinds: str) -> list[dict]:
    return [e for e in index() if e["kind"] in kinds]
