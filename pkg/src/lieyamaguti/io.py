"""JSON file formats for algebras, pairs, representations, matrices and pre-LY structures.

Rationals are written as strings ``"p/q"`` (or ``"p"``); plain JSON integers
are accepted on input, floats are not. Every parse error is a
:class:`FormatError` carrying the line and column of the offending value.

Formats (indices are 0-based, ``i < j`` is required where the bracket is skew):

* algebra: ``{"dim", "basis", "bilinear": [{"i","j","k","v"}], "trilinear": [{"i","j","k","l","v"}]}``
* compatible pair / deformation generator: ``{"dim", "basis", "structure1": {...}, "structure2": {...}}``
* representation: algebra keys plus ``"v_dim"``, ``"rho": [{"i","matrix"}]``, ``"mu": [{"i","j","matrix"}]``
* compatible representation: pair keys plus ``"v_dim"``, ``"rep1": {"rho","mu"}``, ``"rep2": {...}``
* matrix: ``{"rows", "cols", "entries": [[...], ...]}``
* pre-LY structure: ``{"dim", "basis", "star": [{"i","j","k","v"}], "triple": [{"i","j","k","l","v"}]}``
  and a pair of them under ``"structure1"``/``"structure2"``
"""

from __future__ import annotations

import json
from json.decoder import JSONDecodeError, scanstring
from pathlib import Path

import numpy as np

from . import exact
from .compat import CompatibleLy, CompatRepresentation
from .errors import FormatError
from .exact import Matrix
from .lya import BilinearMap, LinearMap, LyAlgebra, TrilinearMap
from .rb import CompatPreLy, PreLy
from .rep import Representation

_IDX = "ijkl"


# --- locating values -----------------------------------------------------------

def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\r\n":
        pos += 1
    return pos


def _locate(text: str, path) -> int:
    """Character offset of the value at ``path`` (keys and list indices), best effort."""
    dec = json.JSONDecoder()
    pos = _skip_ws(text, 0)
    for step in path:
        if pos >= len(text):
            break
        if text[pos] == "{" and isinstance(step, str):
            pos = _skip_ws(text, pos + 1)
            while pos < len(text) and text[pos] == '"':
                key, pos = scanstring(text, pos + 1)
                pos = _skip_ws(text, pos)
                pos = _skip_ws(text, pos + 1)          # ':'
                if key == step:
                    break
                _, pos = dec.raw_decode(text, pos)
                pos = _skip_ws(text, pos)
                pos = _skip_ws(text, pos + 1)          # ','
            else:
                return pos
        elif text[pos] == "[" and isinstance(step, int):
            pos = _skip_ws(text, pos + 1)
            for _ in range(step):
                _, pos = dec.raw_decode(text, pos)
                pos = _skip_ws(text, pos)
                pos = _skip_ws(text, pos + 1)
        else:
            break
    return pos


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Doc:
    """Parsed JSON plus its source text, for positioned errors."""

    def __init__(self, text: str, source: str = "<input>"):
        self.text = text
        self.source = source
        try:
            self.data = json.loads(text)
        except JSONDecodeError as e:
            raise FormatError(f"{source}: invalid JSON: {e.msg}", e.lineno, e.colno) from None

    def fail(self, message: str, path=()):
        try:
            pos = _locate(self.text, path)
        except (JSONDecodeError, ValueError, IndexError):
            pos = 0
        line, col = _line_col(self.text, pos)
        where = "/".join(str(p) for p in path)
        raise FormatError(f"{self.source}: {message}" + (f" at {where}" if where else ""), line, col)

    def get(self, obj, key, path, kind=None, default=...):
        if not isinstance(obj, dict):
            self.fail("expected an object", path)
        if key not in obj:
            if default is not ...:
                return default
            self.fail(f"missing key {key!r}", path)
        val = obj[key]
        if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
            self.fail(f"{key!r} must be an integer", path + (key,))
        if kind is list and not isinstance(val, list):
            self.fail(f"{key!r} must be a list", path + (key,))
        if kind is dict and not isinstance(val, dict):
            self.fail(f"{key!r} must be an object", path + (key,))
        return val

    def rational(self, val, path):
        try:
            return exact.parse_rational(val)
        except (ValueError, TypeError, ZeroDivisionError) as e:
            self.fail(f"bad rational {val!r} ({e})", path)

    def index(self, obj, key, bound, path):
        v = self.get(obj, key, path, int)
        if not 0 <= v < bound:
            self.fail(f"index {key}={v} out of range 0..{bound - 1}", path + (key,))
        return v


def _read_text(source) -> tuple[str, str]:
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        p = Path(source)
        try:
            return p.read_text(encoding="utf-8"), str(p)
        except OSError as e:
            raise FormatError(f"cannot read {p}: {e.strerror}") from None
    return source, "<input>"


def load_document(source) -> _Doc:
    text, name = _read_text(source)
    return _Doc(text, name)


# --- parsing pieces ---------------------------------------------------------------

def _dim(doc: _Doc, obj, path=()) -> int:
    d = doc.get(obj, "dim", path, int)
    if d < 0:
        doc.fail("dim must be non-negative", path + ("dim",))
    return d


def _basis(doc: _Doc, obj, dim: int, path=()) -> tuple:
    basis = doc.get(obj, "basis", path, list, default=[])
    if basis and (len(basis) != dim or not all(isinstance(b, str) for b in basis)):
        doc.fail(f"basis must list {dim} names", path + ("basis",))
    return tuple(basis)


def _tensor(doc: _Doc, obj, key: str, dim: int, arity: int, path, skew: bool) -> np.ndarray:
    t = exact.zeros((dim,) * (arity + 1))
    items = doc.get(obj, key, path, list, default=[])
    for n, e in enumerate(items):
        here = path + (key, n)
        idx = tuple(doc.index(e, _IDX[p] if p < 4 else str(p), dim, here) for p in range(arity + 1))
        if skew and idx[0] >= idx[1]:
            doc.fail("entries must have i < j (the skew partner is implied)", here)
        v = doc.rational(doc.get(e, "v", here), here + ("v",))
        t[idx] += v
        if skew:
            t[(idx[1], idx[0]) + idx[2:]] -= v
    return t


def _structure(doc: _Doc, obj, dim: int, path=()) -> tuple[BilinearMap, TrilinearMap]:
    return (BilinearMap(_tensor(doc, obj, "bilinear", dim, 2, path, True)),
            TrilinearMap(_tensor(doc, obj, "trilinear", dim, 3, path, True)))


def _matrix(doc: _Doc, rows_val, path, rows: int, cols: int) -> Matrix:
    if not isinstance(rows_val, list) or len(rows_val) != rows:
        doc.fail(f"matrix must have {rows} rows", path)
    out = []
    for r, row in enumerate(rows_val):
        if not isinstance(row, list) or len(row) != cols:
            doc.fail(f"row must have {cols} entries", path + (r,))
        out.append([doc.rational(v, path + (r, c)) for c, v in enumerate(row)])
    return Matrix(np.array(out, dtype=object).reshape(rows, cols))


def _rep_tensors(doc: _Doc, obj, dim: int, v: int, path) -> tuple[np.ndarray, np.ndarray]:
    rho = exact.zeros((dim, v, v))
    mu = exact.zeros((dim, dim, v, v))
    for n, e in enumerate(doc.get(obj, "rho", path, list, default=[])):
        here = path + ("rho", n)
        i = doc.index(e, "i", dim, here)
        rho[i] = _matrix(doc, doc.get(e, "matrix", here), here + ("matrix",), v, v).a
    for n, e in enumerate(doc.get(obj, "mu", path, list, default=[])):
        here = path + ("mu", n)
        i, j = doc.index(e, "i", dim, here), doc.index(e, "j", dim, here)
        mu[i, j] = _matrix(doc, doc.get(e, "matrix", here), here + ("matrix",), v, v).a
    return rho, mu


# --- readers --------------------------------------------------------------------

def read_algebra(source) -> LyAlgebra:
    doc = load_document(source)
    return _algebra(doc)


def _algebra(doc: _Doc) -> LyAlgebra:
    d = _dim(doc, doc.data)
    pi, om = _structure(doc, doc.data, d)
    return LyAlgebra(d, pi, om, _basis(doc, doc.data, d))


def read_compatible(source) -> CompatibleLy:
    return _compatible(load_document(source))


def _compatible(doc: _Doc) -> CompatibleLy:
    d = _dim(doc, doc.data)
    s1 = doc.get(doc.data, "structure1", (), dict)
    s2 = doc.get(doc.data, "structure2", (), dict)
    p1, o1 = _structure(doc, s1, d, ("structure1",))
    p2, o2 = _structure(doc, s2, d, ("structure2",))
    return CompatibleLy(d, p1, o1, p2, o2, _basis(doc, doc.data, d))


def read_generator(source):
    """Deformation generator ``(mu_1, lambda_1, mu_2, lambda_2)`` in the compatible-pair format."""
    from .cohom import DeformationGenerator
    c = read_compatible(source)
    return DeformationGenerator(c.pi1, c.omega1, c.pi2, c.omega2)


def read_representation(source) -> tuple[LyAlgebra, Representation]:
    doc = load_document(source)
    a = _algebra(doc)
    v = doc.get(doc.data, "v_dim", (), int)
    rho, mu = _rep_tensors(doc, doc.data, a.dim, v, ())
    return a, Representation(a.dim, v, rho, mu)


def read_compat_representation(source) -> tuple[CompatibleLy, CompatRepresentation]:
    doc = load_document(source)
    c = _compatible(doc)
    v = doc.get(doc.data, "v_dim", (), int)
    reps = []
    for key in ("rep1", "rep2"):
        obj = doc.get(doc.data, key, (), dict)
        rho, mu = _rep_tensors(doc, obj, c.dim, v, (key,))
        reps.append(Representation(c.dim, v, rho, mu))
    return c, CompatRepresentation(*reps)


def read_matrix(source) -> LinearMap:
    doc = load_document(source)
    rows = doc.get(doc.data, "rows", (), int)
    cols = doc.get(doc.data, "cols", (), int)
    m = _matrix(doc, doc.get(doc.data, "entries", ()), ("entries",), rows, cols)
    return LinearMap(cols, rows, m)


def _pre(doc: _Doc, obj, dim: int, path=()) -> PreLy:
    return PreLy(_tensor(doc, obj, "star", dim, 2, path, False),
                 _tensor(doc, obj, "triple", dim, 3, path, False))


def read_pre_lya(source) -> PreLy | CompatPreLy:
    """A single pre-LY structure, or a pair when ``structure1``/``structure2`` are present."""
    doc = load_document(source)
    d = _dim(doc, doc.data)
    if "structure1" in doc.data:
        return CompatPreLy(_pre(doc, doc.get(doc.data, "structure1", (), dict), d, ("structure1",)),
                           _pre(doc, doc.get(doc.data, "structure2", (), dict), d, ("structure2",)))
    return _pre(doc, doc.data, d)


def detect_kind(source) -> str:
    """One of ``algebra``, ``compatible``, ``rep``, ``compat-rep``, ``matrix``, ``pre-lya``, ``compat-pre-lya``."""
    doc = load_document(source)
    data = doc.data
    if not isinstance(data, dict):
        doc.fail("expected a JSON object")
    if "rows" in data and "entries" in data:
        return "matrix"
    if "structure1" in data:
        s1 = data["structure1"]
        if isinstance(s1, dict) and ("star" in s1 or "triple" in s1):
            return "compat-pre-lya"
        return "compat-rep" if "rep1" in data else "compatible"
    if "star" in data or "triple" in data:
        return "pre-lya"
    if "v_dim" in data:
        return "rep"
    return "algebra"


def read_any(source):
    kind = detect_kind(source)
    reader = {
        "algebra": read_algebra, "compatible": read_compatible, "rep": read_representation,
        "compat-rep": read_compat_representation, "matrix": read_matrix,
        "pre-lya": read_pre_lya, "compat-pre-lya": read_pre_lya,
    }[kind]
    return kind, reader(source)


# --- rendering ------------------------------------------------------------------

def _r(q) -> str:
    return exact.render_rational(q)


def tensor_entries(t: np.ndarray, skew: bool) -> list[dict]:
    out = []
    for idx, v in np.ndenumerate(t):
        if v != 0 and (not skew or idx[0] < idx[1]):
            e = {_IDX[p]: int(i) for p, i in enumerate(idx)}
            e["v"] = _r(v)
            out.append(e)
    return out


def _matrix_rows(m: np.ndarray) -> list[list[str]]:
    return [[_r(v) for v in row] for row in m]


def _structure_obj(pi: BilinearMap, om: TrilinearMap) -> dict:
    return {"bilinear": tensor_entries(pi.c, True), "trilinear": tensor_entries(om.c, True)}


def algebra_obj(a: LyAlgebra) -> dict:
    return {"dim": a.dim, "basis": list(a.basis), **_structure_obj(a.pi, a.omega)}


def compatible_obj(c: CompatibleLy) -> dict:
    return {"dim": c.dim, "basis": list(c.basis),
            "structure1": _structure_obj(c.pi1, c.omega1),
            "structure2": _structure_obj(c.pi2, c.omega2)}


def generator_obj(g, dim: int) -> dict:
    return {"dim": dim, "structure1": _structure_obj(g.mu1, g.lambda1),
            "structure2": _structure_obj(g.mu2, g.lambda2)}


def _rep_obj(r: Representation) -> dict:
    rho = [{"i": i, "matrix": _matrix_rows(r.rho[i])} for i in range(r.alg_dim) if not exact.is_zero(r.rho[i])]
    mu = [{"i": i, "j": j, "matrix": _matrix_rows(r.mu[i, j])}
          for i in range(r.alg_dim) for j in range(r.alg_dim) if not exact.is_zero(r.mu[i, j])]
    return {"rho": rho, "mu": mu}


def representation_obj(a: LyAlgebra, r: Representation) -> dict:
    return {**algebra_obj(a), "v_dim": r.v_dim, **_rep_obj(r)}


def compat_representation_obj(c: CompatibleLy, r: CompatRepresentation) -> dict:
    return {**compatible_obj(c), "v_dim": r.v_dim, "rep1": _rep_obj(r.first), "rep2": _rep_obj(r.second)}


def matrix_obj(m: LinearMap) -> dict:
    return {"rows": m.dst_dim, "cols": m.src_dim, "entries": _matrix_rows(m.m)}


def _pre_obj(p: PreLy) -> dict:
    return {"star": tensor_entries(p.star, False), "triple": tensor_entries(p.triple, False)}


def pre_lya_obj(p: PreLy | CompatPreLy) -> dict:
    if isinstance(p, CompatPreLy):
        return {"dim": p.dim, "structure1": _pre_obj(p.first), "structure2": _pre_obj(p.second)}
    return {"dim": p.dim, **_pre_obj(p)}


def to_obj(x) -> dict:
    if isinstance(x, LyAlgebra):
        return algebra_obj(x)
    if isinstance(x, CompatibleLy):
        return compatible_obj(x)
    if isinstance(x, LinearMap):
        return matrix_obj(x)
    if isinstance(x, (PreLy, CompatPreLy)):
        return pre_lya_obj(x)
    raise TypeError(f"no file format for {type(x).__name__}")


def dumps(obj, width: int = 100) -> str:
    """Deterministic JSON; containers that fit on one line stay on one line."""
    return _dump(obj, 0, width) + "\n"


def _dump(obj, indent: int, width: int) -> str:
    flat = json.dumps(obj, ensure_ascii=False)
    if len(flat) + indent <= width or not isinstance(obj, (dict, list)) or not obj:
        return flat
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_dump(v, indent + 2, width)}" for k, v in obj.items())
        return "{\n" + body + "\n" + " " * indent + "}"
    body = ",\n".join(pad + _dump(v, indent + 2, width) for v in obj)
    return "[\n" + body + "\n" + " " * indent + "]"


def render(x) -> str:
    return dumps(to_obj(x))


def write(x, path) -> None:
    Path(path).write_text(render(x), encoding="utf-8")


__all__ = [
    "read_algebra", "read_compatible", "read_representation", "read_compat_representation",
    "read_matrix", "read_pre_lya", "read_generator", "read_any", "detect_kind",
    "render", "dumps", "write", "to_obj", "algebra_obj", "compatible_obj", "representation_obj",
    "compat_representation_obj", "matrix_obj", "pre_lya_obj", "generator_obj",
]
