"""JSON documents for complexes, certificates, embeddings and paths (format ``sc-v1``).

Documents are written in one canonical layout (two-space indent, arrays of
scalars and short nested arrays on a single line) so that ``write(read(doc)) == doc`` byte for byte.
"""

from __future__ import annotations

import json
from typing import Any

from .complex import Complex, ComplexError, Subcomplex, build_complex
from .constructions import ApproxPolicy, build_tower
from .contiguity import ContiguityChain, SimplicialMap
from .cover import CertPiece, CoverCertificate
from .planner import Embedding, PLPath

FORMAT = "sc-v1"


class FormatError(ValueError):
    """Malformed, mismatched, or unsupported document."""


def dumps(doc: Any) -> str:
    return _render(doc, 0) + "\n"


def _render(obj: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        flat = json.dumps(obj, separators=(", ", ": "))
        if all(not isinstance(x, (dict, list, tuple)) for x in obj) or ("{" not in flat and len(flat) <= 100):
            return flat
        return "[\n" + ",\n".join(pad + _render(x, depth + 1) for x in obj) + "\n" + end + "]"
    return json.dumps(obj)


def loads(text: str, kind: str, require_format: bool = True) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    fmt = doc.get("format")
    if fmt is None and require_format:
        raise FormatError("missing format version")
    if fmt is not None and fmt != FORMAT:
        raise FormatError(f"unsupported format {fmt!r} (expected {FORMAT!r})")
    if doc.get("kind") != kind:
        raise FormatError(f"expected a {kind} document, got kind={doc.get('kind')!r}")
    return doc


# --- complexes ----------------------------------------------------------------


def complex_doc(K: Complex) -> dict:
    return {
        "format": FORMAT,
        "kind": "complex",
        "vertices": list(K.labels),
        "maximal_simplices": [list(s) for s in K.maximal],
    }


def complex_from_doc(doc: dict) -> Complex:
    labels = doc.get("vertices")
    simplices = doc.get("maximal_simplices")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError("'vertices' must be an array of strings")
    if not isinstance(simplices, list):
        raise FormatError("'maximal_simplices' must be an array")
    for s in simplices:
        if not isinstance(s, list) or not s or not all(isinstance(v, int) and not isinstance(v, bool) for v in s):
            raise FormatError(f"bad simplex {s!r}")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise FormatError(f"simplex {s} is not strictly increasing")
    try:
        return build_complex(labels, simplices)
    except ComplexError as exc:
        raise FormatError(str(exc)) from None


def write_complex(K: Complex) -> str:
    return dumps(complex_doc(K))


def read_complex(text: str) -> Complex:
    return complex_from_doc(loads(text, "complex"))


# --- certificates -------------------------------------------------------------


def write_certificate(cert: CoverCertificate) -> str:
    top = cert.pieces[0].piece.ambient
    base_labels = cert.base.labels
    pieces = []
    for item in cert.pieces:
        pieces.append(
            {
                "simplices": [[top.labels[v] for v in s] for s in item.piece.maximal],
                "chain": [[base_labels[u] for u in h.images] for h in item.chain.maps],
            }
        )
    doc = {
        "format": FORMAT,
        "kind": "certificate",
        "base": complex_doc(cert.base),
        "b": cert.b,
        "c": cert.c,
        "policy": ApproxPolicy(cert.policy).value,
        "pieces": pieces,
    }
    return dumps(doc)


def read_certificate(text: str) -> CoverCertificate:
    """Parse a certificate and bind it to a freshly rebuilt tower.

    Raises :class:`FormatError` on schema problems and on labels that do not
    belong to the rebuilt tower.  Mathematical validity is left to
    ``verify_certificate``.
    """
    doc = loads(text, "certificate")
    base_doc = doc.get("base")
    if not isinstance(base_doc, dict):
        raise FormatError("'base' must be a complex document")
    if base_doc.get("kind") != "complex" or base_doc.get("format", FORMAT) != FORMAT:
        raise FormatError("'base' must be an sc-v1 complex document")
    base = complex_from_doc(base_doc)
    b, c = doc.get("b"), doc.get("c")
    if not (isinstance(b, int) and isinstance(c, int)) or b < 0 or c < 0:
        raise FormatError("'b' and 'c' must be non-negative integers")
    try:
        policy = ApproxPolicy(doc.get("policy"))
    except ValueError:
        raise FormatError("'policy' must be 'min' or 'max'") from None
    raw_pieces = doc.get("pieces")
    if not isinstance(raw_pieces, list) or not raw_pieces:
        raise FormatError("'pieces' must be a non-empty array")

    top = build_tower(base, b).top
    top_index = top.label_index
    base_index = base.label_index
    pieces = []
    for k, raw in enumerate(raw_pieces):
        if not isinstance(raw, dict) or not isinstance(raw.get("simplices"), list) or not isinstance(raw.get("chain"), list):
            raise FormatError(f"piece {k} needs 'simplices' and 'chain' arrays")
        simplices = []
        for s in raw["simplices"]:
            try:
                simplices.append(tuple(sorted(top_index[label] for label in s)))
            except (KeyError, TypeError):
                raise FormatError(f"piece {k}: label not in the rebuilt tower: {s!r}") from None
        try:
            piece = Subcomplex.from_simplices(top, simplices)
        except ComplexError as exc:
            raise FormatError(f"piece {k}: {exc}") from None
        if not piece.maximal:
            raise FormatError(f"piece {k} is empty")
        dom = piece.as_complex()
        maps = []
        for table in raw["chain"]:
            if not isinstance(table, list) or len(table) != dom.n_vertices:
                raise FormatError(f"piece {k}: image table has wrong length")
            try:
                images = tuple(base_index[label] for label in table)
            except (KeyError, TypeError):
                raise FormatError(f"piece {k}: image label not a vertex of the base complex") from None
            maps.append(SimplicialMap(dom, base, images))
        if not maps:
            raise FormatError(f"piece {k}: empty chain")
        pieces.append(CertPiece(piece, ContiguityChain(tuple(maps))))
    return CoverCertificate(base, b, c, policy, tuple(pieces))


# --- embeddings and paths -----------------------------------------------------


def write_embedding(K: Complex, emb: Embedding) -> str:
    doc = {
        "format": FORMAT,
        "kind": "embedding",
        "dim": emb.dim,
        "coords": {K.labels[v]: list(p) for v, p in enumerate(emb.coords)},
    }
    return dumps(doc)


def read_embedding(text: str, K: Complex) -> Embedding:
    doc = loads(text, "embedding", require_format=False)
    dim, coords = doc.get("dim"), doc.get("coords")
    if not isinstance(dim, int) or dim < 1 or not isinstance(coords, dict):
        raise FormatError("embedding needs a positive 'dim' and a 'coords' object")
    try:
        pts = tuple(tuple(float(x) for x in coords[label]) for label in K.labels)
    except KeyError as exc:
        raise FormatError(f"no coordinates for vertex {exc.args[0]!r}") from None
    if any(len(p) != dim for p in pts):
        raise FormatError("coordinate arrays must have length 'dim'")
    return Embedding(dim, pts)


def write_path(samples: list[tuple[float, tuple[float, ...]]]) -> str:
    return dumps({"format": FORMAT, "kind": "path", "samples": [[t, list(p)] for t, p in samples]})


def read_path(text: str) -> list[tuple[float, tuple[float, ...]]]:
    doc = loads(text, "path", require_format=False)
    return [(float(t), tuple(float(x) for x in p)) for t, p in doc["samples"]]


def path_samples(path: PLPath) -> list[tuple[float, tuple[float, ...]]]:
    return list(zip(path.times, path.breakpoints))
