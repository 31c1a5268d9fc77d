"""JSON documents for compression results, quasi-isometry maps and pipeline output.

All ids in documents are 1-based to match the PACE files they accompany.
Keys are sorted so identical inputs give byte-identical output.
"""
from __future__ import annotations

import json

from .compress import CompressionResult
from .graph import Graph, as_scalar, format_scalar
from .qi import PipelineResult, QuasiIsometryMap


class DocumentError(ValueError):
    pass


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _ids(vs):
    return [v + 1 for v in sorted(vs)]


def compression_doc(res: CompressionResult) -> dict:
    c = res.centres
    return {
        "H": {
            "vertices": _ids(c),
            "edges": sorted([c[u] + 1, c[v] + 1] for u, v in res.H.edges),
        },
        "bags": {str(t + 1): _ids(b) for t, b in enumerate(res.bags)},
        "parts": {str(x + 1): _ids(p) for x, p in res.parts.items()},
        "centre_of": {str(v + 1): x + 1 for v, x in enumerate(res.centre_of)},
        "ell": format_scalar(res.ell),
        "k": res.k,
    }


def qi_doc(m: QuasiIsometryMap) -> dict:
    return {"c": format_scalar(m.c), "phi": {str(v + 1): h + 1 for v, h in enumerate(m.phi)}}


def load_qi(text: str, source: Graph, target: Graph) -> QuasiIsometryMap:
    try:
        doc = json.loads(text)
        c = as_scalar(str(doc["c"]))
        raw = doc["phi"]
        phi = [None] * source.n
        for key, h in raw.items():
            v = int(key) - 1
            if not 0 <= v < source.n:
                raise DocumentError(f"phi key {key} outside 1..{source.n}")
            phi[v] = int(h) - 1
    except (KeyError, TypeError, AttributeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"malformed quasi-isometry document: {exc}") from None
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    missing = [v + 1 for v, h in enumerate(phi) if h is None]
    if missing:
        raise DocumentError(f"phi undefined on vertices {missing[:5]}")
    return QuasiIsometryMap(source, target, tuple(phi), c)


def pipeline_doc(pr: PipelineResult) -> dict:
    labels = pr.kept  # A vertex i is H vertex labels[i]
    return {
        "mode": pr.mode,
        "c": format_scalar(pr.c),
        "k": pr.k,
        "bound": format_scalar(pr.bound),
        "A": {
            "vertices": [h + 1 for h in labels],
            "edges": sorted([labels[u] + 1, labels[v] + 1] for u, v in pr.index.edges),
        },
        "bags": {str(t + 1): sorted(labels[i] + 1 for i in b) for t, b in enumerate(pr.index_td.bags)},
        "tree_edges": sorted([s + 1, t + 1] for s, t in pr.index_td.tree.edges),
        "parts": {str(labels[i] + 1): _ids(p) for i, p in enumerate(pr.partition.parts)},
        "certificates": dict(pr.certificates),
        "verification": "ok" if pr.ok else "failed",
    }
