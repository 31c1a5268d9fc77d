"""Quasi-isometries, indexed partitions, and the bounded-width partition pipeline.

A ``c``-quasi-isometry ``phi: V(G) -> V(H)`` satisfies, for distinct
``u, v``::

    dist_G(u, v) <= c * dist_H(phi u, phi v) + c
    dist_H(phi u, phi v) <= c * dist_G(u, v) + c

and every vertex of ``H`` is within ``c`` of the image. The pipeline
turns such a map into a proper partition of ``G`` whose quotient has a
decomposition over the same tree as ``H``'s, with parts of weak diameter
at most ``4(k+1)c^2 + c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .compress import CompressionResult, build_compressing
from .graph import INF, Graph, as_scalar, floor_radius, graph_power, multi_source_distances, weak_diameter
from .treedecomp import TreeDecomposition, is_path_decomposition, root_at, validate
from .verify import VerificationReport, verify_result


class QIError(ValueError):
    """A map or partition fails the property it was asserted to have."""


@dataclass(frozen=True)
class QuasiIsometryMap:
    source: Graph
    target: Graph
    phi: tuple
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(h) for h in self.phi))
        object.__setattr__(self, "c", as_scalar(self.c))
        if len(self.phi) != self.source.n:
            raise QIError(f"phi has {len(self.phi)} entries for {self.source.n} source vertices")
        for h in self.phi:
            if not 0 <= h < self.target.n:
                raise QIError(f"phi maps to {h}, outside the target")
        if self.c < 1:
            raise QIError("c must be at least 1")

    def fibre(self, h: int) -> frozenset:
        return frozenset(v for v, x in enumerate(self.phi) if x == h)

    def preimage(self, hs) -> frozenset:
        hs = set(hs)
        return frozenset(v for v, x in enumerate(self.phi) if x in hs)


@dataclass(frozen=True)
class IndexedPartition:
    """Partition of ``host`` with part ``parts[i]`` labelled by vertex ``i`` of ``index``."""

    host: Graph
    index: Graph
    parts: tuple

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.index.n:
            raise QIError(f"{len(parts)} parts for an index graph on {self.index.n} vertices")
        seen = set()
        for p in parts:
            if seen & p:
                raise QIError(f"parts overlap on {sorted(seen & p)}")
            seen |= p
        if seen != set(range(self.host.n)):
            raise QIError("parts do not cover the host graph")

    @property
    def proper(self) -> bool:
        return all(self.parts)

    def part_of(self) -> list:
        owner = [None] * self.host.n
        for i, p in enumerate(self.parts):
            for v in p:
                owner[v] = i
        return owner


@dataclass(frozen=True)
class QIViolation:
    condition: str  # "distance-upper", "distance-lower" or "surjectivity"
    witness: tuple
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.condition} at {self.witness}: {self.lhs} > {self.rhs}"


def check_qi(m: QuasiIsometryMap) -> list:
    """Every violated quasi-isometry inequality, with both sides."""
    p, q = m.c.numerator, m.c.denominator
    phi = np.asarray(m.phi, dtype=np.int64)
    dg = m.source.dist_matrix.astype(np.int64)
    dh = m.target.dist_matrix.astype(np.int64)[np.ix_(phi, phi)] if m.source.n else np.zeros((0, 0), np.int64)
    fg, fh = dg >= 0, dh >= 0
    # q*d1 > p*d2 + p  <=>  d1 > c*d2 + c, in integers
    upper = (fg & fh & (q * dg > p * dh + p)) | (~fg & fh)
    lower = (fg & fh & (q * dh > p * dg + p)) | (fg & ~fh)
    out = []
    iu = np.triu(np.ones_like(upper, dtype=bool), k=1)

    def side(d, u, v):
        return INF if d[u, v] < 0 else int(d[u, v])

    for u, v in zip(*np.nonzero(upper & iu)):
        u, v = int(u), int(v)
        dhv = side(dh, u, v)
        out.append(QIViolation("distance-upper", (u, v), side(dg, u, v), INF if dhv == INF else m.c * dhv + m.c))
    for u, v in zip(*np.nonzero(lower & iu)):
        u, v = int(u), int(v)
        dgv = side(dg, u, v)
        out.append(QIViolation("distance-lower", (u, v), side(dh, u, v), INF if dgv == INF else m.c * dgv + m.c))
    reach = multi_source_distances(m.target, set(m.phi))
    for h, d in enumerate(reach):
        if d == INF or d > m.c:
            out.append(QIViolation("surjectivity", (h,), d, m.c))
    return out


def quotient(g: Graph, parts: Sequence) -> tuple:
    """Quotient graph (one vertex per part, empty parts isolated) and the map vertex -> part."""
    ip = IndexedPartition(g, Graph(len(parts)), tuple(parts))
    owner = ip.part_of()
    edges = {(owner[u], owner[v]) for u, v in g.edges if owner[u] != owner[v]}
    return Graph.from_edges(len(parts), edges), tuple(owner)


def qi_from_partition(g: Graph, parts: Sequence, d: int) -> QuasiIsometryMap:
    """Canonical map onto the quotient, as a ``(d+1)``-quasi-isometry (checked)."""
    parts = [frozenset(p) for p in parts]
    if not all(parts):
        raise QIError("partition is not proper")
    for i, p in enumerate(parts):
        w = weak_diameter(g, p)
        if w > d:
            raise QIError(f"part {i} has weak diameter {w} > {d}")
    q, owner = quotient(g, parts)
    m = QuasiIsometryMap(g, q, owner, Fraction(d + 1))
    bad = check_qi(m)
    if bad:
        raise QIError(f"canonical map is not a {d + 1}-quasi-isometry: {bad[0]}")
    return m


def is_index_partition(ip: IndexedPartition) -> list:
    """Host edges whose endpoints lie in distinct, non-adjacent parts."""
    owner = ip.part_of()
    return [(u, v) for u, v in sorted(ip.host.edges)
            if owner[u] != owner[v] and not ip.index.has_edge(owner[u], owner[v])]


def compression_failures(ip: IndexedPartition, ell) -> list:
    """Pairs of distinct parts within ``ell`` of each other whose labels are not adjacent."""
    r = floor_radius(as_scalar(ell))
    owner = ip.part_of()
    d = ip.host.dist_matrix
    bad = set()
    if r < 0:
        return []
    us, vs = np.nonzero((d >= 0) & (d <= r))
    for u, v in zip(us.tolist(), vs.tolist()):
        a, b = owner[u], owner[v]
        if a < b and not ip.index.has_edge(a, b):
            bad.add((a, b))
    return sorted(bad)


def power_partition(m: QuasiIsometryMap) -> IndexedPartition:
    """Fibres of ``phi`` as a partition indexed by ``H`` to the power ``2c``.

    Crossing edges land on adjacent indices and each fibre has weak diameter
    at most ``c``; both are checked.
    """
    index = graph_power(m.target, 2 * m.c)
    fibres = [set() for _ in range(m.target.n)]
    for v, h in enumerate(m.phi):
        fibres[h].add(v)
    ip = IndexedPartition(m.source, index, tuple(fibres))
    crossing = is_index_partition(ip)
    if crossing:
        raise QIError(f"edge {crossing[0]} crosses non-adjacent fibres; check_qi: {check_qi(m)[:3]}")
    for h, f in enumerate(ip.parts):
        if f and weak_diameter(m.source, f) > m.c:
            raise QIError(f"fibre of {h} has weak diameter {weak_diameter(m.source, f)} > {m.c}")
    return ip


@dataclass(frozen=True)
class PullBack:
    index: Graph  # A: induced on the labels with nonempty preimage
    partition: IndexedPartition
    kept: tuple  # kept[i] is the label in the original index graph of A's vertex i
    bound: Fraction


def pull_back(m: QuasiIsometryMap, hp: IndexedPartition, f_val, ell_prime=None) -> PullBack:
    """Preimages under ``phi`` of an ``ell'``-compressing partition of ``H``.

    ``hp`` must be ``2c``-compressing with parts of weak diameter at most
    ``f_val`` in ``H`` (checked). The result is a proper partition of ``G``
    indexed by an induced subgraph of ``hp.index``, with parts of weak
    diameter at most ``c * f_val + c``.
    """
    f_val = as_scalar(f_val)
    ell_prime = 2 * m.c if ell_prime is None else as_scalar(ell_prime)
    if hp.host != m.target:
        raise QIError("partition is not of the quasi-isometry's target graph")
    if ell_prime < 2 * m.c:
        raise QIError(f"compression scale {ell_prime} is below 2c = {2 * m.c}")
    failures = compression_failures(hp, ell_prime)
    if failures:
        raise QIError(f"partition of H is not {ell_prime}-compressing: parts {failures[0]}")
    for a, p in enumerate(hp.parts):
        if p and weak_diameter(m.target, p) > f_val:
            raise QIError(f"part {a} of H has weak diameter {weak_diameter(m.target, p)} > {f_val}")
    pre = [m.preimage(p) for p in hp.parts]
    kept = tuple(a for a, p in enumerate(pre) if p)
    A = hp.index.subgraph(kept)
    ip = IndexedPartition(m.source, A, tuple(pre[a] for a in kept))
    bound = m.c * f_val + m.c
    crossing = is_index_partition(ip)
    if crossing:
        raise QIError(f"pulled-back partition has edge {crossing[0]} across non-adjacent parts")
    for i, p in enumerate(ip.parts):
        w = weak_diameter(m.source, p)
        if w > bound:
            raise QIError(f"pulled-back part {kept[i]} has weak diameter {w} > {bound}")
    return PullBack(A, ip, kept, bound)


def pipeline_bound(k: int, c) -> Fraction:
    c = as_scalar(c)
    return 4 * (k + 1) * c * c + c


@dataclass
class PipelineResult:
    partition: IndexedPartition
    index: Graph
    index_td: TreeDecomposition
    quotient: Graph
    compression: CompressionResult
    compression_report: VerificationReport
    kept: tuple
    k: int
    c: Fraction
    bound: Fraction
    mode: str
    certificates: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v == "ok" for v in self.certificates.values())


def qi_to_bounded_width_pipeline(m: QuasiIsometryMap, td_h: TreeDecomposition, mode: str = "treewidth",
                                 root: int = 0) -> PipelineResult:
    if mode not in ("treewidth", "pathwidth"):
        raise ValueError(f"unknown mode {mode!r}")
    H = m.target
    td_report = validate(H, td_h)
    if not td_report.ok:
        raise QIError(f"decomposition of H is invalid: {td_report.violations[0]}")
    if mode == "pathwidth" and not is_path_decomposition(td_h):
        raise QIError("pathwidth mode needs a path-decomposition of H")
    k = td_report.width
    ell = 2 * m.c
    rtd = root_at(TreeDecomposition(td_h.tree, td_h.bags, n=H.n), root)
    res = build_compressing(H, rtd, ell)
    report = verify_result(H, rtd, res, k, ell)
    f_val = 2 * (k + 1) * ell
    hp = IndexedPartition(H, res.H, res.part_list())
    pb = pull_back(m, hp, f_val, ell)
    bound = pipeline_bound(k, m.c)
    kept_centres = [res.centres[a] for a in pb.kept]
    index_td = res.h_decomposition().restrict(pb.kept)
    q, _ = quotient(m.source, pb.partition.parts)

    certs = {}
    certs["compression"] = "ok" if report.ok else f"violations: {[str(v) for v in report.violations[:3]]}"
    certs["bound-identity"] = "ok" if pb.bound == bound else f"c*f(2c)+c = {pb.bound} != {bound}"
    certs["proper"] = "ok" if pb.partition.proper else "empty part"
    worst = max((weak_diameter(m.source, p) for p in pb.partition.parts), default=0)
    certs["weak-diameter"] = "ok" if worst <= bound else f"{worst} > {bound}"
    idx_report = validate(pb.index, index_td)
    if not idx_report.ok:
        certs["index-decomposition"] = f"invalid: {idx_report.violations[0]}"
    elif idx_report.width > k:
        certs["index-decomposition"] = f"width {idx_report.width} > {k}"
    else:
        certs["index-decomposition"] = "ok"
    q_report = validate(q, index_td)
    certs["quotient-decomposition"] = (
        "ok" if q_report.ok and q_report.width <= k else f"quotient not decomposed at width <= {k}")
    if mode == "pathwidth":
        certs["path-shaped"] = "ok" if is_path_decomposition(index_td) else "index tree is not a path"
    return PipelineResult(pb.partition, pb.index, index_td, q, res, report, tuple(kept_centres), k, m.c, bound,
                          mode, certs)


def cluster_partition(g: Graph, d: int) -> list:
    """Greedy ball cover: lowest uncovered vertex takes its radius-``d//2`` ball of uncovered vertices."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    radius = d // 2
    dm = g.dist_matrix
    uncovered = np.ones(g.n, dtype=bool)
    parts = []
    for v in range(g.n):
        if not uncovered[v]:
            continue
        ball = uncovered & (dm[v] >= 0) & (dm[v] <= radius)
        parts.append(frozenset(int(u) for u in np.flatnonzero(ball)))
        uncovered &= ~ball
    return parts


def identity_map(g: Graph) -> QuasiIsometryMap:
    return QuasiIsometryMap(g, g, tuple(range(g.n)), Fraction(1))

