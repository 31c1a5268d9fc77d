"""Independent certificate checks for a :class:`~coarsetw.compress.CompressionResult`.

Nothing here trusts the builder: penalties are recounted from the
priority order, distances come straight from the host graph, and the
decomposition of ``H`` goes through the generic validator.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .compress import CompressionResult, penalty_map
from .graph import Graph, as_scalar, floor_radius
from .treedecomp import RootedTreeDecomposition, Violation, priority_order, validate

CHECKS = ("decomposition", "partition", "compression", "diameter", "bag-sizes", "penalties", "roots")


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=lambda: {name: [] for name in CHECKS})

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    @property
    def violations(self) -> list:
        return [v for name in CHECKS for v in self.checks.get(name, [])]

    def add(self, check: str, kind: str, message: str, witness=()):
        self.checks.setdefault(check, []).append(Violation(kind, message, witness))

    def summary(self) -> dict:
        return {name: ("ok" if not vs else [str(v) for v in vs]) for name, vs in self.checks.items()}


def verify_result(g: Graph, rtd: RootedTreeDecomposition, res: CompressionResult, k: int, ell) -> VerificationReport:
    ell = as_scalar(ell)
    report = VerificationReport()
    centres = res.centres
    index = {x: i for i, x in enumerate(centres)}
    H = res.H
    if H.n != len(centres):
        report.add("decomposition", "bad-H", f"H has {H.n} vertices for {len(centres)} centres")
        return report

    # (a) the centre bags decompose H with width <= k
    union = set().union(*res.bags) if res.bags else set()
    if union != set(centres):
        report.add("decomposition", "centre-set", "V(H) is not the union of the centre bags")
    for b in res.bags:
        if not b <= index.keys():
            report.add("decomposition", "stray-centre", f"bag holds non-centres {sorted(b - index.keys())}")
            return report
    td_report = validate(H, res.h_decomposition())
    for v in td_report.violations:
        report.checks["decomposition"].append(v)
    if td_report.ok and td_report.width > k:
        report.add("decomposition", "width", f"width {td_report.width} exceeds k={k}", (td_report.width,))

    # (b) parts partition V(G), consistent with centre_of
    seen = {}
    for x in centres:
        for v in res.parts.get(x, ()):
            if v in seen:
                report.add("partition", "overlap", f"vertex {v} in parts {seen[v]} and {x}", (v, seen[v], x))
            seen[v] = x
    extra = set(res.parts) - set(centres)
    if extra:
        report.add("partition", "unindexed-part", f"parts for non-centres {sorted(extra)}")
    for v in range(g.n):
        if v not in seen:
            report.add("partition", "uncovered", f"vertex {v} is in no part", (v,))
        elif res.centre_of[v] != seen[v]:
            report.add("partition", "centre-map", f"centre_of[{v}]={res.centre_of[v]} but part {seen[v]}", (v,))
    if report.checks["partition"]:
        return report

    # (c) ell-compression: close vertices in distinct parts need adjacent centres
    d = g.dist_matrix
    r = floor_radius(ell)
    bad_pairs = set()
    for u in range(g.n):
        xu = seen[u]
        for v in range(u + 1, g.n):
            duv = int(d[u, v])
            if duv < 0 or duv > r:
                continue
            xv = seen[v]
            if xu != xv and not H.has_edge(index[xu], index[xv]):
                pair = (min(xu, xv), max(xu, xv))
                if pair not in bad_pairs:
                    bad_pairs.add(pair)
                    report.add("compression", "non-adjacent",
                               f"parts {pair} at distance {duv} <= {ell} but centres not adjacent in H",
                               (pair, (u, v)))

    # (d) radius and weak diameter of each part
    radius = (k + 1) * ell
    diam = 2 * radius
    for x in centres:
        part = sorted(res.parts[x])
        for v in part:
            dxv = g.dist(x, v)
            if dxv > radius:
                report.add("diameter", "radius", f"vertex {v} of part {x} at distance {dxv} > {radius}", (x, v))
        for i, u in enumerate(part):
            for v in part[i + 1:]:
                duv = g.dist(u, v)
                if duv > diam:
                    report.add("diameter", "weak-diameter",
                               f"part {x}: dist({u},{v})={duv} > {diam}", (x, u, v))

    # (e) bag sizes monotone down the tree and at most k+1
    for t in rtd.order:
        size = len(res.bags[t])
        if size > k + 1:
            report.add("bag-sizes", "oversized", f"B_{t} has {size} > k+1 centres", (t,))
        p = rtd.parent[t]
        if p is not None and len(res.bags[p]) > size:
            report.add("bag-sizes", "shrinking", f"|B_{p}|={len(res.bags[p])} > |B_{t}|={size}", (p, t))

    # (f) penalties of a shared centre never grow going down
    order = priority_order(g, rtd)
    pens = [penalty_map(order, b) for b in res.bags]
    for t in rtd.order:
        for a in rtd.ancestors(rtd.parent[t]) if rtd.parent[t] is not None else ():
            for x in res.bags[t] & res.bags[a]:
                if pens[t][x] > pens[a][x]:
                    report.add("penalties", "growing", f"penalty of {x}: {pens[a][x]} at {a}, {pens[t][x]} at {t}",
                               (x, a, t))

    # (g) each centre first appears at its own root bag
    for x in centres:
        holders = [t for t in range(len(res.bags)) if x in res.bags[t]]
        top = min(holders, key=rtd.depth.__getitem__)
        if top != rtd.root_bag[x]:
            report.add("roots", "root-mismatch", f"centre {x}: shallowest bag {top}, root bag {rtd.root_bag[x]}",
                       (x,))
    return report

