"""PACE 2017 ``.gr`` and ``.td`` text formats.

Files use 1-based vertex and bag ids; in memory everything is 0-based.
Writers are canonical (sorted edges and bag members, LF endings, single
spaces), so ``dump(load(dump(x))) == dump(x)`` byte for byte.
"""
from __future__ import annotations

from pathlib import Path

from .graph import Graph
from .treedecomp import TreeDecomposition


class PaceFormatError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise PaceFormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse_gr(text: str) -> Graph:
    header = None
    edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if header is not None:
                raise PaceFormatError("duplicate 'p' line", lineno)
            if len(toks) != 4 or toks[1] != "tw":
                raise PaceFormatError("header must be 'p tw <n> <m>'", lineno)
            header = (_int(toks[2], lineno), _int(toks[3], lineno))
            continue
        if header is None:
            raise PaceFormatError("edge before 'p tw' header", lineno)
        if len(toks) != 2:
            raise PaceFormatError("edge line must be '<u> <v>'", lineno)
        u, v = _int(toks[0], lineno), _int(toks[1], lineno)
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise PaceFormatError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise PaceFormatError("self-loop", lineno)
        edges.append((u - 1, v - 1))
    if header is None:
        raise PaceFormatError("missing 'p tw' header")
    n, m = header
    if len(edges) != m:
        raise PaceFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def dump_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    """Parse a ``.td`` file; bag ``i`` becomes tree node ``i - 1``.

    Returns the decomposition without checking it against any graph;
    ``n`` from the header is kept as ``TreeDecomposition.n``.
    """
    header = None
    bags = {}
    tree_edges = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "s":
            if header is not None:
                raise PaceFormatError("duplicate 's' line", lineno)
            if len(toks) != 5 or toks[1] != "td":
                raise PaceFormatError("header must be 's td <bags> <maxBagSize> <n>'", lineno)
            header = tuple(_int(t, lineno) for t in toks[2:])
            continue
        if header is None:
            raise PaceFormatError("content before 's td' header", lineno)
        nbags, _, n = header
        if toks[0] == "b":
            if len(toks) < 2:
                raise PaceFormatError("bag line must start 'b <id>'", lineno)
            bid = _int(toks[1], lineno)
            if not 1 <= bid <= nbags:
                raise PaceFormatError(f"bag id {bid} out of range 1..{nbags}", lineno)
            if bid in bags:
                raise PaceFormatError(f"duplicate bag {bid}", lineno)
            members = [_int(t, lineno) for t in toks[2:]]
            for v in members:
                if not 1 <= v <= n:
                    raise PaceFormatError(f"vertex {v} out of range 1..{n}", lineno)
            bags[bid] = frozenset(v - 1 for v in members)
        else:
            if len(toks) != 2:
                raise PaceFormatError("tree edge line must be '<i> <j>'", lineno)
            i, j = _int(toks[0], lineno), _int(toks[1], lineno)
            if not (1 <= i <= nbags and 1 <= j <= nbags):
                raise PaceFormatError("tree edge references unknown bag", lineno)
            tree_edges.append((i - 1, j - 1))
    if header is None:
        raise PaceFormatError("missing 's td' header")
    nbags, max_bag, n = header
    if len(bags) != nbags:
        raise PaceFormatError(f"header declares {nbags} bags, found {len(bags)}")
    declared = max((len(b) for b in bags.values()), default=0)
    if declared != max_bag:
        raise PaceFormatError(f"header declares max bag size {max_bag}, found {declared}")
    try:
        tree = Graph.from_edges(nbags, tree_edges)
    except ValueError as exc:
        raise PaceFormatError(str(exc)) from None
    if tree.m != len(tree_edges):
        raise PaceFormatError("duplicate tree edge")
    return TreeDecomposition(tree, tuple(bags[i + 1] for i in range(nbags)), n=n)


def dump_td(td: TreeDecomposition, n: int | None = None) -> str:
    n = td.n if n is None else n
    if n is None:
        n = max((v + 1 for b in td.bags for v in b), default=0)
    max_bag = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {max_bag} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{i + 1} {j + 1}" for i, j in sorted(td.tree.edges)]
    return "\n".join(lines) + "\n"


def read_gr(path) -> Graph:
    return parse_gr(Path(path).read_text())


def read_td(path) -> TreeDecomposition:
    return parse_td(Path(path).read_text())


def write_gr(g: Graph, path) -> None:
    Path(path).write_text(dump_gr(g), newline="\n")


def write_td(td: TreeDecomposition, path, n=None) -> None:
    Path(path).write_text(dump_td(td, n), newline="\n")
