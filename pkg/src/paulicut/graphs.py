"""Weighted graphs for MaxCut: parsing, cut values, bounds, instance generation.

Cut convention used throughout the package: for an assignment x of +/-1 labels,

    cut_value(g, x) = sum over unordered edges (i, j) of W_ij * (1 - x_i * x_j)

so every cut edge contributes twice its weight (a cut K2 scores 2, the best
cut of a unit triangle scores 4). Externally supplied reference values must
use the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "GraphParseError",
    "PostSelectionError",
    "BaselineSummary",
    "parse_graph",
    "parse_graph_file",
    "write_graph",
    "format_graph",
    "cut_value",
    "maxcut_lower_bound_nu",
    "exact_maxcut",
    "generate_random_instance",
    "random_cut_baseline",
]

GRAPH_FORMATS = ("gset", "weighted-list")


class GraphParseError(ValueError):
    """Malformed graph file; the message names the offending line."""


class PostSelectionError(RuntimeError):
    """Random-instance generation exhausted its retry budget."""


@dataclass(frozen=True)
class Graph:
    """An undirected weighted graph with no self-loops or duplicate edges.

    Edges are stored once per unordered pair as (i, j, w) with i < j and
    w != 0. Vertices are 0-based internally.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, float], ...]
    _arrays: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        canon = []
        for i, j, w in self.edges:
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if not (0 <= i < self.num_vertices and 0 <= j < self.num_vertices):
                raise ValueError(f"edge ({i}, {j}) out of range")
            if w == 0:
                raise ValueError(f"zero-weight edge ({i}, {j})")
            a, b = (i, j) if i < j else (j, i)
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            canon.append((a, b, float(w)))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def edge_arrays(self):
        """(ei, ej, w) numpy views of the edge list, cached."""
        if "ei" not in self._arrays:
            ei = np.fromiter((e[0] for e in self.edges), dtype=np.int64, count=self.num_edges)
            ej = np.fromiter((e[1] for e in self.edges), dtype=np.int64, count=self.num_edges)
            w = np.fromiter((e[2] for e in self.edges), dtype=np.float64, count=self.num_edges)
            self._arrays.update(ei=ei, ej=ej, w=w)
        return self._arrays["ei"], self._arrays["ej"], self._arrays["w"]

    def degrees(self) -> np.ndarray:
        """Weighted degrees d(i) = sum_j |W_ij|."""
        ei, ej, w = self.edge_arrays()
        d = np.zeros(self.num_vertices)
        np.add.at(d, ei, np.abs(w))
        np.add.at(d, ej, np.abs(w))
        return d

    def neighbor_counts(self) -> np.ndarray:
        ei, ej, _ = self.edge_arrays()
        d = np.zeros(self.num_vertices, dtype=np.int64)
        np.add.at(d, ei, 1)
        np.add.at(d, ej, 1)
        return d

    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Per-vertex list of (neighbor, weight) pairs."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.num_vertices)]
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    def is_connected(self) -> bool:
        if self.num_vertices == 1:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u, _ in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.num_vertices


def parse_graph(text: str, fmt: str = "gset") -> Graph:
    """Parse a graph from Gset-style text.

    Line 1 is "m num_edges"; every following non-empty line is "i j w" with
    1-based vertex indices. The weighted-list format shares the same grammar;
    Gset files conventionally carry unit weights but any nonzero weight is
    accepted in both. Raises GraphParseError naming the offending line.
    """
    if fmt not in GRAPH_FORMATS:
        raise ValueError(f"unknown graph format {fmt!r}, expected one of {GRAPH_FORMATS}")
    lines = text.splitlines()
    if not lines or not lines[0].split():
        raise GraphParseError("line 1: missing 'm num_edges' header")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphParseError(f"line 1: header must be 'm num_edges', got {lines[0]!r}")
    try:
        m, header_edges = int(head[0]), int(head[1])
    except ValueError:
        raise GraphParseError(f"line 1: non-integer header fields in {lines[0]!r}") from None
    if m < 1 or header_edges < 0:
        raise GraphParseError("line 1: header values out of range")

    edges = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 3:
            raise GraphParseError(f"line {lineno}: expected 'i j w', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-numeric edge fields in {line!r}") from None
        if not (1 <= i <= m) or not (1 <= j <= m):
            raise GraphParseError(f"line {lineno}: vertex index out of range 1..{m}")
        if i == j:
            raise GraphParseError(f"line {lineno}: self-loop on vertex {i}")
        if w == 0:
            raise GraphParseError(f"line {lineno}: zero edge weight")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge ({i}, {j})")
        seen.add(key)
        edges.append((i - 1, j - 1, w))
    if len(edges) != header_edges:
        raise GraphParseError(
            f"edge count mismatch: header says {header_edges}, file has {len(edges)}"
        )
    return Graph(m, tuple(edges))


def parse_graph_file(path, fmt: str = "gset") -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read(), fmt)


def format_graph(g: Graph) -> str:
    """Render a graph in Gset format; floats use shortest round-trip repr."""
    out = [f"{g.num_vertices} {g.num_edges}"]
    for i, j, w in g.edges:
        ws = str(int(w)) if w == int(w) else repr(w)
        out.append(f"{i + 1} {j + 1} {ws}")
    return "\n".join(out) + "\n"


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_graph(g))


def _check_assignment(g: Graph, x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (g.num_vertices,):
        raise ValueError(f"assignment length {x.shape} != ({g.num_vertices},)")
    if not np.all(np.abs(x) == 1):
        raise ValueError("assignment entries must be +1 or -1")
    return x.astype(np.float64)


def cut_value(g: Graph, x) -> float:
    """Cut value with the doubled convention (see module docstring)."""
    if g.num_edges == 0:
        _check_assignment(g, x)
        return 0.0
    xv = _check_assignment(g, x)
    ei, ej, w = g.edge_arrays()
    return float(np.dot(w, 1.0 - xv[ei] * xv[ej]))


def _mst_weight(g: Graph) -> float:
    """Minimum-spanning-tree weight via Kruskal; requires connectivity."""
    parent = list(range(g.num_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    total = 0.0
    joined = 0
    for i, j, w in sorted(g.edges, key=lambda e: (e[2], e[0], e[1])):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            total += w
            joined += 1
    if joined != g.num_vertices - 1:
        raise ValueError("graph is disconnected; spanning-tree bound undefined")
    return total


def maxcut_lower_bound_nu(g: Graph) -> float:
    """Guaranteed-cut constant nu.

    Unweighted graphs use the Edwards-Erdos bound |E|/2 + (m-1)/4; weighted
    graphs use the Poljak-Turzik bound w(G)/2 + w(T_min)/4 with T_min a
    minimum spanning tree (connectivity required in that case). Note nu
    bounds the single-count maximum cut, so under this package's doubled
    convention the optimum satisfies cut >= 2*nu.
    """
    if g.is_unweighted:
        return g.num_edges / 2.0 + (g.num_vertices - 1) / 4.0
    total = sum(w for _, _, w in g.edges)
    return total / 2.0 + _mst_weight(g) / 4.0


_EXACT_LIMIT = 26


def exact_maxcut(g: Graph) -> tuple[float, np.ndarray]:
    """Exhaustive MaxCut for m <= 26 vertices (fixes x_0 = +1 by symmetry).

    Returns (best cut value, one optimal assignment).
    """
    m = g.num_vertices
    if m > _EXACT_LIMIT:
        raise ValueError(f"exact_maxcut limited to m <= {_EXACT_LIMIT}, got {m}")
    if g.num_edges == 0:
        return 0.0, np.ones(m, dtype=np.int64)
    ei, ej, w = g.edge_arrays()
    total = 1 << (m - 1)
    chunk = min(total, 1 << 16)
    shifts = np.arange(m - 1, dtype=np.uint32)
    best_val = -np.inf
    best_code = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        # column v of signs holds x_{v+1}; x_0 is pinned to +1
        signs = 1.0 - 2.0 * ((codes[:, None] >> shifts) & 1)
        x = np.concatenate([np.ones((len(codes), 1)), signs], axis=1)
        cuts = (1.0 - x[:, ei] * x[:, ej]) @ w
        k = int(np.argmax(cuts))
        if cuts[k] > best_val:
            best_val = float(cuts[k])
            best_code = start + k
    x = np.ones(m, dtype=np.int64)
    for v in range(1, m):
        if (best_code >> (v - 1)) & 1:
            x[v] = -1
    return best_val, x


def _best_cut_proxy(g: Graph, rng: np.random.Generator) -> float:
    """Best-cut reference for post-selection: exact when feasible, else the
    best of 50 local-search restarts."""
    from .solver import local_search  # local import; solver depends on graphs

    if g.num_vertices <= _EXACT_LIMIT:
        return exact_maxcut(g)[0]
    best = 0.0
    for _ in range(50):
        x = rng.choice((-1, 1), size=g.num_vertices)
        best = max(best, cut_value(g, local_search(g, x)))
    return best


def generate_random_instance(
    m: int,
    target_mean_degree: float,
    seed: int,
    max_retries: int = 500,
) -> Graph:
    """Draw a post-selected G(m, p) instance with unit weights.

    p = target_mean_degree / (m - 1). Candidates are redrawn until the mean
    degree 2|E|/m is at least 3 and one seeded uniform random cut scores at
    most 0.82 of the instance's best-found cut. Deterministic per seed;
    raises PostSelectionError after max_retries rejections.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if target_mean_degree < 3:
        raise ValueError("target_mean_degree must be >= 3 for post-selection to pass")
    p = target_mean_degree / (m - 1)
    if p > 1:
        raise ValueError("target_mean_degree too large for m")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(m, k=1)
    for _ in range(max_retries):
        mask = rng.random(len(iu)) < p
        edges = tuple((int(a), int(b), 1.0) for a, b in zip(iu[mask], ju[mask]))
        g = Graph(m, edges)
        if 2 * g.num_edges / m < 3:
            continue
        best = _best_cut_proxy(g, rng)
        if best <= 0:
            continue
        x = rng.choice((-1, 1), size=m)
        if cut_value(g, x) / best <= 0.82:
            return g
    raise PostSelectionError(
        f"no instance accepted after {max_retries} draws (m={m}, "
        f"target_mean_degree={target_mean_degree}, seed={seed})"
    )


@dataclass(frozen=True)
class BaselineSummary:
    mean: float
    stddev: float
    max_value: float
    trials: int


def random_cut_baseline(g: Graph, trials: int, seed: int) -> BaselineSummary:
    """Cut statistics of uniform random assignments after one local-search round."""
    from .solver import local_search

    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    cuts = np.empty(trials)
    for t in range(trials):
        x = rng.choice((-1, 1), size=g.num_vertices)
        cuts[t] = cut_value(g, local_search(g, x))
    return BaselineSummary(float(cuts.mean()), float(cuts.std()), float(cuts.max()), trials)
