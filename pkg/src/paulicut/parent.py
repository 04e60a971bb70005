"""Parent Hamiltonians whose ground-space energies reproduce cut values.

A proper greedy coloring splits the vertices into independent sets; each
color class c gets its own qubit block carrying an (n_c, k) encoding of its
m_c vertices. Every edge (i, j) with weight w becomes the two-block term

    w * (I - O_e / (gamma_c * gamma_c'))      O_e = P_i (x) P_j

where P_i, P_j are the encoding strings of the endpoints inside their blocks
and gamma_c is the per-color witness magnitude (1/m_c by default). On the
product witness state rho(x) each O_e evaluates to gamma_c gamma_c' x_i x_j,
so Tr[H rho(x)] equals the cut value of x exactly, under this package's
doubled cut convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .encoding import (
    Encoding,
    build_encoding,
    encodability_witness,
    min_qubits,
    pauli_matrix,
)
from .graphs import Graph, cut_value

__all__ = [
    "Block",
    "EdgeTerm",
    "ParentHamiltonian",
    "greedy_coloring",
    "build_parent_hamiltonian",
    "verify_parent_hamiltonian",
    "parent_trace",
]

_VERIFY_QUBIT_LIMIT = 12


def greedy_coloring(g: Graph) -> np.ndarray:
    """Proper coloring, largest neighbor count first (ties to lower index),
    each vertex taking the smallest color unused among its neighbors. Uses at
    most max_degree + 1 colors."""
    counts = g.neighbor_counts()
    order = sorted(range(g.num_vertices), key=lambda v: (-counts[v], v))
    adj = g.adjacency()
    colors = np.full(g.num_vertices, -1, dtype=np.int64)
    for v in order:
        taken = {colors[u] for u, _ in adj[v] if colors[u] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return colors


@dataclass(frozen=True)
class Block:
    color: int
    vertices: tuple[int, ...]  # global vertex ids, ascending
    encoding: Encoding
    gamma: float
    qubit_offset: int


@dataclass(frozen=True)
class EdgeTerm:
    i: int
    j: int
    weight: float
    block_i: int  # color of i
    string_i: int  # index of i's string inside its block encoding
    block_j: int
    string_j: int


@dataclass(frozen=True)
class ParentHamiltonian:
    graph: Graph
    k: int
    colors: np.ndarray
    blocks: tuple[Block, ...]
    terms: tuple[EdgeTerm, ...]

    @property
    def num_colors(self) -> int:
        return len(self.blocks)

    @property
    def total_qubits(self) -> int:
        return sum(b.encoding.n for b in self.blocks)

    def constant(self) -> float:
        """Coefficient of the identity, sum of edge weights."""
        return sum(t.weight for t in self.terms)


def build_parent_hamiltonian(
    g: Graph, k: int, gammas: Optional[Sequence[float]] = None
) -> ParentHamiltonian:
    """Assemble blocks and edge terms from a greedy coloring of g.

    `gammas` overrides the per-color witness magnitudes (default 1/m_c); the
    trace identity is invariant under any consistent positive choice.
    """
    colors = greedy_coloring(g)
    num_colors = int(colors.max()) + 1 if g.num_vertices else 0
    if gammas is not None and len(gammas) != num_colors:
        raise ValueError(f"expected {num_colors} gammas")

    blocks = []
    position = {}  # vertex -> index inside its color class
    offset = 0
    for c in range(num_colors):
        vertices = tuple(int(v) for v in np.flatnonzero(colors == c))
        for idx, v in enumerate(vertices):
            position[v] = idx
        m_c = len(vertices)
        n_c = min_qubits(m_c, k)
        gamma = 1.0 / m_c if gammas is None else float(gammas[c])
        if gamma <= 0:
            raise ValueError("gammas must be positive")
        blocks.append(Block(c, vertices, build_encoding(n_c, k, m_c), gamma, offset))
        offset += n_c

    terms = tuple(
        EdgeTerm(
            i=i, j=j, weight=w,
            block_i=int(colors[i]), string_i=position[i],
            block_j=int(colors[j]), string_j=position[j],
        )
        for i, j, w in g.edges
    )
    return ParentHamiltonian(g, k, colors, tuple(blocks), terms)


def _block_witnesses(ph: ParentHamiltonian, x) -> list[np.ndarray]:
    x = np.asarray(x)
    if x.shape != (ph.graph.num_vertices,) or not np.all(np.abs(x) == 1):
        raise ValueError("x must be a +/-1 vector matching the vertex count")
    return [
        encodability_witness(x[list(b.vertices)], b.encoding, magnitude=b.gamma)
        for b in ph.blocks
    ]


def parent_trace(ph: ParentHamiltonian, x) -> float:
    """Tr[H rho(x)] with rho(x) the per-block witness product state.

    Traces factor over blocks, so each edge term needs only the two dense
    block matrices; the full 2^total space is never materialized.
    """
    if ph.total_qubits > _VERIFY_QUBIT_LIMIT:
        raise ValueError(f"verification limited to {_VERIFY_QUBIT_LIMIT} total qubits")
    rhos = _block_witnesses(ph, x)
    single = {}  # (block, string) -> Tr[P rho_block], real

    def mean(block_id: int, string_id: int) -> float:
        key = (block_id, string_id)
        if key not in single:
            b = ph.blocks[block_id]
            p = b.encoding.strings[string_id]
            val = np.trace(pauli_matrix(p, b.encoding.n) @ rhos[block_id])
            single[key] = float(val.real)
        return single[key]

    total = 0.0
    for t in ph.terms:
        o = mean(t.block_i, t.string_i) * mean(t.block_j, t.string_j)
        denom = ph.blocks[t.block_i].gamma * ph.blocks[t.block_j].gamma
        total += t.weight * (1.0 - o / denom)
    return total


def verify_parent_hamiltonian(ph: ParentHamiltonian, x) -> float:
    """|Tr[H rho(x)] - cut_value(x)|; zero (to rounding) for every x."""
    return abs(parent_trace(ph, x) - cut_value(ph.graph, x))
