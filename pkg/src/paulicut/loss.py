"""Relaxed MaxCut losses over encoded expectations.

For expectations e and an m-vertex graph with weights W, the production loss
is

    L(e) = sum_{(i,j) in E} W_ij tanh(alpha e_i) tanh(alpha e_j)
           + beta * nu * [ (1/m) sum_i tanh(alpha e_i)^2 ]^2

with each unordered edge counted once. nu is the guaranteed-cut constant of
the graph (see graphs.maxcut_lower_bound_nu), so the regularizer's scale
tracks the edge term's. The quadratic variant replaces the edge term with
sum W_ij e_i e_j (no alpha, no tanh) and is kept only for ablations; the
regularizer keeps its tanh form in both variants.

When the encoding holds more strings than the graph has vertices, surplus
expectations enter neither term and carry zero gradient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .encoding import Encoding
from .graphs import Graph, maxcut_lower_bound_nu

__all__ = [
    "LossSpec",
    "make_loss_spec",
    "default_alpha",
    "loss_value",
    "loss_grad_expectations",
    "grad_bound",
]

LOSS_KINDS = ("tanh", "quadratic")


def default_alpha(n: int, k: int) -> float:
    """Loss sharpness default: 1.5 for k=1, else 1.5 * n^floor(k/2)."""
    if k < 1 or n < k:
        raise ValueError("need 1 <= k <= n")
    if k == 1:
        return 1.5
    return 1.5 * float(n) ** (k // 2)


@dataclass(frozen=True)
class LossSpec:
    graph: Graph
    encoding: Encoding
    alpha: float
    beta: float
    nu: float
    kind: str = "tanh"

    def __post_init__(self):
        if self.encoding.m < self.graph.num_vertices:
            raise ValueError(
                f"encoding holds {self.encoding.m} strings but the graph has "
                f"{self.graph.num_vertices} vertices"
            )
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.nu <= 0:
            raise ValueError("nu must be positive")
        if self.kind not in LOSS_KINDS:
            raise ValueError(f"kind must be one of {LOSS_KINDS}")


def make_loss_spec(
    graph: Graph,
    encoding: Encoding,
    alpha: Optional[float] = None,
    beta: float = 0.5,
    nu: Optional[float] = None,
    kind: str = "tanh",
) -> LossSpec:
    """LossSpec with alpha defaulting per (n, k) and nu from the graph bound."""
    if alpha is None:
        alpha = default_alpha(encoding.n, encoding.k)
    if nu is None:
        nu = maxcut_lower_bound_nu(graph)
    return LossSpec(graph, encoding, float(alpha), float(beta), float(nu), kind)


def _graph_part(e, spec: LossSpec) -> np.ndarray:
    e = np.asarray(e, dtype=np.float64)
    if e.shape != (spec.encoding.m,):
        raise ValueError(f"expected {spec.encoding.m} expectations, got {e.shape}")
    return e[: spec.graph.num_vertices]


def loss_value(e, spec: LossSpec) -> float:
    ev = _graph_part(e, spec)
    ei, ej, w = spec.graph.edge_arrays()
    t = np.tanh(spec.alpha * ev)
    if spec.kind == "tanh":
        edge_term = float(np.dot(w, t[ei] * t[ej])) if len(w) else 0.0
    else:
        edge_term = float(np.dot(w, ev[ei] * ev[ej])) if len(w) else 0.0
    m = spec.graph.num_vertices
    reg = spec.beta * spec.nu * float(np.sum(t * t) / m) ** 2
    return edge_term + reg


def loss_grad_expectations(e, spec: LossSpec) -> np.ndarray:
    """dL/de_i for every encoded string (zero on surplus strings)."""
    ev = _graph_part(e, spec)
    m = spec.graph.num_vertices
    ei, ej, w = spec.graph.edge_arrays()
    t = np.tanh(spec.alpha * ev)
    dt = spec.alpha * (1.0 - t * t)  # d tanh(alpha e)/de

    neighbor = np.zeros(m)
    if len(w):
        if spec.kind == "tanh":
            np.add.at(neighbor, ei, w * t[ej])
            np.add.at(neighbor, ej, w * t[ei])
            edge_grad = dt * neighbor
        else:
            np.add.at(neighbor, ei, w * ev[ej])
            np.add.at(neighbor, ej, w * ev[ei])
            edge_grad = neighbor
    else:
        edge_grad = neighbor

    s = float(np.sum(t * t) / m)
    reg_grad = spec.beta * spec.nu * 4.0 * s * t * dt / m

    out = np.zeros(spec.encoding.m)
    out[:m] = edge_grad + reg_grad
    return out


def grad_bound(spec: LossSpec) -> np.ndarray:
    """Per-vertex bound |dL/de_i| <= 2 alpha (d(i) + 2 beta nu / m) for the
    tanh loss, d(i) the weighted degree."""
    m = spec.graph.num_vertices
    d = spec.graph.degrees()
    return 2.0 * spec.alpha * (d + 2.0 * spec.beta * spec.nu / m)
