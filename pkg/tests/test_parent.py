from itertools import product

import numpy as np
import pytest

from paulicut.encoding import min_qubits, pauli_matrix
from paulicut.graphs import Graph, cut_value, parse_graph
from paulicut.parent import (
    build_parent_hamiltonian,
    greedy_coloring,
    parent_trace,
    verify_parent_hamiltonian,
)

TRIANGLE = parse_graph("3 3\n1 2 1\n1 3 1\n2 3 1\n")


def random_graph(rng, m, p=0.5, weighted=False):
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < p:
                w = float(rng.choice([0.5, 1.0, 2.0, -1.0])) if weighted else 1.0
                edges.append((i, j, w))
    return Graph(m, tuple(edges))


def dense_parent(ph):
    """Full-space H from explicit kron products; independent of parent_trace."""
    dims = [b.encoding.n for b in ph.blocks]
    total = sum(dims)
    d = 1 << total
    h = np.zeros((d, d), dtype=complex)
    eye = np.eye(d)
    for t in ph.terms:
        op = np.array([[1.0 + 0j]])
        for b in ph.blocks:  # ascending qubit_offset; kron puts earlier blocks low
            if b.color == t.block_i:
                block_op = pauli_matrix(b.encoding.strings[t.string_i], b.encoding.n)
            elif b.color == t.block_j:
                block_op = pauli_matrix(b.encoding.strings[t.string_j], b.encoding.n)
            else:
                block_op = np.eye(1 << b.encoding.n)
            op = np.kron(block_op, op)
        gg = ph.blocks[t.block_i].gamma * ph.blocks[t.block_j].gamma
        h += t.weight * (eye - op / gg)
    return h


def dense_witness_product(ph, x):
    from paulicut.parent import _block_witnesses

    rho = np.array([[1.0 + 0j]])
    for r in _block_witnesses(ph, x):
        rho = np.kron(r, rho)
    return rho


class TestColoring:
    def test_star_center_first(self):
        star = Graph(6, tuple((0, leaf, 1.0) for leaf in range(1, 6)))
        colors = greedy_coloring(star)
        assert colors[0] == 0
        assert set(colors[1:]) == {1}

    def test_triangle_needs_three(self):
        assert sorted(greedy_coloring(TRIANGLE)) == [0, 1, 2]

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_proper_and_bounded(self, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, 12, p=0.4)
        colors = greedy_coloring(g)
        for i, j, _ in g.edges:
            assert colors[i] != colors[j]
        max_deg = int(g.neighbor_counts().max()) if g.num_edges else 0
        assert colors.max() + 1 <= max_deg + 1


class TestStructure:
    def test_triangle_blocks(self):
        ph = build_parent_hamiltonian(TRIANGLE, k=1)
        assert ph.num_colors == 3
        assert ph.total_qubits == 3
        assert ph.constant() == 3.0
        assert all(b.gamma == 1.0 for b in ph.blocks)
        assert [b.qubit_offset for b in ph.blocks] == [0, 1, 2]

    def test_block_sizes_add_up(self, rng):
        g = random_graph(rng, 10, p=0.35)
        ph = build_parent_hamiltonian(g, k=1)
        assert sorted(v for b in ph.blocks for v in b.vertices) == list(range(10))
        m_max = max(len(b.vertices) for b in ph.blocks)
        assert ph.total_qubits <= ph.num_colors * min_qubits(m_max, 1)
        # every edge's endpoints landed in different blocks
        for t in ph.terms:
            assert t.block_i != t.block_j

    def test_gamma_overrides_and_validation(self):
        ph = build_parent_hamiltonian(TRIANGLE, k=1, gammas=[0.5, 0.25, 1.0])
        assert [b.gamma for b in ph.blocks] == [0.5, 0.25, 1.0]
        with pytest.raises(ValueError, match="gammas"):
            build_parent_hamiltonian(TRIANGLE, k=1, gammas=[0.5])
        with pytest.raises(ValueError):
            build_parent_hamiltonian(TRIANGLE, k=1, gammas=[0.5, -1.0, 1.0])


class TestTraceIdentity:
    def test_triangle_by_hand(self):
        ph = build_parent_hamiltonian(TRIANGLE, k=1)
        assert parent_trace(ph, [1, -1, 1]) == pytest.approx(4.0, abs=1e-12)
        assert parent_trace(ph, [1, 1, 1]) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("k", [1, 2])
    def test_exhaustive_small_graphs(self, k):
        rng = np.random.default_rng(42)
        for _ in range(4):
            g = random_graph(rng, 6, p=0.5, weighted=True)
            if g.num_edges == 0:
                continue
            ph = build_parent_hamiltonian(g, k=k)
            for bits in product((1, -1), repeat=6):
                assert verify_parent_hamiltonian(ph, np.array(bits)) < 1e-9

    def test_matches_full_dense_construction(self, rng):
        star = Graph(6, tuple((0, leaf, 1.0) for leaf in range(1, 6)))
        ph = build_parent_hamiltonian(star, k=1)
        assert ph.total_qubits <= 8
        h = dense_parent(ph)
        assert np.max(np.abs(h - h.conj().T)) < 1e-12
        for _ in range(10):
            x = rng.choice((-1, 1), size=6)
            rho = dense_witness_product(ph, x)
            want = float(np.trace(h @ rho).real)
            assert parent_trace(ph, x) == pytest.approx(want, abs=1e-10)
            assert want == pytest.approx(cut_value(star, x), abs=1e-10)

    def test_identity_invariant_under_gamma_choice(self, rng):
        g = random_graph(rng, 7, p=0.4)
        base = build_parent_hamiltonian(g, k=1)
        gammas = [0.8 / len(b.vertices) for b in base.blocks]
        ph = build_parent_hamiltonian(g, k=1, gammas=gammas)
        for _ in range(20):
            x = rng.choice((-1, 1), size=7)
            assert verify_parent_hamiltonian(ph, x) < 1e-9

    def test_constant_shifts_all_energies(self):
        # Tr[H rho] - constant() = -sum w x_i x_j, the pure interaction part
        ph = build_parent_hamiltonian(TRIANGLE, k=1)
        x = np.array([1, -1, 1])
        inter = parent_trace(ph, x) - ph.constant()
        assert inter == pytest.approx(-(1 * -1 + 1 * 1 + -1 * 1), abs=1e-12)


class TestGuards:
    def test_total_qubit_limit(self):
        k13 = Graph(13, tuple((i, j, 1.0) for i in range(13) for j in range(i + 1, 13)))
        ph = build_parent_hamiltonian(k13, k=1)
        assert ph.total_qubits == 13
        with pytest.raises(ValueError, match="12"):
            parent_trace(ph, np.ones(13, dtype=int))

    def test_bad_assignment(self):
        ph = build_parent_hamiltonian(TRIANGLE, k=1)
        with pytest.raises(ValueError):
            parent_trace(ph, [1, -1])
        with pytest.raises(ValueError):
            parent_trace(ph, [1, 0, 1])
