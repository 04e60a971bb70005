"""paulicut: qubit-efficient MaxCut via Pauli-correlation encodings.

Binary variables are encoded as signs of k-body Pauli expectations of a
trained brickwork circuit on n qubits, packing m = 3 * C(n, k) variables
into n qubits. The package covers the full pipeline (encode, train with
adjoint gradients, read out, locally refine) plus the supporting studies:
loss-variance plateaus, shot bounds, encodability witnesses, and parent
Hamiltonians.
"""

from .backend import backend_name
from .circuits import MS, Circuit, SingleRot, brick_pairs, build_brickwork, default_layers
from .encoding import (
    Encoding,
    PauliString,
    assignment_from_expectations,
    build_encoding,
    capacity,
    encodability_witness,
    estimate_expectations,
    format_encoding,
    min_qubits,
)
from .experiments import (
    VarianceReport,
    ablation_histograms,
    gate_budget_sweep,
    plateau_variance,
    sample_bound,
)
from .graphs import (
    BaselineSummary,
    Graph,
    GraphParseError,
    PostSelectionError,
    cut_value,
    exact_maxcut,
    format_graph,
    generate_random_instance,
    maxcut_lower_bound_nu,
    parse_graph,
    parse_graph_file,
    random_cut_baseline,
    write_graph,
)
from .loss import LossSpec, default_alpha, grad_bound, loss_grad_expectations, loss_value, make_loss_spec
from .parent import (
    ParentHamiltonian,
    build_parent_hamiltonian,
    greedy_coloring,
    parent_trace,
    verify_parent_hamiltonian,
)
from .simulator import expectation, expectations, loss_and_gradient, run, sample, sample_counts, state_dump
from .solver import SolveResult, approximation_ratio, local_search, solve
from .training import StoppingRule, TrainConfig, TrainTrace, init_params, train

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "MS", "Circuit", "SingleRot", "brick_pairs", "build_brickwork", "default_layers",
    "Encoding", "PauliString", "assignment_from_expectations", "build_encoding",
    "capacity", "encodability_witness", "estimate_expectations", "format_encoding",
    "min_qubits",
    "VarianceReport", "ablation_histograms", "gate_budget_sweep", "plateau_variance",
    "sample_bound",
    "BaselineSummary", "Graph", "GraphParseError", "PostSelectionError", "cut_value",
    "exact_maxcut", "format_graph", "generate_random_instance", "maxcut_lower_bound_nu",
    "parse_graph", "parse_graph_file", "random_cut_baseline", "write_graph",
    "LossSpec", "default_alpha", "grad_bound", "loss_grad_expectations", "loss_value",
    "make_loss_spec",
    "ParentHamiltonian", "build_parent_hamiltonian", "greedy_coloring", "parent_trace",
    "verify_parent_hamiltonian",
    "expectation", "expectations", "loss_and_gradient", "run", "sample", "sample_counts",
    "state_dump",
    "SolveResult", "approximation_ratio", "local_search", "solve",
    "StoppingRule", "TrainConfig", "TrainTrace", "init_params", "train",
    "__version__",
]
