"""Least-squares twin SVM, classically and as a simulated quantum pipeline.

The classical path trains both hyperplanes in closed form.  The quantum
path prepares amplitude-encoded inputs, simulates Hamiltonian evolution,
solves the linear systems with a phase-estimation based solver, and
predicts through SWAP tests; every stage is checked against the
classical result.
"""

from .classical import (
    AugmentedMatrices,
    ClassicalModel,
    Dataset,
    build_augmented,
    objective_value,
    predict_classical,
    train_classical,
)
from .datagen import Line, SynthSpec, default_spec, generate_crossplanes
from .estimators import LSTSVMClassifier, QuantumLSTSVM
from .exceptions import QtsvmError
from .hamiltonian import (
    HamiltonianPair,
    TrotterConfig,
    TrotterErrorReport,
    assemble_hamiltonians,
    simulate_evolution,
    trotter_error_report,
    trotter_step,
)
from .hhl import (
    HHLConfig,
    HHLResult,
    QuantumTrainingResult,
    eigenvalue_inversion,
    phase_estimation,
    solve_qls,
    train_quantum,
)
from .linalg import (
    EigenDecomposition,
    condition_number,
    eigh,
    matrix_exp_unitary,
    solve_hermitian,
)
from .model_io import (
    ModelRecord,
    load_model,
    read_dataset_csv,
    read_samples_csv,
    save_model,
    write_dataset_csv,
)
from .prediction import (
    DistanceEstimates,
    PredictionConfig,
    classify,
    estimate_norm_w,
    predict_quantum,
    swap_test,
)
from .prep import (
    PreparedInput,
    build_chi,
    classical_hyperplane_state,
    postselect_input_state,
    prepare_density_k,
    prepare_sample_state,
)
from .states import (
    DensityMatrix,
    MeasurementResult,
    RegisterLayout,
    StateVector,
    apply_unitary,
    fidelity,
    measure_projective,
    normalize_to_state,
    partial_trace,
    tensor,
    walsh_hadamard,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedMatrices",
    "ClassicalModel",
    "Dataset",
    "DensityMatrix",
    "DistanceEstimates",
    "EigenDecomposition",
    "HHLConfig",
    "HHLResult",
    "HamiltonianPair",
    "LSTSVMClassifier",
    "Line",
    "MeasurementResult",
    "ModelRecord",
    "PredictionConfig",
    "PreparedInput",
    "QtsvmError",
    "QuantumLSTSVM",
    "QuantumTrainingResult",
    "RegisterLayout",
    "StateVector",
    "SynthSpec",
    "TrotterConfig",
    "TrotterErrorReport",
    "apply_unitary",
    "assemble_hamiltonians",
    "build_augmented",
    "build_chi",
    "classical_hyperplane_state",
    "classify",
    "condition_number",
    "default_spec",
    "eigenvalue_inversion",
    "eigh",
    "estimate_norm_w",
    "fidelity",
    "generate_crossplanes",
    "load_model",
    "matrix_exp_unitary",
    "measure_projective",
    "normalize_to_state",
    "objective_value",
    "partial_trace",
    "phase_estimation",
    "postselect_input_state",
    "predict_classical",
    "predict_quantum",
    "prepare_density_k",
    "prepare_sample_state",
    "read_dataset_csv",
    "read_samples_csv",
    "save_model",
    "simulate_evolution",
    "solve_hermitian",
    "solve_qls",
    "swap_test",
    "tensor",
    "train_classical",
    "train_quantum",
    "trotter_error_report",
    "trotter_step",
    "walsh_hadamard",
    "write_dataset_csv",
]
