"""ffscale: fast-forward scaling of quantum dynamics with energy-cost control.

The package propagates small quantum systems, builds the driving
Hamiltonians that reproduce a reference evolution on a rescaled clock while
preserving measurement probabilities in a chosen frame, and evaluates the
Hilbert-Schmidt energy costs of doing so.  Worked models: a two-level
magnetization reversal (computational and eigenbasis frames, with
winding-matched phase modulation) and transverse-field Ising annealing.
"""

from .annealing import (
    IsingInstance,
    computational_frame,
    linear_schedule,
    qa_hamiltonian,
    qa_hamiltonian_fn,
    qa_norm,
    qa_norm_sq,
    random_instance,
    spin_configurations,
    suboptimal_cost,
    suboptimal_ff,
    suboptimal_ff_fn,
    suboptimal_norm,
    suboptimal_norm_sq,
    suboptimal_phase,
)
from .config import ConfigError, ScenarioConfig, load_config, parse_config
from .datasets import FigureDataset, emit_csv, render_csv
from .eigencost import general_eigenbasis_norm_sq
from .engine import (
    CostReport,
    composite_simpson,
    cost_report,
    fast_forward_fn,
    fast_forward_hamiltonian,
    fast_forward_norm,
    fast_forward_norm_sq,
    instantaneous_cost,
    optimal_phase,
    phase_unitary,
    probability_invariance_deviation,
    simplest_fast_forward,
    total_cost,
    variance_norm,
)
from .evolution import (
    NormDriftError,
    TimeGrid,
    evolve,
    measurement_probabilities,
    sample_operator,
    trajectory_probabilities,
)
from .frames import (
    MeasurementFrame,
    finite_difference_frame,
    frame_from_columns,
    rotating_frame,
    standard_frame,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .operators import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    eigendecompose,
    hs_norm,
    hs_norm_sq,
    is_hermitian,
    require_hermitian,
    site_operator,
)
from .phases import CumulativeIntegral, PhaseProfile
from .rescaling import Rescaling, linear_rescaling
from .scenarios import PRESETS, preset_config, run_scenario, sweep_delta
from .two_level import (
    ModulationParams,
    TwoLevelSchedule,
    eigen_energies,
    eigenbasis_cost_envelope,
    eigenbasis_norm_sq,
    eigenframe_coupling_rate,
    energy_eigenframe,
    hamiltonian_fn,
    magnetization_reversal,
    modulated_phase,
    modulation_delta,
    optimal_pauli_z_phase,
    original_norm,
    pauli_z_frame,
    two_level_hamiltonian,
    two_level_optimal_cost,
    two_level_optimal_ff,
    two_level_optimal_norm,
)

__version__ = "0.1.0"
