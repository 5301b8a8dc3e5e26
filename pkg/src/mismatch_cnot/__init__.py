"""Coincidence linear-optics CNOT with temporally and spectrally mismatched photons."""
from .detection import (Basis, DetectionConfig, DetectorModel, TruthTable, pointwise_truth_table,
                        success_probabilities, windowed_truth_table)
from .estimator import CoincidenceCNOT
from .metrics import closed_form_similarity, ideal_truth_table, p_min, similarity
from .network import (BeamsplitterSpec, ModeUnitary, beamsplitter_unitary, coincidence_cnot_network, compose,
                      ideal_logical_action)
from .oracle import TimeGrid, brute_force_table, discretize
from .sweep import Axis, SweepSpec, run_preset, run_sweep
from .twophoton import LogicalState, TwoPhotonRailAmplitude, joint_density, propagate_basis_pair, propagate_logical
from .wavepacket import FULL, ComplexGaussianIntegrand, GaussianWavepacket, amplitude, overlap, window_integral

__all__ = [
    "Basis",
    "DetectionConfig",
    "DetectorModel",
    "TruthTable",
    "pointwise_truth_table",
    "success_probabilities",
    "windowed_truth_table",
    "CoincidenceCNOT",
    "closed_form_similarity",
    "ideal_truth_table",
    "p_min",
    "similarity",
    "BeamsplitterSpec",
    "ModeUnitary",
    "beamsplitter_unitary",
    "coincidence_cnot_network",
    "compose",
    "ideal_logical_action",
    "TimeGrid",
    "brute_force_table",
    "discretize",
    "Axis",
    "SweepSpec",
    "run_preset",
    "run_sweep",
    "LogicalState",
    "TwoPhotonRailAmplitude",
    "joint_density",
    "propagate_basis_pair",
    "propagate_logical",
    "FULL",
    "ComplexGaussianIntegrand",
    "GaussianWavepacket",
    "amplitude",
    "overlap",
    "window_integral",
]

__version__ = "0.1.0"
