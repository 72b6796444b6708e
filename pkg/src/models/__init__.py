"""
Modèles de données du simulateur
================================

Ce package contient les structures de données principales:
- ModeLabel / ModeRegistry: étiquettes et registre ordonné des modes
- GaussianState / SymplecticTransform: états et transformations gaussiens
- QuadraticHamiltonian: hamiltoniens quadratiques
- LaserConfig / PhysicalParams: réglages laser et paramètres physiques
- ProtocolSpec / ProtocolResult: protocoles de préparation
- ProtocolSample: une ligne de série temporelle
- RunConfig / ReportBundle: configuration et rapport d'une commande
"""

from .modes import A_MINUS, A_PLUS, C0, C2, Cm2, ModeLabel, ModeRegistry
from .gaussian import GaussianState, SymplecticTransform, symplectic_form
from .hamiltonian import QuadraticHamiltonian
from .laser import EnsembleDrive, LaserConfig, PhysicalParams
from .dynamics import DriftDiffusion, LindbladSpec
from .protocol import ProtocolResult, ProtocolSpec, ProtocolStep, StepRecord
from .timeseries import EvolveSample, ProtocolSample, timeseries_to_dataframe, validate_timeseries_data
from .report import ReportBundle

__all__ = [
    'A_PLUS',
    'A_MINUS',
    'C0',
    'C2',
    'Cm2',
    'ModeLabel',
    'ModeRegistry',
    'GaussianState',
    'SymplecticTransform',
    'symplectic_form',
    'QuadraticHamiltonian',
    'EnsembleDrive',
    'LaserConfig',
    'PhysicalParams',
    'DriftDiffusion',
    'LindbladSpec',
    'ProtocolSpec',
    'ProtocolStep',
    'StepRecord',
    'ProtocolResult',
    'ProtocolSample',
    'EvolveSample',
    'timeseries_to_dataframe',
    'validate_timeseries_data',
    'ReportBundle',
]
