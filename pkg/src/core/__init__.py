"""
Modules principaux du simulateur
================================

Ce package contient les composants numériques de l'application:
- Noyau gaussien (états, transformations symplectiques, mesures)
- Modes collectifs et constructeur d'hamiltoniens
- Dynamique de Lindblad gaussienne et oracle de Fock
- Protocoles de préparation et export des rapports
"""

from .gaussian import apply_symplectic, purity, symplectic_eigenvalues, vacuum_state
from .lindblad import drift_diffusion, evolve, steady_state
from .protocols import run_protocol, target_state
from .data_exporter import ReportExporter

__all__ = [
    'vacuum_state',
    'apply_symplectic',
    'purity',
    'symplectic_eigenvalues',
    'drift_diffusion',
    'evolve',
    'steady_state',
    'run_protocol',
    'target_state',
    'ReportExporter',
]
