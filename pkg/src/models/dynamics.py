"""
Modèles de la dynamique dissipative
===================================

- LindbladSpec: hamiltonien + modes amortis + taux κ
- DriftDiffusion: matrices de dérive A et de diffusion D de σ̇ = Aσ + σAᵀ + D
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from src.models.hamiltonian import QuadraticHamiltonian
from src.models.modes import A_MINUS, A_PLUS, ModeLabel, ModeRegistry, as_label
from src.utils.exceptions import DimensionError


@dataclass(frozen=True, eq=False)
class LindbladSpec:
    """Équation maîtresse: hamiltonien quadratique + amortissement κ des modes de cavité"""

    hamiltonian: QuadraticHamiltonian
    kappa: float
    damped_modes: Tuple[ModeLabel, ...] = field(default=(A_PLUS, A_MINUS))

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"κ doit être strictement positif: {self.kappa}")
        damped = tuple(as_label(label) for label in self.damped_modes)
        for label in damped:
            self.hamiltonian.registry.index(label)
        object.__setattr__(self, 'damped_modes', damped)

    @property
    def registry(self) -> ModeRegistry:
        return self.hamiltonian.registry


@dataclass(frozen=True, eq=False)
class DriftDiffusion:
    """Dérive A (2M×2M) et diffusion D symétrique semi-définie positive"""

    registry: ModeRegistry
    drift: np.ndarray
    diffusion: np.ndarray
    kappa: float
    damped_modes: Tuple[ModeLabel, ...] = ()

    def __post_init__(self):
        dim = self.registry.dimension
        drift = np.array(self.drift, dtype=float)
        diffusion = np.array(self.diffusion, dtype=float)
        if drift.shape != (dim, dim) or diffusion.shape != (dim, dim):
            raise DimensionError("Dérive ou diffusion de dimension incorrecte")
        drift.setflags(write=False)
        diffusion.setflags(write=False)
        object.__setattr__(self, 'drift', drift)
        object.__setattr__(self, 'diffusion', diffusion)

    @property
    def A(self) -> np.ndarray:
        return self.drift

    @property
    def D(self) -> np.ndarray:
        return self.diffusion

    def to_dict(self) -> Dict:
        return {
            'modes': self.registry.names,
            'kappa': self.kappa,
            'damped_modes': [label.name for label in self.damped_modes],
            'drift': self.drift.tolist(),
            'diffusion': self.diffusion.tolist(),
        }
