"""
Modèles des protocoles de préparation
=====================================

- ProtocolSpec: type de protocole, ξ cible, échelle β_ref, durées d'étapes
- ProtocolStep: direction, configuration laser résolue et durée d'une étape
- StepRecord / ProtocolResult: diagnostics par étape et résultat final
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from config import ProtocolConfig, ValidationConfig
from src.models.gaussian import GaussianState
from src.models.laser import LaserConfig
from src.models.modes import ModeRegistry
from src.utils.constants import PROTOCOL_ENSEMBLES, PROTOCOL_KINDS, PROTOCOL_STEPS
from src.utils.helpers import time_from_kappa_units


@dataclass(frozen=True)
class ProtocolSpec:
    """
    Spécification d'un protocole

    Les durées sont exprimées en 1/κ et β_ref en unités de κ; `kappa` donne
    l'échelle physique (1 en unités réduites).
    """

    kind: str
    xi: float
    beta_ref: float = ProtocolConfig.DEFAULT_BETA_REF
    durations: Tuple[float, ...] = ()
    samples_per_step: int = ProtocolConfig.DEFAULT_SAMPLES_PER_STEP
    step_order: Tuple[int, ...] = ()
    kappa: float = 1.0

    def __post_init__(self):
        if self.kind not in PROTOCOL_KINDS:
            raise ValueError(f"Type de protocole inconnu: {self.kind!r}")
        if not (math.isfinite(self.xi) and 0.0 <= self.xi <= ValidationConfig.MAX_XI):
            raise ValueError(f"ξ hors de [0, {ValidationConfig.MAX_XI}]: {self.xi}")
        if not self.beta_ref > 0:
            raise ValueError(f"β_ref doit être strictement positif: {self.beta_ref}")
        if not self.kappa > 0:
            raise ValueError(f"κ doit être strictement positif: {self.kappa}")
        if self.samples_per_step < 1:
            raise ValueError("Au moins un échantillon par étape est requis")

        n_steps = PROTOCOL_STEPS[self.kind]
        order = tuple(self.step_order) or tuple(range(1, n_steps + 1))
        if sorted(order) != list(range(1, n_steps + 1)):
            raise ValueError(f"Ordre des étapes invalide: {order}")
        durations = tuple(float(d) for d in self.durations)
        if not durations:
            durations = (ProtocolConfig.DEFAULT_STEP_DURATION,) * n_steps
        elif len(durations) == 1:
            durations = durations * n_steps
        if len(durations) != n_steps or any(not d > 0 for d in durations):
            raise ValueError(f"Durées d'étapes invalides: {durations}")
        object.__setattr__(self, 'step_order', order)
        object.__setattr__(self, 'durations', durations)

    @property
    def xi0(self) -> float:
        return self.xi

    @property
    def xi1(self) -> float:
        return self.xi

    @property
    def n_ensembles(self) -> int:
        return PROTOCOL_ENSEMBLES[self.kind]

    @property
    def n_steps(self) -> int:
        return PROTOCOL_STEPS[self.kind]

    @property
    def registry(self) -> ModeRegistry:
        return ModeRegistry.canonical(self.n_ensembles)

    def duration(self, index: int) -> float:
        """Durée physique de l'étape `index` (1-indexée)"""
        return time_from_kappa_units(self.durations[index - 1], self.kappa)

    @classmethod
    def from_dict(cls, data: Dict, kappa: float = 1.0) -> 'ProtocolSpec':
        durations = data.get('durations', ())
        if isinstance(durations, (int, float)):
            durations = (durations,)
        return cls(
            kind=data['kind'],
            xi=float(data['xi']),
            beta_ref=float(data.get('beta_ref', ProtocolConfig.DEFAULT_BETA_REF)),
            durations=tuple(durations),
            samples_per_step=int(data.get('samples_per_step', ProtocolConfig.DEFAULT_SAMPLES_PER_STEP)),
            step_order=tuple(data.get('step_order', ())),
            kappa=kappa,
        )

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind,
            'xi': self.xi,
            'beta_ref': self.beta_ref,
            'durations': list(self.durations),
            'samples_per_step': self.samples_per_step,
            'step_order': list(self.step_order),
            'kappa': self.kappa,
        }


@dataclass(frozen=True)
class ProtocolStep:
    """Étape résolue: réglage laser, durée physique et provenance"""

    index: int
    laser: LaserConfig
    duration: float
    tag: str

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"Durée d'étape invalide: {self.duration}")

    @property
    def direction(self) -> str:
        return self.laser.direction

    def to_dict(self) -> Dict:
        return {
            'index': self.index,
            'direction': self.direction,
            'duration': self.duration,
            'rule': self.tag,
            'laser': self.laser.to_dict(),
        }


@dataclass
class StepRecord:
    """Diagnostics d'une étape exécutée"""

    step: ProtocolStep
    xi_recovered: float
    drift_spectrum: List[complex]
    decoupling: Dict[str, Any]
    end_state: GaussianState
    residual: float
    converged: bool

    def to_dict(self) -> Dict:
        return {
            **self.step.to_dict(),
            'xi_recovered': self.xi_recovered,
            'drift_spectrum': [{'real': v.real, 'imag': v.imag} for v in self.drift_spectrum],
            'decoupling': self.decoupling,
            'stationary_residual': self.residual,
            'converged': self.converged,
        }


@dataclass
class ProtocolResult:
    """Résultat d'un protocole: état final, cible, diagnostics et échantillons"""

    spec: ProtocolSpec
    final_state: GaussianState
    target: GaussianState
    steps: List[StepRecord] = field(default_factory=list)
    samples: List[Any] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)

    @property
    def fidelity(self) -> Optional[float]:
        return self.metrics.get('fidelity')

    def to_dict(self) -> Dict:
        return {
            'spec': self.spec.to_dict(),
            'metrics': self.metrics,
            'steps': [record.to_dict() for record in self.steps],
            'final_covariance': self.final_state.covariance.tolist(),
            'modes': self.final_state.registry.names,
        }
