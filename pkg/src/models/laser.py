"""
Modèles des paramètres laser et physiques
=========================================

- EnsembleDrive / PhysicalParams: fréquences de Rabi, couplages de cavité,
  désaccords et fréquences des niveaux, en rad/s.
- LaserConfig: couplages effectifs β_u, β_s et phases par ensemble pour une
  direction de propagation donnée.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

from src.utils.constants import DIRECTIONS


# ==============================================================================
# PARAMÈTRES PHYSIQUES
# ==============================================================================

@dataclass(frozen=True)
class EnsembleDrive:
    """Pilotage d'un ensemble atomique (rad/s, phases en rad)"""

    rabi_u: float
    rabi_s: float
    g_u: float
    g_s: float
    delta_u: float
    delta_s: float
    phi_u: float = 0.0
    phi_s: float = 0.0

    @classmethod
    def from_dict(cls, data: Dict) -> 'EnsembleDrive':
        return cls(**{key: float(value) for key, value in data.items()})


@dataclass(frozen=True)
class PhysicalParams:
    """
    Paramètres physiques de la cavité en anneau

    Les fréquences des niveaux et des lasers ne servent qu'au contrôle des
    conditions de résonance; δ_c = ω_c - (ω_Ls - ω_1).
    """

    ensembles: Tuple[EnsembleDrive, ...]
    n_atoms: int
    kappa: float
    gamma: float
    omega_c: float = 0.0
    omega_u: float = 0.0
    omega_s: float = 0.0
    omega_1: float = 0.0
    omega_lu: float = 0.0
    omega_ls: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'ensembles', tuple(self.ensembles))
        if self.n_atoms < 1:
            raise ValueError(f"Nombre d'atomes invalide: {self.n_atoms}")
        if self.kappa <= 0:
            raise ValueError(f"κ doit être strictement positif: {self.kappa}")
        if not self.ensembles:
            raise ValueError("Au moins un ensemble atomique est requis")

    @property
    def cavity_detuning(self) -> float:
        return self.omega_c - (self.omega_ls - self.omega_1)

    @classmethod
    def from_dict(cls, data: Dict) -> 'PhysicalParams':
        data = dict(data)
        ensembles = tuple(EnsembleDrive.from_dict(item) for item in data.pop('ensembles'))
        n_atoms = int(data.pop('n_atoms'))
        return cls(ensembles=ensembles, n_atoms=n_atoms,
                   **{key: float(value) for key, value in data.items()})

    def to_dict(self) -> Dict:
        payload = asdict(self)
        payload['ensembles'] = [asdict(drive) for drive in self.ensembles]
        return payload


# ==============================================================================
# CONFIGURATION LASER EFFECTIVE
# ==============================================================================

@dataclass(frozen=True)
class LaserConfig:
    """
    Couplages effectifs d'une direction de propagation

    La stabilité exige Σₙβ_un² > Σₙβ_sn² (β_u > β_s pour un seul ensemble);
    elle est contrôlée par `is_stable`, pas à la construction, pour que les
    balayages puissent atteindre la frontière β_s = β_u.
    """

    direction: str
    beta_u: Tuple[float, ...]
    beta_s: Tuple[float, ...]
    phi_u: Tuple[float, ...] = field(default=())
    phi_s: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"Direction inconnue: {self.direction!r}")
        beta_u = tuple(float(b) for b in self.beta_u)
        beta_s = tuple(float(b) for b in self.beta_s)
        n = len(beta_u)
        phi_u = tuple(float(p) for p in self.phi_u) or (0.0,) * n
        phi_s = tuple(float(p) for p in self.phi_s) or (0.0,) * n
        if n == 0 or not (len(beta_s) == len(phi_u) == len(phi_s) == n):
            raise ValueError("β_u, β_s, φ_u, φ_s doivent avoir une entrée par ensemble")
        if any(b < 0 for b in beta_u + beta_s):
            raise ValueError("Les couplages β doivent être positifs ou nuls")
        object.__setattr__(self, 'beta_u', beta_u)
        object.__setattr__(self, 'beta_s', beta_s)
        object.__setattr__(self, 'phi_u', phi_u)
        object.__setattr__(self, 'phi_s', phi_s)

    @property
    def n_ensembles(self) -> int:
        return len(self.beta_u)

    @property
    def norm_u(self) -> float:
        return math.sqrt(sum(b * b for b in self.beta_u))

    @property
    def norm_s(self) -> float:
        return math.sqrt(sum(b * b for b in self.beta_s))

    @property
    def effective_ratio(self) -> float:
        """√(Σβ_s²/Σβ_u²), égal à β_s/β_u pour un ensemble"""
        if self.norm_u == 0.0:
            return math.inf if self.norm_s > 0 else 0.0
        return self.norm_s / self.norm_u

    @property
    def is_stable(self) -> bool:
        return self.norm_u > self.norm_s

    def squeezing_ratio(self, ensemble: int) -> Optional[complex]:
        """r = (β_s/β_u) e^{-i(φ_s - φ_u)} pour l'ensemble n (1-indexé)"""
        i = ensemble - 1
        if self.beta_u[i] == 0.0:
            return None
        phase = self.phi_s[i] - self.phi_u[i]
        return (self.beta_s[i] / self.beta_u[i]) * complex(math.cos(phase), -math.sin(phase))

    def mirrored(self) -> 'LaserConfig':
        """Même réglage dans la direction opposée"""
        other = 'anticlockwise' if self.direction == 'clockwise' else 'clockwise'
        return LaserConfig(other, self.beta_u, self.beta_s, self.phi_u, self.phi_s)

    def scaled(self, factor: float) -> 'LaserConfig':
        return LaserConfig(
            self.direction,
            tuple(b * factor for b in self.beta_u),
            tuple(b * factor for b in self.beta_s),
            self.phi_u,
            self.phi_s,
        )

    @classmethod
    def from_dict(cls, data: Dict) -> 'LaserConfig':
        def _tuple(value) -> Tuple[float, ...]:
            if value is None:
                return ()
            if isinstance(value, (int, float)):
                return (float(value),)
            return tuple(float(v) for v in value)

        return cls(
            direction=data['direction'],
            beta_u=_tuple(data['beta_u']),
            beta_s=_tuple(data['beta_s']),
            phi_u=_tuple(data.get('phi_u')),
            phi_s=_tuple(data.get('phi_s')),
        )

    def to_dict(self) -> Dict:
        return {
            'direction': self.direction,
            'beta_u': list(self.beta_u),
            'beta_s': list(self.beta_s),
            'phi_u': list(self.phi_u),
            'phi_s': list(self.phi_s),
            'effective_ratio': self.effective_ratio,
        }

    def ensembles(self) -> List[int]:
        return list(range(1, self.n_ensembles + 1))
