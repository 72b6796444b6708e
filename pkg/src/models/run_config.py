"""
Modèle de configuration d'exécution
===================================

Configuration validée d'une commande: paramètres d'entrée, sorties,
tolérances. Produite par `parse_config`, consommée par les services.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from config import AppConfig, ProtocolConfig
from src.core.collective_modes import EnsembleGeometry
from src.models.laser import LaserConfig, PhysicalParams
from src.models.protocol import ProtocolSpec


@dataclass
class RunConfig:
    """
    Configuration d'une commande

    `kappa` est le taux d'amortissement dans les unités du fichier (1 en
    unités réduites); `raw` conserve l'arbre d'entrée, défauts compris, pour
    l'écho dans les rapports.
    """

    command: str
    units: str
    kappa: float = 1.0
    protocol: Optional[ProtocolSpec] = None
    lasers: List[LaserConfig] = field(default_factory=list)
    physical: Optional[PhysicalParams] = None
    geometry: Optional[EnsembleGeometry] = None
    steady_state: Dict[str, Any] = field(default_factory=dict)
    evolve: Dict[str, Any] = field(default_factory=dict)
    oracle: Dict[str, Any] = field(default_factory=dict)
    sweep: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    output_dir: str = AppConfig.OUTPUT_DIR
    timestamp: bool = True
    threshold: float = ProtocolConfig.FIDELITY_THRESHOLD
    seed: Optional[int] = None
    raw: Dict[str, Any] = field(default_factory=dict)
    source: Optional[str] = None

    def to_dict(self) -> Dict:
        """Écho de la configuration (défauts remplis)"""
        return dict(self.raw)
