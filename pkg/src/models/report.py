"""
Modèle de rapport d'exécution
=============================

ReportBundle: résumé JSON (métriques, contrôles, paramètres résolus),
tables CSV et code de sortie d'une commande.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import pandas as pd

from src.utils.constants import EXIT_CODES
from src.utils.exceptions import SimulatorError


@dataclass
class ReportBundle:
    """
    Résultat d'une commande prêt à être écrit

    `tables` associe un nom de fichier CSV (sans extension) à un DataFrame;
    `checks` rassemble les contrôles d'invariants (nom → réussite).
    """

    command: str
    results: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_CODES['success']
    reason: Optional[str] = None
    error: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.exit_code == EXIT_CODES['success']

    @classmethod
    def from_error(cls, command: str, error: SimulatorError,
                   config: Optional[Dict[str, Any]] = None) -> 'ReportBundle':
        """Rapport d'échec: la raison et les détails de l'erreur vont dans `results`"""
        return cls(
            command=command,
            results={'error': error.to_dict()},
            config=config or {},
            exit_code=error.exit_code,
            reason=error.reason,
            error=error.message,
        )

    def summary(self) -> Dict:
        """Partie JSON du rapport (sans version ni horodatage)"""
        return {
            'command': self.command,
            'success': self.success,
            'exit_code': self.exit_code,
            'reason': self.reason,
            'error': self.error,
            'config': self.config,
            'checks': self.checks,
            'results': self.results,
            'tables': {name: list(df.columns) for name, df in self.tables.items()},
        }
