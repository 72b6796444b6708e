"""
Aiguillage des commandes
========================

Associe chaque commande à son service et garantit qu'une exécution
produit toujours un ReportBundle, y compris en cas d'erreur imprévue.
"""

import logging
from typing import Callable, Dict

from src.models.report import ReportBundle
from src.models.run_config import RunConfig
from src.services.analysis_service import AnalysisService
from src.services.protocol_service import ProtocolService
from src.utils.exceptions import SimulatorError

logger = logging.getLogger(__name__)


class CommandDispatcher:
    """Exécute une configuration validée avec le service approprié"""

    def __init__(self):
        self.protocol_service = ProtocolService()
        self.analysis_service = AnalysisService()
        self.handlers: Dict[str, Callable[[RunConfig], ReportBundle]] = {
            'protocol': self.protocol_service.cmd_protocol,
            'steady-state': self.analysis_service.cmd_steady_state,
            'evolve': self.analysis_service.cmd_evolve,
            'modes': self.analysis_service.cmd_modes,
            'oracle': self.analysis_service.cmd_oracle,
        }

    def execute(self, config: RunConfig) -> ReportBundle:
        """
        Exécute une commande (hors `sweep`)

        Args:
            config: configuration validée

        Returns:
            ReportBundle: rapport, code de sortie compris
        """
        handler = self.handlers.get(config.command)
        if handler is None:
            error = SimulatorError(f"Commande non exécutable ici: {config.command}")
            return ReportBundle.from_error(config.command, error, config.to_dict())
        try:
            return handler(config)
        except SimulatorError as e:
            logger.error(f"❌ {config.command}: {e.message}")
            return ReportBundle.from_error(config.command, e, config.to_dict())
        except Exception as e:
            logger.exception(f"❌ Erreur inattendue pendant {config.command}")
            return ReportBundle.from_error(config.command, SimulatorError(str(e)), config.to_dict())
