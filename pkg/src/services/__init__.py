"""
Services métier du simulateur
=============================

Ce package contient les services de haut niveau qui orchestrent
les différentes commandes de l'application:
- ProtocolService: commande `protocol`
- AnalysisService: commandes `steady-state`, `evolve`, `modes`, `oracle`
- SweepService: commande `sweep` (pool de processus)
- ExportService: écriture des rapports
- CommandDispatcher: aiguillage commande → service
"""

from .export_service import ExportService
from .protocol_service import ProtocolService
from .analysis_service import AnalysisService
from .dispatcher import CommandDispatcher
from .sweep_service import SweepService

__all__ = [
    'ExportService',
    'ProtocolService',
    'AnalysisService',
    'CommandDispatcher',
    'SweepService',
]
