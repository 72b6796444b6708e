"""
Service d'Export - Couche métier pour l'écriture des rapports
=============================================================

Écrit les ReportBundle produits par les commandes et tient les
statistiques d'export.
"""

import logging
from datetime import datetime
from typing import Dict, Optional

from config import AppConfig
from src.core.data_exporter import ReportExporter
from src.models.report import ReportBundle

# Configuration du logger
logger = logging.getLogger(__name__)


class ExportService:
    """Service métier pour l'export des rapports"""

    def __init__(self, output_directory: Optional[str] = None, timestamp: bool = True):
        """
        Initialise le service d'export

        Args:
            output_directory: dossier de sortie (défaut AppConfig.OUTPUT_DIR)
            timestamp: horodatage des fichiers et du champ JSON dédié
        """
        self.exporter = ReportExporter(output_directory or AppConfig.OUTPUT_DIR, timestamp)
        self.export_statistics = {
            'total_exports': 0,
            'successful_exports': 0,
            'total_files_created': 0,
            'service_start_time': datetime.now(),
        }

        logger.debug("✅ Service d'export initialisé")

    def export_report(self, bundle: ReportBundle) -> Dict:
        """
        Écrit un rapport complet (tables CSV puis résumé JSON)

        Args:
            bundle: rapport de la commande

        Returns:
            Dict: Résultat de l'export
        """
        self.export_statistics['total_exports'] += 1
        try:
            files_created = self.exporter.export_report(bundle)
        except OSError as e:
            logger.error(f"❌ Erreur export: {str(e)}")
            return {
                'success': False,
                'error': str(e),
                'files_created': [],
            }

        self.export_statistics['successful_exports'] += 1
        self.export_statistics['total_files_created'] += len(files_created)
        return {
            'success': True,
            'files_created': files_created,
            'total_files': len(files_created),
            'report_file': files_created[-1],
        }

    def get_statistics(self) -> Dict:
        """Retourne les statistiques du service"""
        return self.export_statistics.copy()
