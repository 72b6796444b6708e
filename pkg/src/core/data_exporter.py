"""
Exportateur de rapports - JSON et CSV
=====================================

Écriture d'un ReportBundle: résumé JSON déterministe (clés triées,
horodatage isolable) via orjson et séries temporelles CSV via pandas.
"""

import logging
import os
from datetime import datetime
from typing import Dict, List

import orjson
import pandas as pd

from config import ExportConfig
from src.models.report import ReportBundle
from src.utils.constants import APPLICATION_INFO, FIDELITY_CONVENTION
from src.utils.helpers import to_serializable

logger = logging.getLogger(__name__)


class ReportExporter:
    """
    Écrit les rapports dans un dossier de sortie

    Sans horodatage, les noms de fichiers sont fixes et deux exécutions
    d'une même configuration produisent des fichiers identiques octet
    pour octet.
    """

    def __init__(self, output_directory: str, timestamp: bool = True):
        """
        Initialise l'exportateur

        Args:
            output_directory: dossier de sortie (créé si absent)
            timestamp: ajoute le champ d'horodatage et suffixe les fichiers
        """
        self.output_directory = output_directory
        self.timestamp = timestamp
        os.makedirs(self.output_directory, exist_ok=True)
        self.export_stats = {
            'total_exports': 0,
            'files_created': 0,
            'start_time': datetime.now(),
        }
        logger.debug(f"📁 Exportateur initialisé - Dossier: {self.output_directory}")

    def _filename(self, base_name: str, extension: str) -> str:
        if self.timestamp:
            return ExportConfig.get_timestamped_filename(base_name, extension)
        return f"{base_name}.{extension}"

    def build_document(self, bundle: ReportBundle, csv_files: Dict[str, str]) -> Dict:
        """Document JSON complet d'un rapport"""
        document = {
            'application': APPLICATION_INFO['name'],
            'version': APPLICATION_INFO['version'],
            'fidelity_convention': FIDELITY_CONVENTION,
            **bundle.summary(),
            'csv_files': csv_files,
        }
        if self.timestamp:
            document[ExportConfig.TIMESTAMP_FIELD] = datetime.now().isoformat()
        return to_serializable(document)

    def export_csv(self, df: pd.DataFrame, base_name: str) -> str:
        """
        Exporte un DataFrame en CSV (',' séparateur, '.' décimal, en-tête)

        Returns:
            str: chemin du fichier créé
        """
        path = os.path.join(self.output_directory, self._filename(base_name, 'csv'))
        try:
            df.to_csv(
                path,
                index=False,
                sep=ExportConfig.CSV_SEPARATOR,
                decimal=ExportConfig.CSV_DECIMAL,
                encoding=ExportConfig.CSV_ENCODING,
                float_format=ExportConfig.CSV_FLOAT_FORMAT,
                header=True,
            )
        except OSError as e:
            logger.error(f"❌ Erreur export CSV: {str(e)}")
            raise
        self.export_stats['files_created'] += 1
        logger.info(f"📁 Export CSV: {path}")
        return path

    def export_report(self, bundle: ReportBundle) -> List[str]:
        """
        Écrit toutes les tables puis le résumé JSON d'un rapport

        Args:
            bundle: rapport de la commande

        Returns:
            List[str]: chemins des fichiers créés, JSON en dernier
        """
        files = []
        csv_files = {}
        for name, df in bundle.tables.items():
            path = self.export_csv(df, f"{bundle.command}_{name}")
            csv_files[name] = os.path.basename(path)
            files.append(path)

        document = self.build_document(bundle, csv_files)
        json_path = os.path.join(
            self.output_directory,
            self._filename(f"{bundle.command}_{ExportConfig.DEFAULT_REPORT_FILENAME}", 'json'),
        )
        payload = orjson.dumps(
            document,
            option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY,
        )
        with open(json_path, 'wb') as handle:
            handle.write(payload)
        files.append(json_path)

        self.export_stats['total_exports'] += 1
        self.export_stats['files_created'] += 1
        logger.info(f"📁 Rapport JSON: {json_path}")
        return files

    def get_export_statistics(self) -> Dict:
        """Retourne les statistiques d'export"""
        return self.export_stats.copy()
