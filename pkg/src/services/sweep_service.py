"""
Service de Balayage - Exécution parallèle de configurations
===========================================================

Chaque configuration listée dans la section `sweep` est validée et
exécutée dans un processus isolé; ses fichiers sont écrits dans
`<sortie>/run_<index>`. Les résultats sont fusionnés dans l'ordre des
configurations, quel que soit l'ordre de fin des processus.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from typing import Any, Dict, Optional

from tqdm import tqdm

from config import SweepConfig
from src.models.report import ReportBundle
from src.models.run_config import RunConfig
from src.services.dispatcher import CommandDispatcher
from src.services.export_service import ExportService
from src.utils.constants import EXIT_CODES
from src.utils.exceptions import ConfigError, SimulatorError
from src.utils.validators import parse_config, parse_config_data

logger = logging.getLogger(__name__)


def run_sweep_item(payload: Dict[str, Any]) -> Dict:
    """
    Exécute une configuration du balayage (point d'entrée des processus)

    Args:
        payload: index, configuration (chemin ou arbre), dossier de base,
                 dossier de sortie, horodatage, seuil imposé

    Returns:
        Dict: résumé sérialisable de l'exécution
    """
    index = payload['index']
    item = payload['item']
    source = item if isinstance(item, str) else f"sweep[{index}]"
    summary = {'index': index, 'source': source}
    overrides = {} if payload.get('threshold') is None else {'threshold': payload['threshold']}
    try:
        if isinstance(item, str):
            path = item if os.path.isabs(item) else os.path.join(payload['base_dir'], item)
            config = parse_config(path, overrides)
        else:
            config = parse_config_data({**item, **overrides}, source=source)
        if config.command == 'sweep':
            raise ConfigError(["Un balayage ne peut pas contenir de balayage"])
    except SimulatorError as e:
        bundle = ReportBundle.from_error('sweep-item', e)
    else:
        bundle = CommandDispatcher().execute(config)

    output_dir = os.path.join(payload['output_dir'], f"run_{index:03d}")
    export = ExportService(output_dir, payload['timestamp']).export_report(bundle)
    summary.update({
        'command': bundle.command,
        'exit_code': bundle.exit_code,
        'reason': bundle.reason,
        'success': bundle.success,
        'checks': bundle.checks,
        'fidelity': bundle.results.get('metrics', {}).get('fidelity'),
        'report_file': os.path.relpath(export['report_file'], payload['output_dir']) if export['success'] else None,
    })
    return summary


class SweepService:
    """Service métier pour la commande `sweep`"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers
        self.service_statistics = {
            'total_sweeps': 0,
            'total_items': 0,
            'failed_items': 0,
            'service_start_time': datetime.now(),
        }

        logger.debug("✅ Service de balayage initialisé")

    def cmd_sweep(self, config: RunConfig, output_dir: str, timestamp: bool = True,
                  threshold: Optional[float] = None) -> ReportBundle:
        """
        Exécute toutes les configurations d'un balayage

        Args:
            config: configuration validée (section `sweep`)
            output_dir: dossier racine des rapports individuels
            timestamp: horodatage des rapports individuels
            threshold: seuil de fidélité imposé à chaque configuration

        Returns:
            ReportBundle: résumé fusionné; code de sortie du premier échec
        """
        items = config.sweep['configs']
        workers = self.workers or config.sweep.get('workers') or SweepConfig.DEFAULT_WORKERS
        workers = max(1, min(int(workers), len(items)))
        base_dir = os.path.dirname(os.path.abspath(config.source)) if config.source else os.getcwd()
        payloads = [
            {
                'index': index,
                'item': item,
                'base_dir': base_dir,
                'output_dir': output_dir,
                'timestamp': timestamp,
                'threshold': threshold,
            }
            for index, item in enumerate(items)
        ]

        logger.info(f"🔄 Balayage de {len(items)} configurations sur {workers} processus")
        progress = dict(total=len(payloads), disable=not SweepConfig.SHOW_PROGRESS, desc='sweep')
        if workers == 1:
            summaries = [run_sweep_item(payload) for payload in tqdm(payloads, **progress)]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                summaries = list(tqdm(executor.map(run_sweep_item, payloads), **progress))
        summaries.sort(key=lambda summary: summary['index'])

        failures = [summary for summary in summaries if not summary['success']]
        self.service_statistics['total_sweeps'] += 1
        self.service_statistics['total_items'] += len(summaries)
        self.service_statistics['failed_items'] += len(failures)
        if failures:
            logger.warning(f"⚠️ {len(failures)} configuration(s) en échec sur {len(summaries)}")
        else:
            logger.info(f"✅ Balayage terminé: {len(summaries)} configurations")

        first_failure = failures[0] if failures else None
        return ReportBundle(
            command='sweep',
            results={'runs': summaries, 'workers': workers},
            checks={'all_succeeded': not failures},
            config=config.to_dict(),
            exit_code=first_failure['exit_code'] if first_failure else EXIT_CODES['success'],
            reason=first_failure['reason'] if first_failure else None,
        )

    def get_statistics(self) -> Dict:
        """Retourne les statistiques du service"""
        return self.service_statistics.copy()
