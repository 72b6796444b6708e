"""
Service Protocole - Orchestration des protocoles de préparation
===============================================================

Exécute un protocole configuré, rassemble métriques, paramètres résolus
(avec leur règle de résolution) et série temporelle dans un ReportBundle.
Le code de sortie vaut 0 si et seulement si la fidélité atteint le seuil.
"""

import logging
from datetime import datetime
from typing import Dict

from src.core.protocols import run_protocol
from src.models.protocol import ProtocolResult
from src.models.report import ReportBundle
from src.models.run_config import RunConfig
from src.models.timeseries import timeseries_to_dataframe, validate_timeseries_data
from src.utils.constants import (
    EXIT_CODE_BELOW_THRESHOLD,
    EXIT_CODES,
    HAMILTONIAN_EQUATIONS,
    PARAMETER_EQUATIONS,
    SUCCESS_MESSAGES,
)
from src.utils.exceptions import SimulatorError
from src.utils.helpers import measure_execution_time

logger = logging.getLogger(__name__)


class ProtocolService:
    """
    Service métier pour la commande `protocol`

    Coordonne l'exécution, le contrôle des échantillons et la mise en
    forme du rapport.
    """

    def __init__(self):
        self.service_statistics = {
            'total_runs': 0,
            'successful_runs': 0,
            'below_threshold_runs': 0,
            'failed_runs': 0,
            'service_start_time': datetime.now(),
        }

        logger.debug("✅ Service protocole initialisé")

    @measure_execution_time
    def cmd_protocol(self, config: RunConfig) -> ReportBundle:
        """
        Exécute le protocole d'une configuration

        Args:
            config: configuration validée (section `protocol` requise)

        Returns:
            ReportBundle: métriques, étapes résolues, série temporelle
        """
        self.service_statistics['total_runs'] += 1
        spec = config.protocol
        logger.info(f"🔄 Protocole {spec.kind}: ξ = {spec.xi:.6g}, étapes {list(spec.step_order)}")

        try:
            result = run_protocol(spec)
        except SimulatorError as e:
            self.service_statistics['failed_runs'] += 1
            logger.error(f"❌ Protocole interrompu ({e.reason}): {e.message}")
            return ReportBundle.from_error('protocol', e, config.to_dict())

        bundle = self._build_bundle(result, config)
        if bundle.success:
            self.service_statistics['successful_runs'] += 1
            logger.info(f"✅ {SUCCESS_MESSAGES['protocol_done']}: fidélité {result.fidelity:.6f}")
        else:
            self.service_statistics['below_threshold_runs'] += 1
            logger.warning(
                f"⚠️ Fidélité {result.fidelity:.6f} sous le seuil {config.threshold:g}"
            )
        return bundle

    def _build_bundle(self, result: ProtocolResult, config: RunConfig) -> ReportBundle:
        _, errors, warnings = validate_timeseries_data(result.samples)
        for warning in warnings:
            logger.warning(f"⚠️ {warning}")

        metrics = result.metrics
        passed = metrics['fidelity'] >= config.threshold
        checks = {
            'fidelity_above_threshold': passed,
            'frame_vacuum_above_threshold': metrics['frame_vacuum_fidelity'] >= config.threshold,
            'all_steps_converged': metrics['all_steps_converged'],
            'all_steps_decoupled': metrics['all_steps_decoupled'],
            'timeseries_valid': not errors,
        }
        results = {
            'metrics': metrics,
            'threshold': config.threshold,
            'resolved_parameters': [self._resolved_parameters(config.protocol.kind, record.step) for record in result.steps],
            'steps': [record.to_dict() for record in result.steps],
            'final_state': result.final_state.to_dict(),
            'timeseries_errors': errors,
        }
        return ReportBundle(
            command='protocol',
            results=results,
            checks=checks,
            tables={'timeseries': timeseries_to_dataframe(result.samples)},
            config=config.to_dict(),
            exit_code=EXIT_CODES['success'] if passed else EXIT_CODE_BELOW_THRESHOLD,
            reason=None if passed else 'below_threshold',
        )

    @staticmethod
    def _resolved_parameters(kind: str, step) -> Dict:
        laser = step.laser
        return {
            'step': step.index,
            'rule': step.tag,
            'equation': PARAMETER_EQUATIONS[kind],
            'hamiltonian_equation': HAMILTONIAN_EQUATIONS[laser.direction],
            'direction': laser.direction,
            'beta_u': list(laser.beta_u),
            'beta_s': list(laser.beta_s),
            'phi_u': list(laser.phi_u),
            'phi_s': list(laser.phi_s),
            'duration': step.duration,
        }

    def get_statistics(self) -> Dict:
        """Retourne les statistiques du service"""
        return self.service_statistics.copy()
