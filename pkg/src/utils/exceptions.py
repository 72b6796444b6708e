"""
Exceptions du simulateur de compression multimode
=================================================

Hiérarchie d'erreurs partagée par tous les modules. Chaque erreur porte
un code de sortie et une raison lisible par machine, que les services
recopient dans leurs dictionnaires de résultat et que `run.py` convertit
en code de sortie du processus.
"""

from typing import Any, Dict, List, Optional, Sequence

from .constants import EXIT_CODES


class SimulatorError(Exception):
    """Erreur de base du simulateur"""

    exit_code = EXIT_CODES['internal_error']
    reason = 'internal_error'

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """
        Représentation sérialisable de l'erreur

        Returns:
            Dict: raison, message, code de sortie et détails
        """
        payload = {
            'reason': self.reason,
            'message': self.message,
            'exit_code': self.exit_code,
        }
        payload.update(self.details)
        return payload


class ConfigError(SimulatorError):
    """Configuration invalide: toutes les violations sont listées"""

    exit_code = EXIT_CODES['config_error']
    reason = 'config_error'

    def __init__(self, violations: Sequence[str], message: Optional[str] = None):
        self.violations: List[str] = list(violations)
        text = message or "Configuration invalide: " + "; ".join(self.violations)
        super().__init__(text, violations=self.violations)


class ParameterRejectedError(SimulatorError):
    """Paramètres laser hors de la marge de stabilité"""

    exit_code = EXIT_CODES['parameter_rejected']
    reason = 'parameter_rejected'


class NotHurwitzError(SimulatorError):
    """Matrice de dérive non Hurwitz: au moins un mode n'est pas amorti"""

    exit_code = EXIT_CODES['parameter_rejected']
    reason = 'not_hurwitz'

    def __init__(self, message: str, eigenvalues: Sequence[complex] = (),
                 undamped_modes: Sequence[str] = ()):
        self.eigenvalues = [complex(value) for value in eigenvalues]
        self.undamped_modes = list(undamped_modes)
        super().__init__(
            message,
            eigenvalues=[{'real': v.real, 'imag': v.imag} for v in self.eigenvalues],
            undamped_modes=self.undamped_modes,
        )


class PhysicalityError(SimulatorError):
    """Matrice de covariance non physique ou entrée non finie"""

    exit_code = EXIT_CODES['physicality_error']
    reason = 'physicality_error'


class TruncationError(SimulatorError):
    """Population du dernier niveau de Fock au-dessus du seuil"""

    exit_code = EXIT_CODES['truncation_error']
    reason = 'truncation_error'


class DimensionError(SimulatorError, ValueError):
    """Dimensions incompatibles entre états, transformations et registres"""

    reason = 'dimension_mismatch'


class UnknownModeError(SimulatorError, KeyError):
    """Étiquette de mode absente du registre"""

    reason = 'unknown_mode'

    def __str__(self) -> str:
        return self.message
