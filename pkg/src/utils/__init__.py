"""
Package utilitaires du simulateur
=================================

Ce package contient les fonctions utilitaires, constantes et exceptions
partagées dans toute l'application.
"""

# Version du package utils
__version__ = '1.0.0'

# Import des modules principaux
from .constants import *
from .exceptions import *
from .helpers import *

# Fonctions publiques du package
__all__ = [
    # Helpers
    'format_duration',
    'format_complex',
    'deep_merge_dict',
    'time_from_kappa_units',
    'to_serializable',
    'measure_execution_time',

    # Exceptions
    'SimulatorError',
    'ConfigError',
    'ParameterRejectedError',
    'NotHurwitzError',
    'PhysicalityError',
    'TruncationError',
    'DimensionError',
    'UnknownModeError',

    # Constants
    'LAMBDA_MIX',
    'VACUUM_VARIANCE',
    'PARAMETER_RULES',
    'EXIT_CODES',
    'ERROR_MESSAGES',
    'SUCCESS_MESSAGES',
]
