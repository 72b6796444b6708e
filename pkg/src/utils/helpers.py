"""
Fonctions utilitaires et helpers du simulateur
==============================================

Fonctions d'aide générales: formatage, fusion de dictionnaires,
conversion d'unités, sérialisation des objets numériques et mesure
du temps d'exécution.
"""

import functools
import logging
import time
from typing import Any, Dict

import numpy as np

logger = logging.getLogger(__name__)


# ==============================================================================
# FORMATAGE
# ==============================================================================

def format_duration(seconds: float) -> str:
    """
    Formate une durée en secondes en format lisible

    Args:
        seconds: Durée en secondes

    Returns:
        str: Durée formatée (ex: "2m 15s")
    """
    if seconds < 60:
        return f"{seconds:.1f}s"

    minutes = int(seconds // 60)
    remaining_seconds = int(seconds % 60)

    if minutes < 60:
        return f"{minutes}m {remaining_seconds}s"

    hours = minutes // 60
    return f"{hours}h {minutes % 60}m"


def format_complex(value: complex, digits: int = 3) -> str:
    """Nombre complexe sous la forme a±bi (notation scientifique)"""
    value = complex(value)
    return f"{value.real:.{digits}e}{value.imag:+.{digits}e}i"


# ==============================================================================
# DICTIONNAIRES
# ==============================================================================

def deep_merge_dict(dict1: Dict, dict2: Dict) -> Dict:
    """
    Fusionne récursivement deux dictionnaires

    Args:
        dict1: Premier dictionnaire
        dict2: Second dictionnaire (prioritaire)

    Returns:
        Dict: Dictionnaire fusionné
    """
    result = dict1.copy()

    for key, value in dict2.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge_dict(result[key], value)
        else:
            result[key] = value

    return result


# ==============================================================================
# UNITÉS
# ==============================================================================

def time_from_kappa_units(duration: float, kappa: float) -> float:
    """Durée en 1/κ → durée physique"""
    return duration / kappa


# ==============================================================================
# SÉRIALISATION
# ==============================================================================

def to_serializable(obj: Any) -> Any:
    """
    Convertit récursivement les objets numériques en types JSON

    Les complexes deviennent {'real', 'imag'}, les tableaux numpy des listes
    (éventuellement de complexes convertis), les tuples des listes.
    """
    if isinstance(obj, dict):
        return {str(key): to_serializable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_serializable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_serializable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {'real': float(obj.real), 'imag': float(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if hasattr(obj, 'to_dict'):
        return to_serializable(obj.to_dict())
    return obj


# ==============================================================================
# PERFORMANCE
# ==============================================================================

def measure_execution_time(func):
    """
    Décorateur pour mesurer le temps d'exécution

    Args:
        func: Fonction à mesurer

    Returns:
        Function: Fonction décorée
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        duration = time.perf_counter() - start_time
        logger.info(f"⏱️ {func.__name__} exécuté en {format_duration(duration)}")
        return result

    return wrapper
