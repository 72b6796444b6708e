"""
Fonctions de validation du simulateur
=====================================

Lecture et validation des fichiers de configuration JSON: contrôle
structurel par schéma jsonschema (Draft 7), puis règles sémantiques
(unités, stabilité, désaccords, résonances). Toutes les violations sont
collectées avant de lever une seule ConfigError.
"""

import logging
import math
import os
from typing import Any, Dict, List, Optional, Tuple, Union

import orjson
from jsonschema import Draft7Validator

from config import AppConfig, HamiltonianConfig, ModesConfig, OracleConfig, ProtocolConfig, ValidationConfig
from src.core.collective_modes import EnsembleGeometry
from src.core.hamiltonian_builder import (
    check_resonance_conditions,
    laser_config_from_params,
    validate_physical_params,
)
from src.models.laser import LaserConfig, PhysicalParams
from src.models.protocol import ProtocolSpec
from src.models.run_config import RunConfig
from src.utils.constants import DIRECTIONS, ERROR_MESSAGES, PROTOCOL_KINDS, SUPPORTED_UNITS
from src.utils.exceptions import ConfigError
from src.utils.helpers import deep_merge_dict

logger = logging.getLogger(__name__)

COMMANDS = ('protocol', 'steady-state', 'evolve', 'modes', 'oracle', 'sweep')

# Section requise par commande
REQUIRED_SECTIONS = {
    'protocol': ['protocol'],
    'steady-state': ['lasers'],
    'evolve': ['lasers', 'evolve'],
    'modes': ['geometry'],
    'oracle': ['oracle'],
    'sweep': ['sweep'],
}


# ==============================================================================
# SCHÉMA
# ==============================================================================

_NUMBER_OR_LIST = {
    'oneOf': [
        {'type': 'number', 'minimum': 0},
        {'type': 'array', 'items': {'type': 'number', 'minimum': 0}, 'minItems': 1, 'maxItems': 2},
    ]
}

_PHASES = {
    'oneOf': [
        {'type': 'number'},
        {'type': 'array', 'items': {'type': 'number'}, 'minItems': 1, 'maxItems': 2},
    ]
}

LASER_SCHEMA = {
    'type': 'object',
    'required': ['direction', 'beta_u', 'beta_s'],
    'properties': {
        'direction': {'enum': list(DIRECTIONS)},
        'beta_u': _NUMBER_OR_LIST,
        'beta_s': _NUMBER_OR_LIST,
        'phi_u': _PHASES,
        'phi_s': _PHASES,
    },
    'additionalProperties': False,
}

DRIVE_SCHEMA = {
    'type': 'object',
    'required': ['rabi_u', 'rabi_s', 'g_u', 'g_s', 'delta_u', 'delta_s'],
    'properties': {
        key: {'type': 'number'}
        for key in ('rabi_u', 'rabi_s', 'g_u', 'g_s', 'delta_u', 'delta_s', 'phi_u', 'phi_s')
    },
    'additionalProperties': False,
}

CONFIG_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'type': 'object',
    'required': ['command', 'units'],
    'properties': {
        'command': {'enum': list(COMMANDS)},
        'units': {'enum': list(SUPPORTED_UNITS)},
        'kappa': {'type': 'number', 'exclusiveMinimum': 0},
        'threshold': {'type': 'number', 'minimum': 0, 'maximum': 1},
        'seed': {'type': 'integer'},
        'protocol': {
            'type': 'object',
            'required': ['kind', 'xi'],
            'properties': {
                'kind': {'enum': list(PROTOCOL_KINDS)},
                'xi': {'type': 'number', 'minimum': 0, 'maximum': ValidationConfig.MAX_XI},
                'beta_ref': {'type': 'number', 'exclusiveMinimum': 0},
                'durations': {
                    'oneOf': [
                        {'type': 'number', 'exclusiveMinimum': 0, 'maximum': ValidationConfig.MAX_DURATION},
                        {'type': 'array', 'minItems': 1, 'maxItems': 4,
                         'items': {'type': 'number', 'exclusiveMinimum': 0,
                                   'maximum': ValidationConfig.MAX_DURATION}},
                    ]
                },
                'samples_per_step': {'type': 'integer', 'minimum': 1,
                                     'maximum': ValidationConfig.MAX_SAMPLES_PER_STEP},
                'step_order': {'type': 'array', 'items': {'type': 'integer', 'minimum': 1, 'maximum': 4},
                               'uniqueItems': True},
            },
            'additionalProperties': False,
        },
        'lasers': {'type': 'array', 'items': LASER_SCHEMA},
        'physical': {
            'type': 'object',
            'required': ['n_atoms', 'gamma', 'ensembles'],
            'properties': {
                'n_atoms': {'type': 'integer', 'minimum': 1},
                'gamma': {'type': 'number', 'minimum': 0},
                'ensembles': {'type': 'array', 'items': DRIVE_SCHEMA, 'minItems': 1, 'maxItems': 2},
                'directions': {'type': 'array', 'items': {'enum': list(DIRECTIONS)}},
                **{key: {'type': 'number'}
                   for key in ('omega_c', 'omega_u', 'omega_s', 'omega_1', 'omega_lu', 'omega_ls')},
            },
            'additionalProperties': False,
        },
        'steady_state': {
            'type': 'object',
            'properties': {
                'restrict_to': {
                    'oneOf': [
                        {'enum': ['coupled']},
                        {'type': 'array', 'items': {'type': 'string'}, 'minItems': 1},
                    ]
                },
                'frame': {'enum': ['lab', 'transformed']},
                'beta_sweep': {
                    'type': 'object',
                    'properties': {
                        'points': {'type': 'integer', 'minimum': 2, 'maximum': 1000},
                        'min_ratio': {'type': 'number', 'minimum': 0},
                        'max_ratio': {'type': 'number', 'exclusiveMinimum': 0, 'maximum': 1},
                    },
                    'additionalProperties': False,
                },
            },
            'additionalProperties': False,
        },
        'geometry': {
            'type': 'object',
            'required': ['N'],
            'properties': {
                'N': {'type': 'integer', 'minimum': 1},
                'kd': {'type': 'number', 'exclusiveMinimum': 0},
                'kL': {'type': 'number', 'exclusiveMinimum': 0},
                'k': {'type': 'number', 'exclusiveMinimum': 0},
                'threshold': {'type': 'number', 'exclusiveMinimum': 0, 'maximum': 1},
            },
            'oneOf': [{'required': ['kd']}, {'required': ['kL']}],
            'additionalProperties': False,
        },
        'oracle': {
            'type': 'object',
            'required': ['system'],
            'properties': {
                'system': {'enum': ['mixer', 'squeezer_mixer']},
                'cutoff': {'type': 'integer', 'minimum': 2, 'maximum': OracleConfig.MAX_CUTOFF},
                'times': {'type': 'array', 'items': {'type': 'number', 'minimum': 0}, 'minItems': 1},
                'g': {'type': 'number', 'minimum': 0},
                'beta_u': {'type': 'number', 'minimum': 0},
                'beta_s': {'type': 'number', 'minimum': 0},
                'initial_squeezing': {'type': 'number'},
                'damping': {'type': 'boolean'},
            },
            'additionalProperties': False,
        },
        'evolve': {
            'type': 'object',
            'required': ['duration'],
            'properties': {
                'duration': {'type': 'number', 'exclusiveMinimum': 0},
                'samples': {'type': 'integer', 'minimum': 1, 'maximum': ValidationConfig.MAX_SAMPLES_PER_STEP},
            },
            'additionalProperties': False,
        },
        'tolerances': {
            'type': 'object',
            'properties': {
                'deficit_threshold': {'type': 'number', 'exclusiveMinimum': 0},
                'convergence': {'type': 'number', 'exclusiveMinimum': 0},
                'oracle_comparison': {'type': 'number', 'exclusiveMinimum': 0},
            },
            'additionalProperties': False,
        },
        'output': {
            'type': 'object',
            'properties': {
                'dir': {'type': 'string', 'minLength': 1},
                'timestamp': {'type': 'boolean'},
            },
            'additionalProperties': False,
        },
        'sweep': {
            'type': 'object',
            'required': ['configs'],
            'properties': {
                'configs': {
                    'type': 'array',
                    'minItems': 1,
                    'items': {'oneOf': [{'type': 'string'}, {'type': 'object'}]},
                },
                'workers': {'type': 'integer', 'minimum': 1},
            },
            'additionalProperties': False,
        },
    },
    'additionalProperties': False,
}


# ==============================================================================
# VALIDATIONS ÉLÉMENTAIRES
# ==============================================================================

def validate_numeric_range(value: Union[int, float], min_val: float = None,
                           max_val: float = None) -> Tuple[bool, str]:
    """
    Valide qu'une valeur numérique finie est dans une plage

    Args:
        value: Valeur à valider
        min_val: Borne inférieure (incluse)
        max_val: Borne supérieure (incluse)

    Returns:
        Tuple[bool, str]: (Validité, message d'erreur)
    """
    try:
        num_value = float(value)
    except (ValueError, TypeError):
        return False, "Valeur doit être un nombre"
    if not math.isfinite(num_value):
        return False, "Valeur doit être finie"
    if min_val is not None and num_value < min_val:
        return False, f"Valeur {num_value} inférieure au minimum {min_val}"
    if max_val is not None and num_value > max_val:
        return False, f"Valeur {num_value} supérieure au maximum {max_val}"
    return True, ""


def validate_units(units: Optional[str], kappa: Optional[float]) -> Tuple[bool, str]:
    """
    Cohérence entre les unités déclarées et κ

    Returns:
        Tuple[bool, str]: (Validité, message d'erreur)
    """
    if units == 'rad/s' and kappa is None:
        return False, ERROR_MESSAGES['kappa_required']
    if units == 'kappa' and kappa is not None and abs(float(kappa) - 1.0) > 1e-12:
        return False, ERROR_MESSAGES['kappa_not_unit']
    return True, ""


def validate_laser_config(laser: LaserConfig, label: str = 'laser') -> Tuple[bool, str]:
    """Règle de stabilité Σβ_s² < Σβ_u² et nombre d'ensembles supporté"""
    if laser.n_ensembles > 2:
        return False, f"{label}: au plus deux ensembles sont supportés"
    if not laser.is_stable:
        return False, (
            f"{label}: {ERROR_MESSAGES['stability_rule']} "
            f"(√Σβ_s² = {laser.norm_s:.6g} ≥ √Σβ_u² = {laser.norm_u:.6g})"
        )
    return True, ""


def get_validation_summary(validations: List[Tuple[bool, str]]) -> Dict:
    """
    Génère un résumé de plusieurs validations

    Args:
        validations: Liste de tuples (validité, message)

    Returns:
        Dict: Résumé des validations
    """
    total = len(validations)
    passed = sum(1 for valid, _ in validations if valid)
    errors = [msg for valid, msg in validations if not valid and msg]
    return {
        'total_validations': total,
        'passed': passed,
        'failed': total - passed,
        'errors': errors,
        'overall_valid': passed == total,
    }


def _schema_errors(data: Any) -> List[str]:
    validator = Draft7Validator(CONFIG_SCHEMA)
    errors = []
    for error in sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path))):
        location = '/'.join(str(part) for part in error.absolute_path) or '<racine>'
        errors.append(f"{location}: {error.message}")
    return errors


# ==============================================================================
# LECTURE DE LA CONFIGURATION
# ==============================================================================

def load_config_file(path: str) -> Dict:
    """
    Lit un fichier JSON

    Raises:
        ConfigError: fichier absent ou JSON invalide
    """
    if not os.path.isfile(path):
        raise ConfigError([f"Fichier de configuration introuvable: {path}"])
    with open(path, 'rb') as handle:
        content = handle.read()
    try:
        return orjson.loads(content)
    except orjson.JSONDecodeError as exc:
        raise ConfigError([f"JSON invalide dans {path}: {exc}"]) from exc


def parse_config(path: str, overrides: Optional[Dict] = None) -> RunConfig:
    """
    Lit et valide un fichier de configuration

    Args:
        path: chemin du fichier JSON
        overrides: valeurs prioritaires (options de ligne de commande)

    Returns:
        RunConfig: configuration validée, défauts remplis

    Raises:
        ConfigError: liste complète des violations
    """
    data = load_config_file(path)
    if overrides:
        data = deep_merge_dict(data, overrides) if isinstance(data, dict) else data
    return parse_config_data(data, source=path)


def parse_config_data(data: Any, source: Optional[str] = None) -> RunConfig:
    """
    Valide un arbre de configuration déjà chargé

    Args:
        data: arbre JSON
        source: chemin d'origine (pour les messages)

    Returns:
        RunConfig: configuration validée
    """
    errors = _schema_errors(data)
    if not isinstance(data, dict):
        raise ConfigError(errors or ["La configuration doit être un objet JSON"])

    command = data.get('command')
    units = data.get('units')
    kappa_value = data.get('kappa')

    if isinstance(kappa_value, (int, float)) or kappa_value is None:
        valid, message = validate_units(units, kappa_value)
        if not valid:
            errors.append(message)

    for section in REQUIRED_SECTIONS.get(command, []):
        if section not in data and not (section == 'lasers' and 'physical' in data):
            errors.append(f"Section '{section}' requise pour la commande '{command}'")

    if errors:
        raise ConfigError(errors)

    kappa = float(kappa_value) if kappa_value is not None else 1.0
    config = RunConfig(command=command, units=units, kappa=kappa, source=source)
    raw = dict(data)

    _parse_protocol(data, config, raw, errors)
    _parse_lasers(data, config, errors)
    _parse_physical(data, config, errors)
    _parse_sections(data, config, raw, errors)

    if errors:
        raise ConfigError(errors)

    config.raw = raw
    logger.debug(f"Configuration '{command}' validée ({source or 'en mémoire'})")
    return config


def _parse_protocol(data: Dict, config: RunConfig, raw: Dict, errors: List[str]) -> None:
    if 'protocol' not in data:
        return
    section = data['protocol']
    try:
        spec = ProtocolSpec.from_dict(section, kappa=config.kappa)
    except ValueError as exc:
        errors.append(f"protocol: {exc}")
        return
    config.protocol = spec
    raw['protocol'] = {key: value for key, value in spec.to_dict().items() if key != 'kappa'}


def _parse_lasers(data: Dict, config: RunConfig, errors: List[str]) -> None:
    for i, item in enumerate(data.get('lasers', [])):
        try:
            laser = LaserConfig.from_dict(item)
        except ValueError as exc:
            errors.append(f"lasers/{i}: {exc}")
            continue
        valid, message = validate_laser_config(laser, f"lasers/{i}")
        if not valid:
            errors.append(message)
        config.lasers.append(laser)
    if len({laser.n_ensembles for laser in config.lasers}) > 1:
        errors.append("lasers: tous les réglages doivent porter sur le même nombre d'ensembles")


def _parse_physical(data: Dict, config: RunConfig, errors: List[str]) -> None:
    if 'physical' not in data:
        return
    section = dict(data['physical'])
    directions = section.pop('directions', ['clockwise'])
    if config.units != 'rad/s':
        errors.append("physical: les paramètres physiques exigent des unités 'rad/s'")
        return
    try:
        params = PhysicalParams.from_dict({**section, 'kappa': config.kappa})
    except (ValueError, TypeError) as exc:
        errors.append(f"physical: {exc}")
        return
    report = validate_physical_params(params, HamiltonianConfig.DETUNING_FACTOR)
    errors.extend(f"physical: {message}" for message in report['errors'])
    for warning in report['warnings']:
        logger.warning(f"⚠️ physical: {warning}")
    if any(drive.delta_u == 0.0 or drive.delta_s == 0.0 for drive in params.ensembles):
        return
    resonance = check_resonance_conditions(params)
    if not resonance['passed'] and HamiltonianConfig.ENFORCE_RESONANCE:
        errors.append(f"physical: conditions de résonance violées {resonance['failed_conditions']}")
    config.physical = params
    for direction in directions:
        laser = laser_config_from_params(params, direction)
        valid, message = validate_laser_config(laser, f"physical/{direction}")
        if not valid:
            errors.append(message)
        config.lasers.append(laser)


def _parse_sections(data: Dict, config: RunConfig, raw: Dict, errors: List[str]) -> None:
    if 'geometry' in data:
        section = data['geometry']
        k = float(section.get('k', 1.0))
        try:
            if 'kL' in section:
                config.geometry = EnsembleGeometry.from_length(int(section['N']), float(section['kL']), k)
            else:
                config.geometry = EnsembleGeometry(int(section['N']), float(section['kd']) / k, k)
        except ValueError as exc:
            errors.append(f"geometry: {exc}")
        config.tolerances.setdefault(
            'deficit_threshold', float(section.get('threshold', ModesConfig.DEFICIT_WARNING_THRESHOLD))
        )

    steady = dict(data.get('steady_state', {}))
    steady.setdefault('frame', 'lab')
    if steady['frame'] == 'transformed' and any(laser.n_ensembles != 1 for laser in config.lasers):
        errors.append("steady_state: le référentiel transformé n'est défini que pour un ensemble")
    if 'beta_sweep' in steady:
        sweep = {'points': 10, 'min_ratio': 0.1, 'max_ratio': 1.0, **steady['beta_sweep']}
        if sweep['min_ratio'] >= sweep['max_ratio']:
            errors.append("steady_state/beta_sweep: min_ratio doit être inférieur à max_ratio")
        steady['beta_sweep'] = sweep
    config.steady_state = steady

    if 'evolve' in data:
        config.evolve = {'samples': ProtocolConfig.DEFAULT_SAMPLES_PER_STEP, **data['evolve']}
    if 'oracle' in data:
        oracle = {
            'cutoff': OracleConfig.DEFAULT_CUTOFF,
            'times': [0.5, 1.0, 2.0],
            'g': 1.0,
            'beta_u': 1.0,
            'beta_s': 0.3,
            'initial_squeezing': 0.0,
            'damping': True,
            **data['oracle'],
        }
        if oracle['system'] == 'squeezer_mixer' and oracle['beta_s'] >= oracle['beta_u']:
            errors.append(f"oracle: {ERROR_MESSAGES['stability_rule']}")
        config.oracle = oracle
        raw['oracle'] = oracle
    if 'sweep' in data:
        config.sweep = dict(data['sweep'])

    config.tolerances.update(data.get('tolerances', {}))
    output = data.get('output', {})
    config.output_dir = output.get('dir', AppConfig.OUTPUT_DIR)
    config.timestamp = bool(output.get('timestamp', True))
    config.threshold = float(data.get('threshold', ProtocolConfig.FIDELITY_THRESHOLD))
    config.seed = data.get('seed')
