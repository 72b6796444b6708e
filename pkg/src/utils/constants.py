"""
Constantes du simulateur de compression multimode
=================================================

Ce module regroupe les constantes physiques, les règles de provenance,
les codes de sortie et les messages utilisés dans toute l'application.
"""

import math
from typing import Dict, List

# ==============================================================================
# CONSTANTES PHYSIQUES ET CONVENTIONS
# ==============================================================================

# Nombre d'or du mélangeur entre ensembles
LAMBDA_MIX = (1.0 + math.sqrt(5.0)) / 2.0

# Convention ħ = 1, a = (x + ip)/√2 : le vide a une variance 1/2
VACUUM_VARIANCE = 0.5

# Ordres m des modes collectifs C_mk
COLLECTIVE_ORDERS = (0, 2, -2)

# Directions de propagation des lasers
DIRECTIONS = ('clockwise', 'anticlockwise')

# Unités acceptées dans les fichiers de configuration
SUPPORTED_UNITS = ('rad/s', 'kappa')

# Types de protocoles
PROTOCOL_KINDS = ('one_two_mode', 'four_mode')

# Nombre d'ensembles atomiques requis par protocole
PROTOCOL_ENSEMBLES = {
    'one_two_mode': 1,
    'four_mode': 2,
}

# Nombre d'étapes par protocole
PROTOCOL_STEPS = {
    'one_two_mode': 2,
    'four_mode': 4,
}


# ==============================================================================
# PROVENANCE DES PARAMÈTRES RÉSOLUS
# ==============================================================================

# Règle de résolution portée par chaque paramètre résolu (loi du rapport / mode adressé)
PARAMETER_RULES = {
    'one_two_mode': {1: 'tanh_xi/clockwise', 2: 'tanh_xi/anticlockwise'},
    'four_mode': {
        1: 'tanh_lambda_xi/C2k_1',
        2: 'tanh_lambda_xi/Cm2k_2',
        3: 'tanh_xi_over_lambda/C2k_2',
        4: 'tanh_xi_over_lambda/Cm2k_1',
    },
}

# Référence des équations de résolution des paramètres et des hamiltoniens
PARAMETER_EQUATIONS = {'one_two_mode': 'eq23', 'four_mode': 'eq38'}
HAMILTONIAN_EQUATIONS = {'clockwise': 'eq17', 'anticlockwise': 'eq18'}

# Référentiel d'analyse dans lequel chaque étape devient un mélangeur
FRAME_RULES = {
    'one_two_mode': {1: 's0_s2_mixer/a_plus', 2: 's0_s2_mixer/a_minus'},
    'four_mode': {1: 's4_mixer/a_plus', 2: 's4_mixer/a_minus', 3: 's4_mixer/a_plus', 4: 's4_mixer/a_minus'},
}

# Direction laser de chaque étape
STEP_DIRECTIONS = {
    'one_two_mode': {1: 'clockwise', 2: 'anticlockwise'},
    'four_mode': {1: 'clockwise', 2: 'anticlockwise', 3: 'clockwise', 4: 'anticlockwise'},
}


# ==============================================================================
# CODES DE SORTIE
# ==============================================================================

EXIT_CODES = {
    'success': 0,
    'internal_error': 1,
    'config_error': 2,
    'parameter_rejected': 3,
    'physicality_error': 4,
    'truncation_error': 5,
}

# Simulation réussie mais fidélité sous le seuil demandé
EXIT_CODE_BELOW_THRESHOLD = 1


# ==============================================================================
# COLONNES D'EXPORT
# ==============================================================================

PROTOCOL_CSV_COLUMNS: List[str] = [
    'time',
    'var_x_C0k',
    'var_p_C0k',
    'var_epr_minus',
    'var_epr_plus',
    'fidelity',
    'purity',
    'n_a_plus',
    'n_a_minus',
]

EVOLVE_CSV_COLUMNS: List[str] = [
    'time',
    'purity',
    'n_a_plus',
    'n_a_minus',
    'min_symplectic_eigenvalue',
]

FIDELITY_CONVENTION = 'probability (squared overlap |<psi|phi>|^2)'


# ==============================================================================
# MESSAGES
# ==============================================================================

ERROR_MESSAGES: Dict[str, str] = {
    'stability_rule': "Règle de stabilité violée: Σβ_s² doit rester strictement inférieur à Σβ_u²",
    'stability_margin': "ξ trop grand: rapport β_s/β_u résolu au-delà de la marge de stabilité",
    'kappa_required': "Unités 'rad/s' sans κ: fournir 'kappa' ou passer en unités 'kappa'",
    'kappa_not_unit': "Unités 'kappa' avec κ ≠ 1: omettre 'kappa' ou passer en unités 'rad/s'",
    'zero_detuning': "Désaccord nul: l'élimination adiabatique n'est pas définie",
    'not_hurwitz': "Dérive non Hurwitz: mode non amorti détecté",
    'truncation': "Troncature de Fock insuffisante",
}

SUCCESS_MESSAGES: Dict[str, str] = {
    'protocol_done': "Protocole terminé",
    'steady_state_done': "État stationnaire calculé",
}

APPLICATION_INFO = {
    'name': 'ringcavity-squeezing',
    'version': '1.0.0',
    'description': "Simulateur gaussien de préparation d'états comprimés multimodes en cavité en anneau",
}


__all__ = [
    'LAMBDA_MIX',
    'VACUUM_VARIANCE',
    'COLLECTIVE_ORDERS',
    'DIRECTIONS',
    'SUPPORTED_UNITS',
    'PROTOCOL_KINDS',
    'PROTOCOL_ENSEMBLES',
    'PROTOCOL_STEPS',
    'PARAMETER_RULES',
    'PARAMETER_EQUATIONS',
    'HAMILTONIAN_EQUATIONS',
    'FRAME_RULES',
    'STEP_DIRECTIONS',
    'EXIT_CODES',
    'EXIT_CODE_BELOW_THRESHOLD',
    'PROTOCOL_CSV_COLUMNS',
    'EVOLVE_CSV_COLUMNS',
    'FIDELITY_CONVENTION',
    'ERROR_MESSAGES',
    'SUCCESS_MESSAGES',
    'APPLICATION_INFO',
]
