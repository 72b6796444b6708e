"""
Mesures de vérification
=======================

Fidélité (convention probabilité |⟨ψ|φ⟩|²), négativité logarithmique et
variances de combinaisons de quadratures.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from config import SimulationConfig
from src.core.gaussian import partial_state, purity, symplectic_spectrum
from src.models.gaussian import GaussianState
from src.models.modes import LabelLike, ModeRegistry
from src.utils.exceptions import DimensionError, PhysicalityError

logger = logging.getLogger(__name__)

QuadratureTerm = Tuple[LabelLike, str]


def fidelity(state: GaussianState, target: GaussianState) -> float:
    """
    Fidélité d'un état gaussien (éventuellement mixte) à une cible pure

    F = ⟨ψ|ρ|ψ⟩ = exp(-½ δᵀ(σ+σ_t)⁻¹δ) / √det(σ + σ_t), δ = différence des moyennes.

    Args:
        state: état évalué
        target: cible pure sur le même registre

    Returns:
        float: fidélité dans [0, 1]
    """
    if state.registry != target.registry:
        raise DimensionError(
            f"Registres différents: {state.registry.names} / {target.registry.names}"
        )
    target_purity = purity(target)
    if abs(target_purity - 1.0) > 1e-8:
        raise PhysicalityError(f"La cible de fidélité doit être pure (pureté {target_purity:.10f})")
    total = state.covariance + target.covariance
    sign, logdet = np.linalg.slogdet(total)
    if sign <= 0:
        raise PhysicalityError("σ + σ_cible non définie positive")
    delta = state.mean - target.mean
    exponent = -0.5 * float(delta @ np.linalg.solve(total, delta))
    return float(min(1.0, math.exp(exponent - 0.5 * logdet)))


def log_negativity(state: GaussianState, subsystem_a: Sequence[LabelLike],
                   subsystem_b: Sequence[LabelLike]) -> float:
    """
    Négativité logarithmique E_N = Σ max(0, -log₂(2ν̃ᵢ))

    Les modes hors de A ∪ B sont tracés; la transposée partielle renverse
    le signe des impulsions de B.

    Args:
        state: état gaussien
        subsystem_a: modes de la partie A
        subsystem_b: modes de la partie B

    Returns:
        float: négativité logarithmique (≥ 0)
    """
    a_labels, b_labels = list(subsystem_a), list(subsystem_b)
    if not a_labels or not b_labels:
        raise DimensionError("Bipartition avec une partie vide")
    reduced = partial_state(state, a_labels + b_labels)
    flip = np.ones(reduced.registry.dimension)
    for label in b_labels:
        _, p_index = reduced.registry.quadrature_indices(label)
        flip[p_index] = -1.0
    transposed = flip[:, None] * reduced.covariance * flip[None, :]
    nu = symplectic_spectrum(transposed)
    return float(np.sum(np.maximum(0.0, -np.log2(2.0 * nu))))


# ==============================================================================
# VARIANCES DE QUADRATURES
# ==============================================================================

def quadrature_vector(registry: ModeRegistry, terms: Dict[QuadratureTerm, float]) -> np.ndarray:
    """
    Vecteur v d'une combinaison linéaire de quadratures

    Args:
        registry: registre
        terms: {(mode, 'x'|'p'): coefficient}

    Returns:
        np.ndarray: vecteur de longueur 2M
    """
    vector = np.zeros(registry.dimension)
    for (label, quadrature), coefficient in terms.items():
        i, j = registry.quadrature_indices(label)
        if quadrature == 'x':
            vector[i] += coefficient
        elif quadrature == 'p':
            vector[j] += coefficient
        else:
            raise ValueError(f"Quadrature inconnue: {quadrature!r}")
    return vector


def epr_vectors(registry: ModeRegistry, mode_a: LabelLike, mode_b: LabelLike) -> Dict[str, np.ndarray]:
    """
    Combinaisons EPR d'une paire de modes

    Returns:
        Dict: 'x_minus' (x_A - x_B)/√2, 'p_plus' (p_A + p_B)/√2,
              'x_plus' (x_A + x_B)/√2, 'p_minus' (p_A - p_B)/√2
    """
    s = 1.0 / math.sqrt(2.0)
    return {
        'x_minus': quadrature_vector(registry, {(mode_a, 'x'): s, (mode_b, 'x'): -s}),
        'p_plus': quadrature_vector(registry, {(mode_a, 'p'): s, (mode_b, 'p'): s}),
        'x_plus': quadrature_vector(registry, {(mode_a, 'x'): s, (mode_b, 'x'): s}),
        'p_minus': quadrature_vector(registry, {(mode_a, 'p'): s, (mode_b, 'p'): -s}),
    }


def quadrature_variances(state: GaussianState,
                         combos: Sequence[Union[np.ndarray, Dict[QuadratureTerm, float]]]) -> List[float]:
    """
    Variances vᵀσv de combinaisons de quadratures

    Args:
        state: état gaussien
        combos: vecteurs de longueur 2M ou dictionnaires {(mode, 'x'|'p'): coef}

    Returns:
        List[float]: une variance par combinaison
    """
    variances = []
    for combo in combos:
        vector = quadrature_vector(state.registry, combo) if isinstance(combo, dict) else np.asarray(combo, dtype=float)
        if vector.shape != (state.registry.dimension,):
            raise DimensionError(f"Combinaison de longueur {vector.shape} pour {state.registry.dimension} quadratures")
        norm = float(np.linalg.norm(vector))
        if abs(norm - 1.0) > SimulationConfig.NORMALIZATION_TOLERANCE:
            logger.warning(f"⚠️ Combinaison de quadratures non normalisée (‖v‖ = {norm:.6f})")
        variances.append(float(vector @ state.covariance @ vector))
    return variances
