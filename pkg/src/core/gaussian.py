"""
Noyau gaussien - opérations sur l'espace des phases
===================================================

Opérations pures sur les états gaussiens: vide, application de
transformations symplectiques, restriction à des sous-ensembles de modes,
pureté, valeurs propres symplectiques et contrôle de physicalité.
"""

import logging
from typing import Iterable, Optional, Sequence

import numpy as np

from config import SimulationConfig
from src.models.gaussian import GaussianState, SymplecticTransform, symplectic_form
from src.models.modes import LabelLike, ModeRegistry
from src.utils.constants import VACUUM_VARIANCE
from src.utils.exceptions import DimensionError, PhysicalityError

logger = logging.getLogger(__name__)


# ==============================================================================
# CONSTRUCTION D'ÉTATS
# ==============================================================================

def vacuum_state(registry: ModeRegistry) -> GaussianState:
    """
    État du vide sur tous les modes du registre

    Args:
        registry: registre de modes (M ≥ 1)

    Returns:
        GaussianState: moyenne nulle, covariance ½·I
    """
    return GaussianState(
        registry=registry,
        mean=np.zeros(registry.dimension),
        covariance=VACUUM_VARIANCE * np.eye(registry.dimension),
    )


def thermal_state(registry: ModeRegistry, occupations: Sequence[float]) -> GaussianState:
    """
    État thermique produit

    Args:
        registry: registre de modes
        occupations: nombre moyen n̄ par mode

    Returns:
        GaussianState: covariance (n̄ + ½)·I₂ par mode
    """
    occupations = np.asarray(occupations, dtype=float)
    if occupations.shape != (registry.size,) or np.any(occupations < 0):
        raise DimensionError("Occupations thermiques invalides")
    diagonal = np.repeat(occupations + VACUUM_VARIANCE, 2)
    return GaussianState(registry, np.zeros(registry.dimension), np.diag(diagonal))


# ==============================================================================
# TRANSFORMATIONS
# ==============================================================================

def apply_symplectic(state: GaussianState, transform: SymplecticTransform) -> GaussianState:
    """
    Applique une transformation symplectique: σ → SσSᵀ, r̄ → S r̄

    Args:
        state: état initial
        transform: transformation sur le même registre

    Returns:
        GaussianState: état transformé
    """
    if transform.registry != state.registry:
        raise DimensionError(
            f"Registre de la transformation {transform.registry.names} "
            f"différent de celui de l'état {state.registry.names}"
        )
    S = transform.matrix
    return GaussianState(state.registry, S @ state.mean, S @ state.covariance @ S.T)


def partial_state(state: GaussianState, modes: Sequence[LabelLike]) -> GaussianState:
    """
    Restriction (trace partielle) d'un état gaussien à un sous-ensemble de modes

    Args:
        state: état complet
        modes: sous-ensemble non vide, l'ordre fourni est conservé

    Returns:
        GaussianState: lignes/colonnes de quadratures sélectionnées
    """
    if not modes:
        raise DimensionError("Sous-ensemble de modes vide")
    sub_registry = state.registry.subset(modes)
    indices = state.registry.quadrature_slice(sub_registry.labels)
    return GaussianState(
        sub_registry,
        state.mean[indices],
        state.covariance[np.ix_(indices, indices)],
    )


# ==============================================================================
# MESURES SPECTRALES
# ==============================================================================

def symplectic_spectrum(covariance: np.ndarray) -> np.ndarray:
    """
    Valeurs propres symplectiques d'une matrice de covariance

    Args:
        covariance: matrice réelle 2M×2M

    Returns:
        np.ndarray: M valeurs |eig(iΩσ)| triées (une par paire ±ν)
    """
    covariance = np.asarray(covariance, dtype=float)
    M = covariance.shape[0] // 2
    omega = symplectic_form(M)
    values = np.sort(np.abs(np.linalg.eigvals(1j * omega @ covariance)))
    return values[::2]


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Valeurs propres symplectiques triées d'un état (≥ ½ si physique)"""
    return symplectic_spectrum(state.covariance)


def is_physical(state: GaussianState, tolerance: Optional[float] = None) -> bool:
    tolerance = SimulationConfig.PHYSICALITY_TOLERANCE if tolerance is None else tolerance
    return bool(np.min(symplectic_eigenvalues(state)) >= VACUUM_VARIANCE - tolerance)


def check_physicality(state: GaussianState, context: str = '',
                      tolerance: Optional[float] = None) -> None:
    """
    Lève PhysicalityError si une valeur propre symplectique est sous ½ - tol

    Args:
        state: état à contrôler
        context: contexte ajouté au message
        tolerance: tolérance (défaut SimulationConfig.PHYSICALITY_TOLERANCE)
    """
    tolerance = SimulationConfig.PHYSICALITY_TOLERANCE if tolerance is None else tolerance
    nu_min = float(np.min(symplectic_eigenvalues(state)))
    if nu_min < VACUUM_VARIANCE - tolerance:
        suffix = f" ({context})" if context else ''
        raise PhysicalityError(
            f"Covariance non physique{suffix}: valeur propre symplectique {nu_min:.3e} < 1/2",
            min_symplectic_eigenvalue=nu_min,
        )


def purity(state: GaussianState) -> float:
    """
    Pureté Tr ρ² = 1/(2^M √det σ)

    Args:
        state: état physique

    Returns:
        float: pureté dans (0, 1]
    """
    check_physicality(state, 'pureté')
    sign, logdet = np.linalg.slogdet(state.covariance)
    if sign <= 0:
        raise PhysicalityError("Covariance non définie positive")
    M = state.n_modes
    return float(np.exp(-M * np.log(2.0) - 0.5 * logdet))


def is_symplectic(matrix: np.ndarray, tolerance: Optional[float] = None) -> bool:
    tolerance = SimulationConfig.SYMPLECTIC_TOLERANCE if tolerance is None else tolerance
    matrix = np.asarray(matrix, dtype=float)
    omega = symplectic_form(matrix.shape[0] // 2)
    return bool(np.max(np.abs(matrix @ omega @ matrix.T - omega)) <= tolerance)


def covariance_distance(first: GaussianState, second: GaussianState,
                        modes: Optional[Iterable[LabelLike]] = None) -> float:
    """Écart maximal élément par élément entre deux covariances"""
    if modes is not None:
        modes = list(modes)
        first, second = partial_state(first, modes), partial_state(second, modes)
    if first.registry != second.registry:
        raise DimensionError("Registres différents")
    return float(np.max(np.abs(first.covariance - second.covariance)))
