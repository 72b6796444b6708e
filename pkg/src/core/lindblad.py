"""
Évolution gaussienne de l'équation maîtresse
============================================

Réduction de l'équation maîtresse avec amortissement des modes de cavité
à la dynamique de covariance σ̇ = Aσ + σAᵀ + D:

    A = Ω H_q - (κ/2) P_amortis,   D = (κ/2) P_amortis

Propagation exacte par exponentielle de matrice du système augmenté
[[A, D], [0, -Aᵀ]], état stationnaire par équation de Lyapunov continue,
et analyse spectrale de la dérive.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm, solve_continuous_lyapunov

from config import SimulationConfig
from src.models.dynamics import DriftDiffusion, LindbladSpec
from src.models.gaussian import GaussianState, symplectic_form
from src.models.hamiltonian import QuadraticHamiltonian
from src.models.modes import LabelLike, as_label
from src.utils.constants import ERROR_MESSAGES
from src.utils.exceptions import DimensionError, NotHurwitzError, PhysicalityError
from src.utils.helpers import format_complex

logger = logging.getLogger(__name__)


# ==============================================================================
# RÉDUCTION GAUSSIENNE
# ==============================================================================

def drift_diffusion(spec: LindbladSpec) -> DriftDiffusion:
    """
    Matrices de dérive et de diffusion

    Args:
        spec: hamiltonien, modes amortis, κ

    Returns:
        DriftDiffusion: A = ΩH_q - (κ/2)P, D = (κ/2)P
    """
    registry = spec.registry
    projector = registry.projector(spec.damped_modes)
    omega = symplectic_form(registry.size)
    drift = omega @ spec.hamiltonian.matrix - 0.5 * spec.kappa * projector
    diffusion = 0.5 * spec.kappa * projector
    return DriftDiffusion(registry, drift, diffusion, spec.kappa, spec.damped_modes)


def unitary_drift(hamiltonian: QuadraticHamiltonian) -> DriftDiffusion:
    """Dynamique purement hamiltonienne (κ = 0)"""
    omega = symplectic_form(hamiltonian.registry.size)
    dim = hamiltonian.registry.dimension
    return DriftDiffusion(hamiltonian.registry, omega @ hamiltonian.matrix, np.zeros((dim, dim)), 0.0)


def restrict(spec: LindbladSpec, labels: Sequence[LabelLike]) -> LindbladSpec:
    """
    Sous-système couplé: hamiltonien restreint, amortissement conservé sur les modes retenus

    Args:
        spec: équation maîtresse complète
        labels: modes conservés

    Returns:
        LindbladSpec: spécification restreinte
    """
    hamiltonian = spec.hamiltonian.restrict(labels)
    damped = tuple(label for label in spec.damped_modes if label in hamiltonian.registry)
    return LindbladSpec(hamiltonian, spec.kappa, damped)


# ==============================================================================
# PROPAGATION
# ==============================================================================

def propagator(dd: DriftDiffusion, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Propagateur exact sur une durée t: σ(t) = Φ σ(0) Φᵀ + Q

    La durée est découpée en sous-pas tels que ‖A‖·dt reste borné, puis les
    sous-pas identiques sont composés (propriété de semi-groupe).

    Args:
        dd: dérive et diffusion
        t: durée (≥ 0)

    Returns:
        Tuple[np.ndarray, np.ndarray]: (Φ, Q)
    """
    if not math.isfinite(t):
        raise PhysicalityError(f"Durée non finie: {t}")
    if t < 0:
        raise ValueError(f"Durée négative: {t}")
    A, D = dd.drift, dd.diffusion
    nx = A.shape[0]
    if t == 0.0:
        return np.eye(nx), np.zeros((nx, nx))

    scale = float(np.linalg.norm(A, 2))
    n_sub = max(1, int(math.ceil(t * scale / SimulationConfig.EVOLVE_MAX_NORM_STEP)))
    dt = t / n_sub

    augmented = np.zeros((2 * nx, 2 * nx))
    augmented[:nx, :nx] = A
    augmented[nx:, nx:] = -A.T
    augmented[:nx, nx:] = D
    top = expm(augmented * dt)[:nx, :]
    phi_step = top[:, :nx]
    q_step = top[:, nx:] @ phi_step.T
    q_step = 0.5 * (q_step + q_step.T)

    phi, q = phi_step, q_step
    for _ in range(n_sub - 1):
        phi = phi_step @ phi
        q = phi_step @ q @ phi_step.T + q_step
    return phi, 0.5 * (q + q.T)


def _apply_propagator(state: GaussianState, phi: np.ndarray, q: np.ndarray) -> GaussianState:
    covariance = phi @ state.covariance @ phi.T + q
    return GaussianState(state.registry, phi @ state.mean, 0.5 * (covariance + covariance.T))


def evolve(state: GaussianState, dd: DriftDiffusion, t: float) -> GaussianState:
    """
    Évolution exacte d'un état gaussien pendant une durée t

    Args:
        state: état initial
        dd: dérive et diffusion sur le même registre
        t: durée (≥ 0)

    Returns:
        GaussianState: état à l'instant t
    """
    if state.registry != dd.registry:
        raise DimensionError("Registres différents entre l'état et la dynamique")
    if not (np.all(np.isfinite(dd.drift)) and np.all(np.isfinite(dd.diffusion))):
        raise PhysicalityError("Dérive ou diffusion non finie")
    phi, q = propagator(dd, t)
    return _apply_propagator(state, phi, q)


def evolve_samples(state: GaussianState, dd: DriftDiffusion, t: float,
                   samples: int) -> List[Tuple[float, GaussianState]]:
    """
    Trajectoire échantillonnée à pas constant

    Args:
        state: état initial
        dd: dynamique
        t: durée totale
        samples: nombre d'intervalles (≥ 1)

    Returns:
        List[Tuple[float, GaussianState]]: (temps écoulé, état), sans l'état initial
    """
    if samples < 1:
        raise ValueError("Au moins un échantillon est requis")
    if state.registry != dd.registry:
        raise DimensionError("Registres différents entre l'état et la dynamique")
    phi, q = propagator(dd, t / samples)
    trajectory = []
    current = state
    for k in range(1, samples + 1):
        current = _apply_propagator(current, phi, q)
        trajectory.append((t * k / samples, current))
    return trajectory


def evolve_fixed_step(state: GaussianState, dd: DriftDiffusion, t: float,
                      steps: Optional[int] = None) -> GaussianState:
    """
    Intégrateur RK4 à pas fixe de σ̇ = Aσ + σAᵀ + D (contrôle croisé uniquement)

    Args:
        state: état initial
        dd: dynamique
        t: durée
        steps: nombre de pas (défaut SimulationConfig.FIXED_STEP_COUNT)

    Returns:
        GaussianState: état approché à l'instant t
    """
    steps = SimulationConfig.FIXED_STEP_COUNT if steps is None else steps
    A, D = dd.drift, dd.diffusion
    h = t / steps

    def rhs(sigma: np.ndarray) -> np.ndarray:
        return A @ sigma + sigma @ A.T + D

    sigma = np.array(state.covariance)
    mean = np.array(state.mean)
    for _ in range(steps):
        k1 = rhs(sigma)
        k2 = rhs(sigma + 0.5 * h * k1)
        k3 = rhs(sigma + 0.5 * h * k2)
        k4 = rhs(sigma + h * k3)
        sigma = sigma + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        m1 = A @ mean
        m2 = A @ (mean + 0.5 * h * m1)
        m3 = A @ (mean + 0.5 * h * m2)
        m4 = A @ (mean + h * m3)
        mean = mean + (h / 6.0) * (m1 + 2 * m2 + 2 * m3 + m4)
    return GaussianState(state.registry, mean, 0.5 * (sigma + sigma.T))


def stationary_residual(state: GaussianState, dd: DriftDiffusion) -> float:
    """Norme spectrale de σ̇ = Aσ + σAᵀ + D"""
    sigma = state.covariance
    return float(np.linalg.norm(dd.drift @ sigma + sigma @ dd.drift.T + dd.diffusion, 2))


# ==============================================================================
# ANALYSE SPECTRALE
# ==============================================================================

def drift_spectrum(dd: DriftDiffusion) -> List[complex]:
    """
    Valeurs propres de la dérive, triées par partie réelle décroissante

    Returns:
        List[complex]: spectre de A
    """
    values = np.linalg.eigvals(dd.drift)
    order = sorted(range(len(values)), key=lambda i: (-values[i].real, -values[i].imag))
    return [complex(values[i]) for i in order]


def spectral_abscissa(dd: DriftDiffusion) -> float:
    """Plus grande partie réelle du spectre de la dérive"""
    return float(np.max(np.linalg.eigvals(dd.drift).real))


def _hurwitz_tolerance(dd: DriftDiffusion) -> float:
    return SimulationConfig.HURWITZ_TOLERANCE * (dd.kappa if dd.kappa > 0 else 1.0)


def marginal_eigenvalues(dd: DriftDiffusion) -> List[complex]:
    """Valeurs propres de partie réelle ≥ -1e-12·κ (marginales ou instables)"""
    tolerance = _hurwitz_tolerance(dd)
    return [value for value in drift_spectrum(dd) if value.real >= -tolerance]


def undamped_modes(dd: DriftDiffusion) -> List[str]:
    """
    Modes portant les vecteurs propres marginaux de la dérive

    Le poids de chaque mode est la somme des |v_x|² + |v_p|² sur les vecteurs
    propres à droite normalisés associés aux valeurs marginales; les modes dont
    le poids dépasse la moitié du maximum sont retournés, le dominant en tête.
    """
    tolerance = _hurwitz_tolerance(dd)
    values, vectors = np.linalg.eig(dd.drift)
    weights = np.zeros(dd.registry.size)
    for i, value in enumerate(values):
        if value.real >= -tolerance:
            v = vectors[:, i] / np.linalg.norm(vectors[:, i])
            weights += np.abs(v[0::2]) ** 2 + np.abs(v[1::2]) ** 2
    if not np.any(weights > 0):
        return []
    order = np.argsort(-weights)
    threshold = 0.5 * weights[order[0]]
    return [dd.registry.labels[i].name for i in order if weights[i] >= threshold]


def _raise_not_hurwitz(dd: DriftDiffusion) -> None:
    marginal = marginal_eigenvalues(dd)
    if marginal:
        modes = undamped_modes(dd)
        worst = marginal[0]
        raise NotHurwitzError(
            f"{ERROR_MESSAGES['not_hurwitz']}: valeur propre {format_complex(worst)}, "
            f"modes {modes}",
            eigenvalues=marginal,
            undamped_modes=modes,
        )


def is_hurwitz(dd: DriftDiffusion) -> bool:
    return not marginal_eigenvalues(dd)


def steady_state(dd: DriftDiffusion) -> GaussianState:
    """
    État stationnaire unique: solution de Aσ + σAᵀ + D = 0

    Args:
        dd: dérive Hurwitz

    Returns:
        GaussianState: état stationnaire (moyenne nulle)
    """
    _raise_not_hurwitz(dd)
    sigma = solve_continuous_lyapunov(dd.drift, -dd.diffusion)
    sigma = 0.5 * (sigma + sigma.T)
    state = GaussianState(dd.registry, np.zeros(dd.registry.dimension), sigma)
    residual = stationary_residual(state, dd)
    bound = SimulationConfig.LYAPUNOV_RESIDUAL_TOLERANCE * max(np.linalg.norm(dd.diffusion, 2), 1e-300)
    if residual > bound:
        logger.warning(f"⚠️ Résidu de Lyapunov {residual:.3e} au-dessus de {bound:.3e}")
    else:
        logger.debug(f"Résidu de Lyapunov {residual:.3e}")
    return state


def convergence_time(dd: DriftDiffusion, tol: float) -> float:
    """
    Temps de convergence ln(1/tol)/|abscisse spectrale|

    Args:
        dd: dérive Hurwitz
        tol: tolérance relative visée (0 < tol < 1)

    Returns:
        float: durée dans les unités de 1/κ
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"Tolérance hors de ]0, 1[: {tol}")
    _raise_not_hurwitz(dd)
    return math.log(1.0 / tol) / abs(spectral_abscissa(dd))


def mixer_rate_eigenvalues(g: float, kappa: float) -> Tuple[complex, complex]:
    """Valeurs propres du mélangeur g(a†C + h.c.) amorti: -κ/4 ± √((κ/4)² - g²)"""
    root = complex(kappa ** 2 / 16.0 - g ** 2) ** 0.5
    return (-kappa / 4.0 + root, -kappa / 4.0 - root)


def spectrum_report(dd: DriftDiffusion) -> Dict:
    """Résumé sérialisable du spectre de la dérive"""
    spectrum = drift_spectrum(dd)
    marginal = marginal_eigenvalues(dd)
    return {
        'eigenvalues': [{'real': v.real, 'imag': v.imag} for v in spectrum],
        'spectral_abscissa': max(v.real for v in spectrum),
        'hurwitz': not marginal,
        'marginal_count': len(marginal),
    }
