"""
Constructeur d'hamiltoniens effectifs
=====================================

Passage des paramètres physiques (lasers, cavité, atomes) aux couplages
effectifs β, contrôle des conditions de résonance, et construction des
hamiltoniens quadratiques des deux sens de propagation.

Sens horaire, pour chaque ensemble n:
    β_un e^{-iφ_un} (C₀ₖ + r C₀ₖ†) a₊† + β_un e^{-iφ_un} (C₂ₖ + r C₋₂ₖ†) a₋† + h.c.
Sens anti-horaire: même forme avec a₊ ↔ a₋ et +2k ↔ -2k.
"""

import cmath
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import HamiltonianConfig
from src.models.hamiltonian import QuadraticHamiltonian
from src.models.laser import LaserConfig, PhysicalParams
from src.models.modes import A_MINUS, A_PLUS, C0, C2, Cm2, LabelLike, ModeLabel, ModeRegistry
from src.utils.constants import ERROR_MESSAGES
from src.utils.exceptions import ParameterRejectedError

logger = logging.getLogger(__name__)


# ==============================================================================
# ACCUMULATEUR DE TERMES D'ÉCHELLE
# ==============================================================================

class HamiltonianTerms:
    """
    Accumulateur de termes bilinéaires en opérateurs d'échelle

    Chaque terme est ajouté avec son conjugué hermitien, l'hermiticité
    est donc garantie par construction.
    """

    def __init__(self, registry: ModeRegistry):
        self.registry = registry
        self._exchange = np.zeros((registry.size, registry.size), dtype=complex)
        self._pair = np.zeros((registry.size, registry.size), dtype=complex)

    def exchange(self, first: LabelLike, second: LabelLike, coefficient: complex) -> 'HamiltonianTerms':
        """Ajoute c·a_first† a_second + h.c."""
        j, k = self.registry.index(first), self.registry.index(second)
        self._exchange[j, k] += coefficient
        self._exchange[k, j] += np.conj(coefficient)
        return self

    def pair(self, first: LabelLike, second: LabelLike, coefficient: complex) -> 'HamiltonianTerms':
        """Ajoute c·a_first† a_second† + h.c."""
        j, k = self.registry.index(first), self.registry.index(second)
        if j == k:
            self._pair[j, j] += 2.0 * coefficient
        else:
            self._pair[j, k] += coefficient
            self._pair[k, j] += coefficient
        return self

    def build(self) -> QuadraticHamiltonian:
        return QuadraticHamiltonian.from_ladder(self.registry, self._exchange, self._pair)


# ==============================================================================
# PARAMÈTRES PHYSIQUES → COUPLAGES EFFECTIFS
# ==============================================================================

def coupling_strengths(params: PhysicalParams) -> List[Tuple[float, float]]:
    """
    Couplages effectifs β_un = √N Ω_un g_un/(2Δ_un), β_sn = √N Ω_sn g_sn/(2Δ_sn)

    Args:
        params: paramètres physiques

    Returns:
        List[Tuple[float, float]]: (β_un, β_sn) par ensemble, en rad/s
    """
    sqrt_n = math.sqrt(params.n_atoms)
    strengths = []
    for n, drive in enumerate(params.ensembles, start=1):
        if drive.delta_u == 0.0 or drive.delta_s == 0.0:
            raise ParameterRejectedError(f"{ERROR_MESSAGES['zero_detuning']} (ensemble {n})")
        beta_u = sqrt_n * drive.rabi_u * drive.g_u / (2.0 * drive.delta_u)
        beta_s = sqrt_n * drive.rabi_s * drive.g_s / (2.0 * drive.delta_s)
        strengths.append((beta_u, beta_s))
    return strengths


def laser_config_from_params(params: PhysicalParams, direction: str) -> LaserConfig:
    """Construit la configuration laser effective d'une direction"""
    strengths = coupling_strengths(params)
    # le signe de Ω g/Δ est reporté dans la phase
    beta_u, beta_s, phi_u, phi_s = [], [], [], []
    for (bu, bs), drive in zip(strengths, params.ensembles):
        beta_u.append(abs(bu))
        beta_s.append(abs(bs))
        phi_u.append(drive.phi_u + (math.pi if bu < 0 else 0.0))
        phi_s.append(drive.phi_s + (math.pi if bs < 0 else 0.0))
    return LaserConfig(direction, tuple(beta_u), tuple(beta_s), tuple(phi_u), tuple(phi_s))


def check_resonance_conditions(params: PhysicalParams, tolerance: Optional[float] = None) -> Dict:
    """
    Contrôle des conditions de résonance

    (a) g_un²/Δ_un - g_sn²/Δ_sn = 0
    (b) δ_c + N g_un²/Δ_un = 0
    (c) ω_Ls - ω_Lu - 2ω_1 = 0

    Args:
        params: paramètres physiques
        tolerance: tolérance absolue (défaut 1e-6·κ)

    Returns:
        Dict: résidus par condition et par ensemble, drapeau 'passed'
    """
    if tolerance is None:
        tolerance = HamiltonianConfig.RESONANCE_TOLERANCE * params.kappa
    conditions = []
    for n, drive in enumerate(params.ensembles, start=1):
        if drive.delta_u == 0.0 or drive.delta_s == 0.0:
            raise ParameterRejectedError(f"{ERROR_MESSAGES['zero_detuning']} (ensemble {n})")
        shift_u = drive.g_u ** 2 / drive.delta_u
        shift_s = drive.g_s ** 2 / drive.delta_s
        conditions.append({'condition': 'a', 'ensemble': n, 'residual': shift_u - shift_s})
        conditions.append({
            'condition': 'b',
            'ensemble': n,
            'residual': params.cavity_detuning + params.n_atoms * shift_u,
        })
    conditions.append({
        'condition': 'c',
        'ensemble': None,
        'residual': params.omega_ls - params.omega_lu - 2.0 * params.omega_1,
    })
    for item in conditions:
        item['passed'] = abs(item['residual']) <= tolerance

    failed = sorted({item['condition'] for item in conditions if not item['passed']})
    if failed:
        logger.warning(f"⚠️ Conditions de résonance violées: {failed}")
    return {
        'passed': not failed,
        'failed_conditions': failed,
        'tolerance': tolerance,
        'conditions': conditions,
    }


def validate_physical_params(params: PhysicalParams, factor: Optional[float] = None) -> Dict:
    """
    Contrôle du régime de grand désaccord Δ ≥ facteur × max(Ω, g, γ)

    Args:
        params: paramètres physiques
        factor: facteur minimal (défaut HamiltonianConfig.DETUNING_FACTOR)

    Returns:
        Dict: {'valid', 'errors', 'warnings'}
    """
    factor = HamiltonianConfig.DETUNING_FACTOR if factor is None else factor
    errors, warnings = [], []
    for n, drive in enumerate(params.ensembles, start=1):
        for branch in ('u', 's'):
            delta = abs(getattr(drive, f'delta_{branch}'))
            scale = max(abs(getattr(drive, f'rabi_{branch}')), abs(getattr(drive, f'g_{branch}')), abs(params.gamma))
            if delta == 0.0:
                errors.append(f"ensemble {n}: {ERROR_MESSAGES['zero_detuning']} (Δ_{branch})")
            elif delta < factor * scale:
                errors.append(
                    f"ensemble {n}: |Δ_{branch}| = {delta:.3e} < {factor:g} × {scale:.3e}"
                )
            elif delta < 2.0 * factor * scale:
                warnings.append(f"ensemble {n}: désaccord Δ_{branch} proche de la limite")
    return {'valid': not errors, 'errors': errors, 'warnings': warnings}


def spontaneous_rate_estimate(gamma: float, rabi: float, detuning: float) -> float:
    """
    Taux d'émission spontanée effectif γ_eff = ¼ (γ/2π)(Ω/Δ)²

    Args:
        gamma: largeur atomique (rad/s)
        rabi: fréquence de Rabi (rad/s)
        detuning: désaccord (rad/s)

    Returns:
        float: taux en Hz
    """
    if detuning == 0.0:
        raise ParameterRejectedError(ERROR_MESSAGES['zero_detuning'])
    return 0.25 * (gamma / (2.0 * math.pi)) * (rabi / detuning) ** 2


def printed_rate_eigenvalues(beta_u: float, beta_s: float, kappa: float) -> Tuple[complex, complex]:
    """
    Expression des valeurs propres du système transformé telle qu'imprimée:
    η± = -κ/2 ± [(κ/2)² - √(β_u² - β_s²)]^{1/2}

    Dimensionnellement incohérente; fournie uniquement pour comparaison
    qualitative avec le spectre numérique de la dérive.
    """
    inner = (kappa / 2.0) ** 2 - cmath.sqrt(beta_u ** 2 - beta_s ** 2)
    root = cmath.sqrt(inner)
    return (-kappa / 2.0 + root, -kappa / 2.0 - root)


# ==============================================================================
# HAMILTONIENS EFFECTIFS
# ==============================================================================

def direction_mapping(registry: ModeRegistry) -> Dict[ModeLabel, ModeLabel]:
    """Relabellisation a₊ ↔ a₋, C₂ₖ ↔ C₋₂ₖ des modes présents"""
    return {label: label.mirrored() for label in registry if label.mirrored() in registry}


def check_stability(config: LaserConfig) -> None:
    """Lève ParameterRejectedError si Σβ_s² ≥ Σβ_u²"""
    if not config.is_stable:
        raise ParameterRejectedError(
            f"{ERROR_MESSAGES['stability_rule']} "
            f"(√Σβ_s² = {config.norm_s:.6g}, √Σβ_u² = {config.norm_u:.6g})",
            rule='stability',
        )


def effective_hamiltonian(config: LaserConfig, registry: ModeRegistry,
                          enforce_stability: bool = True) -> QuadraticHamiltonian:
    """
    Hamiltonien effectif d'une configuration laser

    Args:
        config: couplages β, phases et direction
        registry: registre contenant tous les modes référencés
        enforce_stability: rejette les réglages avec Σβ_s² ≥ Σβ_u²

    Returns:
        QuadraticHamiltonian: forme quadratique réelle symétrique
    """
    if enforce_stability:
        check_stability(config)

    if config.direction == 'clockwise':
        plus, minus, up, down = A_PLUS, A_MINUS, C2, Cm2
    else:
        plus, minus, up, down = A_MINUS, A_PLUS, Cm2, C2

    terms = HamiltonianTerms(registry)
    for n in config.ensembles():
        i = n - 1
        exchange = config.beta_u[i] * cmath.exp(-1j * config.phi_u[i])
        pair = config.beta_s[i] * cmath.exp(-1j * config.phi_s[i])
        if config.beta_u[i] == 0.0 and config.beta_s[i] == 0.0:
            continue
        terms.exchange(plus, C0(n), exchange)
        terms.pair(plus, C0(n), pair)
        terms.exchange(minus, up(n), exchange)
        terms.pair(minus, down(n), pair)

    hamiltonian = terms.build()
    logger.debug(
        f"Hamiltonien {config.direction} construit sur {registry.size} modes "
        f"(rapport effectif {config.effective_ratio:.4f})"
    )
    return hamiltonian
