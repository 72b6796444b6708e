"""
Compresseurs et mélangeurs - réalisations symplectiques
=======================================================

Images dans l'espace des phases des unitaires utilisés par les protocoles:
compresseur à un mode S₀, compresseur à deux modes S±k, compresseur à
quatre modes, mélangeur T au nombre d'or, et conjugaison des hamiltoniens.

Conventions (a = (x + ip)/√2):
- S₀(ξ) = exp[½(ξ C² - ξ C†²)] : Var(x) = e^{-2ξ}/2 sur le vide.
- S±k(ξ) = exp(ξ AB - ξ A†B†) : Var((x_A + x_B)/√2) = Var((p_A - p_B)/√2) = e^{-2ξ}/2.
- Un unitaire U = exp(-iH) a pour matrice symplectique expm(Ω H_q).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm

from src.core.hamiltonian_builder import HamiltonianTerms
from src.models.gaussian import SymplecticTransform, symplectic_form
from src.models.hamiltonian import QuadraticHamiltonian
from src.models.modes import C2, Cm2, LabelLike, ModeRegistry
from src.utils.constants import LAMBDA_MIX
from src.utils.exceptions import DimensionError

logger = logging.getLogger(__name__)


# Ordre des modes du compresseur à quatre modes et du mélangeur
FOUR_MODE_ORDER = (C2(1), Cm2(1), C2(2), Cm2(2))


@dataclass(frozen=True)
class SqueezeParams:
    """Paramètres de compression (réels) et coefficient du mélangeur"""

    xi0: float = 0.0
    xi1: float = 0.0
    xi: float = 0.0
    lambda_mix: float = LAMBDA_MIX

    def __post_init__(self):
        for name in ('xi0', 'xi1', 'xi'):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"Paramètre {name} non fini")
        lam = self.lambda_mix
        if abs(lam * lam - lam - 1.0) > 1e-12:
            raise ValueError(f"λ = {lam} ne vérifie pas λ² = λ + 1")


def _check_distinct(labels: Sequence[LabelLike], registry: ModeRegistry) -> list:
    indices = [registry.index(label) for label in labels]
    if len(set(indices)) != len(indices):
        raise DimensionError(f"Modes dupliqués: {[str(l) for l in labels]}")
    return indices


# ==============================================================================
# GÉNÉRATEURS
# ==============================================================================

def symplectic_from_generator(hamiltonian: QuadraticHamiltonian) -> SymplecticTransform:
    """
    Matrice symplectique de U = exp(-iH)

    Args:
        hamiltonian: générateur quadratique

    Returns:
        SymplecticTransform: expm(Ω H_q)
    """
    omega = symplectic_form(hamiltonian.registry.size)
    return SymplecticTransform(hamiltonian.registry, expm(omega @ hamiltonian.matrix))


def two_mode_squeezer_generator(registry: ModeRegistry, mode_a: LabelLike, mode_b: LabelLike,
                                xi1: float) -> QuadraticHamiltonian:
    """H tel que exp(-iH) = exp(ξ AB - ξ A†B†), soit la paire -iξ A†B† + h.c."""
    _check_distinct([mode_a, mode_b], registry)
    return HamiltonianTerms(registry).pair(mode_a, mode_b, -1j * xi1).build()


def four_mode_squeezer_generator(registry: ModeRegistry, modes: Sequence[LabelLike],
                                 xi: float) -> QuadraticHamiltonian:
    """H tel que exp(-iH) = exp{-ξ(A₁†B₁† + B₁†A₂† + A₂†B₂† - h.c.)}"""
    if len(modes) != 4:
        raise DimensionError("Le compresseur à quatre modes attend quatre modes")
    _check_distinct(modes, registry)
    a1, b1, a2, b2 = modes
    terms = HamiltonianTerms(registry)
    for first, second in ((a1, b1), (a2, b1), (a2, b2)):
        terms.pair(first, second, -1j * xi)
    return terms.build()


# ==============================================================================
# COMPRESSEURS
# ==============================================================================

def single_mode_squeezer(registry: ModeRegistry, mode: LabelLike, xi0: float) -> SymplecticTransform:
    """
    Compresseur à un mode S₀(ξ₀)

    Args:
        registry: registre
        mode: mode comprimé
        xi0: paramètre réel; ξ₀ > 0 comprime x

    Returns:
        SymplecticTransform: diag(e^{-ξ₀}, e^{ξ₀}) sur le mode, identité ailleurs
    """
    block = np.diag([math.exp(-xi0), math.exp(xi0)])
    return SymplecticTransform.embed(registry, [mode], block)


def two_mode_squeezer(registry: ModeRegistry, mode_a: LabelLike, mode_b: LabelLike,
                      xi1: float) -> SymplecticTransform:
    """
    Compresseur à deux modes S±k(ξ₁)

    Args:
        registry: registre
        mode_a: premier mode (C₂ₖ dans les protocoles)
        mode_b: second mode (C₋₂ₖ)
        xi1: paramètre réel

    Returns:
        SymplecticTransform: x_A → c x_A - s x_B, p_A → c p_A + s p_B (et A ↔ B)
    """
    _check_distinct([mode_a, mode_b], registry)
    c, s = math.cosh(xi1), math.sinh(xi1)
    # ordre des quadratures (x_A, p_A, x_B, p_B)
    block = np.array([
        [c, 0.0, -s, 0.0],
        [0.0, c, 0.0, s],
        [-s, 0.0, c, 0.0],
        [0.0, s, 0.0, c],
    ])
    return SymplecticTransform.embed(registry, [mode_a, mode_b], block)


def four_mode_squeezer(registry: ModeRegistry, xi: float,
                       modes: Optional[Sequence[LabelLike]] = None) -> SymplecticTransform:
    """
    Compresseur à quatre modes exp{-ξ(C₂ₖ⁽¹⁾†C₋₂ₖ⁽¹⁾† + C₋₂ₖ⁽¹⁾†C₂ₖ⁽²⁾† + C₂ₖ⁽²⁾†C₋₂ₖ⁽²⁾† - h.c.)}

    Args:
        registry: registre contenant les quatre modes
        xi: paramètre réel
        modes: (C₂ₖ⁽¹⁾, C₋₂ₖ⁽¹⁾, C₂ₖ⁽²⁾, C₋₂ₖ⁽²⁾) par défaut

    Returns:
        SymplecticTransform: exponentielle du générateur quadratique
    """
    modes = FOUR_MODE_ORDER if modes is None else tuple(modes)
    return symplectic_from_generator(four_mode_squeezer_generator(registry, modes, xi))


# ==============================================================================
# MÉLANGEUR ENTRE ENSEMBLES
# ==============================================================================

def mixer_mode_matrix(lambda_mix: float = LAMBDA_MIX) -> np.ndarray:
    """
    Combinaisons linéaires du mélangeur dans l'ordre (A₁, B₁, A₂, B₂)

    d₊⁽¹⁾ = (A₁ + λA₂)/n, d₋⁽¹⁾ = (λB₂ - B₁)/n, d₊⁽²⁾ = (λA₁ - A₂)/n,
    d₋⁽²⁾ = (B₂ + λB₁)/n, n = √(1 + λ²). Chaque d occupe la place du mode
    de même indice.
    """
    n = math.sqrt(1.0 + lambda_mix ** 2)
    lam = lambda_mix
    return np.array([
        [1.0, 0.0, lam, 0.0],
        [0.0, -1.0, 0.0, lam],
        [lam, 0.0, -1.0, 0.0],
        [0.0, lam, 0.0, 1.0],
    ]) / n


def ensemble_mixer(registry: ModeRegistry, lambda_mix: float = LAMBDA_MIX,
                   modes: Optional[Sequence[LabelLike]] = None) -> SymplecticTransform:
    """
    Mélangeur passif T entre les modes ±2k des deux ensembles

    Args:
        registry: registre contenant les quatre modes ±2k
        lambda_mix: coefficient de mélange (nombre d'or)
        modes: (C₂ₖ⁽¹⁾, C₋₂ₖ⁽¹⁾, C₂ₖ⁽²⁾, C₋₂ₖ⁽²⁾) par défaut

    Returns:
        SymplecticTransform: x → Mx, p → Mp (M orthogonale)
    """
    modes = FOUR_MODE_ORDER if modes is None else tuple(modes)
    if len(modes) != 4:
        raise DimensionError("Le mélangeur attend quatre modes")
    _check_distinct(modes, registry)
    block = np.kron(mixer_mode_matrix(lambda_mix), np.eye(2))
    return SymplecticTransform.embed(registry, modes, block)


# ==============================================================================
# CONJUGAISON
# ==============================================================================

def conjugate_hamiltonian(hamiltonian: QuadraticHamiltonian,
                          transform: SymplecticTransform) -> QuadraticHamiltonian:
    """
    Hamiltonien conjugué V H V†, où V a pour matrice symplectique S

    Args:
        hamiltonian: hamiltonien quadratique
        transform: matrice symplectique de V (même registre)

    Returns:
        QuadraticHamiltonian: H_q → S⁻ᵀ H_q S⁻¹
    """
    if transform.registry != hamiltonian.registry:
        raise DimensionError("Registres différents dans la conjugaison")
    inverse = transform.inverse().matrix
    return QuadraticHamiltonian(hamiltonian.registry, inverse.T @ hamiltonian.matrix @ inverse)
