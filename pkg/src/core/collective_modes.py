"""
Modes collectifs d'une chaîne d'atomes
======================================

Recouvrements des opérateurs collectifs C_mk = N^{-1/2} Σⱼ cⱼ e^{imkxⱼ}
d'une chaîne uniforme xⱼ = (j-1)d, et mesure de l'écart à l'hypothèse
d'orthogonalité utilisée par la dynamique.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from config import ModesConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnsembleGeometry:
    """Chaîne uniforme de N atomes, pas d, nombre d'onde k"""

    N: int
    d: float
    k: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"Nombre d'atomes invalide: {self.N}")
        if not (self.d > 0 and math.isfinite(self.d)):
            raise ValueError(f"Pas de réseau invalide: {self.d}")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"Nombre d'onde invalide: {self.k}")

    @classmethod
    def from_length(cls, N: int, kL: float, k: float = 1.0) -> 'EnsembleGeometry':
        """Géométrie de longueur réduite kL = N·k·d"""
        return cls(N=N, d=kL / (k * N), k=k)

    @property
    def positions(self) -> np.ndarray:
        return self.d * np.arange(self.N)

    @property
    def length(self) -> float:
        return self.N * self.d

    @property
    def kL(self) -> float:
        return self.k * self.length

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.k

    def to_dict(self) -> Dict:
        return {'N': self.N, 'd': self.d, 'k': self.k, 'kL': self.kL,
                'length_in_wavelengths': self.length / self.wavelength}


def overlap_matrix(geometry: EnsembleGeometry,
                   orders: Sequence[int] = ModesConfig.ORDERS) -> np.ndarray:
    """
    Matrice des recouvrements (1/N) Σⱼ exp(i(m - m')k xⱼ)

    Args:
        geometry: chaîne d'atomes
        orders: ordres m des modes collectifs

    Returns:
        np.ndarray: matrice complexe hermitienne de diagonale 1
    """
    orders = list(orders)
    phases = geometry.k * geometry.positions
    matrix = np.ones((len(orders), len(orders)), dtype=complex)
    for a, m in enumerate(orders):
        for b, m_prime in enumerate(orders):
            if m != m_prime:
                matrix[a, b] = np.mean(np.exp(1j * (m - m_prime) * phases))
    return matrix


def chain_overlap(m: int, m_prime: int, kL: float) -> complex:
    """
    Limite continue du recouvrement: (e^{i(m-m')kL} - 1)/(i(m-m')kL)

    Args:
        m, m_prime: ordres des modes
        kL: longueur réduite (> 0)

    Returns:
        complex: 1 si m = m'
    """
    if not kL > 0:
        raise ValueError(f"kL doit être strictement positif: {kL}")
    if m == m_prime:
        return 1.0 + 0.0j
    theta = (m - m_prime) * kL
    return (cmath.exp(1j * theta) - 1.0) / (1j * theta)


def orthogonality_deficit(geometry: EnsembleGeometry, threshold: Optional[float] = None) -> float:
    """
    Plus grand |recouvrement| entre modes collectifs distincts

    Un avertissement est journalisé au-delà du seuil configuré.

    Args:
        geometry: chaîne d'atomes
        threshold: seuil d'avertissement (défaut ModesConfig.DEFICIT_WARNING_THRESHOLD)

    Returns:
        float: déficit dans [0, 1]
    """
    threshold = ModesConfig.DEFICIT_WARNING_THRESHOLD if threshold is None else threshold
    matrix = overlap_matrix(geometry)
    off_diagonal = np.abs(matrix - np.diag(np.diag(matrix)))
    deficit = float(min(1.0, np.max(off_diagonal)))
    if deficit > threshold:
        logger.warning(
            f"⚠️ Modes collectifs non orthogonaux: déficit {deficit:.4f} > {threshold} (kL = {geometry.kL:.4g})"
        )
    return deficit


def modes_report(geometry: EnsembleGeometry, threshold: Optional[float] = None) -> Dict:
    """Rapport complet: matrice, déficit, limite continue"""
    threshold = ModesConfig.DEFICIT_WARNING_THRESHOLD if threshold is None else threshold
    orders = list(ModesConfig.ORDERS)
    deficit = orthogonality_deficit(geometry, threshold)
    continuum = max(abs(chain_overlap(m, n, geometry.kL)) for m in orders for n in orders if m != n)
    return {
        'geometry': geometry.to_dict(),
        'orders': orders,
        'overlap_matrix': overlap_matrix(geometry, orders),
        'deficit': deficit,
        'continuum_deficit': continuum,
        'threshold': threshold,
        'orthogonal': deficit <= threshold,
    }
