"""
Modèles de l'espace des phases
==============================

Structures de données de base du simulateur:
- GaussianState: vecteur moyen + matrice de covariance sur un registre de modes
- SymplecticTransform: application linéaire préservant la forme symplectique

Convention: quadratures r = (x₁, p₁, …, x_M, p_M), a = (x + ip)/√2, ħ = 1,
covariance du vide = ½·I.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
from scipy.linalg import block_diag

from config import SimulationConfig
from src.models.modes import LabelLike, ModeRegistry
from src.utils.exceptions import DimensionError, PhysicalityError


def symplectic_form(M: int) -> np.ndarray:
    """
    Forme symplectique canonique Ω

    Args:
        M: nombre de modes (≥ 1)

    Returns:
        np.ndarray: matrice 2M×2M diagonale par blocs [[0, 1], [-1, 0]]
    """
    if M < 1:
        raise DimensionError(f"Nombre de modes invalide: {M}")
    return block_diag(*([np.array([[0.0, 1.0], [-1.0, 0.0]])] * M))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """
    État gaussien multimode

    La moyenne reste identiquement nulle dans ce simulateur (hamiltoniens
    bilinéaires sans terme de déplacement); elle est tout de même propagée.
    """

    registry: ModeRegistry
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        covariance = np.array(self.covariance, dtype=float)
        dim = self.registry.dimension
        if mean.shape != (dim,) or covariance.shape != (dim, dim):
            raise DimensionError(
                f"Dimensions incompatibles avec {self.registry.size} modes: "
                f"moyenne {mean.shape}, covariance {covariance.shape}"
            )
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(covariance))):
            raise PhysicalityError("État gaussien avec valeurs non finies")
        scale = max(np.max(np.abs(covariance)), 1.0)
        if np.max(np.abs(covariance - covariance.T)) > SimulationConfig.SYMMETRY_TOLERANCE * scale:
            raise PhysicalityError("Matrice de covariance non symétrique")
        # symétrisation exacte des erreurs d'arrondi
        covariance = 0.5 * (covariance + covariance.T)
        mean.setflags(write=False)
        covariance.setflags(write=False)
        object.__setattr__(self, 'mean', mean)
        object.__setattr__(self, 'covariance', covariance)

    @property
    def n_modes(self) -> int:
        return self.registry.size

    def block(self, label: LabelLike, other: Optional[LabelLike] = None) -> np.ndarray:
        """Bloc 2×2 de covariance entre deux modes"""
        rows = list(self.registry.quadrature_indices(label))
        cols = list(self.registry.quadrature_indices(other if other is not None else label))
        return self.covariance[np.ix_(rows, cols)]

    def photon_number(self, label: LabelLike) -> float:
        """Nombre moyen de photons ⟨a†a⟩ = (σxx + σpp - 1)/2 (moyenne nulle)"""
        i, j = self.registry.quadrature_indices(label)
        displacement = 0.5 * (self.mean[i] ** 2 + self.mean[j] ** 2)
        return 0.5 * (self.covariance[i, i] + self.covariance[j, j] - 1.0) + displacement

    def to_dict(self) -> Dict:
        return {
            'modes': self.registry.names,
            'mean': self.mean.tolist(),
            'covariance': self.covariance.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SymplecticTransform:
    """
    Transformation symplectique sur l'espace des phases d'un registre

    `matrix` agit comme σ → S σ Sᵀ sur l'état; c'est aussi la matrice de
    Heisenberg U† r U = S r de l'unitaire correspondant.
    """

    registry: ModeRegistry
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        dim = self.registry.dimension
        if matrix.shape != (dim, dim):
            raise DimensionError(f"Transformation {matrix.shape} incompatible avec {self.registry.size} modes")
        if not np.all(np.isfinite(matrix)):
            raise PhysicalityError("Transformation symplectique non finie")
        omega = symplectic_form(self.registry.size)
        defect = np.max(np.abs(matrix @ omega @ matrix.T - omega))
        tolerance = SimulationConfig.SYMPLECTIC_TOLERANCE * max(1.0, np.max(np.abs(matrix)) ** 2)
        if defect > tolerance:
            raise PhysicalityError(f"Transformation non symplectique (défaut {defect:.3e})")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def identity(cls, registry: ModeRegistry) -> 'SymplecticTransform':
        return cls(registry, np.eye(registry.dimension))

    @classmethod
    def embed(cls, registry: ModeRegistry, labels: Sequence[LabelLike],
              block: np.ndarray) -> 'SymplecticTransform':
        """
        Plonge un bloc agissant sur un sous-ensemble de modes (identité ailleurs)

        Args:
            registry: registre complet
            labels: modes du bloc, dans l'ordre des lignes du bloc
            block: matrice 2k×2k

        Returns:
            SymplecticTransform: transformation sur tout le registre
        """
        indices = registry.quadrature_slice(labels)
        block = np.asarray(block, dtype=float)
        if block.shape != (len(indices), len(indices)):
            raise DimensionError(f"Bloc {block.shape} incompatible avec {len(labels)} modes")
        if len(set(indices)) != len(indices):
            raise DimensionError("Modes dupliqués dans le bloc")
        matrix = np.eye(registry.dimension)
        matrix[np.ix_(indices, indices)] = block
        return cls(registry, matrix)

    def compose(self, other: 'SymplecticTransform') -> 'SymplecticTransform':
        """Produit self·other (other agit en premier sur l'état)"""
        if other.registry != self.registry:
            raise DimensionError("Registres différents dans la composition")
        return SymplecticTransform(self.registry, self.matrix @ other.matrix)

    def inverse(self) -> 'SymplecticTransform':
        """S⁻¹ = -Ω Sᵀ Ω"""
        omega = symplectic_form(self.registry.size)
        return SymplecticTransform(self.registry, -omega @ self.matrix.T @ omega)

    def symplectic_defect(self) -> float:
        omega = symplectic_form(self.registry.size)
        return float(np.max(np.abs(self.matrix @ omega @ self.matrix.T - omega)))

    def __matmul__(self, other: 'SymplecticTransform') -> 'SymplecticTransform':
        return self.compose(other)
