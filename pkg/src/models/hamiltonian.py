"""
Modèle des hamiltoniens quadratiques
====================================

H = ½ rᵀ H_q r sur les quadratures, avec H_q réelle symétrique.

Correspondance avec les opérateurs d'échelle: ζ = (a₁…a_M, a₁†…a_M†) = W r,
H = ½ ζ† 𝐇 ζ avec 𝐇 = [[Mₗ, N], [N*, Mₗ*]]. Un terme c·a_j†a_k + h.c.
contribue Mₗ[j,k] += c, Mₗ[k,j] += c*; un terme c·a_j†a_k† + h.c. contribue
N[j,k] = N[k,j] += c (2c si j = k). Les constantes additives sont ignorées.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from src.models.modes import LabelLike, ModeLabel, ModeRegistry
from src.utils.exceptions import DimensionError


def ladder_transform(M: int) -> np.ndarray:
    """
    Matrice unitaire W telle que ζ = W r

    Args:
        M: nombre de modes

    Returns:
        np.ndarray: matrice complexe 2M×2M
    """
    W = np.zeros((2 * M, 2 * M), dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    for j in range(M):
        W[j, 2 * j] = s
        W[j, 2 * j + 1] = 1j * s
        W[M + j, 2 * j] = s
        W[M + j, 2 * j + 1] = -1j * s
    return W


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """Forme quadratique réelle symétrique sur les quadratures d'un registre"""

    registry: ModeRegistry
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        dim = self.registry.dimension
        if matrix.shape != (dim, dim):
            raise DimensionError(f"Hamiltonien {matrix.shape} incompatible avec {self.registry.size} modes")
        matrix = 0.5 * (matrix + matrix.T)
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def zeros(cls, registry: ModeRegistry) -> 'QuadraticHamiltonian':
        return cls(registry, np.zeros((registry.dimension, registry.dimension)))

    @classmethod
    def from_ladder(cls, registry: ModeRegistry, exchange: np.ndarray,
                    pair: np.ndarray) -> 'QuadraticHamiltonian':
        """
        Construit H_q à partir des blocs d'échelle

        Args:
            registry: registre de modes
            exchange: bloc Mₗ hermitien (M×M)
            pair: bloc N symétrique (M×M)

        Returns:
            QuadraticHamiltonian: H_q = Re(W† 𝐇 W)
        """
        M = registry.size
        exchange = np.asarray(exchange, dtype=complex)
        pair = np.asarray(pair, dtype=complex)
        if exchange.shape != (M, M) or pair.shape != (M, M):
            raise DimensionError("Blocs d'échelle de taille incorrecte")
        bold = np.block([[exchange, pair], [pair.conj(), exchange.conj()]])
        W = ladder_transform(M)
        return cls(registry, np.real(W.conj().T @ bold @ W))

    def ladder_blocks(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Blocs d'échelle (Mₗ, N) de 𝐇 = W H_q W†

        Returns:
            Tuple: (échange, paire), matrices complexes M×M
        """
        M = self.registry.size
        W = ladder_transform(M)
        bold = W @ self.matrix @ W.conj().T
        return bold[:M, :M], bold[:M, M:]

    def exchange_coefficient(self, first: LabelLike, second: LabelLike) -> complex:
        """Coefficient c du terme c·a_first† a_second"""
        exchange, _ = self.ladder_blocks()
        return complex(exchange[self.registry.index(first), self.registry.index(second)])

    def pair_coefficient(self, first: LabelLike, second: LabelLike) -> complex:
        """Coefficient c du terme c·a_first† a_second† (j ≠ k)"""
        _, pair = self.ladder_blocks()
        j, k = self.registry.index(first), self.registry.index(second)
        value = pair[j, k]
        return complex(value / 2.0 if j == k else value)

    def coupling_magnitude(self, first: LabelLike, second: LabelLike) -> float:
        """Intensité totale du couplage √(|Mₗ_jk|² + |N_jk|²)"""
        exchange, pair = self.ladder_blocks()
        j, k = self.registry.index(first), self.registry.index(second)
        return float(np.sqrt(abs(exchange[j, k]) ** 2 + abs(pair[j, k]) ** 2))

    def restrict(self, labels: Sequence[LabelLike]) -> 'QuadraticHamiltonian':
        """Sous-hamiltonien sur les modes donnés (les couplages sortants sont supprimés)"""
        sub_registry = self.registry.subset(labels)
        indices = self.registry.quadrature_slice(sub_registry.labels)
        return QuadraticHamiltonian(sub_registry, self.matrix[np.ix_(indices, indices)])

    def relabeled(self, mapping: Dict[ModeLabel, ModeLabel]) -> 'QuadraticHamiltonian':
        """Hamiltonien obtenu en échangeant les modes selon `mapping`"""
        P = self.registry.permutation(mapping)
        return QuadraticHamiltonian(self.registry, P @ self.matrix @ P.T)

    def __add__(self, other: 'QuadraticHamiltonian') -> 'QuadraticHamiltonian':
        if other.registry != self.registry:
            raise DimensionError("Registres différents")
        return QuadraticHamiltonian(self.registry, self.matrix + other.matrix)

    def coupled_pairs(self, threshold: float = 1e-12) -> List[Dict]:
        """Liste des couplages non nuls entre modes distincts"""
        exchange, pair = self.ladder_blocks()
        couplings = []
        labels = self.registry.labels
        for j in range(len(labels)):
            for k in range(j + 1, len(labels)):
                magnitude = np.sqrt(abs(exchange[j, k]) ** 2 + abs(pair[j, k]) ** 2)
                if magnitude > threshold:
                    couplings.append({
                        'modes': [labels[j].name, labels[k].name],
                        'exchange': abs(exchange[j, k]),
                        'pair': abs(pair[j, k]),
                    })
        return couplings

    def to_dict(self) -> Dict:
        return {
            'modes': self.registry.names,
            'matrix': self.matrix.tolist(),
            'couplings': self.coupled_pairs(),
        }
