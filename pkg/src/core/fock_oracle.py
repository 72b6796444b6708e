"""
Oracle en espace de Fock tronqué
================================

Intégration directe de l'équation maîtresse sur au plus trois modes,
sans hypothèse gaussienne, pour valider le module gaussien:

    ρ̇ = -i[H, ρ] + Σᵢ (κ/2)(2aᵢρaᵢ† - aᵢ†aᵢρ - ρaᵢ†aᵢ)

Base produit ordonnée mode par mode (premier mode le plus significatif),
occupations croissantes: l'indice de |n₁, …, n_m⟩ est Σ nᵢ c^{m-1-i}.
La troncature `cutoff` est le nombre de niveaux par mode (0 … cutoff-1).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from config import OracleConfig, SimulationConfig
from src.models.gaussian import GaussianState
from src.models.hamiltonian import QuadraticHamiltonian
from src.models.modes import LabelLike, ModeRegistry
from src.utils.constants import ERROR_MESSAGES
from src.utils.exceptions import DimensionError, PhysicalityError, TruncationError

logger = logging.getLogger(__name__)

# (mode, True) = création, (mode, False) = annihilation
LadderFactor = Tuple[int, bool]


# ==============================================================================
# ESPACE DE FOCK
# ==============================================================================

@dataclass(frozen=True)
class FockSpace:
    """Espace produit tronqué de m ≤ 3 modes"""

    registry: ModeRegistry
    cutoff: int = OracleConfig.DEFAULT_CUTOFF

    def __post_init__(self):
        if self.registry.size > OracleConfig.MAX_MODES:
            raise DimensionError(
                f"L'oracle est limité à {OracleConfig.MAX_MODES} modes ({self.registry.size} demandés)"
            )
        if not 2 <= self.cutoff <= OracleConfig.MAX_CUTOFF:
            raise DimensionError(f"Troncature hors de [2, {OracleConfig.MAX_CUTOFF}]: {self.cutoff}")
        if self.dimension > OracleConfig.MAX_DIMENSION:
            raise DimensionError(
                f"Dimension {self.dimension} au-delà de la limite {OracleConfig.MAX_DIMENSION}"
            )

    @property
    def n_modes(self) -> int:
        return self.registry.size

    @property
    def dimension(self) -> int:
        return self.cutoff ** self.registry.size

    def annihilation(self, mode: int) -> np.ndarray:
        """Opérateur aᵢ dense sur l'espace produit"""
        single = np.diag(np.sqrt(np.arange(1, self.cutoff, dtype=float)), k=1)
        operator = np.ones((1, 1))
        for i in range(self.n_modes):
            operator = np.kron(operator, single if i == mode else np.eye(self.cutoff))
        return operator.astype(complex)

    def mode_index(self, label: LabelLike) -> int:
        return self.registry.index(label)

    def basis_index(self, occupations: Sequence[int]) -> int:
        if len(occupations) != self.n_modes or any(not 0 <= n < self.cutoff for n in occupations):
            raise DimensionError(f"Occupations {list(occupations)} hors de l'espace tronqué")
        index = 0
        for n in occupations:
            index = index * self.cutoff + n
        return index

    def top_level_projector(self, mode: int) -> np.ndarray:
        """Projecteur sur le niveau cutoff-1 du mode donné (diagonale)"""
        levels = np.zeros(self.cutoff)
        levels[-1] = 1.0
        diagonal = np.ones(1)
        for i in range(self.n_modes):
            diagonal = np.kron(diagonal, levels if i == mode else np.ones(self.cutoff))
        return diagonal


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Matrice densité dense sur un FockSpace"""

    space: FockSpace
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        dim = self.space.dimension
        if matrix.shape != (dim, dim):
            raise DimensionError(f"Matrice densité {matrix.shape} pour une dimension {dim}")
        if not np.all(np.isfinite(matrix)):
            raise PhysicalityError("Matrice densité non finie")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(matrix))):
            raise PhysicalityError("Matrice densité non hermitienne")
        matrix = 0.5 * (matrix + matrix.conj().T)
        trace = float(np.real(np.trace(matrix)))
        if abs(trace - 1.0) > SimulationConfig.NORMALIZATION_TOLERANCE:
            raise PhysicalityError(f"Trace de la matrice densité {trace:.12f} ≠ 1")
        if float(np.min(np.linalg.eigvalsh(matrix))) < -1e-9:
            raise PhysicalityError("Matrice densité non positive")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def from_ket(cls, space: FockSpace, ket: np.ndarray) -> 'FockDensity':
        ket = np.asarray(ket, dtype=complex)
        return cls(space, np.outer(ket, ket.conj()))

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def top_level_population(self) -> float:
        """Population maximale du dernier niveau, tous modes confondus"""
        diagonal = np.real(np.diag(self.matrix))
        return max(float(diagonal @ self.space.top_level_projector(i)) for i in range(self.space.n_modes))

    def photon_number(self, mode: int) -> float:
        a = self.space.annihilation(mode)
        return float(np.real(np.trace(self.matrix @ a.conj().T @ a)))


# ==============================================================================
# EXPRESSIONS D'OPÉRATEURS
# ==============================================================================

@dataclass
class OperatorExpr:
    """
    Somme de termes coefficient × produit d'opérateurs d'échelle

    `hermitian` ajoute un terme et son conjugué hermitien.
    """

    terms: List[Tuple[complex, Tuple[LadderFactor, ...]]] = field(default_factory=list)

    def add(self, coefficient: complex, *factors: LadderFactor) -> 'OperatorExpr':
        self.terms.append((complex(coefficient), tuple(factors)))
        return self

    def hermitian(self, coefficient: complex, *factors: LadderFactor) -> 'OperatorExpr':
        self.add(coefficient, *factors)
        adjoint = tuple((mode, not dagger) for mode, dagger in reversed(factors))
        return self.add(np.conj(coefficient), *adjoint)

    def dagger(self) -> 'OperatorExpr':
        return OperatorExpr([
            (complex(np.conj(c)), tuple((mode, not dagger) for mode, dagger in reversed(factors)))
            for c, factors in self.terms
        ])

    def __add__(self, other: 'OperatorExpr') -> 'OperatorExpr':
        return OperatorExpr(self.terms + other.terms)

    def to_matrix(self, space: FockSpace) -> np.ndarray:
        """Représentation dense sur l'espace tronqué"""
        dim = space.dimension
        ladders = {}
        total = np.zeros((dim, dim), dtype=complex)
        for coefficient, factors in self.terms:
            product = np.eye(dim, dtype=complex)
            for mode, dagger in factors:
                if mode not in ladders:
                    if not 0 <= mode < space.n_modes:
                        raise DimensionError(f"Mode {mode} hors de l'espace à {space.n_modes} modes")
                    ladders[mode] = space.annihilation(mode)
                a = ladders[mode]
                product = product @ (a.conj().T if dagger else a)
            total += coefficient * product
        return total

    def is_hermitian(self, space: FockSpace, tolerance: float = 1e-12) -> bool:
        matrix = self.to_matrix(space)
        return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tolerance)

    @classmethod
    def from_quadratic(cls, hamiltonian: QuadraticHamiltonian) -> 'OperatorExpr':
        """
        Expression d'un hamiltonien quadratique (constante additive omise)

        H = Σ Mₗ_jk a_j†a_k + ½ Σ (N_jk a_j†a_k† + N*_jk a_j a_k)
        """
        exchange, pair = hamiltonian.ladder_blocks()
        expr = cls()
        size = hamiltonian.registry.size
        for j in range(size):
            for k in range(size):
                if abs(exchange[j, k]) > 0.0:
                    expr.add(exchange[j, k], (j, True), (k, False))
                if abs(pair[j, k]) > 0.0:
                    expr.add(0.5 * pair[j, k], (j, True), (k, True))
                    expr.add(0.5 * np.conj(pair[j, k]), (j, False), (k, False))
        return expr


# ==============================================================================
# ÉTATS DE RÉFÉRENCE
# ==============================================================================

def _check_ket_truncation(ket: np.ndarray, discarded: float, context: str) -> np.ndarray:
    if discarded > OracleConfig.TRUNCATION_THRESHOLD:
        raise TruncationError(
            f"{ERROR_MESSAGES['truncation']} ({context}: poids hors troncature {discarded:.3e})",
            population=discarded,
        )
    return ket / np.linalg.norm(ket)


def vacuum(space: FockSpace) -> FockDensity:
    ket = np.zeros(space.dimension, dtype=complex)
    ket[0] = 1.0
    return FockDensity.from_ket(space, ket)


def number_state(space: FockSpace, occupations: Sequence[int]) -> FockDensity:
    ket = np.zeros(space.dimension, dtype=complex)
    ket[space.basis_index(occupations)] = 1.0
    return FockDensity.from_ket(space, ket)


def thermal(space: FockSpace, occupations: Sequence[float]) -> FockDensity:
    """État thermique produit, distribution géométrique renormalisée"""
    if len(occupations) != space.n_modes or any(n < 0 for n in occupations):
        raise DimensionError("Occupations thermiques invalides")
    diagonal = np.ones(1)
    for n_bar in occupations:
        levels = np.arange(space.cutoff)
        weights = (n_bar / (1.0 + n_bar)) ** levels / (1.0 + n_bar)
        diagonal = np.kron(diagonal, weights)
    discarded = 1.0 - float(np.sum(diagonal))
    if discarded > OracleConfig.TRUNCATION_THRESHOLD:
        raise TruncationError(f"{ERROR_MESSAGES['truncation']} (état thermique)", population=discarded)
    return FockDensity(space, np.diag(diagonal / np.sum(diagonal)))


def squeezed_vacuum(space: FockSpace, mode: LabelLike, xi: float) -> FockDensity:
    """
    S₀(ξ)|0⟩ = (cosh ξ)^{-1/2} Σₙ (-tanh ξ)ⁿ √((2n)!)/(2ⁿ n!) |2n⟩ sur un mode,
    vide sur les autres

    Args:
        space: espace tronqué
        mode: mode comprimé
        xi: paramètre réel (ξ > 0 comprime x)
    """
    target = space.mode_index(mode)
    single = np.zeros(space.cutoff, dtype=complex)
    t = math.tanh(xi)
    for n in range(0, (space.cutoff + 1) // 2):
        log_amplitude = 0.5 * math.lgamma(2 * n + 1) - n * math.log(2.0) - math.lgamma(n + 1)
        single[2 * n] = (-t) ** n * math.exp(log_amplitude)
    single /= math.sqrt(math.cosh(xi))
    discarded = 1.0 - float(np.sum(np.abs(single) ** 2))
    ket = np.ones(1, dtype=complex)
    for i in range(space.n_modes):
        factor = single if i == target else np.eye(space.cutoff)[0]
        ket = np.kron(ket, factor)
    return FockDensity.from_ket(space, _check_ket_truncation(ket, discarded, 'vide comprimé'))


def two_mode_squeezed_vacuum(space: FockSpace, mode_a: LabelLike, mode_b: LabelLike,
                             xi: float) -> FockDensity:
    """S±k(ξ)|0,0⟩ = (cosh ξ)^{-1} Σₙ (-tanh ξ)ⁿ |n, n⟩, vide sur les autres modes"""
    i, j = space.mode_index(mode_a), space.mode_index(mode_b)
    if i == j:
        raise DimensionError("Modes identiques pour le vide comprimé à deux modes")
    ket = np.zeros(space.dimension, dtype=complex)
    t = math.tanh(xi)
    for n in range(space.cutoff):
        occupations = [0] * space.n_modes
        occupations[i] = occupations[j] = n
        ket[space.basis_index(occupations)] = (-t) ** n / math.cosh(xi)
    discarded = 1.0 - float(np.sum(np.abs(ket) ** 2))
    return FockDensity.from_ket(space, _check_ket_truncation(ket, discarded, 'vide comprimé à deux modes'))


# ==============================================================================
# ÉVOLUTION
# ==============================================================================

def evolve_fock(rho0: FockDensity, hamiltonian: OperatorExpr, damped: Sequence[LabelLike],
                kappa: float, t: float, checkpoints: int = 10) -> FockDensity:
    """
    Intègre l'équation maîtresse tronquée

    Args:
        rho0: état initial
        hamiltonian: expression hermitienne de H
        damped: modes amortis au taux κ
        kappa: taux d'amortissement (≥ 0)
        t: durée
        checkpoints: nombre d'instants où la troncature est contrôlée

    Returns:
        FockDensity: état à l'instant t
    """
    space = rho0.space
    if kappa < 0 or t < 0:
        raise ValueError("κ et t doivent être positifs ou nuls")
    H = hamiltonian.to_matrix(space)
    if np.max(np.abs(H - H.conj().T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(H), initial=0.0)):
        raise PhysicalityError("Hamiltonien non hermitien")
    if t == 0.0:
        return rho0

    dim = space.dimension
    jumps = [space.annihilation(space.mode_index(label)) for label in damped]
    # H_eff = H - i(κ/2) Σ a†a
    h_eff = H.copy()
    for a in jumps:
        h_eff -= 0.5j * kappa * (a.conj().T @ a)
    h_eff_dagger = h_eff.conj().T

    def _lindblad_rhs(_time, y):
        rho = y.reshape(dim, dim)
        rho_dot = -1j * (h_eff @ rho - rho @ h_eff_dagger)
        for a in jumps:
            rho_dot += kappa * (a @ rho @ a.conj().T)
        return rho_dot.ravel()

    times = np.linspace(0.0, t, max(2, checkpoints + 1))
    solution = solve_ivp(
        _lindblad_rhs,
        t_span=(0.0, t),
        y0=np.array(rho0.matrix).ravel(),
        method=OracleConfig.METHOD,
        t_eval=times,
        rtol=OracleConfig.RTOL,
        atol=OracleConfig.ATOL,
    )
    if not solution.success:
        raise PhysicalityError(f"Échec de l'intégration de l'oracle: {solution.message}")

    worst = 0.0
    for column in solution.y.T:
        rho = column.reshape(dim, dim)
        diagonal = np.real(np.diag(rho))
        worst = max(worst, max(float(diagonal @ space.top_level_projector(i)) for i in range(space.n_modes)))
    logger.debug(f"Population maximale du dernier niveau: {worst:.3e} (troncature {space.cutoff})")
    if worst > OracleConfig.TRUNCATION_THRESHOLD:
        raise TruncationError(
            f"{ERROR_MESSAGES['truncation']}: population {worst:.3e} au niveau {space.cutoff - 1}",
            population=worst,
            cutoff=space.cutoff,
        )

    final = solution.y[:, -1].reshape(dim, dim)
    final = 0.5 * (final + final.conj().T)
    return FockDensity(space, final)


# ==============================================================================
# PONTS VERS LE MODULE GAUSSIEN
# ==============================================================================

def quadrature_operators(space: FockSpace) -> List[np.ndarray]:
    """(x₁, p₁, …) avec x = (a + a†)/√2, p = (a - a†)/(i√2)"""
    operators = []
    for mode in range(space.n_modes):
        a = space.annihilation(mode)
        operators.append((a + a.conj().T) / math.sqrt(2.0))
        operators.append((a - a.conj().T) / (1j * math.sqrt(2.0)))
    return operators


def covariance_from_density(rho: FockDensity) -> GaussianState:
    """
    Premiers et seconds moments d'une matrice densité

    Args:
        rho: matrice densité

    Returns:
        GaussianState: moyenne ⟨rᵢ⟩ et covariance ½⟨{rᵢ, rⱼ}⟩ - ⟨rᵢ⟩⟨rⱼ⟩
    """
    operators = quadrature_operators(rho.space)
    n = len(operators)
    mean = np.array([np.real(np.trace(rho.matrix @ r)) for r in operators])
    weighted = [rho.matrix @ r for r in operators]
    covariance = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            # Tr(ρ rᵢ rⱼ) = Σ (ρ rᵢ) ∘ rⱼᵀ
            second = np.sum(weighted[i] * operators[j].T)
            value = float(np.real(second)) - mean[i] * mean[j]
            covariance[i, j] = covariance[j, i] = value
    return GaussianState(rho.space.registry, mean, covariance)


def fock_overlap(rho: FockDensity, psi: FockDensity) -> float:
    """
    Recouvrement ⟨ψ|ρ|ψ⟩ avec un état pur

    Args:
        rho: état quelconque
        psi: état pur sur la même base

    Returns:
        float: valeur dans [0, 1]
    """
    if rho.space != psi.space:
        raise DimensionError("Bases de Fock différentes")
    if abs(psi.purity - 1.0) > SimulationConfig.NORMALIZATION_TOLERANCE:
        raise PhysicalityError(f"L'état de référence doit être pur (pureté {psi.purity:.10f})")
    value = float(np.real(np.trace(rho.matrix @ psi.matrix)))
    return min(1.0, max(0.0, value))


def compare_with_gaussian(rho: FockDensity, state: GaussianState) -> Dict:
    """Écarts entre les moments de l'oracle et un état gaussien du même registre"""
    if state.registry != rho.space.registry:
        raise DimensionError("Registres différents entre l'oracle et l'état gaussien")
    moments = covariance_from_density(rho)
    return {
        'max_covariance_discrepancy': float(np.max(np.abs(moments.covariance - state.covariance))),
        'max_mean_discrepancy': float(np.max(np.abs(moments.mean - state.mean))),
        'top_level_population': rho.top_level_population(),
        'oracle_purity': rho.purity,
    }
