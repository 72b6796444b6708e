"""
Modèle des modes bosoniques
===========================

Étiquettes des modes (modes de cavité a₊, a₋ et modes collectifs C_mk
des ensembles atomiques) et registre ordonné qui fixe l'indexation des
quadratures: le mode i occupe les indices (2i, 2i+1) pour (x_i, p_i).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.utils.constants import COLLECTIVE_ORDERS
from src.utils.exceptions import DimensionError, UnknownModeError


class ModeKind(str, Enum):
    """Nature d'un mode"""

    CAVITY_PLUS = 'cavity_plus'
    CAVITY_MINUS = 'cavity_minus'
    COLLECTIVE = 'collective'


_ORDER_NAMES = {0: '0k', 2: '2k', -2: 'm2k'}
_ORDER_FROM_NAME = {value: key for key, value in _ORDER_NAMES.items()}


@dataclass(frozen=True)
class ModeLabel:
    """
    Identifiant d'un mode bosonique

    Les modes collectifs portent un numéro d'ensemble n ∈ {1, 2} et un
    ordre m ∈ {0, +2, -2}; les modes de cavité n'en portent pas.
    """

    kind: ModeKind
    ensemble: Optional[int] = None
    order: Optional[int] = None

    def __post_init__(self):
        if self.kind == ModeKind.COLLECTIVE:
            if self.ensemble is None or self.ensemble < 1:
                raise ValueError(f"Numéro d'ensemble invalide: {self.ensemble}")
            if self.order not in COLLECTIVE_ORDERS:
                raise ValueError(f"Ordre collectif invalide: {self.order}")
        elif self.ensemble is not None or self.order is not None:
            raise ValueError("Un mode de cavité ne porte ni ensemble ni ordre")

    @classmethod
    def cavity_plus(cls) -> 'ModeLabel':
        return cls(ModeKind.CAVITY_PLUS)

    @classmethod
    def cavity_minus(cls) -> 'ModeLabel':
        return cls(ModeKind.CAVITY_MINUS)

    @classmethod
    def collective(cls, ensemble: int, order: int) -> 'ModeLabel':
        return cls(ModeKind.COLLECTIVE, ensemble, order)

    @classmethod
    def from_name(cls, name: str) -> 'ModeLabel':
        """
        Reconstruit une étiquette à partir de son nom

        Args:
            name: 'a_plus', 'a_minus' ou 'C{0k,2k,m2k}_{n}'

        Returns:
            ModeLabel: étiquette correspondante
        """
        if name == 'a_plus':
            return cls.cavity_plus()
        if name == 'a_minus':
            return cls.cavity_minus()
        if name.startswith('C') and '_' in name:
            order_part, ensemble_part = name[1:].rsplit('_', 1)
            if order_part in _ORDER_FROM_NAME and ensemble_part.isdigit():
                return cls.collective(int(ensemble_part), _ORDER_FROM_NAME[order_part])
        raise UnknownModeError(f"Nom de mode inconnu: {name!r}")

    @property
    def name(self) -> str:
        if self.kind == ModeKind.CAVITY_PLUS:
            return 'a_plus'
        if self.kind == ModeKind.CAVITY_MINUS:
            return 'a_minus'
        return f"C{_ORDER_NAMES[self.order]}_{self.ensemble}"

    @property
    def is_cavity(self) -> bool:
        return self.kind != ModeKind.COLLECTIVE

    def mirrored(self) -> 'ModeLabel':
        """Image par inversion du sens de propagation: a₊↔a₋ et k→-k"""
        if self.kind == ModeKind.CAVITY_PLUS:
            return ModeLabel.cavity_minus()
        if self.kind == ModeKind.CAVITY_MINUS:
            return ModeLabel.cavity_plus()
        return ModeLabel.collective(self.ensemble, -self.order if self.order else 0)

    def __str__(self) -> str:
        return self.name


# Raccourcis
A_PLUS = ModeLabel.cavity_plus()
A_MINUS = ModeLabel.cavity_minus()


def C0(ensemble: int) -> ModeLabel:
    return ModeLabel.collective(ensemble, 0)


def C2(ensemble: int) -> ModeLabel:
    return ModeLabel.collective(ensemble, 2)


def Cm2(ensemble: int) -> ModeLabel:
    return ModeLabel.collective(ensemble, -2)


LabelLike = Union[ModeLabel, str]


def as_label(label: LabelLike) -> ModeLabel:
    """Accepte une étiquette ou son nom"""
    if isinstance(label, ModeLabel):
        return label
    if isinstance(label, str):
        return ModeLabel.from_name(label)
    raise UnknownModeError(f"Étiquette de mode invalide: {label!r}")


@dataclass(frozen=True)
class ModeRegistry:
    """
    Registre ordonné de modes

    L'ordre canonique est [a₊, a₋, C₀ₖ⁽¹⁾, C₂ₖ⁽¹⁾, C₋₂ₖ⁽¹⁾, C₀ₖ⁽²⁾, C₂ₖ⁽²⁾, C₋₂ₖ⁽²⁾]
    tronqué au nombre d'ensembles configuré.
    """

    labels: Tuple[ModeLabel, ...]

    def __post_init__(self):
        labels = tuple(as_label(label) for label in self.labels)
        object.__setattr__(self, 'labels', labels)
        if not labels:
            raise DimensionError("Le registre doit contenir au moins un mode")
        if len(set(labels)) != len(labels):
            raise DimensionError(f"Étiquettes dupliquées: {[str(l) for l in labels]}")
        object.__setattr__(self, '_positions', {label: i for i, label in enumerate(labels)})

    @classmethod
    def canonical(cls, n_ensembles: int = 2) -> 'ModeRegistry':
        """
        Registre canonique

        Args:
            n_ensembles: nombre d'ensembles atomiques (0, 1 ou 2)

        Returns:
            ModeRegistry: cavité puis modes collectifs par ensemble
        """
        if n_ensembles not in (0, 1, 2):
            raise ValueError(f"Nombre d'ensembles non supporté: {n_ensembles}")
        labels = [A_PLUS, A_MINUS]
        for n in range(1, n_ensembles + 1):
            labels.extend([C0(n), C2(n), Cm2(n)])
        return cls(tuple(labels))

    @classmethod
    def from_names(cls, names: Iterable[str]) -> 'ModeRegistry':
        return cls(tuple(ModeLabel.from_name(name) for name in names))

    @property
    def size(self) -> int:
        """Nombre de modes M"""
        return len(self.labels)

    @property
    def dimension(self) -> int:
        """Dimension de l'espace des phases 2M"""
        return 2 * len(self.labels)

    @property
    def names(self) -> List[str]:
        return [label.name for label in self.labels]

    @property
    def cavity_modes(self) -> List[ModeLabel]:
        return [label for label in self.labels if label.is_cavity]

    @property
    def n_ensembles(self) -> int:
        ensembles = {label.ensemble for label in self.labels if not label.is_cavity}
        return len(ensembles)

    def index(self, label: LabelLike) -> int:
        """Position d'un mode dans le registre"""
        resolved = as_label(label)
        try:
            return self._positions[resolved]
        except KeyError:
            raise UnknownModeError(
                f"Mode {resolved} absent du registre {self.names}"
            ) from None

    def quadrature_indices(self, label: LabelLike) -> Tuple[int, int]:
        i = self.index(label)
        return 2 * i, 2 * i + 1

    def quadrature_slice(self, labels: Sequence[LabelLike]) -> List[int]:
        """Indices de quadratures (x, p) des modes donnés, dans l'ordre donné"""
        indices: List[int] = []
        for label in labels:
            indices.extend(self.quadrature_indices(label))
        return indices

    def subset(self, labels: Sequence[LabelLike]) -> 'ModeRegistry':
        """Sous-registre conservant l'ordre fourni"""
        resolved = [as_label(label) for label in labels]
        for label in resolved:
            self.index(label)
        return ModeRegistry(tuple(resolved))

    def projector(self, labels: Iterable[LabelLike]) -> np.ndarray:
        """Projecteur diagonal sur les quadratures des modes donnés"""
        diagonal = np.zeros(self.dimension)
        for label in labels:
            diagonal[list(self.quadrature_indices(label))] = 1.0
        return np.diag(diagonal)

    def permutation(self, mapping: Dict[ModeLabel, ModeLabel]) -> np.ndarray:
        """
        Matrice de permutation des quadratures

        Args:
            mapping: bijection partielle des étiquettes (identité ailleurs)

        Returns:
            np.ndarray: P telle que (P r)[mapping(i)] = r[i]
        """
        permutation = np.zeros((self.dimension, self.dimension))
        for i, label in enumerate(self.labels):
            j = self.index(mapping.get(label, label))
            permutation[2 * j, 2 * i] = 1.0
            permutation[2 * j + 1, 2 * i + 1] = 1.0
        return permutation

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[ModeLabel]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        try:
            return as_label(label) in self._positions
        except UnknownModeError:
            return False

    def to_dict(self):
        return {'labels': self.names, 'size': self.size}
