"""
Modèle de données pour les séries temporelles de simulation
===========================================================

Un échantillon par instant enregistré: variances de quadratures clés,
fidélité et pureté du secteur cible, photons dans les modes de cavité.
"""

from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.utils.constants import EVOLVE_CSV_COLUMNS, PROTOCOL_CSV_COLUMNS


@dataclass
class ProtocolSample:
    """
    Point temporel d'un protocole

    Correspond à une ligne du CSV `protocol`; `step` n'est pas exporté.
    """

    time: float
    var_x_C0k: float
    var_p_C0k: float
    var_epr_minus: float
    var_epr_plus: float
    fidelity: float
    purity: float
    n_a_plus: float
    n_a_minus: float
    step: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_pandas_row(self) -> Dict:
        return {column: getattr(self, column) for column in PROTOCOL_CSV_COLUMNS}

    @classmethod
    def from_dict(cls, data: Dict) -> 'ProtocolSample':
        fields = {key: data[key] for key in PROTOCOL_CSV_COLUMNS}
        return cls(step=int(data.get('step', 0)), **fields)


@dataclass
class EvolveSample:
    """Point temporel d'une évolution libre"""

    time: float
    purity: float
    n_a_plus: float
    n_a_minus: float
    min_symplectic_eigenvalue: float

    def to_pandas_row(self) -> Dict:
        return {column: getattr(self, column) for column in EVOLVE_CSV_COLUMNS}


# ==============================================================================
# FONCTIONS UTILITAIRES POUR SÉRIES TEMPORELLES
# ==============================================================================

def timeseries_to_dataframe(samples: Sequence, columns: Optional[List[str]] = None) -> pd.DataFrame:
    """
    Convertit une liste d'échantillons en DataFrame pandas

    Args:
        samples: ProtocolSample ou EvolveSample
        columns: ordre des colonnes (déduit du type d'échantillon par défaut)

    Returns:
        pd.DataFrame: une ligne par échantillon, triée par temps
    """
    if columns is None:
        columns = EVOLVE_CSV_COLUMNS if samples and isinstance(samples[0], EvolveSample) else PROTOCOL_CSV_COLUMNS
    if not samples:
        return pd.DataFrame(columns=columns)

    df = pd.DataFrame([sample.to_pandas_row() for sample in samples], columns=columns)
    df = df.astype('float64')
    df.sort_values('time', kind='stable', inplace=True)
    df.reset_index(drop=True, inplace=True)
    return df


def validate_timeseries_data(samples: Sequence[ProtocolSample]) -> Tuple[list, list, list]:
    """
    Valide une série d'échantillons de protocole

    Args:
        samples: échantillons

    Returns:
        tuple: (échantillons_valides, erreurs, warnings)
    """
    valid, errors, warnings = [], [], []
    previous_time = None
    for i, sample in enumerate(samples):
        if not 0.0 <= sample.fidelity <= 1.0 + 1e-12:
            errors.append(f"Ligne {i}: fidélité hors de [0, 1] ({sample.fidelity})")
            continue
        if not 0.0 < sample.purity <= 1.0 + 1e-9:
            errors.append(f"Ligne {i}: pureté hors de ]0, 1] ({sample.purity})")
            continue
        if sample.var_x_C0k * sample.var_p_C0k < 0.25 - 1e-9:
            errors.append(f"Ligne {i}: relation d'incertitude violée sur C0k")
            continue
        if previous_time is not None and sample.time < previous_time:
            warnings.append(f"Ligne {i}: temps non croissant ({sample.time} < {previous_time})")
        previous_time = sample.time
        valid.append(sample)
    return valid, errors, warnings
