"""
Fixtures communes des tests
===========================
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.models.laser import LaserConfig  # noqa: E402
from src.models.modes import ModeRegistry  # noqa: E402

# ξ de la démonstration à un ensemble: tanh ξ = 1/2
XI_HALF_LN3 = 0.5 * math.log(3.0)


@pytest.fixture
def registry1():
    """Registre d'un ensemble: a₊, a₋, C₀ₖ, C₂ₖ, C₋₂ₖ"""
    return ModeRegistry.canonical(1)


@pytest.fixture
def registry2():
    """Registre de deux ensembles (8 modes)"""
    return ModeRegistry.canonical(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def clockwise_laser():
    """β_u = 2, β_s = 1 (ξ = ½ ln 3)"""
    return LaserConfig('clockwise', (2.0,), (1.0,))
