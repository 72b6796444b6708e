"""
Tests des recouvrements entre modes collectifs
"""

import cmath
import math

import numpy as np
import pytest

from src.core.collective_modes import (
    EnsembleGeometry,
    chain_overlap,
    modes_report,
    orthogonality_deficit,
    overlap_matrix,
)


class TestGeometry:

    def test_from_length(self):
        geometry = EnsembleGeometry.from_length(N=100, kL=20 * math.pi)
        assert geometry.kL == pytest.approx(20 * math.pi)
        assert geometry.d == pytest.approx(20 * math.pi / 100)
        assert geometry.length / geometry.wavelength == pytest.approx(10.0)

    @pytest.mark.parametrize("kwargs", [
        {'N': 0, 'd': 1.0},
        {'N': 10, 'd': 0.0},
        {'N': 10, 'd': 1.0, 'k': -1.0},
        {'N': 10, 'd': float('inf')},
    ])
    def test_invalid_geometry(self, kwargs):
        with pytest.raises(ValueError):
            EnsembleGeometry(**kwargs)


class TestOverlapMatrix:
    """(1/N) Σⱼ exp(i(m - m')k xⱼ)"""

    def test_hermitian_with_unit_diagonal(self):
        matrix = overlap_matrix(EnsembleGeometry(N=7, d=0.37))
        assert np.allclose(np.diag(matrix), 1.0)
        assert np.allclose(matrix, matrix.conj().T, atol=1e-14)

    def test_two_atoms_quarter_phase(self):
        """N = 2, 2kd = π/2: recouvrement (1 + i)/2 entre les ordres 2 et 0"""
        geometry = EnsembleGeometry(N=2, d=math.pi / 4)
        matrix = overlap_matrix(geometry, orders=(0, 2))
        assert matrix[1, 0] == pytest.approx((1 + 1j) / 2)
        assert matrix[0, 1] == pytest.approx((1 - 1j) / 2)

    def test_commensurate_chain_is_orthogonal(self):
        """Un nombre entier de longueurs d'onde annule exactement les recouvrements"""
        geometry = EnsembleGeometry.from_length(N=1000, kL=200 * math.pi)
        assert orthogonality_deficit(geometry) <= 1e-10


class TestChainOverlap:
    """Limite continue (e^{iΔm kL} - 1)/(iΔm kL)"""

    @pytest.mark.parametrize("kL", [2 * math.pi, 20 * math.pi, 200 * math.pi])
    def test_bound(self, kL):
        assert abs(chain_overlap(2, 0, kL)) <= 2.0 / (2.0 * kL) + 1e-15

    def test_identical_orders(self):
        assert chain_overlap(2, 2, 3.0) == 1.0

    def test_short_chain_limit(self):
        """kL → 0: recouvrement → 1"""
        assert abs(chain_overlap(2, 0, 1e-6)) == pytest.approx(1.0, abs=1e-9)
        assert abs(chain_overlap(-2, 2, 1e-6)) == pytest.approx(1.0, abs=1e-9)

    def test_value(self):
        theta = 2 * 1.3
        assert chain_overlap(2, 0, 1.3) == pytest.approx((cmath.exp(1j * theta) - 1) / (1j * theta))

    def test_rejects_non_positive_length(self):
        with pytest.raises(ValueError):
            chain_overlap(2, 0, 0.0)


class TestDeficit:
    """Déficit d'orthogonalité et avertissement"""

    def test_deficit_tends_to_one_for_short_chain(self):
        geometry = EnsembleGeometry.from_length(N=10, kL=1e-4)
        assert orthogonality_deficit(geometry) == pytest.approx(1.0, abs=1e-6)

    def test_warning_above_threshold(self, caplog):
        geometry = EnsembleGeometry.from_length(N=10, kL=1.0)
        with caplog.at_level('WARNING'):
            deficit = orthogonality_deficit(geometry, threshold=0.05)
        assert deficit > 0.05
        assert 'non orthogonaux' in caplog.text

    def test_report(self):
        report = modes_report(EnsembleGeometry.from_length(N=1000, kL=200 * math.pi))
        assert report['orthogonal']
        assert report['orders'] == [0, 2, -2]
        assert report['continuum_deficit'] <= 4.0 / (2.0 * 200 * math.pi)
        assert report['overlap_matrix'].shape == (3, 3)
