"""
Tests des compresseurs, du mélangeur et de la conjugaison
"""

import math

import numpy as np
import pytest

from src.core.gaussian import apply_symplectic, vacuum_state
from src.core.hamiltonian_builder import effective_hamiltonian
from src.core.metrics import epr_vectors, quadrature_variances
from src.core.squeezers import (
    SqueezeParams,
    conjugate_hamiltonian,
    ensemble_mixer,
    four_mode_squeezer,
    four_mode_squeezer_generator,
    mixer_mode_matrix,
    single_mode_squeezer,
    symplectic_from_generator,
    two_mode_squeezer,
    two_mode_squeezer_generator,
)
from src.models.laser import LaserConfig
from src.models.modes import A_MINUS, A_PLUS, C0, C2, Cm2
from src.utils.constants import LAMBDA_MIX
from src.utils.exceptions import DimensionError

XI_VALUES = [0.1, 0.3, 0.6]


class TestClosedForms:
    """Formes fermées et exponentielles des générateurs"""

    @pytest.mark.parametrize("xi", [-0.8, 0.2, 1.1])
    def test_two_mode_closed_form_matches_generator(self, registry1, xi):
        closed = two_mode_squeezer(registry1, C2(1), Cm2(1), xi).matrix
        generated = symplectic_from_generator(
            two_mode_squeezer_generator(registry1, C2(1), Cm2(1), xi)
        ).matrix
        assert np.allclose(closed, generated, atol=1e-12)

    @pytest.mark.parametrize("xi", XI_VALUES)
    def test_single_mode_squeezes_x(self, registry1, xi):
        """ξ₀ > 0 comprime x: Var x = e^{-2ξ₀}/2"""
        state = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), xi))
        x, p = registry1.quadrature_indices(C0(1))
        assert state.covariance[x, x] == pytest.approx(0.5 * math.exp(-2 * xi))
        assert state.covariance[p, p] == pytest.approx(0.5 * math.exp(2 * xi))

    @pytest.mark.parametrize("xi", XI_VALUES)
    def test_two_mode_epr_variances(self, registry1, xi):
        """S±k(ξ) comprime x_A + x_B et p_A - p_B, amplifie x_A - x_B et p_A + p_B"""
        state = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), xi))
        epr = epr_vectors(registry1, C2(1), Cm2(1))
        x_plus, p_minus, x_minus, p_plus = quadrature_variances(
            state, [epr['x_plus'], epr['p_minus'], epr['x_minus'], epr['p_plus']]
        )
        assert x_plus == pytest.approx(0.5 * math.exp(-2 * xi))
        assert p_minus == pytest.approx(0.5 * math.exp(-2 * xi))
        assert x_minus == pytest.approx(0.5 * math.exp(2 * xi))
        assert p_plus == pytest.approx(0.5 * math.exp(2 * xi))

    def test_zero_squeezing_is_identity(self, registry2):
        assert np.allclose(four_mode_squeezer(registry2, 0.0).matrix, np.eye(16))
        assert np.allclose(two_mode_squeezer(registry2, C2(1), Cm2(2), 0.0).matrix, np.eye(16))

    def test_four_mode_generator_requires_four_distinct_modes(self, registry2):
        with pytest.raises(DimensionError):
            four_mode_squeezer_generator(registry2, [C2(1), Cm2(1), C2(2)], 0.1)
        with pytest.raises(DimensionError):
            four_mode_squeezer_generator(registry2, [C2(1), Cm2(1), C2(1), Cm2(2)], 0.1)

    def test_two_mode_requires_distinct_modes(self, registry1):
        with pytest.raises(DimensionError):
            two_mode_squeezer(registry1, C2(1), C2(1), 0.1)


class TestMixer:
    """Mélangeur T entre les modes ±2k de deux ensembles"""

    def test_golden_ratio(self):
        assert LAMBDA_MIX ** 2 == pytest.approx(LAMBDA_MIX + 1.0, abs=1e-14)

    def test_mode_matrix_is_symmetric_orthogonal(self):
        M = mixer_mode_matrix()
        assert np.allclose(M, M.T)
        assert np.allclose(M @ M, np.eye(4), atol=1e-14)

    def test_squeeze_params_rejects_wrong_lambda(self):
        with pytest.raises(ValueError):
            SqueezeParams(lambda_mix=1.5)

    @pytest.mark.parametrize("xi", XI_VALUES)
    def test_mixer_splits_four_mode_squeezer(self, registry2, xi):
        """T·S₄(ξ)·T⁻¹ = S±k(λξ) sur (C₂ₖ⁽¹⁾, C₋₂ₖ⁽²⁾) · S±k(-ξ/λ) sur (C₂ₖ⁽²⁾, C₋₂ₖ⁽¹⁾)"""
        T = ensemble_mixer(registry2)
        conjugated = T @ four_mode_squeezer(registry2, xi) @ T.inverse()
        expected = two_mode_squeezer(registry2, C2(1), Cm2(2), LAMBDA_MIX * xi) @ two_mode_squeezer(
            registry2, C2(2), Cm2(1), -xi / LAMBDA_MIX
        )
        assert np.max(np.abs(conjugated.matrix - expected.matrix)) <= 1e-12

    def test_mixer_leaves_other_modes_untouched(self, registry2):
        T = ensemble_mixer(registry2).matrix
        for label in (A_PLUS, A_MINUS, C0(1), C0(2)):
            x, p = registry2.quadrature_indices(label)
            assert T[x, x] == 1.0 and T[p, p] == 1.0


class TestConjugation:
    """Passage au référentiel où le réglage laser devient un mélangeur linéaire"""

    @pytest.mark.parametrize("beta_u,beta_s", [
        (1.0, 0.0),
        (2.0, 1.0),
        (1.0, 0.3),
        (3.0, 2.5),
        (0.5, 0.45),
    ])
    def test_single_ensemble_becomes_exchange_only(self, registry1, beta_u, beta_s):
        """Après S₀(-ξ)·S±k(-ξ), tanh ξ = β_s/β_u: aucun terme de paire, C₋₂ₖ découplé"""
        laser = LaserConfig('clockwise', (beta_u,), (beta_s,))
        xi = math.atanh(beta_s / beta_u)
        transform = single_mode_squeezer(registry1, C0(1), -xi) @ two_mode_squeezer(
            registry1, C2(1), Cm2(1), -xi
        )
        transformed = conjugate_hamiltonian(effective_hamiltonian(laser, registry1), transform)
        exchange, pair = transformed.ladder_blocks()

        assert np.max(np.abs(pair)) <= 1e-10
        expected = math.sqrt(beta_u ** 2 - beta_s ** 2)
        assert abs(transformed.exchange_coefficient(A_PLUS, C0(1))) == pytest.approx(expected, abs=1e-10)
        assert abs(transformed.exchange_coefficient(A_MINUS, C2(1))) == pytest.approx(expected, abs=1e-10)
        assert transformed.coupling_magnitude(A_PLUS, Cm2(1)) <= 1e-10
        assert transformed.coupling_magnitude(A_MINUS, Cm2(1)) <= 1e-10

    def test_identity_conjugation(self, registry1, clockwise_laser):
        from src.models.gaussian import SymplecticTransform

        hamiltonian = effective_hamiltonian(clockwise_laser, registry1)
        conjugated = conjugate_hamiltonian(hamiltonian, SymplecticTransform.identity(registry1))
        assert np.allclose(conjugated.matrix, hamiltonian.matrix)

    def test_registry_mismatch(self, registry1, registry2, clockwise_laser):
        hamiltonian = effective_hamiltonian(clockwise_laser, registry1)
        with pytest.raises(DimensionError):
            conjugate_hamiltonian(hamiltonian, ensemble_mixer(registry2))
