"""
Tests des mesures: fidélité, négativité logarithmique, variances
"""

import math

import numpy as np
import pytest

from src.core.gaussian import apply_symplectic, thermal_state, vacuum_state
from src.core.metrics import epr_vectors, fidelity, log_negativity, quadrature_variances, quadrature_vector
from src.core.squeezers import four_mode_squeezer, single_mode_squeezer, two_mode_squeezer
from src.models.gaussian import GaussianState
from src.models.modes import A_PLUS, C0, C2, Cm2, ModeRegistry
from src.utils.exceptions import DimensionError, PhysicalityError


class TestFidelity:
    """Fidélité à une cible pure"""

    def test_identical_pure_states(self, registry1):
        state = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), 0.4))
        assert fidelity(state, state) == pytest.approx(1.0, abs=1e-12)

    def test_thermal_against_vacuum(self):
        """⟨0|ρ_th|0⟩ = 1/(n̄ + 1)"""
        registry = ModeRegistry.from_names(['C0k_1'])
        state = thermal_state(registry, [0.5])
        assert fidelity(state, vacuum_state(registry)) == pytest.approx(1.0 / 1.5)

    @pytest.mark.parametrize("xi", [0.2, 0.6])
    def test_squeezed_against_vacuum(self, xi):
        """|⟨0|S(ξ)|0⟩|² = 1/cosh ξ"""
        registry = ModeRegistry.from_names(['C0k_1'])
        squeezed = apply_symplectic(vacuum_state(registry), single_mode_squeezer(registry, C0(1), xi))
        assert fidelity(squeezed, vacuum_state(registry)) == pytest.approx(1.0 / math.cosh(xi))

    def test_displacement_enters(self):
        registry = ModeRegistry.from_names(['a_plus'])
        displaced = GaussianState(registry, np.array([1.0, 0.0]), 0.5 * np.eye(2))
        # |⟨0|α⟩|² = e^{-|α|²}, α = x/√2
        assert fidelity(displaced, vacuum_state(registry)) == pytest.approx(math.exp(-0.5))

    def test_mixed_target_rejected(self):
        registry = ModeRegistry.from_names(['a_plus'])
        with pytest.raises(PhysicalityError):
            fidelity(vacuum_state(registry), thermal_state(registry, [0.2]))

    def test_registry_mismatch(self, registry1, registry2):
        with pytest.raises(DimensionError):
            fidelity(vacuum_state(registry1), vacuum_state(registry2))


class TestLogNegativity:
    """E_N = Σ max(0, -log₂ 2ν̃)"""

    @pytest.mark.parametrize("xi", [0.1, 0.5, 1.0])
    def test_two_mode_squeezed_vacuum(self, registry1, xi):
        state = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), xi))
        assert log_negativity(state, [C2(1)], [Cm2(1)]) == pytest.approx(2 * xi / math.log(2))

    def test_product_state_has_none(self, registry1):
        state = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), 0.8))
        assert log_negativity(state, [C0(1)], [A_PLUS]) == pytest.approx(0.0, abs=1e-12)

    def test_four_mode_bipartition_positive(self, registry2):
        state = apply_symplectic(vacuum_state(registry2), four_mode_squeezer(registry2, 0.3))
        value = log_negativity(state, [C2(1), Cm2(1)], [C2(2), Cm2(2)])
        assert value > 0.0

    def test_empty_part_rejected(self, registry1):
        with pytest.raises(DimensionError):
            log_negativity(vacuum_state(registry1), [], [C0(1)])


class TestQuadratureVariances:

    def test_epr_vectors_are_normalized(self, registry1):
        for vector in epr_vectors(registry1, C2(1), Cm2(1)).values():
            assert np.linalg.norm(vector) == pytest.approx(1.0)

    def test_dictionary_combination(self, registry1):
        state = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), 0.5))
        variance, = quadrature_variances(state, [{(C0(1), 'x'): 1.0}])
        assert variance == pytest.approx(0.5 * math.exp(-1.0))

    def test_unnormalized_combination_warns(self, registry1, caplog):
        with caplog.at_level('WARNING'):
            variance, = quadrature_variances(vacuum_state(registry1), [{(C0(1), 'x'): 2.0}])
        assert variance == pytest.approx(2.0)
        assert 'non normalisée' in caplog.text

    def test_unknown_quadrature(self, registry1):
        with pytest.raises(ValueError):
            quadrature_vector(registry1, {(C0(1), 'q'): 1.0})

    def test_wrong_length(self, registry1):
        with pytest.raises(DimensionError):
            quadrature_variances(vacuum_state(registry1), [np.ones(3)])
