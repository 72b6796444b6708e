"""
Tests des états gaussiens et des transformations symplectiques
"""

import math

import numpy as np
import pytest

from src.core.gaussian import (
    apply_symplectic,
    check_physicality,
    covariance_distance,
    is_physical,
    is_symplectic,
    partial_state,
    purity,
    symplectic_eigenvalues,
    thermal_state,
    vacuum_state,
)
from src.core.squeezers import (
    ensemble_mixer,
    four_mode_squeezer,
    single_mode_squeezer,
    two_mode_squeezer,
)
from src.models.gaussian import GaussianState, SymplecticTransform, symplectic_form
from src.models.modes import A_PLUS, C0, C2, Cm2, ModeRegistry
from src.utils.exceptions import DimensionError, PhysicalityError, UnknownModeError


class TestStates:
    """États de référence"""

    def test_vacuum_covariance_and_purity(self, registry2):
        """Le vide a une covariance ½·I et une pureté 1"""
        state = vacuum_state(registry2)
        assert np.allclose(state.covariance, 0.5 * np.eye(16))
        assert np.allclose(state.mean, 0.0)
        assert purity(state) == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(symplectic_eigenvalues(state), 0.5)

    @pytest.mark.parametrize("occupation", [0.0, 0.3, 2.0])
    def test_thermal_purity(self, occupation):
        """Pureté d'un état thermique 1/(2n̄ + 1) par mode"""
        registry = ModeRegistry.from_names(['a_plus'])
        state = thermal_state(registry, [occupation])
        assert purity(state) == pytest.approx(1.0 / (2.0 * occupation + 1.0))
        assert state.photon_number(A_PLUS) == pytest.approx(occupation)

    def test_thermal_rejects_negative_occupation(self, registry1):
        with pytest.raises(DimensionError):
            thermal_state(registry1, [-0.1, 0, 0, 0, 0])

    def test_covariance_dimension_mismatch(self, registry1):
        with pytest.raises(DimensionError):
            GaussianState(registry1, np.zeros(10), np.eye(8))

    def test_non_symmetric_covariance_rejected(self, registry1):
        covariance = 0.5 * np.eye(10)
        covariance[0, 1] = 0.1
        with pytest.raises(PhysicalityError):
            GaussianState(registry1, np.zeros(10), covariance)

    def test_state_arrays_are_read_only(self, registry1):
        state = vacuum_state(registry1)
        with pytest.raises(ValueError):
            state.covariance[0, 0] = 1.0


class TestPhysicality:
    """Incertitude de Heisenberg σ + iΩ/2 ≥ 0"""

    def test_sub_vacuum_state_is_unphysical(self, registry1):
        """σ = 0.4·I viole la borne ν ≥ ½"""
        state = GaussianState(registry1, np.zeros(10), 0.4 * np.eye(10))
        assert not is_physical(state)
        with pytest.raises(PhysicalityError) as excinfo:
            check_physicality(state, 'test')
        assert excinfo.value.exit_code == 4
        assert excinfo.value.details['min_symplectic_eigenvalue'] == pytest.approx(0.4)

    def test_squeezed_state_is_physical(self, registry1):
        """Une compression forte reste physique (ν = ½ exactement)"""
        state = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), 2.0))
        assert is_physical(state)
        assert np.allclose(symplectic_eigenvalues(state), 0.5, atol=1e-10)
        assert purity(state) == pytest.approx(1.0, abs=1e-10)

    def test_purity_of_unphysical_state_raises(self, registry1):
        state = GaussianState(registry1, np.zeros(10), 0.3 * np.eye(10))
        with pytest.raises(PhysicalityError):
            purity(state)


class TestSymplecticTransforms:
    """Compresseurs et mélangeur: S Ω Sᵀ = Ω"""

    @pytest.mark.parametrize("draw", range(100))
    def test_random_squeezers_are_symplectic(self, registry2, rng, draw):
        """Tirages aléatoires de ξ₀, ξ₁, ξ dans [-2, 2]"""
        xi0, xi1, xi = rng.uniform(-2.0, 2.0, size=3)
        omega = symplectic_form(registry2.size)
        transforms = [
            single_mode_squeezer(registry2, C0(1), xi0),
            two_mode_squeezer(registry2, C2(1), Cm2(1), xi1),
            four_mode_squeezer(registry2, xi),
        ]
        for transform in transforms:
            S = transform.matrix
            scale = max(1.0, np.max(np.abs(S)) ** 2)
            assert np.max(np.abs(S @ omega @ S.T - omega)) <= 1e-12 * scale

    def test_mixer_is_orthogonal_and_symplectic(self, registry2):
        T = ensemble_mixer(registry2).matrix
        assert np.allclose(T @ T.T, np.eye(16), atol=1e-14)
        assert is_symplectic(T)

    def test_inverse(self, registry2):
        transform = four_mode_squeezer(registry2, 0.4) @ ensemble_mixer(registry2)
        product = transform @ transform.inverse()
        assert np.allclose(product.matrix, np.eye(16), atol=1e-12)

    def test_non_symplectic_matrix_rejected(self, registry1):
        with pytest.raises(PhysicalityError):
            SymplecticTransform(registry1, 2.0 * np.eye(10))

    def test_apply_requires_same_registry(self, registry1, registry2):
        with pytest.raises(DimensionError):
            apply_symplectic(vacuum_state(registry1), SymplecticTransform.identity(registry2))

    def test_embed_rejects_duplicate_modes(self, registry1):
        with pytest.raises(DimensionError):
            SymplecticTransform.embed(registry1, [C0(1), C0(1)], np.eye(4))

    def test_unknown_mode(self, registry1):
        with pytest.raises(UnknownModeError):
            single_mode_squeezer(registry1, C0(2), 0.1)


class TestPartialState:
    """Trace partielle"""

    def test_partial_state_keeps_requested_order(self, registry1):
        state = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), 0.5))
        reduced = partial_state(state, [Cm2(1), C2(1)])
        assert reduced.registry.names == ['Cm2k_1', 'C2k_1']
        assert reduced.covariance[0, 2] == pytest.approx(-0.5 * math.sinh(1.0))

    def test_reduced_two_mode_squeezed_state_is_thermal(self, registry1):
        """Chaque moitié d'un état S±k(ξ)|0,0⟩ est thermique: σ = ½ cosh 2ξ · I"""
        xi = 0.7
        state = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), xi))
        reduced = partial_state(state, [C2(1)])
        assert np.allclose(reduced.covariance, 0.5 * math.cosh(2 * xi) * np.eye(2))
        assert purity(reduced) == pytest.approx(1.0 / math.cosh(2 * xi))

    def test_empty_subset_rejected(self, registry1):
        with pytest.raises(DimensionError):
            partial_state(vacuum_state(registry1), [])

    def test_covariance_distance_on_subset(self, registry1):
        squeezed = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), 0.2))
        vacuum = vacuum_state(registry1)
        assert covariance_distance(squeezed, vacuum, [A_PLUS, C2(1)]) == 0.0
        assert covariance_distance(squeezed, vacuum) == pytest.approx(0.5 * (math.exp(0.4) - 1.0))
