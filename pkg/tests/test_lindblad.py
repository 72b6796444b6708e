"""
Tests de l'évolution gaussienne amortie
"""

import math

import numpy as np
import pytest

from src.core.gaussian import apply_symplectic, covariance_distance, purity, vacuum_state
from src.core.hamiltonian_builder import HamiltonianTerms, effective_hamiltonian
from src.core.lindblad import (
    convergence_time,
    drift_diffusion,
    drift_spectrum,
    evolve,
    evolve_fixed_step,
    evolve_samples,
    is_hurwitz,
    mixer_rate_eigenvalues,
    restrict,
    spectrum_report,
    stationary_residual,
    steady_state,
    undamped_modes,
    unitary_drift,
)
from src.core.squeezers import conjugate_hamiltonian, single_mode_squeezer, two_mode_squeezer
from src.models.dynamics import LindbladSpec
from src.models.modes import A_MINUS, A_PLUS, C0, C2, Cm2, ModeRegistry
from src.utils.exceptions import DimensionError, NotHurwitzError


def mixer_spec(g: float, kappa: float = 1.0) -> LindbladSpec:
    """g(a₊†C₀ₖ + h.c.) avec amortissement de a₊"""
    registry = ModeRegistry((A_PLUS, C0(1)))
    hamiltonian = HamiltonianTerms(registry).exchange(A_PLUS, C0(1), g).build()
    return LindbladSpec(hamiltonian, kappa, (A_PLUS,))


class TestDriftSpectrum:
    """Spectre de la dérive A = ΩH - (κ/2)P"""

    @pytest.mark.parametrize("g", [0.1, 0.5, 1.0, 3.0])
    def test_mixer_eigenvalues(self, g):
        """Chaque valeur -κ/4 ± √((κ/4)² - g²) apparaît deux fois (x et p)"""
        spectrum = np.array(drift_spectrum(drift_diffusion(mixer_spec(g))))
        for value in mixer_rate_eigenvalues(g, 1.0):
            assert np.sum(np.abs(spectrum - value) < 1e-6) == 2

    def test_spectrum_sorted_by_real_part(self, registry1, clockwise_laser):
        dd = drift_diffusion(LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0))
        real_parts = [value.real for value in drift_spectrum(dd)]
        assert real_parts == sorted(real_parts, reverse=True)

    def test_spectrum_report(self):
        report = spectrum_report(drift_diffusion(mixer_spec(1.0)))
        assert report['hurwitz']
        assert report['marginal_count'] == 0
        assert report['spectral_abscissa'] == pytest.approx(-0.25)
        assert len(report['eigenvalues']) == 4


class TestPropagation:
    """Propagateur exact et intégrateur de contrôle"""

    def test_matches_fixed_step_integrator(self, registry1, clockwise_laser):
        dd = drift_diffusion(LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0))
        initial = apply_symplectic(vacuum_state(registry1), single_mode_squeezer(registry1, C0(1), 0.4))
        exact = evolve(initial, dd, 2.0)
        reference = evolve_fixed_step(initial, dd, 2.0)
        assert covariance_distance(exact, reference) <= 1e-8

    def test_semigroup(self, registry1, clockwise_laser):
        dd = drift_diffusion(LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0))
        initial = vacuum_state(registry1)
        direct = evolve(initial, dd, 3.5)
        split = evolve(evolve(initial, dd, 1.25), dd, 2.25)
        assert covariance_distance(direct, split) <= 1e-10

    def test_zero_duration_is_identity(self, registry1, clockwise_laser):
        dd = drift_diffusion(LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0))
        initial = apply_symplectic(vacuum_state(registry1), two_mode_squeezer(registry1, C2(1), Cm2(1), 0.3))
        assert covariance_distance(evolve(initial, dd, 0.0), initial) == 0.0

    def test_negative_duration_rejected(self):
        dd = drift_diffusion(mixer_spec(1.0))
        with pytest.raises(ValueError):
            evolve(vacuum_state(dd.registry), dd, -1.0)

    def test_registry_mismatch(self, registry1):
        dd = drift_diffusion(mixer_spec(1.0))
        with pytest.raises(DimensionError):
            evolve(vacuum_state(registry1), dd, 1.0)

    def test_samples(self):
        dd = drift_diffusion(mixer_spec(1.0))
        initial = apply_symplectic(vacuum_state(dd.registry), single_mode_squeezer(dd.registry, C0(1), 0.5))
        trajectory = evolve_samples(initial, dd, 4.0, 8)
        assert [time for time, _ in trajectory] == pytest.approx([0.5 * k for k in range(1, 9)])
        assert covariance_distance(trajectory[-1][1], evolve(initial, dd, 4.0)) <= 1e-10

    def test_unitary_evolution_preserves_purity(self, registry1, clockwise_laser):
        dd = unitary_drift(effective_hamiltonian(clockwise_laser, registry1))
        state = evolve(vacuum_state(registry1), dd, 3.0)
        assert purity(state) == pytest.approx(1.0, abs=1e-9)

    def test_damping_relaxes_mixer_to_vacuum(self):
        """Un mode squeezé couplé à une cavité amortie retourne au vide"""
        dd = drift_diffusion(mixer_spec(1.0))
        initial = apply_symplectic(vacuum_state(dd.registry), single_mode_squeezer(dd.registry, C0(1), 0.5))
        late = evolve(initial, dd, 120.0)
        assert covariance_distance(late, vacuum_state(dd.registry)) <= 1e-10


class TestSteadyState:
    """Équation de Lyapunov et détection des modes non amortis"""

    def test_mixer_steady_state_is_vacuum(self):
        dd = drift_diffusion(mixer_spec(0.7))
        state = steady_state(dd)
        assert covariance_distance(state, vacuum_state(dd.registry)) <= 1e-12
        assert stationary_residual(state, dd) <= 1e-12

    def test_lab_frame_step_has_undamped_mode(self, registry1, clockwise_laser):
        """Le mode C₋₂ₖ habillé est découplé: dérive non Hurwitz"""
        dd = drift_diffusion(LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0))
        assert not is_hurwitz(dd)
        assert undamped_modes(dd)[0] == 'Cm2k_1'
        with pytest.raises(NotHurwitzError) as excinfo:
            steady_state(dd)
        assert excinfo.value.undamped_modes[0] == 'Cm2k_1'
        assert excinfo.value.exit_code == 3
        assert excinfo.value.reason == 'not_hurwitz'
        with pytest.raises(NotHurwitzError):
            convergence_time(dd, 1e-8)

    def test_transformed_frame_coupled_sector_relaxes_to_vacuum(self, registry1, clockwise_laser):
        """Dans le référentiel transformé, le secteur couplé a pour état stationnaire le vide"""
        xi = math.atanh(0.5)
        transform = single_mode_squeezer(registry1, C0(1), -xi) @ two_mode_squeezer(registry1, C2(1), Cm2(1), -xi)
        hamiltonian = conjugate_hamiltonian(effective_hamiltonian(clockwise_laser, registry1), transform)
        spec = restrict(LindbladSpec(hamiltonian, 1.0), [A_PLUS, A_MINUS, C0(1), C2(1)])
        dd = drift_diffusion(spec)
        state = steady_state(dd)
        assert covariance_distance(state, vacuum_state(dd.registry)) <= 1e-10
        assert stationary_residual(state, dd) <= 1e-10

    @pytest.mark.parametrize("t", [1.0, 10.0])
    def test_steady_state_is_fixed_point(self, t):
        """Un état stationnaire non trivial reste inchangé par l'évolution"""
        registry = ModeRegistry((A_PLUS, C0(1)))
        hamiltonian = HamiltonianTerms(registry).exchange(A_PLUS, C0(1), 1.0).pair(A_PLUS, C0(1), 0.4).build()
        dd = drift_diffusion(LindbladSpec(hamiltonian, 1.0, (A_PLUS,)))
        state = steady_state(dd)
        assert covariance_distance(state, vacuum_state(registry)) > 1e-3
        assert covariance_distance(evolve(state, dd, t), state) <= 1e-9

    def test_restrict_keeps_damping_of_retained_cavity(self, registry1, clockwise_laser):
        spec = LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 1.0)
        reduced = restrict(spec, [A_PLUS, C0(1)])
        assert reduced.damped_modes == (A_PLUS,)
        assert reduced.registry.names == ['a_plus', 'C0k_1']
        assert A_MINUS not in reduced.registry

    def test_convergence_time(self):
        dd = drift_diffusion(mixer_spec(1.0))
        assert convergence_time(dd, 1e-8) == pytest.approx(math.log(1e8) / 0.25)
        with pytest.raises(ValueError):
            convergence_time(dd, 1.5)

    def test_spec_requires_positive_kappa(self, registry1, clockwise_laser):
        with pytest.raises(ValueError):
            LindbladSpec(effective_hamiltonian(clockwise_laser, registry1), 0.0)
