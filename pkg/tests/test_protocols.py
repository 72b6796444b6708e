"""
Tests des protocoles de préparation
"""

import math

import numpy as np
import pytest

from src.core.gaussian import apply_symplectic, covariance_distance, partial_state, vacuum_state
from src.core.protocols import (
    FOUR_MODE_ADDRESSED,
    analysis_transform,
    duration_scan,
    key_variances,
    recover_xi,
    resolve_step,
    resolve_step_parameters,
    run_protocol,
    target_sector,
    target_state,
    verify_step_decoupling,
)
from src.models.protocol import ProtocolSpec
from src.utils.constants import LAMBDA_MIX, PROTOCOL_CSV_COLUMNS
from src.utils.exceptions import ParameterRejectedError

XI_HALF_LN3 = 0.5 * math.log(3.0)


def one_two_mode(xi: float = XI_HALF_LN3, durations=(12.0,), **kwargs) -> ProtocolSpec:
    return ProtocolSpec(kind='one_two_mode', xi=xi, beta_ref=2.0, durations=durations, **kwargs)


def four_mode(xi: float = 0.3, durations=(10.0,), **kwargs) -> ProtocolSpec:
    return ProtocolSpec(kind='four_mode', xi=xi, beta_ref=2.0, durations=durations, **kwargs)


class TestProtocolSpec:

    def test_defaults(self):
        spec = ProtocolSpec(kind='four_mode', xi=0.3)
        assert spec.durations == (10.0,) * 4
        assert spec.step_order == (1, 2, 3, 4)
        assert spec.n_ensembles == 2

    def test_single_duration_is_broadcast(self):
        assert one_two_mode(durations=(7.0,)).durations == (7.0, 7.0)

    @pytest.mark.parametrize("kwargs", [
        {'kind': 'three_mode', 'xi': 0.1},
        {'kind': 'one_two_mode', 'xi': -0.1},
        {'kind': 'one_two_mode', 'xi': 0.1, 'durations': (1.0, 2.0, 3.0)},
        {'kind': 'four_mode', 'xi': 0.1, 'step_order': (1, 2, 2, 4)},
        {'kind': 'four_mode', 'xi': 0.1, 'beta_ref': 0.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ProtocolSpec(**kwargs)

    def test_durations_scale_with_kappa(self):
        spec = ProtocolSpec(kind='one_two_mode', xi=0.2, durations=(10.0,), kappa=2.0e6)
        assert spec.duration(1) == pytest.approx(5.0e-6)


class TestStepResolution:
    """Couplages et phases de chaque étape"""

    def test_one_two_mode_parameters(self):
        """tanh ξ = ½ avec β_ref = 2: β_u = 2, β_s = 1, horaire puis anti-horaire"""
        spec = one_two_mode()
        first, second = resolve_step(spec, 1), resolve_step(spec, 2)
        assert first.laser.beta_u == pytest.approx((2.0,))
        assert first.laser.beta_s == pytest.approx((1.0,))
        assert first.direction == 'clockwise'
        assert second.direction == 'anticlockwise'
        assert (first.tag, second.tag) == ('tanh_xi/clockwise', 'tanh_xi/anticlockwise')

    def test_four_mode_patterns(self):
        spec = four_mode()
        lam = LAMBDA_MIX
        sigma12 = 2.0 * math.tanh(lam * 0.3)
        sigma34 = 2.0 * math.tanh(0.3 / lam)
        step1 = resolve_step_parameters(spec, 1)
        step2 = resolve_step_parameters(spec, 2)
        step3 = resolve_step_parameters(spec, 3)
        step4 = resolve_step_parameters(spec, 4)
        assert step1.beta_u == pytest.approx((2.0, 2.0 * lam))
        assert step1.beta_s == pytest.approx((lam * sigma12, sigma12))
        assert step2.beta_u == pytest.approx((2.0 * lam, 2.0))
        assert step2.beta_s == pytest.approx((sigma12, lam * sigma12))
        assert step3.phi_s == pytest.approx((0.0, math.pi))
        assert step4.phi_u == pytest.approx((math.pi, 0.0))
        assert step4.beta_s == pytest.approx((lam * sigma34, sigma34))
        assert [resolve_step(spec, i).tag for i in range(1, 5)] == [
            'tanh_lambda_xi/C2k_1', 'tanh_lambda_xi/Cm2k_2', 'tanh_xi_over_lambda/C2k_2', 'tanh_xi_over_lambda/Cm2k_1',
        ]

    @pytest.mark.parametrize("kind,xi", [('one_two_mode', 0.2), ('one_two_mode', 1.2),
                                         ('four_mode', 0.3), ('four_mode', 0.9)])
    def test_xi_recovered_from_couplings(self, kind, xi):
        spec = ProtocolSpec(kind=kind, xi=xi)
        for index in range(1, spec.n_steps + 1):
            laser = resolve_step_parameters(spec, index)
            assert recover_xi(kind, index, laser) == pytest.approx(xi, rel=1e-12)

    @pytest.mark.parametrize("kind,xi", [('one_two_mode', 2.0), ('four_mode', 1.2)])
    def test_stability_margin(self, kind, xi):
        spec = ProtocolSpec(kind=kind, xi=xi)
        with pytest.raises(ParameterRejectedError) as excinfo:
            resolve_step_parameters(spec, 1)
        assert excinfo.value.exit_code == 3
        assert excinfo.value.details['rule'] == 'stability_margin'

    def test_step_index_checked(self):
        with pytest.raises(ValueError):
            resolve_step_parameters(one_two_mode(), 3)


class TestAnalysisFrame:
    """Dans le référentiel d'analyse, chaque étape est un mélangeur linéaire"""

    @pytest.mark.parametrize("spec", [one_two_mode(), one_two_mode(xi=0.9), four_mode(), four_mode(xi=0.7)],
                             ids=['one_two_mode', 'one_two_mode_strong', 'four_mode', 'four_mode_strong'])
    def test_target_maps_to_vacuum(self, spec):
        framed = apply_symplectic(target_state(spec), analysis_transform(spec))
        assert covariance_distance(framed, vacuum_state(framed.registry)) <= 1e-10

    @pytest.mark.parametrize("spec", [one_two_mode(), four_mode(), four_mode(xi=0.7)],
                             ids=['one_two_mode', 'four_mode', 'four_mode_strong'])
    def test_every_step_decouples(self, spec):
        for index in range(1, spec.n_steps + 1):
            report = verify_step_decoupling(spec, index)
            assert report['passed'], report

    def test_four_mode_addresses_one_mode_per_step(self):
        spec = four_mode()
        for index, label in FOUR_MODE_ADDRESSED.items():
            report = verify_step_decoupling(spec, index)
            assert report['intended_modes'] == [label.name]
            laser = resolve_step_parameters(spec, index)
            beta_u = laser.beta_u[0] if index in (1, 4) else laser.beta_u[1]
            beta_s = laser.beta_s[1] if index in (1, 4) else laser.beta_s[0]
            expected = math.sqrt((1 + LAMBDA_MIX ** 2) * (beta_u ** 2 - beta_s ** 2))
            assert report['modes'][label.name]['exchange'] == pytest.approx(expected, rel=1e-10)
            others = [name for name in report['modes'] if name != label.name]
            assert all(report['modes'][name]['magnitude'] <= 1e-10 for name in others)

    def test_target_variances(self):
        variances = key_variances(target_state(one_two_mode()), one_two_mode())
        assert variances['var_x_C0k'] == pytest.approx(1.0 / 6.0)
        assert variances['var_epr_plus'] == pytest.approx(1.0 / 6.0)
        assert variances['var_epr_minus'] == pytest.approx(1.5)


class TestRunProtocol:
    """Exécution complète depuis le vide"""

    def test_zero_squeezing_stays_vacuum(self):
        result = run_protocol(one_two_mode(xi=0.0, durations=(2.0,), samples_per_step=2))
        assert result.fidelity == pytest.approx(1.0, abs=1e-12)
        assert len(result.samples) == 1 + 2 * 2

    def test_one_two_mode(self):
        spec = one_two_mode()
        result = run_protocol(spec)
        metrics = result.metrics
        assert metrics['fidelity'] >= 0.99
        assert metrics['frame_vacuum_fidelity'] >= 0.99
        assert metrics['all_steps_decoupled']
        assert metrics['variances']['var_x_C0k'] == pytest.approx(1.0 / 6.0, rel=0.05)
        assert [record.xi_recovered for record in result.steps] == pytest.approx([XI_HALF_LN3] * 2)
        times = [sample.time for sample in result.samples]
        assert times == sorted(times)
        assert times[-1] == pytest.approx(24.0)

    def test_four_mode(self):
        spec = four_mode()
        result = run_protocol(spec)
        metrics = result.metrics
        assert metrics['fidelity'] >= 0.99
        assert metrics['purity'] >= 0.98
        assert metrics['log_negativity'] == pytest.approx(metrics['target_log_negativity'], rel=0.05)
        assert metrics['bipartition'] == [['C2k_1', 'Cm2k_1'], ['C2k_2', 'Cm2k_2']]

    @pytest.mark.parametrize("order", [(3, 1, 4, 2), (2, 1, 4, 3)])
    def test_step_order_does_not_matter(self, order):
        """Les étapes adressent des modes disjoints du référentiel d'analyse"""
        reference = run_protocol(four_mode(durations=(40.0,), samples_per_step=1))
        shuffled = run_protocol(four_mode(durations=(40.0,), samples_per_step=1, step_order=order))
        sector = target_sector(reference.spec)
        assert covariance_distance(reference.final_state, shuffled.final_state, sector) <= 1e-6

    def test_larger_squeezing_lowers_fidelity(self):
        fidelities = [run_protocol(one_two_mode(xi=xi, durations=(4.0,), samples_per_step=1)).fidelity
                      for xi in (0.1, 0.3, 0.6)]
        assert fidelities[0] > fidelities[1] > fidelities[2]

    def test_long_steps_converge(self):
        result = run_protocol(one_two_mode(durations=(60.0,), samples_per_step=1))
        assert result.metrics['all_steps_converged']
        assert result.fidelity == pytest.approx(1.0, abs=1e-8)

    def test_on_step_callback(self):
        seen = []
        run_protocol(one_two_mode(durations=(5.0,), samples_per_step=1), on_step=seen.append)
        assert [record.step.index for record in seen] == [1, 2]

    def test_samples_hold_exported_columns(self):
        result = run_protocol(one_two_mode(xi=0.0, durations=(2.0,), samples_per_step=1))
        sample = result.samples[-1]
        assert set(sample.to_dict()) == set(PROTOCOL_CSV_COLUMNS) | {'step'}
        assert sample.step == 2
        assert sample.n_a_plus == pytest.approx(0.0, abs=1e-12)

    def test_final_state_is_physical(self):
        result = run_protocol(four_mode(xi=0.6, durations=(5.0,), samples_per_step=2))
        reduced = partial_state(result.final_state, target_sector(result.spec))
        assert np.all(np.linalg.eigvalsh(reduced.covariance) > 0)


class TestDurationScan:

    @pytest.mark.parametrize("durations", [[3.0, 30.0], [4.0, 8.0, 16.0]])
    def test_longer_steps_improve_fidelity(self, durations):
        scan = duration_scan(one_two_mode(), durations)
        assert scan['durations'] == durations
        assert all(later > earlier for earlier, later in zip(scan['fidelities'], scan['fidelities'][1:]))
        assert scan['monotone']
        assert scan['violations'] == []
