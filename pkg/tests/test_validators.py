"""
Tests de la lecture et de la validation des configurations
"""

import math

import pytest

from src.utils.constants import ERROR_MESSAGES
from src.utils.exceptions import ConfigError
from src.utils.validators import (
    get_validation_summary,
    load_config_file,
    parse_config,
    parse_config_data,
    validate_numeric_range,
    validate_units,
)


def protocol_data(**protocol):
    return {
        'command': 'protocol',
        'units': 'kappa',
        'protocol': {'kind': 'one_two_mode', 'xi': 0.3, **protocol},
    }


class TestParseConfig:

    def test_protocol_defaults_filled(self):
        config = parse_config_data(protocol_data())
        assert config.protocol.durations == (10.0, 10.0)
        assert config.protocol.beta_ref == 2.0
        assert config.kappa == 1.0
        assert config.threshold == 0.99
        assert config.to_dict()['protocol']['samples_per_step'] == 20

    def test_scalar_duration_is_broadcast(self):
        config = parse_config_data(protocol_data(durations=5))
        assert config.protocol.durations == (5.0, 5.0)

    def test_rad_per_second_scales_durations(self):
        data = {**protocol_data(durations=[10.0]), 'units': 'rad/s', 'kappa': 2.0e6}
        config = parse_config_data(data)
        assert config.protocol.duration(1) == pytest.approx(5.0e-6)

    def test_steady_state_defaults(self):
        config = parse_config_data({
            'command': 'steady-state',
            'units': 'kappa',
            'lasers': [{'direction': 'clockwise', 'beta_u': 2.0, 'beta_s': 1.0}],
        })
        assert config.steady_state['frame'] == 'lab'
        assert config.lasers[0].phi_u == (0.0,)

    def test_oracle_defaults(self):
        config = parse_config_data({'command': 'oracle', 'units': 'kappa', 'oracle': {'system': 'mixer'}})
        assert config.oracle['cutoff'] == 12
        assert config.oracle['times'] == [0.5, 1.0, 2.0]
        assert config.oracle['damping'] is True

    def test_geometry_from_length(self):
        config = parse_config_data({
            'command': 'modes', 'units': 'kappa', 'geometry': {'N': 100, 'kL': 20 * math.pi},
        })
        assert config.geometry.d == pytest.approx(20 * math.pi / 100)
        assert config.tolerances['deficit_threshold'] == 0.05


class TestViolations:
    """Toutes les violations sont rassemblées dans une seule ConfigError"""

    def test_stability_rule(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({
                'command': 'steady-state',
                'units': 'kappa',
                'lasers': [{'direction': 'clockwise', 'beta_u': 1.0, 'beta_s': 2.0}],
            })
        assert any(ERROR_MESSAGES['stability_rule'] in v for v in excinfo.value.violations)
        assert excinfo.value.exit_code == 2

    def test_rad_per_second_requires_kappa(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({**protocol_data(), 'units': 'rad/s'})
        assert ERROR_MESSAGES['kappa_required'] in excinfo.value.violations

    def test_kappa_units_with_non_unit_kappa(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({**protocol_data(), 'kappa': 2.0})
        assert ERROR_MESSAGES['kappa_not_unit'] in excinfo.value.violations

    def test_several_violations_collected(self):
        data = {
            'command': 'protocol',
            'units': 'rad/s',
            'protocol': {'kind': 'one_two_mode', 'xi': 9.0},
            'colour': 'blue',
        }
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data(data)
        assert len(excinfo.value.violations) >= 3
        assert ERROR_MESSAGES['kappa_required'] in excinfo.value.violations

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data(protocol_data(speed=3))
        assert any('speed' in v for v in excinfo.value.violations)

    def test_missing_section(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({'command': 'modes', 'units': 'kappa'})
        assert any("'geometry'" in v for v in excinfo.value.violations)

    def test_geometry_needs_exactly_one_length(self):
        with pytest.raises(ConfigError):
            parse_config_data({
                'command': 'modes', 'units': 'kappa', 'geometry': {'N': 10, 'kd': 0.5, 'kL': 5.0},
            })

    def test_invalid_step_order(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({
                'command': 'protocol', 'units': 'kappa',
                'protocol': {'kind': 'one_two_mode', 'xi': 0.3, 'step_order': [1, 3]},
            })
        assert any(v.startswith('protocol:') for v in excinfo.value.violations)

    def test_squeezer_mixer_must_be_stable(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config_data({
                'command': 'oracle', 'units': 'kappa',
                'oracle': {'system': 'squeezer_mixer', 'beta_u': 0.5, 'beta_s': 0.8},
            })
        assert any(ERROR_MESSAGES['stability_rule'] in v for v in excinfo.value.violations)

    def test_transformed_frame_needs_one_ensemble(self):
        with pytest.raises(ConfigError):
            parse_config_data({
                'command': 'steady-state',
                'units': 'kappa',
                'lasers': [{'direction': 'clockwise', 'beta_u': [2.0, 2.0], 'beta_s': [1.0, 1.0]}],
                'steady_state': {'frame': 'transformed'},
            })

    def test_not_an_object(self):
        with pytest.raises(ConfigError):
            parse_config_data([1, 2, 3])


class TestConfigFiles:

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as excinfo:
            load_config_file(str(tmp_path / 'absent.json'))
        assert 'introuvable' in excinfo.value.violations[0]

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"command": "protocol",')
        with pytest.raises(ConfigError) as excinfo:
            load_config_file(str(path))
        assert 'JSON invalide' in excinfo.value.violations[0]

    def test_overrides_take_precedence(self, tmp_path):
        path = tmp_path / 'protocol.json'
        path.write_text('{"command": "protocol", "units": "kappa", '
                        '"protocol": {"kind": "four_mode", "xi": 0.3}}')
        config = parse_config(str(path), {'threshold': 0.5})
        assert config.threshold == 0.5
        assert config.source == str(path)
        assert config.protocol.n_steps == 4


class TestElementaryValidators:

    @pytest.mark.parametrize("value,expected", [
        (0.5, True), (-1.0, False), (2.0, False), ('abc', False), (float('nan'), False),
    ])
    def test_numeric_range(self, value, expected):
        valid, _ = validate_numeric_range(value, 0.0, 1.0)
        assert valid is expected

    def test_units(self):
        assert validate_units('kappa', None) == (True, "")
        assert validate_units('kappa', 1.0)[0]
        assert not validate_units('rad/s', None)[0]
        assert validate_units('rad/s', 3.0e6)[0]

    def test_summary(self):
        summary = get_validation_summary([(True, ""), (False, "a"), (False, "b")])
        assert summary['passed'] == 1
        assert summary['failed'] == 2
        assert summary['errors'] == ['a', 'b']
        assert not summary['overall_valid']
