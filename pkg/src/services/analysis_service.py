"""
Service d'Analyse - États stationnaires, évolutions, modes et oracle
====================================================================

Commandes `steady-state`, `evolve`, `modes` et `oracle`. Chaque commande
retourne un ReportBundle; les erreurs du simulateur sont converties en
rapports d'échec portant leur code de sortie.
"""

import logging
import math
from datetime import datetime
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from config import OracleConfig, ProtocolConfig
from src.core.collective_modes import modes_report
from src.core.fock_oracle import (
    FockSpace,
    OperatorExpr,
    compare_with_gaussian,
    covariance_from_density,
    evolve_fock,
    squeezed_vacuum,
    vacuum,
)
from src.core.gaussian import (
    apply_symplectic,
    check_physicality,
    covariance_distance,
    purity,
    symplectic_eigenvalues,
    vacuum_state,
)
from src.core.hamiltonian_builder import HamiltonianTerms, effective_hamiltonian, printed_rate_eigenvalues
from src.core.lindblad import (
    convergence_time,
    drift_diffusion,
    evolve,
    evolve_samples,
    restrict,
    spectral_abscissa,
    spectrum_report,
    stationary_residual,
    steady_state,
    unitary_drift,
)
from src.core.protocols import DECOUPLING_TOLERANCE
from src.core.squeezers import conjugate_hamiltonian, single_mode_squeezer, two_mode_squeezer
from src.models.dynamics import LindbladSpec
from src.models.hamiltonian import QuadraticHamiltonian
from src.models.laser import LaserConfig
from src.models.modes import A_MINUS, A_PLUS, C0, C2, Cm2, ModeLabel, ModeRegistry
from src.models.report import ReportBundle
from src.models.run_config import RunConfig
from src.models.timeseries import EvolveSample, timeseries_to_dataframe
from src.utils.constants import SUCCESS_MESSAGES
from src.utils.exceptions import SimulatorError
from src.utils.helpers import time_from_kappa_units

logger = logging.getLogger(__name__)

# Abscisse spectrale considérée comme marginale (multipliée par κ)
MARGINAL_ABSCISSA = 1e-6

# Écart maximal au vide pour déclarer un état stationnaire « vide »
VACUUM_TOLERANCE = 1e-10


def _laser_hamiltonian(lasers: Sequence[LaserConfig], registry: ModeRegistry) -> QuadraticHamiltonian:
    total = QuadraticHamiltonian.zeros(registry)
    for laser in lasers:
        total = total + effective_hamiltonian(laser, registry)
    return total


def _frame_transform(laser: LaserConfig, registry: ModeRegistry):
    # S₀(-ξ) ⊗ S±k(-ξ), ξ = artanh(β_s/β_u)
    xi = math.atanh(laser.effective_ratio)
    transform = single_mode_squeezer(registry, C0(1), -xi) @ two_mode_squeezer(registry, C2(1), Cm2(1), -xi)
    return xi, transform


def _coupled_labels(hamiltonian: QuadraticHamiltonian) -> List[ModeLabel]:
    names = {name for pair in hamiltonian.coupled_pairs(DECOUPLING_TOLERANCE) for name in pair['modes']}
    return [label for label in hamiltonian.registry.labels if label.name in names]


class AnalysisService:
    """
    Service métier des commandes d'analyse

    Chaque commande met à jour les statistiques du service et ne lève que
    pour des erreurs de programmation.
    """

    def __init__(self):
        self.service_statistics = {
            'total_commands': 0,
            'successful_commands': 0,
            'failed_commands': 0,
            'commands': {},
            'service_start_time': datetime.now(),
        }

        logger.debug("✅ Service d'analyse initialisé")

    def _record(self, command: str, bundle: ReportBundle) -> ReportBundle:
        stats = self.service_statistics
        stats['total_commands'] += 1
        stats['commands'][command] = stats['commands'].get(command, 0) + 1
        if bundle.success:
            stats['successful_commands'] += 1
        else:
            stats['failed_commands'] += 1
        return bundle

    def _failure(self, command: str, error: SimulatorError, config: RunConfig) -> ReportBundle:
        logger.error(f"❌ Commande {command} interrompue ({error.reason}): {error.message}")
        return self._record(command, ReportBundle.from_error(command, error, config.to_dict()))

    # ==========================================================================
    # ÉTAT STATIONNAIRE
    # ==========================================================================

    def cmd_steady_state(self, config: RunConfig) -> ReportBundle:
        """
        État stationnaire d'un réglage laser

        Options (`steady_state`): référentiel `lab` ou `transformed`,
        restriction `restrict_to` (liste de modes ou 'coupled'),
        balayage `beta_sweep` du rapport β_s/β_u.

        Args:
            config: configuration validée (section `lasers` requise)

        Returns:
            ReportBundle: covariance stationnaire et spectre de la dérive
        """
        options = config.steady_state
        try:
            results, checks = self._steady_state(config, options)
            tables = {}
            if 'beta_sweep' in options:
                sweep = self._beta_sweep(config, options['beta_sweep'])
                results['beta_sweep'] = sweep
                checks['stable_below_boundary'] = all(
                    row['spectral_abscissa'] < 0 for row in sweep if row['ratio'] < 1.0
                )
                tables['beta_sweep'] = pd.DataFrame(
                    [{key: row[key] for key in ('ratio', 'spectral_abscissa', 'marginal')} for row in sweep]
                )
        except SimulatorError as e:
            return self._failure('steady-state', e, config)

        logger.info(f"✅ {SUCCESS_MESSAGES['steady_state_done']} ({results['frame']})")
        return self._record('steady-state', ReportBundle(
            command='steady-state',
            results=results,
            checks=checks,
            tables=tables,
            config=config.to_dict(),
        ))

    def _steady_state(self, config: RunConfig, options: Dict):
        n_ensembles = config.lasers[0].n_ensembles
        registry = ModeRegistry.canonical(n_ensembles)
        hamiltonian = _laser_hamiltonian(config.lasers, registry)
        results = {'frame': options.get('frame', 'lab')}

        if results['frame'] == 'transformed':
            xi, transform = _frame_transform(config.lasers[0], registry)
            hamiltonian = conjugate_hamiltonian(hamiltonian, transform)
            results['frame_xi'] = xi

        spec = LindbladSpec(hamiltonian, config.kappa)
        restrict_to = options.get('restrict_to')
        if restrict_to == 'coupled':
            spec = restrict(spec, _coupled_labels(hamiltonian))
        elif restrict_to:
            spec = restrict(spec, restrict_to)
        results['modes'] = spec.registry.names
        results['couplings'] = spec.hamiltonian.coupled_pairs(DECOUPLING_TOLERANCE)

        dd = drift_diffusion(spec)
        results['spectrum'] = spectrum_report(dd)
        if n_ensembles == 1:
            laser = config.lasers[0]
            results['printed_rate_eigenvalues'] = list(
                printed_rate_eigenvalues(laser.beta_u[0], laser.beta_s[0], config.kappa)
            )

        state = steady_state(dd)
        check_physicality(state, 'état stationnaire')
        distance = covariance_distance(state, vacuum_state(state.registry))
        residual = stationary_residual(state, dd)
        results.update({
            'covariance': state.covariance.tolist(),
            'purity': purity(state),
            'vacuum_distance': distance,
            'residual': residual,
            'convergence_time': convergence_time(dd, config.tolerances.get(
                'convergence', ProtocolConfig.CONVERGENCE_TOLERANCE)),
            'photon_numbers': {label.name: state.photon_number(label) for label in state.registry},
        })
        checks = {
            'is_vacuum': distance <= VACUUM_TOLERANCE,
            'residual_below_tolerance': residual <= VACUUM_TOLERANCE * max(1.0, config.kappa),
        }
        return results, checks

    def _beta_sweep(self, config: RunConfig, options: Dict) -> List[Dict]:
        laser = config.lasers[0]
        cavity = A_PLUS if laser.direction == 'clockwise' else A_MINUS
        labels = [cavity] + [C0(n) for n in laser.ensembles()]
        registry = ModeRegistry.canonical(laser.n_ensembles)
        rows = []
        for ratio in np.linspace(options['min_ratio'], options['max_ratio'], options['points']):
            probe = LaserConfig(
                laser.direction,
                laser.beta_u,
                tuple(float(ratio) * b for b in laser.beta_u),
                laser.phi_u,
                laser.phi_s,
            )
            hamiltonian = effective_hamiltonian(probe, registry, enforce_stability=False)
            dd = drift_diffusion(restrict(LindbladSpec(hamiltonian, config.kappa), labels))
            abscissa = spectral_abscissa(dd)
            rows.append({
                'ratio': float(ratio),
                'spectral_abscissa': abscissa,
                'marginal': abscissa >= -MARGINAL_ABSCISSA * config.kappa,
            })
        flagged = [row['ratio'] for row in rows if row['marginal']]
        if flagged:
            logger.warning(f"⚠️ Stabilité marginale pour β_s/β_u ∈ {flagged}")
        return rows

    # ==========================================================================
    # ÉVOLUTION LIBRE
    # ==========================================================================

    def cmd_evolve(self, config: RunConfig) -> ReportBundle:
        """
        Évolution depuis le vide global sous un réglage laser fixe

        Args:
            config: configuration validée (sections `lasers` et `evolve`)

        Returns:
            ReportBundle: état final et série temporelle (pureté, photons)
        """
        duration_kappa = float(config.evolve['duration'])
        duration = time_from_kappa_units(duration_kappa, config.kappa)
        samples = int(config.evolve['samples'])
        try:
            registry = ModeRegistry.canonical(config.lasers[0].n_ensembles)
            dd = drift_diffusion(LindbladSpec(_laser_hamiltonian(config.lasers, registry), config.kappa))
            state = vacuum_state(registry)
            rows = [self._evolve_sample(0.0, state)]
            for time, current in evolve_samples(state, dd, duration, samples):
                check_physicality(current, f"évolution, t = {time:.4g}")
                rows.append(self._evolve_sample(time, current))
                state = current
        except SimulatorError as e:
            return self._failure('evolve', e, config)

        results = {
            'duration': duration_kappa,
            'duration_physical': duration,
            'final_state': state.to_dict(),
            'final_purity': purity(state),
            'stationary_residual': stationary_residual(state, dd),
            'spectrum': spectrum_report(dd),
        }
        return self._record('evolve', ReportBundle(
            command='evolve',
            results=results,
            checks={'physical': True},
            tables={'timeseries': timeseries_to_dataframe(rows)},
            config=config.to_dict(),
        ))

    @staticmethod
    def _evolve_sample(time: float, state) -> EvolveSample:
        return EvolveSample(
            time=time,
            purity=purity(state),
            n_a_plus=state.photon_number(A_PLUS),
            n_a_minus=state.photon_number(A_MINUS),
            min_symplectic_eigenvalue=float(np.min(symplectic_eigenvalues(state))),
        )

    # ==========================================================================
    # MODES COLLECTIFS
    # ==========================================================================

    def cmd_modes(self, config: RunConfig) -> ReportBundle:
        """
        Orthogonalité des modes collectifs d'une chaîne d'atomes

        Returns:
            ReportBundle: déficit, limite continue et matrice de recouvrement (CSV)
        """
        report = modes_report(config.geometry, config.tolerances.get('deficit_threshold'))
        matrix = report.pop('overlap_matrix')
        orders = report['orders']
        table = pd.DataFrame([
            {
                'row_order': orders[a],
                'col_order': orders[b],
                'real': float(matrix[a, b].real),
                'imag': float(matrix[a, b].imag),
                'abs': float(abs(matrix[a, b])),
            }
            for a in range(len(orders))
            for b in range(len(orders))
        ])
        report['hermitian'] = bool(np.allclose(matrix, matrix.conj().T, atol=1e-12))
        return self._record('modes', ReportBundle(
            command='modes',
            results=report,
            checks={'orthogonal': report['orthogonal'], 'hermitian': report['hermitian']},
            tables={'overlap': table},
            config=config.to_dict(),
        ))

    # ==========================================================================
    # ORACLE DE FOCK
    # ==========================================================================

    def cmd_oracle(self, config: RunConfig) -> ReportBundle:
        """
        Comparaison du noyau gaussien avec l'oracle de Fock sur (a₊, C₀ₖ)

        Systèmes: `mixer` g(a₊†C₀ₖ + h.c.) ou `squeezer_mixer`
        β_u a₊†C₀ₖ + β_s a₊†C₀ₖ† + h.c.; état initial vide ou C₀ₖ comprimé.
        Sans amortissement, la dérive de pureté de l'oracle est contrôlée.

        Returns:
            ReportBundle: écarts de moments par instant
        """
        options = config.oracle
        damping = bool(options['damping'])
        kappa = config.kappa if damping else 0.0
        tolerance = config.tolerances.get('oracle_comparison', OracleConfig.COMPARISON_TOLERANCE)
        registry = ModeRegistry((A_PLUS, C0(1)))
        terms = HamiltonianTerms(registry)
        if options['system'] == 'mixer':
            terms.exchange(A_PLUS, C0(1), options['g'])
        else:
            terms.exchange(A_PLUS, C0(1), options['beta_u'])
            terms.pair(A_PLUS, C0(1), options['beta_s'])
        hamiltonian = terms.build()

        try:
            space = FockSpace(registry, int(options['cutoff']))
            xi0 = float(options['initial_squeezing'])
            rho0 = squeezed_vacuum(space, C0(1), xi0) if xi0 else vacuum(space)
            gaussian0 = apply_symplectic(vacuum_state(registry), single_mode_squeezer(registry, C0(1), xi0))
            dd = drift_diffusion(LindbladSpec(hamiltonian, kappa, (A_PLUS,))) if damping else unitary_drift(hamiltonian)
            expression = OperatorExpr.from_quadratic(hamiltonian)
            initial_purity = rho0.purity
            rows = []
            for time in options['times']:
                elapsed = time_from_kappa_units(float(time), config.kappa)
                rho = evolve_fock(rho0, expression, [A_PLUS] if damping else [], kappa, elapsed)
                gaussian = evolve(gaussian0, dd, elapsed)
                comparison = compare_with_gaussian(rho, gaussian)
                rows.append({
                    'time': float(time),
                    'time_physical': elapsed,
                    **comparison,
                    'gaussian_purity': purity(gaussian),
                    'purity_drift': abs(comparison['oracle_purity'] - initial_purity),
                    'oracle_photons_a_plus': covariance_from_density(rho).photon_number(A_PLUS),
                })
        except SimulatorError as e:
            return self._failure('oracle', e, config)

        worst = max(row['max_covariance_discrepancy'] for row in rows)
        checks = {'covariance_agreement': worst <= tolerance}
        if not damping:
            checks['purity_conserved'] = max(row['purity_drift'] for row in rows) < 1e-9
        results = {
            'system': options['system'],
            'cutoff': space.cutoff,
            'damping': damping,
            'max_covariance_discrepancy': worst,
            'tolerance': tolerance,
            'comparisons': rows,
        }
        logger.info(f"✅ Oracle {options['system']}: écart maximal {worst:.3e}")
        return self._record('oracle', ReportBundle(
            command='oracle',
            results=results,
            checks=checks,
            tables={'comparison': pd.DataFrame(rows)},
            config=config.to_dict(),
        ))

    def get_statistics(self) -> Dict:
        """Retourne les statistiques du service"""
        return self.service_statistics.copy()
