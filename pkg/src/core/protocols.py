"""
Protocoles de préparation d'états comprimés
===========================================

- one_two_mode: deux étapes (horaire puis anti-horaire) préparant
  S₀(ξ)|0⟩ sur C₀ₖ et S±k(ξ)|0,0⟩ sur (C₂ₖ, C₋₂ₖ) d'un ensemble.
- four_mode: quatre étapes adressant chacune un mode ±2k de deux
  ensembles, préparant l'état comprimé à quatre modes.

La simulation se fait toujours dans le référentiel du laboratoire; la
transformation d'analyse (compresseurs inverses + mélangeur) ne sert qu'aux
diagnostics.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import ProtocolConfig
from src.core.gaussian import apply_symplectic, check_physicality, partial_state, purity, vacuum_state
from src.core.hamiltonian_builder import effective_hamiltonian
from src.core.lindblad import drift_diffusion, drift_spectrum, evolve_samples, stationary_residual
from src.core.metrics import epr_vectors, fidelity, log_negativity, quadrature_variances
from src.core.squeezers import (
    conjugate_hamiltonian,
    ensemble_mixer,
    four_mode_squeezer,
    single_mode_squeezer,
    two_mode_squeezer,
)
from src.models.dynamics import LindbladSpec
from src.models.gaussian import GaussianState, SymplecticTransform
from src.models.laser import LaserConfig
from src.models.modes import A_MINUS, A_PLUS, C0, C2, Cm2, ModeLabel
from src.models.protocol import ProtocolResult, ProtocolSpec, ProtocolStep, StepRecord
from src.models.timeseries import ProtocolSample
from src.utils.constants import (
    ERROR_MESSAGES,
    FIDELITY_CONVENTION,
    FRAME_RULES,
    LAMBDA_MIX,
    PARAMETER_RULES,
    STEP_DIRECTIONS,
)
from src.utils.exceptions import ParameterRejectedError

logger = logging.getLogger(__name__)

DECOUPLING_TOLERANCE = 1e-10

# Mode ±2k adressé par chaque étape du protocole à quatre modes
FOUR_MODE_ADDRESSED = {1: C2(1), 2: Cm2(2), 3: C2(2), 4: Cm2(1)}


# ==============================================================================
# RÉSOLUTION DES PARAMÈTRES
# ==============================================================================

def _step_ratio(spec: ProtocolSpec, index: int) -> float:
    """tanh du paramètre de compression effectif de l'étape"""
    if spec.kind == 'one_two_mode':
        return math.tanh(spec.xi)
    lam = LAMBDA_MIX
    return math.tanh(lam * spec.xi) if index in (1, 2) else math.tanh(spec.xi / lam)


def _check_index(spec: ProtocolSpec, index: int) -> None:
    if not 1 <= index <= spec.n_steps:
        raise ValueError(f"Étape {index} hors de [1, {spec.n_steps}]")


def resolve_step_parameters(spec: ProtocolSpec, index: int) -> LaserConfig:
    """
    Couplages et phases d'une étape reproduisant le ξ cible

    Args:
        spec: spécification du protocole
        index: numéro d'étape (1-indexé)

    Returns:
        LaserConfig: réglage de l'étape, en unités physiques (β_ref·κ)
    """
    _check_index(spec, index)
    beta = spec.beta_ref * spec.kappa
    ratio = _step_ratio(spec, index)
    direction = STEP_DIRECTIONS[spec.kind][index]

    if ratio > ProtocolConfig.STABILITY_MAX_RATIO:
        raise ParameterRejectedError(
            f"{ERROR_MESSAGES['stability_margin']} (étape {index}: β_s/β_u = {ratio:.4f} "
            f"> {ProtocolConfig.STABILITY_MAX_RATIO})",
            rule='stability_margin',
            step=index,
            ratio=ratio,
        )

    if spec.kind == 'one_two_mode':
        return LaserConfig(direction, (beta,), (beta * ratio,))

    lam = LAMBDA_MIX
    sigma = beta * ratio
    if index in (1, 4):
        beta_u, beta_s = (beta, lam * beta), (lam * sigma, sigma)
    else:
        beta_u, beta_s = (lam * beta, beta), (sigma, lam * sigma)
    phases = {1: (0.0, 0.0), 2: (0.0, 0.0), 3: (0.0, math.pi), 4: (math.pi, 0.0)}[index]
    return LaserConfig(direction, beta_u, beta_s, phases, phases)


def _reference_pair(kind: str, index: int, laser: LaserConfig) -> Tuple[float, float]:
    """(β_u, β_s) entrant dans la formule de ξ de l'étape"""
    if kind == 'one_two_mode':
        return laser.beta_u[0], laser.beta_s[0]
    if index in (1, 4):
        return laser.beta_u[0], laser.beta_s[1]
    return laser.beta_u[1], laser.beta_s[0]


def recover_xi(kind: str, index: int, laser: LaserConfig) -> float:
    """
    Paramètre ξ recalculé à partir des couplages d'une étape

    one_two_mode: ½ ln((β_u1+β_s1)/(β_u1-β_s1))
    four_mode: (1/2λ) ln(…) aux étapes 1-2, (λ/2) ln(…) aux étapes 3-4
    """
    beta_u, beta_s = _reference_pair(kind, index, laser)
    log_term = math.log((beta_u + beta_s) / (beta_u - beta_s))
    if kind == 'one_two_mode':
        return 0.5 * log_term
    lam = LAMBDA_MIX
    return log_term / (2.0 * lam) if index in (1, 2) else 0.5 * lam * log_term


def intended_coupling(kind: str, index: int, laser: LaserConfig) -> float:
    """Couplage attendu du mode adressé dans le référentiel transformé"""
    beta_u, beta_s = _reference_pair(kind, index, laser)
    scale = 1.0 if kind == 'one_two_mode' else 1.0 + LAMBDA_MIX ** 2
    return math.sqrt(scale * (beta_u ** 2 - beta_s ** 2))


def resolve_step(spec: ProtocolSpec, index: int) -> ProtocolStep:
    laser = resolve_step_parameters(spec, index)
    return ProtocolStep(index, laser, spec.duration(index), PARAMETER_RULES[spec.kind][index])


# ==============================================================================
# CIBLE ET RÉFÉRENTIEL D'ANALYSE
# ==============================================================================

def target_sector(spec: ProtocolSpec) -> List[ModeLabel]:
    """Modes sur lesquels la fidélité est évaluée"""
    if spec.kind == 'one_two_mode':
        return list(spec.registry.labels)
    return [C2(1), Cm2(1), C2(2), Cm2(2)]


def target_state(spec: ProtocolSpec) -> GaussianState:
    """
    État visé par le protocole

    Args:
        spec: spécification

    Returns:
        GaussianState: S₀(ξ)⊗S±k(ξ) sur le vide (one_two_mode) ou
        compresseur à quatre modes sur les modes ±2k (four_mode)
    """
    registry = spec.registry
    state = vacuum_state(registry)
    if spec.kind == 'one_two_mode':
        squeezer = single_mode_squeezer(registry, C0(1), spec.xi0) @ two_mode_squeezer(
            registry, C2(1), Cm2(1), spec.xi1
        )
        return apply_symplectic(state, squeezer)
    return apply_symplectic(state, four_mode_squeezer(registry, spec.xi))


def analysis_transform(spec: ProtocolSpec) -> SymplecticTransform:
    """
    Transformation vers le référentiel où chaque étape est un mélangeur linéaire

    one_two_mode: S₀(-ξ) sur C₀ₖ et S±k(-ξ) sur (C₂ₖ, C₋₂ₖ).
    four_mode: S±k(ξ/λ) sur (C₂ₖ⁽²⁾, C₋₂ₖ⁽¹⁾) · S±k(-λξ) sur (C₂ₖ⁽¹⁾, C₋₂ₖ⁽²⁾) · T.
    La cible y devient le vide sur le secteur cible.
    """
    registry = spec.registry
    if spec.kind == 'one_two_mode':
        return single_mode_squeezer(registry, C0(1), -spec.xi0) @ two_mode_squeezer(
            registry, C2(1), Cm2(1), -spec.xi1
        )
    lam = LAMBDA_MIX
    first = two_mode_squeezer(registry, C2(1), Cm2(2), -lam * spec.xi)
    second = two_mode_squeezer(registry, C2(2), Cm2(1), spec.xi / lam)
    return second @ first @ ensemble_mixer(registry)


def _inspected_modes(spec: ProtocolSpec) -> List[ModeLabel]:
    if spec.kind == 'one_two_mode':
        return [C0(1), C2(1), Cm2(1)]
    return [C2(1), Cm2(1), C2(2), Cm2(2)]


def _intended_modes(spec: ProtocolSpec, index: int) -> List[ModeLabel]:
    if spec.kind == 'one_two_mode':
        return [C0(1), C2(1)] if index == 1 else [C0(1), Cm2(1)]
    return [FOUR_MODE_ADDRESSED[index]]


def verify_step_decoupling(spec: ProtocolSpec, index: int) -> Dict:
    """
    Couplages des modes collectifs à la cavité après transformation d'analyse

    Args:
        spec: spécification
        index: numéro d'étape

    Returns:
        Dict: couplages par mode, couplage attendu et drapeau 'passed'
    """
    step = resolve_step(spec, index)
    registry = spec.registry
    hamiltonian = effective_hamiltonian(step.laser, registry)
    transformed = conjugate_hamiltonian(hamiltonian, analysis_transform(spec))
    exchange, pair = transformed.ladder_blocks()
    cavity = [registry.index(A_PLUS), registry.index(A_MINUS)]

    expected = intended_coupling(spec.kind, index, step.laser)
    intended = _intended_modes(spec, index)
    modes, passed = {}, True
    for label in _inspected_modes(spec):
        j = registry.index(label)
        exchange_part = math.sqrt(sum(abs(exchange[j, c]) ** 2 for c in cavity))
        pair_part = math.sqrt(sum(abs(pair[j, c]) ** 2 for c in cavity))
        magnitude = math.hypot(exchange_part, pair_part)
        if label in intended:
            ok = (pair_part <= DECOUPLING_TOLERANCE
                  and abs(exchange_part - expected) <= DECOUPLING_TOLERANCE * max(1.0, expected))
        else:
            ok = magnitude <= DECOUPLING_TOLERANCE
        passed = passed and ok
        modes[label.name] = {
            'exchange': exchange_part,
            'pair': pair_part,
            'magnitude': magnitude,
            'intended': label in intended,
            'passed': ok,
        }

    if not passed:
        logger.warning(f"⚠️ Découplage non vérifié à l'étape {index} ({spec.kind})")
    return {
        'step': index,
        'rule': FRAME_RULES[spec.kind][index],
        'intended_modes': [label.name for label in intended],
        'expected_coupling': expected,
        'modes': modes,
        'passed': passed,
    }


# ==============================================================================
# EXÉCUTION
# ==============================================================================

def _epr_pair(spec: ProtocolSpec) -> Tuple[ModeLabel, ModeLabel]:
    return C2(1), Cm2(1)


def _bipartition(spec: ProtocolSpec) -> Tuple[List[ModeLabel], List[ModeLabel]]:
    if spec.kind == 'one_two_mode':
        return [C2(1)], [Cm2(1)]
    return [C2(1), Cm2(1)], [C2(2), Cm2(2)]


def key_variances(state: GaussianState, spec: ProtocolSpec) -> Dict[str, float]:
    """Var(x), Var(p) de C₀ₖ⁽¹⁾ et variances EPR de (C₂ₖ⁽¹⁾, C₋₂ₖ⁽¹⁾)"""
    registry = state.registry
    x0, p0 = registry.quadrature_indices(C0(1))
    epr = epr_vectors(registry, *_epr_pair(spec))
    var_minus, var_plus = quadrature_variances(state, [epr['x_minus'], epr['x_plus']])
    return {
        'var_x_C0k': float(state.covariance[x0, x0]),
        'var_p_C0k': float(state.covariance[p0, p0]),
        'var_epr_minus': var_minus,
        'var_epr_plus': var_plus,
    }


def _sample(state: GaussianState, target: GaussianState, spec: ProtocolSpec,
            time: float, step: int) -> ProtocolSample:
    sector = target_sector(spec)
    reduced = partial_state(state, sector)
    return ProtocolSample(
        time=time,
        fidelity=fidelity(reduced, partial_state(target, sector)),
        purity=purity(reduced),
        n_a_plus=state.photon_number(A_PLUS),
        n_a_minus=state.photon_number(A_MINUS),
        step=step,
        **key_variances(state, spec),
    )


def run_protocol(spec: ProtocolSpec,
                 on_step: Optional[Callable[[StepRecord], None]] = None) -> ProtocolResult:
    """
    Exécute le protocole depuis le vide global

    Args:
        spec: spécification
        on_step: rappel optionnel après chaque étape

    Returns:
        ProtocolResult: état final, diagnostics et série temporelle
    """
    registry = spec.registry
    target = target_state(spec)
    state = vacuum_state(registry)
    samples = [_sample(state, target, spec, 0.0, 0)]
    records: List[StepRecord] = []
    elapsed = 0.0

    for index in spec.step_order:
        step = resolve_step(spec, index)
        hamiltonian = effective_hamiltonian(step.laser, registry)
        dd = drift_diffusion(LindbladSpec(hamiltonian, spec.kappa))
        logger.debug(f"Étape {index} ({step.direction}, {step.tag}) sur {step.duration:.4g}")

        for offset, current in evolve_samples(state, dd, step.duration, spec.samples_per_step):
            check_physicality(current, f"étape {index}, t = {elapsed + offset:.4g}")
            samples.append(_sample(current, target, spec, elapsed + offset, index))
            state = current
        elapsed += step.duration

        residual = stationary_residual(state, dd)
        converged = residual <= ProtocolConfig.CONVERGENCE_TOLERANCE * spec.kappa
        if not converged:
            logger.warning(f"⚠️ Étape {index} non convergée: ‖σ̇‖ = {residual:.3e}")
        record = StepRecord(
            step=step,
            xi_recovered=recover_xi(spec.kind, index, step.laser),
            drift_spectrum=drift_spectrum(dd),
            decoupling=verify_step_decoupling(spec, index),
            end_state=state,
            residual=residual,
            converged=converged,
        )
        records.append(record)
        if on_step is not None:
            on_step(record)

    result = ProtocolResult(spec, state, target, records, samples)
    result.metrics = protocol_metrics(spec, state, target, records)
    logger.info(
        f"✅ Protocole {spec.kind} terminé: fidélité {result.metrics['fidelity']:.6f}, "
        f"pureté {result.metrics['purity']:.6f}"
    )
    return result


def protocol_metrics(spec: ProtocolSpec, state: GaussianState, target: GaussianState,
                     records: Sequence[StepRecord] = ()) -> Dict:
    """Mesures finales sur le secteur cible"""
    sector = target_sector(spec)
    reduced = partial_state(state, sector)
    reduced_target = partial_state(target, sector)
    framed = partial_state(apply_symplectic(state, analysis_transform(spec)), sector)
    part_a, part_b = _bipartition(spec)
    variances = key_variances(state, spec)
    target_variances = key_variances(target, spec)
    return {
        'fidelity': fidelity(reduced, reduced_target),
        'fidelity_convention': FIDELITY_CONVENTION,
        'purity': purity(reduced),
        'frame_vacuum_fidelity': fidelity(framed, vacuum_state(framed.registry)),
        'log_negativity': log_negativity(state, part_a, part_b),
        'target_log_negativity': log_negativity(target, part_a, part_b),
        'bipartition': [[label.name for label in part_a], [label.name for label in part_b]],
        'sector': [label.name for label in sector],
        'variances': variances,
        'target_variances': target_variances,
        'n_a_plus': state.photon_number(A_PLUS),
        'n_a_minus': state.photon_number(A_MINUS),
        'all_steps_converged': all(record.converged for record in records),
        'all_steps_decoupled': all(record.decoupling['passed'] for record in records),
    }


def duration_scan(spec: ProtocolSpec, durations: Sequence[float]) -> Dict:
    """
    Fidélité finale pour plusieurs durées d'étape (ξ et β_ref fixés)

    Les violations de monotonie sont signalées, pas levées.
    """
    fidelities = []
    for duration in durations:
        scanned = ProtocolSpec(
            kind=spec.kind, xi=spec.xi, beta_ref=spec.beta_ref, durations=(duration,),
            samples_per_step=1, step_order=spec.step_order, kappa=spec.kappa,
        )
        fidelities.append(run_protocol(scanned).metrics['fidelity'])
    violations = [
        {'from': durations[i], 'to': durations[i + 1]}
        for i in range(len(durations) - 1)
        if fidelities[i + 1] < fidelities[i]
    ]
    if violations:
        logger.warning(f"⚠️ Fidélité non monotone en durée: {violations}")
    return {
        'durations': list(durations),
        'fidelities': fidelities,
        'monotone': not violations,
        'violations': violations,
    }

