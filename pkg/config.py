"""
Configuration centralisée du simulateur de compression multimode
================================================================

Ce fichier contient toutes les constantes et tolérances de configuration
du simulateur gaussien (cavité en anneau + ensembles atomiques), avec
surcharge par variables d'environnement lorsque c'est utile.
"""

import os
from datetime import datetime


# ==============================================================================
# CONFIGURATION GÉNÉRALE DE L'APPLICATION
# ==============================================================================

class AppConfig:
    """Configuration principale de l'application"""

    # Dossiers de l'application
    PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
    OUTPUT_DIR = os.environ.get('SIM_OUTPUT_DIR') or os.path.join(PROJECT_ROOT, 'outputs')
    LOGS_DIR = os.environ.get('SIM_LOGS_DIR') or os.path.join(PROJECT_ROOT, 'logs')


# ==============================================================================
# CONFIGURATION DU NOYAU GAUSSIEN
# ==============================================================================

class SimulationConfig:
    """Tolérances numériques du noyau gaussien et de l'évolution de Lindblad"""

    # Invariants des états et transformations
    SYMMETRY_TOLERANCE = 1e-12       # relative, sur σ - σᵀ
    PHYSICALITY_TOLERANCE = 1e-9     # valeurs propres symplectiques ≥ 1/2 - tol
    SYMPLECTIC_TOLERANCE = 1e-12     # ‖SΩSᵀ - Ω‖∞
    NORMALIZATION_TOLERANCE = 1e-9   # combinaisons de quadratures

    # Stabilité de la dérive (multiplié par κ)
    HURWITZ_TOLERANCE = 1e-12

    # Propagation exacte: ‖A‖·dt maximal par sous-pas de l'exponentielle augmentée
    EVOLVE_MAX_NORM_STEP = float(os.environ.get('SIM_EVOLVE_MAX_NORM_STEP', 4.0))

    # Intégrateur RK4 de contrôle
    FIXED_STEP_COUNT = 4000

    # Résidu de Lyapunov relatif à ‖D‖
    LYAPUNOV_RESIDUAL_TOLERANCE = 1e-10


# ==============================================================================
# CONFIGURATION DU CONSTRUCTEUR D'HAMILTONIENS
# ==============================================================================

class HamiltonianConfig:
    """Contrôles des paramètres physiques (élimination adiabatique)"""

    # Δ ≥ facteur × max(Ω, g, γ)
    DETUNING_FACTOR = 50.0

    # Tolérance des conditions de résonance (multipliée par κ)
    RESONANCE_TOLERANCE = 1e-6

    # Rejet des jeux de paramètres violant les conditions de résonance
    ENFORCE_RESONANCE = True


# ==============================================================================
# CONFIGURATION DES MODES COLLECTIFS
# ==============================================================================

class ModesConfig:
    """Configuration de l'analyse d'orthogonalité des modes collectifs"""

    # Défaut d'orthogonalité au-delà duquel le modèle gaussien est douteux
    DEFICIT_WARNING_THRESHOLD = 0.05

    # Ordres m considérés
    ORDERS = (0, 2, -2)


# ==============================================================================
# CONFIGURATION DES PROTOCOLES
# ==============================================================================

class ProtocolConfig:
    """Paramètres par défaut des protocoles de préparation"""

    # Durée par étape (unités de 1/κ) et échelle de couplage (unités de κ)
    DEFAULT_STEP_DURATION = 10.0
    DEFAULT_BETA_REF = 2.0

    # Rapport β_s/β_u effectif maximal accepté
    STABILITY_MAX_RATIO = 0.95

    # Résidu ‖σ̇‖ en fin d'étape (multiplié par κ)
    CONVERGENCE_TOLERANCE = 1e-8

    # Échantillonnage des séries temporelles
    DEFAULT_SAMPLES_PER_STEP = 20

    # Seuil de fidélité pour le code de sortie
    FIDELITY_THRESHOLD = 0.99


# ==============================================================================
# CONFIGURATION DE L'ORACLE DE FOCK
# ==============================================================================

class OracleConfig:
    """Configuration de l'intégrateur de Lindblad en base de Fock tronquée"""

    DEFAULT_CUTOFF = 12
    MAX_CUTOFF = 30
    MAX_MODES = 3
    MAX_DIMENSION = 2048

    # Population maximale du dernier niveau de Fock
    TRUNCATION_THRESHOLD = 1e-8

    # Intégrateur adaptatif
    METHOD = 'DOP853'
    RTOL = 1e-10
    ATOL = 1e-12

    # Écart de covariance toléré entre oracle et noyau gaussien
    COMPARISON_TOLERANCE = 1e-3


# ==============================================================================
# CONFIGURATION DES BALAYAGES
# ==============================================================================

class SweepConfig:
    """Configuration du mode balayage (pool de processus)"""

    DEFAULT_WORKERS = int(os.environ.get('SIM_WORKERS', os.cpu_count() or 1))
    SHOW_PROGRESS = os.environ.get('SIM_PROGRESS', 'true').lower() == 'true'


# ==============================================================================
# CONFIGURATION EXPORT DES DONNÉES
# ==============================================================================

class ExportConfig:
    """Configuration pour l'export des rapports"""

    # Configuration CSV
    CSV_SEPARATOR = ','
    CSV_DECIMAL = '.'
    CSV_ENCODING = 'utf-8'
    CSV_FLOAT_FORMAT = '%.12g'

    # Nom de base des rapports JSON
    DEFAULT_REPORT_FILENAME = 'report'

    # Champ d'horodatage isolable (--no-timestamp)
    TIMESTAMP_FIELD = 'generated_at'

    @staticmethod
    def get_timestamped_filename(base_name: str, extension: str) -> str:
        """Génère un nom de fichier avec timestamp"""
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        return f"{base_name}_{timestamp}.{extension}"


# ==============================================================================
# CONFIGURATION LOGGING
# ==============================================================================

class LoggingConfig:
    """Configuration pour les logs de l'application"""

    # Niveau de log par défaut
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

    # Format des logs
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    COLOR_LOG_FORMAT = '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s'
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    # Fichier de log optionnel
    LOG_FILE = os.environ.get('LOG_FILE')

    # Rotation des logs
    MAX_LOG_SIZE = 10 * 1024 * 1024  # 10MB
    BACKUP_COUNT = 5

    LOG_COLORS = {
        'DEBUG': 'cyan',
        'INFO': 'green',
        'WARNING': 'yellow',
        'ERROR': 'red',
        'CRITICAL': 'bold_red',
    }


# ==============================================================================
# CONFIGURATION VALIDATION
# ==============================================================================

class ValidationConfig:
    """Bornes de validation des fichiers de configuration"""

    # Paramètre de compression maximal accepté
    MAX_XI = 5.0

    # Durée maximale par étape (unités de 1/κ)
    MAX_DURATION = 1.0e4

    # Échantillonnage
    MAX_SAMPLES_PER_STEP = 10000


# ==============================================================================
# VARIABLES GLOBALES D'ACCÈS RAPIDE
# ==============================================================================

APP_CONFIG = AppConfig()
SIMULATION_CONFIG = SimulationConfig()
HAMILTONIAN_CONFIG = HamiltonianConfig()
MODES_CONFIG = ModesConfig()
PROTOCOL_CONFIG = ProtocolConfig()
ORACLE_CONFIG = OracleConfig()
SWEEP_CONFIG = SweepConfig()
EXPORT_CONFIG = ExportConfig()
LOGGING_CONFIG = LoggingConfig()
VALIDATION_CONFIG = ValidationConfig()
