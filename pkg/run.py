#!/usr/bin/env python3
"""
Point d'entrée du simulateur de compression multimode
=====================================================

Sous-commandes: protocol, steady-state, evolve, modes, oracle, sweep.

    python run.py protocol --config configs/one_two_mode.json --out outputs/ --no-timestamp

Codes de sortie: 0 succès, 1 fidélité sous le seuil (ou erreur interne),
2 configuration invalide, 3 paramètres rejetés ou dérive non Hurwitz,
4 état non physique, 5 troncature de Fock insuffisante.
"""

import argparse
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

# Ajout du répertoire racine au path Python
PROJECT_ROOT = Path(__file__).parent.absolute()
sys.path.insert(0, str(PROJECT_ROOT))

from config import APP_CONFIG, LOGGING_CONFIG  # noqa: E402

COMMANDS = ('protocol', 'steady-state', 'evolve', 'modes', 'oracle', 'sweep')


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Configure le logging de l'application (console colorée, fichier optionnel)

    Args:
        level: niveau de log (défaut LoggingConfig.LOG_LEVEL)

    Returns:
        logging.Logger: logger du point d'entrée
    """
    import colorlog

    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(getattr(logging, (level or LOGGING_CONFIG.LOG_LEVEL).upper(), logging.INFO))

    console = logging.StreamHandler(sys.stderr)
    if sys.stderr.isatty():
        console.setFormatter(colorlog.ColoredFormatter(
            LOGGING_CONFIG.COLOR_LOG_FORMAT,
            datefmt=LOGGING_CONFIG.DATE_FORMAT,
            log_colors=LOGGING_CONFIG.LOG_COLORS,
        ))
    else:
        console.setFormatter(logging.Formatter(LOGGING_CONFIG.LOG_FORMAT, datefmt=LOGGING_CONFIG.DATE_FORMAT))
    root.addHandler(console)

    if LOGGING_CONFIG.LOG_FILE:
        log_path = Path(LOGGING_CONFIG.LOG_FILE)
        if not log_path.is_absolute():
            log_path = Path(APP_CONFIG.LOGS_DIR) / log_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_path,
            maxBytes=LOGGING_CONFIG.MAX_LOG_SIZE,
            backupCount=LOGGING_CONFIG.BACKUP_COUNT,
            encoding='utf-8',
        )
        file_handler.setFormatter(logging.Formatter(LOGGING_CONFIG.LOG_FORMAT, datefmt=LOGGING_CONFIG.DATE_FORMAT))
        root.addHandler(file_handler)

    return logging.getLogger(__name__)


def check_dependencies() -> bool:
    """Vérifie que les dépendances requises sont installées"""
    required_packages = ['numpy', 'scipy', 'pandas', 'orjson', 'jsonschema', 'colorlog', 'tqdm']

    missing_packages = []
    for package in required_packages:
        try:
            __import__(package)
        except ImportError:
            missing_packages.append(package)

    if missing_packages:
        print("❌ Dépendances manquantes:", file=sys.stderr)
        for package in missing_packages:
            print(f"   - {package}", file=sys.stderr)
        print("\n💡 Installez avec: pip install -r requirements.txt", file=sys.stderr)
        return False

    return True


def build_parser() -> argparse.ArgumentParser:
    """Analyseur de la ligne de commande"""
    parser = argparse.ArgumentParser(
        prog='run.py',
        description="Simulateur gaussien de compression multimode en cavité en anneau",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        sub.add_argument('--config', required=True, help="fichier de configuration JSON")
        sub.add_argument('--out', default=None, help="dossier de sortie des rapports")
        sub.add_argument('--threshold', type=float, default=None,
                         help="seuil de fidélité pour le code de sortie (défaut 0.99)")
        sub.add_argument('--no-timestamp', action='store_true',
                         help="rapports reproductibles octet pour octet")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Fonction principale

    Args:
        argv: arguments (défaut sys.argv[1:])

    Returns:
        int: code de sortie
    """
    args = build_parser().parse_args(argv)
    if not check_dependencies():
        return 1
    logger = setup_logging()

    from src.models.report import ReportBundle
    from src.services.dispatcher import CommandDispatcher
    from src.services.export_service import ExportService
    from src.services.sweep_service import SweepService
    from src.utils.exceptions import ConfigError
    from src.utils.validators import load_config_file, parse_config_data

    timestamp = not args.no_timestamp
    try:
        data = load_config_file(args.config)
        if not isinstance(data, dict):
            raise ConfigError(["La configuration doit être un objet JSON"])
        if data.setdefault('command', args.command) != args.command:
            raise ConfigError([
                f"command: '{data['command']}' dans le fichier, '{args.command}' demandé"
            ])
        if args.threshold is not None:
            data['threshold'] = args.threshold
        config = parse_config_data(data, source=args.config)
    except ConfigError as e:
        for violation in e.violations:
            logger.error(f"❌ {violation}")
        if args.out:
            ExportService(args.out, timestamp).export_report(ReportBundle.from_error(args.command, e))
        return e.exit_code

    output_dir = args.out or config.output_dir
    timestamp = timestamp and config.timestamp
    logger.info(f"🚀 {args.command} ({args.config}) → {output_dir}")

    if config.command == 'sweep':
        bundle = SweepService().cmd_sweep(config, output_dir, timestamp, args.threshold)
    else:
        bundle = CommandDispatcher().execute(config)

    export = ExportService(output_dir, timestamp).export_report(bundle)
    if not export['success']:
        logger.error(f"❌ Écriture du rapport impossible: {export['error']}")
        return 1
    logger.info(f"📁 Rapport: {export['report_file']} (code de sortie {bundle.exit_code})")
    return bundle.exit_code


if __name__ == '__main__':
    sys.exit(main())
