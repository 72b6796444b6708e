"""
Package principal du simulateur de compression multimode
========================================================

Simulation gaussienne (matrices de covariance) de la préparation d'états
comprimés multimodes d'ensembles atomiques dans une cavité en anneau:
- core: noyau gaussien, hamiltoniens, dynamique dissipative, oracle de Fock, protocoles
- models: structures de données (modes, états, lasers, protocoles, rapports)
- services: orchestration des commandes
- utils: validation, constantes, exceptions, helpers
"""

__version__ = '1.0.0'
