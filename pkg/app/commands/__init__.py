"""
Módulo de comandos de la CLI.
"""

from app.commands.levels import levels
from app.commands.spectrum import spectrum
from app.commands.classify import classify
from app.commands.boundaries import boundaries
from app.commands.fit import fit
from app.commands.verify import verify

__all__ = [
    "levels",
    "spectrum",
    "classify",
    "boundaries",
    "fit",
    "verify",
]
