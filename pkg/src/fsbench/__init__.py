"""Finite workbench for Hindman-type anti-Ramsey constructions.

Exact support algebra in direct sums of copies of Q and Prüfer groups,
Δ-system and condensation extraction, the explicit colourings with their
sandwich checks, and FS / FSₙ / sumset witness search.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = ["__version__"]
