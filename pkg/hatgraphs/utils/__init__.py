"""
Utilities shared by the engines and the command line:
- logging: structlog configuration (stderr, console or JSON)
- workers: process pool helpers for the parallel sweeps
- formats: the .grp, .pres, .ccs, .wri and .gph text formats (import directly)
"""

from .logging import configure_logging
from .workers import first_success, parallel_map

__all__ = [
    "configure_logging",
    "first_success",
    "parallel_map",
]
