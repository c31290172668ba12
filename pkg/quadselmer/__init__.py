"""Grupos de 2-Selmer de cuerpos cuadráticos: construcción, dualidades y verificación."""
from .config import Config, load_config
from .errors import DomainError, InconclusiveError, SelmerError, TheoremViolation, UsageError
from .field import RATIONAL, FieldElement, QuadField, make_field
from .ideals import Ideal
from .report import FieldReport
from .verify import scan, verify_field

__version__ = "0.1.0"

__all__ = [
    "Config",
    "DomainError",
    "FieldElement",
    "FieldReport",
    "Ideal",
    "InconclusiveError",
    "QuadField",
    "RATIONAL",
    "SelmerError",
    "TheoremViolation",
    "UsageError",
    "load_config",
    "make_field",
    "scan",
    "verify_field",
]
