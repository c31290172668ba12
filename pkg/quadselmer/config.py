# quadselmer/config.py
from __future__ import annotations

import os

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, field_validator

from .errors import UsageError

OUTPUT_FORMATS = ("json", "csv", "text")

# variable de entorno -> campo de Config
ENV_FIELDS = {
    "SELMER_PRIME_NORM_FACTOR": "prime_norm_factor",
    "SELMER_PRIME_NORM_BOUND": "prime_norm_bound",
    "SELMER_MEMBERSHIP_BOUND": "membership_search_bound",
    "SELMER_SUPPLEMENTARY_BOUND": "supplementary_norm_bound",
    "SELMER_FUZZ_TRIALS": "fuzz_trials",
    "SELMER_FUZZ_HEIGHT": "fuzz_height",
    "SELMER_SEED": "seed",
    "SELMER_FORMAT": "output_format",
    "SELMER_JOBS": "parallelism",
}


class Config(BaseModel):
    prime_norm_factor: int = 200
    prime_norm_bound: int | None = None
    membership_search_bound: int = 5000
    supplementary_norm_bound: int = 100
    fuzz_trials: int = 25
    fuzz_height: int = 50
    seed: int = 0
    output_format: str = "text"
    parallelism: int = 1

    model_config = {"frozen": True}

    @field_validator(
        "prime_norm_factor",
        "membership_search_bound",
        "supplementary_norm_bound",
        "fuzz_height",
        "parallelism",
    )
    @classmethod
    def positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("las cotas deben ser positivas")
        return v

    @field_validator("fuzz_trials")
    @classmethod
    def non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("fuzz_trials no puede ser negativo")
        return v

    @field_validator("prime_norm_bound")
    @classmethod
    def optional_positive(cls, v: int | None) -> int | None:
        if v is not None and v <= 0:
            raise ValueError("prime_norm_bound debe ser positivo")
        return v

    @field_validator("output_format")
    @classmethod
    def known_format(cls, v: str) -> str:
        v = (v or "").strip().lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"formato desconocido: {v!r}")
        return v

    def prime_bound(self, disc: int) -> int:
        """Cota de norma para las búsquedas de primos en el campo de discriminante `disc`."""
        if self.prime_norm_bound is not None:
            return self.prime_norm_bound
        return self.prime_norm_factor * abs(disc)


def load_config(**overrides) -> Config:
    """
    Orden de prioridad: overrides explícitos > entorno (.env incluido) > defaults.
    Los overrides con valor None se ignoran (flags de CLI no dados).
    """
    load_dotenv(find_dotenv(usecwd=True))

    values: dict = {}
    for env_name, field in ENV_FIELDS.items():
        raw = os.getenv(env_name)
        if raw is not None and raw.strip() != "":
            values[field] = raw.strip()

    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return Config(**values)
    except ValueError as e:
        raise UsageError(f"configuración inválida: {e}") from e
