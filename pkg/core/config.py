import os
from dataclasses import dataclass, fields, replace
from typing import Dict, Mapping, Optional

from .errors import ConfigurationError


@dataclass(frozen=True)
class Settings:
    # closed forms: working precision is n + extra_precision_bits, doubled on failure up to the cap
    extra_precision_bits: int = 64
    precision_cap_bits: int = 1 << 16
    # oracle caps
    oracle_level_cap: int = 40
    oracle_literal_cap: int = 20
    # harness
    workers: int = 1
    checkpoint_schema_version: int = 1
    section5_scale: float = 1.0
    log_level: str = "WARNING"

    def default_precision(self, n: int) -> int:
        return n + self.extra_precision_bits

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        env = os.environ if environ is None else environ
        overrides: Dict[str, object] = {}
        for f in fields(cls):
            key = f"ESBF_{f.name.upper()}"
            raw = env.get(key)
            if raw is None or raw == "":
                continue
            try:
                if f.type in (int, "int"):
                    overrides[f.name] = int(raw)
                elif f.type in (float, "float"):
                    overrides[f.name] = float(raw)
                else:
                    overrides[f.name] = raw
            except ValueError:
                raise ConfigurationError(f"valor inválido para {key}: {raw!r}")
        settings = replace(cls(), **overrides)
        settings.validate()
        return settings

    def validate(self) -> None:
        if self.extra_precision_bits < 0:
            raise ConfigurationError("extra_precision_bits deve ser >= 0")
        if self.precision_cap_bits < 64:
            raise ConfigurationError("precision_cap_bits deve ser >= 64")
        if self.oracle_literal_cap > self.oracle_level_cap:
            raise ConfigurationError("oracle_literal_cap não pode exceder oracle_level_cap")
        if self.workers < 1:
            raise ConfigurationError("workers deve ser >= 1")
        if self.section5_scale <= 0:
            raise ConfigurationError("section5_scale deve ser > 0")


DEFAULT_SETTINGS = Settings()
