# config.py
import os
from dataclasses import dataclass
from typing import Optional

from sawtooth_tool.mode import ResidueStrategy
from series_tool.errors import ConfigError
from series_tool.extension import ExtensionPolicy

# Defaults, overridable from the environment
MAX_MODES = int(os.getenv("SAWTOOTH_MAX_MODES", 16))
MAX_COMPONENTS = int(os.getenv("SAWTOOTH_MAX_COMPONENTS", 64))
EMD_MAX_SIFTS = int(os.getenv("SAWTOOTH_EMD_MAX_SIFTS", 64))
LOG_LEVEL = os.getenv("SAWTOOTH_LOG_LEVEL", "WARNING")

METHODS = ("sawtooth", "expansion", "emd")
GENERATOR_KINDS = ("sine", "two-tone", "randomwalk", "mixed")


@dataclass
class RunConfig:
    """Options of one `decompose` run as given on the command line."""
    method: str = "sawtooth"
    policy: str = "even"
    strategy: str = "mean"
    max_modes: int = MAX_MODES
    epsilon: Optional[float] = None
    max_components: int = MAX_COMPONENTS
    input_path: Optional[str] = None
    generate: Optional[str] = None
    n: int = 2000
    seed: int = 0
    out_dir: str = "out"
    svg: bool = False

    def validate(self) -> "RunConfig":
        if self.method not in METHODS:
            raise ConfigError(f"unknown method '{self.method}' (choose from {', '.join(METHODS)})")
        if self.method == "expansion":
            if self.epsilon is None or not self.epsilon > 0:
                raise ConfigError("the expansion method needs --epsilon > 0")
        elif self.epsilon is not None:
            raise ConfigError("--epsilon only applies to the expansion method")
        try:
            ExtensionPolicy.from_name(self.policy)
            ResidueStrategy.from_name(self.strategy)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if self.max_modes < 1:
            raise ConfigError(f"max_modes must be at least 1, got {self.max_modes}")
        if self.max_components < 1:
            raise ConfigError(f"max_components must be at least 1, got {self.max_components}")
        if self.generate is not None:
            if self.generate not in GENERATOR_KINDS:
                raise ConfigError(f"unknown generator '{self.generate}' (choose from {', '.join(GENERATOR_KINDS)})")
            if self.n < 3:
                raise ConfigError(f"a generated series needs at least 3 samples, got {self.n}")
        elif self.input_path is None:
            raise ConfigError("either --input or --generate is required")
        elif not os.path.isfile(self.input_path):
            raise ConfigError(f"input file not found: {self.input_path}")
        return self
