"""Run configuration: defaults, then a TOML file, then environment, then flags."""

from __future__ import annotations

import copy
import os
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .align import CostConfig
from .prompting import DEFAULT_INSTRUCTION, EXEMPLARS, CompletionEndpoint, PromptConfig

ENV_PREFIX = "GECSTRAT_"

DEFAULTS: dict = {
    "edit_extraction": {
        "substitute_base": 1.0,
        "insert": 1.0,
        "delete": 1.0,
        "case_only_substitute": 0.1,
        "transpose_per_token": 0.5,
    },
    "error_classification": {"lexicon": ""},
    "scoring": {"betas": [0.5], "mode": "correction"},
    "corpus_stats": {"annotator_policy": "first", "top": 5, "levels": {}},
    "prompt_harness": {
        "instruction": DEFAULT_INSTRUCTION,
        "exemplars": [list(p) for p in EXEMPLARS],
        "n_shots": 0,
        "delimiter_left": "{",
        "delimiter_right": "}",
        "temperature": 0.0,
        "max_tokens": 64,
        "max_in_flight": 4,
        "max_attempts": 3,
        "backoff_base": 1.0,
        "endpoint": {
            "base_url": "",
            "model": "",
            "api_key_env": "GECSTRAT_API_KEY",
            "timeout": 60.0,
        },
    },
    "paths": {"data_dir": ""},
}

# environment variable -> (section path, key)
ENV_KEYS = {
    "DATA_DIR": (("paths",), "data_dir"),
    "BASE_URL": (("prompt_harness", "endpoint"), "base_url"),
    "MODEL": (("prompt_harness", "endpoint"), "model"),
}


class ConfigError(ValueError):
    pass


def _merge(base: dict, extra: dict, where: str = "") -> dict:
    for key, value in extra.items():
        if key not in base:
            raise ConfigError(f"unknown config key {where}{key}")
        if isinstance(base[key], dict) and key != "levels":
            if not isinstance(value, dict):
                raise ConfigError(f"config key {where}{key} must be a table")
            _merge(base[key], value, f"{where}{key}.")
        else:
            base[key] = value
    return base


@dataclass
class RunConfig:
    data: dict

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "RunConfig":
        env = os.environ if env is None else env
        data = copy.deepcopy(DEFAULTS)
        path = path or env.get(ENV_PREFIX + "CONFIG")
        if path:
            try:
                with open(path, "rb") as fh:
                    _merge(data, tomllib.load(fh))
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(f"bad TOML in {path}: {exc}") from exc
        for name, (sections, key) in ENV_KEYS.items():
            if ENV_PREFIX + name in env:
                node = data
                for s in sections:
                    node = node[s]
                node[key] = env[ENV_PREFIX + name]
        return cls(data)

    def override(self, section: str, **values) -> None:
        """Apply command-line flags; ``None`` means the flag was not given."""
        for key, value in values.items():
            if value is not None:
                node = self.data
                parts = section.split(".")
                for p in parts:
                    node = node[p]
                node[key] = value

    def costs(self) -> CostConfig:
        try:
            return CostConfig.from_mapping(self.data["edit_extraction"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"edit_extraction: {exc}") from exc

    def prompt(self) -> PromptConfig:
        p = self.data["prompt_harness"]
        return PromptConfig(
            instruction=p["instruction"],
            exemplars=tuple(tuple(x) for x in p["exemplars"]),
            n_shots=int(p["n_shots"]),
            delimiter_left=p["delimiter_left"],
            delimiter_right=p["delimiter_right"],
            temperature=float(p["temperature"]),
            max_tokens=int(p["max_tokens"]),
        )

    def endpoint(self) -> CompletionEndpoint:
        p = self.data["prompt_harness"]
        e = p["endpoint"]
        return CompletionEndpoint(
            base_url=e["base_url"],
            model=e["model"],
            api_key_env=e["api_key_env"],
            timeout=float(e["timeout"]),
            max_in_flight=int(p["max_in_flight"]),
            max_attempts=int(p["max_attempts"]),
            backoff_base=float(p["backoff_base"]),
        )

    @property
    def betas(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self.data["scoring"]["betas"])

    @property
    def mode(self) -> str:
        return self.data["scoring"]["mode"]

    @property
    def lexicon_path(self) -> str | None:
        return self.data["error_classification"]["lexicon"] or None

    @property
    def data_dir(self) -> str | None:
        return self.data["paths"]["data_dir"] or None

    @property
    def level_patterns(self) -> dict[str, str]:
        return dict(self.data["corpus_stats"]["levels"])
