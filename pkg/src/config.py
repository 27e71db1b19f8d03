# src/config.py
from dataclasses import dataclass, asdict, fields
import json
import logging
from pathlib import Path
from typing import Optional

@dataclass
class AppConfig:
    KAPPA1: float = 0.01
    KAPPA2: float = 0.83
    NMAX_EXTRA: float = 0.99
    ITERATION_CAP: int = 1000
    TRIALS: int = 500
    SEED: int = 7
    WORKERS: int = 1
    LOG_LEVEL: int = logging.WARNING
    LOG_DIR: Optional[Path] = Path("logs")

    @classmethod
    def load_from_file(cls, config_path: Path = Path("itpsearch.json")) -> 'AppConfig':
        """Load configuration from JSON file"""
        try:
            if config_path.exists():
                with open(config_path, encoding='utf-8') as f:
                    config_data = json.load(f)
                    known = {field.name for field in fields(cls)}
                    unknown = set(config_data) - known
                    if unknown:
                        raise TypeError(f"unknown keys {sorted(unknown)}")
                    if config_data.get('LOG_DIR') is not None:
                        config_data['LOG_DIR'] = Path(config_data['LOG_DIR'])
                    return cls(**config_data)
        except (json.JSONDecodeError, TypeError) as e:
            logging.error(f"Error loading config: {e}")
        return cls()

    def save_to_file(self, config_path: Path = Path("itpsearch.json")) -> None:
        """Save configuration to JSON file"""
        try:
            config_path.parent.mkdir(parents=True, exist_ok=True)
            with open(config_path, 'w', encoding='utf-8') as f:
                config_dict = asdict(self)
                if config_dict['LOG_DIR'] is not None:
                    config_dict['LOG_DIR'] = str(config_dict['LOG_DIR'])
                json.dump(config_dict, f, indent=4)
        except Exception as e:
            logging.error(f"Error saving config: {e}")
            raise

    def update_log_level(self, cli_log_level: Optional[int]) -> None:
        """Update log level from command line argument"""
        if cli_log_level is not None:
            self.LOG_LEVEL = cli_log_level

    def search_config(self, strategy: str = "itp", variant: str = "relaxed", **overrides):
        """Build a SearchConfig from the configured defaults"""
        from .core.search import SearchConfig

        params = dict(
            strategy=strategy,
            kappa1=self.KAPPA1,
            kappa2=self.KAPPA2,
            variant=variant,
            n_max_extra=self.NMAX_EXTRA,
            cap=self.ITERATION_CAP,
        )
        params.update(overrides)
        return SearchConfig(**params)
