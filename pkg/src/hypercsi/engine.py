"""
Houses the startup logic for HyperCSI: locating and reading config, writing a
default config, and configuring log sinks.
"""

import os
import sys
from typing import Any

from loguru import logger
from omegaconf import DictConfig, OmegaConf

conf_dir_path: str = "./config/"
conf_file_path: str = "conf.yaml"
conf_path: str = conf_dir_path + conf_file_path

CONFIG_ENV_VAR = "HYPERCSI_CONFIG"


class Engine:
    """
    A high-level manager that coordinates config manipulation and log setup.
    """

    @staticmethod
    def get_default_conf() -> dict[str, Any]:
        """
        The built-in configuration. Values found in conf.yaml are merged on top.

        Returns: A nested dict of default config values
        """
        return {
            "logging": {"level": "INFO", "diagnostics_file": "diagnostics.jsonl"},
            "io": {
                "float_format": "%.17g",
                "data_file": "data.hsd",
                "spectra_file": "spectra.csv",
                "abundance_file": "abundances.csv",
                "scene_file": "scene.json",
                "metrics_file": "metrics.json",
            },
            "geometry": {"rank_tol": 1.0e-10},
            "unmix": {"eta": 0.9, "threads": 1, "denominator_tol": 1.0e-12, "enclosure_tol": 1.0e-9},
            "synth": {
                "pool_factor": 200,
                "min_acceptance": 1.0e-4,
                "spectra_knots": 8,
                "spectra_floor": 0.01,
                "block_size": 20,
                "max_spectra_attempts": 10,
            },
            "mc": {"record_timing": True},
        }

    @classmethod
    def resolve_conf_path(cls) -> str:
        """
        The config file location. HYPERCSI_CONFIG takes precedence over ./config/conf.yaml.
        """
        return os.environ.get(CONFIG_ENV_VAR, conf_path)

    @classmethod
    def load(cls) -> DictConfig:
        """
        Build the effective config: defaults, with the config file merged on top when it exists.

        Returns: The merged OmegaConf config
        """
        base = OmegaConf.create(cls.get_default_conf())
        path = cls.resolve_conf_path()

        if os.path.exists(path):
            logger.debug(f"[Engine] Loading config from {path}")
            return OmegaConf.merge(base, OmegaConf.load(path))

        logger.debug(f"[Engine] No config at {path}, using defaults")
        return base

    @classmethod
    def write_conf(cls, path: str | None = None) -> None:
        """
        Write the default config to disk.

        Args:
            path: Destination file. Defaults to the resolved config path.

        Returns: None
        """
        path = path or cls.resolve_conf_path()
        logger.info(f"[Engine] Writing default config to {path}...")

        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        OmegaConf.save(OmegaConf.create(cls.get_default_conf()), path)


def load_config() -> DictConfig:
    """
    Load the effective config. Called lazily by hypercsi.cache.get_config.
    """
    return Engine.load()


def configure_logging(level: str | None = None) -> None:
    """
    Replace loguru's default sink with a stderr sink at the configured level.

    Args:
        level: Explicit level name. Falls back to logging.level in config.

    Returns: None
    """
    from hypercsi.cache import config_value

    logger.remove()
    logger.add(sys.stderr, level=str(config_value("logging.level", level)).upper())
