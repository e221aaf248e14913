from .engine import Engine, configure_logging, load_config

__all__ = ["Engine", "configure_logging", "load_config"]
