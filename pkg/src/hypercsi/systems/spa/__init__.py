from hypercsi.systems.spa.spa import select_purest

__all__ = ["select_purest"]
