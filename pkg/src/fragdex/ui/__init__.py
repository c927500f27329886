"""UI module for terminal rendering."""

from .renderer import Renderer

__all__ = ["Renderer"]
