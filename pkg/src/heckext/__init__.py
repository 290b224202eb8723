"""Exact verification workbench for mod-p Hecke modules, Ext groups and related finite structures."""

from .backend import NAME as BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
