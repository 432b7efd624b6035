"""Exact special Lagrangian, deformation, cohomology and mirror computations
on invariant structures of compact solvmanifolds and nilmanifolds."""

__version__ = "0.1.0"

from .model import BUILTINS, ModelManifold, builtin, load_model_file  # noqa: E402

__all__ = ["BUILTINS", "ModelManifold", "builtin", "load_model_file", "__version__"]
