from .base import LabError

__all__ = ["LabError"]
