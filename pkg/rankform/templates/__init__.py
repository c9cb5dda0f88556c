# rankform/templates/__init__.py
from .messages import Messages

__all__ = ['Messages']
