# rankform/helpers/__init__.py
from .decorators import exit_on_error
from .utils import (
    check_damping,
    format_value,
    write_csv,
    read_bytes
)

__all__ = [
    'exit_on_error',
    'check_damping',
    'format_value',
    'write_csv',
    'read_bytes'
]
