# rankform/helpers/utils.py
import csv
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO

from loguru import logger

from ..config.config import Config
from ..errors import COutOfRange


def check_damping(c: float) -> float:
    """Return c as a float, raising COutOfRange unless 0 < c < 1."""
    try:
        value = float(c)
    except (TypeError, ValueError):
        raise COutOfRange(c)
    if not math.isfinite(value) or not 0.0 < value < 1.0:
        raise COutOfRange(value)
    return value


def format_value(value: float, digits: Optional[int] = None) -> str:
    """
    Format a real for CSV output.

    Args:
        value (float): Number to format.
        digits (int, optional): Significant digits, defaults to Config.OUTPUT_DIGITS.

    Returns:
        str: Locale-independent representation with a dot decimal separator.
    """
    digits = digits or Config.OUTPUT_DIGITS
    return f"{float(value):.{digits}g}"


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write rows as LF-terminated CSV, formatting floats with format_value"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) if isinstance(v, float) else v for v in row])


def read_bytes(path: str) -> bytes:
    """Read a whole input file; OSError propagates to the command layer"""
    data = Path(path).read_bytes()
    logger.debug(f"Read {len(data)} bytes from {path}")
    return data
