import math
import zlib
import numpy as np

def wrap_angle(delta):
    """Maps an angle (or array of angles) to the interval (-pi, pi]."""

    wrapped = np.pi - np.mod(np.pi - np.asarray(delta, dtype=float), 2 * np.pi)

    if np.ndim(wrapped) == 0:
        return float(wrapped)

    return wrapped

def format_float(value: float) -> str:
    """Formats a float with 17 significant digits, enough to round-trip it exactly."""

    return f'{value:.17g}'

def parse_float(value: str) -> float:
    return float(value.strip())

def digest(text: str) -> str:
    """Short, stable hash of a text (CRC-32 in hex)."""

    return f'{zlib.crc32(text.encode("utf-8")):08x}'

def kA_per_s_to_pu_per_s(rate: float, current_base: float) -> float:
    return rate * 1000.0 / current_base

def pu_per_s_to_kA_per_s(rate: float, current_base: float) -> float:
    return rate * current_base / 1000.0

def hz_to_rad_per_s(value: float) -> float:
    return 2 * math.pi * value

def rad_per_s_to_hz(value: float) -> float:
    return value / (2 * math.pi)
