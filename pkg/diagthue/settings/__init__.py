"""This package defines the application’s settings."""
import logging as _logging

VERSION = '1.0.0'

MIN_PRECISION = 32
"""Smallest working precision (in bits) accepted for ball arithmetic."""
DEFAULT_PRECISION = 64
"""Precision (in bits) at which certified computations start before escalating."""
DEFAULT_SEARCH_BOX = 1000
"""Default bound on max(|x|, |y|) for exhaustive solution searches."""

MAX_PRECISION = 4096
"""Precision (in bits) beyond which certified computations give up."""
DIGIT_BUDGET = 10 ** 6
"""Maximum number of decimal digits an exact power comparison may produce."""
WORKERS = 1
"""Default number of parallel chunks for solution enumeration."""

LOGGER: _logging.Logger = _logging.getLogger('DIAGTHUE')


def init(debug: bool, max_precision: int = 4096, digit_budget: int = 10 ** 6, workers: int = 1):
    """Initialize the settings.

    :param debug: Whether the application is in debug mode or not.
    :param max_precision: Maximum ball precision in bits. Must be ≥ 64.
    :param digit_budget: Maximum number of decimal digits for exact comparisons. Must be ≥ 1.
    :param workers: Default number of parallel enumeration chunks. Must be ≥ 1.
    :raise ValueError: If any of the numeric values is out of range.
    """
    global LOGGER, MAX_PRECISION, DIGIT_BUDGET, WORKERS

    if max_precision < 64:
        raise ValueError(f'max_precision must be ≥ 64, got {max_precision}')
    if digit_budget < 1:
        raise ValueError(f'digit_budget must be ≥ 1, got {digit_budget}')
    if workers < 1:
        raise ValueError(f'workers must be ≥ 1, got {workers}')
    MAX_PRECISION = max_precision
    DIGIT_BUDGET = digit_budget
    WORKERS = workers

    LOGGER = _logging.Logger('DIAGTHUE', level=_logging.DEBUG if debug else _logging.INFO)
    sh = _logging.StreamHandler()
    sh.setFormatter(_logging.Formatter('%(name)s:%(levelname)s:%(message)s'))
    LOGGER.addHandler(sh)
