"""
@file
@brief Shortcuts to *helpers*.
"""

from .cache import ObjectCache
from .config import ConfigError, read_config, make_config, check_config, parse_value
from .parameters import format_value, format_parameters, format_function_call
