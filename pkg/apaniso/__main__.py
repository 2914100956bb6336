"""
@file
@brief Entry point, ``python -m apaniso``.
"""
import sys
from .cli import main


if __name__ == "__main__":
    sys.exit(main())
