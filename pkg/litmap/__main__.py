"""This module runs the litmap command line interface."""

import sys

from .cli import main

sys.exit(main())
