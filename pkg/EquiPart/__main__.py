"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import sys

from .cli import main

sys.exit(main())
