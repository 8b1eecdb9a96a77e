"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from .__version__ import VERSION
from .clique import *
from .clique_modulator import *
from .clock import *
from .cluster import *
from .cograph import *
from .config import *
from .configurations import *
from .decompositions import *
from .dispatch import *
from .diversity import *
from .errors import *
from .generators import *
from .graph import *
from .integer_program import *
from .integrity import *
from .limits import *
from .locals import *
from .matching import *
from .modular import *
from .modulators import *
from .neighbourhood import *
from .oracle import *
from .parameters import *
from .partitions import *
from .report import *
from .three_pvc import *
from .treewidth import *
