"""Exact computations with C*-actions on toric varieties and homogeneous spaces."""

from __future__ import annotations

from . import atiyah, cone, drum, exactlat, fan, homog, rootsys, tflow
from .atiyah import AtiyahType, build_suite, verify_bordism, verify_bundle_structure, \
    verify_triangulations
from .cone import Cone
from .drum import LatticePolytope, cayley_sum, drum_bandwidth_check, drum_index
from .errors import *  # noqa: F401,F403
from .fan import Fan, TDivisor, refines
from .homog import HomogeneousSpace, action_report, adjoint_report, bw3_certify
from .rootsys import DynkinType, build_root_system, short_grading_nodes
from .tflow import bb_report

__version__ = "0.1.0"
