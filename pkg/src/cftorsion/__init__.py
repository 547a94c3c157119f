"""Torsion on hyperelliptic Jacobians via continued fractions of sqrt(f) over Q."""
from __future__ import annotations

from .arith import Poly, discriminant, is_squarefree, resultant
from .catalog import CurveRecord, SearchConfig, read_catalog, record_curve, run_search
from .errors import CFTorsionError
from .families import FLYNN, G_FAMILY, flynn, g_u
from .hseq import h_property_check, h_sequence, verify_first_difference
from .igusa import Family, distinguish_families, igusa, igusa_ABCD
from .laurent import CFExpansion, cf_expand, verify_period_form
from .partitions import PartitionSpec, enumerate_partitions, m_range
from .symbolic import EliminationTrace, VerdictKind, instantiate, solve_partition
from .torsion import degree_constraint_check, degree_vector, torsion_order

__version__ = "0.1.0"

__all__ = [
    "Poly", "discriminant", "is_squarefree", "resultant",
    "CurveRecord", "SearchConfig", "read_catalog", "record_curve", "run_search",
    "CFTorsionError", "FLYNN", "G_FAMILY", "flynn", "g_u",
    "h_property_check", "h_sequence", "verify_first_difference",
    "Family", "distinguish_families", "igusa", "igusa_ABCD",
    "CFExpansion", "cf_expand", "verify_period_form",
    "PartitionSpec", "enumerate_partitions", "m_range",
    "EliminationTrace", "VerdictKind", "instantiate", "solve_partition",
    "degree_constraint_check", "degree_vector", "torsion_order",
]
