"""Exact models of store and probabilistic separation logic."""

from .errors import BudgetExceeded, InputError, ParseError
from .exact import EMPTY, UNIT, IntervalSet, equal_cells, make_interval_set
from .groups import (FinPerm, PwAffine, act_on_measured_partition, act_on_nom_store,
                     act_on_nom_subst, act_on_partition, act_on_random_subst, act_on_step_fn,
                     correspondence_witness, fixes_partition, homogeneity_auto)
from .monoid import (INSTANCES, LawReport, ResourceMonoid, buggy_partition_rm, check_laws,
                     fin_prob_rm, partition_rm, store_rm)
from .partitions import (MeasuredPartition, MPartition, coarsen, coarsenings, common_refinement,
                         dicom, dorder, is_coarser, parteq)
from .prob import (Decoder, FinProbSpace, StepFn, make_decoder, pull_subst, pullback,
                   sat_prob_m1, sat_prob_m2, translate_prob_m1_to_m2)
from .props import PMF, And, Dist, Or, PointsTo, Star, Top
from .store import enc_shape, sat_store_m1, sat_store_m2, translate_store_m1_to_m2
from .syntax import parse_prop, print_prop

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "InputError", "ParseError",
    "EMPTY", "UNIT", "IntervalSet", "equal_cells", "make_interval_set",
    "FinPerm", "PwAffine", "act_on_measured_partition", "act_on_nom_store", "act_on_nom_subst",
    "act_on_partition", "act_on_random_subst", "act_on_step_fn", "correspondence_witness",
    "fixes_partition", "homogeneity_auto",
    "INSTANCES", "LawReport", "ResourceMonoid", "buggy_partition_rm", "check_laws",
    "fin_prob_rm", "partition_rm", "store_rm",
    "MeasuredPartition", "MPartition", "coarsen", "coarsenings", "common_refinement",
    "dicom", "dorder", "is_coarser", "parteq",
    "Decoder", "FinProbSpace", "StepFn", "make_decoder", "pull_subst", "pullback",
    "sat_prob_m1", "sat_prob_m2", "translate_prob_m1_to_m2",
    "PMF", "And", "Dist", "Or", "PointsTo", "Star", "Top",
    "enc_shape", "sat_store_m1", "sat_store_m2", "translate_store_m1_to_m2",
    "parse_prop", "print_prop",
]
