"""Fitting sets, Hartley sets, radicals and injectors of small finite groups."""
from .catalog import build_catalog, get_group
from .classes import ALL, MEET, NIL, PGRP, POW, PPRIME, PROD, SOL, SOLPPRIME, TRIV, ClassExpr, parse_classexpr
from .errors import (ConsistencyError, FitsetError, HypothesisRefused, NotAGroupError, NotNormalError,
                     OrderBoundExceeded, ParseError, RefusedShape, SubgroupCapExceeded)
from .fitting_sets import (FittingSet, fitset_closure, set_intersection, set_product, set_radical, trace,
                           trivial_fitset, verify_fitting_set)
from .group import FiniteGroup, Subgroup, group_from_generators, group_from_table
from .hartley import HFunction, h_radical, hs, integrate, is_full, is_integrated, make_full_integrated
from .injectors import (InjectorReport, characterization_check, f_maximal_subgroups, hartley_injectors,
                        injectors_bruteforce, nilpotent_injectors)
from .lattice import SubgroupLattice, all_subgroups
from .perm import Permutation, parse_permutation
from .specparse import parse_fitset, parse_hfunction_inline, parse_hfunction_text
from .structure import fitting_subgroup, is_n_constrained, quotient

__version__ = "0.1.0"
