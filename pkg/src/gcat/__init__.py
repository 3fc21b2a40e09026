"""Finite categories with group actions: fixed points, orbit diagrams,
nerves and subdivision, pushouts along Dwyer maps, and integer homology."""

from .errors import BudgetExceeded, LemmaFailure, ValidationError
from .fincat import FinCat, FinFunctor, find_isomorphism, validate_category, validate_functor
from .group import FinGroup, cyclic, orbit_category, subgroups, symmetric
from .gaction import GCategory, GFunctor, OGDiagram, fixed_category, lambda_, phi, verify_adjunction
from .sset import TruncSSet, categorify, generating_cell, nerve, sd, standard_complex
from .colimits import dwyer_witness, pushout_along_dwyer, pushout_oracle, sequential_colimit
from .homology import homology, smith_normal_form

__version__ = "0.1.0"
