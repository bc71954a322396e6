"""Parliaments of polytopes for toric vector bundles given by Klyachko filtrations."""

from .bundlefile import dump_bundle, golden_bundle, load_bundle, parse_bundle
from .cohomology import LaurentPolynomial, cohomology_at, euler_characteristic
from .errors import (ConsistencyError, IncompatibleFiltrationsError, InputError,
                     InvalidFanError, ToricError)
from .fan import Fan, hirzebruch, projective_space, validate, walls
from .klyachko import Filtration, ToricBundle, cone_characters, make_filtration
from .parliament import global_sections, parliament, polytope, splittings
from .positivity import (is_ample_nef, is_globally_generated, jet_rank_oracle,
                         positivity_report, restrict_to_curve, separates_k_jets)

__all__ = [
    "ConsistencyError", "Fan", "Filtration", "IncompatibleFiltrationsError", "InputError",
    "InvalidFanError", "LaurentPolynomial", "ToricBundle", "ToricError", "cohomology_at",
    "cone_characters", "dump_bundle", "euler_characteristic", "global_sections", "golden_bundle",
    "hirzebruch", "is_ample_nef", "is_globally_generated", "jet_rank_oracle", "load_bundle",
    "make_filtration", "parliament", "parse_bundle", "polytope", "positivity_report",
    "projective_space", "restrict_to_curve", "separates_k_jets", "splittings", "validate", "walls",
]
