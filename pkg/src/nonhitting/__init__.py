"""Intersection distributions and non-hitting indices of point sets in PG(2, q),
with the polynomial and dual Kakeya views of the same counts."""

from .errors import (BudgetExceeded, CapExceeded, DegreeOutOfRange, DivisionByZero,
                     EvenCharacteristic, FamilyInapplicable, IncompleteData,
                     NoSuchConfiguration, NonhittingError, NonPrime, NotInternalNucleus,
                     NotMaximalArc, NotPrimePower, OddCharacteristic, SizeMismatch)
from .gf import FieldCtx, factor_prime_power, field_new, gf, is_prime, prime_powers
from .plane import (Distribution, Plane, PointSet, get_plane, intersection_distribution,
                    internal_nuclei, nuclei)
from .polyset import (FieldPoly, coordinatize, degree_bounds, graph_set,
                      intersection_distribution_poly, inverse_exponent,
                      multiplicity_distribution, multiplicity_matrix, profile,
                      value_set_sizes)
from .formulas import (FAMILY_TAGS, PowerFamily, families_for, predict_intersection,
                       predict_multiplicity, verify_family)
from .kakeya import (dk_distribution_direct, dk_distribution_transfer, dual_kakeya,
                     kakeya_report, kakeya_size, monomial_census, predict_dk, transfer)
from .extremal import (check_bounds, construct_example, expected_distribution,
                       pro_arc_analysis, spectrum)

__version__ = "0.1.0"
