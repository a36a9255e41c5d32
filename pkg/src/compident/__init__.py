"""Exact generic local identifiability of linear compartmental models."""

from .families import (Family, build, catenary, closed_form, cycle, cycle_coeff_map_leaks,
                       cycle_coeff_map_noleak, cycle_plus_edges, fin, fin_coeff_map,
                       mammillary, verify_closed_form, wing, wing_coeff_map)
from .ident import (HypothesisError, Verdict, analyze, decide, exact_rank, generic_rank,
                    jacobian)
from .ioeq import (CoefficientMap, IOEquation, SPoly, char_matrix, coefficient_map,
                   det_spoly, io_equation, io_equations)
from .model import (ModelError, ModelSpec, ParameterSpace, VarId, compartmental_matrix,
                    is_inductively_strongly_connected, is_strongly_connected, load_model,
                    loads_model, validate)
from .poly import (MultiPoly, PolyRing, StructuralError, elementary_symmetric,
                   vandermonde_check)

__version__ = "0.1.0"
