"""entax: LOCC convertibility, catalysis and entanglement rates for pure states."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, DegenerateStateError, EntaxError, NormalizationError, NotFound
from .schmidt import (
    EPR,
    PRODUCT,
    SchmidtVector,
    entropy,
    min_entropy,
    rank_entropy,
    schmidt_from_amplitudes,
    tensor,
    uniform,
)
from .majorization import (
    ConvertibilityVerdict,
    convertible_single_copy,
    majorizes,
    sample_incomparable_pair,
)
from .catalysis import Catalyst, convertible_with_catalyst, search_catalyst
from .asymptotic import (
    Direction,
    RateFrontier,
    RatePoint,
    TypeClassSpectrum,
    dilution_feasible,
    distillation_feasible,
    estimate_E,
    product_spectrum,
    rate_frontier,
    smoothed_truncate,
    spectra_majorizes,
)
from .multipartite import MultipartiteState, cut_obstruction, cut_schmidt, ghz_counterexample
from .axioms import AxiomReport, HarnessConfig, check_entanglement_function, check_internal_state, run_axiom_suite
