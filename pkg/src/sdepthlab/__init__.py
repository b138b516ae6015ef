"""sdepthlab: exact depth / Stanley depth / Hilbert depth laboratory
for quotients I/J of squarefree monomial ideals at desk scale (n <= 16,
exact search up to roughly n = 12)."""

from .monomials import (
    AmbientMismatchError,
    EmptyQuotientError,
    Ideal,
    InputError,
    Monomial,
    QuotientPair,
    SUPPORTED_CHARS,
    colon_pair,
    form_quotient,
    ideal_sum,
    intersect,
    minimalize,
    parse_monomial,
)
from .poset import PosetSnapshot, StrataReport, enumerate_poset, strata
from .depth import DepthResult, KoszulDegreeReport, depth, koszul_component
from .reisner import reisner_depth_oracle
from .sdepth import (
    Interval,
    Partition,
    SdepthResult,
    export_stanley_decomposition,
    sdepth,
    sdepth_decide,
    verify_partition,
)
from .hilbert import HdepthResult, HilbertSeries, hdepth1, herzog_question, hilbert_series
from .engines import EngineCache
from .verdicts import (
    AuditReport,
    Verdict,
    bounds_report,
    consistency_audit,
    inconsistencies,
    stanley_observation,
)
from .surgery import (
    DriverFailure,
    HMap,
    Path,
    PathSearch,
    SurgeryError,
    SurgeryOutcome,
    build_h,
    build_reduced_pair,
    enforce_star,
    find_paths,
    ml1_candidate_bs,
    ml1_driver,
    normalize_partition,
    rotate,
    swap_into_generator,
    verify_outcome,
)
from .io import ParseError, load_pair, parse_input, serialize_pair
from .corpus import CorpusReport, run_corpus
from .fuzz import FuzzConfig, FuzzReport, run_fuzz

__all__ = [
    "AuditReport",
    "CorpusReport",
    "DriverFailure",
    "EngineCache",
    "FuzzConfig",
    "FuzzReport",
    "HMap",
    "ParseError",
    "Path",
    "PathSearch",
    "SurgeryError",
    "SurgeryOutcome",
    "Verdict",
    "bounds_report",
    "build_h",
    "build_reduced_pair",
    "consistency_audit",
    "enforce_star",
    "find_paths",
    "inconsistencies",
    "load_pair",
    "ml1_candidate_bs",
    "ml1_driver",
    "normalize_partition",
    "parse_input",
    "rotate",
    "run_corpus",
    "run_fuzz",
    "serialize_pair",
    "stanley_observation",
    "swap_into_generator",
    "verify_outcome",
    "AmbientMismatchError",
    "DepthResult",
    "EmptyQuotientError",
    "HdepthResult",
    "HilbertSeries",
    "Ideal",
    "InputError",
    "Interval",
    "KoszulDegreeReport",
    "Monomial",
    "Partition",
    "PosetSnapshot",
    "QuotientPair",
    "SdepthResult",
    "StrataReport",
    "SUPPORTED_CHARS",
    "colon_pair",
    "depth",
    "enumerate_poset",
    "export_stanley_decomposition",
    "form_quotient",
    "hdepth1",
    "herzog_question",
    "hilbert_series",
    "ideal_sum",
    "intersect",
    "koszul_component",
    "minimalize",
    "parse_monomial",
    "reisner_depth_oracle",
    "sdepth",
    "sdepth_decide",
    "strata",
    "verify_partition",
]
