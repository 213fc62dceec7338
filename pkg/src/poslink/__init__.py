"""poslink: link invariants and positivity obstructions from diagrams.

Compute Jones and Conway polynomials, integral Khovanov homology, and the
diagram-independent inequalities that every positive link with second
Jones coefficient of absolute value 0, 1, or 2 must satisfy.
"""

from .diagram import (
    BraidWord,
    CrossingSigns,
    Diagram,
    a_state_circles,
    all_a_state,
    all_b_state,
    b_state_circles,
    braid_closure,
    components,
    crossing_signs,
    is_positive,
    parse_braid,
    parse_pd,
    reduce_nugatory,
    state_circles,
    writhe,
)
from .laurent import (
    JonesSummary,
    LaurentPoly,
    format_poly,
    jones_summary,
    jones_V,
    kauffman_bracket,
    lickorish_bounds,
    parse_poly,
    unnormalized_to_v,
    v_to_unnormalized,
)
from .conway import conway, lead_coeff_conway
from .khovanov import (
    BigradedGroups,
    ChainSlice,
    GradingSummary,
    chain_slices,
    euler_characteristic,
    extreme_gradings,
    format_kh_polynomial,
    kh1_rank,
    khovanov_homology,
    parse_kh_polynomial,
)
from .obstruction import (
    ObstructionInput,
    ObstructionReport,
    Strength,
    TestKind,
    Verdict,
    gamma,
    jones_test,
    khovanov_test,
    khovanov_test_from_kh1,
    strength_comparison,
)
from .batch import (
    BatchResult,
    Caps,
    LinkRecord,
    RecordResult,
    cmd_compute,
    cmd_survey,
    cmd_test,
    ingest_csv,
    positive_braid_words,
    survey_corpus,
)

__all__ = [
    "BatchResult",
    "BigradedGroups",
    "BraidWord",
    "Caps",
    "ChainSlice",
    "CrossingSigns",
    "Diagram",
    "GradingSummary",
    "JonesSummary",
    "LaurentPoly",
    "LinkRecord",
    "ObstructionInput",
    "ObstructionReport",
    "RecordResult",
    "Strength",
    "TestKind",
    "Verdict",
    "a_state_circles",
    "all_a_state",
    "all_b_state",
    "b_state_circles",
    "braid_closure",
    "chain_slices",
    "cmd_compute",
    "cmd_survey",
    "cmd_test",
    "components",
    "conway",
    "crossing_signs",
    "euler_characteristic",
    "extreme_gradings",
    "format_kh_polynomial",
    "format_poly",
    "gamma",
    "ingest_csv",
    "is_positive",
    "jones_summary",
    "jones_test",
    "jones_V",
    "kauffman_bracket",
    "kh1_rank",
    "khovanov_homology",
    "khovanov_test",
    "khovanov_test_from_kh1",
    "lead_coeff_conway",
    "lickorish_bounds",
    "parse_braid",
    "parse_kh_polynomial",
    "parse_pd",
    "parse_poly",
    "positive_braid_words",
    "reduce_nugatory",
    "state_circles",
    "strength_comparison",
    "survey_corpus",
    "unnormalized_to_v",
    "v_to_unnormalized",
    "writhe",
]

__version__ = "0.1.0"
