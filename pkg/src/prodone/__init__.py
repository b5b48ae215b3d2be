"""Exact engine for monoids of product-one sequences over subsets of groups."""

from .certificates import (
    CompleteUpToLength,
    Exact,
    ExactWithinBound,
    LowerBound,
    TaggedValue,
    WitnessFamily,
)
from .groups import (
    Element,
    ExponentOverflow,
    Group,
    GroupFormatError,
    cyclic,
    elementary_two,
    element_text,
    finite_dihedral,
    from_cayley,
    infinite_dihedral,
    integers,
    parse_element,
    parse_group,
)
from .products import (
    BudgetExceeded,
    is_product_one,
    is_product_one_free,
    product_set,
    product_set_dp,
    product_set_perm,
)
from .sequences import (
    GroundSet,
    MULT_MAX,
    Sequence,
    SequenceError,
    empty,
    from_pairs,
    ground,
    parse_sequence,
    parse_subset,
    sequence_from_json,
    subsequences,
)

__version__ = "0.1.0"
