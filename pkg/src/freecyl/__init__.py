"""Images of boundary cylinders and double cylinders under free group automorphisms."""
from .words import (
    Alphabet,
    AlphabetMismatch,
    Letter,
    ReducedWord,
    WordError,
    anti_prefix,
    common_prefix,
    extend,
    invert,
    is_prefix,
    reduce_concat,
    trim,
)
from .automorphism import (
    Automorphism,
    AutomorphismError,
    BudgetExceeded,
    CancellationBounds,
    apply,
    apply_inverse,
    certified_cancellation,
    compose,
    empirical_cancellation,
    load_automorphism,
    parse_automorphism,
    size,
    tight_cancellation,
    validate,
)
from .multicyl import MultiCylinder, cylinders_equal, minimize, u_star
from .image import ImageConstants, dual_map, dual_map_set, image_adaptive, image_formula, plan
from .double import RectanglePair, RectangleUnion, double_image, double_image_closed, split_unit
from .oracle import brute_minimize, verify_double_image, verify_image

__version__ = "0.1.0"
