"""Cyclotomic constructions of skew Hadamard difference sets and Paley type PDS."""

from ._core import (
    DEFAULT_BUDGET,
    CandidateSet,
    CaseAParams,
    CaseBParams,
    CyclotomeError,
    CyclotomicScheme,
    FiniteField,
    __version__,
    build_field,
    build_scheme,
    class_number,
    construct_case_A,
    construct_case_B,
    davenport_hasse_holds,
    difference_histogram,
    digit_sum,
    is_index_two,
    is_prime,
    load_text,
    mult_order,
    random_transversal,
    search_case_A,
    search_case_B,
    union_of_classes,
    verify,
)

__all__ = [
    "DEFAULT_BUDGET",
    "CandidateSet",
    "CaseAParams",
    "CaseBParams",
    "CyclotomeError",
    "CyclotomicScheme",
    "FiniteField",
    "__version__",
    "build_field",
    "build_scheme",
    "class_number",
    "construct_case_A",
    "construct_case_B",
    "davenport_hasse_holds",
    "difference_histogram",
    "digit_sum",
    "is_index_two",
    "is_prime",
    "load_text",
    "mult_order",
    "random_transversal",
    "search_case_A",
    "search_case_B",
    "union_of_classes",
    "verify",
]
