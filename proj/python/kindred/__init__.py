"""Python bindings for the kindred protocol core."""

from ._kindred import (  # noqa: F401
    ValidationError,
    StateError,
    brute_force_cost,
    build_request,
    cf_sqrt,
    compare_request,
    derive_whistle_key,
    digits_to_seq,
    encrypt_payload,
    exact_marker_fp,
    expand_allele,
    mc_marker_fp,
    paternity_consistent,
    possible_children,
    run_flood,
    run_handshake_demo,
    seq_to_digits,
    try_decrypt,
)

__all__ = [
    "ValidationError",
    "StateError",
    "brute_force_cost",
    "build_request",
    "cf_sqrt",
    "compare_request",
    "derive_whistle_key",
    "digits_to_seq",
    "encrypt_payload",
    "exact_marker_fp",
    "expand_allele",
    "mc_marker_fp",
    "paternity_consistent",
    "possible_children",
    "run_flood",
    "run_handshake_demo",
    "seq_to_digits",
    "try_decrypt",
]
