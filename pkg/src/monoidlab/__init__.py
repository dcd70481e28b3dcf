"""Finite monoids, their semidirect, wreath and Schützenberger products, and
brute-force checks of regularity criteria for the latter."""

from .catalog import enumerate_monoids, named
from .monoid import (
    MAX_ORACLE_ORDER,
    Elem,
    FiniteMonoid,
    idempotents,
    inverse_set,
    is_regular,
    mul,
    validate_table,
)
from .products import (
    direct_product,
    fn_power,
    fn_shift,
    semidirect_product,
    validate_action,
    wreath_product,
)
from .schutz import (
    PairSet,
    SchutzProduct,
    VariantProduct,
    schutz_monoid,
    schutz_mul,
    variant_monoid,
    variant_mul,
)
from .theorems import compare_regularity, thm1_verdict, thm2_verdict

__all__ = [
    "MAX_ORACLE_ORDER",
    "Elem",
    "FiniteMonoid",
    "PairSet",
    "SchutzProduct",
    "VariantProduct",
    "compare_regularity",
    "direct_product",
    "enumerate_monoids",
    "fn_power",
    "fn_shift",
    "idempotents",
    "inverse_set",
    "is_regular",
    "mul",
    "named",
    "schutz_monoid",
    "schutz_mul",
    "semidirect_product",
    "thm1_verdict",
    "thm2_verdict",
    "validate_action",
    "validate_table",
    "variant_monoid",
    "variant_mul",
    "wreath_product",
]
