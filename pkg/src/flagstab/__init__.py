"""Exact Chern-character and Donaldson-Futaki computations for flag bundles."""
from .algebra import GradedPoly, GradedRing, chern_ring, det, from_chern_basis, render, root_ring, to_chern_basis, trunc_exp
from .chern import (
    CheckRecord,
    ChernData,
    ch_schur_giambelli,
    ch_schur_roots,
    ch_sym,
    ch_sym_roots,
    conjecture_check,
    extract_G,
    interpolate_g2,
    predicted_G,
    resolve_a2_variant,
)
from .combinat import appendix_f, appendix_g, appendix_general, ch2_sym_from_sums
from .errors import ConfigurationError, DomainError, FlagstabError, IdentityViolation
from .futaki import (
    DFReport,
    TestConfig,
    closed_form_C,
    closed_form_D,
    df_invariant,
    futaki_curve,
    futaki_twisted,
    positivity_analysis,
    weight_check,
)
from .geometry import BaseModel, CurveModel, hilbert_curve, hilbert_general, hilbert_product, parse_model, product_classes
from .partitions import FlagType, Partition, bbw_translate, conjugate, lr_coefficients, lr_decompose, schur_rank

__version__ = "0.1.0"
