"""Finite-precision computer algebra for the Iwasawa algebra Zp[[T]].

The toolkit works modulo (p^N, T^M) throughout: series arithmetic and
Weierstrass preparation (:mod:`iwalab.series`), elementary modules with their
invariants and comparison criteria (:mod:`iwalab.modules`), character
eigenspaces and twists (:mod:`iwalab.characters`), perfect-pairing linear
algebra and Euler-characteristic exponents (:mod:`iwalab.pairings`), and the
functional-equation checker for synthetic Selmer data (:mod:`iwalab.checker`).
"""

from .series import (
    DistinguishedPoly,
    PowerSeries,
    Precision,
    UnitSeries,
    format_poly,
    format_series,
    invert_unit,
    iota,
    iota_poly,
    omega,
    parse_distinguished,
    parse_series,
    poly_mul,
    poly_pow,
    series_mul,
    weierstrass_degree,
    weierstrass_prepare,
)
from .modules import (
    ComparisonVerdict,
    ElementaryModule,
    IwasawaInvariants,
    SizeExponent,
    coinvariant_size,
    compare_modules,
    hom_corank,
    hom_corank_oracle,
    invariants,
    iota_module,
    pseudo_isomorphic,
)
from .characters import (
    Character,
    GModule,
    IdempotentElement,
    contragredient,
    eigenspace,
    idempotent,
    iota_gmodule,
    make_character,
    teichmuller,
    twist,
    twist_identity_check,
)
from .pairings import (
    DeltaValue,
    FinitePairing,
    LocalDatum,
    Subgroup,
    delta,
    exact_annihilator,
    global_euler_exponent,
    local_ratio_away,
    local_ratio_ord,
    local_ratio_ss,
    self_annihilator_check,
    signed_corank,
)
from .checker import (
    FEVerdict,
    PrimeDatum,
    SelmerDatum,
    TorsionCaps,
    functional_equation_check,
    hypothesis_check,
    load_datum,
    poitou_tate_bound,
    symmetrize_slots,
    validate_datum,
    vanishing_equivalence,
)
from . import errors

__version__ = "0.1.0"
