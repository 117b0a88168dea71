"""Ultrafilter-limit machinery on finite carriers and its spectral offshoots."""

from .core import (
    BoolAlgebra,
    Carrier,
    DomainError,
    FamilyTransforms,
    FipResult,
    PrincipalUltrafilter,
    SetFamily,
    UltratopError,
    atoms,
    extend_ultrafilter,
    family_transforms,
    fip_check,
    is_stable,
    limit_set,
    restrict_ultrafilter,
    stable_closure,
)
from .topology import (
    FinSpace,
    NotT0Error,
    Poset,
    SpectralReport,
    TransportReport,
    from_subbasis,
    generic_closure,
    hasse_dot,
    is_continuous,
    is_spectral,
    patch_topology,
    poset_to_space,
    space_to_poset,
    specialization_order,
    ultra_topology,
    ultra_transport,
)
from .rings import (
    FiniteRing,
    Ideal,
    IntegralClosureReport,
    IntegralityCertificate,
    RingEmbedding,
    RingHom,
    Subring,
    a_ultra,
    all_ideals,
    gf,
    integrality_certificate,
    intermediate_rings,
    is_integral,
    is_integrally_closed_in,
    overring_family,
    overring_space,
    prime_ideals,
    principal_ideal,
    principal_open_family,
    product,
    spec_functor,
    spec_space,
    subring_closure,
    ultrafilter_prime,
    vanishing_set,
    zmod,
)
from .specz import (
    ZConstructible,
    ZFipResult,
    ZPoint,
    ZSubsetDescriptor,
    d_of,
    is_prime,
    is_ultra_closed,
    limit_points,
    patch_closure,
    prime_factors,
    v_of,
    z_fip_check,
    zariski_closure,
)

__version__ = "0.1.0"
