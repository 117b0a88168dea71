"""Finite topological spaces, specialization posets, and patch refinements.

Spaces are stored by their closed sets, as bitmasks over a carrier.  A space
built with the plain constructor is trusted to satisfy the topology axioms
(internal constructions are correct by construction); ``FinSpace.from_closed``
validates untrusted input and is what the JSON loaders use.

The bridge to order theory is the usual finite one: closed sets of a finite
space are the downward closed sets of its specialization order, the closure
of a point is its principal down-set, and the round trip between finite T0
spaces and finite posets is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .core import (
    Carrier,
    DomainError,
    SetFamily,
    UltratopError,
    atoms,
)


class NotT0Error(DomainError):
    """Raised when an operation needs a T0 space; carries an offending pair."""

    def __init__(self, pair: tuple[str, str]):
        super().__init__(
            f"space is not T0: {pair[0]!r} and {pair[1]!r} are topologically"
            " indistinguishable"
        )
        self.pair = pair


@dataclass(frozen=True)
class FinSpace:
    """A finite topological space given by the bitmasks of its closed sets."""

    carrier: Carrier
    closed_masks: frozenset[int]

    def __post_init__(self) -> None:
        full = self.carrier.full_mask
        for m in self.closed_masks:
            if m & ~full:
                raise DomainError("closed set reaches outside the carrier")

    @classmethod
    def from_closed(
        cls, carrier: Carrier | Iterable[str], closed: Iterable[Iterable[str]]
    ) -> "FinSpace":
        """Validated construction from label sets."""
        if not isinstance(carrier, Carrier):
            carrier = Carrier.of(carrier)
        space = cls(carrier, frozenset(carrier.mask_of(s) for s in closed))
        space.validate()
        return space

    def validate(self) -> None:
        """Check the closed-set axioms, naming the first violation found."""
        full = self.carrier.full_mask
        if 0 not in self.closed_masks:
            raise DomainError("the empty set must be closed")
        if full not in self.closed_masks:
            raise DomainError("the whole carrier must be closed")
        ordered = sorted(self.closed_masks)
        for a in ordered:
            for b in ordered:
                for m, word in ((a | b, "union"), (a & b, "intersection")):
                    if m not in self.closed_masks:
                        raise DomainError(
                            f"closed sets are not closed under {word}: "
                            f"{sorted(self.carrier.labels_of(a))} and "
                            f"{sorted(self.carrier.labels_of(b))}"
                        )

    @cached_property
    def open_masks(self) -> frozenset[int]:
        full = self.carrier.full_mask
        return frozenset((~m) & full for m in self.closed_masks)

    def closed_sets(self) -> tuple[frozenset[str], ...]:
        """Closed sets as label sets, sorted by size then labels."""
        keyed = sorted(
            (len(t), t) for t in (self.carrier.tuple_of(m) for m in self.closed_masks)
        )
        return tuple(frozenset(t) for _, t in keyed)

    def is_closed(self, subset: Iterable[str]) -> bool:
        return self.carrier.mask_of(subset) in self.closed_masks

    def is_open(self, subset: Iterable[str]) -> bool:
        return self.carrier.mask_of(subset) in self.open_masks

    def closure_mask(self, mask: int) -> int:
        out = self.carrier.full_mask
        for c in self.closed_masks:
            if not mask & ~c:
                out &= c
        return out

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        """Smallest closed superset."""
        return self.carrier.labels_of(self.closure_mask(self.carrier.mask_of(subset)))

    @cached_property
    def point_closures(self) -> tuple[int, ...]:
        return tuple(self.closure_mask(1 << i) for i in range(len(self.carrier)))

    def t0_violation(self) -> tuple[str, str] | None:
        """A pair of indistinguishable points, or None when the space is T0."""
        seen: dict[int, int] = {}
        for i, cl in enumerate(self.point_closures):
            if cl in seen:
                return (self.carrier.points[seen[cl]], self.carrier.points[i])
            seen[cl] = i
        return None

    def minimal_open_mask(self, i: int) -> int:
        """Intersection of all opens containing point i (open, finite space)."""
        out = self.carrier.full_mask
        for o in self.open_masks:
            if (o >> i) & 1:
                out &= o
        return out

    def to_json(self) -> dict:
        return {
            "carrier": list(self.carrier.points),
            "closed": [sorted(s) for s in self.closed_sets()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FinSpace":
        return cls.from_closed(doc["carrier"], [frozenset(s) for s in doc["closed"]])


def _space_from_subbasis_masks(carrier: Carrier, masks: Iterable[int]) -> FinSpace:
    """Topology generated by the given bitmasks as a subbasis of opens."""
    full = carrier.full_mask
    basis = set(masks)
    basis.add(full)  # empty intersection
    while True:
        new = {a & b for a in basis for b in basis} - basis
        if not new:
            break
        basis |= new
    opens = basis | {0}
    while True:
        new = {a | b for a in opens for b in opens} - opens
        if not new:
            break
        opens |= new
    return FinSpace(carrier, frozenset((~o) & full for o in opens))


def from_subbasis(subbasis: SetFamily) -> FinSpace:
    """The coarsest topology in which every member of the family is open."""
    return _space_from_subbasis_masks(subbasis.carrier, subbasis.masks)


def ultra_topology(family: SetFamily) -> FinSpace:
    """The topology whose closed sets are the stable sets of the family.

    On a finite carrier a set is stable exactly when it is a union of atoms
    of the family, so this is the partition topology of the atoms.  The test
    suite cross-checks this against brute-force stability enumeration.
    """
    alg = atoms(family)
    carrier = family.carrier
    closed = {0}
    for atom in alg.atoms:
        block = carrier.mask_of(atom)
        closed |= {c | block for c in closed}
    return FinSpace(carrier, frozenset(closed))


@dataclass(frozen=True)
class Poset:
    """A finite partial order; the relation stores all (lower, upper) pairs."""

    carrier: Carrier
    relation: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        idx = self.carrier._index
        for x, y in self.relation:
            if x not in idx or y not in idx:
                raise DomainError(f"relation pair ({x!r}, {y!r}) leaves the carrier")
        rel = self.relation
        for p in self.carrier.points:
            if (p, p) not in rel:
                raise DomainError(f"relation is not reflexive at {p!r}")
        for x, y in rel:
            if x != y and (y, x) in rel:
                raise DomainError(f"relation is not antisymmetric on {x!r}, {y!r}")
        for x, y in rel:
            for z, w in rel:
                if y == z and (x, w) not in rel:
                    raise DomainError(
                        f"relation is not transitive: {x!r} <= {y!r} <= {w!r}"
                    )

    @classmethod
    def from_pairs(
        cls, labels: Iterable[str], pairs: Iterable[tuple[str, str]]
    ) -> "Poset":
        """Reflexive-transitive closure of the given pairs; rejects cycles."""
        carrier = Carrier.of(labels)
        rel = {(p, p) for p in carrier.points} | set(pairs)
        while True:
            new = {
                (x, w)
                for x, y in rel
                for z, w in rel
                if y == z and (x, w) not in rel
            }
            if not new:
                break
            rel |= new
        return cls(carrier, frozenset(rel))

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.relation

    def down(self, x: str) -> frozenset[str]:
        """Principal down-set: everything below or equal to x."""
        if x not in self.carrier:
            raise DomainError(f"{x!r} is not a point of the carrier")
        return frozenset(y for y, z in self.relation if z == x)

    def covers(self) -> tuple[tuple[str, str], ...]:
        """(lower, upper) pairs with nothing strictly between, sorted."""
        out = []
        for x, y in self.relation:
            if x == y:
                continue
            if any(
                z != x and z != y and self.leq(x, z) and self.leq(z, y)
                for z in self.carrier.points
            ):
                continue
            out.append((x, y))
        return tuple(sorted(out))


def specialization_order(space: FinSpace) -> Poset:
    """Order the points by y <= x iff y lies in the closure of {x}.

    Generic points sit on top; the space must be T0 for antisymmetry, and a
    violating pair is reported otherwise.
    """
    violation = space.t0_violation()
    if violation is not None:
        raise NotT0Error(violation)
    carrier = space.carrier
    rel = set()
    for xi, x in enumerate(carrier.points):
        cl = space.point_closures[xi]
        for yi, y in enumerate(carrier.points):
            if (cl >> yi) & 1:
                rel.add((y, x))
    return Poset(carrier, frozenset(rel))


def poset_to_space(poset: Poset) -> FinSpace:
    """Alexandrov space of the poset: closed sets are the down-closed sets."""
    carrier = poset.carrier
    principal = [carrier.mask_of(poset.down(x)) for x in carrier.points]
    closed = {0}
    for d in principal:
        closed |= {c | d for c in closed}
    # unions of principal down-sets are exactly the down-closed sets
    return FinSpace(carrier, frozenset(closed))


def space_to_poset(space: FinSpace) -> Poset:
    """Alias for specialization_order; inverse of poset_to_space on T0 spaces."""
    return specialization_order(space)


@dataclass(frozen=True)
class SpectralReport:
    """Per-check breakdown of the finite spectrality test."""

    compact: bool
    t0: bool
    t0_witness: tuple[str, str] | None
    sober: bool
    sober_witness: tuple[str, ...] | None
    compact_open_basis: bool
    spectral: bool

    def to_json(self) -> dict:
        return {
            "compact": self.compact,
            "t0": self.t0,
            "t0_witness": list(self.t0_witness) if self.t0_witness else None,
            "sober": self.sober,
            "sober_witness": list(self.sober_witness) if self.sober_witness else None,
            "compact_open_basis": self.compact_open_basis,
            "spectral": self.spectral,
        }


def _soberness(space: FinSpace) -> tuple[bool, tuple[str, ...] | None]:
    """Every irreducible closed set must have exactly one generic point."""
    closed = sorted(space.closed_masks)
    for c in closed:
        if c == 0:
            continue
        proper = [d for d in closed if d != c and not d & ~c]
        reducible = any(d1 | d2 == c for d1 in proper for d2 in proper)
        if reducible:
            continue
        generics = [
            i for i in range(len(space.carrier))
            if (c >> i) & 1 and space.point_closures[i] == c
        ]
        if len(generics) != 1:
            return False, space.carrier.tuple_of(c)
    return True, None


def _compact_open_basis(space: FinSpace) -> bool:
    """Build the minimal-neighborhood basis and close it under intersection.

    On a finite space every subset is compact, so the content of the check is
    that the collection really is a basis of opens and stays open under
    pairwise intersection.
    """
    basis = {space.minimal_open_mask(i) for i in range(len(space.carrier))}
    if not basis <= space.open_masks:
        return False
    while True:
        new = {a & b for a in basis for b in basis} - basis
        if not new:
            break
        if not new <= space.open_masks:
            return False
        basis |= new
    for o in space.open_masks:
        union = 0
        for b in basis:
            if not b & ~o:
                union |= b
        if union != o:
            return False
    return True


def is_spectral(space: FinSpace) -> SpectralReport:
    """Run the finite spectrality checks and cross-check the verdict.

    A finite space is spectral exactly when it is T0 (compactness is free,
    soberness is equivalent to T0 in the finite case, and the minimal open
    neighborhoods always give an intersection-closed basis of compact opens).
    Both routes are computed; a disagreement would be an internal error.
    """
    t0_witness = space.t0_violation()
    sober, sober_witness = _soberness(space)
    basis_ok = _compact_open_basis(space)
    spectral = (t0_witness is None) and sober and basis_ok
    if spectral != (t0_witness is None):
        raise UltratopError("internal: spectrality disagrees with the T0 shortcut")
    return SpectralReport(
        compact=True,
        t0=t0_witness is None,
        t0_witness=t0_witness,
        sober=sober,
        sober_witness=sober_witness,
        compact_open_basis=basis_ok,
        spectral=spectral,
    )


def patch_topology(space: FinSpace) -> FinSpace:
    """Refine the space by making every compact open set clopen.

    Finite subsets are all compact, so the subbasis is the opens together
    with their complements; the result is the partition topology of
    topological indistinguishability, discrete exactly when the input is T0.
    """
    masks = set(space.open_masks) | set(space.closed_masks)
    return _space_from_subbasis_masks(space.carrier, masks)


def generic_closure(space: FinSpace, subset: Iterable[str]) -> frozenset[str]:
    """All generizations of the subset: points whose closure meets it."""
    y = space.carrier.mask_of(subset)
    out = 0
    for i in range(len(space.carrier)):
        if space.point_closures[i] & y:
            out |= 1 << i
    return space.carrier.labels_of(out)


def _preimage_masks(
    mapping: Mapping[str, str], dom_carrier: Carrier, cod_carrier: Carrier
) -> list[int]:
    """Bit position in the codomain for each domain point; validates totality."""
    out = []
    for x in dom_carrier.points:
        if x not in mapping:
            raise DomainError(f"map is not total: no image for {x!r}")
        y = mapping[x]
        if y not in cod_carrier:
            raise DomainError(f"image {y!r} of {x!r} is not in the codomain")
        out.append(cod_carrier._index[y])
    return out


def is_continuous(
    mapping: Mapping[str, str], dom: FinSpace, cod: FinSpace
) -> bool:
    """Whether preimages of closed sets are closed; the map must be total."""
    images = _preimage_masks(mapping, dom.carrier, cod.carrier)
    for c in cod.closed_masks:
        pre = 0
        for i, yi in enumerate(images):
            if (c >> yi) & 1:
                pre |= 1 << i
        if pre not in dom.closed_masks:
            return False
    return True


@dataclass(frozen=True)
class TransportReport:
    """Preimage-hypothesis check plus the continuity it forces.

    ``continuous`` is computed between the two induced stable-set topologies
    whenever the hypothesis holds, and is None otherwise.
    """

    preimages_in_family: bool
    missing: tuple[str, ...]
    continuous: bool | None


def ultra_transport(
    mapping: Mapping[str, str], dom_family: SetFamily, cod_family: SetFamily
) -> TransportReport:
    """Check that codomain members pull back into the domain family, then
    verify continuity between the induced stable-set topologies."""
    dom_carrier = dom_family.carrier
    cod_carrier = cod_family.carrier
    images = _preimage_masks(mapping, dom_carrier, cod_carrier)
    available = set(dom_family.masks)
    missing = []
    for (name, _), m in zip(cod_family.members, cod_family.masks):
        pre = 0
        for i, yi in enumerate(images):
            if (m >> yi) & 1:
                pre |= 1 << i
        if pre not in available:
            missing.append(name)
    holds = not missing
    continuous = (
        is_continuous(mapping, ultra_topology(dom_family), ultra_topology(cod_family))
        if holds
        else None
    )
    return TransportReport(holds, tuple(missing), continuous)


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(poset: Poset, name: str = "poset") -> str:
    """Graphviz digraph of the cover relation, drawn upward."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;"]
    for p in poset.carrier.points:
        lines.append(f"  {_dot_quote(p)};")
    for lower, upper in poset.covers():
        lines.append(f"  {_dot_quote(lower)} -> {_dot_quote(upper)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
