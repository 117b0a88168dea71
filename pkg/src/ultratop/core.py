"""Set families over finite carriers and their ultrafilter machinery.

A carrier is a finite set of distinct string labels kept in lexicographic
order.  Subsets enter and leave the public API as frozensets of labels;
internally every subset is an integer bitmask relative to the carrier order,
which keeps the exhaustive sweeps in the test suites cheap.

On a finite base set every ultrafilter is principal, so an ultrafilter is
represented by its base set together with the generating point.  The limit
set of an ultrafilter collects the carrier points whose membership pattern
across a family agrees with the ultrafilter's verdict on every member; sets
that absorb all their own limit sets are the closed sets of a topology, and
the machinery below computes those objects exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence


class UltratopError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(UltratopError):
    """An argument lies outside the domain of the requested operation."""


def _set_label(labels: Iterable[str]) -> str:
    return "{" + ",".join(sorted(labels)) + "}"


@dataclass(frozen=True)
class Carrier:
    """A finite ambient set of distinct string labels, kept sorted."""

    points: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise DomainError("a carrier needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise DomainError("carrier labels must be pairwise distinct")
        if list(self.points) != sorted(self.points):
            raise DomainError("carrier labels must be sorted; use Carrier.of")

    @classmethod
    def of(cls, labels: Iterable[str]) -> "Carrier":
        return cls(tuple(sorted(labels)))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[str]:
        return iter(self.points)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def mask_of(self, labels: Iterable[str]) -> int:
        """Encode a collection of labels as a bitmask, rejecting strays."""
        mask = 0
        for label in labels:
            i = self._index.get(label)
            if i is None:
                raise DomainError(f"{label!r} is not a point of the carrier")
            mask |= 1 << i
        return mask

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(p for i, p in enumerate(self.points) if (mask >> i) & 1)

    def tuple_of(self, mask: int) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.points) if (mask >> i) & 1)


@dataclass(frozen=True)
class SetFamily:
    """A named, nonempty collection of subsets of a common carrier.

    Duplicate subsets are permitted; ``normalize`` drops them (first name
    wins) and sorts the members, so normalized families compare structurally.
    """

    carrier: Carrier
    members: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise DomainError("a set family must have at least one member")
        for _, subset in self.members:
            self.carrier.mask_of(subset)

    @classmethod
    def of(
        cls,
        carrier: Carrier | Iterable[str],
        subsets: Iterable[Iterable[str]],
        names: Sequence[str] | None = None,
    ) -> "SetFamily":
        """Build a family with auto-generated names F0, F1, ..."""
        if not isinstance(carrier, Carrier):
            carrier = Carrier.of(carrier)
        frozen = [frozenset(s) for s in subsets]
        if names is None:
            names = [f"F{i}" for i in range(len(frozen))]
        if len(names) != len(frozen):
            raise DomainError("one name per member is required")
        return cls(carrier, tuple(zip(names, frozen)))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(self.carrier.mask_of(s) for _, s in self.members)

    def subsets(self) -> tuple[frozenset[str], ...]:
        return tuple(s for _, s in self.members)

    def normalize(self) -> "SetFamily":
        """Deduplicate subsets (first name wins) and sort by member content."""
        first_name: dict[frozenset[str], str] = {}
        for name, subset in self.members:
            first_name.setdefault(subset, name)
        ordered = sorted(first_name, key=lambda s: tuple(sorted(s)))
        return SetFamily(self.carrier, tuple((first_name[s], s) for s in ordered))

    def to_json(self) -> dict:
        return {
            "carrier": list(self.carrier.points),
            "members": [{"name": n, "set": sorted(s)} for n, s in self.members],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SetFamily":
        try:
            carrier = Carrier.of(doc["carrier"])
            members = tuple(
                (str(m["name"]), frozenset(m["set"])) for m in doc["members"]
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed family document: {exc}") from exc
        return cls(carrier, members)


@dataclass(frozen=True)
class PrincipalUltrafilter:
    """The ultrafilter on ``base`` of all subsets containing ``point``."""

    base: frozenset[str]
    point: str

    def __post_init__(self) -> None:
        if not self.base:
            raise DomainError("an ultrafilter needs a nonempty base set")
        if self.point not in self.base:
            raise DomainError(
                f"generating point {self.point!r} does not belong to the base set"
            )

    @classmethod
    def at(cls, point: str, base: Iterable[str]) -> "PrincipalUltrafilter":
        return cls(frozenset(base), point)

    def contains(self, subset: Iterable[str]) -> bool:
        """Ultrafilter membership; defined only for subsets of the base."""
        s = frozenset(subset)
        if not s <= self.base:
            raise DomainError("membership is defined only for subsets of the base")
        return self.point in s


def limit_set(family: SetFamily, ultra: PrincipalUltrafilter) -> frozenset[str]:
    """Carrier points that agree with the ultrafilter on every family member.

    A point x survives iff, for each member F, x lies in F exactly when the
    trace of F on the base belongs to the ultrafilter.  For a principal
    ultrafilter the trace test is just membership of the generating point,
    so the result always contains that point.
    """
    carrier = family.carrier
    base_mask = carrier.mask_of(ultra.base)
    p = carrier._index[ultra.point]
    keep = carrier.full_mask
    for m in family.masks:
        if ((m & base_mask) >> p) & 1:  # trace of the member is an ultrafilter set
            keep &= m
        else:
            keep &= ~m
    return carrier.labels_of(keep & carrier.full_mask)


def is_stable(family: SetFamily, subset: Iterable[str]) -> bool:
    """Whether the subset absorbs the limit set of every ultrafilter on it.

    The empty set carries no ultrafilters and is vacuously stable.
    """
    carrier = family.carrier
    y_mask = carrier.mask_of(subset)
    masks = family.masks
    full = carrier.full_mask
    for i in range(len(carrier)):
        if not (y_mask >> i) & 1:
            continue
        keep = full
        for m in masks:
            # the trace of m on the subset is large iff point i lies in m
            if (m >> i) & 1:
                keep &= m
            else:
                keep &= ~m
        if keep & ~y_mask:
            return False
    return True


def stable_closure(family: SetFamily, subset: Iterable[str]) -> frozenset[str]:
    """Union of the limit sets of all ultrafilters carried by the subset.

    This is the smallest stable superset, the operator is monotone and
    idempotent, and the empty set closes to itself.
    """
    carrier = family.carrier
    y_mask = carrier.mask_of(subset)
    masks = family.masks
    full = carrier.full_mask
    out = 0
    for i in range(len(carrier)):
        if not (y_mask >> i) & 1:
            continue
        keep = full
        for m in masks:
            if (m >> i) & 1:
                keep &= m
            else:
                keep &= ~m
        out |= keep
    return carrier.labels_of(out & full)


@dataclass(frozen=True)
class BoolAlgebra:
    """The Boolean set algebra generated by a family, given by its atoms."""

    generators: SetFamily
    atoms: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        carrier = self.generators.carrier
        seen = 0
        for atom in self.atoms:
            mask = carrier.mask_of(atom)
            if not mask:
                raise DomainError("atoms must be nonempty")
            if mask & seen:
                raise DomainError("atoms must be pairwise disjoint")
            seen |= mask
        if seen != carrier.full_mask:
            raise DomainError("atoms must partition the carrier")
        for name, subset in self.generators.members:
            if not self.contains_set(subset):
                raise DomainError(f"generator {name!r} is not a union of atoms")

    def atom_of(self, point: str) -> frozenset[str]:
        for atom in self.atoms:
            if point in atom:
                return atom
        raise DomainError(f"{point!r} is not a point of the carrier")

    @property
    def element_count(self) -> int:
        return 1 << len(self.atoms)

    def elements(self) -> Iterator[frozenset[str]]:
        """All unions of atoms, in binary counting order over the atom list.

        The count is exponential in the number of atoms; callers are expected
        to stay at desk scale.
        """
        for bits in range(self.element_count):
            union: frozenset[str] = frozenset()
            for i, atom in enumerate(self.atoms):
                if (bits >> i) & 1:
                    union |= atom
            yield union

    def contains_set(self, subset: Iterable[str]) -> bool:
        """Whether the subset is a union of atoms."""
        s = frozenset(subset)
        self.generators.carrier.mask_of(s)
        return all(atom <= s or not (atom & s) for atom in self.atoms)


def atoms(family: SetFamily) -> BoolAlgebra:
    """Partition the carrier by membership signature across the family.

    Two points share an atom iff no member separates them; every member is a
    union of atoms, and the unions of atoms are exactly the elements of the
    Boolean algebra generated by the family.
    """
    carrier = family.carrier
    groups: dict[tuple[int, ...], int] = {}
    for i in range(len(carrier)):
        sig = tuple((m >> i) & 1 for m in family.masks)
        groups[sig] = groups.get(sig, 0) | (1 << i)
    blocks = sorted(carrier.tuple_of(mask) for mask in groups.values())
    return BoolAlgebra(family, tuple(frozenset(b) for b in blocks))


class FamilyTransforms(NamedTuple):
    intersections: SetFamily
    unions: SetFamily
    complements: SetFamily


def _pairwise_closure(masks: Iterable[int], op: Callable[[int, int], int]) -> frozenset[int]:
    out = set(masks)
    while True:
        new = {op(a, b) for a in out for b in out} - out
        if not new:
            return frozenset(out)
        out |= new


def family_transforms(family: SetFamily) -> FamilyTransforms:
    """Close a family under finite intersections, finite unions, complements.

    The three results are independent closures of the input (the complement
    closure is the family together with all member complements).  Members of
    the returned families are named by their content and normalized.
    """
    carrier = family.carrier
    full = carrier.full_mask

    def build(masks: Iterable[int]) -> SetFamily:
        subsets = sorted(carrier.tuple_of(m) for m in set(masks))
        return SetFamily(
            carrier, tuple((_set_label(s), frozenset(s)) for s in subsets)
        )

    inter = _pairwise_closure(family.masks, lambda a, b: a & b)
    union = _pairwise_closure(family.masks, lambda a, b: a | b)
    comp = set(family.masks) | {(~m) & full for m in family.masks}
    return FamilyTransforms(build(inter), build(union), build(comp))


def restrict_ultrafilter(
    ultra: PrincipalUltrafilter, base: Iterable[str]
) -> PrincipalUltrafilter:
    """Trace the ultrafilter onto one of its member sets."""
    t = frozenset(base)
    if not t <= ultra.base:
        raise DomainError("restriction target must be a subset of the base")
    if ultra.point not in t:
        raise DomainError("restriction target is not a member of the ultrafilter")
    return PrincipalUltrafilter(t, ultra.point)


def extend_ultrafilter(
    ultra: PrincipalUltrafilter, base: Iterable[str]
) -> PrincipalUltrafilter:
    """Push the ultrafilter forward onto a superset of its base."""
    z = frozenset(base)
    if not ultra.base <= z:
        raise DomainError("extension target must contain the base")
    return PrincipalUltrafilter(z, ultra.point)


@dataclass(frozen=True)
class FipResult:
    """Outcome of a finite intersection property check.

    Exactly one of ``intersection`` (success) and ``witness`` (failure) is
    set; the witness holds indices into the input list.
    """

    has_fip: bool
    intersection: frozenset[str] | None = None
    witness: tuple[int, ...] | None = None


def fip_check(sets: Sequence[Iterable[str]]) -> FipResult:
    """Decide the finite intersection property for a list of finite sets.

    On success the total intersection is returned; it is nonempty because the
    whole list is itself a finite subfamily.  On failure the witness is the
    first minimal-cardinality subfamily with empty intersection, scanning
    subfamilies in index order within each size.
    """
    frozen = [frozenset(s) for s in sets]
    if not frozen:
        raise DomainError("fip_check needs a nonempty list of sets")
    total = frozenset.intersection(*frozen)
    if total:
        return FipResult(True, intersection=total)
    for size in range(1, len(frozen) + 1):
        for combo in combinations(range(len(frozen)), size):
            if not frozenset.intersection(*(frozen[i] for i in combo)):
                return FipResult(False, witness=combo)
    raise UltratopError("unreachable: empty total intersection without a witness")
