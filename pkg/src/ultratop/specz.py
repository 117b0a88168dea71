"""A symbolic, decidable model of the prime spectrum of the integers.

Points are the primes together with one generic point for the zero ideal.
Constructible subsets are exactly the finite sets of primes and their
complements, stored in a normal form (finite prime support plus a cofinite
flag); a constructible set contains the generic point precisely when it is
cofinite.  More general subsets with finite or cofinite prime support are
modelled by descriptors.

These normal forms make the closure operators exact rather than approximate:
principal ultrafilters on a subset recover its own points, every ultrafilter
without a smallest member sends the limit to the generic point, and so a
subset closes up under ultrafilter limits by adjoining the generic point
exactly when its prime support is infinite.  See docs/theory_notes.md for
the infinite phenomena this model deliberately leaves out.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable, Sequence

from .core import DomainError, UltratopError

FACTOR_CAP = 10**12

# witnesses proving Miller-Rabin deterministic below 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_BOUND = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for integers below the proven bound."""
    if n >= _MR_BOUND:
        raise DomainError(f"primality test is deterministic only below {_MR_BOUND}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue  # a witness divisible by n says nothing
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> frozenset[int]:
    """Distinct prime divisors of |n|; n must be nonzero with |n| <= 10^12.

    Trial division up to 10^6 leaves a cofactor that is either 1 or prime,
    because a composite below 10^12 has a divisor below 10^6.
    """
    if n == 0:
        raise DomainError("0 has no prime factorization")
    n = abs(n)
    if n > FACTOR_CAP:
        raise DomainError(f"factorization inputs are capped at {FACTOR_CAP}")
    out = set()
    for p in (2, 3):
        if n % p == 0:
            out.add(p)
            while n % p == 0:
                n //= p
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            if n % q == 0:
                out.add(q)
                while n % q == 0:
                    n //= q
        d += 6
    if n > 1:
        if not is_prime(n):
            raise UltratopError("internal: cofactor after trial division is composite")
        out.add(n)
    return frozenset(out)


@dataclass(frozen=True)
class ZPoint:
    """A point of the spectrum: a prime, or None for the generic point."""

    prime: int | None = None

    def __post_init__(self) -> None:
        if self.prime is not None and not is_prime(self.prime):
            raise DomainError(f"{self.prime} is not a prime number")

    @classmethod
    def generic(cls) -> "ZPoint":
        return cls(None)

    @classmethod
    def at(cls, p: int) -> "ZPoint":
        return cls(p)

    @property
    def is_generic(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "(0)" if self.prime is None else f"({self.prime})"


@dataclass(frozen=True)
class ZConstructible:
    """Normal form of a constructible subset: listed or excluded primes.

    cofinite=False: exactly the listed primes, generic point excluded.
    cofinite=True: every prime not listed, generic point included.
    """

    primes: frozenset[int] = frozenset()
    cofinite: bool = False

    def __post_init__(self) -> None:
        for p in self.primes:
            if not is_prime(p):
                raise DomainError(f"{p} is not a prime number")

    @classmethod
    def empty(cls) -> "ZConstructible":
        return cls()

    @classmethod
    def whole(cls) -> "ZConstructible":
        return cls(cofinite=True)

    @property
    def contains_generic(self) -> bool:
        return self.cofinite

    def contains_prime(self, p: int) -> bool:
        if not is_prime(p):
            raise DomainError(f"{p} is not a prime number")
        return (p in self.primes) != self.cofinite

    def contains(self, point: ZPoint) -> bool:
        if point.is_generic:
            return self.contains_generic
        return self.contains_prime(point.prime)

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    @property
    def is_whole(self) -> bool:
        return self.cofinite and not self.primes

    def complement(self) -> "ZConstructible":
        return ZConstructible(self.primes, not self.cofinite)

    def union(self, other: "ZConstructible") -> "ZConstructible":
        if not self.cofinite and not other.cofinite:
            return ZConstructible(self.primes | other.primes, False)
        if self.cofinite and other.cofinite:
            return ZConstructible(self.primes & other.primes, True)
        cof, fin = (self, other) if self.cofinite else (other, self)
        return ZConstructible(cof.primes - fin.primes, True)

    def intersect(self, other: "ZConstructible") -> "ZConstructible":
        return self.complement().union(other.complement()).complement()

    def __or__(self, other: "ZConstructible") -> "ZConstructible":
        return self.union(other)

    def __and__(self, other: "ZConstructible") -> "ZConstructible":
        return self.intersect(other)

    def __invert__(self) -> "ZConstructible":
        return self.complement()

    def to_json(self) -> dict:
        return {
            "primes": sorted(self.primes),
            "mode": "cofinite" if self.cofinite else "finite",
            "generic": self.cofinite,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ZConstructible":
        mode = doc["mode"]
        if mode not in ("finite", "cofinite"):
            raise DomainError(f"unknown mode {mode!r}")
        cofinite = mode == "cofinite"
        if bool(doc.get("generic", cofinite)) != cofinite:
            raise DomainError(
                "a constructible set contains the generic point exactly when"
                " it is cofinite"
            )
        return cls(frozenset(int(p) for p in doc["primes"]), cofinite)


def v_of(n: int) -> ZConstructible:
    """Vanishing locus of an integer: primes dividing it; everything for 0."""
    if n == 0:
        return ZConstructible.whole()
    if abs(n) == 1:
        return ZConstructible.empty()
    return ZConstructible(prime_factors(n), False)


def d_of(n: int) -> ZConstructible:
    """Principal open locus: the complement of the vanishing locus."""
    return v_of(n).complement()


@dataclass(frozen=True)
class ZSubsetDescriptor:
    """A subset of the model with finite or cofinite prime support.

    When ``cofinite_primes`` is set the listed primes are the exclusions;
    ``include_generic`` tracks the generic point separately, so arbitrary
    (not just constructible) subsets of this shape are expressible.
    """

    primes: frozenset[int] = frozenset()
    cofinite_primes: bool = False
    include_generic: bool = False

    def __post_init__(self) -> None:
        for p in self.primes:
            if not is_prime(p):
                raise DomainError(f"{p} is not a prime number")

    @classmethod
    def finite(cls, primes: Iterable[int], generic: bool = False) -> "ZSubsetDescriptor":
        return cls(frozenset(primes), False, generic)

    @classmethod
    def cofinite_except(
        cls, excluded: Iterable[int], generic: bool = False
    ) -> "ZSubsetDescriptor":
        return cls(frozenset(excluded), True, generic)

    @classmethod
    def max_points(cls) -> "ZSubsetDescriptor":
        """All primes, no generic point: the closed points of the spectrum."""
        return cls(frozenset(), True, False)

    @classmethod
    def whole(cls) -> "ZSubsetDescriptor":
        return cls(frozenset(), True, True)

    @classmethod
    def empty(cls) -> "ZSubsetDescriptor":
        return cls()

    @property
    def has_infinite_prime_support(self) -> bool:
        return self.cofinite_primes

    def contains_prime(self, p: int) -> bool:
        if not is_prime(p):
            raise DomainError(f"{p} is not a prime number")
        return (p in self.primes) != self.cofinite_primes

    def contains(self, point: ZPoint) -> bool:
        if point.is_generic:
            return self.include_generic
        return self.contains_prime(point.prime)

    def is_subset_of(self, other: "ZSubsetDescriptor") -> bool:
        if self.include_generic and not other.include_generic:
            return False
        if not self.cofinite_primes:
            if not other.cofinite_primes:
                return self.primes <= other.primes
            return not (self.primes & other.primes)
        if not other.cofinite_primes:
            return False  # infinitely many primes cannot fit a finite set
        return other.primes <= self.primes

    def to_json(self) -> dict:
        return {
            "primes": sorted(self.primes),
            "mode": "cofinite" if self.cofinite_primes else "finite",
            "generic": self.include_generic,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ZSubsetDescriptor":
        mode = doc["mode"]
        if mode not in ("finite", "cofinite"):
            raise DomainError(f"unknown mode {mode!r}")
        return cls(
            frozenset(int(p) for p in doc["primes"]),
            mode == "cofinite",
            bool(doc.get("generic", False)),
        )


def constructible_to_descriptor(c: ZConstructible) -> ZSubsetDescriptor:
    return ZSubsetDescriptor(c.primes, c.cofinite, c.cofinite)


def descriptor_to_constructible(y: ZSubsetDescriptor) -> ZConstructible:
    if y.include_generic != y.cofinite_primes:
        raise DomainError(
            "only subsets whose generic point matches their cofinite flag are"
            " constructible"
        )
    return ZConstructible(y.primes, y.cofinite_primes)


def limit_points(y: ZSubsetDescriptor) -> ZSubsetDescriptor:
    """Points reachable as ultrafilter limits of the subset.

    Principal ultrafilters recover the subset itself; any ultrafilter with no
    smallest member exists exactly when the prime support is infinite, and
    every such limit is the generic point.
    """
    if y.cofinite_primes and not y.include_generic:
        return replace(y, include_generic=True)
    return y


def patch_closure(y: ZSubsetDescriptor) -> ZSubsetDescriptor:
    """Closure under ultrafilter limits: add the generic point to any subset
    with infinitely many primes; finite subsets are already closed."""
    return limit_points(y)


def is_ultra_closed(y: ZSubsetDescriptor) -> bool:
    """Whether the subset already contains all its ultrafilter limits."""
    return limit_points(y) == y


def zariski_closure(y: ZSubsetDescriptor) -> ZSubsetDescriptor:
    """Finite prime sets are closed; anything else is dense."""
    if not y.cofinite_primes and not y.include_generic:
        return y
    return ZSubsetDescriptor.whole()


@dataclass(frozen=True)
class ZFipResult:
    """Outcome of a symbolic finite intersection property check."""

    has_fip: bool
    intersection: ZConstructible | None = None
    witness: tuple[int, ...] | None = None


def z_fip_check(sets: Sequence[ZConstructible]) -> ZFipResult:
    """Decide the finite intersection property for constructible sets.

    Intersections are computed exactly in normal form, so the verdict is
    symbolic: a cofinite intersection is nonempty no matter how many primes
    were excluded.  On failure the witness is the first minimal-cardinality
    subfamily with empty intersection, in index order within each size.
    """
    if not sets:
        raise DomainError("z_fip_check needs a nonempty list of sets")
    total = sets[0]
    for c in sets[1:]:
        total = total.intersect(c)
    if not total.is_empty:
        return ZFipResult(True, intersection=total)
    for size in range(1, len(sets) + 1):
        for combo in combinations(range(len(sets)), size):
            inter = sets[combo[0]]
            for i in combo[1:]:
                inter = inter.intersect(sets[i])
            if inter.is_empty:
                return ZFipResult(False, witness=combo)
    raise UltratopError("unreachable: empty total intersection without a witness")
