"""End-to-end acceptance checks, one numbered criterion per test function.

Run ``pytest tests/test_acceptance.py -v -s`` to get one printed PASS/FAIL
line per criterion alongside the usual pytest report.
"""

import itertools
import random
from contextlib import contextmanager

import pytest

from ultratop import (
    Carrier,
    PrincipalUltrafilter,
    Poset,
    RingEmbedding,
    RingHom,
    SetFamily,
    ZConstructible,
    ZSubsetDescriptor,
    atoms,
    d_of,
    extend_ultrafilter,
    family_transforms,
    from_subbasis,
    generic_closure,
    gf,
    intermediate_rings,
    is_continuous,
    is_integrally_closed_in,
    is_spectral,
    is_ultra_closed,
    limit_set,
    overring_space,
    patch_closure,
    patch_topology,
    poset_to_space,
    prime_ideals,
    principal_open_family,
    product,
    restrict_ultrafilter,
    spec_functor,
    spec_space,
    specialization_order,
    stable_closure,
    ultra_topology,
    ultra_transport,
    ultrafilter_prime,
    v_of,
    z_fip_check,
    zmod,
)
from ultratop.rings import _spectrum
from conftest import brute_force_stable_masks, random_family

SEED = 20250818


@contextmanager
def criterion(num: int, desc: str):
    try:
        yield
    except BaseException:
        print(f"criterion {num:02d}: FAIL ({desc})")
        raise
    print(f"criterion {num:02d}: PASS ({desc})")


@pytest.fixture(scope="module")
def family_pool():
    rng = random.Random(SEED)
    return [random_family(rng, 8, 5) for _ in range(500)]


def stable_masks_by_definition(family):
    """Collect stable subsets by testing each one from the definition."""
    from ultratop import is_stable

    carrier = family.carrier
    n = len(carrier)
    return {
        mask
        for mask in range(1 << n)
        if is_stable(family, carrier.labels_of(mask))
    }


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    count = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            count += 1
            while n % d == 0:
                n //= d
        d += 1
    return count + (n > 1)


def ring_pool():
    rings = [zmod(n) for n in range(2, 65)]
    rings += [gf(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)]
    rings += [
        product(zmod(2), zmod(2)),
        product(zmod(2), zmod(3)),
        product(zmod(4), zmod(9)),
        product(gf(4), zmod(3)),
        product(zmod(8), zmod(7)),
    ]
    return rings


def test_criterion_01_stable_sets_form_topology(family_pool):
    with criterion(1, "stable sets of 500 random families form a topology"):
        for fam in family_pool:
            full = fam.carrier.full_mask
            stable = stable_masks_by_definition(fam)
            assert 0 in stable
            assert full in stable
            for a in stable:
                for b in stable:
                    assert a | b in stable
                    assert a & b in stable


def test_criterion_02_transform_invariance(family_pool):
    with criterion(2, "family transforms leave the induced topology unchanged"):
        for fam in family_pool:
            base = ultra_topology(fam)
            t = family_transforms(fam)
            assert ultra_topology(t.intersections) == base
            assert ultra_topology(t.unions) == base
            assert ultra_topology(t.complements) == base
            atom_family = SetFamily.of(fam.carrier.points, atoms(fam).atoms)
            assert ultra_topology(atom_family) == base


def test_criterion_03_closure_matches_exhaustive_search():
    with criterion(3, "stable closure equals the smallest stable superset"):
        rng = random.Random(SEED + 3)
        for _ in range(100):
            fam = random_family(rng, 6, 5)
            carrier = fam.carrier
            stable = brute_force_stable_masks(fam)
            for y_mask in range(1 << len(carrier)):
                expect = carrier.full_mask
                for s in stable:
                    if y_mask & ~s == 0:
                        expect &= s
                got = carrier.mask_of(stable_closure(fam, carrier.labels_of(y_mask)))
                assert got == expect
                assert got in stable


def test_criterion_04_atom_unions_are_clopen(family_pool):
    with criterion(4, "unions of atoms are clopen; separating families give discrete spaces"):
        for fam in family_pool:
            space = ultra_topology(fam)
            carrier = fam.carrier
            blocks = [carrier.mask_of(a) for a in atoms(fam).atoms]
            for bits in range(1 << len(blocks)):
                union = 0
                for i, b in enumerate(blocks):
                    if (bits >> i) & 1:
                        union |= b
                assert union in space.closed_masks
                assert union in space.open_masks
            if all(bin(b).count("1") == 1 for b in blocks):
                assert len(space.closed_masks) == 1 << len(carrier)


def test_criterion_05_limit_sets_ignore_the_base_set():
    with criterion(5, "limit sets are invariant under restricting or extending the base"):
        rng = random.Random(SEED + 5)
        for _ in range(20):
            fam = random_family(rng, 6, 4)
            carrier = fam.carrier
            n = len(carrier)
            for z_mask in range(1, 1 << n):
                z_labels = carrier.labels_of(z_mask)
                t_mask = z_mask
                while True:
                    if t_mask:
                        t_labels = carrier.labels_of(t_mask)
                        for y in t_labels:
                            small = PrincipalUltrafilter.at(y, t_labels)
                            big = extend_ultrafilter(small, z_labels)
                            assert restrict_ultrafilter(big, t_labels) == small
                            assert limit_set(fam, small) == limit_set(fam, big)
                    if t_mask == 0:
                        break
                    t_mask = (t_mask - 1) & z_mask


def test_criterion_06_spectra_of_modular_rings():
    with criterion(6, "spectrum sizes, discrete patches, and ultrafilter primes are exact"):
        for n in range(2, 65):
            ring = zmod(n)
            space = spec_space(ring)
            assert len(space.carrier) == omega(n)
            patch = patch_topology(space)
            assert len(patch.closed_masks) == 1 << len(space.carrier)
        for ring in ring_pool():
            spectrum = _spectrum(ring)
            labels = tuple(label for label, _ in spectrum)
            for label, members in spectrum:
                u = PrincipalUltrafilter.at(label, labels)
                assert ultrafilter_prime(ring, u).members == members


def test_criterion_07_overrings_of_the_small_field_tower():
    with criterion(7, "the two-element field inside the sixteen-element one has three overrings"):
        emb = RingEmbedding.of(gf(2), gf(16), {"0": "0", "1": "1"})
        rings = intermediate_rings(emb)
        assert [r.size for r in rings] == [2, 4, 16]
        space = overring_space(emb)
        assert is_spectral(space).spectral
        top = rings[2].label()
        assert space.closure({top}) == frozenset(space.carrier.points)


def test_criterion_08_integral_collapse():
    with criterion(8, "every intermediate ring certifies every ambient element integral"):
        extensions = [
            RingEmbedding.of(gf(2), gf(16), {"0": "0", "1": "1"}),
            RingEmbedding.of(gf(2), gf(8), {"0": "0", "1": "1"}),
            RingEmbedding.of(gf(2), gf(4), {"0": "0", "1": "1"}),
            RingEmbedding.of(gf(3), gf(9), {"0": "0", "1": "1", "2": "2"}),
            RingEmbedding.of(
                zmod(2),
                product(zmod(2), zmod(2)),
                {"0": "(0,0)", "1": "(1,1)"},
            ),
            RingEmbedding.of(
                zmod(3),
                product(zmod(3), zmod(3)),
                {"0": "(0,0)", "1": "(1,1)", "2": "(2,2)"},
            ),
            RingEmbedding.of(
                zmod(4),
                product(zmod(4), zmod(2)),
                {str(i): f"({i},{i % 2})" for i in range(4)},
            ),
        ]
        for emb in extensions:
            ambient = emb.target
            assert ambient.size <= 16
            for ring in intermediate_rings(emb):
                report = is_integrally_closed_in(ring)
                assert report.holds
                assert len(report.certificates) == ambient.size
                for cert in report.certificates:
                    assert cert.coeffs[-1] == ambient.one
                    assert all(c in ring.members for c in cert.coeffs)
                    acc = ambient.zero
                    b = ambient.idx(cert.element)
                    for c in reversed(cert.coeffs):
                        acc = ambient.add[ambient.mul[acc][b]][c]
                    assert acc == ambient.zero


def test_criterion_09_symbolic_integer_spectrum():
    with criterion(9, "closure and intersection laws of the symbolic integer spectrum"):
        closed_points = ZSubsetDescriptor.max_points()
        assert patch_closure(closed_points) == ZSubsetDescriptor.whole()
        assert not is_ultra_closed(closed_points)
        finite_sets = [frozenset(s) for s in itertools.chain.from_iterable(
            itertools.combinations([2, 3, 5, 7, 11], r) for r in range(6)
        )] + [frozenset({2, 999983})]
        for primes in finite_sets:
            y = ZSubsetDescriptor.finite(primes)
            assert patch_closure(y) == y
            assert is_ultra_closed(y)
        res = z_fip_check([v_of(6), v_of(10), v_of(15)])
        assert not res.has_fip
        assert res.witness is not None and len(res.witness) == 3
        opens = [d_of(p) for p in range(2, 101) if all(p % d for d in range(2, p))]
        res = z_fip_check(opens)
        assert res.has_fip
        assert res.intersection.contains_generic


def test_criterion_10_order_duality_round_trip():
    with criterion(10, "finite spaces and posets convert back and forth exactly"):
        # every labeled poset on up to four points
        counts = {}
        for n in range(1, 5):
            labels = [f"p{i}" for i in range(n)]
            pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
            found = 0
            for bits in range(1 << len(pairs)):
                rel = {pairs[k] for k in range(len(pairs)) if (bits >> k) & 1}
                if any((j, i) in rel for i, j in rel):
                    continue
                if any(
                    (i, l) not in rel
                    for i, j in rel
                    for k, l in rel
                    if j == k and i != l
                ):
                    continue
                found += 1
                poset = Poset(
                    Carrier.of(labels),
                    frozenset(
                        {(labels[i], labels[j]) for i, j in rel}
                        | {(p, p) for p in labels}
                    ),
                )
                assert specialization_order(poset_to_space(poset)) == poset
            counts[n] = found
        assert counts == {1: 1, 2: 3, 3: 19, 4: 219}
        # five points: one representative per isomorphism class, via relations
        # compatible with a fixed linear order (every poset has one)
        labels5 = [f"p{i}" for i in range(5)]
        pairs5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        for bits in range(1 << len(pairs5)):
            rel = {pairs5[k] for k in range(len(pairs5)) if (bits >> k) & 1}
            if any(
                (i, l) not in rel
                for i, j in rel
                for k, l in rel
                if j == k
            ):
                continue
            poset = Poset(
                Carrier.of(labels5),
                frozenset(
                    {(labels5[i], labels5[j]) for i, j in rel}
                    | {(p, p) for p in labels5}
                ),
            )
            assert specialization_order(poset_to_space(poset)) == poset
        # larger random posets
        rng = random.Random(SEED + 10)
        for _ in range(200):
            n = rng.randint(6, 8)
            labels = [f"p{i}" for i in range(n)]
            order = labels[:]
            rng.shuffle(order)
            gen_pairs = [
                (order[i], order[j])
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.3
            ]
            poset = Poset.from_pairs(labels, gen_pairs)
            assert specialization_order(poset_to_space(poset)) == poset


def random_homs(rng, count):
    """Structure-preserving maps among the test rings, drawn with a seed."""
    pool = []
    for n in range(2, 65):
        for d in range(2, n + 1):
            if n % d == 0:
                pool.append(
                    RingHom.of(
                        zmod(n), zmod(d), {str(i): str(i % d) for i in range(n)}
                    )
                )
    for m, k in ((2, 3), (3, 4), (4, 9), (2, 7), (5, 6), (8, 7)):
        target = product(zmod(m), zmod(k))
        pool.append(
            RingHom.of(
                zmod(m * k),
                target,
                {str(i): f"({i % m},{i % k})" for i in range(m * k)},
            )
        )
        pool.append(
            RingHom.of(
                target, zmod(m), {f"({a},{b})": str(a) for a in range(m) for b in range(k)}
            )
        )
    for q, p in ((4, 2), (8, 2), (9, 3), (16, 2)):
        f = gf(q)
        frob = {f.elements[x]: f.elements[pow_element(f, x, p)] for x in range(q)}
        pool.append(RingHom.of(f, f, frob))
    return rng.sample(pool, count)


def pow_element(ring, x, e):
    acc = ring.one
    for _ in range(e):
        acc = ring.mul[acc][x]
    return acc


def test_criterion_11_spectrum_maps_are_continuous():
    with criterion(11, "contraction maps are continuous for both topologies"):
        rng = random.Random(SEED + 11)
        for hom in random_homs(rng, 20):
            mapping = spec_functor(hom)
            assert is_continuous(
                mapping, spec_space(hom.target), spec_space(hom.source)
            )
            rep = ultra_transport(
                mapping,
                principal_open_family(hom.target),
                principal_open_family(hom.source),
            )
            assert rep.preimages_in_family
            assert rep.continuous is True


def test_criterion_12_generic_closures_are_stable_sets():
    with criterion(12, "generic closures land in the topology induced by the subbasis"):
        rng = random.Random(SEED + 12)
        for _ in range(100):
            fam = random_family(rng, 7, 4)
            space = from_subbasis(fam)
            stable_space = ultra_topology(fam)
            carrier = fam.carrier
            for y_mask in range(1 << len(carrier)):
                closure = generic_closure(space, carrier.labels_of(y_mask))
                assert stable_space.is_closed(closure)
