import random

from ultratop import SetFamily


def random_family(rng: random.Random, max_points: int = 8, max_members: int = 5) -> SetFamily:
    n = rng.randint(1, max_points)
    labels = [f"x{i}" for i in range(n)]
    k = rng.randint(1, max_members)
    subsets = [
        frozenset(lab for lab in labels if rng.random() < 0.5) for _ in range(k)
    ]
    return SetFamily.of(labels, subsets)


def brute_force_stable_masks(family: SetFamily) -> set[int]:
    """Oracle: enumerate every subset and test stability from the definition.

    A subset Y is stable when, for each of its points y, every carrier point
    whose membership pattern matches y across the family also lies in Y.
    """
    carrier = family.carrier
    n = len(carrier)
    signatures = [
        tuple((m >> i) & 1 for m in family.masks) for i in range(n)
    ]
    stable = set()
    for y_mask in range(1 << n):
        ok = True
        for y in range(n):
            if not (y_mask >> y) & 1:
                continue
            for x in range(n):
                if signatures[x] == signatures[y] and not (y_mask >> x) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            stable.add(y_mask)
    return stable
