"""Deterministic random posets shared by the poset tests and the acceptance suite."""

import random

from eulerian import InconsistentPosetError, bposet_from_covers, poset_from_covers


def random_posets(kind: str, count: int, max_n: int, seed: int = 0, density: float = 0.35):
    """``count`` posets of type ``kind`` on 1..max_n elements, reproducible from ``seed``."""
    rng = random.Random(f"{kind}:{seed}")
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        if kind == "A":
            pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        else:
            labels = [v for i in range(1, n + 1) for v in (i, -i)]
            pairs = [(i, j) for i in labels for j in labels if i != j]
        covers = [p for p in pairs if rng.random() < density / max(1, n - 1)]
        try:
            P = poset_from_covers(n, covers) if kind == "A" else bposet_from_covers(n, covers)
        except InconsistentPosetError:
            continue
        out.append(P)
    return out


def extension_tags(P, values, k, flavor, exts, shifted=False):
    """The linear extensions pi of P for which ``values`` is a chain(pi)-partition."""
    from eulerian import chain_poset
    from eulerian.poset_engine import is_partition
    return [pi for pi in exts if is_partition(chain_poset(pi), values, k, flavor, shifted)]
