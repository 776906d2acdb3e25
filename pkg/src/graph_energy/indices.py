"""Randić index, subgraph Randić index, matching number and closed forms."""
from __future__ import annotations

import math

from .errors import DomainError
from .graph import EdgeSubset, Graph

MATCHING_MAX_N = 64


def randic(g: Graph) -> float:
    """R(G) = sum over edges of 1 / sqrt(deg(i) deg(j))."""
    deg = g.degrees
    return math.fsum(1.0 / math.sqrt(deg[u] * deg[v]) for u, v in g.edges)


def randic_subgraph(g: Graph, h: EdgeSubset) -> float:
    """Randić index of the spanning subgraph H, with degrees taken inside H."""
    return randic(h.as_graph())


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """An exact maximum matching by branch and bound.

    Vertices are processed in index order; the lowest free vertex is either
    matched to one of its free neighbours or left unmatched. A branch is cut
    when the matched count plus half the remaining coverable vertices cannot
    beat the incumbent, which starts from a greedy matching.
    """
    if g.n > MATCHING_MAX_N:
        raise DomainError(f"matching_number supports n <= {MATCHING_MAX_N}, got {g.n}")
    nbr_bits = [0] * g.n
    for u, v in g.edges:
        nbr_bits[u] |= 1 << v
        nbr_bits[v] |= 1 << u

    best: list[tuple[int, int]] = []
    free = 0
    for u, v in g.edges:
        if not (free >> u & 1 or free >> v & 1):
            free |= (1 << u) | (1 << v)
            best.append((u, v))

    def coverable(avail):
        # vertices that are free and still have a free neighbour
        count, rest = 0, avail
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            if nbr_bits[x] & avail:
                count += 1
            rest ^= low
        return count

    def search(avail, chosen):
        nonlocal best
        if len(chosen) + coverable(avail) // 2 <= len(best):
            return
        # lowest free vertex that can still be matched
        rest = avail
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            if nbr_bits[x] & avail:
                break
            rest ^= low
        else:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        partners = nbr_bits[x] & avail
        while partners:
            lowp = partners & -partners
            y = lowp.bit_length() - 1
            chosen.append((x, y))
            search(avail & ~(1 << x) & ~lowp, chosen)
            chosen.pop()
            partners ^= lowp
        search(avail & ~(1 << x), chosen)

    search((1 << g.n) - 1, [])
    return sorted(best)


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def _path_randic(n):
    if n == 1:
        return 0.0
    if n == 2:
        return 1.0
    return (n - 3 + 2 * math.sqrt(2)) / 2


def _path_energy(n):
    return math.fsum(abs(2 * math.cos(k * math.pi / (n + 1))) for k in range(1, n + 1))


def _cycle_energy(n):
    return math.fsum(abs(2 * math.cos(2 * math.pi * k / n)) for k in range(n))


_CLOSED_FORMS = {
    ("path", "randic"): _path_randic,
    ("path", "energy"): _path_energy,
    ("cycle", "randic"): lambda n: n / 2,
    ("cycle", "energy"): _cycle_energy,
    ("star", "randic"): lambda n: math.sqrt(n - 1),
    ("star", "energy"): lambda n: 2 * math.sqrt(n - 1),
    ("complete_bipartite", "randic"): lambda a, b: math.sqrt(a * b),
    ("complete_bipartite", "energy"): lambda a, b: 2 * math.sqrt(a * b),
    ("complete", "randic"): lambda n: n / 2 if n > 1 else 0.0,
    ("complete", "energy"): lambda n: 2.0 * (n - 1),
    ("dandelion", "randic"): lambda n: (math.sqrt(n) + 2 * n) / math.sqrt(3),
    ("dandelion", "energy"): lambda n: 2 * (n - 1) * math.sqrt(2) + 2 * math.sqrt(n + 2),
    # (n - 1) copies of P3 plus one S4 inside D_n
    ("dandelion", "subgraph_randic"): lambda n: (n - 1) * math.sqrt(2) + math.sqrt(3),
    ("dandelion", "weight_bound"): lambda n: 2 * math.sqrt(2 * n * n + n),
    ("path", "weight_bound"): lambda n: math.sqrt(n * n - 1) if n % 2 else float(n),
}


def closed_form(family: str, quantity: str, *params: int) -> float:
    """Exact value of ``quantity`` for a named family, used as a test oracle.

    >>> round(closed_form("star", "randic", 4), 12) == round(3 ** 0.5, 12)
    True
    """
    try:
        fn = _CLOSED_FORMS[(family, quantity)]
    except KeyError:
        raise DomainError(f"no closed form for {quantity!r} of family {family!r}") from None
    if any(p < 1 for p in params):
        raise DomainError(f"family parameters must be positive, got {params}")
    return float(fn(*params))
