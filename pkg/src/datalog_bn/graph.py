"""Signed directed graphs: cycles and their parities, SCCs, feedback vertex
sets, delocalizing triples and the sign bipartition of strongly connected
graphs without odd cycles.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .errors import MAX_CYCLES, BipartitionError, CapExceeded

log = logging.getLogger(__name__)

POS = "+"
NEG = "-"
SIGNS = (POS, NEG)

# Thresholds above which exact minimum feedback vertex sets fall back to greedy.
EXACT_FVS_MAX_CYCLES = 10**4
EXACT_FVS_MAX_VERTICES = 24


@dataclass(frozen=True)
class SignedDigraph:
    """Vertices in canonical order plus a set of ``(source, target, sign)`` arcs.

    Parallel arcs are allowed only with distinct signs (the arc set makes
    this automatic); self-arcs are allowed.
    """

    vertices: tuple
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for u, v, s in self.arcs:
            if u not in known or v not in known:
                raise ValueError(f"arc ({u}, {v}) references an unknown vertex")
            if s not in SIGNS:
                raise ValueError(f"bad sign {s!r}")

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def sorted_arcs(self) -> list:
        idx = self.index
        return sorted(self.arcs, key=lambda a: (idx[a[0]], idx[a[1]], a[2]))

    def signs(self, u, v) -> tuple:
        return tuple(s for s in SIGNS if (u, v, s) in self.arcs)

    def in_pos(self, v) -> set:
        return {a for a, b, s in self.arcs if b == v and s == POS}

    def in_neg(self, v) -> set:
        return {a for a, b, s in self.arcs if b == v and s == NEG}

    def is_subgraph_of(self, other: "SignedDigraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.arcs <= other.arcs

    def to_networkx(self) -> nx.DiGraph:
        """Unsigned simple digraph on vertex indices (parallel arcs merged)."""
        dg = nx.DiGraph()
        dg.add_nodes_from(range(len(self.vertices)))
        idx = self.index
        dg.add_edges_from((idx[u], idx[v]) for u, v, _ in self.arcs)
        return dg


@dataclass(frozen=True)
class Cycle:
    """Closed simple path given as its arc sequence, starting at the
    canonically least vertex."""

    arcs: tuple

    @property
    def vertices(self) -> tuple:
        return tuple(a[0] for a in self.arcs)

    @property
    def negatives(self) -> int:
        return sum(1 for a in self.arcs if a[2] == NEG)

    @property
    def parity(self) -> str:
        return "odd" if self.negatives % 2 else "even"

    @property
    def is_even(self) -> bool:
        return self.parity == "even"

    def __len__(self):
        return len(self.arcs)

    def __str__(self):
        parts = [str(self.arcs[0][0])]
        for u, v, s in self.arcs:
            parts.append(f" {s}> {v}")
        return "".join(parts)


def enumerate_simple_cycles(g: SignedDigraph, cap: int = MAX_CYCLES) -> list[Cycle]:
    """All simple cycles of ``g``; every sign choice over parallel arcs is a
    distinct cycle.  Ordered by length, then vertex positions, then signs."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    return list(_cycles(g, cap))


@lru_cache(maxsize=512)
def _cycles(g: SignedDigraph, cap: int) -> tuple:
    idx = g.index
    verts = g.vertices
    signs = defaultdict(list)
    for u, v, s in g.sorted_arcs():
        signs[idx[u], idx[v]].append(s)

    found = []
    for circuit in nx.simple_cycles(g.to_networkx()):
        k = circuit.index(min(circuit))
        circuit = circuit[k:] + circuit[:k]
        steps = [(circuit[i], circuit[(i + 1) % len(circuit)]) for i in range(len(circuit))]
        for choice in product(*(signs[st] for st in steps)):
            if len(found) >= cap:
                raise CapExceeded("simple cycles", len(found) + 1, cap)
            found.append((tuple(circuit), choice))
    found.sort(key=lambda c: (len(c[0]), c[0], c[1]))
    out = []
    for circ, choice in found:
        k = len(circ)
        out.append(Cycle(tuple((verts[circ[i]], verts[circ[(i + 1) % k]], choice[i])
                               for i in range(k))))
    return tuple(out)


def cycles_of_parity(g: SignedDigraph, parity: str, cap: int = MAX_CYCLES) -> list[Cycle]:
    return [c for c in _cycles(g, cap) if c.parity == parity]


def has_odd_cycle(g: SignedDigraph, cap: int = MAX_CYCLES) -> bool:
    return any(c.parity == "odd" for c in _cycles(g, cap))


def has_even_cycle(g: SignedDigraph, cap: int = MAX_CYCLES) -> bool:
    return any(c.parity == "even" for c in _cycles(g, cap))


def has_positive_cycle(g: SignedDigraph) -> bool:
    """True iff some cycle uses only positive arcs (checked via SCCs)."""
    idx = g.index
    succ = [[] for _ in g.vertices]
    for u, v, s in g.arcs:
        if s == POS:
            if u == v:
                return True
            succ[idx[u]].append(idx[v])
    return any(len(c) > 1 for c in strongly_connected_components(len(succ), succ))


def hitting_set(g: SignedDigraph, cycles: Iterable[Cycle], mode: str = "exact") -> frozenset:
    """Vertex set meeting every cycle in ``cycles``.

    ``exact`` returns a minimum-cardinality set (the first one in canonical
    combination order) unless the instance exceeds the exact thresholds, in
    which case it falls back to ``greedy``.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    idx = g.index
    n = len(g.vertices)
    masks = sorted({sum(1 << idx[v] for v in c.vertices) for c in cycles})
    if not masks:
        return frozenset()
    if mode == "exact" and (len(masks) > EXACT_FVS_MAX_CYCLES or n > EXACT_FVS_MAX_VERTICES):
        log.info("exact feedback vertex set too large (%d cycles, %d vertices); using greedy",
                 len(masks), n)
        mode = "greedy"
    if mode == "exact":
        chosen = _exact_hitting(masks, n)
    else:
        chosen = _greedy_hitting(masks, n)
    return frozenset(g.vertices[i] for i in chosen)


def _exact_hitting(masks: Sequence[int], n: int) -> tuple:
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            m = 0
            for i in combo:
                m |= 1 << i
            if all(cm & m for cm in masks):
                return combo
    raise AssertionError("the full vertex set always hits every cycle")


def _greedy_hitting(masks: Sequence[int], n: int) -> tuple:
    open_ = list(masks)
    chosen = []
    while open_:
        counts = [sum(1 for m in open_ if m >> i & 1) for i in range(n)]
        best = max(range(n), key=lambda i: (counts[i], -i))
        chosen.append(best)
        open_ = [m for m in open_ if not m >> best & 1]
    # drop vertices made redundant by later picks
    for i in list(reversed(chosen)):
        rest = [j for j in chosen if j != i]
        rm = sum(1 << j for j in rest)
        if all(m & rm for m in masks):
            chosen = rest
    return tuple(sorted(chosen))


def even_feedback_vertex_set(g: SignedDigraph, mode: str = "exact",
                             cap: int = MAX_CYCLES) -> frozenset:
    return hitting_set(g, cycles_of_parity(g, "even", cap), mode)


def odd_feedback_vertex_set(g: SignedDigraph, mode: str = "exact",
                            cap: int = MAX_CYCLES) -> frozenset:
    return hitting_set(g, cycles_of_parity(g, "odd", cap), mode)


def delocalizing_triples(g: SignedDigraph, c: Cycle) -> list[tuple]:
    """``(u, v1, v2, internal)`` with ``u +> v1`` and ``u -> v2`` arcs of ``g``
    outside the cycle, ``v1 != v2`` both on the cycle."""
    on_cycle = c.vertices
    cycle_arcs = set(c.arcs)
    idx = g.index
    out = []
    for u in g.vertices:
        for v1 in on_cycle:
            if (u, v1, POS) not in g.arcs or (u, v1, POS) in cycle_arcs:
                continue
            for v2 in on_cycle:
                if v2 == v1 or (u, v2, NEG) not in g.arcs or (u, v2, NEG) in cycle_arcs:
                    continue
                out.append((u, v1, v2, u in on_cycle))
    out.sort(key=lambda t: (idx[t[0]], idx[t[1]], idx[t[2]]))
    return out


def has_internal_delocalizing_triple(g: SignedDigraph, c: Cycle) -> bool:
    return any(t[3] for t in delocalizing_triples(g, c))


def delocalizing_free_even_cycles(g: SignedDigraph, cap: int = MAX_CYCLES) -> list[Cycle]:
    return [c for c in cycles_of_parity(g, "even", cap) if not delocalizing_triples(g, c)]


def is_sign_definite(g: SignedDigraph) -> bool:
    return not any((u, v, NEG) in g.arcs for u, v, s in g.arcs if s == POS)


def is_strongly_connected(g: SignedDigraph) -> bool:
    if len(g.vertices) <= 1:
        return True
    return nx.is_strongly_connected(g.to_networkx())


def min_in_degree(g: SignedDigraph) -> int:
    if not g.vertices:
        return 0
    deg = dict.fromkeys(g.vertices, 0)
    for _, v, _ in g.arcs:
        deg[v] += 1
    return min(deg.values())


def positive_negative_bipartition(g: SignedDigraph) -> tuple[frozenset, frozenset]:
    """Split the vertices so that positive arcs stay inside a class and
    negative arcs cross; returns ``(S_plus, S_minus)``.

    Labels are propagated along arcs in both directions starting from the
    canonically least vertex, which is put in ``S_minus``.  Raises
    ``BipartitionError`` when the labelling is inconsistent, i.e. some
    cycle of the underlying undirected graph has an odd number of negative arcs.
    """
    if not g.vertices:
        return frozenset(), frozenset()
    nbrs = defaultdict(list)
    for u, v, s in g.arcs:
        flip = s == NEG
        nbrs[u].append((v, flip))
        nbrs[v].append((u, flip))
    label = {}
    for root in g.vertices:
        if root in label:
            continue
        label[root] = False  # False = S_minus
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, flip in nbrs[u]:
                want = label[u] ^ flip
                if v not in label:
                    label[v] = want
                    queue.append(v)
                elif label[v] != want:
                    raise BipartitionError(f"inconsistent parity labelling at {u} -> {v}")
    plus = frozenset(v for v in g.vertices if label[v])
    return plus, frozenset(g.vertices) - plus


def strongly_connected_components(n: int, succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Iterative Tarjan over an integer adjacency list."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def terminal_components(n: int, succ: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Terminal SCCs (attractors), each sorted, listed in order of least member."""
    out = []
    for comp in strongly_connected_components(n, succ):
        members = set(comp)
        if all(w in members for v in comp for w in succ[v]):
            out.append(tuple(comp))
    out.sort()
    return out


def vertex_subgraph(g: SignedDigraph, keep: Iterable[Hashable]) -> SignedDigraph:
    keep = set(keep)
    return SignedDigraph(tuple(v for v in g.vertices if v in keep),
                         frozenset(a for a in g.arcs if a[0] in keep and a[1] in keep))
