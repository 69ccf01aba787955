"""Single-pass streaming triangle estimators.

Two methods consume a randomly ordered stream of undirected edges exactly
once, under a bounded memory window:

* ``nes_run`` (naive edge sampling) keeps each stream edge in a subgraph
  with probability ``p`` and counts the subgraph wedges that later stream
  edges close.  A triangle is identified with probability ``p**2``, so the
  closed-wedge count scales by ``1 / p**2``.

* ``pes_run`` (priority edge sampling) keeps the same ``p``-sampled
  subgraph but additionally maintains a fixed-capacity reservoir of
  *candidate wedges*: a candidate forms whenever a stream edge shares an
  endpoint with a subgraph edge.  The reservoir's replacement rule keeps
  every candidate seen so far with probability ``q = capacity / candidates``,
  which is typically much larger than ``p``, so triangles are identified
  with probability ``p * q`` and the closed count scales by ``1 / (p * q)``.

Estimated relative standard error for either method is
``triangles_observed ** -0.5`` (unavailable when no triangle was seen).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .edgelist import Edge, EdgeList, NodeId
from .randomness import RandomSource


@dataclass
class SampledSubgraph:
    """Hash-indexed adjacency over the stream edges accepted so far."""

    edges: set[Edge] = field(default_factory=set)
    incidence: dict[NodeId, set[NodeId]] = field(default_factory=dict)

    def insert(self, edge: Edge) -> None:
        self.edges.add(edge)
        u, v = edge
        self.incidence.setdefault(u, set()).add(v)
        self.incidence.setdefault(v, set()).add(u)

    def neighbors(self, node: NodeId) -> set[NodeId]:
        """Sampled-edge neighbors of ``node``; empty set when unseen.

        Returns the live internal set for known nodes; treat it as read-only.
        """
        return self.incidence.get(node, set())

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.edges


@dataclass(slots=True)
class Wedge:
    """A length-two path through ``center``; outer endpoints are unordered.

    Canonical form keeps ``a <= b`` so (a, c, b) and (b, c, a) compare equal.
    ``closed`` flips False -> True at most once, when the edge joining the
    outer endpoints arrives while the wedge sits in the pool.
    """

    a: NodeId
    center: NodeId
    b: NodeId
    closed: bool = False

    def __post_init__(self) -> None:
        if self.a > self.b:
            self.a, self.b = self.b, self.a

    @property
    def outer_pair(self) -> tuple[NodeId, NodeId]:
        return (self.a, self.b)

    def key(self) -> tuple[NodeId, NodeId, NodeId]:
        return (self.a, self.center, self.b)


class WedgePool:
    """Fixed-capacity uniform reservoir of candidate wedges.

    While the pool has room every candidate is appended.  Once full, the
    t-th candidate replaces a uniformly random slot with probability
    ``capacity / t``; by the standard reservoir induction every candidate
    seen so far then sits in the pool with exactly that probability.
    Evicting a closed wedge decrements the closed count, which keeps
    ``closed_count`` equal to the number of closed wedges in the slots.
    """

    __slots__ = ("capacity", "slots", "candidate_count", "closed_count", "_by_pair")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"pool capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.slots: list[Wedge] = []
        self.candidate_count = 0
        self.closed_count = 0
        # Outer endpoint pair -> slot indices; replacement is in-place so
        # indices stay stable.
        self._by_pair: dict[tuple[NodeId, NodeId], set[int]] = {}

    def offer(self, outer1: NodeId, center: NodeId, outer2: NodeId, rng: RandomSource) -> float | None:
        """Account one candidate wedge and maybe admit it.

        Returns the replacement probability used, or None while the pool is
        still filling.
        """
        self.candidate_count += 1
        slots = self.slots
        if len(slots) < self.capacity:
            wedge = Wedge(outer1, center, outer2)
            self._by_pair.setdefault(wedge.outer_pair, set()).add(len(slots))
            slots.append(wedge)
            return None
        q = self.capacity / self.candidate_count
        if rng.uniform() < q:
            index = rng.randrange(self.capacity)
            victim = slots[index]
            if victim.closed:
                self.closed_count -= 1
            victim_indices = self._by_pair[victim.outer_pair]
            victim_indices.discard(index)
            if not victim_indices:
                del self._by_pair[victim.outer_pair]
            wedge = Wedge(outer1, center, outer2)
            slots[index] = wedge
            self._by_pair.setdefault(wedge.outer_pair, set()).add(index)
        return q

    def close_matching(self, pair: tuple[NodeId, NodeId]) -> int:
        """Mark every open pool wedge whose outer endpoints equal ``pair`` closed."""
        indices = self._by_pair.get(pair)
        if not indices:
            return 0
        newly_closed = 0
        for index in indices:
            wedge = self.slots[index]
            if not wedge.closed:
                wedge.closed = True
                newly_closed += 1
        self.closed_count += newly_closed
        return newly_closed

    def retention_probability(self) -> float:
        """Probability that any given candidate is currently retained.

        ``capacity / candidate_count`` once the pool has overflowed, clamped
        to 1 while every candidate still fits (retention is then certain).
        """
        if self.candidate_count <= self.capacity:
            return 1.0
        return self.capacity / self.candidate_count

    def wedge_keys(self) -> list[tuple[NodeId, NodeId, NodeId]]:
        return [wedge.key() for wedge in self.slots]

    def audit(self) -> None:
        """Debug walk verifying the bookkeeping invariants; raises on mismatch."""
        closed = sum(1 for wedge in self.slots if wedge.closed)
        if closed != self.closed_count:
            raise RuntimeError(
                f"closed-count drift: counter {self.closed_count}, slots hold {closed}"
            )
        expected_size = min(self.capacity, self.candidate_count)
        if len(self.slots) != expected_size:
            raise RuntimeError(
                f"occupancy drift: {len(self.slots)} slots, expected {expected_size}"
            )
        indexed = sorted(
            index for indices in self._by_pair.values() for index in indices
        )
        if indexed != list(range(len(self.slots))):
            raise RuntimeError("pair index out of sync with slots")
        for pair, indices in self._by_pair.items():
            for index in indices:
                if self.slots[index].outer_pair != pair:
                    raise RuntimeError(f"slot {index} filed under wrong pair {pair}")

    def __len__(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class EstimateResult:
    """One estimator run.

    ``q``, ``candidate_wedges`` and ``pool_size`` are None for the naive
    method, which has no reservoir.  ``sample_size`` counts subgraph edges
    plus final pool occupancy.  ``estimated_rse`` is None when no triangle
    was observed.
    """

    method: str
    estimate: float
    p: float
    q: float | None
    triangles_observed: int
    candidate_wedges: int | None
    subgraph_edges: int
    pool_size: int | None
    sample_size: int
    estimated_rse: float | None


def _check_probability(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"sampling probability p must be in (0, 1], got {p}")


def _rse_or_none(triangles: int) -> float | None:
    return triangles ** -0.5 if triangles > 0 else None


def nes_run(stream: EdgeList, p: float, rng: RandomSource) -> EstimateResult:
    """Naive edge sampling over one pass of ``stream``.

    Per edge: admit it to the subgraph with probability ``p``, then count
    the subgraph wedges it closes (common sampled neighbors of its two
    endpoints).  An edge never closes a wedge it belongs to, so the order of
    the two steps does not affect the count.
    """
    _check_probability(p)
    subgraph = SampledSubgraph()
    neighbors = subgraph.neighbors
    uniform = rng.uniform
    closed = 0
    for edge in stream.edges:
        if uniform() < p:
            subgraph.insert(edge)
        x, y = edge
        closed += len(neighbors(x) & neighbors(y))
    return EstimateResult(
        method="nes",
        estimate=closed / (p * p),
        p=p,
        q=None,
        triangles_observed=closed,
        candidate_wedges=None,
        subgraph_edges=len(subgraph),
        pool_size=None,
        sample_size=len(subgraph),
        estimated_rse=_rse_or_none(closed),
    )


StepHook = Callable[[int, Edge, SampledSubgraph, WedgePool], None]


def pes_run(
    stream: EdgeList,
    p: float,
    pool_size: int,
    rng: RandomSource,
    *,
    audit: bool = False,
    on_step: StepHook | None = None,
) -> EstimateResult:
    """Priority edge sampling over one pass of ``stream``.

    Per edge, in order: (1) admit it to the subgraph with probability ``p``;
    (2) close any pool wedge whose outer endpoints it joins; (3) form one
    candidate wedge with every subgraph edge sharing exactly one endpoint
    and offer each to the reservoir.  Candidate formation consults the
    subgraph regardless of whether the current edge itself was admitted,
    and the edge never pairs with itself.

    The final estimate divides the closed count by ``p * q`` where ``q`` is
    the pool's final retention probability.  ``audit=True`` re-verifies the
    pool bookkeeping after every edge; ``on_step`` is called after each edge
    with (1-based step, edge, subgraph, pool), for trace tests.
    """
    _check_probability(p)
    subgraph = SampledSubgraph()
    pool = WedgePool(pool_size)
    neighbors = subgraph.neighbors
    uniform = rng.uniform
    offer = pool.offer
    close_matching = pool.close_matching
    for step, edge in enumerate(stream.edges, start=1):
        if uniform() < p:
            subgraph.insert(edge)
        close_matching(edge)
        x, y = edge
        for c in sorted(neighbors(x)):
            if c != y:
                offer(y, x, c, rng)
        for c in sorted(neighbors(y)):
            if c != x:
                offer(x, y, c, rng)
        if audit:
            pool.audit()
        if on_step is not None:
            on_step(step, edge, subgraph, pool)
    q = pool.retention_probability()
    triangles = pool.closed_count
    return EstimateResult(
        method="pes",
        estimate=triangles / (p * q),
        p=p,
        q=q,
        triangles_observed=triangles,
        candidate_wedges=pool.candidate_count,
        subgraph_edges=len(subgraph),
        pool_size=len(pool),
        sample_size=len(subgraph) + len(pool),
        estimated_rse=_rse_or_none(triangles),
    )


def neighbors_in_subgraph(subgraph: SampledSubgraph, node: NodeId) -> set[NodeId]:
    """Functional alias for :meth:`SampledSubgraph.neighbors`."""
    return subgraph.neighbors(node)
