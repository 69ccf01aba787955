from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tristream import EdgeList, build_adjacency, compute_stats, make_edge

# 11-node toy graph with two hubs and three triangles; also committed as
# data/toy_graph.txt for CLI runs.
TOY_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (1, 6), (6, 7),
    (6, 8), (6, 9), (8, 9), (6, 10), (9, 10), (6, 11),
)

TOY_TEXT = "".join(f"{u} {v}\n" for u, v in TOY_EDGES)

# A stream order of the toy graph with a fully scripted run: p=0.2, pool
# capacity 2.  Accept/reject decisions and eviction slots below replay it
# deterministically to estimate=20 with 8 candidates and final q=1/4.
TOY_REPLAY_STREAM = (
    (1, 4), (6, 8), (6, 7), (1, 6), (6, 11), (2, 3), (9, 10),
    (1, 2), (6, 10), (1, 5), (6, 9), (1, 3), (8, 9),
)

# Interleaved decision script: one accept/reject per stream edge for the
# subgraph, plus one per candidate offered to a full pool.
TOY_REPLAY_DECISIONS = (
    False,          # edge (1,4): not kept
    True,           # edge (6,8): kept
    False,          # edge (6,7): not kept; candidate (7,6,8) fills pool
    False,          # edge (1,6): not kept; candidate (1,6,8) fills pool
    False, False,   # edge (6,11): not kept; candidate (8,6,11) not admitted
    False,          # edge (2,3)
    False,          # edge (9,10)
    True,           # edge (1,2): kept
    False, True,    # edge (6,10): candidate (8,6,10) replaces a slot
    False, False,   # edge (1,5): candidate (2,1,5) not admitted
    False, True,    # edge (6,9): candidate (9,6,8) replaces a slot
    False, True,    # edge (1,3): candidate (2,1,3) replaces a slot
    False, False,   # edge (8,9): closes (9,6,8); candidate (6,8,9) not admitted
)

# Slots evicted by the three replacements above, in order.
TOY_REPLAY_SLOT_PICKS = (0, 1, 0)


@pytest.fixture(scope="session")
def toy_edges() -> EdgeList:
    return EdgeList(tuple(make_edge(u, v) for u, v in TOY_EDGES))


@pytest.fixture(scope="session")
def toy_stats(toy_edges):
    return compute_stats(build_adjacency(toy_edges))


@pytest.fixture(scope="session")
def toy_replay_stream() -> EdgeList:
    return EdgeList(tuple(make_edge(u, v) for u, v in TOY_REPLAY_STREAM))


@pytest.fixture()
def toy_file(tmp_path) -> Path:
    path = tmp_path / "toy.txt"
    path.write_text(TOY_TEXT)
    return path
