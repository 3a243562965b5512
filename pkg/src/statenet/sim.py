"""Deterministic gossip simulation over in-memory nodes.

Builds a random connected mutual-peering graph, injects statements at random
nodes, then runs logical gossip rounds until every node holds the same
statement-hash set. All randomness flows from one seeded generator, so a
(seed, parameters) pair fully determines the outcome.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .content import build_statement
from .node import Node, ReputationPolicy
from .store import MemoryStore

_SIM_BASE_TIME = datetime(2027, 1, 1, tzinfo=timezone.utc)


@dataclass
class RoundSnapshot:
    round_number: int
    store_sizes: list[int]
    converged: bool


@dataclass
class SimReport:
    nodes: int
    statements: int
    seed: int
    fanout: int
    edges: list[tuple[int, int]]
    converged_round: int | None
    rounds: list[RoundSnapshot] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.converged_round is not None


def build_connected_graph(n: int, rng: random.Random, extra_edge_prob: float = 0.25) -> list[set[int]]:
    """Random connected undirected graph: spanning tree plus chance edges."""
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for i in range(1, n):
        j = rng.randrange(i)
        adjacency[i].add(j)
        adjacency[j].add(i)
    for i in range(n):
        for j in range(i + 1, n):
            if j not in adjacency[i] and rng.random() < extra_edge_prob:
                adjacency[i].add(j)
                adjacency[j].add(i)
    return adjacency


def _peer_id(index: int) -> str:
    return f"sim://node{index}"


def run_simulation(
    *,
    nodes: int = 8,
    statements: int = 100,
    max_rounds: int = 50,
    seed: int = 0,
    fanout: int = 3,
    batch_limit: int = 500,
) -> SimReport:
    rng = random.Random(seed)
    adjacency = build_connected_graph(nodes, rng)

    sim_nodes = [
        Node(
            MemoryStore(),
            own_domain=f"node{i}.example",
            reputation=ReputationPolicy(),
            fanout=fanout,
            batch_limit=batch_limit,
        )
        for i in range(nodes)
    ]
    clients: list[dict] = []
    for i in range(nodes):
        for j in adjacency[i]:
            sim_nodes[i].add_peer(_peer_id(j))
        clients.append({_peer_id(j): sim_nodes[j].serve_pull for j in adjacency[i]})

    injected: set[str] = set()
    for k in range(statements):
        text = build_statement(
            domain=f"org{k}.example",
            author=f"Organization {k}",
            content=f"Coordination position number {k}.",
            time=_SIM_BASE_TIME + timedelta(seconds=k),
        )
        target = rng.randrange(nodes)
        result = sim_nodes[target].ingest(text, source="local")
        injected.add(result.hash)

    report = SimReport(
        nodes=nodes,
        statements=statements,
        seed=seed,
        fanout=fanout,
        edges=sorted(
            (i, j) for i in range(nodes) for j in adjacency[i] if i < j
        ),
        converged_round=None,
    )
    for round_number in range(1, max_rounds + 1):
        for i in range(nodes):
            sim_nodes[i].gossip_round(rng, clients[i])
        hash_sets = [n.store.all_hashes() for n in sim_nodes]
        converged = all(h == injected for h in hash_sets)
        report.rounds.append(
            RoundSnapshot(
                round_number=round_number,
                store_sizes=[len(h) for h in hash_sets],
                converged=converged,
            )
        )
        if converged:
            report.converged_round = round_number
            break
    return report
