"""Random linear network coding demo: functional repair at desk scale.

Everything is tracked through global coding vectors: a node stores random
combinations of the file packets, a repair ships fresh random combinations
from each helper, and a collector succeeds exactly when the coding vectors
it gathers span the whole packet space.  Payload bytes are optional; rank
alone decides decodability.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .core import Allocation, SystemParams
from .gf import GF2, GF256

Field = GF256 | GF2


class PacketizationError(ValueError):
    """Scaling the instance to whole packets exceeded the configured cap."""


@dataclass(frozen=True)
class CodedPacket:
    """A stored unit: its global coding vector, plus optional payload symbols."""

    coeffs: tuple[int, ...]
    payload: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.payload is not None:
            object.__setattr__(self, "payload", tuple(self.payload))


@dataclass
class NodeState:
    node_id: int
    type_tag: int
    packets: list[CodedPacket] = field(default_factory=list)


def packetize(params: SystemParams, alloc: Allocation, cap: int = 10**4) -> tuple[int, int, int, int]:
    """Scale (file size, alpha1, alpha2, beta) to whole packet counts.

    Multiplies all four by the least common multiple of their denominators.
    """
    values = (params.file_size, alloc.alpha1, alloc.alpha2, params.beta)
    scale = math.lcm(*(v.denominator for v in values))
    counts = tuple(int(v * scale) for v in values)
    if max(counts) > cap:
        raise PacketizationError(
            f"packet counts {counts} exceed cap {cap} after scaling by {scale}"
        )
    return counts


def node_plan(params: SystemParams, alpha1_p: int, alpha2_p: int) -> list[tuple[int, int, int]]:
    """(node id, type tag, packet capacity) for every node."""
    return [
        (node, 1 if node <= params.n1 else 2, alpha1_p if node <= params.n1 else alpha2_p)
        for node in range(1, params.n + 1)
    ]


def _random_vector(length: int, fld: Field, rng: random.Random) -> tuple[int, ...]:
    return tuple(rng.randrange(fld.order) for _ in range(length))


def _combine(
    packets: list[CodedPacket], weights: tuple[int, ...], fld: Field, m_p: int
) -> CodedPacket:
    coeffs = [0] * m_p
    for packet, w in zip(packets, weights):
        if w == 0:
            continue
        for j, c in enumerate(packet.coeffs):
            if c:
                coeffs[j] = fld.add(coeffs[j], fld.mul(w, c))
    payload = None
    if packets and all(p.payload is not None for p in packets):
        size = len(packets[0].payload)
        payload_acc = [0] * size
        for packet, w in zip(packets, weights):
            if w == 0:
                continue
            for j, c in enumerate(packet.payload):
                if c:
                    payload_acc[j] = fld.add(payload_acc[j], fld.mul(w, c))
        payload = tuple(payload_acc)
    return CodedPacket(tuple(coeffs), payload)


def initial_distribution(
    m_p: int,
    plan: list[tuple[int, int, int]],
    fld: Field,
    rng: random.Random,
) -> list[NodeState]:
    """Fill every node with uniformly random coding vectors over the field."""
    total = sum(cap for _, _, cap in plan)
    if total < m_p:
        raise ValueError(f"total capacity {total} packets cannot hold a {m_p}-packet file")
    return [
        NodeState(node, tag, [CodedPacket(_random_vector(m_p, fld, rng)) for _ in range(cap)])
        for node, tag, cap in plan
    ]


def repair(
    states: dict[int, NodeState],
    failed: int,
    helpers: list[int] | tuple[int, ...],
    beta_p: int,
    fld: Field,
    rng: random.Random,
) -> NodeState:
    """Functional repair: random re-mix at the helpers, then at the newcomer.

    Each helper emits beta_p random combinations of its own packets; the
    newcomer stores as many random combinations of the received batch as the
    failed node held.  The result replaces the failed node's state.
    """
    if failed not in states:
        raise ValueError(f"unknown failed node {failed}")
    if failed in helpers or len(set(helpers)) != len(tuple(helpers)):
        raise ValueError(f"invalid helper set {tuple(helpers)} for failed node {failed}")
    old = states[failed]
    m_p = len(old.packets[0].coeffs) if old.packets else 0
    received: list[CodedPacket] = []
    for helper in helpers:
        source = states[helper]
        if m_p == 0 and source.packets:
            m_p = len(source.packets[0].coeffs)
        for _ in range(beta_p):
            weights = _random_vector(len(source.packets), fld, rng)
            received.append(_combine(source.packets, weights, fld, m_p))
    newcomer_packets = []
    for _ in range(len(old.packets)):
        weights = _random_vector(len(received), fld, rng)
        newcomer_packets.append(_combine(received, weights, fld, m_p))
    return NodeState(old.node_id, old.type_tag, newcomer_packets)


def matrix_rank(rows: list[tuple[int, ...]], fld: Field) -> int:
    """Rank of a matrix over the field, by Gaussian elimination."""
    matrix = [list(row) for row in rows if any(row)]
    rank = 0
    n_cols = len(matrix[0]) if matrix else 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, len(matrix)):
            if matrix[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = fld.inv(matrix[rank][col])
        matrix[rank] = [fld.mul(inv, v) for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [
                    fld.sub(a, fld.mul(factor, b))
                    for a, b in zip(matrix[r], matrix[rank])
                ]
        rank += 1
        if rank == len(matrix):
            break
    return rank


@dataclass(frozen=True)
class ReconstructionResult:
    success: bool
    rank: int


def reconstruct(
    states: dict[int, NodeState],
    dc_nodes: tuple[int, ...] | list[int],
    m_p: int,
    fld: Field,
) -> ReconstructionResult:
    """Gather the collectors' packets and test whether they span the file."""
    rows = [
        packet.coeffs
        for node in sorted(set(dc_nodes))
        for packet in states[node].packets
    ]
    rank = matrix_rank(rows, fld)
    return ReconstructionResult(success=rank == m_p, rank=rank)


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    repairs_per_trial: int
    per_dc: dict[tuple[int, ...], tuple[int, int]]  # dc -> (successes, attempts)
    checks: int
    successes: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.checks if self.checks else 0.0


def simulate_trials(
    params: SystemParams,
    alloc: Allocation,
    fld: Field,
    trials: int,
    repairs_per_trial: int,
    seed: int,
    dc_samples: int | None = None,
    cap: int = 10**4,
) -> SimulationReport:
    """Seeded end-to-end trials: distribute, repair, reconstruct.

    Each trial reruns the whole pipeline from a generator derived from
    (seed, trial index), so any single trial can be replayed.  Collectors are
    every k-subset by default, or ``dc_samples`` seeded draws per trial.
    """
    m_p, a1_p, a2_p, b_p = packetize(params, alloc, cap=cap)
    plan = node_plan(params, a1_p, a2_p)
    ids = [node for node, _, _ in plan]
    per_dc: dict[tuple[int, ...], tuple[int, int]] = {}
    checks = successes = 0
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        states = {s.node_id: s for s in initial_distribution(m_p, plan, fld, rng)}
        for _ in range(repairs_per_trial):
            failed = rng.choice(ids)
            helpers = rng.sample([i for i in ids if i != failed], params.d)
            states[failed] = repair(states, failed, helpers, b_p, fld, rng)
        if dc_samples is None:
            dc_sets = list(itertools.combinations(ids, params.k))
        else:
            dc_sets = [tuple(sorted(rng.sample(ids, params.k))) for _ in range(dc_samples)]
        for nodes in dc_sets:
            result = reconstruct(states, nodes, m_p, fld)
            checks += 1
            won, tried = per_dc.get(nodes, (0, 0))
            per_dc[nodes] = (won + (1 if result.success else 0), tried + 1)
            if result.success:
                successes += 1
    return SimulationReport(
        trials=trials,
        repairs_per_trial=repairs_per_trial,
        per_dc=per_dc,
        checks=checks,
        successes=successes,
    )
