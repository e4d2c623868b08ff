"""Staged information flow graphs: repairs, collectors, exact max-flow.

The graph starts with a source feeding every node's in/out pair through a
storage-capacity edge.  Each repair adds a stage: the newcomer's "in" vertex
draws one rate-capacity edge from the latest "out" of each helper.  A data
collector attaches to the latest "out" of k distinct nodes with unbounded
edges.  An allocation is workable only if every collector on every reachable
graph can pull the whole file, i.e. its source-to-collector max-flow is at
least the file size.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Allocation, Ratio, SystemParams
from .constraints import TYPE1, TYPE2, TypeVector

SOURCE = "src"


def in_vertex(node: int, stage: int) -> str:
    return f"in:{node}@{stage}"


def out_vertex(node: int, stage: int) -> str:
    return f"out:{node}@{stage}"


@dataclass(frozen=True)
class RepairEvent:
    """One failure/repair: the node that died and the d helpers it drew from."""

    failed: int
    helpers: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "helpers", tuple(self.helpers))


@dataclass(frozen=True)
class DcProbe:
    """A scripted collector check over k node ids."""

    nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))


@dataclass
class FlowGraph:
    """Immutable-by-convention staged graph; builder steps return new graphs.

    Edge capacities are exact rationals, with ``None`` standing for the two
    unbounded edge kinds (source feeds, collector taps).
    """

    params: SystemParams
    alloc: Allocation
    vertices: set[str]
    edges: list[tuple[str, str, Ratio | None]]
    current_stage: int
    latest_out: dict[int, int]
    dc_serial: int = 0
    dc_nodes: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def copy(self) -> FlowGraph:
        return FlowGraph(
            params=self.params,
            alloc=self.alloc,
            vertices=set(self.vertices),
            edges=list(self.edges),
            current_stage=self.current_stage,
            latest_out=dict(self.latest_out),
            dc_serial=self.dc_serial,
            dc_nodes=dict(self.dc_nodes),
        )

    def node_type(self, node: int) -> int:
        return 1 if node <= self.params.n1 else 2

    def storage_capacity(self, node: int) -> Ratio:
        return self.alloc.alpha1 if node <= self.params.n1 else self.alloc.alpha2


def build_initial(params: SystemParams, alloc: Allocation) -> FlowGraph:
    """Stage-0 graph: source, one in/out pair per node, storage edges."""
    graph = FlowGraph(
        params=params,
        alloc=alloc,
        vertices={SOURCE},
        edges=[],
        current_stage=0,
        latest_out={},
    )
    for node in range(1, params.n + 1):
        vin, vout = in_vertex(node, 0), out_vertex(node, 0)
        graph.vertices.update((vin, vout))
        graph.edges.append((SOURCE, vin, None))
        graph.edges.append((vin, vout, graph.storage_capacity(node)))
        graph.latest_out[node] = 0
    return graph


def apply_repair(graph: FlowGraph, event: RepairEvent) -> FlowGraph:
    """New graph with one more stage: the newcomer replacing ``event.failed``."""
    params = graph.params
    if not 1 <= event.failed <= params.n:
        raise ValueError(f"failed node {event.failed} is not a node id (1..{params.n})")
    if len(event.helpers) != params.d:
        raise ValueError(f"need exactly d={params.d} helpers, got {len(event.helpers)}")
    if len(set(event.helpers)) != len(event.helpers):
        raise ValueError(f"duplicate helpers in {event.helpers}")
    if event.failed in event.helpers:
        raise ValueError(f"failed node {event.failed} cannot help repair itself")
    for helper in event.helpers:
        if helper not in graph.latest_out:
            raise ValueError(f"helper {helper} does not reference a live node")
    out = graph.copy()
    stage = out.current_stage + 1
    vin, vout = in_vertex(event.failed, stage), out_vertex(event.failed, stage)
    out.vertices.update((vin, vout))
    for helper in event.helpers:
        source = out_vertex(helper, out.latest_out[helper])
        out.edges.append((source, vin, params.beta))
    out.edges.append((vin, vout, out.storage_capacity(event.failed)))
    out.latest_out[event.failed] = stage
    out.current_stage = stage
    return out


def attach_dc(graph: FlowGraph, nodes: tuple[int, ...] | list[int] | set[int]) -> tuple[FlowGraph, str]:
    """New graph with a collector on the latest incarnations of ``nodes``."""
    chosen = sorted(set(nodes))
    if len(chosen) != len(tuple(nodes)):
        raise ValueError(f"collector nodes must be distinct, got {tuple(nodes)}")
    if len(chosen) != graph.params.k:
        raise ValueError(f"collector needs exactly k={graph.params.k} nodes, got {len(chosen)}")
    for node in chosen:
        if node not in graph.latest_out:
            raise ValueError(f"collector node {node} does not reference a live node")
    out = graph.copy()
    dc = f"dc:{out.dc_serial}"
    out.dc_serial += 1
    out.vertices.add(dc)
    out.dc_nodes[dc] = tuple(chosen)
    for node in chosen:
        out.edges.append((out_vertex(node, out.latest_out[node]), dc, None))
    return out, dc


def _scaled_capacities(graph: FlowGraph) -> tuple[list[tuple[str, str, int]], int]:
    """Edges with integer capacities; unbounded edges get a safe sentinel.

    The sentinel is one more than the sum of all finite capacities, so no
    minimal cut can contain a sentinel edge.
    """
    scale = math.lcm(*(c.denominator for _, _, c in graph.edges if c is not None), 1)
    finite_total = sum(int(c * scale) for _, _, c in graph.edges if c is not None)
    sentinel = finite_total + 1
    scaled = [
        (t, h, sentinel if c is None else int(c * scale)) for t, h, c in graph.edges
    ]
    return scaled, scale


def max_flow(graph: FlowGraph, dc: str, limit: Ratio | None = None) -> Ratio:
    """Exact source-to-collector max-flow.

    Capacities are rescaled to integers by the common denominator and pushed
    with Dinic's blocking-flow scheme, so the returned value is an exact
    rational.  With ``limit`` set, augmentation stops as soon as the flow
    reaches it; the return value is then min(max-flow, a value >= limit).
    """
    if dc not in graph.vertices:
        raise ValueError(f"unknown collector vertex {dc!r}")
    scaled, scale = _scaled_capacities(graph)
    index = {v: i for i, v in enumerate(sorted(graph.vertices))}
    n = len(index)
    adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(u: int, v: int, cap: int) -> None:
        adj[u].append([v, cap, len(adj[v])])
        adj[v].append([u, 0, len(adj[u]) - 1])

    for tail, head, cap in scaled:
        add_edge(index[tail], index[head], cap)
    src, sink = index[SOURCE], index[dc]
    stop_at = None if limit is None else Fraction(limit) * scale

    total = 0
    while True:
        if stop_at is not None and total >= stop_at:
            break
        level = [-1] * n
        level[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for edge in adj[u]:
                if edge[1] > 0 and level[edge[0]] < 0:
                    level[edge[0]] = level[u] + 1
                    queue.append(edge[0])
        if level[sink] < 0:
            break
        iters = [0] * n

        def dfs(u: int, pushed: int) -> int:
            if u == sink:
                return pushed
            while iters[u] < len(adj[u]):
                edge = adj[u][iters[u]]
                v = edge[0]
                if edge[1] > 0 and level[v] == level[u] + 1:
                    got = dfs(v, min(pushed, edge[1]))
                    if got > 0:
                        edge[1] -= got
                        adj[v][edge[2]][1] += got
                        return got
                iters[u] += 1
            return 0

        big = sum(edge[1] for edge in adj[src]) + 1
        while True:
            pushed = dfs(src, big)
            if pushed == 0:
                break
            total += pushed
            if stop_at is not None and total >= stop_at:
                break
    return Fraction(total, scale)


def min_cut_bruteforce(graph: FlowGraph, dc: str) -> Ratio:
    """Minimum cut capacity by enumerating every vertex bipartition.

    Independent check for :func:`max_flow`; only viable on graphs with a
    handful of non-terminal vertices.
    """
    if dc not in graph.vertices:
        raise ValueError(f"unknown collector vertex {dc!r}")
    scaled, scale = _scaled_capacities(graph)
    middle = sorted(v for v in graph.vertices if v not in (SOURCE, dc))
    best: int | None = None
    for bits in range(2 ** len(middle)):
        side = {SOURCE}
        for i, v in enumerate(middle):
            if bits >> i & 1:
                side.add(v)
        cap = sum(c for t, h, c in scaled if t in side and h not in side)
        if best is None or cap < best:
            best = cap
    assert best is not None
    return Fraction(best, scale)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of replaying a history and probing collectors against it."""

    ok: bool
    file_size: Ratio
    min_flow: Ratio | None
    worst_dc: tuple[int, ...] | None
    worst_stage: int | None
    checks: int


def exhaustive_dc_sets(params: SystemParams) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, params.n + 1), params.k))


def _sampled_dc_sets(params: SystemParams, samples: int, rng: random.Random) -> list[tuple[int, ...]]:
    ids = list(range(1, params.n + 1))
    return [tuple(sorted(rng.sample(ids, params.k))) for _ in range(samples)]


def verify_allocation(
    params: SystemParams,
    alloc: Allocation,
    history: list[RepairEvent] | tuple[RepairEvent, ...],
    policy: str = "exhaustive",
    samples: int = 50,
    seed: int = 0,
    stop_at_file_size: bool = False,
) -> VerificationReport:
    """Replay a repair history and check collectors after every stage.

    ``policy`` is "exhaustive" (every k-subset of node ids) or "sample"
    (``samples`` seeded random k-subsets per stage).  With
    ``stop_at_file_size`` each max-flow computation stops once it reaches the
    file size, which keeps the pass/fail verdict exact but reports the file
    size itself instead of any larger true flow.
    """
    if policy not in ("exhaustive", "sample"):
        raise ValueError(f"unknown collector policy {policy!r}")
    rng = random.Random(seed)
    graph = build_initial(params, alloc)
    limit = params.file_size if stop_at_file_size else None

    min_flow: Ratio | None = None
    worst_dc: tuple[int, ...] | None = None
    worst_stage: int | None = None
    checks = 0

    def probe_stage(g: FlowGraph) -> None:
        nonlocal min_flow, worst_dc, worst_stage, checks
        if policy == "exhaustive":
            dc_sets = exhaustive_dc_sets(params)
        else:
            dc_sets = _sampled_dc_sets(params, samples, rng)
        for nodes in dc_sets:
            with_dc, dc = attach_dc(g, nodes)
            flow = max_flow(with_dc, dc, limit=limit)
            checks += 1
            if min_flow is None or flow < min_flow:
                min_flow = flow
                worst_dc = tuple(nodes)
                worst_stage = g.current_stage

    probe_stage(graph)
    for event in history:
        graph = apply_repair(graph, event)
        probe_stage(graph)
    ok = min_flow is not None and min_flow >= params.file_size
    return VerificationReport(
        ok=ok,
        file_size=params.file_size,
        min_flow=min_flow,
        worst_dc=worst_dc,
        worst_stage=worst_stage,
        checks=checks,
    )


def random_history(params: SystemParams, n_events: int, seed: int) -> tuple[RepairEvent, ...]:
    """Seeded history: uniform victim, helpers uniform among the other nodes."""
    rng = random.Random(seed)
    ids = list(range(1, params.n + 1))
    events = []
    for _ in range(n_events):
        failed = rng.choice(ids)
        helpers = rng.sample([i for i in ids if i != failed], params.d)
        events.append(RepairEvent(failed, tuple(helpers)))
    return tuple(events)


def adversarial_scenario(
    params: SystemParams, vec: TypeVector
) -> tuple[tuple[RepairEvent, ...], tuple[int, ...]]:
    """Worst-case history for a collector whose slots have the given types.

    Fails one node per slot, in slot order; newcomer i draws from the i-1
    earlier newcomers plus d-i+1 untouched nodes, and the collector reads the
    k newcomers.  Untouched helpers are picked least-used-first so no single
    node is asked to forward more than necessary.
    """
    if not vec.fits(params):
        raise ValueError(f"type vector {vec.entries} does not fit n1={params.n1}, n2={params.n2}")
    pools = {
        TYPE1: list(range(1, params.n1 + 1)),
        TYPE2: list(range(params.n1 + 1, params.n + 1)),
    }
    victims = [pools[tag].pop(0) for tag in vec.entries]
    uses: dict[int, int] = {i: 0 for i in range(1, params.n + 1)}
    events = []
    for i, failed in enumerate(victims, start=1):
        untouched = [
            node
            for node in range(1, params.n + 1)
            if node not in victims[:i]
        ]
        needed = params.d - i + 1
        if needed > len(untouched):
            raise ValueError(
                f"not enough untouched nodes at stage {i}: need {needed}, "
                f"have {len(untouched)} (requires n >= d + 1)"
            )
        untouched.sort(key=lambda node: (uses[node], node))
        fresh = untouched[:needed]
        for node in fresh:
            uses[node] += 1
        events.append(RepairEvent(failed, tuple(victims[:i - 1]) + tuple(fresh)))
    return tuple(events), tuple(victims)


class ScenarioError(ValueError):
    """Malformed scenario text; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_scenario(text: str, params: SystemParams) -> list[RepairEvent | DcProbe]:
    """Parse the line-oriented scenario format.

    Lines are ``repair <node> <h1> ... <hd>`` or ``dc <n1> ... <nk>``; blank
    lines and ``#`` comments are skipped.
    """
    items: list[RepairEvent | DcProbe] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword, args = tokens[0], tokens[1:]
        try:
            ids = tuple(int(t) for t in args)
        except ValueError:
            raise ScenarioError(line_no, f"non-integer node id in {raw!r}")
        if keyword == "repair":
            if len(ids) != 1 + params.d:
                raise ScenarioError(
                    line_no,
                    f"repair needs a failed node plus d={params.d} helpers, got {len(ids)} ids",
                )
            items.append(RepairEvent(ids[0], ids[1:]))
        elif keyword == "dc":
            if len(ids) != params.k:
                raise ScenarioError(line_no, f"dc needs k={params.k} node ids, got {len(ids)}")
            items.append(DcProbe(ids))
        else:
            raise ScenarioError(line_no, f"unknown directive {keyword!r}")
    return items


def format_scenario(items: list[RepairEvent | DcProbe] | tuple[RepairEvent | DcProbe, ...]) -> str:
    lines = []
    for item in items:
        if isinstance(item, RepairEvent):
            lines.append("repair " + " ".join(str(i) for i in (item.failed, *item.helpers)))
        else:
            lines.append("dc " + " ".join(str(i) for i in item.nodes))
    return "\n".join(lines) + ("\n" if lines else "")


def run_scenario(
    params: SystemParams,
    alloc: Allocation,
    items: list[RepairEvent | DcProbe],
) -> VerificationReport:
    """Replay a parsed scenario, probing exactly the scripted collectors.

    Each ``dc`` line is checked against the graph state at its position in
    the file.  A scenario with no ``dc`` lines yields a vacuous pass with
    zero checks.
    """
    graph = build_initial(params, alloc)
    min_flow: Ratio | None = None
    worst_dc: tuple[int, ...] | None = None
    worst_stage: int | None = None
    checks = 0
    for item in items:
        if isinstance(item, RepairEvent):
            graph = apply_repair(graph, item)
            continue
        with_dc, dc = attach_dc(graph, item.nodes)
        flow = max_flow(with_dc, dc)
        checks += 1
        if min_flow is None or flow < min_flow:
            min_flow = flow
            worst_dc = item.nodes
            worst_stage = graph.current_stage
    ok = min_flow is None or min_flow >= params.file_size
    return VerificationReport(
        ok=ok,
        file_size=params.file_size,
        min_flow=min_flow,
        worst_dc=worst_dc,
        worst_stage=worst_stage,
        checks=checks,
    )
