"""
Small graphs that witness the bounds: named constructions, spectra, BFS
metrics, non-backtracking walk counts and a few predicates.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    GraphParseError,
    NonRegular,
    NotBipartite,
    NotConnected,
    TooLarge,
    UnknownName,
)
from .linalg import jacobi_eigvalsh
from .quotient import SpectrumSummary

MAX_SPECTRUM_ORDER = 10_000
MAX_ORACLE_STATES = 10**7
RAMANUJAN_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """A simple undirected graph on vertices 0..n-1."""

    n: int
    adjacency: np.ndarray = field(repr=False)
    name: str | None = None

    def __post_init__(self):
        A = np.asarray(self.adjacency)
        if A.shape != (self.n, self.n):
            raise GraphParseError(f"adjacency has shape {A.shape}, expected {(self.n, self.n)}")
        if not np.array_equal(A, A.T):
            raise GraphParseError("adjacency is not symmetric")
        if np.any(np.diag(A)):
            raise GraphParseError("loops are not allowed")
        if not np.isin(A, (0, 1)).all():
            raise GraphParseError("adjacency must be 0/1")
        A = A.astype(np.int64)
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @classmethod
    def from_edges(cls, n: int, edges, name: str | None = None) -> "LabeledGraph":
        A = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if u == v:
                raise GraphParseError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"edge ({u}, {v}) out of range for n={n}")
            A[u, v] = A[v, u] = 1
        return cls(n, A, name)

    def __repr__(self) -> str:
        return f"LabeledGraph(name={self.name!r}, n={self.n}, m={self.num_edges})"

    @functools.cached_property
    def neighbors(self) -> list[list[int]]:
        return [list(np.flatnonzero(row)) for row in self.adjacency]

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    @property
    def degree(self) -> int | None:
        """The common degree, or None when the graph is not regular."""
        d = self.degrees
        if self.n == 0 or np.any(d != d[0]):
            return None
        return int(d[0])

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(self.adjacency)))]

    @functools.cached_property
    def spectrum(self) -> SpectrumSummary:
        return spectrum_of(self)


# -- constructions ------------------------------------------------------------

def cycle(n: int) -> LabeledGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle({n})")


def complete(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, itertools.combinations(range(n), 2), f"complete({n})")


def complete_bipartite(r: int) -> LabeledGraph:
    return LabeledGraph.from_edges(
        2 * r, [(i, r + j) for i in range(r) for j in range(r)], f"completeBipartite({r})"
    )


def kneser(n: int, k: int, name: str | None = None) -> LabeledGraph:
    """k-subsets of range(n), adjacent when disjoint."""
    subsets = [frozenset(s) for s in itertools.combinations(range(n), k)]
    edges = [(i, j) for i, j in itertools.combinations(range(len(subsets)), 2)
             if not subsets[i] & subsets[j]]
    return LabeledGraph.from_edges(len(subsets), edges, name or f"kneser({n},{k})")


def petersen() -> LabeledGraph:
    return kneser(5, 2, "petersen")


def odd_graph(k: int) -> LabeledGraph:
    """O_k = Kneser(2k-1, k-1), a k-regular graph."""
    if k < 2:
        raise ValueError("odd graph needs k >= 2")
    return kneser(2 * k - 1, k - 1, f"oddGraph({k})")


def cube3() -> LabeledGraph:
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return LabeledGraph.from_edges(8, edges, "cube3")


def heawood() -> LabeledGraph:
    """Incidence graph of the Fano plane: point p on line j iff p - j in {0, 1, 3} mod 7."""
    edges = [(p, 7 + j) for p in range(7) for j in range(7) if (p - j) % 7 in (0, 1, 3)]
    return LabeledGraph.from_edges(14, edges, "heawood")


def lcf(n: int, shifts, repeats: int, name: str | None = None) -> LabeledGraph:
    """Hamiltonian cubic graph from LCF notation."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    seq = list(shifts) * repeats
    if len(seq) != n:
        raise ValueError("LCF code length must equal n")
    for i, s in enumerate(seq):
        edges.add(tuple(sorted((i, (i + s) % n))))
    return LabeledGraph.from_edges(n, edges, name)


def pappus() -> LabeledGraph:
    return lcf(18, [5, 7, -7, 7, -7, -5], 3, "pappus")


def hoffman_singleton() -> LabeledGraph:
    """
    Five pentagons P_h and five pentagrams Q_i; vertex j of P_h is joined to
    vertex h*i + j (mod 5) of Q_i.  Vertex (P_h, j) is 5h + j, vertex (Q_i, j)
    is 25 + 5i + j.
    """
    def P(h, j):
        return 5 * h + j % 5

    def Q(i, j):
        return 25 + 5 * i + j % 5

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((P(h, j), P(h, j + 1)))
            edges.append((Q(h, j), Q(h, j + 2)))
            for i in range(5):
                edges.append((P(h, j), Q(i, h * i + j)))
    return LabeledGraph.from_edges(50, edges, "hoffmanSingleton")


def induced_subgraph(g: LabeledGraph, vertices, name: str | None = None) -> LabeledGraph:
    idx = np.array(sorted(vertices))
    return LabeledGraph(len(idx), g.adjacency[np.ix_(idx, idx)].copy(), name)


def second_subconstituent(g: LabeledGraph, vertex: int = 0, name: str | None = None) -> LabeledGraph:
    """Induced subgraph on the vertices at distance exactly 2 from ``vertex``."""
    dist = bfs_distances(g, vertex)
    return induced_subgraph(g, [v for v, d in enumerate(dist) if d == 2], name)


def hs_second_subconstituent() -> LabeledGraph:
    # vertex 0 is vertex 0 of pentagon P_0; the graph is vertex-transitive
    return second_subconstituent(hoffman_singleton(), 0, "hsSecondSubconstituent")


_FIXED = {
    "petersen": petersen,
    "cube3": cube3,
    "heawood": heawood,
    "pappus": pappus,
    "hoffmansingleton": hoffman_singleton,
    "hssecondsubconstituent": hs_second_subconstituent,
}
_PARAMETRIC = {
    "cycle": cycle,
    "complete": complete,
    "completebipartite": complete_bipartite,
    "oddgraph": odd_graph,
}
NAMES = ("cycle(n)", "complete(n)", "completeBipartite(r)", "oddGraph(k)",
         "petersen", "cube3", "heawood", "pappus", "hoffmanSingleton",
         "hsSecondSubconstituent")


def build_named(name: str) -> LabeledGraph:
    """Build a graph from a catalog name such as ``"petersen"`` or ``"cycle(7)"``."""
    m = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\(\s*(\d+)\s*\))?\s*", name)
    if not m:
        raise UnknownName(f"cannot parse graph name {name!r}; known: {', '.join(NAMES)}")
    key, arg = m.group(1).lower(), m.group(2)
    if key in _FIXED and arg is None:
        return _FIXED[key]()
    if key in _PARAMETRIC and arg is not None:
        return _PARAMETRIC[key](int(arg))
    raise UnknownName(f"unknown graph {name!r}; known: {', '.join(NAMES)}")


# -- edge-list files ----------------------------------------------------------

def parse_edge_list(text: str, name: str | None = None) -> LabeledGraph:
    """Header line ``n m`` followed by m lines ``u v`` (0-indexed)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except (IndexError, ValueError) as exc:
        raise GraphParseError(f"malformed edge list: {exc}") from exc
    if any(len(e) != 2 for e in edges):
        raise GraphParseError("every edge line needs exactly two vertices")
    if len(edges) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(edges)}")
    g = LabeledGraph.from_edges(n, edges, name)
    if g.num_edges != m:
        raise GraphParseError("duplicate edges in edge list")
    return g


def read_edge_list(path) -> LabeledGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphParseError(str(exc)) from exc
    return parse_edge_list(text, path.stem)


def format_edge_list(g: LabeledGraph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def write_edge_list(g: LabeledGraph, path) -> None:
    Path(path).write_text(format_edge_list(g))


# -- spectra ------------------------------------------------------------------

def spectrum_of(g: LabeledGraph) -> SpectrumSummary:
    if g.n > MAX_SPECTRUM_ORDER:
        raise TooLarge(f"n = {g.n} exceeds the dense eigensolver guard {MAX_SPECTRUM_ORDER}")
    return SpectrumSummary(jacobi_eigvalsh(g.adjacency))


def spectrum_json(g: LabeledGraph) -> dict:
    spec = g.spectrum
    return {
        "name": g.name,
        "n": g.n,
        "r": g.degree,
        "eigenvalues": [{"value": v, "mult": k} for v, k in spec.multiplicities],
    }


# -- walks ---------------------------------------------------------------------

@dataclass(frozen=True)
class WalkCountTable:
    length: int
    counts: np.ndarray = field(repr=False)


def _require_regular(g: LabeledGraph, minimum: int = 1) -> int:
    r = g.degree
    if r is None:
        raise NonRegular(f"{g.name or 'graph'} is not regular")
    if r < minimum:
        raise NonRegular(f"degree {r} is below {minimum}")
    return r


def nonbacktracking_counts(g: LabeledGraph, length: int) -> WalkCountTable:
    """F_length(A) by the matrix form of the F recurrence, in exact integers."""
    if length < 0:
        raise ValueError("length must be non-negative")
    r = _require_regular(g, 2)
    if r ** max(length, 1) >= 2**62:
        raise OverflowError("walk counts would leave the int64 range")
    A = g.adjacency
    I = np.eye(g.n, dtype=np.int64)
    if length == 0:
        return WalkCountTable(0, I)
    prev, cur = I, A.copy()
    for k in range(2, length + 1):
        factor = r if k == 2 else r - 1
        prev, cur = cur, A @ cur - factor * prev
    return WalkCountTable(length, cur)


def enumerate_nonbacktracking_walks(g: LabeledGraph, length: int,
                                    max_states: int = MAX_ORACLE_STATES) -> np.ndarray:
    """
    Count non-backtracking walks by listing every one of them.

    Walks are extended one directed edge at a time from each start vertex;
    the search refuses to run past ``max_states`` partial walks.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    counts = np.zeros((g.n, g.n), dtype=np.int64)
    nbrs = g.neighbors
    states = 0
    for start in range(g.n):
        stack = [(start, -1, 0)]
        while stack:
            v, prev, depth = stack.pop()
            states += 1
            if states > max_states:
                raise TooLarge(f"walk enumeration exceeded {max_states} states")
            if depth == length:
                counts[start, v] += 1
                continue
            for w in nbrs[v]:
                if w != prev:
                    stack.append((w, v, depth + 1))
    return counts


# -- BFS metrics ---------------------------------------------------------------

def bfs_distances(g: LabeledGraph, source: int) -> list[float]:
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    nbrs = g.neighbors
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: LabeledGraph) -> bool:
    return g.n == 0 or math.inf not in bfs_distances(g, 0)


def diameter_and_girth(g: LabeledGraph) -> tuple[float, float]:
    """Diameter (inf if disconnected) and girth (inf if acyclic), both by BFS."""
    diameter = 0
    girth = math.inf
    nbrs = g.neighbors
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    girth = min(girth, dist[u] + dist[w] + 1)
        if min(dist) < 0:
            diameter = math.inf
        elif diameter != math.inf:
            diameter = max(diameter, max(dist))
    return diameter, girth


def bipartition(g: LabeledGraph) -> tuple[list[int], list[int]] | None:
    """Colour classes of a bipartite graph, or None if an odd cycle exists."""
    colour = [-1] * g.n
    nbrs = g.neighbors
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return ([v for v in range(g.n) if colour[v] == 0],
            [v for v in range(g.n) if colour[v] == 1])


def biadjacency(g: LabeledGraph) -> np.ndarray:
    parts = bipartition(g)
    if parts is None:
        raise NotBipartite(f"{g.name or 'graph'} has an odd cycle")
    left, right = parts
    return g.adjacency[np.ix_(left, right)]


# -- predicates and witnesses ----------------------------------------------------

@dataclass(frozen=True)
class RamanujanReport:
    ramanujan: bool
    witness: float | None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ramanujan


def is_ramanujan(g: LabeledGraph) -> RamanujanReport:
    r = _require_regular(g)
    if not is_connected(g):
        raise NotConnected(f"{g.name or 'graph'} is not connected")
    bipartite = bipartition(g) is not None
    limit = 2.0 * math.sqrt(r - 1) + RAMANUJAN_SLACK
    trivial = [float(r)] + ([-float(r)] if bipartite else [])
    values = list(g.spectrum.eigenvalues)
    for tv in trivial:
        values.pop(int(np.argmin([abs(v - tv) for v in values])))
    note = ""
    if r == 2:
        note = "r = 2: 2 sqrt(r-1) = 2 = r, so every cycle passes trivially"
    for v in values:
        if abs(v) > limit:
            return RamanujanReport(False, float(v), note)
    return RamanujanReport(True, None, note)


@dataclass(frozen=True)
class WitnessReport:
    name: str | None
    kind: str
    order: int
    r: int
    lambda2: float
    bound: object
    slack: int

    @property
    def extremal(self) -> bool:
        return self.slack == 0

    def as_dict(self) -> dict:
        return {
            "name": self.name, "kind": self.kind, "order": self.order, "r": self.r,
            "lambda2": self.lambda2, "bound": self.bound.as_dict(),
            "slack": self.slack, "extremal": self.extremal,
        }


def check_witness(g: LabeledGraph, kind: str = "general") -> WitnessReport:
    """Compare the order of ``g`` with the bound at theta = lambda_2(g)."""
    from .bounds import b_upper, v_upper

    r = _require_regular(g, 3)
    if not is_connected(g):
        raise NotConnected(f"{g.name or 'graph'} is not connected")
    if kind == "bipartite" and bipartition(g) is None:
        raise NotBipartite(f"{g.name or 'graph'} is not bipartite")
    if kind not in ("general", "bipartite"):
        raise ValueError(f"unknown kind {kind!r}")
    lam2 = g.spectrum.lambda2
    result = (v_upper if kind == "general" else b_upper)(r, lam2)
    return WitnessReport(g.name, kind, g.n, r, lam2, result, result.floor_bound - g.n)
