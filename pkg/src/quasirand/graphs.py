"""Host graphs, pattern graphs, vertex subsets, generators, and edge-list IO.

Graphs are immutable simple undirected graphs over dense 0-based vertex ids,
stored as little-endian uint64 bitset adjacency rows: bit ``u`` of row ``v``
(word ``u >> 6``, bit ``u & 63``) is set iff ``{u, v}`` is an edge.  The
bitset layout makes subset-restricted adjacency checks single mask-and-test
operations and feeds the counting kernels directly.

All randomness flows through numpy's PCG64 bit generator seeded via
``SeedSequence``, so every generator is a pure function of its spec
(including the seed) and runs reproduce across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "Pattern",
    "VertexSubset",
    "GenSpec",
    "ParseError",
    "BUILTIN_PATTERNS",
    "builtin_pattern",
    "cycle_pattern",
    "pattern_from_edge_list",
    "from_edge_list",
    "to_edge_list",
    "generate",
    "induced_subgraph",
    "degree_sequence",
    "connected_components",
    "pack_bool_rows",
    "unpack_bit_rows",
    "full_mask",
]

GENERATOR_KINDS = ("gnp", "clique_union", "complete", "empty", "complete_multipartite")


class ParseError(ValueError):
    """Malformed edge-list document; the message names the offending line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# ---------------------------------------------------------------------------
# bitset packing helpers

def word_count(n: int) -> int:
    """Number of 64-bit words needed for an n-bit row."""
    return (n + 63) >> 6


def pack_bool_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a (rows, n) boolean matrix into (rows, word_count(n)) uint64 rows."""
    dense = np.ascontiguousarray(dense, dtype=bool)
    rows, n = dense.shape
    w = word_count(n)
    packed = np.packbits(dense, axis=1, bitorder="little")
    if packed.shape[1] < 8 * w:
        pad = np.zeros((rows, 8 * w - packed.shape[1]), dtype=np.uint8)
        packed = np.concatenate([packed, pad], axis=1)
    grouped = packed.reshape(rows, w, 8).astype(np.uint64)
    words = np.zeros((rows, w), dtype=np.uint64)
    for k in range(8):
        words |= grouped[:, :, k] << np.uint64(8 * k)
    return words


def unpack_bit_rows(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_bool_rows: (rows, w) uint64 -> (rows, n) bool."""
    rows, w = words.shape
    grouped = np.empty((rows, w, 8), dtype=np.uint8)
    for k in range(8):
        grouped[:, :, k] = ((words >> np.uint64(8 * k)) & np.uint64(0xFF)).astype(np.uint8)
    bits = np.unpackbits(grouped.reshape(rows, 8 * w), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def full_mask(n: int) -> np.ndarray:
    """uint64 bitset with bits 0..n-1 set."""
    return pack_bool_rows(np.ones((1, n), dtype=bool))[0]


# ---------------------------------------------------------------------------
# core types

class Graph:
    """Immutable simple undirected graph with bitset adjacency rows.

    Construction validates the structural invariants: symmetric adjacency,
    zero diagonal, and edge_count equal to half the number of set bits.
    """

    def __init__(self, n: int, bits: np.ndarray, *, _dense: np.ndarray | None = None,
                 _validated: bool = False):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        bits = np.ascontiguousarray(bits, dtype=np.uint64)
        if bits.shape != (n, word_count(n)):
            raise ValueError(f"adjacency shape {bits.shape} does not match n={n}")
        self.n = n
        self.bits = bits
        self.bits.setflags(write=False)
        self._dense_cache = _dense
        if not _validated:
            dense = self.dense
            if dense.diagonal().any():
                raise ValueError("self-loop: adjacency diagonal is not zero")
            if not np.array_equal(dense, dense.T):
                raise ValueError("adjacency is not symmetric")
        self.edge_count = int(np.bitwise_count(bits).sum()) // 2

    @classmethod
    def from_dense(cls, dense: np.ndarray, *, _validated: bool = False) -> "Graph":
        dense = np.ascontiguousarray(dense, dtype=bool)
        n = dense.shape[0]
        return cls(n, pack_bool_rows(dense) if n else np.zeros((0, 0), np.uint64),
                   _dense=dense, _validated=_validated)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        dense = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            dense[u, v] = dense[v, u] = True
        return cls.from_dense(dense)

    @property
    def dense(self) -> np.ndarray:
        """Boolean adjacency matrix view (cached)."""
        if self._dense_cache is None:
            self._dense_cache = unpack_bit_rows(self.bits, self.n)
            self._dense_cache.setflags(write=False)
        return self._dense_cache

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.bits[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1))

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.bits).sum(axis=1).astype(np.int64)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


class VertexSubset:
    """An ordered set U of vertices of an n-vertex host, with a bitset view."""

    def __init__(self, members, n: int):
        arr = np.asarray(members, dtype=np.int64).ravel()
        arr = np.sort(arr)
        if arr.size:
            if arr[0] < 0 or arr[-1] >= n:
                raise ValueError(f"subset member out of range for n={n}")
            if np.any(arr[1:] == arr[:-1]):
                raise ValueError("subset members must be distinct")
        self.members = arr
        self.members.setflags(write=False)
        self.n = n
        self._mask: np.ndarray | None = None
        self._bool: np.ndarray | None = None

    @classmethod
    def full(cls, n: int) -> "VertexSubset":
        return cls(np.arange(n, dtype=np.int64), n)

    @property
    def size(self) -> int:
        return int(self.members.size)

    @property
    def mask(self) -> np.ndarray:
        """uint64 bitset over the host's vertices."""
        if self._mask is None:
            self._mask = pack_bool_rows(self.bool_mask[None, :])[0]
            self._mask.setflags(write=False)
        return self._mask

    @property
    def bool_mask(self) -> np.ndarray:
        if self._bool is None:
            b = np.zeros(self.n, dtype=bool)
            b[self.members] = True
            b.setflags(write=False)
            self._bool = b
        return self._bool

    def complement(self) -> "VertexSubset":
        return VertexSubset(np.flatnonzero(~self.bool_mask), self.n)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, VertexSubset) and self.n == other.n
                and np.array_equal(self.members, other.members))

    def __hash__(self):
        return hash((self.n, self.members.tobytes()))

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"VertexSubset(size={self.size}, n={self.n})"


@dataclass(frozen=True)
class Pattern:
    """A fixed pattern graph H with h > 1 vertices and at least one edge."""

    h: int
    edges: tuple[tuple[int, int], ...]
    name: str | None = None

    def __post_init__(self):
        if self.h <= 1:
            raise ValueError("pattern needs more than one vertex")
        norm = []
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("pattern has a self-loop")
            if not (0 <= a < self.h and 0 <= b < self.h):
                raise ValueError("pattern edge endpoint out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate pattern edge {e}")
            seen.add(e)
            norm.append(e)
        if not norm:
            raise ValueError("pattern must have at least one edge")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def r(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.h, self.h), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a

    def label(self) -> str:
        return self.name or f"h{self.h}r{self.r}"


def cycle_pattern(t: int) -> Pattern:
    """Cycle on t >= 3 vertices."""
    if t < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Pattern(t, tuple((i, (i + 1) % t) for i in range(t)), name=f"c{t}")


BUILTIN_PATTERNS: dict[str, Pattern] = {
    "k2": Pattern(2, ((0, 1),), name="k2"),
    "k3": Pattern(3, ((0, 1), (0, 2), (1, 2)), name="k3"),
    "k4": Pattern(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)), name="k4"),
    "p3": Pattern(3, ((0, 1), (1, 2)), name="p3"),
    "c4": cycle_pattern(4),
    "c6": cycle_pattern(6),
}


def builtin_pattern(name: str) -> Pattern:
    try:
        return BUILTIN_PATTERNS[name.lower()]
    except KeyError:
        raise ValueError(
            f"unknown pattern {name!r}; built-ins: {', '.join(sorted(BUILTIN_PATTERNS))}"
        ) from None


# ---------------------------------------------------------------------------
# edge-list format: first line "n m", then m lines "u v" with 0 <= u < v < n

def _parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(1, "empty document, expected header 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(1, f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(1, f"non-integer header field in {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError(1, "negative count in header")
    if len(lines) - 1 != m:
        raise ParseError(min(len(lines), m + 1),
                         f"header promises {m} edges, document has {len(lines) - 1}")
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for idx, line in enumerate(lines[1:], start=2):
        tok = line.split()
        if len(tok) != 2:
            raise ParseError(idx, f"expected 'u v', got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(idx, f"non-integer vertex id in {line!r}") from None
        if u == v:
            raise ParseError(idx, f"self-loop at vertex {u}")
        if not (0 <= u < v < n):
            raise ParseError(idx, f"edge ({u}, {v}) violates 0 <= u < v < n={n}")
        if (u, v) in seen:
            raise ParseError(idx, f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    return n, edges


def from_edge_list(text: str) -> Graph:
    """Parse an edge-list document into a Graph."""
    n, edges = _parse_edge_list(text)
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    """Serialize a Graph to the edge-list format (edges in lexicographic order)."""
    out = [f"{g.n} {g.edge_count}"]
    dense = g.dense
    for u in range(g.n):
        for v in np.flatnonzero(dense[u, u + 1:]) + u + 1:
            out.append(f"{u} {v}")
    return "\n".join(out) + "\n"


def pattern_from_edge_list(text: str, name: str | None = None) -> Pattern:
    """Parse a pattern from the same edge-list format (header 'h r')."""
    h, edges = _parse_edge_list(text)
    return Pattern(h, tuple(edges), name=name)


# ---------------------------------------------------------------------------
# generators

@dataclass(frozen=True)
class GenSpec:
    """Deterministic generator spec; identical specs give bit-identical graphs."""

    kind: str
    n: int
    p: float | None = None
    seed: int = 0
    parts: tuple[int, ...] | None = None


def _part_offsets(parts: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    if not parts or any(s <= 0 for s in parts):
        raise ValueError("parts must be positive sizes")
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected n={n}")
    spans = []
    start = 0
    for s in parts:
        spans.append((start, start + s))
        start += s
    return spans


def generate(spec: GenSpec) -> Graph:
    """Build the graph described by spec.

    gnp draws each pair {u, v} with u < v independently with probability p,
    one PCG64 stream row per vertex u in increasing order; clique_union is the
    disjoint union of complete graphs on consecutive blocks of the given part
    sizes; complete_multipartite joins exactly the cross-part pairs.
    """
    if spec.kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator kind {spec.kind!r}")
    n = spec.n
    if n < 0:
        raise ValueError("n must be nonnegative")
    dense = np.zeros((n, n), dtype=bool)
    if spec.kind == "gnp":
        if spec.p is None or not (0.0 < spec.p < 1.0):
            raise ValueError("gnp needs p strictly inside (0, 1)")
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
        for u in range(n - 1):
            dense[u, u + 1:] = rng.random(n - u - 1) < spec.p
        dense |= dense.T
    elif spec.kind == "complete":
        dense[:] = True
        np.fill_diagonal(dense, False)
    elif spec.kind == "empty":
        pass
    elif spec.kind == "clique_union":
        if spec.parts is None:
            raise ValueError("clique_union needs parts")
        for a, b in _part_offsets(spec.parts, n):
            dense[a:b, a:b] = True
        np.fill_diagonal(dense, False)
    else:  # complete_multipartite
        if spec.parts is None:
            raise ValueError("complete_multipartite needs parts")
        dense[:] = True
        for a, b in _part_offsets(spec.parts, n):
            dense[a:b, a:b] = False
        np.fill_diagonal(dense, False)
    return Graph.from_dense(dense, _validated=True)


# ---------------------------------------------------------------------------
# structural operations

def induced_subgraph(g: Graph, u: VertexSubset) -> Graph:
    """Subgraph induced by u, relabeled 0..|u|-1 in member order."""
    if u.n != g.n:
        raise ValueError(f"subset is bound to n={u.n}, graph has n={g.n}")
    sub = g.dense[np.ix_(u.members, u.members)]
    return Graph.from_dense(sub, _validated=True)


def degree_sequence(g: Graph) -> list[int]:
    """Degree of each vertex; the sum is 2 * edge_count."""
    return [int(d) for d in g.degrees()]


def connected_components(g: Graph) -> list[np.ndarray]:
    """Vertex sets of the connected components, ordered by smallest member."""
    dense = g.dense
    visited = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if visited[s]:
            continue
        comp = np.zeros(g.n, dtype=bool)
        comp[s] = True
        frontier = comp.copy()
        while frontier.any():
            nxt = dense[frontier].any(axis=0) & ~comp
            comp |= nxt
            frontier = nxt
        visited |= comp
        comps.append(np.flatnonzero(comp).astype(np.int64))
    return comps
