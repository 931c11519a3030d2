"""Hypergraphs, their text format, spanning subhypergraphs and bipartitions."""

from __future__ import annotations

from dataclasses import dataclass

MAX_VERTICES = 10
MAX_EDGES = 20


class HypergraphError(ValueError):
    """Invalid hypergraph data (bad edge, duplicate, capacity, ...)."""


class HypergraphParseError(HypergraphError):
    """Syntax or semantic error in the hypergraph text format."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


def _canonical_edges(edges):
    """Sort edges by (cardinality, vertex list) and return them as tuples."""
    canon = [tuple(sorted(set(e))) for e in edges]
    return tuple(sorted(canon, key=lambda e: (len(e), e)))


@dataclass(frozen=True)
class Hypergraph:
    """A vertex count plus a set of hyperedges over 1-based vertex indices.

    Edges are stored canonically: each edge a sorted tuple, the edge list
    sorted by (cardinality, lexicographic vertex order).
    """

    n_vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, n_vertices, edges):
        if n_vertices < 1:
            raise HypergraphError(f"n_vertices must be >= 1, got {n_vertices}")
        if n_vertices > MAX_VERTICES:
            raise HypergraphError(
                f"n_vertices = {n_vertices} exceeds capacity {MAX_VERTICES}")
        canon = _canonical_edges(edges)
        seen = set()
        for e in canon:
            if len(e) < 2:
                raise HypergraphError(f"hyperedge {e} has cardinality < 2")
            if any(v < 1 or v > n_vertices for v in e):
                raise HypergraphError(
                    f"hyperedge {e} has a vertex index out of range 1..{n_vertices}")
            if e in seen:
                raise HypergraphError(f"duplicate hyperedge {e}")
            seen.add(e)
        if len(canon) > MAX_EDGES:
            raise HypergraphError(f"|E| = {len(canon)} exceeds capacity {MAX_EDGES}")
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", canon)

    def cardinalities(self):
        """Set of hyperedge cardinalities present."""
        return {len(e) for e in self.edges}

    def is_k_uniform(self, k):
        """True iff every hyperedge has cardinality k (k >= 2)."""
        if k < 2:
            raise HypergraphError(f"k must be >= 2, got {k}")
        return all(len(e) == k for e in self.edges)

    def to_text(self):
        """Serialize to the canonical text format."""
        lines = [f"n {self.n_vertices}"]
        lines += ["e " + " ".join(str(v) for v in e) for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_hypergraph(text):
    """Parse the hypergraph text format.

    Format: ``#`` starts a comment, blank lines are ignored, the first
    effective line is ``n <int>``, every following one ``e <v1> <v2> ...``
    with distinct 1-based vertex indices.
    """
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = line.split()
        tag = tokens[0]
        col = line.index(tag) + 1
        if n is None:
            if tag != "n":
                raise HypergraphParseError(
                    f"expected 'n <int>' header, got {tag!r}", lineno, col)
            if len(tokens) != 2:
                raise HypergraphParseError("'n' line takes exactly one integer", lineno, col)
            try:
                n = int(tokens[1])
            except ValueError:
                raise HypergraphParseError(
                    f"invalid vertex count {tokens[1]!r}", lineno, col) from None
            if n < 1:
                raise HypergraphParseError(f"vertex count must be >= 1, got {n}", lineno, col)
            continue
        if tag != "e":
            raise HypergraphParseError(f"expected 'e' line, got {tag!r}", lineno, col)
        try:
            verts = [int(t) for t in tokens[1:]]
        except ValueError:
            raise HypergraphParseError("non-integer vertex index", lineno, col) from None
        if len(set(verts)) != len(verts):
            raise HypergraphParseError(f"repeated vertex in hyperedge {verts}", lineno, col)
        if len(verts) < 2:
            raise HypergraphParseError(
                f"hyperedge {verts} has cardinality < 2", lineno, col)
        if any(v < 1 or v > n for v in verts):
            raise HypergraphParseError(
                f"vertex index out of range 1..{n} in hyperedge {verts}", lineno, col)
        edge = tuple(sorted(verts))
        if edge in seen:
            raise HypergraphParseError(f"duplicate hyperedge {list(edge)}", lineno, col)
        seen.add(edge)
        edges.append(edge)
    if n is None:
        raise HypergraphParseError("missing 'n <int>' header", None, None)
    return Hypergraph(n, edges)


def spanning_subhypergraphs(h):
    """All 2^|E| subhypergraphs on the same vertex set, bitmask order.

    Bit i of the mask selects edge i of the canonical edge list; masks are
    enumerated ascending, so the order is deterministic.
    """
    m = len(h.edges)
    if m > MAX_EDGES:
        raise HypergraphError(f"|E| = {m} exceeds capacity {MAX_EDGES}")
    out = []
    for mask in range(1 << m):
        sub = [h.edges[i] for i in range(m) if mask >> i & 1]
        out.append(Hypergraph(h.n_vertices, sub))
    return out


@dataclass(frozen=True)
class Bipartition:
    """One side ``part_m`` of a split {m}|{m~} of qubits 1..n.

    Canonical form: part_m never contains qubit n, so each unordered pair
    of complementary parts appears exactly once.
    """

    n_qubits: int
    part_m: tuple[int, ...]

    def __init__(self, n_qubits, part_m):
        part = tuple(sorted(set(part_m)))
        if n_qubits < 2:
            raise HypergraphError(f"bipartition needs n >= 2, got {n_qubits}")
        if not part or len(part) >= n_qubits:
            raise HypergraphError(f"part {part} is not a nonempty proper subset")
        if any(v < 1 or v > n_qubits for v in part):
            raise HypergraphError(f"part {part} out of range 1..{n_qubits}")
        if n_qubits in part:
            part = tuple(sorted(set(range(1, n_qubits + 1)) - set(part)))
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "part_m", part)

    @property
    def complement(self):
        return tuple(sorted(set(range(1, self.n_qubits + 1)) - set(self.part_m)))

    def __str__(self):
        fmt = lambda part: ",".join(str(v) for v in part)
        return f"{{{fmt(self.part_m)}}}|{{{fmt(self.complement)}}}"


def bipartitions(n):
    """All 2^(n-1) - 1 canonical nontrivial bipartitions of qubits 1..n.

    Deterministic order: by part size, then lexicographically.
    """
    if n < 2:
        raise HypergraphError(f"bipartitions need n >= 2, got {n}")
    parts = []
    # subsets of {1..n-1} (canonical parts exclude qubit n), nonempty
    rest = list(range(1, n))
    for mask in range(1, 1 << (n - 1)):
        parts.append(tuple(rest[i] for i in range(n - 1) if mask >> i & 1))
    parts.sort(key=lambda p: (len(p), p))
    return [Bipartition(n, p) for p in parts]
