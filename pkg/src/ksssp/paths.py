"""Path algebra: prefix-shared immutable paths, collections, and profiles.

A Path is a node chaining to a shared prefix, so extending by one vertex is
O(1) in time and memory and a run's total path storage is proportional to the
number of insertions rather than insertions times length. Identity is decided
by a rolling fingerprint plus a mandatory full-sequence comparison, so hash
collisions can never produce a false "already present" answer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from .graph import Graph

# Fingerprints are polynomial rolling hashes mod a Mersenne prime; combining
# is O(1) per appended vertex.
_FP_MOD = (1 << 61) - 1
_FP_BASE = 0x9E3779B97F4A7C15 % _FP_MOD
_FP_EMPTY = 0x243F6A8885A308D3 % _FP_MOD

Profile = tuple[float, ...]


class Path:
    """Immutable vertex sequence with cached weight and fingerprint.

    Ordering is the global tie-break used by every priority queue here:
    (weight, vertex count, lexicographic vertex sequence). Equality means
    sequence equality; the fingerprint only serves as the hash.
    """

    __slots__ = ("prev", "last", "weight", "length", "fingerprint", "_seq")

    prev: Optional["Path"]
    last: int
    weight: float
    length: int
    fingerprint: int

    def __init__(self, prev: Optional["Path"], last: int, weight: float,
                 length: int, fingerprint: int):
        self.prev = prev
        self.last = last
        self.weight = weight
        self.length = length
        self.fingerprint = fingerprint
        self._seq: Optional[tuple[int, ...]] = None

    @classmethod
    def single(cls, v: int) -> "Path":
        """The trivial path (v) of weight 0."""
        fp = (_FP_EMPTY * _FP_BASE + v + 1) % _FP_MOD
        return cls(None, v, 0.0, 1, fp)

    @classmethod
    def from_vertices(cls, graph: "Graph", vertices: list[int] | tuple[int, ...]) -> "Path":
        """Build a path over ``graph``, accumulating weight edge by edge."""
        if not vertices:
            raise ValueError("a path has at least one vertex")
        path = cls.single(vertices[0])
        for u in vertices[1:]:
            path = extend(path, u, graph)
        return path

    def extend_to(self, u: int, edge_weight: float) -> "Path":
        """Append vertex u reached over an edge of the given weight; O(1)."""
        fp = (self.fingerprint * _FP_BASE + u + 1) % _FP_MOD
        return Path(self, u, self.weight + edge_weight, self.length + 1, fp)

    def vertices(self) -> tuple[int, ...]:
        """The vertex sequence; materialized on first use and cached."""
        if self._seq is None:
            out = []
            node: Optional[Path] = self
            while node is not None:
                out.append(node.last)
                node = node.prev
            out.reverse()
            self._seq = tuple(out)
        return self._seq

    def first(self) -> int:
        node = self
        while node.prev is not None:
            node = node.prev
        return node.last

    def __iter__(self):
        return iter(self.vertices())

    def __len__(self) -> int:
        return self.length

    def __hash__(self) -> int:
        return self.fingerprint

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Path):
            return NotImplemented
        if (self.length != other.length
                or self.fingerprint != other.fingerprint):
            return False
        a: Optional[Path] = self
        b: Optional[Path] = other
        while a is not None and b is not None:
            if a is b:          # shared prefix: the rest is identical
                return True
            if a.last != b.last:
                return False
            a, b = a.prev, b.prev
        return a is None and b is None

    def __lt__(self, other: "Path") -> bool:
        if self.weight != other.weight:
            return self.weight < other.weight
        if self.length != other.length:
            return self.length < other.length
        return self.vertices() < other.vertices()

    def __repr__(self) -> str:
        return f"Path({'-'.join(map(str, self.vertices()))}, w={self.weight!r})"


def concat(p1: Path, p2: Path, graph: "Graph") -> Path:
    """Concatenation of p1 and p2, which must meet at p1's last vertex.

    The result repeats the junction vertex only once and need not be simple.
    """
    verts2 = p2.vertices()
    if p1.last != verts2[0]:
        raise ValueError(f"cannot concatenate: path ends at {p1.last}, "
                         f"next starts at {verts2[0]}")
    out = p1
    for u in verts2[1:]:
        out = extend(out, u, graph)
    return out


def extend(path: Path, u: int, graph: "Graph") -> Path:
    """One-vertex extension over the edge (last(path), u)."""
    w = graph.edge_weight(path.last, u)
    if w is None:
        raise ValueError(f"no edge ({path.last}, {u}) in graph")
    return path.extend_to(u, w)


def is_simple(path: Path) -> bool:
    verts = path.vertices()
    return len(set(verts)) == len(verts)


def contains_vertex(path: Path, u: int) -> bool:
    """Whether u occurs on the path; walks the prefix chain when uncached."""
    if path._seq is not None:
        return u in path._seq
    node: Optional[Path] = path
    while node is not None:
        if node.last == u:
            return True
        node = node.prev
    return False


def is_prefix(p1: Path, p2: Path) -> bool:
    """Whether p2's sequence begins with p1's (every path prefixes itself)."""
    if p1.length > p2.length:
        return False
    return p2.vertices()[:p1.length] == p1.vertices()


@dataclass
class PathCollection:
    """Ordered collection of simple paths between one endpoint pair."""
    source: int
    target: int
    entries: list[Path] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def profile(collection: PathCollection) -> Profile:
    """Non-decreasing list of the collection's path weights."""
    return tuple(sorted(p.weight for p in collection.entries))


def compare_profiles(a: Profile, b: Profile) -> int:
    """Lexicographic order; a proper prefix compares less than its extension.

    Returns -1, 0, or 1.
    """
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def render_path(path: Path) -> str:
    """Text rendering: weight at full stored precision, then dash-joined ids."""
    return f"{path.weight!r}\t{'-'.join(map(str, path.vertices()))}"
