"""Simple graphs over bitset adjacency rows, plus the ring-derived builders.

Rows are Python ints used as bitmasks; equal rows are shared between
twin vertices, which keeps even the largest supported graphs compact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._util import DSU, iter_bits, mask_from
from .errors import SizeCapExceeded, WrongRingKind, ZdgError
from .ringexpr import render_ring_spec
from .rings import DEFAULT_CAP, Ring, ZnRing, annihilator_keys, euler_phi


class Graph:
    """Undirected simple graph; ``rows[v]`` is the neighbor bitmask of v."""

    __slots__ = ("n", "rows", "labels", "provenance")

    def __init__(self, n: int, rows: list[int], labels: list[str] | None = None,
                 provenance: str | None = None):
        self.n = n
        self.rows = rows
        self.labels = labels if labels is not None else [str(i) for i in range(n)]
        self.provenance = provenance

    @classmethod
    def from_edges(cls, n: int, edges, labels=None, provenance=None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ZdgError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels, provenance)

    def adjacent(self, u: int, v: int) -> bool:
        return (self.rows[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int):
        return iter_bits(self.rows[v])

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self):
        """Yield (u, v) with u < v, lexicographically sorted."""
        for u in range(self.n):
            high = self.rows[u] >> (u + 1)
            for off in iter_bits(high):
                yield (u, u + 1 + off)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_simple(self) -> None:
        for v in range(self.n):
            if (self.rows[v] >> v) & 1:
                raise ZdgError(f"loop at vertex {v}")
        for u in range(self.n):
            for v in iter_bits(self.rows[u]):
                if not self.adjacent(v, u):
                    raise ZdgError(f"asymmetric edge {u}-{v}")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "edges": [[u, v] for u, v in self.edges()],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        n = int(data["n"])
        labels = [str(s) for s in data.get("labels") or [str(i) for i in range(n)]]
        if len(labels) != n:
            raise ZdgError("label count does not match n")
        return cls.from_edges(n, data["edges"], labels, data.get("provenance"))

    def to_dot(self, partition: "Partition | None" = None) -> str:
        def q(s: str) -> str:
            return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = ["graph G {"]
        if partition is not None:
            for bi, (label, block) in enumerate(partition.blocks):
                lines.append(f"  subgraph cluster_{bi} {{")
                lines.append(f"    label={q(label)};")
                lines.append("    rank=same;")
                for v in block:
                    lines.append(f"    {v} [label={q(self.labels[v])}];")
                lines.append("  }")
        else:
            for v in range(self.n):
                lines.append(f"  {v} [label={q(self.labels[v])}];")
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, tuple(self.rows)))

    def __repr__(self):
        return f"<Graph n={self.n} m={self.edge_count()}>"


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


@dataclass(frozen=True)
class Partition:
    """Labeled disjoint blocks covering 0..n-1."""

    blocks: tuple  # tuple[(label, tuple[int, ...]), ...]
    kind: str      # "gcd" | "twin" | "aut" | "custom"
    n: int

    def __post_init__(self):
        seen = 0
        total = 0
        for _, block in self.blocks:
            m = mask_from(block)
            if m & seen:
                raise ZdgError("partition blocks overlap")
            seen |= m
            total += len(block)
        if total != self.n or (self.n and seen != (1 << self.n) - 1):
            raise ZdgError("partition does not cover all vertices")

    def block_sizes(self) -> list[int]:
        return [len(b) for _, b in self.blocks]

    def block_of(self) -> list[int]:
        out = [0] * self.n
        for bi, (_, block) in enumerate(self.blocks):
            for v in block:
                out[v] = bi
        return out

    def as_sets(self) -> set[frozenset]:
        return {frozenset(b) for _, b in self.blocks}

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "blocks": [{"label": lab, "vertices": list(b), "size": len(b)} for lab, b in self.blocks],
        }

    def refines(self, coarser: "Partition") -> bool:
        """True when every block here sits inside one block of ``coarser``."""
        masks = [mask_from(b) for _, b in coarser.blocks]
        for _, block in self.blocks:
            m = mask_from(block)
            if not any(m & cm == m for cm in masks):
                return False
        return True


def make_partition(blocks, kind: str, n: int) -> Partition:
    ordered = sorted(((lab, tuple(sorted(b))) for lab, b in blocks), key=lambda t: t[1][0])
    return Partition(tuple(ordered), kind, n)


@dataclass(frozen=True)
class JoinSkeleton:
    skeleton: Graph
    parts: tuple


# ---------------------------------------------------------------------------
# Zero-divisor graph construction
# ---------------------------------------------------------------------------

def build_zero_divisor_graph(ring: Ring, cap: int = DEFAULT_CAP) -> Graph:
    """Graph on all ring elements; distinct x, y adjacent iff x*y = 0.

    Elements are first grouped by annihilator key; adjacency is then decided
    once per pair of groups from representative products, which both avoids
    the quadratic multiplication sweep and lets equal-neighborhood vertices
    share one row object.
    """
    n = ring.size
    if n > cap:
        raise SizeCapExceeded(f"graph on {n} vertices is above the cap of {cap}")
    keys = annihilator_keys(ring)
    class_of = [0] * n
    members: list[list[int]] = []
    index: dict = {}
    for x in range(n):
        cid = index.get(keys[x])
        if cid is None:
            cid = len(members)
            index[keys[x]] = cid
            members.append([])
        class_of[x] = cid
        members[cid].append(x)
    k = len(members)
    reps = [m[0] for m in members]

    masks = []
    for mem in members:
        buf = bytearray(n // 8 + 1)
        for v in mem:
            buf[v >> 3] |= 1 << (v & 7)
        masks.append(int.from_bytes(bytes(buf), "little"))

    zero = ring.zero
    clique = [ring.mul(r, r) == zero for r in reps]
    base_rows = []
    for ci in range(k):
        row = masks[ci] if clique[ci] else 0
        ri = reps[ci]
        for cj in range(k):
            if cj != ci and ring.mul(ri, reps[cj]) == zero:
                row |= masks[cj]
        base_rows.append(row)

    rows = [0] * n
    for ci in range(k):
        base = base_rows[ci]
        if clique[ci]:
            for v in members[ci]:
                rows[v] = base ^ (1 << v)
        else:
            for v in members[ci]:
                rows[v] = base
    labels = [ring.label(i) for i in range(n)]
    return Graph(n, rows, labels, provenance=render_ring_spec(ring.spec))


def gcd_class_partition(ring: Ring) -> Partition:
    """One block A_d per divisor d of n, for Z/n rings only."""
    if not isinstance(ring, ZnRing):
        raise WrongRingKind("gcd classes are defined for Z/n rings")
    n = ring.n
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(math.gcd(x, n) if x else n, []).append(x)
    blocks = [(f"A_{d}", tuple(sorted(v))) for d, v in sorted(groups.items())]
    return Partition(tuple(blocks), "gcd", n)


def twin_partition(g: Graph) -> Partition:
    """Blocks of mutually twin vertices: N(u) minus v equals N(v) minus u."""
    dsu = DSU(g.n)
    open_groups: dict[int, int] = {}
    closed_groups: dict[int, int] = {}
    for v in range(g.n):
        row = g.rows[v]
        prev = open_groups.setdefault(row, v)
        if prev != v:
            dsu.union(prev, v)
        closed = row | (1 << v)
        prev = closed_groups.setdefault(closed, v)
        if prev != v:
            dsu.union(prev, v)
    blocks = [(f"T{i}", tuple(grp)) for i, grp in enumerate(dsu.groups())]
    return Partition(tuple(blocks), "twin", g.n)


def divisor_graph(n: int) -> Graph:
    """Graph on proper divisors 1 < d < n; edge d_i-d_j iff n divides d_i*d_j."""
    if n < 2:
        raise ZdgError("divisor graph needs n >= 2")
    divs = [d for d in range(2, n) if n % d == 0]
    idx = {d: i for i, d in enumerate(divs)}
    edges = []
    for i, d in enumerate(divs):
        for e in divs[i + 1:]:
            if (d * e) % n == 0:
                edges.append((idx[d], idx[e]))
    return Graph.from_edges(len(divs), edges, [str(d) for d in divs], provenance=f"divisors({n})")


def generalized_join(sk: JoinSkeleton) -> Graph:
    """Replace skeleton vertex i by parts[i]; fully join parts across skeleton edges."""
    parts = sk.parts
    if sk.skeleton.n != len(parts):
        raise ZdgError("skeleton order must match the number of parts")
    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += part.n
    masks = [((1 << part.n) - 1) << off for part, off in zip(parts, offsets)]
    join_row = [0] * len(parts)
    for i in range(len(parts)):
        for j in iter_bits(sk.skeleton.rows[i]):
            join_row[i] |= masks[j]
    rows = [0] * total
    labels = [""] * total
    for i, (part, off) in enumerate(zip(parts, offsets)):
        for v in range(part.n):
            rows[off + v] = (part.rows[v] << off) | join_row[i]
            labels[off + v] = part.labels[v]
    return Graph(total, rows, labels)


def induced_subgraph(g: Graph, vertices) -> Graph:
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    rows = [0] * len(vs)
    vset = mask_from(vs)
    for v in vs:
        sub = g.rows[v] & vset
        row = 0
        for u in iter_bits(sub):
            row |= 1 << pos[u]
        rows[pos[v]] = row
    return Graph(len(vs), rows, [g.labels[v] for v in vs], provenance=g.provenance)


def orbit_block_classification(p: int, alpha: int, cap: int = DEFAULT_CAP):
    """For Z_{p^alpha}: per-exponent block sizes and clique/independent kinds.

    Block i holds the elements of gcd p^i; it induces a complete subgraph
    exactly when 2*i >= alpha, and singleton blocks count as complete.
    """
    if p ** alpha > cap:
        raise SizeCapExceeded(f"p^alpha = {p ** alpha} above cap {cap}")
    out = []
    for i in range(alpha + 1):
        size = euler_phi(p ** (alpha - i))
        kind = "complete" if (size == 1 or 2 * i >= alpha) else "independent"
        out.append((i, kind, size))
    return out
