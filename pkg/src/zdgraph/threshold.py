"""Threshold recognition with certificates in both directions.

A graph is threshold iff it can be dismantled by repeatedly deleting a
vertex that is isolated or dominating in what remains.  The dismantling
runs on degrees alone: deleting an isolated vertex changes no remaining
degree, deleting a dominating vertex lowers every remaining degree by one,
so a vertex is isolated exactly when its original degree equals the number
of dominating deletions so far.  On a stall the remaining subgraph carries
a pair of vertices with incomparable neighborhoods, which yields an
alternating-4-cycle witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._util import iter_bits, lowest_bit, mask_from
from .errors import MalformedCode, NotThresholdError
from .graphs import Graph, Partition

_LEX_ONLY_CAP = 64  # below this the 4-cycle oracle is the raw lexicographic scan


@dataclass(frozen=True)
class CreationSequence:
    """Binary build recipe: 0 adds an isolated vertex, 1 a dominating one."""

    bits: str

    def __post_init__(self):
        if not self.bits or any(c not in "01" for c in self.bits):
            raise MalformedCode(f"code must be a nonempty 0/1 string, got {self.bits!r}")
        if self.bits[0] != "0":
            raise MalformedCode("code must start with 0 (the initial vertex)")

    def __len__(self):
        return len(self.bits)

    def runs(self) -> list[tuple[str, int]]:
        """Run-length pairs, e.g. 0000111001 -> [(0,4),(1,3),(0,2),(1,1)]."""
        out: list[tuple[str, int]] = []
        for b in self.bits:
            if out and out[-1][0] == b:
                out[-1] = (b, out[-1][1] + 1)
            else:
                out.append((b, 1))
        return out

    def __str__(self):
        return self.bits


@dataclass(frozen=True)
class AlternatingFourCycle:
    """Vertices with edges (a,b),(c,d) and non-edges (a,c),(b,d)."""

    a: int
    b: int
    c: int
    d: int
    shape: str  # "P4" | "C4" | "2K2"

    def validate(self, g: Graph) -> bool:
        vs = (self.a, self.b, self.c, self.d)
        if len(set(vs)) != 4 or any(v < 0 or v >= g.n for v in vs):
            return False
        a, b, c, d = vs
        if not (g.adjacent(a, b) and g.adjacent(c, d)):
            return False
        if g.adjacent(a, c) or g.adjacent(b, d):
            return False
        return self.shape == _shape_of(g, a, b, c, d)

    def to_json_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "shape": self.shape}


def _shape_of(g: Graph, a: int, b: int, c: int, d: int) -> str:
    extra = int(g.adjacent(a, d)) + int(g.adjacent(b, c))
    return {0: "2K2", 1: "P4", 2: "C4"}[extra]


@dataclass(frozen=True)
class ThresholdResult:
    is_threshold: bool
    code: CreationSequence | None = None
    witness: AlternatingFourCycle | None = None

    def to_json_dict(self) -> dict:
        return {
            "verdict": "threshold" if self.is_threshold else "not_threshold",
            "code": self.code.bits if self.code else None,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


def _witness_from_remaining(g: Graph, remaining: list[int], rem_degree) -> AlternatingFourCycle:
    """Deterministic witness for a non-dismantlable induced subgraph.

    Scans vertices in remaining-degree order; some consecutive pair must
    have incomparable neighborhoods, which pins the four witness vertices.
    """
    rem_mask = mask_from(remaining)
    order = sorted(remaining, key=lambda v: (-rem_degree(v), v))
    for u, v in zip(order, order[1:]):
        bit_u, bit_v = 1 << u, 1 << v
        nu = g.rows[u] & rem_mask
        nv = g.rows[v] & rem_mask
        b_mask = nu & ~nv & ~bit_v
        d_mask = nv & ~nu & ~bit_u
        if b_mask and d_mask:
            b = lowest_bit(b_mask)
            d = lowest_bit(d_mask)
            return AlternatingFourCycle(u, b, d, v, _shape_of(g, u, b, d, v))
    raise AssertionError("stalled subgraph must contain an incomparable pair")


def is_threshold(g: Graph) -> ThresholdResult:
    """Dismantle by isolated/dominating deletions; certificate either way."""
    n = g.n
    if n == 0:
        return ThresholdResult(True, None, None)
    deg0 = g.degrees()
    buckets: dict[int, list[int]] = {}
    for v in range(n - 1, -1, -1):  # lists end with the lowest index
        buckets.setdefault(deg0[v], []).append(v)

    def pop_min(d: int) -> int | None:
        b = buckets.get(d)
        return b.pop() if b else None

    def peek_min(d: int) -> int | None:
        b = buckets.get(d)
        return b[-1] if b else None

    record: list[str] = []
    dominated = 0
    for step in range(n):
        n_rem = n - step
        if n_rem == 1:
            record.append("0")  # the initial vertex is recorded as isolated
            continue
        iso_deg = dominated
        dom_deg = dominated + n_rem - 1
        iso = peek_min(iso_deg)
        dom = peek_min(dom_deg) if dom_deg != iso_deg else None
        if iso is None and dom is None:
            remaining = [v for b in buckets.values() for v in b]
            witness = _witness_from_remaining(g, remaining, lambda v: deg0[v] - dominated)
            return ThresholdResult(False, None, witness)
        if dom is None or (iso is not None and iso < dom):
            pop_min(iso_deg)
            record.append("0")
        else:
            pop_min(dom_deg)
            record.append("1")
            dominated += 1
    return ThresholdResult(True, CreationSequence("".join(reversed(record))), None)


def creation_sequence(g: Graph) -> CreationSequence:
    result = is_threshold(g)
    if not result.is_threshold:
        raise NotThresholdError(f"graph has an alternating 4-cycle: {result.witness}")
    return result.code


def build_threshold_from_code(code: CreationSequence | str) -> Graph:
    """Grow a graph from the recipe: bit 0 adds isolated, bit 1 adds dominating."""
    if isinstance(code, str):
        code = CreationSequence(code)
    bits = code.bits
    n = len(bits)
    rows = [0] * n
    existing = 0
    for i, b in enumerate(bits):
        if b == "1":
            rows[i] = existing
            for v in iter_bits(existing):
                rows[v] |= 1 << i
        existing |= 1 << i
    return Graph(n, rows, labels=list(bits), provenance=f"code:{bits}")


def run_block_partition(code: CreationSequence | str) -> Partition:
    """Partition of the code-built graph into its consecutive 0/1 runs."""
    if isinstance(code, str):
        code = CreationSequence(code)
    blocks = []
    at = 0
    for bit, length in code.runs():
        blocks.append((f"{bit}^{length}", tuple(range(at, at + length))))
        at += length
    return Partition(tuple(blocks), "custom", at)


def _vicinal_order_total(g: Graph) -> bool:
    """True iff neighborhoods are nested along the degree order (no 4-cycle)."""
    degs = g.degrees()
    order = sorted(range(g.n), key=lambda v: (-degs[v], v))
    for u, v in zip(order, order[1:]):
        if (g.rows[v] & ~(1 << u)) & ~g.rows[u]:
            return False
    return True


def find_alternating_four_cycle(g: Graph) -> AlternatingFourCycle | None:
    """First witness in lexicographic (a, b, c, d) order, or None.

    For large graphs a nestedness test settles the empty case first, so
    confirming a threshold graph stays near-linear; any returned witness
    still comes from the lexicographic scan.
    """
    n = g.n
    if n > _LEX_ONLY_CAP and _vicinal_order_total(g):
        return None
    full = g.full_mask()
    for a in range(n):
        row_a = g.rows[a]
        comp_a = ~row_a & full & ~(1 << a)
        for b in iter_bits(row_a):
            not_ab = ~((1 << a) | (1 << b))
            cand_c = comp_a & ~(1 << b)
            for c in iter_bits(cand_c):
                cand_d = g.rows[c] & ~g.rows[b] & not_ab
                if cand_d:
                    d = lowest_bit(cand_d)
                    return AlternatingFourCycle(a, b, c, d, _shape_of(g, a, b, c, d))
    return None
