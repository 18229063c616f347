"""Exact integer linear algebra: quotient matrices, characteristic polynomials,
and eigenvalue multiplicities via exact rank.

Everything here is arbitrary-precision integer arithmetic; the modular
charpoly path reconstructs exact coefficients through CRT under a proven
coefficient bound, so no result ever depends on floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import mask_from
from .errors import MixedBlock, NotEquitable
from .graphs import Graph, Partition

_DIRECT_CHARPOLY_CAP = 32   # Faddeev-LeVerrier below, CRT reconstruction above


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial; coefficients descending, constant term last."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", tuple[int, ...]]:
        """Polynomial long division by a monic divisor over the integers."""
        if divisor.coeffs[0] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = len(rem) - len(divisor.coeffs)
        if dq < 0:
            return IntPolynomial((0,)), tuple(rem)
        quo = [0] * (dq + 1)
        for i in range(dq + 1):
            c = rem[i]
            quo[i] = c
            if c:
                for j, d in enumerate(divisor.coeffs):
                    rem[i + j] -= c * d
        tail = tuple(rem[dq + 1:])
        return IntPolynomial(tuple(quo)), tail

    def divides(self, other: "IntPolynomial") -> bool:
        _, rem = other.divmod_exact(self)
        return not any(rem)

    def root_multiplicity(self, r: int) -> int:
        """Order of the integer root r (0 when r is not a root)."""
        count = 0
        poly = list(self.coeffs)
        while len(poly) > 1:
            # synthetic division by (x - r)
            out = [poly[0]]
            for c in poly[1:]:
                out.append(out[-1] * r + c)
            if out[-1] != 0:
                break
            count += 1
            poly = out[:-1]
        return count

    def to_text(self, var: str = "x") -> str:
        terms = []
        deg = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = deg - i
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" if power == 1 else f"{head}{var}^{power}"
            sign = "-" if c < 0 else ("+" if terms else "")
            terms.append(sign + body)
        return "".join(terms) if terms else "0"

    def to_json_list(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class QuotientMatrix:
    """Equitable quotient of a graph: block adjacency counts."""

    entries: tuple[tuple[int, ...], ...]
    part_sizes: tuple[int, ...]
    part_kinds: tuple[str, ...]   # "clique" | "independent"
    labels: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_json_dict(self) -> dict:
        return {
            "entries": self.rows(),
            "part_sizes": list(self.part_sizes),
            "part_kinds": list(self.part_kinds),
            "labels": list(self.labels),
        }


def equitable_quotient_matrix(g: Graph, partition: Partition) -> QuotientMatrix:
    """Block matrix: diagonal |Vi|-1 for clique blocks else 0; off-diagonal
    |Vj| when block i is fully joined to block j, else 0.

    Raises NotEquitable unless every block pair is fully joined or fully
    separated, and MixedBlock unless each block is a clique or independent.
    """
    blocks = partition.blocks
    masks = [mask_from(b) for _, b in blocks]
    kinds = []
    for (label, block), mask in zip(blocks, masks):
        if len(block) == 1:
            kinds.append("clique")  # neutral; diagonal entry is 0 either way
            continue
        first = g.rows[block[0]] & mask
        internal_clique = first == mask ^ (1 << block[0])
        internal_indep = first == 0
        if not (internal_clique or internal_indep):
            raise MixedBlock(label)
        for v in block:
            inside = g.rows[v] & mask
            want = (mask ^ (1 << v)) if internal_clique else 0
            if inside != want:
                raise MixedBlock(label)
        kinds.append("clique" if internal_clique else "independent")
    k = len(blocks)
    entries = [[0] * k for _ in range(k)]
    for i, (label_i, block_i) in enumerate(blocks):
        for j, (label_j, block_j) in enumerate(blocks):
            if i == j:
                if kinds[i] == "clique":
                    entries[i][i] = len(block_i) - 1
                continue
            joined = g.rows[block_i[0]] & masks[j]
            expect = masks[j] if joined else 0
            for v in block_i:
                if g.rows[v] & masks[j] != expect:
                    raise NotEquitable(v, label_j)
            if joined:
                entries[i][j] = len(block_j)
    return QuotientMatrix(
        tuple(tuple(r) for r in entries),
        tuple(len(b) for _, b in blocks),
        tuple(kinds),
        tuple(lab for lab, _ in blocks),
    )


# ---------------------------------------------------------------------------
# Exact characteristic polynomials
# ---------------------------------------------------------------------------

def _as_int_rows(m) -> list[list[int]]:
    if isinstance(m, QuotientMatrix):
        return m.rows()
    if isinstance(m, Graph):
        return adjacency_rows(m)
    if isinstance(m, np.ndarray):
        return [[int(x) for x in row] for row in m]
    return [[int(x) for x in row] for row in m]


def adjacency_rows(g: Graph) -> list[list[int]]:
    return [[1 if g.adjacent(u, v) else 0 for v in range(g.n)] for u in range(g.n)]


def _charpoly_leverrier(rows: list[list[int]]) -> list[int]:
    """Faddeev-LeVerrier over exact integers; the by-k divisions are exact."""
    n = len(rows)
    coeffs = [1]
    m_prev = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        if k == 1:
            am = [row[:] for row in rows]
        else:
            am = [
                [sum(rows[i][t] * m_prev[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
        trace = sum(am[i][i] for i in range(n))
        c = -trace // k
        assert trace % k == 0
        coeffs.append(c)
        for i in range(n):
            am[i][i] += c
        m_prev = am
    return coeffs


def _charpoly_coeff_bound(rows: list[list[int]]) -> int:
    """Bound max |c_k| via sums of k x k principal minors and Hadamard."""
    n = len(rows)
    col_norm2 = [sum(rows[i][j] * rows[i][j] for i in range(n)) for j in range(n)]
    big = max(col_norm2, default=0)
    bound = 1
    for k in range(1, n + 1):
        minor = math.isqrt(big ** k) + 1
        bound = max(bound, math.comb(n, k) * minor)
    return bound


def _charpoly_mod(rows_np: np.ndarray, p: int) -> np.ndarray:
    """charpoly mod prime p: Hessenberg similarity then the leading-minor recurrence."""
    a = np.mod(rows_np, p).astype(np.int64)
    n = a.shape[0]
    for j in range(n - 2):
        col = a[j + 1:, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = int(nz[0]) + j + 1
        if piv != j + 1:
            a[[j + 1, piv], :] = a[[piv, j + 1], :]
            a[:, [j + 1, piv]] = a[:, [piv, j + 1]]
        inv = pow(int(a[j + 1, j]), p - 2, p)
        f = (a[j + 2:, j] * inv) % p
        if f.any():
            a[j + 2:, :] = (a[j + 2:, :] - f[:, None] * a[j + 1, :]) % p
            a[:, j + 1] = (a[:, j + 1] + a[:, j + 2:] @ f) % p
    # c_k = (x - h[k-1,k-1]) c_{k-1} - sum_i h[i,k-1] * (prod subdiagonals) c_i
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)  # ascending coefficients
    polys[0, 0] = 1
    for k in range(1, n + 1):
        ck = np.zeros(n + 1, dtype=np.int64)
        prev = polys[k - 1]
        ck[1:k + 1] = prev[:k]
        ck[:k] = (ck[:k] - a[k - 1, k - 1] * prev[:k]) % p
        if k >= 2:
            weights = np.zeros(k - 1, dtype=np.int64)
            prod = 1
            for i in range(k - 2, -1, -1):
                prod = (prod * int(a[i + 1, i])) % p
                weights[i] = (int(a[i, k - 1]) * prod) % p
            if weights.any():
                ck[:k] = (ck[:k] - weights @ polys[:k - 1, :k]) % p
        ck %= p
        polys[k] = ck
    return polys[n]


def _primes_for_crt(need: int, bits: int) -> list[int]:
    """Odd primes just under 2**bits whose product exceeds ``need``."""
    out = []
    cand = (1 << bits) - 1
    have = 1
    while have <= need:
        if cand % 2 and all(cand % q for q in range(3, math.isqrt(cand) + 1, 2)):
            out.append(cand)
            have *= cand
        cand -= 2
    return out


def _charpoly_crt(rows: list[list[int]]) -> list[int]:
    n = len(rows)
    bound = _charpoly_coeff_bound(rows)
    rows_np = np.array(rows, dtype=np.int64)
    # keep p^2 * n within int64 for the dot products in the reduction
    bits = min(26, (62 - n.bit_length()) // 2)
    primes = _primes_for_crt(2 * bound + 1, bits)
    residues = [_charpoly_mod(rows_np, p) for p in primes]
    modulus = 1
    acc = [0] * (n + 1)
    for p, res in zip(primes, residues):
        if modulus == 1:
            acc = [int(x) % p for x in res]
            modulus = p
            continue
        inv = pow(modulus % p, p - 2, p)
        for i in range(n + 1):
            delta = ((int(res[i]) - acc[i]) * inv) % p
            acc[i] += modulus * delta
        modulus *= p
    half = modulus // 2
    lifted = [c - modulus if c > half else c for c in acc]
    return list(reversed(lifted))  # to descending


def char_poly(m) -> IntPolynomial:
    """Exact det(xI - M) for an integer matrix, quotient matrix, or graph."""
    rows = _as_int_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return IntPolynomial((1,))
    if n <= _DIRECT_CHARPOLY_CAP:
        coeffs = _charpoly_leverrier(rows)
    else:
        coeffs = _charpoly_crt(rows)
    return IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# Exact rank and determinant (fraction-free elimination)
# ---------------------------------------------------------------------------

def bareiss_rank_det(rows: list[list[int]]) -> tuple[int, int]:
    """(rank, determinant) by Bareiss fraction-free elimination.

    The determinant is meaningful only for square full-rank input; it is
    reported as 0 otherwise.
    """
    a = [row[:] for row in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rank = 0
    prev = 1
    sign = 1
    col = 0
    while rank < nr and col < nc:
        piv = None
        for i in range(rank, nr):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        pivot = a[rank][col]
        for i in range(rank + 1, nr):
            row_i = a[i]
            row_r = a[rank]
            factor = row_i[col]
            for j in range(col, nc):
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
        prev = pivot
        rank += 1
        col += 1
    if nr and nr == nc and rank == nr:
        return rank, sign * prev
    return rank, 0


def eigenvalue_multiplicity(g: Graph, lam: int) -> int:
    """Multiplicity of the integer eigenvalue lam: n - rank(A - lam*I)."""
    rows = adjacency_rows(g)
    for i in range(g.n):
        rows[i][i] -= lam
    rank, _ = bareiss_rank_det(rows)
    return g.n - rank


def exact_determinant(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    rank, det = bareiss_rank_det(rows)
    return det if rank == n else 0
