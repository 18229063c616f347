"""Small shared helpers: bit iteration, disjoint sets, integer lattice forms."""

from __future__ import annotations


def iter_bits(mask: int):
    """Yield set-bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_from(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class DSU:
    """Union-find over 0..n-1 with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list[int]]:
        by_root: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            by_root.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in sorted(by_root.values(), key=min)]


def hermite_normal_form(rows: list[list[int]], width: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the integer lattice spanned by ``rows``.

    Requires the lattice to have full column rank ``width`` (callers stack
    M*I rows to guarantee it).  Returns the canonical upper-triangular
    ``width x width`` matrix with positive pivots and entries above each
    pivot reduced into [0, pivot).
    """
    mat = [list(r) for r in rows]
    top = 0
    for col in range(width):
        while True:
            nz = [i for i in range(top, len(mat)) if mat[i][col] != 0]
            if not nz:
                raise ValueError("lattice not full rank")
            i_min = min(nz, key=lambda i: abs(mat[i][col]))
            if i_min != top:
                mat[top], mat[i_min] = mat[i_min], mat[top]
            done = True
            for i in range(top + 1, len(mat)):
                if mat[i][col] == 0:
                    continue
                q = mat[i][col] // mat[top][col]
                if q:
                    row_t = mat[top]
                    row_i = mat[i]
                    for j in range(col, width):
                        row_i[j] -= q * row_t[j]
                if mat[i][col] != 0:
                    done = False
            if done:
                break
        if mat[top][col] < 0:
            mat[top] = [-x for x in mat[top]]
        # reduce entries above the pivot into canonical range
        piv = mat[top][col]
        for i in range(top):
            q = mat[i][col] // piv
            if q:
                row_t = mat[top]
                row_i = mat[i]
                for j in range(col, width):
                    row_i[j] -= q * row_t[j]
        top += 1
    return tuple(tuple(mat[i]) for i in range(width))
