"""GF(2) bitset helpers: parity, subset indexing, row-packed matrices."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits_of(x: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_bits(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@lru_cache(maxsize=None)
def pair_list(n: int) -> Tuple[Tuple[int, int], ...]:
    """2-subsets of {0..n-1} in lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def triple_list(n: int) -> Tuple[Tuple[int, int, int], ...]:
    """3-subsets of {0..n-1} in lexicographic order."""
    return tuple(
        (i, j, k)
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(j + 1, n)
    )


@lru_cache(maxsize=None)
def pair_pos(n: int):
    return {p: idx for idx, p in enumerate(pair_list(n))}


@lru_cache(maxsize=None)
def triple_pos(n: int):
    return {t: idx for idx, t in enumerate(triple_list(n))}


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank of a list of bitmask rows via Gaussian elimination."""
    work = list(rows)
    rank = 0
    for i in range(len(work)):
        pivot_row = None
        for r in range(i, len(work)):
            if work[r]:
                if pivot_row is None or work[r].bit_length() > work[pivot_row].bit_length():
                    pivot_row = r
        if pivot_row is None:
            break
        work[i], work[pivot_row] = work[pivot_row], work[i]
        lead = 1 << (work[i].bit_length() - 1)
        for r in range(len(work)):
            if r != i and work[r] & lead:
                work[r] ^= work[i]
        rank += 1
    return rank


def mat_identity(n: int) -> Tuple[int, ...]:
    return tuple(1 << i for i in range(n))


def mat_mul(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    """Product of row-packed matrices: row_i(ab) = XOR of b-rows picked by row_i(a)."""
    out = []
    for row in a:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc ^= b[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return tuple(out)


def mat_vec(a: Sequence[int], v: int) -> int:
    """Apply row-packed matrix to a column bit-vector: out_i = <row_i, v>."""
    out = 0
    for i, row in enumerate(a):
        out |= parity(row & v) << i
    return out


def mat_transpose(a: Sequence[int], n: int) -> Tuple[int, ...]:
    return tuple(
        from_bits(i for i in range(len(a)) if (a[i] >> j) & 1) for j in range(n)
    )


def mat_inverse(a: Sequence[int], n: int) -> Optional[Tuple[int, ...]]:
    """Inverse of an n x n row-packed matrix, or None if singular."""
    work = list(a)
    aug = list(mat_identity(n))
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and ((work[r] >> col) & 1):
                work[r] ^= work[col]
                aug[r] ^= aug[col]
    return tuple(aug)


def bitstring(mask: int, width: int) -> str:
    """Render bit i at string position i (leftmost char = index 0)."""
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(width))


def parse_bitstring(s: str) -> int:
    mask = 0
    for i, ch in enumerate(s):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bitstring character {ch!r}")
    return mask
