"""Dense linear algebra over GF(2).

Rows are stored as Python ints used as bitsets (bit ``j`` is column ``j``),
so a row of ``c`` bits occupies ``ceil(c / 64)`` machine words and XOR of
two rows is a single big-int operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple


class Gf2Error(ValueError):
    pass


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Gf2Matrix:
    """Immutable ``nrows x ncols`` matrix over the two-element field."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise Gf2Error(f"expected {self.nrows} rows, got {len(self.rows)}")
        m = _mask(self.ncols)
        for r in self.rows:
            if r < 0 or r & ~m:
                raise Gf2Error("row has bits beyond the last column")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "Gf2Matrix":
        return cls(len(rows), ncols, tuple(int(r) for r in rows))

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for line in data:
            if len(line) != ncols:
                raise Gf2Error("ragged matrix")
            v = 0
            for j, bit in enumerate(line):
                if int(bit) & 1:
                    v |= 1 << j
            rows.append(v)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for j in range(self.ncols):
            v = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    v |= 1 << i
            cols.append(v)
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "Gf2Matrix":
        """Row ``i`` of the result is row ``row_perm[i]``; column ``j`` is column ``col_perm[j]``."""
        rows = []
        for i in row_perm:
            src = self.rows[i]
            v = 0
            for j, cj in enumerate(col_perm):
                if (src >> cj) & 1:
                    v |= 1 << j
            rows.append(v)
        return Gf2Matrix(self.nrows, self.ncols, tuple(rows))

    def vecmat(self, coeffs: int) -> int:
        """Return ``coeffs . M`` where bit ``i`` of ``coeffs`` weights row ``i``."""
        out = 0
        i = 0
        while coeffs:
            if coeffs & 1:
                out ^= self.rows[i]
            coeffs >>= 1
            i += 1
        return out

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        for r in self.rows:
            lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Gf2Matrix":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise Gf2Error("empty matrix text")
        try:
            r, c = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise Gf2Error(f"bad header {lines[0]!r}") from exc
        body = lines[1:]
        if len(body) != r:
            raise Gf2Error(f"expected {r} rows, got {len(body)}")
        data = []
        for ln in body:
            if len(ln) != c or set(ln) - {"0", "1"}:
                raise Gf2Error(f"bad row {ln!r}")
            data.append([int(ch) for ch in ln])
        return cls.from_lists(data, c)


def _eliminate(rows: Sequence[int], ncols: int):
    """Forward elimination with combination tracking.

    Returns ``(pivots, reduced, combos)``: ``pivots`` maps pivot column to the
    working row index holding it, ``reduced[i]`` is the reduced row ``i`` and
    ``combos[i]`` records which original rows sum to it.
    """
    work = list(rows)
    combos = [1 << i for i in range(len(work))]
    pivots = {}
    used = [False] * len(work)
    for col in range(ncols):
        bit = 1 << col
        piv = None
        for i, r in enumerate(work):
            if not used[i] and r & bit:
                piv = i
                break
        if piv is None:
            continue
        used[piv] = True
        pivots[col] = piv
        pr, pc = work[piv], combos[piv]
        for i, r in enumerate(work):
            if i != piv and r & bit:
                work[i] = r ^ pr
                combos[i] ^= pc
    return pivots, work, combos


def rank(m: Gf2Matrix) -> int:
    work = [r for r in m.rows if r]
    rk = 0
    for col in range(m.ncols):
        bit = 1 << col
        for i in range(rk, len(work)):
            if work[i] & bit:
                work[rk], work[i] = work[i], work[rk]
                break
        else:
            continue
        p = work[rk]
        for i in range(rk + 1, len(work)):
            if work[i] & bit:
                work[i] ^= p
        rk += 1
        if rk == len(work):
            break
    return rk


def rank_of_rows(rows: Iterable[int], ncols: int) -> int:
    rows = list(rows)
    return rank(Gf2Matrix.from_rows(rows, ncols))


def solve(m: Gf2Matrix, target: int) -> Optional[int]:
    """Find ``x`` with ``x . M == target``; ``None`` when unsolvable.

    ``x`` is returned as a bitset over rows.
    """
    if target < 0 or target & ~_mask(m.ncols):
        raise Gf2Error("target length does not match matrix columns")
    pivots, work, combos = _eliminate(m.rows, m.ncols)
    x = 0
    t = target
    for col in range(m.ncols):
        if (t >> col) & 1:
            piv = pivots.get(col)
            if piv is None:
                return None
            t ^= work[piv]
            x ^= combos[piv]
    return x if t == 0 else None


def left_nullspace(m: Gf2Matrix) -> List[int]:
    """Basis of ``{x : x . M = 0}`` as row-index bitsets (dimension ``nrows - rank``)."""
    pivots, work, combos = _eliminate(m.rows, m.ncols)
    pivot_rows = set(pivots.values())
    return [combos[i] for i in range(m.nrows) if i not in pivot_rows]


def right_nullspace(m: Gf2Matrix) -> List[int]:
    """Basis of ``{y : M y = 0}`` as column bitsets."""
    return left_nullspace(m.transpose())


def reduce_against(vec: int, basis: Sequence[Tuple[int, int]]) -> int:
    """Reduce ``vec`` by an echelon basis given as ``(pivot_bit, row)`` pairs."""
    for bit, row in basis:
        if vec & bit:
            vec ^= row
    return vec


def echelon_basis(rows: Iterable[int]) -> List[Tuple[int, int]]:
    """Fully reduced echelon basis of the span of ``rows``.

    Pivots are the lowest set bits; every stored row is reduced against every
    other pivot, so :func:`reduce_against` works in any order.
    """
    basis: List[Tuple[int, int]] = []
    for r in rows:
        r = reduce_against(r, basis)
        if not r:
            continue
        bit = r & -r
        basis = [(b, row ^ r if row & bit else row) for b, row in basis]
        basis.append((bit, r))
    return basis


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> List[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def permutation_equivalent(a: Gf2Matrix, b: Gf2Matrix) -> bool:
    """Decide whether ``b`` is ``a`` with rows and columns permuted.

    Exhaustive backtracking over column bijections, pruned by column weights
    and by comparing the multiset of partial rows after each assignment.
    """
    if (a.nrows, a.ncols) != (b.nrows, b.ncols):
        return False
    if sorted(popcount(r) for r in a.rows) != sorted(popcount(r) for r in b.rows):
        return False
    at, bt = a.transpose(), b.transpose()
    aw = [popcount(c) for c in at.rows]
    bw = [popcount(c) for c in bt.rows]
    if sorted(aw) != sorted(bw):
        return False
    n = a.ncols

    def partial_rows(m: Gf2Matrix, cols: Sequence[int]) -> List[int]:
        out = []
        for r in m.rows:
            v = 0
            for j, c in enumerate(cols):
                if (r >> c) & 1:
                    v |= 1 << j
            out.append(v)
        return sorted(out)

    chosen: List[int] = []
    taken = [False] * n

    def extend(j: int) -> bool:
        if j == n:
            return True
        for cand in range(n):
            if taken[cand] or bw[cand] != aw[j]:
                continue
            chosen.append(cand)
            if partial_rows(a, range(j + 1)) == partial_rows(b, chosen):
                taken[cand] = True
                if extend(j + 1):
                    return True
                taken[cand] = False
            chosen.pop()
        return False

    return extend(0)


def permutation_equivalent_bruteforce(a: Gf2Matrix, b: Gf2Matrix) -> bool:
    """Plain enumeration of every column permutation; only for small widths."""
    if (a.nrows, a.ncols) != (b.nrows, b.ncols):
        return False
    target = sorted(b.rows)
    for perm in permutations(range(a.ncols)):
        if sorted(a.permute(range(a.nrows), perm).rows) == target:
            return True
    return False
