"""Classification of Gram intervals and zero-to-Gram offsets.

Works entirely from a certified ZeroTable: interval occupancy, the strict /
exact-one / odd-count flavors of Gram's law, the offset Delta_n of each zero
ordinate from its namesake interval, occupancy histograms nu_k, and the exact
integer identities tying them to S at Gram points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UncertifiedRange
from .zeros import AMBIGUITY_TOL, ZeroTable


@dataclass(frozen=True)
class IntervalRecord:
    n: int
    zero_count: int
    r: int
    sgl: bool
    gl: bool
    wgl: bool
    ambiguous: bool


@dataclass(frozen=True)
class DeltaRecord:
    zero_index: int
    gram_index: int
    delta: int
    on_line: bool


@dataclass(frozen=True)
class NuHistogram:
    upper_index: int
    counts: dict[int, int]
    s_at_end: int

    def identity_total(self) -> bool:
        """sum_k nu_k == N exactly."""
        return sum(self.counts.values()) == self.upper_index

    def identity_weighted(self) -> bool:
        """sum_k k nu_k == N + S(t_N + 0) exactly."""
        weighted = sum(k * v for k, v in self.counts.items())
        return weighted == self.upper_index + self.s_at_end

    def identity_empty(self) -> bool:
        """nu_0 == sum_{k>=2} (k-1) nu_k - S(t_N+0), the subtracted form."""
        rhs = sum((k - 1) * v for k, v in self.counts.items() if k >= 2)
        return self.counts.get(0, 0) == rhs - self.s_at_end


def _require_range(table: ZeroTable, n_lo: int, n_hi: int) -> None:
    if not (1 <= n_lo <= n_hi):
        raise UncertifiedRange("interval range must satisfy 1 <= n_lo <= n_hi")
    if n_hi > table.certified_n:
        raise UncertifiedRange(
            f"interval range up to {n_hi} exceeds certified index {table.certified_n}")


def interval_counts(table: ZeroTable, n_lo: int, n_hi: int) -> np.ndarray:
    """Zero ordinate count of each G_n = (t_{n-1}, t_n], n_lo..n_hi."""
    _require_range(table, n_lo, n_hi)
    edges = np.searchsorted(table.zeros, table.gram[n_lo - 1 : n_hi + 1], side="right")
    return np.diff(edges).astype(np.int64)


def classify_intervals(table: ZeroTable, n_lo: int, n_hi: int) -> list[IntervalRecord]:
    """One record per interval, flags per the three Gram's-law definitions."""
    counts = interval_counts(table, n_lo, n_hi)
    edges = np.searchsorted(table.zeros, table.gram[n_lo - 1 : n_hi + 1], side="right")
    recs = []
    for i, n in enumerate(range(n_lo, n_hi + 1)):
        c = int(counts[i])
        first = int(edges[i]) + 1      # 1-based index of first zero inside
        # strict law: the namesake zero index n falls inside G_n
        sgl = c > 0 and first <= n <= first + c - 1
        amb = bool(
            np.any(table.zero_ambiguous[edges[i] : edges[i + 1]])
            or _boundary_ambiguity(table, n)
        )
        recs.append(IntervalRecord(
            n=n, zero_count=c, r=c - 1, sgl=sgl, gl=c == 1, wgl=c % 2 == 1,
            ambiguous=amb))
    return recs


def _boundary_ambiguity(table: ZeroTable, n: int) -> bool:
    """A zero within tolerance of either endpoint of G_n."""
    for edge in (table.gram[n - 1], table.gram[n]):
        i = int(np.searchsorted(table.zeros, edge))
        for j in (i - 1, i):
            if 0 <= j < table.zeros.size and abs(table.zeros[j] - edge) < AMBIGUITY_TOL:
                return True
    return False


def delta_n(table: ZeroTable, zero_index: int) -> DeltaRecord:
    """Offset Delta_n = m - n where t_{m-1} < gamma_n <= t_m."""
    if not (1 <= zero_index <= table.zeros.size):
        raise UncertifiedRange(f"zero index {zero_index} outside certified table")
    t = table.zeros[zero_index - 1]
    m = int(np.searchsorted(table.gram, t, side="left"))
    if m > table.certified_n:
        raise UncertifiedRange(f"enclosing gram interval of zero {zero_index} uncertified")
    return DeltaRecord(zero_index=zero_index, gram_index=m,
                       delta=m - zero_index, on_line=True)


def delta_array(table: ZeroTable, n_lo: int, n_hi: int) -> np.ndarray:
    """Delta_n for zero indices n_lo..n_hi as an integer array."""
    if not (1 <= n_lo <= n_hi <= table.zeros.size):
        raise UncertifiedRange("zero index range outside certified table")
    ts = table.zeros[n_lo - 1 : n_hi]
    m = np.searchsorted(table.gram, ts, side="left").astype(np.int64)
    if m.size and int(m.max()) > table.certified_n:
        raise UncertifiedRange("some enclosing gram intervals are uncertified")
    return m - np.arange(n_lo, n_hi + 1, dtype=np.int64)


def gsp_flags(table: ZeroTable, n_lo: int, n_hi: int) -> list[bool]:
    """True where the ordinate sits in its namesake interval (Delta_n = 0)."""
    return [bool(d == 0) for d in delta_array(table, n_lo, n_hi)]


def nu_histogram(table: ZeroTable, N: int) -> NuHistogram:
    """Occupancy histogram of G_1..G_N with its exact identities asserted."""
    counts = interval_counts(table, 1, N)
    ks, freq = np.unique(counts, return_counts=True)
    hist = NuHistogram(
        upper_index=N,
        counts={int(k): int(v) for k, v in zip(ks, freq)},
        s_at_end=table.s_at_gram(N),
    )
    if not (hist.identity_total() and hist.identity_weighted() and hist.identity_empty()):
        raise UncertifiedRange(f"nu identities failed at N={N}; table inconsistent")
    return hist


def offset_ladder_check_range(table: ZeroTable, n_lo: int, n_hi: int) -> bool:
    """Vectorized ladder check over a whole interval range.

    Equivalent to offset_ladder_check at every n: each zero inside G_n must
    have enclosing Gram index exactly n.
    """
    _require_range(table, n_lo, n_hi)
    lo = int(np.searchsorted(table.zeros, table.gram[n_lo - 1], side="right"))
    hi = int(np.searchsorted(table.zeros, table.gram[n_hi], side="right"))
    if lo == hi:
        return True
    zs = table.zeros[lo:hi]
    m = np.searchsorted(table.gram, zs, side="left")
    edges = np.searchsorted(table.zeros, table.gram[n_lo - 1 : n_hi + 1], side="right")
    owner = np.repeat(np.arange(n_lo, n_hi + 1), np.diff(edges))
    return bool(np.array_equal(m, owner))


def offset_ladder_check(table: ZeroTable, n: int) -> bool:
    """Exact ladder of offsets inside one interval.

    If G_n holds zeros with indices s..s+r, then Delta_{s+j} = r - j - S(t_n+0)
    for j = 0..r; empty intervals (r = -1) pass vacuously.
    """
    counts = interval_counts(table, n, n)
    r = int(counts[0]) - 1
    if r < 0:
        return True
    first = int(np.searchsorted(table.zeros, table.gram[n - 1], side="right")) + 1
    s_n = table.s_at_gram(n)
    for j in range(r + 1):
        if delta_n(table, first + j).delta != r - j - s_n:
            return False
    return True
