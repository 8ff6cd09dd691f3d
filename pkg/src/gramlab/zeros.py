"""Locating and certifying zeros of Z(t), and S(t) at Gram points.

Strategy: evaluate Z at every Gram point of the target range, split the range
into blocks bounded by "regular" Gram points (where (-1)^(n-1) Z(t_n) > 0),
and search each block for exactly as many sign changes as it has intervals,
densifying the grid (up to 64x per interval) until the quota is met.  Regular
endpoints pin S = 0 there, so meeting every quota reconciles the located
sign-change count with the Riemann-von Mangoldt count across the whole range;
blocks that cannot be reconciled leave the table certified only up to the
last anchor before them.  Brackets are then sharpened by lockstep bisection.

The trailing edge of a scan stops at the last regular Gram point, so tables
are always built with headroom past the index range the caller needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, PreconditionError, UncertifiedRange
from .theta_gram import gram_points, theta
from .zeta import RS_SWITCH_T, hardy_z, hardy_z_many

# zeros and Gram points closer than this are flagged ambiguous
AMBIGUITY_TOL = 1e-9
# final bracket half-width
BRACKET_HALF_WIDTH = 1e-9
DEPTH_CAP = 6  # up to 2^6 = 64 segments per Gram interval


@dataclass(frozen=True)
class CriticalZero:
    index: int
    t: float
    bracket_width: float
    certified: bool
    ambiguous: bool = False


@dataclass(frozen=True)
class CountResult:
    t: float
    n_of_t: int
    s_of_t: float
    certified: bool
    at_zero: bool = False


@dataclass
class ScanDiagnostics:
    n_scanned: int = 0
    blocks: int = 0
    densified_blocks: int = 0
    max_depth: int = 0
    failed_blocks: list = field(default_factory=list)


def _z_eval_default(ts: np.ndarray) -> np.ndarray:
    """Z on an array of heights; scalar euler_maclaurin route below t=30."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty(ts.shape)
    low = ts < RS_SWITCH_T
    if low.any():
        out[low] = [hardy_z(float(t)).z for t in ts[low]]
    if (~low).any():
        out[~low] = hardy_z_many(ts[~low])
    return out


def _signs(z: np.ndarray) -> np.ndarray:
    """Sign array treating exact zeros as carrying the left neighbor's sign."""
    s = np.sign(z).astype(np.int8)
    for i in np.nonzero(s == 0)[0]:
        s[i] = s[i - 1] if i > 0 else 1
    return s


class ZeroTable:
    """Gram points, Z values, and certified zeros for indices 0..n_max."""

    def __init__(self, gram, z_gram, zeros, brackets, certified_n, diagnostics):
        self.gram = gram                  # t_n, index = n
        self.z_gram = z_gram              # Z(t_n), or None until first needed
        self.zeros = zeros                # ascending ordinates, 1-based count
        self.bracket_half = brackets      # same length as zeros
        self.certified_n = certified_n    # certification holds for n <= this
        self.diagnostics = diagnostics
        counts = np.searchsorted(zeros, gram, side="right")
        self.s_gram = counts.astype(np.int64) - np.arange(gram.size, dtype=np.int64)
        # ambiguity: any zero within tolerance of any gram point
        amb = np.zeros(zeros.size, dtype=bool)
        if zeros.size:
            pos = np.searchsorted(gram, zeros)
            for shift in (0, 1):
                idx = np.clip(pos - 1 + shift, 0, gram.size - 1)
                amb |= np.abs(gram[idx] - zeros) < AMBIGUITY_TOL
        self.zero_ambiguous = amb

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, n_max: int, z_eval: Callable[[np.ndarray], np.ndarray] | None = None,
              depth_cap: int = DEPTH_CAP) -> "ZeroTable":
        if n_max < 1:
            raise DomainError("n_max must be >= 1")
        z_eval = z_eval or _z_eval_default
        gram = gram_points(n_max)
        zg = z_eval(gram)
        n_idx = np.arange(gram.size)
        regular = np.where(n_idx % 2 == 1, zg, -zg) > 0.0  # (-1)^(n-1) Z(t_n) > 0
        diag = ScanDiagnostics(n_scanned=int(gram.size))
        if not regular[0]:
            raise UncertifiedRange("no regular anchor at the base of the range")

        anchors = np.nonzero(regular)[0]
        zeros: list[float] = []
        half: list[float] = []
        certified_n = int(anchors[-1])
        signs = _signs(zg)
        for a, b in zip(anchors[:-1], anchors[1:]):
            diag.blocks += 1
            quota = int(b - a)
            if quota == 1:
                # regular anchors on both ends force exactly one sign change
                found = [(float(gram[a]), float(gram[b]))]
            else:
                found = cls._scan_block(gram, signs, int(a), int(b), quota,
                                        z_eval, depth_cap, diag)
            if found is None:
                diag.failed_blocks.append((int(a), int(b)))
                certified_n = int(a)
                break
            for lo, hi in found:
                mid, h = (0.5 * (lo + hi), 0.5 * (hi - lo))
                zeros.append(mid)
                half.append(h)

        zeros_arr = np.asarray(zeros)
        half_arr = np.asarray(half)
        if zeros_arr.size:
            lo, hi = zeros_arr - half_arr, zeros_arr + half_arr
            lo, hi = _bisect_refine(lo, hi, z_eval)
            zeros_arr = 0.5 * (lo + hi)
            # publish the uniform certified half-width: every final bracket
            # fits inside [t - 1e-9, t + 1e-9], which keeps built and loaded
            # tables byte-identical in reports
            half_arr = np.full(zeros_arr.size, BRACKET_HALF_WIDTH)
        return cls(gram, zg, zeros_arr, half_arr, certified_n, diag)

    @staticmethod
    def _scan_block(gram, signs, a, b, quota, z_eval, depth_cap, diag):
        """Brackets of sign changes in (t_a, t_b], or None if quota unmet."""
        if quota == 0:
            return []
        for depth in range(depth_cap + 1):
            if depth == 0:
                ts = gram[a : b + 1]
                sg = signs[a : b + 1]
            else:
                segs = 1 << depth
                ts = np.empty((b - a) * segs + 1)
                for i, n in enumerate(range(a, b)):
                    ts[i * segs : (i + 1) * segs + 1] = np.linspace(
                        gram[n], gram[n + 1], segs + 1)
                sg = _signs(z_eval(ts))
            flips = np.nonzero(sg[:-1] != sg[1:])[0]
            if flips.size == quota:
                if depth > 0:
                    diag.densified_blocks += 1
                    diag.max_depth = max(diag.max_depth, depth)
                return [(float(ts[i]), float(ts[i + 1])) for i in flips]
            if flips.size > quota:
                # more sign changes than the anchors allow: not reconcilable
                return None
        return None

    @classmethod
    def from_arrays(cls, gram: np.ndarray, zeros: np.ndarray,
                    bracket_half: float = BRACKET_HALF_WIDTH) -> "ZeroTable":
        """Reconstruct a (certified) table from persisted height arrays."""
        diag = ScanDiagnostics(n_scanned=int(gram.size))
        return cls(np.asarray(gram, dtype=float), None,
                   np.asarray(zeros, dtype=float),
                   np.full(len(zeros), bracket_half), int(gram.size) - 1, diag)

    # -- queries -----------------------------------------------------------

    def z_values(self) -> np.ndarray:
        """Z at every Gram point, computed on first use for loaded tables."""
        if self.z_gram is None:
            self.z_gram = _z_eval_default(self.gram)
        return self.z_gram

    @property
    def t_certified(self) -> float:
        return float(self.gram[self.certified_n])

    def _require_certified_t(self, t: float) -> None:
        if t > self.t_certified + 1e-12:
            raise UncertifiedRange(
                f"t = {t} beyond certified height {self.t_certified}")

    def count_zeros(self, t: float) -> CountResult:
        """N(t+0) and S(t+0) from the certified zero list."""
        if not t > 7.0:
            raise PreconditionError("count_zeros requires t > 7")
        self._require_certified_t(t)
        n_of_t = int(np.searchsorted(self.zeros, t, side="right"))
        at_zero = False
        if self.zeros.size:
            i = np.searchsorted(self.zeros, t)
            for j in (i - 1, i):
                if 0 <= j < self.zeros.size and abs(self.zeros[j] - t) < AMBIGUITY_TOL:
                    at_zero = True
        s_of_t = n_of_t - theta(t).value / math.pi - 1.0
        return CountResult(t=float(t), n_of_t=n_of_t, s_of_t=s_of_t,
                           certified=True, at_zero=at_zero)

    def s_at_gram(self, n: int) -> int:
        """S(t_n + 0) = N(t_n + 0) - n, an exact integer."""
        if not (0 <= n <= self.certified_n):
            raise UncertifiedRange(f"gram index {n} outside certified range")
        return int(self.s_gram[n])

    def find_zeros(self, t_lo: float, t_hi: float) -> list[CriticalZero]:
        if not (7.0 < t_lo < t_hi):
            raise PreconditionError("find_zeros requires 7 < t_lo < t_hi")
        self._require_certified_t(t_hi)
        i = int(np.searchsorted(self.zeros, t_lo, side="right"))
        j = int(np.searchsorted(self.zeros, t_hi, side="right"))
        return [
            CriticalZero(index=k + 1, t=float(self.zeros[k]),
                         bracket_width=float(self.bracket_half[k]),
                         certified=True, ambiguous=bool(self.zero_ambiguous[k]))
            for k in range(i, j)
        ]

    def completeness_certificate(self, t_lo: float, t_hi: float):
        """True iff located sign changes match N(t_hi+0) - N(t_lo+0)."""
        if not (7.0 < t_lo < t_hi):
            raise PreconditionError("completeness_certificate requires 7 < t_lo < t_hi")
        if t_hi > self.t_certified + 1e-12:
            return False, {"reason": "beyond certified height",
                           "t_certified": self.t_certified,
                           "failed_blocks": list(self.diagnostics.failed_blocks)}
        located = int(np.searchsorted(self.zeros, t_hi, side="right")
                      - np.searchsorted(self.zeros, t_lo, side="right"))
        delta_n = self.count_zeros(t_hi).n_of_t - self.count_zeros(t_lo).n_of_t
        ok = located == delta_n
        return ok, {"located": located, "count_difference": delta_n}

    def zero(self, index: int) -> CriticalZero:
        """Zero by 1-based global index."""
        if not (1 <= index <= self.zeros.size):
            raise UncertifiedRange(f"zero index {index} outside certified table")
        k = index - 1
        return CriticalZero(index=index, t=float(self.zeros[k]),
                            bracket_width=float(self.bracket_half[k]),
                            certified=True, ambiguous=bool(self.zero_ambiguous[k]))


def _bisect_refine(lo, hi, z_eval, half_width=BRACKET_HALF_WIDTH):
    """Lockstep bisection of sign-change brackets to the target half-width."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    if not lo.size:
        return lo, hi
    s_lo = np.sign(z_eval(lo))
    s_lo[s_lo == 0] = 1.0
    width = float(np.max(hi - lo))
    n_steps = max(0, int(math.ceil(math.log2(max(width, 1e-300) / (2 * half_width)))))
    for _ in range(n_steps):
        mid = 0.5 * (lo + hi)
        zm = z_eval(mid)
        s_mid = np.sign(zm)
        s_mid[s_mid == 0] = -s_lo[s_mid == 0]  # exact hit: keep zero inside
        take_left = s_mid == s_lo
        lo = np.where(take_left, mid, lo)
        hi = np.where(take_left, hi, mid)
    return lo, hi


# ---------------------------------------------------------------------------
# module-level convenience with a shared growing table

_SHARED: ZeroTable | None = None


def shared_table(n_max: int) -> ZeroTable:
    """Process-wide table covering at least gram index n_max (with headroom)."""
    global _SHARED
    need = n_max + 40
    if _SHARED is None or _SHARED.certified_n < n_max:
        _SHARED = ZeroTable.build(need)
        while _SHARED.certified_n < n_max:  # trailing anchor fell short
            need += 40
            _SHARED = ZeroTable.build(need)
    return _SHARED


def table_for_height(t_hi: float) -> ZeroTable:
    """Shared table certified to height >= t_hi."""
    th1 = theta(max(t_hi, 10.0)).value / math.pi + 1.0
    return shared_table(int(math.ceil(th1)) + 3)


def find_zeros(t_lo: float, t_hi: float) -> list[CriticalZero]:
    return table_for_height(t_hi).find_zeros(t_lo, t_hi)


def count_zeros(t: float) -> CountResult:
    return table_for_height(t).count_zeros(t)


def s_at_gram(n: int) -> int:
    return shared_table(n).s_at_gram(n)


def completeness_certificate(t_lo: float, t_hi: float):
    return table_for_height(t_hi).completeness_certificate(t_lo, t_hi)
