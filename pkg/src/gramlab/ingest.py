"""Cross-validation of computed zeros against external ordinate tables.

External format: plain text, one decimal ordinate per line, strictly
ascending; blank lines and '#' comments are ignored.  Matching is greedy
one-to-one within a tolerance over two sorted lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError
from .zeros import ZeroTable

DEFAULT_MATCH_TOL = 1e-4


@dataclass(frozen=True)
class MatchReport:
    matched: int
    unmatched_external: int
    unmatched_computed: int
    max_abs_diff: float
    external_count: int
    computed_count: int


def parse_ordinate_file(path: str | Path) -> np.ndarray:
    vals: list[float] = []
    prev = -np.inf
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                v = float(text)
            except ValueError:
                raise ParseError(f"not a decimal ordinate: {text!r}", line=lineno) from None
            if not np.isfinite(v):
                raise ParseError(f"non-finite ordinate {text!r}", line=lineno)
            if v <= prev:
                raise ParseError("ordinates must be strictly ascending", line=lineno)
            vals.append(v)
            prev = v
    return np.asarray(vals)


def ingest_external_table(path: str | Path, table: ZeroTable,
                          match_tol: float = DEFAULT_MATCH_TOL) -> MatchReport:
    """Match an external ordinate list against the computed zeros."""
    ext = parse_ordinate_file(path)
    comp = table.zeros
    i = j = matched = 0
    max_diff = 0.0
    unmatched_ext = 0
    unmatched_comp = 0
    while i < ext.size and j < comp.size:
        d = ext[i] - comp[j]
        if abs(d) <= match_tol:
            matched += 1
            max_diff = max(max_diff, abs(float(d)))
            i += 1
            j += 1
        elif d > 0:
            unmatched_comp += 1
            j += 1
        else:
            unmatched_ext += 1
            i += 1
    unmatched_ext += ext.size - i
    unmatched_comp += comp.size - j
    return MatchReport(matched=matched, unmatched_external=int(unmatched_ext),
                       unmatched_computed=int(unmatched_comp),
                       max_abs_diff=max_diff, external_count=int(ext.size),
                       computed_count=int(comp.size))
