"""Re-codings of rating data: counts, reversal, ranks, successive categories,
dominance and the two doubling constructions.

Every recoded value is an integer or a half-integer, so all of these are
exact in float64.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidInput, MismatchedRecodings, RatingOutOfRange

PLUS = "+"
MINUS = "-"


class Kind(enum.Enum):
    SHIFTED_COUNTS = "T"
    REVERSED_COUNTS = "S"
    RANK_ORDER = "T*"
    REVERSED_RANK_ORDER = "S*"
    SUCCESSIVE_CATEGORY = "R_SCD"
    DOMINANCE = "E"
    ROW_DOUBLED = "F_r"
    COLUMN_DOUBLED = "F_c"


@dataclass(frozen=True, eq=False)
class RatingMatrix:
    """``n x p`` integer ratings on a 1..q scale."""

    ratings: np.ndarray
    q: int
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        r = np.asarray(self.ratings)
        if r.ndim != 2:
            raise InvalidInput(f"ratings must be 2-D, got shape {r.shape}")
        if r.size and not np.all(np.isfinite(r.astype(float))):
            raise InvalidInput("ratings must be finite")
        if r.size and np.any(r != np.round(r)):
            raise InvalidInput("ratings must be integers")
        r = r.astype(np.int64)
        n, p = r.shape
        if int(self.q) != self.q or self.q < 2:
            raise InvalidInput(f"scale maximum q must be an integer >= 2, got {self.q}")
        if n < 2 or p < 2:
            raise InvalidInput(f"need at least 2 respondents and 2 objects, got {n}x{p}")
        bad = np.argwhere((r < 1) | (r > self.q))
        if bad.size:
            i, j = bad[0]
            raise RatingOutOfRange(int(i), int(j), int(r[i, j]), int(self.q))
        r.setflags(write=False)
        object.__setattr__(self, "ratings", r)
        object.__setattr__(self, "q", int(self.q))
        rows = self.row_labels or tuple(f"ind_{i + 1}" for i in range(n))
        cols = self.col_labels or tuple(f"obj_{j + 1}" for j in range(p))
        rows, cols = tuple(str(x) for x in rows), tuple(str(x) for x in cols)
        if len(rows) != n or len(cols) != p:
            raise InvalidInput("label counts do not match the rating matrix shape")
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @property
    def n(self):
        return self.ratings.shape[0]

    @property
    def p(self):
        return self.ratings.shape[1]

    @property
    def shape(self):
        return self.ratings.shape

    def __eq__(self, other):
        if not isinstance(other, RatingMatrix):
            return NotImplemented
        return (self.q == other.q and self.row_labels == other.row_labels
                and self.col_labels == other.col_labels
                and np.array_equal(self.ratings, other.ratings))

    def __hash__(self):
        return hash((self.q, self.row_labels, self.col_labels, self.ratings.tobytes()))

    def select(self, rows=None, cols=None):
        """Sub-matrix by integer index lists (labels follow)."""
        rows = np.arange(self.n) if rows is None else np.asarray(rows, dtype=int)
        cols = np.arange(self.p) if cols is None else np.asarray(cols, dtype=int)
        return RatingMatrix(self.ratings[np.ix_(rows, cols)], self.q,
                            tuple(self.row_labels[i] for i in rows),
                            tuple(self.col_labels[j] for j in cols))

    def drop_columns(self, names):
        keep = [j for j, c in enumerate(self.col_labels) if c not in set(names)]
        return self.select(cols=keep)


@dataclass(frozen=True, eq=False)
class RecodedMatrix:
    data: np.ndarray
    kind: Kind
    source: RatingMatrix
    row_labels: tuple
    col_labels: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        d = np.array(self.data, dtype=np.float64)
        if d.shape != (len(self.row_labels), len(self.col_labels)):
            raise InvalidInput(f"{self.kind.value}: data shape {d.shape} does not match labels")
        if self.kind is not Kind.DOMINANCE and np.any(d < 0):
            raise InvalidInput(f"{self.kind.value} must be non-negative")
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @property
    def shape(self):
        return self.data.shape


def _recoded(data, kind, source, row_labels=None, col_labels=None, **params):
    return RecodedMatrix(data, kind, source,
                         tuple(row_labels if row_labels is not None else source.row_labels),
                         tuple(col_labels if col_labels is not None else source.col_labels),
                         params)


def _require(m, *kinds):
    if m.kind not in kinds:
        names = "/".join(k.value for k in kinds)
        raise MismatchedRecodings(f"expected {names}, got {m.kind.value}")


def _require_pair(a, b):
    if a.source is not b.source and a.source != b.source:
        raise MismatchedRecodings("recodings come from different rating matrices")
    if a.shape != b.shape:
        raise MismatchedRecodings(f"shape mismatch {a.shape} vs {b.shape}")


def shift_counts(r: RatingMatrix) -> RecodedMatrix:
    """Number of scale points below each rating: ``R - 1``."""
    return _recoded(r.ratings - 1.0, Kind.SHIFTED_COUNTS, r)


def reverse_counts(t: RecodedMatrix) -> RecodedMatrix:
    _require(t, Kind.SHIFTED_COUNTS, Kind.REVERSED_COUNTS)
    q = t.source.q
    kind = Kind.REVERSED_COUNTS if t.kind is Kind.SHIFTED_COUNTS else Kind.SHIFTED_COUNTS
    return _recoded((q - 1) - t.data, kind, t.source, t.row_labels, t.col_labels)


def double_columns(t: RecodedMatrix, s: RecodedMatrix) -> RecodedMatrix:
    """``[T | S]`` with columns suffixed ``+`` and ``-``."""
    _require(t, Kind.SHIFTED_COUNTS)
    _require(s, Kind.REVERSED_COUNTS)
    _require_pair(t, s)
    cols = [c + PLUS for c in t.col_labels] + [c + MINUS for c in s.col_labels]
    return _recoded(np.hstack([t.data, s.data]), Kind.COLUMN_DOUBLED, t.source,
                    t.row_labels, cols, top=t.kind.value, bottom=s.kind.value)


_ROW_PAIRS = {
    (Kind.RANK_ORDER, Kind.REVERSED_RANK_ORDER),
    (Kind.SHIFTED_COUNTS, Kind.REVERSED_COUNTS),
}


def double_rows(top: RecodedMatrix, bottom: RecodedMatrix) -> RecodedMatrix:
    """``[top; bottom]`` with rows suffixed ``+`` and ``-``."""
    if (top.kind, bottom.kind) not in _ROW_PAIRS:
        raise MismatchedRecodings(
            f"cannot row-double {top.kind.value} over {bottom.kind.value}")
    _require_pair(top, bottom)
    if top.col_labels != bottom.col_labels:
        raise MismatchedRecodings("column labels differ")
    rows = [r + PLUS for r in top.row_labels] + [r + MINUS for r in bottom.row_labels]
    return _recoded(np.vstack([top.data, bottom.data]), Kind.ROW_DOUBLED, top.source,
                    rows, top.col_labels, top=top.kind.value, bottom=bottom.kind.value,
                    **top.params)


def rank_rows(r: RatingMatrix):
    """Within-respondent ranks 0..p-1 (midranks for ties) and their reversal."""
    p = r.p
    tstar = kernels.midrank_rows(r.ratings) - 1.0
    return (_recoded(tstar, Kind.RANK_ORDER, r),
            _recoded((p - 1) - tstar, Kind.REVERSED_RANK_ORDER, r))


def dominance(tstar: RecodedMatrix, sstar: RecodedMatrix) -> RecodedMatrix:
    _require(tstar, Kind.RANK_ORDER)
    _require(sstar, Kind.REVERSED_RANK_ORDER)
    _require_pair(tstar, sstar)
    return _recoded(tstar.data - sstar.data, Kind.DOMINANCE, tstar.source,
                    tstar.row_labels, tstar.col_labels)


def boundary_values(q):
    return np.arange(1, q) + 0.5


def boundary_labels(q):
    return tuple(f"b{b:g}" for b in boundary_values(q))


def successive_categories(r: RatingMatrix) -> RecodedMatrix:
    """Joint 1-based midranks of each respondent's ratings and the q-1 boundaries."""
    bounds = np.broadcast_to(boundary_values(r.q), (r.n, r.q - 1))
    joint = np.hstack([r.ratings.astype(np.float64), bounds])
    ranks = kernels.midrank_rows(joint)
    return _recoded(ranks, Kind.SUCCESSIVE_CATEGORY, r,
                    col_labels=r.col_labels + boundary_labels(r.q))


def scd_to_rank_pair(scd: RecodedMatrix):
    """Shift successive-category ranks to 0..m-1 and reverse them."""
    _require(scd, Kind.SUCCESSIVE_CATEGORY)
    m = scd.shape[1]
    tstar = scd.data - 1.0
    return (_recoded(tstar, Kind.RANK_ORDER, scd.source, scd.row_labels, scd.col_labels,
                     successive=True),
            _recoded((m - 1) - tstar, Kind.REVERSED_RANK_ORDER, scd.source, scd.row_labels,
                     scd.col_labels, successive=True))


def reverse_scale(r: RatingMatrix) -> RatingMatrix:
    """Map every rating x to q + 1 - x."""
    return RatingMatrix(r.q + 1 - r.ratings, r.q, r.row_labels, r.col_labels)
