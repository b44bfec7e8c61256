"""End-to-end analyses of rating data.

=============  =======================  ==========================  ==========
variant        recoding                 doubling                    optimal for
=============  =======================  ==========================  ==========
DS1            within-row ranks         rows: [T*; S*]              objects
DS1_DOMINANCE  ranks -> E = T* - S*     none, fixed weights         objects
DS2            successive categories    rows: ranks of objects+     objects and
                                        boundaries                  boundaries
DS3            counts T = R - 1         rows: [T; S]                objects
CAR            counts T = R - 1         columns: [T | S]            individuals
=============  =======================  ==========================  ==========
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from . import recode
from .engine import DEFAULT_K, ScalingSolution, derive_weights, fixed_weights, solve
from .errors import DegenerateColumn, DegenerateRow, InvalidInput
from .recode import MINUS, PLUS, RatingMatrix


class Variant(enum.Enum):
    DS1 = "ds1"
    DS1_DOMINANCE = "ds1e"
    DS2 = "ds2"
    DS3 = "ds3"
    CAR = "car"

    @property
    def row_doubled(self):
        return self in (Variant.DS1, Variant.DS2, Variant.DS3)


@dataclass(frozen=True)
class VariantConfig:
    variant: Variant = Variant.DS3
    k: int = DEFAULT_K
    drop_degenerate: bool = False
    use_numba: bool = None

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))


@dataclass(frozen=True)
class CoordinateView:
    """Coordinates for one side of the table.

    ``optimal`` marks the side whose standard coordinates are the optimal
    scaling values for this variant.
    """

    labels: tuple
    standard: np.ndarray
    principal: np.ndarray
    optimal: bool
    tags: tuple = ()


@dataclass(frozen=True)
class VariantResult:
    config: VariantConfig
    data: RatingMatrix
    solution: ScalingSolution
    recodings: dict
    objects_view: CoordinateView
    individuals_view: CoordinateView
    dropped: tuple = ()
    mirrored_rows: tuple = field(default=())

    @property
    def variant(self):
        return self.config.variant

    @property
    def analyzed(self):
        """The table that was decomposed."""
        return self.recodings["analyzed"]


def _drop_rows(r, mask, dropped):
    keep = np.flatnonzero(~mask)
    dropped.extend(r.row_labels[i] for i in np.flatnonzero(mask))
    if keep.size < 2:
        raise DegenerateRow(list(r.row_labels), list(range(r.n)))
    return r.select(rows=keep)


def _drop_cols(r, mask, dropped):
    keep = np.flatnonzero(~mask)
    dropped.extend(r.col_labels[j] for j in np.flatnonzero(mask))
    if keep.size < 2:
        raise DegenerateColumn(list(r.col_labels), list(range(r.p)))
    return r.select(cols=keep)


def _row_doubled_result(cfg, r, recodings, f, dropped):
    sol = solve(f, derive_weights(f), cfg.k, use_numba=cfg.use_numba)
    n = r.n
    individuals = CoordinateView(sol.row_labels[:n], sol.row_standard[:n],
                                 sol.row_principal[:n], optimal=False)
    p = r.p
    tags = tuple("object" if j < p else "boundary" for j in range(len(sol.col_labels)))
    objects = CoordinateView(sol.col_labels, sol.col_standard, sol.col_principal,
                             optimal=True, tags=tags)
    recodings["analyzed"] = f
    return VariantResult(cfg, r, sol, recodings, objects, individuals, tuple(dropped),
                         mirrored_rows=sol.row_labels[n:])


def run_ds1(r: RatingMatrix, cfg: VariantConfig = None) -> VariantResult:
    cfg = cfg or VariantConfig(Variant.DS1)
    tstar, sstar = recode.rank_rows(r)
    f = recode.double_rows(tstar, sstar)
    return _row_doubled_result(cfg, r, {"T*": tstar, "S*": sstar, "F_r": f}, f, [])


def run_ds1_dominance(r: RatingMatrix, cfg: VariantConfig = None) -> VariantResult:
    cfg = cfg or VariantConfig(Variant.DS1_DOMINANCE)
    tstar, sstar = recode.rank_rows(r)
    e = recode.dominance(tstar, sstar)
    sol = solve(e, fixed_weights(r.n, r.p), cfg.k, use_numba=cfg.use_numba)
    objects = CoordinateView(sol.col_labels, sol.col_standard, sol.col_principal, optimal=True,
                             tags=("object",) * r.p)
    individuals = CoordinateView(sol.row_labels, sol.row_standard, sol.row_principal,
                                 optimal=False)
    recodings = {"T*": tstar, "S*": sstar, "E": e, "analyzed": e}
    return VariantResult(cfg, r, sol, recodings, objects, individuals)


def run_ds2(r: RatingMatrix, cfg: VariantConfig = None) -> VariantResult:
    cfg = cfg or VariantConfig(Variant.DS2)
    scd = recode.successive_categories(r)
    tstar, sstar = recode.scd_to_rank_pair(scd)
    f = recode.double_rows(tstar, sstar)
    return _row_doubled_result(cfg, r, {"R_SCD": scd, "T*": tstar, "S*": sstar, "F_r": f}, f, [])


def run_ds3(r: RatingMatrix, cfg: VariantConfig = None) -> VariantResult:
    cfg = cfg or VariantConfig(Variant.DS3)
    dropped = []
    if cfg.drop_degenerate:
        all_low = (r.ratings == 1).all(axis=1)
        all_high = (r.ratings == r.q).all(axis=1)
        if (all_low | all_high).any():
            r = _drop_rows(r, all_low | all_high, dropped)
    t = recode.shift_counts(r)
    s = recode.reverse_counts(t)
    f = recode.double_rows(t, s)
    return _row_doubled_result(cfg, r, {"T": t, "S": s, "F_r": f}, f, dropped)


def run_car(r: RatingMatrix, cfg: VariantConfig = None) -> VariantResult:
    cfg = cfg or VariantConfig(Variant.CAR)
    dropped = []
    if cfg.drop_degenerate:
        constant_extreme = (r.ratings == 1).all(axis=0) | (r.ratings == r.q).all(axis=0)
        if constant_extreme.any():
            r = _drop_cols(r, constant_extreme, dropped)
    t = recode.shift_counts(r)
    s = recode.reverse_counts(t)
    f = recode.double_columns(t, s)
    sol = solve(f, derive_weights(f), cfg.k, use_numba=cfg.use_numba)
    p = r.p
    objects = CoordinateView(sol.col_labels, sol.col_standard, sol.col_principal, optimal=False,
                             tags=(PLUS,) * p + (MINUS,) * p)
    individuals = CoordinateView(sol.row_labels, sol.row_standard, sol.row_principal, optimal=True)
    recodings = {"T": t, "S": s, "F_c": f, "analyzed": f}
    return VariantResult(cfg, r, sol, recodings, objects, individuals, tuple(dropped))


_RUNNERS = {
    Variant.DS1: run_ds1,
    Variant.DS1_DOMINANCE: run_ds1_dominance,
    Variant.DS2: run_ds2,
    Variant.DS3: run_ds3,
    Variant.CAR: run_car,
}


def run(r: RatingMatrix, cfg: VariantConfig) -> VariantResult:
    return _RUNNERS[cfg.variant](r, cfg)


def doubled_masses(res: VariantResult):
    """Column masses ``(c_plus, c_minus)`` per object of a CAr result."""
    if res.variant is not Variant.CAR:
        raise InvalidInput("doubled masses exist only for CAr results")
    c = res.solution.weights.col_weights
    p = res.data.p
    return c[:p], c[p:]


def estimate_mean_ratings(res: VariantResult):
    """Mean rating per object read off the origin of each doubled-pair axis.

    The origin sits at fraction ``c+ / (c+ + c-)`` of the way from the ``-``
    point (rating 1) to the ``+`` point (rating q).
    """
    c_plus, c_minus = doubled_masses(res)
    return 1.0 + (res.data.q - 1) * c_plus / (c_plus + c_minus)
