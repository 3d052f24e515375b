"""Deciding untwistedness by cross-checking its equivalent characterizations.

The verdict comes from five independent routes which must agree:

* (b) every Cartier point ``m_sigma`` lies in the cube ``C``;
* (c) every Cartier point has nonnegative coordinates;
* (d) condition (P) holds;
* (e) ``C`` equals the polytope ``P_D``;
* the divisor ``D(c, ell)`` is basepoint-free (``m_sigma in P_D`` for all cones).

Closedness of ``C`` is not tested directly; it is equivalent to the others.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cube import (
    DEFAULT_POINT_CAP,
    CubeSpec,
    _eval,
    check_condition_P,
    iter_lattice,
    member,
)
from .errors import CapacityError, InconsistencyError, UsageError
from .toric import (
    DEFAULT_CONE_CAP,
    DivisorPolytope,
    SignVector,
    _cartier_m,
    cartier_point,
    is_basepoint_free,
    maximal_cones,
)

DEFAULT_GRID_DENOMINATOR = 4
DEFAULT_GRID_CAP = 40_000


@dataclass(frozen=True)
class Witness:
    """Where a condition first failed.

    ``condition`` is one of ``"b"``, ``"c"``, ``"d"``, ``"e"``; ``sigma`` is set
    for cone-based conditions and ``k`` names the offending coordinate or level.
    """

    condition: str
    vector: tuple
    sigma: SignVector | None = None
    k: int | None = None


def _cartier_points(spec, cone_cap):
    for sigma in maximal_cones(spec, cone_cap):
        yield sigma, _cartier_m(spec, sigma.bits)


def _witness_b(spec, cone_cap):
    for sigma, m in _cartier_points(spec, cone_cap):
        if not member(spec, m):
            return Witness("b", m, sigma)
    return None


def _witness_c(spec, cone_cap):
    for sigma, m in _cartier_points(spec, cone_cap):
        for k, v in enumerate(m, start=1):
            if v < 0:
                return Witness("c", m, sigma, k)
    return None


def _witness_e(spec, cone_cap, point_cap):
    found = _witness_c(spec, cone_cap) or _witness_b(spec, cone_cap)
    if found is not None:
        return Witness("e", found.vector, found.sigma, found.k)
    polytope = DivisorPolytope(spec)
    for count, (point, _) in enumerate(iter_lattice(spec)):
        if count >= point_cap:
            raise CapacityError("lattice point count", point_cap)
        bad = polytope._violation(point)
        if bad is not None:
            return Witness("e", point, None, bad[0])
    return None


def check_b(spec, cone_cap=DEFAULT_CONE_CAP):
    """Every Cartier point is a member of the cube."""
    return _witness_b(spec, cone_cap) is None


def check_c(spec, cone_cap=DEFAULT_CONE_CAP):
    """Every coordinate of every Cartier point is nonnegative."""
    return _witness_c(spec, cone_cap) is None


def check_d(spec):
    """Condition (P)."""
    return check_condition_P(spec).holds


def check_e(spec, cone_cap=DEFAULT_CONE_CAP, point_cap=DEFAULT_POINT_CAP):
    """``C = P_D``, certified finitely.

    Requires (c), (b), and that every integer point of ``C`` lies in ``P_D``.
    Real-region equality then follows from the equivalence of the conditions;
    it is not compared as semialgebraic sets.
    """
    return _witness_e(spec, cone_cap, point_cap) is None


@dataclass(frozen=True)
class UntwistReport:
    """Per-condition results and the common verdict.

    Construction fails with :class:`InconsistencyError` if the conditions
    disagree with one another or with the verdict.
    """

    verdict: bool
    b: bool
    c: bool
    d: bool
    e: bool
    basepoint_free: bool
    ell_nonneg: bool
    witness: Witness | None = None
    basepoint_witness: object = field(default=None, compare=False)

    def __post_init__(self):
        values = {
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "e": self.e,
            "basepoint_free": self.basepoint_free,
        }
        if len(set(values.values())) != 1 or self.verdict != self.b:
            raise InconsistencyError(f"untwistedness checks disagree: {values}, verdict={self.verdict}")

    @property
    def closed(self):
        # closedness is equivalent to the other conditions
        return self.verdict

    def __bool__(self):
        return self.verdict


def is_untwisted(spec, cone_cap=DEFAULT_CONE_CAP, point_cap=DEFAULT_POINT_CAP):
    """Run all five checks and return an :class:`UntwistReport`."""
    wb = _witness_b(spec, cone_cap)
    wc = _witness_c(spec, cone_cap)
    pres = check_condition_P(spec)
    we = _witness_e(spec, cone_cap, point_cap)
    bpf = is_basepoint_free(spec, cone_cap)
    witness = wc or wb or we
    if witness is None and not pres:
        witness = Witness("d", pres.vertex, None, pres.k)
    return UntwistReport(
        verdict=wc is None,
        b=wb is None,
        c=wc is None,
        d=pres.holds,
        e=we is None,
        basepoint_free=bpf.free,
        ell_nonneg=all(v >= 0 for v in spec.ell),
        witness=witness,
        basepoint_witness=None if bpf else bpf,
    )


def closure_witness(spec, sigma, epsilon):
    """A point of ``C`` within max-norm distance ``epsilon`` of ``m_sigma``.

    Coordinates are fixed from ``x_n`` down to ``x_1``. With the tail already
    chosen, ``a = A_j(tail)`` is known exactly: if ``a >= 0`` the closed branch
    is used (``x_j = 0`` or ``x_j = a``), otherwise ``x_j`` is placed strictly
    inside ``(a, 0)`` within ``eta`` of its target. Errors grow by at most a
    factor ``1 + L`` per level, ``L`` being the largest row sum of ``|c_jk|``,
    so ``eta = epsilon / (1 + L)^n`` keeps the total under ``epsilon``.
    Returns a tuple of ``Fraction``.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    cp = cartier_point(spec, sigma)
    n = spec.n
    spread = max((sum(abs(v) for v in row) for row in spec.rows), default=0)
    eta = epsilon / (1 + spread) ** n
    x = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        a = _eval(spec, j, x)
        if cp.sigma.is_minus(j + 1):
            x[j] = a if a >= 0 else a + min(eta, -a) / 2
        else:
            x[j] = Fraction(0) if a >= 0 else -min(eta, -a) / 2
    return tuple(x)


def check_positivity_necessity(spec, **caps):
    """Instance of the implication: untwisted implies every ``ell_i >= 0``."""
    return not is_untwisted(spec, **caps).verdict or all(v >= 0 for v in spec.ell)


@dataclass(frozen=True)
class ConvexityEvidence:
    """Result of :func:`grid_convexity_oracle`.

    ``convex`` False is a proof of non-convexity: ``pair`` holds two points of
    ``C`` whose ``midpoint`` is not in ``C`` (all exact Fractions). True is
    only evidence at the given grid resolution.
    """

    convex: bool
    denominator: int
    grid_points: int
    pair: tuple | None = None
    midpoint: tuple | None = None

    def __bool__(self):
        return self.convex


def _scaled(spec, factor):
    return CubeSpec(tuple(factor * v for v in spec.ell), spec.rows)


def _members_mask(spec, pts):
    # vectorized membership test for integer points (rows of pts)
    n = spec.n
    ok = np.ones(pts.shape[:-1], dtype=bool)
    for j in range(n - 1, -1, -1):
        a = np.full(pts.shape[:-1], spec.ell[j], dtype=np.int64)
        for off, coef in enumerate(spec.rows[j]):
            if coef:
                a -= coef * pts[..., j + 1 + off]
        xj = pts[..., j]
        ok &= ((a < xj) & (xj < 0)) | ((0 <= xj) & (xj <= a))
    return ok


def _grid_points(spec, cap):
    # integer points of the cube, vectorized level by level; same order as iter_lattice
    n = spec.n
    tails = np.zeros((1, 0), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        a = np.full(len(tails), spec.ell[j], dtype=np.int64)
        for off, coef in enumerate(spec.rows[j]):
            if coef:
                a -= coef * tails[:, off]
        lo = np.where(a >= 0, 0, a + 1)
        counts = np.where(a >= 0, a + 1, -1 - a)
        total = int(counts.sum())
        if total > cap:
            raise CapacityError("convexity grid point count", cap)
        offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        column = np.repeat(lo, counts) + offsets
        tails = np.column_stack([column, np.repeat(tails, counts, axis=0)])
        if total and int(np.abs(tails).max()) >= 2**40:
            raise CapacityError("grid coordinate magnitude", 2**40)
    return tails


def grid_convexity_oracle(spec, denominator=DEFAULT_GRID_DENOMINATOR, grid_cap=DEFAULT_GRID_CAP):
    """Midpoint-convexity check of ``C`` on the grid ``(1/denominator) Z^n``.

    The grid points of ``C`` are the integer points of the cube with ``ell``
    scaled by ``denominator``, and a pair's midpoint lies in ``C`` exactly when
    the pair's sum is an integer point of the cube scaled by
    ``2 * denominator``. Every unordered pair is tested. Points with a negative
    coordinate are scanned first since any failure must involve one; the
    first failing pair in that order is re-verified with exact rational
    membership before being reported.
    """
    if isinstance(denominator, bool) or not isinstance(denominator, int) or denominator < 1:
        raise UsageError(f"denominator must be a positive integer, got {denominator!r}")
    n = spec.n
    arr = _grid_points(_scaled(spec, denominator), grid_cap)
    count = len(arr)
    if n == 0 or count < 2:
        return ConvexityEvidence(True, denominator, count)
    negative = (arr < 0).any(axis=1)
    arr = np.concatenate([arr[negative], arr[~negative]])
    doubled = _scaled(spec, 2 * denominator)
    max_block = max(1, 4_000_000 // (count * n))
    start, block = 0, 1
    while start < count:
        # pairs (p, q) with index(q) >= start; earlier q were paired already
        sums = arr[start : start + block, None, :] + arr[None, start:, :]
        ok = _members_mask(doubled, sums)
        if not ok.all():
            i, j = map(int, np.argwhere(~ok)[0])
            p = tuple(Fraction(int(v), denominator) for v in arr[start + i])
            q = tuple(Fraction(int(v), denominator) for v in arr[start + j])
            mid = tuple((a + b) / 2 for a, b in zip(p, q))
            if not (member(spec, p) and member(spec, q)) or member(spec, mid):
                raise InconsistencyError(f"vectorized midpoint test disagrees with exact membership at {p}, {q}")
            return ConvexityEvidence(False, denominator, count, (p, q), mid)
        start += block
        block = min(2 * block, max_block)
    return ConvexityEvidence(True, denominator, count)


