"""Twisted cubes: the linear forms ``A_j``, membership, density and lattice points.

Coordinates follow the usual convention ``x = (x_1, ..., x_n)``. All public
indices are 1-based to match the usual mathematical notation; the tuples that
hold points are ordinary 0-based Python tuples.

A point ``x`` lies in the twisted cube ``C(c, ell)`` when, for every ``k``,

    A_k(x) < x_k < 0    or    0 <= x_k <= A_k(x),

where ``A_k(x) = ell_k - sum_{j > k} c_kj x_j``. The density at a member is
``(-1)^n prod_k sgn(x_k)`` with ``sgn(x) = +1`` for ``x < 0`` and ``-1``
otherwise, so each negative coordinate contributes a factor ``-1``.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from ._arith import as_exact, checked
from .errors import CapacityError, UsageError

DEFAULT_POINT_CAP = 10**7


@dataclass(frozen=True)
class CubeSpec:
    """Constants ``(c, ell)`` of a twisted cube of dimension ``n = len(ell)``.

    ``rows[i]`` holds ``(c_{i+1,i+2}, ..., c_{i+1,n})``, i.e. the strictly upper
    triangular part of ``c`` row by row. Prefer :meth:`build` for construction.
    """

    ell: tuple
    rows: tuple

    def __post_init__(self):
        ell = tuple(self.ell)
        rows = tuple(tuple(r) for r in self.rows)
        n = len(ell)
        if len(rows) != n:
            raise UsageError(f"expected {n} rows of c, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != n - i - 1:
                raise UsageError(f"row {i + 1} of c must have {n - i - 1} entries, got {len(row)}")
        for v in ell + sum(rows, ()):
            if isinstance(v, bool) or not isinstance(v, int):
                raise UsageError(f"constants must be integers, got {v!r}")
            checked(v)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def build(cls, ell, c=None):
        """Build a spec from ``ell`` and the nonzero entries of ``c``.

        ``c`` maps 1-based pairs ``(i, j)`` with ``i < j`` to integers; it may
        also be an iterable of ``(i, j, value)`` triples. Missing entries are 0.
        """
        ell = tuple(ell)
        n = len(ell)
        if c is None:
            c = {}
        elif not isinstance(c, Mapping):
            triples = list(c)
            c = {}
            for t in triples:
                if len(t) != 3:
                    raise UsageError(f"c entries must be [i, j, value] triples, got {t!r}")
                i, j, v = t
                if (i, j) in c:
                    raise UsageError(f"duplicate entry for c_{i}{j}")
                c[(i, j)] = v
        rows = [[0] * (n - i - 1) for i in range(n)]
        for (i, j), v in c.items():
            if not (1 <= i < j <= n):
                raise UsageError(f"c_{i},{j} is not a valid entry: need 1 <= i < j <= {n}")
            rows[i - 1][j - i - 1] = v
        return cls(ell, tuple(tuple(r) for r in rows))

    @property
    def n(self):
        return len(self.ell)

    def cij(self, i, j):
        """Return ``c_ij`` for 1-based ``i < j``."""
        if not (1 <= i < j <= self.n):
            raise UsageError(f"c_{i},{j} undefined: need 1 <= i < j <= {self.n}")
        return self.rows[i - 1][j - i - 1]

    def entries(self):
        """Yield ``(i, j, c_ij)`` for every ``1 <= i < j <= n`` in row order."""
        for i, row in enumerate(self.rows, start=1):
            for offset, v in enumerate(row):
                yield i, i + offset + 1, v

    def __str__(self):
        c = ", ".join(f"c{i}{j}={v}" for i, j, v in self.entries() if v)
        return f"CubeSpec(n={self.n}, {{{c}}}, ell={self.ell})"


@dataclass(frozen=True)
class SignedLatticeSet:
    """Integer points of a twisted cube paired with their density values."""

    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def points(self):
        return [p for p, _ in self.entries]

    def signs(self):
        return {p: s for p, s in self.entries}

    def count(self, sign):
        return sum(1 for _, s in self.entries if s == sign)


def _eval(spec, j, x):
    # 0-based j; reads x[j+1:]
    row = spec.rows[j]
    total = spec.ell[j]
    for coef, xk in zip(row, x[j + 1 :]):
        if coef:
            total = checked(total - checked(coef * xk))
    return total


def eval_A(spec, j, tail):
    """Evaluate ``A_j(x_{j+1}, ..., x_n)`` for 1-based ``j``.

    ``tail`` holds exactly the ``n - j`` trailing coordinates.

    >>> eval_A(CubeSpec.build((3, 5), {(1, 2): 1}), 1, (5,))
    -2
    """
    n = spec.n
    if not (1 <= j <= n):
        raise UsageError(f"index j={j} out of range 1..{n}")
    tail = tuple(as_exact(v) for v in tail)
    if len(tail) != n - j:
        raise UsageError(f"A_{j} takes {n - j} coordinates, got {len(tail)}")
    return _eval(spec, j - 1, (None,) * j + tail)


def sgn(x):
    """+1 for negative ``x``, -1 for ``x >= 0``."""
    return 1 if x < 0 else -1


def _branch_ok(a, xk):
    return a < xk < 0 or 0 <= xk <= a


def _coerce_point(spec, point):
    point = tuple(as_exact(v) for v in point)
    if len(point) != spec.n:
        raise UsageError(f"point has length {len(point)}, expected {spec.n}")
    for v in point:
        checked(v)
    return point


def satisfies_S(spec, k, point):
    """Test condition (S-k) at ``point`` (integers or Fractions, exact)."""
    if not (1 <= k <= spec.n):
        raise UsageError(f"index k={k} out of range 1..{spec.n}")
    x = _coerce_point(spec, point)
    return _branch_ok(_eval(spec, k - 1, x), x[k - 1])


def member(spec, point):
    """True when ``point`` satisfies (S-k) for every ``k``."""
    x = _coerce_point(spec, point)
    # (S-n) first: cheapest and most often decisive
    for j in range(spec.n - 1, -1, -1):
        if not _branch_ok(_eval(spec, j, x), x[j]):
            return False
    return True


def density(spec, point):
    """The density value at an integer point: 0 off the cube, else +-1."""
    if not member(spec, point):
        return 0
    sign = 1
    for v in point:
        if v < 0:
            sign = -sign
    return sign


def _admissible(a):
    # integer solutions of (S-k) for the coordinate once A_k = a is known
    if a >= 0:
        return range(0, a + 1)
    return range(a + 1, 0)


def iter_lattice(spec):
    """Yield ``(point, sign)`` for every integer point of the cube.

    Points come out lexicographically ordered on ``(x_n, ..., x_1)``. This is
    a lazy generator; no cap is applied.
    """
    n = spec.n
    if n == 0:
        yield (), 1
        return
    x = [0] * n

    def walk(j, sign):
        a = _eval(spec, j, x)
        for v in _admissible(a):
            x[j] = v
            s = -sign if v < 0 else sign
            if j == 0:
                yield tuple(x), s
            else:
                yield from walk(j - 1, s)

    yield from walk(n - 1, 1)


def enumerate_lattice(spec, point_cap=DEFAULT_POINT_CAP):
    """Materialize :func:`iter_lattice`, raising ``CapacityError`` past ``point_cap``."""
    entries = []
    for entry in iter_lattice(spec):
        if len(entries) >= point_cap:
            raise CapacityError("lattice point count", point_cap)
        entries.append(entry)
    return SignedLatticeSet(tuple(entries))


def truncated(spec, k):
    """The ``k``-dimensional spec on the trailing variables ``x_{n-k+1}, ..., x_n``."""
    n = spec.n
    if not (1 <= k <= n):
        raise UsageError(f"k={k} out of range 1..{n}")
    start = n - k
    return CubeSpec(spec.ell[start:], spec.rows[start:])


@dataclass(frozen=True)
class ConditionP:
    """Outcome of :func:`check_condition_P`; truthy when (P) holds.

    On failure ``k`` is the failing level and ``vertex`` the tail
    ``(x_{k+1}, ..., x_n)`` at which ``A_k`` is negative.
    """

    holds: bool
    k: int | None = None
    vertex: tuple | None = None
    value: int | None = None

    def __bool__(self):
        return self.holds


def check_condition_P(spec):
    """Decide condition (P) by checking each ``A_k`` on the vertices below it.

    Levels are examined from ``k = n`` down to ``k = 1``. Once (P-k+1)..(P-n)
    hold, the box they cut out is the convex hull of the Cartier points of the
    truncated system, and ``A_k`` is linear, so (P-k) reduces to evaluating
    ``A_k`` at those ``2^(n-k)`` vertices. The vertex list is kept in
    ascending sign-vector order (first coordinate toggles fastest) so the
    reported witness is the first failure in that order.
    """
    n = spec.n
    vertices = [()]
    for j in range(n - 1, -1, -1):
        grown = []
        for tail in vertices:
            a = _eval(spec, j, (None,) * (j + 1) + tail)
            if a < 0:
                return ConditionP(False, j + 1, tail, a)
            grown.append((0,) + tail)
            grown.append((a,) + tail)
        vertices = grown
    return ConditionP(True)
