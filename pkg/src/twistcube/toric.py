"""Bott-tower fan, the divisor ``D(c, ell)`` and its Cartier data.

The fan has rays ``e_j^+`` (standard basis) and
``e_j^- = -e_j^+ - sum_{k>j} c_jk e_k^+``; its maximal cones are indexed by
sign vectors in ``{+,-}^n``. The divisor is ``sum_j ell_j D_{e_j^-}``. Only
rays and sign vectors are represented; no general cone complex is built.
"""

from dataclasses import dataclass

from ._arith import checked
from .cube import _eval, _coerce_point
from .errors import CapacityError, UsageError

DEFAULT_CONE_CAP = 24


@dataclass(frozen=True, order=True)
class SignVector:
    """A maximal cone, encoded as ``n`` bits with bit ``j-1`` set iff ``sigma_j = -``."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0 or not (0 <= self.bits < (1 << self.n)):
            raise UsageError(f"bits={self.bits} do not encode a sign vector of length {self.n}")

    @classmethod
    def parse(cls, text):
        """Parse ``"-+"``, ``"(-,+)"`` or ``"- +"`` style strings."""
        signs = [ch for ch in text if ch not in "(), "]
        return cls.from_signs(signs)

    @classmethod
    def from_signs(cls, signs):
        bits = 0
        for j, s in enumerate(signs):
            if s == "-":
                bits |= 1 << j
            elif s != "+":
                raise UsageError(f"sign must be '+' or '-', got {s!r}")
        return cls(len(signs), bits)

    def is_minus(self, j):
        """True when ``sigma_j = -`` (1-based)."""
        return bool(self.bits >> (j - 1) & 1)

    @property
    def signs(self):
        return tuple("-" if self.bits >> j & 1 else "+" for j in range(self.n))

    def __str__(self):
        return "(" + ",".join(self.signs) + ")"


@dataclass(frozen=True)
class CartierPoint:
    sigma: SignVector
    m: tuple


def ray_plus(spec, j):
    if not (1 <= j <= spec.n):
        raise UsageError(f"ray index j={j} out of range 1..{spec.n}")
    return tuple(1 if k == j - 1 else 0 for k in range(spec.n))


def ray_minus(spec, j):
    """The ray generator ``e_j^-``: ``-1`` in slot ``j`` and ``-c_jk`` in slots ``k > j``."""
    n = spec.n
    if not (1 <= j <= n):
        raise UsageError(f"ray index j={j} out of range 1..{n}")
    return (0,) * (j - 1) + (-1,) + tuple(checked(-v) for v in spec.rows[j - 1])


def maximal_cones(spec, cone_cap=DEFAULT_CONE_CAP):
    """Yield all ``2^n`` sign vectors in ascending bit order."""
    n = spec.n
    if n > cone_cap:
        raise CapacityError(f"dimension n={n} (2^n cones)", cone_cap)
    for bits in range(1 << n):
        yield SignVector(n, bits)


def _cartier_m(spec, bits):
    n = spec.n
    m = [0] * n
    for j in range(n - 1, -1, -1):
        m[j] = _eval(spec, j, m) if bits >> j & 1 else 0
    return tuple(m)


def cartier_point(spec, sigma):
    """Cartier data on the cone ``sigma``.

    ``m_j = 0`` when ``sigma_j = +`` and ``m_j = A_j(m_{j+1}, ..., m_n)`` when
    ``sigma_j = -``; slots are filled from ``n`` down to 1.
    """
    if isinstance(sigma, str):
        sigma = SignVector.parse(sigma)
    if sigma.n != spec.n:
        raise UsageError(f"sign vector of length {sigma.n} for a spec with n={spec.n}")
    return CartierPoint(sigma, _cartier_m(spec, sigma.bits))


def all_cartier_points(spec, cone_cap=DEFAULT_CONE_CAP):
    return [CartierPoint(s, _cartier_m(spec, s.bits)) for s in maximal_cones(spec, cone_cap)]


def pairing(m, u):
    total = 0
    for a, b in zip(m, u):
        total = checked(total + checked(a * b))
    return total


@dataclass(frozen=True)
class DivisorPolytope:
    """``P_D = {x : 0 <= x_j <= A_j(x) for all j}`` for the divisor of ``spec``."""

    spec: object

    def violation(self, point):
        """First violated inequality as ``(j, "lower" | "upper")``, or ``None``.

        Inequalities are scanned ``j = 1..n``, the lower bound ``x_j >= 0``
        before the upper bound ``x_j <= A_j``.
        """
        return self._violation(_coerce_point(self.spec, point))

    def _violation(self, x):
        # x already coerced to exact in-range coordinates
        for j in range(self.spec.n):
            if x[j] < 0:
                return (j + 1, "lower")
            if x[j] > _eval(self.spec, j, x):
                return (j + 1, "upper")
        return None

    def __contains__(self, point):
        return self.violation(point) is None


def pd_contains(spec, point):
    """Exact membership in ``P_D`` for an integer or rational point."""
    return point in DivisorPolytope(spec)


@dataclass(frozen=True)
class BasepointFreeness:
    """Truthy when every Cartier point lies in ``P_D``; otherwise carries the first offender."""

    free: bool
    sigma: SignVector | None = None
    m: tuple | None = None
    violated: tuple | None = None

    def __bool__(self):
        return self.free


def is_basepoint_free(spec, cone_cap=DEFAULT_CONE_CAP):
    """Check ``m_sigma in P_D`` for all cones, reporting the first failure in cone order."""
    polytope = DivisorPolytope(spec)
    for sigma in maximal_cones(spec, cone_cap):
        m = _cartier_m(spec, sigma.bits)
        bad = polytope._violation(m)
        if bad is not None:
            return BasepointFreeness(False, sigma, m, bad)
    return BasepointFreeness(True)

