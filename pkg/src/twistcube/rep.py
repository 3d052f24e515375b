"""Twisted-cube constants from a weight and a word in the simple reflections.

Cartan convention: ``a[i][j] = <alpha_j, alpha_i^vee>`` -- rows are indexed by
coroots, columns by roots. With this convention a word ``beta_1 ... beta_n``
gives ``c_ij = a[beta_i][beta_j]``. Transposing the matrix silently swaps the
long and short roots in types B, C, F and G, so the built-in matrices are
computed from explicit Euclidean realizations of the simple roots instead of
being typed in.

Weights are integer vectors in the fundamental-weight basis, so
``<lambda, alpha_i^vee> = lambda_i``. Words are 1-based tuples of simple-root
indices and need not be reduced.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cube import CubeSpec
from .errors import UsageError

_LABEL = re.compile(r"^([A-Ga-g])(\d+)$")


@dataclass(frozen=True)
class CartanMatrix:
    """A (generalized) Cartan matrix with ``entries[i][j] = <alpha_j, alpha_i^vee>``.

    Indices of :meth:`pairing` are 1-based; ``entries`` is a plain 0-based
    tuple of rows.
    """

    entries: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        r = len(rows)
        if r == 0:
            raise UsageError("a Cartan matrix needs rank at least 1")
        for i, row in enumerate(rows):
            if len(row) != r:
                raise UsageError(f"Cartan matrix row {i + 1} has length {len(row)}, expected {r}")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise UsageError(f"Cartan entries must be integers, got {v!r}")
        for i in range(r):
            if rows[i][i] != 2:
                raise UsageError(f"diagonal entry a[{i + 1}][{i + 1}] must be 2")
            for j in range(r):
                if i == j:
                    continue
                if rows[i][j] > 0:
                    raise UsageError(f"off-diagonal entry a[{i + 1}][{j + 1}] must be <= 0")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise UsageError(f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] must vanish together")
        object.__setattr__(self, "entries", rows)

    @property
    def rank(self):
        return len(self.entries)

    def pairing(self, i, j):
        """``<alpha_j, alpha_i^vee>`` for 1-based ``i``, ``j``."""
        self._check(i)
        self._check(j)
        return self.entries[i - 1][j - 1]

    def simple_root(self, j):
        """``alpha_j`` in the fundamental-weight basis (column ``j``)."""
        self._check(j)
        return tuple(row[j - 1] for row in self.entries)

    def _check(self, i):
        if isinstance(i, bool) or not isinstance(i, int) or not (1 <= i <= self.rank):
            raise UsageError(f"simple root index {i!r} out of range 1..{self.rank}")


def _e(dim, *terms):
    v = [Fraction(0)] * dim
    for idx, coef in terms:
        v[idx - 1] += Fraction(coef)
    return v


def _simple_roots(kind, r):
    # Euclidean realizations with the standard labelling of the Dynkin diagram
    if kind == "A":
        return [_e(r + 1, (i, 1), (i + 1, -1)) for i in range(1, r + 1)]
    chain = [_e(r, (i, 1), (i + 1, -1)) for i in range(1, r)]
    if kind == "B":
        return chain + [_e(r, (r, 1))]
    if kind == "C":
        return chain + [_e(r, (r, 2))]
    if kind == "D":
        return chain + [_e(r, (r - 1, 1), (r, 1))]
    if kind == "G":
        return [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]
    if kind == "F":
        half = Fraction(1, 2)
        return [_e(4, (2, 1), (3, -1)), _e(4, (3, 1), (4, -1)), _e(4, (4, 1)),
                _e(4, (1, half), (2, -half), (3, -half), (4, -half))]
    if kind == "E":
        half = Fraction(1, 2)
        e8 = [_e(8, (1, half), (8, half), *[(k, -half) for k in range(2, 8)]),
              _e(8, (1, 1), (2, 1))]
        e8 += [_e(8, (k, 1), (k - 1, -1)) for k in range(2, 8)]
        return e8[:r]
    raise UsageError(f"unknown Cartan type {kind!r}")


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def cartan_matrix(label):
    """Cartan matrix of a finite type given as ``"A3"``, ``"B2"``, ``"G2"``, ...

    >>> cartan_matrix("B2").entries
    ((2, -1), (-2, 2))
    """
    m = _LABEL.match(str(label).strip())
    if not m:
        raise UsageError(f"cannot parse Cartan type label {label!r}")
    kind, r = m.group(1).upper(), int(m.group(2))
    if not _VALID_RANKS[kind](r):
        raise UsageError(f"type {kind}{r} does not exist")
    roots = _simple_roots(kind, r)

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    rows = []
    for ai in roots:
        row = []
        for aj in roots:
            v = 2 * dot(aj, ai) / dot(ai, ai)
            assert v.denominator == 1
            row.append(int(v))
        rows.append(tuple(row))
    return CartanMatrix(tuple(rows), f"{kind}{r}")


def _check_inputs(cartan, weight, word):
    weight = tuple(weight)
    word = tuple(word)
    if len(weight) != cartan.rank:
        raise UsageError(f"weight has {len(weight)} coordinates, rank is {cartan.rank}")
    for v in weight:
        if isinstance(v, bool) or not isinstance(v, int):
            raise UsageError(f"weight coordinates must be integers, got {v!r}")
    for b in word:
        cartan._check(b)
    return weight, word


def derive_constants(cartan, weight, word):
    """The spec with ``c_ij = <beta_j, beta_i^vee>`` and ``ell_j = <lambda, beta_j^vee>``."""
    weight, word = _check_inputs(cartan, weight, word)
    n = len(word)
    rows = tuple(
        tuple(cartan.pairing(word[i], word[j]) for j in range(i + 1, n)) for i in range(n)
    )
    ell = tuple(weight[b - 1] for b in word)
    return CubeSpec(ell, rows)


@dataclass(frozen=True)
class NecessaryConditions:
    """Two conditions every untwisted ``(lambda, word)`` must meet.

    ``cond1``: ``lambda_i >= 0`` for each index ``i`` in the word.
    ``cond2``: ``lambda_i = 0`` for each index ``i`` occurring at least twice.
    The ``*_violations`` tuples list offending indices in ascending order.
    """

    cond1: bool
    cond2: bool
    cond1_violations: tuple
    cond2_violations: tuple

    @property
    def both(self):
        return self.cond1 and self.cond2


def necessary_conditions(cartan, weight, word):
    weight, word = _check_inputs(cartan, weight, word)
    counts = Counter(word)
    bad1 = tuple(sorted(i for i in counts if weight[i - 1] < 0))
    bad2 = tuple(sorted(i for i, k in counts.items() if k >= 2 and weight[i - 1] != 0))
    return NecessaryConditions(not bad1, not bad2, bad1, bad2)
