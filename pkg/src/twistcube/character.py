"""Signed lattice-point characters and a Demazure-operator oracle.

A character is a finitely supported map from weights (fundamental-weight
coordinates) to integer multiplicities. The twisted-cube side sums
``rho(x) * e^{lambda - sum_k x_k alpha_{beta_k}}`` over the integer points of
the cube; the oracle side applies isobaric Demazure operators
``D_{beta_1} ... D_{beta_n}`` to ``e^lambda``.
"""

from dataclasses import dataclass

from ._arith import checked
from .cube import DEFAULT_POINT_CAP, iter_lattice
from .errors import CapacityError, UsageError
from .rep import _check_inputs, derive_constants


class FormalCharacter:
    """An element of the group ring of the weight lattice. Zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for weight, mult in items:
                self._add(tuple(weight), mult)

    @classmethod
    def monomial(cls, weight, mult=1):
        return cls({tuple(weight): mult})

    def _add(self, weight, mult):
        total = checked(self._terms.get(weight, 0) + mult)
        if total:
            self._terms[weight] = total
        else:
            self._terms.pop(weight, None)

    def __getitem__(self, weight):
        return self._terms.get(tuple(weight), 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def items(self):
        return sorted(self._terms.items())

    def __eq__(self, other):
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = FormalCharacter(self._terms)
        for w, m in other._terms.items():
            out._add(w, m)
        return out

    def __neg__(self):
        return FormalCharacter({w: -m for w, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def shift(self, weight):
        """Multiply by the monomial ``e^weight``."""
        return FormalCharacter(
            {tuple(checked(a + b) for a, b in zip(w, weight)): m for w, m in self._terms.items()}
        )

    def total(self):
        """Sum of multiplicities (the character's value at the identity)."""
        return sum(self._terms.values())

    def is_nonnegative(self):
        return all(m > 0 for m in self._terms.values())

    def to_json(self):
        return [{"weight": list(w), "multiplicity": m} for w, m in self.items()]

    @classmethod
    def from_json(cls, data):
        return cls((tuple(t["weight"]), t["multiplicity"]) for t in data)

    def __repr__(self):
        body = " + ".join(f"{m}*e^{list(w)}" for w, m in self.items())
        return f"FormalCharacter({body or '0'})"


def signed_character(cartan, weight, word, spec=None, point_cap=DEFAULT_POINT_CAP):
    """Sum of ``rho(x) e^{mu(x)}`` over the cube's integer points.

    ``mu(x) = lambda - sum_k x_k alpha_{beta_k}``. If ``spec`` is given it must
    equal ``derive_constants(cartan, weight, word)``.
    """
    weight, word = _check_inputs(cartan, weight, word)
    derived = derive_constants(cartan, weight, word)
    if spec is None:
        spec = derived
    elif spec != derived:
        raise UsageError("spec does not match the constants derived from (cartan, weight, word)")
    roots = [cartan.simple_root(b) for b in word]
    r = cartan.rank
    out = FormalCharacter()
    for count, (x, sign) in enumerate(iter_lattice(spec)):
        if count >= point_cap:
            raise CapacityError("lattice point count", point_cap)
        mu = list(weight)
        for xk, root in zip(x, roots):
            if xk:
                for i in range(r):
                    mu[i] = checked(mu[i] - checked(xk * root[i]))
        out._add(tuple(mu), sign)
    return out


def _string(cartan, i, weight):
    # D_i e^weight as a list of (weight, sign)
    alpha = cartan.simple_root(i)
    m = weight[i - 1]
    if m >= 0:
        steps, sign = range(0, m + 1), 1
        direction = -1
    elif m == -1:
        return []
    else:
        steps, sign = range(1, -m), -1
        direction = 1
    return [
        (tuple(checked(w + direction * s * a) for w, a in zip(weight, alpha)), sign)
        for s in steps
    ]


def demazure_operator(cartan, i, f):
    """Isobaric Demazure operator ``D_i``, applied monomial by monomial.

    For ``m = <mu, alpha_i^vee>``: ``D_i e^mu`` is ``e^mu + ... + e^{mu - m alpha_i}``
    when ``m >= 0``, zero when ``m = -1``, and
    ``-(e^{mu + alpha_i} + ... + e^{mu + (-m-1) alpha_i})`` when ``m <= -2``.
    """
    cartan._check(i)
    out = FormalCharacter()
    for w, mult in f.items():
        for v, sign in _string(cartan, i, w):
            out._add(v, checked(sign * mult))
    return out


def demazure_character(cartan, weight, word):
    """``D_{beta_1}(D_{beta_2}(... D_{beta_n}(e^lambda)))``."""
    weight, word = _check_inputs(cartan, weight, word)
    f = FormalCharacter.monomial(weight)
    for b in reversed(word):
        f = demazure_operator(cartan, b, f)
    return f


@dataclass(frozen=True)
class CharacterComparison:
    equal: bool
    diff: FormalCharacter
    signed: FormalCharacter
    demazure: FormalCharacter


def compare_characters(cartan, weight, word, spec=None, point_cap=DEFAULT_POINT_CAP):
    """Both characters and ``diff = signed - demazure``."""
    signed = signed_character(cartan, weight, word, spec=spec, point_cap=point_cap)
    demazure = demazure_character(cartan, weight, word)
    diff = signed - demazure
    return CharacterComparison(len(diff) == 0, diff, signed, demazure)
