"""Exact scalars, finite graded vector spaces and Koszul signs.

Scalars are plain Python objects: ``int`` for prime fields (kept reduced in
``[0, p)``) and ``int``/``Fraction`` for the rationals.  A :class:`FieldSpec`
knows how to normalise, invert and parse them; all other modules do their
arithmetic with the ordinary operators and call :meth:`FieldSpec.reduce`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = "int | Fraction"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"characteristic {self.characteristic} is not prime")
            if self.characteristic >= 2**31:
                raise ValueError("prime fields are limited to p < 2**31")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime-field", p)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime-field"

    def reduce(self, x):
        """Canonical representative of ``x``."""
        p = self.characteristic
        if p:
            if type(x) is int:
                return x % p
            x = Fraction(x)
            return x.numerator * pow(x.denominator, -1, p) % p
        if type(x) is int:
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return int(x)
        raise TypeError(f"inexact scalar {x!r} rejected")

    def inv(self, x):
        x = self.reduce(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(x, -1, self.characteristic)
        return self.reduce(Fraction(1) / x)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def parse(self, token):
        """Parse a serialized scalar (``"p/q"`` string or an integer)."""
        if isinstance(token, bool) or isinstance(token, float):
            raise ValueError(f"scalar {token!r} must be an integer or a 'p/q' string")
        if isinstance(token, int):
            return self.reduce(token)
        if isinstance(token, str):
            try:
                return self.reduce(Fraction(token.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad scalar {token!r}") from exc
        raise ValueError(f"bad scalar {token!r}")

    def format(self, x):
        """Serialize a scalar: strings over Q, integers mod p."""
        x = self.reduce(x)
        if self.characteristic:
            return int(x)
        return str(x)

    def __str__(self):
        return "Q" if not self.characteristic else f"F{self.characteristic}"


QQ = FieldSpec.rationals()


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional graded vector space with a named, ordered basis."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    field: FieldSpec = QQ
    _index: dict = dc_field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        index = {}
        for i, name in enumerate(self.names):
            if name in index:
                raise ValueError(f"duplicate basis name {name!r}")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_basis(cls, basis: Iterable[tuple[str, int]], field: FieldSpec = QQ) -> GradedSpace:
        basis = list(basis)
        return cls(tuple(n for n, _ in basis), tuple(int(d) for _, d in basis), field)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis name {name!r}") from None

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def window(self) -> tuple[int, int]:
        if not self.degrees:
            return (0, 0)
        return (min(self.degrees), max(self.degrees))

    def of_degree(self, q: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == q]

    def __len__(self):
        return len(self.names)


def parity_sign(degree: int) -> int:
    """(-1)**degree, as +1 or -1."""
    return -1 if degree & 1 else 1


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int], shift: int = 0) -> int:
    """Koszul sign of reordering graded elements.

    ``permutation`` lists 0-based element indices in their new order, so the
    permuted sequence is ``[a[permutation[0]], a[permutation[1]], ...]``.
    Every pair of elements whose relative order is reversed contributes
    ``(-1)**((d_p + shift) * (d_q + shift))``.
    """
    n = len(permutation)
    if len(degrees) != n:
        raise ValueError(f"permutation has length {n} but {len(degrees)} degrees given")
    if sorted(permutation) != list(range(n)):
        raise ValueError(f"{list(permutation)} is not a permutation of 0..{n - 1}")
    odd = [(d + shift) & 1 for d in degrees]
    e = 0
    for i in range(n):
        pi = permutation[i]
        if not odd[pi]:
            continue
        for j in range(i + 1, n):
            pj = permutation[j]
            if pi > pj and odd[pj]:
                e ^= 1
    return -1 if e else 1
