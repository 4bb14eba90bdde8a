"""Finite abelian groups: deck groups of abelian covers, written additively.

A group is a direct sum of cyclic factors Z/f with every f >= 2; the
empty factor list is the trivial group.  Elements are residue vectors.
A symbolic-order tag stands in for the genus-g level-l deck group when
its order l^(2g) is to be carried as the indeterminate m instead of a
concrete integer; symbolic computations never enumerate elements.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import CapExceededError, InvalidParameterError, ParseError

DEFAULT_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class GroupElement:
    """Residue vector with one entry per cyclic factor."""

    residues: tuple[int, ...]

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.residues) + ")"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups; factor order is irrelevant to semantics."""

    cyclic_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.cyclic_factors)
        if any(f < 2 for f in factors):
            raise InvalidParameterError(
                "cyclic factors must all be >= 2; the trivial group is ()"
            )
        object.__setattr__(self, "cyclic_factors", factors)

    def order(self):
        return math.prod(self.cyclic_factors)

    def identity(self):
        return GroupElement((0,) * len(self.cyclic_factors))

    def element(self, residues):
        """Reduce a residue vector into the group (idempotent)."""
        residues = tuple(int(x) for x in residues)
        if len(residues) != len(self.cyclic_factors):
            raise InvalidParameterError(
                "expected %d residues, got %d"
                % (len(self.cyclic_factors), len(residues))
            )
        return GroupElement(tuple(x % f for x, f in zip(residues, self.cyclic_factors)))

    def elements(self, cap=DEFAULT_ENUMERATION_CAP):
        """All elements, identity first, in mixed-radix order."""
        if self.order() > cap:
            raise CapExceededError(
                "group order %d exceeds enumeration cap %d" % (self.order(), cap)
            )
        return [
            GroupElement(t)
            for t in itertools.product(*(range(f) for f in self.cyclic_factors))
        ]

    def add(self, x, y):
        return GroupElement(
            tuple(
                (a + b) % f
                for a, b, f in zip(x.residues, y.residues, self.cyclic_factors)
            )
        )

    def negate(self, x):
        return GroupElement(
            tuple((-a) % f for a, f in zip(x.residues, self.cyclic_factors))
        )

    def is_identity(self, x):
        return all(a == 0 for a in x.residues)

    def torsion_count(self, n):
        """Number of x with n*x = 0, one gcd per cyclic factor."""
        if n < 1:
            raise InvalidParameterError("n must be >= 1")
        return math.prod(math.gcd(n, f) for f in self.cyclic_factors)

    def __str__(self):
        if not self.cyclic_factors:
            return "Z1"
        return "x".join("Z%d" % f for f in self.cyclic_factors)


@dataclass(frozen=True)
class SymbolicOrder:
    """The deck-group order l^(2g) kept as the indeterminate m.

    Optionally bound to concrete (level, genus), in which case it can be
    specialized to the exact integer value.
    """

    level: int | None = None
    genus: int | None = None

    @property
    def is_bound(self):
        return self.level is not None and self.genus is not None

    def specialize(self):
        if not self.is_bound:
            raise InvalidParameterError("symbolic order is not bound to (level, genus)")
        return self.level ** (2 * self.genus)

    def __str__(self):
        return "m"


def homology_group(genus, level):
    """First homology of the closed genus-g surface with Z/l coefficients."""
    if genus < 0:
        raise InvalidParameterError("genus must be >= 0")
    if level < 2:
        raise InvalidParameterError("level must be >= 2")
    return FiniteAbelianGroup((level,) * (2 * genus))


_H1_RE = re.compile(r"H1\(\s*g\s*=\s*(\d+)\s*,\s*l\s*=\s*(\d+)\s*\)")
_FACTOR_RE = re.compile(r"Z(\d+)(?:\^(\d+))?")


def parse_group_literal(text):
    """Parse a group literal: "Z2xZ2", "Z3^4", or "H1(g=2,l=3)".

    "Z1" factors are accepted and dropped (they contribute nothing).
    """
    t = text.strip()
    if not t:
        raise ParseError("empty group literal")
    m = _H1_RE.fullmatch(t)
    if m:
        return homology_group(int(m.group(1)), int(m.group(2)))
    if t.startswith("H1"):
        raise ParseError("malformed H1 literal %r; expected H1(g=<int>,l=<int>)" % t)
    factors = []
    for token in t.split("x"):
        m = _FACTOR_RE.fullmatch(token.strip())
        if not m:
            raise ParseError("unrecognized group token %r in %r" % (token, text))
        n = int(m.group(1))
        k = int(m.group(2)) if m.group(2) else 1
        if n == 0:
            raise ParseError("unrecognized group token %r in %r" % (token, text))
        if n == 1:
            continue
        factors.extend([n] * k)
    return FiniteAbelianGroup(tuple(factors))
