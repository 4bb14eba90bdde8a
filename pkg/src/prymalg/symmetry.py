"""Permutation action on algebra bases and symmetric-group characters.

All basis classes have even degree, so the index-permutation action is an
unsigned permutation of basis monomials and traces are fixed-point
counts.  Characters are taken over a concrete deck group only: the trace
of a swap, for instance, is a torsion count, which the order alone does
not determine.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import basis, relabel_monomial
from .errors import InvalidParameterError, OracleMismatchError
from .partitions import integer_partitions

MAX_CHARACTER_R = 8


@dataclass(frozen=True)
class SrCharacter:
    """Class function on the symmetric group, indexed by cycle types."""

    r: int
    values: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, r, mapping):
        expected = cycle_types(r)
        if sorted(mapping) != sorted(expected):
            raise InvalidParameterError("values must cover every cycle type")
        return cls(r, tuple((ct, int(mapping[ct])) for ct in expected))

    def as_dict(self):
        return dict(self.values)

    def value(self, cycle_type):
        ct = tuple(sorted(cycle_type, reverse=True))
        for key, val in self.values:
            if key == ct:
                return val
        raise InvalidParameterError("unknown cycle type %r" % (cycle_type,))

    @property
    def dimension(self):
        return self.value((1,) * self.r) if self.r else self.value(())


def cycle_types(r):
    """Cycle types of S_r as descending tuples, ascending lexicographic."""
    return sorted(integer_partitions(r))


def centralizer_order(cycle_type):
    """z = prod(i^{m_i} m_i!) over cycle lengths i with multiplicity m_i."""
    mult = {}
    for part in cycle_type:
        mult[part] = mult.get(part, 0) + 1
    z = 1
    for part, m in mult.items():
        z *= part**m * math.factorial(m)
    return z


def class_size(cycle_type):
    r = sum(cycle_type)
    return math.factorial(r) // centralizer_order(cycle_type)


def representative_permutation(cycle_type):
    """Canonical permutation of 1..r with the given cycle type (1-indexed)."""
    r = sum(cycle_type)
    sigma = list(range(1, r + 1))
    start = 1
    for length in cycle_type:
        for offset in range(length):
            src = start + offset
            dst = start + (offset + 1) % length
            sigma[src - 1] = dst
        start += length
    return tuple(sigma)


def permutation_with_cycle_type(cycle_type, rng):
    """Random permutation of the given cycle type (for class-constancy checks)."""
    r = sum(cycle_type)
    points = list(range(1, r + 1))
    rng.shuffle(points)
    sigma = [0] * r
    pos = 0
    for length in cycle_type:
        cycle = points[pos : pos + length]
        for i, src in enumerate(cycle):
            sigma[src - 1] = cycle[(i + 1) % length]
        pos += length
    return tuple(sigma)


def fixed_point_count(spec, degree, sigma, basis_list=None):
    """Number of degree-slice basis monomials fixed by the relabeling."""
    if basis_list is None:
        basis_list = basis(spec, degree)
    return sum(1 for mon in basis_list if relabel_monomial(mon, sigma) == mon)


def permutation_character(spec, degree):
    """Trace of each cycle type on the degree slice of the algebra."""
    if spec.r > MAX_CHARACTER_R:
        raise InvalidParameterError(
            "characters computed for r <= %d only" % MAX_CHARACTER_R
        )
    basis_list = basis(spec, degree)
    values = {}
    for ct in cycle_types(spec.r):
        sigma = representative_permutation(ct)
        values[ct] = fixed_point_count(spec, degree, sigma, basis_list)
    return SrCharacter.from_dict(spec.r, values)


def _beta_to_partition(beta_desc):
    k = len(beta_desc)
    parts = tuple(
        b - (k - 1 - i) for i, b in enumerate(beta_desc) if b - (k - 1 - i) > 0
    )
    return parts


@functools.lru_cache(maxsize=None)
def murnaghan_nakayama(lam, mu):
    """Irreducible character value chi_lam at cycle type mu.

    Recursive border-strip removal on first-column hook lengths: a strip
    of size t removes beta -> beta - t when the target is vacant, with
    sign (-1)^(number of occupied slots jumped over).
    """
    lam = tuple(sorted(lam, reverse=True))
    mu = tuple(mu)
    if sum(lam) != sum(mu):
        raise InvalidParameterError("partition and cycle type sizes differ")
    if not mu:
        return 1
    t = mu[0]
    rest = mu[1:]
    k = len(lam)
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - t
        if nb < 0 or nb in occupied:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((occupied - {b}) | {nb}, reverse=True)
        total += (-1) ** height * murnaghan_nakayama(
            _beta_to_partition(tuple(new_beta)), rest
        )
    return total


def sr_character_table(r):
    """Irreducible characters of S_r indexed by partitions of r."""
    if r > MAX_CHARACTER_R:
        raise InvalidParameterError("character table computed for r <= %d" % MAX_CHARACTER_R)
    classes = cycle_types(r)
    table = {}
    for lam in sorted(integer_partitions(r), reverse=True):
        table[lam] = SrCharacter.from_dict(
            r, {ct: murnaghan_nakayama(lam, ct) for ct in classes}
        )
    return table


def decompose(character):
    """Multiplicities of the irreducibles in a genuine character.

    A fractional or negative multiplicity cannot come from an actual
    representation, so it is treated as an upstream bug and raised, never
    returned.
    """
    table = sr_character_table(character.r)
    values = character.as_dict()
    out = {}
    for lam, irr in table.items():
        total = Fraction(0)
        for ct in cycle_types(character.r):
            total += Fraction(values[ct] * irr.value(ct), centralizer_order(ct))
        if total.denominator != 1 or total < 0:
            raise OracleMismatchError(
                "multiplicity of %r is %s; input is not a genuine character"
                % (lam, total)
            )
        out[lam] = int(total)
    return out


def character_report_json(spec, degree, character, decomposition):
    """JSON shape: values per cycle type plus the irreducible decomposition."""
    group = spec.concrete_group()
    return {
        "r": spec.r,
        "degree": degree,
        "group": str(group),
        "values": [
            {"cycle_type": list(ct), "trace": val} for ct, val in character.values
        ],
        "decomposition": [
            {"partition": list(lam), "multiplicity": mult}
            for lam, mult in sorted(decomposition.items(), reverse=True)
            if mult != 0
        ],
    }
