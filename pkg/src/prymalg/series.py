"""Dimension tables built from truncated series and the algebra dimensions.

Tables hold exact coefficients (integers, or polynomials in the
deck-group order m), never closed-form rational functions.  Every entry
carries an in_stable_range flag; entries outside the proven genus range
are still computed, because the formulas are total, but consumers must
treat them as extrapolations.  When the genus is not bound the flag is
False: an entry is only marked in range when that is provable from the
given parameters.

A boundary-component count never enters: the tables depend on the genus,
the puncture count, and the level only.  A table for p = 0 refers to a
surface with at least one boundary component; a closed surface is outside
the hypotheses of every twisted table here and is rejected explicitly.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field

from .abelian_group import SymbolicOrder, homology_group
from .algebra import AlgebraSpec, Variant, graded_dimension
from .errors import CapExceededError, InvalidParameterError, OracleMismatchError
from .partitions import (
    MAX_COUNT_R,
    JVector,
    count_d_weighted_partitions,
    enumerate_set_partitions,
    stirling2,
)
from .polynomial import IntPoly

import enum
import math

MAX_STABLE_DEGREE = 200


class StableRangeKind(enum.Enum):
    PUTMAN = "putman"
    LOOIJENGA = "looijenga"
    HARER = "harer"


def in_stable_range(kind, genus, k):
    """Whether degree k is inside the proven range for the given genus."""
    if genus < 0 or k < 0:
        raise InvalidParameterError("genus and degree must be >= 0")
    if kind is StableRangeKind.PUTMAN:
        return genus >= 2 * k * k + 7 * k + 2
    if kind is StableRangeKind.LOOIJENGA:
        return 2 * genus >= 3 * k + 2
    if kind is StableRangeKind.HARER:
        return 3 * k <= 2 * (genus - 1)
    raise InvalidParameterError("unknown stable range kind %r" % (kind,))


@dataclass
class DimensionTable:
    """Map degree -> exact count, with per-entry stable-range flags.

    Twisted tables are keyed by the total degree k; the group-cohomology
    degree of the k-entry is k - r and is reported alongside.
    """

    variant: str
    entries: dict[int, object] = field(default_factory=dict)
    in_range: dict[int, bool] = field(default_factory=dict)
    r: int | None = None
    p: int | None = None
    level: int | None = None
    genus: int | None = None
    symbolic: bool = False
    # symbolic-in-m view of the same entries, kept alongside concrete values
    poly_entries: dict[int, IntPoly] = field(default_factory=dict)

    def degrees(self):
        return sorted(self.entries)

    def value(self, k):
        return self.entries[k]

    def flag(self, k):
        return self.in_range[k]

    def cohomological_degree(self, k):
        return k - self.r if self.r is not None else k

    def concrete_m(self):
        if self.level is not None and self.genus is not None:
            return self.level ** (2 * self.genus)
        return None

    def rows(self):
        """Row dicts in the delimited-output column order."""
        m = self.concrete_m()
        out = []
        for k in self.degrees():
            value = self.entries[k]
            if k in self.poly_entries:
                poly_text = str(self.poly_entries[k])
            else:
                poly_text = str(value)
            if isinstance(value, IntPoly):
                at_m = value.evaluate(m) if m is not None else None
            else:
                at_m = value
            out.append(
                {
                    "k": k,
                    "cohomological_degree": self.cohomological_degree(k),
                    "dim_polynomial_in_m": poly_text,
                    "dim_at_concrete_m": at_m,
                    "in_stable_range": self.in_range[k],
                }
            )
        return out

    def to_json_dict(self):
        return {
            "metadata": {
                "variant": self.variant,
                "r": self.r,
                "p": self.p,
                "level": self.level,
                "genus": self.genus,
                "symbolic": self.symbolic,
            },
            "rows": [
                {
                    **row,
                    "dim_at_concrete_m": (
                        str(row["dim_at_concrete_m"])
                        if row["dim_at_concrete_m"] is not None
                        else None
                    ),
                }
                for row in self.rows()
            ],
        }


def _partition_counts(max_q):
    """ways[q] = number of integer partitions of q (degree-2i generators)."""
    ways = [0] * (max_q + 1)
    ways[0] = 1
    for part in range(1, max_q + 1):
        for q in range(part, max_q + 1):
            ways[q] += ways[q - part]
    return ways


def stable_cohomology_dims(p, max_degree):
    """Stable ring dimensions: p degree-2 classes times one degree-2i
    class for each i >= 1, truncated at max_degree."""
    if p < 0:
        raise InvalidParameterError("p must be >= 0")
    if not 0 <= max_degree <= MAX_STABLE_DEGREE:
        raise InvalidParameterError(
            "max_degree must lie in [0, %d]" % MAX_STABLE_DEGREE
        )
    max_q = max_degree // 2
    ways = _partition_counts(max_q)
    for _ in range(p):
        acc = 0
        out = []
        for q in range(max_q + 1):
            acc += ways[q]
            out.append(acc)
        ways = out
    table = DimensionTable(variant="stable", p=p)
    for k in range(max_degree + 1):
        table.entries[k] = ways[k // 2] if k % 2 == 0 else 0
        table.in_range[k] = True
    return table


def _algebra_factor_spec(mode, r, level, genus):
    if mode == "level":
        if level is not None and genus is not None:
            group = homology_group(genus, level)
        else:
            group = SymbolicOrder(level=level, genus=genus)
        return AlgebraSpec(Variant.LEVEL_PRIME, r, group)
    if mode == "full-mcg":
        if level is not None:
            raise InvalidParameterError("full-mcg mode takes no level")
        return AlgebraSpec(Variant.KAWAZUMI_DPRIME, r)
    raise InvalidParameterError("mode must be 'level' or 'full-mcg', got %r" % (mode,))


def twisted_cohomology_dims(
    r,
    p,
    *,
    mode="level",
    level=None,
    genus=None,
    max_k=20,
    closed_surface=False,
):
    """Tensor-power twisted-coefficient table up to total degree max_k.

    The k-entry is the convolution of the stable ring with the prime
    algebra factor (deck-weighted for mode="level", untwisted for
    mode="full-mcg") and describes group cohomology in degree k - r.
    In level mode, leaving level/genus unbound keeps entries polynomial
    in m.  The surface must not be closed: with p = 0 the table refers
    to a surface with boundary (which count never enters).
    """
    if r < 0 or p < 0:
        raise InvalidParameterError("r and p must be >= 0")
    if closed_surface:
        if p == 0:
            raise InvalidParameterError(
                "closed surface (p = 0, no boundary) is outside the hypotheses "
                "of the twisted tables; they require a puncture or boundary"
            )
        raise InvalidParameterError(
            "closed_surface contradicts p >= 1 (punctures make the surface open)"
        )
    if not 0 <= max_k <= MAX_STABLE_DEGREE:
        raise InvalidParameterError("max_k must lie in [0, %d]" % MAX_STABLE_DEGREE)
    spec = _algebra_factor_spec(mode, r, level, genus)
    stable = stable_cohomology_dims(p, max_k)
    alg = {b: graded_dimension(spec, b) for b in range(max_k + 1)}
    kind = StableRangeKind.PUTMAN if mode == "level" else StableRangeKind.LOOIJENGA
    table = DimensionTable(
        variant=mode,
        r=r,
        p=p,
        level=level,
        genus=genus,
        symbolic=(mode == "level" and (level is None or genus is None)),
    )
    if mode == "level":
        sym_spec = AlgebraSpec(Variant.LEVEL_PRIME, r, SymbolicOrder())
        sym_alg = {b: graded_dimension(sym_spec, b) for b in range(max_k + 1)}
    else:
        sym_alg = alg
    for k in range(max_k + 1):
        total = 0
        sym_total = IntPoly.zero()
        for a in range(0, k + 1, 2):
            total = total + stable.value(a) * alg[k - a]
            sym_total = sym_total + stable.value(a) * sym_alg[k - a]
        table.entries[k] = total
        table.poly_entries[k] = sym_total
        table.in_range[k] = (
            in_stable_range(kind, genus, k) if genus is not None else False
        )
    return table


@dataclass(frozen=True)
class PutmanGapReport:
    """The two dimensions compared by the stability question for one k."""

    r: int
    p: int
    k: int
    level: int
    genus: int
    lhs_dim: int
    rhs_dim: int
    differ: bool

    @property
    def verdict(self):
        if self.differ:
            return "dims differ; the comparison map is not an isomorphism"
        if self.r <= 1:
            return "dims equal; consistent with isomorphism for r = %d" % self.r
        return "dims equal"


def putman_gap(r, p, k, level, genus):
    """Compare the untwisted-coefficient and deck-twisted tables at degree k."""
    if r < 0 or p < 0:
        raise InvalidParameterError("r and p must be >= 0")
    if level < 2:
        raise InvalidParameterError("level must be >= 2")
    if k % 2 == 1:
        raise InvalidParameterError(
            "k must be even: both compared dimensions vanish for odd k"
        )
    if not in_stable_range(StableRangeKind.PUTMAN, genus, k):
        raise InvalidParameterError(
            "(genus=%d, k=%d) is outside the proven range genus >= 2k^2+7k+2 = %d"
            % (genus, k, 2 * k * k + 7 * k + 2)
        )
    lhs = twisted_cohomology_dims(r, p, mode="full-mcg", genus=genus, max_k=k).value(k)
    rhs = twisted_cohomology_dims(
        r, p, mode="level", level=level, genus=genus, max_k=k
    ).value(k)
    differ = lhs != rhs
    if r >= 2 and k >= 2 and not differ:
        # two or more tensor factors at positive even degree always gain
        # deck-weighted classes; equality here means a computation bug
        raise OracleMismatchError(
            "expected differing dimensions for r=%d, k=%d but both are %d"
            % (r, k, lhs)
        )
    return PutmanGapReport(
        r=r,
        p=p,
        k=k,
        level=level,
        genus=genus,
        lhs_dim=lhs,
        rhs_dim=rhs,
        differ=differ,
    )


def j_factor_dimension(j_vector, degree, m=None):
    """Degree slice of the J-compatible summand over partitions of {1..r+1}.

    Block 1 (the one containing index 1) carries only non-identity
    weights, giving (m-1) choices each, and is barred from indices whose
    slot tag is 1; singleton blocks other than {1} start their exponent
    at 1.  Returns a polynomial in m when m is None.
    """
    if degree < 0:
        raise InvalidParameterError("degree must be >= 0")
    r = len(j_vector)
    if degree % 2 == 1:
        return IntPoly.zero() if m is None else 0
    q = degree // 2
    hot = {a for a in range(2, r + 2) if j_vector.entries[a - 2] == 1}
    total = IntPoly.zero() if m is None else 0
    m_poly = IntPoly((0, 1))
    for sp in enumerate_set_partitions(r + 1):
        first = sp.blocks[0]
        if set(first) & hot:
            continue
        b = sp.num_blocks
        base = (r + 1) - b
        mins = sum(1 for blk in sp.blocks[1:] if len(blk) == 1)
        t = q - base - mins
        if t < 0:
            continue
        ways = math.comb(t + b - 1, b - 1)
        if ways == 0:
            continue
        other_power = sum(len(blk) - 1 for blk in sp.blocks[1:])
        if m is None:
            weight = (m_poly - 1) ** (len(first) - 1) * m_poly**other_power
            total = total + weight * ways
        else:
            weight = (m - 1) ** (len(first) - 1) * m**other_power
            total += weight * ways
    return total


def j_twisted_dims(j_vector, level, genus, max_k=20):
    """Slot-tagged twisted table in the one-marked-point setting."""
    if not isinstance(j_vector, JVector):
        j_vector = JVector(tuple(j_vector))
    if level < 2 or genus < 0:
        raise InvalidParameterError("need level >= 2 and genus >= 0")
    if not 0 <= max_k <= MAX_STABLE_DEGREE:
        raise InvalidParameterError("max_k must lie in [0, %d]" % MAX_STABLE_DEGREE)
    r = len(j_vector)
    m = level ** (2 * genus)
    stable = stable_cohomology_dims(0, max_k)
    factor = {b: j_factor_dimension(j_vector, b, m=m) for b in range(max_k + 1)}
    sym_factor = {b: j_factor_dimension(j_vector, b) for b in range(max_k + 1)}
    table = DimensionTable(
        variant="j-twisted", r=r, p=None, level=level, genus=genus
    )
    for k in range(max_k + 1):
        total = 0
        sym_total = IntPoly.zero()
        for a in range(0, k + 1, 2):
            total += stable.value(a) * factor[k - a]
            sym_total = sym_total + stable.value(a) * sym_factor[k - a]
        table.entries[k] = total
        table.poly_entries[k] = sym_total
        table.in_range[k] = in_stable_range(StableRangeKind.PUTMAN, genus, k)
    return table


def stratum_census(r, codim, group=None):
    """Number of weighted partitions of {1..r} with r - (block count) = codim."""
    if r > MAX_COUNT_R:
        raise CapExceededError("r=%d exceeds counting cap %d" % (r, MAX_COUNT_R))
    if not 0 <= codim <= r:
        raise InvalidParameterError("codim must lie in [0, r]")
    poly = IntPoly.monomial(stirling2(r, r - codim), codim)
    if group is None:
        return poly
    if isinstance(group, SymbolicOrder):
        if group.is_bound:
            return poly.evaluate(group.specialize())
        return poly
    return poly.evaluate(group.order())


def stratum_census_total(r, group=None):
    """Census summed over codimensions; equals the weighted-partition count."""
    total = count_d_weighted_partitions(r)
    if group is None or (isinstance(group, SymbolicOrder) and not group.is_bound):
        return total
    if isinstance(group, SymbolicOrder):
        return total.evaluate(group.specialize())
    return total.evaluate(group.order())


def twisted_dims_signature_names():
    """Parameter names of the twisted table builder (no boundary count)."""
    return tuple(inspect.signature(twisted_cohomology_dims).parameters)
