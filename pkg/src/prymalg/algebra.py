"""Normal-form arithmetic and graded dimensions for five quotient algebras.

The algebras are generated by degree-2 classes (one per index, written u
in the untwisted case and v in the deck-weighted case) together with
classes a attached to weighted index subsets of size >= 2, of degree
2|S| - 2.  Products of a-classes merge overlapping blocks, shedding one
v-power per shared index beyond the first, and vanish when the weight
constraints of the two blocks contradict.  A normal monomial is a
deck-weighted partition with one exponent per block, which builds the
"all v's on a block agree" relation into the data type.

Five variants share this machinery:

    LOOIJENGA_FULL   untwisted full algebra
    LOOIJENGA_PRIME  untwisted subspace, singleton exponents >= 2
    KAWAZUMI_DPRIME  untwisted subspace, singleton exponents >= 1
    LEVEL_FULL       deck-weighted full algebra
    LEVEL_PRIME      deck-weighted subspace, singleton exponents >= 1

The primed variants are graded subspaces (not unital subalgebras) of
their full counterparts; multiply is exposed on the full variants and
membership is tested with in_subspace.  These are abstract presented
algebras: identifications with cohomology rings are only valid inside
the stable genus ranges tracked by the series module.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .abelian_group import (
    DEFAULT_ENUMERATION_CAP,
    FiniteAbelianGroup,
    SymbolicOrder,
)
from .errors import CapExceededError, InvalidParameterError, ParseError
from .linalg import RowReducer
from .partitions import (
    DWeightedPartition,
    enumerate_set_partitions,
    integer_partitions,
    parse_block,
    relabel,
    set_partition_shape_count,
    validate_permutation,
)
from .polynomial import IntPoly

MAX_DIMENSION_R = 30
DEFAULT_BASIS_DEGREE_CAP = 64
ORACLE_MAX_R = 3
ORACLE_MAX_GROUP_ORDER = 4
ORACLE_MAX_DEGREE = 10

TRIVIAL_GROUP = FiniteAbelianGroup(())


class Variant(enum.Enum):
    LOOIJENGA_FULL = "looijenga-full"
    LOOIJENGA_PRIME = "looijenga-prime"
    KAWAZUMI_DPRIME = "kawazumi-dprime"
    LEVEL_FULL = "level-full"
    LEVEL_PRIME = "level-prime"

    @property
    def twisted(self):
        return self in (Variant.LEVEL_FULL, Variant.LEVEL_PRIME)

    @property
    def singleton_min_exponent(self):
        return _SINGLETON_MIN[self]

    @property
    def is_full(self):
        return self in (Variant.LOOIJENGA_FULL, Variant.LEVEL_FULL)

    @property
    def full_variant(self):
        return Variant.LEVEL_FULL if self.twisted else Variant.LOOIJENGA_FULL


_SINGLETON_MIN = {
    Variant.LOOIJENGA_FULL: 0,
    Variant.LOOIJENGA_PRIME: 2,
    Variant.KAWAZUMI_DPRIME: 1,
    Variant.LEVEL_FULL: 0,
    Variant.LEVEL_PRIME: 1,
}


@dataclass(frozen=True)
class AlgebraSpec:
    """Which algebra: variant, number of indices, and deck group if twisted."""

    variant: Variant
    r: int
    group: FiniteAbelianGroup | SymbolicOrder | None = None

    def __post_init__(self):
        if self.r < 0:
            raise InvalidParameterError("r must be >= 0")
        if self.variant.twisted:
            if self.group is None:
                raise InvalidParameterError(
                    "%s requires a group or symbolic order" % self.variant.value
                )
        else:
            # untwisted variants ignore the group field
            object.__setattr__(self, "group", None)

    @property
    def is_symbolic(self):
        return isinstance(self.group, SymbolicOrder)

    def concrete_group(self):
        """The group weights live in; trivial for untwisted variants."""
        if not self.variant.twisted:
            return TRIVIAL_GROUP
        if self.is_symbolic:
            raise InvalidParameterError(
                "operation requires a concrete group, got symbolic order"
            )
        return self.group

    def order_value(self):
        """|D| as an int, or None in symbolic mode."""
        if not self.variant.twisted:
            return 1
        if self.is_symbolic:
            return self.group.specialize() if self.group.is_bound else None
        return self.group.order()


@dataclass(frozen=True)
class NormalMonomial:
    """Deck-weighted partition plus one exponent per block."""

    partition: DWeightedPartition
    exponents: tuple[int, ...]

    def __post_init__(self):
        exponents = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exponents)
        if len(exponents) != self.partition.num_blocks:
            raise InvalidParameterError("one exponent per block required")
        if any(e < 0 for e in exponents):
            raise InvalidParameterError("exponents must be >= 0")

    @property
    def degree(self):
        base = sum(
            2 * len(idx) - 2 for idx, _ in self.partition.blocks if len(idx) >= 2
        )
        return 2 * sum(self.exponents) + base

    def sort_key(self):
        pkey = tuple(
            (idx, tuple(w.residues for w in weights))
            for idx, weights in self.partition.blocks
        )
        return (self.degree, pkey, self.exponents)

    def __str__(self):
        return format_monomial(self)


@dataclass(frozen=True)
class AlgebraElement:
    """Finite rational combination of normal monomials, canonically sorted."""

    terms: tuple[tuple[Fraction, NormalMonomial], ...]

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def of_monomial(cls, monomial, coeff=Fraction(1)):
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls.zero()
        return cls(((coeff, monomial),))

    @classmethod
    def of_terms(cls, pairs):
        acc = {}
        for coeff, mon in pairs:
            acc[mon] = acc.get(mon, Fraction(0)) + Fraction(coeff)
        terms = tuple(
            (c, m)
            for m, c in sorted(acc.items(), key=lambda kv: kv[0].sort_key())
            if c != 0
        )
        return cls(terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return AlgebraElement.of_terms(self.terms + other.terms)

    def scale(self, coeff):
        coeff = Fraction(coeff)
        if coeff == 0:
            return AlgebraElement.zero()
        return AlgebraElement(tuple((c * coeff, m) for c, m in self.terms))


def all_singleton_partition(r, group):
    return DWeightedPartition(group, tuple(((i,), ()) for i in range(1, r + 1)))


def unit_monomial(r, group):
    return NormalMonomial(all_singleton_partition(r, group), (0,) * r)


def multiply(spec, x, y, rng=None):
    """Product of two normal monomials in a full-variant algebra.

    Blocks of the two partitions are merged pairwise wherever they share
    an index: each merge of blocks sharing t indices contributes t - 1 to
    the merged block's exponent, weight offsets must agree up to a common
    shift or the product is zero, and exponents accumulate onto merged
    blocks.  The merge order is immaterial; pass rng to randomize it (used
    by the confluence checks).
    """
    if not spec.variant.is_full:
        raise InvalidParameterError(
            "multiply is defined on the full variants; compute in %s and test "
            "membership with in_subspace" % spec.variant.full_variant.value
        )
    group = spec.concrete_group()
    for mon in (x, y):
        if mon.partition.r != spec.r:
            raise InvalidParameterError("monomial index set does not match spec")
        if mon.partition.group != group:
            raise InvalidParameterError("monomial group does not match spec")

    items = []
    for mon in (x, y):
        for (idx, weights), exponent in zip(mon.partition.blocks, mon.exponents):
            offsets = {idx[0]: group.identity()}
            for j, w in enumerate(weights):
                offsets[idx[j + 1]] = w
            items.append((offsets, exponent))

    while True:
        overlaps = []
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                if items[a][0].keys() & items[b][0].keys():
                    overlaps.append((a, b))
        if not overlaps:
            break
        a, b = overlaps[0] if rng is None else overlaps[rng.randrange(len(overlaps))]
        off_a, exp_a = items[a]
        off_b, exp_b = items[b]
        common = sorted(off_a.keys() & off_b.keys())
        pin = common[0]
        shift = group.add(off_a[pin], group.negate(off_b[pin]))
        for q in common:
            if off_a[q] != group.add(off_b[q], shift):
                return AlgebraElement.zero()
        merged = dict(off_a)
        for k, v in off_b.items():
            if k not in merged:
                merged[k] = group.add(v, shift)
        exponent = exp_a + exp_b + len(common) - 1
        items = [it for i, it in enumerate(items) if i not in (a, b)]
        items.append((merged, exponent))

    blocks = []
    for offsets, exponent in items:
        idx = tuple(sorted(offsets))
        neg_base = group.negate(offsets[idx[0]])
        weights = tuple(group.add(offsets[i], neg_base) for i in idx[1:])
        blocks.append(((idx, weights), exponent))
    blocks.sort(key=lambda be: be[0][0][0])
    partition = DWeightedPartition(group, tuple(b for b, _ in blocks))
    monomial = NormalMonomial(partition, tuple(e for _, e in blocks))
    assert monomial.degree == x.degree + y.degree
    return AlgebraElement.of_monomial(monomial)


def element_multiply(spec, ex, ey, rng=None):
    """Bilinear extension of multiply to algebra elements."""
    out = []
    for cx, mx in ex.terms:
        for cy, my in ey.terms:
            prod = multiply(spec, mx, my, rng=rng)
            for cp, mp in prod.terms:
                out.append((cx * cy * cp, mp))
    return AlgebraElement.of_terms(out)


def relabel_monomial(monomial, sigma):
    """Push a normal monomial forward along a permutation of the indices."""
    partition = monomial.partition
    sigma = validate_permutation(sigma, partition.r)
    new_partition = relabel(partition, sigma)
    exp_by_block = {}
    for (idx, _), e in zip(partition.blocks, monomial.exponents):
        image = tuple(sorted(sigma[i - 1] for i in idx))
        exp_by_block[image] = e
    exponents = tuple(exp_by_block[idx] for idx, _ in new_partition.blocks)
    return NormalMonomial(new_partition, exponents)


def in_subspace(spec, monomial):
    """Membership of a normal monomial in the (possibly primed) variant."""
    minimum = spec.variant.singleton_min_exponent
    if minimum == 0:
        return True
    for (idx, _), e in zip(monomial.partition.blocks, monomial.exponents):
        if len(idx) == 1 and e < minimum:
            return False
    return True


def graded_dimension(spec, degree):
    """Dimension of the degree-n slice; polynomial in m in symbolic mode.

    Counts normal monomials: a set-partition shape with b blocks and s
    singletons contributes (number of such partitions) x m^(r-b) weight
    choices x the number of exponent vectors meeting the singleton
    minimum.  Odd degrees are zero.
    """
    if degree < 0:
        raise InvalidParameterError("degree must be >= 0")
    if spec.r > MAX_DIMENSION_R:
        raise CapExceededError("r=%d exceeds dimension cap %d" % (spec.r, MAX_DIMENSION_R))
    symbolic = spec.is_symbolic and not spec.group.is_bound
    m_value = None if symbolic else spec.order_value()
    minimum = spec.variant.singleton_min_exponent
    if degree % 2 == 1:
        return IntPoly.zero() if symbolic else 0
    q = degree // 2
    coeffs = [0] * (spec.r + 1)
    total = 0
    for shape in integer_partitions(spec.r):
        b = len(shape)
        base = spec.r - b
        singletons = sum(1 for part in shape if part == 1)
        t = q - base - singletons * minimum
        if t < 0:
            continue
        if b == 0:
            ways = 1 if t == 0 else 0
        else:
            ways = math.comb(t + b - 1, b - 1)
        contrib = set_partition_shape_count(shape) * ways
        if contrib == 0:
            continue
        power = base if spec.variant.twisted else 0
        if symbolic:
            coeffs[power] += contrib
        else:
            total += contrib * (m_value**power)
    return IntPoly(coeffs) if symbolic else total


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def basis(spec, degree, cap=DEFAULT_ENUMERATION_CAP, degree_cap=DEFAULT_BASIS_DEGREE_CAP):
    """All normal monomials of the given degree, in deterministic order."""
    if degree < 0:
        raise InvalidParameterError("degree must be >= 0")
    if degree > degree_cap:
        raise CapExceededError("degree %d exceeds cap %d" % (degree, degree_cap))
    group = spec.concrete_group()
    if degree % 2 == 1:
        return []
    count = graded_dimension(spec, degree)
    if count > cap:
        raise CapExceededError("basis size %d exceeds cap %d" % (count, cap))
    q = degree // 2
    minimum = spec.variant.singleton_min_exponent
    elements = group.elements(cap)
    result = []
    for sp in enumerate_set_partitions(spec.r):
        mins = [minimum if len(blk) == 1 else 0 for blk in sp.blocks]
        t = q - (spec.r - sp.num_blocks) - sum(mins)
        if t < 0:
            continue
        weight_choices = [
            itertools.product(elements, repeat=len(blk) - 1) for blk in sp.blocks
        ]
        for assignment in itertools.product(*weight_choices):
            partition = DWeightedPartition(
                group,
                tuple((blk, tuple(ws)) for blk, ws in zip(sp.blocks, assignment)),
            )
            for extra in _compositions(t, sp.num_blocks):
                exponents = tuple(m0 + e for m0, e in zip(mins, extra))
                result.append(NormalMonomial(partition, exponents))
    assert len(result) == count
    return result


# ---------------------------------------------------------------------------
# Independent oracle: dimensions from generators and relations only.
# ---------------------------------------------------------------------------


def _oracle_generators(r, group, cap=DEFAULT_ENUMERATION_CAP):
    """Free generators: ("v", i) of degree 2 and ("a", (S, weights)) of
    degree 2|S| - 2 for every weighted subset S with |S| >= 2."""
    gens = [(("v", i), 2) for i in range(1, r + 1)]
    elements = group.elements(cap)
    subsets = []
    for size in range(2, r + 1):
        subsets.extend(itertools.combinations(range(1, r + 1), size))
    subsets.sort(key=lambda s: (len(s), s))
    for S in subsets:
        for weights in itertools.product(elements, repeat=len(S) - 1):
            gens.append((("a", (S, weights)), 2 * len(S) - 2))
    return gens


def _monomials_of_degree(gens, degree):
    """Exponent tuples over gens with total weighted degree equal to degree."""
    out = []

    def extend(i, remaining, prefix):
        if i == len(gens):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        _, d = gens[i]
        e = 0
        while e * d <= remaining:
            prefix.append(e)
            extend(i + 1, remaining - e * d, prefix)
            prefix.pop()
            if d == 0:
                break
            e += 1

    extend(0, degree, [])
    return out


def _merge_weighted_subsets(group, key_a, key_b):
    """Union of two weighted subsets; None when weights contradict."""
    (sa, wa), (sb, wb) = key_a, key_b
    off_a = {sa[0]: group.identity()}
    for j, w in enumerate(wa):
        off_a[sa[j + 1]] = w
    off_b = {sb[0]: group.identity()}
    for j, w in enumerate(wb):
        off_b[sb[j + 1]] = w
    common = sorted(off_a.keys() & off_b.keys())
    pin = common[0]
    shift = group.add(off_a[pin], group.negate(off_b[pin]))
    for q in common:
        if off_a[q] != group.add(off_b[q], shift):
            return None, len(common)
    merged = dict(off_a)
    for k, v in off_b.items():
        if k not in merged:
            merged[k] = group.add(v, shift)
    idx = tuple(sorted(merged))
    neg_base = group.negate(merged[idx[0]])
    weights = tuple(group.add(merged[i], neg_base) for i in idx[1:])
    return (idx, weights), len(common)


def _oracle_relations(r, gens, group):
    """Homogeneous relation elements as lists of (coeff, exponent tuple)."""
    index_of = {key: i for i, (key, _) in enumerate(gens)}
    ngens = len(gens)

    def expvec(pairs):
        vec = [0] * ngens
        for gi, e in pairs:
            vec[gi] += e
        return tuple(vec)

    relations = []
    a_gens = [(i, key[1]) for i, (key, _) in enumerate(gens) if key[0] == "a"]
    # one v-class per block: v_i a = v_j a for i, j in the block
    for gi, (S, weights) in a_gens:
        for i, j in itertools.combinations(S, 2):
            term1 = expvec([(index_of[("v", i)], 1), (gi, 1)])
            term2 = expvec([(index_of[("v", j)], 1), (gi, 1)])
            relations.append(((2 * len(S) - 2) + 2, [(1, term1), (-1, term2)]))
    # products of overlapping a-classes merge or vanish
    for ia in range(len(a_gens)):
        for ib in range(ia, len(a_gens)):
            gi_a, key_a = a_gens[ia]
            gi_b, key_b = a_gens[ib]
            if not (set(key_a[0]) & set(key_b[0])):
                continue
            degree = (2 * len(key_a[0]) - 2) + (2 * len(key_b[0]) - 2)
            lhs = expvec([(gi_a, 1), (gi_b, 1)])
            merged, overlap = _merge_weighted_subsets(group, key_a, key_b)
            if merged is None:
                relations.append((degree, [(1, lhs)]))
            else:
                v_index = index_of[("v", min(set(key_a[0]) & set(key_b[0])))]
                rhs = expvec([(v_index, overlap - 1), (index_of[("a", merged)], 1)])
                relations.append((degree, [(1, lhs), (-1, rhs)]))
    return relations


@functools.lru_cache(maxsize=None)
def _oracle_ideal(r, group, degree):
    """Eliminated degree-slice of the relation ideal, plus the monomial index.

    Returns (reducer, monomials, gens); the cached reducer must be cloned
    before any further rows are added.
    """
    gens = _oracle_generators(r, group)
    monomials = _monomials_of_degree(gens, degree)
    column = {mon: i for i, mon in enumerate(monomials)}
    reducer = RowReducer()
    relations = _oracle_relations(r, gens, group)
    for rel_degree, terms in relations:
        if rel_degree > degree:
            continue
        for factor in _monomials_of_degree(gens, degree - rel_degree):
            row = {}
            for coeff, term in terms:
                combined = tuple(a + b for a, b in zip(term, factor))
                col = column[combined]
                row[col] = row.get(col, 0) + Fraction(coeff)
            row = {c: v for c, v in row.items() if v != 0}
            if row:
                reducer.add(row)
    return reducer, monomials, gens


def _covers_all_indices(expvec, gens, r, minimum):
    covered = set()
    v_exp = {}
    for e, (key, _) in zip(expvec, gens):
        if e == 0:
            continue
        if key[0] == "a":
            covered.update(key[1][0])
        else:
            v_exp[key[1]] = e
    for i in range(1, r + 1):
        if i in covered:
            continue
        if v_exp.get(i, 0) < minimum:
            return False
    return True


def oracle_graded_dimension(
    spec,
    degree,
    max_r=ORACLE_MAX_R,
    max_group_order=ORACLE_MAX_GROUP_ORDER,
    max_degree=ORACLE_MAX_DEGREE,
):
    """Graded dimension recomputed from generators and relations alone.

    Builds the degree slice of the free graded-commutative algebra on all
    generators, spans the same slice of the relation ideal by multiplying
    every relation by all complementary-degree monomials, and row-reduces
    exactly over the rationals.  For the full variants the answer is
    (slice size) - (ideal rank); for the primed subspaces it is the rank
    added by the monomials whose indices all sit in an a-class factor or
    carry at least the singleton minimum exponent.
    """
    if spec.r > max_r:
        raise CapExceededError("oracle cap: r=%d > %d" % (spec.r, max_r))
    if degree > max_degree:
        raise CapExceededError("oracle cap: degree=%d > %d" % (degree, max_degree))
    if degree < 0:
        raise InvalidParameterError("degree must be >= 0")
    group = spec.concrete_group()
    if group.order() > max_group_order:
        raise CapExceededError(
            "oracle cap: |D|=%d > %d" % (group.order(), max_group_order)
        )
    reducer, monomials, gens = _oracle_ideal(spec.r, group, degree)
    if spec.variant.is_full:
        return len(monomials) - reducer.rank
    minimum = spec.variant.singleton_min_exponent
    work = reducer.clone()
    added = 0
    for col, expv in enumerate(monomials):
        if not _covers_all_indices(expv, gens, spec.r, minimum):
            continue
        if work.add({col: Fraction(1)}):
            added += 1
    return added


# ---------------------------------------------------------------------------
# Text and JSON forms.
# ---------------------------------------------------------------------------


def format_monomial(monomial):
    """Text form, e.g. "v{1}^2 * a{1<2:d=(1)}"; the empty product is "1".

    The v-class of a block is written through the block's base index, so
    a monomial on the merged block {1,2} prints v{1}, not v{1<2}.
    """
    v_parts = []
    a_parts = []
    for (idx, weights), e in zip(monomial.partition.blocks, monomial.exponents):
        if e >= 1:
            v_parts.append("v{%d}" % idx[0] + ("^%d" % e if e >= 2 else ""))
        if len(idx) >= 2:
            a_parts.append(
                "a{%s:d=%s}"
                % ("<".join(map(str, idx)), ",".join(str(w) for w in weights))
            )
    parts = v_parts + a_parts
    return " * ".join(parts) if parts else "1"


_V_RE = re.compile(r"v\{(\d+(?:<\d+)*)\}(?:\^(\d+))?")
_A_RE = re.compile(r"a(\{.*\})")


def parse_monomial(text, spec):
    """Inverse of format_monomial for a given spec.

    A v-factor may name any index of its block (or the whole block); the
    exponent attaches to the block containing those indices.
    """
    group = spec.concrete_group()
    t = text.strip()
    blocks = {}
    v_tokens = []
    if t != "1":
        for token in t.split("*"):
            token = token.strip()
            m = _V_RE.fullmatch(token)
            if m:
                idx = tuple(int(i) for i in m.group(1).split("<"))
                e = int(m.group(2)) if m.group(2) else 1
                v_tokens.append((token, idx, e))
                continue
            m = _A_RE.fullmatch(token)
            if m:
                idx, weights = parse_block(m.group(1), group)
                if len(idx) < 2:
                    raise ParseError("a-factor %r must span >= 2 indices" % token)
                if idx in blocks:
                    raise ParseError("duplicate a-factor for block %r" % (idx,))
                blocks[idx] = weights
                continue
            raise ParseError("unrecognized factor %r in %r" % (token, text))
    seen = set()
    for idx in blocks:
        seen.update(idx)
    for _, idx, _ in v_tokens:
        seen.update(idx)
    if seen and max(seen) > spec.r:
        raise ParseError("index %d outside 1..%d" % (max(seen), spec.r))
    all_blocks = dict(blocks)
    for i in range(1, spec.r + 1):
        if not any(i in idx for idx in blocks):
            all_blocks[(i,)] = ()

    def containing(i):
        for idx in all_blocks:
            if i in idx:
                return idx
        raise ParseError("index %d outside 1..%d" % (i, spec.r))

    exponents = {}
    for token, idx, e in v_tokens:
        home = containing(idx[0])
        if any(i not in home for i in idx):
            raise ParseError(
                "v-factor %r spans several blocks of the monomial" % (token,)
            )
        exponents[home] = exponents.get(home, 0) + e
    ordered = sorted(all_blocks.items(), key=lambda kv: kv[0][0])
    partition = DWeightedPartition(group, tuple(ordered))
    exps = tuple(exponents.get(idx, 0) for idx, _ in partition.blocks)
    return NormalMonomial(partition, exps)


def element_to_json(element):
    """JSON form: list of (numerator, denominator, monomial string)."""
    return [
        [coeff.numerator, coeff.denominator, format_monomial(mon)]
        for coeff, mon in element.terms
    ]


def element_from_json(data, spec):
    pairs = []
    for num, den, text in data:
        pairs.append((Fraction(int(num), int(den)), parse_monomial(text, spec)))
    return AlgebraElement.of_terms(pairs)
