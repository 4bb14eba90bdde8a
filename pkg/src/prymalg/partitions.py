"""Set partitions of {1..r} and their weighted refinements.

Three flavours are modeled:

* plain set partitions (blocks of indices),
* weighted partitions (each block carries an integer weight i with
  i + |block| >= 2),
* deck-weighted partitions, whose blocks carry one deck-group element per
  non-base index, recording how the marked points of one orbit differ.

Within a block S = {i1 < i2 < ...} the base point is always the minimal
index i1 and the j-th weight relates point i_{j+1} to i1.  The empty
weight list belongs to singleton blocks.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .abelian_group import (
    DEFAULT_ENUMERATION_CAP,
    FiniteAbelianGroup,
    GroupElement,
)
from .errors import CapExceededError, InvalidParameterError, ParseError
from .polynomial import IntPoly

MAX_SET_PARTITION_R = 12
MAX_WEIGHTED_ENUMERATION_R = 8
MAX_COUNT_R = 30


def _validate_blocks(blocks):
    """Check canonical form: sorted blocks ordered by minimum, covering [r]."""
    seen = set()
    total = 0
    prev_min = 0
    for block in blocks:
        if not block:
            raise InvalidParameterError("empty block")
        if list(block) != sorted(block):
            raise InvalidParameterError("block %r is not sorted" % (block,))
        if block[0] <= prev_min:
            raise InvalidParameterError("blocks are not ordered by minimum element")
        prev_min = block[0]
        for i in block:
            if i in seen:
                raise InvalidParameterError("index %d appears twice" % i)
            seen.add(i)
        total += len(block)
    if seen and (min(seen) != 1 or max(seen) != total):
        raise InvalidParameterError("blocks must partition {1..r}")


@dataclass(frozen=True)
class SetPartition:
    """Partition of {1..r} in canonical form."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        _validate_blocks(blocks)

    @classmethod
    def of(cls, blocks):
        """Canonicalize arbitrary disjoint blocks."""
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        return cls(canon)

    @property
    def r(self):
        return sum(len(b) for b in self.blocks)

    @property
    def num_blocks(self):
        return len(self.blocks)

    def __str__(self):
        if not self.blocks:
            return "{}"
        return "|".join("{" + "<".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class WeightedPartition:
    """Set partition whose blocks carry integer weights, i + |S| >= 2."""

    pairs: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        pairs = tuple((tuple(int(i) for i in b), int(w)) for b, w in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        _validate_blocks([b for b, _ in pairs])
        for block, weight in pairs:
            if weight < 0:
                raise InvalidParameterError("weights must be >= 0")
            if weight + len(block) < 2:
                raise InvalidParameterError(
                    "block %r with weight %d violates i + |S| >= 2" % (block, weight)
                )

    @property
    def r(self):
        return sum(len(b) for b, _ in self.pairs)

    @property
    def half_degree(self):
        return sum(w + len(b) - 1 for b, w in self.pairs)


@dataclass(frozen=True)
class DWeightedPartition:
    """Set partition with deck-group weights, one per non-base index."""

    group: FiniteAbelianGroup
    blocks: tuple[tuple[tuple[int, ...], tuple[GroupElement, ...]], ...]

    def __post_init__(self):
        blocks = tuple(
            (tuple(int(i) for i in idx), tuple(weights)) for idx, weights in self.blocks
        )
        object.__setattr__(self, "blocks", blocks)
        _validate_blocks([idx for idx, _ in blocks])
        nfac = len(self.group.cyclic_factors)
        for idx, weights in blocks:
            if len(weights) != len(idx) - 1:
                raise InvalidParameterError(
                    "block %r needs %d weights, got %d"
                    % (idx, len(idx) - 1, len(weights))
                )
            for w in weights:
                if len(w.residues) != nfac:
                    raise InvalidParameterError("weight %s has wrong arity" % (w,))
                if w != self.group.element(w.residues):
                    raise InvalidParameterError("weight %s is not reduced" % (w,))

    @property
    def r(self):
        return sum(len(idx) for idx, _ in self.blocks)

    @property
    def num_blocks(self):
        return len(self.blocks)

    @property
    def set_partition(self):
        return SetPartition(tuple(idx for idx, _ in self.blocks))

    def block_containing(self, i):
        for idx, weights in self.blocks:
            if i in idx:
                return idx, weights
        raise InvalidParameterError("index %d not in partition" % i)

    def __str__(self):
        return format_partition(self)


@dataclass(frozen=True)
class JVector:
    """0/1 tags for tensor slots: 1 selects the punctured-cover module."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e not in (0, 1) for e in entries):
            raise InvalidParameterError("JVector entries must be 0 or 1")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)


def enumerate_set_partitions(r):
    """All set partitions of {1..r} in deterministic refinement order."""
    if r < 0:
        raise InvalidParameterError("r must be >= 0")
    if r > MAX_SET_PARTITION_R:
        raise CapExceededError(
            "r=%d exceeds set-partition enumeration cap %d" % (r, MAX_SET_PARTITION_R)
        )
    result = []

    def extend(i, blocks):
        if i > r:
            result.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in blocks:
            b.append(i)
            extend(i + 1, blocks)
            b.pop()
        blocks.append([i])
        extend(i + 1, blocks)
        blocks.pop()

    extend(1, [])
    return result


def stirling2(n, k):
    """Number of set partitions of an n-set into k blocks."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    row = [1] + [0] * n
    for i in range(1, n + 1):
        new = [0] * (n + 1)
        for j in range(1, i + 1):
            new[j] = row[j - 1] + j * row[j]
        row = new
    return row[k]


def bell_number(n):
    return sum(stirling2(n, k) for k in range(n + 1))


def count_d_weighted_partitions(r):
    """Number of deck-weighted partitions of {1..r} as a polynomial in m."""
    if r < 0:
        raise InvalidParameterError("r must be >= 0")
    if r > MAX_COUNT_R:
        raise CapExceededError("r=%d exceeds counting cap %d" % (r, MAX_COUNT_R))
    coeffs = [0] * (r + 1)
    for nu in range(0 if r == 0 else 1, r + 1):
        coeffs[r - nu] += stirling2(r, nu)
    if r == 0:
        coeffs[0] = 1
    return IntPoly(coeffs)


def enumerate_d_weighted_partitions(r, group, cap=DEFAULT_ENUMERATION_CAP):
    """All deck-weighted partitions of {1..r}, lexicographic and complete."""
    if r > MAX_WEIGHTED_ENUMERATION_R:
        raise CapExceededError(
            "r=%d exceeds weighted enumeration cap %d" % (r, MAX_WEIGHTED_ENUMERATION_R)
        )
    total = count_d_weighted_partitions(r).evaluate(group.order())
    if total > cap:
        raise CapExceededError(
            "%d weighted partitions exceed enumeration cap %d" % (total, cap)
        )
    elements = group.elements(cap)
    result = []
    for sp in enumerate_set_partitions(r):
        weight_choices = [
            itertools.product(elements, repeat=len(block) - 1) for block in sp.blocks
        ]
        for assignment in itertools.product(*weight_choices):
            result.append(
                DWeightedPartition(
                    group,
                    tuple(
                        (block, tuple(ws))
                        for block, ws in zip(sp.blocks, assignment)
                    ),
                )
            )
    return result


def enumerate_weighted_partitions(r, max_total_weight):
    """Weighted partitions with weight sum bounded by max_total_weight."""
    if r > MAX_SET_PARTITION_R:
        raise CapExceededError("r=%d exceeds enumeration cap" % r)
    result = []
    for sp in enumerate_set_partitions(r):
        mins = [1 if len(b) == 1 else 0 for b in sp.blocks]
        budget = max_total_weight - sum(mins)
        if budget < 0:
            continue
        for extra in _bounded_compositions(budget, len(sp.blocks)):
            weights = [m + e for m, e in zip(mins, extra)]
            result.append(
                WeightedPartition(tuple(zip(sp.blocks, weights)))
            )
    return result


def _bounded_compositions(bound, parts):
    """All tuples of `parts` nonnegative ints with sum <= bound."""
    if parts == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _bounded_compositions(bound - first, parts - 1):
            yield (first,) + rest


def validate_permutation(sigma, r):
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, r + 1)):
        raise InvalidParameterError("not a permutation of 1..%d: %r" % (r, sigma))
    return sigma


def relabel(partition, sigma):
    """Push a deck-weighted partition forward along a permutation of {1..r}.

    Weights are offsets against the block's base point (its minimal
    index), so after relabeling the base point of each image block is
    re-normalized to the new minimum: with old offset function w
    (w(base) = 0), the new offsets are w'(sigma(i)) = w(i) - w(i0) where
    i0 is the preimage of the new base.  This is the unique rule
    consistent with reading the j-th weight as the deck translation from
    the base marked point to the (j+1)-st; no other convention is
    supported.
    """
    group = partition.group
    sigma = validate_permutation(sigma, partition.r)
    new_blocks = []
    for idx, weights in partition.blocks:
        offsets = {idx[0]: group.identity()}
        for j, w in enumerate(weights):
            offsets[idx[j + 1]] = w
        image = {sigma[i - 1]: off for i, off in offsets.items()}
        new_idx = tuple(sorted(image))
        base_off = image[new_idx[0]]
        neg_base = group.negate(base_off)
        new_weights = tuple(group.add(image[i], neg_base) for i in new_idx[1:])
        new_blocks.append((new_idx, new_weights))
    new_blocks.sort(key=lambda b: b[0][0])
    return DWeightedPartition(group, tuple(new_blocks))


def compatible_with(partition, j_vector):
    """Compatibility of a partition of {1..r+1} with a length-r J-vector.

    The block containing index 1 must carry no identity weight, and must
    not contain an index a >= 2 whose slot tag J_{a-1} is 1.
    """
    if partition.r != len(j_vector) + 1:
        raise InvalidParameterError(
            "partition of %d indices does not match J of length %d"
            % (partition.r, len(j_vector))
        )
    idx, weights = partition.block_containing(1)
    group = partition.group
    if any(group.is_identity(w) for w in weights):
        return False
    for a in idx:
        if a >= 2 and j_vector.entries[a - 2] == 1:
            return False
    return True


def format_partition(partition):
    """Text form, e.g. "{1<2:d=(0,1)}|{3}"."""
    parts = []
    for idx, weights in partition.blocks:
        body = "<".join(map(str, idx))
        if len(idx) >= 2:
            body += ":d=" + ",".join(str(w) for w in weights)
        parts.append("{" + body + "}")
    return "|".join(parts) if parts else "{}"


_BLOCK_RE = re.compile(r"\{(\d+(?:<\d+)*)(?::d=(.*))?\}")
_TUPLE_RE = re.compile(r"\(([^()]*)\)")


def parse_block(token, group):
    """Parse one "{i1<i2:d=(..),(..)}" block into (indices, weights)."""
    token = token.strip()
    m = _BLOCK_RE.fullmatch(token)
    if not m:
        raise ParseError("unrecognized block token %r" % (token,))
    idx = tuple(int(i) for i in m.group(1).split("<"))
    weights = ()
    if m.group(2) is not None:
        tuples = _TUPLE_RE.findall(m.group(2))
        rebuilt = ",".join("(%s)" % body for body in tuples)
        if rebuilt != m.group(2).replace(" ", ""):
            raise ParseError("malformed weight list %r in %r" % (m.group(2), token))
        weights = tuple(
            group.element([int(x) for x in body.split(",")] if body else [])
            for body in tuples
        )
    elif len(idx) >= 2 and group.cyclic_factors:
        raise ParseError("block %r is missing its weight list" % (token,))
    if len(idx) >= 2 and not group.cyclic_factors and not weights:
        weights = (group.identity(),) * (len(idx) - 1)
    if len(weights) != len(idx) - 1:
        raise ParseError(
            "block %r needs %d weights, got %d" % (token, len(idx) - 1, len(weights))
        )
    return idx, weights


def parse_partition(text, group):
    """Inverse of format_partition; raises ParseError naming the bad token."""
    t = text.strip()
    if t == "{}":
        return DWeightedPartition(group, ())
    blocks = [parse_block(token, group) for token in t.split("|")]
    blocks.sort(key=lambda b: b[0][0])
    return DWeightedPartition(group, tuple(blocks))


def integer_partitions(n):
    """Partitions of n as descending tuples, in reverse lexicographic order."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if n == 0:
        return [()]
    result = []

    def extend(remaining, maxpart, prefix):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            prefix.append(part)
            extend(remaining - part, part, prefix)
            prefix.pop()

    extend(n, n, [])
    return result


def set_partition_shape_count(shape):
    """Number of set partitions of {1..r} with the given block-size multiset."""
    r = sum(shape)
    count = math.factorial(r)
    for part in shape:
        count //= math.factorial(part)
    mult = {}
    for part in shape:
        mult[part] = mult.get(part, 0) + 1
    for m in mult.values():
        count //= math.factorial(m)
    return count
