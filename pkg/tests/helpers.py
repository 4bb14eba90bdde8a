"""Shared test utilities: independent oracles and generators."""

import math
from fractions import Fraction

from prymalg import linalg
from prymalg.abelian_group import FiniteAbelianGroup


def prime_factorization(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions_of(n):
    if n == 0:
        return [()]
    out = []

    def extend(rem, maxpart, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rem, maxpart), 0, -1):
            prefix.append(part)
            extend(rem - part, part, prefix)
            prefix.pop()

    extend(n, n, [])
    return out


def abelian_groups_of_order(n):
    """Every isomorphism type of abelian group of order n."""
    if n == 1:
        return [FiniteAbelianGroup(())]
    per_prime = []
    for p, e in sorted(prime_factorization(n).items()):
        per_prime.append([[p**a for a in part] for part in _partitions_of(e)])
    groups = [[]]
    for options in per_prime:
        groups = [g + opt for g in groups for opt in options]
    return [FiniteAbelianGroup(tuple(g)) for g in groups]


def all_abelian_groups(max_order):
    out = []
    for n in range(1, max_order + 1):
        out.extend(abelian_groups_of_order(n))
    return out


def bell_by_recurrence(n):
    """Bell numbers via B(k+1) = sum C(k, j) B(j)."""
    bells = [1]
    for k in range(n):
        bells.append(sum(math.comb(k, j) * bells[j] for j in range(k + 1)))
    return bells[n]


def partition_count_brute(q):
    """Number of integer partitions of q by direct enumeration."""
    return len(_partitions_of(q))


def torsion_count_brute(group, n):
    identity = group.identity()
    count = 0
    for x in group.elements():
        y = identity
        for _ in range(n):
            y = group.add(y, x)
        if group.is_identity(y):
            count += 1
    return count


def random_symmetric(h, rng, spread=2):
    mat = [[Fraction(0)] * h for _ in range(h)]
    for i in range(h):
        for j in range(i, h):
            val = Fraction(rng.randint(-spread, spread))
            mat[i][j] = val
            mat[j][i] = val
    return tuple(tuple(row) for row in mat)


def random_unimodular(h, rng, steps=4):
    mat = [list(row) for row in linalg.identity(h)]
    for _ in range(steps):
        i = rng.randrange(h)
        j = rng.randrange(h)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(h):
            mat[i][k] += c * mat[j][k]
    return tuple(tuple(row) for row in mat)


def random_symplectic(h, rng, factors=4):
    """Random element of Sp(2h, Q) from elementary symplectic generators."""
    n = 2 * h
    total = linalg.identity(n)
    for _ in range(factors):
        kind = rng.randrange(3)
        if kind == 0:
            B = random_symmetric(h, rng)
            blocked = [
                [linalg.identity(h)[i][j] for j in range(h)] + list(B[i])
                for i in range(h)
            ] + [
                [Fraction(0)] * h + list(linalg.identity(h)[i])
                for i in range(h)
            ]
        elif kind == 1:
            C = random_symmetric(h, rng)
            blocked = [
                list(linalg.identity(h)[i]) + [Fraction(0)] * h for i in range(h)
            ] + [
                list(C[i]) + list(linalg.identity(h)[i]) for i in range(h)
            ]
        else:
            A = random_unimodular(h, rng)
            Ainv_t = linalg.transpose(linalg.mat_inv(A))
            blocked = [
                list(A[i]) + [Fraction(0)] * h for i in range(h)
            ] + [
                [Fraction(0)] * h + list(Ainv_t[i]) for i in range(h)
            ]
        total = linalg.mat_mul(total, tuple(tuple(r) for r in blocked))
    return total
