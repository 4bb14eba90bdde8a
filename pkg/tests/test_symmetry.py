import math
import random

import pytest

from prymalg.abelian_group import FiniteAbelianGroup
from prymalg.algebra import AlgebraSpec, Variant, basis, graded_dimension
from prymalg.errors import OracleMismatchError
from prymalg.symmetry import (
    SrCharacter,
    centralizer_order,
    class_size,
    character_report_json,
    cycle_types,
    decompose,
    fixed_point_count,
    murnaghan_nakayama,
    permutation_character,
    permutation_with_cycle_type,
    representative_permutation,
    sr_character_table,
)

from helpers import all_abelian_groups

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))


def test_cycle_types_and_class_sizes():
    assert cycle_types(3) == [(1, 1, 1), (2, 1), (3,)]
    assert class_size((1, 1, 1)) == 1
    assert class_size((2, 1)) == 3
    assert class_size((3,)) == 2
    assert sum(class_size(ct) for ct in cycle_types(6)) == math.factorial(6)


def test_character_table_r2():
    table = sr_character_table(2)
    assert table[(2,)].as_dict() == {(1, 1): 1, (2,): 1}
    assert table[(1, 1)].as_dict() == {(1, 1): 1, (2,): -1}


def test_character_table_r3():
    table = sr_character_table(3)
    rows = {lam: [chi.value(ct) for ct in cycle_types(3)] for lam, chi in table.items()}
    assert rows[(3,)] == [1, 1, 1]
    assert rows[(1, 1, 1)] == [1, -1, 1]
    assert rows[(2, 1)] == [2, 0, -1]


def test_character_table_r1():
    table = sr_character_table(1)
    assert list(table) == [(1,)]
    assert table[(1,)].as_dict() == {(1,): 1}


def test_dimension_hook_consistency():
    # chi_lam(identity) equals the hook-length-formula dimension
    def hook_dimension(lam):
        rows = list(lam)
        cols = [0] * (rows[0] if rows else 0)
        for width in rows:
            for j in range(width):
                cols[j] += 1
        n = sum(rows)
        value = math.factorial(n)
        for i, width in enumerate(rows):
            for j in range(width):
                value //= width - j + cols[j] - i - 1
        return value

    for r in range(1, 9):
        table = sr_character_table(r)
        for lam, chi in table.items():
            assert chi.dimension == hook_dimension(lam)


def test_orthogonality_up_to_r8():
    for r in range(1, 9):
        table = sr_character_table(r)
        cts = cycle_types(r)
        lams = list(table)
        for i, l1 in enumerate(lams):
            for l2 in lams[i:]:
                inner = sum(
                    class_size(ct) * table[l1].value(ct) * table[l2].value(ct)
                    for ct in cts
                )
                assert inner == (math.factorial(r) if l1 == l2 else 0)
        for c1 in cts:
            for c2 in cts:
                inner = sum(table[l].value(c1) * table[l].value(c2) for l in lams)
                assert inner == (centralizer_order(c1) if c1 == c2 else 0)


def test_murnaghan_nakayama_size_mismatch():
    with pytest.raises(Exception):
        murnaghan_nakayama((2, 1), (2, 2))


def test_permutation_character_examples():
    chi = permutation_character(AlgebraSpec(Variant.LEVEL_PRIME, 2, Z3), 2)
    assert chi.as_dict() == {(1, 1): 3, (2,): 1}
    chi2 = permutation_character(AlgebraSpec(Variant.LEVEL_PRIME, 2, Z2), 2)
    assert chi2.as_dict() == {(1, 1): 2, (2,): 2}


def test_identity_trace_is_dimension():
    for variant in (Variant.LEVEL_PRIME, Variant.LEVEL_FULL):
        for r in range(1, 5):
            for group in (Z2, Z3):
                spec = AlgebraSpec(variant, r, group)
                for degree in (2, 4, 6, 8):
                    chi = permutation_character(spec, degree)
                    assert chi.dimension == graded_dimension(spec, degree)


def test_character_constant_on_conjugacy_classes():
    rng = random.Random(11)
    for r in (3, 4, 5):
        spec = AlgebraSpec(Variant.LEVEL_PRIME, r, Z2)
        degree = 6
        basis_list = basis(spec, degree)
        for ct in cycle_types(r):
            reference = fixed_point_count(
                spec, degree, representative_permutation(ct), basis_list
            )
            samples = 50 if r <= 4 else 10
            for _ in range(samples):
                sigma = permutation_with_cycle_type(ct, rng)
                assert (
                    fixed_point_count(spec, degree, sigma, basis_list) == reference
                ), (r, ct, sigma)


def test_swap_trace_equals_torsion_count():
    for group in all_abelian_groups(16):
        if group.order() < 2:
            continue
        chi = permutation_character(AlgebraSpec(Variant.LEVEL_PRIME, 2, group), 2)
        assert chi.value((2,)) == group.torsion_count(2), group


def test_decompose_examples():
    chi = SrCharacter.from_dict(2, {(1, 1): 3, (2,): 1})
    assert decompose(chi) == {(2,): 2, (1, 1): 1}
    chi2 = SrCharacter.from_dict(2, {(1, 1): 2, (2,): 2})
    assert decompose(chi2) == {(2,): 2, (1, 1): 0}


def test_decompose_irreducibles_are_orthonormal():
    for r in range(1, 6):
        table = sr_character_table(r)
        for lam, chi in table.items():
            mults = decompose(chi)
            assert mults[lam] == 1
            assert all(v == 0 for key, v in mults.items() if key != lam)


def test_decompose_rejects_non_characters():
    fake = SrCharacter.from_dict(2, {(1, 1): 1, (2,): 2})  # fractional multiplicity
    with pytest.raises(OracleMismatchError):
        decompose(fake)
    negative = SrCharacter.from_dict(2, {(1, 1): 0, (2,): 2})  # negative on sign rep
    with pytest.raises(OracleMismatchError):
        decompose(negative)


def test_permutation_character_decompositions_are_nonnegative():
    for variant in (Variant.LEVEL_PRIME, Variant.LEVEL_FULL):
        for r in range(1, 4):
            for group in (Z2, Z3):
                spec = AlgebraSpec(variant, r, group)
                for degree in (2, 4, 6):
                    chi = permutation_character(spec, degree)
                    mults = decompose(chi)
                    assert all(m >= 0 for m in mults.values())
                    # reconstruction: sum of mult * irreducible equals chi
                    table = sr_character_table(r)
                    for ct in cycle_types(r):
                        back = sum(
                            mults[lam] * table[lam].value(ct) for lam in table
                        )
                        assert back == chi.value(ct)


def test_character_json_shape():
    spec = AlgebraSpec(Variant.LEVEL_PRIME, 2, Z3)
    chi = permutation_character(spec, 2)
    payload = character_report_json(spec, 2, chi, decompose(chi))
    assert payload["r"] == 2 and payload["degree"] == 2
    assert payload["group"] == "Z3"
    assert {"cycle_type": [1, 1], "trace": 3} in payload["values"]
    assert {"partition": [2], "multiplicity": 2} in payload["decomposition"]
