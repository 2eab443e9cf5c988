import itertools
import json
from fractions import Fraction

import pytest

from doublezeta.bernoulli import BernoulliCache
from doublezeta.matrices import (
    RationalMatrix,
    build_a,
    build_b_part,
    build_c_part,
    build_p,
    build_q,
    determinant_fraction_free,
    identity_matrix,
    matrix_multiply,
    matrix_to_json,
    pb_closed,
    pc_closed,
    verify_inverse,
)


@pytest.fixture(scope="module")
def cache():
    return BernoulliCache()


def mat(rows):
    flat = tuple(Fraction(x) for row in rows for x in row)
    return RationalMatrix(len(rows), len(rows[0]), flat)


def naive_determinant(m: RationalMatrix) -> Fraction:
    """Permutation-expansion oracle, independent of the Bareiss path."""
    n = m.rows
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= m.at(i, perm[i])
        total += sign * prod
    return total


def gauss_inverse(m: RationalMatrix) -> RationalMatrix:
    """Plain rational Gauss-Jordan oracle, independent of build_p."""
    n = m.rows
    a = [list(m.entries[i * n : (i + 1) * n]) for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        inv[col] = [x / pv for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return mat(inv)


def test_build_a_small():
    assert build_a(2) == mat([[3]])
    assert build_a(3) == mat([[5, 2], [10, 1]])
    assert build_a(3).at(0, 1) == 2  # exercises the n<k zero convention


def test_build_a_rejects_small_k():
    with pytest.raises(ValueError):
        build_a(1)


def test_b_c_split():
    assert build_b_part(3) == mat([[4, 2], [4, 0]])
    assert build_c_part(3) == mat([[1, 0], [6, 1]])
    for K in range(2, 12):
        b, c, a = build_b_part(K), build_c_part(K), build_a(K)
        assert [x + y for x, y in zip(b.entries, c.entries)] == list(a.entries)


def test_structural_zeros():
    for K in range(2, 16):
        b, c = build_b_part(K), build_c_part(K)
        for r in range(1, K):
            for s in range(1, K):
                if r + s > K:
                    assert b.at(r - 1, s - 1) == 0
                if r < s:
                    assert c.at(r - 1, s - 1) == 0


def test_build_p_q_small(cache):
    assert build_p(2, cache) == mat([[Fraction(1, 3)]])
    assert build_q(2, cache) == mat([[Fraction(1, 3)]])
    assert build_p(3, cache) == mat(
        [[Fraction(-1, 15), Fraction(2, 15)], [Fraction(2, 3), Fraction(-1, 3)]]
    )


def test_p_is_gauss_inverse_of_a(cache):
    for K in range(2, 8):
        assert build_p(K, cache) == gauss_inverse(build_a(K))


def test_matrix_multiply(cache):
    assert matrix_multiply(mat([[3]]), mat([[Fraction(1, 3)]])) == mat([[1]])
    assert matrix_multiply(build_p(3, cache), build_a(3)) == identity_matrix(2)
    a = build_a(5)
    assert matrix_multiply(identity_matrix(4), a) == a
    with pytest.raises(ValueError):
        matrix_multiply(mat([[1, 2]]), mat([[1, 2]]))


def test_determinant_examples():
    assert determinant_fraction_free(mat([[3]])) == 3
    assert determinant_fraction_free(build_a(3)) == -15
    assert determinant_fraction_free(mat([[1, 2], [2, 4]])) == 0
    with pytest.raises(ValueError):
        determinant_fraction_free(mat([[1, 2]]))


def test_determinant_against_permutation_oracle(cache):
    for K in range(2, 7):
        a = build_a(K)
        assert determinant_fraction_free(a) == naive_determinant(a)
    rational = mat([[Fraction(1, 2), 3], [Fraction(-2, 7), Fraction(5, 3)]])
    assert determinant_fraction_free(rational) == naive_determinant(rational)


@pytest.mark.parametrize("K", [2, 3, 10])
def test_verify_inverse(cache, K):
    report = verify_inverse(K, cache)
    assert report.all_pass


def test_pb_pc_closed_examples(cache):
    assert pb_closed(3, 1, 1, cache) == Fraction(4, 15)
    assert pc_closed(3, 1, 1, cache) == Fraction(11, 15)
    assert pb_closed(3, 1, 2, cache) + pc_closed(3, 1, 2, cache) == 0


def test_closed_forms_match_products(cache):
    for K in range(2, 9):
        p = build_p(K, cache)
        pb = matrix_multiply(p, build_b_part(K))
        pc = matrix_multiply(p, build_c_part(K))
        for s in range(1, K):
            for sp in range(1, K):
                assert pb_closed(K, s, sp, cache) == pb.at(s - 1, sp - 1)
                assert pc_closed(K, s, sp, cache) == pc.at(s - 1, sp - 1)


def test_closed_form_index_errors(cache):
    with pytest.raises(IndexError):
        pb_closed(3, 0, 1, cache)
    with pytest.raises(IndexError):
        pc_closed(3, 1, 3, cache)


def test_matrix_json_schema():
    payload = json.loads(matrix_to_json(3, "A", build_a(3)))
    assert payload == {
        "K": 3,
        "name": "A",
        "rows": 2,
        "cols": 2,
        "entries": [["5", "2"], ["10", "1"]],
    }
