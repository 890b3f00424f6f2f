import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matpowsum.builtins import (
    FAMILIES, direct_product, gaussian, gf, matrix_ring, null_ring, parse_ring, quaternion, smallest_irreducible,
    torsion_poly, trunc_poly, upper_triangular, zn,
)
from matpowsum.ring import (
    BudgetExceeded, RingSpec, SpecStructureError, additive_order, as_matrix, check_budget, dump_spec, elem_add,
    elem_mul, elem_neg, element_from_index, element_index, enumerate_elements, enumerate_matrices, find_order2_element,
    find_unit, invariant_factors, is_commutative, is_cyclic_unital, is_field, load_spec, mat_add, mat_mul, mat_pow,
    matrix_count, matrix_from_index, partition, spec_from_dict, spec_to_dict, tables, validate_spec, zero,
)

RINGS = [zn(6), gf(2, 2), gf(3, 2), gaussian(3), quaternion(2), quaternion(3), trunc_poly(2, 1, 3),
         null_ring(4), direct_product(zn(2), zn(3)), torsion_poly(2, 2), matrix_ring(2, 2), upper_triangular(3)]
IDS = [r.name for r in RINGS]


def elements(spec):
    return st.tuples(*(st.integers(0, m - 1) for m in spec.orders))


@pytest.mark.parametrize("spec", RINGS, ids=IDS)
def test_ring_laws_exhaustive_on_small_rings(spec):
    elems = list(enumerate_elements(spec))
    sample = elems if spec.card <= 16 else elems[:: max(1, spec.card // 12)]
    for a, b, c in itertools.product(sample, repeat=3):
        assert elem_mul(spec, elem_mul(spec, a, b), c) == elem_mul(spec, a, elem_mul(spec, b, c))
        assert elem_mul(spec, a, elem_add(spec, b, c)) == elem_add(spec, elem_mul(spec, a, b), elem_mul(spec, a, c))
        assert elem_mul(spec, elem_add(spec, a, b), c) == elem_add(spec, elem_mul(spec, a, c), elem_mul(spec, b, c))


@pytest.mark.parametrize("spec", RINGS, ids=IDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_laws_property(spec, data):
    a, b, c = (data.draw(elements(spec)) for _ in range(3))
    assert elem_mul(spec, elem_mul(spec, a, b), c) == elem_mul(spec, a, elem_mul(spec, b, c))
    assert elem_mul(spec, a, elem_add(spec, b, c)) == elem_add(spec, elem_mul(spec, a, b), elem_mul(spec, a, c))
    assert elem_add(spec, a, elem_neg(spec, a)) == zero(spec)
    if spec.commutative:
        assert elem_mul(spec, a, b) == elem_mul(spec, b, a)
    if spec.unit is not None:
        assert elem_mul(spec, spec.unit, a) == tuple(a) == elem_mul(spec, a, spec.unit)


@pytest.mark.parametrize("spec", RINGS, ids=IDS)
def test_builtins_validate(spec):
    rep = validate_spec(spec)
    assert rep.ok, rep.violations


@pytest.mark.parametrize("spec", RINGS, ids=IDS)
def test_tables_agree_with_generic_arithmetic(spec):
    tb = tables(spec)
    elems = list(enumerate_elements(spec))
    assert [tuple(int(x) for x in row) for row in tb.coeffs] == elems
    for i, a in enumerate(elems[:20]):
        for j, b in enumerate(elems):
            assert elems[tb.mul[i, j]] == elem_mul(spec, a, b)
            assert elems[tb.add[i, j]] == elem_add(spec, a, b)


def test_well_definedness_violation_is_reported():
    # x * x = 1 in Z/4 on a generator of order 2 is not well defined
    bad = RingSpec("bad", (2, 4), (((0, 1), (0, 0)), ((0, 0), (0, 1))), True)
    rep = validate_spec(bad)
    assert not rep.ok
    assert "well-definedness" in {v.law for v in rep.violations}


def test_false_commutativity_claim_is_reported():
    lying = RingSpec("lying", (3,) * 4, quaternion(3).products, True, (1, 0, 0, 0))
    rep = validate_spec(lying)
    assert not rep.ok
    assert not rep.observed_commutative


def test_structural_errors():
    with pytest.raises(SpecStructureError):
        RingSpec("r", (1,), (((0,),),))
    with pytest.raises(SpecStructureError):
        RingSpec("r", (2, 2), (((1, 0),),))


def test_quaternion_over_z2_is_commutative_but_flagged_otherwise():
    q2 = quaternion(2)
    assert not q2.commutative
    assert is_commutative(q2)
    assert not is_commutative(quaternion(3))


def _left_regular(a, b, c, d):
    # left multiplication by a + bi + cj + dk on the basis (1, i, j, k)
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]], dtype=np.int64)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_quaternion_matches_4x4_representation(n):
    spec = quaternion(n)
    elems = list(enumerate_elements(spec)) if n == 2 else [
        tuple(v) for v in np.random.default_rng(n).integers(0, n, (40, 4))]
    for x in elems:
        Lx = _left_regular(*x)
        for y in elems:
            xy = elem_mul(spec, x, y)
            assert tuple((Lx @ np.array(y)) % n) == xy
            assert np.array_equal((Lx @ _left_regular(*y)) % n, _left_regular(*xy) % n)


def test_gaussian_i_squared():
    g = gaussian(7)
    assert elem_mul(g, (0, 1), (0, 1)) == (6, 0)
    assert elem_mul(g, (2, 3), (4, 5)) == ((8 - 15) % 7, (10 + 12) % 7)


def test_gf_smallest_irreducibles():
    assert smallest_irreducible(2, 2) == [1, 1, 1]
    assert smallest_irreducible(2, 3) == [1, 1, 0, 1]
    assert smallest_irreducible(3, 2) == [1, 0, 1]


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (5, 1)])
def test_gf_is_a_field(p, m):
    spec = gf(p, m)
    assert is_field(spec)
    nonzero = [a for a in enumerate_elements(spec) if any(a)]
    for a in nonzero:
        assert any(elem_mul(spec, a, b) == spec.unit for b in nonzero)


def test_structure_queries():
    assert is_cyclic_unital(zn(6))
    assert is_cyclic_unital(direct_product(zn(2), zn(3)))
    assert not is_cyclic_unital(direct_product(zn(2), zn(2)))
    assert not is_field(zn(6))
    assert find_unit(null_ring(3)) is None
    assert find_unit(direct_product(zn(4), zn(3))) == (1, 1)
    e = find_order2_element(zn(6))
    assert e.element == (3,) and e.idempotent and e.unique
    assert find_order2_element(zn(9)) is None
    assert invariant_factors(torsion_poly(2, 2)) == (2, (2, 1))
    assert invariant_factors(zn(6)) is None


def test_additive_order():
    spec = direct_product(zn(4), zn(6))
    assert additive_order(spec, (2, 3)) == 2
    assert additive_order(spec, (1, 1)) == 12


@pytest.mark.parametrize("spec,d", [(zn(3), 2), (gaussian(2), 2), (zn(2), 3), (null_ring(5), 1)])
def test_enumeration_counts(spec, d):
    mats = list(enumerate_matrices(spec, d))
    assert len(mats) == matrix_count(spec, d) == spec.card ** (d * d)
    assert len({m.tobytes() for m in mats}) == len(mats)


def test_index_roundtrips():
    spec = direct_product(zn(3), gaussian(2))
    for i, e in enumerate(enumerate_elements(spec)):
        assert element_index(spec, e) == i
        assert element_from_index(spec, i) == e
    mats = list(enumerate_matrices(zn(3), 2))
    for i in (0, 1, 17, 80):
        assert np.array_equal(matrix_from_index(zn(3), 2, i), mats[i])
    # entry (0,0) is the most significant digit
    assert matrix_from_index(zn(3), 2, 27)[0, 0, 0] == 1


@pytest.mark.parametrize("parts", [1, 2, 3, 7, 81, 200])
def test_partition_covers_range(parts):
    ranges = partition(81, parts)
    assert ranges[0][0] == 0 and ranges[-1][1] == 81
    assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))
    assert all(lo < hi for lo, hi in ranges)


def test_partitioned_enumeration_is_a_disjoint_cover():
    spec = zn(3)
    whole = [m.tobytes() for m in enumerate_matrices(spec, 2)]
    pieces = []
    for lo, hi in partition(len(whole), 5):
        pieces += [m.tobytes() for m in enumerate_matrices(spec, 2, lo, hi)]
    assert pieces == whole


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as err:
        list(enumerate_matrices(zn(10), 3, budget=1000))
    assert err.value.required == 10**9
    check_budget(10, None)


def test_matrix_arithmetic():
    spec = zn(5)
    A = as_matrix(spec, [[1, 2], [3, 4]])
    B = as_matrix(spec, [[0, 1], [1, 0]])
    assert np.array_equal(mat_mul(spec, A, B)[..., 0], [[2, 1], [4, 3]])
    assert np.array_equal(mat_add(spec, A, A)[..., 0], [[2, 4], [1, 3]])
    assert np.array_equal(mat_pow(spec, A, 3), mat_mul(spec, A, mat_mul(spec, A, A)))
    with pytest.raises(ValueError):
        mat_pow(spec, A, 0)


def test_noncommutative_matrix_product_order():
    spec = quaternion(3)
    i, j = (0, 1, 0, 0), (0, 0, 1, 0)
    A, B = as_matrix(spec, [[i]]), as_matrix(spec, [[j]])
    assert tuple(mat_mul(spec, A, B)[0, 0]) == (0, 0, 0, 1)
    assert tuple(mat_mul(spec, B, A)[0, 0]) == (0, 0, 0, 2)


def test_direct_product_is_componentwise():
    a, b = zn(4), gaussian(3)
    prod = direct_product(a, b)
    for x in [(1,), (2,), (3,)]:
        for y in [(1, 2), (2, 2), (0, 1)]:
            xy = elem_mul(prod, x + y, (3,) + (1, 1))
            assert xy == elem_mul(a, x, (3,)) + elem_mul(b, y, (1, 1))


def test_json_roundtrip(tmp_path):
    spec = direct_product(quaternion(2), zn(3))
    path = tmp_path / "r.json"
    dump_spec(spec, path)
    assert load_spec(path) == spec
    assert spec_from_dict(json.loads(path.read_text())) == spec
    bad = spec_to_dict(spec) | {"commutative": "yes"}
    with pytest.raises(ValueError):
        spec_from_dict(bad)


def test_parse_ring():
    assert parse_ring("direct_product(zn(2), zn(3))").name == "direct_product(zn(2),zn(3))"
    for bad in ["zn(1)", "os.system('x')", "zn(", "nosuch(2)", "3"]:
        with pytest.raises(ValueError):
            parse_ring(bad)
    assert set(FAMILIES) >= {"zn", "gf", "gaussian", "quaternion", "null_ring", "trunc_poly", "direct_product"}


def test_large_products_do_not_overflow():
    n = 2**31 - 1
    spec = RingSpec("big", (n,), (((1,),),), True, (1,))
    assert elem_mul(spec, (n - 1,), (n - 1,)) == (1,)
