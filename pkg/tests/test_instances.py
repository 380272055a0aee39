import json

import numpy as np
import pytest

from fkso.errors import ArgumentError, ParseError, ValidationError
from fkso.instances import (Instance, gen_gap_instance, gen_limit_instance,
                            gen_random_instance, load_instance,
                            save_instance, validate_instance)
from fkso.oracle import exact_opt


def test_trivial_round_trip(trivial):
    data = save_instance(trivial)
    again = load_instance(data)
    assert again == trivial
    assert again.t == 1
    assert save_instance(again) == data


def test_load_document_fields(trivial):
    doc = json.loads(save_instance(trivial))
    assert list(doc.keys()) == ["n", "f", "k", "m", "ell", "dist"]
    assert doc["dist"] == [0, 2, 2, 0]


@pytest.mark.parametrize("make", [
    lambda: gen_gap_instance(2, 1000),
    lambda: gen_gap_instance(3, 1000),
    lambda: gen_limit_instance(3, 5, 1000),
    lambda: gen_random_instance(7, 8, 6, 3, 5, 2),
])
def test_round_trip_byte_identical(make):
    inst = make()
    data = save_instance(inst)
    again = load_instance(data)
    assert again == inst
    assert save_instance(again) == data


def test_load_rejects_garbage():
    with pytest.raises(ParseError):
        load_instance(b"not json")
    with pytest.raises(ParseError):
        load_instance(b"[1,2,3]")
    with pytest.raises(ParseError):
        load_instance(json.dumps({"n": 1, "f": 1}).encode())


def test_load_rejects_triangle_violation():
    # d(0,2) = 9 > d(0,1) + d(1,2) = 2
    dist = [0, 1, 9,
            1, 0, 1,
            9, 1, 0]
    doc = {"n": 2, "f": 1, "k": 1, "m": 1, "ell": [1, 1], "dist": dist}
    with pytest.raises(ValidationError) as err:
        load_instance(json.dumps(doc).encode())
    assert "triangle" in str(err.value)
    assert err.value.witness == (0, 1, 2)


def test_validate_rejects_asymmetry_and_bad_ell(trivial):
    dist = np.array([[0.0, 2.0], [3.0, 0.0]])
    with pytest.raises(ValidationError):
        validate_instance(Instance(1, 1, 1, 1, np.array([1]), dist))
    with pytest.raises(ValidationError):
        validate_instance(Instance(1, 1, 1, 1, np.array([2]), trivial.dist))


def test_gap_instance_shape():
    inst = gen_gap_instance(2)
    assert (inst.n, inst.f, inst.m) == (6, 4, 4)
    inst1 = gen_gap_instance(1, M=11)
    assert (inst1.n, inst1.f, inst1.m) == (2, 1, 2)
    with pytest.raises(ArgumentError):
        gen_gap_instance(0)
    with pytest.raises(ArgumentError):
        gen_gap_instance(2, M=5)


def test_gap_instance_distances():
    k = 3
    inst = gen_gap_instance(k, M=1000)
    # every client at distance 1 from its own gadget's facilities
    for g in range(k):
        for c in range(k + 1):
            v = g * (k + 1) + c
            for j in range(k):
                i = inst.n + g * k + j
                assert inst.d(v, i) == 1.0
    # intra-gadget client-client distance 2 by tight triangles
    assert inst.d(0, 1) == 2.0
    assert inst.d(0, k) == 2.0
    # cross-gadget pairs at M
    assert inst.d(0, k + 1) == 1000.0
    assert inst.d(inst.n, inst.n + k) == 1000.0


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_gap_instance_metric_valid(k):
    validate_instance(gen_gap_instance(k))


def test_gap_instance_integral_coverage_below_m():
    # the exact oracle confirms no size-k opening serves m clients at any
    # radius below the gadget separation; record the exact count (k+1)
    inst = gen_gap_instance(3)
    result = exact_opt(inst)
    small = [(r, c) for r, c in result.coverage_curve if r < 1000]
    assert small, "expected candidate radii below the separation"
    assert all(c < inst.m for _, c in small)
    assert max(c for _, c in small) == 4  # one full gadget: k+1 clients


def test_limit_instance_closed_form():
    t, k = 4, 5
    inst = gen_limit_instance(t, k)
    assert inst.n == t and inst.f == t * k and inst.m == 1
    assert list(inst.ell) == [1, 2, 3, 4]
    for a in range(t):
        for b in range(t):
            assert inst.d(a, b) == 2 * abs(a - b)
        for b in range(t):
            for j in range(k):
                fac = inst.n + b * k + j
                expect = 1 if a == b else 2 * abs(a - b) + 1
                assert inst.d(a, fac) == expect
    assert inst.d(0, 3) == 6  # chain end to end


def test_limit_instance_degenerate_and_errors():
    inst = gen_limit_instance(1, 1)
    assert inst.n == 1 and inst.f == 1 and inst.d(0, 1) == 1.0
    with pytest.raises(ArgumentError):
        gen_limit_instance(3, 2)
    with pytest.raises(ArgumentError):
        gen_limit_instance(0, 1)


def test_limit_instance_scaled():
    inst = gen_limit_instance(3, 3, scale=10.0)
    assert inst.d(0, 1) == 20.0
    assert inst.d(0, inst.n) == 10.0


def test_random_instance_properties():
    inst = gen_random_instance(7, 8, 6, 3, 5, 2)
    assert inst.t == 2
    assert inst == gen_random_instance(7, 8, 6, 3, 5, 2)
    validate_instance(inst)  # Euclidean metric always passes


def test_random_instance_rejects_bad_params():
    with pytest.raises(ArgumentError):
        gen_random_instance(0, 4, 3, 2, 5, 1)   # m > n
    with pytest.raises(ArgumentError):
        gen_random_instance(0, 4, 3, 4, 2, 1)   # k > f
    with pytest.raises(ArgumentError):
        gen_random_instance(0, 4, 3, 2, 2, 3)   # t > k
