import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st
import random

from ainfty import GF, QQ
from ainfty.fun import random_prenat
from ainfty.functor import functors_equal
from ainfty.internal_hom import build_counterexample, build_tensor_unit, solve_bifunctor_N
from ainfty.io import SchemaError, categories_equal, decode_atom, encode_atom, load, parse, serialize
from ainfty.zoo import RandomDgConfig, cone, dual, dual2, ground, interval, random_ainfty, random_dg

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.mark.parametrize("path", sorted(p for p in FIXTURES.glob("*/*.json") if p.parent.name != "corrupt"),
                         ids=lambda p: f"{p.parent.name}/{p.name}")
def test_fixture_round_trip(path):
    text = path.read_text()
    assert serialize(parse(text)) == text


@pytest.mark.parametrize("make", [ground, dual2, dual, interval, cone])
def test_category_round_trip(make):
    a = make()
    b = parse(serialize(a))
    assert categories_equal(a, b)
    assert serialize(b) == serialize(a)


@given(st.integers(0, 10_000))
def test_random_categories_round_trip(seed):
    a, g = random_ainfty(random.Random(seed), 3, RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1))
    assert serialize(parse(serialize(a))) == serialize(a)
    h = parse(serialize(g))
    h.source, h.target = g.source, g.target
    assert functors_equal(h, g, 3)


def test_prime_field_round_trip():
    a = random_dg(random.Random(2), field=GF(5))
    s = serialize(a)
    assert '"field": "Fp:5"' in s
    assert parse(s).field == GF(5)


def test_functor_multifunctor_prenat_and_bundle():
    b = build_counterexample()
    f = parse(serialize(b.F2))
    f.source, f.target = b.A, b.A_prime
    assert functors_equal(f, b.F2, 4)
    d = build_tensor_unit(interval(), ground())
    N = solve_bifunctor_N(d, 2)
    assert serialize(parse(serialize(N))) == serialize(N)
    t = random_prenat(random.Random(0), b.F1, b.F2, 0, 2)
    assert serialize(parse(serialize((t, 2)))) == serialize((t, 2))
    bundle = parse(serialize({"F1": b.F1, "A": b.A}))
    assert set(bundle) == {"F1", "A"}


def test_rationals_in_lowest_terms():
    a = dual2()
    doc = json.loads(serialize(a))
    doc["payload"]["m"][0][4] = "3/6"
    with pytest.raises(SchemaError, match="canonical"):
        parse(json.dumps(doc))
    assert QQ.format(QQ.parse("-3/6")) == "-1/2"


@pytest.mark.parametrize("mutate,needle", [
    (lambda d: d.update(extra=1), "unknown keys"),
    (lambda d: d["payload"].update(colour="red"), "unknown keys"),
    (lambda d: d.update(kind="sheaf"), "kind"),
    (lambda d: d.update(field="R"), "field"),
    (lambda d: d.update(schema_version="9"), "version"),
    (lambda d: d["payload"]["m"].append([2, ["*", "*", "*"], [0, 9], 0, "1"]), "no basis element"),
    (lambda d: d["payload"]["m"].append([3, ["*", "*"], [0], 0, "1"]), "arity"),
    (lambda d: d["payload"].pop("homs"), "missing"),
])
def test_schema_errors(mutate, needle):
    doc = json.loads(serialize(dual2()))
    mutate(doc)
    with pytest.raises(SchemaError, match=needle):
        parse(json.dumps(doc))


def test_malformed_json_reports_a_line():
    with pytest.raises(SchemaError, match="line"):
        parse('{"schema_version": "1",\n "kind": }')


def test_atoms():
    x = ("a", (1, "b"))
    assert decode_atom(encode_atom(x)) == x
    with pytest.raises(TypeError):
        encode_atom(1.5)
    with pytest.raises(SchemaError):
        decode_atom(True)


def test_serialization_is_deterministic():
    assert serialize(random_dg(random.Random(4))) == serialize(random_dg(random.Random(4)))
