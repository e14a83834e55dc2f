import pytest
from hypothesis import given, strategies as st

from ainfty.graded import GradedMap, GradedVectorSpace, IncompatibleSpaces, compose_graded, koszul_sign, \
    shift, shift_sign, tensor_map, tensor_space

degrees = st.integers(-2, 2)


def spaces(prefix, max_dim=2):
    return st.lists(degrees, min_size=1, max_size=max_dim).map(
        lambda ds: GradedVectorSpace.of((f"{prefix}{i}", d) for i, d in enumerate(ds)))


def _random_map(draw, src, tgt, deg):
    images = {}
    for l, d in src.basis:
        vec = {t: draw(st.integers(-2, 2)) for t, e in tgt.basis if e == d + deg}
        images[l] = {t: v for t, v in vec.items() if v}
    return GradedMap.from_images(src, tgt, deg, images)


@st.composite
def graded_maps(draw, prefix, src=None):
    src = src or draw(spaces(prefix + "s"))
    return _random_map(draw, src, draw(spaces(prefix + "t")), draw(degrees))


@st.composite
def composable_pairs(draw, prefix):
    """(f, h) with f after h defined."""
    h = draw(graded_maps(prefix + "h"))
    return draw(graded_maps(prefix + "f", src=h.target)), h


@given(composable_pairs("a"), composable_pairs("b"))
def test_koszul_interchange(fh, gk):
    """(f (x) g)(h (x) k) = (-1)^{|g||h|} (fh) (x) (gk)."""
    (f, h), (g, k) = fh, gk
    lhs = compose_graded(tensor_map(f, g), tensor_map(h, k))
    rhs = tensor_map(compose_graded(f, h), compose_graded(g, k))
    s = -1 if (g.degree * h.degree) & 1 else 1
    assert lhs.matrix.to_dict() == rhs.matrix.scale(s).to_dict()


@given(graded_maps("f"), graded_maps("g"))
def test_tensor_map_sign_on_elements(f, g):
    t = tensor_map(f, g)
    for x, dx in f.source.basis:
        for y, dy in g.source.basis:
            fx, gy = f({x: 1}), g({y: 1})
            want = {(a, b): koszul_sign([f.degree, g.degree], [dx, dy]) * u * v
                    for a, u in fx.items() for b, v in gy.items()}
            assert t({(x, y): 1}) == {k: v for k, v in want.items() if v}


@given(spaces("v"), st.integers(-3, 3))
def test_shift_is_invertible_and_lowers_degree(v, n):
    assert shift(shift(v, n), -n) == v
    assert shift(v, 1).degrees() == [d - 1 for d in v.degrees()]


def test_tensor_space_degrees():
    v = GradedVectorSpace.of([("a", 0), ("b", 1)])
    w = GradedVectorSpace.of([("c", -1)])
    t = tensor_space(v, w)
    assert t.basis == ((("a", "c"), -1), (("b", "c"), 0))


@given(st.lists(degrees, max_size=5))
def test_shift_sign_matches_pairwise_count(ds):
    # (s^-1)^{(x)n}: each s^-1 (degree 1) passes the elements standing to its left
    n = len(ds)
    expected = koszul_sign([1] * n, ds) if n else 1
    assert shift_sign(ds) == expected


def test_degree_mismatch_rejected():
    v = GradedVectorSpace.of([("a", 0)])
    w = GradedVectorSpace.of([("b", 0)])
    with pytest.raises(ValueError):
        GradedMap.from_images(v, w, 1, {"a": {"b": 1}})
    with pytest.raises(IncompatibleSpaces):
        compose_graded(GradedMap.identity(v), GradedMap.identity(w))


def test_unique_labels():
    with pytest.raises(ValueError):
        GradedVectorSpace.of([("a", 0), ("a", 1)])
