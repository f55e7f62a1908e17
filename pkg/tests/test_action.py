import itertools

import pytest
from hypothesis import given, strategies as st

from spinal.action import (RotA, SpinalB, act, act_a, act_b, apply_word, fixed_by, fixed_by_B,
                           parse_label, spine)
from spinal.algebra import ParameterError, make_group, preset
from spinal.words import canonicalize, parse_point, prefix

FG = preset("fabrykowski-gupta")
GRIG = preset("grigorchuk")


def test_act_a():
    assert act_a(1, parse_point("0(2)", 3), 3) == parse_point("1(2)", 3)
    assert act_a(2, parse_point("2(0)", 3), 3) == parse_point("1(0)", 3)
    assert act_a(1, (0, 0), 2) == (1, 0)


def test_act_b_examples():
    assert act_b((1,), FG, parse_point("(2)", 3)) == parse_point("(2)", 3)
    assert act_b((1,), FG, parse_point("(0)", 3)) == parse_point("01(0)", 3)
    for b in [(0, 1), (1, 0), (1, 1)]:
        assert act_b(b, GRIG, (1, 0)) == (1, 0)


def test_act_b_moves_the_letter_after_the_spine_prefix():
    g = make_group(2, 2, [], [(1, 0), (0, 1), (1, 1)])
    assert act(SpinalB((1, 0)), g, (0, 1)) == (0, 0)
    assert act(RotA(1), g, (0, 0)) == (1, 0)
    # with prefix 1 0 the index-1 form pi01 decides
    assert act(SpinalB((0, 1)), g, (1, 0, 1)) == (1, 0, 0)
    assert act(SpinalB((1, 0)), g, (1, 0, 1)) == (1, 0, 1)


def test_act_errors():
    with pytest.raises(ParameterError):
        act_b((0, 0), GRIG, (0, 1))
    with pytest.raises(ParameterError):
        act_b((1,), GRIG, (0, 1))
    with pytest.raises(ParameterError):
        act(RotA(3), FG, (0,))


def test_fixed_by():
    d = 2
    assert fixed_by_B(parse_point("(1)", d), GRIG)
    assert not fixed_by_B(parse_point("0(1)", 3), FG)
    g = make_group(2, 2, [], [(1, 1), (0, 1), (1, 0)])
    xi = parse_point("0(1)", 2)
    assert fixed_by((1, 1), xi, g)
    assert not fixed_by((1, 0), xi, g)


def test_fixed_by_B_matches_brute_force():
    for group in (GRIG, FG, preset("sunic")):
        d = group.d
        for u in itertools.product(range(d), repeat=3):
            for v in [(0,), (d - 1,), (1, 0)]:
                xi = canonicalize(u, v)
                moved = any(act(s, group, xi) != xi for s in group.generators if isinstance(s, SpinalB))
                assert fixed_by_B(xi, group) == (not moved)


def test_labels():
    for s in FG.generators + GRIG.generators:
        assert parse_label(str(s)) == s
    with pytest.raises(ValueError):
        parse_label("c")


@pytest.mark.parametrize("name", ["dihedral", "grigorchuk", "fabrykowski-gupta", "sunic"])
def test_generators_permute_levels(name):
    group = preset(name)
    for n in (1, 2, 3):
        level = list(itertools.product(range(group.d), repeat=n))
        for s in group.generators:
            assert sorted(act(s, group, w) for w in level) == level


def test_relations():
    """a^i a^j = a^(i+j) and b_x b_y = b_(x+y)."""
    group = preset("sunic", {"p": 3, "m": 2, "poly": "(1,1)"})
    d = group.d
    for w in itertools.product(range(d), repeat=3):
        for i, j in itertools.product(range(1, d), repeat=2):
            k = (i + j) % d
            assert apply_word([RotA(i), RotA(j)], group, w) == (act(RotA(k), group, w) if k else w)
        bs = [s.b for s in group.generators if isinstance(s, SpinalB)]
        for x, y in itertools.product(bs, repeat=2):
            z = tuple((p + q) % d for p, q in zip(x, y))
            expected = act_b(z, group, w) if any(z) else w
            assert act_b(y, group, act_b(x, group, w)) == expected


points = st.builds(lambda u, v: canonicalize(u, v),
                   st.lists(st.integers(0, 2), max_size=4),
                   st.lists(st.integers(0, 2), min_size=1, max_size=3))


@given(points, st.integers(1, 6), st.sampled_from(FG.generators))
def test_boundary_action_agrees_with_levels(xi, n, s):
    """Acting on the point and truncating commutes with acting on the prefix."""
    assert prefix(act(s, FG, xi), n) == act(s, FG, prefix(xi, n))


def test_spine_fixed():
    for group in (GRIG, FG):
        sp = spine(group.d)
        assert all(act(s, group, sp) == sp for s in group.generators if isinstance(s, SpinalB))
