import itertools

import pytest
from hypothesis import given, strategies as st

from spinal.algebra import (AutB, Epimorphism, InvalidOmega, ParameterError, Params, PRESETS,
                            Unsupported, companion, detect_self_similar, eval_epi,
                            format_group_spec, invertible_matrices, kernel, make_group,
                            parse_group_spec, preset, shift_omega, validate_omega)


def epi(*c, d=2):
    return Epimorphism(d, tuple(c))


def test_eval_epi():
    assert eval_epi(epi(1, 1), (1, 0)) == 1
    assert eval_epi(epi(1, d=3), (2,)) == 2
    assert eval_epi(epi(1, 1), (0, 0)) == 0
    with pytest.raises(ParameterError):
        eval_epi(epi(1, 1), (1,))


def test_kernel():
    assert kernel(epi(1, 1)) == {(0, 0), (1, 1)}
    assert kernel(epi(1, d=3)) == {(0,)}
    assert kernel(epi(0, 1)) == {(0, 0), (1, 0)}


def test_non_surjective_form_rejected():
    with pytest.raises(ParameterError):
        Epimorphism(4, (2, 2))
    with pytest.raises(ParameterError):
        Epimorphism(2, (0, 0))


@pytest.mark.parametrize("d, m", [(2, 2), (3, 2), (4, 1), (4, 2), (6, 1)])
def test_kernel_index(d, m):
    """Every epimorphism has kernel of order d^(m-1)."""
    for coeffs in itertools.product(range(d), repeat=m):
        try:
            pi = Epimorphism(d, coeffs)
        except ParameterError:
            continue
        assert len(kernel(pi)) == d ** (m - 1)
        assert {eval_epi(pi, b) for b in Params(d, m).elements()} == set(range(d))


def test_validate_omega():
    p22 = Params(2, 2)
    validate_omega(p22, [], [epi(0, 1), epi(1, 0), epi(1, 1)])
    validate_omega(Params(3, 1), [], [epi(1, d=3)])
    with pytest.raises(InvalidOmega) as exc:
        validate_omega(p22, [], [epi(0, 1)])
    assert exc.value.index == 0
    with pytest.raises(InvalidOmega) as exc:
        validate_omega(p22, [epi(1, 0)], [epi(0, 1)])
    assert exc.value.index == 1


def test_validate_omega_index_past_preperiod():
    with pytest.raises(InvalidOmega) as exc:
        validate_omega(Params(2, 2), [epi(1, 1), epi(1, 0)], [epi(0, 1)])
    assert exc.value.index == 2


def test_shift_omega():
    p22 = Params(2, 2)
    om = validate_omega(p22, [epi(0, 1)], [epi(1, 0), epi(1, 1)])
    s = shift_omega(om)
    assert (s.preperiod, s.period) == ((), (epi(1, 0), epi(1, 1)))
    om = validate_omega(p22, [], [epi(0, 1), epi(1, 0)])
    s = shift_omega(om)
    assert (s.preperiod, s.period) == ((), (epi(1, 0), epi(0, 1)))
    const = validate_omega(Params(3, 1), [], [epi(1, d=3)])
    assert shift_omega(const) == const


def test_presets():
    g = preset("dihedral")
    assert (g.d, g.m, len(g.omega.period)) == (2, 1, 1)
    g = preset("grigorchuk")
    assert (g.d, g.m) == (2, 2)
    assert set(g.omega.period) == {epi(0, 1), epi(1, 0), epi(1, 1)}
    g = preset("fabrykowski-gupta")
    assert (g.d, g.m, g.omega.period) == (3, 1, (epi(1, d=3),))
    assert preset("fg") == g
    for name in PRESETS:
        preset(name)
    with pytest.raises(ParameterError):
        preset("nope")


def test_generators():
    g = preset("grigorchuk")
    assert [str(s) for s in g.generators] == ["a^1", "b=(0,1)", "b=(1,0)", "b=(1,1)"]
    assert len(preset("sunic", {"p": 3, "m": 2, "poly": "(1,1)"}).generators) == 2 + 8


def test_grigorchuk_p_and_sunic_presets():
    g = preset("grigorchuk-p", {"p": 3})
    assert (g.d, g.m, len(g.omega.period)) == (3, 2, 4)
    g = preset("grigorchuk-p", {"p": 3, "per": "0,pi"})
    assert g.omega.period == (epi(1, 0, d=3), epi(0, 1, d=3))
    s = preset("sunic", {"p": 2, "m": 2, "poly": "(1,1)"})
    assert s.d == 2 and len(s.omega.period) == 3


def test_group_spec_round_trip():
    for name in PRESETS:
        g = preset(name)
        again = parse_group_spec(format_group_spec(g))
        assert (again.d, again.m, again.omega) == (g.d, g.m, g.omega)
    g = parse_group_spec("d=2; m=2; pre=[(1,1)]; per=[(0,1),(1,0)]")
    assert g.omega.preperiod == (epi(1, 1),)
    for bad in ["d=2;m=2", "d=2;m=2;pre=[];per=[(0,2)]", "d=2;m=2;pre=[];per=[]"]:
        with pytest.raises(ParameterError):
            parse_group_spec(bad)


def test_autb():
    rho = AutB(2, ((0, 1), (1, 1)))
    assert rho.order() == 3
    assert rho.compose(rho).compose(rho).is_identity()
    with pytest.raises(ParameterError):
        AutB(2, ((1, 1), (1, 1)))
    assert len(list(invertible_matrices(2, 2))) == 6
    assert len(list(invertible_matrices(3, 2))) == 48
    with pytest.raises(Unsupported):
        list(invertible_matrices(5, 3))


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4),
       st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_pullback_is_composition(flat, b):
    try:
        rho = AutB(3, (tuple(flat[:2]), tuple(flat[2:])))
    except ParameterError:
        return
    pi = Epimorphism(3, (1, 2))
    assert eval_epi(rho.pullback(pi), b) == eval_epi(pi, rho.apply(b))


def test_detect_self_similar():
    assert detect_self_similar(preset("fabrykowski-gupta")).is_identity()
    rho = detect_self_similar(preset("grigorchuk"))
    assert rho is not None and not rho.is_identity() and rho.order() == 3
    assert detect_self_similar(make_group(2, 2, [], [(0, 1), (0, 1), (1, 0), (1, 1)])) is None


def test_companion():
    rho = companion(2, (1, 1))
    assert rho.m == 2 and rho.order() == 3
