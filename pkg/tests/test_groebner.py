from math import comb

import pytest

from orbitslp import (GF, QQ, buchberger, hilbert_leq, ideal_k_basis,
                      normal_form, parse_polynomial)
from orbitslp.groebner import s_polynomial


def P(text, names, field=QQ):
    return parse_polynomial(text, names, field)


def gb_strings(gb, names):
    return [g.to_string(names) for g in gb]


def test_single_generator_is_its_own_basis():
    gb = buchberger([P("z^2 - 1", ["z"])])
    assert gb_strings(gb, ["z"]) == ["z^2 - 1"]
    gb = buchberger([P("z1*z2 - 1", ["z1", "z2"])])
    assert gb_strings(gb, ["z1", "z2"]) == ["z1*z2 - 1"]


def test_basis_forcing_new_element():
    # one s-polynomial reduction yields z2, which then absorbs z1*z2 - z2
    names = ["z1", "z2"]
    gb = buchberger([P("z1^2", names), P("z1*z2 - z2", names)])
    assert gb_strings(gb, names) == ["z2", "z1^2"]


def test_all_s_polynomials_reduce_to_zero():
    names = ["z1", "z2"]
    for gens in [
        [P("z1^2 - z2", names), P("z1*z2 - 1", names)],
        [P("z1^2", names), P("z1*z2 - z2", names)],
        [P("z1^3 - 2*z1*z2", names), P("z1^2*z2 - 2*z2^2 + z1", names)],
    ]:
        gb = buchberger(gens)
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert not normal_form(s_polynomial(gb[i], gb[j]), gb)


def test_basis_elements_are_monic():
    gb = buchberger([P("2*z^2 - 2", ["z"])])
    assert all(g.leading_coeff() == QQ.one for g in gb)


def test_normal_form_examples():
    gbA = buchberger([P("z^2 - 1", ["z"])])
    assert normal_form(P("z^2", ["z"]), gbA) == P("1", ["z"])
    for g in gbA:
        assert not normal_form(g, gbA)
    gbB = buchberger([P("z1*z2 - 1", ["z1", "z2"])])
    got = normal_form(P("z1^2*z2", ["z1", "z2"]), gbB)
    assert got == P("z1", ["z1", "z2"])


def test_ideal_slice_basis_example():
    gb = buchberger([P("z^2 - 1", ["z"])])
    basis = ideal_k_basis(gb, 3)
    assert gb_strings(basis, ["z"]) == ["z^2 - 1", "z^3 - z"]


def test_ideal_slice_empty_below_min_degree():
    gb = buchberger([P("z^2 - 1", ["z"])])
    assert ideal_k_basis(gb, 1) == []


def test_ideal_slice_members_reduce_to_zero():
    names = ["z1", "z2"]
    gb = buchberger([P("z1*z2 - 1", names), P("z1^2 - z2", names)])
    for d in range(5):
        for b in ideal_k_basis(gb, d):
            assert not normal_form(b, gb)


def test_hilbert_torus_is_linear():
    gb = buchberger([P("z1*z2 - 1", ["z1", "z2"])])
    for d in range(11):
        assert hilbert_leq(gb, d) == 2 * d + 1


def test_hilbert_two_points():
    gb = buchberger([P("z^2 - 1", ["z"])])
    assert hilbert_leq(gb, 0) == 1
    for d in range(1, 11):
        assert hilbert_leq(gb, d) == 2


def test_hilbert_full_ring():
    gb = buchberger([], nvars=2, field=QQ)
    for d in range(8):
        assert hilbert_leq(gb, d) == comb(d + 2, 2)


def test_hilbert_nondecreasing_and_dimension_identity():
    names = ["z1", "z2"]
    cases = [
        buchberger([P("z1*z2 - 1", names)]),
        buchberger([P("z1", names), P("z2", names)]),
        buchberger([P("z1^2", names), P("z1*z2 - z2", names)]),
        buchberger([], nvars=2, field=QQ),
        buchberger([P("z^3 - 1", ["z"], GF(7))]),
    ]
    for gb in cases:
        prev = 0
        for d in range(7):
            h = hilbert_leq(gb, d)
            assert h >= prev
            prev = h
            assert h + len(ideal_k_basis(gb, d)) == comb(gb.nvars + d, gb.nvars)


def test_hilbert_growth_matches_group_dimension():
    # one-dimensional group: H(d)/d bounded; finite group: eventually constant
    torus = buchberger([P("z1*z2 - 1", ["z1", "z2"])])
    assert all(hilbert_leq(torus, d) <= 3 * d for d in range(2, 12))
    finite = buchberger([P("z^3 - 1", ["z"])])
    assert len({hilbert_leq(finite, d) for d in range(3, 12)}) == 1


def test_empty_generating_set_needs_context():
    with pytest.raises(ValueError):
        buchberger([])


def test_against_sympy_reference():
    sympy = pytest.importorskip("sympy")
    z1, z2 = sympy.symbols("z1 z2")
    names = ["z1", "z2"]
    cases = [
        ["z1^2", "z1*z2 - z2"],
        ["z1^2 - z2", "z1*z2 - 1"],
        ["z1^3 - 2*z1*z2", "z1^2*z2 - 2*z2^2 + z1"],
        ["z1*z2 - 1", "z2^2 - 1"],
    ]
    to_sympy = {"z1": z1, "z2": z2}

    def monic_set(exprs):
        normalized = [(e / sympy.LC(e, z1, z2, order="grlex")).expand()
                      for e in exprs]
        return sorted(normalized, key=sympy.default_sort_key)

    for gens in cases:
        gb = buchberger([P(s, names) for s in gens])
        ref = sympy.groebner([sympy.sympify(s.replace("^", "**"), to_sympy)
                              for s in gens], z1, z2, order="grlex")
        mine = monic_set(sympy.sympify(g.to_string(names).replace("^", "**"),
                                       to_sympy) for g in gb)
        theirs = monic_set(ref.exprs)
        assert mine == theirs, gens
