import numpy as np
import pytest

from ppkit.errors import DependentBasis, MixedContexts
from ppkit.gf import build_field
from ppkit.tower import (
    TowerElem,
    build_tower,
    coords,
    dual_basis,
    from_coords,
    proof_substitution,
    tower_arith,
    valid_us,
)

TOWERS = [(3, 1), (3, 2), (5, 1), (7, 1), (2, 1), (2, 2), (2, 3)]


@pytest.mark.parametrize("p,m", TOWERS)
def test_alpha_reduction_rule(p, m):
    T = build_tower(build_field(p, m))
    a2 = T.mul(T.alpha.enc, T.alpha.enc)
    if T.kind == "odd":
        assert a2 == T.embed(T.u)
    else:
        assert a2 == T.add(T.alpha.enc, T.embed(T.u))


@pytest.mark.parametrize("p,m", TOWERS)
def test_frob_is_qth_power(p, m):
    T = build_tower(build_field(p, m))
    for x in range(T.order):
        assert T.frob(x) == T.pow(x, T.q)
        # Frobenius is an involution on the quadratic extension
        assert T.frob(T.frob(x)) == x


@pytest.mark.parametrize("p,m", TOWERS)
def test_field_axioms_on_tower(p, m):
    T = build_tower(build_field(p, m))
    pts = range(T.order) if T.order <= 25 else range(0, T.order, 7)
    for x in pts:
        assert T.add(x, T.neg(x)) == 0
        if x:
            assert T.mul(x, T.inv(x)) == 1
        for y in pts:
            assert T.mul(x, y) == T.mul(y, x)
            assert T.add(x, y) == T.add(y, x)


def test_trace_norm_values():
    T = build_tower(build_field(3, 1))
    for x in range(9):
        c0, c1 = T.split(x)
        # odd tower: Tr(c0 + c1*alpha) = 2*c0, N = c0^2 - u*c1^2
        assert T.trace(x) == T.base.mul(T.base.scalar(2), c0)
        want = T.base.sub(T.base.mul(c0, c0), T.base.mul(T.u, T.base.mul(c1, c1)))
        assert T.norm(x) == want


def test_even_trace_is_alpha_coordinate():
    T = build_tower(build_field(2, 2))
    for x in range(T.order):
        assert T.trace(x) == T.split(x)[1]


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (2, 2)])
def test_tables_match_scalar_ops(p, m):
    T = build_tower(build_field(p, m))
    ADD, MUL, FROB, NEG = T.tables()
    for x in range(T.order):
        assert FROB[x] == T.frob(x)
        assert NEG[x] == T.neg(x)
        for y in range(T.order):
            assert ADD[x, y] == T.add(x, y)
            assert MUL[x, y] == T.mul(x, y)


def test_pow_vec_matches_pow():
    T = build_tower(build_field(3, 1))
    xs = np.arange(T.order)
    for e in (0, 1, 2, 5, 7, 11):
        got = T.pow_vec(xs, e)
        assert [T.pow(int(x), e) for x in xs] == list(got)


def test_valid_us():
    F = build_field(5, 1)
    us = valid_us(F)
    assert us == [2, 3]  # non-squares mod 5
    for u in us:
        build_tower(F, u=u)
    with pytest.raises(ValueError):
        build_tower(F, u=4)  # 4 = 2^2 is a square
    E = build_field(2, 2)
    for u in valid_us(E):
        build_tower(E, u=u)
    with pytest.raises(ValueError):
        build_tower(E, u=0)  # absolute trace 0


def test_elem_ops_and_embedding():
    T = build_tower(build_field(3, 1))
    B = T.base
    x = T.elem(5)
    y = T.elem(7)
    assert (x + y).enc == T.add(5, 7)
    assert (x * y).enc == T.mul(5, 7)
    assert (x - y) + y == x
    assert (x / y) * y == x
    assert (x + B.elem(2)).enc == T.add(5, T.embed(2))
    other = build_tower(build_field(5, 1))
    with pytest.raises(MixedContexts):
        _ = x + other.elem(1)
    c0, c1 = coords(T, x)
    assert from_coords(T, c0, c1) == x
    assert tower_arith(T, "mul", x, y) == x * y


def test_dual_basis_trace_orthogonality():
    T = build_tower(build_field(3, 2))
    basis = (T.elem(1), T.alpha)
    d1, d2 = dual_basis(T, basis)
    for i, b in enumerate(basis):
        for j, d in enumerate((d1, d2)):
            assert T.trace(T.mul(b.enc, d.enc)) == (1 if i == j else 0)
    with pytest.raises(DependentBasis):
        dual_basis(T, (T.elem(1), T.elem(2)))  # both in F_q
    with pytest.raises(DependentBasis):
        dual_basis(T, (T.elem(0), T.alpha))


@pytest.mark.parametrize("p,m", TOWERS)
def test_proof_substitution_identity(p, m):
    T = build_tower(build_field(p, m))
    B = T.base
    for delta in range(T.order):
        de = T.elem(delta)
        a, b = T.split(delta)
        for y in range(B.q):
            for z in range(B.q):
                x = proof_substitution(T, de, B.elem(y), B.elem(z))
                if T.kind == "odd":
                    got = T.add(T.sub(T.frob(x.enc), x.enc), delta)
                    assert got == T.from_coords(a, z)
                else:
                    got = T.add(T.add(T.frob(x.enc), x.enc), delta)
                    assert got == T.from_coords(z, b)


def test_proof_substitution_is_bijective_in_yz():
    T = build_tower(build_field(5, 1))
    de = T.elem(17)
    seen = {
        proof_substitution(T, de, T.base.elem(y), T.base.elem(z)).enc
        for y in range(5)
        for z in range(5)
    }
    assert len(seen) == T.order
