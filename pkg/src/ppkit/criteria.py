"""Statement-level predicates for every theorem, plus the normalized-form
cubic and quintic permutation tests they rely on."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    GammaNotInSubfield,
    MissingParam,
    UnknownTheorem,
    WrongCharacteristic,
)
from .families import theorem_info
from .gf import FieldCtx
from .tower import TowerCtx


@dataclass(frozen=True)
class Verdict:
    predicted: bool
    matched_case: str  # e.g. "3.1(ii)" or "none"
    notes: Optional[str] = None


def _is_square_enc(ctx: FieldCtx, x: int) -> bool:
    if x == 0:
        return True
    return ctx.pow(x, (ctx.q - 1) // 2) == 1


def _is_fourth_enc(ctx: FieldCtx, x: int) -> bool:
    if x == 0:
        return True
    d = math.gcd(4, ctx.q - 1)
    return ctx.pow(x, (ctx.q - 1) // d) == 1


def _fourth_or_not_square(ctx: FieldCtx, x: int) -> bool:
    return _is_fourth_enc(ctx, x) or not _is_square_enc(ctx, x)


def cubic_norm_pp(ctx: FieldCtx, c: int) -> bool:
    """Does z^3 - c*z permute F_q (odd q)?"""
    if ctx.p == 2:
        raise WrongCharacteristic("cubic criterion is for odd q")
    q = ctx.q
    if q % 3 == 0 and not _is_square_enc(ctx, c):
        return True
    return q % 3 != 1 and c == 0


def quintic_norm_pp(ctx: FieldCtx, A: int, B: int) -> bool:
    """Does z^5 + A*z^3 + B*z permute F_q (odd q)?

    Implements the classification of normalized quintic permutation
    polynomials; exhaustively validated against the brute-force oracle for
    q in {3, 5, 7, 9, 11, 13}.
    """
    if ctx.p == 2:
        raise WrongCharacteristic("quintic criterion is for odd q")
    q = ctx.q
    if q == 3:
        # z^5 and z^3 both act as z, so f acts as (1 + A + B) z
        return ctx.add(ctx.add(ctx.scalar(1), A), B) != 0
    if q == 5:
        # z^5 acts as z; the residue is the cubic A z^3 + (B + 1) z
        lin = ctx.add(B, ctx.scalar(1))
        if A == 0:
            return lin != 0
        return cubic_norm_pp(ctx, ctx.neg(ctx.div(lin, A)))
    if A == 0 and B == 0:
        return q % 5 != 1
    if q % 5 == 0 and A == 0:
        # z^5 + Bz is linearized; permutes iff -B has no fourth root
        return not _is_fourth_enc(ctx, ctx.neg(B)) if B != 0 else True
    if q == 9 and A == 0 and ctx.mul(B, B) == ctx.scalar(2):
        return True
    if q % 5 in (2, 3) and ctx.mul(A, A) == ctx.mul(ctx.scalar(5), B):
        return True
    if (
        q == 13
        and B == ctx.mul(ctx.scalar(3), ctx.mul(A, A))
        and A != 0
        and not _is_square_enc(ctx, A)
    ):
        return True
    if q % 5 == 0 and A != 0:
        # z*(z^2 - s)^2 with s = -A/2; permutes iff s has no square root
        s = ctx.neg(ctx.div(A, ctx.scalar(2)))
        if B == ctx.mul(s, s) and not _is_square_enc(ctx, s):
            return True
    return False


def _require_odd(tower: TowerCtx, tid: str):
    if tower.kind != "odd":
        raise WrongCharacteristic(f"theorem {tid} requires odd characteristic")


# theorems whose criterion reduces to "the z-component polynomial permutes
# F_q"; for these the prediction is decided by the normalized cubic/quintic
# tests (exact at every q), while the stated cases provide the label
_EXACT_VIA_G2 = {
    "3.6", "3.7", "3.8", "3.9", "3.10", "3.11", "3.12",
    "3.14", "3.15", "3.16", "3.17", "3.18",
}


def _z_component_permutes(
    tid: str, tower: TowerCtx, delta: int, gamma: int, i: int | None
) -> bool:
    from .families import closed_form_components

    table = closed_form_components(
        tid, tower, tower.elem(delta), tower.elem(gamma), i=i
    )
    B = tower.base
    e5 = table.g2.get((0, 5), 0)
    e3 = table.g2.get((0, 3), 0)
    e1 = table.g2.get((0, 1), 0)
    if e5 != 0:
        return quintic_norm_pp(B, B.div(e3, e5), B.div(e1, e5))
    if e3 != 0:
        return cubic_norm_pp(B, B.neg(B.div(e1, e3)))
    return e1 != 0


def predict(
    tid: str,
    ctx,
    delta: int = 0,
    gamma: int = 0,
    i: int | None = None,
    d: int | None = None,
) -> Verdict:
    """Evaluate the theorem's criterion for the encoded parameters.

    For theorems whose hypothesis restricts gamma to F_q*, parameters outside
    that set yield predicted = False with a "hypothesis-violated" note rather
    than an error, so probe sweeps can explore beyond the statement.  At very
    small q the stated case lists can miss permutations created by exponent
    folding; those theorems are decided by the exact z-component test and the
    verdict carries a "folded" note when the case list disagrees.
    """
    v = _statement_predict(tid, ctx, delta, gamma, i, d)
    if tid in _EXACT_VIA_G2 and v.notes is None:
        exact = _z_component_permutes(tid, ctx, delta, gamma, i)
        if exact != v.predicted:
            if exact:
                return Verdict(True, "folded", "permutes only after exponent folding")
            return Verdict(False, "none", "stated case voided by exponent folding")
    return v


def _statement_predict(
    tid: str,
    ctx,
    delta: int = 0,
    gamma: int = 0,
    i: int | None = None,
    d: int | None = None,
) -> Verdict:
    info = theorem_info(tid)

    if tid == "4.1":
        return _predict_41(ctx, gamma, d)

    if not isinstance(ctx, TowerCtx):
        raise MissingParam(f"theorem {tid} needs a TowerCtx")
    tower = ctx
    B = tower.base
    q = tower.q

    if gamma == 0:
        return Verdict(False, "none", "hypothesis-violated: gamma = 0")

    gamma_in_base = gamma < q
    if info.gamma_domain == "Fq_star" and not gamma_in_base:
        return Verdict(False, "none", "hypothesis-violated: gamma not in F_q*")

    if tid == "3.19":
        return _predict_319(tower, delta, gamma)

    _require_odd(tower, tid)
    td = tower.trace(delta)
    tg = tower.trace(gamma)
    ng = tower.norm(gamma)
    g = gamma if gamma_in_base else None  # plain gamma for F_q* statements

    def s(n: int) -> int:
        return B.scalar(n)

    def sq(x: int) -> bool:
        return _is_square_enc(B, x)

    mul, add, sub, div, powe, neg = B.mul, B.add, B.sub, B.div, B.pow, B.neg
    half = B.inv(s(2))

    if tid == "3.1":
        if gamma_in_base:
            if q % 3 == 0 and sq(sub(mul(td, td), tg)):
                return Verdict(True, "3.1(i)")
            if q % 3 == 2 and mul(td, td) == tg:
                return Verdict(True, "3.1(ii)")
        else:
            if td == 0 and tg == 0:
                return Verdict(True, "3.1(iii)")
            if td == 0 and tg != 0 and q % 3 == 0 and sq(neg(div(ng, tg))):
                return Verdict(True, "3.1(iv)")
            if (
                td != 0
                and tg != 0
                and q % 3 == 2
                and powe(mul(td, tg), 2)
                == mul(ng, add(mul(td, td), mul(s(3), tg)))
            ):
                return Verdict(True, "3.1(v)")
        return Verdict(False, "none")

    if tid == "3.2":
        if gamma_in_base and sub(td, div(tg, s(4))) != 0:
            return Verdict(True, "3.2")
        return Verdict(False, "none")

    if tid == "3.3":
        if gamma_in_base and add(td, div(tg, s(4))) != 0:
            return Verdict(True, "3.3")
        return Verdict(False, "none")

    if tid == "3.4":
        if gamma_in_base:
            return Verdict(True, "3.4(a)")
        if td == 0:
            return Verdict(True, "3.4(b)")
        return Verdict(False, "none")

    if tid == "3.5":
        if td == 0:
            return Verdict(True, "3.5(i)")
        if gamma_in_base:
            if q % 3 == 0 and sq(sub(div(tg, s(2)), powe(td, 4))):
                return Verdict(True, "3.5(ii)")
            if q % 3 == 2 and mul(s(2), powe(td, 4)) == tg:
                return Verdict(True, "3.5(iii)")
        return Verdict(False, "none")

    # remaining odd theorems all have gamma in F_q*
    a = mul(td, half)  # 2a = Tr(delta)

    if tid == "3.6":
        if q == 9 and a in (s(1), s(-1)) and g == s(1):
            return Verdict(True, "3.6(i)")
        if q == 13:
            pairs = {(0, 6), (1, 11), (12, 11), (2, 4), (11, 4), (5, 6), (8, 6)}
            if (a, g) in pairs:
                return Verdict(True, "3.6(ii)")
        if q % 5 != 1 and mul(a, a) == neg(half) and g == half:
            return Verdict(True, "3.6(iii)")
        if q % 5 in (2, 3) and add(
            add(mul(s(2), powe(a, 4)), mul(s(2), mul(a, a))), mul(s(5), g)
        ) == s(2):
            return Verdict(True, "3.6(iv)")
        if q % 5 == 0:
            if mul(a, a) == neg(half) and _fourth_or_not_square(
                B, div(sub(s(1), mul(s(2), g)), s(4))
            ):
                return Verdict(True, "3.6(v)(a)")
            if sq(div(add(mul(s(2), mul(a, a)), s(1)), s(2))) and mul(s(2), g) == s(1):
                return Verdict(True, "3.6(v)(b)")
        return Verdict(False, "none")

    if tid == "3.7":
        if q % 5 == 0 and td == 0 and _fourth_or_not_square(B, div(g, s(2))):
            return Verdict(True, "3.7(i)")
        if q == 9 and td == 0 and g in (s(1), s(-1)):
            return Verdict(True, "3.7(ii)")
        if (
            q % 5 in (2, 3)
            and td != 0
            and sub(sub(powe(td, 4), mul(s(80), td)), mul(s(40), g)) == 0
        ):
            return Verdict(True, "3.7(iii)")
        if q % 5 == 0 and td != 0 and add(g, mul(s(2), td)) == 0:
            return Verdict(True, "3.7(iv)")
        return Verdict(False, "none")

    if tid == "3.8":
        if td == 0:
            return Verdict(True, "3.8(i)")
        if q % 5 in (2, 3) and mul(s(40), g) == mul(s(19), powe(td, 5)):
            return Verdict(True, "3.8(ii)")
        if q % 5 == 0 and mul(s(2), g) == powe(td, 5):
            return Verdict(True, "3.8(iii)")
        return Verdict(False, "none")

    if tid == "3.9":
        if td == 0:
            if add(g, s(2)) != 0:
                return Verdict(True, "3.9(i)")
            return Verdict(False, "none")
        if q % 5 in (2, 3) and mul(s(40), g) == sub(powe(td, 5), s(80)):
            # with 2a = Tr(delta) this is 5*gamma = 4*a^5 - 10, the form the
            # oracle confirms at q = 7 and q = 13
            return Verdict(True, "3.9(ii)")
        if q % 5 == 0 and g == s(3):
            return Verdict(True, "3.9(iii)")
        return Verdict(False, "none")

    if tid == "3.10":
        if td == 0:
            return Verdict(True, "3.10(i)")
        if q % 3 == 0 and g != powe(td, 4):
            return Verdict(True, "3.10(ii)")
        if q % 3 == 2 and g == neg(div(powe(td, 4), s(2))):
            return Verdict(True, "3.10(iii)")
        return Verdict(False, "none")

    if tid == "3.11":
        if td == 0:
            return Verdict(True, "3.11(i)")
        if q % 5 in (2, 3) and g == sub(div(powe(td, 5), s(40)), mul(s(2), td)):
            return Verdict(True, "3.11(ii)")
        if q % 5 == 0 and g == neg(mul(s(2), td)):
            return Verdict(True, "3.11(iii)")
        return Verdict(False, "none")

    if tid == "3.12":
        if td == 0:
            return Verdict(True, "3.12(i)")
        if q % 5 != 1 and g == sub(div(powe(td, 5), s(4)), mul(s(2), td)):
            return Verdict(True, "3.12(ii)")
        if q % 5 == 0 and _fourth_or_not_square(
            B, div(add(add(powe(td, 5), mul(s(2), td)), g), td)
        ):
            return Verdict(True, "3.12(iii)")
        if q == 9 and g in (powe(td, 5), sub(powe(td, 5), td)):
            return Verdict(True, "3.12(iv)")
        return Verdict(False, "none")

    if tid == "3.13":
        if i is None:
            raise MissingParam("theorem 3.13 requires i")
        if not 1 <= i < B.m:
            return Verdict(False, "none", "hypothesis-violated: i out of [1, m)")
        if td == 0:
            return Verdict(False, "none")
        # the z-part a*(u^{k/2} z^{k+1 ... } ...) is additive; it permutes iff
        # (a^2/u)^{k/2} has no root of index k = p^i - 1 in F_q*
        k = B.p**i - 1
        w = powe(div(mul(a, a), tower.u), k // 2)
        solvable = powe(w, (q - 1) // math.gcd(k, q - 1)) == 1
        return Verdict(not solvable, "3.13" if not solvable else "none")

    if tid == "3.14":
        if q % 3 == 0:
            return Verdict(True, "3.14(a)")
        if q % 3 == 2 and td == 0:
            return Verdict(True, "3.14(b)")
        return Verdict(False, "none")

    if tid == "3.15":
        if q % 5 == 0:
            return Verdict(True, "3.15(a)")
        if q % 5 in (2, 3, 4) and td == 0:
            return Verdict(True, "3.15(b)")
        return Verdict(False, "none")

    if tid == "3.16":
        return Verdict(
            q % 5 == 0 and td != 0, "3.16" if (q % 5 == 0 and td != 0) else "none"
        )

    if tid == "3.17":
        if q % 3 == 0 and td != s(2):
            return Verdict(True, "3.17(a)")
        if q % 3 == 2 and td == 0:
            return Verdict(True, "3.17(b)")
        return Verdict(False, "none")

    if tid == "3.18":
        if q % 5 == 0 and td != s(-1):
            return Verdict(True, "3.18(a)")
        if q % 5 in (2, 3, 4) and td == 0:
            return Verdict(True, "3.18(b)")
        return Verdict(False, "none")

    raise UnknownTheorem(f"no predicate for theorem {tid!r}")


def _predict_319(tower: TowerCtx, delta: int, gamma: int) -> Verdict:
    if tower.kind != "even":
        raise WrongCharacteristic("theorem 3.19 requires even characteristic")
    B = tower.base
    q = tower.q
    m_odd = B.m % 2 == 1
    u = tower.u
    a, b = tower.split(delta)
    c, d = tower.split(gamma)
    mul, add = B.mul, B.add
    b2 = mul(b, b)
    if d == 0:
        if b == 0 or b2 == c:
            return Verdict(True, "3.19(i)")
        return Verdict(False, "none")
    if c == 0:
        cond = add(add(mul(b2, u), b2), mul(d, u)) == 0
        return Verdict(cond and m_odd, "3.19(ii)" if (cond and m_odd) else "none")
    inner = add(
        mul(b2, add(add(c, d), mul(d, u))),
        add(add(mul(c, c), mul(c, d)), mul(mul(d, d), u)),
    )
    cond = add(mul(b2, mul(c, c)), mul(d, inner)) == 0
    return Verdict(cond and m_odd, "3.19(iii)" if (cond and m_odd) else "none")


def _predict_41(ctx: FieldCtx, gamma: int, d: int | None) -> Verdict:
    if not isinstance(ctx, FieldCtx) or ctx.p != 2:
        raise WrongCharacteristic("theorem 4.1 requires a flat even-char field")
    if d is None:
        raise MissingParam("theorem 4.1 requires d")
    if d % 2 == 0 or ctx.m % d != 0:
        raise MissingParam(f"d = {d} must be odd and divide m = {ctx.m}")
    m = ctx.m // d
    if m <= 1:
        return Verdict(False, "none", "hypothesis-violated: q = 2^m needs m > 1")
    q = 2**m
    if ctx.pow(gamma, q) != gamma:
        return Verdict(False, "none")
    for t in subfield_elements(ctx, q):
        v = ctx.add(ctx.mul(gamma, ctx.add(ctx.pow(t, 3), t)), 1)
        if v == 0:
            return Verdict(False, "none")
    return Verdict(True, "4.1")


def subfield_elements(ctx: FieldCtx, q: int) -> list[int]:
    """Encodings of the subfield of order q inside ctx."""
    return [x for x in range(ctx.q) if ctx.pow(x, q) == x]


def reduce_trace_composed(g_coeffs, field: FieldCtx, n: int) -> list[int]:
    """Coefficients Tr(a_i) of the reduced map h(x) = x + sum Tr(a_i) x^i.

    g_coeffs are the encodings of a_1..a_{q-1} in F_{q^n}; the returned
    encodings live in the subfield F_q of the same field.
    """
    if field.m % n != 0:
        raise ValueError(f"n = {n} does not divide m = {field.m}")
    q = field.p ** (field.m // n)
    if len(g_coeffs) != q - 1:
        raise ValueError("g_coeffs must be indexed 1..q-1 (reduce first)")
    out = []
    for a in g_coeffs:
        tr = 0
        power = a
        for _ in range(n):
            tr = field.add(tr, power)
            power = field.pow(power, q)
        out.append(tr)
    return out


def h_permutes_subfield(field: FieldCtx, q: int, h_coeffs) -> bool:
    """Does h(x) = x + sum h_coeffs[i-1] x^i permute the subfield of order q?"""
    S = subfield_elements(field, q)
    images = set()
    for x in S:
        acc = x
        tpow = 1
        for c in h_coeffs:
            tpow = field.mul(tpow, x)
            acc = field.add(acc, field.mul(c, tpow))
        images.add(acc)
    return len(images) == len(S)


def t319_subfield_h(tower: TowerCtx, delta: int, c: int) -> tuple[int, int, int]:
    """Coefficients (h0, h1, h2) of h(x) = h2 x^2 + h1 x + h0 over F_q with
    Tr(f(x)) = h(Tr(x)) for f = (x^q + x + delta)^{2q+1} + c*x, gamma = c in F_q."""
    if tower.kind != "even":
        raise WrongCharacteristic("the 3.19 trace diagram requires even characteristic")
    if not 0 <= c < tower.q:
        raise GammaNotInSubfield("gamma must be a base-field encoding")
    B = tower.base
    td = tower.trace(delta)
    nd = tower.norm(delta)  # delta^{q+1}
    h2 = td
    h1 = B.add(B.mul(td, td), c)
    h0 = B.mul(nd, td)
    return h0, h1, h2
