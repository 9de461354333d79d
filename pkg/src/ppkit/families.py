"""Polynomial families under study and their closed-form bivariate components.

Four family kinds are supported:

* delta_power        f(x) = sum_i (x^q - x + delta)^{s_i} + gamma * L(x)   over F_{q^2}, odd q
* even_delta_power   f(x) = sum_i (x^q + x + delta)^{s_i} + gamma * L(x)   over F_{q^2}, q = 2^m
* trace_form         f(x) = x + gamma * Tr(x^{q+1} + x^{2q+2})             over F_{q^d}, q = 2^m
* trace_composed     f(x) = x + g(Tr(x))                                    over F_{q^n}

Exponents are stored portably in terms of q: a pair (e_q, e_1) denotes
s = e_q * q + e_1, and ("ppow", i) denotes s = q + p^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ExponentOutOfRange,
    KindContextMismatch,
    UnknownTheorem,
)
from .gf import FieldCtx, FieldElem, trace_and_norm
from .tower import TowerCtx, TowerElem


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    terms: tuple = ()
    delta: int = 0
    gamma: int = 0
    linear_kind: str = "x"  # "x" | "xq_plus_x"
    d: int = 1  # trace_form: odd extension degree
    n: int = 2  # trace_composed: extension degree
    g_coeffs: tuple = ()  # trace_composed: a_1..a_{q-1} encodings in F_{q^n}

    def serialize(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [list(t) for t in self.terms],
            "delta": self.delta,
            "gamma": self.gamma,
            "linear_kind": self.linear_kind,
            "d": self.d,
            "n": self.n,
            "g_coeffs": list(self.g_coeffs),
        }


def instantiate_exponent(term, q: int, p: int) -> int:
    """Resolve a portable exponent spec at a concrete q."""
    if term[0] == "ppow":
        s = q + p ** term[1]
    else:
        e_q, e_1 = term
        s = e_q * q + e_1
    if s <= 0:
        raise ExponentOutOfRange(f"s = {s} must be positive")
    return s


def _subfield_order(ctx: FieldCtx, parts: int) -> int:
    if ctx.m % parts != 0:
        raise KindContextMismatch(
            f"extension degree {parts} does not divide m = {ctx.m}"
        )
    return ctx.p ** (ctx.m // parts)


def reduce_poly_coeffs(coeffs: dict[int, int], field_ctx: FieldCtx, q: int) -> list[int]:
    """Reduce {exponent: coeff} modulo x^q - x to coefficients indexed 1..q-1.

    A nonzero constant or x^0 term is not part of the contract and is
    rejected by construction (keys must be >= 1).
    """
    out = [0] * q  # index by exponent, slot 0 unused
    for e, c in coeffs.items():
        if e < 1:
            raise ValueError("exponents must be >= 1")
        r = e if e < q else (e - 1) % (q - 1) + 1
        out[r] = field_ctx.add(out[r], c)
    return out[1:]


def eval_family(spec: FamilySpec, ctx, x):
    """Exact evaluation of the family at a single point."""
    if spec.kind in ("delta_power", "even_delta_power"):
        if not isinstance(ctx, TowerCtx):
            raise KindContextMismatch("delta-power families need a TowerCtx")
        if spec.kind == "delta_power" and ctx.kind != "odd":
            raise KindContextMismatch("delta_power requires odd characteristic")
        if spec.kind == "even_delta_power" and ctx.kind != "even":
            raise KindContextMismatch("even_delta_power requires even characteristic")
        if isinstance(x, TowerElem):
            x = x.enc
        q = ctx.q
        xq = ctx.frob(x)
        if spec.kind == "delta_power":
            core = ctx.add(ctx.sub(xq, x), spec.delta)
        else:
            core = ctx.add(ctx.add(xq, x), spec.delta)
        acc = 0
        for term in spec.terms:
            s = instantiate_exponent(term, q, ctx.base.p)
            acc = ctx.add(acc, ctx.pow(core, s))
        lin = x if spec.linear_kind == "x" else ctx.add(xq, x)
        acc = ctx.add(acc, ctx.mul(spec.gamma, lin))
        return ctx.elem(acc)

    if spec.kind == "trace_form":
        if not isinstance(ctx, FieldCtx):
            raise KindContextMismatch("trace_form needs a flat FieldCtx")
        if spec.d % 2 == 0:
            raise ValueError("trace_form requires odd d")
        q = _subfield_order(ctx, spec.d)
        if isinstance(x, FieldElem):
            x = x.enc
        w = ctx.mul(ctx.pow(x, q), x)  # x^{q+1}
        t = ctx.add(w, ctx.mul(w, w))  # x^{q+1} + x^{2q+2}
        tr = 0
        power = t
        for _ in range(spec.d):
            tr = ctx.add(tr, power)
            power = ctx.pow(power, q)
        return ctx.elem(ctx.add(x, ctx.mul(spec.gamma, tr)))

    if spec.kind == "trace_composed":
        if not isinstance(ctx, FieldCtx):
            raise KindContextMismatch("trace_composed needs a flat FieldCtx")
        q = _subfield_order(ctx, spec.n)
        if len(spec.g_coeffs) != q - 1:
            raise ValueError("g_coeffs must have length q - 1 (reduce first)")
        if isinstance(x, FieldElem):
            x = x.enc
        tr = 0
        power = x
        for _ in range(spec.n):
            tr = ctx.add(tr, power)
            power = ctx.pow(power, q)
        acc = x
        tpow = 1
        for a_i in spec.g_coeffs:
            tpow = ctx.mul(tpow, tr)
            acc = ctx.add(acc, ctx.mul(a_i, tpow))
        return ctx.elem(acc)

    raise ValueError(f"unknown family kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# theorem registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremInfo:
    tid: str
    char: str  # "odd" | "even"
    kind: str
    terms: tuple
    linear_kind: str
    gamma_domain: str  # "Fq_star" | "Fq2_star" | "Fqd"
    needs_i: bool = False
    needs_d: bool = False
    has_closed_form: bool = False


THEOREMS: dict[str, TheoremInfo] = {
    t.tid: t
    for t in [
        TheoremInfo("3.1", "odd", "delta_power", ((1, 2),), "x", "Fq2_star", has_closed_form=True),
        TheoremInfo("3.2", "odd", "delta_power", ((0, 2),), "x", "Fq2_star"),
        TheoremInfo("3.3", "odd", "delta_power", ((2, 0),), "x", "Fq2_star"),
        TheoremInfo("3.4", "odd", "delta_power", ((1, 2), (2, 1)), "x", "Fq2_star", has_closed_form=True),
        TheoremInfo("3.5", "odd", "delta_power", ((1, 4), (0, 5)), "x", "Fq2_star", has_closed_form=True),
        TheoremInfo("3.6", "odd", "delta_power", ((2, 1), (3, 2)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.7", "odd", "delta_power", ((2, 3), (2, 0)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.8", "odd", "delta_power", ((2, 4), (1, 5)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.9", "odd", "delta_power", ((2, 4), (1, 0)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.10", "odd", "delta_power", ((2, 3), (5, 0)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.11", "odd", "delta_power", ((2, 4), (2, 0)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.12", "odd", "delta_power", ((1, 5), (2, 0)), "x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.13", "odd", "delta_power", (("ppow", None),), "xq_plus_x", "Fq_star", needs_i=True, has_closed_form=True),
        TheoremInfo("3.14", "odd", "delta_power", ((1, 2),), "xq_plus_x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.15", "odd", "delta_power", ((3, 2),), "xq_plus_x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.16", "odd", "delta_power", ((4, 2),), "xq_plus_x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.17", "odd", "delta_power", ((1, 3), (1, 2)), "xq_plus_x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.18", "odd", "delta_power", ((3, 2), (4, 2)), "xq_plus_x", "Fq_star", has_closed_form=True),
        TheoremInfo("3.19", "even", "even_delta_power", ((2, 1),), "x", "Fq2_star", has_closed_form=True),
        TheoremInfo("4.1", "even", "trace_form", (), "x", "Fqd", needs_d=True),
    ]
}


def theorem_info(tid: str) -> TheoremInfo:
    try:
        return THEOREMS[tid]
    except KeyError:
        raise UnknownTheorem(f"no theorem {tid!r}") from None


def family_for_theorem(
    tid: str, delta: int, gamma: int, i: int | None = None, d: int | None = None
) -> FamilySpec:
    """Instantiate the theorem's family with encoded parameters."""
    info = theorem_info(tid)
    terms = info.terms
    if info.needs_i:
        if i is None:
            raise ValueError(f"theorem {tid} requires parameter i")
        terms = tuple(("ppow", i) if t[0] == "ppow" else t for t in terms)
    if info.kind == "trace_form":
        if d is None:
            raise ValueError(f"theorem {tid} requires parameter d")
        return FamilySpec(kind="trace_form", gamma=gamma, d=d)
    return FamilySpec(
        kind=info.kind,
        terms=terms,
        delta=delta,
        gamma=gamma,
        linear_kind=info.linear_kind,
    )


# ---------------------------------------------------------------------------
# closed-form component tables
# ---------------------------------------------------------------------------

class ComponentTable:
    """Bivariate component pair (g1, g2) over F_q, constants excluded.

    Coefficients are keyed by (deg_y, deg_z).  Equality is decided on the
    full value table, which sidesteps z-degree aliasing at small q.
    """

    def __init__(self, base: FieldCtx, g1: dict, g2: dict):
        self.base = base
        self.g1 = {k: v for k, v in g1.items() if v != 0}
        self.g2 = {k: v for k, v in g2.items() if v != 0}

    def eval(self, which: int, y: int, z: int) -> int:
        b = self.base
        coeffs = self.g1 if which == 1 else self.g2
        acc = 0
        for (dy, dz), c in coeffs.items():
            term = b.mul(c, b.mul(b.pow(y, dy), b.pow(z, dz)))
            acc = b.add(acc, term)
        return acc

    def value_tables(self):
        q = self.base.q
        return (
            [[self.eval(1, y, z) for z in range(q)] for y in range(q)],
            [[self.eval(2, y, z) for z in range(q)] for y in range(q)],
        )

    def serialize(self) -> dict:
        return {
            "g1": [[dy, dz, c] for (dy, dz), c in sorted(self.g1.items())],
            "g2": [[dy, dz, c] for (dy, dz), c in sorted(self.g2.items())],
        }

    def same_values(self, other: "ComponentTable") -> bool:
        return self.value_tables() == other.value_tables()


def closed_form_components(
    tid: str, tower: TowerCtx, delta: TowerElem, gamma: TowerElem, i: int | None = None
) -> ComponentTable:
    """The theorem's closed-form component pair (g1, g2), constants dropped.

    Coordinate conventions: delta = a + b*alpha, gamma = c + d*alpha,
    with alpha^2 = u (odd) or alpha^2 = alpha + u (even).
    """
    info = theorem_info(tid)
    if not info.has_closed_form:
        raise UnknownTheorem(f"theorem {tid} has no closed-form component pair")
    if (tower.kind == "odd") != (info.char == "odd"):
        raise KindContextMismatch(f"theorem {tid} needs {info.char} characteristic")
    B = tower.base
    u = tower.u
    a, b = tower.split(delta.enc)
    c, d = tower.split(gamma.enc)

    def s(n: int) -> int:  # small integer constant in F_q
        return B.scalar(n)

    def m(*xs) -> int:
        acc = 1
        for x in xs:
            acc = B.mul(acc, x)
        return acc

    def ad(*xs) -> int:
        acc = 0
        for x in xs:
            acc = B.add(acc, x)
        return acc

    neg = B.neg
    half = B.inv(s(2)) if B.p != 2 else None
    ap = lambda k: B.pow(a, k)
    up = lambda k: B.pow(u, k)

    if info.gamma_domain == "Fq_star" and d != 0:
        raise KindContextMismatch(f"theorem {tid} requires gamma in F_q")
    g = c  # the gamma-in-F_q theorems use a scalar gamma throughout

    if tid == "3.1":
        g1 = {(1, 0): c, (0, 2): neg(m(u, a)), (0, 1): neg(m(u, d, half))}
        g2 = {(1, 0): d, (0, 3): neg(u), (0, 1): B.sub(ap(2), m(c, half))}
    elif tid == "3.4":
        g1 = {(1, 0): c, (0, 2): neg(m(s(2), a, u)), (0, 1): neg(m(u, d, half))}
        g2 = {(1, 0): d, (0, 1): neg(m(c, half))}
    elif tid == "3.5":
        g1 = {
            (1, 0): c,
            (0, 4): m(s(2), a, up(2)),
            (0, 2): m(s(12), ap(3), u),
            (0, 1): neg(m(u, d, half)),
        }
        g2 = {
            (1, 0): d,
            (0, 3): m(s(8), ap(2), u),
            (0, 1): B.sub(m(s(8), ap(4)), m(c, half)),
        }
    elif tid == "3.6":
        w = ad(m(s(2), ap(2)), s(1))  # 2a^2 + 1
        g1 = {(1, 0): g, (0, 4): m(a, up(2)), (0, 2): neg(m(a, u, w))}
        g2 = {
            (0, 5): neg(up(2)),
            (0, 3): m(w, u),
            (0, 1): neg(ad(ap(4), ap(2), m(g, half))),
        }
    elif tid == "3.7":
        g1 = {
            (1, 0): g,
            (0, 4): m(a, up(2)),
            (0, 2): m(B.sub(s(1), m(s(2), ap(3))), u),
        }
        g2 = {
            (0, 5): up(2),
            (0, 3): neg(m(s(2), u, ap(2))),
            (0, 1): B.sub(B.sub(ap(4), m(s(2), a)), m(g, half)),
        }
    elif tid == "3.8":
        g1 = {(1, 0): g, (0, 4): neg(m(s(6), ap(2), up(2))), (0, 2): m(s(4), ap(4), u)}
        g2 = {
            (0, 5): neg(m(s(2), a, up(2))),
            (0, 3): neg(m(s(4), ap(3), u)),
            (0, 1): B.sub(m(s(6), ap(5)), m(g, half)),
        }
    elif tid == "3.9":
        g1 = {
            (1, 0): g,
            (0, 6): up(3),
            (0, 4): neg(m(ap(2), up(2))),
            (0, 2): neg(m(ap(4), u)),
        }
        g2 = {
            (0, 5): m(s(2), a, up(2)),
            (0, 3): neg(m(s(4), ap(3), u)),
            (0, 1): B.sub(B.sub(m(s(2), ap(5)), s(1)), m(g, half)),
        }
    elif tid == "3.10":
        g1 = {(1, 0): g, (0, 4): m(s(6), a, up(2)), (0, 2): m(s(8), ap(3), u)}
        g2 = {
            (0, 3): neg(m(s(12), ap(2), u)),
            (0, 1): neg(ad(m(s(4), ap(4)), m(g, half))),
        }
    elif tid == "3.11":
        g1 = {
            (1, 0): g,
            (0, 6): up(3),
            (0, 4): neg(m(ap(2), up(2))),
            (0, 2): m(B.sub(s(1), ap(4)), u),
        }
        g2 = {
            (0, 5): m(s(2), a, up(2)),
            (0, 3): neg(m(s(4), ap(3), u)),
            (0, 1): B.sub(B.sub(m(s(2), ap(5)), m(s(2), a)), m(g, half)),
        }
    elif tid == "3.12":
        g1 = {
            (1, 0): g,
            (0, 6): neg(up(3)),
            (0, 4): neg(m(s(5), ap(2), up(2))),
            (0, 2): m(ad(m(s(5), ap(4)), s(1)), u),
        }
        g2 = {
            (0, 5): neg(m(s(4), a, up(2))),
            (0, 1): B.sub(B.sub(m(s(4), ap(5)), m(s(2), a)), m(g, half)),
        }
    elif tid == "3.13":
        if i is None:
            raise ValueError("theorem 3.13 needs parameter i")
        pi = B.p**i
        g1 = {(1, 0): m(s(2), g), (0, pi + 1): neg(B.pow(u, (pi + 1) // 2))}
        g2 = {(0, pi): m(a, B.pow(u, (pi - 1) // 2)), (0, 1): neg(ap(pi))}
    elif tid == "3.14":
        g1 = {(1, 0): m(s(2), g), (0, 2): neg(m(a, u))}
        g2 = {(0, 3): neg(u), (0, 1): ap(2)}
    elif tid == "3.15":
        g1 = {(1, 0): m(s(2), g), (0, 4): m(a, up(2)), (0, 2): neg(m(s(2), ap(3), u))}
        g2 = {(0, 5): neg(up(2)), (0, 3): m(s(2), ap(2), u), (0, 1): neg(ap(4))}
    elif tid == "3.16":
        g1 = {
            (1, 0): m(s(2), g),
            (0, 6): up(3),
            (0, 4): neg(m(ap(2), up(2))),
            (0, 2): neg(m(ap(4), u)),
        }
        g2 = {
            (0, 5): neg(m(s(2), a, up(2))),
            (0, 3): m(s(4), ap(3), u),
            (0, 1): neg(m(s(2), ap(5))),
        }
    elif tid == "3.17":
        w = ad(m(s(2), a), s(1))  # 2a + 1
        g1 = {(1, 0): m(s(2), g), (0, 4): neg(up(2)), (0, 2): neg(m(a, u))}
        g2 = {(0, 3): neg(m(w, u)), (0, 1): m(w, ap(2))}
    elif tid == "3.18":
        w = ad(m(s(2), a), s(1))
        g1 = {
            (1, 0): m(s(2), g),
            (0, 6): up(3),
            (0, 4): m(a, up(2), B.sub(s(1), a)),
            (0, 2): neg(m(ap(3), u, ad(a, s(2)))),
        }
        g2 = {
            (0, 5): neg(m(w, up(2))),
            (0, 3): m(s(2), ap(2), w, u),
            (0, 1): neg(m(w, ap(4))),
        }
    elif tid == "3.19":
        g1 = {
            (1, 0): c,
            (0, 3): s(1),
            (0, 1): ad(m(b, b, u), m(b, b), m(d, u)),
        }
        g2 = {(1, 0): d, (0, 2): b, (0, 1): ad(m(b, b), c, d)}
    else:
        raise UnknownTheorem(f"no closed form wired for {tid}")

    return ComponentTable(B, g1, g2)
