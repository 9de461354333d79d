"""Direction sets of maps on a finite field and their complement under
linear perturbation.

For f: F -> F the direction set D(f) collects every difference quotient
(f(x) - f(y)) / (x - y) over distinct x, y.  P(f) collects the slopes gamma
for which f(x) + gamma*x still permutes F.  The two are complementary up to
sign: m is a direction of f exactly when -m is not in P(f), so
|D(f)| + |P(f)| = |F|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainTooLarge
from .gf import FieldCtx
from .tower import TowerCtx

MAX_DIRECTION_FIELD = 2**12


def _ops(ctx):
    """Uniform encoding-level ops for FieldCtx and TowerCtx."""
    if isinstance(ctx, TowerCtx):
        return ctx.order, ctx.add, ctx.sub, ctx.mul, ctx.inv, ctx.neg
    return ctx.q, ctx.add, ctx.sub, ctx.mul, ctx.inv, ctx.neg


def direction_set(
    f: Callable[[int], int], ctx, restrict_to_base: bool = False
) -> set[int]:
    """All difference quotients of f; O(|F|^2) so the field size is capped.

    With restrict_to_base (tower contexts only) the denominators x - y are
    limited to the base field, giving the direction set of f along F_q lines.
    """
    size, add, sub, mul, inv, neg = _ops(ctx)
    if size > MAX_DIRECTION_FIELD:
        raise DomainTooLarge(f"|F| = {size} exceeds {MAX_DIRECTION_FIELD}")
    images = [f(x) for x in range(size)]
    out: set[int] = set()
    if restrict_to_base:
        if not isinstance(ctx, TowerCtx):
            raise DomainTooLarge("restrict_to_base needs a tower context")
        diffs = [ctx.embed(h) for h in range(1, ctx.q)]
        for x in range(size):
            for h in diffs:
                xa = add(x, h)
                out.add(mul(sub(images[xa], images[x]), inv(h)))
        return out
    for x in range(size):
        for h in range(1, size):
            xa = add(x, h)
            out.add(mul(sub(images[xa], images[x]), inv(h)))
    return out


def permuting_translate_set(f: Callable[[int], int], ctx) -> set[int]:
    """All gamma for which x -> f(x) + gamma*x permutes the field."""
    size, add, sub, mul, inv, neg = _ops(ctx)
    if size > MAX_DIRECTION_FIELD:
        raise DomainTooLarge(f"|F| = {size} exceeds {MAX_DIRECTION_FIELD}")
    images = [f(x) for x in range(size)]
    out: set[int] = set()
    for g in range(size):
        seen = bytearray(size)
        ok = True
        for x in range(size):
            y = add(images[x], mul(g, x))
            if seen[y]:
                ok = False
                break
            seen[y] = 1
        if ok:
            out.add(g)
    return out


@dataclass(frozen=True)
class DirectionReport:
    directions: frozenset[int]
    permuting: frozenset[int]
    complementary: bool  # m in D(f) <=> -m not in P(f)
    sizes_sum_to_field: bool


def check_complementarity(f: Callable[[int], int], ctx) -> DirectionReport:
    """Verify the direction/permuting-slope duality for f on the whole field."""
    size, add, sub, mul, inv, neg = _ops(ctx)
    D = direction_set(f, ctx)
    P = permuting_translate_set(f, ctx)
    comp = all((m in D) != (neg(m) in P) for m in range(size))
    return DirectionReport(
        frozenset(D), frozenset(P), comp, len(D) + len(P) == size
    )
