"""Multivariate component maps of univariate polynomials over F_{q^n}.

A univariate map f over F_{q^n} is turned into a component map
(f_1, ..., f_n) over F_q^n relative to chosen bases and invertible affine
twists; f permutes F_{q^n} exactly when the component map permutes F_q^n.
The bivariate (g1, g2) pair of the quadratic analysis is recovered
numerically by evaluating f along the proof substitution and interpolating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import DependentBasis, KindContextMismatch, SingularMatrix
from .families import ComponentTable, FamilySpec, eval_family
from .gf import FieldCtx, FieldElem
from .oracle import OracleReport, is_bijection, multivar_bijection
from .tower import TowerCtx, proof_substitution


def mat_inv(ctx: FieldCtx, M: list[list[int]]) -> list[list[int]]:
    """Inverse of a square matrix of encodings over ctx (Gauss-Jordan)."""
    n = len(M)
    aug = [list(row) + [1 if j == i else 0 for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = ctx.inv(aug[col][col])
        aug[col] = [ctx.mul(inv_p, v) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [
                    ctx.sub(v, ctx.mul(factor, w)) for v, w in zip(aug[r], aug[col])
                ]
    return [row[n:] for row in aug]


def mat_vec(ctx: FieldCtx, M, v):
    return [
        _dot(ctx, row, v)
        for row in M
    ]


def vec_mat(ctx: FieldCtx, v, M):
    n = len(M)
    return [_dot(ctx, v, [M[r][c] for r in range(n)]) for c in range(len(M[0]))]


def _dot(ctx: FieldCtx, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = ctx.add(acc, ctx.mul(x, y))
    return acc


@dataclass
class DecompositionConfig:
    """Bases and affine twists for the component construction over F_{p^n}/F_p."""

    field: FieldCtx  # the extension F_{p^n}
    in_basis: tuple[FieldElem, ...]
    out_basis: tuple[FieldElem, ...]
    A: list[list[int]] | None = None  # n x n over F_p, default identity
    B: list[list[int]] | None = None
    a_vec: tuple[int, ...] | None = None  # offsets over F_p, default zero
    b_vec: tuple[int, ...] | None = None
    c: int = 0  # constant absorbed before coordinates are read (Prop 2.2 form)

    def __post_init__(self):
        n = self.field.m
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if self.A is None:
            self.A = [row[:] for row in ident]
        if self.B is None:
            self.B = [row[:] for row in ident]
        if self.a_vec is None:
            self.a_vec = (0,) * n
        if self.b_vec is None:
            self.b_vec = (0,) * n
        prime = self.field.p
        pf = _prime_field(prime)
        self._pf = pf
        self._A_inv = mat_inv(pf, self.A)  # raises SingularMatrix if degenerate
        self._B_inv = mat_inv(pf, self.B)
        self._in_mat = _basis_matrix(self.field, self.in_basis)
        self._out_mat = _basis_matrix(self.field, self.out_basis)
        self._out_inv = mat_inv(pf, self._out_mat)


def _prime_field(p: int) -> FieldCtx:
    from .gf import build_field

    return build_field(p, 1)


def _basis_matrix(ctx: FieldCtx, basis) -> list[list[int]]:
    """Columns are the coefficient vectors of the basis elements."""
    n = ctx.m
    if len(basis) != n:
        raise DependentBasis(f"need {n} basis elements, got {len(basis)}")
    cols = [list(ctx.coeffs(b.enc)) for b in basis]
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    try:
        mat_inv(_prime_field(ctx.p), M)
    except SingularMatrix:
        raise DependentBasis("basis elements are linearly dependent") from None
    return M


def _from_coeffs(ctx: FieldCtx, coeffs) -> int:
    e = 0
    for c in reversed(coeffs):
        e = e * ctx.p + c
    return e


def component_map(
    f: Callable[[int], int], cfg: DecompositionConfig
) -> Callable[[tuple], tuple]:
    """The component map (f_1, ..., f_n): F_q^n -> F_q^n of f under cfg."""
    ctx = cfg.field
    pf = cfg._pf
    n = ctx.m

    def G(xs: tuple) -> tuple:
        shifted = [pf.add(x, a) for x, a in zip(xs, cfg.a_vec)]
        y = vec_mat(pf, shifted, cfg.A)  # (x + a) A
        x_coeffs = mat_vec(pf, cfg._in_mat, y)  # coordinates of sum y_i alpha_i
        x_enc = _from_coeffs(ctx, x_coeffs)
        fx = f(x_enc)
        fx = ctx.sub(fx, cfg.c)
        w = mat_vec(pf, cfg._out_inv, list(ctx.coeffs(fx)))  # coords in out basis
        comp = vec_mat(pf, w, cfg._B_inv)
        return tuple(pf.sub(v, b) for v, b in zip(comp, cfg.b_vec))

    return G


def verify_equivalence(
    f: Callable[[int], int], cfg: DecompositionConfig
) -> tuple[bool, bool, bool]:
    """Both sides of the equivalence: f permutes F_{q^n} iff G permutes F_q^n."""
    ctx = cfg.field
    f_is_pp = is_bijection(f, ctx.q).is_permutation
    G = component_map(f, cfg)
    components_permute = multivar_bijection(G, ctx.p, ctx.m).is_permutation
    return f_is_pp, components_permute, f_is_pp == components_permute


def lemma31_extract(spec: FamilySpec, tower: TowerCtx) -> ComponentTable:
    """Numerically extract (g1, g2) for a delta-power family.

    Evaluates f along the proof substitution x(y, z), reads {1, alpha}
    coordinates, interpolates both value tables over F_q x F_q, and drops the
    constant term.  Coefficients are reduced modulo y^q - y and z^q - z, so
    at small q high-degree terms fold down; comparisons should therefore run
    on value tables.
    """
    if spec.kind not in ("delta_power", "even_delta_power"):
        raise KindContextMismatch("extraction is defined for delta-power kinds")
    B = tower.base
    q = B.q
    delta = tower.elem(spec.delta)
    V1 = [[0] * q for _ in range(q)]
    V2 = [[0] * q for _ in range(q)]
    for y in range(q):
        for z in range(q):
            x = proof_substitution(tower, delta, B.elem(y), B.elem(z))
            v = eval_family(spec, tower, x)
            V1[y][z], V2[y][z] = tower.split(v.enc)
    g1 = _interp2d(B, V1)
    g2 = _interp2d(B, V2)
    g1.pop((0, 0), None)  # the constant of the decomposition, discarded
    g2.pop((0, 0), None)
    return ComponentTable(B, g1, g2)


def _interp2d(ctx: FieldCtx, V) -> dict:
    """Exact bivariate interpolation on all of F_q x F_q (reduced exponents)."""
    q = ctx.q
    W = [[ctx.pow(x, j) for j in range(q)] for x in range(q)]
    Winv = mat_inv(ctx, W)
    # C = Winv . V . Winv^T
    T = [[_dot(ctx, Winv[i], [V[k][zcol] for k in range(q)]) for zcol in range(q)] for i in range(q)]
    C = [[_dot(ctx, T[i], Winv[j]) for j in range(q)] for i in range(q)]
    return {(i, j): C[i][j] for i in range(q) for j in range(q) if C[i][j] != 0}
