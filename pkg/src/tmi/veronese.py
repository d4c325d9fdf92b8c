"""The squarefree Veronese case (all blocks of size one).

Here the complex subdivides a simplex and its underlying space is a closed
ball; veronese_checks verifies the machine-checkable consequences of that
(purity, ball-like homology, pseudomanifold counts, corner structure).
Full homeomorphism certification is out of scope.  The depolarization
bijection x_{i_1}..x_{i_t} -> y_{i_1} y_{i_2 - 1} .. y_{i_t - t + 1}
identifies the generators with the degree-t monomials in s = m - t + 1
variables; polarize is its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from tmi.complexes import Cell, LabeledComplex, boundary, is_connected
from tmi.gamma import gamma
from tmi.gf import DEFAULT_PRIME
from tmi.monomials import BlockConfig, Monomial, ParameterError
from tmi.resolution import _reduced_homology_dims


def depolarize(mono: Monomial) -> Monomial:
    """Map a squarefree degree-t monomial on x_1..x_m to a degree-t
    monomial on y_1..y_s, s = m - t + 1, by shifting the k-th smallest
    index down by k - 1."""
    if not mono.is_squarefree:
        raise ParameterError(f"depolarize needs a squarefree monomial, got exponents {mono.exps}")
    t = mono.degree
    if t < 1:
        raise ParameterError("depolarize needs a monomial of positive degree")
    m = mono.nvars
    s = m - t + 1
    exps = [0] * s
    for k, i in enumerate(mono.support):  # i is 0-based, k-th smallest
        shifted = i - k  # 0-based version of y_{i_k - (k-1)}
        if not (0 <= shifted < s):
            raise ParameterError(f"index {i + 1} out of range for degree {t} on {m} variables")
        exps[shifted] += 1
    return Monomial(tuple(exps))


def polarize(mono: Monomial) -> Monomial:
    """Inverse of depolarize: a degree-t monomial on y_1..y_s maps to the
    squarefree monomial on x_1..x_m, m = s + t - 1, whose k-th index is the
    k-th smallest y-index (with multiplicity) shifted up by k - 1."""
    t = mono.degree
    if t < 1:
        raise ParameterError("polarize needs a monomial of positive degree")
    s = mono.nvars
    m = s + t - 1
    exps = [0] * m
    for k, c in enumerate(mono.sort_key()):  # weakly increasing with multiplicity
        exps[c + k] += 1
    out = Monomial(tuple(exps))
    if not out.is_squarefree:
        raise AssertionError("polarize produced a non-squarefree monomial")
    return out


@dataclass
class VeroneseReport:
    m: int
    t: int
    f_vector: tuple[int, ...]
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def summary(self) -> str:
        lines = [f"veronese m={self.m} t={self.t}: f-vector {self.f_vector}"]
        for name, (ok, detail) in self.checks.items():
            lines.append(f"  {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        return "\n".join(lines)


def veronese_checks(m: int, t: int, p: int = DEFAULT_PRIME) -> VeroneseReport:
    """Necessary conditions for the subdivision-of-a-simplex picture, each
    reported pass/fail:

    purity, maximal cell count C(m-1, t-1), vanishing reduced homology of
    the whole complex with Euler characteristic 1, the pseudomanifold-with-
    boundary bound (each ridge in at most 2 maximal cells), vertex count
    C(m, t), and the m-t+1 consecutive-window corner generators each lying
    in exactly one maximal cell.
    """
    if not (1 <= t <= m):
        raise ParameterError(f"need 1 <= t <= m, got t={t}, m={m}")
    cfg = BlockConfig(m, t, (1,) * m)
    x = gamma(cfg)
    rep = VeroneseReport(m, t, x.f_vector())
    dim_expect = m - t
    maximal = x.maximal_cells()

    pure = all(c.dim == dim_expect for c in maximal)
    rep.checks["pure_dimension"] = (
        pure,
        f"all maximal cells have dim {dim_expect}" if pure else f"maximal dims {sorted({c.dim for c in maximal})}",
    )

    expect_max = comb(m - 1, t - 1)
    rep.checks["maximal_count"] = (
        len(maximal) == expect_max,
        f"{len(maximal)} maximal cells, expected C({m - 1},{t - 1}) = {expect_max}",
    )

    chi = x.euler_characteristic()
    hom = _reduced_homology_dims(list(x.cells), p)
    ball_like = chi == 1 and not hom
    rep.checks["acyclic_ball"] = (
        ball_like,
        f"chi = {chi}, reduced homology {'vanishes' if not hom else hom} (p={p})",
    )

    rep.checks["connected"] = (is_connected(x), "1-skeleton connected")

    if dim_expect >= 1:
        ridge_count: dict[Cell, int] = {}
        for big in maximal:
            seen = set()
            for inc in boundary(big):
                if inc.facet not in seen:
                    seen.add(inc.facet)
                    ridge_count[inc.facet] = ridge_count.get(inc.facet, 0) + 1
        worst = max(ridge_count.values(), default=0)
        rep.checks["pseudomanifold"] = (
            worst <= 2,
            f"every ridge lies in <= 2 maximal cells (max {worst})",
        )
    else:
        rep.checks["pseudomanifold"] = (True, "no ridges in dimension 0")

    expect_verts = comb(m, t)
    rep.checks["vertex_count"] = (
        len(x.vertices) == expect_verts,
        f"{len(x.vertices)} vertices, expected C({m},{t}) = {expect_verts}",
    )

    # corner generators: the consecutive windows x_i .. x_{i+t-1}
    windows = [Cell(tuple((v,) for v in range(i, i + t))) for i in range(m - t + 1)]
    present = all(w in x.cells for w in windows)
    in_one = all(sum(1 for big in maximal if w.is_face_of(big)) == 1 for w in windows)
    rep.checks["corners"] = (
        present and in_one,
        f"{len(windows)} window generators are vertices, each in exactly one maximal cell"
        if present and in_one
        else "window generator missing or shared between maximal cells",
    )
    return rep
