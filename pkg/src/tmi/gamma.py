"""Builders for the polytopal complex supporting the minimal resolution of
a transversal ideal.

The main builder follows the recursion

    G(n, t) = union over i = t-1 .. n-1 of  G(i, t-1) x simplex(blocks i+1..n)

with base case G(k, 1) = the full simplex on the variables of the first k
blocks.  Unwinding the recursion gives a closed form: one maximal cell per
way of cutting the block line 1..n into t consecutive nonempty intervals,
namely the product of the full simplices on the intervals.  Both builders
are implemented and must agree cell-for-cell; the closed form is the
cross-check.
"""

from __future__ import annotations

import itertools
from functools import reduce

from tmi.complexes import Cell, LabeledComplex, glue, product, simplex
from tmi.monomials import BlockConfig, ParameterError


def _block_range_vars(cfg: BlockConfig, lo: int, hi: int) -> list[int]:
    """Flat variables of blocks lo..hi (1-based, inclusive)."""
    return [v for j in range(lo, hi + 1) for v in cfg.block_vars(j)]


def _gamma(cfg: BlockConfig, s: int, t: int, memo: dict) -> LabeledComplex:
    """The complex for degree t on the first s blocks, over cfg's variables."""
    key = (s, t)
    if key in memo:
        return memo[key]
    if t == 1:
        out = simplex(cfg, _block_range_vars(cfg, 1, s))
    else:
        pieces = []
        for i in range(t - 1, s):
            left = _gamma(cfg, i, t - 1, memo)
            right = simplex(cfg, _block_range_vars(cfg, i + 1, s))
            pieces.append(product(left, right))
        out = reduce(glue, pieces)
    memo[key] = out
    return out


def gamma(cfg: BlockConfig, validate: bool = True) -> LabeledComplex:
    """The recursive construction; vertices biject with the transversal
    generators via labels."""
    out = _gamma(cfg, cfg.n, cfg.t, {})
    if validate:
        return LabeledComplex(cfg, out.arity, out.cells)
    return out


def gamma_prefix(cfg: BlockConfig, s: int, t: int | None = None) -> LabeledComplex:
    """The sub-build on the first s blocks (degree t, default cfg.t),
    embedded in cfg's full variable universe.  Used for the nesting and
    intersection identities."""
    t = cfg.t if t is None else t
    if not (1 <= t <= s <= cfg.n):
        raise ParameterError(f"need 1 <= t <= s <= n, got s={s}, t={t}")
    return _gamma(cfg, s, t, {})


def gamma_prefixes(cfg: BlockConfig) -> dict[int, LabeledComplex]:
    """All prefix builds {s: complex on first s blocks} for s = t..n,
    sharing one memo (the recursion re-enters the same subcomplexes)."""
    memo: dict = {}
    return {s: _gamma(cfg, s, cfg.t, memo) for s in range(cfg.t, cfg.n + 1)}


def gamma_full(cfg: BlockConfig) -> LabeledComplex:
    """The t = n case: the plain product of the block simplices."""
    if cfg.t != cfg.n:
        raise ParameterError(f"gamma_full needs t = n, got t={cfg.t}, n={cfg.n}")
    pieces = [simplex(cfg, cfg.block_vars(j)) for j in range(1, cfg.n + 1)]
    return reduce(product, pieces)


def gamma_nminus1(cfg: BlockConfig) -> LabeledComplex:
    """The t = n-1 case, as the explicit union of the n-1 products in which
    two adjacent block simplices are merged into one."""
    if cfg.t != cfg.n - 1:
        raise ParameterError(f"gamma_nminus1 needs t = n-1, got t={cfg.t}, n={cfg.n}")
    pieces = []
    for i in range(1, cfg.n):
        factors = []
        j = 1
        while j <= cfg.n:
            if j == i:
                factors.append(simplex(cfg, _block_range_vars(cfg, i, i + 1)))
                j += 2
            else:
                factors.append(simplex(cfg, cfg.block_vars(j)))
                j += 1
        pieces.append(reduce(product, factors))
    return reduce(glue, pieces)


def gamma_closed(cfg: BlockConfig) -> LabeledComplex:
    """Closed form: face closure of one product of simplices per interval
    composition of the blocks into t consecutive nonempty runs."""
    n, t = cfg.n, cfg.t
    cells: set[Cell] = set()
    for cuts in itertools.combinations(range(1, n), t - 1):
        bounds = (0, *cuts, n)
        interval_vars = [
            tuple(_block_range_vars(cfg, lo + 1, hi)) for lo, hi in zip(bounds, bounds[1:])
        ]
        factor_choices = [
            [tuple(s) for k in range(1, len(vs) + 1) for s in itertools.combinations(vs, k)]
            for vs in interval_vars
        ]
        for combo in itertools.product(*factor_choices):
            cells.add(Cell(combo))
    return LabeledComplex(cfg, t, cells, validate=False)
