"""Labeled polytopal cell complexes whose cells are products of simplices.

A cell is an ordered tuple of nonempty variable sets (factors), pairwise
block-separated: every block index appearing in factor i is strictly less
than every block index in factor i+1.  Such a cell is a face of a product
of simplices; its vertices are the transversals picking one variable per
factor, and its label is the squarefree product of all its variables.
This encoding is canonical (a cell is determined by its vertex set), which
makes gluing a plain set union.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from tmi.gf import rank_int_exact
from tmi.monomials import BlockConfig, Monomial, ParameterError


@dataclass(frozen=True)
class Cell:
    """A face of a product of simplices, as a tuple of sorted variable sets."""

    factors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(tuple(f) for f in self.factors))

    @property
    def arity(self) -> int:
        return len(self.factors)

    @property
    def dim(self) -> int:
        return sum(len(f) - 1 for f in self.factors)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for f in self.factors for v in f)

    @property
    def var_mask(self) -> int:
        m = 0
        for f in self.factors:
            for v in f:
                m |= 1 << v
        return m

    def label(self, nvars: int) -> Monomial:
        """Squarefree monomial on all variables of the cell."""
        return Monomial.from_vars(nvars, self.variables)

    def vertex_tuples(self) -> Iterator[tuple[int, ...]]:
        """All vertices, as transversals picking one variable per factor."""
        return itertools.product(*self.factors)

    def vertex_cells(self) -> Iterator["Cell"]:
        for vt in self.vertex_tuples():
            yield Cell(tuple((v,) for v in vt))

    def is_face_of(self, other: "Cell") -> bool:
        return self.arity == other.arity and all(
            set(f) <= set(g) for f, g in zip(self.factors, other.factors)
        )

    def __str__(self) -> str:
        return "x".join("{" + ",".join(str(v) for v in f) + "}" for f in self.factors)


def cell_from_vertices(vertex_tuples: Iterable[tuple[int, ...]]) -> Cell:
    """Reconstruct the unique cell whose vertex set is the given transversals.

    Raises if the tuples are not exactly the product of their coordinate
    sets (canonical-form check).
    """
    vts = set(tuple(v) for v in vertex_tuples)
    if not vts:
        raise ParameterError("empty vertex set")
    arities = {len(v) for v in vts}
    if len(arities) != 1:
        raise ParameterError("mixed arity vertex tuples")
    k = arities.pop()
    factors = tuple(tuple(sorted({vt[i] for vt in vts})) for i in range(k))
    cell = Cell(factors)
    if set(cell.vertex_tuples()) != vts:
        raise ParameterError("vertex set is not the vertex set of a product cell")
    return cell


@dataclass(frozen=True)
class IncidencePair:
    """A cell, one of its codimension-1 faces, and the incidence sign."""

    cell: Cell
    facet: Cell
    sign: int


def boundary(cell: Cell) -> list[IncidencePair]:
    """All codimension-1 faces with the tensor-product incidence signs.

    Deleting the p-th variable (0-based) of factor l carries the sign
    (-1)**(p + sum of dims of the factors before l); this is the Koszul
    sign rule, and it makes the boundary square to zero.
    """
    out = []
    prefix_dim = 0
    for l, f in enumerate(cell.factors):
        if len(f) >= 2:
            for p in range(len(f)):
                facet = Cell(cell.factors[:l] + (f[:p] + f[p + 1 :],) + cell.factors[l + 1 :])
                out.append(IncidencePair(cell, facet, (-1) ** (p + prefix_dim)))
        prefix_dim += len(f) - 1
    return out


class LabeledComplex:
    """A face-closed set of cells of common arity over one block config.

    Vertex labels are the monomials of the resolved ideal; every face is
    labeled by the product of its variables.  Instances are immutable:
    treat all attributes as read-only.
    """

    __slots__ = ("cfg", "arity", "cells", "__dict__")

    def __init__(self, cfg: BlockConfig, arity: int, cells: Iterable[Cell], validate: bool = True):
        self.cfg = cfg
        self.arity = arity
        self.cells = frozenset(cells)
        if validate:
            self._validate()

    def _validate(self):
        cfg = self.cfg
        for cell in self.cells:
            if cell.arity != self.arity:
                raise ParameterError(f"cell {cell} has arity {cell.arity}, complex has {self.arity}")
            prev_block = 0
            for f in cell.factors:
                if not f:
                    raise ParameterError(f"empty factor in {cell}")
                if list(f) != sorted(set(f)):
                    raise ParameterError(f"factor not sorted/distinct in {cell}")
                blocks = [cfg.block_of(v) for v in f]
                if min(blocks) <= prev_block:
                    raise ParameterError(f"cell {cell} is not block-separated")
                prev_block = max(blocks)
        # face closure
        for cell in self.cells:
            for inc in boundary(cell):
                if inc.facet not in self.cells:
                    raise ParameterError(f"complex not face-closed: {cell} is missing facet {inc.facet}")
        # distinct vertex labels (automatic for block-separated cells; checked anyway)
        masks = [c.var_mask for c in self.cells if c.dim == 0]
        if len(set(masks)) != len(masks):
            raise ParameterError("duplicate vertex labels")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledComplex)
            and self.arity == other.arity
            and self.cells == other.cells
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def __repr__(self) -> str:
        return f"LabeledComplex(arity={self.arity}, f={self.f_vector()})"

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @cached_property
    def cells_sorted(self) -> tuple[Cell, ...]:
        """Cells in the canonical deterministic order: by dimension, then factors."""
        return tuple(sorted(self.cells, key=lambda c: (c.dim, c.factors)))

    @cached_property
    def cells_by_dim(self) -> dict[int, tuple[Cell, ...]]:
        out: dict[int, list[Cell]] = {}
        for c in self.cells_sorted:
            out.setdefault(c.dim, []).append(c)
        return {d: tuple(cs) for d, cs in out.items()}

    @property
    def dim(self) -> int:
        return max(self.cells_by_dim) if self.cells else -1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.cells_by_dim.get(d, ())) for d in range(self.dim + 1))

    @cached_property
    def vertices(self) -> tuple[Cell, ...]:
        return self.cells_by_dim.get(0, ())

    def vertex_labels(self) -> tuple[Monomial, ...]:
        return tuple(v.label(self.cfg.m) for v in self.vertices)

    def maximal_cells(self) -> tuple[Cell, ...]:
        """Cells that are not proper faces of another cell.

        In this encoding a proper face of a cell is always a facet of some
        cell one dimension up (insert one variable at a time), so marking
        facets suffices.
        """
        facets = set()
        for c in self.cells:
            for inc in boundary(c):
                facets.add(inc.facet)
        out = [c for c in self.cells if c not in facets]
        return tuple(sorted(out, key=lambda c: (c.dim, c.factors)))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * f for d, f in enumerate(self.f_vector()))


def simplex(cfg: BlockConfig, variables: Iterable[int]) -> LabeledComplex:
    """The full simplex on a variable set, as an arity-1 complex."""
    vs = sorted(set(variables))
    if not vs:
        raise ParameterError("simplex needs a nonempty variable set")
    cells = [Cell((tuple(s),)) for k in range(1, len(vs) + 1) for s in itertools.combinations(vs, k)]
    return LabeledComplex(cfg, 1, cells)


def product(x: LabeledComplex, y: LabeledComplex) -> LabeledComplex:
    """Cartesian product; factor tuples concatenate, labels multiply.

    Requires every block appearing in x to be strictly below every block
    in y, so the result is again block-separated.
    """
    if x.is_empty or y.is_empty:
        raise ParameterError("product of an empty complex")
    xblocks = {x.cfg.block_of(v) for c in x.cells for v in c.variables}
    yblocks = {y.cfg.block_of(v) for c in y.cells for v in c.variables}
    if max(xblocks) >= min(yblocks):
        raise ParameterError(f"interleaved blocks in product: {sorted(xblocks)} vs {sorted(yblocks)}")
    cells = [Cell(cx.factors + cy.factors) for cx in x.cells for cy in y.cells]
    return LabeledComplex(x.cfg, x.arity + y.arity, cells, validate=False)


def glue(x: LabeledComplex, y: LabeledComplex) -> LabeledComplex:
    """Union of cell sets; the canonical encoding identifies shared faces."""
    if x.arity != y.arity:
        raise ParameterError(f"arity mismatch in glue: {x.arity} vs {y.arity}")
    return LabeledComplex(x.cfg, x.arity, x.cells | y.cells, validate=False)


def intersection(x: LabeledComplex, y: LabeledComplex) -> LabeledComplex:
    """The intersection complex, the gluing lemma's hypothesis object."""
    if x.arity != y.arity:
        raise ParameterError(f"arity mismatch in intersection: {x.arity} vs {y.arity}")
    return LabeledComplex(x.cfg, x.arity, x.cells & y.cells, validate=False)


def restrict_below(x: LabeledComplex, b: Monomial) -> LabeledComplex:
    """Subcomplex of cells whose label divides b (face-closed by label
    monotonicity)."""
    if b.nvars != x.cfg.m:
        raise ParameterError("restriction degree over the wrong variable universe")
    mask = 0
    for v in b.support:
        mask |= 1 << v
    keep = [c for c in x.cells if c.var_mask & ~mask == 0]
    return LabeledComplex(x.cfg, x.arity, keep, validate=False)


def f_vector(x: LabeledComplex) -> tuple[int, ...]:
    return x.f_vector()


def is_connected(x: LabeledComplex) -> bool:
    """Connectivity of the 1-skeleton (an empty complex counts as connected)."""
    verts = x.vertices
    if len(verts) <= 1:
        return True
    index = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in x.cells_by_dim.get(1, ()):
        vs = [Cell(tuple((u,) for u in vt)) for vt in c.vertex_tuples()]
        a, b = find(index[vs[0]]), find(index[vs[1]])
        parent[a] = b
    return len({find(i) for i in range(len(verts))}) == 1


def is_subcomplex(inner: LabeledComplex, outer: LabeledComplex) -> bool:
    """Cell-set inclusion (labels and incidences come along for free)."""
    return inner.arity == outer.arity and inner.cells <= outer.cells


def geometric_realization(x: LabeledComplex, check: bool = True) -> dict[Cell, list[tuple[int, ...]]]:
    """Vertex coordinates of every cell: each vertex maps to its label's
    exponent vector in R^m.

    With ``check``, verifies that the affine dimension of every cell's
    vertex set equals its combinatorial dimension (exact integer rank).
    """
    m = x.cfg.m
    out: dict[Cell, list[tuple[int, ...]]] = {}
    for c in x.cells_sorted:
        coords = []
        for vt in c.vertex_tuples():
            e = [0] * m
            for v in vt:
                e[v] = 1
            coords.append(tuple(e))
        out[c] = coords
        if check:
            base = coords[0]
            diffs = [[a - b for a, b in zip(p, base)] for p in coords[1:]]
            affine = rank_int_exact(diffs) if diffs else 0
            if affine != c.dim:
                raise ParameterError(f"cell {c}: affine dim {affine} != combinatorial dim {c.dim}")
    return out


def complex_to_dict(x: LabeledComplex) -> dict:
    """JSON form: {config, arity, cells:[{factors, dim, label}]} with
    variables as "block.index" strings."""
    cfg = x.cfg

    def vid(v: int) -> str:
        w = cfg.var_id(v)
        return f"{w.block}.{w.index}"

    cells = [
        {
            "factors": [[vid(v) for v in f] for f in c.factors],
            "dim": c.dim,
            "label": "*".join(f"x[{cfg.var_id(v).block},{cfg.var_id(v).index}]" for v in c.variables),
        }
        for c in x.cells_sorted
    ]
    return {"config": cfg.to_dict(), "arity": x.arity, "cells": cells}


def complex_from_dict(d: dict) -> LabeledComplex:
    cfg = BlockConfig.from_dict(d["config"])

    def flat(s: str) -> int:
        block, index = s.split(".")
        from tmi.monomials import VarId

        return cfg.flat(VarId(int(block), int(index)))

    cells = [Cell(tuple(tuple(sorted(flat(v) for v in f)) for f in c["factors"])) for c in d["cells"]]
    return LabeledComplex(cfg, int(d["arity"]), cells)
