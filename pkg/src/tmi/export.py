"""File export: canonical JSON for complexes and OFF meshes for rendering.

The OFF export writes every vertex with a deterministic 3D projection of
its exponent vector (moment weights (j+1)^k, k = 1..3) and triangulates
each 2-cell by lexicographic pulling, so Figure-1 style pictures open in
any mesh viewer.  Vertex labels ride along as comments.
"""

from __future__ import annotations

import json

from tmi.complexes import Cell, LabeledComplex, boundary, complex_to_dict
from tmi.monomials import format_monomial


def pulling_triangulation(cell: Cell) -> list[tuple[tuple[int, ...], ...]]:
    """Triangulate a cell by pulling at its lexicographically least vertex:
    cone the least vertex over the triangulations of the facets that do not
    contain it.  Returns simplices as tuples of vertex transversals."""
    verts = sorted(cell.vertex_tuples())
    if len(verts) == cell.dim + 1:
        return [tuple(verts)]
    v0 = verts[0]
    out = []
    for inc in boundary(cell):
        if v0 in set(inc.facet.vertex_tuples()):
            continue
        for simp in pulling_triangulation(inc.facet):
            out.append((v0, *simp))
    return out


def project3(exps: tuple[int, ...]) -> tuple[float, float, float]:
    """Fixed generic linear projection R^m -> R^3."""
    coords = []
    for k in (1, 2, 3):
        coords.append(float(sum((j + 1) ** k * e for j, e in enumerate(exps))))
    return tuple(coords)


def write_off(x: LabeledComplex, path: str):
    """OFF mesh of the 2-skeleton (edges only when there are no 2-cells)."""
    cfg = x.cfg
    verts = x.vertices
    vindex = {tuple(v.variables): i for i, v in enumerate(verts)}
    faces: list[tuple[int, ...]] = []
    two_cells = x.cells_by_dim.get(2, ())
    if two_cells:
        for c in two_cells:
            for simp in pulling_triangulation(c):
                faces.append(tuple(vindex[vt] for vt in simp))
    else:
        for c in x.cells_by_dim.get(1, ()):
            vts = sorted(c.vertex_tuples())
            faces.append(tuple(vindex[vt] for vt in vts))
    lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
    for v in verts:
        xx, yy, zz = project3(v.label(cfg.m).exps)
        lines.append(f"{xx:.6f} {yy:.6f} {zz:.6f}  # {format_monomial(v.label(cfg.m), cfg)}")
    for f in faces:
        lines.append(f"{len(f)} " + " ".join(str(i) for i in f))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(x: LabeledComplex, path: str):
    with open(path, "w") as fh:
        json.dump(complex_to_dict(x), fh, indent=2, sort_keys=True)
        fh.write("\n")
