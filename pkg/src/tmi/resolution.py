"""From labeled complexes to graded free chain complexes, Betti tables, and
machine certificates.

The chain complex reads off a labeled complex in the usual way: one free
generator per cell in the cell's label degree, differential entries
sign * (label ratio).  Certification is three independent checks:

  * check_d2       - the differentials compose to zero, symbolically;
  * check_minimal  - no incident pair shares a label (no unit entries);
  * check_acyclic  - every restriction to a degree of the lcm lattice has
                     vanishing reduced homology over GF(p).

When all three pass, the cell counts per label are the minimal Betti
numbers of the resolved ideal, which is what betti_table returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tmi.complexes import Cell, LabeledComplex, boundary
from tmi.gf import DEFAULT_PRIME, PrimeFieldMatrix, rank_rational
from tmi.monomials import Monomial, MonomialIdeal, ParameterError, SizeCapError
from tmi.parallel import pmap, resolve_threads

HILBERT_GEN_CAP = 20


class MinimalityError(ValueError):
    """betti_table refused: the complex is not minimal, counts would lie."""


@dataclass(frozen=True)
class FreeGenerator:
    cell: Cell
    multidegree: Monomial
    degree: int


@dataclass(frozen=True)
class GradedFreeModule:
    """One free module of the cellular complex: a generator per cell of one
    dimension, in the cell's label degree."""

    generators: tuple[FreeGenerator, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)


class ChainComplex:
    """Modules F_0..F_d and sparse differentials F_k -> F_{k-1}.

    differentials[k] maps column j (a k-cell) to row i (a (k-1)-cell) with
    value (sign, monomial ratio); differentials[0] is empty.
    """

    __slots__ = ("modules", "differentials")

    def __init__(
        self,
        modules: tuple[GradedFreeModule, ...],
        differentials: tuple[dict[tuple[int, int], tuple[int, Monomial]], ...],
    ):
        if len(differentials) != len(modules):
            raise ParameterError("need one differential slot per module (slot 0 unused)")
        self.modules = modules
        self.differentials = differentials

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def ranks(self) -> tuple[int, ...]:
        return tuple(m.rank for m in self.modules)


def cellular_complex(x: LabeledComplex) -> ChainComplex:
    """Assemble the cellular chain complex of a labeled complex."""
    if x.is_empty:
        return ChainComplex((), ())
    nvars = x.cfg.m
    by_dim = x.cells_by_dim
    modules = []
    index: list[dict[Cell, int]] = []
    for d in range(x.dim + 1):
        cells = by_dim.get(d, ())
        gens = tuple(FreeGenerator(c, c.label(nvars), c.label(nvars).degree) for c in cells)
        modules.append(GradedFreeModule(gens))
        index.append({c: i for i, c in enumerate(cells)})
    diffs: list[dict[tuple[int, int], tuple[int, Monomial]]] = [{}]
    for d in range(1, x.dim + 1):
        mat: dict[tuple[int, int], tuple[int, Monomial]] = {}
        for j, c in enumerate(by_dim[d]):
            clabel = c.label(nvars)
            for inc in boundary(c):
                i = index[d - 1][inc.facet]
                ratio = clabel.quotient(inc.facet.label(nvars))
                mat[i, j] = (inc.sign, ratio)
        diffs.append(mat)
    return ChainComplex(tuple(modules), tuple(diffs))


@dataclass
class CheckReport:
    name: str
    ok: bool
    detail: str
    violations: list = field(default_factory=list)

    def summary(self) -> str:
        return f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({self.detail})"


def check_d2(c: ChainComplex) -> CheckReport:
    """Symbolic product of consecutive differentials must vanish entrywise
    (signs times monomial ratios, summed per entry)."""
    violations = []
    for k in range(2, len(c.modules)):
        by_col: dict[int, list[tuple[int, int, Monomial]]] = {}
        for (mid, col), (s1, mon1) in c.differentials[k].items():
            by_col.setdefault(col, []).append((mid, s1, mon1))
        by_mid: dict[int, list[tuple[int, int, Monomial]]] = {}
        for (row, mid), (s2, mon2) in c.differentials[k - 1].items():
            by_mid.setdefault(mid, []).append((row, s2, mon2))
        for col, ups in by_col.items():
            acc: dict[tuple[int, Monomial], int] = {}
            for mid, s1, mon1 in ups:
                for row, s2, mon2 in by_mid.get(mid, ()):
                    key = (row, mon1 * mon2)
                    acc[key] = acc.get(key, 0) + s1 * s2
            violations.extend((k, row, col, mon, v) for (row, mon), v in acc.items() if v)
    ok = not violations
    return CheckReport("d2", ok, "zero matrix" if ok else f"{len(violations)} nonzero entries", violations)


def unit_entries(c: ChainComplex) -> list[tuple[int, int, int]]:
    """Differential entries whose monomial part is 1 (minimality breakers)."""
    out = []
    for k in range(1, len(c.modules)):
        for (i, j), (_, mon) in c.differentials[k].items():
            if mon.degree == 0:
                out.append((k, i, j))
    return out


def check_minimal(x) -> CheckReport:
    """No incident codimension-1 pair may share a label.

    Accepts a LabeledComplex (scans incidences) or a ChainComplex (scans
    for unit entries in the differentials).
    """
    if isinstance(x, ChainComplex):
        bad = unit_entries(x)
        ok = not bad
        return CheckReport("minimal", ok, "no unit entries" if ok else f"{len(bad)} unit entries", bad)
    nvars = x.cfg.m
    bad = []
    for c in x.cells:
        if c.dim == 0:
            continue
        cdeg = c.label(nvars).degree
        for inc in boundary(c):
            if inc.facet.label(nvars).degree == cdeg:
                bad.append((c, inc.facet))
    ok = not bad
    return CheckReport("minimal", ok, "no label-equal incidences" if ok else f"{len(bad)} violating pairs", bad)


class BettiTable:
    """Multigraded Betti numbers with their total-degree coarsening."""

    __slots__ = ("nvars", "multigraded")

    def __init__(self, nvars: int, multigraded: dict[tuple[int, Monomial], int]):
        self.nvars = nvars
        self.multigraded = {k: int(v) for k, v in multigraded.items() if v}

    @property
    def graded(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (i, mono), v in self.multigraded.items():
            key = (i, mono.degree)
            out[key] = out.get(key, 0) + v
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.multigraded == other.multigraded

    def __hash__(self):
        return hash(frozenset(self.multigraded.items()))

    def max_index(self) -> int:
        return max((i for i, _ in self.multigraded), default=-1)

    def is_linear(self, t: int) -> bool:
        """True when beta_{i,j} = 0 unless j = i + t."""
        return all(mono.degree == i + t for (i, mono) in self.multigraded)

    def render(self) -> str:
        """Plain grid, rows = homological index i, columns = total degree j."""
        graded = self.graded
        if not graded:
            return "(zero table)"
        imax = max(i for i, _ in graded)
        jmin = min(j for _, j in graded)
        jmax = max(j for _, j in graded)
        width = max(len(str(v)) for v in graded.values())
        width = max(width, *(len(str(j)) for j in range(jmin, jmax + 1)), 1)
        head = "      " + " ".join(f"{j:>{width}}" for j in range(jmin, jmax + 1))
        lines = [head]
        for i in range(imax + 1):
            row = " ".join(
                f"{graded.get((i, j), 0) or '.':>{width}}" for j in range(jmin, jmax + 1)
            )
            lines.append(f"{i:>4}: {row}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        graded = {f"{i},{j}": v for (i, j), v in sorted(self.graded.items())}
        multi = {
            f"{i}|" + ",".join(str(e) for e in mono.exps): v
            for (i, mono), v in sorted(self.multigraded.items(), key=lambda kv: (kv[0][0], kv[0][1].exps))
        }
        return {"graded": graded, "multigraded": multi}


def betti_table(x: LabeledComplex) -> BettiTable:
    """Betti numbers read off a minimal complex: beta_{i,b} counts i-cells
    with label b.  Refuses when the minimality check fails."""
    report = check_minimal(x)
    if not report.ok:
        raise MinimalityError(f"complex is not minimal: {report.detail}; first pair {report.violations[0]}")
    nvars = x.cfg.m
    table: dict[tuple[int, Monomial], int] = {}
    for c in x.cells:
        key = (c.dim, c.label(nvars))
        table[key] = table.get(key, 0) + 1
    return BettiTable(nvars, table)


def _reduced_homology_dims(cells: list[Cell], p: int, rational: bool = False) -> dict[int, int]:
    """Reduced homology dimensions of a face-closed cell set (with the empty
    cell adjoined in dimension -1); monomial coefficients specialized to 1."""
    if not cells:
        return {}
    by_dim: dict[int, list[Cell]] = {}
    for c in cells:
        by_dim.setdefault(c.dim, []).append(c)
    for d in by_dim:
        by_dim[d].sort(key=lambda c: c.factors)
    top = max(by_dim)
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        cols = by_dim.get(d, [])
        rows = by_dim.get(d - 1, [])
        if d == 0:
            # augmentation: every vertex maps to the empty cell
            triples = [(0, j, 1) for j in range(len(cols))]
            nrows = 1
        else:
            rindex = {c: i for i, c in enumerate(rows)}
            triples = []
            for j, c in enumerate(cols):
                for inc in boundary(c):
                    triples.append((rindex[inc.facet], j, inc.sign))
            nrows = len(rows)
        if not cols or not nrows:
            ranks[d] = 0
        elif rational:
            ranks[d] = rank_rational(nrows, len(cols), triples)
        else:
            ranks[d] = PrimeFieldMatrix.from_triples(nrows, len(cols), triples, p).rank()
    dims: dict[int, int] = {}
    f = {d: len(by_dim.get(d, [])) for d in range(-1, top + 1)}
    f[-1] = 1
    for d in range(-1, top + 1):
        h = f[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            dims[d] = h
    return dims


def _homology_worker(args):
    key, cells, p, rational = args
    return key, _reduced_homology_dims(list(cells), p, rational)


def lcm_lattice_masks(x: LabeledComplex) -> list[int]:
    """Closure of the vertex label supports under union (pairwise lcm),
    as bitmasks, sorted."""
    labels = sorted({v.var_mask for v in x.vertices})
    lattice = set(labels)
    frontier = set(labels)
    while frontier:
        new = set()
        for a in frontier:
            for g in labels:
                u = a | g
                if u not in lattice:
                    lattice.add(u)
                    new.add(u)
        frontier = new
    return sorted(lattice)


def check_acyclic(
    x: LabeledComplex,
    p: int = DEFAULT_PRIME,
    rational: bool = False,
    threads: int | None = None,
) -> CheckReport:
    """Bayer-Sturmfels support criterion: for every degree b in the lcm
    lattice of the vertex labels, the subcomplex of cells with label
    dividing b has vanishing reduced homology.  Empty restrictions are
    skipped.  Restrictions that coincide after relabeling share one rank
    computation."""
    if x.is_empty:
        return CheckReport("acyclic", True, "empty complex, nothing to check")
    nvars = x.cfg.m
    masks = lcm_lattice_masks(x)
    cells = x.cells_sorted
    cell_masks = [c.var_mask for c in cells]

    degree_keys: list[tuple[int, tuple]] = []
    classes: dict[tuple, list[Cell]] = {}
    for mask in masks:
        restricted = [c for c, cm in zip(cells, cell_masks) if cm & ~mask == 0]
        if not restricted:
            continue
        bits = [v for v in range(nvars) if mask >> v & 1]
        relabel = {v: i for i, v in enumerate(bits)}
        key = tuple(
            sorted(tuple(tuple(relabel[v] for v in f) for f in c.factors) for c in restricted)
        )
        degree_keys.append((mask, key))
        if key not in classes:
            classes[key] = restricted

    items = [(key, tuple(cs), p, rational) for key, cs in classes.items()]
    results = dict(pmap(_homology_worker, items, resolve_threads(threads)))

    failures = []
    for mask, key in degree_keys:
        dims = results[key]
        if dims:
            mono = Monomial(tuple(1 if mask >> v & 1 else 0 for v in range(nvars)))
            failures.append((mono, dims))
    ok = not failures
    detail = (
        f"{len(degree_keys)} lattice degrees checked ({len(classes)} distinct restrictions), p={p}"
        if ok
        else f"nonvanishing reduced homology at {len(failures)} degrees, first {failures[0]}"
    )
    return CheckReport("acyclic", ok, detail, failures)


def hilbert_numerator_check(x: LabeledComplex, ideal: MonomialIdeal) -> CheckReport:
    """Euler characteristic consistency: the alternating label sum over the
    cells equals the inclusion-exclusion numerator of the ideal's Hilbert
    series, as exact multivariate polynomials."""
    if len(ideal.gens) > HILBERT_GEN_CAP:
        raise SizeCapError(
            f"hilbert_numerator_check is capped at {HILBERT_GEN_CAP} generators, got {len(ideal.gens)}"
        )
    if x.cfg.m != ideal.nvars:
        raise ParameterError("complex and ideal live over different variable universes")
    nvars = ideal.nvars
    lhs: dict[Monomial, int] = {}
    for c in x.cells:
        mono = c.label(nvars)
        coeff = lhs.get(mono, 0) + (-1) ** c.dim
        if coeff:
            lhs[mono] = coeff
        else:
            lhs.pop(mono, None)
    # product of (1 - x^g) over generators, multiplication folding by lcm
    poly: dict[Monomial, int] = {Monomial.one(nvars): 1}
    for g in ideal.gens:
        new = dict(poly)
        for mono, coeff in poly.items():
            key = mono.lcm(g)
            new[key] = new.get(key, 0) - coeff
        poly = {k: v for k, v in new.items() if v}
    rhs = {k: -v for k, v in poly.items()}
    one = Monomial.one(nvars)
    rhs[one] = rhs.get(one, 0) + 1
    rhs = {k: v for k, v in rhs.items() if v}
    diff = {}
    for k in set(lhs) | set(rhs):
        d = lhs.get(k, 0) - rhs.get(k, 0)
        if d:
            diff[k] = d
    ok = not diff
    return CheckReport(
        "hilbert",
        ok,
        "numerator identity holds" if ok else f"{len(diff)} mismatched terms",
        sorted(diff.items(), key=lambda kv: kv[0].exps),
    )
