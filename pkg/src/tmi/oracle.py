"""Ground truth, computed from the ideal alone.

Multigraded Betti numbers come from the upper Koszul simplicial complexes
K^b(I) = {S subset supp(b) : x^b / x_S in I}: beta_{i,b} is the reduced
(i-1)-homology dimension of K^b(I).  The sweep runs over all divisors of
the lcm of the generators, never touching any cell complex, so it is an
independent check of the whole resolution pipeline.  Matroid exchange
checks guard the combinatorial side.
"""

from __future__ import annotations

import itertools

import numpy as np

from tmi.gf import DEFAULT_PRIME, PrimeFieldMatrix, rank_rational
from tmi.monomials import Monomial, MonomialIdeal, ParameterError, SizeCapError
from tmi.parallel import pmap, resolve_threads
from tmi.resolution import BettiTable

ORACLE_VAR_CAP = 16
ORACLE_DEGREE_CAP = 1 << 16


def upper_koszul(ideal: MonomialIdeal, b: Monomial) -> frozenset[frozenset[int]]:
    """The simplicial complex {S subset supp(b) : x^b / x_S in I}.

    Void (no faces at all, not even the empty one) exactly when x^b is not
    in the ideal.
    """
    if b.nvars != ideal.nvars:
        raise ParameterError("degree over the wrong variable universe")
    supp = b.support
    faces = []
    for k in range(len(supp) + 1):
        for s in itertools.combinations(supp, k):
            quotient = Monomial(
                tuple(e - 1 if i in s else e for i, e in enumerate(b.exps))
            )
            if ideal.contains(quotient):
                faces.append(frozenset(s))
    return frozenset(faces)


def _simplicial_homology_dims(
    faces: list[frozenset[int]], p: int, rational: bool = False
) -> dict[int, int]:
    """Reduced homology dimensions of a simplicial complex given as a
    face-closed list of vertex sets (including the empty face)."""
    if not faces:
        return {}
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in faces:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    for d in by_dim:
        by_dim[d].sort()
    top = max(by_dim)
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        cols = by_dim.get(d, [])
        rows = by_dim.get(d - 1, [])
        if not cols or not rows:
            ranks[d] = 0
            continue
        rindex = {s: i for i, s in enumerate(rows)}
        triples = []
        for j, s in enumerate(cols):
            for pth in range(len(s)):
                sub = s[:pth] + s[pth + 1 :]
                triples.append((rindex[sub], j, (-1) ** pth))
        if rational:
            ranks[d] = rank_rational(len(rows), len(cols), triples)
        else:
            ranks[d] = PrimeFieldMatrix.from_triples(len(rows), len(cols), triples, p).rank()
    dims: dict[int, int] = {}
    f = {d: len(by_dim.get(d, [])) for d in range(-1, top + 1)}
    f.setdefault(-1, 0)
    for d in range(-1, top + 1):
        h = f.get(d, 0) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            dims[d] = h
    return dims


def _koszul_worker(args):
    key, faces, p, rational = args
    return key, _simplicial_homology_dims(list(faces), p, rational)


def betti_oracle(
    ideal: MonomialIdeal,
    p: int = DEFAULT_PRIME,
    rational: bool = False,
    threads: int | None = None,
) -> BettiTable:
    """Full multigraded Betti table of a monomial ideal by exhaustive sweep
    over the divisors of lcm(G(I)); independent of any cell complex.

    Upper Koszul complexes that coincide after relabeling their support
    share one homology computation.
    """
    if ideal.nvars > ORACLE_VAR_CAP:
        raise SizeCapError(f"betti_oracle is capped at {ORACLE_VAR_CAP} variables, got {ideal.nvars}")
    if not ideal.gens:
        return BettiTable(ideal.nvars, {})
    top = ideal.lcm_of_gens()
    ndeg = 1
    for e in top.exps:
        ndeg *= e + 1
    if ndeg > ORACLE_DEGREE_CAP:
        raise SizeCapError(f"divisor sweep of size {ndeg} exceeds the cap of {ORACLE_DEGREE_CAP}")

    if top.is_squarefree:
        degree_keys = _squarefree_degree_classes(ideal, top)
    else:
        degree_keys = _general_degree_classes(ideal, top)

    classes: dict[tuple, tuple] = {}
    for _, key, faces in degree_keys:
        if key not in classes:
            classes[key] = faces

    items = [(key, faces, p, rational) for key, faces in classes.items()]
    results = dict(pmap(_koszul_worker, items, resolve_threads(threads)))

    table: dict[tuple[int, Monomial], int] = {}
    for b, key, _ in degree_keys:
        for d, h in results[key].items():
            i = d + 1  # beta_{i,b} = dim Htilde_{i-1}(K^b)
            table[(i, b)] = table.get((i, b), 0) + h
    return BettiTable(ideal.nvars, table)


def _squarefree_degree_classes(ideal: MonomialIdeal, top: Monomial):
    """Degrees, dedup keys, and canonically relabeled face lists for a
    squarefree ideal: degrees are the subsets of the support of lcm(G)."""
    nvars = ideal.nvars
    gen_masks = []
    for g in ideal.gens:
        gm = 0
        for v in g.support:
            gm |= 1 << v
        gen_masks.append(gm)
    top_mask = 0
    for v in top.support:
        top_mask |= 1 << v
    # membership of every squarefree monomial below the top degree
    masks = np.arange(top_mask + 1, dtype=np.int64)
    member = np.zeros(top_mask + 1, dtype=bool)
    for gm in gen_masks:
        member |= (masks & gm) == gm
    in_ideal = member.tolist()

    out = []
    umask = top_mask
    while True:
        bits = [v for v in range(nvars) if umask >> v & 1]
        rank = {v: i for i, v in enumerate(bits)}
        faces = []
        s = umask
        while True:  # submask loop enumerates S with x^b / x_S a divisor test
            if in_ideal[umask ^ s]:
                faces.append(tuple(rank[v] for v in bits if s >> v & 1))
            if s == 0:
                break
            s = (s - 1) & umask
        if faces:
            key = tuple(sorted(faces))
            b = Monomial(tuple(1 if umask >> v & 1 else 0 for v in range(nvars)))
            out.append((b, key, key))
        if umask == 0:
            break
        umask = (umask - 1) & top_mask
    return out


def _general_degree_classes(ideal: MonomialIdeal, top: Monomial):
    """Divisor-grid sweep for ideals with a non-squarefree lcm."""
    # monotone closure: c is in the ideal iff c equals a generator or some
    # coordinate can be lowered while staying in the ideal
    in_ideal: dict[tuple[int, ...], bool] = {}
    genset = {g.exps for g in ideal.gens}
    for exps in itertools.product(*[range(e + 1) for e in top.exps]):
        hit = exps in genset
        if not hit:
            for i, e in enumerate(exps):
                if e:
                    lower = exps[:i] + (e - 1,) + exps[i + 1 :]
                    if in_ideal[lower]:
                        hit = True
                        break
        in_ideal[exps] = hit

    out = []
    for exps in itertools.product(*[range(e + 1) for e in top.exps]):
        supp = tuple(i for i, e in enumerate(exps) if e)
        rank = {v: i for i, v in enumerate(supp)}
        faces = []
        for k in range(len(supp) + 1):
            for s in itertools.combinations(supp, k):
                quotient = tuple(e - 1 if i in s else e for i, e in enumerate(exps))
                if in_ideal[quotient]:
                    faces.append(tuple(rank[v] for v in s))
        if faces:
            key = tuple(sorted(faces))
            out.append((Monomial(exps), key, key))
    return out


def _equigenerated_supports(ideal: MonomialIdeal) -> list[frozenset[int]]:
    if not ideal.gens:
        return []
    degs = {g.degree for g in ideal.gens}
    if len(degs) != 1:
        raise ParameterError("exchange checks need generators of equal degree")
    if not all(g.is_squarefree for g in ideal.gens):
        raise ParameterError("exchange checks need squarefree generators")
    return [frozenset(g.support) for g in ideal.gens]


def matroid_exchange(ideal: MonomialIdeal) -> bool:
    """Exchange axiom on the generator supports viewed as facets: for all
    distinct facets F, G and i in F there is j in G with F - i + j a facet.
    Brute force over all pairs."""
    facets = _equigenerated_supports(ideal)
    fset = set(facets)
    for f, g in itertools.permutations(facets, 2):
        for i in f:
            if not any((f - {i}) | {j} in fset for j in g):
                return False
    return True


def strong_exchange(ideal: MonomialIdeal) -> bool:
    """Strong exchange: for all distinct facets F, G, every i in F and
    every j in G - F give a facet F - i + j."""
    facets = _equigenerated_supports(ideal)
    fset = set(facets)
    for f, g in itertools.permutations(facets, 2):
        for i in f:
            for j in g - f:
                if (f - {i}) | {j} not in fset:
                    return False
    return True
