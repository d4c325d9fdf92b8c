"""Block variable structure, monomials, and arithmetic on monomial ideals.

Variables come in ``n`` blocks, block ``j`` holding ``b_j`` variables
``x[j,1] .. x[j,b_j]``.  Internally a variable is a flat index in
``0..m-1`` (``m = sum(b)``), ordered block-major; ``VarId`` is the
user-facing (block, index) pair.  Monomials are dense exponent tuples over
one fixed variable universe, ideals are canonically sorted minimal
generating sets.  Everything is immutable and hashable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

MAX_VARS = 16


class ParameterError(ValueError):
    """A structural parameter (n, t, b, index, universe) is out of range."""


class SizeCapError(RuntimeError):
    """An operation would exceed a hard size cap meant to stop exponential sweeps."""


class VarId(NamedTuple):
    """One variable, as the paper writes it: block 1..n, index 1..b_block.

    Tuple order is the canonical variable order used everywhere.
    """

    block: int
    index: int

    def __str__(self) -> str:
        return f"x[{self.block},{self.index}]"


@dataclass(frozen=True)
class BlockConfig:
    """The parameters (n, t, b_1..b_n) defining the blocks and degree.

    ``b`` is recommended weakly increasing (the paper's normalization) but
    any order is accepted; ``monotone`` records whether the input followed
    the recommendation.  All algorithms only use block disjointness and
    block order.
    """

    n: int
    t: int
    b: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"need n >= 1, got n={self.n}")
        if not (1 <= self.t <= self.n):
            raise ParameterError(f"need 1 <= t <= n, got t={self.t}, n={self.n}")
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.b) != self.n:
            raise ParameterError(f"len(b)={len(self.b)} does not match n={self.n}")
        if any(x < 1 for x in self.b):
            raise ParameterError(f"block sizes must be positive, got b={self.b}")
        if sum(self.b) > MAX_VARS:
            raise SizeCapError(f"m={sum(self.b)} exceeds the pipeline cap of {MAX_VARS} variables")

    @property
    def m(self) -> int:
        return sum(self.b)

    @property
    def monotone(self) -> bool:
        return all(x <= y for x, y in zip(self.b, self.b[1:]))

    @property
    def offsets(self) -> tuple[int, ...]:
        out = [0]
        for x in self.b:
            out.append(out[-1] + x)
        return tuple(out)

    def flat(self, var: VarId) -> int:
        """Flat index of x[block, index]."""
        j, a = var
        if not (1 <= j <= self.n) or not (1 <= a <= self.b[j - 1]):
            raise ParameterError(f"variable x[{j},{a}] does not exist for b={self.b}")
        return self.offsets[j - 1] + a - 1

    def var_id(self, flat: int) -> VarId:
        if not (0 <= flat < self.m):
            raise ParameterError(f"flat index {flat} out of range for m={self.m}")
        off = self.offsets
        for j in range(self.n):
            if flat < off[j + 1]:
                return VarId(j + 1, flat - off[j] + 1)
        raise AssertionError

    def block_of(self, flat: int) -> int:
        """1-based block of a flat variable index."""
        return self.var_id(flat).block

    def block_vars(self, j: int) -> tuple[int, ...]:
        """Flat indices of the variables in block j (1-based)."""
        if not (1 <= j <= self.n):
            raise ParameterError(f"block {j} out of range 1..{self.n}")
        off = self.offsets
        return tuple(range(off[j - 1], off[j]))

    def prefix(self, s: int) -> "BlockConfig":
        """The configuration on the first s blocks, with the same t."""
        if not (self.t <= s <= self.n):
            raise ParameterError(f"need t <= s <= n, got s={s}")
        return BlockConfig(s, self.t, self.b[:s])

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "b": list(self.b)}

    @classmethod
    def from_dict(cls, d: dict) -> "BlockConfig":
        return cls(int(d["n"]), int(d["t"]), tuple(d["b"]))


@dataclass(frozen=True)
class Monomial:
    """A monomial as a dense exponent tuple over a fixed variable universe."""

    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        if any(e < 0 for e in self.exps):
            raise ParameterError(f"negative exponent in {self.exps}")

    @property
    def nvars(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def sort_key(self) -> tuple[int, ...]:
        """Variable list with multiplicity; lex on these is the canonical order."""
        return tuple(i for i, e in enumerate(self.exps) for _ in range(e))

    def _check_universe(self, other: "Monomial"):
        if self.nvars != other.nvars:
            raise ParameterError(f"variable universe mismatch: {self.nvars} vs {other.nvars} variables")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check_universe(other)
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        self._check_universe(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check_universe(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; requires other | self."""
        if not other.divides(self):
            raise ParameterError("quotient of non-divisible monomials")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls((0,) * nvars)

    @classmethod
    def from_vars(cls, nvars: int, flats: Iterable[int]) -> "Monomial":
        exps = [0] * nvars
        for i in flats:
            exps[i] += 1
        return cls(tuple(exps))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


class MonomialIdeal:
    """A monomial ideal stored as its unique minimal generating set.

    Generators form an antichain under divisibility and are kept in the
    canonical order (lex on variable lists), so equal ideals compare and
    hash equal.
    """

    __slots__ = ("nvars", "gens")

    def __init__(self, nvars: int, gens: Iterable[Monomial]):
        gens = list(gens)
        for g in gens:
            if g.nvars != nvars:
                raise ParameterError(f"generator over {g.nvars} variables in a {nvars}-variable ideal")
        self.nvars = nvars
        self.gens = _minimalize_sorted(gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.nvars, self.gens))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self) -> str:
        return f"MonomialIdeal(nvars={self.nvars}, gens={len(self.gens)})"

    def contains(self, mono: Monomial) -> bool:
        """Membership of a monomial in the ideal."""
        return any(g.divides(mono) for g in self.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def lcm_of_gens(self) -> Monomial:
        out = Monomial.one(self.nvars)
        for g in self.gens:
            out = out.lcm(g)
        return out


def _minimalize_sorted(gens: list[Monomial]) -> tuple[Monomial, ...]:
    # sort by degree so potential divisors come first, then drop dominated ones
    out: list[Monomial] = []
    for g in sorted(set(gens), key=lambda x: (x.degree, x.sort_key())):
        if not any(h.divides(g) for h in out):
            out.append(g)
    return tuple(sorted(out, key=Monomial.sort_key))


def minimalize(nvars: int, gens: Iterable[Monomial]) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``gens``."""
    return MonomialIdeal(nvars, gens)


def _check_same_universe(i: MonomialIdeal, j: MonomialIdeal):
    if i.nvars != j.nvars:
        raise ParameterError(f"ideal universe mismatch: {i.nvars} vs {j.nvars} variables")


def ideal_sum(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_same_universe(i, j)
    return MonomialIdeal(i.nvars, [*i.gens, *j.gens])


def ideal_product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_same_universe(i, j)
    return MonomialIdeal(i.nvars, [a * b for a in i.gens for b in j.gens])


def ideal_intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    # correct for monomial ideals: intersection of sums of principal ideals
    _check_same_universe(i, j)
    return MonomialIdeal(i.nvars, [a.lcm(b) for a in i.gens for b in j.gens])


def transversal_generators(cfg: BlockConfig) -> MonomialIdeal:
    """Minimal generators of the transversal ideal: all products of one
    variable from each of t distinct blocks."""
    gens = []
    for blocks in itertools.combinations(range(1, cfg.n + 1), cfg.t):
        for choice in itertools.product(*[cfg.block_vars(j) for j in blocks]):
            gens.append(Monomial.from_vars(cfg.m, choice))
    return MonomialIdeal(cfg.m, gens)


def transversal_prefix(cfg: BlockConfig, s: int, t: int) -> MonomialIdeal:
    """The transversal ideal of degree t on the first s blocks, embedded in
    the full variable universe of ``cfg``."""
    if not (0 <= t <= s <= cfg.n):
        raise ParameterError(f"need 0 <= t <= s <= n, got s={s}, t={t}")
    if t == 0:
        return MonomialIdeal(cfg.m, [Monomial.one(cfg.m)])
    gens = []
    for blocks in itertools.combinations(range(1, s + 1), t):
        for choice in itertools.product(*[cfg.block_vars(j) for j in blocks]):
            gens.append(Monomial.from_vars(cfg.m, choice))
    return MonomialIdeal(cfg.m, gens)


def prime_block(cfg: BlockConfig, j: int) -> MonomialIdeal:
    """The variable ideal P_j of block j."""
    return MonomialIdeal(cfg.m, [Monomial.from_vars(cfg.m, [v]) for v in cfg.block_vars(j)])


def q_range(cfg: BlockConfig, r: int, s: int | None = None) -> MonomialIdeal:
    """The variable ideal on blocks r..s (s defaults to n)."""
    if s is None:
        s = cfg.n
    if not (1 <= r <= s <= cfg.n):
        raise ParameterError(f"need 1 <= r <= s <= n, got r={r}, s={s}, n={cfg.n}")
    gens = []
    for j in range(r, s + 1):
        gens.extend(Monomial.from_vars(cfg.m, [v]) for v in cfg.block_vars(j))
    return MonomialIdeal(cfg.m, gens)


_FACTOR_RE = re.compile(r"^([a-zA-Z]+)\[(\d+)(?:,(\d+))?\](?:\^(\d+))?$")


def format_monomial(mono: Monomial, cfg: BlockConfig | None = None, letter: str = "x") -> str:
    """Text form ``x[i,j]^e`` joined by ``*`` (exponent omitted when 1).

    With a config, variables print as x[block,index]; without one they
    print as letter[k] over flat 1-based indices (used for the depolarized
    y-variables).
    """
    if mono.degree == 0:
        return "1"
    parts = []
    for i, e in enumerate(mono.exps):
        if not e:
            continue
        if cfg is not None:
            v = cfg.var_id(i)
            name = f"{letter}[{v.block},{v.index}]"
        else:
            name = f"{letter}[{i + 1}]"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def parse_monomial(text: str, cfg: BlockConfig | None = None, nvars: int | None = None) -> Monomial:
    """Parse the text form back into a Monomial.

    Accepts ``x[i,j]``, ``x[i]`` (meaning ``x[i,1]`` under a config, or the
    i-th flat variable without one), optional ``^e``, and ``1``.
    """
    if cfg is None and nvars is None:
        raise ParameterError("parse_monomial needs a config or an explicit variable count")
    n = cfg.m if cfg is not None else nvars
    exps = [0] * n
    text = text.strip()
    if text == "1":
        return Monomial(tuple(exps))
    for factor in text.split("*"):
        mobj = _FACTOR_RE.match(factor.strip())
        if not mobj:
            raise ParameterError(f"cannot parse monomial factor {factor!r}")
        _, i, j, e = mobj.groups()
        e = int(e) if e else 1
        if cfg is not None:
            flat = cfg.flat(VarId(int(i), int(j) if j else 1))
        else:
            if j is not None:
                raise ParameterError(f"two-index variable {factor!r} needs a block config")
            flat = int(i) - 1
            if not (0 <= flat < n):
                raise ParameterError(f"variable index out of range in {factor!r}")
        exps[flat] += e
    return Monomial(tuple(exps))


def format_ideal(ideal: MonomialIdeal, cfg: BlockConfig | None = None) -> str:
    """One generator per line, canonical order."""
    return "\n".join(format_monomial(g, cfg) for g in ideal.gens)
