import itertools
from math import prod

import pytest

from tmi.monomials import (
    BlockConfig,
    Monomial,
    MonomialIdeal,
    ParameterError,
    SizeCapError,
    VarId,
    format_ideal,
    format_monomial,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    parse_monomial,
    prime_block,
    q_range,
    transversal_generators,
    transversal_prefix,
)


def mono(cfg, *vars_):
    return Monomial.from_vars(cfg.m, [cfg.flat(VarId(*v)) for v in vars_])


class TestBlockConfig:
    def test_derived_fields(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        assert cfg.m == 6
        assert cfg.offsets == (0, 2, 4, 5, 6)
        assert cfg.block_vars(2) == (2, 3)
        assert cfg.var_id(4) == VarId(3, 1)
        assert cfg.flat(VarId(1, 2)) == 1

    def test_monotone_flag(self):
        assert BlockConfig(3, 2, (1, 2, 2)).monotone
        assert not BlockConfig(4, 3, (2, 2, 1, 1)).monotone

    @pytest.mark.parametrize(
        "n,t,b",
        [(0, 1, ()), (2, 0, (1, 1)), (2, 3, (1, 1)), (2, 1, (1, 0)), (2, 1, (1,))],
    )
    def test_invalid_parameters(self, n, t, b):
        with pytest.raises(ParameterError):
            BlockConfig(n, t, b)

    def test_pipeline_cap(self):
        with pytest.raises(SizeCapError):
            BlockConfig(17, 1, (1,) * 17)


class TestTransversalGenerators:
    def test_example_2211(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        ideal = transversal_generators(cfg)
        assert len(ideal) == 12
        assert mono(cfg, (1, 1), (2, 1), (3, 1)) in ideal.gens
        assert mono(cfg, (1, 2), (2, 2), (4, 1)) in ideal.gens
        assert all(g.is_squarefree and g.degree == 3 for g in ideal.gens)

    def test_single_full_product(self):
        cfg = BlockConfig(3, 3, (1, 1, 1))
        ideal = transversal_generators(cfg)
        assert len(ideal) == 1
        assert ideal.gens[0] == Monomial((1, 1, 1))

    def test_squarefree_quadrics(self):
        cfg = BlockConfig(4, 2, (1, 1, 1, 1))
        ideal = transversal_generators(cfg)
        expected = {
            Monomial.from_vars(4, pair) for pair in itertools.combinations(range(4), 2)
        }
        assert set(ideal.gens) == expected

    @pytest.mark.parametrize(
        "n,t,b",
        [(2, 1, (3, 2)), (3, 2, (2, 1, 2)), (4, 3, (2, 2, 1, 1)), (5, 4, (1, 1, 2, 1, 1))],
    )
    def test_count_formula(self, n, t, b):
        # independent combinatorial count: sum over t-subsets of block products
        cfg = BlockConfig(n, t, b)
        expected = sum(prod(b[j] for j in js) for js in itertools.combinations(range(n), t))
        assert len(transversal_generators(cfg)) == expected

    def test_prefix_embedding(self):
        cfg = BlockConfig(4, 2, (1, 2, 1, 1))
        sub = transversal_prefix(cfg, 2, 2)
        assert all(g.nvars == cfg.m for g in sub.gens)
        assert len(sub) == 2  # both variables of block 2 paired with block 1


class TestVariableIdeals:
    def test_prime_block(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        p2 = prime_block(cfg, 2)
        assert set(p2.gens) == {mono(cfg, (2, 1)), mono(cfg, (2, 2))}

    def test_q_range(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        assert set(q_range(cfg, 3, 4).gens) == {mono(cfg, (3, 1)), mono(cfg, (4, 1))}
        assert q_range(cfg, 1, 1) == prime_block(cfg, 1)
        assert len(q_range(cfg, 1)) == 6

    def test_out_of_range(self):
        cfg = BlockConfig(2, 1, (1, 1))
        with pytest.raises(ParameterError):
            prime_block(cfg, 3)
        with pytest.raises(ParameterError):
            q_range(cfg, 2, 1)


class TestMonomialArithmetic:
    def test_lcm_squarefree_union(self):
        a = Monomial((1, 0, 1, 0))
        b = Monomial((1, 0, 0, 1))
        assert a.lcm(b) == Monomial((1, 0, 1, 1))

    def test_lcm_idempotent(self):
        a = Monomial((2, 0, 1))
        assert a.lcm(a) == a

    def test_divides(self):
        assert Monomial((1, 0)).divides(Monomial((1, 1)))
        assert not Monomial((0, 2)).divides(Monomial((1, 1)))

    def test_universe_mismatch(self):
        with pytest.raises(ParameterError):
            Monomial((1,)).lcm(Monomial((1, 0)))

    def test_quotient(self):
        assert Monomial((2, 1)).quotient(Monomial((1, 1))) == Monomial((1, 0))
        with pytest.raises(ParameterError):
            Monomial((1, 0)).quotient(Monomial((0, 1)))


class TestIdealArithmetic:
    def test_minimalize_drops_multiples(self):
        i = MonomialIdeal(2, [Monomial((1, 0)), Monomial((1, 1)), Monomial((2, 0))])
        assert i.gens == (Monomial((1, 0)),)

    def test_minimalize_idempotent(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        i = transversal_generators(cfg)
        assert MonomialIdeal(i.nvars, i.gens) == i

    def test_disjoint_intersection(self):
        x = MonomialIdeal(2, [Monomial((1, 0))])
        y = MonomialIdeal(2, [Monomial((0, 1))])
        assert ideal_intersect(x, y).gens == (Monomial((1, 1)),)

    def test_intersection_idempotent(self):
        i = transversal_generators(BlockConfig(4, 3, (2, 2, 1, 1)))
        assert ideal_intersect(i, i) == i

    def test_lemma_intersection_instance(self):
        # brute-force oracle: a monomial lies in I cap J iff it lies in both;
        # enumerate squarefree candidates and minimalize by hand.
        cfg = BlockConfig(4, 2, (1, 1, 1, 1))
        i_2_1 = transversal_prefix(cfg, 2, 1)
        lhs_a = ideal_product(transversal_prefix(cfg, 1, 1), q_range(cfg, 2))  # I_{4,2}(2)
        lhs_b = ideal_product(i_2_1, q_range(cfg, 3))
        got = ideal_intersect(lhs_a, lhs_b)

        members = []
        for r in range(1, 5):
            for sup in itertools.combinations(range(4), r):
                m = Monomial.from_vars(4, sup)
                if lhs_a.contains(m) and lhs_b.contains(m):
                    members.append(m)
        brute = MonomialIdeal(4, members)
        assert got == brute
        expected = ideal_product(transversal_prefix(cfg, 1, 1), q_range(cfg, 3))
        assert got == expected
        assert {format_monomial(g, cfg) for g in got.gens} == {
            "x[1,1]*x[3,1]",
            "x[1,1]*x[4,1]",
        }

    def test_sum_product_commute(self):
        cfg = BlockConfig(3, 2, (2, 1, 1))
        a = prime_block(cfg, 1)
        b = q_range(cfg, 2, 3)
        assert ideal_sum(a, b) == ideal_sum(b, a)
        assert ideal_product(a, b) == ideal_product(b, a)
        assert ideal_intersect(a, b) == ideal_intersect(b, a)

    def test_product_associative(self):
        cfg = BlockConfig(3, 3, (1, 2, 1))
        p1, p2, p3 = (prime_block(cfg, j) for j in (1, 2, 3))
        assert ideal_product(ideal_product(p1, p2), p3) == ideal_product(p1, ideal_product(p2, p3))

    def test_membership(self):
        cfg = BlockConfig(2, 2, (1, 1))
        i = transversal_generators(cfg)
        assert i.contains(Monomial((1, 1)))
        assert i.contains(Monomial((2, 1)))
        assert not i.contains(Monomial((1, 0)))


class TestLemmaIdentities:
    @pytest.mark.parametrize("n,t,b", [(3, 2, (1, 1, 1)), (4, 2, (2, 1, 1, 2)), (4, 3, (2, 2, 1, 1))])
    def test_sum_decomposition(self, n, t, b):
        # I_{n,t} = sum over i of I_{i,t-1} . Q_{i+1}
        cfg = BlockConfig(n, t, b)
        total = None
        for i in range(t - 1, n):
            term = ideal_product(transversal_prefix(cfg, i, t - 1), q_range(cfg, i + 1))
            total = term if total is None else ideal_sum(total, term)
        assert total == transversal_generators(cfg)

    def test_proposition_pairs_decomposition(self):
        # I_{n,n-1} as the sum of products with one merged adjacent pair
        for n, b in [(2, (1, 1)), (3, (1, 2, 2)), (4, (2, 2, 1, 1))]:
            cfg = BlockConfig(n, n - 1, b) if n > 1 else None
            total = None
            for i in range(1, n):
                term = None
                j = 1
                while j <= n:
                    if j == i:
                        factor = ideal_sum(prime_block(cfg, i), prime_block(cfg, i + 1))
                        j += 2
                    else:
                        factor = prime_block(cfg, j)
                        j += 1
                    term = factor if term is None else ideal_product(term, factor)
                total = term if total is None else ideal_sum(total, term)
            assert total == transversal_generators(cfg)


class TestTextFormat:
    def test_format_examples(self):
        cfg = BlockConfig(4, 3, (2, 2, 1, 1))
        m = mono(cfg, (1, 1), (2, 2), (4, 1))
        assert format_monomial(m, cfg) == "x[1,1]*x[2,2]*x[4,1]"
        assert format_monomial(Monomial.one(cfg.m), cfg) == "1"

    def test_exponents(self):
        assert format_monomial(Monomial((2, 0, 1)), letter="y") == "y[1]^2*y[3]"

    def test_round_trip(self):
        cfg = BlockConfig(3, 2, (2, 1, 1))
        for exps in itertools.product(range(3), repeat=4):
            m = Monomial(exps)
            assert parse_monomial(format_monomial(m, cfg), cfg) == m

    def test_parse_single_index(self):
        cfg = BlockConfig(3, 1, (1, 1, 1))
        assert parse_monomial("x[2]", cfg) == Monomial((0, 1, 0))
        assert parse_monomial("y[2]^3", nvars=2) == Monomial((0, 3))

    def test_parse_errors(self):
        cfg = BlockConfig(2, 1, (1, 1))
        with pytest.raises(ParameterError):
            parse_monomial("x[3,1]", cfg)
        with pytest.raises(ParameterError):
            parse_monomial("bogus", cfg)

    def test_ideal_format_deterministic(self):
        cfg = BlockConfig(3, 2, (1, 1, 1))
        text = format_ideal(transversal_generators(cfg), cfg)
        assert text == "x[1,1]*x[2,1]\nx[1,1]*x[3,1]\nx[2,1]*x[3,1]"
