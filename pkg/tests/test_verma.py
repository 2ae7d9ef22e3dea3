"""Induced-module oracle: straightening, Gram blocks, radical structure."""

import random
from fractions import Fraction

import pytest

from parafock import patterns as gz
from parafock import symfunc as sf
from parafock import verma as vm


def vac(m, n):
    return vm.PBWMonomial((0,) * (m + n), (0,) * len(vm.pair_slots(m, n)))


def test_pbw_counts_small():
    assert len(vm.pbw_basis(1, 1, 0)) == 1
    assert len(vm.pbw_basis(1, 1, 1)) == 2
    assert len(vm.pbw_basis(1, 1, 2)) == 4
    mon = vm.pbw_basis(1, 1, 2)
    assert vm.PBWMonomial((0, 0), (1,)) in mon  # the bracket factor


def test_mixed_pair_exponent_capped():
    for mono in vm.pbw_basis(1, 1, 6):
        assert mono.pairs[0] in (0, 1)
    # fermion-fermion pair (1,2) of (2,0) may repeat
    assert any(mo.pairs[0] == 2 for mo in vm.pbw_basis(2, 0, 4))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_pbw_counts_match_weight_series(m, n):
    ch = sf.verma_character(m, n, 1, 5)
    assert [len(vm.pbw_basis(m, n, level)) for level in range(6)] \
        == ch.level_totals()


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_pbw_weights_match_weight_series(m, n):
    ch = sf.verma_character(m, n, 1, 4)
    counts = {}
    for level in range(5):
        for mono in vm.pbw_basis(m, n, level):
            c = mono.content(m, n)
            counts[c] = counts.get(c, 0) + 1
    assert counts == dict(ch.coeffs)


def test_act_on_vacuum_rules():
    eng = vm.get_engine(1, 1)
    one = {vac(1, 1): Fraction(1)}
    p = 5
    v1 = eng.act(("c", 1, "+"), one, p)
    assert v1 == {vm.PBWMonomial((1, 0), (0,)): Fraction(1)}
    assert eng.act(("c", 1, "-"), v1, p) == {vac(1, 1): Fraction(p)}
    assert eng.act(("c", 2, "-"), v1, p) == {}
    assert eng.act(("h", 1), one, p) == {vac(1, 1): Fraction(-p, 2)}
    assert eng.act(("h", 2), one, p) == {vac(1, 1): Fraction(p, 2)}
    assert eng.act(("bb", 1, 2, "-", "-"), one, p) == {}


def test_act_two_step_straightening():
    eng = vm.get_engine(1, 1)
    p = 7
    one = {vac(1, 1): Fraction(1)}
    v1 = eng.act(("c", 1, "+"), one, p)
    v2 = eng.act(("c", 1, "+"), v1, p)
    lowered = eng.act(("c", 1, "-"), v2, p)
    assert lowered == {vm.PBWMonomial((1, 0), (0,)): Fraction(2 * p - 2)}


def test_act_creates_bracket_factor():
    eng = vm.get_engine(1, 1)
    p = 3
    one = {vac(1, 1): Fraction(1)}
    v2 = eng.act(("c", 2, "+"), one, p)
    v12 = eng.act(("c", 1, "+"), v2, p)       # c1 c2 |0>, already ordered
    assert v12 == {vm.PBWMonomial((1, 1), (0,)): Fraction(1)}
    v21 = eng.act(("c", 2, "+"), eng.act(("c", 1, "+"), one, p), p)
    # c2 c1 = c1 c2 - [c1, c2]
    assert v21 == {vm.PBWMonomial((1, 1), (0,)): Fraction(1),
                   vm.PBWMonomial((0, 0), (1,)): Fraction(-1)}


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2), (2, 0)])
def test_word_expansion_straightens_back(m, n):
    """Expanding a monomial into words and renormalizing is the identity."""
    eng = vm.get_engine(m, n)
    for level in range(5):
        for mono in vm.pbw_basis(m, n, level):
            acc: dict = {}
            for coeff, word in eng.monomial_words(mono):
                for mono2, c in eng.straighten(word).items():
                    acc[mono2] = acc.get(mono2, 0) + coeff * c
            acc = {k: v for k, v in acc.items() if v}
            assert acc == {mono: 1}, mono


def test_weight_grading_of_action():
    eng = vm.get_engine(2, 1)
    p = 2
    for mono in vm.pbw_basis(2, 1, 3):
        v = {mono: Fraction(1)}
        for k in range(1, 4):
            img = eng.act(("h", k), v, p)
            expect = Fraction(mono.doubled_weight(2, 1, p)[k - 1], 2)
            assert img == ({mono: expect} if expect else {})


def test_norm_polynomials():
    eng = vm.get_engine(1, 1)
    sq = eng.pair_poly(vm.PBWMonomial((2, 0), (0,)), vm.PBWMonomial((2, 0), (0,)))
    assert sq == vm.PPoly([0, -2, 2])  # 2p(p-1)
    eng01 = vm.get_engine(0, 1)
    b2 = vm.PBWMonomial((2,), ())
    assert eng01.pair_poly(b2, b2) == vm.PPoly([0, 2])  # 2p
    eng21 = vm.get_engine(2, 1)
    b12 = vm.PBWMonomial((0, 0, 0), (1, 0, 0))
    assert eng21.pair_poly(b12, b12) == vm.PPoly([0, 4])  # 4p


def test_gram_level_one_diagonal_p():
    for m, n in ((1, 1), (2, 1), (1, 2)):
        for p in (1, 2, 3):
            for content in vm.level_contents(m, n, 1):
                blk = vm.gram_block_for_content(m, n, p, content)
                assert blk.matrix == [[Fraction(p)]]
    blk = vm.gram_block_for_content(1, 1, 2, (0, 0))
    assert blk.matrix == [[Fraction(1)]] and blk.rank == 1


def test_gram_block_by_doubled_weight():
    blk = vm.gram_block(1, 1, 2, (-2, 4))
    assert blk.content == (0, 1)
    assert blk.matrix == [[Fraction(2)]]


def test_gram_symmetric_and_weight_homogeneous():
    eng = vm.get_engine(2, 1)
    basis = vm.pbw_basis(2, 1, 3)
    for a in basis:
        for b in basis:
            pab = eng.pair_poly(a, b)
            assert pab == eng.pair_poly(b, a)
            if a.content(2, 1) != b.content(2, 1):
                assert pab.is_zero()


def test_action_respects_structure_constants():
    """X(Yv) - (-1)^(|X||Y|) Y(Xv) must equal the bracket's action."""
    from parafock import algebra as alg

    rng = random.Random(3)
    m, n, p = 1, 1, 2
    eng = vm.get_engine(m, n)
    basis = alg.structure_constants(m, n)
    labels = basis.labels
    monos = vm.pbw_basis(m, n, 0) + vm.pbw_basis(m, n, 1) + vm.pbw_basis(m, n, 2)

    def add(u, v, c=Fraction(1)):
        out = dict(u)
        for mo, cv in v.items():
            cur = out.get(mo, Fraction(0)) + c * cv
            if cur:
                out[mo] = cur
            else:
                out.pop(mo, None)
        return out

    for _ in range(12):
        x = rng.choice(labels)
        y = rng.choice(labels)
        v = {rng.choice(monos): Fraction(rng.randint(1, 3))}
        sgn = -1 if (alg.label_parity(x, m) * alg.label_parity(y, m)) % 2 else 1
        lhs = add(eng.act(x, eng.act(y, v, p), p),
                  eng.act(y, eng.act(x, v, p), p), Fraction(-sgn))
        rhs: dict = {}
        for lab, c in basis.bracket_expansion(x, y).items():
            rhs = add(rhs, eng.act(lab, v, p), c)
        assert lhs == rhs, (x, y, v)


def test_act_unknown_label():
    eng = vm.get_engine(1, 1)
    with pytest.raises(ValueError):
        eng.act(("z", 1), {vac(1, 1): Fraction(1)}, 1)


def test_contravariance_random_vectors():
    rng = random.Random(11)
    eng = vm.get_engine(1, 2)
    p = 3
    basis2 = vm.pbw_basis(1, 2, 2)
    basis3 = vm.pbw_basis(1, 2, 3)

    def rand_vec(basis):
        return {mo: Fraction(rng.randint(-3, 3)) for mo in basis}

    def pair(u, v):
        tot = Fraction(0)
        for a, ca in u.items():
            for b, cb in v.items():
                tot += ca * cb * eng.pair_poly(a, b).evaluate(p)
        return tot

    for j in (1, 2, 3):
        for _ in range(3):
            u = rand_vec(basis2)
            v = rand_vec(basis3)
            lhs = pair(eng.act(("c", j, "+"), u, p), v)
            rhs = pair(u, eng.act(("c", j, "-"), v, p))
            assert lhs == rhs


def test_radical_at_order_one():
    blk = vm.gram_block_for_content(1, 1, 1, (2, 0))
    assert blk.size == 1 and blk.rank == 0 and blk.psd
    assert blk.radical_basis == [{vm.PBWMonomial((2, 0), (0,)): Fraction(1)}]
    # radical vectors pair to zero against everything in the block
    blk2 = vm.gram_block_for_content(1, 1, 1, (1, 1))
    for vec in blk2.radical_basis:
        for mono in blk2.basis:
            eng = vm.get_engine(1, 1)
            val = sum(c * eng.pair_poly(mo, mono).evaluate(1)
                      for mo, c in vec.items())
            assert val == 0


@pytest.mark.parametrize("m,n,p,lmax", [
    (1, 1, 1, 4), (1, 1, 2, 4), (2, 1, 1, 3), (1, 2, 2, 3),
])
def test_ranks_match_irreducible_character(m, n, p, lmax):
    dims = vm.irreducible_dims(m, n, p, lmax)
    ch = sf.irreducible_character(m, n, p, lmax)
    expected = {ch.doubled_weight(e): c for e, c in ch.coeffs.items()}
    assert {w: r for w, r in dims.items() if r} == expected


def test_verma_block_sizes_match_character():
    ch = sf.verma_character(1, 2, 1, 4)
    for level in range(5):
        for content in vm.level_contents(1, 2, level):
            blk = vm.gram_block_for_content(1, 2, 1, content)
            assert blk.size == ch.coeffs[content]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_positive_semidefinite_full_range(m, n):
    for p in (1, 2, 3):
        for blk in vm.gram_blocks_up_to(m, n, p, 4):
            assert blk.psd, (m, n, p, blk.weight)
            assert all(d > 0 for d in blk.pivots)


def test_rank_independent_of_basis_order():
    for content in vm.level_contents(1, 1, 3):
        a = vm.gram_block_for_content(1, 1, 2, content, order="standard")
        b = vm.gram_block_for_content(1, 1, 2, content, order="reversed")
        assert a.rank == b.rank and a.psd == b.psd


def test_diagonal_check():
    rep = vm.diagonal_check(1, 1, 2, 4)
    assert rep["ok"] and rep["checked"] > 0
    rep = vm.diagonal_check(2, 1, 1, 2)
    assert rep["ok"]
    rep = vm.diagonal_check(1, 2, 3, 3)
    assert rep["ok"]


def test_diagonal_check_rejects_n0():
    with pytest.raises(ValueError):
        vm.diagonal_check(2, 0, 1, 2)


def test_radical_cut_check():
    rep = vm.radical_cut_check(1, 1, 1, 2)
    assert rep["ok"] and rep["cut_witness"] is not None
    rep = vm.radical_cut_check(1, 1, 2, 2)
    assert rep["ok"] and rep["cut_expected"] is False
    rep = vm.radical_cut_check(1, 1, 2, 3)
    assert rep["ok"] and rep["cut_witness"]["level"] == 3


def test_collect_gram_blocks_parallel_matches_serial():
    serial = vm.collect_gram_blocks(1, 1, 2, 3, threads=1)
    parallel = vm.collect_gram_blocks(1, 1, 2, 3, threads=2)
    assert [(b.weight, b.rank, b.psd) for b in serial] \
        == [(b.weight, b.rank, b.psd) for b in parallel]
