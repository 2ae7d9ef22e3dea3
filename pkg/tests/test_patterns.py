"""Pattern validity, enumeration and weights, cross-checked two ways."""

import itertools

import pytest

from parafock import patterns as gz
from parafock import symfunc as sf


def test_validate_examples():
    vac = gz.GZPattern.from_rows(1, 1, [[0, 0], [0]])
    assert gz.validate_pattern(vac)
    bad = gz.GZPattern.from_rows(1, 1, [[0, 1], [0]])
    assert not gz.validate_pattern(bad)
    assert "top_row" in gz.pattern_failures(bad)
    ok = gz.GZPattern.from_rows(1, 1, [[1, 1], [1]])
    assert gz.validate_pattern(ok)


def test_validate_reports_condition_names():
    # theta step of 2 between the top rows
    p = gz.GZPattern.from_rows(1, 1, [[2, 0], [0]])
    assert gz.pattern_failures(p) == ["theta_steps"]
    # junction: zero above forces zero below
    p = gz.GZPattern.from_rows(1, 1, [[0, 2], [0]])
    fails = gz.pattern_failures(p)
    assert "hook_rows" in fails and "top_row" in fails
    p = gz.GZPattern.from_rows(2, 1, [[1, 1, 1], [1, 0], [1]])
    assert gz.validate_pattern(p)


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        gz.GZPattern.from_rows(1, 1, [[0, 0]])


def test_pattern_weights_doubled():
    vac = gz.GZPattern.from_rows(1, 1, [[0, 0], [0]])
    assert gz.pattern_weight(vac, 2) == (-2, 2)
    a = gz.GZPattern.from_rows(1, 1, [[1, 0], [1]])
    assert gz.pattern_weight(a, 2) == (0, 2)
    b = gz.GZPattern.from_rows(1, 1, [[1, 0], [0]])
    assert gz.pattern_weight(b, 2) == (-2, 4)


def test_weight_parity_matches_p():
    for p in (1, 2, 3):
        for top in gz.top_rows_for_level(1, 2, p, 3, cap=False):
            for pat in gz.fillings(top, 1, 2):
                assert all((w - p) % 2 == 0 for w in gz.pattern_weight(pat, p))


def test_top_rows_for_level():
    assert gz.top_rows_for_level(1, 1, 1, 2, cap=False) == [(1, 1), (2, 0)]
    assert gz.top_rows_for_level(1, 1, 1, 2, cap=True) == [(1, 1)]
    assert gz.top_rows_for_level(2, 2, 1, 0, cap=False) == [(0, 0, 0, 0)]


def test_partition_top_row_roundtrip():
    for m, n in ((1, 1), (2, 1), (1, 2), (2, 2), (0, 2), (2, 0)):
        for d in range(7):
            for la in sf.hook_partitions(d, m, n):
                top = gz.top_row_from_partition(la, m, n)
                assert gz.top_row_is_valid(top, m, n), (la, top)
                assert gz.partition_from_top_row(top, m, n) == la
                assert sum(top) == d


def test_raise_and_lower():
    assert gz.raise_top_row((0, 0), 1, 1, 1) == (1, 0)
    assert gz.raise_top_row((0, 0), 1, 1, 2) is None
    assert gz.raise_top_row((1, 0), 1, 1, 2) == (1, 1)
    assert gz.lower_top_row((1, 0), 1, 1, 2) is None
    for m, n in ((1, 1), (2, 1), (1, 2)):
        for d in range(5):
            for top in gz.top_rows_for_level(m, n, 1, d, cap=False):
                for k in range(1, m + n + 1):
                    up = gz.raise_top_row(top, m, n, k)
                    if up is not None:
                        assert gz.lower_top_row(up, m, n, k) == top


def test_fillings_examples():
    assert len(gz.fillings((1, 0), 1, 1)) == 2
    assert len(gz.fillings((1, 1), 1, 1)) == 2
    assert len(gz.fillings((0, 0), 1, 1)) == 1
    with pytest.raises(ValueError):
        gz.fillings((0, 1), 1, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2), (0, 2), (2, 0)])
def test_fillings_count_equals_schur_dimension(m, n):
    for d in range(7):
        for top in gz.top_rows_for_level(m, n, 1, d, cap=False):
            la = gz.partition_from_top_row(top, m, n)
            dim = sum(sf.super_schur(la, m, n).coeffs.values())
            assert len(gz.fillings(top, m, n)) == dim, (m, n, top)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_weight_multiset_matches_schur_monomials(m, n):
    p = 3
    off = sf.lowest_weight_offset(m, n, p)
    for d in range(5):
        for top in gz.top_rows_for_level(m, n, p, d, cap=False):
            la = gz.partition_from_top_row(top, m, n)
            expected = {}
            for e, c in sf.super_schur(la, m, n).coeffs.items():
                w = tuple(o + 2 * x for o, x in zip(off, e))
                expected[w] = expected.get(w, 0) + c
            got = {}
            for pat in gz.fillings(top, m, n):
                w = gz.pattern_weight(pat, p)
                got[w] = got.get(w, 0) + 1
            assert got == expected


def _brute_force_fillings(top, m, n):
    """Independent generation: every bounded triangular array, filtered."""
    r = m + n
    hi = max(top) if top else 0
    row_lengths = list(range(r - 1, 0, -1))
    candidates = [
        list(itertools.product(range(hi + 1), repeat=ln)) for ln in row_lengths
    ]
    out = []
    for rows in itertools.product(*candidates):
        pat = gz.GZPattern.from_rows(m, n, (tuple(top),) + rows)
        if gz.validate_pattern(pat):
            out.append(pat)
    return sorted(out, key=lambda p: p.rows)


@pytest.mark.parametrize("m,n,top", [
    (1, 1, (2, 0)), (1, 1, (1, 1)), (2, 1, (1, 1, 0)),
    (2, 1, (2, 1, 0)), (1, 2, (2, 1, 0)), (2, 2, (1, 1, 1, 0)),
])
def test_fillings_match_brute_force(m, n, top):
    fast = gz.fillings(top, m, n)
    slow = _brute_force_fillings(top, m, n)
    assert [p.rows for p in fast] == [p.rows for p in slow]
    assert len({p.rows for p in fast}) == len(fast)  # duplicate-free


def test_valid_subrows_are_prefixes_of_fillings():
    for m, n in ((1, 1), (2, 1), (1, 2), (2, 2)):
        for d in range(4):
            for top in gz.top_rows_for_level(m, n, 1, d, cap=False):
                subs = set(gz.valid_subrows(top, m, n))
                from_fillings = {pat.rows[1] for pat in gz.fillings(top, m, n)}
                assert subs == from_fillings, (m, n, top)


def test_serialization_roundtrip():
    pat = gz.GZPattern.from_rows(2, 1, [[2, 1, 1], [2, 1], [1]])
    rows = pat.to_rows()
    assert rows == [[2, 1, 1], [2, 1], [1]]
    assert gz.GZPattern.from_rows(2, 1, rows) == pat
