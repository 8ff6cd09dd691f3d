import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gramlab import gram_law as gl
from gramlab.errors import UncertifiedRange


def test_first_126_intervals_satisfy_both_laws(table_small):
    recs = gl.classify_intervals(table_small, 1, 126)
    assert all(r.sgl and r.gl for r in recs)


def test_g127_fails_both_g128_sgl_only(table_small):
    r127, r128 = gl.classify_intervals(table_small, 127, 128)
    assert r127.zero_count == 0 and not r127.sgl and not r127.gl and not r127.wgl
    assert r128.zero_count == 2 and r128.sgl and not r128.gl and not r128.wgl


def test_second_hutchinson_exception(table_small):
    # t_134 < gamma_135 < gamma_136 < t_135
    g = table_small.gram
    z135 = table_small.find_zeros(float(g[134]), float(g[135]))
    assert [z.index for z in z135] == [135, 136]
    assert gl.delta_n(table_small, 135).delta == 0
    assert gl.delta_n(table_small, 136).delta == -1


def test_g2147_holds_three_zeros(table_mid):
    rec = gl.classify_intervals(table_mid, 2147, 2147)[0]
    assert rec.zero_count == 3 and rec.wgl and not rec.gl
    # the three are the namesake and its neighbors
    edges = np.searchsorted(table_mid.zeros, table_mid.gram[2146:2148], side="right")
    assert list(range(edges[0] + 1, edges[1] + 1)) == [2146, 2147, 2148]


def test_gl_without_sgl_trio(table_mid):
    for n in (3359, 3778, 4542):
        rec = gl.classify_intervals(table_mid, n, n)[0]
        assert rec.gl and not rec.sgl


def test_gl_implies_wgl_and_flag_consistency(table_mid):
    recs = gl.classify_intervals(table_mid, 1, 5000)
    for r in recs:
        assert r.r == r.zero_count - 1
        assert r.wgl == (r.zero_count % 2 == 1)
        assert r.gl == (r.zero_count == 1)
        if r.gl:
            assert r.wgl


def test_delta_examples(table_small):
    assert all(gl.delta_n(table_small, n).delta == 0 for n in range(1, 16))
    assert gl.delta_n(table_small, 127).delta == 1
    assert gl.delta_n(table_small, 128).delta == 0
    assert gl.delta_n(table_small, 136).delta == -1
    rec = gl.delta_n(table_small, 127)
    assert rec.gram_index == 128 and rec.on_line


def test_delta_array_matches_scalar(table_small):
    arr = gl.delta_array(table_small, 1, 500)
    for idx in (1, 17, 127, 128, 444):
        assert arr[idx - 1] == gl.delta_n(table_small, idx).delta


def test_gsp_flags(table_small):
    assert all(gl.gsp_flags(table_small, 1, 15))
    f = gl.gsp_flags(table_small, 127, 128)
    assert f == [False, True]


def test_gsp_fraction_below_one(table_full):
    deltas = gl.delta_array(table_full, 1, 100000)
    frac = float(np.mean(deltas == 0))
    assert 0.0 < frac < 1.0


def test_nu_histogram_small(table_small):
    h = gl.nu_histogram(table_small, 15)
    assert h.counts == {1: 15}
    assert h.s_at_end == 0


def test_nu_histogram_identities(table_small):
    for N in (200, 777, 1100):
        h = gl.nu_histogram(table_small, N)
        assert sum(h.counts.values()) == N
        assert sum(k * v for k, v in h.counts.items()) == N + h.s_at_end
        rhs = sum((k - 1) * v for k, v in h.counts.items() if k >= 2)
        assert h.counts.get(0, 0) == rhs - h.s_at_end


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=1100))
def test_nu_identities_property(table_small, N):
    h = gl.nu_histogram(table_small, N)
    assert h.identity_total() and h.identity_weighted() and h.identity_empty()


def test_interval_count_equals_s_difference(table_small):
    counts = gl.interval_counts(table_small, 1, 1100)
    s = table_small.s_gram
    assert np.array_equal(counts, 1 + s[1:1101] - s[0:1100])


def test_offset_ladder(table_small):
    assert gl.offset_ladder_check(table_small, 127)   # empty: vacuous
    assert gl.offset_ladder_check(table_small, 128)   # r = 1 ladder
    assert all(gl.offset_ladder_check(table_small, n) for n in range(1, 301))
    assert gl.offset_ladder_check_range(table_small, 1, 1100)


def test_uncertified_range_raises(table_small):
    top = table_small.certified_n
    with pytest.raises(UncertifiedRange):
        gl.classify_intervals(table_small, 1, top + 10)
    with pytest.raises(UncertifiedRange):
        gl.delta_n(table_small, table_small.zeros.size + 1)
    with pytest.raises(UncertifiedRange):
        gl.nu_histogram(table_small, top + 10)


def test_sgl_gl_independence_witnesses(table_mid):
    """All four combinations of (SGL, GL) occur in the certified range."""
    recs = gl.classify_intervals(table_mid, 1, 5000)
    combos = {(r.sgl, r.gl) for r in recs}
    assert combos == {(True, True), (False, False), (True, False), (False, True)}
