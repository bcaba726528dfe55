from math import gcd

import pytest
from hypothesis import given, strategies as st

from twistspin.errors import (
    InvalidState,
    NonPositiveN,
    NotCoprime,
    SpunKnotHasNoPartner,
    ZeroMNotSpun,
)
from twistspin.orbitdata import (
    INDETERMINATE,
    INEQUIVALENT,
    SPUN,
    BTSIndex,
    Move,
    OrbitData,
    Site,
    TwinState,
    apply_move,
    classify,
    double_gluck_check,
    gluck_rewrite,
    orbit_rewrite,
    reduce_to_base,
    sign,
    signs,
    twin_partner,
    validate_index,
)


def pairs(bound):
    for n in range(1, bound + 1):
        for m in range(-bound, bound + 1):
            if m and gcd(m, n) == 1:
                yield m, n


@st.composite
def indices(draw, bound=200):
    n = draw(st.integers(1, bound))
    m = draw(st.integers(-bound, bound).filter(lambda m: m != 0 and gcd(m, n) == 1))
    return BTSIndex(m, n)


def test_validate_index_examples():
    assert validate_index(2, 3) == BTSIndex(2, 3)
    with pytest.raises(NotCoprime):
        validate_index(4, 6)
    spun = validate_index(0, 1)
    assert spun.is_spun and spun == SPUN


@pytest.mark.parametrize(
    "m,n,exc",
    [(2, 0, NonPositiveN), (1, -3, NonPositiveN), (0, 2, ZeroMNotSpun), (-6, 9, NotCoprime)],
)
def test_validate_index_errors(m, n, exc):
    with pytest.raises(exc):
        validate_index(m, n)


def test_validate_index_accepts_exactly_the_domain():
    for n in range(-3, 13):
        for m in range(-12, 13):
            ok = n >= 1 and ((m == 0 and n == 1) or (m != 0 and gcd(m, n) == 1))
            try:
                validate_index(m, n)
            except ValueError:
                assert not ok
            else:
                assert ok


def test_signs():
    s = signs(BTSIndex(2, 3))
    assert (s.eps, s.eps_prime, s.eps_dprime) == (1, 1, 1)
    s = signs(BTSIndex(-3, 2))
    assert (s.eps, s.eps_prime, s.eps_dprime) == (-1, -1, -1)
    s = signs(BTSIndex(-1, 2))
    assert (s.eps, s.eps_prime, s.eps_dprime) == (-1, 1, 1)
    assert sign(0) == 1


def test_twin_partner_examples():
    assert twin_partner(BTSIndex(2, 3)) == BTSIndex(3, 2)
    assert twin_partner(BTSIndex(-2, 3)) == BTSIndex(-3, 2)
    assert twin_partner(BTSIndex(1, 1)) == BTSIndex(1, 1)
    with pytest.raises(SpunKnotHasNoPartner):
        twin_partner(SPUN)


@given(indices())
def test_twin_partner_is_an_involution(idx):
    assert twin_partner(twin_partner(idx)) == idx


def test_gluck_rewrite_examples():
    s = TwinState.of(BTSIndex(2, 3))
    t = gluck_rewrite(s, Site.SECOND)
    assert (t.first, t.second) == (BTSIndex(5, 3), BTSIndex(3, 5))
    assert t.history == (Site.SECOND,)
    t = gluck_rewrite(s, Site.FIRST)
    assert (t.first, t.second) == (BTSIndex(2, 5), BTSIndex(5, 2))
    t = gluck_rewrite(TwinState.of(BTSIndex(-2, 3)), Site.SECOND)
    assert (t.first, t.second) == (BTSIndex(1, 3), BTSIndex(3, 1))


def test_gluck_rewrite_degenerate_reaches_spun_terminal():
    t = gluck_rewrite(TwinState.of(BTSIndex(-1, 1)), Site.FIRST)
    assert t.terminal and t.first == SPUN and t.second is None
    with pytest.raises(SpunKnotHasNoPartner):
        gluck_rewrite(t, Site.FIRST)


def test_bad_twin_state_rejected():
    with pytest.raises(InvalidState):
        TwinState(BTSIndex(2, 3), BTSIndex(2, 3))
    with pytest.raises(InvalidState):
        TwinState(BTSIndex(2, 3), None)
    # bypass construction checks; the rewrite re-verifies
    bad = object.__new__(TwinState)
    object.__setattr__(bad, "first", BTSIndex(2, 3))
    object.__setattr__(bad, "second", BTSIndex(1, 1))
    object.__setattr__(bad, "history", ())
    with pytest.raises(InvalidState):
        gluck_rewrite(bad, Site.FIRST)


@given(indices(60), st.lists(st.sampled_from(list(Site)), max_size=6))
def test_partner_closure_along_any_history(idx, sites):
    state = TwinState.of(idx)
    for site in sites:
        if state.terminal:
            break
        state = gluck_rewrite(state, site)
        if not state.terminal:
            assert twin_partner(state.first) == state.second
    assert len(state.history) <= len(sites)


def test_double_gluck_examples():
    assert double_gluck_check(BTSIndex(2, 3)) == (BTSIndex(2, 3), BTSIndex(2, 7))
    assert double_gluck_check(BTSIndex(-3, 2)) == (BTSIndex(-3, 2), BTSIndex(3, 4))
    assert double_gluck_check(BTSIndex(1, 1)) == (BTSIndex(1, 1), BTSIndex(1, 3))


def test_double_gluck_degenerate_cases_raise():
    with pytest.raises(SpunKnotHasNoPartner):
        double_gluck_check(BTSIndex(-1, 1))
    with pytest.raises(NonPositiveN):
        # 2m + n = 0 has no target index
        double_gluck_check(BTSIndex(-1, 2))


def test_involution_consistency_exhaustive():
    # twice at one site sends that site's member (m,n) to (e''m, e''(2m+n))
    for m, n in pairs(100):
        state = TwinState.of(BTSIndex(m, n))
        for site in Site:
            k = state.member(site)
            if k.m + k.n == 0 or 2 * k.m + k.n == 0:
                continue
            e2 = sign(2 * k.m + k.n)
            twice = gluck_rewrite(gluck_rewrite(state, site), site)
            assert twice.member(site) == BTSIndex(e2 * k.m, e2 * (2 * k.m + k.n))
            assert twice.history == (site, site)


def test_double_twist_at_second_site_acts_on_partner():
    for m, n in pairs(30):
        p = twin_partner(BTSIndex(m, n))
        if p.m + p.n == 0 or 2 * p.m + p.n == 0:
            continue
        t = gluck_rewrite(gluck_rewrite(TwinState.of(BTSIndex(m, n)), Site.SECOND), Site.SECOND)
        e2 = sign(2 * p.m + p.n)
        assert t.second == BTSIndex(e2 * p.m, e2 * (2 * p.m + p.n))


def test_coprimality_preserved_by_moves_exhaustive():
    for m, n in pairs(100):
        idx = BTSIndex(m, n)
        for move in Move:
            apply_move(idx, move)  # raises on a non-index
        if m + n:
            for site in Site:
                gluck_rewrite(TwinState.of(idx), site)


def test_orbit_rewrite_examples():
    assert orbit_rewrite(OrbitData("K", 2, 3)) == OrbitData("K", 5, 3)
    assert orbit_rewrite(OrbitData("K", -2, 3)) == OrbitData("K", 1, 3)
    assert orbit_rewrite(OrbitData("K", 1, 1)) == OrbitData("K", 2, 1)
    assert str(orbit_rewrite(OrbitData("trefoil", 2, 3))) == "{trefoil,5,3}"
    with pytest.raises(SpunKnotHasNoPartner):
        orbit_rewrite(OrbitData("K", 0, 1))


@given(indices())
def test_orbit_rewrite_agrees_with_twist_along_partner(idx):
    if idx.m + idx.n == 0:
        return
    new = orbit_rewrite(OrbitData("K", idx.m, idx.n))
    assert gluck_rewrite(TwinState.of(idx), Site.SECOND).first == new.index


def test_reduce_floor_reproduces_worked_trace():
    tr = reduce_to_base(BTSIndex(5, 3), "floor")
    assert [(mv.value, str(r)) for mv, r in tr.steps] == [
        ("SubN", "(2,3)"), ("Swap", "(3,2)"), ("SubN", "(1,2)"), ("Swap", "(2,1)"),
    ]
    assert tr.terminal == BTSIndex(2, 1)


def test_reduce_examples():
    tr = reduce_to_base(BTSIndex(1, 1))
    assert len(tr) == 0 and tr.terminal == BTSIndex(1, 1)
    tr = reduce_to_base(BTSIndex(7, 2))
    assert tr.terminal.n == 1 and len(tr) <= 10
    tr = reduce_to_base(BTSIndex(5, 3))
    assert tr.terminal.n == 1
    assert reduce_to_base(SPUN).terminal == SPUN
    with pytest.raises(ValueError):
        reduce_to_base(BTSIndex(5, 3), "ceil")


@given(indices(1000), st.sampled_from(["nearest", "floor"]))
def test_reduction_steps_are_the_stated_moves(idx, strategy):
    tr = reduce_to_base(idx, strategy)
    cur = idx
    for mv, res in tr.steps:
        if mv is Move.ADD_N:
            assert res == BTSIndex(cur.m + cur.n, cur.n)
        elif mv is Move.SUB_N:
            assert res == BTSIndex(cur.m - cur.n, cur.n)
        else:
            assert res == BTSIndex(cur.eps * cur.n, cur.eps * cur.m)
        cur = res
    assert cur == tr.terminal and cur.n == 1


@given(indices(1000), st.sampled_from(["nearest", "floor"]))
def test_branch_index_drops_at_each_swap(idx, strategy):
    cur = idx
    for mv, res in reduce_to_base(idx, strategy).steps:
        if mv is Move.SWAP:
            assert res.n < cur.n
        cur = res


@given(indices(1000))
def test_nearest_residue_is_least_absolute(idx):
    cur = idx
    for mv, res in reduce_to_base(idx).steps:
        if mv is Move.SWAP:
            assert 2 * abs(cur.m) <= cur.n
        cur = res


def test_classify_examples():
    r = classify(BTSIndex(3, 2), True)
    assert r.verdict == INEQUIVALENT and r.pair == (BTSIndex(3, 2), BTSIndex(3, 5))
    assert classify(BTSIndex(2, 3), True).verdict == INDETERMINATE
    assert classify(BTSIndex(3, 2), False).verdict == INDETERMINATE
    r = classify(BTSIndex(-3, 2), True)
    assert r.pair == (BTSIndex(-3, 2), BTSIndex(3, 1))
    assert classify(BTSIndex(-1, 1), True).verdict == INDETERMINATE
