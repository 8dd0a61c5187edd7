import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracosc.core import (
    ALL_COMPONENTS,
    ALL_CONFIGS,
    Component,
    Configuration,
    DomainError,
    NoRealBoundState,
    PhysicalParams,
    QuantumNumbers,
    enumerate_states,
)
from diracosc.spectrum import (
    bracket_K,
    canonical_quanta,
    degeneracy,
    energy,
    field_slope,
    intermediates_consistency,
    levels_for,
    scan_field,
    transition_lines,
    zero_field_bracket,
)

I, II = Configuration.I, Configuration.II
UP, LO = Component.UPPER, Component.LOWER


def term_by_term(a, b, qn):
    """Each printed bracket written out literally, one branch at a time."""
    N, n, m = qn.N, qn.n, qn.m_l
    if qn.config is I and qn.component is UP:
        return (N + 1) * (a + b) + (n + 0.5) * a + (m - 1.5) * a + (m - 1) * b
    if qn.config is I:
        return (N + 1) * (a + b) + (n + 0.5) * a + (m + 1.5) * a + (m + 1) * b
    if qn.component is UP:
        return (N + 1) * (a - b) + (n + 0.5) * a - (m + 1.5) * a + (m + 1) * b
    return (N + 1) * (a - b) + (n + 0.5) * a - (m - 1.5) * a + (m - 1) * b


@st.composite
def states(draw, max_N=10, max_n=10):
    N = draw(st.integers(0, max_N))
    m_l = draw(st.sampled_from(list(range(-N, N + 1, 2))))
    return QuantumNumbers(
        draw(st.sampled_from(ALL_CONFIGS)),
        draw(st.sampled_from(ALL_COMPONENTS)),
        N,
        draw(st.integers(0, max_n)),
        m_l,
    )


ratios_a = st.floats(1e-3, 2.0)
ratios_b = st.floats(0.0, 2.0)


@pytest.mark.parametrize(
    "qn,a,b,K",
    [
        (QuantumNumbers(I, UP, 0, 0, 0), 1.0, 0.0, 0.0),
        (QuantumNumbers(I, UP, 2, 1, 2), 1.0, 0.5, 7.0),
        (QuantumNumbers(II, UP, 1, 0, 1), 1.0, 0.25, 0.0),
        (QuantumNumbers(I, LO, 2, 1, 0), 1.0, 0.5, 8.0),
    ],
)
def test_bracket_examples(qn, a, b, K):
    assert bracket_K(PhysicalParams(a, b), qn) == K
    assert term_by_term(a, b, qn) == K


@given(states(), ratios_a, ratios_b)
def test_bracket_matches_term_by_term(qn, a, b):
    got = bracket_K(PhysicalParams(a, b), qn)
    assert got == pytest.approx(term_by_term(a, b, qn), rel=1e-12, abs=1e-12)


def test_energy_k7():
    level = energy(PhysicalParams(1.0, 0.5), QuantumNumbers(I, UP, 2, 1, 2))
    assert level.E2 == 15.0
    assert level.E == pytest.approx(3.872983346207417, rel=1e-15)


def test_energy_rest_level():
    level = energy(PhysicalParams(1.0), QuantumNumbers(I, UP, 0, 0, 0))
    assert (level.K, level.E2, level.E) == (0.0, 1.0, 1.0)


def test_no_real_bound_state_strong_field():
    qn = QuantumNumbers(II, LO, 3, 0, -3)
    # (N+1)(a-b) = -4, (n+1/2)a = 0.5, -(m_l-3/2)a = 4.5, (m_l-1)b = -8
    expected_K = -4 + 0.5 + 4.5 - 8
    with pytest.raises(NoRealBoundState) as info:
        energy(PhysicalParams(1.0, 2.0), qn)
    assert info.value.qn == qn
    assert info.value.E2 == 1 + 2 * expected_K == -13.0


def test_intermediates_example():
    inter, E2 = intermediates_consistency(PhysicalParams(1.0, 0.5), QuantumNumbers(I, UP, 2, 1, 2))
    assert (inter.eps, inter.D, inter.lam, E2) == (3.0, 6.0, 12.0, 15.0)


def test_intermediates_ground_D():
    for qn in enumerate_states(0, 3):
        assert intermediates_consistency(PhysicalParams(0.7, 0.2), qn)[0].D == 2.0


@given(states(), ratios_a, ratios_b)
def test_chain_identity(qn, a, b):
    p = PhysicalParams(a, b)
    inter, E2 = intermediates_consistency(p, qn)
    closed = 1 + 2 * bracket_K(p, qn)
    assert abs(E2 - closed) <= 1e-12 * max(abs(closed), 1.0)
    assert inter.D == 2 * (qn.N + 1)
    assert inter.eps == pytest.approx(2 * (qn.n + 0.5) * a, rel=1e-15)


@pytest.mark.parametrize(
    "n_prime,m_l,m_s,K", [(0, 0, -0.5, 0.0), (0, 0, 0.5, 3.0)]
)
def test_zero_field_examples(n_prime, m_l, m_s, K):
    assert zero_field_bracket(PhysicalParams(1.0), n_prime, m_l, m_s) == K


def test_zero_field_split_independence():
    p = PhysicalParams(1.0)
    a = bracket_K(p, QuantumNumbers(I, UP, 2, 0, 0))
    b = bracket_K(p, QuantumNumbers(I, UP, 0, 2, 0))
    assert a == b == zero_field_bracket(p, 2, 0, -0.5)


def test_zero_field_requires_b_zero():
    with pytest.raises(DomainError):
        zero_field_bracket(PhysicalParams(1.0, 0.1), 0, 0, -0.5)


@given(states(), ratios_a)
def test_zero_field_collapse(qn, a):
    p = PhysicalParams(a)
    if qn.config is I:
        assert bracket_K(p, qn) == zero_field_bracket(p, qn.n_prime, qn.m_l, qn.m_s)
    # configuration II at zero field is configuration I with m_l mirrored, same component
    mirror = QuantumNumbers(I if qn.config is II else II, qn.component, qn.N, qn.n, -qn.m_l)
    assert bracket_K(p, qn) == bracket_K(p, mirror)


@given(states(), ratios_a, ratios_b)
def test_config_mirror_in_field(qn, a, b):
    # K_II(m_l, b) equals K_I(-m_l, -b): the planar and Zeeman terms flip together
    if qn.config is not II:
        return
    mirror = QuantumNumbers(I, qn.component, qn.N, qn.n, -qn.m_l)
    assert bracket_K(PhysicalParams(a, b), qn) == pytest.approx(
        term_by_term(a, -b, mirror), rel=1e-12, abs=1e-12
    )


# Below a ~ 1e-7 the ulp of E near 1 (2.2e-16) dominates (E - 1)/K.
@given(st.floats(1e-7, 1e-6), st.floats(0.0, 1.0), states(max_N=6, max_n=6))
def test_nonrelativistic_limit(a, b_frac, qn):
    p = PhysicalParams(a, b_frac * a)
    level = energy(p, qn)
    if level.K == 0:
        assert level.E == 1.0
        return
    assert abs((level.E - 1) / level.K - 1) <= 2 * abs(level.K)


@given(ratios_a, ratios_b, st.sampled_from(ALL_COMPONENTS))
@settings(max_examples=50)
def test_config_I_monotone(a, b, comp):
    p = PhysicalParams(a, b)
    for N in range(6):
        for m in range(-N, N + 1, 2):
            for n in range(5):
                K = bracket_K(p, QuantumNumbers(I, comp, N, n, m))
                assert bracket_K(p, QuantumNumbers(I, comp, N, n + 1, m)) >= K
                assert bracket_K(p, QuantumNumbers(I, comp, N + 2, n, m)) >= K
                if m + 2 <= N:
                    assert bracket_K(p, QuantumNumbers(I, comp, N, n, m + 2)) >= K


@given(states(max_N=8, max_n=8), ratios_a, ratios_b)
def test_energy_never_nan(qn, a, b):
    try:
        level = energy(PhysicalParams(a, b), qn)
    except NoRealBoundState as exc:
        assert exc.E2 < 0
    else:
        assert level.E >= 0 and not math.isnan(level.E)
        assert level.E2 == 1 + 2 * level.K


def brute_rest_family(max_N, max_n):
    out = []
    for N in range(max_N + 1):
        for n in range(max_n + 1):
            for m in range(-N, N + 1, 2):
                if (N + 1) + (n + 0.5) + (m - 1.5) == 0:
                    out.append((N, n, m))
    return out


def test_degeneracy_rest_family():
    p = PhysicalParams(1.0)
    levels = levels_for(p, enumerate_states(4, 2, [I], [UP]))
    count, members = degeneracy(levels, 1.0, 1e-12)
    assert count == 5
    assert [(lv.qn.N, lv.qn.n, lv.qn.m_l) for lv in members] == brute_rest_family(4, 2)
    assert all(lv.qn.m_l == -lv.qn.N and lv.qn.n == 0 for lv in members)


def test_degeneracy_empty():
    assert degeneracy([], 1.0, 1e-9) == (0, [])


def test_degeneracy_exact_match_k7():
    p = PhysicalParams(1.0, 0.5)
    levels = levels_for(p, enumerate_states(2, 1, [I], [UP]))
    count, members = degeneracy(levels, 15.0, 0.0)
    assert count == 1
    assert members[0].qn == QuantumNumbers(I, UP, 2, 1, 2)


def test_transition_delta_n_is_a():
    p = PhysicalParams(1.0, 0.3)
    lo, hi = QuantumNumbers(I, UP, 2, 1, 0), QuantumNumbers(I, UP, 2, 2, 0)
    cat = transition_lines(p, [energy(p, lo), energy(p, hi)], I)
    assert cat.lines[0].dK == pytest.approx(p.a, abs=1e-15)
    assert cat.lines[0].tag == "a"


def test_transition_degenerate_pair():
    p = PhysicalParams(1.0, 0.3)
    lo, hi = QuantumNumbers(I, UP, 2, 1, 0), QuantumNumbers(I, UP, 3, 1, -1)
    cat = transition_lines(p, [energy(p, lo), energy(p, hi)], I)
    assert cat.lines[0].dK == 0.0
    assert cat.lines[0].tag == "degenerate"


def test_transition_canonical_set():
    p = PhysicalParams(1.0, 0.3)
    assert transition_lines(p, [], I).canonical == {"a": 1.0, "b": 0.3, "a+b": 1.3, "a-b": 0.7}
    assert canonical_quanta(p) == transition_lines(p, [], I).canonical


def test_transition_rejects_mixed_config():
    p = PhysicalParams(1.0)
    with pytest.raises(DomainError):
        transition_lines(p, [energy(p, QuantumNumbers(II, UP, 0, 0, 0))], I)


def test_transition_gap_structure():
    # parity of N - m_l makes every gap n*a + 2j*(a+b) within one configuration
    p = PhysicalParams(1.0, math.sqrt(2) / 10)
    levels = levels_for(p, enumerate_states(4, 3, [I], [UP]))
    cat = transition_lines(p, levels, I)
    assert len(cat.lines) == len(levels) * (len(levels) - 1) // 2
    counts = cat.counts()
    assert counts["b"] == counts["a+b"] == counts["a-b"] == 0
    assert counts["a"] > 0 and counts["degenerate"] > 0


def test_scan_ground_independent_of_b():
    rows = scan_field(PhysicalParams(1.0), QuantumNumbers(I, UP, 0, 0, 0), [0.0, 0.5, 1.0, 3.0])
    assert [r.K for r in rows] == [0.0] * 4
    assert [r.b for r in rows] == [0.0, 0.5, 1.0, 3.0]


def test_scan_slope_and_zero_row():
    qn = QuantumNumbers(I, UP, 3, 1, 1)
    rows = scan_field(PhysicalParams(1.0), qn, [0.0, 0.25, 0.5])
    assert field_slope(qn) == qn.N + qn.m_l
    assert rows[0].K == zero_field_bracket(PhysicalParams(1.0), 4, 1, -0.5)
    assert rows[2].K - rows[1].K == pytest.approx(0.25 * (qn.N + qn.m_l), rel=1e-14)


def test_scan_flags_unbound_rows():
    qn = QuantumNumbers(II, UP, 2, 0, 0)
    rows = scan_field(PhysicalParams(1.0), qn, [0.0, 1.0, 1.3, 5.0])
    assert [r.bound for r in rows] == [True, True, False, False]
    assert rows[2].E is None and rows[2].E2 < 0


def test_scan_rejects_negative_b():
    with pytest.raises(DomainError):
        scan_field(PhysicalParams(1.0), QuantumNumbers(I, UP, 0, 0, 0), [-1.0])
