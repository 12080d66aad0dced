import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gksums import _backend
from gksums import kloosterman as kl
from gksums.geometry import contains_many, hypocycloid
from gksums.modular import NotCoprime, OrderDoesNotDivide, subgroup_from_generator, subgroup_of_order


def oracle(a, b, m, elements):
    """Straight from the definition: sum of exp(2 pi i (a u + b u^-1) / m)."""
    return sum(cmath.exp(2j * math.pi * ((a * u + b * pow(u, -1, m)) % m) / m) for u in elements)


def legendre_brute(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


units = st.integers(2, 3000).flatmap(
    lambda m: st.tuples(st.just(m), st.integers(1, m - 1).filter(lambda w: math.gcd(w, m) == 1) if m > 2 else st.just(1))
)


def test_root_table_symmetry():
    for m in (1, 2, 3, 4, 5, 8, 12, 199, 1000, 1907):
        t = kl.root_table(m)
        idx = np.arange(1, m)
        assert np.array_equal(t.re[m - idx], t.re[idx])
        assert np.array_equal(t.im[m - idx], -t.im[idx])
        assert t[0] == 1
        if m % 4 == 0:
            assert t[m // 4] == 1j and t[m // 2] == -1


def test_gks_examples():
    assert kl.gks(0, 0, subgroup_of_order(199, 3)) == 3
    k = kl.gks(1, 1, subgroup_from_generator(5, 2))
    assert abs(k - (2 + 2 * math.cos(4 * math.pi / 5))) < 1e-12
    assert abs(k - 0.3819660) < 1e-7
    k = kl.gks(0, 1, subgroup_of_order(7, 3))
    assert abs(k - (-0.5 + 1.3228757j)) < 1e-7


@settings(max_examples=150)
@given(units, st.integers(0, 10**6), st.integers(0, 10**6))
def test_gks_matches_definition(mw, a, b):
    m, w = mw
    s = subgroup_from_generator(m, w)
    assert abs(kl.gks(a, b, s) - oracle(a, b, m, s.elements)) <= s.order * 1e-12
    assert abs(kl.gks_direct(a, b, s) - oracle(a, b, m, s.elements)) <= s.order * 1e-12


@settings(max_examples=100)
@given(units, st.integers(0, 10**4), st.integers(0, 10**4), st.data())
def test_symmetries(mw, a, b, data):
    m, w = mw
    s = subgroup_from_generator(m, w)
    k = kl.gks(a, b, s)
    assert abs(k.conjugate() - kl.gks(-a % m, -b % m, s)) <= 1e-9
    assert abs(k - kl.gks(b, a, s)) <= 1e-9
    v = data.draw(st.sampled_from(s.elements))
    assert abs(k - kl.gks(a * v % m, b * pow(v, -1, m) % m, s)) <= 1e-9
    assert abs(k) <= s.order + 1e-9


def test_grid_examples():
    g = kl.gks_grid(subgroup_from_generator(5, 2))
    assert g.values.shape == (5, 5) and g[0, 0] == 4
    s = subgroup_of_order(7, 3)
    v = kl.gks_grid(s).values
    idx = np.arange(7)
    assert np.allclose(np.conj(v), v[(-idx) % 7][:, (-idx) % 7], atol=1e-9)
    v = kl.gks_grid(subgroup_of_order(67, 3)).values
    assert contains_many(hypocycloid(3), v.ravel()).all()


def test_grid_subranges_and_coordinates():
    s = subgroup_from_generator(22, 5)
    g = kl.gks_grid(s, a_range=(3, 9), b_range=7)
    assert g.values.shape == (6, 1)
    a, b = g.coordinates()
    for x, y, z in zip(a, b, g.values.ravel()):
        assert abs(z - oracle(int(x), int(y), 22, s.elements)) < 1e-12
    with pytest.raises(ValueError):
        kl.gks_grid(s, a_range=(0, 23))


@pytest.mark.parametrize("workers", [1, 2, 3, 8])
def test_grid_worker_count_is_invisible(workers):
    s = subgroup_of_order(199, 3)
    ref = kl.gks_grid(s, workers=1).values
    assert np.array_equal(kl.gks_grid(s, workers=workers).values, ref)


@pytest.mark.skipif("compiled" not in _backend.available(), reason="extension not built")
@pytest.mark.parametrize("m,w", [(199, 92), (22, 5), (4378, 291), (1907, 2), (343, 18)])
def test_backend_parity(m, w):
    s = subgroup_from_generator(m, w)
    rng = np.random.default_rng(m)
    a, b = rng.integers(0, m, 400), rng.integers(0, m, 400)
    rows = range(0, min(m, 40))
    out = {}
    for name in ("compiled", "python"):
        prev = _backend.use(name)
        try:
            out[name] = (kl.gks_pairs(a, b, s), kl.gks_grid(s, a_range=rows).values)
        finally:
            _backend.use(prev)
    assert np.array_equal(out["compiled"][0], out["python"][0])
    assert np.array_equal(out["compiled"][1], out["python"][1])


def test_backend_switch_rejects_unknown():
    with pytest.raises(ValueError):
        _backend.use("fortran")


def test_classical():
    assert abs(kl.classical(1, 1, 5) - 0.3819660) < 1e-7
    assert kl.classical(0, 0, 23) == 22
    bound = 2 * math.sqrt(11)
    for a in range(11):
        for b in range(11):
            k = kl.classical(a, b, 11)
            assert abs(k.imag) < 1e-12
            if a * b % 11:
                assert abs(k) <= bound


def test_tau():
    assert kl.tau(5) == math.sqrt(5)
    assert kl.tau(7) == 1j * math.sqrt(7)
    with pytest.raises(kl.InvalidParity):
        kl.tau(2)


def test_salie_examples():
    assert abs(kl.salie_direct(0, 0, 13)) < 1e-12
    assert abs(kl.salie_direct(1, 3, 7)) < 1e-12
    assert kl.salie_explicit(1, 3, 7) == 0
    assert abs(kl.salie_direct(1, 1, 5) - kl.salie_explicit(1, 1, 5)) < 1e-9
    assert abs(kl.salie_explicit(1, 1, 13) - 2 * math.sqrt(13) * math.cos(2 * math.pi * 2 / 13)) < 1e-12
    assert abs(kl.salie_explicit(1, 1, 13) - 4.0963731) < 1e-7
    want = -2j * math.sqrt(7) * math.cos(2 * math.pi / 7)
    assert abs(kl.salie_explicit(3, 3, 7) - want) < 1e-12
    with pytest.raises(kl.DividesAB):
        kl.salie_explicit(0, 3, 7)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 19, 23, 101, 103])
def test_salie_explicit_matches_brute(p):
    for a in range(1, p):
        for b in range(1, p):
            brute = sum(legendre_brute(u, p) * cmath.exp(2j * math.pi * (a * u + b * pow(u, -1, p)) / p) for u in range(1, p))
            assert abs(kl.salie_explicit(a, b, p) - brute) < 1e-8
            if p > 23:
                break


def test_half_subgroup_identity_examples():
    lhs, rhs = kl.half_subgroup_identity(0, 0, 23)
    assert lhs == 11 and rhs == 11
    lhs, rhs = kl.half_subgroup_identity(1, 2, 11)
    assert abs(lhs - rhs) < 1e-8
    assert abs(lhs - oracle(1, 2, 11, [u * u % 11 for u in range(1, 6)])) < 1e-12


def test_theorem3_p_divides_ab_values():
    rep = kl.theorem3_check(7)
    assert rep.worst["a=0 column"] <= 1e-8 and rep.worst["a=b=0"] <= 1e-8
    v = kl.gks(0, 1, kl.half_subgroup(7))
    assert abs(v - (-1 + 1j * math.sqrt(7)) / 2) < 1e-12
    with pytest.raises(kl.WrongResidueClass):
        kl.theorem3_check(13)


@pytest.mark.parametrize("p", [7, 11, 19, 23, 43])
def test_half_subgroup_components_within_sqrt_p(p):
    # K = (T + K_full)/2 with T and K_full each at most 2 sqrt(p) in size
    v = kl.gks_grid(kl.half_subgroup(p)).values[1:, 1:]
    assert np.abs(v.real).max() <= math.sqrt(p) + 1e-9
    assert np.abs(v.imag).max() <= math.sqrt(p) + 1e-9


def test_real_halving():
    full, halved = kl.real_halving(1, 1, 29, 2)
    assert abs(full - 2 * halved.real) < 1e-8
    with pytest.raises(kl.BadForm):
        kl.real_halving(1, 1, 29, 1)
    with pytest.raises(kl.BadForm):
        kl.real_halving(1, 1, 29, 3)
    assert kl.halving_check(13, 2).ok and kl.halving_check(29, 2).ok


@pytest.mark.parametrize("p", [13, 29])
def test_theorem5_exhaustive(p):
    rep = kl.theorem5_check(p)
    assert rep.ok and rep.passed > 0


def test_theorem5_rejects_wrong_class():
    with pytest.raises(kl.WrongResidueClass):
        kl.theorem5_check(17)


def test_conjecture_report_matches_full_enumeration():
    p = 13
    rep = kl.conjecture_report(p)
    g = 2
    logs = {pow(g, r, p): r for r in range(p - 1)}
    s = subgroup_of_order(p, (p - 1) // 4)
    worst = [0.0] * 4
    for a in range(1, p):
        for b in range(1, p):
            c = (logs[a] - logs[b]) % 4
            worst[c] = max(worst[c], abs(oracle(a, b, p, s.elements).imag))
    assert np.allclose([rep.max_imag[c] for c in range(4)], worst, atol=1e-12)
    assert worst[2] < 1e-12


def test_crt_decompose_fig2_parameters():
    direct = subgroup_from_generator(4378, 291)
    for a, b in [(0, 0), (1, 1), (17, 4000), (2189, 3), (4377, 4377)]:
        left, right, product = kl.crt_decompose(a, b, 199, 22, 291)
        assert product == left * right
        assert abs(product - kl.gks(a, b, direct)) <= 1e-8


def test_crt_decompose_trivial_factor():
    left, right, product = kl.crt_decompose(3, 4, 199, 1, 92)
    assert right == 1 and product == left
    assert abs(left - kl.gks(3, 4, subgroup_from_generator(199, 92))) < 1e-12
    with pytest.raises(NotCoprime):
        kl.crt_decompose(1, 1, 4, 6, 5)


@settings(max_examples=60)
@given(st.integers(2, 60), st.integers(2, 60), st.integers(1, 3600), st.integers(0, 3600), st.integers(0, 3600))
def test_crt_decompose_with_coprime_orders(m1, m2, w, a, b):
    assume(math.gcd(m1, m2) == 1 and math.gcd(w, m1 * m2) == 1)
    w %= m1 * m2
    o1 = kl.multiplicative_order(w % m1, m1) if m1 > 1 else 1
    o2 = kl.multiplicative_order(w % m2, m2) if m2 > 1 else 1
    assume(math.gcd(o1, o2) == 1)
    _, _, product = kl.crt_decompose(a, b, m1, m2, w)
    assert abs(product - kl.gks(a, b, subgroup_from_generator(m1 * m2, w))) <= 1e-8


def test_crt_fails_when_orders_share_a_factor():
    # <2> mod 15 has 4 elements while its reductions have 2 and 4
    _, _, product = kl.crt_decompose(0, 0, 3, 5, 2)
    assert product == 8 and kl.gks(0, 0, subgroup_from_generator(15, 2)) == 4


def test_deltoid_triples():
    assert kl.deltoid_triples(0, 0, 19) == (3, 3, 3)
    region = hypocycloid(3)
    s = subgroup_of_order(19, 9)
    for a in range(19):
        for b in range(0, 19, 3):
            t = kl.deltoid_triples(a, b, 19)
            assert abs(sum(t) - oracle(a, b, 19, s.elements)) < 1e-8
            assert contains_many(region, t).all()
    with pytest.raises(OrderDoesNotDivide):
        kl.deltoid_triples(1, 1, 23)


def test_cyclotomic_relation():
    assert (1 + 2 + 4) % 7 == 0
    for q, d in [(7, 3), (199, 3), (151, 5), (491, 7), (1279, 3)]:
        assert kl.cyclotomic_relation_check(q, d)
