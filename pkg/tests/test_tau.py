import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from sigma_forge import sigma2, tau
from sigma_forge.hurwitz import HurwitzSeries2
from sigma_forge.ring import P, SparsePoly, SubringSpec, grade_of, subring_member
from oracles import hurwitz_coeffs, schur
from reference_values import BETA, BETA_ZERO, GAMMA, GAMMA_ZERO, Q

INTEGRAL = SubringSpec.of()


@pytest.fixture(scope="module")
def frame():
    return tau.local_expansion(2, 40)


@pytest.fixture(scope="module")
def frame1():
    return tau.local_expansion(1, 40)


def test_partition_basics():
    mu = tau.Partition((3, 1, 1, 0))
    assert mu.parts == (3, 1, 1) and mu.weight == 5 and len(mu) == 3
    assert mu.conjugate().parts == (3, 1, 1)
    assert tau.Partition((4, 2)).conjugate().parts == (2, 2, 1, 1)
    with pytest.raises(ValueError):
        tau.Partition((1, 2))
    assert sum(1 for _ in tau.partitions_of(8)) == 22


@given(st.lists(st.integers(1, 6), max_size=5))
def test_conjugation_is_an_involution(parts):
    mu = tau.Partition(tuple(sorted(parts, reverse=True)))
    assert mu.conjugate().conjugate() == mu
    assert mu.conjugate().weight == mu.weight


def test_local_parameter_coefficients(frame, frame1):
    g = frame.s_coeffs
    for n, text in GAMMA.items():
        assert g[n] == P(text)
    assert all(not g[n] for n in GAMMA_ZERO)
    assert all(subring_member(v, INTEGRAL) and (not v or grade_of(v) == n) for n, v in g.items())
    b = frame1.s_coeffs
    for n, text in BETA.items():
        assert b[n] == P(text)
    assert all(not b[n] for n in BETA_ZERO)


def test_frame_expansions(frame):
    # y^2 = x^5 + ...
    x, y = frame.x, frame.y
    lhs = y * y
    rhs = x * x * x * x * x + x * x * x * P("l4") + x * x * P("l6") + x * P("l8") + P("l10")
    p = min(lhs.prec, rhs.prec)
    assert lhs.truncate(p) == rhs.truncate(p)
    assert [o for _, _, o in frame.phi_exponents(8)] == [0, 2, 4, 5, 6, 7, 8, 9]
    assert frame.phi_exponents(4)[3][:2] == (0, 1)


def test_matrix_entries_are_integral(frame):
    for j in range(1, 12):
        col, _ = frame.column(j)
        assert col[frame.lead(j)] == SparsePoly.one()
        assert min(col) == frame.lead(j)
        assert all(subring_member(v, INTEGRAL) for v in col.values())


@pytest.mark.parametrize("parts", [(), (1,), (2, 1), (3, 1), (2, 2, 1), (4, 2, 1), (3, 3, 2, 1), (5, 1, 1, 1)])
def test_schur_against_sympy_determinant(parts):
    ours = tau.schur_s_mu(tau.Partition(parts))
    ref = hurwitz_coeffs(schur(parts)) if parts else {(0, 0): 1}
    assert {k: v for k, v in ours.c.items()} == {k: SparsePoly.const(int(v)) for k, v in ref.items() if v}


def test_leading_schur_function():
    s = tau.schur_s_mu(tau.Partition((2, 1)))
    assert s.c == {(3, 0): P("2"), (0, 1): P("-1")}


def test_xi_of_leading_partition(frame):
    assert tau.xi_mu(tau.Partition((2, 1)), frame) == SparsePoly.one()


@pytest.mark.parametrize("parts", [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1), (5,), (3, 2), (6,), (4, 1, 1)])
def test_degree_gaps_give_zero(frame, parts):
    # |mu| - 3 is 1, 2 or 3 here: no lambda monomial has that degree
    assert tau.xi_mu(tau.Partition(parts), frame) == SparsePoly.zero()


def test_xi_mu_homogeneous_and_integral(frame):
    for n in range(3, 15):
        for mu in tau.partitions_of(n):
            v = tau.xi_mu(mu, frame)
            assert subring_member(v, INTEGRAL)
            if v:
                assert grade_of(v) == n - 3, mu


def test_stabilisation_is_checked(frame):
    # the corner must contain every part; a smaller corner is refused
    with pytest.raises(ValueError):
        tau.xi_mu(tau.Partition((3, 2, 1)), frame, L=2)
    mu = tau.Partition((4, 3, 1))
    v = tau.xi_mu(mu, frame)
    for L in (3, 4, 5, 6):
        assert tau.xi_mu(mu, frame, L=L, check=False) == v


def test_stabilisation_failure_is_reported():
    fr = tau.local_expansion(2, 40)
    # corrupt one diagonal entry of the tail so that growing the corner changes the value
    col, prec = fr.column(4)
    col = dict(col)
    col[fr.lead(4)] = P("2")
    fr._cols[4] = (col, prec)
    with pytest.raises(tau.StabilizationError):
        tau.xi_mu(tau.Partition((2, 1)), fr)


def test_normalisation_constants(frame, frame1):
    nc = tau.normalization_constants(frame)
    assert nc.b == {(1, 1): P("1"), (1, 3): P("0"), (3, 1): P("0"), (3, 3): P("1")}
    assert [nc.c[i] for i in (1, 2, 3)] == [SparsePoly.zero()] * 3
    for k, text in Q.items():
        assert nc.q[k] == P(text), k
    n1 = tau.normalization_constants(frame1)
    assert n1.b == {(1, 1): P("1")} and not n1.c[1] and not n1.q[(1, 1)]


def test_bilinear_form_is_symmetric(frame):
    q = tau.normalization_constants(frame).q
    assert all(q[(i, j)] == q[(j, i)] for (i, j) in q if (j, i) in q)


def test_exponential_factor_preserves_integrality():
    tau20, _ = tau.tau_series(20)
    assert all(subring_member(v, INTEGRAL) for v in tau20.c.values())
    nc = tau.normalization_constants(tau.local_expansion(2, 52))
    s = tau.sigma_from_tau(tau20, nc)
    assert all(subring_member(v, INTEGRAL) for v in s.c.values())


def test_tau_route_equals_xi_route():
    assert tau.sigma_tau(20) == sigma2.sigma_xi(20)


def test_genus_one_sigma_is_tau():
    t, _ = tau.tau_series(20, genus=1)
    g = sigma2.genus1_as_series2(sigma2.genus1_sigma(20))
    assert t == g
    assert tau.sigma_tau(20, genus=1) == g


def test_larger_partitions_do_not_reach_weight_n():
    # s_mu is homogeneous of weight |mu|, so |mu| <= N already gives everything through weight N
    for n in (11, 12, 13):
        for mu in tau.partitions_of(n):
            s = tau.schur_s_mu(mu)
            assert all(m + 3 * k == n for (m, k) in s.c)


def test_specialised_curve():
    s = tau.sigma_tau(14, subs={"l4": 0, "l6": 0, "l8": 0})
    assert s == sigma2.sigma_xi(14).subs({"l4": 0, "l6": 0, "l8": 0})
