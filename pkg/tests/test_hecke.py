import random
from fractions import Fraction

import pytest
from conftest import CATALOG

from ybhecke.cycleset import constant, trivial
from ybhecke.errors import (
    ConstantCoefficientNotUnit,
    DegreeMismatch,
    InvolutionRootMismatch,
    LeadingCoefficientNotUnit,
    NotGroupAlgebraPoint,
    OrderTooLarge,
    ParameterMismatch,
    PolynomialNotSplit,
)
from ybhecke.germ import make_germ_context
from ybhecke.hecke import (
    HeckeAlgebra,
    HeckeElement,
    HeckePolySpec,
    classical,
    hecke_retraction_map,
    make_hecke_context,
    parse_polys,
    random_element,
)
from ybhecke.laurent import LaurentPoly, ParamInvolution, laurent_parse
from ybhecke.torus import torus_make

Q = ("q",)


def c(text):
    return laurent_parse(text, Q)


def element(alg, pairs):
    return HeckeElement(alg.params, {tuple(g): c(t) for t, g in pairs})


@pytest.fixture(scope="module")
def H16():
    return classical(constant([1, 0]))


@pytest.fixture(scope="module")
def H1():
    return classical(trivial(1))


# -- polynomials ------------------------------------------------------------------


def test_classical_coefficients():
    P = HeckePolySpec.from_text("X^2-(q-1)*X-q", Q)
    assert P.coeffs == (c("-q"), c("1 - q"), c("1"))
    assert P.degree == 2
    assert str(P) == "X^2 + (-q + 1)*X - q"


def test_split_form_found_and_checked():
    P = HeckePolySpec.from_text("X^2-(q-1)*X-q", Q).with_split()
    assert set(P.roots) == {c("-1"), c("q")}
    built = HeckePolySpec.from_roots(c("1"), [c("-1"), c("q")])
    assert built.coeffs == P.coeffs
    with pytest.raises(PolynomialNotSplit):
        HeckePolySpec(P.coeffs, c("1"), (c("1"), c("q")))
    with pytest.raises(PolynomialNotSplit):
        HeckePolySpec.from_text("X^2 - q", Q).with_split()


def test_compose_power():
    P = HeckePolySpec.from_text("X^2-(q-1)*X-q", Q)
    assert P.compose_power(2) == HeckePolySpec.from_text("X^4-(q-1)*X^2-q", Q)


def test_parse_polys_shares_parameters():
    a, b = parse_polys(["X - p", "X^2 - q"])
    assert a.params == b.params == ("p", "q")


# -- construction -----------------------------------------------------------------


def test_context_examples(H16, H1):
    assert H16.dim == 16
    assert H1.dim == 2
    lin = make_hecke_context(constant([1, 0]), 1, HeckePolySpec.from_text("X - 1"))
    assert lin.dim == 4
    s2 = lin.germ.power_element(0, lin.germ.d)
    assert s2 == (0, 0)  # modulus d, so the relation reads T_s T_{s*s} = 1
    assert lin.mul(lin.generator(0), lin.generator(1)) == lin.one()


def test_construction_errors():
    cs = constant([1, 0])
    with pytest.raises(LeadingCoefficientNotUnit):
        make_hecke_context(cs, 2, HeckePolySpec.from_text("(q-1)*X^2 + 1", Q))
    with pytest.raises(DegreeMismatch):
        make_hecke_context(cs, 1, HeckePolySpec.from_text("X^2 - 1"))
    three = constant([1, 0, 2])
    with pytest.raises(DegreeMismatch):
        make_hecke_context(three, 1, parse_polys(["X - 1", "X - 1", "X - 1"]))
    with pytest.raises(ParameterMismatch):
        HeckeAlgebra(make_germ_context(three, 1), [HeckePolySpec.from_text("X - p"), HeckePolySpec.from_text("X - q")])


def test_generators(H16):
    assert H16.gen((0, 0)) == H16.one()
    assert H16.generator(0) == H16.gen((1, 0))
    assert H16.gen((2, 0)).terms == {(2, 0): c("1")}


# -- multiplication -----------------------------------------------------------------


def test_left_mul_examples(H16):
    assert H16.left_mul_gen(0, H16.gen((1, 0))) == H16.gen((1, 1))
    assert H16.left_mul_gen(0, H16.gen((0, 3))) == element(H16, [("q", (0, 0)), ("q - 1", (2, 0))])
    assert H16.left_mul_gen(0, H16.zero()).is_zero()


def test_mul_examples(H16):
    s2 = H16.gen((2, 0))
    assert H16.mul(s2, s2) == element(H16, [("q", (0, 0)), ("q - 1", (2, 0))])
    y = element(H16, [("q^2", (1, 3)), ("-1", (2, 2))])
    assert H16.mul(H16.one(), y) == y == H16.mul(y, H16.one())
    assert H16.mul(H16.gen((1, 0)), H16.gen((1, 0))) == H16.gen((1, 1))


def test_quadratic_relation_in_the_algebra(H16):
    P = H16.polys[0]
    for s in range(2):
        big = H16.gen(H16.germ.power_element(s, H16.germ.d))
        assert H16.evaluate_poly(P, big).is_zero()


def test_singleton_is_the_quotient_ring(H1):
    T = H1.generator(0)
    assert H1.mul(T, T) == element(H1, [("q", (0,)), ("q - 1", (1,))])


def test_degree_one_swap_matches_torus_algebra():
    """With ``P = X - q`` the n=2 swap algebra is ``H_{2,2}(0, q)``."""
    H = make_hecke_context(constant([1, 0]), 1, HeckePolySpec.from_text("X - q", ("p", "q")))
    tor = torus_make(2, 2)
    index = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}
    assert H.germ.mul((1, 0), (1, 0)) == (1, 1)
    for g in H.basis():
        for h in H.basis():
            prod = H.basis_product(g, h)
            t = tor.mul(tor.basis_element(index[g]), tor.basis_element(index[h]))
            expected = {
                k: t.coeffs[i].substitute({"p": 0}) for k, i in index.items() if t.coeffs[i].substitute({"p": 0})
            }
            assert prod.terms == expected


@pytest.mark.parametrize(
    "name, cs, degrees, polys",
    [
        ("swap2", constant([1, 0]), 2, ["X^2-(q-1)*X-q"]),
        ("cyclic3", constant([1, 2, 0]), 1, ["X - q"]),
        ("two_orbits", constant([1, 0, 2]), [2, 1], ["X^2-(q-1)*X-q", "X + q"]),
        ("paired4", None, 1, ["X - q"]),
    ],
)
def test_associativity_and_word_independence(name, cs, degrees, polys, paired4):
    cs = cs or paired4
    H = make_hecke_context(cs, degrees, parse_polys(polys))
    rng = random.Random(11)
    for _ in range(8):
        x, y, z = (random_element(H, rng) for _ in range(3))
        assert H.mul(H.mul(x, y), z) == H.mul(x, H.mul(y, z))

        def pivot(v):
            return rng.choice([i for i, a in enumerate(v) if a > 0])

        assert H.mul_via_word(x, y, pivot) == H.mul(x, y)


@pytest.mark.parametrize("cs", [cs for cs in CATALOG if cs.size <= 3], ids=repr)
def test_relations_in_regular_representation(cs):
    report = classical(cs).relation_report()
    assert report["closure"] and report["quadratic_relations"] and report["polynomial_relations"]


# -- inverses and the anti-involution ---------------------------------------------


def test_inverse_examples(H16):
    expected = element(H16, [("q^-1 - 1", (0, 1)), ("q^-1", (0, 3))])
    assert H16.inv_gen(0) == expected
    assert H16.inv((0, 0)) == H16.one()
    assert H16.mul(H16.inv_gen(0), H16.gen((1, 0))) == H16.one()


def test_inverses_all_basis(H16):
    for g in H16.basis():
        x = H16.inv(g)
        assert H16.mul(H16.gen(g), x) == H16.one() == H16.mul(x, H16.gen(g))


def test_inverses_cyclic3():
    H = make_hecke_context(constant([1, 2, 0]), 1, HeckePolySpec.from_text("X - q", Q))
    rng = random.Random(3)
    for g in rng.sample(H.basis(), 10):
        assert H.mul(H.gen(g), H.inv(g)) == H.one()


def test_constant_coefficient_must_be_unit():
    H = make_hecke_context(constant([1, 0]), 2, HeckePolySpec.from_text("X^2 - (q+1)*X", Q))
    assert H.dim == 16
    with pytest.raises(ConstantCoefficientNotUnit):
        H.inv_gen(0)


@pytest.mark.parametrize("cs", [c for c in CATALOG if c.size <= 3], ids=repr)
def test_inverse_of_twisted_power(cs):
    """The d-fold twisted product of generator inverses is the inverse of ``(s*s)^{[d]}``."""
    H = classical(cs)
    G = H.germ
    diag = cs.diagonal()
    for s in range(G.n):
        chain = [s]
        for _ in range(G.d - 1):
            chain.append(diag[chain[-1]])
        # t_1^{-1} t_d^{-1} t_{d-1}^{-1} ... t_2^{-1}
        order = [chain[0]] + chain[:0:-1]
        acc = H.one()
        for t in reversed(order):
            acc = H.mul(H.inv_gen(t), acc)
        assert acc == H.inv(G.power_element(diag[s], G.d))


def test_anti_involution_examples(H16):
    inv = ParamInvolution({"q"})
    assert H16.anti_involution(inv, H16.generator(0)) == H16.inv_gen(0)
    assert H16.anti_involution(inv, H16.scalar(c("q"))) == H16.scalar(c("q^-1"))
    for g in H16.basis():
        assert H16.anti_involution(inv, H16.gen(g)) == H16.inv(g)


def test_anti_involution_properties(H16):
    inv = ParamInvolution({"q"})
    rng = random.Random(5)
    for _ in range(10):
        x, y = random_element(H16, rng), random_element(H16, rng)
        assert H16.anti_involution(inv, H16.mul(x, y)) == H16.mul(
            H16.anti_involution(inv, y), H16.anti_involution(inv, x)
        )
        assert H16.anti_involution(inv, H16.anti_involution(inv, x)) == x


def test_anti_involution_rejects_bad_roots(H16):
    with pytest.raises(InvolutionRootMismatch):
        H16.anti_involution(ParamInvolution(set()), H16.one())
    H = make_hecke_context(constant([1, 0]), 2, HeckePolySpec.from_text("X^2 - q", Q))
    with pytest.raises(PolynomialNotSplit):
        H.anti_involution(ParamInvolution({"q"}), H.one())


# -- specialization and traces ---------------------------------------------------


def test_specialization_examples(H16):
    prod = H16.mul(H16.generator(0), H16.gen((0, 3)))
    assert H16.specialize(prod) == {(0, 0): 1}
    assert H16.germ.mul((1, 0), (0, 3)) == (0, 0)
    assert H16.specialize(H16.one()) == {(0, 0): 1}
    s2 = H16.gen((2, 0))
    assert H16.specialize(H16.mul(s2, s2)) == {(0, 0): 1}


def test_specialization_needs_group_algebra_point():
    H = make_hecke_context(constant([1, 0]), 2, HeckePolySpec.from_text("X^2 - q*X - 1", Q))
    with pytest.raises(NotGroupAlgebraPoint):
        H.specialize(H.one())
    assert H.specialize(H.one(), {"q": 0}) == {(0, 0): 1}


def test_specialization_is_multiplicative(H16):
    rng = random.Random(9)
    for _ in range(20):
        x, y = random_element(H16, rng), random_element(H16, rng)
        assert H16.specialize(H16.mul(x, y)) == H16.group_algebra_mul(H16.specialize(x), H16.specialize(y))


def test_gram_singleton(H1):
    assert H1.gram() == [[c("2"), c("q - 1")], [c("q - 1"), c("q^2 + 1")]]
    assert H1.gram_determinant() == c("(q + 1)^2")


def test_tau_and_trace(H16):
    assert H16.tau(H16.one()) == 1
    assert H16.tau(H16.generator(0)) == 0
    point = H16.default_assignment()
    for g in H16.basis():
        expected = H16.dim if g == H16.germ.identity else 0
        assert H16.trace(H16.gen(g)).specialize(point) == expected


def test_trace_matches_left_matrix(H16):
    x = element(H16, [("q", (1, 0)), ("2", (2, 3)), ("q^-1", (0, 0))])
    m = H16.left_matrix(x)
    assert H16.trace(x) == sum((m[i][i] for i in range(H16.dim)), LaurentPoly.zero(Q))


@pytest.mark.parametrize(
    "cs, degrees, poly",
    [
        (constant([1, 0]), 2, "X^2-(q-1)*X-q"),
        (constant([1, 0]), 1, "X - q"),
        (trivial(2), 2, "X^2-(q-1)*X-q"),
        (constant([1, 0, 2]), 1, "X - q"),
    ],
)
def test_gram_nondegenerate(cs, degrees, poly):
    H = make_hecke_context(cs, degrees, HeckePolySpec.from_text(poly, Q))
    det = H.gram_determinant()
    assert det
    assert det.specialize({"q": 1}) != 0


def test_guards():
    H = make_hecke_context(constant([1, 0]), 2, HeckePolySpec.from_text("X^2-(q-1)*X-q", Q), max_order=8)
    with pytest.raises(OrderTooLarge):
        H.trace(H.one())
    H = make_hecke_context(constant([1, 0]), 2, HeckePolySpec.from_text("X^2-(q-1)*X-q", Q), gram_cap=4)
    with pytest.raises(OrderTooLarge):
        H.gram()


# -- retraction ----------------------------------------------------------------------


def test_retraction_swap(H16):
    phi = hecke_retraction_map(H16)
    assert phi.retract.size == 1 and phi.d_prime == 1
    assert phi.target.dim == 4
    t = phi.target.generator(0)
    assert phi(H16.generator(0)) == t == phi(H16.generator(1))
    assert phi(H16.one()) == phi.target.one()
    assert phi.check_generator_pairs() and phi.check_generator_actions()


def test_retraction_paired(paired4):
    phi = hecke_retraction_map(classical(paired4))
    assert phi.retract.size == 2
    assert phi.d == 4 and phi.d_prime == 2
    assert phi.target.polys[0] == HeckePolySpec.from_text("X^4-(q-1)*X^2-q", Q)
    assert phi.check_generator_pairs()


def test_retraction_random_pairs():
    H = classical(constant([1, 2, 0]))
    phi = hecke_retraction_map(H)
    rng = random.Random(13)
    for _ in range(5):
        assert phi.is_multiplicative(random_element(H, rng), random_element(H, rng))


def test_element_json_round_trip(H16):
    x = element(H16, [("q^-1 - 1", (0, 1)), ("3*q^2", (2, 3))])
    assert HeckeElement.from_json(x.to_json(), Q) == x
    assert x.to_json() == [["-1 + q^-1", [0, 1]], ["3*q^2", [2, 3]]]


def test_random_element_is_deterministic(H16):
    a = random_element(H16, random.Random(1))
    b = random_element(H16, random.Random(1))
    assert a == b


def test_specialize_rational_values(H16):
    x = element(H16, [("q^-1", (1, 0))])
    assert H16.specialize(x) == {(1, 0): Fraction(1)}


def test_socle_generator_matches_basis_element_above_degree_one(H16):
    G = H16.germ
    for s in range(G.n):
        assert H16.socle_generator(s) == H16.gen(G.power_element(s, G.d))


@pytest.mark.parametrize("polys", [["X^2-(q-1)*X-q", "X + q"], ["X^2-(q-1)*X-q", "X - q"]])
def test_relation_report_with_degree_one_orbit(polys):
    H = make_hecke_context(constant([1, 0, 2]), [2, 1], parse_polys(polys))
    t = H.cs.star(2, 2)
    assert H.socle_generator(2) == H.mul(H.generator(2), H.generator(t))
    big = H.socle_generator(2)
    assert H.evaluate_poly(H.poly_of(2), big).is_zero()
    report = H.relation_report()
    assert report["quadratic_relations"] and report["polynomial_relations"]
