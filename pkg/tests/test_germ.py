import random
from fractions import Fraction

import pytest

from singtrans.germ import (
    NonIsolated,
    NotSingular,
    SingularityType,
    classify_simple,
    detect_weighted_homogeneous,
    du_val_section_type,
    hessian_corank,
    jacobian_ideal,
    least_index_estimate,
    milnor_number,
    milnor_orlik,
    split_residual,
    tyurina_number,
)
from singtrans.poly import MultiPoly, parse_poly

RING4 = ("x", "y", "z", "t")
NAMI_RING = ("x", "y", "z", "w")


def germ(text, ring=RING4):
    return parse_poly(text, ring)


FOOTNOTE = "x^2+y^3+z^4+t^2+y^2+2*y*z^2"


# -- jacobian ideal -----------------------------------------------------------


def test_jacobian_ideal():
    j = jacobian_ideal(germ("x^2+y^2+z^2+t^2"))
    assert [str(g) for g in j.generators] == ["2*x", "2*y", "2*z", "2*t"]
    j = jacobian_ideal(germ("x^2+y^3+y*z^3+t^2"))
    assert [str(g) for g in j.generators] == ["2*x", "z^3 + 3*y^2", "3*y*z^2", "2*t"]
    assert jacobian_ideal(MultiPoly.constant(RING4, 5)).generators == ()


# -- milnor / tyurina ----------------------------------------------------------


def test_milnor_examples():
    assert milnor_number(germ("x^2+y^2+z^5+t^2")) == (4, 4)
    assert milnor_number(germ("x^2-z^2-y^3+w^3", NAMI_RING)) == (4, 4)
    assert milnor_number(germ(FOOTNOTE)) == (5, 6)
    with pytest.raises(NotSingular):
        milnor_number(germ("x+y^2+z^2+t^2"))
    with pytest.raises(NonIsolated):
        milnor_number(germ("x^2+y^2"))


def test_milnor_global_local_split_via_exact_critical_points():
    # dJ/dz = 4z(z^2 + y) and dJ/dy = 3y^2 + 2y + 2z^2: the only
    # critical points are (0,0,0,0) and (0,-2/3,0,0)
    f = germ(FOOTNOTE)
    grad_y = f.partial("y")
    grad_z = f.partial("z")
    pts = []
    for y0 in (Fraction(0), Fraction(-2, 3)):  # roots of y(3y + 2)
        assert grad_y.evaluate({"y": y0, "z": 0}) == 0
        assert grad_z.evaluate({"y": y0, "z": 0}) == 0
        pts.append((0, y0, 0, 0))
    # on the branch z^2 = -y the first equation forces 3y^2 = 0
    assert grad_y.substitute({"y": -MultiPoly.variable(RING4, "z") ** 2}) == parse_poly(
        "3*z^4 - 2*z^2 + 2*z^2", RING4
    )
    # local contributions 5 + 1 add up to the global dimension 6
    mu0, mu_glob = milnor_number(f)
    shifted = f.substitute({"y": MultiPoly.variable(RING4, "y") + Fraction(-2, 3)})
    shifted = shifted - shifted.constant_term()
    mu1, _ = milnor_number(shifted)
    assert (mu0, mu1, mu_glob) == (5, 1, 6)


def test_tyurina_examples():
    tau, basis = tyurina_number(germ("x^2+y^3+z^4+t^2"))
    assert tau == 6 and basis == ("1", "y", "z", "y*z", "z^2", "y*z^2")
    tau, basis = tyurina_number(germ(FOOTNOTE))
    assert tau == 5 and basis == ("1", "y", "z", "y*z", "z^2")
    tau, basis = tyurina_number(germ("x^2+y^2*z+z^6+t^2"))  # index 7
    assert tau == 7 and basis == ("1", "y", "z", "z^2", "z^3", "z^4", "z^5")


# -- weights -------------------------------------------------------------------


def test_weight_detection_examples():
    w = detect_weighted_homogeneous(germ("x^2+y^3+y*z^3+t^2"))
    assert w == {"x": Fraction(1, 2), "y": Fraction(1, 3), "z": Fraction(2, 9), "t": Fraction(1, 2)}
    assert detect_weighted_homogeneous(germ(FOOTNOTE)) is None
    w = detect_weighted_homogeneous(germ("x^2+y^2*z+z^4+t^2"))
    assert w is not None and w["y"] == Fraction(3, 8)  # (n-2)/(2n-2) at n = 5


def test_milnor_orlik_examples():
    assert milnor_orlik([Fraction(1, 2), Fraction(1, 2), Fraction(1, 5), Fraction(1, 2)]) == 4
    assert milnor_orlik([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 2)]) == 6
    assert milnor_orlik([Fraction(1, 2)] * 4) == 1
    with pytest.raises(ValueError):
        milnor_orlik([Fraction(2, 3), Fraction(1, 2)])  # product 1/2, not integral
    with pytest.raises(ValueError):
        milnor_orlik([Fraction(3, 2)])


# -- hessian and splitting ------------------------------------------------------


def test_hessian_corank_examples():
    assert hessian_corank(germ("x^2+y^2+z^2+t^2")) == 0
    assert hessian_corank(germ("x^2+y^3+z^4+t^2")) == 2
    assert hessian_corank(germ(FOOTNOTE)) == 1
    with pytest.raises(NotSingular):
        hessian_corank(germ("x+y^2"))


def test_split_residual_already_split():
    res = split_residual(germ("x^2+y^3+z^4+t^2"), jet_degree=8)
    assert res.ring == ("y", "z")
    assert res == parse_poly("y^3+z^4", ("y", "z"))
    res = split_residual(germ("x^2+t^2+y^2*z+z^4"), jet_degree=8)
    assert res == parse_poly("y^2*z+z^4", ("y", "z"))


def test_split_residual_footnote_is_one_variable_order_six():
    res = split_residual(germ(FOOTNOTE), jet_degree=8)
    assert res.ring == ("z",)
    lowest = min(sum(m) for m in res.terms)
    assert lowest == 6  # normal form y^2 + z^6: an A5 singular point
    with pytest.raises(ValueError):
        split_residual(germ(FOOTNOTE), jet_degree=3)


def test_split_residual_mixed_quadratic():
    # cross terms only: quadratic part xy + zt has full rank
    f = germ("x*y+z*t+y^4")
    res = split_residual(f)
    assert res.ring == ()
    assert milnor_number(f)[0] == 1


# -- classification --------------------------------------------------------------


ADE_FORMS = {
    "A": lambda n, s: f"y^2+z^{n + 1}+{s}",
    "D": lambda n, s: f"y^2*z+z^{n - 1}+{s}",
    "E6": lambda n, s: f"y^3+z^4+{s}",
    "E7": lambda n, s: f"y^3+y*z^3+{s}",
    "E8": lambda n, s: f"y^3+z^5+{s}",
}


@pytest.mark.parametrize("suspension,ring", [("x^2", ("x", "y", "z")), ("x^2+t^2", RING4)])
def test_classifier_fixed_points(suspension, ring):
    cases = [("A", n) for n in range(1, 8)] + [("D", n) for n in range(4, 8)]
    cases += [("E6", 6), ("E7", 7), ("E8", 8)]
    for kind, n in cases:
        label = kind if kind.startswith("E") else f"{kind}{n}"
        f = parse_poly(ADE_FORMS[kind](n, suspension), ring)
        rep = classify_simple(f)
        assert rep.type.label == label, f"{f} -> {rep.type.label}"
        assert rep.mu_local == rep.tau == n


def test_classifier_footnote_and_verdicts():
    assert classify_simple(germ(FOOTNOTE)).type.label == "A5"
    assert classify_simple(germ("x^2+y^2*z+z^5+t^2")).type.label == "D6"
    assert classify_simple(germ("x^2+y^3+z^5+t^2")).type.label == "E8"
    assert classify_simple(germ("x+y+z+t")).type.kind == "NotSingular"
    assert classify_simple(germ("x^2+y^2")).type.kind == "NonIsolated"
    # quasi-homogeneous but not simple: corank 2 with a vanishing cubic
    rep = classify_simple(germ("x^2+t^2+y^4+z^4"))
    assert rep.type.kind == "NonSimple"
    assert rep.type.mu == 9 and rep.type.corank == 2
    # corank 3 cubic cone
    rep = classify_simple(germ("x^2+y^3+z^3+t^3"))
    assert rep.type.kind == "NonSimple" and rep.type.corank == 3


def test_type_constructors_reject_bad_indices():
    with pytest.raises(ValueError):
        SingularityType.A(0)
    with pytest.raises(ValueError):
        SingularityType.D(3)
    with pytest.raises(ValueError):
        SingularityType.E(5)


# -- sections and least index -----------------------------------------------------


def test_du_val_sections():
    e7 = germ("x^2+y^3+y*z^3+t^2")
    tp = du_val_section_type(e7, parse_poly("z", RING4))
    assert tp.label == "A2"
    d6 = germ("x^2+y^2*z+z^5+t^2")
    tp = du_val_section_type(d6, parse_poly("z-y", RING4))
    assert tp.label == "A2"
    node = germ("x^2+y^2+z^2+t^2")
    tp = du_val_section_type(node, parse_poly("x", RING4))
    assert tp.label == "A1"
    with pytest.raises(ValueError):
        du_val_section_type(node, parse_poly("x+1", RING4))


def test_least_index_examples():
    assert least_index_estimate(germ("x^2+y^2+z^6+t^2"), trials=8) == 1
    assert least_index_estimate(germ("x^2+y^2+z^2+t^2"), trials=4) == 1
    assert least_index_estimate(germ("x^2-z^2-y^3+w^3", NAMI_RING), trials=16) == 2


# -- invariants --------------------------------------------------------------------


def test_tau_le_mu_and_suspension_stability():
    fixtures = [
        "x^2+y^2+z^4+t^2",
        "x^2+y^3+z^4+t^2",
        "x^2+y^2*z+z^5+t^2",
        FOOTNOTE,
    ]
    big = RING4 + ("u",)
    for text in fixtures:
        f = germ(text)
        mu, _ = milnor_number(f)
        tau, _ = tyurina_number(f)
        assert tau <= mu
        suspended = f.embed(big) + MultiPoly.variable(big, "u") ** 2
        assert milnor_number(suspended)[0] == mu


def test_invariance_under_unimodular_change():
    rng = random.Random(5)
    fixtures = ["x^2+y^3+z^4+t^2", FOOTNOTE, "x^2+y^2*z+z^4+t^2"]
    for text in fixtures:
        f = germ(text)
        mu, tau = milnor_number(f)[0], tyurina_number(f)[0]
        for _ in range(3):
            # random shear: x_i -> x_i + c * x_j is unimodular
            i, j = rng.sample(range(4), 2)
            c = Fraction(rng.randint(1, 3), rng.randint(1, 2))
            images = {
                RING4[i]: MultiPoly.variable(RING4, RING4[i])
                + MultiPoly.variable(RING4, RING4[j]) * c
            }
            f = f.substitute(images)
            assert milnor_number(f)[0] == mu
            assert tyurina_number(f)[0] == tau


def test_wh_report_consistency():
    # weights reported => tau == mu and the Milnor-Orlik product matches
    for text in ["x^2+y^3+z^4+t^2", "x^2+y^2*z+z^6+t^2", "x^2+y^2+z^9+t^2"]:
        rep = classify_simple(germ(text))
        assert rep.weights is not None
        assert rep.tau == rep.mu_local
        assert milnor_orlik([rep.weights[v] for v in RING4]) == rep.mu_local
