import random

import pytest

from vknots.algebra import QuandleMap, automorphisms, inner_automorphism, make_dihedral
from vknots.diagram import BUILDER_NAMES, builder
from vknots.errors import InvalidParameter, PreconditionFailed, WrongKind
from vknots.invariants import (
    InvariantResult,
    aut_sum_z3,
    coloring_weight,
    compute_invariant,
    state_sum_classical,
    state_sum_z2,
    state_weight_z1,
)
from vknots.solver import count_colorings, enumerate_colorings
from vknots.weights import (
    CoefficientGroup,
    Cochain1,
    Weight,
    coboundary,
    cocycle_product,
    example_cocycle_r4,
    trivial_cocycle,
)

Q3, Q4 = make_dihedral(3), make_dihedral(4)
PHI = example_cocycle_r4()
ID4 = QuandleMap.identity(4)
INNER0 = inner_automorphism(Q4, 0)
SHIFT = QuandleMap((1, 2, 3, 0))
Z = CoefficientGroup(0)


def test_coloring_weight_rules():
    d = builder("unknot_vkink")
    for a in range(4):
        w = coloring_weight(d, PHI, (a, a))
        assert w.is_identity()
    kink = builder("unknot_kink_pos")
    for a in range(4):
        assert coloring_weight(kink, PHI, (a, a)).is_identity()
    tre = builder("trefoil")
    assert coloring_weight(tre, PHI, (0,) * 6).is_identity()
    with pytest.raises(InvalidParameter):
        coloring_weight(tre, PHI, (0, 1, 0, 0, 0, 0))
    with pytest.raises(InvalidParameter):
        coloring_weight(tre, PHI, (0, 0))


def test_weight_convention_on_hopf():
    # a nonconstant hopf coloring picks up the cocycle entries of both
    # crossings; the exact values are pinned by the brute-force oracle
    d = builder("hopf_pos")
    cols = enumerate_colorings(d, Q4, ID4)
    assert len(cols) == 8
    weights = sorted(coloring_weight(d, PHI, c).exponent for c in cols)
    assert weights == [0] * 8  # oracle-computed: all eight weights vanish


def test_classical_state_sum_values():
    # oracle-frozen values over the dihedral quandle of order 4
    assert str(state_sum_classical(builder("unknot"), Q4, PHI)) == "4"
    assert str(state_sum_classical(builder("trefoil"), Q4, PHI)) == "4"
    assert str(state_sum_classical(builder("hopf_pos"), Q4, PHI)) == "8"
    assert str(state_sum_classical(builder("figure_eight"), Q4, PHI)) == "4"
    assert str(state_sum_classical(builder("trefoil"), Q3, trivial_cocycle(Q3))) == "9"


def test_classical_state_sum_rejects_virtual():
    with pytest.raises(WrongKind):
        state_sum_classical(builder("virtual_trefoil"), Q4, PHI)


def test_unknot_values():
    assert str(state_sum_z2(builder("unknot"), Q4, PHI, INNER0)) == "4"
    assert state_weight_z1(builder("unknot"), Q4, PHI, INNER0) == Weight(Z, 0)
    z3 = aut_sum_z3(builder("unknot"), Q4, PHI)
    assert z3.terms == ((0, 8),)  # one identity monomial per automorphism


def test_trivial_cocycle_values():
    for name in BUILDER_NAMES:
        d = builder(name)
        triv = trivial_cocycle(Q4)
        assert state_weight_z1(d, Q4, triv, INNER0) == Weight(Z, 0)
        z2 = state_sum_z2(d, Q4, triv, INNER0)
        assert z2.terms == () or z2.terms == ((0, count_colorings(d, Q4, INNER0)),)


def test_frozen_virtual_values():
    # all constants below were computed with the brute-force oracle
    vt = builder("virtual_trefoil")
    assert state_sum_z2(vt, Q4, PHI, INNER0).terms == ((0, 4),)
    assert state_weight_z1(vt, Q4, PHI, ID4) == Weight(Z, 0)
    assert state_weight_z1(vt, Q4, PHI, INNER0) == Weight(Z, 0)
    assert state_weight_z1(vt, Q4, PHI, SHIFT) == Weight(Z, 2)
    assert aut_sum_z3(vt, Q4, PHI).terms == ((0, 4), (2, 4))
    vh = builder("virtual_hopf")
    assert state_sum_z2(vh, Q4, PHI, INNER0).terms == ((0, 8),)
    assert aut_sum_z3(vh, Q4, PHI).terms == ((0, 7), (2, 1))
    assert state_sum_z2(builder("kishino"), Q4, PHI, INNER0).terms == ((0, 4),)


def test_z2_precondition_enforced():
    with pytest.raises(PreconditionFailed) as err:
        state_sum_z2(builder("virtual_trefoil"), Q4, PHI, SHIFT)
    assert err.value.witness == (0, 1)


def test_z2_equals_z_on_classical_diagrams():
    classical = [n for n in BUILDER_NAMES if not builder(n).virtual()]
    assert classical
    for name in classical:
        d = builder(name)
        z = state_sum_classical(d, Q4, PHI)
        for f in (ID4, INNER0):
            assert state_sum_z2(d, Q4, PHI, f) == z


def test_z2_at_one_equals_coloring_count():
    for name in BUILDER_NAMES:
        d = builder(name)
        assert state_sum_z2(d, Q4, PHI, INNER0).evaluate_at_one() == count_colorings(d, Q4, INNER0)


def test_free_loops_scale_all_invariants():
    from vknots.diagram import VirtualDiagram

    vt = builder("virtual_trefoil")
    doubled = VirtualDiagram(vt.edges, vt.free_loops + 2, vt.crossings)
    assert count_colorings(doubled, Q4, INNER0) == 16 * count_colorings(vt, Q4, INNER0)
    z2 = state_sum_z2(doubled, Q4, PHI, INNER0)
    assert z2 == state_sum_z2(vt, Q4, PHI, INNER0).scale(16)
    z1 = state_weight_z1(doubled, Q4, PHI, SHIFT)
    assert z1.exponent == 16 * state_weight_z1(vt, Q4, PHI, SHIFT).exponent


def test_z1_invariant_under_cohomologous_change():
    rng = random.Random(9)
    for name in ("virtual_trefoil", "virtual_hopf", "kishino", "trefoil"):
        d = builder(name)
        base = state_weight_z1(d, Q4, PHI, INNER0)
        for _ in range(10):
            psi = Cochain1(Z, tuple(rng.randrange(-5, 6) for _ in range(4)))
            shifted = cocycle_product(PHI, coboundary(Q4, Z, psi))
            assert state_weight_z1(d, Q4, shifted, INNER0) == base


def test_z3_at_one_counts_automorphisms():
    n_aut = len(automorphisms(Q4))
    for name in ("unknot", "virtual_trefoil", "kishino"):
        assert aut_sum_z3(builder(name), Q4, PHI).evaluate_at_one() == n_aut


def test_compute_invariant_results():
    r = compute_invariant("z2", builder("virtual_trefoil"), Q4, PHI, INNER0)
    assert isinstance(r, InvariantResult)
    assert r.kind == "Z2" and r.preserving is True and r.colorings == 4
    assert r.to_json() == '{"kind":"Z2","polynomial":[[0,4]],"colorings":4,"preserving":true}'
    r = compute_invariant("z1", builder("virtual_trefoil"), Q4, PHI, SHIFT)
    assert r.kind == "Z1" and str(r) == "t^2"
    r = compute_invariant("z", builder("hopf_pos"), Q4, PHI)
    assert str(r) == "8"
    r = compute_invariant("z3", builder("virtual_hopf"), Q4, PHI, INNER0)
    assert str(r) == "7 + t^2"
    with pytest.raises(InvalidParameter):
        compute_invariant("z1", builder("unknot"), Q4, PHI, None)
    with pytest.raises(InvalidParameter):
        compute_invariant("zz", builder("unknot"), Q4, PHI, ID4)


def test_modular_coefficients():
    g2 = CoefficientGroup(2)
    from vknots.weights import Cocycle2

    phi2 = Cocycle2(Q4, g2, PHI.exponents)
    vt = builder("virtual_trefoil")
    z1 = state_weight_z1(vt, Q4, phi2, SHIFT)
    assert z1.group.modulus == 2
    assert z1.exponent == 0  # 2 mod 2
