"""State-sum and state-weight invariants built from colorings and cocycle weights.

Four quantities are computed from a diagram D, a quandle G, a 2-cocycle
phi and (except for Z) an automorphism f used at virtual crossings:

  Z   sum over colorings of the product of crossing weights
      (classical diagrams only)
  Z1  product over ALL colorings of the crossing-weight product
      (a single monomial; invariant for every automorphism f)
  Z2  sum over colorings of the crossing-weight product
      (requires phi(a,b) = phi(f a, f b); enforced, not assumed)
  Z3  sum of the Z1 monomials over every automorphism of G

Per-crossing weights follow a fixed argument convention: a positive
crossing contributes phi(color(under_in), color(over)), a negative one
phi(color(under_out), color(over))^-1, and virtual crossings contribute
the identity.  This is the unique convention under which the two
crossings created by a strand poke cancel exactly and a kink weighs
phi(a, a) = 1.

Every free loop multiplies the coloring count by |G|; accordingly it
scales every polynomial multiplicity by |G| and the Z1 exponent by |G|.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import FiniteQuandle, QuandleMap, automorphisms
from .diagram import ClassicalCrossing, VirtualDiagram
from .errors import InvalidParameter, PreconditionFailed, WrongKind
from .solver import enumerate_colorings
from .weights import Cocycle2, Weight, WeightPolynomial, preservation_witness


@dataclass(frozen=True)
class InvariantResult:
    """A computed invariant with the bookkeeping the JSON form exposes."""

    kind: str
    value: Weight | WeightPolynomial
    colorings: int
    free_loop_factor: int
    preserving: bool | None = None

    def to_json(self) -> str:
        obj: dict = {"kind": self.kind}
        if isinstance(self.value, Weight):
            obj["exponent"] = self.value.exponent
        else:
            obj["polynomial"] = self.value.to_json_obj()
        obj["colorings"] = self.colorings
        if self.preserving is not None:
            obj["preserving"] = self.preserving
        return json.dumps(obj, separators=(",", ":"))

    def __str__(self) -> str:
        return str(self.value)


def _classical_weight_exponent(d: VirtualDiagram, c: Cocycle2, coloring) -> int:
    exp = 0
    e = c.exponents
    for x in d.crossings:
        if isinstance(x, ClassicalCrossing):
            if x.sign > 0:
                exp += e[coloring[x.under_in]][coloring[x.over_in]]
            else:
                exp -= e[coloring[x.under_out]][coloring[x.over_in]]
    return exp


def _verify_classical_rules(d: VirtualDiagram, c: Cocycle2, coloring) -> None:
    if len(coloring) != d.edges:
        raise InvalidParameter("coloring length does not match the edge count")
    q = c.quandle
    for x in d.crossings:
        if not isinstance(x, ClassicalCrossing):
            continue
        o = coloring[x.over_in]
        if coloring[x.over_out] != o:
            raise InvalidParameter("coloring violates an over-strand rule")
        if x.sign > 0:
            if coloring[x.under_out] != q.table[coloring[x.under_in]][o]:
                raise InvalidParameter("coloring violates an under-strand rule")
        elif q.table[coloring[x.under_out]][o] != coloring[x.under_in]:
            raise InvalidParameter("coloring violates an under-strand rule")


def coloring_weight(d: VirtualDiagram, c: Cocycle2, coloring) -> Weight:
    """Product over classical crossings of phi(x, y)^sign for one coloring.

    The classical crossing rules are re-checked (the virtual rules depend
    on the twist map and are the solver's business).
    """
    _verify_classical_rules(d, c, coloring)
    return Weight(c.group, _classical_weight_exponent(d, c, coloring))


def state_sum_classical(d: VirtualDiagram, q: FiniteQuandle, c: Cocycle2) -> WeightPolynomial:
    """Z: the weight sum over all colorings of a classical diagram."""
    if any(not isinstance(x, ClassicalCrossing) for x in d.crossings):
        raise WrongKind("the classical state sum is undefined on virtual diagrams; use Z2")
    identity = QuandleMap.identity(q.order)
    colorings = enumerate_colorings(d, q, identity)
    poly = WeightPolynomial.from_pairs(
        (c.group.reduce(_classical_weight_exponent(d, c, a)), 1) for a in colorings
    )
    factor = q.order**d.free_loops
    return poly.scale(factor) if factor > 1 else poly


def state_weight_z1(d: VirtualDiagram, q: FiniteQuandle, c: Cocycle2, f: QuandleMap) -> Weight:
    """Z1: the product of all coloring weights, a single monomial."""
    colorings = enumerate_colorings(d, q, f)
    total = sum(_classical_weight_exponent(d, c, a) for a in colorings)
    return Weight(c.group, total * q.order**d.free_loops)


def state_sum_z2(d: VirtualDiagram, q: FiniteQuandle, c: Cocycle2, f: QuandleMap) -> WeightPolynomial:
    """Z2: the weight sum over colorings; requires the twist map to preserve phi."""
    witness = preservation_witness(f, c)
    if witness is not None:
        a, b = witness
        raise PreconditionFailed(
            f"the twist map does not preserve the cocycle: phi({a},{b}) != phi(f({a}),f({b}))",
            witness=witness,
        )
    colorings = enumerate_colorings(d, q, f)
    poly = WeightPolynomial.from_pairs(
        (c.group.reduce(_classical_weight_exponent(d, c, a)), 1) for a in colorings
    )
    factor = q.order**d.free_loops
    return poly.scale(factor) if factor > 1 else poly


def aut_sum_z3(d: VirtualDiagram, q: FiniteQuandle, c: Cocycle2, bound: int = 8) -> WeightPolynomial:
    """Z3: the sum of the Z1 monomials over all automorphisms of the quandle."""
    return WeightPolynomial.from_pairs(
        (state_weight_z1(d, q, c, f).exponent, 1) for f in automorphisms(q, bound)
    )


def compute_invariant(
    kind: str,
    d: VirtualDiagram,
    q: FiniteQuandle,
    c: Cocycle2,
    f: QuandleMap | None = None,
) -> InvariantResult:
    """Uniform front end used by the command-line tool."""
    factor = q.order**d.free_loops
    if kind == "z":
        value = state_sum_classical(d, q, c)
        count = value.evaluate_at_one()
        return InvariantResult("Z", value, count, factor)
    if f is None:
        raise InvalidParameter(f"invariant {kind!r} needs an automorphism")
    colorings = len(enumerate_colorings(d, q, f)) * factor
    if kind == "z1":
        return InvariantResult("Z1", state_weight_z1(d, q, c, f), colorings, factor)
    if kind == "z2":
        value = state_sum_z2(d, q, c, f)
        return InvariantResult("Z2", value, colorings, factor, preserving=True)
    if kind == "z3":
        return InvariantResult("Z3", aut_sum_z3(d, q, c), colorings, factor)
    raise InvalidParameter(f"unknown invariant kind {kind!r}")
