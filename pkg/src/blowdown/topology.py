"""Topology of the surgered surface: fundamental group and homeomorphism type.

Cutting out disjoint chain neighbourhoods and gluing in rational homology
balls changes a smooth rational surface into a candidate exotic surface.
This module tracks what survives that surgery: the Euler characteristic and
signature bookkeeping, a certificate that the fundamental group dies, the
parity of the intersection form, and the resulting homeomorphism fingerprint.

The fundamental group argument works on a connection graph.  Each node is a
contracted chain, whose boundary lens space has cyclic fundamental group of
order ``p^2``; each edge is a curve meeting two chains, giving a relation
between powers of the two meridian generators.  Killing generators via
greatest common divisors is exactly the computation done by hand in such
arguments, and the closure below performs it deterministically, recording
every forcing step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence, Union

from .contraction import (
    ChainEmbedding,
    contracted_k_squared,
    validate_embedding,
)
from .lattice import SurfaceModel
from .tchains import continuants

__all__ = [
    "GraphNode",
    "GraphEdge",
    "ConnectionGraph",
    "parse_graph",
    "load_graph",
    "meridian_powers",
    "ClosureStep",
    "Pi1Result",
    "pi1_closure",
    "RationalBall",
    "rational_ball_invariants",
    "SurfaceSummary",
    "blowdown_invariants",
    "fingerprint",
    "rationality_exclusion",
]


@dataclass(frozen=True)
class GraphNode:
    """One contracted chain: its boundary is the lens space L(p^2, pq-1).

    A node may instead carry an explicit cyclic order, for graphs that are
    not backed by chains; such an order need not be a perfect square.
    """

    name: str
    p: int = 0
    q: int = 0
    explicit_order: Union[int, None] = None

    @property
    def order(self) -> int:
        if self.explicit_order is not None:
            return self.explicit_order
        return self.p * self.p


@dataclass(frozen=True)
class GraphEdge:
    """A curve meeting two chains, with the meridian powers it relates.

    ``power_a`` is the exponent of the chosen generator of node ``a``'s
    cyclic group carried by the meridian of the chain curve the edge meets;
    likewise ``power_b``.  Any unit rescaling of a node's generator leaves
    the closure below unchanged, so an edge meeting an end curve of a chain
    may record that power simply as 1.
    """

    a: str
    b: str
    power_a: int
    power_b: int


@dataclass(frozen=True)
class ConnectionGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    reconstructed: bool = False

    def node(self, name: str) -> GraphNode:
        for node in self.nodes:
            if node.name == name:
                return node
        raise KeyError(f"no graph node named {name!r}")

    def orders(self) -> dict[str, int]:
        return {node.name: node.order for node in self.nodes}


def parse_graph(data: Mapping) -> ConnectionGraph:
    parsed = []
    for n in data["nodes"]:
        name = str(n["name"])
        if "order" in n:
            order = int(n["order"])
            if order < 1:
                raise ValueError(f"node {name!r} has non-positive order {order}")
            parsed.append(GraphNode(name=name, explicit_order=order))
        else:
            parsed.append(GraphNode(name=name, p=int(n["p"]), q=int(n["q"])))
    nodes = tuple(parsed)
    names = {n.name for n in nodes}
    if len(names) != len(nodes):
        raise ValueError("graph has duplicate node names")
    edges = []
    for e in data["edges"]:
        a, b = str(e["a"]), str(e["b"])
        if a not in names or b not in names:
            raise ValueError(f"edge {a!r} -- {b!r} mentions an unknown node")
        power_a, power_b = int(e["power_a"]), int(e["power_b"])
        if power_a < 1 or power_b < 1:
            raise ValueError(f"edge {a!r} -- {b!r} has a non-positive power")
        edges.append(GraphEdge(a=a, b=b, power_a=power_a, power_b=power_b))
    return ConnectionGraph(
        nodes=nodes,
        edges=tuple(edges),
        reconstructed=bool(data.get("reconstructed", False)),
    )


def load_graph(path: str) -> ConnectionGraph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph(json.load(handle))


def meridian_powers(bs: Sequence[int]) -> tuple[int, ...]:
    """Meridian exponents of the chain curves in the boundary lens space.

    With the generator taken at the last curve of the chain, the meridian
    of the i-th curve is the generator raised to the continuant of the
    trailing subchain ``(b_{i+1}, ..., b_k)``; the last curve itself gets
    exponent 1.  The leading curve's exponent is coprime to the total
    determinant, so either end generates and may serve as the unit.
    """
    chain = tuple(bs)
    out = []
    for i in range(len(chain)):
        suffix = chain[i + 1 :]
        out.append(continuants(suffix)[-1] if suffix else 1)
    return tuple(out)


@dataclass(frozen=True)
class ClosureStep:
    edge_index: int
    source: str
    target: str
    source_order: int
    multiplier: int
    power_source: int
    power_target: int
    old_order: int
    new_order: int

    def describe(self) -> str:
        return (
            f"edge {self.edge_index} ({self.source} -> {self.target}): "
            f"meridian power {self.power_source} in {self.source} "
            f"(order {self.source_order}) generates a subgroup of order "
            f"{self.multiplier}; order of {self.target} drops from "
            f"{self.old_order} to gcd({self.old_order}, "
            f"{self.power_target} * {self.multiplier}) = {self.new_order}"
        )


@dataclass(frozen=True)
class Pi1Result:
    trivial: bool
    orders: tuple[tuple[str, int], ...]
    steps: tuple[ClosureStep, ...]

    def describe(self) -> list[str]:
        lines = [step.describe() for step in self.steps]
        final = ", ".join(f"{name}: {order}" for name, order in self.orders)
        lines.append(f"final orders: {final}")
        lines.append(
            "fundamental group killed"
            if self.trivial
            else "closure leaves residual cyclic factors"
        )
        return lines


def pi1_closure(graph: ConnectionGraph) -> Pi1Result:
    """Drive every node's cyclic order to 1, if the edge relations allow.

    Each edge says the two meridian powers agree up to inversion, so the
    subgroup orders must match: if the power ``w_a`` of node ``a``'s
    generator has order ``m`` in the current quotient, then node ``b``'s
    order divides ``gcd(o_b, w_b * m)``.  Edges are replayed in their given
    order, both directions, until no more forcing occurs; the step log is
    therefore deterministic.  Triviality of every cyclic factor certifies
    that the glued manifold is simply connected, provided the ambient
    complement contributes no extra generators.
    """
    orders = graph.orders()
    steps: list[ClosureStep] = []
    changed = True
    while changed:
        changed = False
        for index, edge in enumerate(graph.edges, start=1):
            for src, tgt, w_src, w_tgt in (
                (edge.a, edge.b, edge.power_a, edge.power_b),
                (edge.b, edge.a, edge.power_b, edge.power_a),
            ):
                o_src, o_tgt = orders[src], orders[tgt]
                multiplier = o_src // gcd(o_src, w_src)
                new = gcd(o_tgt, w_tgt * multiplier)
                if new < o_tgt:
                    steps.append(
                        ClosureStep(
                            edge_index=index,
                            source=src,
                            target=tgt,
                            source_order=o_src,
                            multiplier=multiplier,
                            power_source=w_src,
                            power_target=w_tgt,
                            old_order=o_tgt,
                            new_order=new,
                        )
                    )
                    orders[tgt] = new
                    changed = True
    ordered = tuple((node.name, orders[node.name]) for node in graph.nodes)
    return Pi1Result(
        trivial=all(order == 1 for _, order in ordered),
        orders=ordered,
        steps=tuple(steps),
    )


@dataclass(frozen=True)
class RationalBall:
    """Invariants of the rational homology ball glued in for one chain."""

    p: int
    q: int
    euler: int
    signature: int
    h1_order: int


def rational_ball_invariants(p: int, q: int) -> RationalBall:
    """The ball bounding L(p^2, pq-1): contractible homologically over Q."""
    if gcd(p, q) != 1 or not 0 < q < p:
        raise ValueError(f"need coprime 0 < q < p, got p={p}, q={q}")
    return RationalBall(p=p, q=q, euler=1, signature=0, h1_order=p)


@dataclass(frozen=True)
class SurfaceSummary:
    """Numerical record of the surgered surface."""

    k_squared: Fraction
    euler: int
    signature: int
    b2_plus: int
    b2_minus: int
    chi: int
    noether_ok: bool
    parity: str
    parity_reason: str
    pi1_trivial: Union[bool, None]
    fingerprint: Union[str, None]


def _parity(
    model: SurfaceModel,
    embeddings: Sequence[ChainEmbedding],
    signature: int,
    b2_plus: int,
    b2_minus: int,
    override: Union[str, None],
) -> tuple[str, str]:
    """Decide whether the surgered intersection form is odd.

    First look for a named witness curve: one disjoint from every contracted
    curve whose image therefore survives, with odd self-intersection.  If no
    witness is named, fall back to the signature: an even indefinite
    unimodular form has signature divisible by 8, so a signature that is not
    forces the form to be odd.  An explicit override wins over both rules.
    """
    if override is not None:
        return override, "recorded in the construction data"
    contracted = {name for emb in embeddings for name in emb.curves}
    for name in model.curves:
        if name in contracted:
            continue
        cls = model.curve(name)
        self_int = cls.dot(cls)
        if self_int.denominator != 1 or int(self_int) % 2 == 0:
            continue
        if all(
            model.intersect(name, other) == 0
            for other in contracted
        ):
            return (
                "odd",
                f"curve {name} survives the contraction with odd "
                f"self-intersection {self_int}",
            )
    if b2_plus >= 1 and b2_minus >= 1 and signature % 8 != 0:
        return (
            "odd",
            f"signature {signature} is not divisible by 8, which an even "
            "indefinite unimodular form would require",
        )
    return "unknown", "no witness curve and the signature test is silent"


def blowdown_invariants(
    model: SurfaceModel,
    embeddings: Sequence[ChainEmbedding],
    graph: Union[ConnectionGraph, None] = None,
    parity_override: Union[str, None] = None,
) -> SurfaceSummary:
    """Invariants of the surface after rationally blowing down the chains.

    Each chain neighbourhood (Euler characteristic ``k + 1``, signature
    ``-k``) is traded for a rational ball (Euler characteristic 1,
    signature 0), so the Euler characteristic drops by ``k`` per chain and
    the signature rises by ``k``.  The canonical self-intersection comes
    from the contraction pullback.  Holomorphic invariants follow from the
    signature theorem and are cross-checked against the Noether relation.
    """
    for emb in embeddings:
        validate_embedding(model, emb)
        rational_ball_invariants(emb.p, emb.q)
    total_length = sum(len(emb.curves) for emb in embeddings)
    k_squared = contracted_k_squared(model, embeddings)
    euler = 3 + model.blowup_count - total_length
    signature = (1 - model.blowup_count) + total_length
    b2 = model.lattice_rank - total_length
    if (b2 + signature) % 2 != 0:
        raise ValueError(
            f"inconsistent surgery data: b2 = {b2}, signature = {signature}"
        )
    b2_plus = (b2 + signature) // 2
    b2_minus = (b2 - signature) // 2
    if b2_plus < 0 or b2_minus < 0:
        raise ValueError(
            f"signature {signature} out of range for b2 = {b2}"
        )
    if (euler + signature) % 4 != 0:
        raise ValueError(
            f"Euler characteristic {euler} and signature {signature} "
            "are incompatible with a complex structure"
        )
    chi = (euler + signature) // 4
    noether_ok = k_squared + euler == 12 * chi
    pi1_trivial: Union[bool, None] = None
    if graph is not None:
        pi1_trivial = pi1_closure(graph).trivial
    parity, parity_reason = _parity(
        model, embeddings, signature, b2_plus, b2_minus, parity_override
    )
    summary = SurfaceSummary(
        k_squared=k_squared,
        euler=euler,
        signature=signature,
        b2_plus=b2_plus,
        b2_minus=b2_minus,
        chi=chi,
        noether_ok=noether_ok,
        parity=parity,
        parity_reason=parity_reason,
        pi1_trivial=pi1_trivial,
        fingerprint=None,
    )
    return replace(summary, fingerprint=fingerprint(summary))


def fingerprint(summary: SurfaceSummary) -> Union[str, None]:
    """Homeomorphism type read off the classification of simply connected
    four-manifolds, when the hypotheses are all certified.

    An odd indefinite form of type ``(a, b)`` is diagonal, so a simply
    connected surface carrying it is homeomorphic to the connected sum of
    ``a`` projective planes and ``b`` reversed ones.
    """
    if summary.pi1_trivial is not True:
        return None
    if summary.parity != "odd":
        return None
    if summary.b2_plus < 1 or summary.b2_minus < 1:
        return None
    plus = "P2" if summary.b2_plus == 1 else f"{summary.b2_plus} P2"
    return f"{plus} # {summary.b2_minus} P2bar"


def rationality_exclusion(
    k_squared: Union[int, Fraction], chi: Union[int, Fraction]
) -> tuple[bool, Fraction]:
    """Second plurigenus test separating the surface from rational ones.

    For a minimal surface of general type the second plurigenus equals
    ``chi + K^2``; any positive value is impossible for a rational surface,
    whose plurigenera all vanish.  Returns the verdict and the plurigenus.
    """
    value = Fraction(chi) + Fraction(k_squared)
    return value > 0, value
