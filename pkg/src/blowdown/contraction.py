"""Contraction of curve chains to quotient singularities, done numerically.

Given a surface model carrying disjoint chains of rational curves, the
contraction to a singular surface is tracked through exact lattice data:
discrepancies come from a fraction-free tridiagonal solve, the pullback of
the contracted canonical class is assembled from them, and negative
definiteness of each chain is certified by the signs of leading principal
minors.  Nothing here is numerical in the floating point sense; every
value is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .lattice import DivisorClass, SurfaceModel
from .tchains import chain_determinant, continuants, hj_expand

__all__ = [
    "ContractionError",
    "ChainEmbedding",
    "ChainCertificate",
    "ArtinCertificate",
    "chain_shape",
    "validate_embedding",
    "check_artin",
    "chain_discrepancies",
    "k_squared_gain",
    "pullback_canonical",
    "contracted_k_squared",
    "nef_values",
    "expand_in_curves",
]


class ContractionError(ValueError):
    """A chain embedding fails one of the contraction prerequisites."""


@dataclass(frozen=True)
class ChainEmbedding:
    """A chain of named curves meant to contract to a ``p/q`` point.

    ``curves`` lists the chain in order; the model determines the actual
    self-intersections, which :func:`validate_embedding` compares against
    the continued fraction of ``p^2/(pq - 1)``.
    """

    p: int
    q: int
    curves: tuple[str, ...]

    @property
    def label(self) -> str:
        return f"C({self.p},{self.q})"

    @property
    def expected_chain(self) -> tuple[int, ...]:
        return hj_expand(self.p * self.p, self.p * self.q - 1)


def chain_shape(model: SurfaceModel, curves: Sequence[str]) -> tuple[int, ...]:
    """Read ``(b_1, ..., b_k)`` off the model, where ``b_i = -curve_i^2``."""
    bs = []
    for name in curves:
        self_int = model.self_intersection(name)
        if self_int.denominator != 1 or self_int > -2:
            raise ContractionError(
                f"curve {name!r} has self-intersection {self_int}, "
                "need an integer at most -2"
            )
        bs.append(int(-self_int))
    return tuple(bs)


def validate_embedding(
    model: SurfaceModel, emb: ChainEmbedding
) -> tuple[int, ...]:
    """Check a chain embedding curve by curve and return its shape.

    Verifies that the curves are distinct, consecutive ones meet once,
    non-consecutive ones are disjoint, the shape matches the continued
    fraction of ``p^2/(pq - 1)``, and the chain determinant is ``p^2``
    (the boundary lens space check).
    """
    names = emb.curves
    if len(set(names)) != len(names):
        raise ContractionError(f"{emb.label}: repeated curve in chain {names}")
    bs = chain_shape(model, names)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            value = model.intersect(names[i], names[j])
            expected = 1 if j == i + 1 else 0
            if value != expected:
                raise ContractionError(
                    f"{emb.label}: {names[i]} . {names[j]} = {value}, "
                    f"expected {expected}"
                )
    expected_bs = emb.expected_chain
    if bs != expected_bs:
        raise ContractionError(
            f"{emb.label}: shape {bs} does not match "
            f"the expansion {expected_bs} of {emb.p}^2/({emb.p}*{emb.q} - 1)"
        )
    det = chain_determinant(bs)
    if det != emb.p * emb.p:
        raise ContractionError(
            f"{emb.label}: chain determinant {det}, expected {emb.p * emb.p}"
        )
    return bs


def _intersection_matrix(
    model: SurfaceModel, names: Sequence[str]
) -> list[list[Fraction]]:
    classes = [model.curve(n) for n in names]
    return [[a.dot(b) for b in classes] for a in classes]


def _determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    size = len(matrix)
    work = [list(row) for row in matrix]
    det = Fraction(1)
    for col in range(size):
        pivot_row = next(
            (r for r in range(col, size) if work[r][col] != 0), None
        )
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, size):
            factor = work[r][col] / pivot
            if factor:
                work[r] = [
                    work[r][c] - factor * work[col][c] for c in range(size)
                ]
    return det


@dataclass(frozen=True)
class ChainCertificate:
    label: str
    chain: tuple[int, ...]
    minors: tuple[Fraction, ...]
    negative_definite: bool
    determinant: Fraction
    expected_determinant: int

    @property
    def ok(self) -> bool:
        return self.negative_definite and (
            self.determinant == (-1) ** len(self.chain) * self.expected_determinant
        )


@dataclass(frozen=True)
class ArtinCertificate:
    chains: tuple[ChainCertificate, ...]
    cross_violations: tuple[tuple[str, str, str, str, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.cross_violations and all(c.ok for c in self.chains)


def check_artin(
    model: SurfaceModel, embeddings: Sequence[ChainEmbedding]
) -> ArtinCertificate:
    """Certify that the chains contract: each negative definite, all disjoint.

    For each chain the leading principal minors ``m_1, ..., m_k`` of its
    intersection matrix must satisfy ``(-1)^j m_j > 0``, and the full
    determinant must be ``(-1)^k p^2``.  Distinct chains must not meet.
    """
    certificates = []
    for emb in embeddings:
        matrix = _intersection_matrix(model, emb.curves)
        minors = tuple(
            _determinant([row[: j + 1] for row in matrix[: j + 1]])
            for j in range(len(matrix))
        )
        definite = all(
            ((-1) ** (j + 1)) * minor > 0 for j, minor in enumerate(minors)
        )
        certificates.append(
            ChainCertificate(
                label=emb.label,
                chain=chain_shape(model, emb.curves),
                minors=minors,
                negative_definite=definite,
                determinant=minors[-1],
                expected_determinant=emb.p * emb.p,
            )
        )
    violations = []
    for i in range(len(embeddings)):
        for j in range(i + 1, len(embeddings)):
            for a in embeddings[i].curves:
                for b in embeddings[j].curves:
                    value = model.intersect(a, b)
                    if value != 0:
                        violations.append(
                            (
                                embeddings[i].label,
                                a,
                                embeddings[j].label,
                                b,
                                value,
                            )
                        )
    return ArtinCertificate(
        chains=tuple(certificates), cross_violations=tuple(violations)
    )


def chain_discrepancies(bs: Sequence[int]) -> tuple[Fraction, ...]:
    """Discrepancies ``d_1, ..., d_k`` of the chain's contraction.

    These solve the tridiagonal system ``sum_i (G_i . G_j) d_i = 2 - b_j``,
    which says the class ``K + sum d_i G_i`` is orthogonal to every curve
    of the chain.  The solve is fraction-free: with continuants ``q_j`` and
    forcing terms ``s_j = b_j s_{j-1} - s_{j-2} + (2 - b_j)``, the first
    discrepancy is ``-s_k/q_k`` and ``d_{j+1} = q_j d_1 + s_j``.  All
    discrepancies of a chain with entries at least 2 (not all 2) lie in
    the open interval (0, 1).
    """
    qs = continuants(bs)
    chain = tuple(bs)
    prev, cur = Fraction(0), Fraction(0)
    ss = []
    for j, b in enumerate(chain):
        prev, cur = cur, b * cur - prev + (2 - b)
        ss.append(cur)
    d1 = -ss[-1] / Fraction(qs[-1])
    ds = [d1]
    for j in range(len(chain) - 1):
        ds.append(qs[j] * d1 + ss[j])
    return tuple(ds)


def k_squared_gain(bs: Sequence[int]) -> Fraction:
    """How much contracting the chain raises the canonical self-intersection.

    Equals ``sum_i d_i (b_i - 2)``; for a Wahl chain this is the chain
    length, an integer.
    """
    ds = chain_discrepancies(bs)
    return sum(
        (d * (b - 2) for d, b in zip(ds, bs)), Fraction(0)
    )


def pullback_canonical(
    model: SurfaceModel, embeddings: Sequence[ChainEmbedding]
) -> DivisorClass:
    """The pullback of the contracted surface's canonical class.

    Computes ``K + sum of d_i G_i`` over every chain, after validating each
    embedding and checking adjunction ``K . G_i = b_i - 2`` on every chain
    curve.  The result is orthogonal to each contracted curve by
    construction; this is asserted as a consistency check on the solver.
    """
    total = model.canonical
    for emb in embeddings:
        bs = validate_embedding(model, emb)
        ds = chain_discrepancies(bs)
        for name, b in zip(emb.curves, bs):
            pairing = model.intersect(model.canonical, name)
            if pairing != b - 2:
                raise ContractionError(
                    f"{emb.label}: adjunction fails on {name}, "
                    f"K . {name} = {pairing}, expected {b - 2}"
                )
        for name, d in zip(emb.curves, ds):
            total = total + d * model.curve(name)
    for emb in embeddings:
        for name in emb.curves:
            value = total.dot(model.curve(name))
            if value != 0:
                raise AssertionError(
                    f"pullback not orthogonal to contracted curve {name}: {value}"
                )
    return total


def contracted_k_squared(
    model: SurfaceModel, embeddings: Sequence[ChainEmbedding]
) -> Fraction:
    """Canonical self-intersection of the contracted surface."""
    pullback = pullback_canonical(model, embeddings)
    return pullback.dot(pullback)


def nef_values(
    model: SurfaceModel,
    embeddings: Sequence[ChainEmbedding],
    names: Sequence[str],
) -> list[tuple[str, Fraction]]:
    """Pair the pullback canonical class against named test curves."""
    pullback = pullback_canonical(model, embeddings)
    return [(name, pullback.dot(model.curve(name))) for name in names]


def expand_in_curves(
    model: SurfaceModel,
    cls: Union[str, DivisorClass],
    names: Sequence[str],
) -> dict[str, Fraction]:
    """Write a class as an exact combination of named curves.

    Solves ``cls = sum_i c_i [curve_i]`` by Gaussian elimination over the
    rationals.  Raises ``ContractionError`` if the named curves are
    linearly dependent (the expansion would not be unique) or if the class
    does not lie in their span.
    """
    target = model.resolve(cls)
    columns = [model.curve(n) for n in names]
    rows = target.lattice_rank
    cols = len(columns)
    matrix = [
        [columns[c].coords[r] for c in range(cols)] + [target.coords[r]]
        for r in range(rows)
    ]
    pivot_cols: list[int] = []
    row = 0
    for col in range(cols):
        pivot_row = next(
            (r for r in range(row, rows) if matrix[r][col] != 0), None
        )
        if pivot_row is None:
            raise ContractionError(
                f"curves {list(names)} are linearly dependent; "
                "expansion is not unique"
            )
        matrix[row], matrix[pivot_row] = matrix[pivot_row], matrix[row]
        pivot = matrix[row][col]
        matrix[row] = [v / pivot for v in matrix[row]]
        for r in range(rows):
            if r != row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [
                    matrix[r][c] - factor * matrix[row][c]
                    for c in range(cols + 1)
                ]
        pivot_cols.append(col)
        row += 1
    for r in range(row, rows):
        if matrix[r][cols] != 0:
            raise ContractionError(
                "class does not lie in the span of "
                f"{list(names)} (residual {matrix[r][cols]})"
            )
    return {names[c]: matrix[i][cols] for i, c in enumerate(pivot_cols)}
