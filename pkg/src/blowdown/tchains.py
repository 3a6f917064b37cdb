"""Negative continued fractions and chains of class T.

A chain is recorded as a tuple ``(b_1, ..., b_k)`` of integers, each at
least 2, standing for a string of smooth rational curves of
self-intersections ``-b_1, ..., -b_k`` meeting consecutively.  The chain
contracting to the cyclic quotient singularity of type ``p/q`` (the cone
over the lens space ``L(p, q)``) is read off from the negative-regular
continued fraction

    p/q = b_1 - 1/(b_2 - 1/(... - 1/b_k)).

Chains of class T are the ones whose contraction admits a smoothing with
Milnor number zero.  They are generated from ``(4,)`` and
``(3, 2, ..., 2, 3)`` by two end moves, and are equivalently characterised
by an arithmetic normal form ``dn^2 / (dna - 1)``; both descriptions are
implemented here so each can check the other.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

__all__ = [
    "hj_expand",
    "hj_value",
    "continuants",
    "chain_determinant",
    "extend_left",
    "extend_right",
    "chain_bases",
    "ClassTResult",
    "classify_chain",
    "is_class_t",
    "generate_class_t",
    "general_params",
    "wahl_params",
]


def _validate_chain(bs: Sequence[int]) -> tuple[int, ...]:
    chain = tuple(bs)
    if not chain:
        raise ValueError("chain is empty")
    for b in chain:
        if not isinstance(b, int) or b < 2:
            raise ValueError(f"chain entries must be integers >= 2, got {b!r}")
    return chain


def hj_expand(p: int, q: int) -> tuple[int, ...]:
    """Negative-regular continued fraction expansion of ``p/q``.

    Requires ``p > q >= 1`` and ``gcd(p, q) == 1``.  Every entry of the
    result is at least 2, and such an expansion is unique.
    """
    if not (isinstance(p, int) and isinstance(q, int)):
        raise ValueError("p and q must be integers")
    if not 0 < q < p:
        raise ValueError(f"need 0 < q < p, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got p={p}, q={q}")
    out = []
    while q > 0:
        b = -(-p // q)
        out.append(b)
        p, q = q, b * q - p
    return tuple(out)


def hj_value(bs: Sequence[int]) -> Fraction:
    """Evaluate ``b_1 - 1/(b_2 - 1/(...))`` exactly.

    The result is the fraction ``p/q`` in lowest terms; its numerator is
    the determinant of the chain's (positive-definite) intersection matrix.
    """
    chain = _validate_chain(bs)
    value = Fraction(chain[-1])
    for b in reversed(chain[:-1]):
        value = b - 1 / value
    return value


def continuants(bs: Sequence[int]) -> tuple[int, ...]:
    """Partial denominators ``q_1, ..., q_k`` of the chain.

    These satisfy ``q_j = b_j q_{j-1} - q_{j-2}`` with ``q_0 = 1`` and are
    all positive when every entry is at least 2; ``q_k`` equals the
    numerator of :func:`hj_value`.
    """
    chain = _validate_chain(bs)
    prev, cur = 0, 1
    out = []
    for b in chain:
        prev, cur = cur, b * cur - prev
        out.append(cur)
    return tuple(out)


def chain_determinant(bs: Sequence[int]) -> int:
    """Absolute determinant of the chain's intersection matrix."""
    return continuants(bs)[-1]


def extend_left(bs: Sequence[int]) -> tuple[int, ...]:
    """Prepend a ``-2`` curve and steepen the far end."""
    chain = _validate_chain(bs)
    return (2,) + chain[:-1] + (chain[-1] + 1,)


def extend_right(bs: Sequence[int]) -> tuple[int, ...]:
    """Append a ``-2`` curve and steepen the near end."""
    chain = _validate_chain(bs)
    return (chain[0] + 1,) + chain[1:] + (2,)


def chain_bases(max_len: int) -> Iterator[tuple[int, ...]]:
    """The starting chains ``(4,)`` and ``(3, 2, ..., 2, 3)`` up to a length."""
    if max_len >= 1:
        yield (4,)
    for length in range(2, max_len + 1):
        yield (3,) + (2,) * (length - 2) + (3,)


def _is_base(chain: tuple[int, ...]) -> bool:
    if chain == (4,):
        return True
    return (
        len(chain) >= 2
        and chain[0] == 3
        and chain[-1] == 3
        and all(b == 2 for b in chain[1:-1])
    )


class ClassTResult:
    """Outcome of :func:`classify_chain`.

    ``kind`` is one of ``"base"``, ``"derived"``, ``"rdp"`` (a string of
    ``-2`` curves, which contracts to a du Val point rather than a class T
    point) or ``"not_class_t"``.  For class T chains, ``base`` and ``moves``
    give a derivation: applying the named moves to ``base`` in order
    reproduces the chain.
    """

    def __init__(
        self,
        kind: str,
        chain: tuple[int, ...],
        base: "tuple[int, ...] | None" = None,
        moves: tuple[str, ...] = (),
    ) -> None:
        self.kind = kind
        self.chain = chain
        self.base = base
        self.moves = moves

    @property
    def is_class_t(self) -> bool:
        return self.kind in ("base", "derived")

    def __repr__(self) -> str:
        return (
            f"ClassTResult(kind={self.kind!r}, chain={self.chain!r}, "
            f"base={self.base!r}, moves={self.moves!r})"
        )


def classify_chain(bs: Sequence[int]) -> ClassTResult:
    """Decide whether a chain is of class T by running the moves backwards.

    A derived chain always has exactly one end equal to 2 (the last move
    put it there), so the reduction step is forced at each stage and the
    derivation found is the unique one.
    """
    chain = _validate_chain(bs)
    if all(b == 2 for b in chain):
        return ClassTResult(kind="rdp", chain=chain)
    cur = chain
    undone: list[str] = []
    while True:
        if _is_base(cur):
            moves = tuple(reversed(undone))
            kind = "base" if not undone else "derived"
            return ClassTResult(kind=kind, chain=chain, base=cur, moves=moves)
        if cur[0] == 2 and cur[-1] >= 3:
            cur = cur[1:-1] + (cur[-1] - 1,)
            undone.append("left")
        elif cur[0] >= 3 and cur[-1] == 2:
            cur = (cur[0] - 1,) + cur[1:-1]
            undone.append("right")
        else:
            return ClassTResult(kind="not_class_t", chain=chain)
        if not cur:
            return ClassTResult(kind="not_class_t", chain=chain)


def is_class_t(bs: Sequence[int]) -> bool:
    return classify_chain(bs).is_class_t


def apply_moves(
    base: Sequence[int], moves: Sequence[str]
) -> tuple[int, ...]:
    """Apply ``"left"``/``"right"`` moves to a chain in order."""
    cur = _validate_chain(base)
    for move in moves:
        if move == "left":
            cur = extend_left(cur)
        elif move == "right":
            cur = extend_right(cur)
        else:
            raise ValueError(f"unknown move {move!r}")
    return cur


def generate_class_t(max_len: int) -> list[tuple[int, ...]]:
    """Every class T chain of length at most ``max_len``.

    There are ``2**k - 1`` such chains of length exactly ``k``: one new
    base plus two extensions of each chain one shorter, and distinct move
    sequences never collide because reduction is deterministic.
    """
    if max_len < 1:
        return []
    found: set[tuple[int, ...]] = set()
    frontier: list[tuple[int, ...]] = list(chain_bases(max_len))
    while frontier:
        chain = frontier.pop()
        if chain in found:
            continue
        found.add(chain)
        if len(chain) < max_len:
            frontier.append(extend_left(chain))
            frontier.append(extend_right(chain))
    return sorted(found, key=lambda c: (len(c), c))


def general_params(bs: Sequence[int]) -> tuple[int, int, int]:
    """The arithmetic normal form ``(d, n, a)`` of a class T chain.

    A chain is of class T exactly when its fraction is
    ``dn^2 / (dna - 1)`` with ``n >= 2``, ``0 < a < n`` and
    ``gcd(a, n) == 1``.  Raises ``ValueError`` when no such form exists.
    This search is independent of the move reduction in
    :func:`classify_chain`, so the two can be used to cross-check.
    """
    value = hj_value(bs)
    big_n, big_m = value.numerator, value.denominator
    for n in range(isqrt(big_n), 1, -1):
        if big_n % (n * n) != 0:
            continue
        d = big_n // (n * n)
        if (big_m + 1) % (d * n) != 0:
            continue
        a = (big_m + 1) // (d * n)
        if 0 < a < n and gcd(a, n) == 1:
            return (d, n, a)
    raise ValueError(
        f"chain {tuple(bs)} has fraction {big_n}/{big_m}, "
        "which is not of the form dn^2/(dna - 1)"
    )


def wahl_params(bs: Sequence[int]) -> tuple[int, int]:
    """The ``(p, q)`` with fraction ``p^2 / (pq - 1)``, for a Wahl chain.

    Wahl chains are the ``d == 1`` members of class T.  Raises
    ``ValueError`` when the determinant is not a perfect square or the
    cofactor does not match.
    """
    value = hj_value(bs)
    big_n, big_m = value.numerator, value.denominator
    p = isqrt(big_n)
    if p * p != big_n:
        raise ValueError(
            f"chain {tuple(bs)} has determinant {big_n}, not a perfect square"
        )
    if (big_m + 1) % p != 0:
        raise ValueError(
            f"chain {tuple(bs)} has fraction {big_n}/{big_m}, "
            "not of the form p^2/(pq - 1)"
        )
    q = (big_m + 1) // p
    if not 0 < q < p or gcd(p, q) != 1 or p * q - 1 != big_m:
        raise ValueError(
            f"chain {tuple(bs)} has fraction {big_n}/{big_m}, "
            "not of the form p^2/(pq - 1)"
        )
    return (p, q)
