"""Exact intersection theory on iterated blow-ups of the projective plane.

A surface is modelled by its Neron-Severi lattice together with the classes
of finitely many named curves.  The lattice has basis ``(h, e_1, ..., e_n)``
where ``h`` is the class of a line and ``e_i`` is the total transform of the
exceptional curve of the i-th blow-up; the intersection form is
``diag(1, -1, ..., -1)``.  Blowing up is a pure operation: it returns a new
model whose named curves are the strict transforms of the old ones, with the
new exceptional curve registered under a fresh name.

Every coordinate is a :class:`fractions.Fraction`, so each intersection
number computed here is exact.  Floating point never enters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "DivisorClass",
    "BlowupStep",
    "SurfaceModel",
    "Expectation",
    "ExpectationError",
    "Script",
    "new_plane",
    "blow_up",
    "intersect",
    "parse_script",
    "iter_models",
    "run_script",
    "check_expectations",
    "load_script",
]


@dataclass(frozen=True)
class DivisorClass:
    """A lattice element ``a_0 h + a_1 e_1 + ... + a_n e_n``.

    ``coords`` holds ``(a_0, a_1, ..., a_n)`` as exact fractions.  The
    intersection pairing is ``a_0 b_0 - a_1 b_1 - ... - a_n b_n``.
    """

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coords", tuple(Fraction(c) for c in self.coords)
        )

    @property
    def lattice_rank(self) -> int:
        return len(self.coords)

    def dot(self, other: "DivisorClass") -> Fraction:
        if len(self.coords) != len(other.coords):
            raise ValueError(
                "cannot pair classes of rank "
                f"{len(self.coords)} and {len(other.coords)}"
            )
        total = self.coords[0] * other.coords[0]
        for a, b in zip(self.coords[1:], other.coords[1:]):
            total -= a * b
        return total

    def padded(self, lattice_rank: int) -> "DivisorClass":
        """Extend by zero coordinates up to ``lattice_rank``."""
        if lattice_rank < len(self.coords):
            raise ValueError("cannot shrink a divisor class")
        pad = (Fraction(0),) * (lattice_rank - len(self.coords))
        return DivisorClass(self.coords + pad)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if len(self.coords) != len(other.coords):
            raise ValueError("rank mismatch in divisor sum")
        return DivisorClass(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if len(self.coords) != len(other.coords):
            raise ValueError("rank mismatch in divisor difference")
        return DivisorClass(
            tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __mul__(self, scalar: Rational) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coords))

    def __repr__(self) -> str:
        inside = ", ".join(str(c) for c in self.coords)
        return f"DivisorClass(({inside}))"


def basis_class(lattice_rank: int, index: int) -> DivisorClass:
    """The basis vector ``h`` (index 0) or ``e_index`` as a class."""
    if not 0 <= index < lattice_rank:
        raise ValueError(f"basis index {index} out of range")
    coords = [Fraction(0)] * lattice_rank
    coords[index] = Fraction(1)
    return DivisorClass(tuple(coords))


@dataclass(frozen=True)
class BlowupStep:
    """One blow-up: the new exceptional name and the curves through its center.

    ``center`` lists ``(curve_name, multiplicity)`` pairs; the multiplicity is
    the multiplicity of the named curve at the blown-up point, so a smooth
    transverse pass is 1 and a node or cusp is 2.
    """

    name: str
    center: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SurfaceModel:
    """The plane after ``blowup_count`` blow-ups, with named curve classes."""

    blowup_count: int
    curves: Mapping[str, DivisorClass]
    canonical: DivisorClass
    history: tuple[BlowupStep, ...] = ()

    @property
    def lattice_rank(self) -> int:
        return self.blowup_count + 1

    def curve(self, name: str) -> DivisorClass:
        try:
            return self.curves[name]
        except KeyError:
            raise KeyError(f"no curve named {name!r} on this surface") from None

    def resolve(self, item: Union[str, DivisorClass]) -> DivisorClass:
        if isinstance(item, DivisorClass):
            return item
        return self.curve(item)

    def intersect(
        self, a: Union[str, DivisorClass], b: Union[str, DivisorClass]
    ) -> Fraction:
        return self.resolve(a).dot(self.resolve(b))

    def self_intersection(self, name: str) -> Fraction:
        cls = self.curve(name)
        return cls.dot(cls)

    def canonical_self_intersection(self) -> Fraction:
        return self.canonical.dot(self.canonical)


def new_plane(base_curves: Mapping[str, int]) -> SurfaceModel:
    """The projective plane carrying named plane curves of given degrees."""
    curves: dict[str, DivisorClass] = {}
    for name, degree in base_curves.items():
        if not isinstance(degree, int) or degree < 1:
            raise ValueError(
                f"curve {name!r} must have a positive integer degree, got {degree!r}"
            )
        curves[name] = DivisorClass((Fraction(degree),))
    canonical = DivisorClass((Fraction(-3),))
    return SurfaceModel(
        blowup_count=0, curves=curves, canonical=canonical, history=()
    )


def blow_up(
    model: SurfaceModel,
    at: Sequence[tuple[str, int]],
    name: str,
) -> SurfaceModel:
    """Blow up one point and return the resulting surface.

    ``at`` names the curves through the point with their multiplicities
    there.  Curves not listed are assumed to miss the point.  The strict
    transform of a listed curve drops ``mult`` copies of the new exceptional
    class; the canonical class gains one copy.
    """
    if name in model.curves:
        raise ValueError(f"curve name {name!r} already in use")
    seen: set[str] = set()
    for curve_name, mult in at:
        if curve_name not in model.curves:
            raise ValueError(
                f"blow-up center lies on unknown curve {curve_name!r}"
            )
        if curve_name in seen:
            raise ValueError(
                f"curve {curve_name!r} listed twice in one blow-up center"
            )
        seen.add(curve_name)
        if not isinstance(mult, int) or mult < 1:
            raise ValueError(
                f"multiplicity of {curve_name!r} must be a positive integer, "
                f"got {mult!r}"
            )

    new_rank = model.lattice_rank + 1
    mults = dict(at)
    e_new = basis_class(new_rank, new_rank - 1)
    curves: dict[str, DivisorClass] = {}
    for curve_name, cls in model.curves.items():
        lifted = cls.padded(new_rank)
        m = mults.get(curve_name, 0)
        if m:
            lifted = lifted - m * e_new
        curves[curve_name] = lifted
    curves[name] = e_new
    canonical = model.canonical.padded(new_rank) + e_new
    step = BlowupStep(name=name, center=tuple((c, m) for c, m in at))
    return SurfaceModel(
        blowup_count=model.blowup_count + 1,
        curves=curves,
        canonical=canonical,
        history=model.history + (step,),
    )


def intersect(
    model: SurfaceModel,
    a: Union[str, DivisorClass],
    b: Union[str, DivisorClass],
) -> Fraction:
    return model.intersect(a, b)


class ExpectationError(AssertionError):
    """A recorded intersection number disagrees with the computed one."""

    def __init__(
        self,
        expectation: "Expectation",
        actual: Fraction,
    ) -> None:
        self.expectation = expectation
        self.actual = actual
        super().__init__(
            f"after step {expectation.after_step}, {expectation.describe()} "
            f"expected {expectation.expected_value()} but computed {actual}"
            + (f" [{expectation.cite}]" if expectation.cite else "")
        )


@dataclass(frozen=True)
class Expectation:
    """A checkable intersection number tied to a point in the blow-up script.

    Exactly one of two shapes is allowed: a self-intersection (``curve`` and
    ``self_int`` set) or a pairing of two curves (``curves`` and
    ``intersection`` set).  ``cite`` records where the number was published.
    """

    after_step: int
    cite: str = ""
    curve: Union[str, None] = None
    self_int: Union[Fraction, None] = None
    curves: Union[tuple[str, str], None] = None
    intersection: Union[Fraction, None] = None

    def __post_init__(self) -> None:
        single = self.curve is not None
        pair = self.curves is not None
        if single == pair:
            raise ValueError(
                "expectation needs either a curve or a pair of curves"
            )
        if single and self.self_int is None:
            raise ValueError(f"expectation on {self.curve!r} has no value")
        if pair and self.intersection is None:
            raise ValueError(f"expectation on {self.curves!r} has no value")

    def describe(self) -> str:
        if self.curve is not None:
            return f"({self.curve})^2"
        a, b = self.curves  # type: ignore[misc]
        return f"({a}).({b})"

    def expected_value(self) -> Fraction:
        if self.curve is not None:
            return Fraction(self.self_int)  # type: ignore[arg-type]
        return Fraction(self.intersection)  # type: ignore[arg-type]

    def evaluate(self, model: SurfaceModel) -> Fraction:
        if self.curve is not None:
            return model.self_intersection(self.curve)
        a, b = self.curves  # type: ignore[misc]
        return model.intersect(a, b)

    def check(self, model: SurfaceModel) -> None:
        actual = self.evaluate(model)
        if actual != self.expected_value():
            raise ExpectationError(self, actual)


@dataclass(frozen=True)
class Script:
    """A reproducible blow-up recipe with its recorded checkpoints."""

    base_curves: tuple[tuple[str, int], ...]
    steps: tuple[BlowupStep, ...]
    expectations: tuple[Expectation, ...] = ()

    @property
    def step_count(self) -> int:
        return len(self.steps)


def _base_degree(name: str, value) -> int:
    """Degree of a base curve given as an int or an ``[h, e1, ...]`` array.

    Scripts start on the projective plane, so any exceptional coordinates
    in the array form must be zero.
    """
    if isinstance(value, int):
        return value
    entries = list(value)
    if not entries:
        raise ValueError(f"base curve {name!r} has an empty class array")
    head, *tail = (int(v) for v in entries)
    if any(tail):
        raise ValueError(
            f"base curve {name!r} has nonzero exceptional coordinates; "
            "scripts start on the plane, where only the degree may be set"
        )
    return head


def parse_script(data: Mapping) -> Script:
    """Build a :class:`Script` from its JSON object form."""
    try:
        raw_base = data["base_curves"]
        raw_steps = data["steps"]
    except KeyError as exc:
        raise ValueError(f"script is missing the {exc.args[0]!r} key") from None
    base = tuple(
        (str(name), _base_degree(str(name), deg))
        for name, deg in raw_base.items()
    )
    used = {name for name, _ in base}
    used.update(
        str(raw["name"]) for raw in raw_steps if isinstance(raw, Mapping) and "name" in raw
    )
    steps = []
    for i, raw in enumerate(raw_steps, start=1):
        try:
            at = tuple((str(c), int(m)) for c, m in raw["at"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed step {i}: {exc}") from None
        if "name" in raw:
            name = str(raw["name"])
        else:
            name = f"e{i}"
            while name in used:
                name += "'"
            used.add(name)
        steps.append(BlowupStep(name=name, center=at))
    expectations = []
    for raw in data.get("expectations", ()):
        after_step = int(raw["after_step"])
        if not 0 <= after_step <= len(steps):
            raise ValueError(
                f"expectation refers to step {after_step}, "
                f"but the script has {len(steps)} steps"
            )
        cite = str(raw.get("cite", ""))
        if "curve" in raw:
            expectations.append(
                Expectation(
                    after_step=after_step,
                    cite=cite,
                    curve=str(raw["curve"]),
                    self_int=Fraction(raw["self_int"]),
                )
            )
        else:
            a, b = raw["curves"]
            expectations.append(
                Expectation(
                    after_step=after_step,
                    cite=cite,
                    curves=(str(a), str(b)),
                    intersection=Fraction(raw["intersection"]),
                )
            )
    return Script(
        base_curves=base,
        steps=tuple(steps),
        expectations=tuple(expectations),
    )


def load_script(path: str) -> Script:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_script(json.load(handle))


def iter_models(script: Script) -> Iterator[tuple[int, SurfaceModel]]:
    """Yield ``(step_index, model)`` starting from ``(0, plane)``."""
    model = new_plane(dict(script.base_curves))
    yield 0, model
    for i, step in enumerate(script.steps, start=1):
        model = blow_up(model, step.center, step.name)
        yield i, model


def run_script(script: Script, *, check: bool = True) -> SurfaceModel:
    """Execute every blow-up; optionally verify each recorded checkpoint.

    With ``check`` set, the first failing expectation raises
    :class:`ExpectationError` naming the step, the curves, both values, and
    the recorded citation.
    """
    by_step: dict[int, list[Expectation]] = {}
    if check:
        for exp in script.expectations:
            by_step.setdefault(exp.after_step, []).append(exp)
    final = None
    for i, model in iter_models(script):
        for exp in by_step.get(i, ()):
            exp.check(model)
        final = model
    assert final is not None
    return final


def check_expectations(
    script: Script,
) -> list[tuple[Expectation, Fraction, bool]]:
    """Evaluate every checkpoint, collecting results instead of raising."""
    by_step: dict[int, list[Expectation]] = {}
    for exp in script.expectations:
        by_step.setdefault(exp.after_step, []).append(exp)
    results: list[tuple[Expectation, Fraction, bool]] = []
    for i, model in iter_models(script):
        for exp in by_step.get(i, ()):
            actual = exp.evaluate(model)
            results.append((exp, actual, actual == exp.expected_value()))
    return results
