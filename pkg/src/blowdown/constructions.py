"""Built-in constructions and the verification harness that replays them.

Each construction ships as a JSON dataset: a blow-up script with recorded
intersection checkpoints, the chains to contract, a connection graph for
the fundamental group argument, and the numerical values recorded in the
cited source, together with a correction table for the few recorded values
that fail exact recomputation.  The verifier replays everything with exact
arithmetic and grades each check ``pass``, ``erratum`` (recorded value
wrong, recorded correction confirmed) or ``fail``.  Failure messages always
carry the dataset's citation string.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence, Union

from .contraction import (
    ChainEmbedding,
    ContractionError,
    chain_discrepancies,
    check_artin,
    expand_in_curves,
    nef_values,
    pullback_canonical,
    validate_embedding,
)
from .lattice import (
    DivisorClass,
    Script,
    SurfaceModel,
    check_expectations,
    iter_models,
    parse_script,
    run_script,
)
from .tchains import wahl_params
from .topology import (
    ConnectionGraph,
    blowdown_invariants,
    parse_graph,
    pi1_closure,
    rationality_exclusion,
)

__all__ = [
    "DATA_ENV",
    "BUILTIN_NAMES",
    "Construction",
    "CheckResult",
    "VerifyReport",
    "data_dir",
    "available_constructions",
    "parse_construction",
    "load_construction",
    "build_model",
    "pullback_expansion",
    "verify",
]

DATA_ENV = "BLOWDOWN_DATA_DIR"
BUILTIN_NAMES = ("k4", "main_k3", "pencil2_k3")


def data_dir() -> Path:
    """Directory holding construction datasets; overridable by environment."""
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def available_constructions() -> tuple[str, ...]:
    directory = data_dir()
    if not directory.is_dir():
        return ()
    return tuple(sorted(path.stem for path in directory.glob("*.json")))


@dataclass(frozen=True)
class Construction:
    """A dataset: script, chains, graph, expectations and corrections."""

    name: str
    title: str
    citation: str
    script: Script
    chains: tuple[ChainEmbedding, ...]
    graph: Union[ConnectionGraph, None]
    base_surface_step: Union[int, None]
    fiber_expansions: tuple[tuple[str, tuple[str, ...]], ...]
    nef_test_curves: tuple[str, ...]
    parity_override: Union[str, None]
    expected: Mapping
    errata: Mapping
    expected_cites: Mapping = None  # type: ignore[assignment]
    source_path: str = ""
    sha256: str = ""

    def __post_init__(self) -> None:
        if self.expected_cites is None:
            object.__setattr__(self, "expected_cites", {})


def _split_expected(raw: Mapping) -> tuple[dict, dict]:
    """Unwrap ``{"cite": ..., "value"/"values": ...}`` entries.

    Every recorded value is supposed to say where it was printed; the
    citation strings are collected separately so the value-consuming code
    stays simple and the citation audit stays explicit.
    """
    expected: dict = {}
    cites: dict = {}
    for key, entry in raw.items():
        if isinstance(entry, Mapping) and ("value" in entry or "values" in entry):
            expected[key] = entry["values"] if "values" in entry else entry["value"]
            cites[key] = str(entry.get("cite", ""))
        else:
            expected[key] = entry
            cites[key] = ""
    return expected, cites


def parse_construction(
    data: Mapping, *, source_path: str = "", sha256: str = ""
) -> Construction:
    script = parse_script(data)
    chains = tuple(
        ChainEmbedding(
            p=int(c["p"]), q=int(c["q"]), curves=tuple(str(n) for n in c["curves"])
        )
        for c in data.get("chains", ())
    )
    graph = parse_graph(data["graph"]) if data.get("graph") else None
    base_step = data.get("base_surface_step")
    fibers = tuple(
        (str(name), tuple(str(c) for c in support))
        for name, support in data.get("fiber_expansions", {}).items()
    )
    expected, expected_cites = _split_expected(data.get("expected", {}))
    return Construction(
        name=str(data.get("name", source_path or "construction")),
        title=str(data.get("title", "")),
        citation=str(data.get("citation", "")),
        script=script,
        chains=chains,
        graph=graph,
        base_surface_step=int(base_step) if base_step is not None else None,
        fiber_expansions=fibers,
        nef_test_curves=tuple(
            str(n) for n in data.get("nef_test_curves", ())
        ),
        parity_override=data.get("parity_override"),
        expected=expected,
        errata=data.get("errata", {}),
        expected_cites=expected_cites,
        source_path=source_path,
        sha256=sha256,
    )


def load_construction(name_or_path: Union[str, Path]) -> Construction:
    """Load a built-in dataset by name, or any dataset by file path."""
    candidate = Path(name_or_path)
    if candidate.suffix == ".json" and candidate.exists():
        path = candidate
    else:
        path = data_dir() / f"{name_or_path}.json"
        if not path.exists():
            known = ", ".join(available_constructions()) or "none"
            raise FileNotFoundError(
                f"no construction named {name_or_path!r} "
                f"(available: {known})"
            )
    raw = path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    data = json.loads(raw.decode("utf-8"))
    return parse_construction(
        data, source_path=str(path), sha256=digest
    )


def build_model(construction: Construction) -> SurfaceModel:
    """Replay the blow-up script without stopping at checkpoints."""
    return run_script(construction.script, check=False)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    details: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class VerifyReport:
    construction: str
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def errata_found(self) -> bool:
        return any(check.status == "erratum" for check in self.checks)

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "ok": self.ok,
            "errata_found": self.errata_found,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "details": list(c.details),
                }
                for c in self.checks
            ],
        }


def _frac(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise ValueError(f"expected an integer or a fraction string, got {value!r}")


def _frac_table(raw: Mapping) -> dict[str, Fraction]:
    return {str(k): _frac(v) for k, v in raw.items()}


def _compare_tables(
    label: str,
    printed: Mapping[str, Fraction],
    computed: Mapping[str, Fraction],
    corrections: Mapping[str, Fraction],
) -> tuple[str, list[str]]:
    """Grade computed values against recorded ones, correction-aware."""
    status = "pass"
    details: list[str] = []
    matched = 0
    for key, recorded in printed.items():
        if key not in computed:
            status = "fail"
            details.append(
                f"{label}[{key}]: recorded {recorded}, but no value computed"
            )
            continue
        value = computed[key]
        if value == recorded:
            matched += 1
        elif key in corrections and value == corrections[key]:
            if status == "pass":
                status = "erratum"
            details.append(
                f"{label}[{key}]: recorded {recorded}, computed {value}; "
                "matches the dataset's correction"
            )
        else:
            status = "fail"
            details.append(
                f"{label}[{key}]: recorded {recorded}, computed {value}, "
                "and no correction covers this"
            )
    for key, value in computed.items():
        if key not in printed and value != 0:
            status = "fail"
            details.append(
                f"{label}[{key}]: computed {value} but nothing was recorded"
            )
    details.insert(
        0, f"{matched} of {len(printed)} recorded values reproduced exactly"
    )
    return status, details


def _base_canonical(
    construction: Construction, model: SurfaceModel
) -> DivisorClass:
    assert construction.base_surface_step is not None
    for step, intermediate in iter_models(construction.script):
        if step == construction.base_surface_step:
            return intermediate.canonical.padded(model.lattice_rank)
    raise ValueError(
        f"base_surface_step {construction.base_surface_step} "
        "beyond the end of the script"
    )


def pullback_expansion(
    construction: Construction, model: SurfaceModel
) -> dict[str, Fraction]:
    """Per-curve coefficients of the contraction pullback of the canonical
    class, assembled from the recorded fiber decomposition, the canonical
    relation support, and the chain discrepancies.

    The support of the full expansion is linearly dependent in the lattice,
    so the coefficients cannot be solved for; they are assembled from the
    three independent contributions instead.  Requires a dataset that
    records ``base_surface_step``, ``fiber_expansions``, and the
    ``pullback_fiber_weights`` and ``canonical_relation`` tables.
    """
    expected = construction.expected
    if (
        construction.base_surface_step is None
        or not construction.fiber_expansions
        or "pullback_fiber_weights" not in expected
        or "canonical_relation" not in expected
    ):
        raise ValueError(
            "dataset does not record the fiber decomposition needed to "
            "expand the pullback over curve classes"
        )
    weights = _frac_table(expected["pullback_fiber_weights"])
    fiber_class = -_base_canonical(construction, model)
    coefficients: dict[str, Fraction] = {}

    def accumulate(name: str, value: Fraction) -> None:
        coefficients[name] = coefficients.get(name, Fraction(0)) + value

    for fiber_name, support in construction.fiber_expansions:
        expansion = expand_in_curves(model, fiber_class, list(support))
        for curve, coeff in expansion.items():
            accumulate(curve, weights[fiber_name] * coeff)
    base_k = _base_canonical(construction, model)
    relation_support = list(expected["canonical_relation"].keys())
    relation = expand_in_curves(
        model, model.canonical - base_k, relation_support
    )
    for curve, coeff in relation.items():
        accumulate(curve, coeff)
    for emb in construction.chains:
        bs = validate_embedding(model, emb)
        for curve, d in zip(emb.curves, chain_discrepancies(bs)):
            accumulate(curve, d)
    return coefficients


def verify(construction: Construction) -> VerifyReport:
    """Replay a construction and grade every recorded claim about it.

    The checks run in a fixed order, from the raw blow-up bookkeeping out
    to the final homeomorphism fingerprint, so a failure early in the list
    explains the failures after it.
    """
    checks: list[CheckResult] = []

    def add(
        name: str, status: str, details: Sequence[str], cite: str = ""
    ) -> None:
        lines = list(details)
        if status != "pass" and cite:
            lines.append(f"recorded at: {cite}")
        if status == "fail" and construction.citation:
            lines.append(f"source: {construction.citation}")
        checks.append(CheckResult(name=name, status=status, details=tuple(lines)))

    def guarded(name: str, runner, cite_key: str = "") -> None:
        cite = (
            str(construction.expected_cites.get(cite_key, ""))
            if cite_key
            else ""
        )
        try:
            status, details = runner()
        except (ContractionError, ValueError, KeyError, AssertionError) as exc:
            status, details = "fail", [str(exc)]
        add(name, status, details, cite=cite)

    model = build_model(construction)
    expected = construction.expected
    errata = construction.errata

    def script_check():
        results = check_expectations(construction.script)
        failures = [
            f"after step {exp.after_step}: {exp.describe()} recorded "
            f"{exp.expected_value()}, computed {actual} [{exp.cite}]"
            for exp, actual, ok in results
            if not ok
        ]
        details = [
            f"{len(results) - len(failures)} of {len(results)} recorded "
            "intersection numbers reproduced"
        ] + failures
        return ("pass" if not failures else "fail"), details

    guarded("script_expectations", script_check)

    def shapes_check():
        details = []
        status = "pass"
        for emb in construction.chains:
            bs = validate_embedding(model, emb)
            p, q = wahl_params(bs)
            if (p, q) != (emb.p, emb.q):
                status = "fail"
                details.append(
                    f"{emb.label}: shape {bs} recovers (p, q) = ({p}, {q})"
                )
                continue
            fraction = Fraction(emb.p * emb.p, emb.p * emb.q - 1)
            details.append(
                f"{emb.label}: shape {list(bs)} matches {fraction.numerator}/"
                f"{fraction.denominator}, determinant {emb.p * emb.p}"
            )
        return status, details

    guarded("chain_shapes", shapes_check)

    def artin_check():
        cert = check_artin(model, construction.chains)
        details = []
        for chain_cert in cert.chains:
            minors = ", ".join(str(m) for m in chain_cert.minors)
            details.append(
                f"{chain_cert.label}: leading minors {minors}; "
                + (
                    "signs alternate, negative definite"
                    if chain_cert.negative_definite
                    else "signs do not alternate"
                )
            )
        for a_label, a, b_label, b, value in cert.cross_violations:
            details.append(
                f"{a_label} curve {a} meets {b_label} curve {b}: {value}"
            )
        return ("pass" if cert.ok else "fail"), details

    guarded("artin_contractibility", artin_check)

    def discrepancy_check():
        status = "pass"
        details = []
        recorded_tables = expected.get("discrepancies", {})
        for emb in construction.chains:
            bs = validate_embedding(model, emb)
            ds = chain_discrepancies(bs)
            if not all(0 < d < 1 for d in ds):
                status = "fail"
                details.append(
                    f"{emb.label}: discrepancies {list(map(str, ds))} "
                    "leave the open interval (0, 1)"
                )
                continue
            gain = sum((d * (b - 2) for d, b in zip(ds, bs)), Fraction(0))
            if gain != len(bs):
                status = "fail"
                details.append(
                    f"{emb.label}: sum of d_i (b_i - 2) is {gain}, "
                    f"expected the chain length {len(bs)}"
                )
                continue
            line = f"{emb.label}: ({', '.join(str(d) for d in ds)})"
            if emb.label in recorded_tables:
                recorded = [_frac(v) for v in recorded_tables[emb.label]]
                if tuple(recorded) != ds:
                    status = "fail"
                    line += (
                        "; recorded values "
                        f"({', '.join(str(d) for d in recorded)}) differ"
                    )
                else:
                    line += "; matches the recorded values"
            details.append(line)
        return status, details

    guarded("discrepancies", discrepancy_check, cite_key="discrepancies")

    def adjunction_check():
        details = []
        status = "pass"
        for emb in construction.chains:
            bs = validate_embedding(model, emb)
            for name, b in zip(emb.curves, bs):
                pairing = model.intersect(model.canonical, name)
                if pairing != b - 2:
                    status = "fail"
                    details.append(
                        f"{emb.label}: K . {name} = {pairing}, expected {b - 2}"
                    )
        count = sum(len(emb.curves) for emb in construction.chains)
        details.insert(0, f"K . G = b - 2 on all {count} chain curves"
                       if status == "pass" else "adjunction violated")
        return status, details

    guarded("adjunction", adjunction_check)

    def orthogonality_check():
        pullback = pullback_canonical(model, construction.chains)
        bad = []
        for emb in construction.chains:
            for name in emb.curves:
                value = pullback.dot(model.curve(name))
                if value != 0:
                    bad.append(f"pullback . {name} = {value}")
        details = ["pullback canonical class is orthogonal to every "
                   "contracted curve"] if not bad else bad
        return ("pass" if not bad else "fail"), details

    guarded("orthogonality", orthogonality_check)

    def k_squared_check():
        status = "pass"
        details = []
        pullback = pullback_canonical(model, construction.chains)
        k2 = pullback.dot(pullback)
        k2_res = model.canonical_self_intersection()
        total_length = sum(len(emb.curves) for emb in construction.chains)
        details.append(
            f"K^2 rises from {k2_res} to {k2} across {total_length} "
            "contracted curves"
        )
        if k2 - k2_res != total_length:
            status = "fail"
            details.append(
                f"gain {k2 - k2_res} differs from total chain length "
                f"{total_length}"
            )
        if "k_squared_resolution" in expected and k2_res != _frac(
            expected["k_squared_resolution"]
        ):
            status = "fail"
            details.append(
                f"resolution K^2 = {k2_res}, recorded "
                f"{expected['k_squared_resolution']}"
            )
        if "k_squared" in expected and k2 != _frac(expected["k_squared"]):
            status = "fail"
            details.append(
                f"contracted K^2 = {k2}, recorded {expected['k_squared']}"
            )
        return status, details

    guarded("k_squared", k_squared_check, cite_key="k_squared")

    if construction.base_surface_step is not None and "canonical_relation" in expected:

        def canonical_relation_check():
            base_k = _base_canonical(construction, model)
            target = model.canonical - base_k
            printed = _frac_table(expected["canonical_relation"])
            computed = expand_in_curves(model, target, list(printed.keys()))
            corrections = _frac_table(errata.get("canonical_relation", {}))
            return _compare_tables(
                "canonical_relation", printed, computed, corrections
            )

        guarded("canonical_relation", canonical_relation_check,
                cite_key="canonical_relation")

    if construction.fiber_expansions and "fiber_relation" in expected:

        def fiber_relation_check():
            fiber_class = -_base_canonical(construction, model)
            status = "pass"
            details: list[str] = []
            for fiber_name, support in construction.fiber_expansions:
                printed = _frac_table(expected["fiber_relation"][fiber_name])
                computed = expand_in_curves(model, fiber_class, list(support))
                corrections = _frac_table(
                    errata.get("fiber_relation", {}).get(fiber_name, {})
                )
                sub_status, sub_details = _compare_tables(
                    f"fiber {fiber_name}", printed, computed, corrections
                )
                if sub_status == "fail":
                    status = "fail"
                elif sub_status == "erratum" and status == "pass":
                    status = "erratum"
                details.extend(sub_details)
            return status, details

        guarded("fiber_relation", fiber_relation_check, cite_key="fiber_relation")

    if "pullback_coefficients" in expected:

        def pullback_expansion_check():
            coefficients = pullback_expansion(construction, model)
            assembled = model.canonical * 0
            for curve, coeff in coefficients.items():
                assembled = assembled + coeff * model.curve(curve)
            pullback = pullback_canonical(model, construction.chains)
            computed = {
                curve: coeff for curve, coeff in coefficients.items() if coeff
            }
            printed = _frac_table(expected["pullback_coefficients"])
            corrections = _frac_table(errata.get("pullback_coefficients", {}))
            status, details = _compare_tables(
                "pullback", printed, computed, corrections
            )
            if assembled != pullback:
                status = "fail"
                details.append(
                    "assembled expansion does not reproduce the pullback class"
                )
            else:
                details.append(
                    "assembled expansion equals the pullback canonical class"
                )
            return status, details

        guarded("pullback_expansion", pullback_expansion_check,
                cite_key="pullback_coefficients")

    def nef_check():
        values = nef_values(
            model, construction.chains, construction.nef_test_curves
        )
        computed = dict(values)
        status = "pass"
        details = []
        recorded_negative = _frac_table(
            expected.get("nef_negative_pairings", {})
        )
        negative = 0
        for name, value in values:
            if value >= 0:
                continue
            negative += 1
            if recorded_negative.get(name) == value:
                if status == "pass":
                    status = "erratum"
                details.append(
                    f"pullback . {name} = {value} < 0, matching the negative "
                    "pairing recorded against the source's minimality claim"
                )
            else:
                status = "fail"
                details.append(f"pullback . {name} = {value} < 0")
        for name in recorded_negative:
            if name not in computed or computed[name] >= 0:
                status = "fail"
                details.append(
                    f"recorded negative pairing for {name} was not reproduced"
                )
        details.insert(
            0,
            f"pullback pairs nonnegatively with {len(values) - negative} "
            f"of {len(values)} test curves",
        )
        if "nef_values" in expected:
            printed = _frac_table(expected["nef_values"])
            corrections = _frac_table(errata.get("nef_values", {}))
            sub_status, sub_details = _compare_tables(
                "nef", printed, {k: v for k, v in computed.items() if k in printed},
                corrections,
            )
            if sub_status == "fail":
                status = "fail"
            elif sub_status == "erratum" and status == "pass":
                status = "erratum"
            details.extend(sub_details)
        if expected.get("zero_on_contracted"):
            pullback = pullback_canonical(model, construction.chains)
            bad = [
                name
                for emb in construction.chains
                for name in emb.curves
                if pullback.dot(model.curve(name)) != 0
            ]
            if bad:
                status = "fail"
                details.append(
                    f"pullback fails to vanish on contracted curves: {bad}"
                )
            else:
                details.append("pullback vanishes on every contracted curve")
        return status, details

    guarded("nef_table", nef_check, cite_key="nef_values")

    def invariants_check():
        summary = blowdown_invariants(
            model,
            construction.chains,
            graph=construction.graph,
            parity_override=construction.parity_override,
        )
        status = "pass"
        details = []

        def expect(key: str, actual, label: str) -> None:
            nonlocal status
            if key not in expected:
                return
            recorded = expected[key]
            if isinstance(recorded, (int, str)) and not isinstance(recorded, bool):
                matches = (
                    Fraction(actual) == _frac(recorded)
                    if not isinstance(actual, str)
                    else str(actual) == str(recorded)
                )
            else:
                matches = actual == recorded
            if matches:
                details.append(f"{label}: {actual}")
            else:
                status = "fail"
                details.append(f"{label}: computed {actual}, recorded {recorded}")

        expect("blowup_count", model.blowup_count, "blow-ups")
        expect("rank", model.lattice_rank, "lattice rank")
        expect("k_squared", summary.k_squared, "K^2")
        expect("euler", summary.euler, "Euler characteristic")
        expect("signature", summary.signature, "signature")
        expect("b2_plus", summary.b2_plus, "b2+")
        expect("b2_minus", summary.b2_minus, "b2-")
        expect("chi", summary.chi, "chi")
        expect("parity", summary.parity, "parity")
        expect("fingerprint", summary.fingerprint, "fingerprint")
        if not summary.noether_ok:
            status = "fail"
            details.append(
                f"Noether relation fails: {summary.k_squared} + "
                f"{summary.euler} != 12 * {summary.chi}"
            )
        else:
            details.append(
                f"Noether relation holds: {summary.k_squared} + "
                f"{summary.euler} = 12 * {summary.chi}"
            )
        details.append(f"parity reason: {summary.parity_reason}")
        return status, details

    guarded("invariants", invariants_check)

    if construction.graph is not None:

        def pi1_check():
            result = pi1_closure(construction.graph)
            details = list(result.describe())
            if construction.graph.reconstructed:
                details.append(
                    "connection graph was reconstructed from the curve "
                    "geometry rather than recorded explicitly"
                )
            status = "pass"
            if "pi1_trivial" in expected and result.trivial != bool(
                expected["pi1_trivial"]
            ):
                status = "fail"
                details.append(
                    f"closure trivial = {result.trivial}, recorded "
                    f"{expected['pi1_trivial']}"
                )
            return status, details

        guarded("pi1_closure", pi1_check, cite_key="pi1_trivial")

    if "rationality_exclusion" in expected:

        def rationality_check():
            summary = blowdown_invariants(
                model,
                construction.chains,
                graph=construction.graph,
                parity_override=construction.parity_override,
            )
            verdict, value = rationality_exclusion(
                summary.k_squared, summary.chi
            )
            recorded = _frac(expected["rationality_exclusion"])
            details = [
                f"second plurigenus chi + K^2 = {value}"
                + (", positive, so the surface is not rational" if verdict else "")
            ]
            status = "pass"
            if value != recorded:
                status = "fail"
                details.append(f"recorded value {recorded} differs")
            if not verdict:
                status = "fail"
                details.append("plurigenus is not positive")
            return status, details

        guarded("rationality_exclusion", rationality_check,
                cite_key="rationality_exclusion")

    def citation_check():
        status = "pass"
        details = []
        if construction.citation.strip():
            details.append(construction.citation)
        else:
            status = "fail"
            details.append("dataset carries no citation string")
        missing = sorted(
            key
            for key in construction.expected
            if not str(construction.expected_cites.get(key, "")).strip()
        )
        if missing:
            status = "fail"
            details.append(
                "recorded values lacking a citation: " + ", ".join(missing)
            )
        elif construction.expected:
            details.append(
                f"all {len(construction.expected)} recorded values carry "
                "citations"
            )
        return status, details

    guarded("citation", citation_check)

    return VerifyReport(construction=construction.name, checks=tuple(checks))
