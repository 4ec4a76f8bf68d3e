"""
Verification report: re-derives every lattice statement the toolkit is
built around and prints PASS/FAIL with the exact values.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

import numpy as np

from config.constants import CHI_O_GENERAL_TYPE, EXIT_SUCCESS, EXIT_VERIFICATION_FAILED
from conelab.cone_engine import (
    ExceptionalQuery,
    adjunction_genus,
    certify_non_generic,
    classify_trivial_K_negative_curve,
    enumerate_exceptional,
    in_full_symplectic_cone,
    in_kahler_cone,
    in_symplectic_cone,
    kahler_witness,
    noether_b2,
    positive_classes_are_ample_multiples,
    symplectic_generic_verdict,
)
from conelab.exceptions import ConeLabError
from conelab.lattice import PARITY_EVEN, PARITY_ODD, format_class, pair, parity, self_int
from conelab.settings import load_config
from conelab.shared.rational import format_fraction
from conelab.surface_models import (
    SurfaceModel,
    ball_quotient_model,
    bidisk_model,
    burniat_model,
    decomposable_identity_check,
    delta_class,
    rational_blowup_model,
    ruled_blowup_model,
    xi_class,
)

logger = logging.getLogger(__name__)

CheckResult = Tuple[bool, str]


@dataclass
class ReportItem:
    name: str
    passed: bool
    detail: str

    def __str__(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class Report:
    items: List[ReportItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def first_failure(self) -> Optional[ReportItem]:
        return next((item for item in self.items if not item.passed), None)

    @property
    def exit_code(self) -> int:
        return EXIT_SUCCESS if self.passed else EXIT_VERIFICATION_FAILED


def _set_label(model: SurfaceModel, classes) -> str:
    return "{" + ", ".join(model.label(x) for x in classes) + "}"


def check_delta(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    lattice = ruled.lattice
    e, f, k = lattice.basis()
    delta = delta_class(ruled)
    square = self_int(delta, lattice)
    genus = adjunction_genus(delta, k, lattice)
    passed = delta == 2 * e - 2 * k and square == 0 and genus == 1 and pair(delta, f, lattice) == 4
    return passed, (
        f"delta = {format_class(delta)}, delta^2 = {format_fraction(square)}, "
        f"delta.f = {format_fraction(pair(delta, f, lattice))}, genus {format_fraction(genus)}"
    )


def check_decomposable(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    degrees = [-1, -3, -5]
    identities = [decomposable_identity_check(m) for m in degrees]
    integral = [xi_class(m).is_integral for m in degrees]
    passed = all(identities) and not any(integral)
    return passed, (
        f"4xi + (-2mf - e) = e - 2k for m in {degrees}: {identities}; "
        f"xi = {format_class(xi_class(-1))} at m = -1, integral: {any(integral)}"
    )


def check_exceptional_set(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    lattice = ruled.lattice
    found = enumerate_exceptional(
        ExceptionalQuery(K=ruled.K, sublattice_basis=ruled.sphere_sublattice, bound=settings["ruled_sphere_bound"]),
        lattice,
    )
    passed = set(found) == set(ruled.exceptional_set)
    return passed, f"E(X,k) = {_set_label(ruled, sorted(found, key=ruled.label))}"


def check_unconstrained_superset(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    lattice = ruled.lattice
    e, f, k = lattice.basis()
    bound = settings["ruled_unconstrained_bound"]
    found = enumerate_exceptional(ExceptionalQuery(K=ruled.K, bound=bound), lattice)
    family = [x for x in found if x.coeffs[1] == 0 and x.coeffs[0] + x.coeffs[2] == 1]
    passed = set(ruled.exceptional_set) < set(found) and len(family) >= 3
    return passed, (
        f"{len(found)} numerical solutions at bound {bound}, "
        f"{len(family)} of the form ae+(1-a)k: {', '.join(format_class(x) for x in family)}"
    )


def check_parity(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    ruled_parity = parity(ruled.lattice)
    bidisk_parity = parity(bidisk_model().lattice)
    passed = ruled_parity == PARITY_ODD and bidisk_parity == PARITY_EVEN
    return passed, f"ruled {ruled_parity}, bidisk {bidisk_parity}"


def check_ruled_certificate(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    lattice = ruled.lattice
    e, f, k = lattice.basis()
    named = ruled.named
    curve = next(c for c in ruled.curves if c.label == "c")
    certificate = certify_non_generic(named["r"], curve, ruled)
    aT = certificate.aT
    e1, e2 = named["e1"], named["e2"]
    values = {
        "T": certificate.T,
        "aT^2": certificate.aT_square,
        "aT.e1": pair(aT, e1, lattice),
        "aT.e2": pair(aT, e2, lattice),
        "aT.C": pair(aT, curve.cls, lattice),
    }
    witness = kahler_witness(aT, ruled)
    passed = (
        values == {"T": 4, "aT^2": 11, "aT.e1": 5, "aT.e2": 13, "aT.C": -1}
        and aT == 4 * e + f - 9 * k
        and in_symplectic_cone(aT, ruled)
        and in_full_symplectic_cone(aT, ruled)
        and not in_kahler_cone(aT, ruled)
        and witness is not None
        and witness.label == "c"
        and certificate.verify(ruled)
    )
    shown = ", ".join(f"{name} = {format_fraction(value)}" for name, value in values.items())
    return passed, f"aT = {format_class(aT)}, {shown}, interval {certificate.interval}"


def check_burniat_certificate(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    model = burniat_model()
    lattice = model.lattice
    k, c = lattice.basis()
    certificate = certify_non_generic(k, model.curves[0], model)
    aT = certificate.aT
    passed = (
        certificate.T == 2
        and self_int(aT, lattice) == 6
        and pair(aT, c, lattice) == -1
        and in_symplectic_cone(aT, model)
        and not in_kahler_cone(aT, model)
    )
    return passed, (
        f"T = {format_fraction(certificate.T)}, aT = {format_class(aT)}, "
        f"aT^2 = {format_fraction(self_int(aT, lattice))}, aT.c = {format_fraction(pair(aT, c, lattice))}"
    )


def check_noether(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    k_squares = settings["noether_k_squares"]
    table = {k_sq: noether_b2(k_sq, CHI_O_GENERAL_TYPE) for k_sq in k_squares}
    passed = all(b2 == 10 - k_sq for k_sq, b2 in table.items())
    if set(k_squares) >= {6, 8, 9}:
        passed = passed and table[6] == 4 and table[8] == 2 and table[9] == 1
    return passed, "b2 = 10 − K²: " + ", ".join(f"{k_sq}→{b2}" for k_sq, b2 in table.items())


def check_ball_quotient(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    model = ball_quotient_model()
    k_sq = self_int(model.K, model.lattice)
    passed = k_sq == 9 and positive_classes_are_ample_multiples(model)
    return passed, f"K^2 = {format_fraction(k_sq)}, b2 = {model.lattice.rank}, every class of P_X is a multiple of h"


def check_bidisk_genericity(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    model = bidisk_model()
    w1, w2 = model.lattice.basis()
    rng = np.random.default_rng(settings["seed"])
    samples = settings["bidisk_samples"]
    agree = 0
    for _ in range(samples):
        a = Fraction(int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
        b = Fraction(int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
        x = a * w1 + b * w2
        if in_kahler_cone(x, model) and in_symplectic_cone(x, model):
            agree += 1
    return agree == samples, f"{agree}/{samples} random classes aw1+bw2 (a, b > 0) are Kähler and symplectic"


def check_rational_models(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    parts = []
    passed = True
    expected_counts = {0: 0, 1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
    for n in settings["rational_blowups"]:
        model = rational_blowup_model(n)
        found = enumerate_exceptional(ExceptionalQuery(K=model.K, bound=settings["rational_bound"]), model.lattice)
        passed = passed and set(found) == set(model.exceptional_set)
        passed = passed and len(model.exceptional_set) == expected_counts[n]
        parts.append(f"n={n}: {_set_label(model, model.exceptional_set)}")
    return passed, "; ".join(parts)


def check_genericity_verdicts(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    expected = {
        "ruled": (ruled, False),
        "burniat": (burniat_model(), False),
        "bidisk": (bidisk_model(), True),
        "ball-quotient": (ball_quotient_model(), True),
        "rational:2": (rational_blowup_model(2), True),
    }
    parts = []
    passed = True
    for name, (model, generic) in expected.items():
        verdict = symplectic_generic_verdict(model)
        passed = passed and verdict.generic == generic
        parts.append(f"{name} {'generic' if verdict.generic else 'not generic'}")
    return passed, ", ".join(parts)


def check_trivial_canonical(ruled: SurfaceModel, settings: Dict[str, Any]) -> CheckResult:
    admissible = [
        (c_sq, g)
        for c_sq in range(-6, 0)
        for g in range(0, 4)
        if classify_trivial_K_negative_curve(c_sq, g)
    ]
    return admissible == [(-2, 0)], f"admissible (C^2, g) with K = 0: {admissible}"


REPORT_ITEMS: List[Tuple[str, Callable[[SurfaceModel, Dict[str, Any]], CheckResult]]] = [
    ("delta-solve", check_delta),
    ("decomposable-identity", check_decomposable),
    ("exceptional-set", check_exceptional_set),
    ("unconstrained-enumeration", check_unconstrained_superset),
    ("parity", check_parity),
    ("ruled-certificate", check_ruled_certificate),
    ("burniat-certificate", check_burniat_certificate),
    ("noether", check_noether),
    ("ball-quotient", check_ball_quotient),
    ("bidisk-genericity", check_bidisk_genericity),
    ("rational-models", check_rational_models),
    ("genericity-verdicts", check_genericity_verdicts),
    ("trivial-canonical", check_trivial_canonical),
]


def run_paper_report(out: Optional[TextIO] = None, config: Optional[Dict[str, Any]] = None) -> Report:
    """
    Run every check in order and write one line per item.

    Args:
        out: Stream for the report lines (nothing written when None)
        config: Loaded configuration; defaults to load_config()

    Returns:
        Report; exit_code is 0 iff every item passed
    """
    config = config or load_config()
    settings = {**config["report"], "seed": config["seed"]}

    report = Report()
    ruled = ruled_blowup_model()
    for name, check in REPORT_ITEMS:
        try:
            passed, detail = check(ruled, settings)
        except ConeLabError as e:
            logger.error(f"Report item {name} raised: {e}")
            passed, detail = False, f"{type(e).__name__}: {e}"
        item = ReportItem(name=name, passed=passed, detail=detail)
        report.items.append(item)
        if out is not None:
            out.write(f"{item}\n")

    failure = report.first_failure
    summary = "ALL PASS" if failure is None else f"FAILED at {failure.name}"
    if out is not None:
        out.write(f"{summary}\n")
    logger.info(f"Report finished: {summary}")
    return report
