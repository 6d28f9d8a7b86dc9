"""
Named verification suites.

Each suite sweeps a catalog of split sheaves (or helix indices, or windows) on
one space and collects every failed check. Random catalogs come from a seeded
random.Random so a run is reproducible from its seed.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from blockreg.block_machinery import (
    aligned_dual_classes,
    dual_classes_by_mutation,
    fundamental_collection,
    gram_matrix,
    left_dual_classes_k0,
    verify_exceptional_structure,
    window,
)
from blockreg.logging_config import get_logger
from blockreg.product_sheaves import BoxProduct, SplitSheaf, Space
from blockreg.regularity import (
    DEFAULT_SEARCH_CAP,
    CheckResult,
    aligned_value,
    block_regularity_pn,
    cm_regularity,
    is_experimental,
    least_aligned_k,
    verify_beilinson,
    verify_corollary_5_6,
    verify_direct_sum,
    verify_helix_regularity,
    verify_monotonicity,
    verify_shift_laws,
    verify_theorem_5_5,
)
from blockreg.utils import lattice_box

logger = get_logger(__name__)

DEFAULT_MAX_DEGREE = 4
DEFAULT_SEED = 20240
RANDOM_SUM_COUNT = 100
RANDOM_SUM_TERMS = 3
PN_AGREEMENT_COUNT = 200
PN_AGREEMENT_DEGREE = 6
BEILINSON_COUNT = 50
PN_HELIX_RANGE = 10
PRODUCT_HELIX_RANGE = 7
DUAL_WINDOW_RANGE = 2
STRUCTURE_WINDOW_RANGE = 6


@dataclass
class SuiteReport:
    name: str
    space: Space
    cases: int = 0
    failures: List[CheckResult] = field(default_factory=list)
    skipped: Optional[str] = None
    experimental: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, result: CheckResult) -> None:
        self.cases += 1
        if not result.passed:
            logger.info(f"{self.name} on {self.space}: {result.details}")
            self.failures.append(result)


@dataclass
class SuiteOptions:
    max_degree: int = DEFAULT_MAX_DEGREE
    seed: int = DEFAULT_SEED
    cap: int = DEFAULT_SEARCH_CAP


def line_bundle_catalog(space: Space, max_degree: int) -> List[SplitSheaf]:
    """Every O(a) with |a_i| <= max_degree."""
    r = space.factor_count
    return [
        SplitSheaf.line_bundle(space, a)
        for a in lattice_box((-max_degree,) * r, (max_degree,) * r)
    ]


def random_split_sheaves(
    space: Space,
    rng: random.Random,
    count: int,
    max_degree: int,
    max_terms: int = RANDOM_SUM_TERMS,
) -> List[SplitSheaf]:
    """Sums of 1..max_terms line bundles with degrees in [-max_degree, max_degree]."""
    sheaves = []
    for _ in range(count):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            degree = tuple(rng.randint(-max_degree, max_degree) for _ in space.dims)
            terms.append((rng.randint(1, 2), BoxProduct.line_bundle(space, degree)))
        sheaves.append(SplitSheaf.from_terms(terms))
    return sheaves


def _catalog(space: Space, options: SuiteOptions) -> List[SplitSheaf]:
    rng = random.Random(options.seed)
    return line_bundle_catalog(space, options.max_degree) + random_split_sheaves(
        space, rng, RANDOM_SUM_COUNT, options.max_degree
    )


def suite_thm55(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("thm55", space, experimental=is_experimental(space))
    for F in _catalog(space, options):
        report.record(verify_theorem_5_5(space, F))
    return report


def suite_cor56(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("cor56", space, experimental=is_experimental(space))
    for F in _catalog(space, options):
        report.record(verify_corollary_5_6(space, F, options.cap))
    return report


def suite_prop49(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("prop49", space)
    bound = PN_HELIX_RANGE if space.is_projective_space else PRODUCT_HELIX_RANGE
    for i in range(-bound, bound + 1):
        report.record(verify_helix_regularity(space, i, options.cap))
    return report


def suite_prop414(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("prop414", space)
    if not space.is_projective_space:
        report.skipped = "Castelnuovo-Mumford regularity is only defined on a single P^n"
        return report
    n = space.dims[0]
    rng = random.Random(options.seed)
    for F in random_split_sheaves(space, rng, PN_AGREEMENT_COUNT, PN_AGREEMENT_DEGREE):
        block = block_regularity_pn(n, F, options.cap)
        cm = cm_regularity(n, F, options.cap)
        report.record(CheckResult("prop414", block == cm, f"{F}: block {block}, CM {cm}"))
    return report


def suite_monotone(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("monotone", space)
    for F in _catalog(space, options):
        if space.is_projective_space:
            reg = int(block_regularity_pn(space.dims[0], F, options.cap))
            values = range(reg - 2, reg + 2)
        else:
            k = least_aligned_k(space, F, options.cap)
            assert k is not None
            values = [aligned_value(space, j) for j in (k - 1, k, k + 1)]
        for m in values:
            report.record(verify_monotonicity(space, F, m))
    return report


def suite_dualsum(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("dualsum", space)
    rng = random.Random(options.seed)
    sheaves = random_split_sheaves(space, rng, 2 * RANDOM_SUM_COUNT, options.max_degree)
    for F, G in zip(sheaves[::2], sheaves[1::2]):
        report.record(verify_direct_sum(space, F, G, options.cap))
        report.record(verify_direct_sum(space, F, F, options.cap))
    return report


def suite_shift(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("shift", space, experimental=is_experimental(space))
    rng = random.Random(options.seed)
    for F in _catalog(space, options):
        base = tuple(rng.randint(-2, 2) for _ in space.dims)
        k = rng.randint(-1, 1)
        report.record(verify_shift_laws(space, F, base, k))
    return report


def suite_dual(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("dual", space)
    d = space.dimension
    gram = gram_matrix(space, fundamental_collection(space))
    report.record(CheckResult("gram", gram.is_unitriangular(), f"fundamental Gram of {space}"))
    for k in range(-DUAL_WINDOW_RANGE, DUAL_WINDOW_RANGE + 1):
        solved = [dual.cls for dual in left_dual_classes_k0(space, k * (d + 1))]
        closed = [dual.cls for dual in aligned_dual_classes(space, k)]
        report.record(CheckResult("dual", solved == closed, f"aligned window k={k}"))
    for base in range(-(d + 1), d + 2):
        solved = [dual.cls for dual in left_dual_classes_k0(space, base)]
        mutated = [dual.cls for dual in dual_classes_by_mutation(space, base)]
        report.record(CheckResult("dual", solved == mutated, f"mutation duals of window {base}"))
    for base in range(-STRUCTURE_WINDOW_RANGE, STRUCTURE_WINDOW_RANGE + 1):
        structure = verify_exceptional_structure(space, window(space, base))
        report.record(
            CheckResult("dual", structure.passed, f"window {base}: {structure.violation or 'ok'}")
        )
    return report


def suite_beilinson(space: Space, options: SuiteOptions) -> SuiteReport:
    report = SuiteReport("beilinson", space)
    rng = random.Random(options.seed)
    for F in random_split_sheaves(space, rng, BEILINSON_COUNT, options.max_degree):
        if space.is_projective_space:
            reg = int(block_regularity_pn(space.dims[0], F, options.cap))
            values = [reg, reg + 1]
        else:
            k = least_aligned_k(space, F, options.cap)
            assert k is not None
            values = [aligned_value(space, k), aligned_value(space, k + 1)]
        for m in values:
            report.record(verify_beilinson(space, F, m))
    return report


SUITES: Dict[str, Callable[[Space, SuiteOptions], SuiteReport]] = {
    "thm55": suite_thm55,
    "cor56": suite_cor56,
    "prop49": suite_prop49,
    "prop414": suite_prop414,
    "monotone": suite_monotone,
    "dualsum": suite_dualsum,
    "shift": suite_shift,
    "dual": suite_dual,
    "beilinson": suite_beilinson,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suites(
    space: Space, name: str, options: Optional[SuiteOptions] = None
) -> List[SuiteReport]:
    """Run one named suite, or every suite for 'all'."""
    options = options or SuiteOptions()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    reports = []
    for suite_name in names:
        logger.debug(f"Running suite {suite_name} on {space}")
        reports.append(SUITES[suite_name](space, options))
    return reports
