"""
Regularity of split sheaves on products of projective spaces.

Three notions are computed and cross-checked:

* Castelnuovo-Mumford regularity on P^n.
* Regularity with respect to a block collection. On P^n it uses the collection
  (O, O(1), ..., O(n)) and is exact for every m. On products it is evaluated
  on the aligned values m = k(d+1) - d, where the dual collection has a closed
  form, and reported together with the interval it pins the true value to.
* Multigraded regularity defined by vanishing on staircase sets of twists.

Every negative answer carries witnesses: a test object, a cohomological degree
and the nonzero dimension found there.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from blockreg.block_machinery import (
    K0Class,
    aligned_k,
    aligned_window_dual,
    helix_block,
    is_aligned,
    k0_class,
    line_class,
)
from blockreg.errors import ComputationError, SearchCapExceeded, ValidationError
from blockreg.factor_cohomology import from_wedge_tangent
from blockreg.logging_config import get_logger
from blockreg.product_sheaves import (
    BoxProduct,
    MultiDegree,
    SheafLike,
    SplitSheaf,
    Space,
    add_degrees,
    check_arity,
    cohomology,
    ext_table,
    require_line_bundles,
    scale_degree,
    twist,
)
from blockreg.utils import compositions, lattice_box

logger = get_logger(__name__)

DEFAULT_SEARCH_CAP = 512

NEG_INF = float("-inf")
Regularity = Union[int, float]

CM = "cm"
BLOCK = "block"
BLOCK_ALIGNED = "block-aligned"
HW = "hw"


@dataclass(frozen=True)
class Witness:
    """
    A nonzero group of dimension `dimension` in degree q.

    With `against` set this is Ext^q(test_object, against), the group a block
    test object sees; otherwise it is h^q of `test_object`, a twist of F.
    """

    test_object: str
    q: int
    dimension: int
    twist: Optional[MultiDegree] = None
    member: Optional[MultiDegree] = None
    against: Optional[str] = None

    def __str__(self) -> str:
        if self.against is not None:
            return f"Ext^{self.q}({self.test_object}, {self.against}) = {self.dimension}"
        where = ""
        if self.twist is not None:
            where = " at (" + ",".join(str(x) for x in self.twist) + ")"
        return f"h^{self.q}({self.test_object}){where} = {self.dimension}"


@dataclass(frozen=True)
class StSet:
    """Staircase twists St_i(base)."""

    i: int
    base: MultiDegree
    members: Tuple[MultiDegree, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class RegularityVerdict:
    """
    Outcome of a least-m search.

    `interval` is (lower, upper) with the true value in (lower, upper]. Only
    aligned block regularity on products sets it; every other value is exact.
    """

    kind: str
    value: Any
    witnesses: List[Witness] = field(default_factory=list)
    interval: Optional[Tuple[Regularity, Regularity]] = None
    experimental: bool = False
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""
    witnesses: List[Witness] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _pn(n: int) -> Space:
    return Space((n,))


def _least_true(predicate: Callable[[int], bool], seed: int, cap: int, what: str) -> int:
    """
    Least integer x with predicate(x), for a predicate that is false below some
    threshold and true from there on.

    The bracket grows geometrically from `seed`, then shrinks by bisection.
    Leaving [seed - cap, seed + cap] raises SearchCapExceeded.
    """
    low_bound, high_bound = seed - cap, seed + cap

    if predicate(seed):
        hi, step = seed, 1
        while True:
            if hi == low_bound:
                raise SearchCapExceeded(what, cap)
            lo = max(hi - step, low_bound)
            if not predicate(lo):
                break
            hi, step = lo, step * 2
    else:
        lo, step = seed, 1
        while True:
            if lo == high_bound:
                raise SearchCapExceeded(what, cap)
            hi = min(lo + step, high_bound)
            if predicate(hi):
                break
            lo, step = hi, step * 2
    logger.debug(f"{what}: bracket ({lo}, {hi}] from seed {seed}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _degree_seed(F: SplitSheaf, periods: Sequence[int]) -> int:
    # least k with every term twisted by k*period non-negative in every factor
    return max(
        -(fs.k // period)
        for _, box in F.terms
        for fs, period in zip(box.factors, periods)
    )


# --------------------------------------------------------------------------
# Castelnuovo-Mumford regularity on P^n
# --------------------------------------------------------------------------

def cm_witnesses(n: int, F: SheafLike, m: int, first_only: bool = False) -> List[Witness]:
    """Nonzero H^i(F(m-i)) for 0 < i <= n."""
    space = _pn(n)
    F = check_arity(space, F)
    witnesses = []
    for i in range(1, n + 1):
        twisted = twist(F, (m - i,))
        h = cohomology(space, twisted)[i]
        if h:
            witnesses.append(Witness(str(twisted), i, h, twist=(m - i,)))
            if first_only:
                break
    return witnesses


def cm_regular(n: int, F: SheafLike, m: int) -> bool:
    return not cm_witnesses(n, F, m, first_only=True)


def cm_regularity(n: int, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> Regularity:
    """Least m with F m-regular; -inf for the zero sheaf."""
    F = check_arity(_pn(n), F)
    if F.is_zero:
        return NEG_INF
    seed = _degree_seed(F, (1,))
    return _least_true(lambda m: cm_regular(n, F, m), seed, cap, "Castelnuovo-Mumford regularity")


def cm_verdict(n: int, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> RegularityVerdict:
    value = cm_regularity(n, F, cap)
    witnesses = [] if value == NEG_INF else cm_witnesses(n, F, int(value) - 1)
    return RegularityVerdict(CM, value, witnesses)


# --------------------------------------------------------------------------
# Block regularity on P^n, collection (O, O(1), ..., O(n))
# --------------------------------------------------------------------------

def pn_test_objects(n: int, m: int) -> List[Tuple[int, BoxProduct]]:
    """(j, wedge^j T(-m-j)) for 0 <= j <= n; the j-th one is dual to O(-m-j)."""
    return [(j, BoxProduct((from_wedge_tangent(n, j, -m - j),))) for j in range(n + 1)]


def block_witnesses_pn(n: int, F: SheafLike, m: int, first_only: bool = False) -> List[Witness]:
    """Nonzero H^q(Omega^j(m+j) (x) F) for q > 0 and 0 <= j <= n."""
    space = _pn(n)
    F = require_line_bundles(space, F)
    witnesses = []
    for j, test_object in pn_test_objects(n, m):
        table = ext_table(space, test_object, F)
        for q in range(1, n + 1):
            if table[q]:
                witnesses.append(
                    Witness(str(test_object), q, table[q], member=(-m - j,), against=str(F))
                )
                if first_only:
                    return witnesses
    return witnesses


def block_regular_pn(n: int, F: SheafLike, m: int) -> bool:
    return not block_witnesses_pn(n, F, m, first_only=True)


def block_regularity_pn(n: int, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> Regularity:
    F = require_line_bundles(_pn(n), F)
    if F.is_zero:
        return NEG_INF
    seed = _degree_seed(F, (1,))
    return _least_true(lambda m: block_regular_pn(n, F, m), seed, cap, "block regularity")


# --------------------------------------------------------------------------
# Multigraded regularity
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _warn_experimental(space: Space) -> None:
    logger.warning(
        f"Staircase sets on {space} ({space.factor_count} factors) use the experimental "
        f"generalisation beyond two factors"
    )


def is_experimental(space: Space) -> bool:
    return space.factor_count > 2


def st_set(space: Space, i: int, base: Sequence[int]) -> StSet:
    """
    St_i(base).

    For i >= 1: base + l with every l_j <= -1 and sum(l) = -(r-1) - i.
    For i <= 0: base + l with every l_j >= 0 and sum(l) = -i.
    """
    base = space.check_degree(base, "staircase base")
    r = space.factor_count
    if is_experimental(space):
        _warn_experimental(space)
    if i >= 1:
        offsets = [tuple(-u - 1 for u in parts) for parts in compositions(i - 1, r)]
    else:
        offsets = list(compositions(-i, r))
    return StSet(i, base, tuple(sorted(add_degrees(base, l) for l in offsets)))


def hw_witnesses(
    space: Space, F: SheafLike, base: Sequence[int], first_only: bool = False
) -> List[Witness]:
    """Nonzero H^i(F(l)) for l in St_i(base), 1 <= i <= d."""
    F = check_arity(space, F)
    witnesses = []
    for i in range(1, space.dimension + 1):
        for l in st_set(space, i, base):
            twisted = twist(F, l)
            h = cohomology(space, twisted)[i]
            if h:
                witnesses.append(Witness(str(twisted), i, h, twist=l))
                if first_only:
                    return witnesses
    return witnesses


def hw_regular(space: Space, F: SheafLike, base: Sequence[int]) -> bool:
    return not hw_witnesses(space, F, base, first_only=True)


def hw_min_diagonal(space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> Regularity:
    """Least t such that F is regular at (t, ..., t)."""
    F = check_arity(space, F)
    if F.is_zero:
        return NEG_INF
    r = space.factor_count
    seed = _degree_seed(F, (1,) * r)
    return _least_true(
        lambda t: hw_regular(space, F, (t,) * r), seed, cap, "diagonal multigraded regularity"
    )


def hw_regular_region(
    space: Space, F: SheafLike, lower: Sequence[int], upper: Sequence[int]
) -> Tuple[MultiDegree, ...]:
    """Every base point in the box [lower, upper] at which F is regular."""
    lower = space.check_degree(lower, "box corner")
    upper = space.check_degree(upper, "box corner")
    return tuple(
        tuple(p) for p in lattice_box(lower, upper) if hw_regular(space, F, p)
    )


def hw_verdict(space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> RegularityVerdict:
    t = hw_min_diagonal(space, F, cap)
    r = space.factor_count
    witnesses = [] if t == NEG_INF else hw_witnesses(space, F, (int(t) - 1,) * r)
    return RegularityVerdict(HW, t, witnesses, experimental=is_experimental(space))


# --------------------------------------------------------------------------
# Block regularity on the aligned lattice
# --------------------------------------------------------------------------

def aligned_value(space: Space, k: int) -> int:
    """m = k(d+1) - d."""
    return k * (space.dimension + 1) - space.dimension


def aligned_witnesses(
    space: Space, F: SheafLike, k: int, first_only: bool = False
) -> List[Witness]:
    """
    Nonzero Ext^q(A, F), q > 0, over the dual objects A of the window -k(d+1).

    Equivalently H^q((Omega^(-a_1)(-a_1) # ... ) (x) F(k(n_1+1), ..., k(n_r+1))).
    """
    F = require_line_bundles(space, F)
    witnesses = []
    for block in aligned_window_dual(space, -k):
        for dual in block:
            table = ext_table(space, dual.obj, F)
            for q in range(1, space.dimension + 1):
                if table[q]:
                    witnesses.append(
                        Witness(str(dual.obj), q, table[q], member=dual.member, against=str(F))
                    )
                    if first_only:
                        return witnesses
    return witnesses


def block_regular_aligned(space: Space, F: SheafLike, k: int) -> bool:
    """Whether F is (k(d+1) - d)-regular."""
    return not aligned_witnesses(space, F, k, first_only=True)


def least_aligned_k(space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> Optional[int]:
    """Least k with F regular at k(d+1) - d; None for the zero sheaf."""
    F = require_line_bundles(space, F)
    if F.is_zero:
        return None
    seed = _degree_seed(F, space.period)
    return _least_true(
        lambda k: block_regular_aligned(space, F, k), seed, cap, "aligned block regularity"
    )


def block_regularity_aligned(
    space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP
) -> RegularityVerdict:
    """
    Least aligned m at which F is regular, with the interval (m - d - 1, m]
    that contains the exact block regularity and the bounds relating it to the
    diagonal multigraded regularity.
    """
    F = require_line_bundles(space, F)
    k = least_aligned_k(space, F, cap)
    if k is None:
        return RegularityVerdict(BLOCK_ALIGNED, NEG_INF, [], (NEG_INF, NEG_INF))
    d = space.dimension
    m = aligned_value(space, k)
    t = hw_min_diagonal(space, F, cap)
    phi = max((int(t) - 1) // period for period in space.period)
    details = {
        "k": k,
        "hw_min_diagonal": t,
        "hw_regular_at": list(scale_degree(space.period, k + 1)),
        "block_upper_bound": phi * (d + 1) + 1,
    }
    return RegularityVerdict(
        BLOCK_ALIGNED,
        m,
        aligned_witnesses(space, F, k - 1),
        (m - d - 1, m),
        experimental=is_experimental(space),
        details=details,
    )


def block_regular(space: Space, F: SheafLike, m: int) -> bool:
    """
    Block m-regularity: any m on a single projective space, aligned m on products.

    Raises:
        ValidationError: If m is not aligned on a product
    """
    if space.is_projective_space:
        return block_regular_pn(space.dims[0], F, m)
    if not is_aligned(space, m):
        raise ValidationError.not_aligned(m, space.dimension)
    return block_regular_aligned(space, F, aligned_k(space, m))


def block_witnesses(space: Space, F: SheafLike, m: int) -> List[Witness]:
    if space.is_projective_space:
        return block_witnesses_pn(space.dims[0], F, m)
    if not is_aligned(space, m):
        raise ValidationError.not_aligned(m, space.dimension)
    return aligned_witnesses(space, F, aligned_k(space, m))


def block_verdict(space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> RegularityVerdict:
    """Exact value on P^n, aligned value with its interval on products."""
    if not space.is_projective_space:
        return block_regularity_aligned(space, F, cap)
    n = space.dims[0]
    value = block_regularity_pn(n, F, cap)
    witnesses = [] if value == NEG_INF else block_witnesses_pn(n, F, int(value) - 1)
    return RegularityVerdict(BLOCK, value, witnesses)


def _block_value(space: Space, F: SheafLike, cap: int) -> Regularity:
    if space.is_projective_space:
        return block_regularity_pn(space.dims[0], F, cap)
    return block_regularity_aligned(space, F, cap).value


# --------------------------------------------------------------------------
# Verifiers
# --------------------------------------------------------------------------

def verify_theorem_5_5(space: Space, F: SheafLike) -> CheckResult:
    """Regular at the zero multidegree exactly when (-d)-regular for the block collection."""
    hw = hw_witnesses(space, F, space.zero_degree(), first_only=True)
    block = aligned_witnesses(space, F, 0, first_only=True)
    passed = (not hw) == (not block)
    details = (
        f"multigraded (0): {'regular' if not hw else 'not regular'}, "
        f"block (-{space.dimension}): {'regular' if not block else 'not regular'}"
    )
    return CheckResult("thm55", passed, details, [] if passed else hw + block)


def verify_corollary_5_6(space: Space, F: SheafLike, cap: int = DEFAULT_SEARCH_CAP) -> CheckResult:
    """
    Both transfers between the two regularities.

    From the least aligned k: F is multigraded regular at ((k+1)(n_i+1))_i.
    From a multigraded regular base p with p_i = l_i(n_i+1) + x_i,
    0 < x_i <= n_i+1: F is block regular at k = max(l_i) + 1. Bases are taken
    from the box [t-2, t+1]^r around the least diagonal point t.
    """
    F = require_line_bundles(space, F)
    if F.is_zero:
        return CheckResult("cor56", True, "zero sheaf")
    k = least_aligned_k(space, F, cap)
    assert k is not None
    target = scale_degree(space.period, k + 1)
    witnesses = hw_witnesses(space, F, target)
    if witnesses:
        return CheckResult(
            "cor56", False, f"aligned k={k} but not multigraded regular at {target}", witnesses
        )
    t = int(hw_min_diagonal(space, F, cap))
    r = space.factor_count
    checked = 0
    for p in hw_regular_region(space, F, (t - 2,) * r, (t + 1,) * r):
        phi = max((x - 1) // period for x, period in zip(p, space.period))
        witnesses = aligned_witnesses(space, F, phi + 1, first_only=True)
        checked += 1
        if witnesses:
            return CheckResult(
                "cor56",
                False,
                f"multigraded regular at {p} but not block regular at k={phi + 1}",
                witnesses,
            )
    return CheckResult("cor56", True, f"aligned k={k}, t={t}, {checked} base point(s)")


def verify_monotonicity(space: Space, F: SheafLike, m: int) -> CheckResult:
    """m-regular implies (m+1)-regular on P^n and (m+d+1)-regular on products."""
    step = 1 if space.is_projective_space else space.dimension + 1
    if not block_regular(space, F, m):
        return CheckResult("monotone", True, f"not {m}-regular; nothing to check")
    witnesses = block_witnesses(space, F, m + step)
    if space.is_projective_space and not witnesses:
        n = space.dims[0]
        if cm_regular(n, F, m) and not cm_regular(n, F, m + 1):
            witnesses = cm_witnesses(n, F, m + 1)
    return CheckResult("monotone", not witnesses, f"{m} -> {m + step}", witnesses)


def verify_direct_sum(
    space: Space, F: SheafLike, G: SheafLike, cap: int = DEFAULT_SEARCH_CAP
) -> CheckResult:
    """
    Reg(F + G) = max(Reg F, Reg G), and on the split sequence
    0 -> F -> F + G -> G -> 0 the middle term is bounded by the ends.
    """
    F = require_line_bundles(space, F)
    G = require_line_bundles(space, G)
    reg_f = _block_value(space, F, cap)
    reg_g = _block_value(space, G, cap)
    reg_sum = _block_value(space, F + G, cap)
    # the split sequence bound Reg(F + G) <= max(Reg F, Reg G) is the weaker half
    passed = reg_sum == max(reg_f, reg_g)
    if passed and space.is_projective_space:
        n = space.dims[0]
        cm_max = max(cm_regularity(n, F, cap), cm_regularity(n, G, cap))
        passed = cm_regularity(n, F + G, cap) == cm_max
    return CheckResult("dualsum", passed, f"Reg(F)={reg_f}, Reg(G)={reg_g}, Reg(F+G)={reg_sum}")


def verify_shift_laws(space: Space, F: SheafLike, base: Sequence[int], k: int) -> CheckResult:
    """
    Regular at `base` iff F(base) is regular at 0, and regular at aligned k iff
    F(k(n_1+1), ..., k(n_r+1)) is regular at aligned 0.
    """
    F = require_line_bundles(space, F)
    base = space.check_degree(base, "base")
    hw_left = hw_regular(space, F, base)
    hw_right = hw_regular(space, twist(F, base), space.zero_degree())
    block_left = block_regular_aligned(space, F, k)
    block_right = block_regular_aligned(space, twist(F, scale_degree(space.period, k)), 0)
    passed = hw_left == hw_right and block_left == block_right
    details = f"base {base}: {hw_left}/{hw_right}; k={k}: {block_left}/{block_right}"
    return CheckResult("shift", passed, details)


def helix_members(space: Space, i: int) -> Tuple[MultiDegree, ...]:
    """
    Members of the i-th helix block.

    On a single P^n the indexing follows the collection (O, ..., O(n)), so
    block i is O(i).
    """
    if space.is_projective_space:
        return helix_block(space, i + space.dimension).members
    return helix_block(space, i).members


def verify_helix_regularity(space: Space, i: int, cap: int = DEFAULT_SEARCH_CAP) -> CheckResult:
    """Every member of helix block i has block regularity -i."""
    for member in helix_members(space, i):
        E = SplitSheaf.line_bundle(space, member)
        verdict = block_verdict(space, E, cap)
        if verdict.interval is None or is_aligned(space, -i):
            passed = verdict.value == -i
        else:
            lower, upper = verdict.interval
            passed = lower < -i <= upper
        if not passed:
            return CheckResult(
                "prop49",
                False,
                f"O{member} in block {i}: value {verdict.value}, interval {verdict.interval}",
                verdict.witnesses,
            )
    return CheckResult("prop49", True, f"block {i}")


# --------------------------------------------------------------------------
# Beilinson resolution terms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BeilinsonTerm:
    """L_p as (line bundle, multiplicity) pairs."""

    p: int
    summands: Tuple[Tuple[MultiDegree, int], ...]

    def as_sheaf(self, space: Space) -> SplitSheaf:
        return SplitSheaf.from_terms(
            (multiplicity, BoxProduct.line_bundle(space, degree))
            for degree, multiplicity in self.summands
        )


@dataclass(frozen=True)
class BeilinsonResolution:
    space: Space
    m: int
    terms: Tuple[BeilinsonTerm, ...]

    def alternating_class(self) -> K0Class:
        """sum_p (-1)^p [L_p]."""
        total = K0Class.zero(self.space)
        for term in self.terms:
            for degree, multiplicity in term.summands:
                total = total + ((-1) ** (-term.p) * multiplicity) * line_class(self.space, degree)
        return total


def beilinson_terms(space: Space, F: SheafLike, m: int) -> BeilinsonResolution:
    """
    Terms L_-d, ..., L_0 of the resolution of an m-regular F by the window below -m.

    L_-j is the sum over members E at block distance j from the window top of
    E^h with h = h^0(A^* (x) F), A the dual object of E.

    Raises:
        ValidationError: If m is not aligned on a product
        ComputationError: If F is not m-regular
    """
    F = require_line_bundles(space, F)
    witnesses = block_witnesses(space, F, m)
    if witnesses:
        raise ComputationError.not_regular(m, str(witnesses[0]))
    d = space.dimension
    by_distance: Dict[int, List[Tuple[MultiDegree, int]]] = {j: [] for j in range(d + 1)}
    if space.is_projective_space:
        n = space.dims[0]
        duals = [(j, (-m - j,), obj) for j, obj in pn_test_objects(n, m)]
    else:
        k = aligned_k(space, m)
        duals = [
            (dual.distance, dual.member, dual.obj)
            for block in aligned_window_dual(space, -k)
            for dual in block
        ]
    for distance, member, obj in duals:
        h0 = ext_table(space, obj, F)[0]
        if h0:
            by_distance[distance].append((member, h0))
    terms = tuple(
        BeilinsonTerm(-j, tuple(by_distance[j])) for j in range(d, -1, -1)
    )
    return BeilinsonResolution(space, m, terms)


def verify_beilinson(space: Space, F: SheafLike, m: int) -> CheckResult:
    """The alternating sum of the resolution terms is [F] in K0."""
    resolution = beilinson_terms(space, F, m)
    expected = k0_class(space, F)
    got = resolution.alternating_class()
    return CheckResult(
        "beilinson", got == expected, f"m={m}: {got.coords} vs {expected.coords}"
    )
