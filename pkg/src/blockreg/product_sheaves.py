"""
Split sheaves on products of projective spaces.

A sheaf here is a finite direct sum of external tensor products of factor
bundles Omega^p(k). Cohomology is computed factor-wise by the Bott formula and
assembled with the Kunneth formula.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from blockreg.errors import SheafError, ValidationError
from blockreg.factor_cohomology import (
    FactorSheaf,
    bott_table,
    dual_factor,
    euler_char_factor,
    tensor_line,
)
from blockreg.utils import binomial, convolve

MultiDegree = Tuple[int, ...]


@dataclass(frozen=True)
class Space:
    """X = P^(n_1) x ... x P^(n_r)."""

    dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims:
            raise ValidationError("A space needs at least one projective factor")
        for n in self.dims:
            if n < 1:
                raise ValidationError(
                    f"Projective factor dimension must be at least 1, got {n}",
                    suggestions=["Spaces are written as factors 'P<n>' joined by 'x'"],
                )

    @property
    def dimension(self) -> int:
        """Total dimension d = n_1 + ... + n_r."""
        return sum(self.dims)

    @property
    def factor_count(self) -> int:
        return len(self.dims)

    @property
    def canonical_degree(self) -> MultiDegree:
        """Multidegree of K_X, (-n_1-1, ..., -n_r-1)."""
        return tuple(-n - 1 for n in self.dims)

    @property
    def period(self) -> MultiDegree:
        """Multidegree of the anticanonical bundle, (n_1+1, ..., n_r+1)."""
        return tuple(n + 1 for n in self.dims)

    @property
    def k0_rank(self) -> int:
        return reduce(lambda acc, n: acc * (n + 1), self.dims, 1)

    @property
    def is_projective_space(self) -> bool:
        return len(self.dims) == 1

    def zero_degree(self) -> MultiDegree:
        return (0,) * len(self.dims)

    def check_degree(self, a: Sequence[int], where: str = "multidegree") -> MultiDegree:
        if len(a) != len(self.dims):
            raise SheafError.arity_mismatch(len(self.dims), len(a), where)
        return tuple(a)

    def __str__(self) -> str:
        return "x".join(f"P{n}" for n in self.dims)


def add_degrees(a: Sequence[int], b: Sequence[int]) -> MultiDegree:
    return tuple(x + y for x, y in zip(a, b))


def scale_degree(a: Sequence[int], c: int) -> MultiDegree:
    return tuple(c * x for x in a)


@dataclass(frozen=True, order=True)
class BoxProduct:
    """External tensor product of one factor bundle per projective factor."""

    factors: Tuple[FactorSheaf, ...]

    @classmethod
    def line_bundle(cls, space: Space, a: Sequence[int]) -> "BoxProduct":
        a = space.check_degree(a, "line bundle")
        return cls(tuple(FactorSheaf.line(n, k) for n, k in zip(space.dims, a)))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(f.n for f in self.factors)

    @property
    def is_line_bundle(self) -> bool:
        return all(f.is_line_bundle for f in self.factors)

    @property
    def degree(self) -> MultiDegree:
        """Multidegree of a line-bundle box product."""
        if not self.is_line_bundle:
            raise SheafError.not_line_bundle_sum(str(self))
        return tuple(f.k for f in self.factors)

    @property
    def rank(self) -> int:
        return reduce(lambda acc, f: acc * f.rank, self.factors, 1)

    def __str__(self) -> str:
        if self.is_line_bundle:
            return "O(" + ",".join(str(f.k) for f in self.factors) + ")"
        return "#".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class SplitSheaf:
    """
    Finite direct sum of box products with positive multiplicities.

    Terms are kept merged and sorted, so equal sheaves compare equal. The empty
    sum is the zero sheaf.
    """

    terms: Tuple[Tuple[int, BoxProduct], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, BoxProduct]]) -> "SplitSheaf":
        merged: Dict[BoxProduct, int] = {}
        for multiplicity, box in terms:
            if multiplicity < 1:
                raise SheafError.non_positive_multiplicity(multiplicity)
            merged[box] = merged.get(box, 0) + multiplicity
        if len({box.dims for box in merged}) > 1:
            raise SheafError(
                "Summands live on different spaces",
                suggestions=["Every summand needs the same factor dimensions"],
            )
        return cls(tuple((merged[box], box) for box in sorted(merged)))

    @classmethod
    def zero(cls) -> "SplitSheaf":
        return cls(())

    @classmethod
    def of(cls, box: BoxProduct, multiplicity: int = 1) -> "SplitSheaf":
        return cls.from_terms([(multiplicity, box)])

    @classmethod
    def line_bundle(cls, space: Space, a: Sequence[int], multiplicity: int = 1) -> "SplitSheaf":
        return cls.of(BoxProduct.line_bundle(space, a), multiplicity)

    @classmethod
    def line_bundles(cls, space: Space, degrees: Iterable[Sequence[int]]) -> "SplitSheaf":
        return cls.from_terms((1, BoxProduct.line_bundle(space, a)) for a in degrees)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_line_bundle_sum(self) -> bool:
        return all(box.is_line_bundle for _, box in self.terms)

    @property
    def rank(self) -> int:
        return sum(multiplicity * box.rank for multiplicity, box in self.terms)

    def degrees(self) -> List[Tuple[MultiDegree, int]]:
        """(multidegree, multiplicity) pairs of a line-bundle sum."""
        if not self.is_line_bundle_sum:
            raise SheafError.not_line_bundle_sum(str(self))
        return [(box.degree, multiplicity) for multiplicity, box in self.terms]

    def __iter__(self) -> Iterator[Tuple[int, BoxProduct]]:
        return iter(self.terms)

    def __add__(self, other: "SplitSheaf") -> "SplitSheaf":
        return SplitSheaf.from_terms(self.terms + other.terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for multiplicity, box in self.terms:
            parts.append(str(box) if multiplicity == 1 else f"{multiplicity}*{box}")
        return " + ".join(parts)


SheafLike = Union[SplitSheaf, BoxProduct]


def as_split(F: SheafLike) -> SplitSheaf:
    if isinstance(F, BoxProduct):
        return SplitSheaf.of(F)
    return F


def check_arity(space: Space, F: SheafLike) -> SplitSheaf:
    """Return F as a split sheaf after checking every term lives on `space`."""
    F = as_split(F)
    for _, box in F.terms:
        if box.dims != space.dims:
            if len(box.dims) != len(space.dims):
                raise SheafError.arity_mismatch(len(space.dims), len(box.dims), str(box))
            raise SheafError(
                f"Term {box} lives on {'x'.join(f'P{n}' for n in box.dims)}, not on {space}",
                suggestions=["Check the order of the projective factors"],
            )
    return F


def require_line_bundles(space: Space, F: SheafLike) -> SplitSheaf:
    F = check_arity(space, F)
    if not F.is_line_bundle_sum:
        raise SheafError.not_line_bundle_sum(str(F))
    return F


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions h^0, ..., h^d of a sheaf on a d-dimensional space."""

    entries: Tuple[int, ...]

    @classmethod
    def zero(cls, dimension: int) -> "CohomologyTable":
        return cls((0,) * (dimension + 1))

    @property
    def dimension(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, q: int) -> int:
        if 0 <= q < len(self.entries):
            return self.entries[q]
        return 0

    def __add__(self, other: "CohomologyTable") -> "CohomologyTable":
        if len(self.entries) != len(other.entries):
            raise ValueError("Cannot add cohomology tables of different dimensions")
        return CohomologyTable(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> "CohomologyTable":
        return CohomologyTable(tuple(c * h for h in self.entries))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** q * h for q, h in enumerate(self.entries))

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def higher_vanish(self) -> bool:
        """True when h^q = 0 for every q > 0."""
        return not any(self.entries[1:])

    def nonzero(self) -> Dict[int, int]:
        return {q: h for q, h in enumerate(self.entries) if h}

    def __str__(self) -> str:
        return " ".join(f"h^{q}={h}" for q, h in enumerate(self.entries))


def box_cohomology(box: BoxProduct) -> CohomologyTable:
    """Kunneth: the table of a box product is the convolution of its factor tables."""
    entries: Tuple[int, ...] = (1,)
    for fs in box.factors:
        entries = convolve(entries, bott_table(fs.n, fs.p, fs.k))
    return CohomologyTable(entries)


def cohomology(space: Space, F: SheafLike) -> CohomologyTable:
    F = check_arity(space, F)
    table = CohomologyTable.zero(space.dimension)
    for multiplicity, box in F.terms:
        table = table + box_cohomology(box).scale(multiplicity)
    return table


def twist_box(box: BoxProduct, t: Sequence[int]) -> BoxProduct:
    if len(t) != len(box.factors):
        raise SheafError.arity_mismatch(len(box.factors), len(t), "twist")
    return BoxProduct(tuple(tensor_line(fs, c) for fs, c in zip(box.factors, t)))


def twist(F: SheafLike, t: Sequence[int]) -> SplitSheaf:
    """F(t_1, ..., t_r)."""
    F = as_split(F)
    return SplitSheaf.from_terms((multiplicity, twist_box(box, t)) for multiplicity, box in F.terms)


def dual_box(b: BoxProduct) -> BoxProduct:
    return BoxProduct(tuple(dual_factor(fs) for fs in b.factors))


def ext_table(space: Space, A: BoxProduct, F: SheafLike) -> CohomologyTable:
    """
    Ext^q(A, F) = H^q(A^* (x) F) for F a sum of line bundles.

    Raises:
        SheafError: If F has a summand that is not a line bundle
    """
    F = require_line_bundles(space, F)
    check_arity(space, A)
    A_dual = dual_box(A)
    table = CohomologyTable.zero(space.dimension)
    for multiplicity, box in F.terms:
        table = table + box_cohomology(twist_box(A_dual, box.degree)).scale(multiplicity)
    return table


def euler_pairing(space: Space, a: Sequence[int], b: Sequence[int]) -> int:
    """chi(O(a), O(b)) = prod_i C(b_i - a_i + n_i, n_i)."""
    a = space.check_degree(a)
    b = space.check_degree(b)
    value = 1
    for n, x, y in zip(space.dims, a, b):
        value *= binomial(y - x + n, n)
    return value


def box_euler_characteristic(box: BoxProduct) -> int:
    """chi of a box product as the product of factor Euler characteristics."""
    return reduce(lambda acc, fs: acc * euler_char_factor(fs), box.factors, 1)
