"""
Block collections of line bundles on products of projective spaces.

Covers the fundamental collection and its helix, closed-form dual collections
of aligned windows, exceptionality checks, and the Grothendieck group side:
Gram matrices, coordinates in the fundamental basis, mutation classes and dual
classes obtained from the orthogonality relations.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy

from blockreg.errors import ComputationError
from blockreg.factor_cohomology import from_wedge_tangent, line_bundle_expansion
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
    euler_pairing,
    scale_degree,
)
from blockreg.utils import lattice_box

logger = get_logger(__name__)

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class Block:
    """Mutually Ext-orthogonal line bundles, ordered lexicographically by multidegree."""

    members: Tuple[MultiDegree, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MultiDegree]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class BlockCollection:
    space: Space
    blocks: Tuple[Block, ...]
    base_index: int = 0

    @property
    def members(self) -> Tuple[MultiDegree, ...]:
        """All members flattened, block by block."""
        return tuple(a for block in self.blocks for a in block)

    @property
    def block_type(self) -> Tuple[int, ...]:
        return tuple(block.size for block in self.blocks)

    def block_of(self, position: int) -> int:
        """Helix index of the block holding the flattened member at `position`."""
        offset = 0
        for j, block in enumerate(self.blocks):
            offset += block.size
            if position < offset:
                return self.base_index + j
        raise IndexError(position)


@dataclass(frozen=True)
class K0Class:
    """Integer coordinates in the basis given by the flattened fundamental collection."""

    coords: Tuple[int, ...]

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "K0Class") -> "K0Class":
        return K0Class(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "K0Class":
        return K0Class(tuple(-a for a in self.coords))

    def __rmul__(self, c: int) -> "K0Class":
        return K0Class(tuple(c * a for a in self.coords))

    @classmethod
    def zero(cls, space: Space) -> "K0Class":
        return cls((0,) * space.k0_rank)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class GramMatrix:
    """G[u][v] = chi(E_u, E_v) over the flattened members of a collection."""

    rows: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_unitriangular(self) -> bool:
        for u, row in enumerate(self.rows):
            for v, value in enumerate(row):
                if u == v and value != 1:
                    return False
                if v < u and value != 0:
                    return False
        return True

    def as_matrix(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows)


@dataclass(frozen=True)
class DualObject:
    """Closed-form dual of a window member, with its block distance from the window top."""

    member: MultiDegree
    block_index: int
    distance: int
    obj: BoxProduct


@dataclass(frozen=True)
class DualClass:
    member: MultiDegree
    block_index: int
    distance: int
    cls: K0Class


@dataclass(frozen=True)
class StructureReport:
    """Outcome of verify_exceptional_structure; `violation` names the first failing pair."""

    passed: bool
    exceptional: bool
    strongly_exceptional: bool
    violation: Optional[str] = None
    pair: Optional[Tuple[MultiDegree, MultiDegree]] = None
    degree: Optional[int] = None
    dimension: Optional[int] = None


@lru_cache(maxsize=None)
def fundamental_collection(space: Space) -> BlockCollection:
    """
    Blocks E_0, ..., E_d where E_j holds every O(a) with -n_i <= a_i <= 0 and sum(a) = j - d.
    """
    d = space.dimension
    buckets: List[List[MultiDegree]] = [[] for _ in range(d + 1)]
    for a in lattice_box([-n for n in space.dims], space.zero_degree()):
        buckets[sum(a) + d].append(tuple(a))
    blocks = tuple(Block(tuple(bucket)) for bucket in buckets)
    return BlockCollection(space, blocks, 0)


def helix_block(space: Space, i: int) -> Block:
    """E_i for any integer i: E_(j + k(d+1)) = E_j (x) K_X^(-k)."""
    period = space.dimension + 1
    k, j = divmod(i, period)
    shift = scale_degree(space.period, k)
    base = fundamental_collection(space).blocks[j]
    return Block(tuple(add_degrees(a, shift) for a in base))


def window(space: Space, base: int) -> BlockCollection:
    """The d+1 consecutive helix blocks starting at index `base`."""
    blocks = tuple(helix_block(space, base + j) for j in range(space.dimension + 1))
    return BlockCollection(space, blocks, base)


def aligned_window_dual(space: Space, k: int) -> Tuple[Tuple[DualObject, ...], ...]:
    """
    Left dual collection of the window starting at k(d+1), top block first.

    The member O(a + k(n+1)) with a in the fundamental box has dual
    wedge^(-a_1)T(a_1 + k(n_1+1)) # ... # wedge^(-a_r)T(a_r + k(n_r+1)).
    """
    d = space.dimension
    fundamental = fundamental_collection(space)
    shift = scale_degree(space.period, k)
    result = []
    for distance in range(d + 1):
        j = d - distance
        duals = []
        for a in fundamental.blocks[j]:
            factors = tuple(
                from_wedge_tangent(n, -x, x + k * (n + 1)) for n, x in zip(space.dims, a)
            )
            duals.append(
                DualObject(add_degrees(a, shift), k * (d + 1) + j, distance, BoxProduct(factors))
            )
        result.append(tuple(duals))
    return tuple(result)


def _line_ext(space: Space, a: MultiDegree, b: MultiDegree) -> Tuple[int, ...]:
    # Ext^q(O(a), O(b)) = H^q(O(b - a))
    difference = tuple(y - x for x, y in zip(a, b))
    return cohomology(space, SplitSheaf.line_bundle(space, difference)).entries


def verify_exceptional_structure(space: Space, c: BlockCollection) -> StructureReport:
    """
    Check the Ext conditions of a block collection of line bundles.

    Members must be exceptional, blocks mutually orthogonal inside, no Ext in
    any degree from a later block to an earlier one, and (for `passed`) no
    higher Ext forward.
    """
    blocks = [list(block) for block in c.blocks]
    strong = True
    first_forward: Optional[StructureReport] = None

    def failure(message: str, a: MultiDegree, b: MultiDegree, q: int, h: int) -> StructureReport:
        logger.debug(f"Structure check failed: {message}")
        return StructureReport(False, False, False, message, (a, b), q, h)

    for j, block in enumerate(blocks):
        for a in block:
            table = _line_ext(space, a, a)
            if table[0] != 1 or any(table[1:]):
                return failure(f"O{a} is not exceptional", a, a, 0, table[0])
            for b in block:
                if a == b:
                    continue
                for q, h in enumerate(_line_ext(space, a, b)):
                    if h:
                        return failure(
                            f"Ext^{q}(O{a}, O{b}) = {h} inside block {c.base_index + j}",
                            a, b, q, h,
                        )
        for later in blocks[j + 1:]:
            for a in block:
                for b in later:
                    for q, h in enumerate(_line_ext(space, b, a)):
                        if h:
                            return failure(
                                f"Ext^{q}(O{b}, O{a}) = {h} from a later block to an earlier one",
                                b, a, q, h,
                            )
                    forward = _line_ext(space, a, b)
                    for q in range(1, len(forward)):
                        if forward[q] and strong:
                            strong = False
                            first_forward = StructureReport(
                                False, True, False,
                                f"Ext^{q}(O{a}, O{b}) = {forward[q]} forward in higher degree",
                                (a, b), q, forward[q],
                            )
    if first_forward is not None:
        return first_forward
    return StructureReport(True, True, True)


def gram_matrix(space: Space, c: BlockCollection) -> GramMatrix:
    members = c.members
    return GramMatrix(tuple(tuple(euler_pairing(space, a, b) for b in members) for a in members))


@lru_cache(maxsize=None)
def _fundamental_gram(space: Space) -> GramMatrix:
    return gram_matrix(space, fundamental_collection(space))


@lru_cache(maxsize=None)
def _fundamental_inverse(space: Space) -> Tuple[Tuple[int, ...], ...]:
    gram = _fundamental_gram(space)
    if not gram.is_unitriangular():
        raise ComputationError.singular_system(f"the Gram matrix of {space}")
    inverse = gram.as_matrix().inv()
    logger.debug(f"Inverted fundamental Gram matrix of {space}")
    return _integer_rows(inverse, f"the inverse Gram matrix of {space}")


def _integer_rows(matrix: sympy.Matrix, context: str) -> Tuple[Tuple[int, ...], ...]:
    rows = []
    for u in range(matrix.rows):
        row = []
        for v in range(matrix.cols):
            entry = matrix[u, v]
            if not entry.is_integer:
                raise ComputationError.non_integral_solution(context)
            row.append(int(entry))
        rows.append(tuple(row))
    return tuple(rows)


def _solve(matrix: sympy.Matrix, rhs: sympy.Matrix, context: str) -> Tuple[Tuple[int, ...], ...]:
    if matrix.det() == 0:
        raise ComputationError.singular_system(context)
    return _integer_rows(matrix.LUsolve(rhs), context)


def line_bundle_terms(box: BoxProduct) -> List[Tuple[MultiDegree, int]]:
    """
    Class of a box product as a combination of line bundles.

    Each factor is expanded by the Euler sequence and the expansions are
    multiplied out.
    """
    terms: List[Tuple[MultiDegree, int]] = [((), 1)]
    for fs in box.factors:
        expansion = line_bundle_expansion(fs)
        terms = [
            (degree + (k,), coefficient * c)
            for degree, coefficient in terms
            for k, c in sorted(expansion.items())
        ]
    return terms


def k0_class(space: Space, F: SheafLike) -> K0Class:
    """
    Coordinates x of [F] with sum_v x_v chi(E_u, E_v) = chi(E_u, F) for every u.
    """
    F = check_arity(space, F)
    members = fundamental_collection(space).members
    rhs = [0] * len(members)
    for multiplicity, box in F.terms:
        for degree, coefficient in line_bundle_terms(box):
            for u, e in enumerate(members):
                rhs[u] += multiplicity * coefficient * euler_pairing(space, e, degree)
    inverse = _fundamental_inverse(space)
    return K0Class(tuple(sum(g * b for g, b in zip(row, rhs)) for row in inverse))


def line_class(space: Space, a: Sequence[int]) -> K0Class:
    return k0_class(space, BoxProduct.line_bundle(space, a))


def euler_form(space: Space, x: K0Class, y: K0Class) -> int:
    """chi(x, y) = x^T G y with G the fundamental Gram matrix."""
    rows = _fundamental_gram(space).rows
    return sum(
        x.coords[u] * rows[u][v] * y.coords[v]
        for u in range(len(rows))
        if x.coords[u]
        for v in range(len(rows))
    )


def rank(space: Space, x: K0Class) -> int:
    """Every fundamental basis element is a line bundle, so the rank is the coordinate sum."""
    if len(x.coords) != space.k0_rank:
        raise ValueError(f"Class has {len(x.coords)} coordinates, {space} needs {space.k0_rank}")
    return sum(x.coords)


def mutation_class(
    space: Space, side: str, a: K0Class, b: K0Class, chi_ab: Optional[int] = None
) -> K0Class:
    """
    Class of a mutation of the pair (A, B).

    left:  [L_A B] = chi(A, B)[A] - [B]
    right: [R_B A] = chi(A, B)[B] - [A]
    """
    if chi_ab is None:
        chi_ab = euler_form(space, a, b)
    if side == LEFT:
        return chi_ab * a - b
    if side == RIGHT:
        return chi_ab * b - a
    raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")


def block_mutation_class(
    space: Space, side: str, a: K0Class, block: Sequence[Sequence[int]]
) -> K0Class:
    """
    Mutation of `a` through a whole block of line bundles.

    right: sum_F chi(A, F)[F] - [A];  left: sum_E chi(E, A)[E] - [A].
    """
    total = -a
    for degree in block:
        member = line_class(space, degree)
        if side == RIGHT:
            total = total + euler_form(space, a, member) * member
        elif side == LEFT:
            total = total + euler_form(space, member, a) * member
        else:
            raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")
    return total


def _window_classes(space: Space, base: int) -> Tuple[BlockCollection, List[K0Class], List[int]]:
    collection = window(space, base)
    classes = [line_class(space, a) for a in collection.members]
    indices = [collection.block_of(position) for position in range(len(classes))]
    return collection, classes, indices


def _dual_solve(space: Space, base: int, side: str) -> Tuple[DualClass, ...]:
    d = space.dimension
    collection, classes, indices = _window_classes(space, base)
    size = len(classes)
    gram = _fundamental_gram(space).as_matrix()
    members_matrix = sympy.Matrix([list(x.coords) for x in classes]).T
    distances = [base + d - index for index in indices]
    if side == LEFT:
        # chi(h_v, w_u) = (-1)^(distance of v from the top) delta_uv
        system = (gram * members_matrix).T
        signs = [(-1) ** distance for distance in distances]
    else:
        # chi(w_u, g_v) = (-1)^(index of v from the bottom) delta_uv
        system = members_matrix.T * gram
        signs = [(-1) ** (index - base) for index in indices]
    rhs = sympy.diag(*signs)
    solution = _solve(system, rhs, f"{side} dual classes of window {base} on {space}")
    duals = []
    for v, member in enumerate(collection.members):
        coords = tuple(solution[u][v] for u in range(size))
        duals.append(DualClass(member, indices[v], distances[v], K0Class(coords)))
    return _top_first(duals)


def _top_first(duals: List[DualClass]) -> Tuple[DualClass, ...]:
    # stable: members keep their lexicographic order inside each block
    return tuple(sorted(duals, key=lambda dual: dual.distance))


def left_dual_classes_k0(space: Space, window_base: int) -> Tuple[DualClass, ...]:
    """
    Classes h_v with chi(h_v, E_u) = 0 for u != v and chi(h_v, E_v) = (-1)^j.

    j is the block distance of E_v from the top of the window. Returned top
    block first, in the same order as aligned_window_dual.
    """
    return _dual_solve(space, window_base, LEFT)


def right_dual_classes_k0(space: Space, window_base: int) -> Tuple[DualClass, ...]:
    """Classes g_v with chi(E_u, g_v) = 0 for u != v and chi(E_v, g_v) = (-1)^b.

    b is the block index of E_v counted from the bottom of the window.
    """
    return _dual_solve(space, window_base, RIGHT)


def dual_classes_by_mutation(space: Space, window_base: int) -> Tuple[DualClass, ...]:
    """
    Left dual classes built by iterated right block mutations.

    A member j blocks below the top is mutated through the j blocks above it,
    nearest block first.
    """
    collection = window(space, window_base)
    d = space.dimension
    duals = []
    for offset, block in enumerate(collection.blocks):
        distance = d - offset
        for member in block:
            cls = line_class(space, member)
            for above in collection.blocks[offset + 1:]:
                cls = block_mutation_class(space, RIGHT, cls, above.members)
            duals.append(DualClass(member, window_base + offset, distance, cls))
    return _top_first(duals)


def aligned_dual_classes(space: Space, k: int) -> Tuple[DualClass, ...]:
    """K0 classes of the closed-form duals of the aligned window k(d+1)."""
    return tuple(
        DualClass(dual.member, dual.block_index, dual.distance, k0_class(space, dual.obj))
        for block in aligned_window_dual(space, k)
        for dual in block
    )


def is_aligned(space: Space, m: int) -> bool:
    """True when m = k(d+1) - d for some integer k."""
    return (m + space.dimension) % (space.dimension + 1) == 0


def aligned_k(space: Space, m: int) -> int:
    return (m + space.dimension) // (space.dimension + 1)