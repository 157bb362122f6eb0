"""Independence oracles, axiom verification, rank, and the lifted-pair check.

Three spec kinds are supported:

* ``uniform`` -- independent iff the subset has at most ``rank`` elements;
* ``partition`` -- disjoint blocks covering the ground set, with a per-block
  capacity on how many elements a subset may take;
* ``explicit`` -- the downward closure of a list of maximal sets.  Hereditary
  by construction; the augmentation property is NOT assumed and must be
  verified with :func:`check_matroid_axioms`.

The lifted-pair check materializes the ground set Y of all k-element subsets
and the family of pairwise-disjoint collections whose union is independent,
then runs the augmentation check over that pair; this is how the package
demonstrates that recasting batches as super-elements does not produce a
matroid in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from . import params
from .errors import (
    CandidateCapExceeded,
    ExhaustiveLimitExceeded,
    GroundSetMismatch,
    RankUndefined,
)
from .subsets import ElementSubset, mask_of

KINDS = ("uniform", "partition", "explicit")


@dataclass(frozen=True)
class MatroidSpec:
    kind: str
    ground_size: int
    rank: Optional[int] = None
    blocks: Optional[tuple[tuple[int, ...], ...]] = None
    capacities: Optional[tuple[int, ...]] = None
    maximal_sets: Optional[tuple[tuple[int, ...], ...]] = None

    @classmethod
    def uniform(cls, ground_size: int, rank: int) -> "MatroidSpec":
        _check_ground(ground_size)
        if rank < 0:
            raise ValueError(f"uniform rank must be nonnegative, got {rank}")
        return cls(kind="uniform", ground_size=ground_size, rank=int(rank))

    @classmethod
    def partition(
        cls, blocks: Sequence[Sequence[int]], capacities: Sequence[int]
    ) -> "MatroidSpec":
        if len(blocks) != len(capacities):
            raise ValueError(
                f"{len(blocks)} blocks but {len(capacities)} capacities"
            )
        seen: set[int] = set()
        total = 0
        packed = []
        for b, block in enumerate(blocks):
            elems = tuple(sorted(block))
            if not elems:
                raise ValueError(f"block {b} is empty")
            if len(set(elems)) != len(elems) or seen & set(elems):
                raise ValueError("blocks must be disjoint")
            seen.update(elems)
            total += len(elems)
            cap = capacities[b]
            if not 0 <= cap <= len(elems):
                raise ValueError(
                    f"capacity {cap} of block {b} outside [0, {len(elems)}]"
                )
            packed.append(elems)
        if seen != set(range(total)):
            raise ValueError("blocks must cover the ground set 0..N-1 exactly")
        _check_ground(total)
        return cls(
            kind="partition",
            ground_size=total,
            blocks=tuple(packed),
            capacities=tuple(int(c) for c in capacities),
        )

    @classmethod
    def explicit(
        cls, ground_size: int, maximal_sets: Sequence[Sequence[int]]
    ) -> "MatroidSpec":
        """Set system given by maximal sets; membership is downward closure."""
        _check_ground(ground_size)
        packed = []
        for s in maximal_sets:
            elems = tuple(sorted(set(s)))
            for i in elems:
                if not 0 <= i < ground_size:
                    raise ValueError(f"element {i} out of range for ground size {ground_size}")
            packed.append(elems)
        return cls(kind="explicit", ground_size=ground_size, maximal_sets=tuple(packed))


def _check_ground(n: int) -> None:
    if not 0 <= n <= params.MAX_GROUND_SIZE:
        raise ValueError(f"ground size must be in [0, {params.MAX_GROUND_SIZE}], got {n}")


def _mask_independent(spec: MatroidSpec, mask: int) -> bool:
    if spec.kind == "uniform":
        return mask.bit_count() <= spec.rank
    if spec.kind == "partition":
        for block, cap in zip(spec.blocks, spec.capacities):
            if (mask & mask_of(block)).bit_count() > cap:
                return False
        return True
    if not spec.maximal_sets:
        return mask == 0
    for s in spec.maximal_sets:
        if mask & ~mask_of(s) == 0:
            return True
    return False


def is_independent(spec: MatroidSpec, subset: ElementSubset) -> bool:
    if subset.ground_size != spec.ground_size:
        raise GroundSetMismatch(
            f"subset over {subset.ground_size} elements used with a "
            f"{spec.ground_size}-element matroid"
        )
    return _mask_independent(spec, subset.mask)


@lru_cache(maxsize=None)
def matroid_rank(spec: MatroidSpec) -> int:
    """Cardinality of a maximal independent set, by greedy augmentation.

    Greedy augmentation is exact precisely when the matroid axioms hold, so
    explicit specs are verified first and a failing one raises
    :class:`RankUndefined`.
    """
    if spec.kind == "explicit":
        report = check_matroid_axioms(spec)
        if not (report.hereditary_ok and report.augmentation_ok):
            raise RankUndefined(
                "explicit spec fails the matroid axioms; rank is ill-defined"
            )
    acc = 0
    for j in range(spec.ground_size):
        cand = acc | (1 << j)
        if _mask_independent(spec, cand):
            acc = cand
    return acc.bit_count()


@dataclass(frozen=True)
class AxiomReport:
    """Result of exhaustive matroid axiom verification.

    ``witness`` is present iff augmentation fails: an independent pair
    (A, B) with |B| = |A| + 1 and no j in B \\ A keeping A u {j} independent.
    ``rank`` is the exact maximum independent-set cardinality and
    ``bases_equicardinal`` says whether all maximal independent sets share it.
    """

    hereditary_ok: bool
    augmentation_ok: bool
    witness: Optional[tuple[ElementSubset, ElementSubset]]
    rank: int
    bases_equicardinal: bool

    @property
    def is_matroid(self) -> bool:
        return self.hereditary_ok and self.augmentation_ok


def check_matroid_axioms(
    spec: MatroidSpec, limit: int = params.AXIOM_CHECK_LIMIT
) -> AxiomReport:
    """Exhaustively verify the hereditary and augmentation properties.

    Augmentation only needs checking across adjacent cardinalities: for a
    hereditary family, a violating pair at any cardinality gap yields a
    violating pair at gap one (restrict B to any independent subset of size
    |A| + 1), and every spec kind here is hereditary by construction.
    Pairs are scanned in lexicographic order and the first violation is the
    witness.
    """
    n = spec.ground_size
    if n > limit:
        raise ExhaustiveLimitExceeded(
            f"axiom check over {n} elements exceeds the limit {limit}"
        )
    size = 1 << n
    indep = [_mask_independent(spec, m) for m in range(size)]
    if not indep[0]:
        raise ValueError("the empty set must be independent")

    hereditary_ok = True
    for m in range(size):
        if not indep[m]:
            continue
        mm = m
        while mm:
            low = mm & -mm
            if not indep[m ^ low]:
                hereditary_ok = False
                break
            mm ^= low
        if not hereditary_ok:
            break

    # Independent masks grouped by cardinality, lex order within each group.
    cards: list[list[int]] = [[] for _ in range(n + 1)]
    for c in range(n + 1):
        for combo in combinations(range(n), c):
            m = mask_of(combo)
            if indep[m]:
                cards[c].append(m)

    augmentation_ok = True
    witness = None
    for c in range(n):
        if not cards[c + 1]:
            break
        for a in cards[c]:
            for b in cards[c + 1]:
                d = b & ~a
                found = False
                while d:
                    low = d & -d
                    if indep[a | low]:
                        found = True
                        break
                    d ^= low
                if not found:
                    augmentation_ok = False
                    witness = (
                        ElementSubset.from_mask(a, n),
                        ElementSubset.from_mask(b, n),
                    )
                    break
            if witness:
                break
        if witness:
            break

    rank = max((c for c in range(n + 1) if cards[c]), default=0)
    base_cards = set()
    for c in range(n + 1):
        for m in cards[c]:
            maximal = True
            for j in range(n):
                bit = 1 << j
                if not m & bit and indep[m | bit]:
                    maximal = False
                    break
            if maximal:
                base_cards.add(c)
    return AxiomReport(
        hereditary_ok=hereditary_ok,
        augmentation_ok=augmentation_ok,
        witness=witness,
        rank=rank,
        bases_equicardinal=len(base_cards) <= 1,
    )


@dataclass(frozen=True)
class LiftedAxiomReport:
    """Augmentation report for the lifted pair (Y, J).

    ``super_elements`` lists Y, the k-subsets of the ground set in
    lexicographic order; witnesses are tuples of Y indices.  The lifted
    family is hereditary by construction, so only augmentation can fail.
    """

    k: int
    super_elements: tuple[ElementSubset, ...]
    hereditary_ok: bool
    augmentation_ok: bool
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]

    def witness_families(
        self,
    ) -> Optional[tuple[tuple[ElementSubset, ...], tuple[ElementSubset, ...]]]:
        """The witness pair decoded into families of k-subsets."""
        if self.witness is None:
            return None
        a, b = self.witness
        return (
            tuple(self.super_elements[i] for i in a),
            tuple(self.super_elements[i] for i in b),
        )


def verify_lifted_witness(spec: MatroidSpec, report: "LiftedAxiomReport") -> bool:
    """Re-check a lifted augmentation witness from first principles.

    A genuine witness is a pair of families (A, B), both in the lifted
    family J (pairwise-disjoint k-subsets with independent union), with
    |B| > |A| and no member of B \\ A whose addition keeps A in J.
    """
    if report.witness is None:
        return False
    fam_a, fam_b = report.witness
    masks = [s.mask for s in report.super_elements]

    def family_union(fam) -> Optional[int]:
        union = 0
        for y in fam:
            m = masks[y]
            if union & m:
                return None
            union |= m
        return union if _mask_independent(spec, union) else None

    union_a = family_union(fam_a)
    if union_a is None or family_union(fam_b) is None:
        return False
    if len(fam_b) <= len(fam_a):
        return False
    for y in set(fam_b) - set(fam_a):
        m = masks[y]
        if not union_a & m and _mask_independent(spec, union_a | m):
            return False
    return True


def lifted_pair_augmentation_check(
    spec: MatroidSpec,
    k: int,
    super_cap: int = params.LIFTED_SUPER_ELEMENT_CAP,
    pair_cap: int = params.CANDIDATE_CAP,
) -> LiftedAxiomReport:
    """Check whether lifting k-element batches to super-elements is a matroid.

    Builds Y = all k-subsets of X and the family J of pairwise-disjoint
    collections of Y members whose union is independent, then scans adjacent
    cardinalities of J for an augmentation violation, stopping at the first.
    Family lists materialize lazily, one cardinality at a time.

    Requires k to divide the matroid rank.  Guards: |Y| is capped at
    ``super_cap`` and the number of scanned families/pairs at ``pair_cap``.
    """
    n = spec.ground_size
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    rank = matroid_rank(spec)
    if rank == 0 or rank % k != 0:
        raise ValueError(f"k = {k} must divide the matroid rank {rank}")
    n_super = comb(n, k)
    if n_super > super_cap:
        raise CandidateCapExceeded(
            f"|Y| = C({n},{k}) = {n_super} exceeds the cap {super_cap}"
        )
    super_masks = [mask_of(c) for c in combinations(range(n), k)]
    max_family = rank // k
    budget = pair_cap

    def families_of_size(size: int) -> list[tuple[tuple[int, ...], int]]:
        """All (family, union_mask) with ``size`` disjoint members, lex order."""
        nonlocal budget
        out: list[tuple[tuple[int, ...], int]] = []
        stack: list[int] = []

        def extend(start: int, union: int) -> None:
            nonlocal budget
            if len(stack) == size:
                budget -= 1
                if budget < 0:
                    raise CandidateCapExceeded(
                        f"lifted family enumeration exceeds the cap {pair_cap}"
                    )
                out.append((tuple(stack), union))
                return
            for y in range(start, n_super):
                m = super_masks[y]
                if union & m:
                    continue
                if not _mask_independent(spec, union | m):
                    continue
                stack.append(y)
                extend(y + 1, union | m)
                stack.pop()

        extend(0, 0)
        return out

    cache: dict[int, list[tuple[tuple[int, ...], int]]] = {}

    def card(size: int) -> list[tuple[tuple[int, ...], int]]:
        if size not in cache:
            cache[size] = families_of_size(size)
        return cache[size]

    augmentation_ok = True
    witness = None
    for c in range(max_family):
        bigger = card(c + 1)
        if not bigger:
            break
        for fam_a, union_a in card(c):
            a_set = set(fam_a)
            for fam_b, _ in bigger:
                budget -= 1
                if budget < 0:
                    raise CandidateCapExceeded(
                        f"lifted augmentation scan exceeds the cap {pair_cap}"
                    )
                found = False
                for y in fam_b:
                    if y in a_set:
                        continue
                    m = super_masks[y]
                    if union_a & m:
                        continue
                    if _mask_independent(spec, union_a | m):
                        found = True
                        break
                if not found:
                    augmentation_ok = False
                    witness = (fam_a, fam_b)
                    break
            if witness:
                break
        if witness:
            break

    return LiftedAxiomReport(
        k=k,
        super_elements=tuple(
            ElementSubset.from_mask(m, n) for m in super_masks
        ),
        hereditary_ok=True,
        augmentation_ok=augmentation_ok,
        witness=witness,
    )
