"""
Permutation groups acting on hyperplane indices.

Elements are 0-based array forms (tuples of images). One-line notation with
1-based images is only used at the IO boundary (``from_one_line`` /
``to_one_line``). Composition follows sympy: ``compose(p, q)`` applies p first,
then q.

The base and strong generating set come from
``sympy.combinatorics.PermutationGroup.schreier_sims_incremental`` with the
base n-1, ..., 0, so that the first base points are the suffix sets
{k, ..., n-1} used by the symmetry engine. Transversals, sifting and uniform
sampling are computed on top of that chain. Setwise stabilizers use sympy's
backtrack ``subgroup_search``.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from src.settings import ENUMERATION_LIMIT, MINIMAL_IMAGE_BUDGET


LOGGER = logging.getLogger(__name__)

Perm = Tuple[int, ...]
IndexSet = Tuple[int, ...]


class GroupError(ValueError):
    """Raised for malformed generators and degree mismatches."""


class OrbitBudgetExceeded(RuntimeError):
    """Raised when an orbit is too large to enumerate for an exact minimal image."""


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(first: Perm, second: Perm) -> Perm:
    """The permutation applying ``first`` and then ``second``."""
    return tuple(second[image] for image in first)


def inverse(perm: Perm) -> Perm:
    result = [0] * len(perm)
    for point, image in enumerate(perm):
        result[image] = point
    return tuple(result)


def apply_to_set(perm: Perm, indices: Iterable[int]) -> IndexSet:
    return tuple(sorted(perm[index] for index in indices))


def validate_perm(images: Sequence[int], degree: int) -> Perm:
    perm = tuple(int(image) for image in images)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise GroupError(f"{list(images)} is not a permutation of 0..{degree - 1}")
    return perm


def from_one_line(images: Sequence[int], degree: Optional[int] = None) -> Perm:
    """Convert 1-based one-line notation such as [2, 3, 1, 4]."""
    degree = len(images) if degree is None else degree
    if len(images) != degree:
        raise GroupError(f"Generator {list(images)} has degree {len(images)}, expected {degree}")
    try:
        shifted = [int(image) - 1 for image in images]
    except (TypeError, ValueError) as exc:
        raise GroupError(f"Generator {images!r} must contain integers") from exc
    if sorted(shifted) != list(range(degree)):
        raise GroupError(f"{list(images)} is not a permutation of 1..{degree}")
    return tuple(shifted)


def to_one_line(perm: Perm) -> List[int]:
    return [image + 1 for image in perm]


@dataclass(frozen=True)
class StabilizerChain:
    """Base points with one transversal per base point."""

    degree: int
    base: Tuple[int, ...]
    transversals: Tuple[Dict[int, Perm], ...]

    @property
    def order(self) -> int:
        order = 1
        for transversal in self.transversals:
            order *= len(transversal)
        return order

    def sift(self, perm: Perm) -> Tuple[Perm, int]:
        """Strip ``perm`` through the chain; returns the residue and the depth reached."""
        for depth, (point, transversal) in enumerate(zip(self.base, self.transversals)):
            image = perm[point]
            coset = transversal.get(image)
            if coset is None:
                return perm, depth
            perm = compose(perm, inverse(coset))
        return perm, len(self.base)

    def contains(self, perm: Perm) -> bool:
        residue, depth = self.sift(perm)
        return depth == len(self.base) and residue == identity(self.degree)

    def random_element(self, rng: np.random.Generator) -> Perm:
        element = identity(self.degree)
        for transversal in reversed(self.transversals):
            points = sorted(transversal)
            choice = transversal[points[int(rng.integers(len(points)))]]
            element = compose(element, choice)
        return element

    def elements(self) -> Iterator[Perm]:
        levels = [[transversal[p] for p in sorted(transversal)] for transversal in self.transversals]
        for choice in itertools.product(*levels):
            element = identity(self.degree)
            for coset in reversed(choice):
                element = compose(element, coset)
            yield element


def _orbit_transversal(point: int, generators: Sequence[Perm], degree: int) -> Dict[int, Perm]:
    transversal = {point: identity(degree)}
    queue = deque([point])
    while queue:
        current = queue.popleft()
        for generator in generators:
            image = generator[current]
            if image not in transversal:
                transversal[image] = compose(transversal[current], generator)
                queue.append(image)
    return transversal


class PermGroup:
    """A permutation group on {0, ..., degree-1} given by generators."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()) -> None:
        if degree < 0:
            raise GroupError(f"Negative degree {degree}")
        self.degree = degree
        gens = []
        for generator in generators:
            perm = validate_perm(generator, degree)
            if perm != identity(degree) and perm not in gens:
                gens.append(perm)
        self.generators: Tuple[Perm, ...] = tuple(gens)

    @classmethod
    def from_one_line(cls, generators: Iterable[Sequence[int]], degree: int) -> "PermGroup":
        return cls(degree, [from_one_line(images, degree) for images in generators])

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree)

    @classmethod
    def symmetric(cls, points: Sequence[int], degree: int) -> "PermGroup":
        """Symmetric group on ``points``, fixing the other points of the degree."""
        points = list(points)
        if len(points) < 2:
            return cls(degree)
        cycle = list(range(degree))
        swap = list(range(degree))
        for position, point in enumerate(points):
            cycle[point] = points[(position + 1) % len(points)]
        swap[points[0]], swap[points[1]] = points[1], points[0]
        return cls(degree, [cycle, swap])

    def one_line_generators(self) -> List[List[int]]:
        return [to_one_line(generator) for generator in self.generators]

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={self.one_line_generators()})"

    def _sympy(self) -> PermutationGroup:
        gens = self.generators or (identity(self.degree),)
        return PermutationGroup([Permutation(list(g)) for g in gens])

    @cached_property
    def sympy_group(self) -> PermutationGroup:
        return self._sympy()

    def _bsgs(self, base: Sequence[int]) -> Tuple[List[int], list]:
        return self.sympy_group.schreier_sims_incremental(base=list(base))

    @cached_property
    def chain(self) -> StabilizerChain:
        """Stabilizer chain for the base n-1, n-2, ..., 0."""
        base_points = list(range(self.degree - 1, -1, -1))
        if self.is_trivial or self.degree == 0:
            transversals = tuple({point: identity(self.degree)} for point in base_points)
            return StabilizerChain(self.degree, tuple(base_points), transversals)
        base, strong = self._bsgs(base_points)
        strong_forms = [tuple(g.array_form) for g in strong]
        transversals = []
        for depth, point in enumerate(base):
            fixed = base[:depth]
            level_gens = [g for g in strong_forms if all(g[b] == b for b in fixed)]
            transversals.append(_orbit_transversal(point, level_gens, self.degree))
        chain = StabilizerChain(self.degree, tuple(base), tuple(transversals))
        LOGGER.debug("Built stabilizer chain of order %d on %d points", chain.order, self.degree)
        return chain

    @property
    def stabilizer_chain(self) -> StabilizerChain:
        return self.chain

    def order(self) -> int:
        return self.chain.order

    def contains(self, perm: Sequence[int]) -> bool:
        return self.chain.contains(validate_perm(perm, self.degree))

    def elements(self, limit: int = ENUMERATION_LIMIT) -> Iterator[Perm]:
        if self.order() > limit:
            raise GroupError(f"Refusing to enumerate a group of order {self.order()} (limit {limit})")
        return self.chain.elements()

    def orbit_of_set(self, indices: Iterable[int]) -> Set[IndexSet]:
        return set(_set_orbit(tuple(sorted(indices)), self.generators))

    def point_orbits(self) -> List[FrozenSet[int]]:
        remaining = set(range(self.degree))
        orbits = []
        while remaining:
            point = min(remaining)
            orbit = frozenset(_orbit_transversal(point, self.generators, self.degree))
            orbits.append(orbit)
            remaining -= orbit
        return orbits

    def random_elements(self, count: int, seed: int | Sequence[int]) -> List[Perm]:
        """``count`` uniform elements, one random coset representative per chain level."""
        rng = np.random.default_rng(seed)
        chain = self.chain
        return [chain.random_element(rng) for _ in range(count)]

    def point_stabilizer(self, point: int) -> "PermGroup":
        if self.is_trivial:
            return self
        stabilizer = self.sympy_group.stabilizer(point)
        return PermGroup(self.degree, [tuple(g.array_form) for g in stabilizer.generators])

    def setwise_stabilizer(
        self,
        subset: Iterable[int],
        method: str = "backtrack",
        init_subgroup: Optional["PermGroup"] = None,
    ) -> "PermGroup":
        """
        The subgroup {g : g(S) = S}, given by generators.

        ``backtrack`` searches the coset tree of the chain whose base lists the
        points of S first, pruning every partial base image that sends a point
        of S outside S (or vice versa). ``enumerate`` filters all elements and
        is only allowed for small orders.
        """
        subset = frozenset(subset)
        if self.is_trivial or not subset or len(subset) == self.degree:
            return self
        if method == "enumerate":
            return self._stabilizer_by_enumeration(subset)
        if method != "backtrack":
            raise GroupError(f"Unknown stabilizer method {method!r}")

        base = sorted(subset, reverse=True) + sorted(
            (p for p in range(self.degree) if p not in subset), reverse=True
        )
        base, strong = self._bsgs(base)

        def prop(element: Permutation) -> bool:
            images = element.array_form
            return all(images[point] in subset for point in subset)

        tests = []
        for level, point in enumerate(base):
            inside = point in subset

            def test(computed_words, level=level, point=point, inside=inside) -> bool:
                return (computed_words[level].array_form[point] in subset) == inside

            tests.append(test)

        init = init_subgroup.sympy_group if init_subgroup and not init_subgroup.is_trivial else None
        found = self.sympy_group.subgroup_search(
            prop, base=base, strong_gens=strong, tests=tests, init_subgroup=init
        )
        return PermGroup(self.degree, [tuple(g.array_form) for g in found.generators])

    def _stabilizer_by_enumeration(self, subset: FrozenSet[int]) -> "PermGroup":
        result = PermGroup(self.degree)
        for element in self.elements():
            if all(element[point] in subset for point in subset) and not result.contains(element):
                result = PermGroup(self.degree, result.generators + (element,))
        return result


def _set_orbit(indices: IndexSet, generators: Sequence[Perm], budget: Optional[int] = None):
    orbit = {indices}
    queue = deque([indices])
    while queue:
        current = queue.popleft()
        for generator in generators:
            image = apply_to_set(generator, current)
            if image not in orbit:
                orbit.add(image)
                if budget is not None and len(orbit) > budget:
                    raise OrbitBudgetExceeded(
                        f"Orbit of {list(indices)} exceeds {budget} sets; "
                        "use pseudo-minimal images instead"
                    )
                queue.append(image)
    return orbit


def orbit_of_set(group: PermGroup, indices: Iterable[int]) -> Set[IndexSet]:
    return group.orbit_of_set(indices)


def setwise_stabilizer(group: PermGroup, subset: Iterable[int], **kwargs) -> PermGroup:
    return group.setwise_stabilizer(subset, **kwargs)


def random_elements(group: PermGroup, count: int, seed: int | Sequence[int]) -> List[Perm]:
    return group.random_elements(count, seed)


def group_order(group: PermGroup) -> int:
    return group.order()


def closure_order(group: PermGroup, limit: int = ENUMERATION_LIMIT) -> int:
    """Order by closing the generators under composition; only for tiny groups."""
    start = identity(group.degree)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for generator in group.generators:
            product = compose(current, generator)
            if product not in seen:
                seen.add(product)
                if len(seen) > limit:
                    raise GroupError(f"Closure exceeds {limit} elements")
                queue.append(product)
    return len(seen)


def pseudo_minimal_image(indices: Iterable[int], elements: Sequence[Perm]) -> IndexSet:
    """
    Greedy lexicographic descent: move to g(I) whenever it is smaller than I and
    start the sweep again; stop after a sweep without improvement.
    """
    current = tuple(sorted(indices))
    improved = True
    while improved:
        improved = False
        for element in elements:
            image = tuple(sorted(element[index] for index in current))
            if image < current:
                current = image
                improved = True
                break
    return current


def minimal_image_from_generators(
    indices: Iterable[int],
    generators: Sequence[Perm],
    budget: int = MINIMAL_IMAGE_BUDGET,
) -> IndexSet:
    return min(_set_orbit(tuple(sorted(indices)), generators, budget))


def minimal_image_exact(
    group: PermGroup, indices: Iterable[int], budget: int = MINIMAL_IMAGE_BUDGET
) -> IndexSet:
    """Lexicographically least set in the orbit of ``indices``."""
    return minimal_image_from_generators(indices, group.generators, budget)


__all__ = [
    "GroupError",
    "OrbitBudgetExceeded",
    "Perm",
    "PermGroup",
    "StabilizerChain",
    "apply_to_set",
    "closure_order",
    "compose",
    "from_one_line",
    "group_order",
    "identity",
    "inverse",
    "minimal_image_exact",
    "minimal_image_from_generators",
    "orbit_of_set",
    "pseudo_minimal_image",
    "random_elements",
    "setwise_stabilizer",
    "to_one_line",
]
