"""
Arrangement families together with symmetry groups acting on them.

Separability arrangements: for a finite point set V in K^d the hyperplanes
H_v = {a in K^(d+1) : a_0 + a_1 v_1 + ... + a_d v_d = 0}, one per point. An
affine bijection of K^d preserving V induces a linear automorphism of the
separability arrangement, so every such map contributes a group generator.

Hyperplanes are listed in lexicographic order of their defining data.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy
from networkx.algorithms.isomorphism import GraphMatcher

from src.arrangement import Arrangement, ArrangementError
from src.automorphisms import validate_subgroup_of_aut
from src.exact import RATIONALS, Field, QuadraticNumber, Scalar, field_of, quadratic_field
from src.permgroup import PermGroup


LOGGER = logging.getLogger(__name__)

Point = Tuple[Scalar, ...]
PointMap = Callable[[Point], Sequence[Scalar]]
Family = Tuple[Arrangement, PermGroup]

PLATONIC = ("icosahedron", "dodecahedron", "cell24")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ArrangementError(message)


def _coordinate_swap(i: int, j: int) -> PointMap:
    def swap(point: Point) -> Point:
        images = list(point)
        images[i], images[j] = images[j], images[i]
        return tuple(images)

    return swap


def _affine_flip(coordinates: Sequence[int], centre: Scalar) -> PointMap:
    """v_i -> centre - v_i on the given coordinates."""

    def flip(point: Point) -> Point:
        return tuple(centre - v if i in coordinates else v for i, v in enumerate(point))

    return flip


def _induced_permutation(points: Sequence[Point], point_map: PointMap, field: Field) -> Optional[List[int]]:
    index = {point: position for position, point in enumerate(points)}
    images = []
    for point in points:
        image = tuple(field(value) for value in point_map(point))
        if image not in index:
            return None
        images.append(index[image])
    return images


def separability(
    points: Iterable[Sequence[object]],
    point_maps: Optional[Iterable[PointMap]] = None,
    field: Optional[Field] = None,
) -> Family:
    """
    Separability arrangement of ``points`` in K^(d+1).

    The group is generated by the adjacent coordinate transpositions that
    preserve the point set and by the permutations induced by ``point_maps``.
    """
    raw = [list(point) for point in points]
    _require(bool(raw), "A separability arrangement needs at least one point")
    dims = {len(point) for point in raw}
    _require(len(dims) == 1, f"Points have different dimensions {sorted(dims)}")
    dim = dims.pop()
    field = field or field_of(value for point in raw for value in point)
    coerced = [tuple(field(value) for value in point) for point in raw]
    _require(len(set(coerced)) == len(coerced), "Duplicate points in a separability arrangement")

    arrangement = Arrangement.from_rows(
        [(1,) + point for point in coerced], field=field, dim=dim + 1
    )

    maps = [_coordinate_swap(i, i + 1) for i in range(dim - 1)]
    generators = []
    for point_map in maps:
        images = _induced_permutation(coerced, point_map, field)
        if images is not None:
            generators.append(images)
    for point_map in point_maps or ():
        images = _induced_permutation(coerced, point_map, field)
        if images is None:
            raise ArrangementError("A supplied point map does not preserve the point set")
        generators.append(images)
    return arrangement, PermGroup(len(coerced), generators)


def threshold(d: int) -> Family:
    """Separability arrangement of the cube {0, 1}^d with the hyperoctahedral group."""
    _require(d >= 1, f"threshold needs d >= 1, got {d}")
    vertices = list(product((0, 1), repeat=d))
    return separability(vertices, [_affine_flip((0,), 1)])


def _hidden_resonance_map(vectors: Sequence[Tuple[int, ...]]) -> List[int]:
    """
    Exchange x_1 with x_0 = -(x_1 + ... + x_d). Hyperplanes are subsets S of
    {1..d}; after the swap a subset containing 0 is replaced by its complement
    in {0..d}, which defines the same hyperplane.
    """
    d = len(vectors[0])
    index = {vector: position for position, vector in enumerate(vectors)}
    images = []
    for vector in vectors:
        support = {i + 1 for i, c in enumerate(vector) if c}
        swapped = {0 if i == 1 else i for i in support}
        if 0 in swapped:
            swapped = set(range(d + 1)) - swapped
        image = tuple(1 if i + 1 in swapped else 0 for i in range(d))
        images.append(index[image])
    return images


def resonance(d: int, extended: bool = False) -> Family:
    """All hyperplanes c . x = 0 with c in {0, 1}^d nonzero."""
    _require(d >= 1, f"resonance needs d >= 1, got {d}")
    vectors = [c for c in product((0, 1), repeat=d) if any(c)]
    arrangement = Arrangement.from_rows(vectors, field=RATIONALS, dim=d)
    index = {vector: position for position, vector in enumerate(vectors)}
    generators = []
    for i in range(d - 1):
        swap = _coordinate_swap(i, i + 1)
        generators.append([index[swap(vector)] for vector in vectors])
    if extended and d >= 1:
        generators.append(_hidden_resonance_map(vectors))
    return arrangement, PermGroup(len(vectors), generators)


def crosspolytope(d: int) -> Family:
    """Separability arrangement of {+-e_i}."""
    _require(d >= 1, f"crosspolytope needs d >= 1, got {d}")
    points = []
    for i in range(d):
        for sign in (-1, 1):
            points.append(tuple(sign if j == i else 0 for j in range(d)))
    return separability(sorted(points), [_affine_flip((0,), 0)])


def permutohedron(d: int) -> Family:
    """Separability arrangement of the d! permutations of (1, ..., d)."""
    _require(d >= 1, f"permutohedron needs d >= 1, got {d}")
    return separability(sorted(permutations(range(1, d + 1))))


def demicube(d: int) -> Family:
    """Separability arrangement of the cube vertices with an odd number of ones."""
    _require(d >= 2, f"demicube needs d >= 2, got {d}")
    vertices = [v for v in product((0, 1), repeat=d) if sum(v) % 2 == 1]
    return separability(vertices, [_affine_flip((0, 1), 1)])


def _cyclic_shifts(point: Sequence[Scalar]) -> List[Point]:
    return [tuple(point[i:]) + tuple(point[:i]) for i in range(len(point))]


def _signed(values: Sequence[Scalar]) -> List[Point]:
    """All sign choices on the nonzero entries."""
    choices = [(v,) if not v else (v, -v) for v in values]
    return [tuple(choice) for choice in product(*choices)]


def _platonic_vertices(name: str) -> Tuple[List[Point], Field]:
    if name == "cell24":
        points = set()
        for base in _signed((1, 1, 0, 0)):
            points.update(permutations(base))
        return sorted(points), RATIONALS
    field = quadratic_field(5)
    phi = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    points = set()
    if name == "icosahedron":
        for signed in _signed((field(0), field(1), phi)):
            points.update(_cyclic_shifts(signed))
    elif name == "dodecahedron":
        points.update(tuple(field(v) for v in p) for p in product((-1, 1), repeat=3))
        for signed in _signed((field(0), phi - 1, phi)):
            points.update(_cyclic_shifts(signed))
    else:
        raise ArrangementError(f"Unknown Platonic arrangement {name!r}; choose from {PLATONIC}")
    return sorted(points), field


def edge_graph(points: Sequence[Point]) -> nx.Graph:
    """Graph joining the pairs of points at minimal distance."""
    distances = {}
    for i, j in combinations(range(len(points)), 2):
        distances[i, j] = sum(((a - b) * (a - b) for a, b in zip(points[i], points[j])), 0)
    shortest = min(distances.values())
    graph = nx.Graph()
    graph.add_nodes_from(range(len(points)))
    graph.add_edges_from(pair for pair, value in distances.items() if value == shortest)
    return graph


def graph_automorphism_generators(graph: nx.Graph) -> List[List[int]]:
    """A generating set of Aut(graph), grown while new automorphisms fall outside it."""
    n = graph.number_of_nodes()
    group = PermGroup(n)
    for mapping in GraphMatcher(graph, graph).isomorphisms_iter():
        images = [mapping[node] for node in range(n)]
        if not group.contains(images):
            group = PermGroup(n, group.generators + (tuple(images),))
    LOGGER.debug("Graph automorphism group of order %d with %d generators", group.order(), len(group.generators))
    return [list(g) for g in group.generators]


def platonic(name: str) -> Family:
    """Separability arrangements of the icosahedron, dodecahedron and 24-cell vertices."""
    points, field = _platonic_vertices(name)
    arrangement, _ = separability(points, field=field)
    group = PermGroup(len(points), graph_automorphism_generators(edge_graph(points)))
    if not validate_subgroup_of_aut(group, arrangement):
        raise ArrangementError(f"Edge-graph symmetries of the {name} do not preserve its arrangement")
    return arrangement, group


def _hyperplane_through(points: Sequence[Sequence[int]]) -> Tuple[List[sympy.Rational], sympy.Rational]:
    matrix = sympy.Matrix([list(point) + [-1] for point in points])
    kernel = matrix.nullspace()
    if len(kernel) != 1:
        raise ArrangementError(f"Points {points} do not span a unique hyperplane")
    vector = kernel[0]
    return list(vector[:-1]), vector[-1]


def _symmetric_generators(n: int) -> List[List[int]]:
    if n < 2:
        return []
    return [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]


def discriminantal(d: int, n: int, seed: Optional[int] = None) -> Family:
    """
    Hyperplanes through each d-subset of n points on the moment curve
    t -> (t, t^2, ..., t^d).

    ``seed=None`` uses the parameters 1..n; otherwise n distinct integer
    parameters are drawn from a seeded generator. The symmetric group on the
    points is returned when it preserves the arrangement, the trivial group
    otherwise.
    """
    _require(d >= 1 and n > d, f"discriminantal needs n > d >= 1, got d={d}, n={n}")
    if seed is None:
        parameters = list(range(1, n + 1))
    else:
        rng = np.random.default_rng(seed)
        parameters = sorted(int(t) for t in rng.choice(np.arange(-5 * n, 5 * n + 1), size=n, replace=False))
    points = [[t ** k for k in range(1, d + 1)] for t in parameters]
    subsets = list(combinations(range(n), d))
    coefficients, constants = [], []
    for subset in subsets:
        normal, constant = _hyperplane_through([points[i] for i in subset])
        coefficients.append([Fraction(int(v.p), int(v.q)) for v in normal])
        constants.append(Fraction(int(constant.p), int(constant.q)))
    arrangement = Arrangement.from_rows(coefficients, constants, field=RATIONALS, dim=d)

    index: Dict[Tuple[int, ...], int] = {subset: position for position, subset in enumerate(subsets)}
    generators = []
    for point_perm in _symmetric_generators(n):
        generators.append([index[tuple(sorted(point_perm[i] for i in subset))] for subset in subsets])
    group = PermGroup(len(subsets), generators)
    if not validate_subgroup_of_aut(group, arrangement):
        LOGGER.warning(
            "The symmetric group does not act on Disc(%d, %d) with parameters %s; using the trivial group",
            d,
            n,
            parameters,
        )
        group = PermGroup.trivial(len(subsets))
    return arrangement, group


FAMILIES: Dict[str, Callable[..., Family]] = {
    "crosspolytope": crosspolytope,
    "demicube": demicube,
    "discriminantal": discriminantal,
    "permutohedron": permutohedron,
    "platonic": platonic,
    "resonance": resonance,
    "separability": separability,
    "threshold": threshold,
}


__all__ = [
    "FAMILIES",
    "PLATONIC",
    "crosspolytope",
    "demicube",
    "discriminantal",
    "edge_graph",
    "graph_automorphism_generators",
    "permutohedron",
    "platonic",
    "resonance",
    "separability",
    "threshold",
]
