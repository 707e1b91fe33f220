import pytest

from src.arrangement import Arrangement, restriction_arrangement
from src.counting import Engine, characteristic_polynomial, number_of_chambers, run_report, whitney_numbers
from src.deletion_restriction import whitney_extended, whitney_simple
from src.families import resonance
from src.automorphisms import validate_subgroup_of_aut
from src.oracle import whitney_bruteforce
from src.permgroup import GroupError, PermGroup, minimal_image_exact
from src.polynomial import CharPoly, WhitneyVector
from src.symmetry_engine import (
    EngineOptions,
    LevelMap,
    OrbitIdentification,
    level_stabilizers,
    run_symmetry,
    whitney_symmetry,
)

from tests.conftest import (
    automorphism_group,
    boolean_arrangement,
    frontier_whitney,
    planted_symmetric_arrangements,
    random_arrangements,
)


RUNNING_WHITNEY = (1, 4, 5)
IDENTIFICATIONS = list(OrbitIdentification)


@pytest.mark.parametrize("engine", list(Engine))
def test_running_example_with_every_engine(running, running_group, engine):
    assert whitney_numbers(running, running_group, engine=engine) == WhitneyVector(RUNNING_WHITNEY)
    assert number_of_chambers(running, running_group, engine=engine) == 10
    assert str(characteristic_polynomial(running, running_group, engine=engine)) == "t^2 - 4*t + 5"


@pytest.mark.parametrize("identification", IDENTIFICATIONS)
@pytest.mark.parametrize("skip_levels", [True, False])
def test_running_example_with_every_orbit_identification(running, running_group, identification, skip_levels):
    options = EngineOptions(orbit_identification=identification, skip_levels=skip_levels)
    whitney = whitney_symmetry(running, running_group, options)
    assert whitney.to_list() == list(RUNNING_WHITNEY)
    assert whitney.bounded_chambers() == 2


def test_literal_levels_without_symmetry(running):
    options = EngineOptions(orbit_identification="none", skip_levels=False)
    run = run_symmetry(running, None, options)
    assert [stats.nodes for stats in run.levels] == [1, 2, 3, 6, 10]
    assert run.group_order == 1


def test_literal_levels_merge_symmetric_nodes(running, running_group):
    options = EngineOptions(orbit_identification="exact", skip_levels=False, record_levels=True)
    run = run_symmetry(running, running_group, options)
    assert [stats.nodes for stats in run.levels] == [1, 2, 2, 3, 5]
    assert [sum(level.values()) for level in run.snapshots] == [1, 2, 3, 6, 10]
    assert run.snapshots[-1] == {(): 1, (3,): 1, (0,): 3, (0, 3): 3, (0, 1): 2}
    assert run.group_order == 6


def test_degenerate_arrangements():
    empty = Arrangement.from_rows([], dim=2)
    single = Arrangement.from_rows([[1, 0, 0]], [3])
    for engine in Engine:
        assert whitney_numbers(empty, engine=engine).to_list() == [1, 0, 0]
        assert whitney_numbers(single, engine=engine).to_list() == [1, 1, 0, 0]
        assert whitney_numbers(boolean_arrangement(3), engine=engine).to_list() == [1, 3, 3, 1]


def test_small_resonance_arrangements():
    for d, expected in [(1, (1, 1)), (2, (1, 3, 2)), (3, (1, 7, 15, 9))]:
        arrangement, group = resonance(d)
        for identification in IDENTIFICATIONS:
            options = EngineOptions(orbit_identification=identification)
            assert whitney_symmetry(arrangement, group, options) == WhitneyVector(expected)


def _assert_symmetry_engine_matches_subset_enumeration(arrangement, group):
    expected = whitney_bruteforce(arrangement)
    assert validate_subgroup_of_aut(group, arrangement)
    for identification in ("pseudo", "exact"):
        for skip_levels in (True, False):
            for seed in (0, 1):
                options = EngineOptions(orbit_identification=identification, skip_levels=skip_levels, seed=seed)
                assert whitney_symmetry(arrangement, group, options) == expected, (arrangement, group, options)
    return expected


def test_engines_agree_with_subset_enumeration():
    nontrivial = 0
    for arrangement in random_arrangements(40, max_n=10, max_d=4):
        group = automorphism_group(arrangement)
        nontrivial += not group.is_trivial
        expected = _assert_symmetry_engine_matches_subset_enumeration(arrangement, group)
        assert whitney_simple(arrangement) == expected
        assert whitney_extended(arrangement) == expected
        for skip_levels in (True, False):
            options = EngineOptions(orbit_identification="none", skip_levels=skip_levels)
            assert whitney_symmetry(arrangement, None, options) == expected
    assert nontrivial > 0


def test_symmetric_arrangements_agree_with_subset_enumeration():
    for arrangement, group in planted_symmetric_arrangements(12):
        assert group.order() > 1
        _assert_symmetry_engine_matches_subset_enumeration(arrangement, group)


@pytest.mark.slow
def test_two_hundred_arrangements_agree_with_subset_enumeration():
    cases = [(a, automorphism_group(a)) for a in random_arrangements(200, seed=2024, max_n=10, max_d=4)]
    cases += planted_symmetric_arrangements(40, seed=5)
    for arrangement, group in cases:
        expected = _assert_symmetry_engine_matches_subset_enumeration(arrangement, group)
        assert whitney_extended(arrangement) == expected


def _small_cases():
    cases = [(a, automorphism_group(a)) for a in random_arrangements(30, seed=3, max_n=6, max_d=3)]
    cases += planted_symmetric_arrangements(4, seed=9, max_orbits=1)
    return cases


@pytest.mark.parametrize("identification", IDENTIFICATIONS)
def test_every_literal_level_accounts_for_the_whole_answer(identification):
    for arrangement, group in _small_cases():
        options = EngineOptions(orbit_identification=identification, skip_levels=False, record_levels=True)
        run = run_symmetry(arrangement, group, options)
        assert len(run.snapshots) == arrangement.n + 1
        for level, snapshot in enumerate(run.snapshots):
            total = [0] * (arrangement.dim + 1)
            for key, multiplicity in snapshot.items():
                for rank, count in enumerate(frontier_whitney(arrangement, key, level)):
                    total[rank] += multiplicity * count
            assert tuple(total) == tuple(run.whitney), (arrangement, group, level)


def test_exact_keys_are_least_in_their_level_orbit():
    for arrangement, group in _small_cases():
        stabilizers = level_stabilizers(group)
        literal = dict(skip_levels=False, record_levels=True)
        run = run_symmetry(arrangement, group, EngineOptions(orbit_identification="exact", **literal))
        plain = run_symmetry(arrangement, group, EngineOptions(orbit_identification="none", **literal))
        for level, snapshot in enumerate(run.snapshots):
            assert all(minimal_image_exact(stabilizers[level], key) == key for key in snapshot)
        assert sum(plain.snapshots[-1].values()) == run.whitney.chambers()
        assert run.whitney == plain.whitney


def test_subgroups_give_the_same_answer():
    for arrangement, group in _small_cases() + planted_symmetric_arrangements(6, seed=13):
        expected = whitney_symmetry(arrangement, None)
        subgroups = [group, PermGroup.trivial(arrangement.n)]
        subgroups += [PermGroup(arrangement.n, [generator]) for generator in group.generators[:2]]
        for subgroup in subgroups:
            for identification in ("pseudo", "exact"):
                options = EngineOptions(orbit_identification=identification)
                assert whitney_symmetry(arrangement, subgroup, options) == expected


def test_deletion_restriction_identity():
    for arrangement in random_arrangements(15, seed=21):
        arrangement = arrangement.without_duplicates()
        if arrangement.n == 0 or arrangement.dim < 1:
            continue
        last = arrangement.n - 1
        deleted = whitney_extended(arrangement.deletion(last))
        restricted = whitney_extended(restriction_arrangement(arrangement, last))
        assert whitney_extended(arrangement) == deleted + restricted.shifted()


def test_central_shortcut_does_not_change_results():
    for d in (3, 4):
        arrangement, group = resonance(d)
        with_shortcut = run_report(arrangement, group, EngineOptions(central_shortcut=True))
        without = run_report(arrangement, group, EngineOptions(central_shortcut=False))
        assert with_shortcut.whitney == without.whitney
        assert with_shortcut.total_nodes <= without.total_nodes


def test_symmetry_never_adds_nodes():
    arrangement, group = resonance(4)
    merged = run_report(arrangement, group, EngineOptions(orbit_identification="exact"))
    plain = run_report(arrangement, group, EngineOptions(orbit_identification="none"))
    assert merged.whitney == plain.whitney == (1, 15, 80, 170, 104)
    assert merged.total_nodes < plain.total_nodes
    assert merged.chambers == 370


def test_same_seed_gives_same_run():
    arrangement, group = resonance(4)
    options = EngineOptions(seed=17)
    first = run_report(arrangement, group, options)
    second = run_report(arrangement, group, options)
    assert first.counts() == second.counts()


@pytest.mark.parametrize("workers", [4, 8])
def test_worker_processes_give_identical_counts(workers):
    arrangement, group = resonance(4)
    serial = run_report(arrangement, group, EngineOptions(seed=3, workers=1, chunk_size=4))
    parallel = run_report(arrangement, group, EngineOptions(seed=3, workers=workers, chunk_size=4))
    assert serial.counts() == parallel.counts()


@pytest.mark.slow
def test_worker_processes_on_resonance_5():
    arrangement, group = resonance(5)
    reports = {
        workers: run_report(arrangement, group, EngineOptions(seed=0, workers=workers, chunk_size=64))
        for workers in (1, 4, 8)
    }
    assert reports[1].counts() == reports[4].counts() == reports[8].counts()
    assert reports[1].whitney == (1, 31, 375, 2130, 5270, 3485)


def test_pseudo_keys_shrink_the_peak_level():
    arrangement, group = resonance(4)
    pseudo = run_report(arrangement, group, EngineOptions(orbit_identification="pseudo"))
    plain = run_report(arrangement, group, EngineOptions(orbit_identification="none"))
    assert pseudo.whitney == plain.whitney
    assert pseudo.peak_nodes < plain.peak_nodes


@pytest.mark.slow
def test_pseudo_keys_shrink_the_peak_level_of_resonance_5():
    arrangement, group = resonance(5)
    pseudo = run_report(arrangement, group, EngineOptions(orbit_identification="pseudo"))
    plain = run_report(arrangement, group, EngineOptions(orbit_identification="none"))
    assert pseudo.chambers == plain.chambers == 11292
    assert pseudo.peak_nodes < plain.peak_nodes
    assert pseudo.seconds <= 3 * plain.seconds


def test_group_of_wrong_degree(running):
    with pytest.raises(GroupError):
        whitney_symmetry(running, PermGroup.trivial(5))


def test_engine_options_checks():
    with pytest.raises(ValueError):
        EngineOptions(workers=0)
    with pytest.raises(ValueError):
        EngineOptions(orbit_identification="perfect")
    assert EngineOptions(orbit_identification="exact").orbit_identification is OrbitIdentification.EXACT


def test_level_map_counts_identifications():
    level = LevelMap(2)
    level.add((0,), 1)
    level.add((0,), 2)
    level.add((), 1)
    assert len(level) == 2
    assert level.multiplicity((0,)) == 3
    assert level.identifications == 1
    assert level.total() == 4
    assert level.items() == [((), 1), ((0,), 3)]


def test_charpoly_display_and_parsing():
    charpoly = WhitneyVector(RUNNING_WHITNEY).charpoly()
    assert charpoly.coefficients == (1, -4, 5)
    assert CharPoly.parse(str(charpoly)) == charpoly
    assert charpoly.chambers() == 10
    assert charpoly.to_whitney() == WhitneyVector(RUNNING_WHITNEY)
    assert CharPoly.parse("t^3 - 7*t^2 + 15*t - 9").to_whitney().chambers() == 32
    with pytest.raises(ValueError):
        CharPoly.parse("t^2 + s")
