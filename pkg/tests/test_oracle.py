import pytest

from src.arrangement import Arrangement
from src.counting import whitney_numbers
from src.exact import QuadraticNumber
from src.families import resonance
from src.oracle import OracleError, charpoly_by_interpolation, count_points_mod_p, whitney_bruteforce
from src.polynomial import CharPoly, WhitneyVector

from tests.conftest import boolean_arrangement, random_arrangements


def test_point_counts():
    assert count_points_mod_p(boolean_arrangement(2), 5) == 16
    assert count_points_mod_p(resonance(2)[0], 5) == 12


def test_point_count_of_the_running_example(running):
    assert count_points_mod_p(running, 7) == 26
    assert WhitneyVector((1, 4, 5)).charpoly().evaluate(7) == 26


def test_interpolated_characteristic_polynomials(running):
    assert charpoly_by_interpolation(boolean_arrangement(3)) == CharPoly((1, -3, 3, -1))
    assert str(charpoly_by_interpolation(resonance(3)[0])) == "t^3 - 7*t^2 + 15*t - 9"
    assert charpoly_by_interpolation(running) == CharPoly((1, -4, 5))


def test_bruteforce_on_known_arrangements(running):
    assert whitney_bruteforce(running) == WhitneyVector((1, 4, 5))
    assert whitney_bruteforce(resonance(3)[0]) == WhitneyVector((1, 7, 15, 9))
    assert whitney_bruteforce(Arrangement.from_rows([], dim=1)) == WhitneyVector((1, 0))


def test_bruteforce_limit():
    arrangement, _ = resonance(5)
    with pytest.raises(OracleError):
        whitney_bruteforce(arrangement, limit=20)


def test_point_count_guards(running):
    with pytest.raises(OracleError):
        count_points_mod_p(running, 9)
    with pytest.raises(OracleError):
        count_points_mod_p(boolean_arrangement(4), 5)
    halved = Arrangement.from_rows([[2, 0], [0, 1]], [1, 0])
    with pytest.raises(OracleError):
        count_points_mod_p(halved, 2)
    phi = QuadraticNumber(1, 1, 5)
    with pytest.raises(OracleError):
        count_points_mod_p(Arrangement.from_rows([[1, phi]]), 11)


def test_interpolation_matches_the_engines_on_random_arrangements():
    for arrangement in random_arrangements(60, seed=31, max_d=3):
        expected = whitney_numbers(arrangement).charpoly()
        assert charpoly_by_interpolation(arrangement) == expected, arrangement
