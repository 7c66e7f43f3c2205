"""Tests for good-atom masses."""

import pytest

from src.entropy_mixing import GoodAtomMass, PropertyEMethod, fit_c0, property_e_mass
from src.exceptions import EnumerationLimitError, ValidationError
from src.maps import parse_map

FIBONACCI = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]


class TestPropertyEMass:
    def test_doubling_map_has_full_good_mass(self):
        report = property_e_mass(parse_map("timesb:2"), 0.1, range(1, 11))
        assert report.method == PropertyEMethod.ENUMERATION
        assert report.samples is None
        assert [mass.good_mass for mass in report.masses] == [1.0] * 10
        assert [mass.cylinders for mass in report.masses] == [2**n for n in range(1, 11)]
        assert all(mass.within_envelope for mass in report.masses)
        assert report.c0 == 0.0

    def test_golden_map_enumerates_admissible_words(self):
        report = property_e_mass(parse_map("beta:golden"), 0.2, range(1, 8))
        assert [mass.cylinders for mass in report.masses] == FIBONACCI[2:9]
        for mass in report.masses:
            assert 0.0 <= mass.good_mass <= 1.0
            assert mass.envelope is not None
        assert report.c0 >= 0.0

    def test_gauss_map_is_sampled(self):
        report = property_e_mass(parse_map("gauss"), 0.5, [5, 10], samples=100, seed=7)
        assert report.method == PropertyEMethod.SAMPLING
        assert report.samples == 100
        assert [mass.n for mass in report.masses] == [5, 10]
        assert all(mass.envelope is None for mass in report.masses)
        assert report.masses[0].cylinders + report.excluded_samples == 100

    def test_enumeration_cap(self):
        with pytest.raises(EnumerationLimitError):
            property_e_mass(parse_map("timesb:10"), 0.1, [4], cap=1000)

    @pytest.mark.parametrize("epsilon,ranks", [(0.0, [1]), (-0.5, [1]), (0.1, []), (0.1, [0])])
    def test_rejects_bad_inputs(self, epsilon, ranks):
        with pytest.raises(ValidationError):
            property_e_mass(parse_map("timesb:2"), epsilon, ranks)


class TestFitC0:
    def test_worst_rank_sets_the_constant(self):
        masses = [
            GoodAtomMass(n=10, good_mass=0.9, out_of_band_mass=0.1, cylinders=4),
            GoodAtomMass(n=20, good_mass=0.99, out_of_band_mass=0.01, cylinders=4),
        ]
        assert fit_c0(masses) == pytest.approx(1.0)

    def test_empty_is_zero(self):
        assert fit_c0([]) == 0.0
