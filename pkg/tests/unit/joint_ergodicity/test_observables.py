"""Tests for observables."""

from fractions import Fraction

import pytest
from pydantic import ValidationError as PydanticValidationError

from src.interval import EnclosedReal, dyadic, parse_point
from src.joint_ergodicity import (
    ObservableKind,
    ObservableSpec,
    evaluate_on_enclosure,
    observable_integral,
)
from src.maps import parse_map
from src.measures import LEBESGUE


def _make_interval(lower: str, upper: str, map_text: str = "timesb:2") -> ObservableSpec:
    return ObservableSpec(
        map=parse_map(map_text), kind=ObservableKind.INTERVAL, lower=lower, upper=upper
    )


class TestObservableSpec:
    def test_interval_from_text(self):
        observable = _make_interval("1/4", "0.5")
        assert (observable.lower, observable.upper) == (Fraction(1, 4), Fraction(1, 2))
        assert observable.label == "timesb:2:1[1/4,1/2)"

    def test_interval_bounds_checked(self):
        with pytest.raises(PydanticValidationError):
            _make_interval("0.6", "0.4")

    def test_cylinder_needs_symbols(self):
        with pytest.raises(PydanticValidationError):
            ObservableSpec(map=parse_map("timesb:2"), kind=ObservableKind.CYLINDER)

    def test_rotation_has_no_cylinders(self):
        with pytest.raises(PydanticValidationError):
            ObservableSpec(
                map=parse_map("rotation:0.25"), kind=ObservableKind.CYLINDER, symbols=(0,)
            )

    def test_piecewise_shape(self):
        with pytest.raises(PydanticValidationError):
            ObservableSpec(
                map=parse_map("timesb:2"),
                kind=ObservableKind.PIECEWISE,
                breakpoints=("0.5",),
                values=(1.0,),
            )

    def test_piecewise_is_not_indicator(self):
        observable = ObservableSpec(
            map=parse_map("timesb:2"),
            kind=ObservableKind.PIECEWISE,
            breakpoints=("0.5",),
            values=(1.0, 3.0),
        )
        assert not observable.is_indicator


class TestEvaluate:
    def test_inside(self):
        assert evaluate_on_enclosure(_make_interval("0.25", "0.5"), parse_point("0.3", 64)) == 1.0

    def test_outside(self):
        assert evaluate_on_enclosure(_make_interval("0.25", "0.5"), parse_point("0.7", 64)) == 0.0

    def test_right_end_is_open(self):
        assert evaluate_on_enclosure(_make_interval("0.25", "0.5"), parse_point("0.5", 64)) == 0.0

    def test_undecided_on_boundary(self):
        point = EnclosedReal(lower=dyadic(63, -8), upper=dyadic(65, -8), bits=64)
        assert evaluate_on_enclosure(_make_interval("0.25", "0.5"), point) is None

    def test_piecewise(self):
        observable = ObservableSpec(
            map=parse_map("timesb:2"),
            kind=ObservableKind.PIECEWISE,
            breakpoints=("0.5",),
            values=(1.0, 3.0),
        )
        assert evaluate_on_enclosure(observable, parse_point("0.75", 64)) == 3.0
        assert evaluate_on_enclosure(observable, parse_point("0.25", 64)) == 1.0


class TestIntegral:
    def test_interval_lebesgue(self):
        assert observable_integral(_make_interval("0.25", "0.5")) == pytest.approx(0.25)

    def test_interval_gauss(self):
        observable = _make_interval("0.5", "1", map_text="gauss")
        assert observable_integral(observable) == pytest.approx(0.415037, abs=1e-6)

    def test_cylinder(self):
        observable = ObservableSpec(
            map=parse_map("timesb:10"), kind=ObservableKind.CYLINDER, symbols=(4, 2)
        )
        assert observable_integral(observable) == pytest.approx(0.01)

    def test_piecewise(self):
        observable = ObservableSpec(
            map=parse_map("gauss"),
            kind=ObservableKind.PIECEWISE,
            breakpoints=("0.5",),
            values=(1.0, 3.0),
        )
        assert observable_integral(observable, LEBESGUE) == pytest.approx(2.0)
