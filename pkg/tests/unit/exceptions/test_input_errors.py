"""Tests for input error exceptions."""

from src.exceptions.base import JointNormalityError
from src.exceptions.input_errors import (
    InputError,
    InvalidSymbolError,
    ManifestError,
    MapGrammarError,
    UnsupportedMapError,
    ValidationError,
)


class TestInputError:
    def test_error_code(self):
        assert InputError("bad").error_code == "INPUT_ERROR"

    def test_inherits_from_base(self):
        assert isinstance(InputError("bad"), JointNormalityError)


class TestValidationError:
    def test_error_code(self):
        assert ValidationError("invalid").error_code == "VALIDATION_ERROR"

    def test_field_in_context(self):
        error = ValidationError("invalid", field="bins")
        assert error.context["field"] == "bins"

    def test_value_in_context(self):
        error = ValidationError("invalid", value=[0, -1])
        assert error.context["value"] == [0, -1]

    def test_no_field_no_context(self):
        error = ValidationError("invalid")
        assert error.context == {}

    def test_merges_extra_context(self):
        error = ValidationError("invalid", field="lags", context={"map": "gauss"})
        assert error.context == {"field": "lags", "map": "gauss"}


class TestMapGrammarError:
    def test_error_code(self):
        assert MapGrammarError("bad map").error_code == "MAP_GRAMMAR_ERROR"

    def test_text_in_context(self):
        error = MapGrammarError("bad map", text="timesb:1")
        assert error.context["text"] == "timesb:1"

    def test_is_input_error(self):
        assert isinstance(MapGrammarError("bad map"), InputError)


class TestInvalidSymbolError:
    def test_error_code(self):
        assert InvalidSymbolError("bad digit").error_code == "INVALID_SYMBOL"

    def test_symbol_and_map_in_context(self):
        error = InvalidSymbolError("bad digit", symbol=7, map_name="timesb:2")
        assert error.context == {"symbol": 7, "map": "timesb:2"}

    def test_zero_symbol_kept(self):
        error = InvalidSymbolError("bad digit", symbol=0)
        assert error.context["symbol"] == 0


class TestUnsupportedMapError:
    def test_error_code(self):
        assert UnsupportedMapError("no").error_code == "UNSUPPORTED_MAP"


class TestManifestError:
    def test_error_code(self):
        assert ManifestError("broken").error_code == "MANIFEST_ERROR"

    def test_context(self):
        error = ManifestError("broken", context={"errors": []})
        assert error.context == {"errors": []}
