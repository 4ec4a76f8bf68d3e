"""
Unit tests for the model file format
"""

import pytest
import json
import sys
import os
from dataclasses import replace

# Add repository root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../..'))

from conelab.exceptions import ModelFileSyntaxError, ModelInvalidError
from conelab.handlers.model_file import parse_model, serialize_model
from conelab.surface_models import build_model, ruled_blowup_model

BUILTIN_NAMES = ["ruled", "burniat", "bidisk", "ball-quotient", "rational:0", "rational:2", "rational:5"]


@pytest.fixture
def ruled_document():
    return json.loads(serialize_model(ruled_blowup_model()))


class TestRoundTrip:
    """Tests for parse_model(serialize_model(model))"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_identity(self, name):
        """Test parse after serialize returns an equal model"""
        model = build_model(name)
        text = serialize_model(model)
        parsed = parse_model(text)
        assert parsed == model
        assert serialize_model(parsed) == text

    def test_rationals_as_strings(self, ruled_document):
        """Test coefficients are written as strings"""
        assert ruled_document["classes"]["e2"] == ["-1", "1", "0"]
        assert ruled_document["roles"]["canonical"] == "k"
        assert ruled_document["roles"]["exceptional"] == ["e1", "e2"]

    def test_integer_and_fraction_entries(self, ruled_document):
        """Test plain integers and p/q strings are accepted on input"""
        ruled_document["classes"]["half"] = [1, "1/2", "-3/4"]
        model = parse_model(json.dumps(ruled_document))
        half = model.named["half"]
        assert str(half) == "e+1/2f-3/4k"

    def test_unnamed_roles_get_generated_names(self, ruled_document):
        """Test a role class without a name is written under its formatted class"""
        model = parse_model(json.dumps(ruled_document))
        e, f, k = model.lattice.basis()
        shifted = replace(model, reference=2 * f - 2 * k)
        document = json.loads(serialize_model(shifted))
        assert document["roles"]["reference"] == "2f-2k"
        assert parse_model(json.dumps(document)).reference == 2 * f - 2 * k


class TestParseErrors:
    """Tests for parse_model error reporting"""

    def test_syntax_error(self):
        """Test malformed JSON carries line and column"""
        with pytest.raises(ModelFileSyntaxError) as exc:
            parse_model('{\n  "name": \n}')
        assert exc.value.line == 3
        assert exc.value.column == 1

    def test_asymmetric_gram(self, ruled_document):
        """Test gram[0][1] != gram[1][0]"""
        ruled_document["gram"][0][1] = 5
        with pytest.raises(ModelInvalidError, match="not symmetric") as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "gram"

    def test_wrong_genus(self, ruled_document):
        """Test a curve claiming genus 2 for e - 2k"""
        ruled_document["roles"]["curves"][2]["genus"] = 2
        with pytest.raises(ModelInvalidError, match="adjunction gives genus 1") as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "roles.curves[2]"

    def test_missing_named_class(self, ruled_document):
        """Test a role referring to an undefined class"""
        ruled_document["roles"]["reference"] = "q"
        with pytest.raises(ModelInvalidError, match="named class 'q' is missing") as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "roles.reference"

    def test_signature(self, ruled_document):
        """Test a Gram matrix with b+ != 1"""
        ruled_document["gram"] = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
        with pytest.raises(ModelInvalidError) as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "gram"

    def test_float_entries_refused(self, ruled_document):
        """Test the Gram matrix must be integral"""
        ruled_document["gram"][0][0] = -1.5
        with pytest.raises(ModelInvalidError) as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "gram.0.0"

    def test_unknown_field(self, ruled_document):
        """Test extra keys are refused"""
        ruled_document["bogus"] = 1
        with pytest.raises(ModelInvalidError) as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "bogus"

    def test_bad_coefficients(self, ruled_document):
        """Test class vectors of the wrong length or with decimals"""
        ruled_document["classes"]["e2"] = ["-1", "1"]
        with pytest.raises(ModelInvalidError) as exc:
            parse_model(json.dumps(ruled_document))
        assert exc.value.field_path == "classes.e2"

        ruled_document["classes"]["e2"] = ["-1", "1.0", "0"]
        with pytest.raises(ModelInvalidError):
            parse_model(json.dumps(ruled_document))
