import json

import numpy as np
import pytest

from symmpovm.jsonio import SchemaError, decode_matrix, encode_matrix, pretty_matrix, rational_str


def test_round_trip_bit_exact(rng):
    m = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    text = json.dumps(encode_matrix(m))
    kind, back = decode_matrix(json.loads(text))
    assert kind == "matrix"
    assert np.array_equal(back, m)


def test_pure_vector():
    kind, v = decode_matrix(encode_matrix(np.array([0.5, 0.5, 0.5, 0.5]), "pure"))
    assert kind == "pure" and v.shape == (4,)


@pytest.mark.parametrize(
    "obj",
    [
        {"type": "density", "rows": 2, "cols": 2, "re": [1, 0, 0], "im": [0, 0, 0, 0]},
        {"type": "weird", "rows": 1, "cols": 1, "re": [1], "im": [0]},
        {"rows": 2},
        {"type": "pure", "rows": 2, "cols": 2, "re": [1, 0, 0, 0], "im": [0, 0, 0, 0]},
    ],
)
def test_schema_errors(obj):
    with pytest.raises(SchemaError):
        decode_matrix(obj)


def test_rationals():
    assert rational_str(1 / 6) == "1/6"
    assert rational_str(4 / 18) == "2/9"
    assert rational_str(1.0) == "1"
    assert rational_str(np.sqrt(2)) == "1.41421"
    assert "1/3" in pretty_matrix(np.eye(2) / 3)
