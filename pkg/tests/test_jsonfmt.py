import json
import math

import numpy as np
from hypothesis import given, strategies as st

from qhbundle.jsonfmt import complex_matrix, document, dumps


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip_exactly(x):
    assert json.loads(dumps(x)) == x


def test_complex_and_numpy():
    assert dumps(1 + 2j) == "[1, 2]"
    assert dumps(np.float64(0.1)) == "0.10000000000000001"
    assert dumps(np.array([1, 2])) == "[1, 2]"
    assert dumps({"a": [True, None, "x"]}) == '{"a": [true, null, "x"]}'
    assert dumps(math.inf) == "null"


def test_document_header():
    text = document({"k": 1})
    assert text.endswith("\n") and json.loads(text) == {"schema": 1, "k": 1}


def test_complex_matrix():
    assert complex_matrix(np.array([[1j, 2]])) == [[[0.0, 1.0], [2.0, 0.0]]]
