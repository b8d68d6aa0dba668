import json

import pytest

from acsums.ktheory import SacsCoefficients
from acsums.topology import (
    WitnessRecord,
    acs_criterion,
    hirzebruch_check,
    invariants,
    prop31_witness,
)


def test_invariants_examples():
    cp2 = invariants(1, 1)
    assert (cp2.euler, cp2.signature, cp2.dimension) == (3, 1, 4)
    inv = invariants(3, 2)
    assert (inv.euler, inv.signature, inv.dimension) == (11, 3, 8)
    for u in range(4):
        for n in range(1, 5):
            assert invariants(2 * u + 1, n).euler == (2 * u + 1) * (2 * n - 1) + 2


@pytest.mark.parametrize("m,n", [(0, 1), (1, 0), (-2, 3)])
def test_invariants_reject_nonpositive(m, n):
    with pytest.raises(ValueError):
        invariants(m, n)


def test_hirzebruch_examples():
    assert hirzebruch_check(2, 1) is False
    assert hirzebruch_check(3, 2) is True
    assert all(hirzebruch_check(1, n) for n in range(1, 9))


def test_hirzebruch_matches_literal_mod4():
    for m in range(1, 21):
        for n in range(1, 9):
            chi, sigma = m * (2 * n - 1) + 2, m
            assert hirzebruch_check(m, n) == ((chi - (-1) ** n * sigma) % 4 == 0)


def test_acs_criterion_examples():
    rec = acs_criterion(SacsCoefficients(3, 1, {(1, 1): 2}))
    assert (rec.c_top, rec.chi, rec.verdict) == (5, 5, True)
    rec = acs_criterion(SacsCoefficients(1, 2))
    assert (rec.c_top, rec.chi, rec.verdict) == (5, 5, True)
    rec = acs_criterion(SacsCoefficients(2, 1, {(1, 1): 2, (2, 1): 2}))
    assert (rec.c_top, rec.chi, rec.verdict) == (-2, 4, False)


def test_prop31_witness_shape():
    assert prop31_witness(1, 3) == SacsCoefficients(1, 3)
    assert prop31_witness(5, 3) == SacsCoefficients(5, 3, {(1, 1): 2, (2, 1): 2})
    assert prop31_witness(5, 2).b == {}
    with pytest.raises(ValueError):
        prop31_witness(4, 2)


@pytest.mark.parametrize("m", [1, 3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_prop31_witness_verifies(m, n):
    rec = acs_criterion(prop31_witness(m, n))
    assert rec.verdict and rec.c_top == m * (2 * n - 1) + 2


def test_witness_record_json():
    rec = acs_criterion(prop31_witness(3, 2))
    blob = json.loads(json.dumps(rec.to_dict()))
    assert blob == {"m": 3, "n": 2, "coeffs": {"m": 3, "n": 2, "a": [{"j": 1, "k": 1, "value": 2}], "b": []},
                    "c_top": "11", "chi": 11, "verdict": True}
    assert WitnessRecord.from_dict(blob) == rec
