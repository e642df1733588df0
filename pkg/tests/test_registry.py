import json

import pytest

from overcubic import registry
from overcubic.registry import REGISTRY, IdentityRecord, UnknownIdentity, verify_identity, verify_record

EXACT = ["1-1", "2-5", "2-6", "2-7", "2-8", "3-2", "3-3", "3-4", "3-5", "3-10", "3-11",
         "4-5", "a-1", "4-6", "4-12", "4-14", "4-15", "3-12-i"]


def test_registry_contents():
    assert sorted(registry.exact_ids()) == sorted(EXACT)
    modular = {
        "2-1": 128, "2-2": 128, "2-3": 128, "2-4": 128, "3-1": 64, "3-6": 8, "3-7": 64,
        "3-8": 64, "3-9": 64, "3-12": 64, "3-12-ii": 2, "3-15": 128, "u-32n+24": 64,
        "4-2": 128, "4-3": 128, "4-4": 128, "4-7": 128, "4-9": 128, "4-10": 128, "4-11": 128,
        "4-13": 128, "u-144n+42": 128, "u-144n+138": 128, "u-mod3": 3, "4-18": 3, "4-19": 3,
        "4-20": 128, "4-21": 128, "4-22": 128, "4-26": 128, "4-26-1": 128, "4-30": 128,
        "4-31": 128, "4-32": 128,
    }
    assert {i: REGISTRY[i].modulus for i in registry.modular_ids()} == modular


def test_two_dissection_of_reciprocal_f1_squared():
    assert verify_identity("2-6", 500).passed


def test_theta_bracket_vanishes_mod_64():
    r = verify_identity("3-12", 300)
    assert r.passed and r.range_checked == 300


def test_corrupted_dissection_fails_at_first_bad_exponent():
    rec = IdentityRecord("2-7-flipped", ("1/f1^4", "f4^14/(f2^14*f8^4) - 4*q*f4^2*f8^4/f2^10"), 0, "")
    r = verify_record(rec, 200)
    assert not r.passed
    # 1/f1^4 = 1 + 4q + ...; the flipped sign gives 1 - 4q + ...
    assert r.counterexample == (1, 8)


def test_chain_reports_failing_link():
    rec = IdentityRecord("chain", ("phi(1)", "f2^5/(f1^2*f4^2)", "1 + 2*q"), 0, "")
    r = verify_record(rec, 10)
    assert not r.passed and r.counterexample[0] == 4 and "side 3" in r.detail


def test_unknown_id():
    with pytest.raises(UnknownIdentity):
        verify_identity("9-99", 10)


def test_export_round_trips_through_json():
    doc = json.loads(json.dumps(registry.export()))
    assert {d["id"] for d in doc} == set(REGISTRY)
    row = next(d for d in doc if d["id"] == "2-6")
    assert row["modulus"] == 0 and row["lhs"] == "1 / f1^2" and "Eq. (2-6)" in row["citation"]


@pytest.mark.parametrize("id", sorted(REGISTRY))
def test_every_record_at_order_120(id):
    assert verify_identity(id, 120).passed
