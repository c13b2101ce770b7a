"""Serialization round trips and independent re-verification."""

import copy
import json

import pytest

from perfectcover.certificates import (
    dumps_certificate,
    serialize_certificate,
    verify_certificate,
)
from perfectcover.construction import construct


@pytest.fixture(scope="module")
def a5_cert(groups):
    cert = construct((groups["A5"],), d=2, k=1, names=("A5",), seed=7, budget=2)
    return serialize_certificate(cert)


@pytest.fixture(scope="module")
def e16_cert(groups):
    cert = construct((groups["E16A5"],), d=2, k=2, names=("E16A5",), seed=7, budget=2)
    return serialize_certificate(cert)


def test_round_trip_is_valid(a5_cert):
    data = json.loads(dumps_certificate(a5_cert))
    report = verify_certificate(data)
    assert report.valid, report.lines()


def test_verification_is_pure(a5_cert):
    first = verify_certificate(a5_cert)
    second = verify_certificate(a5_cert)
    assert first.lines() == second.lines()


def test_version_mismatch_refused(a5_cert):
    data = copy.deepcopy(a5_cert)
    data["version"] = "0.0.0"
    report = verify_certificate(data)
    assert not report.valid
    assert "version" in report.message
    forced = verify_certificate(data, force_version=True)
    assert forced.valid


def test_not_a_certificate():
    report = verify_certificate({"format": "something-else"})
    assert not report.valid


def test_dropped_T_generator_rejected(a5_cert):
    data = copy.deepcopy(a5_cert)
    assert data["levels"][0]["T_entries"]
    data["levels"][0]["T_entries"].pop(0)
    report = verify_certificate(data)
    assert not report.valid
    assert report.failed_steps()[0] == "s-in-T"


def test_perturbed_q_coordinate_rejected(e16_cert):
    data = copy.deepcopy(e16_cert)
    perturbed = False
    for lvl in data["levels"]:
        for factor in lvl["factors"]:
            coords = factor["q_coords"]
            if coords is None:
                continue
            coords[0][0][0] = (coords[0][0][0] + 1) % max(factor["module_orders"][0], 2)
            perturbed = True
            break
        if perturbed:
            break
    assert perturbed
    report = verify_certificate(data)
    assert not report.valid
    assert report.failed_steps()[0] == "q-decomposition"


def test_non_commutator_word_rejected(a5_cert):
    data = copy.deepcopy(a5_cert)
    data["levels"][0]["words"][0] = "x1"
    report = verify_certificate(data)
    assert not report.valid
    assert report.failed_steps()[0] == "words"


def test_wrong_gamma_order_rejected(a5_cert):
    data = copy.deepcopy(a5_cert)
    data["levels"][0]["gamma"]["order"] += 1
    data["gamma"] = data["levels"][0]["gamma"]
    report = verify_certificate(data)
    assert not report.valid
    assert "gamma-perfect" in report.failed_steps()


def test_foreign_gamma_generator_rejected(a5_cert):
    data = copy.deepcopy(a5_cert)
    data["levels"][0]["gamma"]["generators"].append({"0": "(1 2 3)"})
    data["gamma"] = data["levels"][0]["gamma"]
    report = verify_certificate(data)
    assert not report.valid
    assert "gamma-perfect" in report.failed_steps()


def test_byte_identical_rerun(groups, a5_cert):
    again = construct((groups["A5"],), d=2, k=1, names=("A5",), seed=7, budget=2)
    assert dumps_certificate(serialize_certificate(again)) == dumps_certificate(a5_cert)


def test_different_seed_still_valid(groups):
    cert = construct((groups["A5"],), d=2, k=1, names=("A5",), seed=8, budget=2)
    report = verify_certificate(serialize_certificate(cert))
    assert report.valid
