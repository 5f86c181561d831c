import numpy as np
import pytest

import orbithull as oh


def diag(*blocks):
    return [np.diag(np.asarray(b, dtype=complex)) for b in blocks]


def test_majorize_examples():
    assert oh.majorize(diag([0.5, 0.5]), diag([1.0, 0.0]))["holds"]
    v = oh.majorize(diag([1.0, 0.0]), diag([0.5, 0.5]))
    assert not v["holds"]
    assert v["witness"]["lhs"] > v["witness"]["rhs"]


def test_distances():
    assert oh.orbit_distance(diag([1.0, 1.0]), diag([1.0, 0.0])) == pytest.approx(0.5, abs=1e-12)
    d, witness = oh.submaj_distance(diag([2.0, 0.0]), diag([1.0, 0.0]))
    assert d == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(witness[0], np.diag([1.0, 0.0]))
    assert oh.orbit_distance_per_block(diag([1.0], [0.0, 0.0]), diag([1.0], [1.0, -1.0])) == [0.0, 0.0]


def test_zero_in_hull():
    assert oh.zero_in_hull(diag([1.0, -1.0]))["holds"]
    r = oh.zero_in_hull(diag([1.0, 1.0]))
    assert not r["holds"] and r["reason"] == "nonzero trace"


def test_synthesize_reconstructs():
    a, b = oh.generate_pair([3, 2], seed=4, kind="majorizing")
    cc = oh.synthesize(a, b, 1e-6)
    assert sum(cc["weights"]) == pytest.approx(1.0, abs=1e-12)
    for j in range(2):
        mix = sum(w * u[j] @ b[j] @ u[j].conj().T for w, u in zip(cc["weights"], cc["unitaries"]))
        assert np.linalg.norm(a[j] - mix, 2) <= 1e-6
    eq = oh.synthesize(a, b, 1e-6, equal_weights=16)
    assert all(abs(w * 16 - round(w * 16)) < 1e-12 for w in eq["weights"])


def test_pinch():
    r = oh.dixmier_pinch([3], [1], [2], [0.9], [0.3])
    assert r["rho"][0] == pytest.approx(0.5, abs=1e-15)
    assert r["certificate"]["target_error"] <= 1e-9


def test_probe_and_oracle():
    rows = oh.uniform_probe(2.0, [2, 3], trials=2, seed=1)
    assert [r[2] for r in rows] == [1, 1, 1, 1]
    d = oh.frank_wolfe_distance(diag([1.0, 1.0]), diag([1.0, 0.0]), restarts=5)
    assert 0.5 - 1e-12 <= d <= 0.51


def test_errors_raise():
    with pytest.raises(oh.OrbithullError):
        oh.majorize([np.array([[1.0, 2.0], [0.0, 1.0]])], diag([1.0, 0.0]))
    with pytest.raises(oh.OrbithullError):
        oh.synthesize(diag([0.5, 0.5]), diag([1.0, 0.0]), 0.0)
    with pytest.raises(ValueError):
        oh.generate_pair([2], seed=0, kind="sideways")
