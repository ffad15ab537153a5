"""Tests for certificate serialization and re-verification."""
import json

import pytest

from affinecover.certio import (
    CERT_VERSION,
    certificate_from_result,
    emit_certificate,
    load_certificate,
    parse_certificate,
    verify_certificate,
    write_certificate,
)
from affinecover.constructions import (
    ConstructionResult,
    binary_tree_grid,
    k2q_optimal,
    kn_small_plane_cover,
    nested_squares_two_lines,
    parallel_kpq_lines,
    pi13_drawing,
    pi23_drawing,
)
from affinecover.drawing import (
    Drawing,
    DrawingViolation,
    WitnessViolation,
    edge_line_count,
    verify_crossing_free,
)
from affinecover.graphs import complete_graph, path_graph


def _samples():
    return [
        ("kn_small_plane_cover", kn_small_plane_cover(6)),
        ("pi13_drawing", pi13_drawing(path_graph(5))),
        ("pi23_drawing", pi23_drawing(complete_graph(5), seed=1)),
        ("k2q_optimal", k2q_optimal(3)),
        ("parallel_kpq_lines", parallel_kpq_lines(2, 3)),
        ("binary_tree_grid", binary_tree_grid(3)),
        ("nested_squares_two_lines", nested_squares_two_lines(2)),
    ]


def _canonical_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode() + b"\n"


def test_round_trip_bytes_and_objects():
    for name, res in _samples():
        cert = certificate_from_result(res, name, seed=7)
        data = emit_certificate(cert)
        assert data.endswith(b"\n")
        # emit is canonical JSON: sorted keys, tight separators
        assert data == _canonical_bytes(json.loads(data))
        cert2 = parse_certificate(data)
        assert emit_certificate(cert2) == data  # byte-exact round trip
        assert cert2.version == CERT_VERSION
        assert cert2.graph == cert.graph
        assert cert2.drawing.points == cert.drawing.points
        assert cert2.witness.kind == cert.witness.kind
        assert cert2.witness.objects == cert.witness.objects
        assert cert2.witness.assignment == cert.witness.assignment
        assert cert2.witness.exact == cert.witness.exact
        assert cert2.meta == cert.meta
        verified = verify_certificate(cert2)
        assert verified.verified


def test_emit_deterministic():
    res = kn_small_plane_cover(5)
    c1 = certificate_from_result(res, "kn_small_plane_cover", seed=None)
    c2 = certificate_from_result(res, "kn_small_plane_cover", seed=None)
    assert emit_certificate(c1) == emit_certificate(c2)


def test_meta_fields():
    res = k2q_optimal(4)
    cert = certificate_from_result(res, "k2q_optimal", seed=3)
    assert cert.meta["construction"] == "k2q_optimal"
    assert cert.meta["seed"] == 3
    assert "tool" in cert.meta
    assert cert.meta["claimed_bound"] == res.claimed_bound


def test_write_and_load(tmp_path):
    res = kn_small_plane_cover(6)
    cert = certificate_from_result(res, "kn_small_plane_cover")
    path = tmp_path / "k6.json"
    write_certificate(cert, path)
    assert path.read_bytes() == emit_certificate(cert)
    loaded = load_certificate(path)
    assert emit_certificate(loaded) == emit_certificate(cert)
    assert verify_certificate(loaded).verified


def test_no_float_literals_in_emitted_json():
    for name, res in _samples():
        data = emit_certificate(certificate_from_result(res, name))

        def _reject(s):
            raise AssertionError(f"float literal {s!r} in certificate")

        json.loads(data, parse_float=_reject)


def test_big_integers_serialized_as_decimal_strings():
    big = 2**60
    d = verify_crossing_free(Drawing(path_graph(2), ((0, 0), (big, 1))))
    count, witness = edge_line_count(d)
    res = ConstructionResult(d, witness, count, (big, 1))
    cert = certificate_from_result(res, "manual")
    data = emit_certificate(cert)
    assert str(big).encode() in data
    assert b'"%d"' % big in data  # encoded as a string, not a JSON number
    cert2 = parse_certificate(data)
    assert emit_certificate(cert2) == data
    assert cert2.drawing.points[1][0] == big


def test_tampered_coordinate_fails_verification():
    res = kn_small_plane_cover(6)
    cert = certificate_from_result(res, "kn_small_plane_cover")
    obj = json.loads(emit_certificate(cert))
    # push one vertex off its assigned plane: bump a z numerator
    num, den = obj["drawing"][0][2]
    obj["drawing"][0][2] = [num + den, den]
    tampered = parse_certificate(_canonical_bytes(obj))
    with pytest.raises((DrawingViolation, WitnessViolation)):
        verify_certificate(tampered)


def _valid_payload():
    res = k2q_optimal(2)
    cert = certificate_from_result(res, "k2q_optimal")
    return json.loads(emit_certificate(cert))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.__setitem__("version", 2),
        lambda o: o.__setitem__("surprise", True),
        lambda o: o.pop("witness"),
        lambda o: o["drawing"][0].__setitem__(0, [2, 4]),  # unreduced
        lambda o: o["drawing"][0].__setitem__(0, [1, -2]),  # negative den
        lambda o: o["drawing"][0].__setitem__(0, [0.5, 1]),  # float
        lambda o: o["drawing"][0].__setitem__(0, ["5", 1]),  # small int as str
        lambda o: o["witness"].__setitem__(
            "assignment",
            {"0;1": 0},
        ),
        lambda o: o["witness"]["assignment"].update(
            {next(iter(o["witness"]["assignment"])): 99}
        ),  # object index out of range
        lambda o: o.__setitem__("graph", "this is not graph6 \x01"),
    ],
)
def test_malformed_certificates_rejected(mutate):
    obj = _valid_payload()
    mutate(obj)
    with pytest.raises(ValueError):
        parse_certificate(_canonical_bytes(obj))


def test_non_canonical_graph6_rejected():
    obj = _valid_payload()
    obj["graph"] = ">>graph6<<" + obj["graph"]
    with pytest.raises(ValueError):
        parse_certificate(_canonical_bytes(obj))
