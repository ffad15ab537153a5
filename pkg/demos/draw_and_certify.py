"""Draw a graph on few lines, write the certificate, and re-verify it.

Takes the triangulated square wheel (9 vertices), computes the smallest
number of 3D lines whose union can hold all vertices with the straight-
line drawing staying crossing-free, builds such a drawing, round-trips it
through the on-disk certificate format, and re-checks everything from the
parsed bytes alone.
"""
import tempfile
from pathlib import Path

from affinecover.certio import certificate_from_result, load_certificate, verify_certificate, write_certificate
from affinecover.constructions import pi13_drawing
from affinecover.graphs import triangulated_square_wheel
from affinecover.solvers import lva_exact

g = triangulated_square_wheel()
print(f"graph: triangulated square wheel, n={g.n}, m={g.m}")

value = lva_exact(g).value
res = pi13_drawing(g)
print(f"exact line-partition number: {value}")
print(f"drawing uses {res.witness.count} lines, box {res.box}, verified={res.drawing.verified}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "wheel.cert.json"
    cert = certificate_from_result(res, construction="pi13_drawing")
    write_certificate(cert, path)
    print(f"certificate written: {path.name}, {path.stat().st_size} bytes")

    reloaded = load_certificate(path)
    drawing = verify_certificate(reloaded)
    print(f"reloaded certificate re-verified from scratch: {drawing.verified}")
