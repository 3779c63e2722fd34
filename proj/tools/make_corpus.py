#!/usr/bin/env python3
"""Regenerate the problem files under corpus/ (run from the repository root)."""
import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "corpus"


def circle(c, r, role, orient):
    return {"kind": "circle", "center": [c.real, c.imag], "radius": r,
            "role": role, "orientation": orient}


def polygon(vertices, role, orient):
    # Order 5 grading: the order-3 default converges too slowly at the
    # acute triangle corners for the tolerances the corpus is checked at.
    return {"kind": "polygon", "vertices": [[v.real, v.imag] for v in vertices],
            "role": role, "orientation": orient, "grading": "polynomial", "grading_order": 5}


def square(x0, y0, side, role, orient):
    v = [complex(x0, y0), complex(x0 + side, y0), complex(x0 + side, y0 + side),
         complex(x0, y0 + side)]
    return polygon(v if orient == "ccw" else v[::-1], role, orient)


def write(name, curves, levels=None, n=256, **extra):
    doc = {"schema_version": 1, "curves": curves}
    if levels is not None:
        doc["levels"] = levels
    doc["n"] = n
    doc.update(extra)
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def cantor_intervals(k):
    iv = [(0.0, 1.0)]
    for _ in range(k):
        iv = [p for a, b in iv for p in ((a, a + (b - a) / 3), (b - (b - a) / 3, b))]
    return iv


def main():
    OUT.mkdir(exist_ok=True)

    for r in (0.25, 0.5, 0.75):
        write(f"two_circles_r{int(r * 100):03d}",
              [circle(0, 1.0, "plate", "cw"), circle(2, r, "plate", "cw")], [0, 1], n=1024)

    for a, b in ((0.1, 0.3), (0.3, 0.9)):
        h = (b - a) / math.sqrt(3)
        upper = [1j * a, -h + 1j * b, h + 1j * b]
        lower = [-1j * a, h - 1j * b, -h - 1j * b]
        outer = [1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]
        write(f"square_triangles_a{a:g}_b{b:g}".replace(".", ""),
              [polygon(upper, "plate", "cw"), polygon(lower, "plate", "cw"),
               polygon(outer, "plate", "ccw")], [1, 1, 0], n=2048)

    for k in (1, 2):
        iv = cantor_intervals(k)
        curves, levels = [], []
        for (y0, y1) in iv:
            for (x0, x1) in iv:
                curves.append(square(x0, y0, x1 - x0, "plate", "cw"))
                levels.append(0 if y1 <= 0.5 else 1)
        write(f"cantor_dust_k{k}", curves, levels, n=512)

    write("cantor_circle_k0",
          [square(0, 0, 1, "plate", "cw"), circle(0.5 + 0.5j, 1.0, "plate", "ccw")], [0, 1],
          n=512)

    plates = [circle(0, 1.0, "plate", "cw"), circle(2, 0.5, "plate", "cw")]
    write("six_circles_BI",
          plates + [circle(2j, 0.9, "wall", "cw"), circle(-2j, 0.9, "wall", "cw"),
                    circle(-2, 0.9, "wall", "cw"), circle(0, 3.0, "wall", "ccw")],
          [0, 0.9], n=1024)
    write("six_circles_BII",
          plates + [circle(1 + 3j, 2.0, "wall", "cw"), circle(1 - 3j, 2.0, "wall", "cw"),
                    circle(-2, 0.9, "wall", "cw"), circle(6, 3.0, "wall", "cw")],
          [0, 0.9], n=1024)

    write("five_circles",
          [circle(2, 1.0, "plate", "cw"), circle(2j, 1.0, "plate", "cw"),
           circle(-2, 1.0, "plate", "cw"), circle(-2j, 1.0, "plate", "cw"),
           circle(0, 4.0, "plate", "ccw")], [1, 2, 3, 4, 0], n=256)

    centre = square(1 / 3, 1 / 3, 1 / 3, "plate", "cw")
    outer = square(0, 0, 1, "plate", "ccw")
    write("carpet_k1", [centre, outer], [0, 1], n=1024)
    walls = [square(i / 3 + 1 / 9, j / 3 + 1 / 9, 1 / 9, "wall", "cw")
             for j in range(3) for i in range(3) if (i, j) != (1, 1)]
    write("carpet_k2", [centre, outer] + walls, [0, 1], n=1024)

    write("annulus_q050",
          [circle(0, 0.5, "plate", "cw"), circle(0, 1.0, "plate", "ccw")], [0, 1], n=1024,
          grid={"bounds": [-1, 1, -1, 1], "nx": 51, "ny": 51},
          points=[[math.sqrt(0.5), 0.0], [0.0, 0.75]])


if __name__ == "__main__":
    main()
