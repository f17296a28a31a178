"""Regenerates the frozen surface presets in ../presets/.

Walls are geodesics in the Poincare disk given by ideal endpoint angles.
Generators are stored as real 2x2 matrices acting on the upper half-plane;
the library conjugates them into the disk with w -> (w - i)/(w + i).
"""
import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "presets"


def rot(angle):
    return np.array([[np.exp(0.5j * angle), 0], [0, np.exp(-0.5j * angle)]])


def move_origin_to(p):
    s = 1.0 / math.sqrt(1.0 - abs(p) ** 2)
    return np.array([[s, s * p], [s * np.conj(p), s]])


def half_turn(p):
    m = move_origin_to(p)
    return m @ rot(math.pi) @ np.linalg.inv(m)


def to_half_plane(m):
    alpha, beta = m[0, 0], m[0, 1]
    if alpha.real < 0:
        alpha, beta = -alpha, -beta
    a = alpha.real + beta.real
    d = alpha.real - beta.real
    b = alpha.imag - beta.imag
    c = -alpha.imag - beta.imag
    return [float(a), float(b), float(c), float(d)]


def wall(center, half_width):
    return [(center - half_width) % (2 * math.pi), (center + half_width) % (2 * math.pi)]


def schottky(name, description, centers, half_width, pairs):
    x0 = math.tan(math.pi / 4 - half_width / 2)
    walls = [wall(c, half_width) for c in centers]
    gens = []
    for s, t in pairs:
        m = rot(centers[t]) @ half_turn(x0) @ rot(-centers[s])
        gens.append({"matrix": to_half_plane(m), "source": s, "target": t})
    return {
        "name": name,
        "description": description,
        "rank": len(pairs),
        "walls": walls,
        "generators": gens,
        "base_point": [0.0, 0.0],
    }


def main():
    q = math.pi / 2
    presets = [
        {
            "name": "punctured_torus",
            "description": "once-punctured torus: ideal square with vertices at 1, i, -1, -i; "
            "generators [[1,1],[1,2]] and [[1,-1],[-1,2]]",
            "rank": 2,
            "walls": [[0.0, q], [math.pi, 3 * q], [0.0, 3 * q], [q, math.pi]],
            "generators": [
                {"matrix": [1.0, 1.0, 1.0, 2.0], "source": 0, "target": 1},
                {"matrix": [1.0, -1.0, -1.0, 2.0], "source": 2, "target": 3},
            ],
            "base_point": [0.0, 0.0],
        },
        schottky(
            "thrice_punctured_sphere_thickened",
            "pair of pants with three flare ends; adjacent walls paired",
            [0.0, q, math.pi, 3 * q],
            math.pi / 6,
            [(2, 1), (0, 3)],
        ),
        schottky(
            "genus2_funnel",
            "rank-4 Schottky group, octagon pattern a b A B c d C D, one flare end",
            [k * math.pi / 4 for k in range(8)],
            math.pi / 12,
            [(0, 2), (1, 3), (4, 6), (5, 7)],
        ),
        schottky(
            "annulus",
            "rank-1 hyperbolic cylinder (twice-punctured sphere)",
            [0.0, math.pi],
            math.pi / 4,
            [(1, 0)],
        ),
    ]
    for p in presets:
        (OUT / f"{p['name']}.json").write_text(json.dumps(p, indent=2) + "\n")


if __name__ == "__main__":
    main()
