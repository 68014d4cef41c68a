"""Triangle meshes of balanced configurations, with OBJ export."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .catenoid import BalancedConfiguration


@dataclass
class TriMesh:
    vertices: np.ndarray  # (V, 3)
    faces: np.ndarray  # (F, 3), zero-based
    boundary: np.ndarray  # indices of vertices on the unit sphere

    def area(self) -> float:
        v = self.vertices[self.faces]
        cross = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
        return 0.5 * float(np.linalg.norm(cross, axis=1).sum())

    def to_obj(self, header: str | None = None) -> str:
        out = io.StringIO()
        if header:
            for line in header.splitlines():
                out.write(f"# {line}\n")
        for x, y, z in self.vertices:
            out.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")
        for a, b, c in self.faces + 1:
            out.write(f"f {a} {b} {c}\n")
        return out.getvalue()


class _Builder:
    def __init__(self, segments: int):
        self.segments = segments
        self.theta = 2.0 * math.pi * np.arange(segments) / segments
        self.verts: list[np.ndarray] = []
        self.faces: list[np.ndarray] = []
        self.boundary: list[np.ndarray] = []
        self.count = 0

    def ring(self, t: float, r: float, on_sphere: bool = False) -> np.ndarray:
        pts = np.column_stack([np.full(self.segments, t), r * np.cos(self.theta),
                               r * np.sin(self.theta)])
        idx = np.arange(self.count, self.count + self.segments)
        self.verts.append(pts)
        self.count += self.segments
        if on_sphere:
            self.boundary.append(idx)
        return idx

    def point(self, t: float) -> int:
        self.verts.append(np.array([[t, 0.0, 0.0]]))
        self.count += 1
        return self.count - 1

    def fan(self, center: int, ring: np.ndarray, flip: bool) -> None:
        nxt = np.roll(ring, -1)
        tri = np.column_stack([np.full(len(ring), center), ring, nxt])
        self.faces.append(tri[:, [0, 2, 1]] if flip else tri)

    def strip(self, r0: np.ndarray, r1: np.ndarray) -> None:
        n0, n1 = np.roll(r0, -1), np.roll(r1, -1)
        # winding gives outward normals, matching the first cap along the shared circle
        self.faces.append(np.column_stack([r0, n1, n0]))
        self.faces.append(np.column_stack([r0, r1, n1]))

    def build(self) -> TriMesh:
        b = np.concatenate(self.boundary) if self.boundary else np.zeros(0, dtype=int)
        return TriMesh(np.vstack(self.verts), np.vstack(self.faces).astype(int), b)


def mesh(cfg: BalancedConfiguration, segments: int = 64, rings: int = 64) -> TriMesh:
    """Triangulate the caps as fans and each catenoid band as a quad strip.

    Band rings are uniform in the conformal coordinate s; the two end rings
    are placed exactly on the recorded intersections with the sphere.
    """
    if segments < 3 or rings < 2:
        raise ValueError("need segments >= 3 and rings >= 2")
    B = _Builder(segments)
    b1, bN = cfg.cap_latitudes
    # caps: the first cap faces +t, the last faces -t
    first = B.ring(math.cos(b1), math.sin(b1), on_sphere=True)
    B.fan(B.point(math.cos(b1)), first, flip=False)
    for piece in cfg.pieces:
        c = piece.catenary
        s_lo, s_hi = piece.s_range
        prev = None
        for j, s in enumerate(np.linspace(s_hi, s_lo, rings)):
            edge = j in (0, rings - 1)
            t = piece.t_range[1] if j == 0 else piece.t_range[0] if j == rings - 1 else c.b + c.a * s
            ring = B.ring(t, c.r(t), on_sphere=edge)
            if prev is not None:
                B.strip(prev, ring)
            prev = ring
    last = B.ring(math.cos(bN), math.sin(bN), on_sphere=True)
    B.fan(B.point(math.cos(bN)), last, flip=True)
    return B.build()
