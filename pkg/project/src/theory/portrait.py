from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..dynamics.classical import classical_trajectory
from ..hilbert.domains import BlochAngles
from .operations import angles_to_sphere

PORTRAIT_COLUMNS = ["theta", "phi", "step", "X", "Y", "Z"]


@dataclass(frozen=True)
class PortraitPoint:
    theta: float
    phi: float
    step: int
    x: float
    y: float
    z: float

    def to_row(self) -> dict:
        return {"theta": self.theta, "phi": self.phi, "step": self.step, "X": self.x, "Y": self.y, "Z": self.z}


def phase_portrait(
    k: float, thetas: Sequence[float], phis: Sequence[float], steps: int
) -> Iterator[PortraitPoint]:
    """(θ, φ) 격자의 각 점에서 고전 사상을 steps 번 반복한 점 구름."""
    for theta in thetas:
        for phi in phis:
            x, y, z = angles_to_sphere(BlochAngles(theta, phi))
            trajectory = classical_trajectory(x, y, z, k, steps)
            for step, (px, py, pz) in enumerate(trajectory):
                yield PortraitPoint(theta, phi, step, float(px), float(py), float(pz))
