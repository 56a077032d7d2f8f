from __future__ import annotations

from dataclasses import asdict, dataclass, field

from ..shared.exceptions import ValidationException


@dataclass(frozen=True)
class ScalingPoint:
    n_qubits: int
    width: float
    y: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValidationException(
                "scaling point needs a positive standard error",
                details={"n_qubits": self.n_qubits, "width": self.width, "sigma": self.sigma},
            )


@dataclass(frozen=True)
class SearchBox:
    w_c: tuple[float, float]
    nu: tuple[float, float]
    zeta: tuple[float, float]

    def __post_init__(self):
        for name in ("w_c", "nu", "zeta"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValidationException(f"search box bound {name} must satisfy lo < hi", details={name: [lo, hi]})
        if self.nu[0] <= 0:
            raise ValidationException("search box must keep nu > 0", details={"nu": list(self.nu)})

    @property
    def bounds(self) -> list[tuple[float, float]]:
        return [self.w_c, self.nu, self.zeta]


@dataclass(frozen=True)
class CollapseCost:
    value: float
    contributing: int
    excluded: int


@dataclass(frozen=True)
class Crossing:
    n_pair: tuple[int, int]
    w_cross: float


@dataclass(frozen=True)
class VariancePeak:
    n_qubits: int
    width: float
    value: float
    interior: bool


@dataclass(frozen=True)
class CollapseFit:
    w_c: float
    nu: float
    zeta: float
    cost: float
    w_c_err: float = 0.0
    nu_err: float = 0.0
    zeta_err: float = 0.0
    excluded_points: int = 0
    converged: bool = True
    iterations: int = 0
    evaluations: int = 0
    bootstrap_samples: int = 0

    def __post_init__(self):
        if not self.nu > 0:
            raise ValidationException("fitted nu must be positive", details={"nu": self.nu})

    @property
    def zeta_over_nu(self) -> float:
        return self.zeta / self.nu


@dataclass(frozen=True)
class FitReport:
    observable: str
    fit: CollapseFit
    crossings: tuple[Crossing, ...] = ()
    variance_peaks: tuple[VariancePeak, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "observable": self.observable,
            "w_c": self.fit.w_c,
            "nu": self.fit.nu,
            "zeta": self.fit.zeta,
            "cost": self.fit.cost,
            "w_c_err": self.fit.w_c_err,
            "nu_err": self.fit.nu_err,
            "zeta_err": self.fit.zeta_err,
            "excluded_points": self.fit.excluded_points,
            "converged": self.fit.converged,
            "iterations": self.fit.iterations,
            "bootstrap_samples": self.fit.bootstrap_samples,
            "nu_zeta_ratio": self.fit.nu / self.fit.zeta if self.fit.zeta else None,
            "crossings": [{"N": list(c.n_pair), "w_cross": c.w_cross} for c in self.crossings],
            "variance_peaks": [asdict(p) for p in self.variance_peaks],
        }


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    rms_residual: float = 0.0
