"""Shared value types: Yangian parameters, generator sets and relation reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .errors import ConstraintViolated, DegenerateParams, DimensionMismatch, ValidationError

CONSTRAINT_TOL = 1e-12
RELATION_TOL = 1e-12


@dataclass(frozen=True)
class YangianParams:
    """Real parameters (mu, nu, lambda) of a two-site realization."""

    mu: float
    nu: float
    lam: float

    def __post_init__(self):
        for name in ("mu", "nu", "lam"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @classmethod
    def constrained(cls, nu: float, lam: float) -> "YangianParams":
        """Solve mu*nu = -lam**2/4 for mu."""
        if nu == 0:
            raise DegenerateParams("nu = 0 admits no constrained mu")
        return cls(-lam * lam / (4 * nu), nu, lam)

    @property
    def xi(self) -> float:
        return self.nu - self.lam / 2

    @property
    def total(self) -> float:
        return self.mu + self.nu

    def constraint_residual(self) -> float:
        return abs(self.mu * self.nu + self.lam**2 / 4)

    def constraint_ok(self, tol: float = CONSTRAINT_TOL) -> bool:
        return self.constraint_residual() <= tol

    def require_nondegenerate(self) -> None:
        if self.mu + self.nu == 0:
            raise DegenerateParams("mu + nu = 0: generators are undefined")

    def require_constraint(self, tol: float = CONSTRAINT_TOL) -> None:
        if not self.constraint_ok(tol):
            raise ConstraintViolated(
                f"mu*nu + lambda^2/4 = {self.mu * self.nu + self.lam**2 / 4:.3e} (constraint mu*nu = -lambda^2/4 required)"
            )

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "nu": self.nu,
            "lambda": self.lam,
            "xi": self.xi,
            "constraint_ok": self.constraint_ok(),
        }


SU2Params = YangianParams
SU3Params = YangianParams


@dataclass(frozen=True)
class GeneratorSet(Mapping):
    """Labelled generator matrices of one realization, all of the same size."""

    algebra: str
    dim: int
    members: dict = field(default_factory=dict)

    def __post_init__(self):
        for label, m in self.members.items():
            if np.shape(m) != (self.dim, self.dim):
                raise DimensionMismatch(f"{label} has shape {np.shape(m)}, expected {self.dim}x{self.dim}")

    def __getitem__(self, label: str) -> np.ndarray:
        return self.members[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class Relation:
    name: str
    residual: float
    tol: float = RELATION_TOL

    @property
    def holds(self) -> bool:
        return self.residual <= self.tol


@dataclass
class RelationReport:
    algebra: str
    params: YangianParams
    relations: list[Relation] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def add(self, name: str, residual: float, tol: float = RELATION_TOL) -> None:
        self.relations.append(Relation(name, float(residual), tol))

    def __getitem__(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.relations), default=0.0)

    def failing(self) -> list[Relation]:
        return [r for r in self.relations if not r.holds]
