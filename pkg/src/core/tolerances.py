from __future__ import annotations

from dataclasses import dataclass, replace

from core.errors import ConfigError


@dataclass(frozen=True)
class Tolerances:
    # deriv_rel applies to analytic/dual derivatives; fd_rel to the central-difference fallback.
    deriv_rel: float = 1e-8
    fd_rel: float = 1e-5
    quad_abs: float = 1e-10
    newton_tol: float = 1e-12
    max_newton_iter: int = 64

    def __post_init__(self) -> None:
        for name in ("deriv_rel", "fd_rel", "quad_abs", "newton_tol"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ConfigError(f"tolerances.{name} must be > 0, got {value}")
        if int(self.max_newton_iter) < 1:
            raise ConfigError(f"tolerances.max_newton_iter must be >= 1, got {self.max_newton_iter}")

    def with_overrides(self, **overrides: float | int) -> "Tolerances":
        return replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()
