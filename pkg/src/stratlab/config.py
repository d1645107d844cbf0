"""Analysis configuration: every tunable threshold in one place.

The classification thresholds (eta, eps, delta), the scale ratio gamma, and
the search/quadrature resolutions are deliberately user-facing knobs; none
of them is canonical, so runs always record the configuration they used.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np


@dataclass
class AnalysisConfig:
    gamma: float = 0.5          # scale ratio of the radius ladder
    eta: float = 0.05           # stratum membership threshold
    eps: float = 0.05           # H/L nonhomogeneity threshold
    delta: float = 0.5          # energy-drop threshold for bad scales
    tau: float = 0.1            # off-plane margin for cone splitting
    t_factor: float | None = None  # outer-scale factor; default gamma^{-n}
    j_max: int = 8              # ladder depth
    seed: int = 0

    # quadrature resolution
    q_rad: int = 48             # radial Gauss-Legendre order for energy integrals
    q_sph: int = 14             # sphere rule order for energy integrals
    defect_q_rad: int = 10      # radial order inside defect fits
    defect_q_ang: int = 8       # (|v|, t) corner-angle order inside defect fits
    defect_q_link: int = 12     # sphere order for link directions
    mc_threshold: int = 5       # dimensions >= this use Monte Carlo ball integrals
    mc_samples: int = 200_000

    # plane search
    net_size: int = 256         # Grassmannian net size for (n,k)=(3,1); scaled elsewhere
    refine_sweeps: int = 3
    refine_iters: int = 24
    refine_tol: float = 1e-12

    # regularity scale
    reg_bisect_tol: float = 1e-4   # relative to the domain cap
    reg_net_rad: int = 10
    reg_net_sph: int = 8

    # L^p sweeps
    lp_eps_ladder: tuple[float, ...] = tuple(2.0 ** (-j) for j in range(3, 11))

    # Monte-Carlo tube volumes
    tube_samples: int = 200_000

    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ValueError("gamma must lie in (0, 1)")
        for name in ("eta", "eps", "delta", "tau"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.gamma**self.j_max <= np.finfo(float).eps:
            raise ValueError("gamma^j_max is below machine resolution")

    def t_for(self, n: int) -> float:
        """Outer-scale factor for the nonhomogeneity labels."""
        return self.gamma ** (-n) if self.t_factor is None else self.t_factor

    def ladder(self, j_max: int | None = None) -> np.ndarray:
        j = self.j_max if j_max is None else j_max
        return self.gamma ** np.arange(j + 1)

    def plane_net_size(self, n: int, k: int) -> int:
        """Net size scaled with the Grassmannian dimension k(n-k)."""
        dim = k * (n - k)
        if dim == 0:
            return 1
        return int(self.net_size * 2.0 ** (dim - 2)) if dim != 2 else self.net_size

    def to_dict(self) -> dict:
        return asdict(self)
