"""Run configuration: tolerances, general-position policy, oracle resolution."""

from __future__ import annotations

from dataclasses import dataclass, field

# Coincidence tolerance is eps_factor times the bounding-box diagonal.
EPS_FACTOR = 1e-9

# General-position policies.
#   "default" rejects axis-parallel *straight* edges only; shared coordinates
#             and axis-parallel chords of curved edges are allowed and handled
#             by tie-aware sweeps.
#   "strict"  additionally rejects axis-parallel chords of curved edges and
#             vertex pairs sharing an x- or y-coordinate.
#   "perturb" accepts everything, applying a deterministic coordinate nudge
#             (lexicographic by (obstacle id, vertex index)) to break ties.
GP_DEFAULT = "default"
GP_STRICT = "strict"
GP_PERTURB = "perturb"


@dataclass(frozen=True)
class RunConfig:
    """Pipeline knobs forwarded to the individual modules."""

    mode: str = "general"              # "concave-in" | "general"
    eps_factor: float = EPS_FACTOR
    general_position: str = GP_DEFAULT
    oracle_resolution: float = 1.0 / 512.0
    bbox_margin_frac: float = 0.25     # margin as a fraction of max(extent, 1)
    arc_samples: int = 24              # base funnel sampling per full arc edge
    extra: dict = field(default_factory=dict)

    def with_mode(self, mode: str) -> "RunConfig":
        from dataclasses import replace

        return replace(self, mode=mode)


DEFAULT_CONFIG = RunConfig()
