"""Resource guard rails shared by the solver and the candidate enumerator."""

from __future__ import annotations

from dataclasses import dataclass


class ResourceLimitError(RuntimeError):
    """A configured resource ceiling would be exceeded.

    The message always names the limit (and, where relevant, the pipeline
    stage) so callers can tell which knob to raise.
    """


@dataclass(frozen=True)
class Limits:
    """Ceilings for the exhaustive parts of the solver.

    Attributes:
        oracle_max_side: largest per-side vertex count the brute-force
            oracle (and the census scan) will accept.
        max_candidates_per_side: cap on distinct candidate layouts kept
            per side during enumeration.
        max_pair_evaluations: cap on candidate-pair crossing evaluations
            in a single component search.
        max_gap_budget: cap on the per-side gap budget 4*k + a - 1; keeps
            a runaway k from silently requesting an absurd search.
        k_max_default: default ceiling for the exact-optimum driver.
    """

    oracle_max_side: int = 8
    max_candidates_per_side: int = 1 << 24
    max_pair_evaluations: int = 1 << 30
    max_gap_budget: int = 512
    k_max_default: int = 32


DEFAULT_LIMITS = Limits()
