"""Numerical tolerances, kept in one place."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-8        # zeta vs regularized-determinant ratio, scaling law
    invariant: float = 1e-10      # anomalous dimension, multiplicativity, root residuals
    special: float = 1e-12        # log-gamma / Hurwitz zeta
    weil: float = 1e-9            # | |lambda| - q^(i/2) | relative
    vanishing: float = 1e-10      # |s - alpha_k| below this counts as a zero mode
    branch: float = 1e-14         # distance to the Arg = pi cut that is refused
    matrix_log: float = 1e-9      # q^Theta vs M, max-norm
    cluster: float = 1e-4         # eigenvalues closer than this (relative) share a generalized eigenspace

    def with_overrides(self, **kw):
        return replace(self, **kw)


DEFAULT_TOLERANCES = Tolerances()

ENUMERATION_LIMIT = 2 ** 24
