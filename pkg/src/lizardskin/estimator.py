"""scikit-learn compatible wrapper around the majority-rule automaton.

Each sample is one field flattened row-major, so a batch of fields on a
``height x width`` lattice is an ``(n_samples, width * height)`` array.
``fit`` only validates and records the lattice; ``transform`` evolves each
field until it settles or the action budget runs out.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_field_array, resolve_grid_shape
from .automaton import DEFAULT_CYCLE_WINDOW, MajorityRule, RunTrace, run
from .field import Field
from .lattice import LatticeSpec


class MajorityPatternTransformer(TransformerMixin, BaseEstimator):
    """Evolve fields with synchronous majority-rule actions.

    Parameters
    ----------
    lattice : {"hex", "quad"}, default="hex"
    width, height : int or None
        Grid dimensions. When both are None the grid is assumed square.
    boundary : {"periodic", "clamped"}, default="periodic"
    quad_neighborhood : {"vn4", "moore8"}, default="vn4"
        Ignored for hexagonal lattices.
    n_states : int, default=2
    max_actions : int, default=50
    cycle_window : int, default=64
        How many recent fields are remembered for limit-cycle detection.

    Attributes
    ----------
    lattice_ : LatticeSpec
    n_features_in_ : int
    """

    def __init__(
        self,
        lattice="hex",
        width=None,
        height=None,
        boundary="periodic",
        quad_neighborhood="vn4",
        n_states=2,
        max_actions=50,
        cycle_window=DEFAULT_CYCLE_WINDOW,
    ):
        self.lattice = lattice
        self.width = width
        self.height = height
        self.boundary = boundary
        self.quad_neighborhood = quad_neighborhood
        self.n_states = n_states
        self.max_actions = max_actions
        self.cycle_window = cycle_window

    def fit(self, X, y=None):
        X = check_field_array(X, self.n_states)
        width, height = resolve_grid_shape(X.shape[1], self.width, self.height)
        self.lattice_ = LatticeSpec(
            self.lattice, width, height, self.boundary, self.quad_neighborhood
        )
        self.n_features_in_ = X.shape[1]
        return self

    def _runs(self, X):
        check_is_fitted(self, "lattice_")
        X = check_field_array(X, self.n_states, self.n_features_in_)
        rule = MajorityRule()
        for row in X:
            f0 = Field(self.lattice_, row, self.n_states)
            trace, _ = run(f0, self.lattice_, rule, self.max_actions, (), self.cycle_window)
            yield trace

    def transform(self, X):
        """Final field of each run, flattened; same shape as ``X``."""
        return np.stack([t.final_field.states.astype(np.int64) for t in self._runs(X)])

    def evolve(self, X) -> list[RunTrace]:
        """Full run traces (changes per action, termination) for each sample."""
        return list(self._runs(X))
