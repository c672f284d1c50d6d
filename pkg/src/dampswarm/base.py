"""scikit-learn style front end shared by the optimizers.

An optimizer is "fitted" to an objective: ``fit`` runs the swarm and stores
the outcome in trailing-underscore attributes, while ``get_params`` /
``set_params`` / ``sklearn.base.clone`` behave as for any estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .objectives import as_objective
from .validation import check_seed


class BaseSwarmOptimizer(BaseEstimator):
    """Subclasses define ``_make_params`` and ``_run(objective, params, seed, callback)``."""

    def fit(self, objective, bounds=None, callback=None):
        """Minimize ``objective`` inside its box.

        Parameters
        ----------
        objective : ObjectiveSpec, str or callable
            A spec, a registry name, or a plain function of a 1-d array.
        bounds : optional
            Required when ``objective`` is a plain callable; see
            :func:`dampswarm.validation.check_bounds`.
        callback : callable, optional
            Called with the :class:`SwarmState` after every iteration.

        Returns
        -------
        self
        """
        spec = as_objective(objective, bounds)
        params = self._make_params()
        seed = check_seed(self.random_state)
        result = self._run(spec, params, seed, callback)
        self.objective_ = spec
        self.params_ = params
        self.result_ = result
        self.best_pos_ = result.best_pos
        self.best_val_ = result.best_val
        self.trace_ = np.asarray(result.trace.best_so_far)
        self.seed_ = result.seed
        self.n_evaluations_ = result.evaluations
        self.wall_time_ = result.wall_time_s
        return self

    def score(self, objective=None, bounds=None):
        """Negated best value, so that larger is better as sklearn expects."""
        check_is_fitted(self, "result_")
        return -self.best_val_
