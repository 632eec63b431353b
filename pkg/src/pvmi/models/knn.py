"""k-nearest-neighbour regression on standardized inputs.

Prediction is the mean target of the k training rows closest in Euclidean
distance. Distances are computed in the standardized feature space so that
no single channel dominates.
"""

from __future__ import annotations

import numpy as np

from .scaling import FeatureScaler

_QUERY_CHUNK = 512


class KNNRegressor:
    family = "knn"

    def __init__(self, scaler: FeatureScaler, inputs_scaled: np.ndarray,
                 targets: np.ndarray, k: int):
        if not 1 <= k <= inputs_scaled.shape[0]:
            raise ValueError(
                f"k must lie in [1, {inputs_scaled.shape[0]}], got {k}"
            )
        self.scaler = scaler
        self._x = inputs_scaled
        self._x_sq = (inputs_scaled ** 2).sum(axis=1)
        self._y = targets
        self.k = int(k)

    @classmethod
    def fit(cls, inputs: np.ndarray, targets: np.ndarray, k: int) -> "KNNRegressor":
        scaler = FeatureScaler.fit(inputs)
        return cls(scaler, scaler.transform(inputs), targets.copy(), k)

    def predict(self, x: np.ndarray) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        q = self.scaler.transform(np.atleast_2d(x))
        out = np.empty(q.shape[0])
        for lo in range(0, q.shape[0], _QUERY_CHUNK):
            hi = min(lo + _QUERY_CHUNK, q.shape[0])
            chunk = q[lo:hi]
            d2 = (chunk ** 2).sum(axis=1)[:, None] - 2.0 * chunk @ self._x.T + self._x_sq
            if self.k >= self._x.shape[0]:
                idx = np.broadcast_to(np.arange(self._x.shape[0]), d2.shape)
            else:
                idx = np.argpartition(d2, self.k - 1, axis=1)[:, : self.k]
            out[lo:hi] = self._y[idx].mean(axis=1)
        return float(out[0]) if single else out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "inputs_scaled": self._x.tolist(),
            "targets": self._y.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict, scaler: FeatureScaler) -> "KNNRegressor":
        return cls(scaler, np.array(doc["inputs_scaled"]), np.array(doc["targets"]),
                   int(doc["k"]))
