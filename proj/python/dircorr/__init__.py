"""Direct-correlation measures for three categorical variables X, Y, Z.

Joint distributions are passed as arrays of shape (d_X, d_Y, d_Z); any
non-negative weights are accepted and normalized.
"""

import numpy as np

from . import _dircorr
from ._dircorr import DircorrError, measure_names, rmi_max_uniform

__all__ = [
    "DircorrError",
    "achievable_bound",
    "analyze",
    "bootstrap_ci",
    "decision_model_joint",
    "evaluate",
    "evaluate_all",
    "measure_names",
    "rmi_max_uniform",
    "simple_model_joint",
]


def _flat(p):
    a = np.asarray(p, dtype=float)
    if a.ndim != 3:
        raise ValueError(f"expected a 3-d array (X, Y, Z), got shape {a.shape}")
    return a.ravel(order="C").tolist(), a.shape


def _array(flat_shape):
    flat, shape = flat_shape
    return np.asarray(flat, dtype=float).reshape(shape)


def evaluate(p, measure, strategy="b"):
    flat, shape = _flat(p)
    return _dircorr.evaluate(flat, shape, measure, strategy)


def evaluate_all(p, measures=(), strategy="b"):
    """Dict of measure id to value; undefined measures come back as NaN."""
    flat, shape = _flat(p)
    return _dircorr.evaluate_all(flat, shape, list(measures), strategy)


def achievable_bound(p, measure, strategy="b", cap=1 << 24):
    flat, shape = _flat(p)
    return _dircorr.achievable_bound(flat, shape, measure, strategy, cap)


def bootstrap_ci(counts, measure, resamples=1000, seed=20260419, strategy="b", level=0.95):
    """Percentile interval from integer cell counts of shape (d_X, d_Y, d_Z)."""
    c = np.asarray(counts)
    if c.ndim != 3:
        raise ValueError(f"expected a 3-d count array, got shape {c.shape}")
    if np.any(c < 0) or np.any(c != np.round(c)):
        raise ValueError("counts must be non-negative integers")
    return _dircorr.bootstrap_ci(c.astype(np.uint64).ravel().tolist(), c.shape, measure, resamples, seed,
                                 strategy, level)


def analyze(builtin="", data="", schema="", measures=(), bootstrap=0, seed=20260419, bounds=False,
            strategy="b", data_dir=""):
    return _dircorr.analyze(builtin, str(data), str(schema), list(measures), bootstrap, seed, bounds,
                            strategy, str(data_dir))


def decision_model_joint(q0=0.0, q1=0.0, q2=0.0, q3=0.0, q4=0.0):
    return _array(_dircorr.decision_model_joint(q0, q1, q2, q3, q4))


def simple_model_joint(lambda0=0.0, lambda1=0.0):
    return _array(_dircorr.simple_model_joint(lambda0, lambda1))
