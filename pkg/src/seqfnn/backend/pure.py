"""NumPy reference implementation of the per-step kernels.

These five functions are the only code on the hot path of stepping and
fine-tuning a network. ``seqfnn.backend._speedups`` mirrors them in Cython;
either implementation may be active (see ``seqfnn.backend``).

Conventions: state vectors are flat float64 arrays laid out dimension-major,
i.e. o1[k*n + (i-1)] holds the i-th power sum of input dimension k and
o3[k*d + (i-1)] holds the output of memory filter i for dimension k.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateActivationError


def accumulate_powers(o1: np.ndarray, x: np.ndarray, n: int) -> None:
    """Add x, x^2, ..., x^n elementwise into the identity accumulators.

    Powers are built by repeated multiplication so that scalar re-derivations
    reproduce the values bit for bit.
    """
    view = o1.reshape(-1, n)
    col = x
    view[:, 0] += col
    for i in range(1, n):
        col = col * x
        view[:, i] += col


def lowpass_update(o3: np.ndarray, v: np.ndarray, lam: np.ndarray) -> None:
    """One step of the memory filter bank: o3 <- lam*o3 + (1-lam)*v."""
    view = o3.reshape(-1, lam.shape[0])
    view *= lam
    view += (1.0 - lam) * v[:, None]


def sq_distances(centers: np.ndarray, inv_w2: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Squared distance of v to every center, scaled by 1/width^2.

    This is the (negated) Gaussian log-membership of v in each fuzzy set.
    """
    diff = centers - v
    return (diff * diff).sum(axis=1) * inv_w2


def phi_from_rules(z_seq: np.ndarray, z_samp: np.ndarray,
                   rule_seq: np.ndarray, rule_samp: np.ndarray) -> np.ndarray:
    """Normalized rule strengths from the two distance vectors.

    Rule i fires with exp(-(z_seq[rule_seq[i]] + z_samp[rule_samp[i]])).
    Normalization is done on exponents shifted by their minimum, which is
    exactly the ratio of the true activations but immune to underflow when
    every activation is astronomically small.
    """
    z = z_seq[rule_seq] + z_samp[rule_samp]
    zmin = z.min()
    if not np.isfinite(zmin):
        raise DegenerateActivationError("no rule has a finite activation")
    mu = np.exp(zmin - z)
    return mu / mu.sum()


def tune_inner(weights: np.ndarray, phi: np.ndarray, y: np.ndarray,
               target: np.ndarray, eta: float, beta: float,
               theta3: float, iter_max: int) -> tuple[float, int, float]:
    """Iterate the per-sample weight update at fixed phi until E <= theta3.

    Mutates ``weights`` and ``y`` in place; returns (final error, iterations
    used, decayed eta). Each pass applies w_i -= eta*(y - target)*phi_i,
    recomputes y = phi @ W and discounts eta by beta.
    """
    err = y - target
    e = float(err @ err)
    iters = 0
    while iters < iter_max and e > theta3:
        iters += 1
        weights -= eta * phi[:, None] * err[None, :]
        y[:] = phi @ weights
        err = y - target
        e = float(err @ err)
        eta = beta * eta
    return e, iters, eta
