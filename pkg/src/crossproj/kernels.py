"""Numeric hot paths: similarity matrices, softmax, and log-domain Sinkhorn.

Every kernel has a numba-compiled implementation and a pure-numpy fallback.
The backend is chosen from the CROSSPROJ_KERNELS environment variable
("numba" or "numpy"), defaulting to numba when it imports.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_backend: str | None = None


def set_backend(name: str | None) -> None:
    """Force a backend ("numba" or "numpy"); None re-reads the environment."""
    global _backend
    if name is not None:
        if name not in ("numba", "numpy"):
            raise ValueError(f"unknown kernel backend {name!r}")
        if name == "numba" and not HAVE_NUMBA:
            raise ValueError("numba backend requested but numba is not importable")
    _backend = name


def active_backend() -> str:
    if _backend is not None:
        return _backend
    env = os.environ.get("CROSSPROJ_KERNELS", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not HAVE_NUMBA:
            return "numpy"
        return env
    return "numba" if HAVE_NUMBA else "numpy"


# -- numpy implementations ----------------------------------------------------

def _pairwise_dot_np(src: np.ndarray, tgt: np.ndarray) -> np.ndarray:
    return tgt @ src.T


def _softmax_rows_np(values: np.ndarray, temperature: float) -> np.ndarray:
    scaled = values / temperature
    shifted = scaled - scaled.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _logsumexp_np(a: np.ndarray, axis: int) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    out = np.log(np.sum(np.exp(a - m), axis=axis)) + np.squeeze(m, axis=axis)
    return out


def _sinkhorn_log_np(cost, log_mu, log_nu, eps, max_iters, tol, history):
    nu = np.exp(log_nu)
    logK = -cost / eps
    q, p = cost.shape
    f = np.zeros(q)
    g = np.zeros(p)
    it = 0
    res = np.inf
    for it in range(1, max_iters + 1):
        f = log_nu - _logsumexp_np(logK + g[None, :], axis=1)
        g = log_mu - _logsumexp_np(logK + f[:, None], axis=0)
        plan = np.exp(logK + f[:, None] + g[None, :])
        res = float(np.max(np.abs(plan.sum(axis=1) - nu)))
        history[it - 1] = res
        if res < tol:
            break
    plan = np.exp(logK + f[:, None] + g[None, :])
    return plan, it, res


# -- numba implementations ----------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _pairwise_dot_nb(src, tgt):
        p, d = src.shape
        q = tgt.shape[0]
        out = np.empty((q, p))
        for j in range(q):
            for i in range(p):
                s = 0.0
                for k in range(d):
                    s += src[i, k] * tgt[j, k]
                out[j, i] = s
        return out

    @njit(cache=True)
    def _softmax_rows_nb(values, temperature):
        q, p = values.shape
        out = np.empty((q, p))
        for j in range(q):
            m = values[j, 0] / temperature
            for i in range(1, p):
                v = values[j, i] / temperature
                if v > m:
                    m = v
            s = 0.0
            for i in range(p):
                e = np.exp(values[j, i] / temperature - m)
                out[j, i] = e
                s += e
            for i in range(p):
                out[j, i] /= s
        return out

    @njit(cache=True)
    def _sinkhorn_log_nb(cost, log_mu, log_nu, eps, max_iters, tol, history):
        q, p = cost.shape
        logK = -cost / eps
        f = np.zeros(q)
        g = np.zeros(p)
        it = 0
        res = np.inf
        for it in range(1, max_iters + 1):
            for j in range(q):
                m = -np.inf
                for i in range(p):
                    v = logK[j, i] + g[i]
                    if v > m:
                        m = v
                if m == -np.inf:
                    f[j] = -np.inf
                    continue
                s = 0.0
                for i in range(p):
                    s += np.exp(logK[j, i] + g[i] - m)
                f[j] = log_nu[j] - (m + np.log(s))
            for i in range(p):
                m = -np.inf
                for j in range(q):
                    v = logK[j, i] + f[j]
                    if v > m:
                        m = v
                if m == -np.inf:
                    g[i] = -np.inf
                    continue
                s = 0.0
                for j in range(q):
                    s += np.exp(logK[j, i] + f[j] - m)
                g[i] = log_mu[i] - (m + np.log(s))
            res = 0.0
            for j in range(q):
                s = 0.0
                for i in range(p):
                    s += np.exp(logK[j, i] + f[j] + g[i])
                d = abs(s - np.exp(log_nu[j]))
                if d > res:
                    res = d
            history[it - 1] = res
            if res < tol:
                break
        plan = np.empty((q, p))
        for j in range(q):
            for i in range(p):
                plan[j, i] = np.exp(logK[j, i] + f[j] + g[i])
        return plan, it, res


# -- public dispatchers --------------------------------------------------------

def pairwise_dot(src: np.ndarray, tgt: np.ndarray) -> np.ndarray:
    """values[j, i] = <src row i, tgt row j>; shape (q, p)."""
    src = np.ascontiguousarray(src, dtype=np.float64)
    tgt = np.ascontiguousarray(tgt, dtype=np.float64)
    if active_backend() == "numba":
        return _pairwise_dot_nb(src, tgt)
    return _pairwise_dot_np(src, tgt)


def pairwise_cosine(src: np.ndarray, tgt: np.ndarray) -> np.ndarray:
    src = np.ascontiguousarray(src, dtype=np.float64)
    tgt = np.ascontiguousarray(tgt, dtype=np.float64)
    src = src / np.linalg.norm(src, axis=1, keepdims=True)
    tgt = tgt / np.linalg.norm(tgt, axis=1, keepdims=True)
    if active_backend() == "numba":
        return _pairwise_dot_nb(src, tgt)
    return _pairwise_dot_np(src, tgt)


def softmax_rows(values: np.ndarray, temperature: float = 1.0) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.float64)
    if active_backend() == "numba":
        return _softmax_rows_nb(values, float(temperature))
    return _softmax_rows_np(values, float(temperature))


def sinkhorn_log(cost: np.ndarray, mu: np.ndarray, nu: np.ndarray,
                 eps: float, max_iters: int, tol: float,
                 ) -> tuple[np.ndarray, int, float, np.ndarray]:
    """Entropic OT in the log domain; returns (plan, iterations, residual, history).

    The residual is the max row-marginal deviation after each full iteration
    (column marginals are exact by construction at that point). The returned
    plan is projected to satisfy both marginals exactly.
    """
    cost = np.ascontiguousarray(cost, dtype=np.float64)
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    with np.errstate(divide="ignore"):
        log_mu = np.log(mu)
        log_nu = np.log(nu)
    history = np.full(max_iters, np.nan)
    if active_backend() == "numba":
        plan, it, res = _sinkhorn_log_nb(cost, log_mu, log_nu, float(eps),
                                         int(max_iters), float(tol), history)
    else:
        plan, it, res = _sinkhorn_log_np(cost, log_mu, log_nu, float(eps),
                                         int(max_iters), float(tol), history)
    plan = round_to_marginals(plan, mu, nu)
    return plan, int(it), float(res), history[:it]


def round_to_marginals(plan: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Project a near-feasible plan onto exact marginals (rescale + rank-one fill)."""
    rs = plan.sum(axis=1)
    x = np.minimum(1.0, np.divide(nu, rs, out=np.ones_like(rs), where=rs > 0))
    plan = plan * x[:, None]
    cs = plan.sum(axis=0)
    y = np.minimum(1.0, np.divide(mu, cs, out=np.ones_like(cs), where=cs > 0))
    plan = plan * y[None, :]
    err_r = nu - plan.sum(axis=1)
    err_c = mu - plan.sum(axis=0)
    total = err_r.sum()
    if total > 0:
        plan = plan + np.outer(err_r, err_c) / total
    return plan
