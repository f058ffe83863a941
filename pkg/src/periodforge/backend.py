"""Series kernels with a numba fast path and a pure-numpy fallback.

Everything downstream reduces the lattice basis until |q| <= exp(-pi*sqrt(3)),
so the exponential sums below need only a few dozen terms.  They are the hot
inner loops of the package (Newton inversion alone triggers ~10^5 calls), so
the default backend compiles them with ``numba.njit``; setting

    PERIODFORGE_BACKEND=numpy

selects the vectorized numpy implementation instead (same results, no JIT).
``benchmarks/bench_backends.py`` compares the two.

Kernel contract, for q = exp(2*pi*i*tau'), u = exp(2*pi*i*z') with reduced
arguments (|q*u|, |q/u| <= |q|**0.5 < 1):

    eta_prod(q, kmax)          prod_{n<=kmax} (1 - q^n)
    lambert(q, m, kmax)        sum_k k^m q^k / (1 - q^k)
    pe_sum(u, q, kmax)         sum_k k   q^k/(1-q^k) (u^k + u^-k)
    pe_deriv_sum(u, q, j, kmax) sum_k k^(j+1) q^k/(1-q^k) (u^k + (-1)^j u^-k)
    zeta_sum(u, q, kmax)       sum_k     q^k/(1-q^k) (u^k - u^-k)
"""

from __future__ import annotations

import os

import numpy as np

_KERNEL_NAMES = ("eta_prod", "lambert", "pe_sum", "pe_deriv_sum", "zeta_sum")


# -- numpy implementations --------------------------------------------------

def _np_eta_prod(q, kmax):
    k = np.arange(1, kmax + 1)
    return complex(np.prod(1.0 - q**k))


def _np_lambert(q, m, kmax):
    k = np.arange(1, kmax + 1)
    qk = q**k
    return complex(np.sum(k.astype(np.float64)**m * qk / (1.0 - qk)))


def _np_pe_sum(u, q, kmax):
    k = np.arange(1, kmax + 1)
    qk = q**k
    return complex(np.sum(k / (1.0 - qk) * ((q * u)**k + (q / u)**k)))


def _np_pe_deriv_sum(u, q, j, kmax):
    k = np.arange(1, kmax + 1)
    qk = q**k
    sign = -1.0 if j % 2 else 1.0
    return complex(np.sum(k.astype(np.float64)**(j + 1) / (1.0 - qk)
                          * ((q * u)**k + sign * (q / u)**k)))


def _np_zeta_sum(u, q, kmax):
    k = np.arange(1, kmax + 1)
    qk = q**k
    return complex(np.sum(1.0 / (1.0 - qk) * ((q * u)**k - (q / u)**k)))


_NUMPY_IMPL = {
    "eta_prod": _np_eta_prod,
    "lambert": _np_lambert,
    "pe_sum": _np_pe_sum,
    "pe_deriv_sum": _np_pe_deriv_sum,
    "zeta_sum": _np_zeta_sum,
}


# -- numba implementations ---------------------------------------------------

def _build_numba_impl():
    from numba import njit

    @njit(cache=True)
    def eta_prod(q, kmax):
        out = 1.0 + 0.0j
        qk = 1.0 + 0.0j
        for _ in range(kmax):
            qk *= q
            out *= 1.0 - qk
        return out

    @njit(cache=True)
    def lambert(q, m, kmax):
        out = 0.0 + 0.0j
        qk = 1.0 + 0.0j
        for k in range(1, kmax + 1):
            qk *= q
            out += float(k)**m * qk / (1.0 - qk)
        return out

    @njit(cache=True)
    def pe_sum(u, q, kmax):
        out = 0.0 + 0.0j
        qk = 1.0 + 0.0j
        qu = 1.0 + 0.0j
        qv = 1.0 + 0.0j
        fu = q * u
        fv = q / u
        for k in range(1, kmax + 1):
            qk *= q
            qu *= fu
            qv *= fv
            out += k * (qu + qv) / (1.0 - qk)
        return out

    @njit(cache=True)
    def pe_deriv_sum(u, q, j, kmax):
        out = 0.0 + 0.0j
        qk = 1.0 + 0.0j
        qu = 1.0 + 0.0j
        qv = 1.0 + 0.0j
        fu = q * u
        fv = q / u
        sign = -1.0 if j % 2 else 1.0
        for k in range(1, kmax + 1):
            qk *= q
            qu *= fu
            qv *= fv
            out += float(k)**(j + 1) * (qu + sign * qv) / (1.0 - qk)
        return out

    @njit(cache=True)
    def zeta_sum(u, q, kmax):
        out = 0.0 + 0.0j
        qk = 1.0 + 0.0j
        qu = 1.0 + 0.0j
        qv = 1.0 + 0.0j
        fu = q * u
        fv = q / u
        for k in range(1, kmax + 1):
            qk *= q
            qu *= fu
            qv *= fv
            out += (qu - qv) / (1.0 - qk)
        return out

    return {"eta_prod": eta_prod, "lambert": lambert, "pe_sum": pe_sum,
            "pe_deriv_sum": pe_deriv_sum, "zeta_sum": zeta_sum}


_ACTIVE = dict(_NUMPY_IMPL)
_ACTIVE_NAME = "numpy"
_NUMBA_CACHE = None


def use_backend(name: str) -> str:
    """Select the kernel backend ("numba", "numpy" or "auto"). Returns the
    name actually activated ("auto" falls back to numpy when numba is not
    importable)."""
    global _ACTIVE, _ACTIVE_NAME, _NUMBA_CACHE
    name = name.lower()
    if name not in ("numba", "numpy", "auto"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numpy":
        _ACTIVE, _ACTIVE_NAME = dict(_NUMPY_IMPL), "numpy"
        return _ACTIVE_NAME
    try:
        if _NUMBA_CACHE is None:
            _NUMBA_CACHE = _build_numba_impl()
        _ACTIVE, _ACTIVE_NAME = dict(_NUMBA_CACHE), "numba"
    except ImportError:
        if name == "numba":
            raise
        _ACTIVE, _ACTIVE_NAME = dict(_NUMPY_IMPL), "numpy"
    return _ACTIVE_NAME


def active_backend() -> str:
    return _ACTIVE_NAME


def eta_prod(q, kmax):
    return _ACTIVE["eta_prod"](q, kmax)


def lambert(q, m, kmax):
    return _ACTIVE["lambert"](q, m, kmax)


def pe_sum(u, q, kmax):
    return _ACTIVE["pe_sum"](u, q, kmax)


def pe_deriv_sum(u, q, j, kmax):
    return _ACTIVE["pe_deriv_sum"](u, q, j, kmax)


def zeta_sum(u, q, kmax):
    return _ACTIVE["zeta_sum"](u, q, kmax)


use_backend(os.environ.get("PERIODFORGE_BACKEND", "auto"))
