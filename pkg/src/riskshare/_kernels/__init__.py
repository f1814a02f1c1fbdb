"""Hot inner loops with a numba path and a pure-numpy fallback.

The compiled path is used when numba imports and ``RISKSHARE_NO_NUMBA`` is
unset (or ``0``). Both paths expose identical signatures:

``choquet_rows(V, H)``
    Choquet value of every row of ``V`` against a subset table ``H`` indexed
    by atom bitmask (``H[mask] = h(P(mask))``).
``pair_violation(H)``
    Worst violation of ``h(x+y) <= h(x)+h(y)`` and of superadditivity of the
    dual, over grid pairs; returns ``(sub, i, j, sup, i, j)``.
``grid_search(T, off, radix, H, mode, tol, tie_eps)``
    Minimise the summed Choquet value over a mixed-radix product of per-atom
    value tuples, keeping candidates that pass dependence filter ``mode``
    (0 none, 1 pairwise counter-monotonic, 2 pairwise comonotonic,
    3 sequential counter-monotonic).
``grid_collect(T, off, radix, mode, tol, cap)``
    Digits of every candidate passing the filter (for non-Choquet measures).
``prop1_search(X, assigns, n, mvals, H, sign_mode, tie_eps)``
    Minimise over allocations ``(X - m) 1_{A_i} + m_i`` for every row of
    ``assigns`` (atom -> agent) and every total side payment in ``mvals``.
    ``sign_mode`` 0 splits ``m`` equally; 1 / 2 keep every component
    nonnegative / nonpositive.
``pair_counter_exact(X, H1, H2, sign_mode, tie_eps)``
    Exact two-agent counter-monotonic minimum: for each ordering of the atoms
    the objective is linear in the increments of the first component, so a
    vertex of the feasible polytope is optimal. Returns ``-inf`` with a zero
    allocation on ``Linf`` when some direction is unbounded; the count is
    then the orderings visited so far, which depends on the visiting order.
"""

from __future__ import annotations

import contextlib
import os

from . import _numpy_impl

try:
    from . import _numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba_impl = None

_FLAG = os.environ.get("RISKSHARE_NO_NUMBA", "").strip().lower()
_impl = _numpy_impl if (_FLAG not in ("", "0", "false", "no") or _numba_impl is None) else _numba_impl


def get_backend() -> str:
    return "numba" if _impl is _numba_impl else "numpy"


def set_backend(name: str) -> None:
    global _impl
    if name == "numba":
        if _numba_impl is None:
            raise RuntimeError("numba is not available")
        _impl = _numba_impl
    elif name == "numpy":
        _impl = _numpy_impl
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def using_backend(name: str):
    previous = get_backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def choquet_rows(V, H):
    return _impl.choquet_rows(V, H)


def pair_violation(H):
    return _impl.pair_violation(H)


def grid_search(T, off, radix, H, mode, tol, tie_eps):
    return _impl.grid_search(T, off, radix, H, mode, tol, tie_eps)


def grid_collect(T, off, radix, mode, tol, cap):
    return _impl.grid_collect(T, off, radix, mode, tol, cap)


def prop1_search(X, assigns, n, mvals, H, sign_mode, tie_eps):
    return _impl.prop1_search(X, assigns, n, mvals, H, sign_mode, tie_eps)


def pair_counter_exact(X, H1, H2, sign_mode, tie_eps):
    return _impl.pair_counter_exact(X, H1, H2, sign_mode, tie_eps)
