"""Hot inner loops over Cayley tables.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy version.
The backend is picked at import time from ``FITSET_NO_NUMBA`` (any non-empty
value other than ``0`` disables numba) and can be switched later with
:func:`set_backend`.  Both paths must return identical arrays; the test suite
runs them side by side.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("FITSET_NO_NUMBA", "")
_BACKEND = "numpy" if (numba is None or _flag not in ("", "0")) else "numba"


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not importable")
    _BACKEND = name


@contextmanager
def using_backend(name: str):
    old = _BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


# ---------------------------------------------------------------------------
# closure of a generating set (identity is element 0)

def _generate_numpy(mul: np.ndarray, gens: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    inset = np.zeros(n, dtype=np.bool_)
    inset[0] = True
    if gens.size == 0:
        return inset
    frontier = np.zeros(1, dtype=mul.dtype)
    while frontier.size:
        nxt = mul[frontier][:, gens].ravel()
        nxt = np.unique(nxt[~inset[nxt]])
        inset[nxt] = True
        frontier = nxt
    return inset


def _generate_py(mul, gens):
    n = mul.shape[0]
    inset = np.zeros(n, dtype=np.bool_)
    inset[0] = True
    queue = np.empty(n, dtype=np.int64)
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(gens.shape[0]):
            y = mul[x, gens[k]]
            if not inset[y]:
                inset[y] = True
                queue[tail] = y
                tail += 1
    return inset


# ---------------------------------------------------------------------------
# element orders

def _element_orders_numpy(mul: np.ndarray) -> np.ndarray:
    n = mul.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        cur = mul[cur, idx]
        k += 1


def _element_orders_py(mul):
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for x in range(n):
        cur = x
        k = 1
        while cur != 0:
            cur = mul[cur, x]
            k += 1
        orders[x] = k
    return orders


# ---------------------------------------------------------------------------
# conjugation action on an interned family of subsets
#
# Subsets are given in CSR form (flat element list + offsets).  A Zobrist hash
# (xor of per-element random keys) locates the image of each subset under
# conjugation by g; the match is then verified element by element, so the
# result is exact.  action[s, g] = id of g^-1 S g, or -1 if it is not interned.

def _conj_action_numpy(conj, members, flat, offsets, keys, sorted_hash, order_ids):
    n_sub = offsets.shape[0] - 1
    n = conj.shape[0]
    sizes = np.diff(offsets)
    starts = offsets[:-1]
    seg = np.repeat(np.arange(n_sub), sizes)
    action = np.full((n_sub, n), -1, dtype=np.int64)
    for g in range(n):
        img = conj[g, flat]
        h = np.bitwise_xor.reduceat(keys[img], starts)
        pos = np.searchsorted(sorted_hash, h)
        pos = np.minimum(pos, sorted_hash.shape[0] - 1)
        cand = order_ids[pos]
        ok = sorted_hash[pos] == h
        ok &= sizes[cand] == sizes
        hits = members[cand[seg], img]
        ok &= np.logical_and.reduceat(hits, starts)
        action[:, g] = np.where(ok, cand, -1)
    return action


def _conj_action_py(conj, members, flat, offsets, keys, sorted_hash, order_ids):
    n_sub = offsets.shape[0] - 1
    n = conj.shape[0]
    m = sorted_hash.shape[0]
    action = np.full((n_sub, n), -1, dtype=np.int64)
    for s in range(n_sub):
        a = offsets[s]
        b = offsets[s + 1]
        for g in range(n):
            h = np.uint64(0)
            for t in range(a, b):
                h ^= keys[conj[g, flat[t]]]
            lo = 0
            hi = m
            while lo < hi:
                mid = (lo + hi) // 2
                if sorted_hash[mid] < h:
                    lo = mid + 1
                else:
                    hi = mid
            if lo >= m or sorted_hash[lo] != h:
                continue
            cand = order_ids[lo]
            if offsets[cand + 1] - offsets[cand] != b - a:
                continue
            good = True
            for t in range(a, b):
                if not members[cand, conj[g, flat[t]]]:
                    good = False
                    break
            if good:
                action[s, g] = cand
    return action


if numba is not None:
    _generate_numba = numba.njit(cache=True)(_generate_py)
    _element_orders_numba = numba.njit(cache=True)(_element_orders_py)
    _conj_action_numba = numba.njit(cache=True)(_conj_action_py)
else:  # pragma: no cover
    _generate_numba = _element_orders_numba = _conj_action_numba = None


def generate(mul: np.ndarray, gens) -> np.ndarray:
    """Boolean membership vector of the subgroup generated by ``gens``."""
    gens = np.asarray(gens, dtype=np.int64)
    if _BACKEND == "numba":
        return _generate_numba(mul, gens)
    return _generate_numpy(mul, gens)


def element_orders(mul: np.ndarray) -> np.ndarray:
    if _BACKEND == "numba":
        return _element_orders_numba(mul)
    return _element_orders_numpy(mul)


def conj_action(conj, members, flat, offsets, keys, sorted_hash, order_ids) -> np.ndarray:
    if _BACKEND == "numba":
        return _conj_action_numba(conj, members, flat, offsets, keys, sorted_hash, order_ids)
    return _conj_action_numpy(conj, members, flat, offsets, keys, sorted_hash, order_ids)
