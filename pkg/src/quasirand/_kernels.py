"""Counting kernels: numba bitset backtracking with a dense-numpy fallback.

The bitset kernels walk pattern positions in a precomputed search order,
keeping per-depth candidate bitsets (host adjacency rows ANDed together,
restricted to the subset mask, minus already-used vertices).  The final
position is never enumerated: its candidate popcount is added directly.

Backend selection happens once at import:
  * numba kernels when numba imports cleanly, unless the environment sets
    QUASIRAND_NUMBA to 0/false/off or NUMBA_DISABLE_JIT=1;
  * otherwise the pure-numpy fallback (same algorithm over boolean rows).

``backend()`` reports which path is active; both implementations are always
importable so the benchmark can race them in one process.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "HAVE_NUMBA",
    "backend",
    "count_copies_dense",
    "stratified_dense",
]


def _env_disables_numba() -> bool:
    flag = os.environ.get("QUASIRAND_NUMBA", "").strip().lower()
    if flag in {"0", "false", "off", "no"}:
        return True
    if os.environ.get("NUMBA_DISABLE_JIT", "").strip() == "1":
        return True
    return False


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on numba-less installs
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_disables_numba()


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# pure-numpy fallback: recursion over pattern positions, boolean candidate rows

def count_copies_dense(dense: np.ndarray, mask: np.ndarray, prev_lists) -> int:
    """Count edge-preserving injections of the planned pattern into mask."""
    h = len(prev_lists)
    used = np.zeros(dense.shape[0], dtype=bool)
    chosen = np.empty(h, dtype=np.int64)

    def rec(d: int) -> int:
        cand = mask & ~used
        for s in prev_lists[d]:
            cand = cand & dense[chosen[s]]
        if d == h - 1:
            return int(np.count_nonzero(cand))
        total = 0
        for v in np.flatnonzero(cand):
            chosen[d] = v
            used[v] = True
            total += rec(d + 1)
            used[v] = False
        return total

    return rec(0)


def stratified_dense(dense: np.ndarray, w_mask: np.ndarray, prev_lists) -> np.ndarray:
    """Copy counts split by how many mapped vertices fall outside w_mask."""
    h = len(prev_lists)
    n = dense.shape[0]
    used = np.zeros(n, dtype=bool)
    chosen = np.empty(h, dtype=np.int64)
    counts = np.zeros(h + 1, dtype=np.int64)
    everything = np.ones(n, dtype=bool)

    def rec(d: int, outside: int) -> None:
        cand = everything & ~used
        for s in prev_lists[d]:
            cand = cand & dense[chosen[s]]
        if d == h - 1:
            inside = int(np.count_nonzero(cand & w_mask))
            counts[outside] += inside
            counts[outside + 1] += int(np.count_nonzero(cand)) - inside
            return
        for v in np.flatnonzero(cand):
            chosen[d] = v
            used[v] = True
            rec(d + 1, outside + (0 if w_mask[v] else 1))
            used[v] = False

    rec(0, 0)
    return counts


# ---------------------------------------------------------------------------
# numba bitset kernels

if HAVE_NUMBA:
    _U0 = np.uint64(0)
    _U1 = np.uint64(1)
    _M1 = np.uint64(0x5555555555555555)
    _M2 = np.uint64(0x3333333333333333)
    _M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    _H01 = np.uint64(0x0101010101010101)
    _S1 = np.uint64(1)
    _S2 = np.uint64(2)
    _S4 = np.uint64(4)
    _S56 = np.uint64(56)
    _S58 = np.uint64(58)
    _S63 = np.uint64(63)
    _DEB = np.uint64(0x03F79D71B4CB0A89)

    def _build_debruijn_table() -> np.ndarray:
        table = np.zeros(64, dtype=np.int64)
        mult = 0x03F79D71B4CB0A89
        for b in range(64):
            table[((1 << b) * mult & 0xFFFFFFFFFFFFFFFF) >> 58] = b
        return table

    _DEB_TABLE = _build_debruijn_table()
    _DEB_TABLE.setflags(write=False)

    @njit(cache=True, nogil=True)
    def _popcnt64(w):
        # SWAR popcount; the final multiply wraps by design
        w = w - ((w >> _S1) & _M1)
        w = (w & _M2) + ((w >> _S2) & _M2)
        w = (w + (w >> _S4)) & _M4
        return np.int64((w * _H01) >> _S56)

    @njit(cache=True, nogil=True)
    def _ctz(lsb):
        # index of an isolated set bit via de Bruijn multiplication
        return _DEB_TABLE[np.int64((lsb * _DEB) >> _S58)]

    @njit(cache=True, nogil=True)
    def count_copies_bits(bits, mask, prev):
        h = prev.shape[0]
        nw = bits.shape[1]
        cand = np.empty((h, nw), np.uint64)
        wp = np.zeros(h, np.int64)
        chosen = np.zeros(h, np.int64)
        used = np.zeros(nw, np.uint64)
        total = np.int64(0)
        for j in range(nw):
            cand[0, j] = mask[j]
        d = 0
        while d >= 0:
            if d == h - 1:
                c = np.int64(0)
                for j in range(nw):
                    c += _popcnt64(cand[d, j])
                total += c
                d -= 1
                if d >= 0:
                    v = chosen[d]
                    used[v >> 6] &= ~(_U1 << np.uint64(v & 63))
                continue
            v = np.int64(-1)
            while wp[d] < nw:
                w = cand[d, wp[d]]
                if w == _U0:
                    wp[d] += 1
                    continue
                lsb = w & (_U0 - w)
                cand[d, wp[d]] = w ^ lsb
                v = (wp[d] << 6) + _ctz(lsb)
                break
            if v < 0:
                d -= 1
                if d >= 0:
                    u = chosen[d]
                    used[u >> 6] &= ~(_U1 << np.uint64(u & 63))
                continue
            chosen[d] = v
            used[v >> 6] |= _U1 << np.uint64(v & 63)
            d += 1
            for j in range(nw):
                cand[d, j] = mask[j] & ~used[j]
            pm = prev[d]
            while pm != _U0:
                lsb = pm & (_U0 - pm)
                pm ^= lsb
                s = _ctz(lsb)
                rv = chosen[s]
                for j in range(nw):
                    cand[d, j] &= bits[rv, j]
            wp[d] = 0
        return total

    @njit(cache=True, nogil=True)
    def stratified_bits(bits, mask, w_mask, prev):
        h = prev.shape[0]
        nw = bits.shape[1]
        cand = np.empty((h, nw), np.uint64)
        wp = np.zeros(h, np.int64)
        chosen = np.zeros(h, np.int64)
        outflag = np.zeros(h, np.int64)
        used = np.zeros(nw, np.uint64)
        counts = np.zeros(h + 1, np.int64)
        out_ct = 0
        for j in range(nw):
            cand[0, j] = mask[j]
        d = 0
        while d >= 0:
            if d == h - 1:
                cin = np.int64(0)
                call = np.int64(0)
                for j in range(nw):
                    cw = cand[d, j]
                    call += _popcnt64(cw)
                    cin += _popcnt64(cw & w_mask[j])
                counts[out_ct] += cin
                counts[out_ct + 1] += call - cin
                d -= 1
                if d >= 0:
                    v = chosen[d]
                    used[v >> 6] &= ~(_U1 << np.uint64(v & 63))
                    out_ct -= outflag[d]
                continue
            v = np.int64(-1)
            while wp[d] < nw:
                w = cand[d, wp[d]]
                if w == _U0:
                    wp[d] += 1
                    continue
                lsb = w & (_U0 - w)
                cand[d, wp[d]] = w ^ lsb
                v = (wp[d] << 6) + _ctz(lsb)
                break
            if v < 0:
                d -= 1
                if d >= 0:
                    u = chosen[d]
                    used[u >> 6] &= ~(_U1 << np.uint64(u & 63))
                    out_ct -= outflag[d]
                continue
            chosen[d] = v
            flag = 1 - np.int64((w_mask[v >> 6] >> np.uint64(v & 63)) & _U1)
            outflag[d] = flag
            out_ct += flag
            used[v >> 6] |= _U1 << np.uint64(v & 63)
            d += 1
            for j in range(nw):
                cand[d, j] = mask[j] & ~used[j]
            pm = prev[d]
            while pm != _U0:
                lsb = pm & (_U0 - pm)
                pm ^= lsb
                s = _ctz(lsb)
                rv = chosen[s]
                for j in range(nw):
                    cand[d, j] &= bits[rv, j]
            wp[d] = 0
        return counts

    __all__ += ["count_copies_bits", "stratified_bits"]
