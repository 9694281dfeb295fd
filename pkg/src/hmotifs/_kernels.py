"""Compiled inner loops.

All kernels release the GIL so callers can fan them out over a thread pool.
Hyperedge membership is CSR (``eptr``/``enodes``), node incidence is CSR
(``nptr``/``nedges``) and the projected graph is CSR (``indptr``/``indices``/
``weights``). Motif tallies are ``int64[27]`` indexed by motif id; slot 0
collects unclassifiable triples and must stay zero.
"""
import numpy as np
from numba import njit

_JIT = dict(nogil=True, cache=True)


# ---------------------------------------------------------------- projection

@njit(**_JIT)
def _upper_row(i, eptr, enodes, nptr, nedges, cnt, touched):
    """Neighbors ``j > i`` of ``e_i`` with their overlap counts left in ``cnt``."""
    m = 0
    for p in range(eptr[i], eptr[i + 1]):
        v = enodes[p]
        for q in range(nptr[v], nptr[v + 1]):
            j = nedges[q]
            if j > i:
                if cnt[j] == 0:
                    touched[m] = j
                    m += 1
                cnt[j] += 1
    return m


@njit(**_JIT)
def upper_wedges(rows, eptr, enodes, nptr, nedges, n_edges, with_weights):
    """Hyperwedges ``(i, j, w)`` with ``i < j`` for every ``i`` in ``rows``.

    Output is grouped by ``rows`` order and sorted by ``j`` inside each row.
    """
    cnt = np.zeros(n_edges, np.int32)
    touched = np.empty(n_edges, np.int32)
    total = 0
    for i in rows:
        m = _upper_row(i, eptr, enodes, nptr, nedges, cnt, touched)
        total += m
        for x in range(m):
            cnt[touched[x]] = 0
    out_i = np.empty(total, np.int32)
    out_j = np.empty(total, np.int32)
    out_w = np.empty(total if with_weights else 0, np.int32)
    pos = 0
    for i in rows:
        m = _upper_row(i, eptr, enodes, nptr, nedges, cnt, touched)
        nb = np.sort(touched[:m])
        for x in range(m):
            j = nb[x]
            out_i[pos] = i
            out_j[pos] = j
            if with_weights:
                out_w[pos] = cnt[j]
            cnt[j] = 0
            pos += 1
    return out_i, out_j, out_w


@njit(**_JIT)
def full_neighborhood(i, eptr, enodes, nptr, nedges, cnt, touched):
    """Sorted neighbors of ``e_i`` (both directions) and overlap sizes."""
    m = 0
    for p in range(eptr[i], eptr[i + 1]):
        v = enodes[p]
        for q in range(nptr[v], nptr[v + 1]):
            j = nedges[q]
            if j != i:
                if cnt[j] == 0:
                    touched[m] = j
                    m += 1
                cnt[j] += 1
    ids = np.sort(touched[:m])
    w = np.empty(m, np.int32)
    for x in range(m):
        w[x] = cnt[ids[x]]
        cnt[ids[x]] = 0
    return ids, w


# ------------------------------------------------------------ classification

@njit(**_JIT)
def pattern_of(a, b, c, w_ij, w_jk, w_ki, t):
    p = 0
    if a - w_ij - w_ki + t > 0:
        p |= 64
    if b - w_ij - w_jk + t > 0:
        p |= 32
    if c - w_ki - w_jk + t > 0:
        p |= 16
    if w_ij - t > 0:
        p |= 8
    if w_jk - t > 0:
        p |= 4
    if w_ki - t > 0:
        p |= 2
    if t > 0:
        p |= 1
    return p


@njit(**_JIT)
def _count_common(buf, m, enodes, lo, hi):
    """``|buf[:m] & enodes[lo:hi]|`` for two sorted, duplicate-free runs."""
    n = hi - lo
    if m == 0 or n == 0:
        return 0
    if 8 * m < n:
        c = 0
        for x in range(m):
            v = buf[x]
            a, b = lo, hi
            while a < b:
                mid = (a + b) >> 1
                if enodes[mid] < v:
                    a = mid + 1
                else:
                    b = mid
            if a < hi and enodes[a] == v:
                c += 1
        return c
    c = 0
    x = 0
    y = lo
    while x < m and y < hi:
        if buf[x] < enodes[y]:
            x += 1
        elif buf[x] > enodes[y]:
            y += 1
        else:
            c += 1
            x += 1
            y += 1
    return c


@njit(**_JIT)
def _collect_marked(j, eptr, enodes, nodemark, stamp, buf):
    """Nodes of ``e_j`` whose mark equals ``stamp`` (sorted)."""
    m = 0
    for p in range(eptr[j], eptr[j + 1]):
        v = enodes[p]
        if nodemark[v] == stamp:
            buf[m] = v
            m += 1
    return m


# ------------------------------------------------------------- exact counting

@njit(**_JIT)
def exact_rows(rows, eptr, enodes, indptr, indices, weights, lookup,
               n_nodes, n_edges, max_size, counts, feats, out, out_pos):
    """Enumerate each instance once from every ``e_i`` in ``rows``.

    A neighbor pair ``{e_j, e_k}`` of ``e_i`` is taken when ``e_j`` and
    ``e_k`` are disjoint or ``i < min(j, k)``. Every accepted instance bumps
    ``counts``; when ``feats`` has rows it also bumps the per-hyperedge
    feature rows, and when ``out`` has rows the instance is written to
    ``out[out_pos[0]]``.
    """
    nodemark = np.zeros(n_nodes, np.int64)
    rowmark = np.zeros(n_edges, np.int64)
    roww = np.zeros(n_edges, np.int32)
    inter = np.empty(max_size, np.int32)
    do_feats = feats.shape[0] > 0
    do_out = out.shape[0] > 0
    row_stamp = 0
    for i in rows:
        a = eptr[i + 1] - eptr[i]
        for p in range(eptr[i], eptr[i + 1]):
            nodemark[enodes[p]] = i + 1
        lo = indptr[i]
        hi = indptr[i + 1]
        for x in range(lo, hi):
            j = indices[x]
            w_ij = weights[x]
            b = eptr[j + 1] - eptr[j]
            row_stamp += 1
            for y in range(indptr[j], indptr[j + 1]):
                rowmark[indices[y]] = row_stamp
                roww[indices[y]] = weights[y]
            m = -1
            for z in range(x + 1, hi):
                k = indices[z]
                w_ki = weights[z]
                w_jk = roww[k] if rowmark[k] == row_stamp else 0
                if w_jk == 0:
                    t = 0
                elif i < j:
                    if m < 0:
                        m = _collect_marked(j, eptr, enodes, nodemark, i + 1, inter)
                    t = _count_common(inter, m, enodes, eptr[k], eptr[k + 1])
                else:
                    continue
                c = eptr[k + 1] - eptr[k]
                motif = lookup[pattern_of(a, b, c, w_ij, w_jk, w_ki, t)]
                counts[motif] += 1
                if do_feats:
                    feats[i, motif] += 1
                    feats[j, motif] += 1
                    feats[k, motif] += 1
                if do_out:
                    q = out_pos[0]
                    out[q, 0] = i
                    out[q, 1] = j
                    out[q, 2] = k
                    out[q, 3] = motif
                    out_pos[0] = q + 1


# ------------------------------------------------------------------ sampling

@njit(**_JIT)
def _mark_row(ids, w, mark, wrow, stamp):
    for x in range(len(ids)):
        mark[ids[x]] = stamp
        wrow[ids[x]] = w[x]


@njit(**_JIT)
def edge_sample_rows(samples, eptr, enodes, indptr, indices, weights, lookup,
                     n_nodes, n_edges, max_size, tally):
    """Hyperedge-sampling tallies: every instance holding each sampled edge once.

    For sampled ``e_i`` and ``e_j`` in its neighborhood, ``e_k`` ranges over
    the union of both neighborhoods minus ``{e_i, e_j}`` and is counted when
    it is not adjacent to ``e_i`` or when ``j < k``.
    """
    nodemark = np.zeros(n_nodes, np.int64)
    mark_i = np.zeros(n_edges, np.int64)
    mark_j = np.zeros(n_edges, np.int64)
    w_i = np.zeros(n_edges, np.int32)
    w_j = np.zeros(n_edges, np.int32)
    inter = np.empty(max_size, np.int32)
    stamp = 0
    for i in samples:
        stamp += 1
        si = stamp
        a = eptr[i + 1] - eptr[i]
        for p in range(eptr[i], eptr[i + 1]):
            nodemark[enodes[p]] = si
        lo = indptr[i]
        hi = indptr[i + 1]
        _mark_row(indices[lo:hi], weights[lo:hi], mark_i, w_i, si)
        for x in range(lo, hi):
            j = indices[x]
            w_ij = weights[x]
            b = eptr[j + 1] - eptr[j]
            stamp += 1
            sj = stamp
            jlo = indptr[j]
            jhi = indptr[j + 1]
            _mark_row(indices[jlo:jhi], weights[jlo:jhi], mark_j, w_j, sj)
            m = -1
            for z in range(lo, hi):
                k = indices[z]
                if k <= j:
                    continue
                w_ki = weights[z]
                w_jk = w_j[k] if mark_j[k] == sj else 0
                t = 0
                if w_jk > 0:
                    if m < 0:
                        m = _collect_marked(j, eptr, enodes, nodemark, si, inter)
                    t = _count_common(inter, m, enodes, eptr[k], eptr[k + 1])
                c = eptr[k + 1] - eptr[k]
                tally[lookup[pattern_of(a, b, c, w_ij, w_jk, w_ki, t)]] += 1
            for y in range(jlo, jhi):
                k = indices[y]
                if k == i or mark_i[k] == si:
                    continue
                c = eptr[k + 1] - eptr[k]
                tally[lookup[pattern_of(a, b, c, w_ij, weights[y], 0, 0)]] += 1


@njit(**_JIT)
def wedge_sample_one(i, j, nb_i, w_nb_i, nb_j, w_nb_j, eptr, enodes, lookup,
                     nodemark, mark_i, w_i, mark_j, inter, state, tally):
    """Tally every instance containing hyperwedge ``{e_i, e_j}`` once.

    ``state[0]`` is a monotone stamp shared across calls so the scratch
    arrays never need clearing.
    """
    state[0] += 1
    s = state[0]
    for p in range(eptr[i], eptr[i + 1]):
        nodemark[enodes[p]] = s
    _mark_row(nb_i, w_nb_i, mark_i, w_i, s)
    for y in range(len(nb_j)):
        mark_j[nb_j[y]] = s
    a = eptr[i + 1] - eptr[i]
    b = eptr[j + 1] - eptr[j]
    w_ij = w_i[j]
    m = -1
    # w_i doubles as the overlap lookup for e_i; e_j's row is read from nb_j
    for z in range(len(nb_i)):
        k = nb_i[z]
        if k == j:
            continue
        w_ki = w_nb_i[z]
        w_jk = 0
        if mark_j[k] == s:
            # binary search nb_j for k
            lo = 0
            hi = len(nb_j)
            while lo < hi:
                mid = (lo + hi) >> 1
                if nb_j[mid] < k:
                    lo = mid + 1
                else:
                    hi = mid
            w_jk = w_nb_j[lo]
        t = 0
        if w_jk > 0:
            if m < 0:
                m = _collect_marked(j, eptr, enodes, nodemark, s, inter)
            t = _count_common(inter, m, enodes, eptr[k], eptr[k + 1])
        c = eptr[k + 1] - eptr[k]
        tally[lookup[pattern_of(a, b, c, w_ij, w_jk, w_ki, t)]] += 1
    for y in range(len(nb_j)):
        k = nb_j[y]
        if k == i or mark_i[k] == s:
            continue
        c = eptr[k + 1] - eptr[k]
        tally[lookup[pattern_of(a, b, c, w_ij, w_nb_j[y], 0, 0)]] += 1


@njit(**_JIT)
def wedge_sample_rows(samples, wedge_i, wedge_j, eptr, enodes, indptr, indices,
                      weights, lookup, n_nodes, n_edges, max_size, tally):
    """Hyperwedge-sampling tallies over the projected graph."""
    nodemark = np.zeros(n_nodes, np.int64)
    mark_i = np.zeros(n_edges, np.int64)
    mark_j = np.zeros(n_edges, np.int64)
    w_i = np.zeros(n_edges, np.int32)
    inter = np.empty(max_size, np.int32)
    state = np.zeros(1, np.int64)
    for s in samples:
        i = wedge_i[s]
        j = wedge_j[s]
        wedge_sample_one(
            i, j,
            indices[indptr[i]:indptr[i + 1]], weights[indptr[i]:indptr[i + 1]],
            indices[indptr[j]:indptr[j + 1]], weights[indptr[j]:indptr[j + 1]],
            eptr, enodes, lookup, nodemark, mark_i, w_i, mark_j, inter, state, tally,
        )


# ----------------------------------------------------------- overlap oracle

@njit(**_JIT)
def _adjacent(a, b, indptr, indices):
    lo = indptr[a]
    hi = indptr[a + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < b:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[a + 1] and indices[lo] == b


@njit(**_JIT)
def pair_overlaps(inst, indptr, indices):
    """Compare every pair of instances of one motif.

    ``inst`` is ``int64[M, 3]``. Returns ``(p, q1)``: ``p[l]`` counts
    unordered pairs sharing ``l`` hyperedges, ``q1`` counts pairs whose two
    shared hyperedges form a hyperwedge (two distinct instances share at
    most one hyperwedge).
    """
    p = np.zeros(3, np.int64)
    q1 = 0
    M = inst.shape[0]
    for x in range(M):
        for y in range(x + 1, M):
            shared = 0
            sa = -1
            sb = -1
            for u in range(3):
                e = inst[x, u]
                if e == inst[y, 0] or e == inst[y, 1] or e == inst[y, 2]:
                    if shared == 0:
                        sa = e
                    else:
                        sb = e
                    shared += 1
            p[shared] += 1
            if shared == 2 and _adjacent(sa, sb, indptr, indices):
                q1 += 1
    return p, q1
