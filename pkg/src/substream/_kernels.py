"""JIT-compiled scan kernels over edge-stream columns.

All kernels release the GIL, so query workloads parallelize with plain
thread pools.  Time tables use int64 with max/min sentinels for +/-infinity.
"""

import numpy as np
from numba import njit

INF = np.int64(np.iinfo(np.int64).max)
NEG = np.int64(np.iinfo(np.int64).min)


@njit(cache=True, nogil=True)
def first_out_dense(tails, n):
    """Position of each vertex's earliest outgoing edge; -1 when none."""
    out = np.full(n, -1, np.int64)
    for p in range(tails.shape[0] - 1, -1, -1):
        out[tails[p]] = p
    return out


@njit(cache=True, nogil=True)
def last_out_dense(tails, n):
    """Position of each vertex's latest outgoing edge; -1 when none."""
    out = np.full(n, -1, np.int64)
    for p in range(tails.shape[0]):
        out[tails[p]] = p
    return out


@njit(cache=True, nogil=True)
def merge_union(a, b):
    """Union of two ascending int64 arrays, deduplicated, in linear time."""
    na, nb = a.shape[0], b.shape[0]
    out = np.empty(na + nb, np.int64)
    i = j = c = 0
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out[c] = x
            i += 1
        elif y < x:
            out[c] = y
            j += 1
        else:
            out[c] = x
            i += 1
            j += 1
        c += 1
    while i < na:
        out[c] = a[i]
        i += 1
        c += 1
    while j < nb:
        out[c] = b[j]
        j += 1
        c += 1
    return out[:c]


@njit(cache=True, nogil=True)
def union_size(a, b):
    """|a ∪ b| for ascending deduplicated arrays, without materializing."""
    na, nb = a.shape[0], b.shape[0]
    i = j = 0
    c = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            i += 1
        elif b[j] < a[i]:
            j += 1
        else:
            i += 1
            j += 1
        c += 1
    return c + (na - i) + (nb - j)


@njit(cache=True, nogil=True)
def ea_scan(tails, heads, ts, lams, start, src, ta, tb, n):
    """One-pass earliest-arrival relaxation from ``start`` within [ta, tb]."""
    arrival = np.full(n, INF, np.int64)
    arrival[src] = ta
    if start < 0:
        return arrival
    m = ts.shape[0]
    for p in range(start, m):
        t = ts[p]
        if t > tb:
            break
        if t < ta:
            continue
        arr = t + lams[p]
        if arr > tb:
            continue
        if arrival[tails[p]] <= t:
            v = heads[p]
            if arr < arrival[v]:
                arrival[v] = arr
    return arrival


@njit(cache=True, nogil=True)
def xi_scan(tails, heads, ts, lams, last_out, start, src, n, perm, h):
    """Collect the reachable edge stream of ``src`` in one pass.

    Stops once the scan passes the latest outgoing edge of every reached
    vertex: from there on no tail can be reached, so no edge is included.
    Returns the included positions (local to the scanned arrays) and, when
    h > 0, the bottom-h sketch of their permuted positions.
    """
    m = ts.shape[0]
    cnt = 0
    skn = 0
    sk = np.empty(h if h > 0 else 1, np.int64)
    if start < 0:
        return np.empty(0, np.int64), sk[:0]
    out = np.empty(m - start, np.int64)
    arrival = np.full(n, INF, np.int64)
    arrival[src] = NEG
    horizon = last_out[src]
    for p in range(start, m):
        if p > horizon:
            break
        t = ts[p]
        if arrival[tails[p]] <= t:
            out[cnt] = p
            cnt += 1
            arr = t + lams[p]
            v = heads[p]
            if arr < arrival[v]:
                if arrival[v] == INF and last_out[v] > horizon:
                    horizon = last_out[v]
                arrival[v] = arr
            if h > 0:
                hv = perm[p]
                if skn < h:
                    j = skn
                    while j > 0 and sk[j - 1] > hv:
                        sk[j] = sk[j - 1]
                        j -= 1
                    sk[j] = hv
                    skn += 1
                elif hv < sk[h - 1]:
                    j = h - 1
                    while j > 0 and sk[j - 1] > hv:
                        sk[j] = sk[j - 1]
                        j -= 1
                    sk[j] = hv
    return out[:cnt], sk[:skn]


@njit(cache=True, nogil=True)
def fp_scan(tails, heads, ts, lams, start, src, ta, tb, n, keep_lists):
    """One-pass minimum-duration scan with per-vertex Pareto dominance lists.

    Each list holds (start_time, arrival_time) pairs strictly increasing in
    both components, stored in a shared pool of regions that double on
    demand.  The source contributes the implicit pair (t, t) at every edge
    it leaves, so its own list is never materialized.
    """
    m = ts.shape[0]
    dur = np.full(n, INF, np.int64)
    dur[src] = 0
    off = np.full(n, -1, np.int64)
    ln = np.zeros(n, np.int64)
    cap = np.zeros(n, np.int64)
    pool_cap = 1024
    ps = np.empty(pool_cap, np.int64)
    pa = np.empty(pool_cap, np.int64)
    free = 0
    if start < 0:
        return dur, off, ln, ps, pa

    for p in range(start, m):
        t = ts[p]
        if t > tb:
            break
        if t < ta:
            continue
        arr = t + lams[p]
        if arr > tb:
            continue
        u = tails[p]
        if u == src:
            sp = t
        else:
            lu = ln[u]
            if lu == 0:
                continue
            o = off[u]
            lo = o
            hi = o + lu
            while lo < hi:  # rightmost pair with arrival <= t
                mid = (lo + hi) >> 1
                if pa[mid] <= t:
                    lo = mid + 1
                else:
                    hi = mid
            if lo == o:
                continue
            sp = ps[lo - 1]
        v = heads[p]
        if v == src:
            continue
        d = arr - sp
        if d < dur[v]:
            dur[v] = d

        lv = ln[v]
        if lv == 0:
            if off[v] < 0:
                if free + 4 > pool_cap:
                    npc = pool_cap * 2
                    nps = np.empty(npc, np.int64)
                    npa = np.empty(npc, np.int64)
                    nps[:free] = ps[:free]
                    npa[:free] = pa[:free]
                    ps, pa, pool_cap = nps, npa, npc
                off[v] = free
                cap[v] = 4
                free += 4
            ps[off[v]] = sp
            pa[off[v]] = arr
            ln[v] = 1
            continue

        o = off[v]
        lo = o
        hi = o + lv
        while lo < hi:  # bisect_right by start time
            mid = (lo + hi) >> 1
            if ps[mid] <= sp:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        if pos < o + lv and pa[pos] <= arr:
            continue
        if pos > o and ps[pos - 1] == sp and pa[pos - 1] <= arr:
            continue
        lo = o
        hi = pos
        while lo < hi:  # first pair (within the prefix) the new one dominates
            mid = (lo + hi) >> 1
            if pa[mid] < arr:
                lo = mid + 1
            else:
                hi = mid
        first_dom = lo
        removed = pos - first_dom
        new_len = lv - removed + 1
        if new_len > cap[v]:
            ncap = cap[v] * 2
            while ncap < new_len:
                ncap *= 2
            if free + ncap > pool_cap:
                npc = pool_cap * 2
                while npc < free + ncap:
                    npc *= 2
                nps = np.empty(npc, np.int64)
                npa = np.empty(npc, np.int64)
                nps[:free] = ps[:free]
                npa[:free] = pa[:free]
                ps, pa, pool_cap = nps, npa, npc
            no = free
            free += ncap
            idx = no
            for j in range(o, first_dom):
                ps[idx] = ps[j]
                pa[idx] = pa[j]
                idx += 1
            ps[idx] = sp
            pa[idx] = arr
            idx += 1
            for j in range(pos, o + lv):
                ps[idx] = ps[j]
                pa[idx] = pa[j]
                idx += 1
            off[v] = no
            cap[v] = ncap
            ln[v] = new_len
        else:
            shift = 1 - removed
            if shift > 0:
                for j in range(o + lv - 1, pos - 1, -1):
                    ps[j + shift] = ps[j]
                    pa[j + shift] = pa[j]
            elif shift < 0:
                for j in range(pos, o + lv):
                    ps[j + shift] = ps[j]
                    pa[j + shift] = pa[j]
            ps[first_dom] = sp
            pa[first_dom] = arr
            ln[v] = new_len

    if keep_lists:
        return dur, off, ln, ps, pa
    return dur, off[:0], ln[:0], ps[:0], pa[:0]


@njit(cache=True, nogil=True)
def fp_scan_uniform(tails, heads, ts, lams, start, src, ta, tb, n):
    """Minimum-duration scan specialized for a uniform transition time.

    With one transition value, arrival times enter in scan order, so each
    vertex needs only a promoted best-start value plus a FIFO of pairs not
    yet usable; no binary searches.
    """
    m = ts.shape[0]
    dur = np.full(n, INF, np.int64)
    dur[src] = 0
    if start < 0:
        return dur
    vis = np.full(n, NEG, np.int64)
    off = np.full(n, -1, np.int64)
    hd = np.zeros(n, np.int64)
    tl = np.zeros(n, np.int64)
    cap = np.zeros(n, np.int64)
    pool_cap = 1024
    ps = np.empty(pool_cap, np.int64)
    pa = np.empty(pool_cap, np.int64)
    free = 0

    for p in range(start, m):
        t = ts[p]
        if t > tb:
            break
        if t < ta:
            continue
        arr = t + lams[p]
        if arr > tb:
            continue
        u = tails[p]
        if u == src:
            sp = t
        else:
            o = off[u]
            h = hd[u]
            e = tl[u]
            while h < e and pa[o + h] <= t:
                vis[u] = ps[o + h]
                h += 1
            hd[u] = h
            sp = vis[u]
            if sp == NEG:
                continue
        v = heads[p]
        if v == src:
            continue
        d = arr - sp
        if d < dur[v]:
            dur[v] = d

        o = off[v]
        h = hd[v]
        e = tl[v]
        while h < e and pa[o + h] <= t:
            vis[v] = ps[o + h]
            h += 1
        hd[v] = h
        if h < e:
            last = o + e - 1
            if sp <= ps[last]:
                continue
            if pa[last] == arr:
                ps[last] = sp
                continue
        else:
            if sp <= vis[v]:
                continue
            if o >= 0:  # queue drained; reuse the region from the front
                hd[v] = 0
                tl[v] = 0
                h = 0
                e = 0
        if o < 0:
            if free + 4 > pool_cap:
                npc = pool_cap * 2
                nps = np.empty(npc, np.int64)
                npa = np.empty(npc, np.int64)
                nps[:free] = ps[:free]
                npa[:free] = pa[:free]
                ps, pa, pool_cap = nps, npa, npc
            off[v] = free
            cap[v] = 4
            free += 4
            o = off[v]
            h = 0
            e = 0
        if e == cap[v]:
            if h > 0:
                for j in range(h, e):
                    ps[o + j - h] = ps[o + j]
                    pa[o + j - h] = pa[o + j]
                e -= h
                hd[v] = 0
                tl[v] = e
            else:
                ncap = cap[v] * 2
                if free + ncap > pool_cap:
                    npc = pool_cap * 2
                    while npc < free + ncap:
                        npc *= 2
                    nps = np.empty(npc, np.int64)
                    npa = np.empty(npc, np.int64)
                    nps[:free] = ps[:free]
                    npa[:free] = pa[:free]
                    ps, pa, pool_cap = nps, npa, npc
                no = free
                free += ncap
                for j in range(e):
                    ps[no + j] = ps[o + j]
                    pa[no + j] = pa[o + j]
                off[v] = no
                cap[v] = ncap
                o = no
        ps[o + e] = sp
        pa[o + e] = arr
        tl[v] = e + 1
    return dur


@njit(cache=True, nogil=True)
def xi_batch(tails, heads, ts, lams, last_out, starts, lo, hi, n, perm, h):
    """Reachable edge streams for sources [lo, hi) in one kernel call.

    Per-vertex (stamp, arrival) state lives in one packed row and is shared
    across sources instead of reallocating tables.  Returns a packed
    position buffer, per-source prefix offsets into it, and the per-source
    bottom-h sketch rows.
    """
    count = hi - lo
    m = ts.shape[0]
    offs = np.zeros(count + 1, np.int64)
    sk_mat = np.zeros((count, h if h > 0 else 1), np.int64)
    sk_lens = np.zeros(count, np.int64)
    state = np.full((n, 2), -1, np.int64)  # stamp, arrival
    tmp = np.empty(m, np.int64)  # one source's positions; copied out in bulk
    sk = np.empty(h if h > 0 else 1, np.int64)
    cap = 1024
    buf = np.empty(cap, np.int64)
    total = 0
    for idx in range(count):
        src = lo + idx
        start = starts[src]
        if start >= 0:
            state[src, 0] = idx
            state[src, 1] = NEG
            horizon = last_out[src]
            skn = 0
            cnt = 0
            for p in range(start, m):
                if p > horizon:
                    break
                t = ts[p]
                u = tails[p]
                if state[u, 0] == idx and state[u, 1] <= t:
                    tmp[cnt] = p
                    cnt += 1
                    a2 = t + lams[p]
                    v = heads[p]
                    if state[v, 0] != idx:
                        state[v, 0] = idx
                        state[v, 1] = a2
                        if last_out[v] > horizon:
                            horizon = last_out[v]
                    elif a2 < state[v, 1]:
                        state[v, 1] = a2
                    if h > 0:
                        hv = perm[p]
                        if skn < h:
                            j = skn
                            while j > 0 and sk[j - 1] > hv:
                                sk[j] = sk[j - 1]
                                j -= 1
                            sk[j] = hv
                            skn += 1
                        elif hv < sk[h - 1]:
                            j = h - 1
                            while j > 0 and sk[j - 1] > hv:
                                sk[j] = sk[j - 1]
                                j -= 1
                            sk[j] = hv
            for j in range(skn):
                sk_mat[idx, j] = sk[j]
            sk_lens[idx] = skn
            if cnt > 0:
                if total + cnt > cap:
                    while cap < total + cnt:
                        cap *= 2
                    nbuf = np.empty(cap, np.int64)
                    nbuf[:total] = buf[:total]
                    buf = nbuf
                buf[total : total + cnt] = tmp[:cnt]
                total += cnt
        offs[idx + 1] = total
    return buf[:total], offs, sk_mat, sk_lens


@njit(cache=True, nogil=True)
def closeness_batch(
    tails, heads, ts, lams, sub_off, vsub, vstart, ta, tb, n, lo, hi, uniform, out
):
    """Harmonic closeness for sources in [lo, hi), each scanning its own substream.

    The substreams are concatenated into flat arrays with boundaries in
    ``sub_off``; ``vsub`` maps a vertex to its substream (-1 for the empty
    one) and ``vstart`` to its skip position there.  The uniform-transition
    case runs inline with stamped per-vertex state shared across sources;
    the general case delegates to the list-based scan.
    """
    if not uniform:
        for v in range(lo, hi):
            j = vsub[v]
            if j < 0 or vstart[v] < 0:
                out[v] = 0.0
                continue
            o = sub_off[j]
            e = sub_off[j + 1]
            dur = fp_scan(
                tails[o:e], heads[o:e], ts[o:e], lams[o:e], vstart[v], v, ta, tb, n, False
            )[0]
            out[v] = harmonic_sum(dur, v)
        return

    if lams.shape[0] > 0 and lams[0] == 1:
        _closeness_batch_unit(
            tails, heads, ts, sub_off, vsub, vstart, ta, tb, n, lo, hi, out
        )
        return

    vis = np.empty(n, np.int64)
    vstamp = np.full(n, -1, np.int64)
    qoff = np.empty(n, np.int64)
    qhd = np.empty(n, np.int64)
    qtl = np.empty(n, np.int64)
    qcap = np.empty(n, np.int64)
    dur = np.empty(n, np.int64)
    dstamp = np.full(n, -1, np.int64)
    touched = np.empty(n, np.int64)
    pool_cap = 1024
    ps = np.empty(pool_cap, np.int64)
    pa = np.empty(pool_cap, np.int64)

    for srcpos in range(lo, hi):
        src = srcpos
        ver = srcpos
        j = vsub[src]
        if j < 0 or vstart[src] < 0:
            out[src] = 0.0
            continue
        base = sub_off[j]
        end = sub_off[j + 1]
        free = 0
        ntouched = 0
        for p in range(base + vstart[src], end):
            t = ts[p]
            if t > tb:
                break
            if t < ta:
                continue
            arr_t = t + lams[p]
            if arr_t > tb:
                continue
            u = tails[p]
            if u == src:
                sp = t
            else:
                if vstamp[u] != ver:
                    continue
                oo = qoff[u]
                h0 = qhd[u]
                e0 = qtl[u]
                while h0 < e0 and pa[oo + h0] <= t:
                    vis[u] = ps[oo + h0]
                    h0 += 1
                qhd[u] = h0
                sp = vis[u]
                if sp == NEG:
                    continue
            v = heads[p]
            if v == src:
                continue
            d = arr_t - sp
            if dstamp[v] != ver:
                dstamp[v] = ver
                dur[v] = d
                touched[ntouched] = v
                ntouched += 1
            elif d < dur[v]:
                dur[v] = d
            if vstamp[v] != ver:
                vstamp[v] = ver
                vis[v] = NEG
                qoff[v] = -1
                qhd[v] = 0
                qtl[v] = 0
                qcap[v] = 0
            oo = qoff[v]
            h0 = qhd[v]
            e0 = qtl[v]
            while h0 < e0 and pa[oo + h0] <= t:
                vis[v] = ps[oo + h0]
                h0 += 1
            qhd[v] = h0
            if h0 < e0:
                last = oo + e0 - 1
                if sp <= ps[last]:
                    continue
                if pa[last] == arr_t:
                    ps[last] = sp
                    continue
            else:
                if sp <= vis[v]:
                    continue
                if oo >= 0:
                    qhd[v] = 0
                    qtl[v] = 0
                    h0 = 0
                    e0 = 0
            if oo < 0:
                if free + 4 > pool_cap:
                    npc = pool_cap * 2
                    nps = np.empty(npc, np.int64)
                    npa = np.empty(npc, np.int64)
                    nps[:free] = ps[:free]
                    npa[:free] = pa[:free]
                    ps, pa, pool_cap = nps, npa, npc
                qoff[v] = free
                qcap[v] = 4
                free += 4
                oo = qoff[v]
                h0 = 0
                e0 = 0
            if e0 == qcap[v]:
                if h0 > 0:
                    for q in range(h0, e0):
                        ps[oo + q - h0] = ps[oo + q]
                        pa[oo + q - h0] = pa[oo + q]
                    e0 -= h0
                    qhd[v] = 0
                    qtl[v] = e0
                else:
                    ncap = qcap[v] * 2
                    if free + ncap > pool_cap:
                        npc = pool_cap * 2
                        while npc < free + ncap:
                            npc *= 2
                        nps = np.empty(npc, np.int64)
                        npa = np.empty(npc, np.int64)
                        nps[:free] = ps[:free]
                        npa[:free] = pa[:free]
                        ps, pa, pool_cap = nps, npa, npc
                    no = free
                    free += ncap
                    for q in range(e0):
                        ps[no + q] = ps[oo + q]
                        pa[no + q] = pa[oo + q]
                    qoff[v] = no
                    qcap[v] = ncap
                    oo = no
            ps[oo + e0] = sp
            pa[oo + e0] = arr_t
            qtl[v] = e0 + 1
        # reciprocals in ascending vertex order, matching the per-query path
        reach = np.sort(touched[:ntouched])
        total = 0.0
        for q in range(reach.shape[0]):
            total += 1.0 / dur[reach[q]]
        out[src] = total


@njit(cache=True, nogil=True)
def _closeness_batch_unit(tails, heads, ts, sub_off, vsub, vstart, ta, tb, n, lo, hi, out):
    """Unit-transition closeness scan: with every transition equal to one, a
    vertex holds at most one not-yet-usable pair, so the dominance list
    collapses to (visible start, pending start, pending arrival) packed in
    one state row per vertex."""
    state = np.full((n, 5), -1, np.int64)  # stamp, vis_s, pend_s, pend_a, duration
    touched = np.empty(n, np.int64)
    for src in range(lo, hi):
        ver = src
        j = vsub[src]
        if j < 0 or vstart[src] < 0:
            out[src] = 0.0
            continue
        end = sub_off[j + 1]
        ntouched = 0
        for p in range(sub_off[j] + vstart[src], end):
            t = ts[p]
            if t > tb:
                break
            if t < ta or t + 1 > tb:
                continue
            u = tails[p]
            if u == src:
                sp = t
            else:
                if state[u, 0] != ver:
                    continue
                if state[u, 3] <= t:  # promote the pending pair
                    state[u, 1] = state[u, 2]
                    state[u, 3] = INF
                sp = state[u, 1]
                if sp == NEG:
                    continue
            v = heads[p]
            if v == src:
                continue
            d = t + 1 - sp
            if state[v, 0] != ver:
                state[v, 0] = ver
                state[v, 1] = NEG
                state[v, 2] = sp
                state[v, 3] = t + 1
                state[v, 4] = d
                touched[ntouched] = v
                ntouched += 1
                continue
            if d < state[v, 4]:
                state[v, 4] = d
            if state[v, 3] <= t:
                state[v, 1] = state[v, 2]
                state[v, 3] = INF
            if state[v, 3] == INF:
                if sp > state[v, 1]:
                    state[v, 2] = sp
                    state[v, 3] = t + 1
            elif sp > state[v, 2]:  # same arrival t+1: keep the later start
                state[v, 2] = sp
        reach = np.sort(touched[:ntouched])
        total = 0.0
        for q in range(reach.shape[0]):
            total += 1.0 / state[reach[q], 4]
        out[src] = total


@njit(cache=True, nogil=True)
def harmonic_sum(durations, src):
    """Sum of reciprocal durations over reachable vertices other than the source."""
    total = 0.0
    for v in range(durations.shape[0]):
        d = durations[v]
        if v != src and d != INF:
            total += 1.0 / d
    return total


@njit(cache=True, nogil=True)
def bottom_h_merge(a, b, h):
    """h smallest of the union of two ascending deduplicated arrays."""
    na, nb = a.shape[0], b.shape[0]
    out = np.empty(min(h, na + nb), np.int64)
    i = j = c = 0
    while c < h and (i < na or j < nb):
        if j >= nb or (i < na and a[i] < b[j]):
            out[c] = a[i]
            i += 1
        elif i >= na or b[j] < a[i]:
            out[c] = b[j]
            j += 1
        else:
            out[c] = a[i]
            i += 1
            j += 1
        c += 1
    return out[:c]


@njit(cache=True, nogil=True)
def jaccard_pair(a, alen, b, blen, h):
    """Bottom-h Jaccard-distance estimate between two sketch value arrays."""
    i = j = 0
    taken = 0
    inter = 0
    while taken < h and (i < alen or j < blen):
        if j >= blen or (i < alen and a[i] < b[j]):
            i += 1
        elif i >= alen or b[j] < a[i]:
            j += 1
        else:
            inter += 1
            i += 1
            j += 1
        taken += 1
    if taken == 0:
        return 1.0
    return 1.0 - inter / taken


@njit(cache=True, nogil=True)
def rank_argmin(cvals, clens, counts, sk, k, h):
    """Substream with minimal ranking value 0.5*(I_j+1)*(Jhat+1); ties -> smallest j."""
    best = 0
    bestr = 1e308
    for j in range(k):
        jd = jaccard_pair(cvals[j], clens[j], sk, sk.shape[0], h)
        r = 0.5 * (counts[j] + 1.0) * (jd + 1.0)
        if r < bestr:
            bestr = r
            best = j
    return best


@njit(cache=True, nogil=True)
def assign_batch(cvals, clens, counts, sk_mat, sk_lens, empty, k, h, choices):
    """Sequential ranking-based assignment of one batch of reachable streams.

    For each non-empty stream: pick the substream minimizing the ranking
    value, fold the stream's sketch into that substream's sketch, and bump
    its assigned count.  Mutates cvals/clens/counts in place.
    """
    merged = np.empty(h, np.int64)
    for i in range(sk_lens.shape[0]):
        if empty[i]:
            choices[i] = -1
            continue
        sk = sk_mat[i, : sk_lens[i]]
        best = 0
        bestr = 1e308
        for j in range(k):
            jd = jaccard_pair(cvals[j], clens[j], sk, sk.shape[0], h)
            r = 0.5 * (counts[j] + 1.0) * (jd + 1.0)
            if r < bestr:
                bestr = r
                best = j
        cl = clens[best]
        a = 0
        b = 0
        c = 0
        while c < h and (a < cl or b < sk.shape[0]):
            if b >= sk.shape[0] or (a < cl and cvals[best, a] < sk[b]):
                merged[c] = cvals[best, a]
                a += 1
            elif a >= cl or sk[b] < cvals[best, a]:
                merged[c] = sk[b]
                b += 1
            else:
                merged[c] = sk[b]
                a += 1
                b += 1
            c += 1
        for q in range(c):
            cvals[best, q] = merged[q]
        clens[best] = c
        counts[best] += 1
        choices[i] = best


def warmup() -> None:
    """Force compilation of all kernels on a one-edge stream."""
    tails = np.zeros(1, np.int64)
    heads = np.ones(1, np.int64)
    ts = np.ones(1, np.int64)
    lams = np.ones(1, np.int64)
    perm = np.zeros(1, np.int64)
    first_out_dense(tails, 2)
    last_out_dense(tails, 2)
    merge_union(tails, heads)
    union_size(tails, heads)
    ea_scan(tails, heads, ts, lams, 0, 0, 0, 10, 2)
    xi_scan(tails, heads, ts, lams, first_out_dense(tails, 2), 0, 0, 2, perm, 4)
    xi_batch(tails, heads, ts, lams, first_out_dense(tails, 2),
             np.zeros(2, np.int64), 0, 2, 2, perm, 4)
    fp_scan(tails, heads, ts, lams, 0, 0, 0, 10, 2, False)
    fp_scan_uniform(tails, heads, ts, lams, 0, 0, 0, 10, 2)
    bottom_h_merge(tails, heads, 4)
    jaccard_pair(tails, 1, heads, 1, 4)
    rank_argmin(np.zeros((2, 4), np.int64), np.zeros(2, np.int64), np.zeros(2, np.int64), perm, 2, 4)
    assign_batch(
        np.zeros((2, 4), np.int64), np.zeros(2, np.int64), np.zeros(2, np.int64),
        np.zeros((1, 4), np.int64), np.ones(1, np.int64), np.zeros(1, np.bool_),
        2, 4, np.empty(1, np.int64),
    )
    harmonic_sum(ts, 0)
    out = np.zeros(2, np.float64)
    sub_off = np.asarray([0, 1], np.int64)
    vmap = np.zeros(2, np.int64)
    for uniform in (False, True):
        closeness_batch(tails, heads, ts, lams, sub_off, vmap, vmap, 0, 10, 2, 0, 2, uniform, out)
