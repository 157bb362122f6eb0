# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels.

Mirrors ``batchgreedy._pykernels`` exactly: same candidate orders, same
floating-point operation order, bit-identical results.  Keep the two files
in sync; the parity test suite compares them on random instances.
"""

from array import array

from libc.math cimport INFINITY, fabs, log

NAME = "cython"

cdef double TIE_REL_TOL = 1e-12

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

ctypedef unsigned long long u64

cdef inline u64 _full_mask(int n) nogil:
    if n >= 64:
        return <u64>0xFFFFFFFFFFFFFFFF
    return ((<u64>1) << n) - 1


cdef class PackedObjective:
    cdef int kind            # 0 coverage, 1 scheduling, 2 sensing, 3 table
    cdef int n
    # coverage
    cdef int universe
    cdef bint cov64          # universe fits a 64-bit mask
    cdef u64[::1] cov_masks
    # scratch/stamp back the wide-universe union count; mutated only while
    # the GIL is held, so concurrent Python callers stay serialized
    cdef int[::1] cov_indptr
    cdef int[::1] cov_elems
    cdef int[::1] scratch
    cdef int stamp
    # scheduling
    cdef int n_rows
    cdef double[::1] p
    # sensing
    cdef double[::1] e
    cdef double sigma2
    # table
    cdef double[::1] table


cdef class PackedMatroid:
    cdef int kind            # 0 uniform, 1 partition, 2 explicit
    cdef int rank
    cdef int n_blocks
    cdef int[::1] block_of
    cdef int[::1] caps
    cdef int[::1] counts
    cdef int n_max
    cdef u64[::1] maximal


def pack_objective(instance):
    """Convert an objective instance into the backend's evaluation token."""
    cdef PackedObjective o = PackedObjective()
    o.n = instance.ground_size
    kind = instance.kind
    if kind == "coverage":
        o.kind = 0
        o.universe = len(instance.universe)
        o.cov64 = o.universe <= 64
        if o.cov64:
            masks = array("Q", [0]) * max(1, o.n)
            for i, elems in enumerate(instance.sets):
                m = 0
                for e in elems:
                    m |= 1 << e
                masks[i] = m
            o.cov_masks = masks
        else:
            indptr = array("i", [0] * (o.n + 1))
            elems_flat = array("i")
            for i, elems in enumerate(instance.sets):
                elems_flat.extend(elems)
                indptr[i + 1] = len(elems_flat)
            if not elems_flat:
                elems_flat.append(0)
            o.cov_indptr = indptr
            o.cov_elems = elems_flat
            o.scratch = array("i", [0] * max(1, o.universe))
            o.stamp = 0
    elif kind == "scheduling":
        o.kind = 1
        o.n_rows = len(instance.p)
        flat = array("d")
        for row in instance.p:
            flat.extend(row)
        o.p = flat
    elif kind == "sensing":
        o.kind = 2
        o.e = array("d", instance.e)
        o.sigma2 = float(instance.sigma) ** 2
    elif kind == "table":
        o.kind = 3
        o.table = array("d", instance.values)
    else:
        raise ValueError(f"unknown objective kind {kind!r}")
    return o


def pack_matroid(spec):
    """Convert a matroid spec into the backend's feasibility token."""
    cdef PackedMatroid mt = PackedMatroid()
    kind = spec.kind
    if kind == "uniform":
        mt.kind = 0
        mt.rank = spec.rank
    elif kind == "partition":
        mt.kind = 1
        mt.n_blocks = len(spec.blocks)
        block_of = array("i", [0] * max(1, spec.ground_size))
        for b, block in enumerate(spec.blocks):
            for e in block:
                block_of[e] = b
        mt.block_of = block_of
        mt.caps = array("i", spec.capacities) if spec.capacities else array("i", [0])
        mt.counts = array("i", [0] * max(1, mt.n_blocks))
    elif kind == "explicit":
        mt.kind = 2
        mt.n_max = len(spec.maximal_sets)
        masks = array("Q", [0]) * max(1, mt.n_max)
        for i, s in enumerate(spec.maximal_sets):
            m = 0
            for e in s:
                m |= 1 << e
            masks[i] = m
        mt.maximal = masks
    else:
        raise ValueError(f"unknown matroid kind {kind!r}")
    return mt


cdef bint _indep(PackedMatroid mt, u64 mask):
    cdef int b, j
    cdef u64 m, low
    if mt.kind == 0:
        return __builtin_popcountll(mask) <= mt.rank
    if mt.kind == 1:
        for b in range(mt.n_blocks):
            mt.counts[b] = 0
        m = mask
        while m:
            low = m & (0 - m)
            mt.counts[mt.block_of[__builtin_ctzll(low)]] += 1
            m ^= low
        for b in range(mt.n_blocks):
            if mt.counts[b] > mt.caps[b]:
                return 0
        return 1
    for j in range(mt.n_max):
        if mask & ~mt.maximal[j] == 0:
            return 1
    return mask == 0 and mt.n_max == 0


cdef double _eval(PackedObjective o, u64 mask):
    cdef int j, r, idx, el, count
    cdef u64 m, low, acc
    cdef double total, prod, se, sc, ei
    if o.kind == 0:
        if o.cov64:
            acc = 0
            m = mask
            while m:
                low = m & (0 - m)
                acc |= o.cov_masks[__builtin_ctzll(low)]
                m ^= low
            return <double>__builtin_popcountll(acc)
        o.stamp += 1
        count = 0
        m = mask
        while m:
            low = m & (0 - m)
            j = __builtin_ctzll(low)
            for idx in range(o.cov_indptr[j], o.cov_indptr[j + 1]):
                el = o.cov_elems[idx]
                if o.scratch[el] != o.stamp:
                    o.scratch[el] = o.stamp
                    count += 1
            m ^= low
        return <double>count
    if o.kind == 1:
        total = 0.0
        for r in range(o.n_rows):
            prod = 1.0
            m = mask
            while m:
                low = m & (0 - m)
                prod *= 1.0 - o.p[r * o.n + __builtin_ctzll(low)]
                m ^= low
            total += 1.0 - prod
        return total / o.n_rows
    if o.kind == 2:
        se = 0.0
        sc = 0.0
        m = mask
        while m:
            low = m & (0 - m)
            ei = o.e[__builtin_ctzll(low)]
            se += ei
            sc += 1.0 - ei
            m ^= low
        return 0.5 * log((1.0 + se / o.sigma2) * (1.0 + sc / o.sigma2))
    return o.table[mask]


def eval_mask(PackedObjective obj, mask):
    return _eval(obj, <u64>mask)


cdef inline bint _next_combination(int* combo, int k, int n) nogil:
    # Lexicographic successor of a k-combination over range(n); the changed
    # suffix starts at the returned-from position handled by the caller.
    cdef int i = k - 1
    cdef int j
    while i >= 0 and combo[i] == n - k + i:
        i -= 1
    if i < 0:
        return 0
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return 1


def greedy_stage(PackedObjective obj, PackedMatroid mat, int n, base_mask, base_value, int size):
    """Best feasible batch of ``size`` fresh elements on top of ``base_mask``.

    Same contract and tie rule as the pure backend: first-encounter within
    a relative tie window, with the strict maximum tracked separately.
    """
    cdef u64 base = <u64>base_mask
    cdef double bval = base_value
    cdef int free_arr[64]
    cdef int combo[64]
    cdef int n_free = 0
    cdef int i
    for i in range(n):
        if not (base >> i) & 1:
            free_arr[n_free] = i
            n_free += 1
    cdef u64 sel_mask = 0
    cdef double sel_value = 0.0
    cdef double sel_gain = 0.0
    cdef bint have_sel = 0
    cdef double strict_max = -INFINITY
    cdef long feasible = 0
    cdef u64 cand
    cdef double value, gain
    if size > n_free or size <= 0:
        return 0, 0.0, strict_max, 0
    for i in range(size):
        combo[i] = i
    while True:
        cand = 0
        for i in range(size):
            cand |= (<u64>1) << free_arr[combo[i]]
        if _indep(mat, base | cand):
            feasible += 1
            value = _eval(obj, base | cand)
            gain = value - bval
            if gain > strict_max:
                strict_max = gain
            if not have_sel or gain > sel_gain + TIE_REL_TOL * max(1.0, fabs(sel_gain)):
                have_sel = 1
                sel_mask = cand
                sel_value = value
                sel_gain = gain
        if not _next_combination(combo, size, n_free):
            break
    return sel_mask, sel_value, strict_max, feasible


def curvature_scan(PackedObjective obj, int n, int k, double denom_eps):
    """Max of ``1 - rho_I(X \\ I) / rho_I(empty)`` over k-subsets I."""
    cdef u64 full = _full_mask(n)
    cdef double f_empty = _eval(obj, 0)
    cdef double f_full = _eval(obj, full)
    cdef double best = -INFINITY
    cdef u64 best_mask = 0
    cdef long qualifying = 0
    cdef int combo[64]
    cdef int i
    cdef u64 cand
    cdef double den, num, val
    if k > n or k <= 0:
        return 0.0, 0, 0
    for i in range(k):
        combo[i] = i
    while True:
        cand = 0
        for i in range(k):
            cand |= (<u64>1) << combo[i]
        den = _eval(obj, cand) - f_empty
        if den > denom_eps:
            qualifying += 1
            num = f_full - _eval(obj, full & ~cand)
            val = 1.0 - num / den
            if val > best:
                best = val
                best_mask = cand
        if not _next_combination(combo, k, n):
            break
    if qualifying == 0:
        return 0.0, 0, 0
    return best, best_mask, qualifying


def best_subset_of_card(PackedObjective obj, PackedMatroid mat, int n, int card):
    """Max of f over independent subsets of exactly ``card`` elements."""
    cdef double best = -INFINITY
    cdef u64 best_mask = 0
    cdef bint found = 0
    cdef long scanned = 0
    cdef int combo[65]
    cdef int i
    cdef u64 cand
    cdef double value
    if card > n or card < 0:
        return False, 0, -INFINITY, 0
    for i in range(card):
        combo[i] = i
    while True:
        cand = 0
        for i in range(card):
            cand |= (<u64>1) << combo[i]
        if _indep(mat, cand):
            scanned += 1
            value = _eval(obj, cand)
            if not found or value > best:
                found = 1
                best = value
                best_mask = cand
        if card == 0 or not _next_combination(combo, card, n):
            break
    return bool(found), best_mask, best, scanned


def best_independent_subset(PackedObjective obj, PackedMatroid mat, int n):
    """Max of f over all independent subsets, scanned by (cardinality, lex)."""
    cdef double best = -INFINITY
    cdef u64 best_mask = 0
    cdef bint found = 0
    cdef long scanned = 0
    cdef int card
    for card in range(n + 1):
        f2, m2, v2, s2 = best_subset_of_card(obj, mat, n, card)
        scanned += s2
        if f2 and (not found or v2 > best):
            found = 1
            best = v2
            best_mask = m2
    return bool(found), best_mask, best, scanned


def polymatroid_scan(PackedObjective obj, int n, double tol):
    """Exhaustive polymatroid property check; see the pure backend docstring."""
    cdef long size = (<long>1) << n
    cdef double[::1] f = array("d", bytes(8 * size))
    cdef long b, a
    cdef int j
    cdef double fb, fa
    for b in range(size):
        f[b] = _eval(obj, <u64>b)

    cdef bint empty_ok = fabs(f[0]) <= tol
    cdef int wkind = 0
    cdef long wa = 0, wb = 0
    cdef int wj = -1
    if not empty_ok:
        wkind = 1

    cdef bint mono_ok = 1
    for b in range(size):
        fb = f[b]
        a = (b - 1) & b
        while True:
            if f[a] > fb + tol:
                mono_ok = 0
                if wkind == 0:
                    wkind = 2
                    wa = a
                    wb = b
                break
            if a == 0:
                break
            a = (a - 1) & b
        if not mono_ok:
            break

    cdef bint submod_ok = 1
    cdef long bit
    for b in range(size):
        if not submod_ok:
            break
        fb = f[b]
        a = (b - 1) & b
        while True:
            if a != b:
                fa = f[a]
                for j in range(n):
                    bit = (<long>1) << j
                    if b & bit:
                        continue
                    if f[a | bit] - fa < f[b | bit] - fb - tol:
                        submod_ok = 0
                        if wkind == 0:
                            wkind = 3
                            wa = a
                            wb = b
                            wj = j
                        break
                if not submod_ok:
                    break
            if a == 0:
                break
            a = (a - 1) & b
    return bool(empty_ok), bool(mono_ok), bool(submod_ok), wkind, wa, wb, wj


def sensing_curvature_scan(e, int k):
    """Closed-form batched curvature scan for the sensing family at sigma = 1."""
    cdef double[::1] ev = array("d", e)
    cdef int n = ev.shape[0]
    cdef double s = 1.0
    cdef double t = 1.0
    cdef int i, j
    cdef double ei
    for i in range(n):
        s += ev[i]
        t += 1.0 - ev[i]
    cdef double log_st = log(s * t)

    cdef int combo[64]
    cdef double ue[65]
    cdef double uc[65]
    cdef int best_combo[64]
    cdef double best = -INFINITY
    cdef double u, v, val
    cdef int dirty = 0
    for i in range(k):
        combo[i] = i
    ue[0] = 0.0
    uc[0] = 0.0
    while True:
        for i in range(dirty, k):
            ei = ev[combo[i]]
            ue[i + 1] = ue[i] + ei
            uc[i + 1] = uc[i] + (1.0 - ei)
        u = ue[k]
        v = uc[k]
        val = 1.0 - (log_st - log((s - u) * (t - v))) / log((1.0 + u) * (1.0 + v))
        if val > best:
            best = val
            for i in range(k):
                best_combo[i] = combo[i]
        # lexicographic successor, tracking the first changed position
        i = k - 1
        while i >= 0 and combo[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        combo[i] += 1
        for j in range(i + 1, k):
            combo[j] = combo[j - 1] + 1
        dirty = i
    mask = 0
    for i in range(k):
        mask |= 1 << best_combo[i]
    return best, mask
