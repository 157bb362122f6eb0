"""Pure-Python enumeration kernels.

Fallback implementation of the hot loops; ``batchgreedy._kernels`` is the
compiled mirror.  Both backends must produce bit-identical floats, so every
sum and product here iterates element indices in ascending order, and every
scan visits candidates in the same order as the compiled code:
k-subsets in lexicographic order of their sorted index tuples, submasks in
the standard descending submask walk.
"""

from __future__ import annotations

from itertools import combinations
from math import log

NAME = "python"

TIE_REL_TOL = 1e-12

# Packed objective kind codes (shared with the compiled backend).
COVERAGE, SCHEDULING, SENSING, TABLE = 0, 1, 2, 3


def pack_objective(instance):
    """Convert an objective instance into the backend's evaluation token."""
    kind = instance.kind
    n = instance.ground_size
    if kind == "coverage":
        set_masks = []
        for elems in instance.sets:
            m = 0
            for e in elems:
                m |= 1 << e
            set_masks.append(m)
        return (COVERAGE, n, tuple(set_masks))
    if kind == "scheduling":
        return (SCHEDULING, n, tuple(tuple(row) for row in instance.p))
    if kind == "sensing":
        return (SENSING, n, tuple(instance.e), float(instance.sigma) ** 2)
    if kind == "table":
        return (TABLE, n, list(instance.values))
    raise ValueError(f"unknown objective kind {kind!r}")


def pack_matroid(spec):
    """Convert a matroid spec into the backend's feasibility token."""
    kind = spec.kind
    if kind == "uniform":
        return ("uniform", spec.rank)
    if kind == "partition":
        block_of = [0] * spec.ground_size
        for b, block in enumerate(spec.blocks):
            for e in block:
                block_of[e] = b
        return ("partition", tuple(block_of), tuple(spec.capacities))
    if kind == "explicit":
        masks = []
        for s in spec.maximal_sets:
            m = 0
            for e in s:
                m |= 1 << e
            masks.append(m)
        return ("explicit", tuple(masks))
    raise ValueError(f"unknown matroid kind {kind!r}")


def _independent(mat, mask: int) -> bool:
    tag = mat[0]
    if tag == "uniform":
        return mask.bit_count() <= mat[1]
    if tag == "partition":
        block_of, caps = mat[1], mat[2]
        counts = [0] * len(caps)
        m = mask
        while m:
            low = m & -m
            counts[block_of[low.bit_length() - 1]] += 1
            m ^= low
        return all(c <= cap for c, cap in zip(counts, caps))
    # explicit: contained in some maximal set
    for mx in mat[1]:
        if mask & ~mx == 0:
            return True
    return mask == 0 and not mat[1]


def eval_mask(obj, mask: int) -> float:
    kind = obj[0]
    if kind == COVERAGE:
        set_masks = obj[2]
        acc = 0
        m = mask
        while m:
            low = m & -m
            acc |= set_masks[low.bit_length() - 1]
            m ^= low
        return float(acc.bit_count())
    if kind == SCHEDULING:
        rows = obj[2]
        total = 0.0
        for row in rows:
            prod = 1.0
            m = mask
            while m:
                low = m & -m
                prod *= 1.0 - row[low.bit_length() - 1]
                m ^= low
            total += 1.0 - prod
        return total / len(rows)
    if kind == SENSING:
        e, sigma2 = obj[2], obj[3]
        se = 0.0
        sc = 0.0
        m = mask
        while m:
            low = m & -m
            ei = e[low.bit_length() - 1]
            se += ei
            sc += 1.0 - ei
            m ^= low
        return 0.5 * log((1.0 + se / sigma2) * (1.0 + sc / sigma2))
    return obj[2][mask]


def greedy_stage(obj, mat, n: int, base_mask: int, base_value: float, size: int):
    """Best feasible batch of ``size`` fresh elements on top of ``base_mask``.

    Returns ``(selected_mask, selected_value, strict_max_gain, feasible)``.
    Selection follows the first-encounter tie rule: a later candidate
    replaces the incumbent only when its gain exceeds the incumbent's by
    more than ``TIE_REL_TOL * max(1, |incumbent gain|)``.  ``strict_max_gain``
    tracks the plain maximum for validators.
    """
    free = [i for i in range(n) if not (base_mask >> i) & 1]
    sel_mask = 0
    sel_value = 0.0
    sel_gain = float("-inf")
    strict_max = float("-inf")
    feasible = 0
    for combo in combinations(free, size):
        cand = 0
        for i in combo:
            cand |= 1 << i
        if not _independent(mat, base_mask | cand):
            continue
        feasible += 1
        value = eval_mask(obj, base_mask | cand)
        gain = value - base_value
        if gain > strict_max:
            strict_max = gain
        if sel_gain == float("-inf") or gain > sel_gain + TIE_REL_TOL * max(1.0, abs(sel_gain)):
            sel_mask = cand
            sel_value = value
            sel_gain = gain
    return sel_mask, sel_value, strict_max, feasible


def curvature_scan(obj, n: int, k: int, denom_eps: float):
    """Max of ``1 - rho_I(X \\ I) / rho_I(empty)`` over k-subsets I.

    Subsets whose gain from the empty set is at or below ``denom_eps`` are
    excluded.  Returns ``(value, argmax_mask, qualifying)``; the argmax is
    the lexicographically first maximizer and ``value`` is 0.0 when nothing
    qualifies.
    """
    full = (1 << n) - 1
    f_empty = eval_mask(obj, 0)
    f_full = eval_mask(obj, full)
    best = float("-inf")
    best_mask = 0
    qualifying = 0
    for combo in combinations(range(n), k):
        cand = 0
        for i in combo:
            cand |= 1 << i
        den = eval_mask(obj, cand) - f_empty
        if den <= denom_eps:
            continue
        qualifying += 1
        num = f_full - eval_mask(obj, full & ~cand)
        val = 1.0 - num / den
        if val > best:
            best = val
            best_mask = cand
    if qualifying == 0:
        return 0.0, 0, 0
    return best, best_mask, qualifying


def best_subset_of_card(obj, mat, n: int, card: int):
    """Max of f over independent subsets of exactly ``card`` elements.

    Returns ``(found, best_mask, best_value, scanned)``; ties go to the
    lexicographically first subset.
    """
    best = float("-inf")
    best_mask = 0
    found = False
    scanned = 0
    for combo in combinations(range(n), card):
        cand = 0
        for i in combo:
            cand |= 1 << i
        if not _independent(mat, cand):
            continue
        scanned += 1
        value = eval_mask(obj, cand)
        if not found or value > best:
            found = True
            best = value
            best_mask = cand
    return found, best_mask, best, scanned


def best_independent_subset(obj, mat, n: int):
    """Max of f over all independent subsets, scanned by (cardinality, lex)."""
    best = float("-inf")
    best_mask = 0
    found = False
    scanned = 0
    for card in range(n + 1):
        f2, m2, v2, s2 = best_subset_of_card(obj, mat, n, card)
        scanned += s2
        if f2 and (not found or v2 > best):
            found = True
            best = v2
            best_mask = m2
    return found, best_mask, best, scanned


def polymatroid_scan(obj, n: int, tol: float):
    """Exhaustive polymatroid property check over all 2^n subsets.

    Verifies f(empty) = 0, monotonicity over all pairs A subset of B, and
    submodularity over all (A subset of B, j not in B), all with absolute
    tolerance ``tol``.  Returns ``(empty_ok, mono_ok, submod_ok, witness_kind,
    wa, wb, wj)`` where witness_kind is 0 none / 1 empty / 2 monotonicity /
    3 submodularity and (wa, wb, wj) locate the first violation of the first
    failing property.
    """
    size = 1 << n
    f = [eval_mask(obj, m) for m in range(size)]

    empty_ok = abs(f[0]) <= tol
    wkind, wa, wb, wj = 0, 0, 0, -1
    if not empty_ok:
        wkind = 1

    mono_ok = True
    for b in range(size):
        fb = f[b]
        a = (b - 1) & b
        while True:
            if f[a] > fb + tol:
                mono_ok = False
                if wkind == 0:
                    wkind, wa, wb = 2, a, b
                break
            if a == 0:
                break
            a = (a - 1) & b
        if not mono_ok:
            break

    submod_ok = True
    for b in range(size):
        if not submod_ok:
            break
        fb = f[b]
        a = (b - 1) & b
        while True:
            if a != b:
                fa = f[a]
                for j in range(n):
                    bit = 1 << j
                    if b & bit:
                        continue
                    if f[a | bit] - fa < f[b | bit] - fb - tol:
                        submod_ok = False
                        if wkind == 0:
                            wkind, wa, wb, wj = 3, a, b, j
                        break
                if not submod_ok:
                    break
            if a == 0:
                break
            a = (a - 1) & b
    return empty_ok, mono_ok, submod_ok, wkind, wa, wb, wj


def sensing_curvature_scan(e, k: int):
    """Closed-form batched curvature for the sensing family at sigma = 1.

    Maximizes ``1 - (log(s t) - log((s - u)(t - v))) / log((1 + u)(1 + v))``
    over k-subsets J, where u and v are the subset sums of e_i and 1 - e_i
    and s, t are the corresponding full-ground sums plus one.  Candidate
    subset sums are maintained as prefix sums over the lexicographic
    combination walk, which keeps them bit-identical to a fresh
    ascending-order summation.  Returns ``(value, argmax_mask)``.
    """
    n = len(e)
    s = 1.0
    t = 1.0
    for ei in e:
        s += ei
        t += 1.0 - ei
    log_st = log(s * t)

    combo = list(range(k))
    ue = [0.0] * (k + 1)  # ue[i] = sum of e over combo[:i]
    uc = [0.0] * (k + 1)
    best = float("-inf")
    best_combo: tuple[int, ...] = ()
    dirty = 0  # prefix sums valid for positions < dirty
    while True:
        for i in range(dirty, k):
            ei = e[combo[i]]
            ue[i + 1] = ue[i] + ei
            uc[i + 1] = uc[i] + (1.0 - ei)
        u = ue[k]
        v = uc[k]
        val = 1.0 - (log_st - log((s - u) * (t - v))) / log((1.0 + u) * (1.0 + v))
        if val > best:
            best = val
            best_combo = tuple(combo)
        # lexicographic successor
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
    for i in best_combo:
        mask |= 1 << i
    return best, mask
