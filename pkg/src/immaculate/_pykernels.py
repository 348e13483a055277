"""Pure-Python implementations of the hot kernels.

These mirror ``_ckernels.pyx`` exactly and are used when the compiled
extension is missing or ``IMMACULATE_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations


def unit_eliminate(rows, ncols):
    """Eliminate unit pivots from a sparse integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts.  Returns the number of
    unit pivots removed and the remaining rows restricted to live columns.
    Elementary divisors of the input are ``[1] * count`` followed by those
    of the remainder.
    """
    rows = [dict(r) for r in rows]
    colrows = [set() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for c in r:
            colrows[c].add(i)
    alive = [bool(r) for r in rows]
    count = 0
    progress = True
    while progress:
        progress = False
        for i in range(len(rows)):
            if not alive[i]:
                continue
            r = rows[i]
            if not r:
                alive[i] = False
                continue
            best = None
            for c, v in r.items():
                if v == 1 or v == -1:
                    k = len(colrows[c])
                    if best is None or k < best[0] or (k == best[0] and c < best[1]):
                        best = (k, c)
            if best is None:
                continue
            c = best[1]
            sign = r[c]
            for k in sorted(colrows[c]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[c] * sign
                for cc, v in r.items():
                    nv = rk.get(cc, 0) - f * v
                    if nv:
                        if cc not in rk:
                            colrows[cc].add(k)
                        rk[cc] = nv
                    elif cc in rk:
                        del rk[cc]
                        colrows[cc].discard(k)
            for cc in r:
                colrows[cc].discard(i)
            rows[i] = {}
            alive[i] = False
            count += 1
            progress = True
    rest = [r for r, a in zip(rows, alive) if a and r]
    return count, rest


def extend_sequences(out, start, length):
    """All index sequences ``start = s0, s1, ...`` of the given length with
    ``s_i`` in ``out[s_j]`` for every ``j < i``.  ``out`` holds int bitsets."""
    results = []
    if length <= 0:
        return results
    if length == 1:
        return [(start,)]
    seq = [start]

    def rec(cand):
        if len(seq) == length:
            results.append(tuple(seq))
            return
        c = cand
        while c:
            low = c & -c
            b = low.bit_length() - 1
            c ^= low
            seq.append(b)
            rec(cand & out[b])
            seq.pop()

    rec(out[start])
    return results
