"""Pure-Python point-counting kernel (fallback for the compiled one).

Coordinates live in the log domain of F_q: -1 encodes zero, otherwise
the value is i for the element g^i.  Sums use the Zech table
zech[i] = log(1 + g^i).

The search space is the list of normalized projective representatives,
chart by chart: chart j has x_0..x_{j-1} = 0, x_j = 1 and the remaining
m - j coordinates free, so it holds q^(m-j) points.  A global index r
addresses that list; ``count_points`` scans the half-open range
[start, stop).
"""


def chart_offsets(q, m):
    offs, acc = [], 0
    for j in range(m + 1):
        offs.append(acc)
        acc += q ** (m - j)
    offs.append(acc)
    return offs


def count_points(q, m, zech, coef_log, exps, eq_start, start, stop):
    zech = [int(z) for z in zech]
    coef_log = [int(c) for c in coef_log]
    exps = [int(e) for e in exps]
    eq_start = [int(s) for s in eq_start]
    n_eq = len(eq_start) - 1
    width = m + 1
    qm1 = q - 1
    # per term: list of (coordinate, exponent) with positive exponent
    terms = []
    for t in range(len(coef_log)):
        row = exps[t * width:(t + 1) * width]
        terms.append((coef_log[t], [(i, e) for i, e in enumerate(row) if e]))
    eqs = [terms[eq_start[k]:eq_start[k + 1]] for k in range(n_eq)]

    offs = chart_offsets(q, m)
    count = 0
    for j in range(m + 1):
        lo, hi = max(start, offs[j]), min(stop, offs[j + 1])
        if lo >= hi:
            continue
        nfree = m - j
        local = lo - offs[j]
        digits = [0] * nfree
        for pos in range(nfree - 1, -1, -1):
            local, digits[pos] = divmod(local, q)
        x = [-1] * j + [0] + [d - 1 for d in digits]
        for _ in range(hi - lo):
            ok = True
            for eq in eqs:
                acc = -1
                for c, mono in eq:
                    lg = c
                    for i, e in mono:
                        xi = x[i]
                        if xi < 0:
                            lg = -1
                            break
                        lg += e * xi
                    if lg < 0:
                        continue
                    lg %= qm1
                    if acc < 0:
                        acc = lg
                    else:
                        z = zech[(lg - acc) % qm1]
                        acc = -1 if z < 0 else (acc + z) % qm1
                if acc >= 0:
                    ok = False
                    break
            if ok:
                count += 1
            # odometer over the free coordinates, last one fastest
            pos = m
            while pos > j:
                x[pos] += 1
                if x[pos] < qm1:
                    break
                x[pos] = -1
                pos -= 1
    return count
