"""Pure-Python hot kernels. ``_kernels.pyx`` implements the same functions.

Interval sets are flat lists ``[lo0, hi0, lo1, hi1, ...]`` of inclusive
integer ranges, sorted, disjoint and non-adjacent.

Literals in ``solve_cnf`` use DIMACS integers on input; internally a literal
for variable v is ``2*v`` (positive) or ``2*v + 1`` (negative).
"""

BACKEND = "python"


# ------------------------------------------------------------ interval sets

def from_runs(starts, flags, top):
    """Set of positions whose run flag is true. Run i covers
    ``[starts[i], starts[i+1] - 1]``; the last run ends at ``top``."""
    out = []
    n = len(starts)
    i = 0
    while i < n:
        if flags[i]:
            j = i
            while j + 1 < n and flags[j + 1]:
                j += 1
            hi = starts[j + 1] - 1 if j + 1 < n else top
            out.append(starts[i])
            out.append(hi)
            i = j + 1
        else:
            i += 1
    return out


def union(a, b):
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na or j < nb:
        if j >= nb or (i < na and a[i] <= b[j]):
            lo, hi = a[i], a[i + 1]
            i += 2
        else:
            lo, hi = b[j], b[j + 1]
            j += 2
        if out and lo <= out[-1] + 1:
            if hi > out[-1]:
                out[-1] = hi
        else:
            out.append(lo)
            out.append(hi)
    return out


def intersect(a, b):
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        lo = a[i] if a[i] > b[j] else b[j]
        hi = a[i + 1] if a[i + 1] < b[j + 1] else b[j + 1]
        if lo <= hi:
            out.append(lo)
            out.append(hi)
        if a[i + 1] < b[j + 1]:
            i += 2
        else:
            j += 2
    return out


def complement(a, top):
    out = []
    prev = 0
    for k in range(0, len(a), 2):
        if a[k] > prev:
            out.append(prev)
            out.append(a[k] - 1)
        prev = a[k + 1] + 1
    if prev <= top:
        out.append(prev)
        out.append(top)
    return out


def eventually(a, il, ih, top):
    """Positions e from which some member of ``a`` is reachable through the
    window offsets ``[il, ih]`` on the doubled lattice (even = point,
    odd = open unit segment)."""
    out = []
    odd_l = il & 1
    odd_h = ih & 1
    for k in range(0, len(a), 2):
        lo = a[k] - ih - (a[k] & odd_h)
        hi = a[k + 1] - il + (a[k + 1] & odd_l)
        if lo < 0:
            lo = 0
        if hi > top:
            hi = top
        if lo > hi:
            continue
        if out and lo <= out[-1] + 1:
            if hi > out[-1]:
                out[-1] = hi
        else:
            out.append(lo)
            out.append(hi)
    return out


def contains(a, e):
    lo, hi = 0, len(a) // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if a[2 * mid + 1] < e:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(a) // 2 and a[2 * lo] <= e


# ------------------------------------------------------------ CDCL

def solve_cnf(nvars, clauses):
    """Decide a CNF given as lists of nonzero DIMACS literals.

    Returns ``(sat, model, stats)`` where ``model[v]`` is the value of
    variable v (index 0 unused) when sat.
    """
    stats = {"vars": nvars, "clauses": len(clauses), "decisions": 0,
             "propagations": 0, "conflicts": 0}
    lv = [-1] * (2 * nvars + 2)       # literal value: 1 true, 0 false, -1 unassigned
    level = [0] * (nvars + 1)
    reason = [-1] * (nvars + 1)
    phase = [0] * (nvars + 1)         # 0 = prefer the positive literal
    watches = [[] for _ in range(2 * nvars + 2)]
    db = []
    trail = []
    trail_lim = []
    units = []

    for raw in clauses:
        seen = set()
        taut = False
        c = []
        for x in raw:
            v = x if x > 0 else -x
            if v == 0 or v > nvars:
                raise ValueError(f"literal {x} out of range")
            lit = 2 * v + (x < 0)
            if lit ^ 1 in seen:
                taut = True
                break
            if lit not in seen:
                seen.add(lit)
                c.append(lit)
        if taut:
            continue
        if not c:
            return False, None, stats
        if len(c) == 1:
            units.append(c[0])
            continue
        ci = len(db)
        db.append(c)
        watches[c[0]].append(ci)
        watches[c[1]].append(ci)

    def assign(lit, why):
        v = lit >> 1
        lv[lit] = 1
        lv[lit ^ 1] = 0
        level[v] = len(trail_lim)
        reason[v] = why
        trail.append(lit)

    for lit in units:
        if lv[lit] == 0:
            return False, None, stats
        if lv[lit] == -1:
            assign(lit, -1)

    qhead = 0
    dpos = 1
    seen = [False] * (nvars + 1)

    while True:
        # unit propagation
        conflict = -1
        while qhead < len(trail):
            fl = trail[qhead] ^ 1
            qhead += 1
            stats["propagations"] += 1
            ws = watches[fl]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = db[ci]
                if c[0] == fl:
                    c[0] = c[1]
                    c[1] = fl
                first = c[0]
                if lv[first] == 1:
                    ws[j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if lv[c[k]] != 0:
                        c[1] = c[k]
                        c[k] = fl
                        watches[c[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = ci
                j += 1
                if lv[first] == 0:
                    conflict = ci
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    break
                assign(first, ci)
            del ws[j:]
            if conflict >= 0:
                break

        if conflict >= 0:
            stats["conflicts"] += 1
            cur = len(trail_lim)
            if cur == 0:
                return False, None, stats
            # first-UIP analysis
            learnt = [0]
            counter = 0
            p = -1
            idx = len(trail) - 1
            c = db[conflict]
            while True:
                for q in c:
                    if q == p:
                        continue
                    v = q >> 1
                    if not seen[v] and level[v] > 0:
                        seen[v] = True
                        if level[v] == cur:
                            counter += 1
                        else:
                            learnt.append(q)
                while not seen[trail[idx] >> 1]:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                seen[p >> 1] = False
                counter -= 1
                if counter == 0:
                    break
                c = db[reason[p >> 1]]
            learnt[0] = p ^ 1
            for q in learnt:
                seen[q >> 1] = False
            back = 0
            if len(learnt) > 1:
                best = 1
                for k in range(2, len(learnt)):
                    if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                        best = k
                learnt[1], learnt[best] = learnt[best], learnt[1]
                back = level[learnt[1] >> 1]
            # backjump
            stop = trail_lim[back]
            for k in range(len(trail) - 1, stop - 1, -1):
                lit = trail[k]
                v = lit >> 1
                phase[v] = lit & 1
                lv[lit] = -1
                lv[lit ^ 1] = -1
                reason[v] = -1
                if v < dpos:
                    dpos = v
            del trail[stop:]
            del trail_lim[back:]
            qhead = len(trail)
            if len(learnt) == 1:
                assign(learnt[0], -1)
            else:
                ci = len(db)
                db.append(learnt)
                watches[learnt[0]].append(ci)
                watches[learnt[1]].append(ci)
                assign(learnt[0], ci)
            continue

        # decision: lowest unassigned variable, saved phase
        while dpos <= nvars and lv[2 * dpos] != -1:
            dpos += 1
        if dpos > nvars:
            model = [False] * (nvars + 1)
            for v in range(1, nvars + 1):
                model[v] = lv[2 * v] == 1
            return True, model, stats
        stats["decisions"] += 1
        trail_lim.append(len(trail))
        assign(2 * dpos + phase[dpos], -1)
