"""Brute-force reference implementations.

Everything here evaluates rule definitions directly: sort raw scores per
task, split tied mass by averaging, enumerate subsets for the set-valued
rules, enumerate polytope vertices for weight feasibility. Slow and
deliberately separate from the package internals; only the raw Leaderboard
accessors are used.
"""

import math
from fractions import Fraction
from itertools import combinations

ZERO = Fraction(0)
ONE = Fraction(1)


def adjusted(lb, system, task):
    v = lb.score(system, task)
    if v is None:
        return None
    return -v if lb.direction(task) == "min" else v


def task_tiers(lb, task, systems):
    """Tie groups best first, by raw adjusted score."""
    vals = {}
    for m in systems:
        a = adjusted(lb, m, task)
        if a is None:
            raise ValueError(f"missing {m}/{task}")
        vals[m] = a
    tiers = []
    for v in sorted(set(vals.values()), reverse=True):
        tiers.append(sorted(m for m in systems if vals[m] == v))
    return tiers


def vector_scores(lb, entries, systems=None):
    """Total score per system for one scoring vector, ties averaged."""
    systems = list(lb.systems if systems is None else systems)
    entries = [Fraction(e) for e in entries]
    assert len(entries) == len(systems)
    total = {m: ZERO for m in systems}
    for task in lb.tasks:
        w = lb.task_weight(task)
        start = 0
        for tier in task_tiers(lb, task, systems):
            g = len(tier)
            share = sum(entries[start:start + g], ZERO) / g
            for m in tier:
                total[m] += w * share
            start += g
    return total


def argmax_set(scores):
    best = max(scores.values())
    return {m for m in scores if scores[m] == best}


def plurality_entries(n):
    return [1] + [0] * (n - 1)


def two_approval_entries(n):
    return [1] * min(2, n) + [0] * max(0, n - 2)


def antiplurality_entries(n):
    return [1] * (n - 1) + [0] if n > 1 else [0]


def borda_entries(n):
    return list(range(n - 1, -1, -1))


def dowdall_entries(n):
    return [Fraction(1, i) for i in range(1, n + 1)]


def top_k_entries(n, k):
    return [1] * k + [0] * (n - k)


def threshold_winners(lb, systems=None):
    systems = list(lb.systems if systems is None else systems)
    n = len(systems)
    if n == 1:
        return set(systems)
    tied = set(systems)
    for zeros in range(1, n):
        scores = vector_scores(lb, top_k_entries(n, n - zeros), systems)
        best = max(scores[m] for m in tied)
        tied = {m for m in tied if scores[m] == best}
        if len(tied) == 1:
            break
    return tied


def _eliminate(lb, entries_fn):
    survivors = list(lb.systems)
    while len(survivors) > 1:
        scores = vector_scores(lb, entries_fn(len(survivors)), survivors)
        worst = min(scores.values())
        if worst == max(scores.values()):
            break
        survivors = [m for m in survivors if scores[m] != worst]
    return set(survivors)


def baldwin_winners(lb):
    return _eliminate(lb, borda_entries)


def hare_winners(lb):
    return _eliminate(lb, plurality_entries)


def last_place_mass(lb, systems):
    """Weight each system collects for finishing in the very last tier."""
    mass = {m: ZERO for m in systems}
    n = len(systems)
    for task in lb.tasks:
        w = lb.task_weight(task)
        tiers = task_tiers(lb, task, systems)
        bottom = tiers[-1]
        # averaged entries of (0,...,0,1) over the bottom tier's span
        for m in bottom:
            mass[m] += w / len(bottom)
        assert sum(len(t) for t in tiers) == n
    return mass


def coombs_winners(lb):
    survivors = list(lb.systems)
    total = sum((lb.task_weight(t) for t in lb.tasks), ZERO)
    while len(survivors) > 1:
        top = vector_scores(lb, plurality_entries(len(survivors)), survivors)
        best = max(top.values())
        if 2 * best > total:
            return {m for m in survivors if top[m] == best}
        mass = last_place_mass(lb, survivors)
        worst = max(mass.values())
        if worst == min(mass.values()):
            break
        survivors = [m for m in survivors if mass[m] != worst]
    return set(survivors)


def nanson_winners(lb):
    survivors = list(lb.systems)
    while len(survivors) > 1:
        scores = vector_scores(lb, borda_entries(len(survivors)), survivors)
        mean = sum(scores.values(), ZERO) / len(survivors)
        below = [m for m in survivors if scores[m] < mean]
        if not below:
            break
        survivors = [m for m in survivors if m not in below]
    return set(survivors)


def margins(lb):
    """Pairwise weighted sign sums over tasks where both systems score."""
    out = {}
    for a in lb.systems:
        for b in lb.systems:
            if a == b:
                continue
            m = ZERO
            for task in lb.tasks:
                x = adjusted(lb, a, task)
                y = adjusted(lb, b, task)
                if x is None or y is None:
                    continue
                w = lb.task_weight(task)
                if x > y:
                    m += w
                elif x < y:
                    m -= w
            out[(a, b)] = m
    return out


def supports(lb):
    """s(a, b): weight strictly favouring a, reported only where a beats b."""
    mg = margins(lb)
    out = {}
    for a in lb.systems:
        for b in lb.systems:
            if a == b:
                continue
            if mg[(a, b)] <= 0:
                out[(a, b)] = ZERO
                continue
            s = ZERO
            for task in lb.tasks:
                x = adjusted(lb, a, task)
                y = adjusted(lb, b, task)
                if x is None or y is None:
                    continue
                if x > y:
                    s += lb.task_weight(task)
            out[(a, b)] = s
    return out


def beats_table(lb):
    mg = margins(lb)
    return {pair: m > 0 for pair, m in mg.items()}


def lower_set(beats, systems, m):
    return {x for x in systems if x != m and beats[(m, x)]}


def upper_set(beats, systems, m):
    return {x for x in systems if x != m and beats[(x, m)]}


def condorcet_winner(lb):
    beats = beats_table(lb)
    systems = lb.systems
    for m in systems:
        if all(beats[(m, x)] for x in systems if x != m):
            return m
    return None


def copeland_winners(lb, variant):
    beats = beats_table(lb)
    systems = lb.systems
    if variant == 1:
        score = {m: len(lower_set(beats, systems, m)) - len(upper_set(beats, systems, m))
                 for m in systems}
        return argmax_set(score)
    if variant == 2:
        score = {m: len(lower_set(beats, systems, m)) for m in systems}
        return argmax_set(score)
    score = {m: len(upper_set(beats, systems, m)) for m in systems}
    best = min(score.values())
    return {m for m in systems if score[m] == best}


def minimax_winners(lb):
    sup = supports(lb)
    ranks = {}
    for m in lb.systems:
        defeats = [sup[(b, m)] for b in lb.systems if b != m and sup[(b, m)] > 0]
        ranks[m] = -max(defeats) if defeats else ZERO
    return argmax_set(ranks)


def black_winners(lb):
    cw = condorcet_winner(lb)
    if cw is not None:
        return {cw}
    return argmax_set(vector_scores(lb, borda_entries(len(lb.systems))))


def _subsets(systems):
    for size in range(1, len(systems) + 1):
        for combo in combinations(systems, size):
            yield set(combo)


def _minimal_union(candidates):
    minimal = [q for q in candidates
               if not any(other < q for other in candidates)]
    out = set()
    for q in minimal:
        out |= q
    return out


def minimal_dominant(lb):
    beats = beats_table(lb)
    systems = set(lb.systems)
    dominant = [q for q in _subsets(lb.systems)
                if all(beats[(a, b)] for a in q for b in systems - q)]
    return _minimal_union(dominant)


def minimal_undominated(lb):
    beats = beats_table(lb)
    systems = set(lb.systems)
    und = [q for q in _subsets(lb.systems)
           if not any(beats[(b, a)] for a in q for b in systems - q)]
    return _minimal_union(und)


def minimal_weakly_stable(lb):
    beats = beats_table(lb)
    systems = set(lb.systems)

    def stable(q):
        for x in q:
            for y in systems - q:
                if beats[(y, x)] and not any(beats[(z, y)] for z in q):
                    return False
        return True

    return _minimal_union([q for q in _subsets(lb.systems) if stable(q)])


def uncovered(lb, variant):
    beats = beats_table(lb)
    systems = set(lb.systems)
    out = set()
    for a in systems:
        la = lower_set(beats, systems, a)
        ua = upper_set(beats, systems, a)
        covered = False
        for b in systems - {a}:
            lb_ = lower_set(beats, systems, b)
            ub = upper_set(beats, systems, b)
            if variant == 1:
                if lb_ > la:
                    covered = True
            elif variant == 2:
                if beats[(b, a)] and ub <= ua:
                    covered = True
            elif variant == 3:
                if lb_ >= la and ub <= ua and (lb_ > la or ub < ua):
                    covered = True
            else:
                if ub < ua:
                    covered = True
            if covered:
                break
        if not covered:
            out.add(a)
    return out


def mean_winners(lb):
    total = {m: ZERO for m in lb.systems}
    for m in lb.systems:
        for task in lb.tasks:
            total[m] += lb.task_weight(task) * Fraction(str(lb.score(m, task)))
    return argmax_set(total)


def gmean_winners(lb):
    # geometric mean order == order of prod(score^e) once weights are
    # scaled to integers, and that product is exact
    denom = 1
    for t in lb.tasks:
        d = lb.task_weight(t).denominator
        denom = denom * d // math.gcd(denom, d)
    powers = {}
    for m in lb.systems:
        p = Fraction(1)
        for t in lb.tasks:
            e = int(lb.task_weight(t) * denom)
            p *= Fraction(str(lb.score(m, t))) ** e
        powers[m] = p
    return argmax_set(powers)


def og_winners(lb, gamma=0.95):
    total = {m: ZERO for m in lb.systems}
    g = Fraction(str(gamma))
    W = sum((lb.task_weight(t) for t in lb.tasks), ZERO)
    for m in lb.systems:
        for task in lb.tasks:
            s = Fraction(str(lb.score(m, task)))
            gap = g - s if s < g else ZERO
            total[m] += lb.task_weight(task) * gap
        total[m] /= W
    best = min(total.values())
    return {m for m in total if total[m] == best}


# -- weight feasibility by vertex enumeration --------------------------------


def _solve_square(rows, rhs):
    """Gaussian elimination over Fractions; None if singular."""
    n = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * p for v, p in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def vertex_feasible(matrix):
    """Is {w >= 0, sum w = 1, G w >= 0} nonempty? Checks every basic point.

    The region is a subset of the probability simplex, so if it is nonempty
    it has a vertex where T-1 of the inequalities hold with equality.
    """
    tasks = len(matrix.tasks)
    ineqs = []
    for j in range(tasks):
        row = [ZERO] * tasks
        row[j] = ONE
        ineqs.append(row)
    for grow in matrix.rows:
        ineqs.append([Fraction(v) for v in grow])

    def ok(w):
        return (all(v >= 0 for v in w)
                and sum(w) == 1
                and all(sum(c * v for c, v in zip(row, w)) >= 0 for row in ineqs))

    if tasks == 1:
        return ok([ONE])
    for active in combinations(range(len(ineqs)), tasks - 1):
        rows = [[ONE] * tasks] + [ineqs[i] for i in active]
        rhs = [ONE] + [ZERO] * (tasks - 1)
        w = _solve_square(rows, rhs)
        if w is not None and ok(w):
            return True
    return False
