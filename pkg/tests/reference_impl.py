"""Slow, scalar reference implementation used as a test oracle.

Everything here is deliberately written the dumb way: plain lists, per-cell
loops, traits recomputed from the complete history at every step (no
incremental counters, no recurrences), and the geometric charge evaluated
as an explicit power-series sum.  The fast package code must agree with
this bit for bit.
"""

TIE_EPS = 1e-9


def subrule_bits(code):
    """Five bits of a subrule, index = neighbour sum, MSB answers sum 0."""
    return [(code >> (4 - k)) & 1 for k in range(5)]


def trait_from_history(history, model):
    """Trait of one cell given its complete state history (oldest first).

    model is a tuple: ("ahistoric",), ("majority",), ("tau", k) or
    ("alpha", x).  Ties resolve to the current (latest) state.
    """
    current = history[-1]
    kind = model[0]
    if kind == "ahistoric":
        return current
    if kind == "majority":
        window = history
    elif kind == "tau":
        window = history[-min(model[1], len(history)):]
    elif kind == "alpha":
        alpha = model[1]
        # Direct power series: w(T) = sum_t alpha^(T-t) s(t), norm likewise
        # with every s(t) = 1.
        T = len(history) - 1
        omega = sum((alpha ** (T - t)) * history[t] for t in range(len(history)))
        norm = sum(alpha ** (T - t) for t in range(len(history)))
        if 2 * omega > norm + TIE_EPS:
            return 1
        if 2 * omega < norm - TIE_EPS:
            return 0
        return current
    else:
        raise ValueError(f"unknown model {model!r}")
    ones = sum(window)
    zeros = len(window) - ones
    if ones > zeros:
        return 1
    if zeros > ones:
        return 0
    return current


def reference_run(phi, psi, a0, b0, steps, model=("ahistoric",)):
    """Evolve two rings for `steps` rows (row 0 = initial); returns lists.

    Chain a cell i reads a[i-1], a[i+1], b[i], b[i-1]; chain b cell i reads
    b[i-1], b[i+1], a[i], a[i+1]; indices wrap.  A cell's own trait decides
    phi versus psi.
    """
    phi_bits = subrule_bits(phi)
    psi_bits = subrule_bits(psi)
    n = len(a0)
    rows_a = [list(a0)]
    rows_b = [list(b0)]
    for _ in range(1, steps):
        trait_a = [
            trait_from_history([row[i] for row in rows_a], model) for i in range(n)
        ]
        trait_b = [
            trait_from_history([row[i] for row in rows_b], model) for i in range(n)
        ]
        next_a = []
        next_b = []
        for i in range(n):
            left, right = (i - 1) % n, (i + 1) % n
            total_a = trait_a[left] + trait_a[right] + trait_b[i] + trait_b[left]
            bits = psi_bits if trait_a[i] else phi_bits
            next_a.append(bits[total_a])
            total_b = trait_b[left] + trait_b[right] + trait_a[i] + trait_a[right]
            bits = psi_bits if trait_b[i] else phi_bits
            next_b.append(bits[total_b])
        rows_a.append(next_a)
        rows_b.append(next_b)
    return rows_a, rows_b


def census_by_dict(pattern):
    """3x3 block counts of a list-of-lists pattern; columns wrap."""
    T = len(pattern)
    n = len(pattern[0])
    counts = {}
    for t in range(T - 2):
        for j in range(n):
            key = 0
            for r in range(3):
                for c in range(3):
                    key = 2 * key + pattern[t + r][(j + c) % n]
            counts[key] = counts.get(key, 0) + 1
    return counts


def smallest_recurrence(rows_a, rows_b, p_max):
    """Exhaustive (period, shift) search over a window of rows.

    Returns the smallest period p (and for it the shift of smallest
    magnitude, positive preferred on a tie) such that rolling every
    reference row right by d reproduces the row p steps later on both
    chains, or None.  Rows must span at least 2 * p_max + 1 entries.
    """
    n = len(rows_a[0])
    span = p_max + 1

    def rolled(row, d):
        return [row[(j - d) % n] for j in range(n)]

    half = (n - 1) // 2
    shifts = sorted(
        ((d + half) % n - half for d in range(n)), key=lambda s: (abs(s), s < 0)
    )
    for p in range(1, p_max + 1):
        for d in shifts:
            if all(
                rolled(rows_a[t], d) == rows_a[t + p]
                and rolled(rows_b[t], d) == rows_b[t + p]
                for t in range(span)
            ):
                return p, d
    return None
