"""Integer kernels for chart enumeration (pure Python reference)."""


def chart_count(cycle, T):
    """Number of (j, p, q) with 1 <= q < T and q < p <= (b_j - 1) q."""
    total = 0
    for b in cycle:
        for q in range(1, T):
            total += (b - 2) * q
    return total


def chart_points(cycle, T):
    """List of (j, p, q, P, Q): p = t_{j-1}, q = t_j is the first minimum of
    the trace sequence, and (P, Q) = (t_{-1}, t_0) are base coordinates."""
    out = []
    for j, b in enumerate(cycle):
        for q in range(1, T):
            for p in range(q + 1, (b - 1) * q + 1):
                u, v = p, q          # (t_{i-1}, t_i) with i = j
                for i in range(j - 1, -1, -1):
                    # (t_{i-1}, t_i) from (t_i, t_{i+1})
                    u, v = cycle[i] * u - v, u
                out.append((j, p, q, u, v))
    return out


def min_trace(cycle, t_m1, t_0, max_steps=100000):
    """First minimum of t_j along the vertex line, t_{j+1} = b_j t_j - t_{j-1}.

    Returns (value, j).  Raises ValueError if the sequence is not eventually
    increasing on both sides (element not totally positive).
    """
    r = len(cycle)
    j, prev, cur = 0, t_m1, t_0
    steps = 0
    # walk backwards while the previous value is not larger
    while prev <= cur:
        if prev <= 0 or steps > max_steps:
            raise ValueError("trace sequence is not bounded below by a positive value")
        j -= 1
        prev, cur = cycle[(j) % r] * prev - cur, prev
        steps += 1
    # now t_{j-1} > t_j; walk forward while the next value is smaller
    while True:
        nxt = cycle[j % r] * cur - prev
        if nxt >= cur:
            break
        if nxt <= 0 or steps > max_steps:
            raise ValueError("trace sequence is not bounded below by a positive value")
        prev, cur = cur, nxt
        j += 1
        steps += 1
    if cur <= 0:
        raise ValueError("trace sequence is not bounded below by a positive value")
    return cur, j
