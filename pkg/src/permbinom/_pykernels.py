"""Pure-Python kernels; same signatures as the compiled ``_ckernels``.

Elements are handled through log tables: nonzero x = g^L, and sums use the
Zech table (g^A + g^B = g^(A + zech[B - A])).  A log of -1 stands for zero.
"""

from array import array


def build_exp_table(p, d, modulus, gen, order):
    red = [(-c) % p for c in modulus[:d]]
    g = list(gen)
    cur = [1] + [0] * (d - 1)
    out = array("q", [0]) * order
    for k in range(order):
        idx = 0
        for c in reversed(cur):
            idx = idx * p + c
        out[k] = idx
        prod = [0] * (2 * d - 1)
        for i in range(d):
            x = cur[i]
            if x:
                for j in range(d):
                    prod[i + j] += x * g[j]
        for m in range(2 * d - 2, d - 1, -1):
            c = prod[m] % p
            if c:
                for j in range(d):
                    prod[m - d + j] += c * red[j]
        cur = [v % p for v in prod[:d]]
    return out


def is_permutation_log(exp, zech, log_a, e, order):
    """Is x -> a x + x^e injective on the field?  Short-circuits on a collision.

    f(0) = 0, so any nonzero x with f(x) = 0 is already a collision.
    """
    seen = bytearray(order + 1)
    step = (e - 1) % order
    s = (-log_a) % order
    la = log_a
    for L in range(order):
        # f(g^L) = g^(A+L) * (1 + g^((e-1)L - A))
        z = zech[s]
        if z < 0:
            return False
        idx = exp[(la + L + z) % order]
        if seen[idx]:
            return False
        seen[idx] = 1
        s += step
        if s >= order:
            s -= order
    return True


def power_sum_log(zech, log_a, e, s_exp, order):
    """Log of sum_{x != 0} f(x)^s, or -1 when the sum is zero."""
    acc = -1
    step = (e - 1) % order
    s = (-log_a) % order
    for L in range(order):
        z = zech[s]
        s += step
        if s >= order:
            s -= order
        if z < 0:
            continue
        t = (log_a + L + z) * s_exp % order
        if acc < 0:
            acc = t
        else:
            w = zech[(t - acc) % order]
            acc = -1 if w < 0 else (acc + w) % order
    return acc


def lambda_sum_log(zech, coef_logs, exps, log_a, order):
    """Log of sum_k g^coef_logs[k] * a^(-exps[k]), or -1 when zero."""
    acc = -1
    for k in range(len(coef_logs)):
        t = (coef_logs[k] - exps[k] * log_a) % order
        if acc < 0:
            acc = t
        else:
            w = zech[(t - acc) % order]
            acc = -1 if w < 0 else (acc + w) % order
    return acc
