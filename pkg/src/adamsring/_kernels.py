"""Integer kernels behind group validation, Dixon's method and Adams sums.

Each kernel exists twice: a loop version written for ``numba.njit`` and a
vectorised numpy version.  ``adamsring._accel`` picks one per process; both are
importable here so tests and the benchmark can compare them directly.

All arrays are int64; modular arithmetic assumes ``p < 2**31`` so products fit.
"""

from __future__ import annotations

import numpy as np

# ---------------------------------------------------------------------------
# loop versions (numba-compatible)


def associativity_failure_loop(mul):
    n = mul.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            ij = mul[i, j]
            for k in range(n):
                if mul[ij, k] != mul[i, mul[j, k]]:
                    out[0] = i
                    out[1] = j
                    out[2] = k
                    return out
    return out


def class_constants_loop(mul, inv, class_of, reps, r):
    # c[j, k, l] = #{x in C_j : x^-1 z_l in C_k} for the representative z_l of C_l
    n = mul.shape[0]
    c = np.zeros((r, r, r), dtype=np.int64)
    for l in range(r):
        z = reps[l]
        for x in range(n):
            c[class_of[x], class_of[mul[inv[x], z]], l] += 1
    return c


def rref_mod_p_loop(a, p):
    m, n = a.shape
    M = a.copy() % p
    pivots = np.full(min(m, n), -1, dtype=np.int64)
    r = 0
    for c in range(n):
        if r >= m:
            break
        piv = -1
        for i in range(r, m):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = _powmod(M[r, c], p - 2, p)
        for j in range(n):
            M[r, j] = (M[r, j] * inv) % p
        for i in range(m):
            if i != r and M[i, c] != 0:
                f = M[i, c]
                for j in range(n):
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
        pivots[r] = c
        r += 1
    return M, pivots[:r]


def _powmod(b, e, p):
    result = 1
    b = b % p
    while e > 0:
        if e & 1:
            result = (result * b) % p
        b = (b * b) % p
        e >>= 1
    return result


def charpoly_mod_p_loop(a, p):
    """Characteristic polynomial det(xI - a) mod p, coefficients lowest degree first."""
    n = a.shape[0]
    H = a.copy() % p
    # reduce to upper Hessenberg form by similarity
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if H[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != j + 1:
            for t in range(n):
                tmp = H[piv, t]
                H[piv, t] = H[j + 1, t]
                H[j + 1, t] = tmp
            for t in range(n):
                tmp = H[t, piv]
                H[t, piv] = H[t, j + 1]
                H[t, j + 1] = tmp
        inv = _powmod(H[j + 1, j], p - 2, p)
        for i in range(j + 2, n):
            u = (H[i, j] * inv) % p
            if u != 0:
                for t in range(n):
                    H[i, t] = (H[i, t] - u * H[j + 1, t]) % p
                for t in range(n):
                    H[t, j + 1] = (H[t, j + 1] + u * H[t, i]) % p
    # recurrence on leading principal minors
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        h = H[k - 1, k - 1]
        for d in range(k + 1):
            v = 0
            if d >= 1:
                v = polys[k - 1, d - 1]
            v = (v - h * polys[k - 1, d]) % p
            polys[k, d] = v
        prod = 1
        for i in range(1, k):
            prod = (prod * H[k - i, k - i - 1]) % p
            f = (H[k - 1 - i, k - 1] * prod) % p
            if f != 0:
                for d in range(k - i):
                    polys[k, d] = (polys[k, d] - f * polys[k - 1 - i, d]) % p
    return polys[n].copy()


def pair_sums_loop(X, Y, w):
    # S[i, j, m] = sum_c w[c] * sum_l X[i, c, l] * Y[j, c, (l - m) mod e]
    a, nc, e = X.shape
    b = Y.shape[0]
    S = np.zeros((a, b, e), dtype=np.int64)
    for i in range(a):
        for j in range(b):
            for c in range(nc):
                wc = w[c]
                for l in range(e):
                    x = X[i, c, l]
                    if x == 0:
                        continue
                    x *= wc
                    for m in range(e):
                        y = Y[j, c, (l - m) % e]
                        if y != 0:
                            S[i, j, m] += x * y
    return S


def products_loop(X, Y):
    # P[i, j, c, m] = sum_{l + l' = m mod e} X[i, c, l] * Y[j, c, l']
    a, nc, e = X.shape
    b = Y.shape[0]
    P = np.zeros((a, b, nc, e), dtype=np.int64)
    for i in range(a):
        for j in range(b):
            for c in range(nc):
                for l in range(e):
                    x = X[i, c, l]
                    if x == 0:
                        continue
                    for l2 in range(e):
                        y = Y[j, c, l2]
                        if y != 0:
                            P[i, j, c, (l + l2) % e] += x * y
    return P


# ---------------------------------------------------------------------------
# numpy versions


def associativity_failure_np(mul):
    n = mul.shape[0]
    for i in range(n):
        left = mul[mul[i, :], :]          # (i*j)*k over (j, k)
        right = mul[i, mul]               # i*(j*k)
        bad = np.argwhere(left != right)
        if len(bad):
            return np.array([i, bad[0, 0], bad[0, 1]], dtype=np.int64)
    return np.full(3, -1, dtype=np.int64)


def class_constants_np(mul, inv, class_of, reps, r):
    c = np.zeros((r, r, r), dtype=np.int64)
    xs_class = class_of
    for l in range(r):
        ks = class_of[mul[inv, reps[l]]]
        np.add.at(c[:, :, l], (xs_class, ks), 1)
    return c


def rref_mod_p_np(a, p):
    M = np.array(a, dtype=np.int64) % p
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        f = M[:, c].copy()
        f[r] = 0
        M = (M - np.outer(f, M[r])) % p
        pivots.append(c)
        r += 1
    return M, np.array(pivots, dtype=np.int64)


def charpoly_mod_p_np(a, p):
    H = np.array(a, dtype=np.int64) % p
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if not len(nz):
            continue
        piv = j + 1 + nz[0]
        if piv != j + 1:
            H[[piv, j + 1]] = H[[j + 1, piv]]
            H[:, [piv, j + 1]] = H[:, [j + 1, piv]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        for i in range(j + 2, n):
            u = (int(H[i, j]) * inv) % p
            if u:
                H[i] = (H[i] - u * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + u * H[:, i]) % p
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:k] = (cur[:k] - H[k - 1, k - 1] * prev) % p
        prod = 1
        for i in range(1, k):
            prod = (prod * int(H[k - i, k - i - 1])) % p
            f = (int(H[k - 1 - i, k - 1]) * prod) % p
            if f:
                q = polys[k - 1 - i]
                cur[: len(q)] = (cur[: len(q)] - f * q) % p
        polys.append(cur % p)
    return polys[n]


def pair_sums_np(X, Y, w):
    # roll(Y, m)[..., l] = Y[..., (l - m) mod e]
    a, nc, e = X.shape
    Xw = (X * w[None, :, None]).reshape(a, nc * e)
    S = np.empty((a, Y.shape[0], e), dtype=np.int64)
    for m in range(e):
        S[:, :, m] = Xw @ np.roll(Y, m, axis=2).reshape(Y.shape[0], nc * e).T
    return S


def products_np(X, Y):
    # roll(Y, l)[..., m] = Y[..., (m - l) mod e]
    a, nc, e = X.shape
    P = np.zeros((a, Y.shape[0], nc, e), dtype=np.int64)
    for l in range(e):
        x = X[:, :, l]
        if not x.any():
            continue
        P += x[:, None, :, None] * np.roll(Y, l, axis=2)[None]
    return P


LOOP_KERNELS = {
    "associativity_failure": associativity_failure_loop,
    "class_constants": class_constants_loop,
    "rref_mod_p": rref_mod_p_loop,
    "charpoly_mod_p": charpoly_mod_p_loop,
    "pair_sums": pair_sums_loop,
    "products": products_loop,
}

NUMPY_KERNELS = {
    "associativity_failure": associativity_failure_np,
    "class_constants": class_constants_np,
    "rref_mod_p": rref_mod_p_np,
    "charpoly_mod_p": charpoly_mod_p_np,
    "pair_sums": pair_sums_np,
    "products": products_np,
}
