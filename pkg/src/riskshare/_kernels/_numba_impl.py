"""numba-compiled kernels. Signatures mirror :mod:`._numpy_impl` exactly."""

import numpy as np
from numba import njit


@njit(cache=True)
def _sort_desc(v, idx):
    # insertion sort of indices by value, descending; m is small
    m = v.shape[0]
    for k in range(m):
        idx[k] = k
    for k in range(1, m):
        cur = idx[k]
        x = v[cur]
        p = k - 1
        while p >= 0 and v[idx[p]] < x:
            idx[p + 1] = idx[p]
            p -= 1
        idx[p + 1] = cur


@njit(cache=True)
def _choquet_one(v, hrow, idx):
    _sort_desc(v, idx)
    mask = 0
    prev = hrow[0]
    acc = 0.0
    for k in range(v.shape[0]):
        j = idx[k]
        mask |= 1 << j
        cur = hrow[mask]
        acc += v[j] * (cur - prev)
        prev = cur
    return acc


@njit(cache=True)
def choquet_rows(V, H):
    K, m = V.shape
    out = np.empty(K)
    idx = np.empty(m, np.int64)
    for r in range(K):
        out[r] = _choquet_one(V[r], H, idx)
    return out


@njit(cache=True)
def pair_violation(H):
    N = H.shape[0]
    sub = 0.0
    si = -1
    sj = -1
    sup = 0.0
    ui = -1
    uj = -1
    for i in range(N):
        for j in range(i, N - i):
            # h(x+y) <= h(x) + h(y)
            d = H[i + j] - H[i] - H[j]
            if d > sub:
                sub = d
                si = i
                sj = j
            # dual: ht(x) + ht(y) <= ht(x+y), ht(t_k) = 1 - H[N-1-k]
            e = (1.0 - H[N - 1 - i]) + (1.0 - H[N - 1 - j]) - (1.0 - H[N - 1 - i - j])
            if e > sup:
                sup = e
                ui = i
                uj = j
    return sub, si, sj, sup, ui, uj


@njit(cache=True)
def _passes(A, mode, tol):
    n, m = A.shape
    if mode == 0:
        return True
    if mode == 1 or mode == 2:
        sgn = 1.0 if mode == 1 else -1.0
        for a in range(n):
            for b in range(a + 1, n):
                for p in range(m):
                    for q in range(p + 1, m):
                        prod = (A[a, p] - A[a, q]) * (A[b, p] - A[b, q])
                        if sgn * prod > tol:
                            return False
        return True
    # mode 3: partial sums against the next component
    S = A[0].copy()
    for c in range(1, n):
        for p in range(m):
            for q in range(p + 1, m):
                if (S[p] - S[q]) * (A[c, p] - A[c, q]) > tol:
                    return False
        for p in range(m):
            S[p] += A[c, p]
    return True


@njit(cache=True)
def _lex_less(A, B):
    n, m = A.shape
    for i in range(n):
        for j in range(m):
            if A[i, j] < B[i, j]:
                return True
            if A[i, j] > B[i, j]:
                return False
    return False


@njit(cache=True)
def grid_search(T, off, radix, H, mode, tol, tie_eps):
    m = radix.shape[0]
    n = T.shape[1]
    total = 1
    for j in range(m):
        total *= radix[j]
    digits = np.zeros(m, np.int64)
    A = np.empty((n, m))
    bestA = np.zeros((n, m))
    idx = np.empty(m, np.int64)
    best = np.inf
    nfeas = 0
    for _ in range(total):
        for j in range(m):
            row = off[j] + digits[j]
            for i in range(n):
                A[i, j] = T[row, i]
        if _passes(A, mode, tol):
            nfeas += 1
            val = 0.0
            for i in range(n):
                val += _choquet_one(A[i], H[i], idx)
            if val < best - tie_eps or (abs(val - best) <= tie_eps and _lex_less(A, bestA)):
                best = val
                bestA[:, :] = A
        j = m - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < radix[j]:
                break
            digits[j] = 0
            j -= 1
    return best, bestA, nfeas


@njit(cache=True)
def grid_collect(T, off, radix, mode, tol, cap):
    m = radix.shape[0]
    n = T.shape[1]
    total = 1
    for j in range(m):
        total *= radix[j]
    digits = np.zeros(m, np.int64)
    A = np.empty((n, m))
    out = np.empty((cap, m), np.int64)
    count = 0
    for _ in range(total):
        for j in range(m):
            row = off[j] + digits[j]
            for i in range(n):
                A[i, j] = T[row, i]
        if _passes(A, mode, tol):
            if count < cap:
                out[count, :] = digits
            count += 1
        j = m - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < radix[j]:
                break
            digits[j] = 0
            j -= 1
    return out[: min(count, cap)], count


@njit(cache=True)
def prop1_search(X, assigns, n, mvals, H, sign_mode, tie_eps):
    m = X.shape[0]
    A = np.empty((n, m))
    bestA = np.zeros((n, m))
    idx = np.empty(m, np.int64)
    bound = np.empty(n)
    side = np.empty(n)
    best = np.inf
    nfeas = 0
    for r in range(assigns.shape[0]):
        assign = assigns[r]
        for k in range(mvals.shape[0]):
            mm = mvals[k]
            ok = True
            if sign_mode == 0:
                for i in range(n):
                    side[i] = mm / n
            else:
                s = 0.0
                for i in range(n):
                    has_in = False
                    has_out = False
                    b = 0.0
                    for j in range(m):
                        if assign[j] == i:
                            r = mm - X[j]
                            if not has_in:
                                b = r
                            elif sign_mode == 1:
                                b = max(b, r)
                            else:
                                b = min(b, r)
                            has_in = True
                        else:
                            has_out = True
                    if has_out:
                        if not has_in:
                            b = 0.0
                        elif sign_mode == 1:
                            b = max(b, 0.0)
                        else:
                            b = min(b, 0.0)
                    bound[i] = b
                    s += b
                slack = mm - s
                if sign_mode == 1 and slack < -tie_eps:
                    ok = False
                if sign_mode == 2 and slack > tie_eps:
                    ok = False
                if ok:
                    for i in range(n):
                        side[i] = bound[i] + slack / n
            if not ok:
                continue
            for i in range(n):
                for j in range(m):
                    if assign[j] == i:
                        A[i, j] = (X[j] - mm) + side[i]
                    else:
                        A[i, j] = side[i]
            nfeas += 1
            val = 0.0
            for i in range(n):
                val += _choquet_one(A[i], H[i], idx)
            if val < best - tie_eps or (abs(val - best) <= tie_eps and _lex_less(A, bestA)):
                best = val
                bestA[:, :] = A
    return best, bestA, nfeas


@njit(cache=True)
def _pair_eval(X, perm, H1, H2, sign_mode, tie_eps, lb, beta, A):
    # Y1 nondecreasing and Y2 = X - Y1 nonincreasing along perm; linear in
    # the increments d_k >= max(0, dX_k), so the optimum is a vertex
    m = X.shape[0]
    full = (1 << m) - 1
    h1f = H1[full]
    h2f = H2[full]
    kappa = h1f - h2f
    const = X[perm[m - 1]] * h2f
    # S_k = atoms perm[k+1:], complement = perm[:k+1]
    lbsum = 0.0
    best_coef = 0.0
    best_k = -2  # -2: none, -1: c
    prefix = 0
    for k in range(m - 1):
        prefix |= 1 << perm[k]
        sk = full ^ prefix
        dx = X[perm[k + 1]] - X[perm[k]]
        lb[k] = dx if dx > 0.0 else 0.0
        beta[k] = H1[sk] + H2[prefix] - h2f
        const -= dx * H2[prefix]
        const += beta[k] * lb[k]
        lbsum += lb[k]
        if beta[k] < best_coef - tie_eps:
            best_coef = beta[k]
            best_k = k
    if sign_mode == 0:
        if kappa > tie_eps or kappa < -tie_eps or best_k != -2:
            return -np.inf
        c = 0.0
        budget = 0.0
    else:
        if sign_mode == 1:
            c = 0.0
            cap = X[perm[m - 1]]
        else:
            c = X[perm[0]]
            cap = 0.0
        budget = cap - c - lbsum
        if budget < -tie_eps:
            return np.inf
        if budget < 0.0:
            budget = 0.0
        if kappa < best_coef - tie_eps:
            best_coef = kappa
            best_k = -1
    val = const + kappa * c
    if best_k == -1:
        c += budget
        val += kappa * budget
    elif best_k >= 0:
        lb[best_k] += budget
        val += beta[best_k] * budget
    y = c
    A[0, perm[0]] = y
    A[1, perm[0]] = X[perm[0]] - y
    for k in range(m - 1):
        y += lb[k]
        A[0, perm[k + 1]] = y
        A[1, perm[k + 1]] = X[perm[k + 1]] - y
    return val


@njit(cache=True)
def pair_counter_exact(X, H1, H2, sign_mode, tie_eps):
    m = X.shape[0]
    perm = np.arange(m)
    ctr = np.zeros(m, np.int64)
    lb = np.empty(max(m - 1, 1))
    beta = np.empty(max(m - 1, 1))
    A = np.zeros((2, m))
    bestA = np.zeros((2, m))
    best = np.inf
    count = 0
    # Heap's algorithm, iterative
    i = 0
    first = True
    while True:
        if not first:
            while i < m and ctr[i] >= i:
                ctr[i] = 0
                i += 1
            if i >= m:
                break
            if i % 2 == 0:
                t = perm[0]
                perm[0] = perm[i]
                perm[i] = t
            else:
                t = perm[ctr[i]]
                perm[ctr[i]] = perm[i]
                perm[i] = t
            ctr[i] += 1
            i = 0
        first = False
        val = _pair_eval(X, perm, H1, H2, sign_mode, tie_eps, lb, beta, A)
        count += 1
        if val == -np.inf:
            return val, np.zeros((2, m)), count
        if val < best - tie_eps or (val != np.inf and abs(val - best) <= tie_eps and _lex_less(A, bestA)):
            best = val
            bestA[:, :] = A
    return best, bestA, count
