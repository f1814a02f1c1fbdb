"""Pure-numpy versions of the hot kernels.

Enumerations are processed in fixed-size chunks; results (values and the
tie-broken argmin) match the compiled path.
"""

import itertools

import numpy as np

CHUNK = 1 << 14


def choquet_rows(V, H):
    V = np.asarray(V, dtype=float)
    if V.ndim == 1:
        V = V[None, :]
    order = np.argsort(-V, axis=1, kind="stable")
    masks = np.cumsum(np.left_shift(np.int64(1), order), axis=1)
    hv = H[masks]
    dh = np.diff(hv, axis=1, prepend=np.full((V.shape[0], 1), H[0]))
    return np.sum(np.take_along_axis(V, order, axis=1) * dh, axis=1)


def pair_violation(H):
    N = H.shape[0]
    i = np.arange(N)[:, None]
    j = np.arange(N)[None, :]
    valid = (j >= i) & (i + j <= N - 1)
    k = np.where(valid, i + j, 0)
    sub = np.where(valid, H[k] - H[i] - H[j], -np.inf)
    Ht = 1.0 - H[::-1]
    sup = np.where(valid, Ht[i] + Ht[j] - Ht[k], -np.inf)

    def worst(M):
        flat = int(np.argmax(M))
        a, b = divmod(flat, N)
        v = float(M[a, b])
        if v > 0.0:
            return v, a, b
        return 0.0, -1, -1

    s, si, sj = worst(sub)
    u, ui, uj = worst(sup)
    return s, si, sj, u, ui, uj


def _passes(A, mode, tol):
    # A: (C, n, m) -> boolean (C,)
    C, n, m = A.shape
    ok = np.ones(C, dtype=bool)
    if mode == 0:
        return ok
    if mode in (1, 2):
        sgn = 1.0 if mode == 1 else -1.0
        D = A[:, :, :, None] - A[:, :, None, :]
        for a in range(n):
            for b in range(a + 1, n):
                ok &= ~np.any(sgn * D[:, a] * D[:, b] > tol, axis=(1, 2))
        return ok
    S = A[:, 0, :].copy()
    for c in range(1, n):
        dS = S[:, :, None] - S[:, None, :]
        dA = A[:, c, :, None] - A[:, c, None, :]
        ok &= ~np.any(dS * dA > tol, axis=(1, 2))
        S += A[:, c, :]
    return ok


def _values(A, H):
    C, n, m = A.shape
    val = np.zeros(C)
    for i in range(n):
        val += choquet_rows(A[:, i, :], H[i])
    return val


def _pick(A, val, tie_eps, best, bestA):
    """Fold a chunk into the running (best, bestA) with lexicographic ties."""
    if val.size == 0:
        return best, bestA
    lo = float(val.min())
    if best != np.inf and lo > best + tie_eps:
        return best, bestA
    cand = np.nonzero(val <= lo + tie_eps)[0]
    flat = A[cand].reshape(cand.size, -1)
    first = cand[np.lexsort(flat.T[::-1])[0]]
    v, Af = float(val[first]), A[first]
    if best == np.inf or v < best - tie_eps:
        return v, Af.copy()
    if abs(v - best) <= tie_eps:
        fb = bestA.reshape(-1)
        fa = Af.reshape(-1)
        diff = np.nonzero(fa != fb)[0]
        if diff.size and fa[diff[0]] < fb[diff[0]]:
            return v, Af.copy()
    return best, bestA


def _decode(start, stop, radix):
    idx = np.arange(start, stop, dtype=np.int64)
    return np.stack(np.unravel_index(idx, tuple(int(r) for r in radix)), axis=1)


def _build(T, off, digits):
    # digits (C, m) -> allocation tensor (C, n, m)
    rows = off[None, :] + digits
    return np.transpose(T[rows], (0, 2, 1))


def grid_search(T, off, radix, H, mode, tol, tie_eps):
    total = int(np.prod(radix, dtype=np.int64))
    n, m = T.shape[1], radix.shape[0]
    best, bestA, nfeas = np.inf, np.zeros((n, m)), 0
    for start in range(0, total, CHUNK):
        digits = _decode(start, min(total, start + CHUNK), radix)
        A = _build(T, off, digits)
        keep = _passes(A, mode, tol)
        A = A[keep]
        nfeas += int(keep.sum())
        best, bestA = _pick(A, _values(A, H), tie_eps, best, bestA)
    return best, bestA, nfeas


def grid_collect(T, off, radix, mode, tol, cap):
    total = int(np.prod(radix, dtype=np.int64))
    found = []
    count = 0
    for start in range(0, total, CHUNK):
        digits = _decode(start, min(total, start + CHUNK), radix)
        keep = _passes(_build(T, off, digits), mode, tol)
        sel = digits[keep]
        room = cap - sum(len(f) for f in found)
        if room > 0:
            found.append(sel[:room])
        count += int(keep.sum())
    m = radix.shape[0]
    out = np.concatenate(found) if found else np.empty((0, m), np.int64)
    return out, count


def prop1_search(X, assigns, n, mvals, H, sign_mode, tie_eps):
    m = X.shape[0]
    total = assigns.shape[0]
    best, bestA, nfeas = np.inf, np.zeros((n, m)), 0
    for start in range(0, total, CHUNK):
        assign = assigns[start : start + CHUNK]
        member = assign[:, None, :] == np.arange(n)[None, :, None]  # (C, n, m)
        has_in = member.any(axis=2)
        has_out = (~member).any(axis=2)
        for mm in mvals:
            r = (mm - X)[None, None, :]
            if sign_mode == 0:
                side = np.full(member.shape[:2], mm / n)
                ok = np.ones(member.shape[0], dtype=bool)
            else:
                if sign_mode == 1:
                    b = np.where(member, r, -np.inf).max(axis=2)
                    b = np.where(has_out, np.maximum(np.where(has_in, b, 0.0), 0.0), b)
                else:
                    b = np.where(member, r, np.inf).min(axis=2)
                    b = np.where(has_out, np.minimum(np.where(has_in, b, 0.0), 0.0), b)
                slack = mm - b.sum(axis=1)
                ok = slack >= -tie_eps if sign_mode == 1 else slack <= tie_eps
                side = b + slack[:, None] / n
            A = np.where(member, (X - mm)[None, None, :] + side[:, :, None], side[:, :, None])
            A = A[ok]
            nfeas += int(ok.sum())
            best, bestA = _pick(A, _values(A, H), tie_eps, best, bestA)
    return best, bestA, nfeas


def _perm_chunks(m, size):
    it = itertools.permutations(range(m))
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def pair_counter_exact(X, H1, H2, sign_mode, tie_eps):
    m = X.shape[0]
    full = (1 << m) - 1
    h1f, h2f = H1[full], H2[full]
    kappa = h1f - h2f
    best, bestA, count = np.inf, np.zeros((2, m)), 0
    for P in _perm_chunks(m, CHUNK):
        C = P.shape[0]
        Xp = X[P]
        prefix = np.cumsum(np.left_shift(np.int64(1), P[:, :-1]), axis=1)
        sk = full ^ prefix
        dx = np.diff(Xp, axis=1)
        lb = np.maximum(dx, 0.0)
        beta = H1[sk] + H2[prefix] - h2f
        const = Xp[:, -1] * h2f - np.sum(dx * H2[prefix], axis=1) + np.sum(beta * lb, axis=1)
        if m > 1:
            kmin = np.argmin(beta, axis=1)
            bmin = beta[np.arange(C), kmin]
        else:
            kmin = np.zeros(C, dtype=np.int64)
            bmin = np.zeros(C)
        if sign_mode == 0:
            if abs(kappa) > tie_eps:
                return -np.inf, np.zeros((2, m)), count + 1
            unbounded = np.nonzero(bmin < -tie_eps)[0]
            if unbounded.size:
                return -np.inf, np.zeros((2, m)), count + int(unbounded[0]) + 1
            c = np.zeros(C)
            budget = np.zeros(C)
            ok = np.ones(C, dtype=bool)
            use_c = np.zeros(C, dtype=bool)
            use_d = np.zeros(C, dtype=bool)
        else:
            c = np.zeros(C) if sign_mode == 1 else Xp[:, 0].copy()
            cap = Xp[:, -1] if sign_mode == 1 else np.zeros(C)
            budget = cap - c - lb.sum(axis=1)
            ok = budget >= -tie_eps
            budget = np.maximum(budget, 0.0)
            neg_d = bmin < -tie_eps
            use_c = (kappa < -tie_eps) & (~neg_d | (kappa < bmin - tie_eps))
            use_d = neg_d & ~use_c
        val = const + kappa * c + np.where(use_c, kappa * budget, 0.0) + np.where(use_d, bmin * budget, 0.0)
        c = c + np.where(use_c, budget, 0.0)
        if m > 1:
            lb[np.arange(C), kmin] += np.where(use_d, budget, 0.0)
        Y1p = np.concatenate([c[:, None], c[:, None] + np.cumsum(lb, axis=1)], axis=1)
        Y1 = np.empty_like(Y1p)
        np.put_along_axis(Y1, P, Y1p, axis=1)
        A = np.stack([Y1, X[None, :] - Y1], axis=1)
        A, val = A[ok], val[ok]
        best, bestA = _pick(A, val, tie_eps, best, bestA)
        count += C
    return best, bestA, count
