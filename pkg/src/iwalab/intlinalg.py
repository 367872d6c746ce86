"""Exact integer linear algebra: Smith normal form, Howell form, determinants.

Everything here works on plain Python ints (lists of lists), so there is no
overflow and no floating point anywhere.  Matrices are small (a few dozen rows
at most), which keeps the classical algorithms comfortably fast.
"""


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _combine_rows(A, i1, i2, k):
    """Unimodular row combination making A[i2][k] == 0 (pivot row i1)."""
    a, b = A[i1][k], A[i2][k]
    if b == 0:
        return
    if a == 0:
        A[i1], A[i2] = A[i2], A[i1]
        return
    if b % a == 0:
        q = b // a
        A[i2] = [x - q * y for x, y in zip(A[i2], A[i1])]
        return
    g, x, y = xgcd(a, b)
    ag, bg = a // g, b // g
    r1, r2 = A[i1], A[i2]
    A[i1] = [x * u + y * v for u, v in zip(r1, r2)]
    A[i2] = [-bg * u + ag * v for u, v in zip(r1, r2)]


def _combine_cols(A, j1, j2, k):
    """Unimodular column combination making A[k][j2] == 0 (pivot column j1)."""
    a, b = A[k][j1], A[k][j2]
    if b == 0:
        return
    if a == 0:
        for row in A:
            row[j1], row[j2] = row[j2], row[j1]
        return
    if b % a == 0:
        q = b // a
        for row in A:
            row[j2] -= q * row[j1]
        return
    g, x, y = xgcd(a, b)
    ag, bg = a // g, b // g
    for row in A:
        u, v = row[j1], row[j2]
        row[j1] = x * u + y * v
        row[j2] = -bg * u + ag * v


def smith_normal_form(mat, want_right=False):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, T) where diag lists the diagonal entries (no divisibility
    chain is enforced; their multiset of p-valuations is all callers need) and
    T is the accumulated right transform with A @ T ~ row-equivalent to the
    diagonal matrix (T is None unless ``want_right``).

    Column operations applied to A are mirrored on T, so if y = T @ w then
    A @ y runs through the diagonalized columns: solving A y == 0 mod q
    reduces to scaling the columns of T.
    """
    A = [list(row) for row in mat]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    T = identity_matrix(nc) if want_right else None
    k = 0
    while k < min(nr, nc):
        piv = None
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                v = A[i][j]
                if v and (best is None or abs(v) < best):
                    piv, best = (i, j), abs(v)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != k:
            A[i0], A[k] = A[k], A[i0]
        if j0 != k:
            for row in A:
                row[j0], row[k] = row[k], row[j0]
            if T is not None:
                for row in T:
                    row[j0], row[k] = row[k], row[j0]
        while True:
            for i in range(k + 1, nr):
                _combine_rows(A, k, i, k)
            dirty = False
            for j in range(k + 1, nc):
                if A[k][j]:
                    dirty = True
                    a, b = A[k][k], A[k][j]
                    if b % a == 0:
                        q = b // a
                        for row in A:
                            row[j] -= q * row[k]
                        if T is not None:
                            for row in T:
                                row[j] -= q * row[k]
                    else:
                        g, x, y = xgcd(a, b)
                        ag, bg = a // g, b // g
                        for row in A:
                            u, v = row[k], row[j]
                            row[k] = x * u + y * v
                            row[j] = -bg * u + ag * v
                        if T is not None:
                            for row in T:
                                u, v = row[k], row[j]
                                row[k] = x * u + y * v
                                row[j] = -bg * u + ag * v
            if not dirty:
                # column ops may have reintroduced entries below the pivot
                if all(A[i][k] == 0 for i in range(k + 1, nr)):
                    break
        k += 1
    diag = [A[i][i] for i in range(min(nr, nc))]
    return diag, T


def rank_int(mat):
    """Rank over Q of an integer matrix (equals the rank over Qp)."""
    diag, _ = smith_normal_form(mat)
    return sum(1 for d in diag if d != 0)


def det_int(mat):
    """Exact determinant via Bareiss fraction-free elimination."""
    A = [list(row) for row in mat]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[i], A[k] = A[k], A[i]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def resultant(f, g):
    """Resultant of two integer polynomials given as ascending coefficient lists."""
    df = len(f) - 1
    dg = len(g) - 1
    if df < 0 or dg < 0:
        return 0
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    n = df + dg
    rows = []
    frev = f[::-1]
    grev = g[::-1]
    for i in range(dg):
        rows.append([0] * i + frev + [0] * (n - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + grev + [0] * (n - dg - 1 - i))
    return det_int(rows)


def _valuation(x, p, cap):
    """p-adic valuation of x, with 0 mapping to ``cap``."""
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def cokernel_exponent(mat, p, m):
    """Exponent e with |(Z/p^m)^rows / image(mat)| = p^e.

    ``mat`` is the integer matrix of a map into (Z/p^m)^rows; the cokernel
    size only depends on the entries mod p^m.
    """
    nrows = len(mat)
    if nrows == 0:
        return 0
    diag, _ = smith_normal_form(mat)
    e = sum(min(_valuation(d, p, m), m) for d in diag)
    e += m * (nrows - len(diag))
    return e


def cokernel_divisors(mat, p, m):
    """Clamped divisor valuations d_i with coker(mat mod p^m) = ⊕ Z/p^{d_i}.

    For an r x c matrix mapping into (Z/p^m)^r.  Zero rows beyond the
    diagonal contribute full p^m factors.
    """
    nrows = len(mat)
    diag, _ = smith_normal_form(mat)
    out = [min(_valuation(d, p, m), m) for d in diag]
    out.extend([m] * (nrows - len(diag)))
    return out


def kernel_rank(mat, ncols):
    """Q-dimension of the kernel of an integer matrix with ``ncols`` columns."""
    if not mat:
        return ncols
    return ncols - rank_int(mat)


def solve_mod_prime_power(mat, p, m, ncols):
    """Generators of {y in (Z/p^m)^ncols : mat @ y == 0 mod p^m}.

    Returns a list of generator vectors (integer entries, not yet reduced).
    """
    q = p ** m
    if not mat:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    diag, T = smith_normal_form(mat, want_right=True)
    gens = []
    for i in range(ncols):
        if i < len(diag):
            scale = p ** (m - min(_valuation(diag[i], p, m), m))
        else:
            scale = 1
        if scale >= q:
            continue
        gens.append([(scale * T[r][i]) % q for r in range(ncols)])
    return gens


def howell_form(rows, p, m, ncols):
    """Canonical (Howell) basis of the row span inside (Z/p^m)^ncols.

    Two generating sets span the same submodule iff their Howell forms are
    identical.  Rows come back sorted by pivot column, pivots are exact
    p-powers, and every other entry in a pivot column is reduced below the
    pivot.
    """
    q = p ** m
    queue = []
    for row in rows:
        r = [x % q for x in row]
        if any(r):
            queue.append(r)
    pivot_rows = {}

    def leading(row):
        for j, x in enumerate(row):
            if x:
                return j
        return None

    while queue:
        v = queue.pop()
        j = leading(v)
        if j is None:
            continue
        a = _valuation(v[j], p, m)
        u = v[j] // (p ** a)
        inv = pow(u, -1, q)
        v = [(x * inv) % q for x in v]
        if j not in pivot_rows:
            pivot_rows[j] = (a, v)
            if a > 0:
                closure = [(x * p ** (m - a)) % q for x in v]
                if any(closure):
                    queue.append(closure)
            continue
        b, w = pivot_rows[j]
        if a < b:
            pivot_rows[j] = (a, v)
            queue.append(w)
            closure = [(x * p ** (m - a)) % q for x in v]
            if any(closure):
                queue.append(closure)
        else:
            scaled = p ** (a - b)
            v = [(x - scaled * y) % q for x, y in zip(v, w)]
            if any(v):
                queue.append(v)

    cols = sorted(pivot_rows)
    # normalize right-to-left so every reduction sees finalized later rows
    for idx in range(len(cols) - 1, -1, -1):
        a, v = pivot_rows[cols[idx]]
        for j2 in cols[idx + 1:]:
            b, w = pivot_rows[j2]
            quo = v[j2] // (p ** b)
            if quo:
                v = [(x - quo * y) % q for x, y in zip(v, w)]
        pivot_rows[cols[idx]] = (a, v)
    return tuple(tuple(pivot_rows[j][1]) for j in cols)
