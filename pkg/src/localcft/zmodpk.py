"""Linear algebra over the local ring Z/p^k.

Gaussian elimination does not apply over Z/p^k because not every nonzero
element is invertible.  The Howell form is the canonical echelon form that
works instead: two row spans are equal iff their Howell forms are identical,
and the form is closed under the "annihilator rows" needed so that every
element of the span reduces to zero against it.

Everything here works on plain Python ints (lists of lists), which is exact
and fast enough for the matrix sizes this package meets (dimensions in the
low hundreds at most).
"""

from __future__ import annotations


def pval(a: int, p: int, k: int) -> int:
    """p-adic valuation of ``a`` mod p^k; returns ``k`` for a == 0 mod p^k."""
    a %= p**k
    if a == 0:
        return k
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def unit_part_inv(a: int, p: int, k: int) -> tuple[int, int]:
    """Write a = u * p^v mod p^k and return (v, u^{-1} mod p^k)."""
    m = p**k
    a %= m
    if a == 0:
        raise ZeroDivisionError("zero has no unit part")
    v = pval(a, p, k)
    u = (a // p**v) % m
    return v, pow(u, -1, m)


def howell_form(rows, p: int, k: int):
    """Canonical Howell form of the span of ``rows`` over Z/p^k.

    Returns a list of rows with strictly increasing pivot columns, each pivot
    equal to a power of p, entries above a pivot reduced below it.  The empty
    list represents the zero module.
    """
    m = p**k
    ncols = len(rows[0]) if rows else 0
    pending = [[x % m for x in r] for r in rows if any(x % m for x in r)]
    done = []
    for col in range(ncols):
        live = [r for r in pending if r[col] % m != 0]
        if not live:
            continue
        pivot_row = min(live, key=lambda r: pval(r[col], p, k))
        pending.remove(pivot_row)
        v, uinv = unit_part_inv(pivot_row[col], p, k)
        pivot_row = [(x * uinv) % m for x in pivot_row]  # pivot becomes p^v
        piv = p**v
        new_pending = []
        for r in pending:
            if r[col] % m:
                q = r[col] // piv  # exact since v was minimal
                r = [(r[i] - q * pivot_row[i]) % m for i in range(ncols)]
            if any(r):
                new_pending.append(r)
        pending = new_pending
        if v > 0:
            ann = [(p ** (k - v) * x) % m for x in pivot_row]
            if any(ann):
                pending.append(ann)
        done.append((col, v, pivot_row))
    # reduce entries above each pivot below the pivot value
    for idx, (col, v, row) in enumerate(done):
        piv = p**v
        for jdx in range(idx):
            _, _, upper = done[jdx]
            if upper[col] % piv != upper[col]:
                q = upper[col] // piv
                for i in range(ncols):
                    upper[i] = (upper[i] - q * row[i]) % m
    return [row for (_, _, row) in done]


def reduce_against(vec, basis, p: int, k: int):
    """Reduce ``vec`` against a Howell basis; the remainder is zero iff
    ``vec`` lies in the span."""
    m = p**k
    vec = [x % m for x in vec]
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        v = pval(row[col], p, k)
        piv = p**v
        if vec[col] % m:
            q = vec[col] // piv
            if q:
                vec = [(vec[i] - q * row[i]) % m for i in range(len(vec))]
    return vec


def in_span(vec, basis, p: int, k: int) -> bool:
    return not any(reduce_against(vec, basis, p, k))


def span_size(basis, p: int, k: int) -> int:
    """Number of elements of the module spanned by a Howell basis."""
    size = 1
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        size *= p ** (k - pval(row[col], p, k))
    return size


def left_kernel(mat, p: int, k: int):
    """Howell basis of {x : x @ mat == 0 over Z/p^k}.

    ``mat`` is a list of rows; the kernel consists of coefficient vectors on
    those rows.  Computed by running the Howell elimination on the augmented
    rows [mat | I] and collecting augmented parts of rows whose matrix part
    vanished.
    """
    m = p**k
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    aug = []
    for i, r in enumerate(mat):
        row = [x % m for x in r] + [0] * nrows
        row[ncols + i] = 1
        aug.append(row)
    pending = aug
    kernel = []
    for col in range(ncols):
        live = [r for r in pending if r[col] % m != 0]
        if not live:
            continue
        pivot_row = min(live, key=lambda r: pval(r[col], p, k))
        pending.remove(pivot_row)
        v, uinv = unit_part_inv(pivot_row[col], p, k)
        pivot_row = [(x * uinv) % m for x in pivot_row]
        piv = p**v
        new_pending = []
        for r in pending:
            if r[col] % m:
                q = r[col] // piv
                r = [(r[i] - q * pivot_row[i]) % m for i in range(len(r))]
            new_pending.append(r)
        pending = new_pending
        if v > 0:
            ann = [(p ** (k - v) * x) % m for x in pivot_row]
            pending.append(ann)
    for r in pending:
        if not any(r[:ncols]) and any(r[ncols:]):
            kernel.append(r[ncols:])
    if not kernel:
        return []
    return howell_form(kernel, p, k)


def solve_mod_pk(mat, rhs, p: int, k: int):
    """One solution x of x @ mat == rhs over Z/p^k, or None.

    Brute linear solve via Howell on [mat | I]; returns the combination of
    input rows reproducing ``rhs`` if one exists.
    """
    m = p**k
    nrows = len(mat)
    ncols = len(mat[0])
    aug = []
    for i, r in enumerate(mat):
        row = [x % m for x in r] + [0] * nrows
        row[ncols + i] = 1
        aug.append(row)
    basis = howell_form(aug, p, k)
    vec = [x % m for x in rhs] + [0] * nrows
    coeffs = [0] * nrows
    for row in basis:
        col = next((i for i, x in enumerate(row) if x), None)
        if col is None or col >= ncols:
            continue
        v = pval(row[col], p, k)
        piv = p**v
        if vec[col] % m:
            if vec[col] % piv:
                return None
            q = vec[col] // piv
            vec = [(vec[i] - q * row[i]) % m for i in range(len(vec))]
    if any(vec[:ncols]):
        return None
    # the accumulated augmented part is -x; recompute by tracking directly
    return [(-c) % m for c in vec[ncols:]]


def invert_matrix(mat, p: int, k: int):
    """Inverse of a square matrix over Z/p^k (must be invertible mod p)."""
    m = p**k
    n = len(mat)
    work = [[mat[i][j] % m for j in range(n)] + [1 if i == j else 0 for j in range(n)]
            for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if work[i][col] % p != 0:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("matrix not invertible mod p")
        work[col], work[piv] = work[piv], work[col]
        inv = pow(work[col][col], -1, m)
        work[col] = [(x * inv) % m for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                q = work[i][col]
                work[i] = [(work[i][j] - q * work[col][j]) % m for j in range(2 * n)]
    return [row[n:] for row in work]
