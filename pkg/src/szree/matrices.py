"""Dense n x n matrices over a GF field, stored as flat row-major tuples.

Matrices are immutable and hashable; the canonical byte key of a matrix is
its row-major entry sequence with each packed field element written
little-endian in `field.key_width` bytes.  Row vectors are plain tuples of
length n and act on the right (v -> v.A), which matches the orbit code's
right-action convention.
"""

from __future__ import annotations

from .gf import GF


def mat_id(n: int):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_scalar(n: int, c: int):
    return tuple(c if i == j else 0 for i in range(n) for j in range(n))


def mat_from_rows(rows):
    n = len(rows)
    assert all(len(r) == n for r in rows)
    return tuple(x for row in rows for x in row)


def mat_rows(A, n: int):
    return [A[i * n:(i + 1) * n] for i in range(n)]


def mat_mul(F: GF, A, B, n: int):
    mul, add = F.mul, F.add
    out = [0] * (n * n)
    for i in range(n):
        arow = A[i * n:(i + 1) * n]
        orow = [0] * n
        for k in range(n):
            a = arow[k]
            if a:
                brow = B[k * n:(k + 1) * n]
                for j in range(n):
                    b = brow[j]
                    if b:
                        orow[j] = add(orow[j], mul(a, b))
        out[i * n:(i + 1) * n] = orow
    return tuple(out)


def mat_pow(F: GF, A, e: int, n: int):
    if e < 0:
        return mat_pow(F, mat_inv(F, A, n), -e, n)
    acc = mat_id(n)
    base = A
    while e:
        if e & 1:
            acc = mat_mul(F, acc, base, n)
        base = mat_mul(F, base, base, n)
        e >>= 1
    return acc


def vec_mat(F: GF, v, A, n: int):
    """Row vector times matrix."""
    mul, add = F.mul, F.add
    out = [0] * n
    for k in range(n):
        x = v[k]
        if x:
            arow = A[k * n:(k + 1) * n]
            for j in range(n):
                a = arow[j]
                if a:
                    out[j] = add(out[j], mul(x, a))
    return tuple(out)


def mat_frob(F: GF, A, i: int):
    if i % F.m == 0:
        return A
    fr = F.frobenius
    return tuple(fr(x, i) for x in A)


def mat_inv(F: GF, A, n: int):
    """Gauss-Jordan inverse; raises ValueError on singular input."""
    aug = [list(A[i * n:(i + 1) * n]) + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = F.inv(aug[col][col])
        aug[col] = [F.mul(inv_p, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                row, prow = aug[r], aug[col]
                for j in range(2 * n):
                    if prow[j]:
                        row[j] = F.sub(row[j], F.mul(c, prow[j]))
    return tuple(aug[i][n + j] for i in range(n) for j in range(n))


def mat_det(F: GF, A, n: int) -> int:
    rows = [list(A[i * n:(i + 1) * n]) for i in range(n)]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = F.neg(det)
        det = F.mul(det, rows[col][col])
        inv_p = F.inv(rows[col][col])
        for r in range(col + 1, n):
            if rows[r][col]:
                c = F.mul(rows[r][col], inv_p)
                for j in range(col, n):
                    rows[r][j] = F.sub(rows[r][j], F.mul(c, rows[col][j]))
    return det


def mat_key(F: GF, A) -> bytes:
    w = F.key_width
    if w == 1:
        return bytes(A)
    return b"".join(x.to_bytes(w, "little") for x in A)


def key_to_mat(F: GF, key: bytes, count: int):
    w = F.key_width
    if w == 1:
        return tuple(key[:count])
    return tuple(int.from_bytes(key[i * w:(i + 1) * w], "little") for i in range(count))


def vec_key(F: GF, v) -> bytes:
    return mat_key(F, v)


def normalize_projective(F: GF, v):
    """Scale so the first nonzero coordinate is 1; rejects the zero vector."""
    piv = next((x for x in v if x), None)
    if piv is None:
        raise ValueError("zero vector has no projective normalization")
    if piv == 1:
        return tuple(v)
    c = F.inv(piv)
    return tuple(F.mul(c, x) for x in v)


def left_fixed_space(F: GF, mats, n: int):
    """Basis of {v : v.A = v for all A in mats}, as normalized row vectors.

    Computed by stacking the transposed (A - I) blocks and taking the
    kernel, i.e. a simultaneous-eigenvector computation for eigenvalue 1.
    """
    # rows of the system: for each A, for each column j: sum_k v_k (A[k][j] - I[k][j]) = 0
    system = []
    for A in mats:
        for j in range(n):
            system.append([F.sub(A[k * n + j], 1 if k == j else 0) for k in range(n)])
    # kernel of system (variables v_0..v_{n-1})
    rows = [r[:] for r in system]
    pivots = {}
    rank_row = 0
    for col in range(n):
        piv = next((r for r in range(rank_row, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank_row], rows[piv] = rows[piv], rows[rank_row]
        inv_p = F.inv(rows[rank_row][col])
        rows[rank_row] = [F.mul(inv_p, x) for x in rows[rank_row]]
        for r in range(len(rows)):
            if r != rank_row and rows[r][col]:
                c = rows[r][col]
                rows[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[r], rows[rank_row])]
        pivots[col] = rank_row
        rank_row += 1
    basis = []
    free_cols = [c for c in range(n) if c not in pivots]
    for fc in free_cols:
        v = [0] * n
        v[fc] = 1
        for col, r in pivots.items():
            v[col] = F.neg(rows[r][fc])
        basis.append(normalize_projective(F, v))
    return basis
