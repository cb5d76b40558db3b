"""Integer homology of based simplicial sets: normalized reduced chains and
Smith normal form with Python integers (no overflow)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .simplicial import SSet, fixed_points, point


@dataclass
class HomologyResult:
    """Per degree: free rank and torsion coefficients (each dividing the next)."""

    ranks: list
    torsion: list = field(default_factory=list)

    def degree(self, q):
        return self.ranks[q], self.torsion[q]

    def fmt(self, q):
        r, t = self.ranks[q], self.torsion[q]
        parts = []
        if r:
            parts.append("Z" if r == 1 else f"Z^{r}")
        parts += [f"Z/{d}" for d in t]
        return f"H_{q} = " + (" + ".join(parts) if parts else "0")

    def lines(self):
        return [self.fmt(q) for q in range(len(self.ranks))]

    def as_dict(self):
        return {str(q): {"rank": self.ranks[q], "torsion": list(self.torsion[q])} for q in range(len(self.ranks))}

    def __str__(self):
        return "; ".join(self.lines())


def smith_diagonal(rows, ncols):
    """Nonzero invariant factors of an integer matrix given as a list of dict rows
    {col: value}.  Sparse elimination on unit pivots first, dense SNF afterwards."""
    rows = [dict(r) for r in rows if r]
    diag = []
    # phase 1: eliminate unit pivots (cheap, keeps sparsity)
    changed = True
    while changed:
        changed = False
        col_index = {}
        for ri, r in enumerate(rows):
            for c in r:
                col_index.setdefault(c, []).append(ri)
        used_rows = set()
        for ri in range(len(rows)):
            r = rows[ri]
            if ri in used_rows or not r:
                continue
            pivot = next((c for c, v in r.items() if v in (1, -1)), None)
            if pivot is None:
                continue
            # eliminate pivot column from all other rows containing it
            pv = r[pivot]
            for rj in col_index.get(pivot, []):
                if rj == ri:
                    continue
                s = rows[rj]
                if pivot not in s:
                    continue
                f = s[pivot] * pv  # pv = +-1 so pv^-1 = pv
                for c, v in r.items():
                    nv = s.get(c, 0) - f * v
                    if nv:
                        s[c] = nv
                        col_index.setdefault(c, []).append(rj)
                    else:
                        s.pop(c, None)
            diag.append(1)
            rows[ri] = {}
            used_rows.add(ri)
            changed = True
            # column operations clear the remaining row entries: the pivot row is gone
        rows = [r for r in rows if r]
    if not rows:
        return diag
    cols = sorted({c for r in rows for c in r})
    cidx = {c: k for k, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for c, v in r.items():
            M[i][cidx[c]] = v
    return diag + dense_snf_diagonal(M)


def dense_snf_diagonal(M):
    M = [row[:] for row in M]
    m = len(M)
    n = len(M[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        # find nonzero entry of minimal absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    qt = M[i][t] // p
                    for j in range(t, n):
                        M[i][j] -= qt * M[t][j]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    qt = M[t][j] // p
                    for i in range(t, m):
                        M[i][j] -= qt * M[i][t]
                    if M[t][j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be divisible by p
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if M[i][j] % p:
                            bad = (i, j)
                            break
                    if bad:
                        break
                if bad is None:
                    break
                for j in range(t, n):
                    M[t][j] += M[bad[0]][j]
                continue
            # move smallest nonzero of row/col t to the pivot and repeat
            best = (t, t)
            for i in range(t, m):
                if M[i][t] and abs(M[i][t]) < abs(M[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, n):
                if M[t][j] and abs(M[t][j]) < abs(M[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
        out.append(abs(M[t][t]))
        t += 1
    return out


def snf_with_transforms(M):
    """Smith normal form D = U M V for a small dense integer matrix.

    Returns (D, U, V) with U, V unimodular (lists of lists)."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [row[:] for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, f):
        for j in range(n):
            A[dst][j] += f * A[src][j]
        for j in range(m):
            U[dst][j] += f * U[src][j]

    def add_col(dst, src, f):
        for i in range(m):
            A[i][dst] += f * A[i][src]
        for i in range(n):
            V[i][dst] += f * V[i][src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        changed = True
            if changed:
                nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(nz)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            for j in range(n):
                A[t][j] = -A[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    return A, U, V


def boundary_rows(X, q, basis_q, index_prev):
    """Rows (one per q-simplex of basis_q) of the normalized reduced boundary."""
    rows = []
    for x in basis_q:
        r = {}
        for i in range(q + 1):
            y = X.face(q, i, x)
            k = index_prev.get(y)
            if k is not None:
                r[k] = r.get(k, 0) + (-1 if i % 2 else 1)
        rows.append({k: v for k, v in r.items() if v})
    return rows


def chain_complex(X, top):
    """Bases (nondegenerate non-base simplices) and boundary rows up to degree top."""
    bases = []
    for q in range(top + 1):
        nd = X.nondegenerate(q, include_base=not X.based)
        bases.append(nd)
    index = [{x: k for k, x in enumerate(b)} for b in bases]
    bnd = [None] + [boundary_rows(X, q, bases[q], index[q - 1]) for q in range(1, top + 1)]
    return bases, bnd


def check_boundary_squared(X, top=None):
    top = X.dim if top is None else top
    bases, bnd = chain_complex(X, top)
    for q in range(2, top + 1):
        for r in bnd[q]:
            acc = {}
            for k, v in r.items():
                for k2, v2 in bnd[q - 1][k].items():
                    acc[k2] = acc.get(k2, 0) + v * v2
            if any(acc.values()):
                return False
    return True


def reduced_homology(X, D=None):
    """H~_q(X; Z) for q <= D; X must be stored to degree D + 1."""
    D = X.dim - 1 if D is None else D
    if D + 1 > X.dim:
        raise ValueError(f"homology to degree {D} needs the object stored to degree {D + 1}")
    bases, bnd = chain_complex(X, D + 1)
    ranks, torsion = [], []
    elem = [None] * (D + 2)
    for q in range(1, D + 2):
        elem[q] = [d for d in smith_diagonal(bnd[q], len(bases[q - 1]))]
    for q in range(D + 1):
        n = len(bases[q])
        if not X.based and q == 0:
            n -= 1 if n else 0  # reduced: augmentation kernel
        rank_out = len(elem[q]) if q >= 1 else 0
        inc = elem[q + 1]
        ranks.append(n - rank_out - len(inc))
        torsion.append(sorted(d for d in inc if d > 1))
    return HomologyResult(ranks, torsion)


def nerve_of_group(G, D):
    """Reduced bar model of BG: q-simplices are q-tuples of group elements.

    Based at the unique 0-simplex; tuples containing the identity are degenerate
    (they are kept, normalized chains drop them)."""
    import itertools
    levels = [list(itertools.product(G.elements, repeat=q)) for q in range(D + 1)]

    def face(q, i, x):
        if i == 0:
            return x[1:]
        if i == q:
            return x[:-1]
        return x[:i - 1] + (G.mul(x[i - 1], x[i]),) + x[i + 1:]

    def degen(q, i, x):
        return x[:i] + (0,) + x[i:]

    return SSet(levels, face, degen, basepoints=[(0,) * q for q in range(D + 1)], name=f"B{G.name}")


def fixed_homology(X, H, D=None):
    return reduced_homology(fixed_points(X, H), D)


def stability_run(compute, Ns, D):
    """Rerun compute(N) -> HomologyResult for each N; report per-degree agreement
    between consecutive N.  Evidence only: agreement proves nothing about larger N."""
    results = {}
    for N in Ns:
        results[N] = compute(N)
    rows = []
    Ns = list(Ns)
    for a, b in zip(Ns, Ns[1:]):
        ra, rb = results[a], results[b]
        top = min(len(ra.ranks), len(rb.ranks))
        agree = [ra.degree(q) == rb.degree(q) for q in range(top)]
        rows.append({"pair": (a, b), "agree": agree})
    return {"results": results, "comparisons": rows,
            "all_agree": all(all(r["agree"]) for r in rows) if rows else True}
