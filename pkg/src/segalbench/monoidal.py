"""Day convolution, the external pairing phi on bar constructions, coherence
checks, and the examples: BPQ, R A, the map h and ring pairings.

All pairings use the lexicographic flattening m ^ n = mn, (i, j) -> (i-1)n + j.
"""
from __future__ import annotations

import itertools
import random

from .abgroups import AbGroup, Tensor, cyclic, direct_sum, tensor_ab, Z2_ring  # noqa: F401
from .barmachine import direct_sum_action, extra_degeneracy_homotopy
from .chains import BASE_KEY, ChainBar, chain_collapse
from .fingroups import (BasedMap, all_perms, compose_based, enumerate_homs, identity_map, lex_index,
                        smash_based, trivial_action, trivial_group)
from .homology import reduced_homology
from .indexdiagrams import (EMPTY, Diagram, DiagramMap, IndexCategory, KanExtension, LabelDiagram,
                            LabelSpace, Restriction, UnionFind, free_diagram, pushforward, R_diagram)
from .simplicial import (BASE, SSet, SimplicialHomotopy, SimplicialMap, diagonal, discrete, is_homotopy,
                         smash, sphere, sphere_smash_label, check_simplicial)


# ---------------------------------------------------------------------------
# external pairings

def pair_positions(x, y, f):
    """(x_i), (y_j) -> (f(x_i, y_j)) in lexicographic order."""
    return tuple(f(a, b) for a in x for b in y)


class ExternalPairing:
    """Maps X(m) ^ Y(n) -> Z(mn), natural in m and n.

    fn(p, x, y) acts on the label tuples; Z must be defined up to N^2."""

    def __init__(self, X, Y, Z, fn, name="pairing"):
        self.X, self.Y, self.Z = X, Y, Z
        self.fn = fn
        self.name = name

    def __call__(self, m, n, p, x, y):
        return self.fn(p, x, y)

    def check(self, degrees=None, N=None):
        """Naturality against all pairs of morphisms f: m -> m', g: n -> n'
        (m, n, m', n' <= N), basepoints and G-equivariance."""
        X, Y, Z = self.X, self.Y, self.Z
        N = X.cat.N if N is None else N
        degrees = range(min(X.dim, Y.dim) + 1) if degrees is None else degrees
        G = X.cat.group
        errs = []
        for p in degrees:
            for m in range(N + 1):
                for n in range(N + 1):
                    xs, ys = X.elements(m, p), Y.elements(n, p)
                    zb = Z.base(m * n, p)
                    for y in ys:
                        if self.fn(p, X.base(m, p), y) != zb:
                            errs.append(f"not based at {(m, n)}")
                    for x in xs:
                        for y in ys:
                            v = self.fn(p, x, y)
                            for g in G.elements:
                                if self.fn(p, X.gact(g, m, p, x), Y.gact(g, n, p, y)) != Z.gact(g, m * n, p, v):
                                    errs.append(f"not equivariant at {x!r}, {y!r}")
                            for m2 in range(N + 1):
                                for f in enumerate_homs("F", m, m2):
                                    fx = X.act(f, m, m2, p, x)
                                    for n2 in range(N + 1):
                                        for g in enumerate_homs("F", n, n2):
                                            lhs = self.fn(p, fx, Y.act(g, n, n2, p, y))
                                            rhs = Z.act(smash_based(f, g), m * n, m2 * n2, p, v)
                                            if lhs != rhs:
                                                errs.append(f"not natural for {f}, {g} at {x!r}, {y!r}")
                                                return errs
        return errs


def smash_label(L1, L2):
    """Label pairing for free diagrams: (a, b) -> (1, a, b), base if either is."""
    def f(p, a, b):
        if a == L1.zero(p) or b == L2.zero(p):
            return BASE
        return (1, a, b)
    return f


def free_pairing(X, Y):
    """F_1 A ^ F_1 B -> F_1(A ^ B) o ^ (the Day universal map on free diagrams)."""
    A, B = X.labels.sset, Y.labels.sset
    N = X.cat.N * Y.cat.N
    Z = free_diagram(smash(A, B), N, name=f"F1({A.name}^{B.name})")
    f = smash_label(X.labels, Y.labels)
    return ExternalPairing(X, Y, Z, lambda p, x, y: pair_positions(x, y, lambda a, b: f(p, a, b)),
                           name="free")


def R_monoidal(A, B, N, D=0):
    """R A ^ R B -> R(A (x) B) o ^ with (a_i (x) b_j) in position (i, j)."""
    T = Tensor(A, B)
    RA, RB = R_diagram(A, N, D), R_diagram(B, N, D)
    RT = R_diagram(T.result, N * N, D)
    return ExternalPairing(RA, RB, RT, lambda p, x, y: pair_positions(x, y, T.pair), name="R"), T


def h_map(S, N, D=0):
    """h: .(S_+) -> R Z[S], the j-th copy of s goes to the generator s in coordinate j.

    Returns (map function fn(n, x), list of naturality violations).  Z[S] is
    infinite, so naturality is checked on the image without enumerating R Z[S]."""
    S = list(S)
    k = len(S)
    pts = discrete([BASE] + [(1, s) for s in S], D, BASE, name="S+")
    dotS = free_diagram(pts, N)
    ZS = AbGroup([0] * k, name=f"Z[{k}]")
    labels = LabelSpace(discrete([ZS.zero], D, ZS.zero), lambda p, a, b: ZS.add(a, b), name=ZS.name)
    zero = ZS.zero

    def gen(s):
        return tuple(int(t == s) for t in S)

    def fn(n, p, x):
        return tuple(zero if a == BASE else gen(a[1]) for a in x)

    errs = []
    for p in range(D + 1):
        for n in range(N + 1):
            if fn(n, p, dotS.base(n, p)) != (zero,) * n:
                errs.append(f"not based at {n}")
            for x in dotS.elements(n, p):
                for m in range(N + 1):
                    for phi in enumerate_homs("F", n, m):
                        if fn(m, p, dotS.act(phi, n, m, p, x)) != pushforward(labels, p, phi, fn(n, p, x)):
                            errs.append(f"h not natural for {phi} at {x!r}")
    return dotS, fn, errs


# ---------------------------------------------------------------------------
# Day convolution

class DaySmash(Diagram):
    """(X ^ Y)(k) = coend over m <= mmax, n <= nmax of F(mn, k) ^ X(m) ^ Y(n).

    Elements are minimal raw tuples (m, n, psi, x, y) of their class; base EMPTY."""

    def __init__(self, X, Y, N, mmax, nmax, name=None):
        self.X, self.Y = X, Y
        self.cat = IndexCategory("F", N, group=X.cat.group)
        self.dim = min(X.dim, Y.dim)
        self.mmax, self.nmax = mmax, nmax
        self.name = name or f"({X.name}^{Y.name})"
        self._rep = {}
        self._elems = {}

    def _is_base_raw(self, p, m, n, psi, x, y):
        return (x == self.X.base(m, p) or y == self.Y.base(n, p) or all(v == 0 for v in psi))

    def _build(self, k, p):
        key = (k, p)
        if key in self._rep:
            return self._rep[key]
        X, Y = self.X, self.Y
        uf = UnionFind()
        uf.add(EMPTY)

        def node(m, n, psi, x, y):
            if self._is_base_raw(p, m, n, psi, x, y):
                return EMPTY
            t = (m, n, psi, x, y)
            uf.add(t)
            return t

        for m in range(1, self.mmax + 1):
            for n in range(1, self.nmax + 1):
                homs = enumerate_homs("F", m * n, k)
                for psi in homs:
                    for x in X.elements(m, p):
                        for y in Y.elements(n, p):
                            node(m, n, psi.image, x, y)
        for m in range(1, self.mmax + 1):
            for n in range(1, self.nmax + 1):
                xs, ys = X.elements(m, p), Y.elements(n, p)
                for m2 in range(1, self.mmax + 1):
                    for f in enumerate_homs("F", m, m2):
                        for n2 in range(1, self.nmax + 1):
                            for g in enumerate_homs("F", n, n2):
                                if m == m2 and n == n2 and f == identity_map(m) and g == identity_map(n):
                                    continue
                                fg = smash_based(f, g)
                                for psi in enumerate_homs("F", m2 * n2, k):
                                    pf = compose_based(psi, fg).image
                                    for x in xs:
                                        fx = X.act(f, m, m2, p, x)
                                        for y in ys:
                                            a = node(m, n, pf, x, y)
                                            b = node(m2, n2, psi.image, fx, Y.act(g, n, n2, p, y))
                                            uf.union(a, b)
        rep = uf.classes()
        self._rep[key] = rep
        self._elems[key] = sorted(set(rep.values()))
        return rep

    def cls(self, k, p, m, n, psi, x, y):
        if self._is_base_raw(p, m, n, psi, x, y):
            return EMPTY
        return self._build(k, p)[(m, n, tuple(psi), x, y)]

    def elements(self, k, p):
        self._build(k, p)
        return self._elems[(k, p)]

    def base(self, k, p):
        return EMPTY

    def act(self, chi, k, k2, p, z):
        if z == EMPTY:
            return EMPTY
        m, n, psi, x, y = z
        return self.cls(k2, p, m, n, compose_based(chi, BasedMap(len(psi), k, psi)).image, x, y)

    def gact(self, g, k, p, z):
        if z == EMPTY or g == 0:
            return z
        m, n, psi, x, y = z
        return self.cls(k, p, m, n, psi, self.X.gact(g, m, p, x), self.Y.gact(g, n, p, y))

    def face(self, k, p, i, z):
        if z == EMPTY:
            return EMPTY
        m, n, psi, x, y = z
        return self.cls(k, p - 1, m, n, psi, self.X.face(m, p, i, x), self.Y.face(n, p, i, y))

    def degen(self, k, p, i, z):
        if z == EMPTY:
            return EMPTY
        m, n, psi, x, y = z
        return self.cls(k, p + 1, m, n, psi, self.X.degen(m, p, i, x), self.Y.degen(n, p, i, y))


def _free_to_day(F1AB, day):
    """F_1(A ^ B) -> X ^ Y: label (1, a, b) at position t -> [(1, 1, (t), (a), (b))]."""
    def fn(k, p, z):
        for t, s in enumerate(z, start=1):
            if s != BASE:
                return day.cls(k, p, 1, 1, (t,), (s[1],), (s[2],))
        return EMPTY
    return DiagramMap(F1AB, day, fn, name="F1(A^B) -> F1A^F1B")


def day_smash_free(A, B, N=2, degrees=None):
    """F_1 A ^ F_1 B ~= F_1(A ^ B), with the coend over all m, n <= N."""
    X, Y = free_diagram(A, N), free_diagram(B, N)
    day = DaySmash(X, Y, N, N, N)
    F1AB = free_diagram(smash(A, B), N)
    f = _free_to_day(F1AB, day)
    degrees = range(day.dim + 1) if degrees is None else degrees
    iso = f.is_bijective(degrees=degrees) and not f.check(degrees=degrees)
    if not iso:
        raise AssertionError("F1A ^ F1B -> F1(A ^ B) is not an isomorphism")
    return {"day": day, "free": F1AB, "map": f, "iso": iso}


def generation_certificate(X, g):
    """X is generated in degrees <= g: the counit P U_{<=g} X -> X is an isomorphism."""
    C = IndexCategory(X.cat.tag, g, group=X.cat.group)
    U = Restriction(X, C)
    P = KanExtension(U, X.cat)

    def fn(d, p, z):
        if z == EMPTY:
            return X.base(d, p)
        c, psi, x = z
        return X.act(BasedMap(len(psi), X.cat.card(d), psi), c, d, p, x)

    return DiagramMap(P, X, fn, name="counit").is_isomorphism()


def day_smash_generated(X, Y, gX, gY):
    """X ^ Y via the coend over m <= gX, n <= gY, after verifying the certificates.

    The generation certificate is a sufficient condition of this package's own."""
    if not generation_certificate(X, gX):
        raise ValueError(f"{X.name} is not generated in degrees <= {gX}")
    if not generation_certificate(Y, gY):
        raise ValueError(f"{Y.name} is not generated in degrees <= {gY}")
    return DaySmash(X, Y, X.cat.N, gX, gY)


# ---------------------------------------------------------------------------
# the pairing phi on bar simplices

def smash_labels(L1, L2):
    """Capacity-one labels A ^ B for the codomain of a free pairing."""
    return LabelSpace(smash(L1.sset, L2.sset), None, name=f"{L1.name}^{L2.name}")


class Phi:
    """phi: B_{q,p}(S^V, F^Sigma, X) ^ B_{q,p}(S^W, F^Sigma, Y) -> B_{q,p}(S^{V+W}, F^Sigma, Z)

    on raw chains: levels m_i n_i, maps phi_i ^ psi_i, top labels v_i ^ w_j and
    leaf labels pair(x_i, y_j), all at lexicographic positions.  The target is
    truncated at N1 N2 and never enumerated, only used to canonicalize."""

    def __init__(self, B1, B2, Zlabels, pair_leaf, name="phi"):
        self.B1, self.B2 = B1, B2
        self.pair_leaf = pair_leaf
        self.VW = direct_sum_action(B1.T.rep, B2.T.rep)
        S = sphere(self.VW, min(B1.pmax, B2.pmax))
        Zdiag = LabelDiagram(IndexCategory("F", B1.N * B2.N, group=B1.X.cat.group), Zlabels,
                             min(B1.pmax, B2.pmax), name="Z")
        self.target = ChainBar(S, Zdiag, B1.N * B2.N, min(B1.qmax, B2.qmax), min(B1.pmax, B2.pmax),
                               symmetric=B1.symmetric, name=name)
        self.name = name

    def raw(self, p, r1, r2):
        top1, maps1, bot1, _ = r1
        top2, maps2, bot2, _ = r2
        top = tuple(sphere_smash_label(a, b) for a in top1 for b in top2)
        maps = []
        prev1, prev2 = len(top1), len(top2)
        for m1, m2 in zip(maps1, maps2):
            maps.append(smash_based(BasedMap(len(m1), prev1, m1), BasedMap(len(m2), prev2, m2)).image)
            prev1, prev2 = len(m1), len(m2)
        bottom = tuple(self.pair_leaf(p, x, y) for x in bot1 for y in bot2)
        return top, tuple(maps), bottom

    def __call__(self, q, p, z1, z2):
        if z1 == BASE_KEY or z2 == BASE_KEY:
            return BASE_KEY
        top, maps, bottom = self.raw(p, self.B1.raw(z1), self.B2.raw(z2))
        return self.target.key(p, top, maps, bottom)


def relabel(B_src, B_tgt, p, key, ftop=None, fleaf=None):
    """Apply labelwise maps to a chain of B_src and re-key it in B_tgt."""
    if key == BASE_KEY:
        return BASE_KEY
    top, maps, bottom, ext = B_src.raw(key)
    if ftop is not None:
        top = tuple(ftop(a) for a in top)
    if fleaf is not None:
        bottom = tuple(fleaf(b) for b in bottom)
    return B_tgt.key(p, top, maps, bottom, ext)


def swap_sphere_label(k):
    """S^{V+W} -> S^{W+V} for |V| = k."""
    def f(v):
        if v[0] == 0:
            return v
        return (1,) + v[1 + k:] + v[1:1 + k]
    return f


def unit_chain(B_unit, q, p):
    """The unit simplex of B(S^0, F^Sigma, I) in bidegree (q, p)."""
    one = (1,)
    k = B_unit.key(p, (one,), (), (one,))
    for j in range(q):
        k = B_unit.hdegen(j, p, 0, k)
    return k


def _cells(Q, D):
    return [(q, p) for q in range(Q + 1) for p in range(D + 1)]


def _tuples(levels, k, budget, rng):
    """All k-tuples of non-base simplices if there are at most budget of them, else a sample."""
    Ls = [[z for z in L if z != BASE_KEY] for L in levels]
    total = 1
    for L in Ls:
        total *= len(L)
    if total <= budget:
        return list(itertools.product(*Ls)), True, total
    return [tuple(rng.choice(L) for L in Ls) for _ in range(budget)], False, total


def free_bar(A, N, Q, D, k=1, symmetric=True, name=None):
    X = free_diagram(A, N)
    S = sphere(trivial_action(A.group, k), D)
    return ChainBar(S, X, N, Q, D, symmetric=symmetric, name=name or f"B(S^{k},{A.name})")


def check_coherence(As, N=3, Q=2, D=3, k=1, budget=20000, seed=0, cells=None):
    """Unit, associativity and symmetry diagrams for phi on free diagrams F_1 A.

    As: list of label spaces (e.g. S^0, S^1); V = W = trivial k-dimensional.
    Every cell (q, p) is checked exhaustively when the number of tuples is at
    most budget, otherwise on a seeded random sample of that size; the report
    records which.  Returns a dict diagram -> {checked, exhaustive, sampled, failures}.
    """
    rng = random.Random(seed)
    e = As[0].group
    bars = {A.name: free_bar(A, N, Q, D, k) for A in As}
    I = free_bar(sphere(trivial_action(e, 0), D), 1, Q, D, 0, name="B(S^0,I)")
    cells = _cells(Q, D) if cells is None else cells
    report = {}

    def entry(name):
        return report.setdefault(name, {"checked": 0, "exhaustive": [], "sampled": [], "failures": []})

    def note(r, cell, exh, n):
        (r["exhaustive"] if exh else r["sampled"]).append(cell)
        r["checked"] += n

    # unit diagrams
    for A in As:
        B = bars[A.name]
        fl = Phi(I, B, smash_labels(I.L, B.L), smash_label(I.L, B.L))
        fr = Phi(B, I, smash_labels(B.L, I.L), smash_label(B.L, I.L))
        lam = lambda s: s if s == BASE else s[2]  # noqa: E731
        rho = lambda s: s if s == BASE else s[1]  # noqa: E731
        for q, p in cells:
            u = unit_chain(I, q, p)
            zs = [z for z in B.level(q, p) if z != BASE_KEY]
            rl, rr = entry("unit_left"), entry("unit_right")
            for z in zs:
                if relabel(fl.target, B, p, fl(q, p, u, z), fleaf=lam) != z:
                    rl["failures"].append((A.name, q, p, z))
                if relabel(fr.target, B, p, fr(q, p, z, u), fleaf=rho) != z:
                    rr["failures"].append((A.name, q, p, z))
            note(rl, (A.name, q, p), True, len(zs))
            note(rr, (A.name, q, p), True, len(zs))
    # associativity
    for A1, A2, A3 in itertools.product(As, repeat=3):
        B1, B2, B3 = bars[A1.name], bars[A2.name], bars[A3.name]
        f12 = Phi(B1, B2, smash_labels(B1.L, B2.L), smash_label(B1.L, B2.L))
        L12 = f12.target.L
        f12_3 = Phi(f12.target, B3, smash_labels(L12, B3.L), smash_label(L12, B3.L))
        f23 = Phi(B2, B3, smash_labels(B2.L, B3.L), smash_label(B2.L, B3.L))
        L23 = f23.target.L
        f1_23 = Phi(B1, f23.target, smash_labels(B1.L, L23), smash_label(B1.L, L23))

        def alpha(s):
            return s if s == BASE else (1, s[1][1], (1, s[1][2], s[2]))

        r = entry("assoc")
        for q, p in cells:
            tuples, exh, total = _tuples([B1.level(q, p), B2.level(q, p), B3.level(q, p)], 3, budget, rng)
            for z1, z2, z3 in tuples:
                lhs = relabel(f12_3.target, f1_23.target, p, f12_3(q, p, f12(q, p, z1, z2), z3), fleaf=alpha)
                rhs = f1_23(q, p, z1, f23(q, p, z2, z3))
                if lhs != rhs:
                    r["failures"].append((A1.name, A2.name, A3.name, q, p, z1, z2, z3))
            note(r, (A1.name, A2.name, A3.name, q, p), exh, len(tuples))
    # symmetry
    for A1, A2 in itertools.product(As, repeat=2):
        r = entry("symmetry")
        res = symmetry_square(bars[A1.name], bars[A2.name], cells, budget, rng, k)
        r["failures"] += res["failures"]
        r["checked"] += res["checked"]
        r["exhaustive"] += [(A1.name, A2.name) + c for c in res["exhaustive"]]
        r["sampled"] += [(A1.name, A2.name) + c for c in res["sampled"]]
    return report


def symmetry_square(B1, B2, cells, budget, rng, k=1, stop_at_first=False):
    """tau_Day o phi(z1, z2) (sphere coordinates and labels swapped in place)
    against phi(z2, z1)."""
    f12 = Phi(B1, B2, smash_labels(B1.L, B2.L), smash_label(B1.L, B2.L))
    f21 = Phi(B2, B1, smash_labels(B2.L, B1.L), smash_label(B2.L, B1.L))
    sw = swap_sphere_label(k)
    out = {"checked": 0, "exhaustive": [], "sampled": [], "failures": []}
    for q, p in cells:
        tuples, exh, _ = _tuples([B1.level(q, p), B2.level(q, p)], 2, budget, rng)
        for z1, z2 in tuples:
            lhs = relabel(f12.target, f21.target, p, f12(q, p, z1, z2), ftop=sw,
                          fleaf=lambda s: s if s == BASE else (1, s[2], s[1]))
            rhs = f21(q, p, z2, z1)
            if lhs != rhs:
                out["failures"].append((q, p, z1, z2, lhs, rhs))
                if stop_at_first:
                    return out
        out["checked"] += len(tuples)
        (out["exhaustive"] if exh else out["sampled"]).append((q, p))
    return out


def n_variant_symmetry_failure(A1, A2, N=2, Q=1, D=1, k=1):
    """Negative control: with F^N in place of F^Sigma (no orbit passage) the
    symmetry square fails; returns the first failing simplex pair."""
    B1 = free_bar(A1, N, Q, D, k, symmetric=False)
    B2 = free_bar(A2, N, Q, D, k, symmetric=False)
    cells = [(q, p) for q in range(Q + 1) for p in range(D + 1)]
    res = symmetry_square(B1, B2, cells, 10 ** 9, random.Random(0), k, stop_at_first=True)
    return res["failures"][0] if res["failures"] else None


def phi_checks(B1, B2, cells, budget=5000, seed=0):
    """phi commutes with bar and internal faces/degeneracies, and descends
    through Sigma-orbits (recomputed on permuted raw representatives)."""
    rng = random.Random(seed)
    f = Phi(B1, B2, smash_labels(B1.L, B2.L), smash_label(B1.L, B2.L))
    T = f.target
    errs = []
    for q, p in cells:
        tuples, _, _ = _tuples([B1.level(q, p), B2.level(q, p)], 2, budget, rng)
        for z1, z2 in tuples:
            v = f(q, p, z1, z2)
            if q > 0:
                for i in range(q + 1):
                    if f(q - 1, p, B1.hface(q, p, i, z1), B2.hface(q, p, i, z2)) != T.hface(q, p, i, v):
                        errs.append(("hface", q, p, i, z1, z2))
            if q < min(B1.qmax, B2.qmax):
                for i in range(q + 1):
                    if f(q + 1, p, B1.hdegen(q, p, i, z1), B2.hdegen(q, p, i, z2)) != T.hdegen(q, p, i, v):
                        errs.append(("hdegen", q, p, i, z1, z2))
            if p > 0:
                for i in range(p + 1):
                    if f(q, p - 1, B1.vface(q, p, i, z1), B2.vface(q, p, i, z2)) != T.vface(q, p, i, v):
                        errs.append(("vface", q, p, i, z1, z2))
            if p < min(B1.pmax, B2.pmax):
                for i in range(p + 1):
                    if f(q, p + 1, B1.vdegen(q, p, i, z1), B2.vdegen(q, p, i, z2)) != T.vdegen(q, p, i, v):
                        errs.append(("vdegen", q, p, i, z1, z2))
            # orbit descent: permute every level of both representatives
            r1, r2 = B1.raw(z1), B2.raw(z2)
            top, maps, bottom = f.raw(p, _permute_raw(r1, rng), _permute_raw(r2, rng))
            if T.key(p, top, maps, bottom) != v:
                errs.append(("descent", q, p, z1, z2))
    return errs


def _permute_raw(r, rng):
    """A random representative of the same Sigma-orbit."""
    top, maps, bottom, ext = r
    sizes = [len(top)] + [len(m) for m in maps]
    sig = []
    for n in sizes:
        s = list(range(1, n + 1))
        rng.shuffle(s)
        sig.append(s)
    inv = [[0] * n for n in sizes]
    for lvl, s in enumerate(sig):
        for a, b in enumerate(s, start=1):
            inv[lvl][b - 1] = a
    top2 = tuple(top[inv[0][u] - 1] for u in range(sizes[0]))
    maps2 = []
    for i, m in enumerate(maps, start=1):
        maps2.append(tuple((sig[i - 1][m[inv[i][u] - 1] - 1] if m[inv[i][u] - 1] else 0)
                           for u in range(sizes[i])))
    bottom2 = tuple(bottom[inv[-1][u] - 1] for u in range(sizes[-1]))
    return top2, tuple(maps2), bottom2, ext


def levelwise_certificate(n_max=3, D=3, k=1):
    """Exhaustive identities of the levelwise ingredients of phi.

    Morphisms: smash_based is functorial in each variable (composable pairs
    with sizes <= n_max), satisfies interchange, unit, associativity (sizes
    <= 2, all triples) and tau (phi ^ psi) tau^-1 = psi ^ phi.  Labels:
    sphere concatenation is associative and unital and the coordinate swap
    matches; the free label pairing is associative, unital and symmetric up to
    the swap, for S^0 and S^1 labels up to degree D.  Returns name -> failures.
    """
    out = {}
    homs = {(a, b): enumerate_homs("F", a, b) for a in range(1, n_max + 1) for b in range(1, n_max + 1)}
    errs = []
    for a, b, c in itertools.product(range(1, n_max + 1), repeat=3):
        for f in homs[(a, b)]:
            for g in homs[(b, c)]:
                gf = compose_based(g, f)
                for n in range(1, n_max + 1):
                    i = identity_map(n)
                    if smash_based(gf, i) != compose_based(smash_based(g, i), smash_based(f, i)):
                        errs.append(("left", f, g, n))
                    if smash_based(i, gf) != compose_based(smash_based(i, g), smash_based(i, f)):
                        errs.append(("right", f, g, n))
    out["functorial"] = errs
    allh = [h for v in homs.values() for h in v]
    errs = []
    for f in allh:
        for g in allh:
            a = compose_based(smash_based(f, identity_map(g.n)), smash_based(identity_map(f.m), g))
            b = compose_based(smash_based(identity_map(f.n), g), smash_based(f, identity_map(g.m)))
            if not (a == b == smash_based(f, g)):
                errs.append(("interchange", f, g))
            # symmetry: tau_{n,n'} (f ^ g) tau_{m,m'}^-1 = g ^ f
            tau_src = _tau(f.m, g.m)
            tau_tgt = _tau(f.n, g.n)
            lhs = compose_based(tau_tgt, compose_based(smash_based(f, g), _tau(g.m, f.m)))
            if lhs != smash_based(g, f):
                errs.append(("tau", f, g))
        one = identity_map(1)
        if smash_based(one, f) != f or smash_based(f, one) != f:
            errs.append(("unit", f))
    out["interchange/unit/tau"] = errs
    small = [h for (a, b), v in homs.items() if a <= 2 and b <= 2 for h in v]
    errs = []
    for f, g, h in itertools.product(small, repeat=3):
        if smash_based(smash_based(f, g), h) != smash_based(f, smash_based(g, h)):
            errs.append(("assoc", f, g, h))
    out["assoc"] = errs
    # labels
    errs = []
    S0 = sphere(trivial_action(trivial_group(), 0), D)
    Sk = sphere(trivial_action(trivial_group(), k), D)
    for p in range(D + 1):
        for v, w, u in itertools.product(Sk.levels[p], repeat=3):
            if sphere_smash_label(sphere_smash_label(v, w), u) != sphere_smash_label(v, sphere_smash_label(w, u)):
                errs.append(("sphere assoc", p, v, w, u))
            if swap_sphere_label(k)(sphere_smash_label(v, w)) != sphere_smash_label(w, v):
                errs.append(("sphere swap", p, v, w))
            if sphere_smash_label((1,), v) != v or sphere_smash_label(v, (1,)) != v:
                errs.append(("sphere unit", p, v))
        for L in (S0, Sk):
            lab = LabelSpace(L, None)
            pr = smash_label(lab, lab)
            for x, y in itertools.product(L.levels[p], repeat=2):
                s = pr(p, x, y)
                if (s == BASE) != (x == BASE or y == BASE):
                    errs.append(("label base", p, x, y))
                if s != BASE and (1, s[2], s[1]) != pr(p, y, x):
                    errs.append(("label swap", p, x, y))
    out["labels"] = errs
    return out


def _tau(m, n):
    """The twist m n -> n m: lex(i, j) -> lex(j, i)."""
    img = [0] * (m * n)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            img[lex_index(i, j, n) - 1] = lex_index(j, i, m)
    return BasedMap(m * n, m * n, tuple(img))


# ---------------------------------------------------------------------------
# Barratt-Priddy-Quillen

class BPQ:
    """B(A^., F^Sigma, .X) ~ A ^ X for a based simplicial set X and A = S^V.

    zeta collapses a chain to a_j ^ x (j the unique live leaf pushed to the
    top); eta is the one-node chain; the extra degeneracy inserts a one-point
    level under the live leaf."""

    def __init__(self, X, A, N, Q, D):
        self.Xs, self.A = X, A
        self.N, self.Q, self.D = N, Q, D
        self.dotX = free_diagram(X, N)
        self.B = ChainBar(A, self.dotX, N, Q, D, name="B(A,F,.X)")
        self.AX = smash(A, X)

    def zeta(self, p, z):
        if z == BASE_KEY:
            return BASE
        top, bottom, _ = chain_collapse(self.B, p, z)
        for a, x in zip(top, bottom):
            if x != self.Xs.base(p):
                return BASE if a == self.A.base(p) else (1, a, x)
        return BASE

    def eta(self, p, s, q=0):
        if s == BASE:
            return BASE_KEY
        k = self.B.key(p, (s[1],), (), (s[2],))
        for j in range(q):
            k = self.B.hdegen(j, p, 0, k)
        return k

    def extra(self, q, p, z):
        """s_{q+1}: a new bottom level with one node under the live leaf."""
        if z == BASE_KEY:
            return BASE_KEY
        top, maps, bottom, ext = self.B.raw(z)
        base = self.Xs.base(p)
        live = [j for j, x in enumerate(bottom, start=1) if x != base]
        j = live[0]
        new_bottom = tuple(base if t != j else bottom[j - 1] for t in range(1, len(bottom) + 1))
        return self.B.key(p, top, maps + ((j,),), (bottom[j - 1],), ext)

    def rows(self, degrees=None):
        """Per internal degree p: zeta.eta = id, both maps simplicial, and the
        homotopy from eta.zeta to id (extra degeneracy, right side)."""
        degrees = range(self.D + 1) if degrees is None else degrees
        out = {}
        for p in degrees:
            row = self.B.row(p)
            AXp = [s for s in self.AX.levels[p]]
            const = discrete(AXp, self.Q, BASE)
            zeta = SimplicialMap(row, const, lambda q, z, p=p: self.zeta(p, z), name="zeta")
            eta = SimplicialMap(const, row, lambda q, s, p=p: self.eta(p, s, q), name="eta")
            h = extra_degeneracy_homotopy(row, lambda q, z, p=p: self.extra(q, p, z), "right")
            H = SimplicialHomotopy(row, row, lambda q, z, p=p: self.eta(p, self.zeta(p, z), q),
                                   lambda q, z: z, h)
            out[p] = {
                "zeta.eta = id": all(self.zeta(p, self.eta(p, s, q)) == s for q in range(self.Q + 1) for s in AXp),
                "zeta simplicial": not zeta.check(),
                "eta simplicial": not eta.check(),
                "extra degeneracy": all(row.face(q + 1, q + 1, self.extra(q, p, z)) == z
                                        for q in range(self.Q) for z in row.levels[q]),
                "homotopy": is_homotopy(H),
            }
        return out

    def diagonal_maps(self):
        """zeta, eta on the diagonal (degree <= min(Q, D))."""
        top = min(self.Q, self.D)
        dB = diagonal(self.B, top)
        AX = self.AX
        zeta = SimplicialMap(dB, AX, lambda d, z: self.zeta(d, z), name="zeta")
        eta = SimplicialMap(AX, dB, lambda d, s: self.eta(d, s, d), name="eta")
        return dB, zeta, eta

    def homology(self):
        """HomologyResult of both sides, up to degree min(Q, D) - 1."""
        dB, _, _ = self.diagonal_maps()
        top = dB.dim - 1
        return reduced_homology(dB, top), reduced_homology(self.AX, top)


def bpq_mu(X, A, N, Q, D):
    return BPQ(X, A, N, Q, D)


class TensorOverF:
    """Y^. (x)_F .X as a coequalizer: raw (n, a in Y^n, x in .X(n)) modulo
    (m, a o f, x) ~ (n, a, f.x) for f: m -> n."""

    def __init__(self, Y, X, N, D):
        self.Y, self.Xs, self.N, self.D = Y, X, N, D
        self.dotX = free_diagram(X, N)
        self._rep = {}

    def _is_base(self, p, n, a, x):
        return x == self.dotX.base(n, p) or all(v == self.Y.base(p) for v in a)

    def _build(self, p):
        if p in self._rep:
            return self._rep[p]
        Y, dX = self.Y, self.dotX
        uf = UnionFind()
        uf.add(EMPTY)

        def node(n, a, x):
            if self._is_base(p, n, a, x):
                return EMPTY
            t = (n, a, x)
            uf.add(t)
            return t

        yb = Y.base(p)
        for n in range(1, self.N + 1):
            for a in itertools.product(Y.levels[p], repeat=n):
                for x in dX.elements(n, p):
                    node(n, a, x)
        for m in range(1, self.N + 1):
            for n in range(1, self.N + 1):
                for f in enumerate_homs("F", m, n):
                    for a in itertools.product(Y.levels[p], repeat=n):
                        af = tuple(a[v - 1] if v else yb for v in f.image)
                        for x in dX.elements(m, p):
                            uf.union(node(m, af, x), node(n, a, dX.act(f, m, n, p, x)))
        self._rep[p] = uf.classes()
        return self._rep[p]

    def cls(self, p, n, a, x):
        if self._is_base(p, n, a, x):
            return EMPTY
        return self._build(p)[(n, a, x)]

    def sset(self):
        levels = [sorted(set(self._build(p).values())) for p in range(self.D + 1)]

        def op(f_y, f_x):
            def g(p, i, z):
                if z == EMPTY:
                    return EMPTY
                n, a, x = z
                p2 = p - 1 if f_y == "face" else p + 1
                fy = getattr(self.Y, f_y)
                fx = getattr(self.dotX, f_x)
                return self.cls(p2, n, tuple(fy(p, i, v) for v in a), fx(n, p, i, x))
            return g

        return SSet(levels, op("face", "face"), op("degen", "degen"), basepoints=[EMPTY] * (self.D + 1),
                    name="Y(x)_F.X")


def lemma_coequalizer_iso(Y, X, N, D):
    """Y^. (x)_F .X -> Y ^ X, [(n, a, x)] -> a_j ^ x_j (j the live position)."""
    T = TensorOverF(Y, X, N, D)
    src = T.sset()
    tgt = smash(Y, X)

    def fn(p, z):
        if z == EMPTY:
            return BASE
        n, a, x = z
        for aj, xj in zip(a, x):
            if xj != X.base(p):
                return BASE if aj == Y.base(p) else (1, aj, xj)
        return BASE

    f = SimplicialMap(src, tgt, fn, name="coeq")
    return {"bijective": f.is_bijective(), "errors": f.check(), "sizes": src.sizes(), "map": f}


# ---------------------------------------------------------------------------
# Eilenberg-Mac Lane ring pairings

class EMRingPairing:
    """S(R A)(V) ^ S(R A)(W) -> S(R A)(V + W): phi followed by R(mult).

    Leaf labels pair to a_i b_j; the unit is the image of h for S = {1}
    followed by Z -> A, i.e. the one-node chain with leaf label 1."""

    def __init__(self, A, N, Q, D):
        if A.mult is None:
            raise ValueError(f"{A.name} carries no multiplication")
        self.A, self.N, self.Q, self.D = A, N, Q, D
        self.RA = R_diagram(A, N, D)
        self._bars = {}
        self._phis = {}

    def bar(self, k, N=None):
        N = self.N if N is None else N
        key = (k, N)
        if key not in self._bars:
            S = sphere(trivial_action(self.A.group, k), self.D)
            X = R_diagram(self.A, N, self.D)
            self._bars[key] = ChainBar(S, X, N, self.Q, self.D, name=f"B(S^{k},RA)")
        return self._bars[key]

    def phi(self, B1, B2):
        key = (id(B1), id(B2))
        if key not in self._phis:
            A = self.A
            self._phis[key] = Phi(B1, B2, A.label_space(self.D), lambda p, x, y: A.mult(x, y))
        return self._phis[key]

    def unit(self, q, p):
        B = self.bar(0, 1)
        k = B.key(p, ((1,),), (), (self.A.one,))
        for j in range(q):
            k = B.hdegen(j, p, 0, k)
        return k

    def check(self, ks=(0, 0, 1), qmax=1, dmax=2, budget=200000, seed=0):
        """Associativity on triples and two-sided unitality, cells q <= qmax, p <= dmax."""
        rng = random.Random(seed)
        B1, B2, B3 = (self.bar(k) for k in ks)
        f12 = self.phi(B1, B2)
        f12_3 = self.phi(f12.target, B3)
        f23 = self.phi(B2, B3)
        f1_23 = self.phi(B1, f23.target)
        out = {"assoc": [], "unit_left": [], "unit_right": [], "exhaustive": [], "sampled": [], "checked": 0}
        for q in range(qmax + 1):
            for p in range(dmax + 1):
                tuples, exh, _ = _tuples([B1.level(q, p), B2.level(q, p), B3.level(q, p)], 3, budget, rng)
                for z1, z2, z3 in tuples:
                    lhs = f12_3(q, p, f12(q, p, z1, z2), z3)
                    rhs = f1_23(q, p, z1, f23(q, p, z2, z3))
                    if lhs != rhs:
                        out["assoc"].append((q, p, z1, z2, z3))
                out["checked"] += len(tuples)
                (out["exhaustive"] if exh else out["sampled"]).append((q, p))
                U = self.bar(0, 1)
                fl, fr = self.phi(U, B3), self.phi(B3, U)
                u = self.unit(q, p)
                for z in B3.level(q, p):
                    if z == BASE_KEY:
                        continue
                    if relabel(fl.target, B3, p, fl(q, p, u, z)) != z:
                        out["unit_left"].append((q, p, z))
                    if relabel(fr.target, B3, p, fr(q, p, z, u)) != z:
                        out["unit_right"].append((q, p, z))
        return out


def em_ring_pairing(A, N=2, Q=1, D=2):
    return EMRingPairing(A, N, Q, D)
