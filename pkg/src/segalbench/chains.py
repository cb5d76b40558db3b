"""Bar constructions B(T^., F^Sigma, X) stored as canonical labeled forests.

A raw q-chain is
    top     labels a_1..a_{n_0} in T          (the right module T^.)
    maps    phi_i : n_i -> n_{i-1}, i = 1..q   (based maps, 0 = dead)
    bottom  labels x_1..x_{n_q} in L          (an element of X(n_q))
    ext     an optional extra label (tensoring with an unbased space)
Reading the maps as parent pointers gives a leveled forest: level 0 nodes are
roots carrying top labels, nodes sent to 0 are dead roots of their level and
level q nodes carry leaf labels.  The permutation groups Sigma_{n_i} act by
relabelling the nodes of a level, so an orbit is an isomorphism class of
labeled forests.  The key of an orbit is its canonical code (sorted children
codes, computed bottom up); the basepoint has key ().

Faces: d_0 pulls top labels back along phi_1, d_i (0<i<q) composes
phi_i o phi_{i+1}, d_q pushes the leaf labels forward (summing).  s_i doubles
level i with an identity map.  With symmetric=False (the N-variant) keys are
the raw chains themselves.
"""
from __future__ import annotations

from .simplicial import BiSSet

BASE_KEY = ()


def canon_forest(top, maps, bottom, ext=None):
    """Canonical code of a raw chain (no basepoint test)."""
    q = len(maps)
    codes = list(bottom)
    deads = [None] * q
    for i in range(q, 0, -1):
        m = maps[i - 1]
        n_prev = len(top) if i == 1 else len(maps[i - 2])
        children = [[] for _ in range(n_prev + 1)]
        for k, par in enumerate(m):
            children[par].append(codes[k])
        deads[i - 1] = tuple(sorted(children[0]))
        codes = [tuple(sorted(ch)) for ch in children[1:]]
    roots = tuple(sorted(zip(top, codes)))
    return (q, roots, tuple(deads), ext)


def decode_forest(key):
    q, roots, deads, ext = key
    top = tuple(a for a, _ in roots)
    codes = [c for _, c in roots]
    maps = []
    for i in range(1, q + 1):
        m = []
        new = []
        for j, c in enumerate(codes):
            for child in c:
                m.append(j + 1)
                new.append(child)
        for c in deads[i - 1]:
            m.append(0)
            new.append(c)
        maps.append(tuple(m))
        codes = new
    return top, tuple(maps), tuple(codes), ext


def compose_parent(outer, inner):
    """Parent map of phi o psi where outer = phi and inner = psi (tuples)."""
    return tuple(outer[v - 1] if v else 0 for v in inner)


class ChainBar(BiSSet):
    """B_{q,p}(T^., F^Sigma, X) truncated at N (all n_i in 1..N).

    top     a based SSet of top labels (a sphere, or a discrete based set n)
    X       a LabelDiagram over F (leaf labels and their addition)
    extra   an unbased SSet K: the bar construction of X ^ K_+
    """

    def __init__(self, top, X, N, qmax, pmax, symmetric=True, extra=None, name="B"):
        self.T = top
        self.X = X
        self.L = X.labels
        self.N = N
        self.qmax = qmax
        self.pmax = min(pmax, top.dim, X.dim, extra.dim if extra is not None else pmax)
        self.symmetric = symmetric
        self.extra = extra
        self.group = top.group
        self.name = name
        self._levels = {}
        self._ops = {}

    # keys ------------------------------------------------------------------
    def is_base_raw(self, p, top, maps, bottom):
        tb = self.T.base(p)
        if all(a == tb for a in top):
            return True
        z = self.L.zero(p)
        if all(b == z for b in bottom):
            return True
        return any(all(v == 0 for v in m) for m in maps)

    def key(self, p, top, maps, bottom, ext=None):
        if self.is_base_raw(p, top, maps, bottom):
            return BASE_KEY
        if self.symmetric:
            return canon_forest(top, maps, bottom, ext)
        return (len(maps), tuple(top), tuple(maps), tuple(bottom), ext)

    def raw(self, key):
        if self.symmetric:
            return decode_forest(key)
        return key[1], key[2], key[3], key[4]

    def base(self, q, p):
        return BASE_KEY

    # enumeration -------------------------------------------------------------
    def level(self, q, p):
        k = (q, p)
        if k not in self._levels:
            body = self._enumerate_symmetric(q, p) if self.symmetric else self._enumerate_raw(q, p)
            self._levels[k] = [BASE_KEY] + sorted(body)
        return self._levels[k]

    def _enumerate_raw(self, q, p):
        import itertools
        N = self.N
        T = self.T.levels[p]
        out = set()
        exts = [None] if self.extra is None else self.extra.levels[p]
        for sizes in itertools.product(range(1, N + 1), repeat=q + 1):
            maps_choices = [list(itertools.product(range(sizes[i - 1] + 1), repeat=sizes[i])) for i in range(1, q + 1)]
            bottoms = self.X.elements(sizes[q], p)
            for top in itertools.product(T, repeat=sizes[0]):
                for maps in itertools.product(*maps_choices):
                    for bottom in bottoms:
                        for e in exts:
                            k = self.key(p, top, maps, bottom, e)
                            if k != BASE_KEY:
                                out.add(k)
        return out

    def _enumerate_symmetric(self, q, p):
        N = self.N
        cap = self.L.capacity
        z = self.L.zero(p)
        width = q + 2  # counts at levels 0..q, then number of non-zero leaves

        def fits(prof):
            for v in prof[:-1]:
                if v > N:
                    return False
            return cap is None or prof[-1] <= cap

        def add(a, b):
            return tuple(x + y for x, y in zip(a, b))

        def multisets(items, start_prof, maxn):
            out = []

            def rec(start, chosen, tot):
                out.append((tuple(chosen), tot))
                if len(chosen) == maxn:
                    return
                for idx in range(start, len(items)):
                    code, prof = items[idx]
                    new = add(tot, prof)
                    if fits(new):
                        chosen.append(code)
                        rec(idx, chosen, new)
                        chosen.pop()
            rec(0, [], start_prof)
            return out

        zero = (0,) * width
        # trees rooted at level i, i = q..0, with profiles over the full width
        trees = {}
        leaves = []
        for a in self.L.sset.levels[p]:
            prof = [0] * width
            prof[q] = 1
            prof[-1] = 0 if a == z else 1
            leaves.append((a, tuple(prof)))
        trees[q] = sorted(leaves)
        for i in range(q - 1, -1, -1):
            own = [0] * width
            own[i] = 1
            items = []
            for kids, prof in multisets(trees[i + 1], tuple(own), N):
                items.append((kids, prof))
            trees[i] = sorted(items)
        tb = self.T.base(p)
        roots = sorted(((a, code), prof) for a in self.T.levels[p] for code, prof in trees[0])
        results = []
        for root_set, prof0 in multisets(roots, zero, N):
            if not root_set or all(a == tb for a, _ in root_set):
                continue
            self._add_dead(q, 1, root_set, [], prof0, trees, multisets, results)
        exts = [None] if self.extra is None else self.extra.levels[p]
        return [(q, r, d, e) for r, d in results for e in exts]

    def _add_dead(self, q, i, roots, deads, prof, trees, multisets, results):
        if i > q:
            if prof[-1] == 0:
                return
            if any(v == 0 for v in prof[:-1]):
                return
            results.append((roots, tuple(deads)))
            return
        attached = prof[i]
        if attached == 0:
            return  # phi_i would be the zero map
        for dead_set, prof2 in multisets(trees[i], prof, self.N):
            deads.append(dead_set)
            self._add_dead(q, i + 1, roots, deads, prof2, trees, multisets, results)
            deads.pop()

    # structure maps ----------------------------------------------------------
    def _cached(self, tag, fn, key):
        c = self._ops.get(tag)
        if c is None:
            c = self._ops[tag] = {}
        r = c.get(key)
        if r is None:
            r = c[key] = fn(key)
        return r

    def hface(self, q, p, i, key):
        if key == BASE_KEY:
            return BASE_KEY
        return self._cached(("hf", q, p, i), lambda k: self._hface(q, p, i, k), key)

    def _hface(self, q, p, i, key):
        top, maps, bottom, ext = self.raw(key)
        if i == 0:
            tb = self.T.base(p)
            top2 = tuple(top[v - 1] if v else tb for v in maps[0])
            return self.key(p, top2, maps[1:], bottom, ext)
        if i < q:
            m = compose_parent(maps[i - 1], maps[i])
            return self.key(p, top, maps[:i - 1] + (m,) + maps[i + 1:], bottom, ext)
        phi = maps[q - 1]
        n_prev = len(top) if q == 1 else len(maps[q - 2])
        L = self.L
        out = [L.zero(p)] * n_prev
        for k, v in enumerate(phi):
            if v:
                out[v - 1] = L.plus(p, out[v - 1], bottom[k])
        return self.key(p, top, maps[:-1], tuple(out), ext)

    def hdegen(self, q, p, i, key):
        if key == BASE_KEY:
            return BASE_KEY
        return self._cached(("hs", q, p, i), lambda k: self._hdegen(q, p, i, k), key)

    def _hdegen(self, q, p, i, key):
        top, maps, bottom, ext = self.raw(key)
        n_i = len(top) if i == 0 else len(maps[i - 1])
        ident = tuple(range(1, n_i + 1))
        return self.key(p, top, maps[:i] + (ident,) + maps[i:], bottom, ext)

    def _labelwise(self, p_new, key, ft, fl, fe):
        top, maps, bottom, ext = self.raw(key)
        return self.key(p_new, tuple(ft(a) for a in top), maps, tuple(fl(b) for b in bottom),
                        None if ext is None else fe(ext))

    def vface(self, q, p, i, key):
        if key == BASE_KEY:
            return BASE_KEY
        T, L, K = self.T, self.L.sset, self.extra
        return self._cached(("vf", q, p, i), lambda k: self._labelwise(
            p - 1, k, lambda a: T.face(p, i, a), lambda b: L.face(p, i, b),
            lambda e: K.face(p, i, e)), key)

    def vdegen(self, q, p, i, key):
        if key == BASE_KEY:
            return BASE_KEY
        T, L, K = self.T, self.L.sset, self.extra
        return self._cached(("vs", q, p, i), lambda k: self._labelwise(
            p + 1, k, lambda a: T.degen(p, i, a), lambda b: L.degen(p, i, b),
            lambda e: K.degen(p, i, e)), key)

    def act(self, g, q, p, key):
        if key == BASE_KEY or g == 0:
            return key
        T, L, K = self.T, self.L.sset, self.extra
        return self._cached(("g", q, p, g), lambda k: self._labelwise(
            p, k, lambda a: T.act(g, p, a), lambda b: L.act(g, p, b),
            lambda e: K.act(g, p, e)), key)

    # diagonal shortcuts --------------------------------------------------------
    def diag_face(self, d, i, key):
        return self.hface(d, d - 1, i, self.vface(d, d, i, key))

    def diag_degen(self, d, i, key):
        return self.hdegen(d, d + 1, i, self.vdegen(d, d, i, key))

    def sizes(self, Q=None, D=None):
        Q = self.qmax if Q is None else Q
        D = self.pmax if D is None else D
        return [[len(self.level(q, p)) for p in range(D + 1)] for q in range(Q + 1)]


def chain_collapse(chain_bar, p, key):
    """Compose all maps: returns (top, bottom pushed to level 0, ext)."""
    if key == BASE_KEY:
        return None
    top, maps, bottom, ext = chain_bar.raw(key)
    L = chain_bar.L
    for i in range(len(maps), 0, -1):
        phi = maps[i - 1]
        n_prev = len(top) if i == 1 else len(maps[i - 2])
        out = [L.zero(p)] * n_prev
        for k, v in enumerate(phi):
            if v:
                out[v - 1] = L.plus(p, out[v - 1], bottom[k])
        bottom = tuple(out)
    return top, bottom, ext
