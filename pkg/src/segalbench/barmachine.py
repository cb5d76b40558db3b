"""Monads, two-sided bar constructions, the machine, and the comparison maps.

Two independent storage schemes are used:
  * chains.ChainBar: B(T^., F^Sigma, X) for plain F-diagrams, as canonical forests;
  * ObjectBar: wedge summands indexed by object tuples (c_0, ..., c_q) with
    orbit-minimal representatives; handles Sigma, N, Sigma_G, N_G and the
    reduced product variant over N_G.
"""
from __future__ import annotations

import itertools

from .chains import BASE_KEY, ChainBar, chain_collapse
from .fingroups import (BasedMap, GSetAction, all_perms, compose_based, conjugation_action,
                        identity_map, perm_inverse, trivial_action)
from .indexdiagrams import (EMPTY, Diagram, DiagramMap, IndexCategory, KanExtension, Restriction,
                            kan_extend, restrict)
from .simplicial import (BASE, BiSSet, SimplicialHomotopy, SimplicialMap, SSet, diagonal, discrete,
                         half_smash, is_homotopy, sphere, sphere_smash_label, check_simplicial)


# ---------------------------------------------------------------------------
# monads

class Monad:
    """E = U P for P the prolongation along ground -> ambient.

    variant 'smash' collapses zero maps and basepoints; 'times' is the unbased
    product version (used only over N_G)."""

    def __init__(self, ground, ambient, variant="smash"):
        if not ambient.contains(ground):
            raise ValueError(f"{ground} is not a subcategory of {ambient}")
        if variant == "times" and ground.base_tag != "N":
            raise ValueError("the product variant is only provided over N and N_G")
        self.ground = ground
        self.ambient = ambient
        self.variant = variant

    def apply(self, X):
        if X.cat is not self.ground and X.cat.tag != self.ground.tag:
            raise ValueError("ground category mismatch")
        if X.cat.N != self.ground.N:
            raise ValueError("truncation mismatch")
        P = KanExtension(X, self.ambient, smash=(self.variant == "smash"))
        return Restriction(P, self.ground)

    def eta(self, X, EX):
        P = EX.Y
        return DiagramMap(X, EX, lambda c, p, x: P.cls(c, p, c, identity_map(self.ground.card(c)).image, x),
                          name="eta")

    def mu(self, EEX, EX):
        """E E X -> E X: [(c, psi, [(c', chi, x)])] -> [(c', psi o chi, x)]."""
        P2, P1 = EEX.Y, EX.Y

        def fn(c, p, z):
            if z == EMPTY or z is None:
                return P1.base(c, p)
            c1, psi, inner = z
            if inner == EMPTY:
                return P1.base(c, p)
            c2, chi, x = inner
            comp = tuple(psi[v - 1] if v else 0 for v in chi)
            return P1.cls(c, p, c2, comp, x)

        return DiagramMap(EEX, EX, fn, name="mu")

    def E_of_map(self, f, EX, EY):
        """E f: E X -> E Y."""
        PX, PY = EX.Y, EY.Y

        def fn(c, p, z):
            if z == EMPTY:
                return PY.base(c, p)
            c1, psi, x = z
            return PY.cls(c, p, c1, psi, f(c1, p, x))

        return DiagramMap(EX, EY, fn, name=f"E({f.name})")


def monad_laws(E, X, degrees=(0,)):
    """Check mu.eta_E = mu.E(eta) = id and mu.mu_E = mu.E(mu) elementwise."""
    EX = E.apply(X)
    EEX = E.apply(EX)
    EEEX = E.apply(EEX)
    eta_X = E.eta(X, EX)
    eta_EX = E.eta(EX, EEX)
    mu = E.mu(EEX, EX)
    mu_E = E.mu(EEEX, EEX)
    E_eta = E.E_of_map(eta_X, EX, EEX)
    out = {"mu.eta_E = id": [], "mu.E(eta) = id": [], "mu.mu_E = mu.E(mu)": []}
    for p in degrees:
        for c in E.ground.objects:
            for z in EX.elements(c, p):
                if mu(c, p, eta_EX(c, p, z)) != z:
                    out["mu.eta_E = id"].append((c, z))
                if mu(c, p, E_eta(c, p, z)) != z:
                    out["mu.E(eta) = id"].append((c, z))
            for w in EEEX.elements(c, p):
                a = mu(c, p, mu_E(c, p, w))
                if w == EMPTY or w is None:
                    b = EX.base(c, p)
                else:
                    c1, psi, z = w
                    b = mu(c, p, EEX.Y.cls(c, p, c1, psi, mu(c1, p, z)))
                if a != b:
                    out["mu.mu_E = mu.E(mu)"].append((c, w))
    if E.variant == "smash":
        out["eta is a map of diagrams"] = eta_X.check(degrees=degrees)
        out["mu is a map of diagrams"] = mu.check(degrees=degrees)
    return out


def monad_apply(E, X):
    return E.apply(X)


# ---------------------------------------------------------------------------
# the Sigma bar construction as an F-diagram, via forests

def discrete_top(n, D, group=None):
    """The based set n = {0..n} as a constant top-label space."""
    return discrete(range(n + 1), D, 0, group=group, name=f"{n}")


class SigmaBar:
    """B_q(F^Sigma, F^Sigma, X)(n) = B_q(n^., F^Sigma, X) for an F-labeling X.

    targets are the objects n = 1..N (n = 0 is the point)."""

    def __init__(self, X, N, Q, symmetric=True):
        self.X = X
        self.N = N
        self.qmax = Q
        self.pmax = X.dim
        self.symmetric = symmetric
        self.cat = IndexCategory("F", N, group=X.cat.group)
        self.group = self.cat.group
        self.bars = {n: ChainBar(discrete_top(n, X.dim, self.group), X, N, Q, X.dim, symmetric=symmetric,
                                 name=f"B({n})") for n in range(0, N + 1)}
        self.targets = list(range(N + 1))

    def level(self, n, q, p):
        return self.bars[n].level(q, p)

    def base(self, n, q, p):
        return BASE_KEY

    def hface(self, n, q, p, i, z):
        return self.bars[n].hface(q, p, i, z)

    def hdegen(self, n, q, p, i, z):
        return self.bars[n].hdegen(q, p, i, z)

    def vface(self, n, q, p, i, z):
        return self.bars[n].vface(q, p, i, z)

    def vdegen(self, n, q, p, i, z):
        return self.bars[n].vdegen(q, p, i, z)

    def act(self, g, n, q, p, z):
        return self.bars[n].act(g, q, p, z)

    def post(self, phi, n, m, q, p, z):
        """F-action: postcompose top labels with phi: n -> m."""
        if z == BASE_KEY:
            return BASE_KEY
        B = self.bars[n]
        top, maps, bottom, ext = B.raw(z)
        return self.bars[m].key(p, tuple(phi(a) for a in top), maps, bottom, ext)

    def eps(self, n, p, z):
        """B_q -> X(n): compose all maps and push forward along the top labels."""
        if z == BASE_KEY:
            return self.X.base(n, p)
        top, bottom, _ = chain_collapse(self.bars[n], p, z)
        return self.X.act(BasedMap(len(top), n, top), len(top), n, p, bottom)

    def eta(self, n, p, x, q=0):
        """X(n) -> B_q: (id_n, x), degenerated to degree q."""
        B = self.bars[n]
        k = B.key(p, tuple(range(1, n + 1)), (), x)
        for j in range(q):
            k = B.hdegen(j, p, 0, k)
        return k

    def extra(self, n, q, p, z):
        """The extra degeneracy s_{-1}: insert id_n above the top level."""
        if z == BASE_KEY:
            return BASE_KEY
        B = self.bars[n]
        top, maps, bottom, ext = B.raw(z)
        return B.key(p, tuple(range(1, n + 1)), (tuple(top),) + maps, bottom, ext)

    def diagram(self, q):
        return SigmaBarDiagram(self, q)

    def row(self, n, p, Q=None):
        return self.bars[n].row(p, Q)


class SigmaBarDiagram(Diagram):
    """The F-diagram n -> B_q(F^Sigma, F^Sigma, X)(n) at a fixed bar degree q."""

    def __init__(self, SB, q):
        self.SB = SB
        self.q = q
        self.cat = SB.cat
        self.dim = SB.pmax
        self.name = f"B_{q}"

    def elements(self, n, p):
        return self.SB.level(n, self.q, p)

    def base(self, n, p):
        return BASE_KEY

    def act(self, phi, n, m, p, z):
        return self.SB.post(phi, n, m, self.q, p, z)

    def gact(self, g, n, p, z):
        return self.SB.act(g, n, self.q, p, z)

    def face(self, n, p, i, z):
        return self.SB.vface(n, self.q, p, i, z)

    def degen(self, n, p, i, z):
        return self.SB.vdegen(n, self.q, p, i, z)


# ---------------------------------------------------------------------------
# bar constructions over object tuples

class ObjectBar:
    """B(T, E, X) with q-simplices wedges over (c_0..c_q) of
       T(c_0) ^ E(c_1, c_0) ^ ... ^ E(c_q, c_{q-1}) ^ X(c_q)
    modulo the ground groupoid (Sigma-type) or not at all (N-type).

    T is either the hom functor E(-, d) for target objects d (top=None) or A^.
    for a based G-simplicial set A (top=A, single target None).  variant
    'times' is the reduced product construction: only chains whose top
    component is the basepoint are collapsed, and object 0 is allowed below
    the top.
    """

    def __init__(self, ground, X, Q, top=None, variant="smash", name="B"):
        self.ground = ground
        self.ambient = X.cat
        if not self.ambient.contains(ground):
            raise ValueError(f"{ground} is not a subcategory of {self.ambient}")
        if variant == "times" and ground.base_tag != "N":
            raise ValueError("the product variant is only provided over N and N_G")
        self.X = X
        self.qmax = Q
        self.top = top
        self.variant = variant
        self.group = self.ambient.group
        self.pmax = X.dim if top is None else min(X.dim, top.dim)
        self.name = name
        self.targets = [None] if top is not None else list(self.ambient.objects)
        self._levels = {}
        self._rep = {}
        self.objs = [self.ambient.embed(ground, c) for c in ground.objects]
        lo = 0 if variant == "times" else 1
        self.chain_objs = [c for c in self.objs if self.ambient.card(c) >= lo]
        self.top_objs = [c for c in self.objs if self.ambient.card(c) >= 1]

    # raw chains: (objs, top, homs, y) -------------------------------------
    def _top_elements(self, d, c, p):
        A = self.ambient
        if self.top is None:
            return [h.image for h in A.homs(c, d)]
        return list(itertools.product(self.top.levels[p], repeat=A.card(c)))

    def _top_is_base(self, p, top):
        if self.top is None:
            return all(v == 0 for v in top)
        b = self.top.base(p)
        return all(a == b for a in top)

    def is_base_raw(self, p, raw):
        objs, top, homs, y = raw
        if self._top_is_base(p, top):
            return True
        if self.variant == "times":
            return False
        if any(self.ambient.card(c) == 0 for c in objs):
            return True
        if any(all(v == 0 for v in h) for h in homs):
            return True
        return y == self.X.base(objs[-1], p)

    def _orbit(self, d, p, raw):
        if self.ground.base_tag == "N":
            return [raw]
        A = self.ambient
        objs, top, homs, y = raw
        choices = []
        for c in objs:
            n = A.card(c)
            alts = [c2 for c2 in self.objs if A.card(c2) == n]
            choices.append([(c2, s) for c2 in alts for s in all_perms(n)])
        out = []
        for ch in itertools.product(*choices):
            new_objs = tuple(c2 for c2, _ in ch)
            sig = [s for _, s in ch]
            sinv = [perm_inverse(s) for s in sig]
            # top o sigma_0^-1 (for labels: a'_{sigma(k)} = a_k)
            t2 = tuple(top[v - 1] for v in sinv[0])
            h2 = []
            for i, h in enumerate(homs, start=1):
                # sigma_{i-1} o h o sigma_i^-1
                h2.append(tuple((sig[i - 1][h[v - 1] - 1] if h[v - 1] else 0) for v in sinv[i]))
            s_last = BasedMap(len(sig[-1]), len(sig[-1]), sig[-1])
            y2 = self.X.act(s_last, objs[-1], new_objs[-1], p, y)
            out.append((new_objs, t2, tuple(h2), y2))
        return out

    def level(self, d, q, p):
        key = (d, q, p)
        if key in self._levels:
            return self._levels[key]
        A = self.ambient
        rep = {}
        objs_lists = [self.top_objs] + [self.chain_objs] * q
        for objs in itertools.product(*objs_lists):
            tops = self._top_elements(d, objs[0], p)
            hom_lists = [[h.image for h in A.homs(objs[i], objs[i - 1])] for i in range(1, q + 1)]
            ys = self.X.elements(objs[-1], p)
            for top in tops:
                for homs in itertools.product(*hom_lists):
                    for y in ys:
                        raw = (objs, top, homs, y)
                        if raw in rep:
                            continue
                        if self.is_base_raw(p, raw):
                            continue
                        orb = self._orbit(d, p, raw)
                        m = min(orb)
                        for r in orb:
                            rep[r] = m
        self._rep[key] = rep
        self._levels[key] = [EMPTY] + sorted(set(rep.values()))
        return self._levels[key]

    def cls(self, d, q, p, raw):
        if self.is_base_raw(p, raw):
            return EMPTY
        self.level(d, q, p)
        return self._rep[(d, q, p)][raw]

    def base(self, d, q, p):
        return EMPTY

    # structure -----------------------------------------------------------------
    def hface(self, d, q, p, i, z):
        if z == EMPTY:
            return EMPTY
        objs, top, homs, y = z
        A = self.ambient
        if i == 0:
            h = homs[0]
            if self.top is None:
                t2 = tuple(top[v - 1] if v else 0 for v in h)
            else:
                b = self.top.base(p)
                t2 = tuple(top[v - 1] if v else b for v in h)
            return self.cls(d, q - 1, p, (objs[1:], t2, homs[1:], y))
        if i < q:
            h = tuple(homs[i - 1][v - 1] if v else 0 for v in homs[i])
            return self.cls(d, q - 1, p, (objs[:i] + objs[i + 1:], top, homs[:i - 1] + (h,) + homs[i + 1:], y))
        h = homs[q - 1]
        y2 = self.X.act(BasedMap(len(h), A.card(objs[q - 1]), h), objs[q], objs[q - 1], p, y)
        return self.cls(d, q - 1, p, (objs[:-1], top, homs[:-1], y2))

    def hdegen(self, d, q, p, i, z):
        if z == EMPTY:
            return EMPTY
        objs, top, homs, y = z
        n = self.ambient.card(objs[i])
        ident = tuple(range(1, n + 1))
        return self.cls(d, q + 1, p, (objs[:i + 1] + objs[i:], top, homs[:i] + (ident,) + homs[i:], y))

    def _labelwise(self, d, q, p_new, z, ft, fy):
        objs, top, homs, y = z
        t2 = top if self.top is None else tuple(ft(a) for a in top)
        return self.cls(d, q, p_new, (objs, t2, homs, fy(objs[-1], y)))

    def vface(self, d, q, p, i, z):
        if z == EMPTY:
            return EMPTY
        T = self.top
        return self._labelwise(d, q, p - 1, z, lambda a: T.face(p, i, a),
                               lambda c, y: self.X.face(c, p, i, y))

    def vdegen(self, d, q, p, i, z):
        if z == EMPTY:
            return EMPTY
        T = self.top
        return self._labelwise(d, q, p + 1, z, lambda a: T.degen(p, i, a),
                               lambda c, y: self.X.degen(c, p, i, y))

    def act(self, g, d, q, p, z):
        if z == EMPTY or g == 0:
            return z
        A = self.ambient
        objs, top, homs, y = z
        if self.top is None:
            t2 = conjugation_action(g, BasedMap(len(top), A.card(d), top), A.action(objs[0]), A.action(d)).image
        else:
            alpha = A.action(objs[0])
            t2 = [None] * len(top)
            for k, a in enumerate(top):
                t2[alpha(g, k + 1) - 1] = self.top.act(g, p, a)
            t2 = tuple(t2)
        h2 = tuple(conjugation_action(g, BasedMap(len(h), A.card(objs[i]), h), A.action(objs[i + 1]),
                                      A.action(objs[i])).image for i, h in enumerate(homs))
        return self.cls(d, q, p, (objs, t2, h2, self.X.gact(g, objs[-1], p, y)))

    def post(self, chi, d, d2, q, p, z):
        """Ambient action in the target variable (top=None): chi o psi_0."""
        if z == EMPTY:
            return EMPTY
        objs, top, homs, y = z
        return self.cls(d2, q, p, (objs, tuple(chi(v) for v in top), homs, y))

    def eps(self, d, p, z):
        """Compose everything into X(d) (top=None)."""
        A = self.ambient
        if z == EMPTY:
            return self.X.base(d, p)
        objs, top, homs, y = z
        comp = top
        for h in homs:
            comp = tuple(comp[v - 1] if v else 0 for v in h)
        return self.X.act(BasedMap(len(comp), A.card(d), comp), objs[-1], d, p, y)

    def row(self, d, p, Q=None):
        Q = self.qmax if Q is None else Q
        return SSet([self.level(d, q, p) for q in range(Q + 1)],
                    lambda q, i, z: self.hface(d, q, p, i, z),
                    lambda q, i, z: self.hdegen(d, q, p, i, z),
                    act=lambda g, q, z: self.act(g, d, q, p, z), group=self.group,
                    basepoints=[EMPTY] * (Q + 1), name=f"{self.name}({d})_p{p}")

    def bisimplicial(self, d=None):
        return _ObjectBarBi(self, d)


class _ObjectBarBi(BiSSet):
    def __init__(self, OB, d):
        self.OB = OB
        self.d = d
        self.group = OB.group
        self.qmax = OB.qmax
        self.pmax = OB.pmax

    def level(self, q, p):
        return self.OB.level(self.d, q, p)

    def base(self, q, p):
        return EMPTY

    def hface(self, q, p, i, x):
        return self.OB.hface(self.d, q, p, i, x)

    def hdegen(self, q, p, i, x):
        return self.OB.hdegen(self.d, q, p, i, x)

    def vface(self, q, p, i, x):
        return self.OB.vface(self.d, q, p, i, x)

    def vdegen(self, q, p, i, x):
        return self.OB.vdegen(self.d, q, p, i, x)

    def act(self, g, q, p, x):
        return self.OB.act(g, self.d, q, p, x)


def bar(ground, X, Q, variant="smash"):
    """B(E, E, X) for E the monad of ground -> X.cat; Sigma over F uses forests."""
    if ground.tag == "Sigma" and X.cat.tag == "F" and variant == "smash" and hasattr(X, "labels"):
        return SigmaBar(X, X.cat.N, Q)
    return ObjectBar(ground, X, Q, variant=variant)


def reduced_bar(Y, Q, actions=None):
    """The reduced product construction B~(xF^{N_G}, xF^{N_G}, Y)."""
    ground = IndexCategory("N_G", Y.cat.N, group=Y.cat.group, actions=Y.cat.actions)
    return ObjectBar(ground, Y, Q, variant="times", name="B~")


def bar_targets_rows(B, degrees=None):
    """All rows (target, internal degree) of a bar object as SSets."""
    degrees = range(B.pmax + 1) if degrees is None else degrees
    for t in B.targets:
        for p in degrees:
            yield t, p, B.row(t, p)


def check_reedy(B, degrees=None):
    """True iff every bar-direction degeneracy is injective on every level."""
    degrees = range(B.pmax + 1) if degrees is None else degrees
    for t in B.targets:
        for p in degrees:
            for q in range(B.qmax):
                L = B.level(t, q, p)
                for i in range(q + 1):
                    img = {B.hdegen(t, q, p, i, z) for z in L}
                    if len(img) != len(L):
                        return False
    return True


class CorruptedBar:
    """Wraps a bar object and breaks one degeneracy (negative control)."""

    def __init__(self, B, target, q, p):
        self.B = B
        self.bad = (target, q, p)
        for name in ("targets", "qmax", "pmax", "level", "hface", "vface", "vdegen", "act", "base", "row"):
            setattr(self, name, getattr(B, name))

    def hdegen(self, t, q, p, i, z):
        if (t, q, p) == self.bad and i == 0:
            return self.B.base(t, q + 1, p)
        return self.B.hdegen(t, q, p, i, z)


# ---------------------------------------------------------------------------
# eps / eta and the extra-degeneracy homotopy

def constant_sset(points, base, Q, group=None, act=None):
    return discrete(points, Q, base, group=group, act=act)


def extra_degeneracy_homotopy(row, extra, side="left"):
    """Homotopy data h_j from an extra degeneracy of a simplicial set.

    side='left': extra(q, x) = s_{-1} with d_0 s_{-1} = id; h_j = s_{-1}^{j+1} d_0^j
    runs from id to the constant map.  side='right': extra = s_{q+1} with
    d_{q+1} s_{q+1} = id; indices are reversed and the homotopy runs from the
    constant map to id.
    """
    if side == "left":
        def h(q, j, x):
            y = x
            for k in range(j):
                y = row.face(q - k, 0, y)
            dq = q - j
            for k in range(j + 1):
                y = extra(dq + k, y)
            return y
        return h

    def h(q, j, x):
        jj = q - j
        y = x
        for k in range(jj):
            y = row.face(q - k, q - k, y)
        dq = q - jj
        for k in range(jj + 1):
            y = extra(dq + k, y)
        return y
    return h


def eps_eta_homotopy(X, N, Q, degrees=None):
    """For B(F^Sigma, F^Sigma, X): eps, eta and the homotopy id ~ eta.eps per
    target n and internal degree p.  Returns (SB, results) where results maps
    (n, p) to a dict of checks."""
    SB = SigmaBar(X, N, Q)
    degrees = range(X.dim + 1) if degrees is None else degrees
    results = {}
    for n in range(1, N + 1):
        for p in degrees:
            row = SB.row(n, p)
            Xn = X.elements(n, p)
            Xconst = constant_sset(Xn, X.base(n, p), Q, group=X.cat.group,
                                   act=lambda g, x, n=n, p=p: X.gact(g, n, p, x))
            eps = SimplicialMap(row, Xconst, lambda q, z, n=n, p=p: SB.eps(n, p, z), name="eps")
            eta = SimplicialMap(Xconst, row, lambda q, x, n=n, p=p: SB.eta(n, p, x, q), name="eta")
            ext = lambda q, z, n=n, p=p: SB.extra(n, q, p, z)
            h = extra_degeneracy_homotopy(row, ext, "left")
            const = lambda q, z, n=n, p=p: SB.eta(n, p, SB.eps(n, p, z), q)
            H = SimplicialHomotopy(row, row, lambda q, z: z, const, h)
            results[(n, p)] = {
                "eps simplicial": not eps.check(),
                "eta simplicial": not eta.check(),
                "eps.eta = id": all(SB.eps(n, p, SB.eta(n, p, x)) == x for x in Xn),
                "homotopy": is_homotopy(H),
                "extra degeneracy d0 s-1 = id": all(row.face(q + 1, 0, SB.extra(n, q, p, z)) == z
                                                    for q in range(Q) for z in row.levels[q]),
            }
    return SB, results


# ---------------------------------------------------------------------------
# the machine

def direct_sum_action(V, W):
    G = V.group
    perms = tuple(V.perms[g] + tuple(V.n + x for x in W.perms[g]) for g in G.elements)
    return GSetAction(G, V.n + W.n, perms, name=f"{V.name or V.n}+{W.name or W.n}")


def sphere_name(V):
    return V.name or f"V{V.n}"


class MachineOutput:
    """Levels V -> diagonal of B(S^V ., E, X), with structure maps sigma_{V,W}."""

    def __init__(self, tag, X, spheres, N, Q, D):
        self.tag = tag
        self.X = X
        self.N = N
        self.Q = Q
        self.D = D
        self.spheres = list(spheres)
        self.bars = {}
        self.levels = {}
        for V in self.spheres:
            self._build(V)

    def _make_bar(self, V):
        S = sphere(V, self.D)
        X = self.X
        if self.tag == "S^Sigma":
            return ChainBar(S, X, self.N, self.Q, self.D, name=f"B(S^{V.n})")
        if self.tag == "S^N":
            return ChainBar(S, X, self.N, self.Q, self.D, symmetric=False, name=f"B(S^{V.n})")
        G = X.cat.group
        if self.tag == "S^Sigma_G":
            ground = IndexCategory("Sigma_G", self.N, group=G, actions=X.cat.actions)
            return ObjectBar(ground, X, self.Q, top=S).bisimplicial()
        if self.tag == "S^N_G":
            ground = IndexCategory("N_G", self.N, group=G, actions=X.cat.actions)
            return ObjectBar(ground, X, self.Q, top=S).bisimplicial()
        if self.tag == "S~^N_G":
            ground = IndexCategory("N_G", self.N, group=G, actions=X.cat.actions)
            return ObjectBar(ground, X, self.Q, top=S, variant="times").bisimplicial()
        raise ValueError(f"unknown machine tag {self.tag!r}")

    def _build(self, V):
        key = self._key(V)
        if key not in self.bars:
            B = self._make_bar(V)
            self.bars[key] = B
            self.levels[key] = diagonal(B, min(self.Q, self.D, B.pmax))
        return self.levels[key]

    @staticmethod
    def _key(V):
        return (V.n, V.perms)

    def level(self, V):
        return self._build(V)

    def bar(self, V):
        self._build(V)
        return self.bars[self._key(V)]

    def structure_map(self, V, W):
        """sigma_{V,W}: level(V) ^ S^W -> level(V+W); simplices of the smash as (1, z, w)."""
        VW = direct_sum_action(V, W)
        src_level = self.level(V)
        tgt_bar = self.bar(VW)
        src_bar = self.bar(V)
        SW = sphere(W, self.D)

        def fn(d, s):
            if s == BASE or s[0] == 0:
                return BASE_KEY if isinstance(tgt_bar, ChainBar) else EMPTY
            _, z, w = s
            return smash_top(src_bar, tgt_bar, d, z, lambda a: sphere_smash_label(a, w))

        from .simplicial import smash
        return SimplicialMap(smash(src_level, SW), self.level(VW), fn, name=f"sigma_{V.n},{W.n}")


def smash_top(src_bar, tgt_bar, d, z, f):
    """Apply f to every top label of a diagonal d-simplex and re-key in tgt_bar."""
    if isinstance(src_bar, ChainBar):
        if z == BASE_KEY:
            return BASE_KEY
        top, maps, bottom, ext = src_bar.raw(z)
        return tgt_bar.key(d, tuple(f(a) for a in top), maps, bottom, ext)
    if z == EMPTY:
        return EMPTY
    objs, top, homs, y = z
    OB = tgt_bar.OB
    return OB.cls(None, d, d, (objs, tuple(f(a) for a in top), homs, y))


def machine(tag, X, spheres, N, Q, D):
    return MachineOutput(tag, X, spheres, N, Q, D)


def check_structure_maps(M, V, W, W2):
    """Unit sigma_{V,0} = id and associativity of sigma on all simplices of
    level(V) ^ S^W ^ S^W2 (as triples)."""
    errs = []
    zero = trivial_action(V.group, 0)
    L = M.level(V)
    sig0 = M.structure_map(V, zero)
    for d in range(L.dim + 1):
        for z in L.levels[d]:
            if z == L.base(d):
                continue
            if sig0(d, (1, z, (1,))) != z:
                errs.append(f"sigma_(V,0) != id at {z!r}")
    s1 = M.structure_map(V, W)
    VW = direct_sum_action(V, W)
    s2 = M.structure_map(VW, W2)
    WW2 = direct_sum_action(W, W2)
    s3 = M.structure_map(V, WW2)
    SW, SW2 = sphere(W, M.D), sphere(W2, M.D)
    for d in range(L.dim + 1):
        for z in L.levels[d]:
            if z == L.base(d):
                continue
            for w in SW.levels[d]:
                if w == BASE:
                    continue
                for w2 in SW2.levels[d]:
                    if w2 == BASE:
                        continue
                    a = s1(d, (1, z, w))
                    lhs = s2(d, (1, a, w2)) if a != L.base(d) else a
                    rhs = s3(d, (1, z, sphere_smash_label(w, w2)))
                    if lhs != rhs:
                        errs.append(f"sigma not associative at {z!r}, {w}, {w2}")
    return errs


# ---------------------------------------------------------------------------
# comparison maps

def iso_r(X, G, N, Q, actions=None, degrees=None):
    """The canonical map r: B^{Sigma_G}(P X) -> P(B^Sigma X) for an F-labeling X.

    Left: ObjectBar over Sigma_G with algebra P X (a coequalizer).  Right: P of
    the F-diagrams B_q^Sigma X (forests), again a coequalizer.  r forgets the
    actions: a chain (psi_0, ..., psi_q, y) with y = [(m, chi, x)] goes to the
    class of (n, id_n, chain(psi_0, ..., psi_q, chi.x)).
    Returns a dict of check name -> list of counterexamples, and the objects.
    """
    FG = IndexCategory("F_G", N, group=G, actions=actions)
    SG = IndexCategory("Sigma_G", N, group=G, actions=FG.actions)
    PX = kan_extend(X, FG)
    left = ObjectBar(SG, PX, Q, name="B^SigmaG(PX)")
    SB = SigmaBar(X, N, Q)
    right = {q: kan_extend(SB.diagram(q), FG) for q in range(Q + 1)}
    F = X.cat

    def x_of(c, p, y):
        """P X(c) = X(|c|): [(m, chi, x)] -> chi.x."""
        if y == EMPTY:
            return X.base(FG.card(c), p)
        m, chi, x = y
        return X.act(BasedMap(len(chi), FG.card(c), chi), m, FG.card(c), p, x)

    def r(d, q, p, z):
        if z == EMPTY:
            return EMPTY
        objs, top, homs, y = z
        n = FG.card(d)
        chain = SB.bars[n].key(p, top, homs, x_of(objs[-1], p, y))
        return right[q].cls(d, p, n, identity_map(n).image, chain)

    def right_face(d, q, p, i, w):
        if w == EMPTY:
            return EMPTY
        c, chi, chain = w
        return right[q - 1].cls(d, p, c, chi, SB.hface(c, q, p, i, chain))

    def right_degen(d, q, p, i, w):
        if w == EMPTY:
            return EMPTY
        c, chi, chain = w
        return right[q + 1].cls(d, p, c, chi, SB.hdegen(c, q, p, i, chain))

    def right_eps(d, p, w):
        if w == EMPTY:
            return EMPTY
        c, chi, chain = w
        return PX.cls(d, p, c, chi, SB.eps(c, p, chain))

    checks = {"bijective": [], "equivariant": [], "faces": [], "degeneracies": [], "internal": [],
              "eps": [], "cardinalities": []}
    degrees = range(X.dim + 1) if degrees is None else degrees
    for d, p in itertools.product(FG.objects, degrees):
        if FG.card(d) == 0:
            continue
        for q in range(Q + 1):
            L = left.level(d, q, p)
            Rq = right[q].elements(d, p)
            img = [r(d, q, p, z) for z in L]
            checks["cardinalities"].append((d, q, p, len(L), len(Rq)))
            if len(set(img)) != len(img) or set(img) != set(Rq):
                checks["bijective"].append((d, q))
            for z, rz in zip(L, img):
                for g in G.elements:
                    if r(d, q, p, left.act(g, d, q, p, z)) != right[q].gact(g, d, p, rz):
                        checks["equivariant"].append((d, q, z, g))
                if q > 0:
                    for i in range(q + 1):
                        if r(d, q - 1, p, left.hface(d, q, p, i, z)) != right_face(d, q, p, i, rz):
                            checks["faces"].append((d, q, i, z))
                if q < Q:
                    for i in range(q + 1):
                        if r(d, q + 1, p, left.hdegen(d, q, p, i, z)) != right_degen(d, q, p, i, rz):
                            checks["degeneracies"].append((d, q, i, z))
                if left.eps(d, p, z) != right_eps(d, p, rz):
                    checks["eps"].append((d, q, z))
                if p > 0:
                    for i in range(p + 1):
                        if r(d, q, p - 1, left.vface(d, q, p, i, z)) != right[q].face(d, p, i, rz):
                            checks["internal"].append((d, q, p, i, z))
    sizes = checks.pop("cardinalities")
    return {"checks": checks, "sizes": sizes, "left": left, "right": right, "PX": PX, "SB": SB}


def map_q(Y, Q):
    """q: B^{N_G}(Y) -> B^{Sigma_G}(Y), the orbit projection."""
    cat = Y.cat
    NG = IndexCategory("N_G", cat.N, group=cat.group, actions=cat.actions)
    SG = IndexCategory("Sigma_G", cat.N, group=cat.group, actions=cat.actions)
    BN = ObjectBar(NG, Y, Q, name="B^N_G")
    BS = ObjectBar(SG, Y, Q, name="B^Sigma_G")

    def q_fn(d, q, p, z):
        return EMPTY if z == EMPTY else BS.cls(d, q, p, z)

    return BN, BS, q_fn


def map_p(Y, Q):
    """p: B~^{N_G, x}(Y) -> B^{N_G, smash}(Y), collapsing smash-basepoint chains."""
    cat = Y.cat
    NG = IndexCategory("N_G", cat.N, group=cat.group, actions=cat.actions)
    Bt = ObjectBar(NG, Y, Q, variant="times", name="B~^N_G")
    Bs = ObjectBar(NG, Y, Q, name="B^N_G")

    def p_fn(d, q, p, z):
        return EMPTY if z == EMPTY else Bs.cls(d, q, p, z)

    return Bt, Bs, p_fn


def check_comparison(src, tgt, fn, degrees=(0,)):
    """eps o f = eps, levelwise surjectivity, and compatibility with faces,
    degeneracies and G for a map of bar objects given on simplices."""
    out = {"eps": [], "surjective": [], "faces": [], "degeneracies": [], "equivariant": []}
    G = src.group
    for d in src.targets:
        if src.ambient.card(d) == 0:
            continue
        for p in degrees:
            for q in range(src.qmax + 1):
                L = src.level(d, q, p)
                img = set()
                for z in L:
                    fz = fn(d, q, p, z)
                    img.add(fz)
                    if tgt.eps(d, p, fz) != src.eps(d, p, z):
                        out["eps"].append((d, q, z))
                    if q > 0:
                        for i in range(q + 1):
                            if fn(d, q - 1, p, src.hface(d, q, p, i, z)) != tgt.hface(d, q, p, i, fz):
                                out["faces"].append((d, q, i, z))
                    if q < src.qmax:
                        for i in range(q + 1):
                            if fn(d, q + 1, p, src.hdegen(d, q, p, i, z)) != tgt.hdegen(d, q, p, i, fz):
                                out["degeneracies"].append((d, q, i, z))
                    for g in G.elements:
                        if fn(d, q, p, src.act(g, d, q, p, z)) != tgt.act(g, d, q, p, fz):
                            out["equivariant"].append((d, q, z, g))
                if img != set(tgt.level(d, q, p)):
                    out["surjective"].append((d, q))
    return out


def demo_N_failure(G, N=None):
    """Prolong I|N along N -> N_G: at the regular G-set the value is a point,
    at the trivial action on |G| points it is not."""
    from .indexdiagrams import unit_diagram
    if G.is_trivial():
        raise ValueError("the N-failure needs a nontrivial group")
    N = G.order if N is None else N
    I = unit_diagram(N, 0, group=G)
    Ncat = IndexCategory("N", N, group=G)
    NG = IndexCategory("N_G", N, group=G)
    P = kan_extend(restrict(I, Ncat), NG)
    n = G.order
    reg = next(c for c in NG.objects if NG.card(c) == n and not NG.action(c).is_trivial())
    triv = NG.trivial_object(n)
    at_reg = P.elements(reg, 0)
    at_triv = P.elements(triv, 0)
    lines = [
        f"P along N -> N_G of I|N, G = {G.name}:",
        f"  at ({n}, regular): {len(at_reg)} simplex (the basepoint)" if len(at_reg) == 1
        else f"  at ({n}, regular): {len(at_reg)} simplices",
        f"  at ({n}, trivial): {len(at_triv)} simplices",
        "  N_G has only identity morphisms, so no summand reaches a nontrivial G-set.",
    ]
    return {"regular_is_point": len(at_reg) == 1, "trivial_is_point": len(at_triv) == 1,
            "sizes": {"regular": len(at_reg), "trivial": len(at_triv)}, "report": "\n".join(lines)}


def tensor_with_space(X, K, V, N, Q, D):
    """S(X ^ K_+)(V) ~= S(X)(V) ^ K_+ on the diagonal, as a verified iso."""
    S = sphere(V, D)
    left_bar = ChainBar(S, X, N, Q, D, extra=K)
    right_bar = ChainBar(S, X, N, Q, D)
    top = min(Q, D, left_bar.pmax)
    left = diagonal(left_bar, top)
    right = half_smash(diagonal(right_bar, top), K)

    def fn(d, z):
        if z == BASE_KEY:
            return BASE
        q, roots, deads, ext = z
        return (1, (q, roots, deads, None), ext)

    f = SimplicialMap(left, right, fn, name="tensor")
    return {"bijective": f.is_bijective(), "map errors": f.check(), "left": left, "right": right, "map": f}
