"""Truncated index categories, diagrams of based G-simplicial sets, Segal maps,
specialness, and prolongation (left Kan extension) / restriction.

Objects of the plain categories F, Pi, Sigma, N are ints 0..N.  Objects of the
G-categories are pairs (n, k) where k indexes cat.actions[n], a list of
GSetActions on n points.  A morphism c -> d is always a BasedMap between the
underlying sets; in the G-categories G acts on it by conjugation.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .fingroups import (BasedMap, compose_based, conjugation_action, enumerate_homs,
                        graph_subgroups, identity_map, normalize_tag, perm_inverse,
                        regular_action, trivial_action, trivial_group)
from .simplicial import SSet, check_simplicial

EMPTY = ()  # basepoint of generic (coequalizer) diagram values


class IndexCategory:
    def __init__(self, tag, N, group=None, actions=None):
        self.tag = normalize_tag(tag)
        self.is_G = self.tag.endswith("_G")
        self.base_tag = self.tag.replace("_G", "")
        self.N = N
        self.group = group if group is not None else trivial_group()
        if not self.is_G:
            self.actions = None
            self.objects = list(range(N + 1))
        else:
            G = self.group
            if actions is None:
                actions = {n: [trivial_action(G, n)] for n in range(N + 1)}
                if not G.is_trivial() and G.order <= N:
                    actions[G.order].append(regular_action(G))
            self.actions = {n: list(actions.get(n, [trivial_action(G, n)])) for n in range(N + 1)}
            if not self.actions[0]:
                self.actions[0] = [trivial_action(G, 0)]
            self.objects = [(n, k) for n in range(N + 1) for k in range(len(self.actions[n]))]
        self._hom_cache = {}

    def card(self, c):
        return c[0] if self.is_G else c

    def action(self, c):
        if self.is_G:
            return self.actions[c[0]][c[1]]
        return trivial_action(self.group, c)

    def trivial_object(self, n):
        """The object n with trivial action (its image under F -> F_G)."""
        if not self.is_G:
            return n
        for k, a in enumerate(self.actions[n]):
            if a.is_trivial():
                return (n, k)
        raise ValueError(f"no trivial action on {n} points among the chosen objects")

    def nonzero_objects(self):
        return [c for c in self.objects if self.card(c) > 0]

    def homs(self, c, d):
        key = (c, d)
        if key not in self._hom_cache:
            m, n = self.card(c), self.card(d)
            if self.base_tag == "N":
                out = [identity_map(n)] if c == d else []
            else:
                out = enumerate_homs(self.base_tag, m, n)
            self._hom_cache[key] = out
        return self._hom_cache[key]

    def conj(self, g, phi, c, d):
        if g == 0 or not self.is_G:
            return phi
        return conjugation_action(g, phi, self.action(c), self.action(d))

    def has_zero(self):
        return self.base_tag in ("F", "Pi")

    def contains(self, other, allow_smaller=False):
        """other is a subcategory of self (objects mapped via trivial_object).

        allow_smaller admits a smaller truncation of other (full subcategory)."""
        order = {"N": 0, "Sigma": 1, "Pi": 2, "F": 3}
        sizes = other.N <= self.N if allow_smaller else other.N == self.N
        return (order[other.base_tag] <= order[self.base_tag] and sizes
                and other.group == self.group and (self.is_G or not other.is_G))

    def embed(self, other, c):
        """Image in self of an object c of the subcategory other."""
        if self.is_G and not other.is_G:
            return self.trivial_object(c)
        return c

    def describe(self):
        lines = [f"{self.tag} (N={self.N}, G={self.group.name})"]
        for c in self.objects:
            a = self.action(c)
            lines.append(f"  object {c}: {self.card(c)} points" + (f", action {a.name or a.perms}" if self.is_G else ""))
        return lines

    def __repr__(self):
        return f"IndexCategory({self.tag}, N={self.N}, G={self.group.name})"


# ---------------------------------------------------------------------------
# diagrams

class Diagram:
    """An (enriched) functor from a truncated index category to based G-simplicial sets."""

    cat = None
    dim = 0
    name = "X"

    def elements(self, c, p):
        raise NotImplementedError

    def base(self, c, p):
        raise NotImplementedError

    def act(self, phi, c, d, p, x):
        raise NotImplementedError

    def gact(self, g, c, p, x):
        raise NotImplementedError

    def face(self, c, p, i, x):
        raise NotImplementedError

    def degen(self, c, p, i, x):
        raise NotImplementedError

    def value(self, c):
        return SSet([self.elements(c, p) for p in range(self.dim + 1)],
                    lambda p, i, x: self.face(c, p, i, x),
                    lambda p, i, x: self.degen(c, p, i, x),
                    act=lambda g, p, x: self.gact(g, c, p, x), group=self.cat.group,
                    basepoints=[self.base(c, p) for p in range(self.dim + 1)], name=f"{self.name}({c})")

    def is_discrete(self):
        return self.dim == 0 or all(
            self.elements(c, p) == self.elements(c, 0) and all(
                self.face(c, p, i, x) == x for x in self.elements(c, p) for i in range(p + 1))
            for c in self.cat.objects for p in range(1, self.dim + 1))


class LabelSpace:
    """Labels for the leaves of a labeling diagram: a based G-simplicial set and
    either a commutative addition (unbounded capacity) or none (capacity one)."""

    def __init__(self, sset, add=None, name="L"):
        self.sset = sset
        self.add = add
        self.name = name

    @property
    def capacity(self):
        return None if self.add is not None else 1

    def zero(self, p):
        return self.sset.base(p)

    def plus(self, p, a, b):
        z = self.sset.base(p)
        if a == z:
            return b
        if b == z:
            return a
        if self.add is None:
            raise ValueError("capacity-one labels cannot be added")
        return self.add(p, a, b)


class LabelDiagram(Diagram):
    """X(n) = n-tuples of labels (at most `capacity` non-zero); morphisms act by
    pushforward-sum.  Over a G-category G acts on (n, alpha) by
    g.(x_i) = (g.x_{alpha(g)^-1 i}).

    Covers the unit I, free diagrams F_1 A, R A and R_G A.
    """

    def __init__(self, cat, labels, dim, name="X"):
        self.cat = cat
        self.labels = labels
        self.dim = dim
        self.name = name
        self._cache = {}

    @property
    def capacity(self):
        return self.labels.capacity

    def elements(self, c, p):
        key = (c, p)
        if key not in self._cache:
            n = self.cat.card(c)
            L = self.labels.sset.levels[p]
            z = self.labels.zero(p)
            if self.capacity == 1:
                out = [(z,) * n]
                for i in range(n):
                    for a in L:
                        if a != z:
                            out.append((z,) * i + (a,) + (z,) * (n - i - 1))
            else:
                out = list(itertools.product(L, repeat=n))
            self._cache[key] = sorted(out)
        return self._cache[key]

    def base(self, c, p):
        return (self.labels.zero(p),) * self.cat.card(c)

    def act(self, phi, c, d, p, x):
        return pushforward(self.labels, p, phi, x)

    def gact(self, g, c, p, x):
        if g == 0:
            return x
        L = self.labels.sset
        y = tuple(L.act(g, p, a) for a in x)
        if self.cat.is_G:
            alpha = self.cat.action(c)
            out = [None] * len(y)
            for i, a in enumerate(y):
                out[alpha(g, i + 1) - 1] = a
            y = tuple(out)
        return y

    def face(self, c, p, i, x):
        L = self.labels.sset
        return tuple(L.face(p, i, a) for a in x)

    def degen(self, c, p, i, x):
        L = self.labels.sset
        return tuple(L.degen(p, i, a) for a in x)


def pushforward(labels, p, phi, x):
    z = labels.zero(p)
    out = [z] * phi.n
    for i, a in enumerate(x):
        j = phi.image[i]
        if j:
            out[j - 1] = labels.plus(p, out[j - 1], a)
    return tuple(out)


def free_diagram(A, N, cat_tag="F", name=None):
    """F_1 A = the n-fold wedge of A, as a capacity-one labeling."""
    cat = IndexCategory(cat_tag, N, group=A.group)
    return LabelDiagram(cat, LabelSpace(A, None, name=A.name), A.dim, name=name or f"F1({A.name})")


def unit_diagram(N, D=0, group=None, cat_tag="F"):
    """The unit I = F(1, -) = F_1 S^0."""
    from .simplicial import sphere
    S0 = sphere(trivial_action(group if group is not None else trivial_group(), 0), D)
    S0.name = "S0"
    return free_diagram(S0, N, cat_tag, name="I")


def point_diagram(N, D=0, group=None, cat_tag="F"):
    from .simplicial import point
    return free_diagram(point(D, group), N, cat_tag, name="*")


def R_diagram(A, N, D=0, cat_tag="F"):
    """R A: (R A)(n) = A^n for a finite abelian G-group A (see monoidal.AbGroup)."""
    cat = IndexCategory(cat_tag, N, group=A.group)
    return LabelDiagram(cat, A.label_space(D), D, name=f"R({A.name})")


def RG_diagram(A, N, D=0, actions=None):
    """R_G A over F_G: (R_G A)(n, alpha) = A^alpha."""
    cat = IndexCategory("F_G", N, group=A.group, actions=actions)
    return LabelDiagram(cat, A.label_space(D), D, name=f"R_G({A.name})")


class Restriction(Diagram):
    """Restriction of a diagram over D to a subcategory C."""

    def __init__(self, Y, C):
        if not Y.cat.contains(C, allow_smaller=True):
            raise ValueError(f"{C} is not a subcategory of {Y.cat}")
        self.Y = Y
        self.cat = C
        self.dim = Y.dim
        self.name = f"U{Y.name}"

    def _e(self, c):
        return self.Y.cat.embed(self.cat, c)

    def elements(self, c, p):
        return self.Y.elements(self._e(c), p)

    def base(self, c, p):
        return self.Y.base(self._e(c), p)

    def act(self, phi, c, d, p, x):
        return self.Y.act(phi, self._e(c), self._e(d), p, x)

    def gact(self, g, c, p, x):
        return self.Y.gact(g, self._e(c), p, x)

    def face(self, c, p, i, x):
        return self.Y.face(self._e(c), p, i, x)

    def degen(self, c, p, i, x):
        return self.Y.degen(self._e(c), p, i, x)


def restrict(Y, C):
    return Restriction(Y, C)


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra  # the root is always the minimal element

    def classes(self):
        return {x: self.find(x) for x in self.parent}


class KanExtension(Diagram):
    """Prolongation P X of X over C along C -> D, by a coequalizer.

    (P X)(d) is the quotient of the wedge over c of D(c, d) ^ X(c) by
    (psi o f, x) ~ (psi, f.x) for f in C(c, c').  Elements are the minimal
    raw triples (c, psi_image, x) of their class; the basepoint is EMPTY.
    With smash=False nothing is collapsed (the unbased coproduct version).
    """

    def __init__(self, X, D, smash=True):
        C = X.cat
        if not D.contains(C, allow_smaller=True):
            raise ValueError(f"cannot extend along {C} -> {D}")
        self.smash = smash
        self.X = X
        self.C = C
        self.cat = D
        self.dim = X.dim
        self.name = f"P{X.name}"
        self._rep = {}
        self._elems = {}

    def _is_base_raw(self, c, psi, x, p):
        if not self.smash:
            return False
        if x == self.X.base(c, p):
            return True
        return self.cat.has_zero() and all(v == 0 for v in psi)

    def _build(self, d, p):
        key = (d, p)
        if key in self._rep:
            return self._rep[key]
        C, D, X = self.C, self.cat, self.X
        uf = UnionFind()
        if self.smash:
            uf.add(EMPTY)

        def node(c, psi, x):
            if self._is_base_raw(c, psi.image, x, p):
                return EMPTY
            t = (c, psi.image, x)
            uf.add(t)
            return t

        for c in C.objects:
            dc = D.embed(C, c)
            for psi in D.homs(dc, d):
                for x in X.elements(c, p):
                    node(c, psi, x)
        for c in C.objects:
            for c2 in C.objects:
                for f in C.homs(c, c2):
                    if f == identity_map(C.card(c)) and c == c2:
                        continue
                    for psi in D.homs(D.embed(C, c2), d):
                        pf = compose_based(psi, f)
                        for x in X.elements(c, p):
                            a = node(c, pf, x)
                            b = node(c2, psi, X.act(f, c, c2, p, x))
                            uf.union(a, b)
        rep = uf.classes()
        self._rep[key] = rep
        self._elems[key] = sorted(set(rep.values()))
        return rep

    def cls(self, d, p, c, psi_image, x):
        """Class of the raw element (c, psi, x) of (P X)(d)_p."""
        if self._is_base_raw(c, psi_image, x, p):
            return EMPTY
        return self._build(d, p)[(c, tuple(psi_image), x)]

    def elements(self, d, p):
        self._build(d, p)
        return self._elems[(d, p)]

    def base(self, d, p):
        return EMPTY if self.smash else None

    def act(self, chi, d, d2, p, y):
        if y == EMPTY:
            return EMPTY
        c, psi, x = y
        return self.cls(d2, p, c, compose_based(chi, BasedMap(len(psi), chi.m, psi)).image, x)

    def gact(self, g, d, p, y):
        if y == EMPTY or g == 0:
            return y
        c, psi, x = y
        D = self.cat
        gpsi = D.conj(g, BasedMap(len(psi), D.card(d), psi), D.embed(self.C, c), d)
        return self.cls(d, p, c, gpsi.image, self.X.gact(g, c, p, x))

    def face(self, d, p, i, y):
        if y == EMPTY:
            return EMPTY
        c, psi, x = y
        return self.cls(d, p - 1, c, psi, self.X.face(c, p, i, x))

    def degen(self, d, p, i, y):
        if y == EMPTY:
            return EMPTY
        c, psi, x = y
        return self.cls(d, p + 1, c, psi, self.X.degen(c, p, i, x))


def kan_extend(X, D):
    if D.N != X.cat.N:
        raise ValueError("incompatible truncations")
    return KanExtension(X, D)


class DiagramMap:
    """A map of diagrams given elementwise: fn(c, p, x)."""

    def __init__(self, source, target, fn, name="f"):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, c, p, x):
        return self.fn(c, p, x)

    def check(self, objects=None, degrees=None):
        """Violations of naturality, equivariance, simplicial compatibility and basedness."""
        X, Y = self.source, self.target
        cat = X.cat
        objects = cat.objects if objects is None else objects
        degrees = range(min(X.dim, Y.dim) + 1) if degrees is None else degrees
        errs = []
        for p in degrees:
            for c in objects:
                if self.fn(c, p, X.base(c, p)) != Y.base(c, p):
                    errs.append(f"{self.name} not based at {c}")
                ys = set(Y.elements(c, p))
                for x in X.elements(c, p):
                    fx = self.fn(c, p, x)
                    if fx not in ys:
                        errs.append(f"{self.name}({x!r}) not an element of the target at {c}")
                        continue
                    for g in cat.group.elements:
                        if self.fn(c, p, X.gact(g, c, p, x)) != Y.gact(g, c, p, fx):
                            errs.append(f"{self.name} not equivariant at {c}, {x!r}")
                    if p > 0:
                        for i in range(p + 1):
                            if self.fn(c, p - 1, X.face(c, p, i, x)) != Y.face(c, p, i, fx):
                                errs.append(f"{self.name} does not commute with d_{i} at {x!r}")
                    if p < min(X.dim, Y.dim):
                        for i in range(p + 1):
                            if self.fn(c, p + 1, X.degen(c, p, i, x)) != Y.degen(c, p, i, fx):
                                errs.append(f"{self.name} does not commute with s_{i} at {x!r}")
                    for d in objects:
                        for phi in cat.homs(c, d):
                            if self.fn(d, p, X.act(phi, c, d, p, x)) != Y.act(phi, c, d, p, fx):
                                errs.append(f"{self.name} not natural for {phi} at {x!r}")
                    if len(errs) > 20:
                        return errs
        return errs

    def is_bijective(self, objects=None, degrees=None):
        X, Y = self.source, self.target
        objects = X.cat.objects if objects is None else objects
        degrees = range(min(X.dim, Y.dim) + 1) if degrees is None else degrees
        for p in degrees:
            for c in objects:
                img = [self.fn(c, p, x) for x in X.elements(c, p)]
                if len(set(img)) != len(img) or set(img) != set(Y.elements(c, p)):
                    return False
        return True

    def is_isomorphism(self, objects=None, degrees=None):
        return self.is_bijective(objects, degrees) and not self.check(objects, degrees)


def compose_maps(f, g):
    return DiagramMap(g.source, f.target, lambda c, p, x: f.fn(c, p, g.fn(c, p, x)), name=f"{f.name}.{g.name}")


def check_diagram(X, degrees=None):
    """Functoriality, equivariance of evaluation, reducedness and simplicial identities."""
    cat = X.cat
    G = cat.group
    errs = []
    degrees = range(X.dim + 1) if degrees is None else degrees
    for c in cat.objects:
        if cat.card(c) == 0 and any(len(X.elements(c, p)) != 1 for p in degrees):
            errs.append(f"{X.name} is not reduced")
        errs += [f"{c}: {e}" for e in check_simplicial(X.value(c))]
    for p in degrees:
        for c in cat.objects:
            xs = X.elements(c, p)
            for d in cat.objects:
                ys = set(X.elements(d, p))
                for phi in cat.homs(c, d):
                    for x in xs:
                        y = X.act(phi, c, d, p, x)
                        if y not in ys:
                            errs.append(f"{phi}.{x!r} not in {X.name}({d})")
                            continue
                        for g in G.elements:
                            if X.gact(g, d, p, y) != X.act(cat.conj(g, phi, c, d), c, d, p, X.gact(g, c, p, x)):
                                errs.append(f"evaluation not equivariant: {phi}, {x!r}, g={g}")
                        if p > 0:
                            for i in range(p + 1):
                                if X.face(d, p, i, y) != X.act(phi, c, d, p - 1, X.face(c, p, i, x)):
                                    errs.append(f"{phi} does not commute with d_{i}")
                    for e in cat.objects:
                        for psi in cat.homs(d, e):
                            pp = compose_based(psi, phi)
                            for x in xs:
                                if X.act(pp, c, e, p, x) != X.act(psi, d, e, p, X.act(phi, c, d, p, x)):
                                    errs.append(f"composition fails for {psi} o {phi} at {x!r}")
                                    break
                if c == d:
                    ident = identity_map(cat.card(c))
                    for x in xs:
                        if X.act(ident, c, c, p, x) != x:
                            errs.append(f"identity acts nontrivially at {c}")
            if len(errs) > 20:
                return errs
    return errs


def unit_map(X, D):
    """eta: X -> U P X, x -> [(c, id, x)]."""
    P = kan_extend(X, D) if not isinstance(X, KanExtension) else X
    return unit_map_into(X, P)


def unit_map_into(X, P):
    U = restrict(P, X.cat)
    C, D = X.cat, P.cat
    return DiagramMap(X, U, lambda c, p, x: P.cls(D.embed(C, c), p, c, identity_map(C.card(c)).image, x),
                      name="eta")


def counit_map(Y, C):
    """epsilon: P U Y -> Y, [(c, psi, y)] -> psi.y."""
    U = restrict(Y, C)
    P = kan_extend(U, Y.cat)
    D = Y.cat

    def fn(d, p, z):
        if z == EMPTY:
            return Y.base(d, p)
        c, psi, y = z
        return Y.act(BasedMap(len(psi), D.card(d), psi), D.embed(C, c), d, p, y)

    return DiagramMap(P, Y, fn, name="counit")


def prolonged_unit_map(X, P, PUP):
    """P(eta_X): P X -> P U P X, [(c, psi, x)] -> [(c, psi, eta(x))]."""
    C = X.cat
    eta = unit_map_into(X, P)

    def fn(d, p, z):
        if z == EMPTY:
            return EMPTY
        c, psi, x = z
        return PUP.cls(d, p, c, psi, eta(c, p, x))

    return DiagramMap(P, PUP, fn, name="P(eta)")


def triangle_identities(X, D):
    """Both triangle identities of (kan_extend, restrict) at X and at Y = P X.

    Returns a dict name -> list of violations.
    """
    C = X.cat
    P = kan_extend(X, D)
    U = restrict(P, C)
    PUP = kan_extend(U, D)
    Peta = prolonged_unit_map(X, P, PUP)

    def eps_fn(d, p, z):
        if z == EMPTY:
            return EMPTY
        c, psi, y = z
        return P.act(BasedMap(len(psi), D.card(d), psi), D.embed(C, c), d, p, y)

    eps = DiagramMap(PUP, P, eps_fn, name="eps_P")
    out = {}
    errs = []
    for d in D.objects:
        for p in range(X.dim + 1):
            for z in P.elements(d, p):
                if eps_fn(d, p, Peta(d, p, z)) != z:
                    errs.append(f"eps_P o P(eta) != id at {d}, {z!r}")
    out["eps_P o P(eta) = id"] = errs
    # second identity at Y = P X: U(eps_Y) o eta_{U Y} = id_{U Y}
    eta_U = unit_map_into(U, PUP)
    errs = []
    for c in C.objects:
        for p in range(X.dim + 1):
            for y in U.elements(c, p):
                if eps_fn(D.embed(C, c), p, eta_U(c, p, y)) != y:
                    errs.append(f"U(eps) o eta_U != id at {c}, {y!r}")
    out["U(eps) o eta_U = id"] = errs
    out["eps is a map of diagrams"] = eps.check()
    return out


def prolongation_is_equivalence(X, D, Y=None):
    """Unit X -> U P X (and counit P U Y -> Y if Y is given) are isomorphisms."""
    out = {"unit": unit_map(X, D).is_isomorphism()}
    if Y is not None:
        out["counit"] = counit_map(Y, X.cat).is_isomorphism()
    return out


# ---------------------------------------------------------------------------
# Segal maps and specialness

def segal_map(X, n, c=None):
    """delta: X(n) -> X(1)^n with coordinates the actions of the projections delta_i.

    Returns a dict x -> tuple of coordinates (per degree p: segal_map(...)[p]).
    """
    cat = X.cat
    if n > cat.N:
        raise ValueError("n exceeds the truncation")
    c = c if c is not None else cat.trivial_object(n) if cat.is_G else n
    one = cat.trivial_object(1) if cat.is_G else 1
    projections = [BasedMap(n, 1, tuple(1 if j == i else 0 for j in range(1, n + 1))) for i in range(1, n + 1)]
    out = []
    for p in range(X.dim + 1):
        out.append({x: tuple(X.act(d, c, one, p, x) for d in projections) for x in X.elements(c, p)})
    return out


def is_special_discrete(X, G=None):
    """For each n <= N and each graph subgroup Lambda of G x Sigma_n, the Segal
    map restricted to Lambda-fixed points is a bijection.

    Lambda = {(h, rho(h))} acts on X(n) by x -> sigma.(h.x) and on X(1)^n by
    permuting coordinates by rho(h) after acting by h.
    """
    cat = X.cat
    G = cat.group if G is None else G
    if not X.is_discrete():
        raise ValueError("specialness is only decided for discrete diagrams")
    one = cat.trivial_object(1) if cat.is_G else 1
    X1 = X.elements(one, 0)
    for n in range(1, cat.N + 1):
        c = cat.trivial_object(n) if cat.is_G else n
        delta = segal_map(X, n, c)[0]
        for Lam in graph_subgroups(G, n):
            def on_source(x, h, sigma):
                return X.act(BasedMap(n, n, sigma), c, c, 0, X.gact(h, c, 0, x))

            def on_target(t, h, sigma):
                out = [None] * n
                for i in range(n):
                    out[sigma[i] - 1] = X.gact(h, one, 0, t[i])
                return tuple(out)

            src = [x for x in X.elements(c, 0) if all(on_source(x, h, s) == x for h, s in Lam.elements)]
            tgt = [t for t in itertools.product(X1, repeat=n)
                   if all(on_target(t, h, s) == t for h, s in Lam.elements)]
            img = [delta[x] for x in src]
            if len(set(img)) != len(img) or set(img) != set(tgt):
                return False
    return True
