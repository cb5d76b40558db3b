"""Finite based G-simplicial sets stored up to a degree bound.

Simplices are hashable, mutually comparable values; each level is a sorted
tuple.  Structure maps are callables so that large objects (bar
constructions) can compute them on demand.

Encodings used by the builtin constructions:
  circle / spheres  base (0,), otherwise (1, c_1, ..., c_k) with c_i in 1..q,
                    where c is the number of zeros of the map [q] -> [1]
  smash             base (0,), otherwise (1, x, y)
  half smash        base (0,), otherwise (1, x, a)
"""
from __future__ import annotations

import itertools

from .fingroups import trivial_group, trivial_action

BASE = (0,)


class SSet:
    """A finite (based) G-simplicial set stored in degrees 0..dim."""

    def __init__(self, levels, face, degen, act=None, group=None, basepoints=None, name=""):
        self.levels = [tuple(sorted(L)) for L in levels]
        self.dim = len(self.levels) - 1
        self._face = face
        self._degen = degen
        self.group = group if group is not None else trivial_group()
        self._act = act
        self.basepoints = basepoints
        self.name = name
        self._index = [None] * (self.dim + 1)

    # structure ---------------------------------------------------------
    def face(self, q, i, x):
        return self._face(q, i, x)

    def degen(self, q, i, x):
        return self._degen(q, i, x)

    def act(self, g, q, x):
        if self._act is None or g == 0:
            return x
        return self._act(g, q, x)

    @property
    def based(self):
        return self.basepoints is not None

    def base(self, q):
        return self.basepoints[q] if self.basepoints is not None else None

    def level(self, q):
        return self.levels[q]

    def index(self, q):
        if self._index[q] is None:
            self._index[q] = {x: k for k, x in enumerate(self.levels[q])}
        return self._index[q]

    def contains(self, q, x):
        return x in self.index(q)

    def sizes(self):
        return [len(L) for L in self.levels]

    def is_degenerate(self, q, x):
        return any(self.degen(q - 1, i, self.face(q, i, x)) == x for i in range(q))

    def nondegenerate(self, q, include_base=False):
        out = []
        b = self.base(q)
        for x in self.levels[q]:
            if not include_base and x == b:
                continue
            if q == 0 or not self.is_degenerate(q, x):
                out.append(x)
        return out

    def is_point(self):
        return self.based and all(len(L) == 1 for L in self.levels)

    def __repr__(self):
        return f"SSet({self.name or '?'}, sizes={self.sizes()})"


def check_simplicial(X, max_per_level=None):
    """Return a list of violated identities (empty when X is a G-simplicial set)."""
    errs = []
    G = X.group
    for q in range(X.dim + 1):
        idx = X.index(q)
        if X.based and X.base(q) not in idx:
            errs.append(f"degree {q}: basepoint missing")
        xs = X.levels[q] if max_per_level is None else X.levels[q][:max_per_level]
        for x in xs:
            if q > 0:
                faces = [X.face(q, i, x) for i in range(q + 1)]
                for i, y in enumerate(faces):
                    if not X.contains(q - 1, y):
                        errs.append(f"d_{i} of {x!r} in degree {q} not in level {q - 1}")
                        return errs
                if q > 1:
                    for j in range(q + 1):
                        for i in range(j):
                            if X.face(q - 1, i, faces[j]) != X.face(q - 1, j - 1, faces[i]):
                                errs.append(f"d_{i}d_{j} != d_{j - 1}d_{i} on {x!r} (degree {q})")
            if q < X.dim:
                degs = [X.degen(q, j, x) for j in range(q + 1)]
                for j, y in enumerate(degs):
                    if not X.contains(q + 1, y):
                        errs.append(f"s_{j} of {x!r} in degree {q} not in level {q + 1}")
                        return errs
                    for i in range(q + 2):
                        lhs = X.face(q + 1, i, y)
                        if i < j:
                            rhs = X.degen(q - 1, j - 1, X.face(q, i, x))
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = X.degen(q - 1, j, X.face(q, i - 1, x))
                        if lhs != rhs:
                            errs.append(f"d_{i}s_{j} identity fails on {x!r} (degree {q})")
                    if q + 1 < X.dim:
                        for i in range(j + 1):
                            if X.degen(q + 1, i, y) != X.degen(q + 1, j + 1, X.degen(q, i, x)):
                                errs.append(f"s_{i}s_{j} != s_{j + 1}s_{i} on {x!r} (degree {q})")
            for g in G.elements:
                gx = X.act(g, q, x)
                if not X.contains(q, gx):
                    errs.append(f"g={g} moves {x!r} out of degree {q}")
                    continue
                for h in G.elements:
                    if X.act(G.mul(g, h), q, x) != X.act(g, q, X.act(h, q, x)):
                        errs.append(f"action not associative at {x!r}")
                if q > 0:
                    for i in range(q + 1):
                        if X.face(q, i, gx) != X.act(g, q - 1, X.face(q, i, x)):
                            errs.append(f"d_{i} not equivariant at {x!r} (g={g})")
                if q < X.dim:
                    for i in range(q + 1):
                        if X.degen(q, i, gx) != X.act(g, q + 1, X.degen(q, i, x)):
                            errs.append(f"s_{i} not equivariant at {x!r} (g={g})")
        if X.based:
            b = X.base(q)
            if q > 0 and any(X.face(q, i, b) != X.base(q - 1) for i in range(q + 1)):
                errs.append(f"face of basepoint not basepoint in degree {q}")
            if q < X.dim and any(X.degen(q, i, b) != X.base(q + 1) for i in range(q + 1)):
                errs.append(f"degeneracy of basepoint not basepoint in degree {q}")
            if any(X.act(g, q, b) != b for g in G.elements):
                errs.append(f"basepoint not fixed in degree {q}")
        if len(errs) > 20:
            break
    return errs


# ---------------------------------------------------------------------------
# basic objects

def point(D, group=None):
    return SSet([[BASE] for _ in range(D + 1)], lambda q, i, x: BASE, lambda q, i, x: BASE,
                group=group, basepoints=[BASE] * (D + 1), name="*")


def discrete(points, D, base, group=None, act=None, name="discrete"):
    """Constant simplicial set on a finite based set (act(g, x) on points)."""
    pts = sorted(points)
    act2 = None if act is None else (lambda g, q, x: act(g, x))
    return SSet([pts] * (D + 1), lambda q, i, x: x, lambda q, i, x: x, act=act2,
                group=group, basepoints=None if base is None else [base] * (D + 1), name=name)


def _circle_face(q, i, c):
    c2 = c - 1 if i < c else c
    return 0 if c2 == 0 or c2 == q else c2


def _circle_degen(q, i, c):
    return c + 1 if i < c else c


def sphere_face(q, i, x):
    if x[0] == 0:
        return BASE
    out = [1]
    for c in x[1:]:
        c2 = _circle_face(q, i, c)
        if c2 == 0:
            return BASE
        out.append(c2)
    return tuple(out)


def sphere_degen(q, i, x):
    if x[0] == 0:
        return BASE
    return (1,) + tuple(_circle_degen(q, i, c) for c in x[1:])


def sphere_act(V):
    def act(g, q, x):
        if x[0] == 0:
            return x
        k = len(x) - 1
        out = [0] * k
        for i in range(k):
            out[V(g, i + 1) - 1] = x[i + 1]
        return (1,) + tuple(out)
    return act


def sphere_level(k, q):
    return [BASE] + [(1,) + c for c in itertools.product(range(1, q + 1), repeat=k)]


def sphere(V, D):
    """S^V for a permutation representation V (a GSetAction): |V|-fold smash of circles."""
    k = V.n
    levels = [sphere_level(k, q) for q in range(D + 1)]
    act = None if V.is_trivial() else sphere_act(V)
    S = SSet(levels, sphere_face, sphere_degen, act=act, group=V.group,
             basepoints=[BASE] * (D + 1), name=f"S^{k}")
    S.rep = V
    return S


def sphere_n(k, D, group=None):
    G = group if group is not None else trivial_group()
    return sphere(trivial_action(G, k), D)


def sphere_smash_label(v, w):
    """v ^ w in S^{V+W}: concatenation of coordinates."""
    if v[0] == 0 or w[0] == 0:
        return BASE
    return v + w[1:]


def simplex(k, D):
    """The unbased standard simplex Delta[k]: q-simplices are nondecreasing tuples."""
    levels = [list(itertools.combinations_with_replacement(range(k + 1), q + 1)) for q in range(D + 1)]
    return SSet(levels, lambda q, i, x: x[:i] + x[i + 1:], lambda q, i, x: x[:i + 1] + x[i:],
                name=f"Delta[{k}]")


def unbased_points(n, D):
    """n points with no basepoint (so that A_+ has n non-base points)."""
    return SSet([list(range(n))] * (D + 1), lambda q, i, x: x, lambda q, i, x: x, name=f"{n}pts")


# ---------------------------------------------------------------------------
# constructions

def _check_group(X, Y):
    if X.group != Y.group:
        raise ValueError("objects are over different groups")


def smash(X, Y):
    """Levelwise smash with diagonal action; simplices (1, x, y) with x, y non-base."""
    _check_group(X, Y)
    D = min(X.dim, Y.dim)
    levels = []
    for q in range(D + 1):
        bx, by = X.base(q), Y.base(q)
        levels.append([BASE] + [(1, x, y) for x in X.levels[q] if x != bx for y in Y.levels[q] if y != by])

    def mk(q, x, y):
        return BASE if x == X.base(q) or y == Y.base(q) else (1, x, y)

    def face(q, i, s):
        return BASE if s[0] == 0 else mk(q - 1, X.face(q, i, s[1]), Y.face(q, i, s[2]))

    def degen(q, i, s):
        return BASE if s[0] == 0 else mk(q + 1, X.degen(q, i, s[1]), Y.degen(q, i, s[2]))

    def act(g, q, s):
        return BASE if s[0] == 0 else (1, X.act(g, q, s[1]), Y.act(g, q, s[2]))

    return SSet(levels, face, degen, act=act, group=X.group, basepoints=[BASE] * (D + 1),
                name=f"({X.name}^{Y.name})")


def half_smash(X, A):
    """X ^ A_+ for an unbased A: simplices (1, x, a) with x non-base."""
    D = min(X.dim, A.dim)
    levels = [[BASE] + [(1, x, a) for x in X.levels[q] if x != X.base(q) for a in A.levels[q]]
              for q in range(D + 1)]

    def face(q, i, s):
        if s[0] == 0:
            return BASE
        x = X.face(q, i, s[1])
        return BASE if x == X.base(q - 1) else (1, x, A.face(q, i, s[2]))

    def degen(q, i, s):
        if s[0] == 0:
            return BASE
        x = X.degen(q, i, s[1])
        return BASE if x == X.base(q + 1) else (1, x, A.degen(q, i, s[2]))

    def act(g, q, s):
        return BASE if s[0] == 0 else (1, X.act(g, q, s[1]), A.act(g, q, s[2]))

    return SSet(levels, face, degen, act=act, group=X.group, basepoints=[BASE] * (D + 1),
                name=f"({X.name}^{A.name}+)")


def wedge(X, Y):
    """X v Y; simplices (1, 0, x) and (1, 1, y)."""
    _check_group(X, Y)
    D = min(X.dim, Y.dim)
    levels = [[BASE] + [(1, 0, x) for x in X.levels[q] if x != X.base(q)]
              + [(1, 1, y) for y in Y.levels[q] if y != Y.base(q)] for q in range(D + 1)]
    parts = (X, Y)

    def lift(q, k, z):
        return BASE if z == parts[k].base(q) else (1, k, z)

    def face(q, i, s):
        return BASE if s[0] == 0 else lift(q - 1, s[1], parts[s[1]].face(q, i, s[2]))

    def degen(q, i, s):
        return BASE if s[0] == 0 else lift(q + 1, s[1], parts[s[1]].degen(q, i, s[2]))

    def act(g, q, s):
        return BASE if s[0] == 0 else (1, s[1], parts[s[1]].act(g, q, s[2]))

    return SSet(levels, face, degen, act=act, group=X.group, basepoints=[BASE] * (D + 1),
                name=f"({X.name}v{Y.name})")


def _orbit(x, moves):
    seen = {x}
    frontier = [x]
    while frontier:
        new = []
        for y in frontier:
            for z in moves(y):
                if z not in seen:
                    seen.add(z)
                    new.append(z)
        frontier = new
    return seen


def orbit_quotient(X, moves, check=True):
    """Quotient of X by an auxiliary action.

    moves(q, x) yields the images of x under a generating set of the auxiliary
    group.  Orbits are represented by their minimal element.  With check=True
    the auxiliary action is verified to commute with faces, degeneracies and
    the G-action (ValueError otherwise).
    """
    rep = []
    for q in range(X.dim + 1):
        r = {}
        for x in X.levels[q]:
            if x in r:
                continue
            orb = _orbit(x, lambda y: moves(q, y))
            m = min(orb)
            for y in orb:
                r[y] = m
        rep.append(r)
    if check:
        for q in range(X.dim + 1):
            for x in X.levels[q]:
                for y in moves(q, x):
                    if q > 0 and any(rep[q - 1][X.face(q, i, x)] != rep[q - 1][X.face(q, i, y)]
                                     for i in range(q + 1)):
                        raise ValueError(f"auxiliary action does not commute with faces at {x!r}")
                    if q < X.dim and any(rep[q + 1][X.degen(q, i, x)] != rep[q + 1][X.degen(q, i, y)]
                                         for i in range(q + 1)):
                        raise ValueError(f"auxiliary action does not commute with degeneracies at {x!r}")
                    if any(rep[q][X.act(g, q, x)] != rep[q][X.act(g, q, y)] for g in X.group.elements):
                        raise ValueError(f"auxiliary action does not commute with G at {x!r}")
    levels = [sorted(set(r.values())) for r in rep]
    Q = SSet(levels,
             lambda q, i, x: rep[q - 1][X.face(q, i, x)],
             lambda q, i, x: rep[q + 1][X.degen(q, i, x)],
             act=lambda g, q, x: rep[q][X.act(g, q, x)],
             group=X.group,
             basepoints=None if not X.based else [rep[q][X.base(q)] for q in range(X.dim + 1)],
             name=f"{X.name}/aux")
    Q.projection = lambda q, x: rep[q][x]
    return Q


def fixed_points(X, H):
    """Levelwise H-fixed simplices; the result has trivial group."""
    G = X.group
    H = tuple(sorted(set(H)))
    if not G.is_subgroup(H):
        raise ValueError(f"{H} is not a subgroup of {G}")
    levels = [[x for x in X.levels[q] if all(X.act(h, q, x) == x for h in H)] for q in range(X.dim + 1)]
    return SSet(levels, X._face, X._degen, group=trivial_group(), basepoints=X.basepoints,
                name=f"{X.name}^H")


class BiSSet:
    """A bisimplicial based G-set: q is the bar (horizontal) direction, p internal.

    Subclasses provide level(q, p), hface/hdegen (bar direction),
    vface/vdegen (internal direction), act(g, q, p, x) and base(q, p).
    """

    group = None
    qmax = 0
    pmax = 0

    def level(self, q, p):
        raise NotImplementedError

    def base(self, q, p):
        raise NotImplementedError

    def hface(self, q, p, i, x):
        raise NotImplementedError

    def hdegen(self, q, p, i, x):
        raise NotImplementedError

    def vface(self, q, p, i, x):
        raise NotImplementedError

    def vdegen(self, q, p, i, x):
        raise NotImplementedError

    def act(self, g, q, p, x):
        raise NotImplementedError

    def row(self, p, Q=None):
        """The bar-direction simplicial set at fixed internal degree p."""
        Q = self.qmax if Q is None else Q
        return SSet([self.level(q, p) for q in range(Q + 1)],
                    lambda q, i, x: self.hface(q, p, i, x),
                    lambda q, i, x: self.hdegen(q, p, i, x),
                    act=lambda g, q, x: self.act(g, q, p, x), group=self.group,
                    basepoints=[self.base(q, p) for q in range(Q + 1)], name=f"row{p}")

    def column(self, q, D=None):
        D = self.pmax if D is None else D
        return SSet([self.level(q, p) for p in range(D + 1)],
                    lambda p, i, x: self.vface(q, p, i, x),
                    lambda p, i, x: self.vdegen(q, p, i, x),
                    act=lambda g, p, x: self.act(g, q, p, x), group=self.group,
                    basepoints=[self.base(q, p) for p in range(D + 1)], name=f"col{q}")


def diagonal(B, D=None):
    """Diagonal simplicial set d -> B(d, d), faces d_i^h d_i^v."""
    D = min(B.qmax, B.pmax) if D is None else D
    if D > B.qmax or D > B.pmax:
        raise ValueError(f"diagonal to degree {D} needs bidegrees up to ({D},{D})")

    def face(d, i, x):
        return B.hface(d, d - 1, i, B.vface(d, d, i, x))

    def degen(d, i, x):
        return B.hdegen(d, d + 1, i, B.vdegen(d, d, i, x))

    return SSet([B.level(d, d) for d in range(D + 1)], face, degen,
                act=lambda g, d, x: B.act(g, d, d, x), group=B.group,
                basepoints=[B.base(d, d) for d in range(D + 1)], name="diag")


# ---------------------------------------------------------------------------
# maps and homotopies

class SimplicialMap:
    def __init__(self, source, target, fn, name="f"):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, q, x):
        return self.fn(q, x)

    def check(self, equivariant=True):
        """List of violations: range, faces, degeneracies, G-action, basepoint."""
        X, Y = self.source, self.target
        errs = []
        D = min(X.dim, Y.dim)
        for q in range(D + 1):
            if X.based and Y.based and self.fn(q, X.base(q)) != Y.base(q):
                errs.append(f"{self.name}: basepoint not preserved in degree {q}")
            for x in X.levels[q]:
                fx = self.fn(q, x)
                if not Y.contains(q, fx):
                    errs.append(f"{self.name}({x!r}) = {fx!r} not in target degree {q}")
                    return errs
                if q > 0:
                    for i in range(q + 1):
                        if self.fn(q - 1, X.face(q, i, x)) != Y.face(q, i, fx):
                            errs.append(f"{self.name} does not commute with d_{i} at {x!r}")
                if q < D:
                    for i in range(q + 1):
                        if self.fn(q + 1, X.degen(q, i, x)) != Y.degen(q, i, fx):
                            errs.append(f"{self.name} does not commute with s_{i} at {x!r}")
                if equivariant:
                    for g in X.group.elements:
                        if self.fn(q, X.act(g, q, x)) != Y.act(g, q, fx):
                            errs.append(f"{self.name} not equivariant at {x!r} (g={g})")
                if len(errs) > 20:
                    return errs
        return errs

    def is_bijective(self):
        X, Y = self.source, self.target
        for q in range(min(X.dim, Y.dim) + 1):
            img = {self.fn(q, x) for x in X.levels[q]}
            if len(img) != len(X.levels[q]) or img != set(Y.levels[q]):
                return False
        return True

    def is_surjective(self):
        X, Y = self.source, self.target
        return all({self.fn(q, x) for x in X.levels[q]} == set(Y.levels[q])
                   for q in range(min(X.dim, Y.dim) + 1))

    def is_isomorphism(self):
        return self.is_bijective() and not self.check()


def identity(X):
    return SimplicialMap(X, X, lambda q, x: x, name="id")


def compose(f, g):
    """f o g."""
    return SimplicialMap(g.source, f.target, lambda q, x: f.fn(q, g.fn(q, x)), name=f"{f.name}.{g.name}")


class SimplicialHomotopy:
    """h(q, j, x): X_q -> Y_{q+1}, 0 <= j <= q, from f to g.

    Identities checked (with d_0 h_0 = f and d_{q+1} h_q = g):
      d_i h_j = h_{j-1} d_i           i < j
      d_{j+1} h_{j+1} = d_{j+1} h_j
      d_i h_j = h_j d_{i-1}           i > j + 1
      s_i h_j = h_{j+1} s_i           i <= j
      s_i h_j = h_j s_{i-1}           i > j
    """

    def __init__(self, source, target, f, g, h):
        self.source = source
        self.target = target
        self.f = f
        self.g = g
        self.h = h


def is_homotopy(H, equivariant=True, return_errors=False):
    X, Y = H.source, H.target
    f, g, h = H.f, H.g, H.h
    errs = []
    top = min(X.dim, Y.dim - 1)
    for q in range(top + 1):
        for x in X.levels[q]:
            hs = [h(q, j, x) for j in range(q + 1)]
            for j, y in enumerate(hs):
                if not Y.contains(q + 1, y):
                    errs.append(f"h_{j}({x!r}) not in target degree {q + 1}")
                    break
            if errs:
                break
            if Y.face(q + 1, 0, hs[0]) != f(q, x):
                errs.append(f"d_0 h_0 != f at {x!r} (degree {q})")
            if Y.face(q + 1, q + 1, hs[q]) != g(q, x):
                errs.append(f"d_{q + 1} h_{q} != g at {x!r} (degree {q})")
            for j in range(q + 1):
                for i in range(q + 2):
                    lhs = Y.face(q + 1, i, hs[j])
                    if i < j:
                        rhs = h(q - 1, j - 1, X.face(q, i, x))
                    elif i == j + 1 and j + 1 <= q:
                        rhs = Y.face(q + 1, j + 1, hs[j + 1])
                    elif i > j + 1:
                        rhs = h(q - 1, j, X.face(q, i - 1, x))
                    else:
                        continue
                    if lhs != rhs:
                        errs.append(f"face identity d_{i}h_{j} fails at {x!r} (degree {q})")
                if q + 2 <= Y.dim and q + 1 <= X.dim:
                    for i in range(q + 2):
                        lhs = Y.degen(q + 1, i, hs[j])
                        if i <= j:
                            rhs = h(q + 1, j + 1, X.degen(q, i, x))
                        else:
                            rhs = h(q + 1, j, X.degen(q, i - 1, x))
                        if lhs != rhs:
                            errs.append(f"degeneracy identity s_{i}h_{j} fails at {x!r} (degree {q})")
            if equivariant:
                for gg in X.group.elements:
                    gx = X.act(gg, q, x)
                    for j in range(q + 1):
                        if h(q, j, gx) != Y.act(gg, q + 1, hs[j]):
                            errs.append(f"h_{j} not equivariant at {x!r}")
            if X.based and Y.based and x == X.base(q):
                if any(hj != Y.base(q + 1) for hj in hs):
                    errs.append(f"h not based in degree {q}")
            if len(errs) > 20:
                break
    return errs if return_errors else not errs


def constant_homotopy(f):
    """The homotopy from f to f given by h_j = s_j f."""
    Y = f.target
    return SimplicialHomotopy(f.source, Y, f.fn, f.fn, lambda q, j, x: Y.degen(q, j, f.fn(q, x)))
