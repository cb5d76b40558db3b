"""Finite groups, G-set actions, based maps and truncated hom-sets.

Conventions: group elements are 0..order-1 with 0 the identity.  A based
finite set n is {0,1,...,n} with basepoint 0; a based map m -> n is stored
as the tuple of images of 1..m.  Permutations of {1..n} are stored the same
way (values in 1..n).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class FinGroup:
    """A finite group given by a multiplication table."""

    def __init__(self, mult, name="G", check=True):
        self.mult = tuple(tuple(row) for row in mult)
        self.order = len(self.mult)
        self.name = name
        if check:
            self._check()
        inv = [None] * self.order
        for g in range(self.order):
            for h in range(self.order):
                if self.mult[g][h] == 0:
                    inv[g] = h
                    break
        self.inverse = tuple(inv)

    def _check(self):
        n = self.order
        if n == 0 or any(len(r) != n for r in self.mult):
            raise ValueError("multiplication table must be square and nonempty")
        for g in range(n):
            if self.mult[0][g] != g or self.mult[g][0] != g:
                raise ValueError("0 is not a two-sided identity")
            if 0 not in self.mult[g]:
                raise ValueError(f"element {g} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError("multiplication is not associative")

    @property
    def elements(self):
        return range(self.order)

    def mul(self, g, h):
        return self.mult[g][h]

    def inv(self, g):
        return self.inverse[g]

    def is_trivial(self):
        return self.order == 1

    def is_subgroup(self, H):
        H = set(H)
        if 0 not in H:
            return False
        return all(self.mult[a][self.inverse[b]] in H for a in H for b in H)

    def generated(self, gens):
        """Subgroup generated by gens, as a sorted tuple."""
        S = {0}
        frontier = [0]
        while frontier:
            new = []
            for s in frontier:
                for g in gens:
                    t = self.mult[s][g]
                    if t not in S:
                        S.add(t)
                        new.append(t)
            frontier = new
        return tuple(sorted(S))

    def __eq__(self, other):
        return isinstance(other, FinGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    def __repr__(self):
        return f"FinGroup({self.name}, order={self.order})"


def trivial_group():
    return FinGroup([[0]], name="e")


def cyclic_group(n):
    return FinGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def all_perms(n):
    """All permutations of {1..n} as image tuples, identity first."""
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def perm_compose(s, t):
    """(s o t)(i) = s(t(i)); both 1-based image tuples."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def perm_inverse(s):
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v - 1] = i + 1
    return tuple(out)


def symmetric_group(n):
    perms = all_perms(n)
    idx = {p: i for i, p in enumerate(perms)}
    mult = [[idx[perm_compose(a, b)] for b in perms] for a in perms]
    G = FinGroup(mult, name=f"S{n}", check=False)
    G.perms = perms
    return G


def product_group(G, H):
    """G x H with element (g, h) numbered g*|H| + h."""
    m, n = G.order, H.order
    mult = [[0] * (m * n) for _ in range(m * n)]
    for a in range(m * n):
        for b in range(m * n):
            mult[a][b] = G.mult[a // n][b // n] * n + H.mult[a % n][b % n]
    P = FinGroup(mult, name=f"{G.name}x{H.name}", check=False)
    P.factors = (G, H)
    return P


@dataclass(frozen=True)
class GSetAction:
    """A homomorphism alpha: G -> Sigma_n, one image tuple per group element."""

    group: FinGroup
    n: int
    perms: tuple
    name: str = ""

    def __post_init__(self):
        G = self.group
        if len(self.perms) != G.order:
            raise ValueError("need one permutation per group element")
        ident = tuple(range(1, self.n + 1))
        for p in self.perms:
            if sorted(p) != list(ident):
                raise ValueError(f"{p} is not a permutation of 1..{self.n}")
        if self.perms[0] != ident:
            raise ValueError("identity must act trivially")
        for g in G.elements:
            for h in G.elements:
                if self.perms[G.mul(g, h)] != perm_compose(self.perms[g], self.perms[h]):
                    raise ValueError("not a homomorphism")

    def __call__(self, g, i):
        return 0 if i == 0 else self.perms[g][i - 1]

    def is_trivial(self):
        ident = tuple(range(1, self.n + 1))
        return all(p == ident for p in self.perms)

    def __repr__(self):
        return f"GSetAction({self.name or self.perms}, n={self.n})"


def trivial_action(G, n):
    return GSetAction(G, n, tuple(tuple(range(1, n + 1)) for _ in G.elements), name=f"triv{n}")


def regular_action(G):
    """Left regular action: g sends element h (point h+1) to gh."""
    perms = tuple(tuple(G.mul(g, h) + 1 for h in G.elements) for g in G.elements)
    return GSetAction(G, G.order, perms, name="reg")


@dataclass(frozen=True, order=True)
class BasedMap:
    """Based map m -> n; image[i-1] is the image of i, 0 is the basepoint."""

    m: int
    n: int
    image: tuple

    def __post_init__(self):
        if len(self.image) != self.m or any(v < 0 or v > self.n for v in self.image):
            raise ValueError(f"bad based map {self.m}->{self.n}: {self.image}")

    def __call__(self, i):
        return 0 if i == 0 else self.image[i - 1]

    def is_zero(self):
        return all(v == 0 for v in self.image)

    def preimage(self, j):
        return [i + 1 for i, v in enumerate(self.image) if v == j]

    def __repr__(self):
        return f"{self.m}->{self.n}{list(self.image)}"


def identity_map(n):
    return BasedMap(n, n, tuple(range(1, n + 1)))


def zero_map(m, n):
    return BasedMap(m, n, (0,) * m)


def compose_based(psi, phi):
    """psi o phi."""
    if phi.n != psi.m:
        raise ValueError(f"cannot compose {psi} after {phi}")
    return BasedMap(phi.m, psi.n, tuple(0 if v == 0 else psi.image[v - 1] for v in phi.image))


def lex_index(i, j, n):
    """Position of the pair (i, j) in the lexicographic identification m^n = mn."""
    return (i - 1) * n + j


def smash_based(phi, psi):
    """phi ^ psi : (m n) -> (p q) under lexicographic flattening."""
    q = psi.n
    image = []
    for i in range(1, phi.m + 1):
        a = phi(i)
        for j in range(1, psi.m + 1):
            b = psi(j)
            image.append(0 if a == 0 or b == 0 else lex_index(a, b, q))
    return BasedMap(phi.m * psi.m, phi.n * psi.n, tuple(image))


CATEGORY_ALIASES = {
    "F": "F", "𝓕": "F", "Fin": "F",
    "Pi": "Pi", "Π": "Pi",
    "Sigma": "Sigma", "Σ": "Sigma",
    "N": "N", "ℕ": "N", "O": "N",
}


def normalize_tag(cat):
    base = cat[:-2] if cat.endswith("_G") else cat
    if base not in CATEGORY_ALIASES:
        raise ValueError(f"unknown index category {cat!r}")
    return CATEGORY_ALIASES[base] + ("_G" if cat.endswith("_G") else "")


@lru_cache(maxsize=None)
def _homs(cat, m, n):
    if cat == "F":
        return tuple(BasedMap(m, n, im) for im in itertools.product(range(n + 1), repeat=m))
    if cat == "Pi":
        out = []
        for im in itertools.product(range(n + 1), repeat=m):
            nz = [v for v in im if v]
            if len(nz) == len(set(nz)):
                out.append(BasedMap(m, n, im))
        return tuple(out)
    if cat == "Sigma":
        return tuple(BasedMap(n, n, p) for p in sorted(all_perms(n))) if m == n else ()
    if cat == "N":
        return (identity_map(n),) if m == n else ()
    raise ValueError(cat)


def enumerate_homs(cat, m, n):
    """All morphisms m -> n of F, Pi, Sigma or N (lexicographic order, cached)."""
    if m < 0 or n < 0:
        raise ValueError("cardinalities must be nonnegative")
    return list(_homs(normalize_tag(cat).replace("_G", ""), m, n))


def conjugation_action(g, phi, alpha, beta):
    """g . phi = beta(g) o phi o alpha(g)^-1 for phi: (m, alpha) -> (n, beta)."""
    if alpha.n != phi.m or beta.n != phi.n:
        raise ValueError("actions do not match the arities of phi")
    ginv = alpha.group.inv(g)
    return BasedMap(phi.m, phi.n, tuple(beta(g, phi(alpha(ginv, i))) for i in range(1, phi.m + 1)))


@dataclass(frozen=True)
class GraphSubgroup:
    """A subgroup of G x Sigma_n meeting Sigma_n trivially, as (g, sigma) pairs."""

    group: FinGroup
    n: int
    elements: tuple

    def projection(self):
        return tuple(g for g, _ in self.elements)

    def as_map(self):
        return dict(self.elements)

    def __len__(self):
        return len(self.elements)


SUBGROUP_BOUND = 5040


def _subgroups_by_closure(order, mul, elements):
    """All subgroups of a finite group, by closing sets of generators."""
    found = set()
    frontier = {frozenset([elements[0]])}
    ident = elements[0]

    def close(S):
        S = set(S)
        frontier_ = list(S)
        while frontier_:
            new = []
            for a in frontier_:
                for b in list(S):
                    for c in (mul(a, b), mul(b, a)):
                        if c not in S:
                            S.add(c)
                            new.append(c)
            frontier_ = new
        return frozenset(S)

    found.add(frozenset([ident]))
    frontier = [frozenset([ident])]
    while frontier:
        new = []
        for H in frontier:
            for x in elements:
                if x not in H:
                    K = close(H | {x})
                    if K not in found:
                        found.add(K)
                        new.append(K)
        frontier = new
    return found


def all_subgroups_product(G, n):
    """Brute force: every subgroup of G x Sigma_n, as frozensets of (g, sigma)."""
    perms = all_perms(n)
    if G.order * len(perms) > SUBGROUP_BOUND:
        raise ValueError(f"|G x Sigma_{n}| exceeds the enumeration bound {SUBGROUP_BOUND}")
    elements = [(g, p) for g in G.elements for p in perms]

    def mul(a, b):
        return (G.mul(a[0], b[0]), perm_compose(a[1], b[1]))

    return _subgroups_by_closure(len(elements), mul, elements)


def _homomorphisms_from(G, H, n):
    """All homomorphisms from the subgroup H of G into Sigma_n, as dicts."""
    H = list(H)
    perms = all_perms(n)
    gens = []
    for h in H:
        if h not in G.generated(gens):
            gens.append(h)
    out = []
    for images in itertools.product(perms, repeat=len(gens)):
        rho = {0: tuple(range(1, n + 1))}
        frontier = [0]
        ok = True
        while frontier and ok:
            new = []
            for s in frontier:
                for g, pg in zip(gens, images):
                    t = G.mul(s, g)
                    val = perm_compose(rho[s], pg)
                    if t in rho:
                        if rho[t] != val:
                            ok = False
                            break
                    else:
                        rho[t] = val
                        new.append(t)
                if not ok:
                    break
            frontier = new
        if ok:
            ok = all(rho[G.mul(a, b)] == perm_compose(rho[a], rho[b]) for a in H for b in H)
        if ok:
            out.append(rho)
    return out


def graph_subgroups(G, n):
    """All graph subgroups of G x Sigma_n: graphs of homomorphisms H -> Sigma_n."""
    if G.order * len(all_perms(n)) > SUBGROUP_BOUND:
        raise ValueError(f"|G x Sigma_{n}| exceeds the enumeration bound {SUBGROUP_BOUND}")
    subgroups = sorted({tuple(sorted(S)) for S in _subgroups_by_closure(G.order, G.mul, list(G.elements))})
    out = []
    for H in subgroups:
        for rho in _homomorphisms_from(G, H, n):
            out.append(GraphSubgroup(G, n, tuple(sorted((h, rho[h]) for h in H))))
    out.sort(key=lambda L: (len(L.elements), L.elements))
    return out


def group_from_spec(spec):
    """Build a group from a config block {kind: cyclic|symmetric|trivial|table, ...}."""
    kind = spec.get("kind", "trivial")
    if kind == "trivial":
        return trivial_group()
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]))
    if kind == "symmetric":
        return symmetric_group(int(spec["n"]))
    if kind == "table":
        return FinGroup(spec["table"], name=spec.get("name", "G"))
    raise ValueError(f"unknown group kind {kind!r}")


def parse_group_name(name):
    """'e', 'C2', 'S3', 'C2xC2' style names."""
    parts = name.split("x")
    groups = []
    for p in parts:
        p = p.strip()
        if p in ("e", "1", "trivial"):
            groups.append(trivial_group())
        elif p[:1] == "C" and p[1:].isdigit():
            groups.append(cyclic_group(int(p[1:])))
        elif p[:1] == "S" and p[1:].isdigit():
            groups.append(symmetric_group(int(p[1:])))
        else:
            raise ValueError(f"unknown group name {name!r}")
    G = groups[0]
    for H in groups[1:]:
        G = product_group(G, H)
    return G
