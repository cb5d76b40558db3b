"""Finite abelian (G-)groups as products of cyclic groups, and their tensor product."""
from __future__ import annotations

import itertools
from math import gcd

from .fingroups import trivial_group
from .homology import snf_with_transforms
from .indexdiagrams import LabelSpace
from .simplicial import discrete


class AbGroup:
    """Z/o_1 x ... x Z/o_k; elements are tuples.  An order 0 factor is Z (then the
    group is not enumerable).  action(g, x) is an automorphism action of a finite
    group (default trivial); mult(x, y) an optional bilinear ring multiplication."""

    def __init__(self, orders, group=None, action=None, mult=None, one=None, name=None):
        self.orders = tuple(orders)
        self.group = group if group is not None else trivial_group()
        self._action = action
        self.mult = mult
        self.one = one
        self.name = name or ("x".join(f"Z/{o}" if o else "Z" for o in self.orders) or "0")
        self.zero = (0,) * len(self.orders)

    @property
    def finite(self):
        return all(o > 0 for o in self.orders)

    def elements(self):
        if not self.finite:
            raise ValueError(f"{self.name} is infinite")
        return sorted(itertools.product(*[range(o) for o in self.orders]))

    def order(self):
        n = 1
        for o in self.orders:
            n *= o
        return n

    def add(self, x, y):
        return tuple((a + b) % o if o else a + b for a, b, o in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % o if o else -a for a, o in zip(x, self.orders))

    def scale(self, k, x):
        return tuple((k * a) % o if o else k * a for a, o in zip(x, self.orders))

    def act(self, g, x):
        if self._action is None or g == 0:
            return x
        return self._action(g, x)

    def check(self):
        """Group axioms on the (finite) element set and the G-action by automorphisms."""
        errs = []
        E = self.elements()
        S = set(E)
        for x in E:
            if self.add(x, self.zero) != x or self.add(x, self.neg(x)) != self.zero:
                errs.append(f"unit/inverse fails at {x}")
            for y in E:
                if self.add(x, y) != self.add(y, x) or self.add(x, y) not in S:
                    errs.append(f"not commutative/closed at {x},{y}")
                for g in self.group.elements:
                    if self.act(g, self.add(x, y)) != self.add(self.act(g, x), self.act(g, y)):
                        errs.append(f"g={g} is not additive")
        for g in self.group.elements:
            if sorted(self.act(g, x) for x in E) != E:
                errs.append(f"g={g} is not a bijection")
        return errs

    def label_space(self, D):
        X = discrete(self.elements(), D, self.zero, group=self.group,
                     act=None if self._action is None else self.act, name=self.name)
        return LabelSpace(X, lambda p, a, b: self.add(a, b), name=self.name)

    def __repr__(self):
        return f"AbGroup({self.name})"


def cyclic(n, **kw):
    return AbGroup([n], **kw)


def cyclic_ring(n, group=None):
    """Z/n with its ring structure (trivial G-action)."""
    return AbGroup([n], group=group, mult=lambda x, y: ((x[0] * y[0]) % n,), one=(1 % n,), name=f"Z/{n}")


def Z2_ring(group=None):
    return cyclic_ring(2, group)


def direct_sum(A, B):
    if A.group != B.group:
        raise ValueError("groups differ")
    k = len(A.orders)

    def act(g, x):
        return A.act(g, x[:k]) + B.act(g, x[k:])
    return AbGroup(A.orders + B.orders, group=A.group, action=act, name=f"({A.name}+{B.name})")


class Tensor:
    """A (x) B via Smith normal form of the standard presentation.

    Generators e_i (x) f_j with relations o_i (e_i (x) f_j) and o'_j (e_i (x) f_j).
    Coordinates x in the generator basis map to x V (mod the invariant factors)."""

    def __init__(self, A, B):
        if not (A.finite and B.finite):
            raise ValueError("tensor_ab is implemented for finite groups")
        self.A, self.B = A, B
        gens = [(i, j) for i in range(len(A.orders)) for j in range(len(B.orders))]
        rel = []
        for k, (i, j) in enumerate(gens):
            for o in (A.orders[i], B.orders[j]):
                row = [0] * len(gens)
                row[k] = o
                rel.append(row)
        self.gens = gens
        if gens:
            D, U, V = snf_with_transforms(rel)
            diag = [D[t][t] if t < len(D) else 0 for t in range(len(gens))]
        else:
            V, diag = [], []
        self.V = V
        self.diag = diag
        self.keep = [t for t, d in enumerate(diag) if d != 1]
        self.result = AbGroup([diag[t] for t in self.keep], group=A.group,
                              name=f"{A.name}(x){B.name}")
        # the G-action on the tensor product is computed through the generator basis
        if not A.group.is_trivial():
            self.result._action = lambda g, z: self._act(g, z)

    def coords(self, vec):
        """Image in the result of a vector over the generators e_i (x) f_j."""
        out = []
        for t in self.keep:
            s = sum(vec[k] * self.V[k][t] for k in range(len(vec)))
            d = self.diag[t]
            out.append(s % d if d else s)
        return tuple(out)

    def pair(self, a, b):
        """The bilinear map A x B -> A (x) B."""
        return self.coords([a[i] * b[j] for i, j in self.gens])

    def _act(self, g, z):
        # find a preimage sum of pure tensors: brute force over pairs (finite, desk scale)
        for a in self.A.elements():
            for b in self.B.elements():
                if self.pair(a, b) == z:
                    return self.pair(self.A.act(g, a), self.B.act(g, b))
        raise ValueError("element is not a pure tensor")


def tensor_ab(A, B):
    return Tensor(A, B).result


def invariant_factors(A):
    """Canonical cyclic decomposition: invariant factors of a finite abelian group."""
    if not A.orders:
        return []
    M = [[o if i == j else 0 for j in range(len(A.orders))] for i, o in enumerate(A.orders)]
    D, _, _ = snf_with_transforms(M)
    return [D[t][t] for t in range(len(A.orders)) if D[t][t] != 1]


def same_group(A, B):
    return invariant_factors(A) == invariant_factors(B)


def tensor_gcd_oracle(A, B):
    """Independent oracle: invariant factors from gcds of the cyclic factors."""
    fs = [gcd(a, b) for a in A.orders for b in B.orders]
    return invariant_factors(AbGroup([f for f in fs]))
