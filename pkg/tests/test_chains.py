from hypothesis import given, settings, strategies as st

from segalbench.abgroups import Z2_ring
from segalbench.chains import canon_forest, decode_forest
from segalbench.indexdiagrams import R_diagram
from segalbench.monoidal import free_bar
from segalbench.simplicial import check_simplicial, diagonal, sphere_n


@st.composite
def raw_chains(draw):
    q = draw(st.integers(0, 3))
    sizes = [draw(st.integers(1, 3)) for _ in range(q + 1)]
    top = tuple(draw(st.integers(0, 2)) for _ in range(sizes[0]))
    maps = tuple(tuple(draw(st.integers(0, sizes[i])) for _ in range(sizes[i + 1])) for i in range(q))
    bottom = tuple(draw(st.integers(0, 2)) for _ in range(sizes[-1]))
    return top, maps, bottom


def permute(top, maps, bottom, perms):
    """Relabel level i by perms[i] (image tuples); an element of the Sigma-orbit."""
    inv = [{v: k + 1 for k, v in enumerate(p)} for p in perms]
    top2 = tuple(top[inv[0][u] - 1] for u in range(1, len(top) + 1))
    maps2 = []
    for i, m in enumerate(maps, start=1):
        maps2.append(tuple(perms[i - 1][m[inv[i][u] - 1] - 1] if m[inv[i][u] - 1] else 0
                           for u in range(1, len(m) + 1)))
    bottom2 = tuple(bottom[inv[-1][u] - 1] for u in range(1, len(bottom) + 1))
    return top2, tuple(maps2), bottom2


@given(raw_chains(), st.randoms(use_true_random=False))
@settings(max_examples=300, deadline=None)
def test_forest_key_is_orbit_invariant(chain, rnd):
    top, maps, bottom = chain
    sizes = [len(top)] + [len(m) for m in maps]
    perms = []
    for n in sizes:
        p = list(range(1, n + 1))
        rnd.shuffle(p)
        perms.append(tuple(p))
    assert canon_forest(top, maps, bottom) == canon_forest(*permute(top, maps, bottom, perms))


@given(raw_chains())
@settings(max_examples=300, deadline=None)
def test_decode_is_a_representative(chain):
    key = canon_forest(*chain)
    top, maps, bottom, ext = decode_forest(key)
    assert canon_forest(top, maps, bottom, ext) == key


def test_free_bar_sizes():
    B = free_bar(sphere_n(1, 2), 2, 2, 2)
    assert [[len(B.level(q, p)) for p in range(3)] for q in range(3)] == [[1, 5, 21], [1, 20, 97], [1, 92, 461]]


def test_bar_rows_columns_diagonal():
    B = free_bar(sphere_n(1, 2), 2, 2, 2)
    for p in range(3):
        assert check_simplicial(B.row(p)) == []
    for q in range(3):
        assert check_simplicial(B.column(q)) == []
    assert check_simplicial(diagonal(B)) == []


def test_nonsymmetric_bar_is_bigger():
    from segalbench.chains import ChainBar
    from segalbench.fingroups import trivial_action, trivial_group
    from segalbench.simplicial import sphere
    X = R_diagram(Z2_ring(), 2, 1)
    S = sphere(trivial_action(trivial_group(), 1), 1)
    sym = ChainBar(S, X, 2, 1, 1)
    raw = ChainBar(S, X, 2, 1, 1, symmetric=False)
    assert len(raw.level(1, 1)) > len(sym.level(1, 1))
