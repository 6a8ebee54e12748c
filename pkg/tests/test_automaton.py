import pytest
from hypothesis import given

from conftest import F2, F3, generator_sets
from stallings import (
    Automaton,
    DisconnectedError,
    NotDeterministicError,
    Subgroup,
    bouquet,
    core,
    flower,
    from_text,
    graph_rank,
    isomorphic_based,
    isomorphic_unbased,
    make,
    parse_word,
    product,
    product_component,
    read_word,
    restricted_core,
    spanning_tree,
    to_dot,
    to_text,
)
from stallings.automaton import tree_paths


def W(text, F=F2):
    return parse_word(text, F)


def b_loop():
    A = Automaton(F2)
    A.add_arc(A.basepoint, 2, A.basepoint)
    return A


def a_cycle(n, F=F2):
    A = Automaton(F)
    vs = [A.basepoint] + [A.add_vertex() for _ in range(n - 1)]
    for i in range(n):
        A.add_arc(vs[i], 1, vs[(i + 1) % n])
    return A


def test_flower_single_loop():
    A = flower(F2, [W("b")])
    assert A.num_vertices == 1
    assert A.arcs() == [(0, 0, 2, 0)]


def test_flower_of_worked_example():
    A = flower(F2, [W("aaa"), W("abaB"), W("AbaB")])
    assert (A.num_vertices, A.num_arcs) == (9, 11)
    assert graph_rank(A) == 3
    assert [i for i, _ in A.petals] == [1, 2, 3]


def test_flower_empty_and_trivial_generators():
    A = flower(F2, [])
    assert (A.num_vertices, A.num_arcs) == (1, 0)
    A = flower(F2, [W(""), W("a")])
    assert A.num_arcs == 1
    assert A.petals[0][0] == 2


def test_flower_petals_follow_inverse_letters():
    A = flower(F2, [W("AB")])
    ((_, steps),) = A.petals
    assert A.path_label(steps) == (-1, -2)


def test_read_word():
    B = bouquet(F2)
    assert read_word(B, 0, W("abAB")) == 0
    L = b_loop()
    assert read_word(L, 0, W("a")) is None
    assert read_word(L, 0, W("bb")) == 0


def test_read_word_requires_determinism():
    A = flower(F2, [W("a"), W("a")])
    with pytest.raises(NotDeterministicError):
        read_word(A, 0, W("a"))


def test_core():
    A = Automaton(F2)
    assert core(A).num_vertices == 1
    L = b_loop()
    v = L.add_vertex()
    L.add_arc(L.basepoint, 1, v)
    C = core(L)
    assert (C.num_vertices, C.num_arcs) == (1, 1)
    assert isomorphic_based(core(C), C) is not None


def test_core_keeps_basepoint_hair():
    St = make(F2, ["abA"]).stallings
    assert St.num_vertices == 2
    assert core(St).num_vertices == 2


def test_restricted_core():
    rc = restricted_core(b_loop())
    assert rc.graph.num_arcs == 1 and str(rc.hair) == "" and rc.attach == 0
    St = make(F2, ["abA"]).stallings
    rc = restricted_core(St)
    assert str(rc.hair) == "a"
    assert rc.graph.num_vertices == 1 and rc.graph.arcs()[0][2] == 2
    with pytest.raises(ValueError):
        restricted_core(Automaton(F2))


def test_spanning_tree():
    assert spanning_tree(Automaton(F2)) == frozenset()
    assert spanning_tree(bouquet(F2)) == frozenset()
    St = make(F2, ["aaa", "abaB", "AbaB"]).stallings
    (e,) = spanning_tree(St)
    assert St.arc(e)[1] == 2


def test_tree_paths_are_bfs_ordered():
    A = a_cycle(4)
    paths = tree_paths(A)
    assert list(paths) == [0, 1, 3, 2]
    assert [len(p) for p in paths.values()] == [0, 1, 1, 2]


def test_graph_rank():
    assert graph_rank(bouquet(F2)) == 2
    assert graph_rank(Automaton(F2)) == 0
    assert graph_rank(a_cycle(3)) == 1


def test_product_of_intersection_example():
    H = make(F2, ["b", "aaa", "AbaBa"])
    K = make(F2, ["ab", "aaa", "Aba"])
    P = product(H.stallings, K.stallings)
    assert P.num_vertices == H.stallings.num_vertices * K.stallings.num_vertices == 12
    assert P.is_deterministic()


def test_product_with_bouquet_is_identity():
    St = make(F2, ["aaa", "abaB", "AbaB"]).stallings
    P = product_component(St, bouquet(F2))
    assert isomorphic_based(P, St) is not None


def test_product_component_of_disjoint_labels_is_a_point():
    P = product_component(make(F2, ["a"]).stallings, make(F2, ["b"]).stallings)
    assert (P.num_vertices, P.num_arcs) == (1, 0)


def test_product_requires_same_alphabet():
    with pytest.raises(ValueError):
        product(bouquet(F2), bouquet(F3))


def test_isomorphic_based():
    A = make(F2, ["aaa", "abaB", "AbaB"]).stallings
    assert isomorphic_based(A, A) == {v: v for v in A.vertices}
    B = Automaton(F2)
    v = B.add_vertex()
    B.add_arc(v, 1, v)  # arcs added in a different order and with other ids
    B.add_arc(B.basepoint, 2, v)
    B.add_arc(B.basepoint, 1, B.basepoint)
    (other,) = [x for x in A.vertices if x != A.basepoint]
    assert isomorphic_based(A, B) == {A.basepoint: 0, other: v}
    assert isomorphic_based(make(F2, ["a"]).stallings, make(F2, ["b"]).stallings) is None


def test_isomorphic_unbased():
    assert isomorphic_unbased(b_loop(), b_loop()) is not None
    assert isomorphic_unbased(a_cycle(3), a_cycle(3).rebased(2)) is not None
    assert isomorphic_unbased(make(F2, ["a"]).stallings, b_loop()) is None


def test_disconnected_rejected():
    A = Automaton(F2)
    A.add_vertex()
    with pytest.raises(DisconnectedError):
        core(A)


def test_dot_output():
    dot = to_dot(Automaton(F2))
    assert dot.count("[label=") == 1 and "doublecircle" in dot
    dot = to_dot(b_loop())
    assert '0 -> 0 [label="b"' in dot
    dot = to_dot(make(F2, ["aaa", "abaB", "AbaB"]).stallings)
    assert dot.count("->") == 3
    assert dot == to_dot(make(F2, ["aaa", "abaB", "AbaB"]).stallings)


def test_text_round_trip():
    St = make(F2, ["babA", "abA", "abaa"]).stallings
    text = to_text(St)
    back = from_text(text)
    assert to_text(back) == text
    assert isomorphic_based(back, St) is not None


def test_from_text_errors():
    with pytest.raises(ValueError, match="line 2"):
        from_text("alphabet 2\nbogus line\n")


@given(generator_sets())
def test_stallings_automaton_is_a_deterministic_core(gens):
    St = Subgroup(F2, gens).stallings
    assert St.is_deterministic()
    assert St.is_connected()
    for v in St.vertices:
        if v != St.basepoint:
            assert St.degree(v) >= 2


@given(generator_sets(), generator_sets())
def test_product_component_is_a_component_of_the_full_product(g1, g2):
    A, B = Subgroup(F2, g1).stallings, Subgroup(F2, g2).stallings
    P = product(A, B)
    Q = product_component(A, B)
    base = P.index[(A.basepoint, B.basepoint)]
    comp = next(c for c in P.components() if base in c)
    assert len(comp) == Q.num_vertices
