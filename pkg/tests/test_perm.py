import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from galbench.aut import automorphism_group
from galbench.errors import CapError, GroupError
from galbench.perm import (Perm, all_subgroups, close_group, is_normal_subgroup,
                           orbit, restrict_to_invariant_set, setwise_stabilizer,
                           stabilizer_pointwise, trivial_group)

from oracles import naive_closure


def cyc(n, *cycles):
    """Permutation of 0..n-1 from explicit cycles."""
    images = list(range(n))
    for cycle in cycles:
        for i, point in enumerate(cycle):
            images[point] = cycle[(i + 1) % len(cycle)]
    return Perm(images)


# -- Perm basics -----------------------------------------------------------------


def test_perm_validation():
    with pytest.raises(GroupError):
        Perm((0, 0, 1))


def test_perm_composition_and_inverse():
    p = cyc(4, (0, 1, 2, 3))
    q = cyc(4, (0, 1))
    assert (p * q)(0) == p(q(0)) == p(1) == 2
    assert (p * p.inverse()).is_identity()


def test_cycle_notation():
    assert str(cyc(4, (0, 1), (2, 3))) == "(0 1)(2 3)"
    assert str(Perm.identity(5)) == "()"
    assert str(cyc(5, (1, 3, 2))) == "(1 3 2)"


# -- close_group -----------------------------------------------------------------


def test_single_transposition():
    G = close_group([cyc(4, (0, 1))])
    assert G.order == 2


def test_symmetric_group_on_four_points():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    assert G.order == 24


def test_empty_generators():
    G = close_group([], degree=5)
    assert G.order == 1
    assert G.contains(Perm.identity(5))
    with pytest.raises(GroupError):
        close_group([])


def test_mixed_degrees_rejected():
    with pytest.raises(GroupError):
        close_group([cyc(4, (0, 1)), cyc(5, (0, 1))])


@pytest.mark.parametrize("gens", [
    [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))],
    [cyc(5, (0, 1, 2, 3, 4))],
    [cyc(6, (0, 1), (2, 3)), cyc(6, (0, 2), (1, 3)), cyc(6, (4, 5))],
    [cyc(4, (0, 1, 2))],
    [cyc(6, (0, 1, 2, 3, 4, 5)), cyc(6, (0, 1))],
])
def test_order_matches_naive_closure(gens):
    G = close_group(gens)
    assert G.order == len(naive_closure(gens, gens[0].degree))


def test_membership_sound_and_complete():
    gens = [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))]
    G = close_group(gens)
    elems = naive_closure(gens, 4)
    from itertools import permutations
    for images in permutations(range(4)):
        p = Perm(images)
        assert G.contains(p) == (p in elems)


def test_elements_enumeration():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    elems = G.elements()
    assert len(elems) == 24
    assert len(set(elems)) == 24
    assert elems == sorted(elems)
    with pytest.raises(CapError):
        G.elements(cap=10)


def test_corpus_groups_match_naive_closure(corpus_structure):
    if corpus_structure.size > 6:
        return
    G = automorphism_group(corpus_structure)
    assert G.order == len(naive_closure(G.generators, G.degree))


# -- orbits and stabilizers ----------------------------------------------------------


def test_orbit_cyclic_rotation():
    G = close_group([cyc(5, (0, 1, 2, 3, 4))])
    assert orbit(G, (0,)) == ((0,), (1,), (2,), (3,), (4,))


def test_orbit_trivial_group():
    G = trivial_group(4)
    assert orbit(G, (2, 3)) == ((2, 3),)


def test_orbit_klein_pair(ex_rs):
    # the Klein action on the paired points, restricted
    from galbench.aut import relative_aut
    G = relative_aut(ex_rs, ex_rs.ids(["a", "b", "c", "d"]), frozenset())
    assert orbit(G, (0, 1)) == ((0, 1), (1, 0), (2, 3), (3, 2))


def test_orbit_range_check():
    G = trivial_group(3)
    with pytest.raises(GroupError):
        orbit(G, (5,))


def test_stabilizer_empty_tuple_is_whole_group():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    assert stabilizer_pointwise(G, ()).order == G.order


def test_stabilizer_of_three_points_in_s4():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    S = stabilizer_pointwise(G, (0, 1, 2))
    assert S.order == 1


def test_stabilizer_in_aut_ex_rs(ex_rs):
    G = automorphism_group(ex_rs)
    S = stabilizer_pointwise(G, (ex_rs.resolve("a"),))
    assert S.order == 2
    brute = [g for g in G.elements() if g(ex_rs.resolve("a")) == ex_rs.resolve("a")]
    assert len(brute) == 2


def test_orbit_stabilizer_law_random():
    rng = random.Random(3)
    G = close_group([cyc(6, (0, 1, 2, 3, 4, 5)), cyc(6, (0, 1))])
    for _ in range(25):
        t = tuple(rng.randrange(6) for _ in range(rng.randint(1, 3)))
        assert len(orbit(G, t)) * stabilizer_pointwise(G, t).order == G.order


# -- setwise stabilizer ----------------------------------------------------------------


def test_setwise_stabilizer_whole_universe():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    F = [(i,) for i in range(4)]
    assert setwise_stabilizer(G, F).order == G.order


def test_setwise_stabilizer_of_pair_in_restricted_klein(ex_rs):
    from galbench.aut import relative_aut
    G = relative_aut(ex_rs, ex_rs.ids(["a", "b", "c", "d"]), frozenset())
    S = setwise_stabilizer(G, [(0,), (1,)])
    assert S.order == 2
    assert S.generator_strings() == ("(0 1)(2 3)",)


def test_setwise_stabilizer_trivial_group():
    assert setwise_stabilizer(trivial_group(4), [(0,), (2,)]).order == 1


def test_setwise_contains_pointwise():
    G = close_group([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))])
    F = [(0,), (1,)]
    S = setwise_stabilizer(G, F)
    P = stabilizer_pointwise(G, (0, 1))
    assert P.is_subgroup_of(S)


def test_setwise_mixed_lengths_rejected():
    with pytest.raises(GroupError):
        setwise_stabilizer(trivial_group(4), [(0,), (1, 2)])


# -- subgroup lattice ---------------------------------------------------------------------


def test_klein_four_has_five_subgroups():
    G = close_group([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
    subs = all_subgroups(G)
    assert len(subs) == 5
    assert sorted(H.order for H in subs) == [1, 2, 2, 2, 4]


def test_cyclic_prime_has_two_subgroups():
    subs = all_subgroups(close_group([cyc(5, (0, 1, 2, 3, 4))]))
    assert [H.order for H in subs] == [1, 5]


def test_trivial_group_has_one_subgroup():
    assert len(all_subgroups(trivial_group(3))) == 1


def test_s4_subgroups_against_pairwise_closure_oracle():
    gens = [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))]
    G = close_group(gens)
    subs = all_subgroups(G)
    # oracle: close every pair of elements (every subgroup of S4 is 2-generated)
    elems = sorted(naive_closure(gens, 4))
    seen = {frozenset(naive_closure([], 4))}
    for a, b in combinations(elems, 2):
        seen.add(frozenset(naive_closure([a, b], 4)))
    for a in elems:
        seen.add(frozenset(naive_closure([a], 4)))
    assert len(subs) == len(seen) == 30


def test_subgroups_are_valid_and_lagrange():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    subs = all_subgroups(G)
    keys = set()
    for H in subs:
        elems = H.elements()
        keys.add(frozenset(elems))
        assert G.order % H.order == 0
        for a in elems:
            assert a.inverse() in elems
            for b in elems:
                assert a * b in elems
    assert len(keys) == len(subs)


def test_subgroup_cap():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    with pytest.raises(CapError):
        all_subgroups(G, cap=10)


# -- normality -------------------------------------------------------------------------


def test_abelian_subgroups_always_normal():
    G = close_group([cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))])
    for H in all_subgroups(G):
        assert is_normal_subgroup(H, G)


def test_transposition_not_normal_in_s4():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    H = close_group([cyc(4, (0, 1))])
    assert is_normal_subgroup(H, G) is False


def test_group_normal_in_itself():
    G = close_group([cyc(4, (0, 1, 2, 3))])
    assert is_normal_subgroup(G, G)


def test_not_a_subgroup_rejected():
    G = close_group([cyc(4, (0, 1), (2, 3))])
    H = close_group([cyc(4, (0, 1))])
    with pytest.raises(GroupError):
        is_normal_subgroup(H, G)


# -- restriction -----------------------------------------------------------------------


def test_restrict_ex_rs(ex_rs):
    G = automorphism_group(ex_rs)
    r = restrict_to_invariant_set(G, ex_rs.ids(["a", "b", "c", "d"]))
    assert r.image.order == 4
    assert r.kernel.order == 2
    assert r.points == (0, 1, 2, 3)


def test_restrict_full_universe_is_isomorphic():
    G = close_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 1))])
    r = restrict_to_invariant_set(G, range(4))
    assert r.image.order == G.order
    assert r.kernel.order == 1


def test_restrict_trivial_group():
    r = restrict_to_invariant_set(trivial_group(5), {1, 3})
    assert r.image.order == 1 and r.kernel.order == 1


def test_restrict_requires_invariance():
    from galbench.errors import NotInvariantError
    G = close_group([cyc(4, (0, 1, 2, 3))])
    with pytest.raises(NotInvariantError):
        restrict_to_invariant_set(G, {0, 1})


def test_restriction_image_lifts_back(ex_rs):
    # every image element is the restriction of some group element
    G = automorphism_group(ex_rs)
    r = restrict_to_invariant_set(G, ex_rs.ids(["a", "b", "c", "d"]))
    originals = {g.apply_tuple(r.points) for g in G.elements()}
    for h in r.image.elements():
        assert tuple(r.points[h(i)] for i in range(len(r.points))) in originals


def test_order_splits_multiplicatively(ex_rs, c5, gf16):
    for M, C in ((ex_rs, ex_rs.ids(["a", "b", "c", "d"])),
                 (c5, frozenset(range(5))),
                 (gf16, gf16.ids(["0", "1", "w5", "w10"]))):
        G = automorphism_group(M)
        r = restrict_to_invariant_set(G, C)
        assert r.image.order * r.kernel.order == G.order


# -- property-based sanity on random permutations ------------------------------------------


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
@settings(max_examples=100, deadline=None)
def test_perm_algebra_properties(p_images, q_images):
    p, q = Perm(p_images), Perm(q_images)
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert p * Perm.identity(6) == p
    G = close_group([p, q])
    assert G.contains(p * q)
    assert G.contains(p.inverse())
