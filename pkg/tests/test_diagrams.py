import random

import pytest

from knotwork.diagrams import (
    CUP, CAP, XP, XN,
    SliceWord, BraidWord, ThetaTangle, DiagramError,
    pretzel, braid_closure, slice_to_pd, connected_sum, mirror, vertex_sum,
    theta_cycles, trivial_theta, theta_from_braid, unknot, unknot_with_curl,
    hopf_link, parse_braid, reverse_component, random_closed_word,
    random_knot_word, random_theta, random_isotopies,
)


class TestSliceWordBasics:
    def test_unknot(self):
        w = unknot()
        assert w.is_closed()
        assert w.component_count() == 1
        assert w.crossing_count() == 0

    def test_invalid_positions_rejected(self):
        with pytest.raises(DiagramError):
            SliceWord(((CUP, 1),))
        with pytest.raises(DiagramError):
            SliceWord(((CUP, 0), (XP, 1), (CAP, 0)))
        with pytest.raises(DiagramError):
            SliceWord(((CUP, 0),))  # not closed

    def test_open_tangle_arities(self):
        w = SliceWord(((XP, 0),), arity_in=2, arity_out=2)
        assert not w.is_closed()
        assert w.component_count() == 2

    def test_max_width(self):
        w = unknot_with_curl()
        assert w.max_width() == 4


class TestBraids:
    def test_parse(self):
        b = parse_braid("s1 s1 s1")
        assert b == BraidWord(2, (1, 1, 1))
        b2 = parse_braid("-s2 s1", strands=3)
        assert b2 == BraidWord(3, (-2, 1))
        with pytest.raises(DiagramError):
            parse_braid("x3")

    def test_closure_components_are_cycles(self):
        rng = random.Random(0)
        for _ in range(40):
            n = rng.randrange(1, 5)
            word = tuple(rng.choice([i, -i]) for i in
                         (rng.randrange(1, n) for _ in range(rng.randrange(0, 8)))) if n > 1 else ()
            b = BraidWord(n, word)
            closed = braid_closure(b)
            perm = b.permutation()
            cycles = 0
            seen = set()
            for i in range(n):
                if i not in seen:
                    cycles += 1
                    j = i
                    while j not in seen:
                        seen.add(j)
                        j = perm[j]
            assert closed.component_count() == cycles

    def test_empty_braid_is_unknot(self):
        closed = braid_closure(BraidWord(1, ()))
        assert closed.component_count() == 1
        assert closed.crossing_count() == 0

    def test_stabilized_braid_is_unknot(self):
        closed = braid_closure(BraidWord(2, (1,)))
        assert closed.component_count() == 1

    def test_writhe_matches_word(self):
        closed = braid_closure(BraidWord(2, (1, 1, 1)))
        assert closed.writhe() == 3


class TestPretzel:
    def test_single_positive_crossing(self):
        w = pretzel(1)
        assert w.component_count() == 1
        assert w.crossing_count() == 1

    def test_kg_has_eleven_crossings_one_component(self):
        w = pretzel(3, 3, -3, -2)
        assert w.crossing_count() == 11
        assert w.component_count() == 1

    def test_component_rule(self):
        # One component iff exactly one even tassel, or no even tassel and
        # an odd number of tassels (all-odd with even n gives 2 components,
        # e.g. P(1,1) is the Hopf link).
        rng = random.Random(5)
        for _ in range(150):
            n = rng.randrange(1, 7)
            params = [rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
                      for _ in range(n)]
            w = pretzel(*params)
            evens = sum(1 for p in params if p % 2 == 0)
            knot = evens == 1 or (evens == 0 and n % 2 == 1)
            assert (w.component_count() == 1) == knot, params
            if evens >= 2:
                assert w.component_count() == evens, params

    def test_mirror_params_give_mirror_word(self):
        assert mirror(pretzel(3, -2)) == pretzel(-3, 2)

    def test_width_stays_small(self):
        assert pretzel(3, 3, -3, -2).max_width() == 6
        assert pretzel(5, 5, 5, 5, 5, 5).max_width() == 6


class TestMirror:
    def test_involution(self):
        rng = random.Random(1)
        for _ in range(30):
            w = random_closed_word(rng)
            assert mirror(mirror(w)) == w

    def test_flips_writhe(self):
        w = braid_closure(BraidWord(2, (1, 1, 1)))
        assert mirror(w).writhe() == -3


class TestSliceToPd:
    def test_unknot(self):
        pd = slice_to_pd(unknot())
        assert pd.crossing_count() == 0
        assert pd.component_count() == 1

    def test_trefoil(self):
        w = braid_closure(BraidWord(2, (1, 1, 1)))
        pd = slice_to_pd(w)
        assert pd.crossing_count() == 3
        assert pd.writhe() == 3
        assert pd.component_count() == 1
        # one component visiting 3 crossings twice each
        assert len(pd.components[0]) == 6

    def test_hopf(self):
        pd = slice_to_pd(hopf_link())
        assert pd.crossing_count() == 2
        assert pd.component_count() == 2

    def test_round_trip_thousand_random_words(self):
        rng = random.Random(42)
        for _ in range(1000):
            w = random_closed_word(rng, max_crossings=20)
            pd = slice_to_pd(w)
            assert pd.crossing_count() == w.crossing_count()
            assert pd.writhe() == w.writhe()
            assert pd.component_count() == w.component_count()
            assert pd.labels == w.labels
            pd.validate()
            # each component's traversal length is twice its passage count
            total = sum(len(c) for c in pd.components)
            assert total == 2 * pd.crossing_count()

    def test_rejects_open_input(self):
        w = SliceWord(((XP, 0),), arity_in=2, arity_out=2)
        with pytest.raises(DiagramError):
            slice_to_pd(w)


class TestReverseComponent:
    def test_involution_on_geometry(self):
        rng = random.Random(9)
        for _ in range(40):
            w = random_closed_word(rng)
            c = rng.randrange(w.component_count())
            back = reverse_component(reverse_component(w, c), c)
            assert back.events == w.events
            assert back.orientations == w.orientations

    def test_preserves_left_over(self):
        rng = random.Random(10)
        for _ in range(40):
            w = random_closed_word(rng)
            c = rng.randrange(w.component_count())
            rev = reverse_component(w, c)
            for t, (k, _) in enumerate(w.events):
                if k in (XP, XN):
                    assert w.crossing_left_over(t) == rev.crossing_left_over(t)


class TestConnectedSum:
    def test_component_count(self):
        a = braid_closure(BraidWord(2, (1, 1, 1)))
        b = hopf_link()
        s = connected_sum(a, b, 0, 1)
        assert s.component_count() == 2
        assert s.crossing_count() >= 5

    def test_crossing_counts_add_plus_routing(self):
        a = pretzel(3)
        b = pretzel(1, 1, 1)
        s = connected_sum(a, b, 0, 0)
        assert s.component_count() == 1
        # routing conveyors may add crossings, but the originals survive
        assert s.crossing_count() >= a.crossing_count() + b.crossing_count()

    def test_index_errors(self):
        with pytest.raises(DiagramError):
            connected_sum(unknot(), unknot(), 1, 0)


class TestTheta:
    def test_trivial(self):
        t = trivial_theta()
        assert t.permutation == (0, 1, 2)
        cycles = theta_cycles(t)
        assert set(cycles) == {"c0", "c1", "c2"}
        for w in cycles.values():
            assert w.component_count() == 1
            assert w.crossing_count() == 0

    def test_full_twist_cycles(self):
        # sigma_1^2: full twist on edges e1, e2
        t = theta_from_braid(BraidWord(3, (1, 1)))
        cycles = theta_cycles(t)
        assert cycles["c1"].crossing_count() == 2
        assert abs(cycles["c1"].writhe()) == 2
        assert cycles["c0"].crossing_count() == 0
        assert cycles["c2"].crossing_count() == 0

    def test_vertex_sum_unit(self):
        t = theta_from_braid(BraidWord(3, (1, -2, 1)))
        s = vertex_sum(trivial_theta(), t)
        assert s.tangle.events == t.tangle.events

    def test_vertex_sum_requires_identity_permutation(self):
        t1 = theta_from_braid(BraidWord(3, (1,)))   # permutation (1 0 2)
        with pytest.raises(DiagramError):
            vertex_sum(t1, trivial_theta())

    def test_vertex_sum_associative_data_level(self):
        a = theta_from_braid(BraidWord(3, (1, 1)))
        b = theta_from_braid(BraidWord(3, (2, 2)))
        c = theta_from_braid(BraidWord(3, (1, 1, 2, 2)))
        left = vertex_sum(vertex_sum(a, b), c)
        right = vertex_sum(a, vertex_sum(b, c))
        assert left.tangle.events == right.tangle.events

    def test_cycles_of_vertex_sum(self):
        a = theta_from_braid(BraidWord(3, (1, 1)))
        b = theta_from_braid(BraidWord(3, (2, 2)))
        s = vertex_sum(a, b)
        cyc = theta_cycles(s)
        assert cyc["c1"].crossing_count() == 2
        assert cyc["c2"].crossing_count() == 2

    def test_random_theta_counts(self):
        rng = random.Random(2)
        for _ in range(50):
            t = random_theta(rng)
            assert t.crossing_count() <= 12
            theta_cycles(t)


class TestIsotopies:
    def test_isotopies_preserve_counts(self):
        rng = random.Random(3)
        for _ in range(60):
            w = random_closed_word(rng, max_crossings=8)
            w2 = random_isotopies(w, rng, steps=6)
            assert w2.component_count() == w.component_count()
            assert w2.writhe() == w.writhe()   # regular isotopy only

    def test_r1_changes_writhe_only(self):
        rng = random.Random(4)
        for _ in range(40):
            w = random_knot_word(rng, max_crossings=5)
            w2 = random_isotopies(w, rng, steps=5, allow_r1=True)
            assert w2.component_count() == w.component_count()
