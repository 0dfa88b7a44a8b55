import random

import pytest

from knotwork.diagrams import (
    BraidWord, braid_closure, connected_sum, hopf_link, mirror, pretzel,
    random_isotopies, random_knot_word, random_closed_word, slice_to_pd,
    unknot, unknot_with_curl,
)
from knotwork.classical import (
    SizeLimitError, conway_a2, gauss_diagram, jones_polynomial,
    kauffman_bracket, linking_number, linking_number_oracle, v2, v3,
    v3_from_jones,
)
from knotwork.polynomials import LaurentPoly


def trefoil():
    return braid_closure(BraidWord(2, (1, 1, 1)))


def figure8():
    return braid_closure(BraidWord(3, (1, -2, 1, -2)))


class TestLinkingNumber:
    def test_unlink(self):
        two = random_closed_word(random.Random(0), max_crossings=0)
        # build an honest 0-crossing 2-component diagram
        from knotwork.diagrams import SliceWord, CUP, CAP
        w = SliceWord(((CUP, 0), (CAP, 0), (CUP, 0), (CAP, 0)))
        assert linking_number(slice_to_pd(w), 0, 1) == 0

    def test_positive_hopf(self):
        pd = slice_to_pd(hopf_link(1))
        assert linking_number(pd, 0, 1) == 1
        assert linking_number(pd, 1, 0) == 1

    def test_negative_hopf(self):
        pd = slice_to_pd(hopf_link(-1))
        assert linking_number(pd, 0, 1) == -1

    def test_index_errors(self):
        pd = slice_to_pd(hopf_link())
        with pytest.raises(Exception):
            linking_number(pd, 0, 0)
        with pytest.raises(Exception):
            linking_number(pd, 0, 5)

    def test_against_traversal_oracle(self):
        rng = random.Random(21)
        found = 0
        while found < 60:
            w = random_closed_word(rng, max_crossings=10)
            if w.component_count() < 2:
                continue
            found += 1
            pd = slice_to_pd(w)
            for i in range(pd.component_count()):
                for j in range(pd.component_count()):
                    if i != j:
                        assert linking_number(pd, i, j) == \
                            linking_number_oracle(pd, i, j)


class TestBracket:
    def test_unknot_unit(self):
        assert kauffman_bracket(unknot()).is_one()

    def test_jones_catalog(self):
        # internal t = s^2; right trefoil V = -t^4 + t^3 + t
        assert jones_polynomial(trefoil()) == LaurentPoly.from_q({1: 1, 3: 1, 4: -1})
        assert jones_polynomial(mirror(trefoil())) == \
            LaurentPoly.from_q({-1: 1, -3: 1, -4: -1})
        assert jones_polynomial(figure8()) == \
            LaurentPoly.from_q({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})

    def test_torus_pretzel_identities(self):
        # P(-2,3,3) = T(3,4) and P(-2,3,5) = T(3,5)
        t34 = jones_polynomial(braid_closure(BraidWord(3, (1, 2) * 4)))
        t35 = jones_polynomial(braid_closure(BraidWord(3, (1, 2) * 5)))
        p233 = jones_polynomial(pretzel(-2, 3, 3))
        p235 = jones_polynomial(pretzel(-2, 3, 5))
        assert p233 in (t34, t34.invert_s())
        assert p235 in (t35, t35.invert_s())

    def test_single_tassel_pretzels_trivial(self):
        for p in range(-6, 7):
            if p == 0:
                continue
            assert jones_polynomial(pretzel(p)).is_one()

    def test_disjoint_union_multiplies_by_loop(self):
        from knotwork.diagrams import SliceWord, CUP, CAP
        t = trefoil()
        split = SliceWord(t.events + ((CUP, 0), (CAP, 0)))
        delta = LaurentPoly({2: -1, -2: -1})
        assert kauffman_bracket(split) == kauffman_bracket(t) * delta

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            kauffman_bracket(pretzel(5, 5, 5), max_crossings=10)

    def test_regular_isotopy_invariance(self):
        rng = random.Random(5)
        for _ in range(15):
            w = random_closed_word(rng, max_crossings=6)
            w2 = random_isotopies(w, rng, steps=5)
            assert kauffman_bracket(w) == kauffman_bracket(w2)

    def test_mirror_inverts_variable(self):
        rng = random.Random(6)
        for _ in range(10):
            w = random_knot_word(rng, max_crossings=6)
            assert kauffman_bracket(mirror(w)) == kauffman_bracket(w).invert_s()


class TestConway:
    def test_values(self):
        assert conway_a2(unknot()) == 0
        assert conway_a2(trefoil()) == 1
        assert conway_a2(mirror(trefoil())) == 1
        assert conway_a2(figure8()) == -1

    def test_mutants_share_a2(self):
        assert conway_a2(pretzel(3, 3, -3, -2)) == conway_a2(pretzel(3, -3, 3, -2))

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            conway_a2(pretzel(5, 5, 5), max_crossings=10)

    def test_additive_under_connected_sum(self):
        rng = random.Random(31)
        for _ in range(8):
            a = random_knot_word(rng, max_crossings=5)
            b = random_knot_word(rng, max_crossings=5)
            s = connected_sum(a, b)
            if s.crossing_count() <= 12:
                assert conway_a2(s) == conway_a2(a) + conway_a2(b)


class TestV2V3:
    def test_unknot_zero(self):
        g = gauss_diagram(unknot_with_curl())
        assert v2(g) == 0
        assert v3(g) == 0

    def test_v2_equals_a2_on_fixtures(self):
        rng = random.Random(8)
        fixtures = [trefoil(), figure8(), pretzel(1, 1, 1), pretzel(3, -2),
                    pretzel(3, 3, -3, -2), pretzel(3, -3, 3, -2)]
        for _ in range(40):
            fixtures.append(random_knot_word(rng, max_crossings=10))
        for k in fixtures:
            assert v2(gauss_diagram(k)) == conway_a2(k), k.events

    def test_v3_matches_jones_oracle(self):
        rng = random.Random(9)
        fixtures = [trefoil(), figure8(), pretzel(-2, 3, 3)]
        for _ in range(25):
            fixtures.append(random_knot_word(rng, max_crossings=8))
        for k in fixtures:
            assert v3(gauss_diagram(k)) == v3_from_jones(k)

    def test_v3_sign_convention(self):
        # right-handed trefoil (positive braid closure) has v3 = +1
        assert v3(gauss_diagram(trefoil())) == 1
        assert v3(gauss_diagram(mirror(trefoil()))) == -1

    def test_mirror_behavior(self):
        rng = random.Random(10)
        for _ in range(20):
            k = random_knot_word(rng, max_crossings=8)
            g, gm = gauss_diagram(k), gauss_diagram(mirror(k))
            assert v2(g) == v2(gm)
            assert v3(g) == -v3(gm)

    def test_connected_sum_additivity(self):
        rng = random.Random(11)
        for _ in range(10):
            a = random_knot_word(rng, max_crossings=5)
            b = random_knot_word(rng, max_crossings=5)
            s = connected_sum(a, b)
            assert v2(gauss_diagram(s)) == v2(gauss_diagram(a)) + v2(gauss_diagram(b))
            assert v3(gauss_diagram(s)) == v3(gauss_diagram(a)) + v3(gauss_diagram(b))
            assert v3(gauss_diagram(connected_sum(a, mirror(a)))) == 0

    def test_reidemeister_invariance(self):
        rng = random.Random(12)
        for _ in range(20):
            k = random_knot_word(rng, max_crossings=6)
            k2 = random_isotopies(k, rng, steps=6, allow_r1=True)
            assert v2(gauss_diagram(k)) == v2(gauss_diagram(k2))
            assert v3(gauss_diagram(k)) == v3(gauss_diagram(k2))

    def test_crossing_change_witness(self):
        # a crossing change that changes v2 exists (order-1 moves do not
        # preserve order-2 invariants)
        from knotwork.diagrams import XP, XN
        t = trefoil()
        events = list(t.events)
        i = next(idx for idx, (k, _) in enumerate(events) if k in (XP, XN))
        events[i] = (XN, events[i][1])
        from knotwork.diagrams import SliceWord
        switched = SliceWord(tuple(events))
        assert v2(gauss_diagram(t)) != v2(gauss_diagram(switched))


class TestSliceRewriteInvariance:
    """Any two words related by the slice rewrites evaluate identically
    under every invariant in this module."""

    def test_all_invariants(self):
        rng = random.Random(13)
        for _ in range(10):
            k = random_knot_word(rng, max_crossings=5)
            k2 = random_isotopies(k, rng, steps=6, allow_r1=True)
            assert jones_polynomial(k, max_crossings=20) == \
                jones_polynomial(k2, max_crossings=20)
            assert conway_a2(k, max_crossings=20) == \
                conway_a2(k2, max_crossings=20)
            g1, g2 = gauss_diagram(k), gauss_diagram(k2)
            assert (v2(g1), v3(g1)) == (v2(g2), v3(g2))
