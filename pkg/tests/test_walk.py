from __future__ import annotations

import pytest

from saw_lab.core.errors import WalkError
from saw_lab.core.lattice import Step
from saw_lab.core.walk import (
    Walk,
    WalkFlags,
    avoids,
    classify,
    closes_ext,
    concat,
    cyclic_shift,
    displacement,
    edge_swap_at_z_renewal,
    hang_time,
    is_self_avoiding,
    lateral_orbit,
    polygon_key,
    reflect_walk,
    renewal_report,
    simple_unfold,
    split_at_hang,
    unfold,
)
from saw_lab.parser.walk_text import parse_walk


class TestWalkValue:
    def test_vertices(self, square):
        assert square.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
        assert square.n == 3
        assert square.heights == (0, 1, 1, 0)

    def test_from_vertices_round_trip(self, square):
        assert Walk.from_vertices(square.vertices) == square

    def test_from_vertices_rejects_jumps(self):
        with pytest.raises(ValueError):
            Walk.from_vertices([(0, 0), (2, 0)])

    def test_translate_and_shape(self, square):
        moved = square.translate((5, -2))
        assert moved.origin == (5, -2)
        assert moved != square
        assert moved.shape_equal(square)
        assert moved.at_origin() == square

    def test_segment(self, square):
        seg = square.segment(1, 3)
        assert seg.origin == (1, 0)
        assert seg.vertices == ((1, 0), (1, 1), (0, 1))
        with pytest.raises(WalkError):
            square.segment(2, 5)

    def test_reverse(self, square):
        back = square.reverse()
        assert back.vertices == tuple(reversed(square.vertices))
        assert back.reverse() == square

    def test_rejects_axis_outside_dimension(self):
        with pytest.raises(WalkError):
            Walk(2, (0, 0), (Step(3, 1),))

    def test_concat(self, walk):
        assert concat(walk("+1"), walk("+2,+2")) == walk("+1,+2,+2")

    def test_displacement(self, square):
        assert displacement(square.translate((4, 4))) == (0, 1)


class TestClassify:
    def test_square_is_closing_not_halfspace(self, square):
        flags = classify(square)
        assert flags.self_avoiding and flags.closing
        assert not flags.halfspace and not flags.bridge

    def test_bridge(self, walk):
        flags = classify(walk("+1,+2,+1"))
        assert flags.bridge and flags.halfspace and not flags.closing

    def test_halfspace_not_bridge(self, walk):
        flags = classify(walk("+1,+1,+2,-1"))
        assert flags.halfspace and not flags.bridge

    def test_flat_start_is_neither(self, walk):
        flags = classify(walk("+2,+1"))
        assert not flags.halfspace and not flags.bridge

    def test_self_intersection(self, walk):
        w = walk("+1,+2,-1,-2")
        assert not is_self_avoiding(w)
        assert classify(w) == WalkFlags(False, False, False, False)


class TestHangAndUnfold:
    def test_hang_time(self, square):
        assert hang_time(square) == 2

    def test_hang_requires_self_avoiding(self, walk):
        with pytest.raises(WalkError):
            hang_time(walk("+1,-1"))

    def test_hang_is_translation_invariant(self, square):
        assert hang_time(square.translate((-3, 7))) == 2

    def test_split_at_hang(self, square):
        first, second = split_at_hang(square)
        assert first.vertices == ((0, 0), (1, 0), (1, 1))
        assert second.vertices == ((1, 1), (0, 1))

    def test_unfold(self, square, walk):
        unfolded = unfold(square)
        assert unfolded == walk("+1,+2,+1,+1")
        assert unfolded.n == square.n + 1
        assert is_self_avoiding(unfolded)

    def test_unfold_of_bridge_adds_top_edge(self, walk):
        w = walk("+1,+1")
        assert unfold(w) == walk("+1,+1,+1")

    def test_simple_unfold(self, square, walk):
        assert simple_unfold(square, 1) == walk("+1,+2,+1")
        assert simple_unfold(square, 2) == walk("+1,+2,+1")
        with pytest.raises(WalkError):
            simple_unfold(square, 0)

    def test_reflect_walk(self, walk):
        w = walk("+1,+2")
        assert reflect_walk((0, 0), w).vertices == ((0, 0), (-1, 0), (-1, 1))


class TestRenewals:
    def test_straight_walk_renews_everywhere(self, walk):
        report = renewal_report(walk("+1,+1"))
        assert report.renewal_times == (0, 1, 2)
        assert report.z_renewal_times == ()

    def test_z_renewal(self, walk):
        report = renewal_report(walk("+1,+2,+1"))
        assert report.z_renewal_times == (0,)

    def test_edge_swap(self, walk):
        swapped = edge_swap_at_z_renewal(walk("+1,+2,+1"), 0, 2, -1)
        assert swapped == walk("+1,-2,+1")
        with pytest.raises(WalkError):
            edge_swap_at_z_renewal(walk("+1,+2,+1"), 1, 2, -1)

    def test_lateral_orbit(self, walk):
        w = walk("+1,+2,+1")
        orbit = lateral_orbit(w, 0)
        assert len(orbit) == 2
        assert w in orbit
        assert walk("+1,-2,+1") in orbit

    def test_lateral_orbit_in_three_dimensions(self):
        w = parse_walk("+1,+3,+1", dim=3)
        orbit = lateral_orbit(w, 0)
        assert len(orbit) == 4
        assert all(classify(o).bridge for o in orbit)
        assert len(set(orbit)) == 4


class TestPolygons:
    def test_cyclic_shift(self, square, walk):
        shifted = cyclic_shift(square, 1)
        assert shifted.origin == (1, 0)
        assert shifted.at_origin() == walk("+2,-1,-2")
        assert classify(shifted).closing

    def test_cyclic_shift_requires_closing(self, walk):
        with pytest.raises(WalkError):
            cyclic_shift(walk("+1,+1"), 1)

    def test_polygon_key_is_shift_invariant(self, square):
        keys = {polygon_key(cyclic_shift(square, s)) for s in range(square.n + 1)}
        assert keys == {polygon_key(square)}

    def test_polygon_key_separates_orientations(self, square):
        assert polygon_key(square) != polygon_key(square.reverse())


class TestExtensions:
    def test_avoids_and_closes(self, walk):
        chi = walk("+1,+2")
        g = Walk.from_codes(2, [1], start=chi.endpoint)
        assert avoids(g, chi)
        assert closes_ext(g, chi)

    def test_extension_must_start_at_end(self, walk):
        with pytest.raises(WalkError):
            avoids(walk("-1"), walk("+1,+2"))

    def test_collision(self, walk):
        chi = walk("+1,+2")
        g = Walk.from_codes(2, [3], start=chi.endpoint)
        assert not avoids(g, chi)
