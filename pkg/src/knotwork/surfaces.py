"""
Disk/band surfaces of spatial theta-curves and their Seifert pairings.

A ribbon surface is presented by its core theta tangle plus an integer
number of full twists and an optional half-twist flag per edge band.  The
Seifert pairing of two core cycles is computed honestly: the second cycle
is pushed off along the surface (its parallel hugs the cycle's own face,
and runs over the vertex disks), the two curves are assembled into one
2-component diagram by selective cabling, and the linking number is read
off by signed crossing count.

The canonical surface solves the three-variable integer twist system so
the pairing matrix vanishes; for theta-curves all cycles pairwise
intersect and meet the outermost cycle, so the prescribed pairing is the
zero form and the triangular system (t1 + t2, t2 + t3, t2) always has
exactly one integer solution.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .classical import linking_number
from .diagrams import (
    CAP, CUP, XN, XP, DiagramError, LinkDiagram, SliceWord, ThetaTangle,
    left_over_intents, resolve_intents, slice_to_pd,
)
from .moves import cable_events

__all__ = [
    "RibbonSurface", "SeifertMatrix", "SurfaceError",
    "target_pairing", "blackboard_surface", "seifert_pairing",
    "canonical_surface", "modify_surface", "boundary_link",
]


class SurfaceError(DiagramError):
    """Invalid surface data or an operation out of contract."""


# Cycles in the fixed planar convention: c1 and c2 bound faces, c0 is
# outermost; values are the edge indices each cycle traverses.
CYCLE_EDGES = {"c0": (0, 2), "c1": (0, 1), "c2": (1, 2)}
BOUNDED_CYCLES = ("c1", "c2")


@dataclass(frozen=True)
class RibbonSurface:
    """A disk/band surface: theta core, twists, and half-twist flags.

    ``twists[i]`` counts full right-handed twists of edge e_{i+1}'s band;
    ``halves[i]`` in {-1, 0, 1} adds one extra half twist.  The surface is
    orientable exactly when every half flag vanishes; the theta-curve is a
    deformation retract by construction.
    """

    core: ThetaTangle
    twists: tuple[int, int, int] = (0, 0, 0)
    halves: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        if len(self.twists) != 3 or len(self.halves) != 3:
            raise SurfaceError("theta surfaces carry three bands")
        if any(h not in (-1, 0, 1) for h in self.halves):
            raise SurfaceError("half-twist flags lie in {-1, 0, 1}")
        # Position-wise vertex disks only give the 3-holed sphere when the
        # edges arrive in planar order, so cores are normalized up front.
        object.__setattr__(self, "core",
                           _identity_permutation_tangle(self.core))

    def is_orientable(self) -> bool:
        return all(h == 0 for h in self.halves)


@dataclass(frozen=True)
class SeifertMatrix:
    """Pairing of the bounded cycles (c1, c2), integer entries."""

    entries: tuple[tuple[int, int], tuple[int, int]]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_symmetric(self) -> bool:
        return self.entries[0][1] == self.entries[1][0]


def target_pairing(n_cycles: int, intersections, linking) -> list[list[int]]:
    """The prescribed canonical pairing for general cycle data.

    ``n_cycles`` counts the bounded cycles c_1..c_n (the outermost cycle
    is index 0); ``intersections`` is a set of frozensets {i, j} of cycle
    indices (0..n) that intersect; ``linking`` maps frozenset pairs of
    disjoint cycles to their linking numbers.  Four cases: diagonal
    entries are minus the sum of linkings with all disjoint cycles
    (including the outermost) when the cycle misses the outermost one,
    else 0; off-diagonal entries vanish for intersecting cycles and equal
    the linking number for disjoint ones.
    """
    def lk(i, j):
        key = frozenset((i, j))
        if key not in linking:
            raise SurfaceError(f"missing linking number for disjoint pair {set(key)}")
        return linking[key]

    out = [[0] * n_cycles for _ in range(n_cycles)]
    for i in range(1, n_cycles + 1):
        for j in range(1, n_cycles + 1):
            meets = frozenset((i, j)) in intersections
            if i == j:
                if frozenset((i, 0)) in intersections:
                    out[i - 1][j - 1] = 0
                else:
                    total = lk(i, 0)
                    for k in range(1, n_cycles + 1):
                        if k != i and frozenset((i, k)) not in intersections:
                            total += lk(i, k)
                    out[i - 1][j - 1] = -total
            elif meets:
                out[i - 1][j - 1] = 0
            else:
                out[i - 1][j - 1] = lk(i, j)
    return out


def _identity_permutation_tangle(theta: ThetaTangle) -> ThetaTangle:
    """An equivalent presentation of the same theta-curve whose endpoint
    permutation is the identity.

    Thickening a tangle closure position-wise only produces the 3-holed
    sphere (the regular neighborhood of the planar theta) when the edges
    arrive at the top vertex in planar order; otherwise the ribbon
    structure picks up genus.  Rotating the top vertex ball carries ends
    around the back (under the other strands), which sorts the
    permutation without moving the spatial curve.
    """
    perm = theta.permutation
    if perm == (0, 1, 2):
        return theta
    word = theta.tangle
    events = list(word.events)
    intents = dict(left_over_intents(word))
    # order[p] = edge whose strand currently sits at top position p
    order = [perm.index(p) for p in range(3)]
    while order != [0, 1, 2]:
        for p in range(2):
            if order[p] > order[p + 1]:
                # the left end rotates around the back (under) to the right
                intents[len(events)] = False
                events.append((XP, p))
                order[p], order[p + 1] = order[p + 1], order[p]
                break
    resolved = resolve_intents(events, 3, 3, intents)
    out = ThetaTangle(SliceWord(resolved, 3, 3), edge_labels=theta.edge_labels)
    if out.permutation != (0, 1, 2):
        raise SurfaceError("permutation normalization failed")
    return out


def blackboard_surface(theta: ThetaTangle) -> RibbonSurface:
    """Ribbon thickening of the diagram with no extra twists."""
    return RibbonSurface(core=theta)


# ---------------------------------------------------------------------------
# Pushoff diagrams
# ---------------------------------------------------------------------------


def _edge_components(word: SliceWord) -> list[int]:
    tr = word.trace
    return [tr.seg_component[s] for s in tr.bottom_segments]


def _pairing_diagram(surface: RibbonSurface, ci: str, cj: str) -> SliceWord:
    """Two-curve diagram: core cycle ``ci`` plus the surface pushoff of
    ``cj``; their linking number is the Seifert pairing entry.

    Copy layout at the bottom vertex follows the face rule: the pushoff
    copy of each of cj's bands hugs cj's face, so the vertex wiring is
    crossingless at the bottom; top-vertex interleavings forced by the
    tangle's endpoint permutation are resolved with the pushoff passing
    over the surface.
    """
    word = surface.core.tangle
    edges_i = set(CYCLE_EDGES[ci])
    edges_j = set(CYCLE_EDGES[cj])
    comp_of_edge = _edge_components(word)

    mults = {comp_of_edge[e]: 0 for e in range(3)}
    for e in edges_i:
        mults[comp_of_edge[e]] += 1
    for e in edges_j:
        mults[comp_of_edge[e]] += 1

    ev, intents, _ = cable_events(word, mults)

    # Bottom slot layout and copy roles per edge, in edge order.
    # For a doubled edge the A-copy (core ci) or B-copy (pushoff cj)
    # placement follows the face rule; "face side" of cj is the side
    # toward cj's bounded face: right of its left edge, left of its
    # right edge.  c0's face is the outside: left of e1, right of e3.
    slots: list[tuple[str, int]] = []   # (curve, edge) per cabled slot
    for e in range(3):
        in_i = e in edges_i
        in_j = e in edges_j
        if in_i and in_j:
            side = _pushoff_side(cj, e)
            pair = [("B", e), ("A", e)] if side == "left" else [("A", e), ("B", e)]
            slots.extend(pair)
        elif in_i:
            slots.append(("A", e))
        elif in_j:
            slots.append(("B", e))

    # Bottom vertex wiring: A joins its two slots, B likewise; the face
    # rule makes the two pairs nested or adjacent, so plain nested cups
    # realize them.
    a_pos = [k for k, (c, _) in enumerate(slots) if c == "A"]
    b_pos = [k for k, (c, _) in enumerate(slots) if c == "B"]
    events: list[tuple[str, int]] = []
    pre_intents: dict[int, bool] = {}
    if a_pos[1] == a_pos[0] + 1 and b_pos[1] == b_pos[0] + 1:
        first, second = (a_pos, b_pos) if a_pos[0] < b_pos[0] else (b_pos, a_pos)
        events.append((CUP, first[0]))
        events.append((CUP, second[0]))
    elif a_pos == [0, 3] and b_pos == [1, 2]:
        events.append((CUP, 0))
        events.append((CUP, 1))
    elif b_pos == [0, 3] and a_pos == [1, 2]:
        events.append((CUP, 0))
        events.append((CUP, 1))
    else:
        raise SurfaceError("bottom vertex wiring is not planar")

    # Band twists on doubled bands: 2t full-twist crossings between the
    # copies (cj-only bands twist invisibly for this pairing).
    all_events = list(events)
    all_intents: dict[int, bool] = dict(pre_intents)
    for e in range(3):
        if e in edges_i and e in edges_j:
            k = next(k for k, (_, ee) in enumerate(slots) if ee == e)
            t = surface.twists[e]
            for _ in range(2 * abs(t)):
                all_intents[len(all_events)] = t > 0
                all_events.append((XP, k))

    # The cabled tangle.
    offset = len(all_events)
    for t, v in intents.items():
        all_intents[offset + t] = v
    all_events.extend(ev)

    # Top wiring: locate the four strand tops and join A with A, B with
    # B; any forced interleaving is resolved by pushoff-over crossings.
    probe = SliceWord(resolve_intents(all_events, 0, 4, all_intents), 0, 4)
    tr = probe.trace
    slot_segments: list[int] = []
    for t, (kind, pos) in enumerate(probe.events[:2]):
        a, b = tr.event_segments[t]
        slot_segments[pos:pos] = [a, b]
    comp_roles: dict[int, str] = {}
    for k, (curve, _) in enumerate(slots):
        comp_roles[tr.seg_component[slot_segments[k]]] = curve
    top_roles = [comp_roles[tr.seg_component[s]] for s in tr.top_segments]

    tail: list[tuple[str, int]] = []
    tail_intents: dict[int, bool] = {}
    roles = list(top_roles)
    a_idx = [k for k, r in enumerate(roles) if r == "A"]
    # walk A's right end leftward next to its left end, crossing B over
    p = a_idx[1]
    while p > a_idx[0] + 1:
        tail_intents[len(tail)] = True    # obstacle B on the left: B over
        tail.append((XP, p - 1))
        roles[p - 1], roles[p] = roles[p], roles[p - 1]
        p -= 1
    tail.append((CAP, a_idx[0]))
    del roles[a_idx[0]:a_idx[0] + 2]
    tail.append((CAP, 0))

    offset = len(all_events)
    for t, v in tail_intents.items():
        all_intents[offset + t] = v
    all_events.extend(tail)

    final = SliceWord(resolve_intents(all_events, 0, 0, all_intents))
    if final.component_count() != 2:
        raise SurfaceError("pushoff construction produced wrong components")

    # Fix cycle orientations consistently: each curve runs upward through
    # its cycle's lowest-index edge, so <x, y> and <y, x> use the same
    # underlying orientations and the pairing is well-defined.
    ftr = final.trace
    fslots: list[int] = []
    for t, (kind, pos) in enumerate(final.events[:2]):
        a, b = ftr.event_segments[t]
        fslots[pos:pos] = [a, b]
    from .diagrams import reverse_component
    for curve, lo_edge in (("A", min(edges_i)), ("B", min(edges_j))):
        k = next(k for k, (c, e) in enumerate(slots)
                 if c == curve and e == lo_edge)
        seg = fslots[k]
        comp = ftr.seg_component[seg]
        if ftr.seg_dir[seg] * final.orientations[comp] != 1:
            final = reverse_component(final, comp)
    return final


def _pushoff_side(cycle: str, edge: int) -> str:
    """Side of the band on which ``cycle``'s pushoff runs along ``edge``."""
    lo, hi = CYCLE_EDGES[cycle]
    if cycle == "c0":
        # outside face: left of e1, right of e3
        return "left" if edge == lo else "right"
    return "right" if edge == lo else "left"


def seifert_pairing(surface: RibbonSurface) -> SeifertMatrix:
    """Pairing <c_i, c_j> = lk(c_i, pushoff of c_j) on the bounded cycles,
    computed from explicit pushoff diagrams by signed crossing count."""
    if not surface.is_orientable():
        raise SurfaceError("Seifert pairing requires an orientable surface")
    vals = {}
    for ci in BOUNDED_CYCLES:
        for cj in BOUNDED_CYCLES:
            diagram = _pairing_diagram(surface, ci, cj)
            pd = slice_to_pd(diagram)
            vals[(ci, cj)] = linking_number(pd, 0, 1)
    return SeifertMatrix(entries=(
        (vals[("c1", "c1")], vals[("c1", "c2")]),
        (vals[("c2", "c1")], vals[("c2", "c2")]),
    ))


def canonical_surface(theta: ThetaTangle) -> RibbonSurface:
    """The disk/band surface whose Seifert pairing is the zero form.

    The three independent pairing entries respond linearly and
    triangularly to the band twists: e1 moves only (c1,c1), e3 only
    (c2,c2), and e2 moves everything by ±1 per twist (the sign reflects
    the relative direction of the face cycles along the shared band, so
    it is measured rather than assumed).  The integer system therefore
    has exactly one solution, which is found and then verified by
    recomputing the pairing.
    """
    base = blackboard_surface(theta)
    w = seifert_pairing(base)
    eps = seifert_pairing(RibbonSurface(theta, (0, 1, 0)))[(0, 1)] - w[(0, 1)]
    if abs(eps) != 1:
        raise SurfaceError("unexpected off-diagonal twist response")
    t2 = -w[(0, 1)] * eps
    t1 = -w[(0, 0)] - t2
    t3 = -w[(1, 1)] - t2
    out = RibbonSurface(core=theta, twists=(t1, t2, t3))
    check = seifert_pairing(out)
    if not check.is_zero():
        raise SurfaceError(
            f"twist correction failed: residual pairing {check.entries}")
    return out


def modify_surface(surface: RibbonSurface, x, y) -> RibbonSurface:
    """The twisted variant: add x_i full twists and y_i half twists to
    each band.  Accumulated half twists carry into full twists so flags
    stay in {-1, 0, 1}; deterministic in (surface, x, y)."""
    if len(x) != 3 or len(y) != 3:
        raise SurfaceError("theta surfaces carry three bands")
    if any(abs(v) > 1 for v in y):
        raise SurfaceError("half-twist increments lie in {-1, 0, 1}")
    twists = []
    halves = []
    for t0, h0, xi, yi in zip(surface.twists, surface.halves, x, y):
        h = h0 + yi
        t = t0 + xi
        if h == 2:
            t, h = t + 1, 0
        elif h == -2:
            t, h = t - 1, 0
        twists.append(t)
        halves.append(h)
    return RibbonSurface(core=surface.core, twists=tuple(twists),
                         halves=tuple(halves))


def boundary_link(surface: RibbonSurface) -> LinkDiagram:
    """The full boundary of the surface as an ordered, oriented, labeled
    diagram (the fixed planar convention labels the outer boundary 1 and
    the two face boundaries 2 and 3 for orientable surfaces)."""
    return slice_to_pd(boundary_word(surface))


def boundary_word(surface: RibbonSurface) -> SliceWord:
    """Boundary link as a closed slice word: every band doubled with its
    twist crossings, both vertex disks closed by the planar pattern."""
    word = surface.core.tangle
    comp_of_edge = _edge_components(word)
    mults = {comp_of_edge[e]: 2 for e in range(3)}
    ev, intents, _ = cable_events(word, mults)

    events: list[tuple[str, int]] = [(CUP, 0), (CUP, 1), (CUP, 3)]
    all_intents: dict[int, bool] = {}
    for e in range(3):
        n = 2 * abs(surface.twists[e]) + abs(surface.halves[e])
        positive = (surface.twists[e] > 0
                    or (surface.twists[e] == 0 and surface.halves[e] > 0))
        for _ in range(n):
            all_intents[len(events)] = positive
            events.append((XP, 2 * e))

    offset = len(events)
    for t, v in intents.items():
        all_intents[offset + t] = v
    events.extend(ev)
    events.extend([(CAP, 1), (CAP, 1), (CAP, 0)])

    out = SliceWord(resolve_intents(events, 0, 0, all_intents))
    labels = [str(i + 1) for i in range(out.component_count())]
    return out.relabel(labels)
