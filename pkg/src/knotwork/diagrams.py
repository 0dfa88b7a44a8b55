"""
Combinatorial presentations of oriented link diagrams and theta-curve tangles.

The canonical evaluable form is the *slice word*: a Morse presentation read
bottom to top as a sequence of elementary events acting on a horizontal
slice of numbered strand positions,

    cup(i)   create two adjacent strands at positions i, i+1
    cap(i)   annihilate the adjacent strands at positions i, i+1
    xp(i)    crossing of strands i, i+1 with positive sign
    xn(i)    crossing of strands i, i+1 with negative sign

Crossing signs are stored relative to the component orientations, exactly
as in the oriented diagram: for slot directions dL, dR (+1 up, -1 down)
and stored sign e, the strand entering from the left passes over iff
``e * dL * dR > 0``.  Composite constructors therefore re-encode signs
whenever strands change orientation context; reversing one component's
orientation flips its crossings with other components
(:func:`reverse_component`).

A planar-diagram (PD) form is derived from slice words for Gauss-diagram
invariants, never used as an evaluation input.  Theta-curves are presented
as 3-strand tangles closed by two trivalent vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CUP", "CAP", "XP", "XN",
    "SliceWord", "LinkDiagram", "Crossing", "ThetaTangle", "BraidWord",
    "TraceResult", "DiagramError",
    "pretzel", "braid_closure", "slice_to_pd", "connected_sum", "mirror",
    "vertex_sum", "theta_cycles", "trivial_theta", "theta_from_braid",
    "reverse_component", "unknot", "unknot_with_curl", "hopf_link",
    "random_closed_word", "random_knot_word", "random_theta",
    "random_isotopies", "parse_braid",
]

CUP, CAP, XP, XN = "cup", "cap", "xp", "xn"


class DiagramError(ValueError):
    """Malformed diagram data or an operation applied out of contract."""


# ---------------------------------------------------------------------------
# Tracing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceResult:
    """Strand-tracing data shared by conversions and evaluators.

    Segments are maximal monotone strand intervals between turning events.
    ``seg_dir[s]`` is the direction (+1 up, -1 down) segment ``s`` has when
    its component's orientation flag is +1; multiply by the flag for the
    oriented direction.  ``event_segments[t]`` is the segment pair an event
    acts on (for cups, the pair it creates).
    """

    components: tuple[tuple[int, ...], ...]
    seg_component: tuple[int, ...]
    seg_dir: tuple[int, ...]
    event_segments: tuple[tuple[int, int], ...]
    widths_before: tuple[int, ...]
    bottom_segments: tuple[int, ...]
    top_segments: tuple[int, ...]
    joins: tuple[tuple[int, int, str], ...]


def _trace(events, arity_in: int, arity_out: int) -> TraceResult:
    seg_counter = arity_in
    slots = list(range(arity_in))
    bottom = tuple(slots)

    joins: list[tuple[int, int, str]] = []
    event_segments: list[tuple[int, int]] = []
    widths_before: list[int] = []

    for t, (kind, pos) in enumerate(events):
        widths_before.append(len(slots))
        if kind == CUP:
            if not 0 <= pos <= len(slots):
                raise DiagramError(f"event {t}: cup({pos}) at width {len(slots)}")
            a, b = seg_counter, seg_counter + 1
            seg_counter += 2
            slots[pos:pos] = [a, b]
            joins.append((a, b, CUP))
            event_segments.append((a, b))
        elif kind == CAP:
            if not 0 <= pos <= len(slots) - 2:
                raise DiagramError(f"event {t}: cap({pos}) at width {len(slots)}")
            a, b = slots[pos], slots[pos + 1]
            joins.append((a, b, CAP))
            event_segments.append((a, b))
            del slots[pos:pos + 2]
        elif kind in (XP, XN):
            if not 0 <= pos <= len(slots) - 2:
                raise DiagramError(f"event {t}: crossing({pos}) at width {len(slots)}")
            a, b = slots[pos], slots[pos + 1]
            event_segments.append((a, b))
            slots[pos], slots[pos + 1] = b, a
        else:
            raise DiagramError(f"event {t}: unknown kind {kind!r}")

    if len(slots) != arity_out:
        raise DiagramError(
            f"word ends with width {len(slots)}, declared arity_out={arity_out}")
    top = tuple(slots)

    parent = list(range(seg_counter))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b, _ in joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    comp_index: dict[int, int] = {}
    comp_segments: list[list[int]] = []
    for s in range(seg_counter):
        r = find(s)
        if r not in comp_index:
            comp_index[r] = len(comp_segments)
            comp_segments.append([])
        comp_segments[comp_index[r]].append(s)
    seg_component = tuple(comp_index[find(s)] for s in range(seg_counter))

    # Directions: a cup or cap joins two ends of one local extremum, so the
    # curve direction flips across every join.  Components are bipartite
    # under this relation; fix the first segment of each component to +1.
    seg_dir = [0] * seg_counter
    adjacency: dict[int, list[int]] = {s: [] for s in range(seg_counter)}
    for a, b, _ in joins:
        adjacency[a].append(b)
        adjacency[b].append(a)
    for comp in comp_segments:
        root = comp[0]
        if seg_dir[root] == 0:
            seg_dir[root] = 1
            stack = [root]
            while stack:
                x = stack.pop()
                for y in adjacency[x]:
                    if seg_dir[y] == 0:
                        seg_dir[y] = -seg_dir[x]
                        stack.append(y)

    return TraceResult(
        components=tuple(tuple(c) for c in comp_segments),
        seg_component=seg_component,
        seg_dir=tuple(seg_dir),
        event_segments=tuple(event_segments),
        widths_before=tuple(widths_before),
        bottom_segments=bottom,
        top_segments=top,
        joins=tuple(joins),
    )


# ---------------------------------------------------------------------------
# Slice words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceWord:
    """An oriented, ordered, labeled diagram in Morse-slice form.

    ``orientations`` holds one ±1 flag per component in canonical order
    (order of first segment creation); ``labels`` parallels it.  Instances
    are immutable; all operations return new values.
    """

    events: tuple[tuple[str, int], ...]
    arity_in: int = 0
    arity_out: int = 0
    orientations: tuple[int, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        events = tuple((k, p) for k, p in self.events)
        object.__setattr__(self, "events", events)
        tr = _trace(events, self.arity_in, self.arity_out)
        n = len(tr.components)
        if not self.orientations:
            object.__setattr__(self, "orientations", (1,) * n)
        elif len(self.orientations) != n:
            raise DiagramError(
                f"{len(self.orientations)} orientation flags for {n} components")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))
        elif len(self.labels) != n:
            raise DiagramError(f"{len(self.labels)} labels for {n} components")
        object.__setattr__(self, "_tr", tr)

    @property
    def trace(self) -> TraceResult:
        return self._tr  # type: ignore[attr-defined]

    def is_closed(self) -> bool:
        return self.arity_in == 0 and self.arity_out == 0

    def component_count(self) -> int:
        return len(self.trace.components)

    def crossing_count(self) -> int:
        return sum(1 for k, _ in self.events if k in (XP, XN))

    def writhe(self) -> int:
        return sum(+1 if k == XP else -1 for k, _ in self.events if k in (XP, XN))

    def max_width(self) -> int:
        w = self.arity_in
        peak = w
        for k, _ in self.events:
            w += 2 if k == CUP else -2 if k == CAP else 0
            peak = max(peak, w)
        return peak

    def relabel(self, labels: Sequence[str]) -> "SliceWord":
        return replace(self, labels=tuple(labels))

    def segment_direction(self, seg: int) -> int:
        tr = self.trace
        return tr.seg_dir[seg] * self.orientations[tr.seg_component[seg]]

    def crossing_dirs(self, t: int) -> tuple[int, int]:
        """Oriented directions (left, right) of the strands entering
        crossing event ``t``."""
        a, b = self.trace.event_segments[t]
        return self.segment_direction(a), self.segment_direction(b)

    def crossing_left_over(self, t: int) -> bool:
        kind = self.events[t][0]
        if kind not in (XP, XN):
            raise DiagramError(f"event {t} is not a crossing")
        da, db = self.crossing_dirs(t)
        sign = 1 if kind == XP else -1
        return sign * da * db > 0

    def component_of_event(self, t: int) -> tuple[int, int]:
        tr = self.trace
        a, b = tr.event_segments[t]
        return tr.seg_component[a], tr.seg_component[b]


def left_over_intents(word: SliceWord) -> dict[int, bool]:
    """Geometric over/under of every crossing (orientation-independent)."""
    return {t: word.crossing_left_over(t)
            for t, (k, _) in enumerate(word.events) if k in (XP, XN)}


def resolve_intents(events, arity_in: int, arity_out: int,
                    intents: dict[int, bool]) -> tuple[tuple[str, int], ...]:
    """Set crossing signs so each event realizes its left-over intent,
    assuming all orientation flags default to +1 in the new word."""
    tr = _trace(tuple(events), arity_in, arity_out)
    out = []
    for t, (kind, pos) in enumerate(events):
        if kind in (XP, XN) and t in intents:
            a, b = tr.event_segments[t]
            d = tr.seg_dir[a] * tr.seg_dir[b]
            kind = XP if (d > 0) == intents[t] else XN
        out.append((kind, pos))
    return tuple(out)


def reverse_component(word: SliceWord, comp: int) -> SliceWord:
    """Reverse one component's orientation (same geometric diagram).

    Flips the orientation flag and the stored sign of every crossing
    between ``comp`` and other components.
    """
    tr = word.trace
    if not 0 <= comp < len(tr.components):
        raise DiagramError(f"component index {comp} out of range")
    new_events = []
    for t, (kind, pos) in enumerate(word.events):
        if kind in (XP, XN):
            ca, cb = word.component_of_event(t)
            if (ca == comp) != (cb == comp):
                kind = XP if kind == XN else XN
        new_events.append((kind, pos))
    orients = list(word.orientations)
    orients[comp] = -orients[comp]
    return replace(word, events=tuple(new_events), orientations=tuple(orients))


def normalize_orientations(word: SliceWord) -> SliceWord:
    """Equivalent word with every orientation flag +1."""
    for c, o in enumerate(word.orientations):
        if o < 0:
            word = reverse_component(word, c)
    return word


def mirror(word: SliceWord) -> SliceWord:
    """Mirror image: every crossing sign flips."""
    flipped = tuple((XP if k == XN else XN if k == XP else k, p)
                    for k, p in word.events)
    return replace(word, events=flipped)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    """A braid word; ``word[j] = ±i`` is the generator sigma_i^{±1}."""

    strands: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.strands < 1:
            raise DiagramError("braid needs at least one strand")
        for g in self.word:
            if g == 0 or abs(g) > self.strands - 1:
                raise DiagramError(f"generator {g} invalid on {self.strands} strands")

    def permutation(self) -> tuple[int, ...]:
        perm = list(range(self.strands))
        for g in self.word:
            i = abs(g) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse plain-text braid words like ``"s1 s1 s1"`` or ``"-s2 s1"``."""
    gens = []
    for tok in text.replace(",", " ").split():
        neg = tok.startswith("-")
        body = tok[1:] if neg else tok
        if not body.startswith("s") or not body[1:].isdigit() or int(body[1:]) < 1:
            raise DiagramError(f"bad braid token {tok!r}")
        i = int(body[1:])
        gens.append(-i if neg else i)
    n = strands if strands is not None else max((abs(g) for g in gens), default=0) + 1
    return BraidWord(max(n, 1), tuple(gens))


def braid_closure(braid: BraidWord) -> SliceWord:
    """Trace closure of a braid as a closed slice word.

    Built plat-style: n nested cups, the braid's crossings on slots
    0..n-1, then nested caps joining each strand back to its return arc.
    Components are the cycles of the braid permutation; all braid strands
    come out oriented upward, so sigma_i maps to xp directly.
    """
    n = braid.strands
    events: list[tuple[str, int]] = [(CUP, i) for i in range(n)]
    for g in braid.word:
        events.append((XP if g > 0 else XN, abs(g) - 1))
    events.extend((CAP, n - 1 - i) for i in range(n))
    return SliceWord(tuple(events))


def unknot() -> SliceWord:
    return SliceWord(((CUP, 0), (CAP, 0)))


def unknot_with_curl(sign: int = 1) -> SliceWord:
    """Unknot with a single kink of the given sign (writhe ±1)."""
    k = XP if sign > 0 else XN
    return SliceWord(((CUP, 0), (CUP, 1), (k, 0), (CAP, 1), (CAP, 0)))


def hopf_link(sign: int = 1) -> SliceWord:
    return braid_closure(BraidWord(2, (1, 1) if sign > 0 else (-1, -1)))


def _twist_region(pos: int, count: int) -> tuple[list[tuple[str, int]], list[bool]]:
    """A vertical twist region crossed by the sweep at slots (pos, pos+1).

    Rotating the box turns the vertical twist into a horizontal one
    conjugated by two bends: one cup reroutes the twist's far top corner
    back over the region, |count| uniform crossings wind the two middle
    strands, and one cap reroutes the far bottom corner.  The slice stays
    six wide regardless of |count|.  Returns events (signs as
    placeholders) and the left-over intent of each crossing.
    """
    p = abs(count)
    over = count > 0
    if p == 0:
        return [], []
    ev = [(CUP, pos)] + [(XP, pos + 1)] * p + [(CAP, pos + 2)]
    return ev, [over] * p


def pretzel(*params: int) -> SliceWord:
    """The pretzel diagram P(p_1, ..., p_n).

    Positive parameters give right-handed vertical half-twists, tassels
    left to right (``conventions.CONVENTIONS['pretzel_positive']``).  The
    word sweeps across the row of tassels, so the slice carries at most
    six strands: two outer closure arcs plus up to four strands inside a
    twist region.
    """
    if len(params) == 1 and isinstance(params[0], (list, tuple)):
        params = tuple(params[0])
    if not params:
        raise DiagramError("pretzel needs at least one tassel")
    events: list[tuple[str, int]] = [(CUP, 0), (CUP, 2)]
    intents: dict[int, bool] = {}
    for p in params:
        ev, over = _twist_region(1, p)
        base = len(events)
        events.extend(ev)
        ci = 0
        for i, (kind, _) in enumerate(ev):
            if kind in (XP, XN):
                intents[base + i] = over[ci]
                ci += 1
    events.extend([(CAP, 0), (CAP, 0)])
    resolved = resolve_intents(events, 0, 0, intents)
    return SliceWord(resolved)


# ---------------------------------------------------------------------------
# Planar-diagram form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """One PD crossing: incident arc ids counterclockwise starting from
    the incoming under-strand arc, plus sign and strand components."""

    arcs: tuple[int, int, int, int]
    sign: int
    under_component: int
    over_component: int


@dataclass(frozen=True)
class LinkDiagram:
    """Planar-diagram form with explicit traversal data.

    ``components[c]`` is the cyclic sequence of crossing passages of
    component c: (crossing index, "o"/"u") in orientation order.
    """

    crossings: tuple[Crossing, ...]
    components: tuple[tuple[tuple[int, str], ...], ...]
    labels: tuple[str, ...]
    orientations: tuple[int, ...]

    def component_count(self) -> int:
        return len(self.components)

    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def validate(self) -> None:
        seen: dict[int, int] = {}
        for c in self.crossings:
            for a in c.arcs:
                seen[a] = seen.get(a, 0) + 1
        bad = {a: n for a, n in seen.items() if n != 2}
        if bad:
            raise DiagramError(f"arc ids not appearing exactly twice: {bad}")
        for c in self.components:
            for x, role in c:
                if role not in ("o", "u") or not 0 <= x < len(self.crossings):
                    raise DiagramError("bad traversal entry")


def slice_to_pd(word: SliceWord) -> LinkDiagram:
    """Convert a closed slice word to PD form, preserving crossing count,
    signs, component order, labels and orientations."""
    if not word.is_closed():
        raise DiagramError("slice_to_pd requires a closed diagram")
    tr = word.trace
    events = word.events

    # Passages of each segment, bottom to top: (event index, side).
    seg_passages: dict[int, list[tuple[int, int]]] = {}
    slots: list[int] = []
    for t, (kind, pos) in enumerate(events):
        if kind == CUP:
            a, b = tr.event_segments[t]
            slots[pos:pos] = [a, b]
        elif kind == CAP:
            del slots[pos:pos + 2]
        else:
            a, b = slots[pos], slots[pos + 1]
            seg_passages.setdefault(a, []).append((t, 0))
            seg_passages.setdefault(b, []).append((t, 1))
            slots[pos], slots[pos + 1] = b, a

    # Adjacency through extrema: (segment, end) -> (partner, partner end),
    # end 0 = bottom of the segment, 1 = top.
    adjacency: dict[tuple[int, int], tuple[int, int]] = {}
    for (a, b, kind) in tr.joins:
        end = 0 if kind == CUP else 1
        adjacency[(a, end)] = (b, end)
        adjacency[(b, end)] = (a, end)

    # Walk each component along its orientation.
    walks: list[list[tuple[int, int]]] = []
    for ci, comp in enumerate(tr.components):
        start = comp[0]
        start_up = tr.seg_dir[start] * word.orientations[ci] == 1
        walk: list[tuple[int, int]] = []
        seg, going_up = start, start_up
        while True:
            lst = seg_passages.get(seg, [])
            walk.extend(lst if going_up else reversed(lst))
            seg, end = adjacency[(seg, 1 if going_up else 0)]
            going_up = end == 0
            if seg == start and going_up == start_up:
                break
        walks.append(walk)

    # Arc ids: cut each component at each passage; arc i of a component
    # runs from its i-th passage to the (i+1)-th (cyclically).
    arc_base: list[int] = []
    counter = 0
    for walk in walks:
        arc_base.append(counter)
        counter += max(len(walk), 0)
    arc_after: dict[tuple[int, int], int] = {}
    arc_before: dict[tuple[int, int], int] = {}
    for wi, walk in enumerate(walks):
        m = len(walk)
        for i, passage in enumerate(walk):
            arc_after[passage] = arc_base[wi] + i
            arc_before[passage] = arc_base[wi] + (i - 1) % m

    crossings: list[Crossing] = []
    xindex: dict[int, int] = {}
    for t, (kind, _) in enumerate(events):
        if kind not in (XP, XN):
            continue
        a, b = tr.event_segments[t]
        sign = 1 if kind == XP else -1
        dl = tr.seg_dir[a] * word.orientations[tr.seg_component[a]]
        dr = tr.seg_dir[b] * word.orientations[tr.seg_component[b]]
        left_over = sign * dl * dr > 0
        # Corner arcs: left strand occupies BL and TR, right BR and TL.
        bl = arc_before[(t, 0)] if dl > 0 else arc_after[(t, 0)]
        tr_corner = arc_after[(t, 0)] if dl > 0 else arc_before[(t, 0)]
        br = arc_before[(t, 1)] if dr > 0 else arc_after[(t, 1)]
        tl = arc_after[(t, 1)] if dr > 0 else arc_before[(t, 1)]
        cycle = (bl, br, tr_corner, tl)  # counterclockwise corner order
        if left_over:
            under_seg, under_dir, start_corner = b, dr, 1 if dr > 0 else 3
        else:
            under_seg, under_dir, start_corner = a, dl, 0 if dl > 0 else 2
        arcs = tuple(cycle[(start_corner + i) % 4] for i in range(4))
        over_seg = a if left_over else b
        xindex[t] = len(crossings)
        crossings.append(Crossing(
            arcs=arcs,  # type: ignore[arg-type]
            sign=sign,
            under_component=tr.seg_component[under_seg],
            over_component=tr.seg_component[over_seg],
        ))

    traversals = []
    for walk in walks:
        steps = []
        for (t, side) in walk:
            a, b = tr.event_segments[t]
            dl = tr.seg_dir[a] * word.orientations[tr.seg_component[a]]
            dr = tr.seg_dir[b] * word.orientations[tr.seg_component[b]]
            sign = 1 if events[t][0] == XP else -1
            left_over = sign * dl * dr > 0
            role = "o" if (side == 0) == left_over else "u"
            steps.append((xindex[t], role))
        traversals.append(tuple(steps))

    pd = LinkDiagram(
        crossings=tuple(crossings),
        components=tuple(traversals),
        labels=word.labels,
        orientations=word.orientations,
    )
    pd.validate()
    return pd


# ---------------------------------------------------------------------------
# Connected sum
# ---------------------------------------------------------------------------


def _shift(events: Iterable[tuple[str, int]], offset: int) -> list[tuple[str, int]]:
    return [(k, p + offset) for k, p in events]


def _rebase_last_cap(word: SliceWord, comp: int):
    """Events equivalent to ``word`` ending with a cap of ``comp`` at
    position 0 (the capped pair is routed left over intervening strands).
    Returns (events, intents) with intents covering all crossings."""
    word = normalize_orientations(word)
    base_intents = left_over_intents(word)
    tr = word.trace
    cap_index = None
    for t in range(len(word.events) - 1, -1, -1):
        kind, _ = word.events[t]
        if kind == CAP and tr.seg_component[tr.event_segments[t][0]] == comp:
            cap_index = t
            break
    if cap_index is None:
        raise DiagramError(f"component {comp} has no cap event")
    _, pos = word.events[cap_index]
    head = list(word.events[:cap_index])
    tail = list(word.events[cap_index + 1:])
    route, route_intents = [], []
    p = pos
    while p > 0:
        # pair moves left past the obstacle at p-1; obstacle sits on the
        # left at both crossings, band passes over: right strand over.
        route.append((XP, p - 1))
        route_intents.append(False)
        route.append((XP, p))
        route_intents.append(False)
        p -= 1
    events = head + route + _shift(tail, 2) + [(CAP, 0)]
    intents = {t: base_intents[t] for t in range(cap_index) if t in base_intents}
    for i, it in enumerate(route_intents):
        intents[cap_index + i] = it
    off = len(route) - 1
    for t in range(cap_index + 1, len(word.events)):
        if t in base_intents:
            intents[t + off] = base_intents[t]
    return events, intents


def _rebase_first_cup(word: SliceWord, comp: int):
    """Events equivalent to ``word`` starting with a cup of ``comp`` at
    position 0, delivered to its original location on a conveyor."""
    word = normalize_orientations(word)
    base_intents = left_over_intents(word)
    tr = word.trace
    cup_index = None
    for t, (kind, _) in enumerate(word.events):
        if kind == CUP and tr.seg_component[tr.event_segments[t][0]] == comp:
            cup_index = t
            break
    if cup_index is None:
        raise DiagramError(f"component {comp} has no cup event")
    _, pos = word.events[cup_index]
    head = list(word.events[:cup_index])
    tail = list(word.events[cup_index + 1:])
    route, route_intents = [], []
    p = 0
    while p < pos:
        # pair moves right past the obstacle at p+2; band strand sits on
        # the left at both crossings and passes over.
        route.append((XP, p + 1))
        route_intents.append(True)
        route.append((XP, p))
        route_intents.append(True)
        p += 1
    events = [(CUP, 0)] + _shift(head, 2) + route + tail
    intents: dict[int, bool] = {}
    for t in range(cup_index):
        if t in base_intents:
            intents[t + 1] = base_intents[t]
    base_route = 1 + len(head)
    for i, it in enumerate(route_intents):
        intents[base_route + i] = it
    off = 1 + len(route) - 1
    for t in range(cup_index + 1, len(word.events)):
        if t in base_intents:
            intents[t + off] = base_intents[t]
    return events, intents


def connected_sum(a: SliceWord, b: SliceWord,
                  comp_a: int = 0, comp_b: int = 0) -> SliceWord:
    """Connected sum of closed diagrams along the chosen components.

    b's component is re-oriented if needed so the splice is consistent;
    the merged diagram keeps a's labels and appends b's leftovers.
    """
    if not (a.is_closed() and b.is_closed()):
        raise DiagramError("connected_sum requires closed diagrams")
    if not 0 <= comp_a < a.component_count():
        raise DiagramError(f"component {comp_a} out of range")
    if not 0 <= comp_b < b.component_count():
        raise DiagramError(f"component {comp_b} out of range")

    ev_a, int_a = _rebase_last_cap(a, comp_a)
    wa = SliceWord(resolve_intents(ev_a, 0, 0, int_a))
    ev_b, int_b = _rebase_first_cup(b, comp_b)
    wb = SliceWord(resolve_intents(ev_b, 0, 0, int_b))

    events = list(wa.events[:-1]) + list(wb.events[1:])
    intents = {t: it for t, it in left_over_intents(wa).items() if t < len(wa.events) - 1}
    off = len(wa.events) - 2
    for t, it in left_over_intents(wb).items():
        intents[t + off] = it
    merged = SliceWord(resolve_intents(events, 0, 0, intents))

    n_expected = a.component_count() + b.component_count() - 1
    if merged.component_count() != n_expected:
        raise DiagramError("connected sum produced unexpected component count")
    labels = list(a.labels)
    used = set(labels)
    for i, lab in enumerate(b.labels):
        if i == comp_b:
            continue
        while lab in used:
            lab += "'"
        labels.append(lab)
        used.add(lab)
    return merged.relabel(labels[: merged.component_count()])


# ---------------------------------------------------------------------------
# Theta tangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaTangle:
    """A 3-strand tangle whose vertex closure is a spatial theta-curve.

    Edge ``e_i`` is the arc entering bottom position i-1; the endpoint
    permutation maps bottom positions to top positions.  Closure adds
    trivalent vertices v1 (bottom) and v2 (top), joining the three
    endpoints on each side.
    """

    tangle: SliceWord
    edge_labels: tuple[str, str, str] = ("e1", "e2", "e3")

    def __post_init__(self):
        w = self.tangle
        if w.arity_in != 3 or w.arity_out != 3:
            raise DiagramError("theta tangle needs 3 bottom and 3 top endpoints")
        tr = w.trace
        if len(tr.components) != 3:
            raise DiagramError("theta tangle must consist of exactly 3 arcs")
        tops = set(tr.top_segments)
        for seg in tr.bottom_segments:
            comp = tr.seg_component[seg]
            if not any(s in tops for s in tr.components[comp]):
                raise DiagramError("each arc must join a bottom endpoint to a top endpoint")

    @property
    def permutation(self) -> tuple[int, int, int]:
        tr = self.tangle.trace
        bottom = [tr.seg_component[s] for s in tr.bottom_segments]
        top = [tr.seg_component[s] for s in tr.top_segments]
        return tuple(top.index(c) for c in bottom)  # type: ignore[return-value]

    def crossing_count(self) -> int:
        return self.tangle.crossing_count()


def trivial_theta() -> ThetaTangle:
    return ThetaTangle(SliceWord((), arity_in=3, arity_out=3))


def theta_from_braid(braid: BraidWord) -> ThetaTangle:
    if braid.strands != 3:
        raise DiagramError("theta tangles come from 3-strand braids")
    events = tuple((XP if g > 0 else XN, abs(g) - 1) for g in braid.word)
    return ThetaTangle(SliceWord(events, arity_in=3, arity_out=3))


def vertex_sum(t1: ThetaTangle, t2: ThetaTangle) -> ThetaTangle:
    """Vertex connected sum: stack t2 on top of t1 so the i-th edge joins
    the i-th edge.  Requires t1's endpoint permutation to be the identity
    (otherwise the label pairing is geometrically impossible by stacking).
    Associative at the data level: event concatenation."""
    if t1.permutation != (0, 1, 2):
        raise DiagramError(
            "vertex_sum needs the first tangle's endpoint permutation to be "
            "the identity so i-th edges meet")
    w1 = normalize_orientations(t1.tangle)
    w2 = normalize_orientations(t2.tangle)
    events = list(w1.events) + list(w2.events)
    intents = dict(left_over_intents(w1))
    off = len(w1.events)
    for t, it in left_over_intents(w2).items():
        intents[t + off] = it
    word = SliceWord(resolve_intents(events, 3, 3, intents),
                     arity_in=3, arity_out=3)
    return ThetaTangle(word, edge_labels=t1.edge_labels)


def _delete_arc_events(word: SliceWord, comp: int):
    """Remove one arc from a tangle; crossings with it evaporate.

    Returns (events, kept event map old index -> new index, bottom count).
    """
    tr = word.trace
    slots_alive: list[bool] = [tr.seg_component[s] != comp
                               for s in tr.bottom_segments]
    new_events: list[tuple[str, int]] = []
    kept: dict[int, int] = {}

    def new_pos(old: int) -> int:
        return sum(1 for i in range(old) if slots_alive[i])

    for t, (kind, pos) in enumerate(word.events):
        a, b = tr.event_segments[t]
        ka = tr.seg_component[a] != comp
        kb = tr.seg_component[b] != comp
        if kind == CUP:
            if ka != kb:
                raise DiagramError("cup joins segments of different arcs")
            if ka:
                kept[t] = len(new_events)
                new_events.append((CUP, new_pos(pos)))
            slots_alive[pos:pos] = [ka, kb]
        elif kind == CAP:
            if ka != kb:
                raise DiagramError("cap joins segments of different arcs")
            if ka:
                kept[t] = len(new_events)
                new_events.append((CAP, new_pos(pos)))
            del slots_alive[pos:pos + 2]
        else:
            if ka and kb:
                kept[t] = len(new_events)
                new_events.append((kind, new_pos(pos)))
            slots_alive[pos], slots_alive[pos + 1] = slots_alive[pos + 1], slots_alive[pos]
    return new_events, kept, sum(1 for s in word.trace.bottom_segments
                                 if tr.seg_component[s] != comp)


def theta_cycles(theta: ThetaTangle) -> dict[str, SliceWord]:
    """The constituent cycles as closed, labeled knot diagrams.

    Planar convention (edges left to right e1, e2, e3): bounded faces give
    c1 = e1 ∪ e2 and c2 = e2 ∪ e3; the outermost cycle is c0 = e1 ∪ e3.
    Each cycle is the tangle with the third arc deleted, closed at the
    vertices by a cup below and a cap above.
    """
    word = normalize_orientations(theta.tangle)
    tr = word.trace
    comp_of_edge = [tr.seg_component[s] for s in tr.bottom_segments]
    base_intents = left_over_intents(word)
    out: dict[str, SliceWord] = {}
    for name, drop in (("c0", 1), ("c1", 2), ("c2", 0)):
        ev, kept, nb = _delete_arc_events(word, comp_of_edge[drop])
        if nb != 2:
            raise DiagramError("cycle extraction expected two residual endpoints")
        events = [(CUP, 0)] + _shift(ev, 0) + [(CAP, 0)]
        intents = {kept[t] + 1: base_intents[t] for t in kept if t in base_intents}
        wcycle = SliceWord(resolve_intents(events, 0, 0, intents))
        if wcycle.component_count() != 1:
            raise DiagramError("cycle extraction produced a non-knot")
        lab = {"c0": "e1+e3", "c1": "e1+e2", "c2": "e2+e3"}[name]
        out[name] = wcycle.relabel((lab,))
    return out


# ---------------------------------------------------------------------------
# Random words and isotopies
# ---------------------------------------------------------------------------


def random_closed_word(rng: random.Random, max_crossings: int = 12,
                       max_width: int = 8) -> SliceWord:
    """A random closed slice word with at most ``max_crossings`` crossings."""
    events: list[tuple[str, int]] = [(CUP, 0)]
    width = 2
    crossings = 0
    while True:
        choices = []
        if width >= 2:
            choices += ["cross"] * 3 + [CAP]
        if width + 2 <= max_width:
            choices.append(CUP)
        if crossings >= max_crossings:
            choices = [CAP]
        kind = rng.choice(choices)
        if kind == CUP:
            events.append((CUP, rng.randrange(width + 1)))
            width += 2
        elif kind == CAP:
            events.append((CAP, rng.randrange(width - 1)))
            width -= 2
            if width == 0:
                if crossings > 0 or rng.random() < 0.5:
                    break
                events.append((CUP, 0))
                width = 2
        else:
            k = XP if rng.random() < 0.5 else XN
            events.append((k, rng.randrange(width - 1)))
            crossings += 1
    return SliceWord(tuple(events))


def random_knot_word(rng: random.Random, max_crossings: int = 8,
                     max_width: int = 8, tries: int = 400) -> SliceWord:
    for _ in range(tries):
        w = random_closed_word(rng, max_crossings, max_width)
        if w.component_count() == 1 and w.crossing_count() >= 1:
            return w
    raise RuntimeError("could not generate a random knot word")


def random_theta(rng: random.Random, max_crossings: int = 12) -> ThetaTangle:
    """A random theta tangle built from a 3-strand braid word."""
    n = rng.randrange(0, max_crossings + 1)
    gens = tuple(rng.choice([1, -1, 2, -2]) for _ in range(n))
    return theta_from_braid(BraidWord(3, gens))


def _try_commute(e1: tuple[str, int], e2: tuple[str, int]):
    """Swap two consecutive events when they act on distant strands.

    Returns (e2', e1') with adjusted positions, or None.  e2's position is
    expressed in the slice after e1; the swap re-expresses both.
    """
    k1, p1 = e1
    k2, p2 = e2
    d1 = 2 if k1 == CUP else -2 if k1 == CAP else 0
    d2 = 2 if k2 == CUP else -2 if k2 == CAP else 0
    if k1 == CUP:
        if k2 == CUP:
            if p2 <= p1 - 1:
                return (k2, p2), (k1, p1 + 2)
            if p2 >= p1 + 2:
                return (k2, p2 - 2), (k1, p1)
            return None
        if p2 + 1 <= p1 - 1:
            return (k2, p2), (k1, p1 + d2)
        if p2 >= p1 + 2:
            return (k2, p2 - 2), (k1, p1)
        return None
    if k1 == CAP:
        if k2 == CUP:
            if p2 <= p1 - 1:
                return (k2, p2), (k1, p1 + 2)
            if p2 >= p1 + 1:
                return (k2, p2 + 2), (k1, p1)
            return None
        if p2 + 1 <= p1 - 1:
            return (k2, p2), (k1, p1 + d2)
        if p2 >= p1:
            return (k2, p2 + 2), (k1, p1)
        return None
    # k1 is a crossing
    if k2 == CUP:
        if p2 <= p1:
            return (k2, p2), (k1, p1 + 2)
        if p2 >= p1 + 2:
            return (k2, p2), (k1, p1)
        return None
    if p2 + 1 <= p1 - 1:
        return (k2, p2), (k1, p1 + d2)
    if p2 >= p1 + 2:
        return (k2, p2), (k1, p1)
    return None


def random_isotopies(word: SliceWord, rng: random.Random, steps: int = 8,
                     allow_r1: bool = False) -> SliceWord:
    """Apply random planar-isotopy and Reidemeister II rewrites.

    Moves: commutation of distant events, zig-zag (snake) insertion, and
    R2 insertion; with ``allow_r1`` also curl insertion (changes writhe).
    Intents are preserved because inserted patterns are written in the
    current word's frame and signs re-resolved.
    """
    events = list(word.events)
    intents = dict(left_over_intents(word))

    def widths() -> list[int]:
        w = word.arity_in
        out = [w]
        for k, _ in events:
            w += 2 if k == CUP else -2 if k == CAP else 0
            out.append(w)
        return out

    def shift_intents(at: int, count: int, new: dict[int, bool]):
        moved = {}
        for t, v in intents.items():
            moved[t + count if t >= at else t] = v
        moved.update(new)
        intents.clear()
        intents.update(moved)

    for _ in range(steps):
        move = rng.choice(["commute", "snake", "r2"] + (["r1"] if allow_r1 else []))
        ws = widths()
        if move == "commute" and len(events) >= 2:
            for _attempt in range(20):
                t = rng.randrange(len(events) - 1)
                swapped = _try_commute(events[t], events[t + 1])
                if swapped is not None:
                    i1 = intents.get(t)
                    i2 = intents.get(t + 1)
                    events[t], events[t + 1] = swapped
                    intents.pop(t, None)
                    intents.pop(t + 1, None)
                    if i2 is not None:
                        intents[t] = i2
                    if i1 is not None:
                        intents[t + 1] = i1
                    break
        elif move == "snake":
            t = rng.randrange(len(events) + 1)
            if ws[t] >= 1:
                p = rng.randrange(ws[t])
                ins = [(CUP, p + 1), (CAP, p)] if rng.random() < 0.5 else [(CUP, p), (CAP, p + 1)]
                events[t:t] = ins
                shift_intents(t, 2, {})
        elif move == "r2":
            t = rng.randrange(len(events) + 1)
            if ws[t] >= 2:
                p = rng.randrange(ws[t] - 1)
                over = rng.random() < 0.5
                events[t:t] = [(XP, p), (XP, p)]
                shift_intents(t, 2, {t: over, t + 1: not over})
        elif move == "r1":
            t = rng.randrange(len(events) + 1)
            if ws[t] >= 1:
                p = rng.randrange(ws[t])
                over = rng.random() < 0.5
                events[t:t] = [(CUP, p), (XP, p), (CAP, p + 1)]
                shift_intents(t, 3, {t + 1: over})
    resolved = resolve_intents(events, word.arity_in, word.arity_out, intents)
    return SliceWord(resolved, word.arity_in, word.arity_out)
