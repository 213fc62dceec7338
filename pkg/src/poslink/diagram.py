"""Oriented link diagrams given by PD codes, plus braid-word input.

A diagram is a list of crossings ``X[a,b,c,d]`` listing the four incident
arcs counterclockwise from the incoming under-strand ``a`` (so the
under-strand runs ``a -> c``), together with a count of crossing-free
circles (``O[]`` tokens).  Arc labels run 1..2c, consecutively along each
component in the direction of its orientation, wrapping once per component.

Conventions, fixed empirically so that the Knot Atlas code of 3_1
``PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`` denotes the *positive* trefoil
(Jones polynomial t + t^3 - t^4, writhe +3):

  * a crossing is positive when its over-strand runs b -> d, negative
    when it runs d -> b;
  * the A-smoothing of ``X[a,b,c,d]`` joins a<->d and b<->c, the
    B-smoothing joins a<->b and c<->d.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    ArcMultiplicity,
    ArityError,
    GeneratorOutOfRange,
    MalformedBraid,
    MalformedPD,
    OrientationInconsistent,
    ZeroLetter,
)

Crossing = tuple[int, int, int, int]

A_SMOOTHING = "A"
B_SMOOTHING = "B"


class _DisjointLabels:
    """Union-find over arc labels with minimum-label representatives."""

    def __init__(self) -> None:
        self._parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller label as representative: deterministic output
            if rx > ry:
                rx, ry = ry, rx
            self._parent[ry] = rx


def smoothing_pairs(crossing: Sequence[int], label: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Arc identifications made by smoothing one crossing."""
    a, b, c, d = crossing
    if label == A_SMOOTHING:
        return (a, d), (b, c)
    if label == B_SMOOTHING:
        return (a, b), (c, d)
    raise ValueError(f"state labels must be {A_SMOOTHING!r} or {B_SMOOTHING!r}, got {label!r}")


@dataclass(frozen=True)
class Diagram:
    """An oriented link diagram: crossing tuples plus crossing-free circles."""

    crossings: tuple[Crossing, ...] = ()
    free_circles: int = 0

    def __post_init__(self) -> None:
        normalized = []
        for t in self.crossings:
            t = tuple(t)
            if len(t) != 4:
                raise ArityError(f"crossing {t!r} must list exactly 4 arcs")
            if not all(isinstance(v, int) and v >= 1 for v in t):
                raise MalformedPD(f"arc labels must be positive integers: {t!r}")
            normalized.append(t)
        object.__setattr__(self, "crossings", tuple(normalized))
        if not isinstance(self.free_circles, int) or self.free_circles < 0:
            raise MalformedPD("free_circles must be a nonnegative integer")
        counts = Counter(lab for t in self.crossings for lab in t)
        expected = range(1, 2 * len(self.crossings) + 1)
        if sorted(counts) != list(expected) or any(v != 2 for v in counts.values()):
            raise ArcMultiplicity(
                "arc labels must be 1..2c with each label used exactly twice"
            )

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def _orientation(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        return _orient(self.crossings)

    @property
    def component_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Arc labels of each crossed component, in traversal order."""
        return self._orientation[1]


def _orient(crossings: Sequence[Crossing]) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Infer over-strand entry slots and oriented component cycles.

    Positions are (crossing, slot) pairs.  Walking the link alternates a
    through-crossing move (slot 0<->2 under, 1<->3 over) with a jump to the
    other occurrence of the exit arc.  Orbits of that walk traverse one
    component in one of its two directions; the under-strand constraint
    (entries at slot 0, never slot 2) picks the real direction.  Components
    that never pass under are oriented by the label convention instead:
    prefer the direction where exit = entry + 1, wrapping max -> min.
    """
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, t in enumerate(crossings):
        for si, lab in enumerate(t):
            occurrences.setdefault(lab, []).append((ci, si))

    def arc_partner(pos: tuple[int, int]) -> tuple[int, int]:
        ci, si = pos
        first, second = occurrences[crossings[ci][si]]
        return second if first == pos else first

    seen: set[tuple[int, int]] = set()
    orbits: list[list[tuple[int, int]]] = []
    for ci in range(len(crossings)):
        for si in range(4):
            start = (ci, si)
            if start in seen:
                continue
            orbit = []
            pos = start
            while True:
                orbit.append(pos)
                seen.add(pos)
                pos = arc_partner((pos[0], pos[1] ^ 2))
                if pos == start:
                    break
            orbits.append(orbit)

    groups: dict[frozenset[int], list[list[tuple[int, int]]]] = {}
    for orbit in orbits:
        labels = frozenset(crossings[ci][si] for ci, si in orbit)
        groups.setdefault(labels, []).append(orbit)

    over_in = [0] * len(crossings)
    cycles = []
    for labels, pair in sorted(groups.items(), key=lambda kv: min(kv[0])):
        if len(pair) != 2:
            raise OrientationInconsistent(
                "component traverses one of its own strands twice"
            )
        valid = [o for o in pair if all(si != 2 for _, si in o)]
        if not valid:
            raise OrientationInconsistent(
                "no direction is compatible with the under-strand passages"
            )
        chosen = valid[0] if len(valid) == 1 else _prefer_consecutive(crossings, valid, labels)
        arcs = [crossings[ci][si] for ci, si in chosen]
        shift = arcs.index(min(arcs))
        cycles.append(tuple(arcs[shift:] + arcs[:shift]))
        for ci, si in chosen:
            if si in (1, 3):
                over_in[ci] = si
    if any(v == 0 for v in over_in):
        raise OrientationInconsistent("some over-strand was never traversed")
    return tuple(over_in), tuple(cycles)


def _prefer_consecutive(
    crossings: Sequence[Crossing],
    candidates: list[list[tuple[int, int]]],
    labels: frozenset[int],
) -> list[tuple[int, int]]:
    # Both directions satisfy the under-strand constraints (an all-over
    # component), so fall back to the labeling convention.  Two-arc
    # components are symmetric at label level; the position tie-break
    # keeps the choice deterministic.
    lo, hi = min(labels), max(labels)

    def score(orbit: list[tuple[int, int]]) -> int:
        s = 0
        for ci, si in orbit:
            entry, exit_ = crossings[ci][si], crossings[ci][si ^ 2]
            if exit_ == entry + 1 or (entry == hi and exit_ == lo):
                s += 1
        return s

    return min(candidates, key=lambda o: (-score(o), sorted(o)))


# --------------------------------------------------------------------------
# parsing


def parse_pd(text: str) -> Diagram:
    """Parse ``PD[X[i,j,k,l], ..., O[]]`` into a validated Diagram."""
    m = re.fullmatch(r"\s*PD\[(.*)\]\s*", text, re.S)
    if not m:
        raise MalformedPD(f"not a PD expression: {text!r}")
    items = _split_items(m.group(1))
    if not items:
        raise MalformedPD("PD[] must contain at least one X[...] or O[] item")
    crossings = []
    free = 0
    for item in items:
        if re.fullmatch(r"O\[\s*\]", item):
            free += 1
            continue
        xm = re.fullmatch(r"X\[([^\[\]]*)\]", item)
        if not xm:
            raise MalformedPD(f"unrecognized item {item!r}")
        entries = [e.strip() for e in xm.group(1).split(",")]
        if len(entries) != 4:
            raise ArityError(f"crossing {item!r} must list exactly 4 arcs")
        if not all(re.fullmatch(r"\d+", e) for e in entries):
            raise MalformedPD(f"arc labels must be base-10 positive integers: {item!r}")
        labels = tuple(int(e) for e in entries)
        if min(labels) < 1:
            raise MalformedPD(f"arc labels must be positive: {item!r}")
        crossings.append(labels)
    return Diagram(tuple(crossings), free)


def _split_items(body: str) -> list[str]:
    if not body.strip():
        return []
    items = []
    depth = 0
    current = []

    def push() -> None:
        item = "".join(current).strip()
        if not item:
            raise MalformedPD("empty item in PD expression")
        items.append(item)

    for ch in body:
        if ch == "," and depth == 0:
            push()
            current = []
            continue
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise MalformedPD("unbalanced brackets in PD expression")
        current.append(ch)
    if depth != 0:
        raise MalformedPD("unbalanced brackets in PD expression")
    push()
    return items


@dataclass(frozen=True)
class BraidWord:
    """A braid word: letter k stands for sigma_|k| with sign(k) the crossing sign."""

    strand_count: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strand_count < 1:
            raise MalformedBraid("strand count must be >= 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        for k in self.letters:
            if k == 0:
                raise ZeroLetter("0 names no braid generator")
            if abs(k) >= self.strand_count:
                raise GeneratorOutOfRange(
                    f"letter {k} needs at least {abs(k) + 1} strands, have {self.strand_count}"
                )


def parse_braid(text: str) -> BraidWord:
    """Parse ``strands=<n>; <k> <k> ...`` (letters comma or space separated)."""
    m = re.fullmatch(r"\s*strands\s*=\s*(\d+)\s*;(.*)", text, re.S)
    if not m:
        raise MalformedBraid(f"expected 'strands=<n>; <letters>': {text!r}")
    strand_count = int(m.group(1))
    letters = []
    for token in m.group(2).replace(",", " ").split():
        if not re.fullmatch(r"[+-]?\d+", token):
            raise MalformedBraid(f"bad braid letter {token!r}")
        letters.append(int(token))
    return BraidWord(strand_count, tuple(letters))


# --------------------------------------------------------------------------
# explicit-orientation working form


class _Oriented:
    """PD data with the over-strand entry slot carried explicitly.

    Skein surgeries (switches, resolutions, nugatory pass-throughs) relabel
    arcs freely, which would defeat re-inference of orientation from the
    labeling convention; carrying entry slots sidesteps that entirely.
    ``over_in[k]`` is 1 when the over-strand of crossing k runs b -> d
    (positive) and 3 when it runs d -> b (negative).
    """

    __slots__ = ("crossings", "over_in", "free_circles")

    def __init__(
        self,
        crossings: Sequence[Crossing],
        over_in: Sequence[int],
        free_circles: int,
    ) -> None:
        self.crossings = list(crossings)
        self.over_in = list(over_in)
        self.free_circles = free_circles

    @classmethod
    def of(cls, d: Diagram) -> "_Oriented":
        return cls(d.crossings, d._orientation[0], d.free_circles)

    def sign(self, k: int) -> int:
        return 1 if self.over_in[k] == 1 else -1

    def key(self) -> tuple:
        """Hashable form with arcs densely relabeled, order preserved."""
        labels = sorted({lab for t in self.crossings for lab in t})
        ren = {lab: i + 1 for i, lab in enumerate(labels)}
        return (
            tuple(tuple(ren[v] for v in t) for t in self.crossings),
            tuple(self.over_in),
            self.free_circles,
        )

    def successor_map(self) -> dict[int, int]:
        succ: dict[int, int] = {}
        for t, oi in zip(self.crossings, self.over_in):
            a, b, c, d = t
            transits = ((a, c), (b, d)) if oi == 1 else ((a, c), (d, b))
            for entry, exit_ in transits:
                if entry in succ:
                    raise OrientationInconsistent(f"arc {entry} enters two crossings")
                succ[entry] = exit_
        return succ

    def component_cycles(self) -> list[list[int]]:
        succ = self.successor_map()
        remaining = set(succ)
        cycles = []
        while remaining:
            start = min(remaining)
            cycle = [start]
            remaining.discard(start)
            x = succ.get(start)
            while x != start:
                if x is None or x not in succ:
                    raise OrientationInconsistent("arc traversal left the diagram")
                cycle.append(x)
                remaining.discard(x)
                x = succ[x]
            cycles.append(cycle)
        cycles.sort(key=lambda c: c[0])
        return cycles

    def component_count(self) -> int:
        return len(self.component_cycles()) + self.free_circles

    def entry_walk(self) -> Iterator[tuple[int, int]]:
        """Crossing entries in traversal order, components by minimal arc."""
        entry_at: dict[int, tuple[int, int]] = {}
        for ci, (t, oi) in enumerate(zip(self.crossings, self.over_in)):
            entry_at[t[0]] = (ci, 0)
            entry_at[t[oi]] = (ci, oi)
        for cycle in self.component_cycles():
            for arc in cycle:
                yield entry_at[arc]

    def first_defect(self) -> int | None:
        """First crossing reached on its under-strand before its over-strand."""
        visited: set[int] = set()
        for ci, si in self.entry_walk():
            if ci in visited:
                continue
            visited.add(ci)
            if si == 0:
                return ci
        return None

    def switch(self, k: int) -> "_Oriented":
        """Exchange over- and under-strand at crossing k (sign flips)."""
        t = self.crossings[k]
        xs = list(self.crossings)
        oi = list(self.over_in)
        if oi[k] == 1:
            xs[k] = (t[1], t[2], t[3], t[0])
            oi[k] = 3
        else:
            xs[k] = (t[3], t[0], t[1], t[2])
            oi[k] = 1
        return _Oriented(xs, oi, self.free_circles)

    def resolve(self, k: int) -> "_Oriented":
        """Oriented resolution: both strands continue, the crossing is gone."""
        a, b, c, d = self.crossings[k]
        pairs = ((a, d), (b, c)) if self.over_in[k] == 1 else ((a, b), (c, d))
        return self._merge_arcs(k, pairs)

    def pass_through(self, k: int) -> "_Oriented":
        """Remove crossing k letting each strand run straight through.

        Preserves the link type only at a nugatory crossing, where pushing
        one side through the other realizes the untwist.
        """
        a, b, c, d = self.crossings[k]
        return self._merge_arcs(k, ((a, c), (b, d)))

    def _merge_arcs(self, k: int, pairs) -> "_Oriented":
        dj = _DisjointLabels()
        for x, y in pairs:
            dj.union(x, y)
        xs = []
        oi = []
        for i, (t, o) in enumerate(zip(self.crossings, self.over_in)):
            if i == k:
                continue
            xs.append(tuple(dj.find(v) for v in t))
            oi.append(o)
        used = {v for t in xs for v in t}
        closed = {dj.find(v) for v in self.crossings[k]} - used
        return _Oriented(xs, oi, self.free_circles + len(closed))

    def to_diagram(self) -> Diagram:
        """Relabel arcs consecutively along each oriented component."""
        ren: dict[int, int] = {}
        nxt = 1
        for cycle in self.component_cycles():
            for arc in cycle:
                ren[arc] = nxt
                nxt += 1
        return Diagram(
            tuple(tuple(ren[v] for v in t) for t in self.crossings),
            self.free_circles,
        )


def braid_closure(b: BraidWord) -> Diagram:
    """Close a braid word into a diagram; crossing signs equal letter signs."""
    current = list(range(1, b.strand_count + 1))
    nxt = b.strand_count + 1
    crossings: list[Crossing] = []
    over_in: list[int] = []
    for k in b.letters:
        i = abs(k) - 1
        left, right = current[i], current[i + 1]
        out_left, out_right = nxt, nxt + 1
        nxt += 2
        if k > 0:
            # right strand dives under, heading left; left strand passes over
            crossings.append((right, left, out_left, out_right))
            over_in.append(1)
        else:
            crossings.append((left, out_left, out_right, right))
            over_in.append(3)
        current[i], current[i + 1] = out_left, out_right
    dj = _DisjointLabels()
    for p in range(b.strand_count):
        dj.union(p + 1, current[p])
    merged = [tuple(dj.find(v) for v in t) for t in crossings]
    used = {v for t in merged for v in t}
    top_reps = {dj.find(p + 1) for p in range(b.strand_count)}
    free = len(top_reps - used)
    return _Oriented(merged, over_in, free).to_diagram()


# --------------------------------------------------------------------------
# diagram operations


@dataclass(frozen=True)
class CrossingSigns:
    """Per-crossing signs of an oriented diagram."""

    signs: tuple[int, ...]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def positive_count(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def negative_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def crossing_signs(d: Diagram) -> CrossingSigns:
    """Signs per crossing; positive means the over-strand runs b -> d."""
    over_in, _ = d._orientation
    return CrossingSigns(tuple(1 if oi == 1 else -1 for oi in over_in))


def writhe(d: Diagram) -> int:
    return crossing_signs(d).writhe


def components(d: Diagram) -> int:
    """Number of link components: arc-following orbits plus free circles."""
    return len(d.component_cycles) + d.free_circles


def is_positive(d: Diagram) -> bool:
    """True iff every crossing is positive (vacuously true without crossings).

    A False answer says nothing about the underlying link, only about this
    diagram of it.
    """
    return all(s == 1 for s in crossing_signs(d).signs)


State = tuple[str, ...]


def all_a_state(d: Diagram) -> State:
    return (A_SMOOTHING,) * d.crossing_count


def all_b_state(d: Diagram) -> State:
    return (B_SMOOTHING,) * d.crossing_count


def state_circles(d: Diagram, state: Sequence[str]) -> int:
    """Number of circles after smoothing every crossing as the state says."""
    if len(state) != d.crossing_count:
        raise ValueError(
            f"state length {len(state)} != crossing count {d.crossing_count}"
        )
    dj = _DisjointLabels()
    for t, label in zip(d.crossings, state):
        for x, y in smoothing_pairs(t, label):
            dj.union(x, y)
    roots = {dj.find(lab) for lab in range(1, d.arc_count + 1)}
    return len(roots) + d.free_circles


def a_state_circles(d: Diagram) -> int:
    return state_circles(d, all_a_state(d))


def b_state_circles(d: Diagram) -> int:
    return state_circles(d, all_b_state(d))


def _shadow_components(crossings: Sequence[Crossing], smoothed: tuple[int, tuple] | None = None) -> int:
    """Connected pieces of the underlying curve arrangement (free circles
    excluded).  ``smoothed=(k, pairs)`` counts with crossing k replaced by
    the given arc joins instead of a 4-valent vertex."""
    if not crossings:
        return 0
    dj = _DisjointLabels()
    for i, t in enumerate(crossings):
        if smoothed is not None and i == smoothed[0]:
            for x, y in smoothed[1]:
                dj.union(x, y)
        else:
            dj.union(t[0], t[1])
            dj.union(t[0], t[2])
            dj.union(t[0], t[3])
    labels = {v for t in crossings for v in t}
    return len({dj.find(v) for v in labels})


def _find_nugatory(crossings: Sequence[Crossing]) -> int | None:
    """Index of the first crossing whose removal disconnects the shadow.

    A crossing is nugatory exactly when one of its two smoothings splits
    the underlying curve arrangement into more pieces.
    """
    base = _shadow_components(crossings)
    for k, t in enumerate(crossings):
        for label in (A_SMOOTHING, B_SMOOTHING):
            if _shadow_components(crossings, (k, smoothing_pairs(t, label))) > base:
                return k
    return None


def reduce_nugatory(d: Diagram) -> Diagram:
    """Untwist nugatory crossings until none remain; link type preserved."""
    work = _Oriented.of(d)
    while True:
        k = _find_nugatory(work.crossings)
        if k is None:
            return work.to_diagram()
        work = work.pass_through(k)
