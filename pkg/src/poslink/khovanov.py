"""Integral Khovanov homology from the cube of resolutions.

Generators at a cube vertex are labelings of the smoothed circles by the
two-dimensional Frobenius algebra basis {1, x}; edges merge or split
circles and carry the usual sign rule (parity of B-smoothings at lower
coordinates).  Gradings are fixed so the crossing-free unknot has homology
Z at (0, -1) and (0, 1), which makes the graded Euler characteristic equal
the unnormalized Jones polynomial:

    i = (#B-smoothings) - q(D)
    j = (#1-labels - #x-labels) + #B-smoothings + p(D) - 2 q(D)

The differential preserves j, so each quantum grading is an independent
chain complex of free abelian groups; homology is read off the Smith
normal form of its boundary maps, torsion included.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .diagram import (
    Diagram,
    a_state_circles,
    b_state_circles,
    crossing_signs,
    smoothing_pairs,
)
from .errors import (
    CrossingCapExceeded,
    EmptyHomology,
    MalformedKhPolynomial,
    UnsupportedTorsionExponent,
)
from .laurent import LaurentPoly
from .snf import snf_divisors

DEFAULT_CROSSING_CAP = 16


class BigradedGroups:
    """Map (homological grading i, quantum grading j) -> abelian group,
    stored as (free rank, sorted torsion orders).  Trivial groups are
    absent; all quantum gradings share one parity."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[tuple[int, int], tuple[int, Iterator[int]]] = ()):
        data: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j), (rank, torsion) in items:
            torsion = tuple(sorted(int(t) for t in torsion))
            rank = int(rank)
            if rank < 0 or any(t < 2 for t in torsion):
                raise ValueError(f"invalid group data at ({i}, {j})")
            if rank or torsion:
                data[(int(i), int(j))] = (rank, torsion)
        parities = {j & 1 for _, j in data}
        if len(parities) > 1:
            raise ValueError("quantum gradings mix parities")
        self._entries = data

    def items(self) -> list[tuple[tuple[int, int], tuple[int, tuple[int, ...]]]]:
        return sorted(self._entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def rank(self, i: int, j: int) -> int:
        return self._entries.get((i, j), (0, ()))[0]

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self._entries.get((i, j), (0, ()))[1]

    def total_rank_at(self, i: int) -> int:
        return sum(rank for (ii, _), (rank, _) in self._entries.items() if ii == i)

    def j_range(self) -> tuple[int, int]:
        if not self._entries:
            raise EmptyHomology("no nonzero homology groups")
        js = [j for _, j in self._entries]
        return min(js), max(js)

    def mirror(self) -> "BigradedGroups":
        """Groups of the mirror diagram: free parts reflect through the
        origin, torsion shifts one homological degree (universal
        coefficients)."""
        free: dict[tuple[int, int], int] = {}
        tors: dict[tuple[int, int], list[int]] = {}
        for (i, j), (rank, torsion) in self._entries.items():
            if rank:
                free[(-i, -j)] = rank
            for t in torsion:
                tors.setdefault((1 - i, -j), []).append(t)
        keys = set(free) | set(tors)
        return BigradedGroups(
            {k: (free.get(k, 0), tuple(tors.get(k, ()))) for k in keys}
        )

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedGroups):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        return f"BigradedGroups({format_kh_polynomial(self)!r})"


@dataclass(frozen=True)
class GradingSummary:
    """Extreme quantum gradings of the homology next to the diagram-level
    potential window that must contain them."""

    j_lower: int
    j_upper: int
    j_min_potential: int
    j_max_potential: int

    def __post_init__(self) -> None:
        if not (
            self.j_min_potential <= self.j_lower <= self.j_upper <= self.j_max_potential
        ):
            raise ValueError(
                "potential gradings must sandwich the realized gradings: "
                f"{self.j_min_potential} <= {self.j_lower} <= "
                f"{self.j_upper} <= {self.j_max_potential}"
            )


@dataclass
class ChainSlice:
    """The subcomplex at one quantum grading: generator counts per
    homological degree and the boundary matrices between them."""

    quantum_grading: int
    generator_counts: dict[int, int]
    boundaries: dict[int, list[list[int]]]  # i -> matrix C^i -> C^(i+1)


def _state_circles_data(d: Diagram, mask: int, a_pairs, b_pairs) -> tuple[list[int], dict[int, int]]:
    """Circle keys (sorted minimal arcs, then free-circle sentinels) and an
    arc -> circle-index map for one cube vertex."""
    parent = list(range(d.arc_count + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(d.crossing_count):
        for x, y in (b_pairs[e] if (mask >> e) & 1 else a_pairs[e]):
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx > ry:
                    rx, ry = ry, rx
                parent[ry] = rx
    keys = sorted({find(arc) for arc in range(1, d.arc_count + 1)})
    keys += [-(f + 1) for f in range(d.free_circles)]
    index = {key: pos for pos, key in enumerate(keys)}
    arc_to_circle = {arc: index[find(arc)] for arc in range(1, d.arc_count + 1)}
    return keys, arc_to_circle


def chain_slices(d: Diagram, *, cap: int = DEFAULT_CROSSING_CAP) -> dict[int, ChainSlice]:
    """Assemble the full cube as independent per-quantum-grading complexes."""
    c = d.crossing_count
    if c > cap:
        raise CrossingCapExceeded(
            f"{c} crossings exceed the homology cap of {cap}; raise the cap "
            "explicitly to accept the 2^c cost"
        )
    signs = crossing_signs(d).signs
    p = sum(1 for s in signs if s > 0)
    qn = c - p
    shift = p - 2 * qn
    a_pairs = [smoothing_pairs(t, "A") for t in d.crossings]
    b_pairs = [smoothing_pairs(t, "B") for t in d.crossings]

    states = [
        _state_circles_data(d, mask, a_pairs, b_pairs) for mask in range(1 << c)
    ]

    # first pass: index every generator within its (i, j) slot
    counts: dict[tuple[int, int], int] = {}
    offsets: list[list[int]] = []  # per mask: generator index offset per labeling
    for mask in range(1 << c):
        keys, _ = states[mask]
        n = len(keys)
        i = mask.bit_count() - qn
        base = mask.bit_count() + shift
        local = []
        for bits in range(1 << n):
            j = (n - 2 * bits.bit_count()) + base
            pos = counts.get((i, j), 0)
            counts[(i, j)] = pos + 1
            local.append(pos)
        offsets.append(local)

    matrices: dict[tuple[int, int], list[list[int]]] = {}

    def matrix_for(i: int, j: int) -> list[list[int]] | None:
        rows = counts.get((i + 1, j), 0)
        cols = counts.get((i, j), 0)
        if cols == 0:
            return None
        m = matrices.get((i, j))
        if m is None:
            m = [[0] * cols for _ in range(rows)]
            matrices[(i, j)] = m
        return m

    # second pass: differentials along each cube edge
    for mask in range(1 << c):
        keys1, arc_circle1 = states[mask]
        n1 = len(keys1)
        i = mask.bit_count() - qn
        base1 = mask.bit_count() + shift
        for e in range(c):
            bit = 1 << e
            if mask & bit:
                continue
            mask2 = mask | bit
            keys2, arc_circle2 = states[mask2]
            sign = -1 if (mask & (bit - 1)).bit_count() & 1 else 1
            a, b, _, _ = d.crossings[e]
            s1, s2 = arc_circle1[a], arc_circle1[b]
            target_index2 = {key: pos for pos, key in enumerate(keys2)}
            if s1 != s2:
                merged = arc_circle2[a]
                rest = [
                    (src, target_index2[key])
                    for src, key in enumerate(keys1)
                    if src not in (s1, s2)
                ]
                _emit_merge(
                    matrix_for, offsets, mask, mask2, i,
                    base1, n1, s1, s2, merged, rest, sign,
                )
            else:
                t1, t2 = arc_circle2[a], arc_circle2[d.crossings[e][2]]
                rest = [
                    (src, target_index2[key])
                    for src, key in enumerate(keys1)
                    if src != s1
                ]
                _emit_split(
                    matrix_for, offsets, mask, mask2, i,
                    base1, n1, s1, t1, t2, rest, sign,
                )

    slices: dict[int, ChainSlice] = {}
    for (i, j), n in sorted(counts.items()):
        sl = slices.setdefault(j, ChainSlice(j, {}, {}))
        sl.generator_counts[i] = n
    for j, sl in slices.items():
        for i in sl.generator_counts:
            m = matrices.get((i, j))
            if m is None:
                m = [[0] * sl.generator_counts[i] for _ in range(counts.get((i + 1, j), 0))]
            sl.boundaries[i] = m
    return slices


def _emit_merge(matrix_for, offsets, mask, mask2, i, base1, n1,
                s1, s2, merged, rest, sign):
    bs1, bs2 = 1 << s1, 1 << s2
    for bits in range(1 << n1):
        la, lb = bits & bs1, bits & bs2
        if la and lb:
            continue  # x . x = 0
        out = 1 << merged if (la or lb) else 0
        for src, dst in rest:
            if bits & (1 << src):
                out |= 1 << dst
        j = (n1 - 2 * bits.bit_count()) + base1
        m = matrix_for(i, j)
        m[offsets[mask2][out]][offsets[mask][bits]] += sign


def _emit_split(matrix_for, offsets, mask, mask2, i, base1, n1,
                s1, t1, t2, rest, sign):
    b1, b2 = 1 << t1, 1 << t2
    for bits in range(1 << n1):
        out = 0
        for src, dst in rest:
            if bits & (1 << src):
                out |= 1 << dst
        j = (n1 - 2 * bits.bit_count()) + base1
        m = matrix_for(i, j)
        col = offsets[mask][bits]
        if bits & (1 << s1):
            m[offsets[mask2][out | b1 | b2]][col] += sign  # x -> x.x
        else:
            m[offsets[mask2][out | b2]][col] += sign  # 1 -> 1.x + x.1
            m[offsets[mask2][out | b1]][col] += sign


def khovanov_homology(d: Diagram, *, cap: int = DEFAULT_CROSSING_CAP) -> BigradedGroups:
    """Homology groups over Z per (i, j), via Smith normal form per slice."""
    slices = chain_slices(d, cap=cap)
    entries: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for j, sl in slices.items():
        divisors = {i: snf_divisors(m) for i, m in sl.boundaries.items()}
        for i, n in sl.generator_counts.items():
            rank_out = len(divisors.get(i, ()))
            incoming = divisors.get(i - 1, [])
            free = n - rank_out - len(incoming)
            torsion = tuple(t for t in incoming if t > 1)
            if free or torsion:
                entries[(i, j)] = (free, torsion)
    return BigradedGroups(entries)


def euler_characteristic(kh: BigradedGroups) -> LaurentPoly:
    """Alternating sum of free ranks per quantum grading; torsion ignored.

    Equals the unnormalized Jones polynomial of the link.
    """
    out = LaurentPoly.zero()
    for (i, j), (rank, _) in kh.items():
        if rank:
            out = out + LaurentPoly.term(-rank if i & 1 else rank, j)
    return out


def kh1_rank(kh: BigradedGroups) -> int:
    """Total free rank in homological grading 1."""
    return kh.total_rank_at(1)


def extreme_gradings(kh: BigradedGroups, d: Diagram) -> GradingSummary:
    """Realized extreme quantum gradings plus the diagram's potential window
    c - 3q - |s_A| .. -c + 3p + |s_B|."""
    if not kh:
        raise EmptyHomology("no nonzero homology groups; nonempty links always have some")
    j_lower, j_upper = kh.j_range()
    signs = crossing_signs(d).signs
    c = d.crossing_count
    p = sum(1 for s in signs if s > 0)
    qn = c - p
    return GradingSummary(
        j_lower=j_lower,
        j_upper=j_upper,
        j_min_potential=c - 3 * qn - a_state_circles(d),
        j_max_potential=-c + 3 * p + b_state_circles(d),
    )


# --------------------------------------------------------------------------
# the t/q/T text form


def parse_kh_polynomial(text: str) -> BigradedGroups:
    """Parse a homology polynomial: ``a t^i q^j`` terms give Z^a at (i, j)
    and ``a t^i q^j T^2`` terms give (Z/2)^a; coefficients may be grouped
    as polynomials in t, e.g. ``(1 + t)q^3``."""
    s = text.strip()
    if not s:
        raise MalformedKhPolynomial("empty homology polynomial")
    if s == "0":
        return BigradedGroups({})
    free: dict[tuple[int, int], int] = {}
    torsion: dict[tuple[int, int], int] = {}
    for sign, body in _split_signed_terms(s):
        tpoly, j, torsion_part = _parse_kh_term(body)
        for exp, coeff in tpoly.terms():
            if exp.denominator != 1:
                raise MalformedKhPolynomial(f"homological grading {exp} is not an integer")
            kind = torsion if torsion_part else free
            key = (int(exp), j)
            kind[key] = kind.get(key, 0) + sign * coeff
    for name, table in (("rank", free), ("torsion multiplicity", torsion)):
        for key, mult in table.items():
            if mult < 0:
                raise MalformedKhPolynomial(f"negative {name} at {key}")
    try:
        return BigradedGroups(
            {
                key: (free.get(key, 0), (2,) * torsion.get(key, 0))
                for key in set(free) | set(torsion)
            }
        )
    except ValueError as exc:
        raise MalformedKhPolynomial(str(exc)) from None


_KH_TERM_RE = re.compile(
    r"""^(?P<coeff>\((?:[^()]|\([^()]*\))*\)|[^q]*?)\s*\*?\s*
        q(?:\s*\^\s*(?P<j>[({\[]?\s*-?\d+\s*[)}\]]?))?
        \s*(?P<tors>T(?:\s*\^\s*(?P<texp>[({\[]?\s*-?\d+\s*[)}\]]?))?)?\s*$""",
    re.X,
)


def _parse_kh_term(body: str) -> tuple[LaurentPoly, int, bool]:
    from .laurent import parse_poly  # local import keeps module load cheap

    m = _KH_TERM_RE.match(body.strip())
    if not m:
        raise MalformedKhPolynomial(f"cannot parse term {body!r}")
    coeff, j_token, tors, texp = m.group("coeff", "j", "tors", "texp")
    coeff = (coeff or "").strip()
    if coeff.startswith("("):
        tpoly = parse_poly(coeff[1:-1], "t")
    elif coeff == "":
        tpoly = LaurentPoly.one()
    else:
        tpoly = parse_poly(coeff, "t")
    j = _int_token(j_token) if j_token is not None else 1
    if tors is not None:
        if texp is None or _int_token(texp) != 2:
            raise UnsupportedTorsionExponent(
                f"only T^2 torsion markers are supported: {body!r}"
            )
    return tpoly, j, tors is not None


def _int_token(token: str) -> int:
    return int(token.strip().strip("({[)}]").strip())


def _split_signed_terms(s: str) -> list[tuple[int, str]]:
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    current: list[str] = []
    prev = ""
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise MalformedKhPolynomial("unbalanced brackets")
        if ch in "+-" and depth == 0 and prev != "^":
            if current and "".join(current).strip():
                terms.append((sign, "".join(current).strip()))
                current = []
            sign = 1 if ch == "+" else -1
            prev = ch
            continue
        current.append(ch)
        if not ch.isspace():
            prev = ch
    if depth != 0:
        raise MalformedKhPolynomial("unbalanced brackets")
    tail = "".join(current).strip()
    if not tail:
        raise MalformedKhPolynomial("dangling sign")
    terms.append((sign, tail))
    return terms


def format_kh_polynomial(kh: BigradedGroups) -> str:
    """Canonical text: free part grouped by quantum grading, then torsion
    terms, both in ascending (j, i) order.  Bit-exact round trip with
    :func:`parse_kh_polynomial`."""
    by_j: dict[int, list[tuple[int, int]]] = {}
    torsion_terms: list[tuple[int, int, int]] = []
    for (i, j), (rank, torsion) in kh.items():
        if rank:
            by_j.setdefault(j, []).append((i, rank))
        if torsion:
            torsion_terms.append((j, i, len(torsion)))
    pieces = []
    for j in sorted(by_j):
        monomials = [_t_monomial(rank, i) for i, rank in sorted(by_j[j])]
        qpart = "q" if j == 1 else f"q^{j}"
        if len(monomials) == 1:
            mono = monomials[0]
            pieces.append(qpart if mono == "1" else f"{mono} {qpart}")
        else:
            pieces.append("(" + " + ".join(monomials) + ")" + qpart)
    for j, i, mult in sorted(torsion_terms):
        qpart = "q" if j == 1 else f"q^{j}"
        mono = _t_monomial(mult, i)
        head = qpart if mono == "1" else f"{mono} {qpart}"
        pieces.append(f"{head} T^2")
    return " + ".join(pieces) if pieces else "0"


def _t_monomial(coeff: int, i: int) -> str:
    if i == 0:
        return str(coeff)
    power = "t" if i == 1 else f"t^{i}"
    return power if coeff == 1 else f"{coeff}{power}"
