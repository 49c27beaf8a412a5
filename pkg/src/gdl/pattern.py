"""Arrow patterns and the counting bracket ⟨pattern, diagram⟩.

An arrow pattern is a small Gauss-diagram-shaped template: circles carrying
cyclically ordered slots of directed arrows, where each arrow may constrain
the sign of the crossings it is allowed to match.  The bracket counts the
injective embeddings of the pattern into a diagram, each weighted by the
product of the signs of the matched diagram arrows.

Pattern text format (bit-exact)::

    pattern     := circles (" ; " constraints)?
    circles     := circle (" / " circle)*
    circle      := "()" | token (" " token)*
    token       := ("O" | "U") label            -- no sign character
    constraints := entry (" " entry)*
    entry       := label ":" ("+" | "-" | "?")

Labels without an entry are unconstrained ("?").  Example:
``O1 U2 U1 O3 / O2 U3 ; 1:+`` is a two-circle pattern whose arrow 1 must
match a positive crossing.

An embedding maps circles injectively to components and arrows injectively
to arrows so that tails go to tails, heads to heads, sign constraints hold,
and the cyclic order of slots on every circle is preserved.  With
assignment mode ``ordered`` the circle map is forced to be the identity;
with ``all-injective`` (the default) all injective circle maps are summed
over, which recovers unordered-link semantics.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from gdl.diagram import GaussDiagram, Token

__all__ = [
    "PatternError",
    "ORDERED",
    "ALL_INJECTIVE",
    "ArrowPattern",
    "Matching",
    "parse_pattern",
    "serialize_pattern",
    "enumerate_matchings",
    "evaluate_bracket",
]


class PatternError(ValueError):
    """Raised for malformed patterns and impossible evaluation requests."""


ORDERED = "ordered"
ALL_INJECTIVE = "all-injective"

_PTOKEN_RE = re.compile(r"^([OU])([1-9][0-9]*)$")
_CONSTRAINT_RE = re.compile(r"^([1-9][0-9]*):([+\-?])$")

# constraint values: +1, -1, or 0 for unconstrained
UNCONSTRAINED = 0


@dataclass(frozen=True)
class ArrowPattern:
    """Immutable arrow pattern.

    ``circles`` uses the same slot encoding as :class:`GaussDiagram`
    components: (label, True) marks the tail slot, (label, False) the head.
    ``constraints`` maps labels to +1, -1 or 0 (unconstrained), stored
    sorted.  ``assignment_mode`` is ``ordered`` or ``all-injective``.
    """

    circles: tuple[tuple[Token, ...], ...]
    constraints: tuple[tuple[int, int], ...]
    assignment_mode: str = ALL_INJECTIVE

    @staticmethod
    def make(circles, constraints=None, assignment_mode=ALL_INJECTIVE) -> "ArrowPattern":
        comps = tuple(tuple((int(l), bool(o)) for (l, o) in c) for c in circles)
        labels = sorted({l for c in comps for (l, _) in c})
        cmap = {l: UNCONSTRAINED for l in labels}
        for l, v in dict(constraints or {}).items():
            cmap[int(l)] = int(v)
        p = ArrowPattern(comps, tuple(sorted(cmap.items())), assignment_mode)
        _validate_pattern(p)
        return p

    @cached_property
    def constraint_map(self) -> dict[int, int]:
        return dict(self.constraints)

    @cached_property
    def arrow_slots(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        """label -> ((tail circle, tail slot index), (head circle, head slot index))."""
        tails: dict[int, tuple[int, int]] = {}
        heads: dict[int, tuple[int, int]] = {}
        for ci, circle in enumerate(self.circles):
            for si, (label, over) in enumerate(circle):
                (tails if over else heads)[label] = (ci, si)
        return {l: (tails[l], heads[l]) for l in sorted(tails)}

    @property
    def num_circles(self) -> int:
        return len(self.circles)

    @property
    def num_arrows(self) -> int:
        return len(self.constraints)

    def __str__(self) -> str:
        return serialize_pattern(self)


def _validate_pattern(p: ArrowPattern) -> None:
    if not p.circles:
        raise PatternError("pattern needs at least one circle")
    if p.assignment_mode not in (ORDERED, ALL_INJECTIVE):
        raise PatternError(f"unknown assignment mode {p.assignment_mode!r}")
    seen: dict[int, set[bool]] = {}
    for circle in p.circles:
        for label, over in circle:
            if label <= 0:
                raise PatternError(f"label {label} is not a positive integer")
            ends = seen.setdefault(label, set())
            if over in ends:
                raise PatternError(f"label {label} repeats a slot kind")
            ends.add(over)
    for label, ends in seen.items():
        if len(ends) != 2:
            raise PatternError(f"label {label} appears once")
    if sorted(l for l, _ in p.constraints) != sorted(seen):
        raise PatternError("constraint table does not match slot labels")
    for label, v in p.constraints:
        if v not in (1, -1, UNCONSTRAINED):
            raise PatternError(f"bad constraint for label {label}")


def parse_pattern(text: str, assignment_mode: str = ALL_INJECTIVE) -> ArrowPattern:
    """Parse the pattern grammar documented in the module header."""
    if not isinstance(text, str) or not text:
        raise PatternError("empty pattern text")
    if " ; " in text:
        body, _, tail = text.partition(" ; ")
        entries = tail.split(" ") if tail else []
    else:
        body, entries = text, []
    circles: list[tuple[Token, ...]] = []
    for part in body.split(" / "):
        if part == "()":
            circles.append(())
            continue
        tokens = []
        for word in part.split(" "):
            m = _PTOKEN_RE.match(word)
            if m is None:
                raise PatternError(f"bad pattern token {word!r}")
            kind, label_s = m.groups()
            tokens.append((int(label_s), kind == "O"))
        circles.append(tuple(tokens))
    constraints: dict[int, int] = {}
    for entry in entries:
        m = _CONSTRAINT_RE.match(entry)
        if m is None:
            raise PatternError(f"bad constraint entry {entry!r}")
        label = int(m.group(1))
        constraints[label] = {"+": 1, "-": -1, "?": UNCONSTRAINED}[m.group(2)]
    return ArrowPattern.make(circles, constraints, assignment_mode)


def serialize_pattern(p: ArrowPattern) -> str:
    parts = []
    for circle in p.circles:
        if not circle:
            parts.append("()")
        else:
            parts.append(" ".join(f"{'O' if over else 'U'}{label}" for label, over in circle))
    body = " / ".join(parts)
    marks = {1: "+", -1: "-", UNCONSTRAINED: "?"}
    entries = " ".join(f"{l}:{marks[v]}" for l, v in p.constraints)
    return f"{body} ; {entries}" if entries else body


@dataclass(frozen=True)
class Matching:
    """One embedding: injective circle and arrow maps plus its ±1 weight."""

    circle_map: tuple[int, ...]
    arrow_map: tuple[tuple[int, int], ...]
    weight: int


def _circle_maps(p: ArrowPattern, d: GaussDiagram):
    k, n = p.num_circles, d.num_components
    if p.assignment_mode == ORDERED:
        if k > n:
            raise PatternError(
                f"ordered pattern has {k} circles but the diagram has {n} components"
            )
        yield tuple(range(k))
    else:
        yield from itertools.permutations(range(n), k)


def _cyclically_consistent(placed: list[tuple[int, int]], m: int) -> bool:
    """True if slot indices and diagram positions are in matching cyclic order.

    ``placed`` holds (pattern slot index, diagram position) pairs on one
    circle of size >= len(placed); ``m`` is the component length.
    """
    if len(placed) <= 2:
        return True
    anchor_i, anchor_q = min(placed)
    rest = sorted((iq[0] - anchor_i, (iq[1] - anchor_q) % m) for iq in placed)
    offsets = [q for _, q in rest]
    return all(offsets[j] < offsets[j + 1] for j in range(len(offsets) - 1))


def enumerate_matchings(p: ArrowPattern, d: GaussDiagram) -> list[Matching]:
    """All embeddings of ``p`` into ``d``, each exactly once, in a
    deterministic order."""
    _validate_pattern(p)
    results: list[Matching] = []
    p_slots = p.arrow_slots
    p_labels = sorted(p_slots)
    constraints = p.constraint_map
    d_arrows = d.arrows

    for cmap in _circle_maps(p, d):
        # candidate diagram arrows per pattern arrow under this circle map
        cands: dict[int, list[int]] = {}
        ok = True
        for pl in p_labels:
            (tc, _), (hc, _) = p_slots[pl]
            want = constraints[pl]
            cs = [
                a.label
                for a in d_arrows.values()
                if a.tail.component == cmap[tc]
                and a.head.component == cmap[hc]
                and (want == UNCONSTRAINED or a.sign == want)
            ]
            if not cs:
                ok = False
                break
            cands[pl] = sorted(cs)
        if not ok and p_labels:
            continue

        order = sorted(p_labels, key=lambda pl: len(cands[pl]))
        comp_sizes = [len(d.components[c]) for c in range(d.num_components)]
        placed: dict[int, list[tuple[int, int]]] = {ci: [] for ci in range(p.num_circles)}
        used: set[int] = set()
        assignment: dict[int, int] = {}

        def place(pl: int, dl: int) -> bool:
            arrow = d_arrows[dl]
            (tc, ti), (hc, hi) = p_slots[pl]
            added = []
            for circ, idx, pos in ((tc, ti, arrow.tail.position), (hc, hi, arrow.head.position)):
                placed[circ].append((idx, pos))
                added.append(circ)
                if not _cyclically_consistent(placed[circ], comp_sizes[cmap[circ]]):
                    for c2 in added:
                        placed[c2].pop()
                    return False
            return True

        def unplace(pl: int) -> None:
            (tc, _), (hc, _) = p_slots[pl]
            placed[hc].pop()
            placed[tc].pop()

        def backtrack(i: int) -> None:
            if i == len(order):
                weight = 1
                for dl in assignment.values():
                    weight *= d.sign_of(dl)
                amap = tuple(sorted((pl, assignment[pl]) for pl in assignment))
                results.append(Matching(cmap, amap, weight))
                return
            pl = order[i]
            for dl in cands[pl]:
                if dl in used:
                    continue
                if not place(pl, dl):
                    continue
                used.add(dl)
                assignment[pl] = dl
                backtrack(i + 1)
                del assignment[pl]
                used.discard(dl)
                unplace(pl)

        backtrack(0)

    results.sort(key=lambda mt: (mt.circle_map, mt.arrow_map))
    return results


def evaluate_bracket(p: ArrowPattern, d: GaussDiagram) -> int:
    """Sum of weights over all embeddings of ``p`` into ``d``."""
    return sum(mt.weight for mt in enumerate_matchings(p, d))
