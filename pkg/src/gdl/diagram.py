"""Core data model for multi-component Gauss diagrams.

A Gauss diagram is an ordered list of oriented circles (the components)
together with signed, directed chords (the arrows).  Each arrow records one
crossing: its tail sits on the over-passing visit, its head on the
under-passing visit, and its sign is the usual crossing sign.

Diagrams are abstract: no planarity or realizability condition is imposed,
so every combinatorially valid diagram is accepted (the virtual setting).

Text format (bit-exact)::

    diagram   := component (" / " component)*
    component := "()" | token (" " token)*
    token     := ("O" | "U") label ("+" | "-")
    label     := positive decimal integer

Every label appears exactly twice in the whole diagram, once with O (over,
the arrow tail) and once with U (under, the arrow head), with identical
sign characters at both occurrences.  Example: ``O1+ U2- U1+ O2- / ()`` is
a two-component diagram whose second component carries no endpoints.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "GaussCodeError",
    "EndpointRef",
    "Arrow",
    "GaussDiagram",
    "parse_gauss_code",
    "serialize",
    "canonical_form",
    "random_diagram",
]


class GaussCodeError(ValueError):
    """Raised for malformed Gauss codes and invalid diagram structures."""


# A slot holds one arrow visit: (label, True) for the over-passing visit
# (tail), (label, False) for the under-passing visit (head).
Token = tuple[int, bool]

_TOKEN_RE = re.compile(r"^([OU])([1-9][0-9]*)([+-])$")


@dataclass(frozen=True)
class EndpointRef:
    """Position of one arrow end: component index and slot index."""

    component: int
    position: int


@dataclass(frozen=True)
class Arrow:
    """A signed, directed chord.  tail = over visit, head = under visit."""

    label: int
    sign: int
    tail: EndpointRef
    head: EndpointRef


@dataclass(frozen=True)
class GaussDiagram:
    """Immutable multi-component Gauss diagram.

    ``components`` is a tuple of cyclic slot sequences; ``signs`` maps each
    arrow label to its sign, stored as a sorted tuple of pairs so the whole
    value is hashable.  Use :func:`parse_gauss_code` or
    :meth:`GaussDiagram.make` to construct validated instances.
    """

    components: tuple[tuple[Token, ...], ...]
    signs: tuple[tuple[int, int], ...]

    @staticmethod
    def make(components, signs) -> "GaussDiagram":
        comps = tuple(tuple((int(l), bool(o)) for (l, o) in comp) for comp in components)
        sgns = tuple(sorted((int(l), int(s)) for (l, s) in dict(signs).items()))
        d = GaussDiagram(comps, sgns)
        validate(d)
        return d

    @cached_property
    def sign_map(self) -> dict[int, int]:
        return dict(self.signs)

    @cached_property
    def arrows(self) -> dict[int, Arrow]:
        """Arrows keyed by label, with endpoint references resolved."""
        tails: dict[int, EndpointRef] = {}
        heads: dict[int, EndpointRef] = {}
        for ci, comp in enumerate(self.components):
            for pi, (label, over) in enumerate(comp):
                ref = EndpointRef(ci, pi)
                (tails if over else heads)[label] = ref
        return {
            label: Arrow(label, sign, tails[label], heads[label])
            for label, sign in self.signs
        }

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def num_arrows(self) -> int:
        return len(self.signs)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(label for label, _ in self.signs)

    def sign_of(self, label: int) -> int:
        return self.sign_map[label]

    def arrow(self, label: int) -> Arrow:
        return self.arrows[label]

    def token_at(self, ref: EndpointRef) -> Token:
        return self.components[ref.component][ref.position]

    def serialize(self) -> str:
        return serialize(self)

    def canonical(self) -> "GaussDiagram":
        return canonical_form(self)

    def __str__(self) -> str:
        return serialize(self)


def validate(d: GaussDiagram) -> None:
    """Check the structural invariants; raise :class:`GaussCodeError` if broken.

    Every label occurs exactly once as O and once as U, the sign table covers
    exactly the labels on the circles, and the slot count is twice the arrow
    count.
    """
    if not isinstance(d.components, tuple) or not d.components:
        raise GaussCodeError("diagram needs at least one component")
    seen: dict[int, set[bool]] = {}
    total = 0
    for comp in d.components:
        for label, over in comp:
            if label <= 0:
                raise GaussCodeError(f"label {label} is not a positive integer")
            ends = seen.setdefault(label, set())
            if over in ends:
                kind = "O" if over else "U"
                raise GaussCodeError(f"label {label} appears twice as {kind}")
            ends.add(over)
            total += 1
    for label, ends in seen.items():
        if len(ends) != 2:
            raise GaussCodeError(f"label {label} appears once")
    sign_labels = [label for label, _ in d.signs]
    if sorted(sign_labels) != sorted(seen):
        raise GaussCodeError("sign table does not match the labels on the circles")
    if len(sign_labels) != len(set(sign_labels)):
        raise GaussCodeError("duplicate label in sign table")
    for label, sign in d.signs:
        if sign not in (1, -1):
            raise GaussCodeError(f"sign of arrow {label} must be +1 or -1")
    if total != 2 * len(d.signs):
        raise GaussCodeError("slot count must equal twice the arrow count")


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse the bit-exact Gauss code grammar documented in the module header."""
    if not isinstance(text, str) or not text:
        raise GaussCodeError("empty Gauss code")
    components: list[tuple[Token, ...]] = []
    signs: dict[int, int] = {}
    for part in text.split(" / "):
        if part == "()":
            components.append(())
            continue
        tokens: list[Token] = []
        for word in part.split(" "):
            m = _TOKEN_RE.match(word)
            if m is None:
                raise GaussCodeError(f"bad token {word!r}")
            kind, label_s, sign_s = m.groups()
            label = int(label_s)
            sign = 1 if sign_s == "+" else -1
            if label in signs and signs[label] != sign:
                raise GaussCodeError(f"sign mismatch for label {label}")
            signs[label] = sign
            tokens.append((label, kind == "O"))
        components.append(tuple(tokens))
    d = GaussDiagram(tuple(components), tuple(sorted(signs.items())))
    validate(d)
    return d


def serialize(d: GaussDiagram) -> str:
    """Inverse of :func:`parse_gauss_code` (identical text for parsed input)."""
    sm = d.sign_map
    parts = []
    for comp in d.components:
        if not comp:
            parts.append("()")
        else:
            parts.append(" ".join(
                f"{'O' if over else 'U'}{label}{'+' if sm[label] > 0 else '-'}"
                for label, over in comp
            ))
    return " / ".join(parts)


def _relabelled_code(d: GaussDiagram, perm: tuple[int, ...], rots: tuple[int, ...]) -> str:
    """Serialize after permuting components, rotating each, and relabelling
    arrows 1,2,... in order of first occurrence."""
    sm = d.sign_map
    relabel: dict[int, int] = {}
    parts = []
    for ci, rot in zip(perm, rots):
        comp = d.components[ci]
        m = len(comp)
        if m == 0:
            parts.append("()")
            continue
        words = []
        for k in range(m):
            label, over = comp[(rot + k) % m]
            new = relabel.setdefault(label, len(relabel) + 1)
            words.append(f"{'O' if over else 'U'}{new}{'+' if sm[label] > 0 else '-'}")
        parts.append(" ".join(words))
    return " / ".join(parts)


def canonical_form(d: GaussDiagram) -> GaussDiagram:
    """Canonical representative of the isomorphism class of ``d``.

    Isomorphism allows independent rotation of each component, permutation of
    components, and relabelling of arrows.  The representative is the
    candidate whose relabelled serialization is lexicographically minimal.
    """
    best: str | None = None
    n = len(d.components)
    for perm in itertools.permutations(range(n)):
        rot_ranges = [range(max(len(d.components[ci]), 1)) for ci in perm]
        for rots in itertools.product(*rot_ranges):
            code = _relabelled_code(d, perm, rots)
            if best is None or code < best:
                best = code
    assert best is not None
    return parse_gauss_code(best)


def random_diagram(num_components: int, num_arrows: int, seed: int) -> GaussDiagram:
    """Seeded uniform-ish random diagram.

    Each endpoint is assigned an independent uniformly random component, the
    cyclic arrangement comes from a uniform shuffle of all 2n endpoints, and
    directions and signs are uniform per arrow.  Same inputs, same diagram.
    """
    if num_components < 1:
        raise GaussCodeError("need at least one component")
    if num_arrows < 0:
        raise GaussCodeError("arrow count must be nonnegative")
    rng = random.Random(seed)
    slots: list[Token] = []
    signs = {}
    for label in range(1, num_arrows + 1):
        slots.append((label, True))
        slots.append((label, False))
        signs[label] = rng.choice((1, -1))
    rng.shuffle(slots)
    comps: list[list[Token]] = [[] for _ in range(num_components)]
    for tok in slots:
        comps[rng.randrange(num_components)].append(tok)
    d = GaussDiagram(tuple(tuple(c) for c in comps), tuple(sorted(signs.items())))
    validate(d)
    return d
