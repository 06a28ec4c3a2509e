"""Words in the genus-2 surface group and the homology splittings they induce.

Letters are nonzero ints: 1, 2, 3, 4 stand for a1, b1, a2, b2 and negatives for
their inverses.  The text form uses ``A B C D`` for the generators and ``a b c d``
for the inverses.  Commutators are ``[x, y] = x y x^-1 y^-1`` and conjugation
is ``x^y = y^-1 x y``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import lattice
from .errors import DegenerateInputError, DomainError, NotASplittingError, TableVerificationError

A1, B1, A2, B2 = 1, 2, 3, 4
_TO_CHAR = {1: "A", 2: "B", 3: "C", 4: "D", -1: "a", -2: "b", -3: "c", -4: "d"}
_FROM_CHAR = {v: k for k, v in _TO_CHAR.items()}
_PRETTY = {1: "a1", 2: "b1", 3: "a2", 4: "b2"}


@dataclass(frozen=True)
class SurfaceWord:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if any(x == 0 or abs(x) > 4 for x in letters):
            raise DomainError("letters must be in {+-1, ..., +-4}", letters=list(letters))
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def parse(cls, text: str) -> "SurfaceWord":
        try:
            return cls(tuple(_FROM_CHAR[ch] for ch in text if not ch.isspace()))
        except KeyError as exc:
            raise DomainError("word strings use only A,a,B,b,C,c,D,d", text=text) from exc

    def __str__(self):
        return "".join(_TO_CHAR[x] for x in self.letters)

    def pretty(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(_PRETTY[abs(x)] + ("^-1" if x < 0 else "") for x in self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "SurfaceWord") -> "SurfaceWord":
        return SurfaceWord(self.letters + other.letters)

    def inverse(self) -> "SurfaceWord":
        return SurfaceWord(tuple(-x for x in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int) -> "SurfaceWord":
        base = self if n >= 0 else self.inverse()
        out = SurfaceWord()
        for _ in range(abs(n)):
            out = out * base
        return out


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def free_reduce(letters) -> SurfaceWord:
    if isinstance(letters, str):
        return SurfaceWord.parse(letters)
    if isinstance(letters, SurfaceWord):
        return letters
    return SurfaceWord(tuple(letters))


def word(text: str) -> SurfaceWord:
    return SurfaceWord.parse(text)


a1, b1, a2, b2 = (SurfaceWord((i,)) for i in (A1, B1, A2, B2))
IDENTITY = SurfaceWord()


def commutator(x: SurfaceWord, y: SurfaceWord) -> SurfaceWord:
    return x * y * x.inverse() * y.inverse()


def conjugate(w: SurfaceWord, g: SurfaceWord) -> SurfaceWord:
    """w^g = g^-1 w g."""
    return g.inverse() * w * g


def abelianize(w: SurfaceWord) -> tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]
    for x in w.letters:
        counts[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(counts)


def hall_witt_check(x: SurfaceWord, y: SurfaceWord, z: SurfaceWord) -> bool:
    first = commutator(x, y * z) == commutator(x, y) * conjugate(commutator(x, z), y.inverse())
    second = commutator(x * y, z) == conjugate(commutator(y, z), x.inverse()) * commutator(x, z)
    return first and second


# The four curves of the four-term relation, written as given.
SCC_LEFT = commutator(a1, b1 * a2)
SCC_SECOND = conjugate(commutator(b1.inverse(), a2 * a1), b1.inverse() * a1.inverse() * b1.inverse())
SCC_THIRD = commutator(a1, b1)
SCC_FOURTH = conjugate(commutator(a1 * b1, a2 * a1), b1.inverse())


def four_term_relation() -> bool:
    """[a1, b1 a2] = [a1, b1] [b1^-1, a2 a1]^(b1^-1 a1^-1 b1^-1) [a1 b1, a2 a1]^(b1^-1)."""
    return SCC_LEFT == SCC_THIRD * SCC_SECOND * SCC_FOURTH


def four_term_steps() -> dict[str, bool]:
    """The relation together with the two intermediate identities used to derive it."""
    expand = SCC_LEFT == commutator(a1, b1) * conjugate(commutator(a1, a2), b1.inverse())
    absorb = commutator(a1, a2) == commutator(a1, a2 * a1)
    regroup = commutator(a1, a2 * a1) == (
        conjugate(commutator(b1.inverse(), a2 * a1), b1.inverse() * a1.inverse())
        * commutator(a1 * b1, a2 * a1)
    )
    return {
        "relation": four_term_relation(),
        "hall_witt_expansion": expand,
        "commutator_absorption": absorb,
        "regrouping": regroup,
    }


# --- word problem -------------------------------------------------------------

RELATOR = commutator(a1, b1) * commutator(a2, b2)


def _symmetrized(relator: SurfaceWord) -> list[tuple[int, ...]]:
    out = []
    for r in (relator.letters, relator.inverse().letters):
        for i in range(len(r)):
            rot = r[i:] + r[:i]
            if rot not in out:
                out.append(rot)
    return out


_RELATORS = _symmetrized(RELATOR)


def _dehn_step(letters: tuple[int, ...]) -> tuple[int, ...] | None:
    n = len(RELATOR)
    half = n // 2
    for r in _RELATORS:
        for length in range(n, half, -1):
            piece = r[:length]
            for start in range(len(letters) - length + 1):
                if letters[start:start + length] == piece:
                    # piece * rest = 1, so piece = rest^-1
                    rest = r[length:]
                    replacement = tuple(-x for x in reversed(rest))
                    return _reduce(letters[:start] + replacement + letters[start + length:])
    return None


def dehn_reduce(w: SurfaceWord) -> SurfaceWord:
    """Apply Dehn's algorithm until no more than half of a relator appears."""
    letters = w.letters
    while letters:
        nxt = _dehn_step(letters)
        if nxt is None:
            break
        letters = nxt
    return SurfaceWord(letters)


def dehn_is_trivial(w: SurfaceWord) -> bool:
    return len(dehn_reduce(w)) == 0


def random_word(rng: random.Random, max_len: int) -> SurfaceWord:
    n = rng.randint(0, max_len)
    return SurfaceWord(tuple(rng.choice((1, 2, 3, 4)) * rng.choice((1, -1)) for _ in range(n)))


# --- homology -----------------------------------------------------------------

# Intersection form on (a1, b1, a2, b2) with a_i . b_i = 1.
INTERSECTION = [
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, -1, 0],
]


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * INTERSECTION[i][j] * v[j] for i in range(4) for j in range(4))


def symplectic_complement(rows) -> list[list[int]]:
    pair_matrix = [[sum(r[i] * INTERSECTION[i][j] for i in range(4)) for j in range(4)] for r in rows]
    return lattice.integer_kernel(pair_matrix)


@dataclass(frozen=True)
class HomologySplitting:
    v_plus: tuple[tuple[int, ...], ...]
    v_minus: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "v_plus", tuple(tuple(int(x) for x in r) for r in self.v_plus))
        object.__setattr__(self, "v_minus", tuple(tuple(int(x) for x in r) for r in self.v_minus))

    def invariant_report(self) -> dict[str, bool]:
        plus, minus = [list(r) for r in self.v_plus], [list(r) for r in self.v_minus]
        shapes = len(plus) == 2 and len(minus) == 2 and all(len(r) == 4 for r in plus + minus)
        if not shapes:
            return {"shape": False}
        return {
            "shape": True,
            "saturated": lattice.is_saturated(plus) and lattice.is_saturated(minus),
            "orthogonal": all(pairing(u, v) == 0 for u in plus for v in minus),
            "spans_Z4": abs(lattice.det(plus + minus)) == 1,
            "unimodular": abs(pairing(*plus)) == 1 and abs(pairing(*minus)) == 1,
        }

    def is_valid(self) -> bool:
        return all(self.invariant_report().values())

    def canonical(self) -> frozenset:
        return frozenset(
            tuple(map(tuple, lattice.hermite_rows(part))) for part in (self.v_plus, self.v_minus)
        )

    def swapped(self) -> "HomologySplitting":
        return HomologySplitting(self.v_minus, self.v_plus)

    def to_json(self) -> dict:
        return {"v_plus": [list(r) for r in self.v_plus], "v_minus": [list(r) for r in self.v_minus]}


def splitting_from_scc(c: SurfaceWord, u: SurfaceWord, v: SurfaceWord) -> HomologySplitting:
    """Splitting induced by the separating curve c [u, v] c^-1.

    One side is the saturation of the span of the classes of u and v; the other
    is its orthogonal complement under the intersection form.  The conjugator
    does not affect the answer.
    """
    span = [list(abelianize(u)), list(abelianize(v))]
    if lattice.rank(span) < 2:
        raise DegenerateInputError("classes of u and v do not span a rank-2 lattice",
                                   u=str(u), v=str(v))
    plus = lattice.saturation(span)
    minus = symplectic_complement(plus)
    out = HomologySplitting(tuple(map(tuple, plus)), tuple(map(tuple, minus)))
    report = out.invariant_report()
    if not all(report.values()):
        raise NotASplittingError("input does not induce a homology splitting",
                                 c=str(c), u=str(u), v=str(v), invariants=report)
    return out


def splittings_equal(first: HomologySplitting, second: HomologySplitting) -> bool:
    return first.canonical() == second.canonical()


# Rows of the table: (label, conjugator c in c[u,v]c^-1, u, v, expected V+, expected V-).
# Expected sublattices use coordinates on (a1, b1, a2, b2).
SPLITTING_TABLE = [
    ("[a1,b1a2]", IDENTITY, a1, b1 * a2,
     [(1, 0, 0, 0), (0, 1, 1, 0)], [(0, 0, 1, 0), (1, 0, 0, 1)]),
    ("[b1^-1,a2a1]^(b1^-1a1^-1b1^-1)", b1 * a1 * b1, b1.inverse(), a2 * a1,
     [(0, -1, 0, 0), (1, 0, 1, 0)], [(0, 0, 1, 0), (0, -1, 0, 1)]),
    ("[a1,b1]", IDENTITY, a1, b1,
     [(1, 0, 0, 0), (0, 1, 0, 0)], [(0, 0, 1, 0), (0, 0, 0, 1)]),
    ("[a1b1,a2a1]^(b1^-1)", b1, a1 * b1, a2 * a1,
     [(1, 1, 0, 0), (1, 0, 1, 0)], [(0, 0, 1, 0), (-1, -1, 0, 1)]),
]


def figure2_verify() -> dict:
    """Recompute the four splittings and check them against the table."""
    rows = []
    computed = []
    words = [SCC_LEFT, SCC_SECOND, SCC_THIRD, SCC_FOURTH]
    for (label, c, u, v, plus, minus), w in zip(SPLITTING_TABLE, words):
        curve = c * commutator(u, v) * c.inverse()
        if curve != w:
            raise TableVerificationError("conjugated commutator does not match the listed word", row=label)
        split = splitting_from_scc(c, u, v)
        expected = HomologySplitting(plus, minus)
        matches = splittings_equal(split, expected)
        null_homologous = abelianize(curve) == (0, 0, 0, 0)
        if not (matches and null_homologous):
            raise TableVerificationError("table row does not verify", row=label,
                                         computed=split.to_json(), expected=expected.to_json())
        rows.append({
            "row": label,
            "word": str(curve),
            "computed": split.to_json(),
            "matches_table": matches,
            "null_homologous": null_homologous,
            "invariants": split.invariant_report(),
        })
        computed.append(split)
    distinct = all(
        not splittings_equal(computed[i], computed[j])
        for i in range(len(computed)) for j in range(i + 1, len(computed))
    )
    if not distinct:
        raise TableVerificationError("table splittings are not pairwise distinct")
    relation = four_term_relation()
    if not relation:
        raise TableVerificationError("four-term commutator relation fails")
    return {"rows": rows, "pairwise_distinct": distinct, "relation_holds": relation, "passed": True}
