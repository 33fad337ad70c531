"""Two-alternative preference profiles and the primitive operations on them.

A profile holds one weak ordering per voter over the pair of alternatives,
so every voter is in exactly one of three states: strictly for X, strictly
for Y, or indifferent. Everything in this module is a pure function on
immutable values; profiles compare structurally and hash, so results are
cached and safely shared across threads.

Canonical profile numbering: a profile is read as a base-3 integer whose
digit for voter 0 is least significant, with digit encoding STRICT_X=0,
STRICT_Y=1, INDIFFERENT=2. Every "first counterexample" report in the
package breaks ties by this index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterator, Sequence


class Alternative(Enum):
    """One of the two options on the table."""

    X = "X"
    Y = "Y"

    @property
    def other(self) -> "Alternative":
        """The unique alternative that is not this one."""
        return Alternative.Y if self is Alternative.X else Alternative.X


class Preference(IntEnum):
    """A single voter's weak ordering of the two alternatives.

    The integer values double as the canonical base-3 digits used by
    :attr:`Profile.index`, so the numbering here is load-bearing.
    """

    STRICT_X = 0
    STRICT_Y = 1
    INDIFFERENT = 2

    @property
    def char(self) -> str:
        return _PREF_CHAR[self]

    def weakly_prefers(self, alternative: Alternative) -> bool:
        """True iff this voter ranks `alternative` at least as high as the other."""
        return self is Preference.INDIFFERENT or self is strict_preference_for(alternative)


_PREF_CHAR = {
    Preference.STRICT_X: "X",
    Preference.STRICT_Y: "Y",
    Preference.INDIFFERENT: "I",
}
_CHAR_PREF = {c: p for p, c in _PREF_CHAR.items()}
_PREF_DUAL = {
    Preference.STRICT_X: Preference.STRICT_Y,
    Preference.STRICT_Y: Preference.STRICT_X,
    Preference.INDIFFERENT: Preference.INDIFFERENT,
}


def strict_preference_for(alternative: Alternative) -> Preference:
    return Preference.STRICT_X if alternative is Alternative.X else Preference.STRICT_Y


@dataclass(frozen=True)
class Profile:
    """An ordered tuple of voter preferences; a value type.

    Voter indices are 0-based internally; profile strings render voter 0
    as the leftmost character (e.g. ``"XYI"``).
    """

    voters: tuple[Preference, ...]

    def __post_init__(self) -> None:
        voters = tuple(Preference(v) for v in self.voters)
        if not voters:
            raise ValueError("a profile needs at least one voter")
        index = 0
        for digit in reversed(voters):
            index = index * 3 + int(digit)
        object.__setattr__(self, "voters", voters)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def index(self) -> int:
        """Canonical base-3 index of this profile (voter 0 least significant)."""
        return self._index  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.voters)

    def __iter__(self) -> Iterator[Preference]:
        return iter(self.voters)

    def __repr__(self) -> str:
        return f"Profile({self.to_string()!r})"

    def to_string(self) -> str:
        return "".join(_PREF_CHAR[v] for v in self.voters)

    @classmethod
    def from_string(cls, text: str) -> "Profile":
        try:
            return cls(tuple(_CHAR_PREF[c] for c in text.upper()))
        except KeyError as exc:
            raise ValueError(f"profile strings use only X, Y, I: {text!r}") from exc

    @classmethod
    def from_index(cls, n: int, index: int) -> "Profile":
        if not 0 <= index < 3**n:
            raise ValueError(f"profile index {index} out of range for n={n}")
        digits = []
        for _ in range(n):
            digits.append(Preference(index % 3))
            index //= 3
        return cls(tuple(digits))

    @classmethod
    def from_counts(cls, n_x: int, n_y: int, n_ind: int) -> "Profile":
        """Block-layout profile: X supporters first, then Y, then indifferent."""
        if min(n_x, n_y, n_ind) < 0:
            raise ValueError("counts must be non-negative")
        return cls(
            (Preference.STRICT_X,) * n_x
            + (Preference.STRICT_Y,) * n_y
            + (Preference.INDIFFERENT,) * n_ind
        )


@dataclass(frozen=True)
class Tally:
    """Anonymous summary of a profile: strict counts for each side plus indifferents."""

    n_x: int
    n_y: int
    n_ind: int

    @property
    def n(self) -> int:
        return self.n_x + self.n_y + self.n_ind

    def count_for(self, alternative: Alternative) -> int:
        return self.n_x if alternative is Alternative.X else self.n_y

    def swapped(self) -> "Tally":
        return Tally(self.n_y, self.n_x, self.n_ind)


@lru_cache(maxsize=None)
def tally(profile: Profile) -> Tally:
    """Count each preference state; components always sum to the voter count."""
    n_x = n_y = n_ind = 0
    for v in profile.voters:
        if v is Preference.STRICT_X:
            n_x += 1
        elif v is Preference.STRICT_Y:
            n_y += 1
        else:
            n_ind += 1
    return Tally(n_x, n_y, n_ind)


def supporters(profile: Profile, alternative: Alternative) -> frozenset[int]:
    """Indices of voters who strictly prefer `alternative`."""
    want = strict_preference_for(alternative)
    return frozenset(i for i, v in enumerate(profile.voters) if v is want)


def permute(profile: Profile, perm: Sequence[int]) -> Profile:
    """Rearrange voters: voter i of the result holds voter perm[i]'s preference.

    Rejects anything that is not a bijection on the profile's indices.
    """
    return _permute(profile, tuple(perm))


@lru_cache(maxsize=None)
def _permute(profile: Profile, perm: tuple[int, ...]) -> Profile:
    if sorted(perm) != list(range(profile.n)):
        raise ValueError(f"not a bijection on 0..{profile.n - 1}: {perm}")
    return Profile(tuple(profile.voters[j] for j in perm))


@lru_cache(maxsize=None)
def dual(profile: Profile) -> Profile:
    """Reverse every strict preference, leaving indifferent voters fixed.

    An involution: dual(dual(R)) == R.
    """
    return Profile(tuple(_PREF_DUAL[v] for v in profile.voters))


def is_qualified(q: int, n: int) -> bool:
    """True iff q is a qualified quota for n voters.

    Uses exact integer arithmetic (2q > n), never division, so even voter
    counts cannot pick up parity bugs.
    """
    return 0 <= q <= n and 2 * q > n


def qualified_quotas(n: int) -> range:
    """All qualified quotas for n voters, ascending."""
    return range(n // 2 + 1, n + 1)


def meets_quota(profile: Profile, q: int) -> bool:
    """True iff some alternative has at least q strict supporters."""
    if not 0 <= q <= profile.n:
        raise ValueError(f"quota must lie in 0..{profile.n}, got {q}")
    t = tally(profile)
    return max(t.n_x, t.n_y) >= q


def responsive_neighbors(profile: Profile, winner: Alternative) -> tuple[Profile, ...]:
    """All profiles reachable by moving exactly one voter toward `winner`.

    A voter may move only if they currently weakly prefer the other
    alternative, and only to a state weakly preferring `winner`; with two
    alternatives that means loser->indifferent, loser->winner, and
    indifferent->winner. Ordered by (voter index, then indifferent before
    strict); this is the canonical neighbor order for witness reports.
    """
    return _responsive_neighbors(profile, winner)


@lru_cache(maxsize=None)
def _responsive_neighbors(profile: Profile, winner: Alternative) -> tuple[Profile, ...]:
    loser_pref = strict_preference_for(winner.other)
    winner_pref = strict_preference_for(winner)
    voters = profile.voters
    out = []
    for i, v in enumerate(voters):
        if v is loser_pref:
            out.append(Profile(voters[:i] + (Preference.INDIFFERENT,) + voters[i + 1 :]))
            out.append(Profile(voters[:i] + (winner_pref,) + voters[i + 1 :]))
        elif v is Preference.INDIFFERENT:
            out.append(Profile(voters[:i] + (winner_pref,) + voters[i + 1 :]))
    return tuple(out)


@lru_cache(maxsize=None)
def all_profiles(n: int) -> tuple[Profile, ...]:
    """Every profile on n voters, in canonical index order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return tuple(Profile.from_index(n, i) for i in range(3**n))


@lru_cache(maxsize=None)
def adjacent_transpositions(n: int) -> tuple[tuple[int, ...], ...]:
    """The n-1 permutations swapping voters j and j+1.

    They generate the full symmetric group, so quantifying anonymity over
    them is equivalent to quantifying over all n! permutations; that
    equivalence is cross-checked against the brute-force quantifier in the
    test suite rather than assumed silently.
    """
    perms = []
    for j in range(n - 1):
        p = list(range(n))
        p[j], p[j + 1] = p[j + 1], p[j]
        perms.append(tuple(p))
    return tuple(perms)
