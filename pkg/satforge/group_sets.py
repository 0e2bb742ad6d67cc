"""Exact arithmetic on subsets of Z_n.

Sets are Python ints used as bitmasks over the least residues 0..n-1, so a
translate S + g is a rotation and a sumset A + B is the union of |B| rotations
of A. Everything here is pure: values are immutable and every operation
returns a fresh set.

The restricted sumset R_k(S) collects the values s_1 + ... + s_k whose
partial sums p_0 = 0, p_1, ..., p_k are pairwise distinct, i.e. the endpoints
of self-avoiding walks of length k from 0 in the circulant graph Cay(Z_n, S).
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Union

from satforge.errors import (
    GraphFormatError,
    InvalidArgumentError,
    InvalidSetError,
    UnsupportedParametersError,
)

logger = logging.getLogger(__name__)

# Below this many raw walks R_k is enumerated in one sweep; above it every
# candidate residue gets its own pruned search.
FULL_WALK_LIMIT = 200_000

# `17: 1,3,14,16`
SET_TEXT = re.compile(r"^\s*(\d+)\s*:\s*((?:-?\d+\s*(?:,\s*-?\d+\s*)*)?)$")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def rotate(mask: int, shift: int, n: int) -> int:
    """The translate {x + shift : x in mask} inside Z_n."""
    shift %= n
    if not shift:
        return mask
    return ((mask << shift) | (mask >> (n - shift))) & full_mask(n)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def add_masks(a: int, b: int, n: int) -> int:
    """Sumset of two residue masks."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    out = 0
    for shift in iter_bits(b):
        out |= rotate(a, shift, n)
    return out


@dataclass(frozen=True)
class ResidueSet:
    """An arbitrary subset of Z_n; the value type of every sumset."""

    modulus: int
    members: int = 0

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {self.modulus}")
        if self.members < 0 or self.members >> self.modulus:
            raise InvalidArgumentError("residue mask does not fit the modulus")

    @classmethod
    def from_values(cls, modulus: int, values: Iterable[int]) -> ResidueSet:
        if modulus < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {modulus}")
        mask = 0
        for value in values:
            mask |= 1 << (value % modulus)
        return cls(modulus, mask)

    @classmethod
    def full(cls, modulus: int) -> ResidueSet:
        return cls(modulus, full_mask(modulus))

    def __contains__(self, value: object) -> bool:
        if not isinstance(value, int):
            return False
        return bool((self.members >> (value % self.modulus)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.members)

    def __len__(self) -> int:
        return self.members.bit_count()

    def __bool__(self) -> bool:
        return self.members != 0

    def _same_group(self, other: ResidueSet) -> None:
        if self.modulus != other.modulus:
            raise InvalidArgumentError(
                f"cannot combine subsets of Z_{self.modulus} and Z_{other.modulus}"
            )

    def __or__(self, other: ResidueSet) -> ResidueSet:
        self._same_group(other)
        return ResidueSet(self.modulus, self.members | other.members)

    def __and__(self, other: ResidueSet) -> ResidueSet:
        self._same_group(other)
        return ResidueSet(self.modulus, self.members & other.members)

    def __sub__(self, other: ResidueSet) -> ResidueSet:
        self._same_group(other)
        return ResidueSet(self.modulus, self.members & ~other.members)

    def complement(self) -> ResidueSet:
        return ResidueSet(self.modulus, full_mask(self.modulus) & ~self.members)

    def shift(self, g: int) -> ResidueSet:
        return ResidueSet(self.modulus, rotate(self.members, g, self.modulus))

    def negate(self) -> ResidueSet:
        return ResidueSet.from_values(self.modulus, (-x for x in self))

    def to_list(self) -> list[int]:
        return list(self)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class SymmetricSet:
    """A connection set S of Z_n \\ {0} with S = -S.

    Inputs are validated, never repaired: 0, out-of-range values, unsorted
    input and sets not closed under negation are all rejected. Use
    `from_values` to reduce and sort, or `from_generators` to close {±g}
    explicitly.
    """

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 3:
            raise InvalidSetError(f"modulus must be at least 3, got {n}")
        if not self.elements:
            raise InvalidSetError("connection set must be nonempty")
        previous = 0
        for x in self.elements:
            if not 1 <= x <= n - 1:
                raise InvalidSetError(f"{x} is not a nonzero least residue mod {n}")
            if x <= previous:
                raise InvalidSetError("elements must be strictly increasing")
            previous = x
        present = set(self.elements)
        for x in self.elements:
            if n - x not in present:
                raise InvalidSetError(
                    f"not symmetric: {x} is in S but -{x} = {n - x} is not"
                )

    @classmethod
    def from_values(cls, modulus: int, values: Iterable[int]) -> SymmetricSet:
        if modulus < 1:
            raise InvalidSetError(f"modulus must be at least 3, got {modulus}")
        residues = sorted({v % modulus for v in values})
        if residues and residues[0] == 0:
            raise InvalidSetError("0 cannot belong to a connection set")
        return cls(modulus, tuple(residues))

    @classmethod
    def from_generators(cls, modulus: int, generators: Iterable[int]) -> SymmetricSet:
        """The set {±g : g in generators}."""
        values: set[int] = set()
        for g in generators:
            values.add(g % modulus)
            values.add(-g % modulus)
        return cls.from_values(modulus, values)

    @cached_property
    def mask(self) -> int:
        out = 0
        for x in self.elements:
            out |= 1 << x
        return out

    def as_residues(self) -> ResidueSet:
        return ResidueSet(self.modulus, self.mask)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and (value % self.modulus) in self.elements

    @property
    def positive_part(self) -> tuple[int, ...]:
        """S+ : the elements below n/2."""
        return tuple(x for x in self.elements if 2 * x < self.modulus)

    @property
    def negative_part(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if 2 * x > self.modulus)

    @property
    def orbit_representatives(self) -> tuple[int, ...]:
        """One element of every {x, n-x} orbit, n/2 included."""
        return tuple(x for x in self.elements if 2 * x <= self.modulus)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.modulus, "set": list(self.elements)}

    @classmethod
    def from_json(cls, obj: Any) -> SymmetricSet:
        if not isinstance(obj, dict) or "n" not in obj or "set" not in obj:
            raise GraphFormatError(
                f'expected {{"n": int, "set": [int, ...]}}, got {obj!r}'
            )
        n, values = obj["n"], obj["set"]
        if not isinstance(n, int) or not all(isinstance(v, int) for v in values):
            raise GraphFormatError(f"non-integer entries in set record {obj!r}")
        return cls(n, tuple(values))

    def to_text(self) -> str:
        return f"{self.modulus}: " + ",".join(map(str, self.elements))

    @classmethod
    def from_text(cls, text: str) -> SymmetricSet:
        match = SET_TEXT.match(text)
        if not match or not match.group(2).strip():
            raise GraphFormatError(f"expected 'n: a,b,c', got {text!r}")
        n = int(match.group(1))
        return cls.from_values(n, (int(v) for v in match.group(2).split(",")))

    def __str__(self) -> str:
        return self.to_text()


SetLike = Union[SymmetricSet, ResidueSet]


def _unpack(s: SetLike) -> tuple[int, int]:
    if isinstance(s, SymmetricSet):
        return s.modulus, s.mask
    return s.modulus, s.members


def sumset_layers(n: int, base: int, k: int) -> list[int]:
    """[0S, 1S, ..., kS] as masks, with 0S = {0}."""
    layers = [1]
    for _ in range(k):
        layers.append(add_masks(layers[-1], base, n))
    return layers


def sumset(s: SetLike, k: int) -> ResidueSet:
    """The k-fold sumset kS, by k-1 pairwise folds."""
    n, base = _unpack(s)
    if k < 1:
        raise InvalidArgumentError(f"k must be at least 1, got {k}")
    if not base:
        raise InvalidArgumentError("sumset of an empty set")
    acc = base
    for _ in range(k - 1):
        acc = add_masks(acc, base, n)
    return ResidueSet(n, acc)


def sum_witness(s: SetLike, k: int, value: int) -> tuple[int, ...] | None:
    """One k-tuple of elements of S summing to `value`, if any."""
    n, base = _unpack(s)
    if k < 1 or not base:
        raise InvalidArgumentError("sum_witness needs k >= 1 and a nonempty set")
    layers = sumset_layers(n, base, k)
    value %= n
    if not (layers[k] >> value) & 1:
        return None
    terms: list[int] = []
    for depth in range(k, 0, -1):
        for x in iter_bits(base):
            rest = (value - x) % n
            if (layers[depth - 1] >> rest) & 1:
                terms.append(x)
                value = rest
                break
    return tuple(terms)


class WalkSearch:
    """Self-avoiding walks of a fixed length from 0 in Cay(Z_n, S).

    Each search is pruned by the unrestricted sumset layers: from position p
    with r steps left, the target t is only reachable if t - p lies in rS.
    """

    def __init__(
        self, n: int, base: int, k: int, layers: list[int] | None = None
    ) -> None:
        if k < 1:
            raise InvalidArgumentError(f"k must be at least 1, got {k}")
        if base & 1:
            raise InvalidArgumentError("0 must not belong to the set")
        if not base:
            raise InvalidArgumentError("restricted sumset of an empty set")
        self.n = n
        self.base = base
        self.k = k
        self.steps = list(iter_bits(base))
        if layers is None or len(layers) <= k:
            layers = sumset_layers(n, base, k)
        self.layers = layers
        self.nodes = 0

    def find(self, target: int) -> tuple[int, ...] | None:
        """An ordering (s_1, ..., s_k) reaching `target` with distinct partial sums."""
        n, k = self.n, self.k
        target %= n
        if k == 1:
            return (target,) if (self.base >> target) & 1 else None
        if target == 0 or not (self.layers[k] >> target) & 1:
            return None
        path: list[int] = []
        if self._extend(0, 1, k, target, path):
            return tuple(path)
        return None

    def _extend(
        self, pos: int, visited: int, remaining: int, target: int, path: list[int]
    ) -> bool:
        self.nodes += 1
        n = self.n
        if remaining == 1:
            step = (target - pos) % n
            if (self.base >> step) & 1:
                path.append(step)
                return True
            return False
        below = self.layers[remaining - 1]
        for step in self.steps:
            nxt = pos + step
            if nxt >= n:
                nxt -= n
            if nxt == target or (visited >> nxt) & 1:
                continue
            if not (below >> ((target - nxt) % n)) & 1:
                continue
            path.append(step)
            if self._extend(nxt, visited | (1 << nxt), remaining - 1, target, path):
                return True
            path.pop()
        return False

    def reachable(self) -> int:
        """Mask of R_k(S)."""
        candidates = self.layers[self.k] & ~1
        if self.k == 1:
            return self.base
        if len(self.steps) ** self.k <= FULL_WALK_LIMIT:
            return self._sweep(candidates)
        found = 0
        for target in iter_bits(candidates):
            if self.find(target) is not None:
                found |= 1 << target
        return found

    def _sweep(self, candidates: int) -> int:
        n = self.n
        found = 0
        stack = [(0, 1, self.k)]
        while stack:
            pos, visited, remaining = stack.pop()
            self.nodes += 1
            if remaining == 0:
                found |= 1 << pos
                if found == candidates:
                    break
                continue
            for step in self.steps:
                nxt = pos + step
                if nxt >= n:
                    nxt -= n
                if not (visited >> nxt) & 1:
                    stack.append((nxt, visited | (1 << nxt), remaining - 1))
        return found

    def first_unreachable(self, targets: int) -> int | None:
        """The least residue of `targets` outside R_k(S), if there is one."""
        for target in iter_bits(targets):
            if self.find(target) is None:
                return target
        return None


def restricted_sumset(s: SetLike, k: int) -> ResidueSet:
    """R_k(S): k-term sums orderable with no vanishing consecutive sub-sum."""
    n, base = _unpack(s)
    return ResidueSet(n, WalkSearch(n, base, k).reachable())


def restricted_witness(s: SetLike, k: int, value: int) -> tuple[int, ...] | None:
    n, base = _unpack(s)
    return WalkSearch(n, base, k).find(value)


def is_sum_free(s: SetLike) -> bool:
    n, base = _unpack(s)
    return not (sumset(s, 2).members & base)


def is_complete_sum_free(s: SetLike) -> bool:
    """S + S is exactly the complement of S (so 0 lies in S + S)."""
    n, base = _unpack(s)
    return sumset(s, 2).members == full_mask(n) & ~base


def _distinct_orders(k: int, l: int) -> None:
    if k == l:
        raise InvalidArgumentError(f"(k, l)-sum-freeness needs k != l, got k = l = {k}")
    if k < 1 or l < 1:
        raise InvalidArgumentError("k and l must be positive")


def is_kl_sum_free(s: SetLike, k: int, l: int) -> bool:
    _distinct_orders(k, l)
    return not (sumset(s, k).members & sumset(s, l).members)


def is_complete_kl(s: SetLike, k: int, l: int) -> bool:
    """kS and lS partition Z_n."""
    _distinct_orders(k, l)
    n, _ = _unpack(s)
    a, b = sumset(s, k).members, sumset(s, l).members
    return not (a & b) and (a | b) == full_mask(n)


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of checking R_k(S) = Z_n \\ (S ∪ {0}) and 0 ∉ (k+1)S.

    `uncovered` is the least residue that breaks the R_k equality (missing
    from R_k, or an element of S inside it); `vanishing_sum` is a (k+1)-tuple
    of elements of S summing to 0.
    """

    modulus: int
    k: int
    symmetric: bool
    restricted_complete: bool
    zero_sum_free: bool
    uncovered: int | None = None
    vanishing_sum: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.symmetric and self.restricted_complete and self.zero_sum_free

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.modulus,
            "k": self.k,
            "symmetric": self.symmetric,
            "restricted_complete": self.restricted_complete,
            "zero_sum_free": self.zero_sum_free,
            "uncovered": self.uncovered,
            "vanishing_sum": list(self.vanishing_sum) if self.vanishing_sum else None,
            "passed": self.passed,
        }


def _closed_under_negation(s: SymmetricSet) -> bool:
    n = s.modulus
    return all((s.mask >> (n - x)) & 1 for x in s.elements)


def check_construction_hypotheses(s: SymmetricSet, k: int) -> HypothesisReport:
    """Test the two conditions that make Cay(Z_n, S) C_{k+1}-saturated."""
    if k < 2 or k % 2:
        raise InvalidArgumentError(f"k must be an even integer >= 2, got {k}")
    n = s.modulus
    layers = sumset_layers(n, s.mask, k + 1)
    zero_free = not layers[k + 1] & 1
    vanishing = None if zero_free else sum_witness(s, k + 1, 0)

    walker = WalkSearch(n, s.mask, k, layers)
    uncovered = walker.first_unreachable(full_mask(n) & ~s.mask & ~1)
    if uncovered is None and not zero_free:
        # With 0 ∉ (k+1)S the set S cannot meet kS; without it, look.
        for x in s.elements:
            if walker.find(x) is not None:
                uncovered = x
                break
    report = HypothesisReport(
        modulus=n,
        k=k,
        symmetric=_closed_under_negation(s),
        restricted_complete=uncovered is None,
        zero_sum_free=zero_free,
        uncovered=uncovered,
        vanishing_sum=vanishing,
    )
    logger.debug("hypotheses for %s, k=%d: %s", s, k, report)
    return report


def super_sum_set(alpha: int, k: int) -> tuple[SymmetricSet, int]:
    """S = {±(2αℓ + 1) : 0 <= ℓ <= k} in Z_n, n = 2α(α+4)k + 2α + 5."""
    if alpha < 1 or k < 1:
        raise InvalidArgumentError(
            f"alpha and k must be positive, got alpha={alpha}, k={k}"
        )
    n = 2 * alpha * (alpha + 4) * k + 2 * alpha + 5
    s = SymmetricSet.from_generators(n, (2 * alpha * ell + 1 for ell in range(k + 1)))
    return s, n


def scsf_set(k: int, r: int) -> SymmetricSet:
    """Symmetric complete sum-free sets in Z_{3k+r}.

    r = 2: {k+1, ..., 2k+1}                                     (k >= 1)
    r = 1: {k, 2k+1} ∪ {k+2, ..., 2k-1}                         (k >= 4)
    r = 0: {k-1, k+1, 2k-1, 2k+1} ∪ {k+3, ..., 2k-3}            (k >= 7)
    """
    n = 3 * k + r
    if r == 2:
        if k < 1:
            raise UnsupportedParametersError("scsf", "r = 2 requires k >= 1")
        values: list[int] = list(range(k + 1, 2 * k + 2))
    elif r == 1:
        if k < 4:
            raise UnsupportedParametersError("scsf", "r = 1 requires k >= 4")
        values = [k, 2 * k + 1, *range(k + 2, 2 * k)]
    elif r == 0:
        if k < 7:
            raise UnsupportedParametersError("scsf", "r = 0 requires k >= 7")
        values = [k - 1, k + 1, 2 * k - 1, 2 * k + 1, *range(k + 3, 2 * k - 2)]
    else:
        raise InvalidArgumentError(f"r must be 0, 1 or 2, got {r}")
    return SymmetricSet.from_values(n, values)
