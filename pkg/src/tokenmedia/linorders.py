"""The medium of linear orders on {1, .., n} under adjacent transpositions.

Each order is encoded as the set of its pairs that agree with a fixed base
order.  The encoding is injective, its image is a well graded family, and a
swap token acting at a cover pulls back to the add/remove token on the
encoding.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import CapError, InputError
from .families import SetFamily
from .tokens import TokenSystem

DEFAULT_ORDER_CAP = 7
CAP_ENV_VAR = "TOKENMEDIA_MAX_ORDER"


@dataclass(frozen=True)
class LinearOrder:
    """A linear order given as the sequence of its elements, smallest first."""

    seq: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.seq)) != len(self.seq) or not self.seq:
            raise InputError("order must list distinct elements")
        pairs = frozenset(
            (self.seq[i], self.seq[j])
            for i in range(len(self.seq))
            for j in range(i + 1, len(self.seq))
        )
        object.__setattr__(self, "_pairs", pairs)

    @property
    def pairs(self) -> frozenset[tuple[str, str]]:
        """All ordered pairs (x, y) with x before y."""
        return self._pairs

    def position(self, x: str) -> int:
        try:
            return self.seq.index(x)
        except ValueError:
            raise InputError(f"unknown element {x!r}") from None


def covers(order: LinearOrder, x: str, y: str) -> bool:
    """True iff y immediately precedes x (nothing lies strictly between)."""
    return order.position(x) == order.position(y) + 1


def apply_token(order: LinearOrder, x: str, y: str) -> LinearOrder:
    """Swap x in front of y when x covers y; otherwise the order is unchanged.

    The swapped sequence is always a linear order again.
    """
    i = order.position(y)
    if order.position(x) != i + 1:
        return order
    seq = order.seq
    return LinearOrder(seq[:i] + (x, y) + seq[i + 2:])


def pair_name(x: str, y: str) -> str:
    return f"{x}<{y}"


def token_name(x: str, y: str) -> str:
    return f"t:{x}<{y}"


def encode(order: LinearOrder, base: LinearOrder) -> frozenset[str]:
    """The pairs of the order that agree with the base order, as pair names."""
    return frozenset(pair_name(x, y) for (x, y) in order.pairs & base.pairs)


def base_order(n: int) -> LinearOrder:
    return LinearOrder(tuple(str(i) for i in range(1, n + 1)))


def _order_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else DEFAULT_ORDER_CAP


def linear_medium(n: int, cap: int | None = None) -> tuple[TokenSystem, SetFamily]:
    """All n! linear orders with one swap-token pair per base pair, plus the
    companion family of encodings.

    State ids are the concatenated sequences ("123", "132", ...), token ids
    are "t:x<y".  n is capped (default 7, env TOKENMEDIA_MAX_ORDER) since the
    state count is n!.
    """
    if n < 2:
        raise InputError("need at least two elements")
    limit = _order_cap(cap)
    if n > limit:
        raise CapError(f"order size {n} exceeds the cap of {limit}")
    if n > 9:
        raise CapError("single-character element names support at most 9 elements")
    elements = tuple(str(i) for i in range(1, n + 1))
    base = LinearOrder(elements)
    base_pairs = [(elements[i], elements[j])
                  for i in range(n) for j in range(i + 1, n)]
    tokens: list[str] = []
    reverse: dict[str, str] = {}
    for (x, y) in base_pairs:
        fwd, bwd = token_name(x, y), token_name(y, x)
        tokens += [fwd, bwd]
        reverse[fwd] = bwd
        reverse[bwd] = fwd
    perms = list(itertools.permutations(elements))
    names = ["".join(p) for p in perms]
    action: dict[str, dict[str, str]] = {t: {} for t in tokens}
    for t in tokens:
        row = action[t]
        for name in names:
            row[name] = name
    for p, name in zip(perms, names):
        for i in range(n - 1):
            y, x = p[i], p[i + 1]  # x covers y here; t:x<y swaps them
            swapped = p[:i] + (x, y) + p[i + 2:]
            action[token_name(x, y)][name] = "".join(swapped)
    ts = TokenSystem(tuple(names), tuple(tokens), action, reverse)
    sets = tuple(encode(LinearOrder(p), base) for p in perms)
    fam = SetFamily(tuple(pair_name(x, y) for (x, y) in base_pairs), sets)
    return ts, fam


def _as_pair_set(p, n: int) -> frozenset[tuple[str, str]]:
    base = base_order(n)
    legal = {pair_name(x, y): (x, y) for (x, y) in base.pairs}
    out = set()
    for item in p:
        if item not in legal:
            raise InputError(f"{item!r} is not a pair of the base order")
        out.add(legal[item])
    return frozenset(out)


def _transitive(rel: frozenset[tuple[str, str]]) -> bool:
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c and (a, d) not in rel:
                return False
    return True


def is_order_encoding(p, n: int) -> bool:
    """True iff p (a set of base-pair names) is the encoding of some linear order.

    Criterion: both p and its complement inside the base pair set must be
    transitive.  Cross-checked against exhaustive enumeration in the tests.
    """
    rel = _as_pair_set(p, n)
    complement = base_order(n).pairs - rel
    return _transitive(rel) and _transitive(complement)
