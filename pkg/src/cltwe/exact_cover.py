"""Exact Cover instances, witness checking and an Algorithm X solver."""

import logging
from dataclasses import dataclass, field

from .errors import FormatError, SearchLimitExceeded, WitnessError

log = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 10**7


@dataclass(frozen=True)
class ExactCoverInstance:
    """A universe ``{0..U-1}`` and an ordered family of non-empty subsets.

    Sets are normalized to sorted, duplicate-free tuples. Empty sets are
    dropped (their original positions are kept in ``dropped``): an empty set
    would encode at the zero level, i.e. as a free multiplicative identity.
    """

    universe_size: int
    sets: tuple
    dropped: tuple = field(default=(), compare=False)

    def __init__(self, universe_size, sets):
        if universe_size < 0:
            raise ValueError("universe size must be non-negative")
        kept, dropped = [], []
        for i, s in enumerate(sets):
            norm = tuple(sorted(set(s)))
            if any(not 0 <= x < universe_size for x in norm):
                raise ValueError(f"set {i} has an element outside [0, {universe_size})")
            if norm:
                kept.append(norm)
            else:
                dropped.append(i)
        if dropped:
            log.warning("dropped %d empty set(s) at positions %s", len(dropped), dropped)
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "sets", tuple(kept))
        object.__setattr__(self, "dropped", tuple(dropped))

    def __len__(self):
        return len(self.sets)

    def to_text(self) -> str:
        lines = [f"{self.universe_size} {len(self.sets)}"]
        lines += [" ".join(map(str, s)) for s in self.sets]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text) -> "ExactCoverInstance":
        """Parse ``U L`` followed by ``L`` set lines; ``#`` lines are comments."""
        if isinstance(text, bytes):
            try:
                text = text.decode("ascii")
            except UnicodeDecodeError as exc:
                raise FormatError("non-ASCII byte in cover file", offset=exc.start) from None
        if not text.endswith("\n"):
            raise FormatError("truncated: cover file must end with a newline", offset=len(text))
        rows = []
        for lineno, line in enumerate(text.split("\n")[:-1], start=1):
            if line.startswith("#") or not line.strip():
                continue
            rows.append((lineno, line))
        if not rows:
            raise FormatError("missing 'U L' header", line=1)
        lineno, header = rows[0]
        try:
            U, L = (int(t) for t in header.split())
        except ValueError:
            raise FormatError("header must be 'U L'", line=lineno) from None
        if U < 0 or L < 0:
            raise FormatError("negative count in header", line=lineno)
        body = rows[1:]
        if len(body) != L:
            raise FormatError(f"truncated or padded: expected {L} sets, found {len(body)}",
                              line=body[-1][0] if body else lineno)
        sets = []
        for lineno, line in body:
            try:
                s = [int(t) for t in line.split()]
            except ValueError:
                raise FormatError("set line must hold integers", line=lineno) from None
            if s != sorted(set(s)):
                raise FormatError("set elements must be sorted and distinct", line=lineno)
            if any(not 0 <= x < U for x in s):
                raise FormatError("set element out of range", line=lineno)
            sets.append(s)
        return cls(U, sets)


def witness_from_text(text: str) -> tuple:
    """One line of space-separated set indices."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(lines) > 1:
        raise FormatError("witness must be a single line", line=2)
    if not lines:
        return ()
    try:
        idx = [int(t) for t in lines[0].split()]
    except ValueError:
        raise FormatError("witness must hold integers", line=1) from None
    return tuple(sorted(set(idx)))


def witness_to_text(witness) -> str:
    return " ".join(map(str, witness)) + "\n"


def _check_witness(instance, witness):
    witness = tuple(sorted(set(witness)))
    for i in witness:
        if not 0 <= i < len(instance.sets):
            raise WitnessError(f"set index {i} out of range [0, {len(instance.sets)})")
    return witness


def verify(instance: ExactCoverInstance, witness) -> bool:
    """True iff the chosen sets are pairwise disjoint and cover the universe."""
    witness = _check_witness(instance, witness)
    seen = set()
    for i in witness:
        for x in instance.sets[i]:
            if x in seen:
                return False
            seen.add(x)
    return len(seen) == instance.universe_size


def coverage_counts(instance: ExactCoverInstance, witness) -> list:
    """How many chosen sets contain each universe element."""
    witness = _check_witness(instance, witness)
    counts = [0] * instance.universe_size
    for i in witness:
        for x in instance.sets[i]:
            counts[x] += 1
    return counts


def solve(instance: ExactCoverInstance, node_limit: int = DEFAULT_NODE_LIMIT):
    """Knuth's Algorithm X.

    Branches on the column with the fewest candidate rows (ties to the lowest
    column), trying rows in ascending order, so the result is reproducible.
    Returns a sorted witness tuple or ``None`` when no cover exists; raises
    SearchLimitExceeded when more than ``node_limit`` nodes are visited.
    """
    U = instance.universe_size
    cols = {c: set() for c in range(U)}
    for r, s in enumerate(instance.sets):
        for c in s:
            cols[c].add(r)
    rows = instance.sets
    nodes = 0
    partial = []

    def select(r):
        removed = []
        for c in rows[r]:
            for other in cols[c]:
                for c2 in rows[other]:
                    if c2 != c:
                        cols[c2].discard(other)
            removed.append(cols.pop(c))
        return removed

    def deselect(r, removed):
        for c in reversed(rows[r]):
            cols[c] = removed.pop()
            for other in cols[c]:
                for c2 in rows[other]:
                    if c2 != c:
                        cols[c2].add(other)

    def search():
        nonlocal nodes
        if not cols:
            return True
        nodes += 1
        if nodes > node_limit:
            raise SearchLimitExceeded(nodes - 1)
        c = min(cols, key=lambda k: (len(cols[k]), k))
        for r in sorted(cols[c]):
            partial.append(r)
            removed = select(r)
            if search():
                return True
            deselect(r, removed)
            partial.pop()
        return False

    if U == 0:
        return ()
    if search():
        return tuple(sorted(partial))
    return None
