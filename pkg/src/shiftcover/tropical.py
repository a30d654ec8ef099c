"""Square min-plus matrices over the integers extended with +infinity.

+infinity is represented by ``None`` (a separate type, never a sentinel
integer), and entries may only be combined through the helpers here:
``ext_add`` makes addition absorbing and ``ext_lt`` keeps +infinity
strictly above every integer and incomparable with itself.  Python
integers are exact at any magnitude, so arithmetic never wraps.

The canonical order on matrices (row-major entries, +infinity greatest)
fixes a byte-stable serialization used for set deduplication, profile
hashing, and JSON export.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

Entry = Optional[int]  # None encodes +infinity

_INF_TOKEN = "inf"


def ext_add(a: Entry, b: Entry) -> Entry:
    return None if a is None or b is None else a + b


def ext_lt(a: Entry, b: Entry) -> bool:
    """Strict order: every integer < +infinity, +infinity < +infinity is false."""
    if a is None:
        return False
    if b is None:
        return True
    return a < b


def entry_key(a: Entry) -> tuple[int, int]:
    return (1, 0) if a is None else (0, a)


def entry_str(a: Entry) -> str:
    return _INF_TOKEN if a is None else str(a)


def _check_entry(e: object) -> Entry:
    if e is None:
        return None
    if isinstance(e, bool) or not isinstance(e, int):
        raise TypeError(f"matrix entries must be int or None, got {e!r}")
    return e


class MatrixStats(NamedTuple):
    max: Entry
    min: Entry
    delta: Entry  # max - min; None unless all entries finite
    norm: Entry  # max absolute value; None unless all entries finite


@dataclass(frozen=True)
class TropMatrix:
    """Immutable square matrix with int-or-infinity entries."""

    rows: tuple[tuple[Entry, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_check_entry(e) for e in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square and nonempty")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> "TropMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def _raw(cls, rows: tuple[tuple[Entry, ...], ...]) -> "TropMatrix":
        # internal fast path for rows already known to be valid
        self = object.__new__(cls)
        object.__setattr__(self, "rows", rows)
        return self

    @classmethod
    def identity(cls, dim: int) -> "TropMatrix":
        """0 on the diagonal, +infinity elsewhere: the min-plus unit."""
        return cls(tuple(tuple(0 if i == j else None for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, u: int, v: int) -> Entry:
        return self.rows[u][v]

    def mul(self, other: "TropMatrix") -> "TropMatrix":
        """Min-plus product: out(u,w) = min_v self(u,v) + other(v,w)."""
        a, b = self.rows, other.rows
        d = len(a)
        if d != len(b):
            raise ValueError("dimension mismatch")
        out = []
        for u in range(d):
            au = a[u]
            row = []
            for w in range(d):
                best: Entry = None
                for v in range(d):
                    x = au[v]
                    if x is None:
                        continue
                    y = b[v][w]
                    if y is None:
                        continue
                    s = x + y
                    if best is None or s < best:
                        best = s
                row.append(best)
            out.append(tuple(row))
        return TropMatrix._raw(tuple(out))

    def strictly_less(self, other: "TropMatrix") -> bool:
        """True iff strictly smaller at every entry (so +infinity entries block it)."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        for ra, rb in zip(self.rows, other.rows):
            for a, b in zip(ra, rb):
                if a is None:
                    return False
                if b is not None and a >= b:
                    return False
        return True

    def shift(self, n: int) -> "TropMatrix":
        """Add ``n`` to every finite entry; +infinity entries are unchanged."""
        return TropMatrix._raw(
            tuple(tuple(None if e is None else e + n for e in row) for row in self.rows)
        )

    def is_finite(self) -> bool:
        return all(e is not None for row in self.rows for e in row)

    def stats(self) -> MatrixStats:
        entries = [e for row in self.rows for e in row]
        mx: Entry = None if any(e is None for e in entries) else max(entries)  # type: ignore[type-var]
        finite = [e for e in entries if e is not None]
        mn: Entry = min(finite) if finite else None
        if mx is None:
            return MatrixStats(None, mn, None, None)
        assert mn is not None
        return MatrixStats(mx, mn, mx - mn, max(abs(mx), abs(mn)))

    def min_entry(self) -> Entry:
        """Least entry, with +infinity greatest (None only if all entries are +infinity)."""
        finite = [e for row in self.rows for e in row if e is not None]
        return min(finite) if finite else None

    def sort_key(self) -> tuple:
        key = getattr(self, "_key", None)
        if key is None:
            key = tuple(entry_key(e) for row in self.rows for e in row)
            object.__setattr__(self, "_key", key)
        return key

    def canonical(self) -> str:
        """Byte-stable row-major form, e.g. ``0,1/2,inf``."""
        return "/".join(",".join(entry_str(e) for e in row) for row in self.rows)

    def to_json(self) -> list[list[Union[int, str]]]:
        return [[_INF_TOKEN if e is None else e for e in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Union[int, str]]]) -> "TropMatrix":
        rows = []
        for row in data:
            parsed: list[Entry] = []
            for e in row:
                if e == _INF_TOKEN:
                    parsed.append(None)
                elif isinstance(e, int) and not isinstance(e, bool):
                    parsed.append(e)
                else:
                    raise ValueError(f"bad matrix entry {e!r}")
            rows.append(tuple(parsed))
        return cls(tuple(rows))


@dataclass(frozen=True)
class MatrixSet:
    """Finite set of equal-dimension matrices in canonical order, duplicates merged."""

    matrices: tuple[TropMatrix, ...]

    def __post_init__(self) -> None:
        uniq = {m.sort_key(): m for m in self.matrices}
        object.__setattr__(self, "matrices", tuple(uniq[k] for k in sorted(uniq)))

    @classmethod
    def of(cls, matrices: Iterable[TropMatrix]) -> "MatrixSet":
        return cls(tuple(matrices))

    def __iter__(self) -> Iterator[TropMatrix]:
        return iter(self.matrices)

    def __len__(self) -> int:
        return len(self.matrices)

    def __contains__(self, m: TropMatrix) -> bool:
        return m in self.matrices

    @property
    def is_empty(self) -> bool:
        return not self.matrices

    def dagger(self) -> "MatrixSet":
        """Keep the elements not strictly dominated by another element."""
        return MatrixSet(tuple(pareto_front(self.matrices)))

    def mul(self, other: "MatrixSet") -> "MatrixSet":
        return MatrixSet(tuple(f.mul(g) for f in self.matrices for g in other.matrices))

    def shift(self, n: int) -> "MatrixSet":
        return MatrixSet(tuple(m.shift(n) for m in self.matrices))

    def union(self, other: "MatrixSet") -> "MatrixSet":
        return MatrixSet(self.matrices + other.matrices)

    def all_finite(self) -> bool:
        return all(m.is_finite() for m in self.matrices)

    def canonical(self) -> str:
        return "{" + "|".join(m.canonical() for m in self.matrices) + "}"

    def spread(self) -> Entry:
        """max over elements of max entry minus min over elements of min entry.

        Diagnostic only; None when the set is empty or any entry is +infinity.
        """
        if self.is_empty:
            return None
        stats = [m.stats() for m in self.matrices]
        if any(s.max is None for s in stats):
            return None
        return max(s.max for s in stats) - min(s.min for s in stats)  # type: ignore[operator]


def pareto_front(candidates: Iterable[TropMatrix]) -> list[TropMatrix]:
    """Maximal elements of the strict entry-wise order, by incremental insertion.

    Dropping happens only under strict domination, whose transitivity makes
    the result the exact maximal set regardless of insertion order; exact
    duplicates are skipped up front.
    """
    front: list[TropMatrix] = []
    seen: set[tuple] = set()
    for cand in candidates:
        key = cand.sort_key()
        if key in seen:
            continue
        seen.add(key)
        if any(cand.strictly_less(m) for m in front):
            continue
        front = [m for m in front if not m.strictly_less(cand)]
        front.append(cand)
    return front


# Operation-style aliases used by callers that read better with free functions.


def trop_mul(f: TropMatrix, g: TropMatrix) -> TropMatrix:
    return f.mul(g)


def strictly_less(f: TropMatrix, g: TropMatrix) -> bool:
    return f.strictly_less(g)


def dagger(s: MatrixSet) -> MatrixSet:
    return s.dagger()


def set_mul(a: MatrixSet, b: MatrixSet) -> MatrixSet:
    return a.mul(b)


def shift(a: MatrixSet, n: int) -> MatrixSet:
    return a.shift(n)


def stats(f: TropMatrix) -> MatrixStats:
    return f.stats()
