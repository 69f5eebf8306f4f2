"""Explicit small matroids: rank tables, minors, duality, simplification.

Every matroid lives on elements ``0..n-1`` carrying distinct string labels.
The explicit representation (:class:`BasisMatroid`) keeps the family of
bases plus a dense rank table with one entry per subset, which makes rank a
single array lookup and lets the exhaustive kernels run vectorised over all
``2**n`` subsets.  Graph-backed and dual-view matroids in other modules share
the same :class:`Matroid` interface so that the structural code above this
layer never needs to know which backend it is talking to.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .bits import (
    canonical_key,
    deposit_indices,
    format_set,
    full_mask,
    iter_bits,
    popcount_array,
    sort_family,
)

TABLE_CAP = 16
EXHAUSTIVE_CAP = 12


class MatroidError(Exception):
    pass


class EmptyGroundSet(MatroidError):
    pass


class ValidationError(MatroidError):
    pass


class ParseError(MatroidError):
    pass


class CapExceeded(MatroidError):
    pass


def _sos_max_up(arr: np.ndarray, n: int) -> None:
    """In place: arr[X] <- max over subsets Y of X of arr[Y]."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])


def _or_down(arr: np.ndarray, n: int) -> None:
    """In place: arr[X] <- OR over supersets Y of X of arr[Y]."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        v[:, 0, :] |= v[:, 1, :]


def _or_up(arr: np.ndarray, n: int) -> None:
    """In place: arr[X] <- OR over subsets Y of X of arr[Y]."""
    for e in range(n):
        v = arr.reshape(-1, 2, 1 << e)
        v[:, 1, :] |= v[:, 0, :]


def rank_table_from_bases(n: int, bases: Iterable[int]) -> np.ndarray:
    indep = np.zeros(1 << n, dtype=bool)
    indep[np.fromiter(bases, dtype=np.int64)] = True
    _or_down(indep, n)
    table = np.where(indep, popcount_array(n), 0).astype(np.int8)
    _sos_max_up(table, n)
    return table


def rank_table_from_circuits(n: int, circuits: Iterable[int]) -> np.ndarray:
    dep = np.zeros(1 << n, dtype=bool)
    circuits = list(circuits)
    if circuits:
        dep[np.array(circuits, dtype=np.int64)] = True
    _or_up(dep, n)
    table = np.where(dep, 0, popcount_array(n)).astype(np.int8)
    _sos_max_up(table, n)
    return table


def check_rank_table(n: int, table: np.ndarray) -> str | None:
    """Return a description of the first matroid-axiom failure, or None."""
    t = table.astype(np.int16)
    if t[0] != 0:
        return "rank of the empty set is not 0"
    for e in range(n):
        v = t.reshape(-1, 2, 1 << e)
        step = v[:, 1, :] - v[:, 0, :]
        if (step < 0).any() or (step > 1).any():
            return f"rank is not unit-increasing at element {e}"
    for f in range(n):
        for e in range(f):
            v = t.reshape(-1, 2, 1 << (f - e - 1), 2, 1 << e)
            lhs = v[:, 1, :, 0, :] + v[:, 0, :, 1, :]
            rhs = v[:, 1, :, 1, :] + v[:, 0, :, 0, :]
            if (lhs < rhs).any():
                return f"rank is not submodular on elements {e},{f}"
    return None


def check_basis_exchange(n: int, bases: Sequence[int]) -> tuple[int, int, int] | None:
    """Exhaustive basis-exchange check.

    Returns ``(B1, B2, e)`` with ``e`` in ``B1 - B2`` such that no
    ``f`` in ``B2 - B1`` makes ``(B1 - e) | f`` a basis, or None.
    """
    basis_set = set(bases)
    arr = np.array(bases, dtype=np.int64)
    full = full_mask(n)
    for b1 in bases:
        outside = list(iter_bits(full & ~b1))
        for e in iter_bits(b1):
            rest = b1 & ~(1 << e)
            swap = 0
            for f in outside:
                if rest | (1 << f) in basis_set:
                    swap |= 1 << f
            bad = (((arr >> e) & 1) == 0) & ((arr & swap) == 0)
            if bad.any():
                return b1, int(arr[int(np.argmax(bad))]), e
    return None


class Matroid:
    """Common interface: a rank oracle on bitmask subsets of labelled elements.

    Subclasses supply ``rank``, ``delete``, ``contract`` and ``dual``; the
    dense rank table (``n <= TABLE_CAP``) is derived lazily from the oracle
    unless the subclass can build it faster.
    """

    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @cached_property
    def r(self) -> int:
        return self.rank(self.full)

    def rank(self, X: int) -> int:
        raise NotImplementedError

    def delete(self, D: int) -> "Matroid":
        raise NotImplementedError

    def contract(self, C: int) -> "Matroid":
        raise NotImplementedError

    def dual(self) -> "Matroid":
        raise NotImplementedError

    def restrict(self, K: int) -> "Matroid":
        return self.delete(self.full & ~K)

    @cached_property
    def table(self) -> np.ndarray:
        if self.n > TABLE_CAP:
            raise CapExceeded(f"rank table needs n <= {TABLE_CAP}, got {self.n}")
        t = np.fromiter((self.rank(X) for X in range(1 << self.n)), dtype=np.int8, count=1 << self.n)
        t.setflags(write=False)
        return t

    @property
    def has_table(self) -> bool:
        return self.n <= TABLE_CAP

    @cached_property
    def bases(self) -> tuple[int, ...]:
        pc = popcount_array(self.n)
        idx = np.nonzero((self.table == self.r) & (pc == self.r))[0]
        return tuple(int(b) for b in idx)

    def to_basis(self) -> "BasisMatroid":
        return BasisMatroid.from_table(self.labels, self.table)

    # label helpers -----------------------------------------------------
    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, item: int | str) -> int:
        if isinstance(item, str):
            try:
                return self._label_index[item]
            except KeyError:
                raise KeyError(f"no element labelled {item!r}") from None
        if not 0 <= item < self.n:
            raise IndexError(item)
        return item

    def mask(self, items: Iterable[int | str] | str | int) -> int:
        if isinstance(items, (str, int)):
            items = [items]
        m = 0
        for it in items:
            m |= 1 << self.index(it)
        return m

    def names(self, X: int) -> list[str]:
        return [self.labels[i] for i in iter_bits(X)]

    def fmt(self, X: int) -> str:
        return format_set(X, self.labels)

    def check_subset(self, X: int) -> None:
        if X < 0 or X >> self.n:
            raise ValueError(f"set {X:#x} is not within a ground set of size {self.n}")

    # comparisons -------------------------------------------------------
    def fingerprint(self) -> tuple:
        return (self.labels, self.table.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        if self is other:
            return True
        if self.labels != other.labels:
            return False
        if self.has_table and other.has_table:
            return bool(np.array_equal(self.table, other.table))
        return self.r == other.r and set(self.bases) == set(other.bases)

    def __hash__(self) -> int:
        if self.has_table:
            return hash(self.fingerprint())
        return id(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, r={self.r})"

    def same_as(self, other: "Matroid") -> bool:
        """Equality up to a reordering of the ground set, matched by label."""
        if sorted(self.labels) != sorted(other.labels):
            return False
        return self.reordered(other.labels) == other

    def reordered(self, order: Sequence[str]) -> "BasisMatroid":
        """The same matroid with its elements listed in the label order `order`."""
        positions = [self.index(lab) for lab in order]
        if sorted(positions) != list(range(self.n)):
            raise ValueError("order must be a permutation of the labels")
        dep = deposit_indices(positions)
        return BasisMatroid.from_table(tuple(order), self.table[dep])

    def relabel(self, labels: Sequence[str]) -> "BasisMatroid":
        return BasisMatroid.from_table(tuple(labels), self.table)


class BasisMatroid(Matroid):
    """A matroid stored as its bases together with the derived rank table."""

    def __init__(self, labels: Iterable[str], bases: Iterable[Iterable[int] | int], *, validate: bool = True):
        labels = tuple(str(lab) for lab in labels)
        n = len(labels)
        if n > TABLE_CAP:
            raise CapExceeded(f"explicit matroids are limited to {TABLE_CAP} elements, got {n}")
        if len(set(labels)) != n:
            raise ValidationError("labels must be pairwise distinct")
        masks = []
        for b in bases:
            if isinstance(b, (int, np.integer)):
                m = int(b)
                if m < 0 or m >> n:
                    raise ValidationError(f"basis {m:#x} has elements outside the ground set")
            else:
                items = list(b)
                for i in items:
                    if not 0 <= int(i) < n:
                        raise ValidationError(f"basis element {i} out of range 0..{n - 1}")
                m = 0
                for i in items:
                    m |= 1 << int(i)
                if m.bit_count() != len(items):
                    raise ValidationError(f"basis {items} repeats an element")
            masks.append(m)
        if not masks:
            raise ValidationError("a matroid needs at least one basis")
        if len(set(masks)) != len(masks):
            raise ValidationError("duplicate bases")
        sizes = {m.bit_count() for m in masks}
        if len(sizes) != 1:
            raise ValidationError(f"bases have different sizes {sorted(sizes)}")
        masks.sort()
        if validate:
            bad = check_basis_exchange(n, masks)
            if bad is not None:
                b1, b2, e = bad
                raise ValidationError(
                    f"basis exchange fails: B1={format_set(b1, labels)}, B2={format_set(b2, labels)}, "
                    f"e={labels[e]} has no replacement in B2-B1"
                )
        self.labels = labels
        self.__dict__["bases"] = tuple(masks)
        self.__dict__["r"] = masks[0].bit_count()
        t = rank_table_from_bases(n, masks)
        t.setflags(write=False)
        self.__dict__["table"] = t

    @classmethod
    def from_table(cls, labels: Iterable[str], table: np.ndarray, *, validate: bool = False) -> "BasisMatroid":
        labels = tuple(labels)
        n = len(labels)
        t = np.asarray(table, dtype=np.int8)
        if t.shape != (1 << n,):
            raise ValidationError(f"rank table must have {1 << n} entries")
        if validate:
            msg = check_rank_table(n, t)
            if msg:
                raise ValidationError(msg)
        obj = cls.__new__(cls)
        obj.labels = labels
        t = t.copy() if t.flags.writeable or t.base is not None else t
        t.setflags(write=False)
        obj.__dict__["table"] = t
        obj.__dict__["r"] = int(t[-1])
        return obj

    @classmethod
    def from_circuits(cls, labels: Iterable[str], circuits: Iterable[int]) -> "BasisMatroid":
        labels = tuple(labels)
        return cls.from_table(labels, rank_table_from_circuits(len(labels), circuits))

    def rank(self, X: int) -> int:
        return int(self.table[X])

    def _minor(self, remove: int, contract: int) -> "BasisMatroid":
        keep = [i for i in range(self.n) if not (remove >> i) & 1]
        if not keep:
            raise EmptyGroundSet("minor would have an empty ground set")
        dep = deposit_indices(keep)
        if contract:
            t = self.table[dep | contract] - self.table[contract]
        else:
            t = self.table[dep]
        return BasisMatroid.from_table(tuple(self.labels[i] for i in keep), t)

    def delete(self, D: int) -> "BasisMatroid":
        return self._minor(D, 0)

    def contract(self, C: int) -> "BasisMatroid":
        return self._minor(C, C)

    def dual(self) -> "BasisMatroid":
        t = popcount_array(self.n) + self.table[::-1].astype(np.int16) - self.r
        return BasisMatroid.from_table(self.labels, t)

    def to_basis(self) -> "BasisMatroid":
        return self


class DualMatroid(Matroid):
    """The dual of a matroid, evaluated through the primal's rank oracle."""

    def __init__(self, primal: Matroid):
        self.primal = primal
        self.labels = primal.labels

    def rank(self, X: int) -> int:
        return X.bit_count() + self.primal.rank(self.full & ~X) - self.primal.r

    def delete(self, D: int) -> Matroid:
        return self.primal.contract(D).dual()

    def contract(self, C: int) -> Matroid:
        return self.primal.delete(C).dual()

    def dual(self) -> Matroid:
        return self.primal

    @property
    def has_table(self) -> bool:
        return self.primal.has_table

    @cached_property
    def table(self) -> np.ndarray:
        t = (popcount_array(self.n) + self.primal.table[::-1].astype(np.int16) - self.primal.r).astype(np.int8)
        t.setflags(write=False)
        return t


# -- module-level operations ---------------------------------------------------


def rank(M: Matroid, X: int) -> int:
    M.check_subset(X)
    return M.rank(X)


def closure(M: Matroid, X: int) -> int:
    M.check_subset(X)
    rx = M.rank(X)
    cl = X
    for e in range(M.n):
        if not (X >> e) & 1 and M.rank(X | (1 << e)) == rx:
            cl |= 1 << e
    return cl


def corank(M: Matroid, X: int) -> int:
    """Rank of `X` in the dual matroid."""
    return X.bit_count() + M.rank(M.full & ~X) - M.r


def coclosure(M: Matroid, X: int) -> int:
    rx = corank(M, X)
    cl = X
    for e in range(M.n):
        if not (X >> e) & 1 and corank(M, X | (1 << e)) == rx:
            cl |= 1 << e
    return cl


def is_independent(M: Matroid, X: int) -> bool:
    return M.rank(X) == X.bit_count()


def is_flat(M: Matroid, X: int) -> bool:
    return closure(M, X) == X


def is_circuit(M: Matroid, X: int) -> bool:
    k = X.bit_count()
    if k == 0 or M.rank(X) != k - 1:
        return False
    return all(M.rank(X & ~(1 << e)) == k - 1 for e in iter_bits(X))


def is_hyperplane(M: Matroid, X: int) -> bool:
    return M.rank(X) == M.r - 1 and is_flat(M, X)


def is_cocircuit(M: Matroid, X: int) -> bool:
    return X != 0 and is_hyperplane(M, M.full & ~X)


def _minimal_dependent(n: int, table: np.ndarray) -> list[int]:
    pc = popcount_array(n)
    dep = table < pc
    proper = np.zeros(1 << n, dtype=bool)
    for e in range(n):
        d = dep.reshape(-1, 2, 1 << e)
        p = proper.reshape(-1, 2, 1 << e)
        p[:, 1, :] |= d[:, 0, :]
    idx = np.nonzero(dep & ~proper)[0]
    return sort_family(int(x) for x in idx)


def circuits(M: Matroid) -> list[int]:
    """All circuits, ordered by (size, bits)."""
    cached = M.__dict__.get("_circuits")
    if cached is None:
        cached = _minimal_dependent(M.n, M.table)
        M.__dict__["_circuits"] = cached
    return list(cached)


def cocircuits(M: Matroid) -> list[int]:
    cached = M.__dict__.get("_cocircuits")
    if cached is None:
        cached = circuits(M.dual())
        M.__dict__["_cocircuits"] = cached
    return list(cached)


def dual(M: Matroid) -> Matroid:
    return M.dual()


def delete(M: Matroid, D: int) -> Matroid:
    M.check_subset(D)
    return M.delete(D)


def contract(M: Matroid, C: int) -> Matroid:
    M.check_subset(C)
    return M.contract(C)


def loops(M: Matroid) -> int:
    return sum(1 << e for e in range(M.n) if M.rank(1 << e) == 0)


def coloops(M: Matroid) -> int:
    return sum(1 << e for e in range(M.n) if M.rank(M.full & ~(1 << e)) < M.r)


def parallel_classes(M: Matroid) -> list[int]:
    """Parallel classes of non-loop elements (including singletons)."""
    lp = loops(M)
    seen = lp
    classes = []
    for e in range(M.n):
        if (seen >> e) & 1:
            continue
        cls = 1 << e
        for f in range(e + 1, M.n):
            if not (seen >> f) & 1 and M.rank((1 << e) | (1 << f)) == 1:
                cls |= 1 << f
        seen |= cls
        classes.append(cls)
    return classes


def series_classes(M: Matroid) -> list[int]:
    """Series classes of non-coloop elements (including singletons)."""
    cl = coloops(M)
    seen = cl
    classes = []
    for e in range(M.n):
        if (seen >> e) & 1:
            continue
        cls = 1 << e
        for f in range(e + 1, M.n):
            if not (seen >> f) & 1 and corank(M, (1 << e) | (1 << f)) == 1:
                cls |= 1 << f
        seen |= cls
        classes.append(cls)
    return classes


def is_simple(M: Matroid) -> bool:
    return loops(M) == 0 and all(c.bit_count() == 1 for c in parallel_classes(M))


def is_cosimple(M: Matroid) -> bool:
    return coloops(M) == 0 and all(c.bit_count() == 1 for c in series_classes(M))


def simplify(M: Matroid) -> tuple[Matroid, dict[str, str | None]]:
    """si(M): delete loops and all but the lowest element of each parallel class.

    The mapping sends every removed label to its kept representative, or to
    None for loops.
    """
    lp = loops(M)
    mapping: dict[str, str | None] = {M.labels[e]: None for e in iter_bits(lp)}
    remove = lp
    for cls in parallel_classes(M):
        keep = (cls & -cls).bit_length() - 1
        for e in iter_bits(cls & ~(1 << keep)):
            mapping[M.labels[e]] = M.labels[keep]
            remove |= 1 << e
    if remove == M.full:
        raise EmptyGroundSet("simplification of a matroid consisting of loops")
    return (M.delete(remove) if remove else M), mapping


def cosimplify(M: Matroid) -> tuple[Matroid, dict[str, str | None]]:
    """co(M): contract coloops and all but the lowest element of each series class."""
    cl = coloops(M)
    mapping: dict[str, str | None] = {M.labels[e]: None for e in iter_bits(cl)}
    remove = cl
    for cls in series_classes(M):
        keep = (cls & -cls).bit_length() - 1
        for e in iter_bits(cls & ~(1 << keep)):
            mapping[M.labels[e]] = M.labels[keep]
            remove |= 1 << e
    if remove == M.full:
        raise EmptyGroundSet("cosimplification of a matroid consisting of coloops")
    return (M.contract(remove) if remove else M), mapping


def si(M: Matroid) -> Matroid:
    return simplify(M)[0]


def co(M: Matroid) -> Matroid:
    return cosimplify(M)[0]


# -- witnesses -----------------------------------------------------------------


class WitnessKind(str, Enum):
    CIRCUIT = "Circuit"
    COCIRCUIT = "Cocircuit"
    SEPARATION = "Separation"
    CHAIN = "Chain"


@dataclass(frozen=True)
class Witness:
    """A replayable certificate: sets plus what they are claimed to be."""

    kind: WitnessKind
    sets: tuple[int, ...]
    note: str = ""
    order: int = 0  # separation order k, for SEPARATION witnesses

    def verify(self, M: Matroid) -> bool:
        if self.kind is WitnessKind.CIRCUIT:
            return all(is_circuit(M, X) for X in self.sets)
        if self.kind is WitnessKind.COCIRCUIT:
            return all(is_cocircuit(M, X) for X in self.sets)
        if self.kind is WitnessKind.SEPARATION:
            (X,) = self.sets
            Y = M.full & ~X
            k = self.order
            lam = M.rank(X) + M.rank(Y) - M.r
            return lam < k and X.bit_count() >= k and Y.bit_count() >= k
        if self.kind is WitnessKind.CHAIN:
            return all(a & ~b == 0 and a != b for a, b in zip(self.sets, self.sets[1:]))
        return False

    def to_json(self, M: Matroid) -> dict:
        out = {"kind": self.kind.value, "sets": [M.names(X) for X in self.sets], "note": self.note}
        if self.kind is WitnessKind.SEPARATION:
            out["order"] = self.order
        return out


# -- JSON ------------------------------------------------------------------------


def matroid_to_json(M: Matroid) -> dict:
    return {
        "n": M.n,
        "labels": list(M.labels),
        "bases": [list(iter_bits(b)) for b in sorted(M.bases, key=canonical_key)],
    }


def matroid_from_json(data: dict | str) -> BasisMatroid:
    """Parse ``{"n", "labels", "bases"}``; the result is always validated."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("matroid JSON must be an object")
    try:
        n = int(data["n"])
        labels = data.get("labels") or [str(i) for i in range(n)]
        bases = data["bases"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matroid JSON: {exc}") from exc
    if len(labels) != n:
        raise ValidationError(f"expected {n} labels, got {len(labels)}")
    if not isinstance(bases, list) or not all(isinstance(b, list) for b in bases):
        raise ParseError("bases must be a list of index lists")
    for b in bases:
        if any(not isinstance(i, int) for i in b):
            raise ParseError("basis entries must be integers")
        if b != sorted(b):
            raise ValidationError(f"basis {b} is not a sorted index list")
    return BasisMatroid(labels, bases, validate=True)


def load_matroid(path: str) -> BasisMatroid:
    with open(path, encoding="utf-8") as fh:
        return matroid_from_json(fh.read())


@dataclass
class Summary:
    """Cheap structural digest used for logging and reports."""

    n: int
    r: int
    labels: list[str] = field(default_factory=list)

    @classmethod
    def of(cls, M: Matroid) -> "Summary":
        return cls(M.n, M.r, list(M.labels))
