"""Concrete finite groups backed by a Cayley table.

Elements are dense indices ``0..order-1`` with the identity at 0.  Subsets of
a group are Python ints used as bitmasks (bit ``i`` set means element ``i``
is present).
"""
from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, config
from .errors import NotAGroupError, OrderBoundExceeded, ParseError
from .perm import Permutation, parse_permutation


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def mask_from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr.astype(np.bool_), bitorder="little").tobytes(), "little")


def indices_from_mask(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


class FiniteGroup:
    """A group given by its multiplication table.

    ``perms`` optionally holds one permutation per element, recording how the
    group was built; nothing downstream depends on it except pretty printing
    and parsing subgroup generators from text.
    """

    def __init__(self, mul: np.ndarray, perms: Sequence[Permutation] | None = None, name: str = "G"):
        self.mul = np.ascontiguousarray(mul, dtype=np.int64)
        self.mul.setflags(write=False)
        self.order = int(self.mul.shape[0])
        self.perms = tuple(perms) if perms is not None else None
        self.name = name
        inv = np.argmin(self.mul, axis=1)  # identity is 0, the unique zero in each row
        self.inv = inv.astype(np.int64)
        self.inv.setflags(write=False)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = _kernels.element_orders(self.mul)
        out.setflags(write=False)
        return out

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g^-1 x g``."""
        t = self.mul[self.inv, :]
        out = self.mul[t, np.arange(self.order)[:, None]]
        out.setflags(write=False)
        return out

    @cached_property
    def comm(self) -> np.ndarray:
        """``comm[a, b] = a^-1 b^-1 a b``."""
        left = self.mul[self.inv[:, None], self.inv[None, :]]
        out = self.mul[left, self.mul]
        out.setflags(write=False)
        return out

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def lattice(self):
        from .lattice import all_subgroups

        return all_subgroups(self)

    @cached_property
    def _perm_index(self) -> dict[tuple[int, ...], int]:
        if self.perms is None:
            return {}
        return {p.images: i for i, p in enumerate(self.perms)}

    def index_of(self, perm: Permutation) -> int:
        if self.perms is None:
            raise ValueError(f"{self.name} has no permutation representation")
        try:
            return self._perm_index[perm.images]
        except KeyError:
            raise ValueError(f"{perm} is not an element of {self.name}") from None

    def element_label(self, x: int) -> str:
        if self.perms is not None:
            return str(self.perms[x])
        return f"#{x}"

    @property
    def degree(self) -> int | None:
        return self.perms[0].degree if self.perms else None

    def subgroup(self, mask: int, gens: Sequence[int] = ()) -> "Subgroup":
        return Subgroup(self, mask, tuple(gens))

    @property
    def top(self) -> "Subgroup":
        return self.lattice.top

    @property
    def bottom(self) -> "Subgroup":
        return self.lattice.bottom

    def generate(self, seed: Iterable[int]) -> "Subgroup":
        """Least subgroup containing ``seed``; generators are chosen greedily."""
        gens: list[int] = []
        current = np.zeros(self.order, dtype=np.bool_)
        current[0] = True
        for x in seed:
            x = int(x)
            if current[x]:
                continue
            gens.append(x)
            current = _kernels.generate(self.mul, gens)
        return Subgroup(self, mask_from_bool(current), tuple(gens))


class Subgroup:
    """A subgroup of ``group`` stored as an element bitmask.

    ``id`` resolves the subgroup in the ambient lattice (built on demand).
    """

    __slots__ = ("group", "mask", "gens")

    def __init__(self, group: FiniteGroup, mask: int, gens: tuple[int, ...] = ()):
        self.group = group
        self.mask = mask
        self.gens = gens

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.group is self.group and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> int(x) & 1)

    def __len__(self) -> int:
        return self.order

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def elems(self) -> np.ndarray:
        return indices_from_mask(self.mask, self.group.order)

    @property
    def id(self) -> int:
        return self.group.lattice.index[self.mask]

    def generators(self) -> tuple[int, ...]:
        """A generating tuple, taken from the lattice entry when available."""
        if self.gens:
            return self.gens
        lat = self.group.__dict__.get("lattice")
        if lat is not None and self.mask in lat.index:
            return lat.subgroups[lat.index[self.mask]].gens
        return self.group.generate(self.elems).gens

    def generator_labels(self) -> list[str]:
        return [self.group.element_label(x) for x in self.generators()]

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, gens={self.generator_labels()})"


def group_from_generators(gens: Sequence[Permutation], degree: int | None = None,
                          order_bound: int | None = None, name: str = "G") -> FiniteGroup:
    """Breadth-first closure of permutation generators into a Cayley table.

    Element 0 is the identity and the remaining elements appear in BFS order,
    so the construction is deterministic.
    """
    bound = config.ORDER_BOUND if order_bound is None else order_bound
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("all generators must share one degree")
    gen_arr = [g.array() for g in gens]
    elements = [np.arange(degree, dtype=np.int64)]
    index = {elements[0].tobytes(): 0}
    parent = [-1]
    via = [-1]
    right = []  # right[i][k] = index of elements[i] * gens[k]
    i = 0
    while i < len(elements):
        row = []
        for k, g in enumerate(gen_arr):
            prod = g[elements[i]]
            key = prod.tobytes()
            j = index.get(key)
            if j is None:
                j = len(elements)
                if j >= bound:
                    raise OrderBoundExceeded(bound, j + 1)
                index[key] = j
                elements.append(prod)
                parent.append(i)
                via.append(k)
            row.append(j)
        right.append(row)
        i += 1
    n = len(elements)
    right_arr = np.asarray(right, dtype=np.int64).reshape(n, len(gens))
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    # columns are filled in BFS order: x * (y g) = (x y) g
    for j in range(1, n):
        mul[:, j] = right_arr[mul[:, parent[j]], via[j]]
    perms = [Permutation(tuple(int(v) for v in e)) for e in elements]
    return FiniteGroup(mul, perms, name=name)


def group_from_table(rows, order_bound: int | None = None, name: str = "G") -> FiniteGroup:
    """Validate a Cayley table (identity must be element 0) and wrap it."""
    bound = config.ORDER_BOUND if order_bound is None else order_bound
    mul = np.asarray(rows, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroupError(f"table must be a non-empty square array, got shape {mul.shape}")
    n = mul.shape[0]
    if n > bound:
        raise OrderBoundExceeded(bound, n)
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroupError("table entries must lie in 0..order-1")
    idx = np.arange(n)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        raise NotAGroupError("element 0 is not a two-sided identity")
    for x in range(n):
        if (mul[x] == 0).sum() != 1:
            raise NotAGroupError(f"element {x} has no unique right inverse")
        y = int(np.flatnonzero(mul[x] == 0)[0])
        if mul[y, x] != 0:
            raise NotAGroupError(f"element {y} is a right but not a left inverse of {x}")
    for a in range(n):
        lhs = mul[mul[a][:, None], idx[None, :]]    # (a b) c, indexed [b, c]
        rhs = mul[a][mul]                           # a (b c)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = (int(v) for v in bad[0])
            raise NotAGroupError(f"associativity fails for triple ({a}, {b}, {c})")
    return FiniteGroup(mul, None, name=name)


def parse_group_text(text: str, order_bound: int | None = None, name: str = "G") -> FiniteGroup:
    """Parse the group file format (``degree``/``gen`` or ``order``/``row`` lines)."""
    degree = order = None
    gens: list[str] = []
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "degree":
                degree = int(rest)
            elif head == "gen":
                gens.append(rest)
            elif head == "order":
                order = int(rest)
            elif head == "row":
                rows.append([int(v) for v in rest.split()])
            else:
                raise ParseError(f"line {lineno}: unknown directive {head!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    perm_form = degree is not None or gens
    table_form = order is not None or rows
    if perm_form and table_form:
        raise ParseError("group file mixes generator and table forms")
    if perm_form:
        if degree is None:
            raise ParseError("missing 'degree' line")
        perms = [parse_permutation(g, degree) for g in gens]
        return group_from_generators(perms, degree=degree, order_bound=order_bound, name=name)
    if table_form:
        if order is None:
            raise ParseError("missing 'order' line")
        if len(rows) != order or any(len(r) != order for r in rows):
            raise ParseError(f"expected {order} rows of {order} entries")
        return group_from_table(rows, order_bound=order_bound, name=name)
    raise ParseError("empty group file")


def read_group_file(path: str | Path, order_bound: int | None = None) -> FiniteGroup:
    path = Path(path)
    return parse_group_text(path.read_text(encoding="utf-8"), order_bound=order_bound, name=path.stem)
