"""Left, right and two-sided preorders on generators, their cells and orders."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotACell
from .multitable import MultiTable

KINDS = ("left", "right", "twosided")


def _one_step(t: MultiTable, kind: str) -> dict[str, set[str]]:
    """F -> generators reachable from F by one composition on the given side(s)."""
    step: dict[str, set[str]] = {F: set() for F in t.names}
    for (H, F), ms in t.table.items():
        # H o F: F gains left-multiples, H gains right-multiples
        if kind in ("left", "twosided"):
            step[F].update(ms)
        if kind in ("right", "twosided"):
            step[H].update(ms)
    return step


def preorder(t: MultiTable, kind: str) -> dict[str, frozenset[str]]:
    """Map F to the set of all G with G >= F in the requested preorder.

    G >=_L F iff G occurs in some iterated left composite of F (reflexive
    closure included); right and two-sided are analogous.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    step = _one_step(t, kind)
    up: dict[str, frozenset[str]] = {}
    for F in t.names:
        seen = {F}
        work = [F]
        while work:
            X = work.pop()
            for Y in step[X]:
                if Y not in seen:
                    seen.add(Y)
                    work.append(Y)
        up[F] = frozenset(seen)
    return up


def leq(up: dict[str, frozenset[str]], F: str, G: str) -> bool:
    """F <= G in the preorder given by :func:`preorder`."""
    return G in up[F]


@dataclass
class CellStructure:
    kind: str
    cells: list[tuple[str, ...]]
    order: set[tuple[int, int]]  # (i, j) means cells[i] <= cells[j]
    hasse: list[tuple[int, int]]  # covers (i, j): cells[i] < cells[j]
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {F: i for i, c in enumerate(self.cells) for F in c}

    def cell_of(self, F: str) -> int:
        return self._index[F]

    def cell(self, F: str) -> tuple[str, ...]:
        return self.cells[self._index[F]]

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.order

    def index(self, cell: Iterable[str]) -> int:
        """Index of the cell equal (as a set) to ``cell``; NotACell otherwise."""
        s = set(cell)
        if s:
            i = self._index.get(next(iter(s)))
            if i is not None and set(self.cells[i]) == s:
                return i
        raise NotACell(f"{sorted(s)} is not a {self.kind} cell")

    def maximal(self, indices: Iterable[int]) -> list[int]:
        idx = list(indices)
        return [i for i in idx if not any(j != i and self.leq(i, j) for j in idx)]


def cell_structure(t: MultiTable, kind: str) -> CellStructure:
    up = preorder(t, kind)
    cells: list[tuple[str, ...]] = []
    assigned: set[str] = set()
    for F in t.names:  # first-appearance order
        if F in assigned:
            continue
        cell = tuple(G for G in t.names if G in up[F] and F in up[G])
        assigned.update(cell)
        cells.append(cell)
    reps = [c[0] for c in cells]
    order = {(i, j) for i, a in enumerate(reps) for j, b in enumerate(reps) if b in up[a]}
    hasse = _cover_relation(len(cells), order)
    return CellStructure(kind, cells, order, hasse)


def _cover_relation(n: int, order: set[tuple[int, int]]) -> list[tuple[int, int]]:
    strict = {(i, j) for i, j in order if i != j}
    covers = []
    for i, j in sorted(strict):
        if not any((i, k) in strict and (k, j) in strict for k in range(n)):
            covers.append((i, j))
    return covers


def _twosided_cell(t: MultiTable, J: Iterable[str]) -> tuple[str, ...]:
    cs = cell_structure(t, "twosided")
    return cs.cells[cs.index(J)]


def is_idempotent_cell(t: MultiTable, J: Iterable[str]) -> tuple[bool, tuple[str, str, str] | None]:
    """Some H in J occurs in F o G with F, G in J; returns the first such (F, G, H)."""
    cell = _twosided_cell(t, J)
    members = set(cell)
    for F in cell:
        for G in cell:
            if not t.composable(F, G):
                continue
            for H in t.table.get((F, G), {}):
                if H in members:
                    return True, (F, G, H)
    return False, None


def is_strongly_regular(t: MultiTable, J: Iterable[str]) -> tuple[bool, str | None]:
    cell = _twosided_cell(t, J)
    members = set(cell)
    left = cell_structure(t, "left")
    right = cell_structure(t, "right")
    lcells = sorted({left.cell_of(F) for F in cell})
    rcells = sorted({right.cell_of(F) for F in cell})
    for cs, idx, side in ((left, lcells, "left"), (right, rcells, "right")):
        for i in idx:
            for j in idx:
                if i != j and cs.leq(i, j):
                    return False, f"{side} cells {cs.cells[i]} < {cs.cells[j]} inside J"
    for i in lcells:
        for j in rcells:
            meet = set(left.cells[i]) & set(right.cells[j]) & members
            if len(meet) != 1:
                return False, (f"left cell {left.cells[i]} meets right cell "
                               f"{right.cells[j]} in {len(meet)} elements")
    return True, None


def is_cell_order_consistent(t: MultiTable) -> bool:
    """Left and right cells refine two-sided cells."""
    two = cell_structure(t, "twosided")
    for kind in ("left", "right"):
        for c in cell_structure(t, kind).cells:
            if len({two.cell_of(F) for F in c}) != 1:
                return False
    return True
