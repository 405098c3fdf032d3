"""Decategorified composition tables of finitary 2-categories.

A :class:`MultiTable` stores, for every composable pair ``(F, G)`` of
indecomposable 1-morphisms, the multiset ``F o G`` as a map
``gen -> multiplicity``.  ``G`` is applied first, so ``F o G`` needs
``target(G) == source(F)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import NoStar, NotComposable, UnknownGen

Multiset = dict  # gen name -> positive int


@dataclass(frozen=True)
class Gen:
    name: str
    source: str
    target: str


class Violation(NamedTuple):
    kind: str
    witness: tuple
    message: str


class MultiTable:
    """Immutable composition table.

    ``table`` maps ``(F, G)`` to a multiset; zero entries are dropped on
    construction.  ``star`` is an optional map on generator names.
    """

    def __init__(
        self,
        objects: Iterable[str],
        gens: Iterable[Gen],
        identities: Mapping[str, str],
        table: Mapping[tuple[str, str], Mapping[str, int]],
        star: Mapping[str, str] | None = None,
        star_involutive: bool = True,
        name: str = "",
    ):
        self.objects = tuple(objects)
        self.gens = tuple(gens)
        self._gen = {g.name: g for g in self.gens}
        if len(self._gen) != len(self.gens):
            raise ValueError("duplicate generator names")
        self.identities = dict(identities)
        self.table = {
            (F, G): {H: int(m) for H, m in ms.items() if m}
            for (F, G), ms in table.items()
        }
        self.star = dict(star) if star is not None else None
        self.star_involutive = star_involutive
        self.name = name
        self._id_names = frozenset(self.identities.values())

    # lookup
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.gens)

    def gen(self, F: str) -> Gen:
        try:
            return self._gen[F]
        except KeyError:
            raise UnknownGen(f"unknown generator {F!r}") from None

    def __contains__(self, F: str) -> bool:
        return F in self._gen

    def source(self, F: str) -> str:
        return self.gen(F).source

    def target(self, F: str) -> str:
        return self.gen(F).target

    def is_identity(self, F: str) -> bool:
        return F in self._id_names

    def composable(self, F: str, G: str) -> bool:
        return self.target(G) == self.source(F)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for F, G in product(self.names, repeat=2):
            if self._gen[G].target == self._gen[F].source:
                yield F, G

    def compose(self, F: str, G: str) -> Multiset:
        return compose(self, F, G)

    def replace(self, F: str, G: str, value: Mapping[str, int]) -> "MultiTable":
        """Copy of the table with the product ``F o G`` overwritten."""
        table = dict(self.table)
        table[(F, G)] = dict(value)
        return MultiTable(self.objects, self.gens, self.identities, table,
                          self.star, self.star_involutive, self.name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<MultiTable{label}: {len(self.gens)} gens, {len(self.objects)} objects>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiTable):
            return NotImplemented
        return (self.objects == other.objects and self.gens == other.gens
                and self.identities == other.identities and self.table == other.table
                and self.star == other.star)

    __hash__ = None


def compose(t: MultiTable, F: str, G: str) -> Multiset:
    gF, gG = t.gen(F), t.gen(G)
    if gG.target != gF.source:
        raise NotComposable(f"{F} o {G}: target({G}) = {gG.target} but source({F}) = {gF.source}")
    return dict(t.table.get((F, G), {}))


def _mul_multisets(t: MultiTable, left: Mapping[str, int], right: Mapping[str, int]) -> dict:
    out: dict[str, int] = {}
    for F, a in left.items():
        for G, b in right.items():
            for H, c in t.table.get((F, G), {}).items():
                out[H] = out.get(H, 0) + a * b * c
    return out


def validate(t: MultiTable) -> list[Violation]:
    """All violated table invariants, each with a witness; empty iff valid."""
    out: list[Violation] = []
    names = t.names
    for obj in t.objects:
        e = t.identities.get(obj)
        if e is None:
            out.append(Violation("unit", (obj,), f"object {obj} has no identity"))
        elif e not in t or t.source(e) != obj or t.target(e) != obj:
            out.append(Violation("unit", (obj, e), f"identity {e} of {obj} is not an endomorphism of {obj}"))
    for g in t.gens:
        for end in (g.source, g.target):
            if end not in t.objects:
                out.append(Violation("typing", (g.name,), f"{g.name} touches unknown object {end}"))

    for (F, G), ms in t.table.items():
        if F not in t or G not in t:
            out.append(Violation("typing", (F, G), f"product {F} * {G} uses an unknown generator"))
            continue
        if not t.composable(F, G):
            out.append(Violation("typing", (F, G), f"{F} * {G} is stored but not composable"))
            continue
        for H, m in ms.items():
            if H not in t:
                out.append(Violation("typing", (F, G, H), f"{F} * {G} contains unknown {H}"))
            elif t.source(H) != t.source(G) or t.target(H) != t.target(F):
                out.append(Violation("typing", (F, G, H), f"{H} in {F} * {G} has the wrong source or target"))
            if m < 0:
                out.append(Violation("negative", (F, G, H), f"{F} * {G} has multiplicity {m} of {H}"))

    for F, G in t.composable_pairs():
        if (F, G) not in t.table:
            out.append(Violation("missing", (F, G), f"no entry for {F} * {G}"))

    for obj, e in t.identities.items():
        if e not in t:
            continue
        for F in names:
            if t.source(F) == obj and t.table.get((F, e)) != {F: 1}:
                out.append(Violation("unit", (F, e), f"{F} * {e} should be {F}"))
            if t.target(F) == obj and t.table.get((e, F)) != {F: 1}:
                out.append(Violation("unit", (e, F), f"{e} * {F} should be {F}"))

    if any(v.kind in ("typing", "missing") for v in out):
        return out  # associativity is meaningless on a mistyped table

    for F, G, H in product(names, repeat=3):
        if not (t.composable(F, G) and t.composable(G, H)):
            continue
        left = _mul_multisets(t, t.table[(F, G)], {H: 1})
        right = _mul_multisets(t, {F: 1}, t.table[(G, H)])
        if left != right:
            out.append(Violation(
                "associativity", (F, G, H),
                f"({F} * {G}) * {H} = {_fmt(left)} but {F} * ({G} * {H}) = {_fmt(right)}"))

    if t.star is not None:
        out.extend(_check_star(t))
    return out


def _check_star(t: MultiTable) -> list[Violation]:
    out = []
    star = t.star
    for F in t.names:
        if F not in star:
            out.append(Violation("star", (F,), f"star is undefined on {F}"))
    if len(set(star.values())) != len(star) or set(star.values()) != set(star):
        out.append(Violation("star", tuple(sorted(star)), "star is not a bijection of the generators"))
    for F, Fs in star.items():
        if F not in t or Fs not in t:
            out.append(Violation("star", (F, Fs), f"star pair {F}<->{Fs} names an unknown generator"))
            continue
        if t.source(Fs) != t.target(F) or t.target(Fs) != t.source(F):
            out.append(Violation("star", (F, Fs), f"star({F}) = {Fs} does not reverse direction"))
        if t.star_involutive and star.get(Fs) != F:
            out.append(Violation("star", (F, Fs), f"star is declared involutive but star(star({F})) != {F}"))
        if t.is_identity(F) and not t.is_identity(Fs):
            out.append(Violation("star", (F, Fs), f"star sends identity {F} to non-identity {Fs}"))
    return out


def star_cell_compat(t: MultiTable) -> list[Violation]:
    """Every F must lie in the same two-sided cell as star(F)."""
    if t.star is None:
        raise NoStar("table has no star map")
    from .cells import cell_structure

    cs = cell_structure(t, "twosided")
    out = []
    for F in t.names:
        Fs = t.star.get(F)
        if Fs is None or Fs not in t:
            out.append(Violation("star", (F,), f"star undefined on {F}"))
        elif cs.cell_of(F) != cs.cell_of(Fs):
            out.append(Violation("star-cell", (F, Fs), f"{F} and star({F}) = {Fs} lie in different two-sided cells"))
    return out


def _fmt(ms: Mapping[str, int]) -> str:
    if not ms:
        return "0"
    return " + ".join(f"{m} {H}" if m != 1 else H for H, m in sorted(ms.items()))
