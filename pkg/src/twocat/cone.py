"""Positively based cell algebras, goodness witnesses and a witness search.

For a two-sided cell J the algebra B(J) has basis J and the product of
the table truncated to summands inside J.  A goodness witness is a
strictly positive x together with an identity

    x^n + sum_{j>k} a_j x^j = sum_{l<=j<=k} a_j x^j,   n > k >= l >= 1,

all a_j >= 0 and a_l > 0.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cells import cell_structure
from .errors import MalformedWitness, MixedFields, NotInCone
from .linalg import Echelon, coordinates
from .multitable import MultiTable
from .scalars import QQ, FieldSpec, Scalar, format_scalar, parse_field, parse_scalar, sqrt_field


class CellAlgebra:
    """B(J): span of a two-sided cell with products truncated to J."""

    def __init__(self, table: MultiTable, cell: Sequence[str]):
        self.table = table
        self.basis = tuple(cell)
        members = set(self.basis)
        self.mult: dict[tuple[str, str], dict[str, int]] = {}
        for F in self.basis:
            for G in self.basis:
                if not table.composable(F, G):
                    continue
                prod = {H: m for H, m in table.table.get((F, G), {}).items() if H in members}
                if prod:
                    self.mult[(F, G)] = prod
        self._pos = {F: i for i, F in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, F: str) -> int:
        return self._pos[F]

    def element(self, coeffs: Mapping[str, object], spec: FieldSpec | None = None) -> "ConeElement":
        return ConeElement(self, coeffs, spec)

    def ones(self) -> "ConeElement":
        return ConeElement(self, {F: 1 for F in self.basis})

    def star_orbits(self) -> list[tuple[str, ...]]:
        """Orbits of the table's star inside the cell (singletons if no star)."""
        star = self.table.star
        seen: set[str] = set()
        orbits = []
        for F in self.basis:
            if F in seen:
                continue
            orbit = [F]
            if star is not None:
                G = star.get(F)
                while G is not None and G != F and G in self._pos and G not in orbit:
                    orbit.append(G)
                    G = star.get(G)
            seen.update(orbit)
            orbits.append(tuple(orbit))
        return orbits

    def __repr__(self) -> str:
        return f"<CellAlgebra on {list(self.basis)}>"


def cell_algebra(t: MultiTable, J: Iterable[str]) -> CellAlgebra:
    """B(J) for a two-sided cell J (checked)."""
    cs = cell_structure(t, "twosided")
    return CellAlgebra(t, cs.cells[cs.index(J)])


def cell_algebra_of(t: MultiTable, F: str) -> CellAlgebra:
    """B(J) for the two-sided cell containing F."""
    return CellAlgebra(t, cell_structure(t, "twosided").cell(F))


class ConeElement:
    """Linear combination of cell basis elements with exact coefficients."""

    def __init__(self, algebra: CellAlgebra, coeffs: Mapping[str, object], spec: FieldSpec | None = None):
        self.algebra = algebra
        if spec is None:
            spec = _common_spec(coeffs.values())
        self.spec = spec
        clean = {}
        for F, c in coeffs.items():
            if F not in algebra._pos:
                raise KeyError(f"{F} is not in the cell {list(algebra.basis)}")
            c = spec.coerce(c)
            if c:
                clean[F] = c
        self.coeffs = clean

    def __getitem__(self, F: str) -> Scalar:
        return self.coeffs.get(F, self.spec.zero)

    def vector(self) -> list[Scalar]:
        return [self[F] for F in self.algebra.basis]

    def in_cone(self) -> bool:
        return all(self[F].sign() > 0 for F in self.algebra.basis)

    def __add__(self, other: "ConeElement") -> "ConeElement":
        _same_algebra(self, other)
        out = dict(self.coeffs)
        for F, c in other.coeffs.items():
            out[F] = out.get(F, self.spec.zero) + c
        return ConeElement(self.algebra, out, self.spec)

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        return self + other.scale(-1)

    def scale(self, c) -> "ConeElement":
        c = self.spec.coerce(c)
        return ConeElement(self.algebra, {F: c * v for F, v in self.coeffs.items()}, self.spec)

    def __mul__(self, other: "ConeElement") -> "ConeElement":
        return cone_mul(self, other)

    def power(self, n: int) -> "ConeElement":
        if n < 1:
            raise ValueError("B(J) need not be unital; powers start at 1")
        result = self
        for _ in range(n - 1):
            result = cone_mul(result, self)
        return result

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeElement):
            return NotImplemented
        return self.algebra.basis == other.algebra.basis and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({c})*{F}" for F, c in ((F, self[F]) for F in self.algebra.basis) if c]
        return " + ".join(parts)


def _common_spec(values) -> FieldSpec:
    spec = QQ
    for v in values:
        if isinstance(v, Scalar) and not v.spec.is_rational:
            if not spec.is_rational and spec != v.spec:
                raise MixedFields(f"{spec} vs {v.spec}")
            spec = v.spec
    return spec


def _same_algebra(u: ConeElement, v: ConeElement) -> None:
    if u.algebra is not v.algebra and u.algebra.basis != v.algebra.basis:
        raise ValueError("elements live in different cell algebras")
    if u.spec != v.spec:
        if u.spec.is_rational or v.spec.is_rational:
            return
        raise MixedFields(f"{u.spec} vs {v.spec}")


def cone_mul(u: ConeElement, v: ConeElement) -> ConeElement:
    _same_algebra(u, v)
    spec = u.spec if not u.spec.is_rational else v.spec
    out: dict[str, Scalar] = {}
    mult = u.algebra.mult
    for F, a in u.coeffs.items():
        for G, b in v.coeffs.items():
            prod = mult.get((F, G))
            if not prod:
                continue
            ab = a * b
            for H, m in prod.items():
                out[H] = out.get(H, 0) + ab * m
    return ConeElement(u.algebra, out, spec)


# witnesses -----------------------------------------------------------------

@dataclass
class GoodnessWitness:
    x: ConeElement
    n: int
    k: int
    l: int
    a: dict[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.n > self.k >= self.l >= 1):
            raise MalformedWitness(f"need n > k >= l >= 1, got n={self.n}, k={self.k}, l={self.l}")
        spec = self.x.spec
        for c in self.a.values():
            if isinstance(c, Scalar) and not c.is_rational():
                if spec.is_rational:
                    spec = c.spec
                elif c.spec != spec:
                    raise MixedFields(f"witness coefficients in {c.spec}, x in {spec}")
        if spec != self.x.spec:
            self.x = ConeElement(self.x.algebra, self.x.coeffs, spec)
        clean = {}
        for j, c in self.a.items():
            j = int(j)
            if not self.l <= j < self.n:
                raise MalformedWitness(f"coefficient a_{j} outside exponents {self.l}..{self.n - 1}")
            clean[j] = spec.coerce(c)
        self.a = clean
        for j, c in self.a.items():
            if c.sign() < 0:
                raise MalformedWitness(f"a_{j} = {c} is negative")
        if not self.a.get(self.l):
            raise MalformedWitness(f"a_l = a_{self.l} must be nonzero")

    @property
    def spec(self) -> FieldSpec:
        return self.x.spec

    def coeff(self, j: int) -> Scalar:
        return self.a.get(j, self.spec.zero)

    def polynomial(self) -> dict[int, Scalar]:
        """Coefficients of T^n + sum_{j>k} a_j T^j - sum_{l<=j<=k} a_j T^j."""
        poly = {self.n: self.spec.one}
        for j, c in self.a.items():
            poly[j] = c if j > self.k else -c
        return poly

    def scaled(self, lam) -> "GoodnessWitness":
        """Same identity for lam*x: a_j becomes lam^(n-j) a_j."""
        lam = self.spec.coerce(lam)
        return GoodnessWitness(self.x.scale(lam), self.n, self.k, self.l,
                               {j: c * lam ** (self.n - j) for j, c in self.a.items()})

    def relation_text(self) -> str:
        lhs = ["x^%d" % self.n] + [f"({self.a[j]})x^{j}" for j in sorted(self.a, reverse=True) if j > self.k]
        rhs = [f"({self.a[j]})x^{j}" for j in sorted(self.a, reverse=True) if j <= self.k]
        return " + ".join(lhs) + " = " + " + ".join(rhs)


@dataclass
class GoodnessResult:
    ok: bool
    residual: dict[str, Scalar] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_goodness(w: GoodnessWitness) -> GoodnessResult:
    x = w.x
    bad = [F for F in x.algebra.basis if x[F].sign() <= 0]
    if bad:
        raise NotInCone(f"coefficients of {bad} are not strictly positive")
    powers = {1: x}
    for j in range(2, w.n + 1):
        powers[j] = cone_mul(powers[j - 1], x)
    zero = ConeElement(x.algebra, {}, x.spec)
    lhs = powers[w.n]
    rhs = zero
    for j, c in w.a.items():
        term = powers[j].scale(c)
        if j > w.k:
            lhs = lhs + term
        else:
            rhs = rhs + term
    diff = lhs - rhs
    if diff.is_zero():
        return GoodnessResult(True)
    return GoodnessResult(False, dict(diff.coeffs))


# JSON form: {"field", "cell", "coeffs", "n", "k", "l", "a"}

def witness_to_dict(w: GoodnessWitness) -> dict:
    return {
        "field": w.spec.text(),
        "cell": list(w.x.algebra.basis),
        "coeffs": {F: format_scalar(w.x[F]) for F in w.x.algebra.basis},
        "n": w.n,
        "k": w.k,
        "l": w.l,
        "a": {str(j): format_scalar(c) for j, c in sorted(w.a.items())},
    }


def witness_from_dict(alg: CellAlgebra, d: Mapping) -> GoodnessWitness:
    spec = parse_field(d.get("field", "Q"))
    coeffs = {F: parse_scalar(str(c), spec) for F, c in d["coeffs"].items()}
    a = {int(j): parse_scalar(str(c), spec) for j, c in d.get("a", {}).items()}
    return GoodnessWitness(ConeElement(alg, coeffs, spec), int(d["n"]), int(d["k"]), int(d["l"]), a)


# search --------------------------------------------------------------------

def element_relation(x: ConeElement) -> dict[int, Scalar]:
    """Monic T^n + sum_{j<n} d_j T^j of least degree with zero constant term killing x.

    Krylov iteration on x, x^2, ...; exact over the field of x.
    """
    alg = x.algebra
    ech = Echelon()
    powers = []
    p = x
    for n in range(1, alg.dim + 2):
        vec = p.vector()
        sparse = {i: v for i, v in enumerate(vec) if v}
        if not ech.add(sparse):
            coeffs = coordinates([q for q in powers], vec)
            assert coeffs is not None
            poly = {n: x.spec.one}
            for j, c in enumerate(coeffs, start=1):
                if c:
                    poly[j] = -c
            return poly
        powers.append(vec)
        p = cone_mul(p, x)
    raise AssertionError("Krylov sequence longer than the dimension")


def witness_from_relation(x: ConeElement, poly: Mapping[int, Scalar]) -> GoodnessWitness | None:
    """Read off (n, k, l, a) if the monic relation has the goodness sign pattern."""
    n = max(poly)
    lower = {j: c for j, c in poly.items() if j < n and c}
    if not lower:
        return None
    neg = [j for j, c in lower.items() if c.sign() < 0]
    if not neg:
        return None
    k = max(neg)
    l = min(lower)
    if lower[l].sign() >= 0:
        return None
    if any(c.sign() > 0 for j, c in lower.items() if j <= k):
        return None
    a = {j: (c if j > k else -c) for j, c in lower.items()}
    return GoodnessWitness(x, n, k, l, a)


def _try(x: ConeElement) -> GoodnessWitness | None:
    if not x.in_cone():
        return None
    w = witness_from_relation(x, element_relation(x))
    if w is None:
        return None
    result = verify_goodness(w)
    assert result.ok, "relation read off the Krylov sequence failed exact verification"
    return w


def perron_weights(alg: CellAlgebra, iterations: int = 5000, tol: float = 1e-14):
    """Float Perron vector of left+right multiplication by the all-ones element.

    Right multiplication alone is reducible across left cells, so its
    dominant eigenvector can vanish on whole left cells; the sum is
    irreducible on any two-sided cell.
    """
    import numpy as np

    d = alg.dim
    M = np.zeros((d, d))
    for (F, G), prod in alg.mult.items():
        for H, m in prod.items():
            # ones * G picks up F o G ; F * ones picks up F o G
            M[alg.index(H), alg.index(G)] += m
            M[alg.index(H), alg.index(F)] += m
    M += np.eye(d)  # shift keeps power iteration away from periodic cycling
    v = np.ones(d) / math.sqrt(d)
    for _ in range(iterations):
        nv = M @ v
        norm = np.linalg.norm(nv)
        if norm == 0:
            return None
        nv /= norm
        if np.max(np.abs(nv - v)) < tol:
            v = nv
            break
        v = nv
    if np.any(v <= 0):
        return None
    return v / v.min()


def reconstruct(r: float, d: int | None, max_den: int = 64, bound: int = 16, tol: float = 1e-9):
    """Exact candidate for a float: p/q (q <= max_den) or a + b*sqrt(d) with small a, b."""
    if d is None:
        f = Fraction(r).limit_denominator(max_den)
        return f if abs(float(f) - r) < tol else None
    root = math.sqrt(d)
    for den in (1, 2, 3, 4):
        for num in range(-bound * den, bound * den + 1):
            b = Fraction(num, den)
            if b == 0:
                continue
            a = Fraction(r - float(b) * root).limit_denominator(4)
            if abs(a) <= bound and abs(float(a) + float(b) * root - r) < tol:
                return a, b
    return None


def perron_candidates(alg: CellAlgebra) -> list[ConeElement]:
    v = perron_weights(alg)
    if v is None:
        return []
    out = []
    rat = [reconstruct(float(r), None) for r in v]
    if all(c is not None for c in rat):
        out.append(ConeElement(alg, dict(zip(alg.basis, rat))))
        return out
    for d in (2, 3, 5):
        spec = sqrt_field(d)
        coeffs = {}
        for F, r in zip(alg.basis, v):
            q = reconstruct(float(r), None)
            if q is not None:
                coeffs[F] = spec(q)
                continue
            ab = reconstruct(float(r), d)
            if ab is None:
                break
            coeffs[F] = spec(*ab)
        else:
            out.append(ConeElement(alg, coeffs, spec))
    return out


def grid_candidates(alg: CellAlgebra, values: Sequence = (1, 2, Fraction(1, 2))):
    """Rational weightings constant on star orbits, drawn from ``values``."""
    orbits = alg.star_orbits()
    for choice in itertools.product(values, repeat=len(orbits)):
        coeffs = {F: c for orbit, c in zip(orbits, choice) for F in orbit}
        yield ConeElement(alg, coeffs)


def search_goodness(
    alg: CellAlgebra,
    strategies: Sequence[str] = ("ones", "perron", "grid"),
    grid_values: Sequence = (1, 2, Fraction(1, 2)),
) -> GoodnessWitness | None:
    """Best-effort search; a returned witness has passed :func:`verify_goodness`.

    ``ones`` tries the all-ones element, ``perron`` exact reconstructions
    of the float Perron vector, ``grid`` small rational weights constant
    on star orbits.
    """
    if alg.dim == 0:
        return None
    for strategy in strategies:
        if strategy == "ones":
            cands: Iterable[ConeElement] = [alg.ones()]
        elif strategy == "perron":
            cands = perron_candidates(alg)
        elif strategy == "grid":
            cands = grid_candidates(alg, grid_values)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for x in cands:
            w = _try(x)
            if w is not None:
                return w
    return None
