"""Set-theoretic Yang-Baxter solutions: finite tables, verbal words, 2x2 matrices.

Braid relation: S1 S2 S1 = S2 S1 S2 on X^3 with S1 = S x id, S2 = id x S
(composition right to left, so S1 S2 S1 applies S1 first).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .braces import SkewBrace, lambda_of
from .errors import Violation
from .groups import FiniteGroup
from .nilfree import NilWord, VerbalWord, comm_pairs, eval_in_group, eval_verbal
from .operators import default_workers


@dataclass(frozen=True, eq=False)
class FiniteSolution:
    """S(x, y) = (f[x][y], g[x][y]) on {0, ..., n-1}; need not be bijective."""

    n: int
    f: tuple[tuple[int, ...], ...]
    g: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(tuple(int(v) for v in r) for r in self.f))
        object.__setattr__(self, "g", tuple(tuple(int(v) for v in r) for r in self.g))
        for tab in (self.f, self.g):
            if len(tab) != self.n or any(len(r) != self.n for r in tab):
                raise ValueError("component tables must be n x n")
            if any(not 0 <= v < self.n for r in tab for v in r):
                raise ValueError("table entry outside the carrier")

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return self.f[x][y], self.g[x][y]

    def __eq__(self, other):
        if not isinstance(other, FiniteSolution):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], tuple[int, int]]) -> FiniteSolution:
        pairs = [[fn(x, y) for y in range(n)] for x in range(n)]
        return cls(n, tuple(tuple(p[0] for p in r) for r in pairs), tuple(tuple(p[1] for p in r) for r in pairs))

    def to_json(self) -> dict:
        return {"n": self.n, "f": [list(r) for r in self.f], "g": [list(r) for r in self.g]}


def check_braid_finite(S: FiniteSolution) -> Violation | None:
    """First triple (lexicographic) where S1 S2 S1 and S2 S1 S2 differ, or None."""
    n = S.n
    f = np.asarray(S.f, dtype=np.int64)
    g = np.asarray(S.g, dtype=np.int64)
    X, Y, Z = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    # S1 S2 S1
    a1, b1 = f[X, Y], g[X, Y]
    b2, c2 = f[b1, Z], g[b1, Z]
    l1, l2, l3 = f[a1, b2], g[a1, b2], c2
    # S2 S1 S2
    p1, q1 = f[Y, Z], g[Y, Z]
    r1, s1 = f[X, p1], g[X, p1]
    r2, r3 = f[s1, q1], g[s1, q1]
    bad = np.nonzero((l1 != r1) | (l2 != r2) | (l3 != r3))[0]
    if bad.size == 0:
        return None
    i = int(bad[0])
    return Violation((int(X[i]), int(Y[i]), int(Z[i])),
                     (int(l1[i]), int(l2[i]), int(l3[i])), (int(r1[i]), int(r2[i]), int(r3[i])))


def solution_from_brace(brace: SkewBrace) -> FiniteSolution:
    """S(a, b) = (lambda_a(b), inv_o(lambda_a(b)) o a o b)."""
    lam = lambda_of(brace).perms
    o = brace.circ
    t, inv = o.table, o.inverse

    def fn(a, b):
        u = lam[a][b]
        return u, t[t[inv[u]][a]][b]

    return FiniteSolution.from_function(brace.n, fn)


def sigma_conjugate(S: FiniteSolution) -> FiniteSolution:
    """sigma S sigma with sigma(x, y) = (y, x): (x, y) -> (g(y, x), f(y, x))."""
    n = S.n
    return FiniteSolution(n, tuple(tuple(S.g[y][x] for y in range(n)) for x in range(n)),
                          tuple(tuple(S.f[y][x] for y in range(n)) for x in range(n)))


# verbal solutions


@dataclass(frozen=True)
class VerbalSolution:
    """S(x, y) = (x^a y^b [y,x]^m, x^c y^d [y,x]^n)."""

    w1: VerbalWord
    w2: VerbalWord

    @classmethod
    def from_tuple(cls, t: Sequence[int]) -> VerbalSolution:
        a, b, m, c, d, n = (int(v) for v in t)
        return cls(VerbalWord(a, b, m), VerbalWord(c, d, n))

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (*self.w1, *self.w2)

    def __call__(self, u: NilWord, v: NilWord) -> tuple[NilWord, NilWord]:
        return eval_verbal(self.w1, u, v), eval_verbal(self.w2, u, v)

    def __str__(self) -> str:
        return f"S(x,y)=({self.w1},{self.w2})"


def bar_verbal(S: VerbalSolution) -> VerbalSolution:
    """sigma S sigma rewritten in normal form: (x^d y^c [y,x]^(dc-n), x^b y^a [y,x]^(ab-m))."""
    a, b, m, c, d, n = S.as_tuple()
    return VerbalSolution.from_tuple((d, c, d * c - n, b, a, a * b - m))


@dataclass(frozen=True)
class BraidResidue:
    """Per output coordinate: differences of (x, y, z) exponents then ([y,x], [z,x], [z,y]) exponents."""

    coords: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def to_json(self) -> list:
        return [list(c) for c in self.coords]


def braid_sides(S: VerbalSolution) -> tuple[tuple[NilWord, ...], tuple[NilWord, ...]]:
    x, y, z = (NilWord.generator(3, i) for i in range(3))
    a, b = S(x, y)
    b, c = S(b, z)
    a, b = S(a, b)
    left = (a, b, c)
    b, c = S(y, z)
    a, b = S(x, b)
    b, c = S(b, c)
    return left, (a, b, c)


def check_verbal(S: VerbalSolution) -> BraidResidue | None:
    """Braid check on the free generators of the rank-3 free class-2 group."""
    left, right = braid_sides(S)
    if left == right:
        return None
    coords = tuple(
        tuple(p - q for p, q in zip(l.gen_exp + l.comm_exp, r.gen_exp + r.comm_exp))
        for l, r in zip(left, right)
    )
    return BraidResidue(coords)


@dataclass(frozen=True)
class SolFamily:
    """A parametrised family of verbal solutions.

    `build(u, v)` gives the exponent tuple (a, b, m, c, d, n) or None when the
    parameters are inadmissible; `guess(t)` proposes parameters from a tuple,
    and a tuple belongs to the family iff some proposal rebuilds it exactly.
    """

    tag: str
    nparams: int
    build: Callable[[int, int], tuple | None]
    guess: Callable[[tuple], tuple[int, int]]

    def instantiate(self, u: int = 0, v: int = 0) -> VerbalSolution | None:
        t = self.build(u, v)
        return None if t is None else VerbalSolution.from_tuple(t)

    def match(self, t: Sequence[int]) -> tuple[int, ...] | None:
        t = tuple(t)
        u, v = self.guess(t)
        if self.nparams < 2:
            v = 0
        if self.nparams < 1:
            u = 0
        if self.build(u, v) == t:
            return (u, v)[: self.nparams]
        return None

    def sweep(self, U: int) -> list[tuple[tuple[int, ...], VerbalSolution]]:
        rng = range(-U, U + 1)
        params = {0: [()], 1: [(u,) for u in rng], 2: list(itertools.product(rng, rng))}[self.nparams]
        out = []
        for p in params:
            S = self.instantiate(*p)
            if S is not None:
                out.append((p, S))
        return out


def _even_half(k: int) -> int | None:
    return k // 2 if k % 2 == 0 else None


def _fam(tag, nparams, build, guess):
    return SolFamily(tag, nparams, build, guess)


LISTED_FAMILIES: tuple[SolFamily, ...] = (
    _fam("(x,y)", 0, lambda u, v: (1, 0, 0, 0, 1, 0), lambda t: (0, 0)),
    _fam("([y,x]^u,[y,x]^v)", 2, lambda u, v: (0, 0, u, 0, 0, v), lambda t: (t[2], t[5])),
    _fam("(y[y,x]^u,x[y,x]^v)", 2, lambda u, v: (0, 1, u, 1, 0, v), lambda t: (t[2], t[5])),
    _fam("(y^u,x^v)", 2, lambda u, v: (0, u, 0, v, 0, 0), lambda t: (t[1], t[3])),
    _fam("([y,x]^u,x)", 1, lambda u, v: (0, 0, u, 1, 0, 0), lambda t: (t[2], 0)),
    _fam("(y,[y,x]^u)", 1, lambda u, v: (0, 1, 0, 0, 0, u), lambda t: (t[5], 0)),
    _fam("(x[y,x]^u,1)", 1, lambda u, v: (1, 0, u, 0, 0, 0), lambda t: (t[2], 0)),
    _fam("(1,y[y,x]^u)", 1, lambda u, v: (0, 0, 0, 0, 1, u), lambda t: (t[5], 0)),
    _fam("(x[y,x]^u,x)", 1, lambda u, v: (1, 0, u, 1, 0, 0), lambda t: (t[2], 0)),
    _fam("(y,y[y,x]^u)", 1, lambda u, v: (0, 1, 0, 0, 1, u), lambda t: (t[5], 0)),
    _fam("(xy[y,x]^u,1)", 1, lambda u, v: (1, 1, u, 0, 0, 0), lambda t: (t[2], 0)),
    _fam("(1,xy[y,x]^u)", 1, lambda u, v: (0, 0, 0, 1, 1, u), lambda t: (t[5], 0)),
    _fam("(x,x^u)", 1, lambda u, v: (1, 0, 0, u, 0, 0), lambda t: (t[3], 0)),
    _fam("(y^u,y)", 1, lambda u, v: (0, u, 0, 0, 1, 0), lambda t: (t[1], 0)),
    _fam("(xy^{2u}[y,x]^u,1)", 1, lambda u, v: (1, 2 * u, u, 0, 0, 0), lambda t: (t[2], 0)),
    _fam("(1,x^{2u}y[y,x]^u)", 1, lambda u, v: (0, 0, 0, 2 * u, 1, u), lambda t: (t[5], 0)),
)


def _fam_b(u, v):
    half = _even_half(u * (1 - u * v))
    return None if half is None else (1 - u * v, u, half, v, 0, 0)


def _fam_b_bar(u, v):
    half = _even_half(u * (1 - u * v))
    return None if half is None else (0, v, 0, u, 1 - u * v, half)


# Two-parameter families missing from the listed forms, with their mirror images.
SUPPLEMENTARY_FAMILIES: tuple[SolFamily, ...] = (
    _fam("(x^{1-u}y[y,x]^v,x^u[y,x]^{uv+u(u-1)/2})", 2,
         lambda u, v: (1 - u, 1, v, u, 0, u * v + u * (u - 1) // 2), lambda t: (t[3], t[2])),
    _fam("(y^u[y,x]^{uv+u(u-1)/2},xy^{1-u}[y,x]^v)", 2,
         lambda u, v: (0, u, u * v + u * (u - 1) // 2, 1, 1 - u, v), lambda t: (t[1], t[5])),
    _fam("(x^{1-uv}y^u[y,x]^{u(1-uv)/2},x^v)", 2, _fam_b, lambda t: (t[1], t[3])),
    _fam("(y^v,x^uy^{1-uv}[y,x]^{u(1-uv)/2})", 2, _fam_b_bar, lambda t: (t[3], t[1])),
)

ALL_FAMILIES = LISTED_FAMILIES + SUPPLEMENTARY_FAMILIES


def family_matches(t: Sequence[int], families: Sequence[SolFamily] = LISTED_FAMILIES) -> list[tuple[str, tuple]]:
    out = []
    for fam in families:
        p = fam.match(t)
        if p is not None:
            out.append((fam.tag, p))
    return out


@dataclass
class VerbalReport:
    K: int
    U: int
    family_tags: list[str]
    passing: list[tuple[int, ...]]
    matches: dict[tuple[int, ...], list[tuple[str, tuple]]]
    unmatched_passing: list[tuple[int, ...]]
    failing_family_instances: list[dict]
    tuples_checked: int

    @property
    def clean(self) -> bool:
        return not self.unmatched_passing and not self.failing_family_instances

    def to_json(self) -> dict:
        by_tag: dict[str, list] = {tag: [] for tag in self.family_tags}
        for t in self.passing:
            for tag, params in self.matches[t]:
                by_tag[tag].append({"tuple": list(t), "params": list(params)})
        return {
            "box": {"K": self.K, "U": self.U, "tuples_checked": self.tuples_checked, "passing": len(self.passing)},
            "families": [{"tag": tag, "params": f"|u|,|v| <= {self.U}", "matched_tuples": by_tag[tag]}
                         for tag in self.family_tags],
            "unmatched_passing": [list(t) for t in self.unmatched_passing],
            "failing_family_instances": self.failing_family_instances,
        }


def _passing_slice(args) -> list[tuple[int, ...]]:
    K, a = args
    rng = range(-K, K + 1)
    return [(a, *rest) for rest in itertools.product(rng, repeat=5)
            if check_verbal(VerbalSolution.from_tuple((a, *rest))) is None]


def classify_verbal(K: int = 2, U: int = 3, families: Sequence[SolFamily] = LISTED_FAMILIES,
                    workers: int | None = None) -> VerbalReport:
    """Braid-check every exponent tuple with entries in [-K, K] and match against the families.

    Soundness: every family instance with |u|, |v| <= U passes check_verbal.
    Completeness: every passing tuple in the box matches some family.
    """
    workers = default_workers() if workers is None else workers
    jobs = [(K, a) for a in range(-K, K + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_passing_slice, jobs))
    else:
        parts = [_passing_slice(j) for j in jobs]
    passing = sorted(t for part in parts for t in part)
    matches = {t: family_matches(t, families) for t in passing}
    unmatched = [t for t in passing if not matches[t]]
    failing = []
    for fam in families:
        for params, S in fam.sweep(U):
            res = check_verbal(S)
            if res is not None:
                failing.append({"tag": fam.tag, "params": list(params), "tuple": list(S.as_tuple()),
                                "residue": res.to_json()})
    return VerbalReport(K, U, [f.tag for f in families], passing, matches, unmatched, failing,
                        (2 * K + 1) ** 6)


# abelianization and matrices


@dataclass(frozen=True)
class Matrix2:
    a: int
    b: int
    c: int
    d: int

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def reduce(self, modulus: int | None) -> Matrix2:
        if modulus is None:
            return self
        return Matrix2(*(v % modulus for v in self))


def abelianization_of(S: VerbalSolution) -> Matrix2:
    return Matrix2(S.w1.a, S.w1.b, S.w2.a, S.w2.b)


def matrix_residue(M: Matrix2, modulus: int | None = None) -> tuple[tuple[int, ...], ...]:
    """The 3x3 matrix M1 M2 M1 - M2 M1 M2, in closed form."""
    a, b, c, d = M
    res = ((a * (a + b * c - 1), a * b * d, 0),
           (a * c * d, a * d * (d - a), -a * b * d),
           (0, -a * c * d, -d * (d + b * c - 1)))
    if modulus is not None:
        res = tuple(tuple(v % modulus for v in row) for row in res)
    return res


def braid_matrix_difference(M: Matrix2, modulus: int | None = None) -> tuple[tuple[int, ...], ...]:
    """M1 M2 M1 - M2 M1 M2 by explicit 3x3 products, with M1 = M (+) 1 and M2 = 1 (+) M."""
    a, b, c, d = M
    M1 = np.array([[a, b, 0], [c, d, 0], [0, 0, 1]], dtype=object)
    M2 = np.array([[1, 0, 0], [0, a, b], [0, c, d]], dtype=object)
    diff = M1.dot(M2).dot(M1) - M2.dot(M1).dot(M2)
    if modulus is not None:
        diff = diff % modulus
    return tuple(tuple(int(v) for v in row) for row in diff)


def matrix_ybe_check(M: Matrix2, modulus: int | None = None) -> tuple[tuple[int, ...], ...] | None:
    """None if left multiplication by M solves the braid relation over Z (or Z_modulus)."""
    res = matrix_residue(M, modulus)
    return None if all(v == 0 for row in res for v in row) else res


def matrix_forms(M: Matrix2, modulus: int | None = None) -> list[str]:
    """Which of the four closed forms M belongs to."""
    a, b, c, d = M.reduce(modulus)

    def eq(x, y):
        return (x - y) % modulus == 0 if modulus else x == y

    out = []
    if eq(d, 0) and eq(a, 1 - b * c):
        out.append("(1-bc, b; c, 0)")
    if eq(a, 0) and eq(d, 1 - b * c):
        out.append("(0, b; c, 1-bc)")
    if eq(a, 0) and eq(d, 0):
        out.append("(0, b; c, 0)")
    if eq(a, 1) and eq(b, 0) and eq(c, 0) and eq(d, 1):
        out.append("(1, 0; 0, 1)")
    return out


@dataclass
class MatrixReport:
    ring: str
    total: int
    passing: list[Matrix2]
    family_members: list[Matrix2]
    counts: dict[str, int]
    assert_equality: bool

    @property
    def equal(self) -> bool:
        return set(self.passing) == set(self.family_members)

    @property
    def clean(self) -> bool:
        return self.equal if self.assert_equality else True

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "total": self.total,
            "passing": len(self.passing),
            "family_union": len(self.family_members),
            "per_form": self.counts,
            "equality_asserted": self.assert_equality,
            "equal": self.equal,
            "passing_not_in_forms": [list(m) for m in sorted(set(self.passing) - set(self.family_members),
                                                            key=tuple)],
            "forms_not_passing": [list(m) for m in sorted(set(self.family_members) - set(self.passing),
                                                         key=tuple)],
        }


def classify_matrices(q: int | None = None, box: int | None = None) -> MatrixReport:
    """Exhaustive 2x2 sweep over Z_q, or over integers in [-box, box]."""
    if (q is None) == (box is None):
        raise ValueError("give exactly one of q or box")
    from .groups import _is_prime

    rng = range(q) if q is not None else range(-box, box + 1)
    passing, members = [], []
    counts = {"(1-bc, b; c, 0)": 0, "(0, b; c, 1-bc)": 0, "(0, b; c, 0)": 0, "(1, 0; 0, 1)": 0}
    total = 0
    for a, b, c, d in itertools.product(rng, repeat=4):
        total += 1
        M = Matrix2(a, b, c, d)
        if matrix_ybe_check(M, q) is None:
            passing.append(M)
        forms = matrix_forms(M, q)
        if forms:
            members.append(M)
            for f in forms:
                counts[f] += 1
    ring = f"Z{q}" if q is not None else f"Z[-{box},{box}]"
    return MatrixReport(ring, total, passing, members, counts,
                        assert_equality=(q is None or _is_prime(q)))


def verbal_to_finite(S: VerbalSolution, G: FiniteGroup) -> FiniteSolution:
    """Tabulate a verbal solution on a group of nilpotency class <= 2."""
    if not G.is_two_step_nilpotent:
        raise ValueError(f"{G.name or 'group'} is not nilpotent of class <= 2")
    x, y = NilWord.generator(2, 0), NilWord.generator(2, 1)
    w1, w2 = S(x, y)
    return FiniteSolution.from_function(G.order, lambda a, b: (eval_in_group(w1, G, (a, b)),
                                                               eval_in_group(w2, G, (a, b))))


__all__ = [
    "FiniteSolution", "check_braid_finite", "solution_from_brace", "sigma_conjugate", "VerbalSolution",
    "bar_verbal", "check_verbal", "BraidResidue", "SolFamily", "LISTED_FAMILIES", "SUPPLEMENTARY_FAMILIES",
    "ALL_FAMILIES", "classify_verbal", "VerbalReport", "Matrix2", "abelianization_of", "matrix_residue",
    "braid_matrix_difference", "matrix_ybe_check", "matrix_forms", "classify_matrices", "MatrixReport",
    "verbal_to_finite", "comm_pairs",
]
