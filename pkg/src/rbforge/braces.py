"""Skew left braces and post-groups on a shared index set."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntertwiningError, InvalidBraceError, InvalidOperatorError, InvalidPostGroupError, Violation
from .groups import CarrierMap, FiniteGroup, identify
from .operators import RBOperator, RRBOperator


def check_brace(dot: FiniteGroup, circ: FiniteGroup) -> Violation | None:
    """First (a, b, c) with a o (b c) != (a o b) a^-1 (a o c), or None."""
    if dot.order != circ.order:
        raise ValueError("brace operations must share a carrier")
    d, o, inv, n = dot.table, circ.table, dot.inverse, dot.order
    for a in range(n):
        oa = o[a]
        ai = inv[a]
        for b in range(n):
            left = d[d[oa[b]][ai]]
            db = d[b]
            for c in range(n):
                lhs = oa[db[c]]
                rhs = left[oa[c]]
                if lhs != rhs:
                    return Violation((a, b, c), lhs, rhs)
    return None


def check_two_sided(dot: FiniteGroup, circ: FiniteGroup) -> Violation | None:
    """First (a, b, c) with (b c) o a != (b o a) a^-1 (c o a), or None."""
    if dot.order != circ.order:
        raise ValueError("brace operations must share a carrier")
    d, o, inv, n = dot.table, circ.table, dot.inverse, dot.order
    for a in range(n):
        ai = inv[a]
        for b in range(n):
            left = d[d[o[b][a]][ai]]
            for c in range(n):
                lhs = o[d[b][c]][a]
                rhs = left[o[c][a]]
                if lhs != rhs:
                    return Violation((a, b, c), lhs, rhs)
    return None


@dataclass(frozen=True, eq=False)
class SkewBrace:
    dot: FiniteGroup
    circ: FiniteGroup

    def __post_init__(self):
        if self.dot.identity != self.circ.identity:
            raise InvalidBraceError("the two operations have different identities")
        v = check_brace(self.dot, self.circ)
        if v is not None:
            raise InvalidBraceError(f"brace axiom fails: {v}")

    @property
    def n(self) -> int:
        return self.dot.order

    def __eq__(self, other):
        if not isinstance(other, SkewBrace):
            return NotImplemented
        return self.dot == other.dot and self.circ == other.circ

    def __hash__(self):
        return hash((self.dot.table, self.circ.table))

    def is_trivial(self) -> bool:
        return self.dot.table == self.circ.table

    def circ_type(self) -> str | None:
        return identify(self.circ)

    def to_json(self) -> dict:
        return {"n": self.n, "dot_table": [list(r) for r in self.dot.table],
                "circ_table": [list(r) for r in self.circ.table]}

    @classmethod
    def from_json(cls, data: dict) -> SkewBrace:
        return cls(FiniteGroup(data["dot_table"]), FiniteGroup(data["circ_table"]))


def _circ_group(dot: FiniteGroup, table) -> FiniteGroup:
    try:
        return FiniteGroup(table, dot.labels, name=None, validate=True)
    except ValueError as exc:
        raise InvalidBraceError(f"second operation is not a group: {exc}") from None


def trivial_brace(G: FiniteGroup) -> SkewBrace:
    return SkewBrace(G, G)


def brace_from_rb(B: RBOperator) -> SkewBrace:
    """a o b = a B(a) b B(a)^-1."""
    if not isinstance(B, RBOperator) or B.weight != 1:
        raise InvalidOperatorError("need a validated weight-1 RB operator")
    G = B.group
    t = G.table
    table = [[t[t[t[a][B(a)]][b]][G.inv(B(a))] for b in G] for a in G]
    return SkewBrace(G, _circ_group(G, table))


def brace_from_rrb(Q: RRBOperator) -> SkewBrace:
    """h o k = h Psi_B(h)(k)."""
    if not isinstance(Q, RRBOperator) or Q.weight != 1:
        raise InvalidOperatorError("need a validated weight-1 RRB operator")
    H, psi = Q.space, Q.action.auts
    table = [[H.mul(h, psi[Q(h)][k]) for k in H] for h in H]
    return SkewBrace(H, _circ_group(H, table))


@dataclass(frozen=True)
class LambdaMap:
    """lambda_a(b) = a^-1 (a o b), one permutation per element a."""

    perms: tuple[tuple[int, ...], ...]

    def __call__(self, a: int, b: int) -> int:
        return self.perms[a][b]


def lambda_of(brace: SkewBrace) -> LambdaMap:
    d, o = brace.dot, brace.circ.table
    return LambdaMap(tuple(tuple(d.mul(d.inv(a), o[a][b]) for b in d) for a in d))


def is_lambda_homomorphic(brace: SkewBrace) -> bool:
    """lambda_{a b} = lambda_a lambda_b for all a, b (product taken in the dot group)."""
    lam = lambda_of(brace).perms
    d = brace.dot
    for a in d:
        la = lam[a]
        for b in d:
            lb, lab = lam[b], lam[d.mul(a, b)]
            if any(lab[c] != la[lb[c]] for c in d):
                return False
    return True


# post-groups


def check_postgroup(dot: FiniteGroup, tri) -> Violation | None:
    """Checks each a |> - is an automorphism and a |> (b |> c) = (a (a |> b)) |> c.

    A failing automorphism condition is reported on the triple (a, b, c) with
    lhs = a |> (b c); a non-bijective translation is reported as (a, b, b')
    with lhs = rhs = the shared image.
    """
    n, d = dot.order, dot.table
    for a in range(n):
        row = tri[a]
        seen: dict[int, int] = {}
        for b in range(n):
            if row[b] in seen:
                return Violation((a, seen[row[b]], b), row[b], row[b])
            seen[row[b]] = b
        for b in range(n):
            for c in range(n):
                lhs, rhs = row[d[b][c]], d[row[b]][row[c]]
                if lhs != rhs:
                    return Violation((a, b, c), lhs, rhs)
    for a in range(n):
        for b in range(n):
            rowb = tri[b]
            left = tri[d[a][tri[a][b]]]
            ta = tri[a]
            for c in range(n):
                lhs, rhs = ta[rowb[c]], left[c]
                if lhs != rhs:
                    return Violation((a, b, c), lhs, rhs)
    return None


@dataclass(frozen=True, eq=False)
class PostGroup:
    dot: FiniteGroup
    tri: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tri", tuple(tuple(int(x) for x in r) for r in self.tri))
        v = check_postgroup(self.dot, self.tri)
        if v is not None:
            raise InvalidPostGroupError(f"post-group axioms fail: {v}")

    @property
    def n(self) -> int:
        return self.dot.order

    def __eq__(self, other):
        if not isinstance(other, PostGroup):
            return NotImplemented
        return self.dot == other.dot and self.tri == other.tri

    def __hash__(self):
        return hash((self.dot.table, self.tri))

    def to_json(self) -> dict:
        return {"n": self.n, "dot_table": [list(r) for r in self.dot.table], "tri_table": [list(r) for r in self.tri]}

    @classmethod
    def from_json(cls, data: dict) -> PostGroup:
        return cls(FiniteGroup(data["dot_table"]), data["tri_table"])


def brace_to_postgroup(brace: SkewBrace) -> PostGroup:
    return PostGroup(brace.dot, lambda_of(brace).perms)


def postgroup_to_brace(pg: PostGroup) -> SkewBrace:
    d = pg.dot
    table = [[d.mul(a, pg.tri[a][b]) for b in d] for a in d]
    return SkewBrace(d, _circ_group(d, table))


def rrb_to_postgroup(Q: RRBOperator) -> PostGroup:
    """h |> k = Psi_B(h)(k)."""
    if Q.weight != 1:
        raise InvalidOperatorError("need a weight-1 RRB operator")
    psi = Q.action.auts
    return PostGroup(Q.space, tuple(psi[Q(h)] for h in Q.space))


def conjugation_postgroup(G: FiniteGroup) -> PostGroup:
    """a |> b = a^-1 b a."""
    return PostGroup(G, tuple(tuple(G.conj(G.inv(a), b) for b in G) for a in G))


def trivial_postgroup(G: FiniteGroup) -> PostGroup:
    """a |> b = b."""
    return PostGroup(G, tuple(tuple(G) for _ in G))


def is_homomorphic_postgroup(pg: PostGroup) -> bool:
    """Right distributivity (a b) |> c = (a |> c)(b |> c) for all a, b, c.

    Since e |> c = c in every post-group, taking a = b = e forces c = c c, so
    this holds only on the one-element group.
    """
    d, tri = pg.dot, pg.tri
    for a in d:
        for b in d:
            tab = tri[d.mul(a, b)]
            ta, tb = tri[a], tri[b]
            if any(tab[c] != d.mul(ta[c], tb[c]) for c in d):
                return False
    return True


def associator(pg: PostGroup, a: int, b: int, c: int) -> int:
    """[a, b, c] = (a |> (b |> c)) ((a |> b) |> c)^-1."""
    d, tri = pg.dot, pg.tri
    return d.mul(tri[a][tri[b][c]], d.inv(tri[tri[a][b]][c]))


def associator_identity_check(pg: PostGroup, unconditional: bool = False) -> Violation | None:
    """First (a, b, c) with [a, b, c] != a |> c, or None.

    The identity is only claimed for homomorphic post-groups, so by default a
    non-homomorphic input is not checked and gives None. Pass
    unconditional=True to sweep every triple regardless.
    """
    if not unconditional and not is_homomorphic_postgroup(pg):
        return None
    for a in pg.dot:
        for b in pg.dot:
            for c in pg.dot:
                lhs, rhs = associator(pg, a, b, c), pg.tri[a][c]
                if lhs != rhs:
                    return Violation((a, b, c), lhs, rhs)
    return None


def nilpotent_postgroup(G: FiniteGroup, n: int) -> PostGroup:
    """a |> b = a^-n b a^n on a group of nilpotency class <= 2, n != 0."""
    if n == 0:
        raise ValueError("n must be a nonzero integer")
    if not G.is_two_step_nilpotent:
        raise ValueError(f"{G.name or 'group'} is not nilpotent of class <= 2")
    tri = []
    for a in G:
        an = G.pow(a, n)
        tri.append(tuple(G.conj(G.inv(an), b) for b in G))
    return PostGroup(G, tuple(tri))


def brace_hom_preservation_check(f: CarrierMap, BG: RBOperator, BH: RBOperator) -> Violation | None:
    """Check f(a o b) = f(a) o f(b) for an RB-group homomorphism f: (G, B_G) -> (H, B_H).

    Raises IntertwiningError when f is not a homomorphism or f B_G != B_H f;
    returns the first pair breaking either brace operation otherwise.
    """
    G, H = BG.group, BH.group
    if f.domain != G or f.codomain != H:
        raise ValueError("map does not connect the operators' groups")
    if not f.is_homomorphism():
        raise IntertwiningError("f is not a group homomorphism")
    for g in G:
        if f(BG(g)) != BH(f(g)):
            raise IntertwiningError(f"f B_G != B_H f at {G.labels[g]}")
    bg, bh = brace_from_rb(BG), brace_from_rb(BH)
    for a in G:
        for b in G:
            for braceG, braceH in ((bg.dot, bh.dot), (bg.circ, bh.circ)):
                lhs = f(braceG.mul(a, b))
                rhs = braceH.mul(f(a), f(b))
                if lhs != rhs:
                    return Violation((a, b), lhs, rhs)
    return None
