"""Finite groups as Cayley tables on dense indices 0..n-1.

Commutator convention used everywhere in the package: [x, y] = x^-1 y^-1 x y,
so that yx = xy[y, x] and a^-n b a^n = b[b, a]^n in class-2 groups.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import GroupSpecError, InvalidActionError, SearchBoundExceeded

DEFAULT_SEARCH_BOUND = 64


class FiniteGroup:
    """A finite group given by its multiplication table.

    Instances are treated as immutable: the table is stored as a tuple of
    tuples and derived data is cached on first use.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str | None = None,
        validate: bool = True,
    ):
        n = len(table)
        if n == 0:
            raise ValueError("a group needs at least one element")
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        if any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("table entries out of range")
        self.order = n
        self.labels: tuple[str, ...] = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("need one label per element")
        self.name = name
        self.identity = self._find_identity()
        self.inverse: tuple[int, ...] = self._find_inverses()
        if validate:
            self.verify()

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.order)):
                return e
        raise ValueError("table has no two-sided identity")

    def _find_inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for a in range(self.order):
            row = self.table[a]
            try:
                b = row.index(e)
            except ValueError:
                raise ValueError(f"element {self.labels[a]} has no inverse") from None
            if self.table[b][a] != e:
                raise ValueError(f"element {self.labels[a]} has no two-sided inverse")
            inv.append(b)
        return tuple(inv)

    def verify(self) -> None:
        """Raise ValueError unless the table is associative (O(n^3))."""
        t = self.table
        for a in range(self.order):
            ta = t[a]
            for b in range(self.order):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(self.order):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError(f"not associative at ({a}, {b}, {c})")

    @classmethod
    def from_elements(cls, elements: Sequence, mul, label=str, name: str | None = None) -> FiniteGroup:
        """Tabulate a group from hashable elements and a product function."""
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[mul(x, y)] for y in elements] for x in elements]
        return cls(table, [label(x) for x in elements], name=name, validate=False)

    # arithmetic

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *elems: int) -> int:
        x = self.identity
        for y in elems:
            x = self.table[x][y]
        return x

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inverse[a], -n
        result, base = self.identity, a
        while n:
            if n & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            n >>= 1
        return result

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t, inv = self.table, self.inverse
        return t[t[inv[a]][inv[b]]][t[a][b]]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    # structure

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def order_profile(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for k in self.element_orders:
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(z for z in range(self.order) if all(t[z][a] == t[a][z] for a in range(self.order)))

    @cached_property
    def _center_set(self) -> frozenset[int]:
        return frozenset(self.center())

    def two_step_witness(self) -> tuple[int, int, int] | None:
        """A triple (a, b, c) with [[a, b], c] != e, or None for class <= 2."""
        seen: set[int] = set()
        for a in range(self.order):
            for b in range(self.order):
                k = self.commutator(a, b)
                if k in seen:
                    continue
                seen.add(k)
                for c in range(self.order):
                    if self.table[k][c] != self.table[c][k]:
                        return (a, b, c)
        return None

    @cached_property
    def is_two_step_nilpotent(self) -> bool:
        """True iff every commutator is central (abelian groups included)."""
        return self.two_step_witness() is None

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        gens: list[int] = []
        span = {self.identity}
        by_order = sorted(range(self.order), key=lambda a: (-self.element_orders[a], a))
        for a in by_order:
            if a in span:
                continue
            gens.append(a)
            span = set(self.closure(gens))
            if len(span) == self.order:
                break
        return tuple(gens)

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Subgroup generated by gens, in breadth-first order from the identity."""
        gens = list(gens)
        seen = {self.identity}
        out = [self.identity]
        queue = deque(out)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    queue.append(y)
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        g = cls(data["table"], data.get("labels"), name=data.get("name"))
        if g.order != data.get("order", g.order):
            raise ValueError("order field disagrees with table size")
        return g


@dataclass(frozen=True, eq=False)
class CarrierMap:
    """A total map between the carriers of two groups (not assumed homomorphic)."""

    domain: FiniteGroup
    codomain: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))
        if len(self.image) != self.domain.order:
            raise ValueError("map must be total on its domain")
        if any(not 0 <= x < self.codomain.order for x in self.image):
            raise ValueError("image index out of range")

    def __call__(self, a: int) -> int:
        return self.image[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CarrierMap):
            return NotImplemented
        return self.image == other.image and self.domain == other.domain and self.codomain == other.codomain

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"CarrierMap({self.image})"

    @classmethod
    def identity(cls, G: FiniteGroup) -> CarrierMap:
        return cls(G, G, tuple(range(G.order)))

    @classmethod
    def constant(cls, G: FiniteGroup, H: FiniteGroup, value: int | None = None) -> CarrierMap:
        return cls(G, H, (H.identity if value is None else value,) * G.order)

    def compose(self, inner: CarrierMap) -> CarrierMap:
        """self after inner."""
        if inner.codomain != self.domain:
            raise ValueError("maps are not composable")
        return CarrierMap(inner.domain, self.codomain, tuple(self.image[x] for x in inner.image))

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.image)) == self.domain.order

    def inverse(self) -> CarrierMap:
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.domain.order
        for a, b in enumerate(self.image):
            inv[b] = a
        return CarrierMap(self.codomain, self.domain, tuple(inv))

    def is_homomorphism(self) -> bool:
        G, H, f = self.domain, self.codomain, self.image
        return all(f[G.table[a][b]] == H.table[f[a]][f[b]] for a in range(G.order) for b in range(G.order))


@dataclass(frozen=True, eq=False)
class Action:
    """A homomorphism from `actor` to Aut(`space`), one permutation per actor element."""

    actor: FiniteGroup
    space: FiniteGroup
    auts: tuple[tuple[int, ...], ...]
    validate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "auts", tuple(tuple(int(x) for x in p) for p in self.auts))
        if self.validate:
            problem = self.problem()
            if problem:
                raise InvalidActionError(problem)

    def __call__(self, g: int, h: int) -> int:
        return self.auts[g][h]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Action):
            return NotImplemented
        return self.auts == other.auts and self.actor == other.actor and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.auts)

    def problem(self) -> str | None:
        """Describe the first broken action invariant, or None."""
        G, H = self.actor, self.space
        if len(self.auts) != G.order:
            return "need one automorphism per actor element"
        for g, p in enumerate(self.auts):
            if len(p) != H.order or sorted(p) != list(range(H.order)):
                return f"Psi_{G.labels[g]} is not a permutation of the space"
            for a in range(H.order):
                for b in range(H.order):
                    if p[H.table[a][b]] != H.table[p[a]][p[b]]:
                        return f"Psi_{G.labels[g]} is not multiplicative"
        if self.auts[G.identity] != tuple(range(H.order)):
            return "Psi_e is not the identity"
        for g in range(G.order):
            for g2 in range(G.order):
                lhs = self.auts[G.table[g][g2]]
                pg, pg2 = self.auts[g], self.auts[g2]
                if any(lhs[h] != pg[pg2[h]] for h in range(H.order)):
                    return f"Psi is not a homomorphism at ({G.labels[g]}, {G.labels[g2]})"
        return None

    @classmethod
    def trivial(cls, actor: FiniteGroup, space: FiniteGroup) -> Action:
        return cls(actor, space, (tuple(range(space.order)),) * actor.order)

    def to_json(self) -> dict:
        return {
            "actor": _group_ref(self.actor),
            "space": _group_ref(self.space),
            "auts": [list(p) for p in self.auts],
        }

    @classmethod
    def from_json(cls, data: dict) -> Action:
        return cls(_group_from_ref(data["actor"]), _group_from_ref(data["space"]), data["auts"])


def _group_ref(G: FiniteGroup):
    return G.name if G.name and _looks_like_spec(G.name) else G.to_json()


def _group_from_ref(ref) -> FiniteGroup:
    return build_group(ref) if isinstance(ref, str) else FiniteGroup.from_json(ref)


def _looks_like_spec(s: str) -> bool:
    try:
        parse_group_spec(s)
    except GroupSpecError:
        return False
    return True


# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError(f"Z{n}: unsupported order", 0)
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}", validate=False)


def symmetric(n: int) -> FiniteGroup:
    """S_n with product (p q)(i) = p(q(i)); elements labelled by shortest words in s1..s_{n-1}."""
    if not 1 <= n <= 5:
        raise GroupSpecError(f"S{n}: unsupported order (need 1 <= n <= 5)", 0)
    e = tuple(range(n))
    gens = []
    for i in range(n - 1):
        s = list(e)
        s[i], s[i + 1] = s[i + 1], s[i]
        gens.append(tuple(s))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    words = {e: "1"}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for k, s in enumerate(gens):
            q = mul(p, s)
            if q not in words:
                words[q] = (words[p] if p != e else "") + f"s{k + 1}"
                queue.append(q)
    elements = sorted(words, key=lambda p: (len(words[p]), words[p]))
    return FiniteGroup.from_elements(elements, mul, label=words.__getitem__, name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element (k, f) is r^k s^f."""
    if n < 1:
        raise GroupSpecError(f"D{n}: unsupported order", 0)
    elements = [(k, f) for f in range(2) for k in range(n)]

    def mul(x, y):
        k1, f1 = x
        k2, f2 = y
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    def label(x):
        k, f = x
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        s = "s" if f else ""
        return (r + s) or "1"

    return FiniteGroup.from_elements(elements, mul, label=label, name=f"D{n}")


def quaternion() -> FiniteGroup:
    # basis products e_a e_b = sign * e_c, indices 0..3 for 1, i, j, k
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, b) for s in (1, -1) for b in range(4)]

    def mul(x, y):
        s, c = prod[(x[1], y[1])]
        return (x[0] * y[0] * s, c)

    names = "1ijk"

    def label(x):
        return ("" if x[0] == 1 else "-") + names[x[1]]

    return FiniteGroup.from_elements(elements, mul, label=label, name="Q8")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices mod p; (a, b, c) is [[1, a, c], [0, 1, b], [0, 0, 1]]."""
    if not _is_prime(p):
        raise GroupSpecError(f"Heis{p}: {p} is not prime", 0)
    elements = list(itertools.product(range(p), repeat=3))

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return FiniteGroup.from_elements(elements, mul, label=lambda x: "({},{},{})".format(*x), name=f"Heis{p}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """G x H with element (g, h) stored at index g*|H| + h."""
    m = H.order
    table = [
        [G.table[g1][g2] * m + H.table[h1][h2] for g2 in range(G.order) for h2 in range(m)]
        for g1 in range(G.order)
        for h1 in range(m)
    ]
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    if name is None and G.name and H.name:
        name = f"{G.name}x{H.name}"
    return FiniteGroup(table, labels, name=name, validate=False)


# group-spec parser

_ATOM = re.compile(r"Z(\d+)|S(\d+)|D(\d+)|Q8|Heis(\d+)")


def parse_group_spec(spec: str) -> list[tuple[str, int]]:
    """Parse `atom ("x" atom)*` into (kind, parameter) pairs."""
    s = spec.strip()
    offset = len(spec) - len(spec.lstrip())
    atoms = []
    pos = 0
    while True:
        m = _ATOM.match(s, pos)
        if not m:
            raise GroupSpecError(f"expected Z<n>, S<n>, D<n>, Q8 or Heis<p> at position {pos + offset} in {spec!r}",
                                 pos + offset)
        z, sn, d, h = m.groups()
        if z is not None:
            atoms.append(("Z", int(z)))
        elif sn is not None:
            atoms.append(("S", int(sn)))
        elif d is not None:
            atoms.append(("D", int(d)))
        elif h is not None:
            atoms.append(("Heis", int(h)))
        else:
            atoms.append(("Q", 8))
        pos = m.end()
        if pos == len(s):
            return atoms
        if s[pos] != "x":
            raise GroupSpecError(f"expected 'x' at position {pos + offset} in {spec!r}", pos + offset)
        pos += 1


def build_group(spec: str) -> FiniteGroup:
    """Build a group from a spec such as "Z4", "Z2xZ2", "S3", "D4", "Q8", "Heis3"."""
    atoms = parse_group_spec(spec)
    groups = []
    for kind, n in atoms:
        if kind == "Z":
            groups.append(cyclic(n))
        elif kind == "S":
            groups.append(symmetric(n))
        elif kind == "D":
            groups.append(dihedral(n))
        elif kind == "Q":
            groups.append(quaternion())
        else:
            groups.append(heisenberg(n))
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    if len(groups) > 1:
        labels = []
        for idx in range(G.order):
            parts = []
            for H in reversed(groups):
                idx, r = divmod(idx, H.order)
                parts.append(H.labels[r])
            labels.append("(" + ",".join(reversed(parts)) + ")")
        G.labels = tuple(labels)
    G.name = spec.strip()
    return G


# homomorphism search


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], imgs: Sequence[int],
            injective: bool) -> list[int] | None:
    """Extend generator images to the subgroup they span, or None if inconsistent."""
    f = {G.identity: H.identity}
    used = {H.identity: G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, t in zip(gens, imgs):
            y = G.table[x][g]
            fy = H.table[f[x]][t]
            if y in f:
                if f[y] != fy:
                    return None
                continue
            if injective and fy in used:
                return None
            f[y] = fy
            used[fy] = y
            queue.append(y)
    return f


def _hom_search(G: FiniteGroup, H: FiniteGroup, bijective: bool, first_only: bool = False) -> list[tuple[int, ...]]:
    gens = G.generators
    if bijective:
        cands = [[t for t in range(H.order) if H.element_orders[t] == G.element_orders[g]] for g in gens]
    else:
        cands = [[t for t in range(H.order) if G.element_orders[g] % H.element_orders[t] == 0] for g in gens]
    found: list[tuple[int, ...]] = []

    def rec(k: int, imgs: list[int]) -> bool:
        f = _extend(G, H, gens[:k], imgs, injective=bijective)
        if f is None:
            return False
        if k == len(gens):
            found.append(tuple(f[a] for a in range(G.order)))
            return first_only
        for t in cands[k]:
            imgs.append(t)
            stop = rec(k + 1, imgs)
            imgs.pop()
            if stop:
                return True
        return False

    rec(0, [])
    return sorted(found)


def _check_bound(G: FiniteGroup, bound: int) -> None:
    if G.order > bound:
        raise SearchBoundExceeded(f"group of order {G.order} exceeds search bound {bound}")


def homomorphisms(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_SEARCH_BOUND) -> list[CarrierMap]:
    """All homomorphisms G -> H, sorted by image tuple."""
    _check_bound(G, bound)
    _check_bound(H, bound)
    return [CarrierMap(G, H, f) for f in _hom_search(G, H, bijective=False)]


def automorphism_group(G: FiniteGroup, bound: int = DEFAULT_SEARCH_BOUND) -> list[CarrierMap]:
    """All automorphisms of G; the identity comes first."""
    _check_bound(G, bound)
    return [CarrierMap(G, G, f) for f in _hom_search(G, G, bijective=True)]


def permutation_group(perms: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """The group formed by a set of permutations closed under composition.

    Product is composition (p q)(i) = p(q(i)), matching CarrierMap.compose.
    """
    elements = [tuple(p) for p in perms]
    return FiniteGroup.from_elements(elements, lambda p, q: tuple(p[i] for i in q),
                                     label=lambda p: str(list(p)), name=name)


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup, bound: int = DEFAULT_SEARCH_BOUND) -> CarrierMap | None:
    if G1.order != G2.order:
        return None
    _check_bound(G1, bound)
    if G1.order_profile != G2.order_profile:
        return None
    found = _hom_search(G1, G2, bijective=True, first_only=True)
    return CarrierMap(G1, G2, found[0]) if found else None


def is_isomorphic(G1: FiniteGroup, G2: FiniteGroup, bound: int = DEFAULT_SEARCH_BOUND) -> bool:
    return find_isomorphism(G1, G2, bound) is not None


# subgroups and semidirect products


def subgroup(G: FiniteGroup, elements: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, CarrierMap]:
    """The subgroup on `elements` (kept in the given order) with its inclusion map."""
    elems = list(dict.fromkeys(elements))
    pos = {x: i for i, x in enumerate(elems)}
    try:
        table = [[pos[G.table[a][b]] for b in elems] for a in elems]
    except KeyError:
        raise ValueError("elements are not closed under multiplication") from None
    H = FiniteGroup(table, [G.labels[a] for a in elems], name=name, validate=False)
    return H, CarrierMap(H, G, tuple(elems))


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    """H x| G with (h, a)(k, b) = (h Psi_a(k), ab); pair (h, a) lives at index h*|G| + a."""

    space: FiniteGroup
    actor: FiniteGroup
    action: Action
    product: FiniteGroup
    proj_h: CarrierMap
    proj_g: CarrierMap
    embed_h: CarrierMap
    embed_g: CarrierMap

    def index(self, h: int, a: int) -> int:
        return h * self.actor.order + a

    def pair(self, u: int) -> tuple[int, int]:
        return divmod(u, self.actor.order)


def semidirect(H: FiniteGroup, G: FiniteGroup, action: Action) -> SemidirectProduct:
    if action.space != H or action.actor != G:
        raise InvalidActionError("action does not act on the given groups")
    problem = action.problem()
    if problem:
        raise InvalidActionError(problem)
    m = G.order
    pairs = [(h, a) for h in range(H.order) for a in range(m)]
    table = [
        [H.table[h][action.auts[a][k]] * m + G.table[a][b] for (k, b) in pairs]
        for (h, a) in pairs
    ]
    labels = [f"({H.labels[h]},{G.labels[a]})" for h, a in pairs]
    name = f"{H.name}x|{G.name}" if H.name and G.name else None
    P = FiniteGroup(table, labels, name=name, validate=False)
    return SemidirectProduct(
        space=H,
        actor=G,
        action=action,
        product=P,
        proj_h=CarrierMap(P, H, tuple(h for h, _ in pairs)),
        proj_g=CarrierMap(P, G, tuple(a for _, a in pairs)),
        embed_h=CarrierMap(H, P, tuple(h * m + G.identity for h in range(H.order))),
        embed_g=CarrierMap(G, P, tuple(H.identity * m + a for a in range(m))),
    )


def conjugation_action(G: FiniteGroup, normal: Sequence[int], complement: Sequence[int]):
    """Split G = N x| K internally.

    Returns (sdp, iso): sdp is the external product N x| K with
    Psi_k(n) = k n k^-1, and iso maps it onto G by (n, k) -> n k.
    """
    N, incl_n = subgroup(G, normal)
    K, incl_k = subgroup(G, complement)
    pos_n = {x: i for i, x in enumerate(incl_n.image)}
    for x in incl_n.image:
        for g in range(G.order):
            if G.conj(g, x) not in pos_n:
                raise ValueError("first subgroup is not normal")
    auts = [tuple(pos_n[G.conj(k, n)] for n in incl_n.image) for k in incl_k.image]
    psi = Action(K, N, auts)
    sdp = semidirect(N, K, psi)
    iso = CarrierMap(sdp.product, G, tuple(G.mul(incl_n.image[h], incl_k.image[a])
                                           for h in range(N.order) for a in range(K.order)))
    if not (iso.is_bijective() and iso.is_homomorphism()):
        raise ValueError("subgroups do not form a semidirect decomposition")
    return sdp, iso


def all_actions(actor: FiniteGroup, space: FiniteGroup, bound: int = DEFAULT_SEARCH_BOUND) -> list[Action]:
    """Every homomorphism actor -> Aut(space), as Actions."""
    auts = automorphism_group(space, bound)
    A = permutation_group([f.image for f in auts])
    return [Action(actor, space, tuple(auts[i].image for i in f.image)) for f in homomorphisms(actor, A, bound)]


def library(order: int) -> dict[str, FiniteGroup]:
    """Named groups of a given order used for isomorphism-type reports."""
    specs = [f"Z{order}"]
    small = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z3xZ3", "Z2xZ2", "S3", "D4", "Q8", "Heis3",
             "S4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12", "D13", "Z2xZ2xZ2", "Z3xZ3xZ3", "Z2xZ4",
             "Z3xZ9", "Z2xZ6", "Z2xD4", "Z2xQ8", "Z3xS3", "Z2xZ2xZ4", "Z4xZ4", "Z2xZ2xZ2xZ2", "Z2xS3",
             "Z2xZ8", "Z3xZ6", "Z2xZ2xZ3", "Z4xZ3", "Z3xQ8", "Z3xD4", "Z2xZ10", "Z2xZ12", "Z5xZ5"]
    specs += small
    out = {}
    for s in dict.fromkeys(specs):
        try:
            G = build_group(s)
        except GroupSpecError:
            continue
        if G.order == order and not any(is_isomorphic(G, H, bound=max(order, 1)) for H in out.values()):
            out[s] = G
    return out


def identify(G: FiniteGroup) -> str | None:
    """Name of an isomorphic library group, if one of that order is known."""
    if G.order > 27:
        return None
    for name, H in library(G.order).items():
        if is_isomorphic(G, H, bound=max(G.order, 1)):
            return name
    return None
