"""RRB operators Z_{p^2} -> Z_p x Z_p, rebuilt from the two seeds B(1) and B(p).

Actions of Z_p x Z_p on Z_{p^2} are x -> (p(k1 n1 + k2 n2) + 1) x. Writing
t(x) = Psi_B(x)(1) - 1 (a multiple of p), an RRB operator satisfies

    B(x) + B(y) = B(x + y + t(x) y),

which pins B down from B(1) and B(p): B is additive on pZ_{p^2}, and
B(n) = n B(1) - s(n) B(p) with s(n) = (((1 + t(1))^n - 1)/t(1) - n)/p mod p.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .errors import RecursionInconsistency
from .groups import Action, CarrierMap, FiniteGroup, _is_prime, build_group
from .operators import check_rrb, enumerate_rrb


@dataclass(frozen=True)
class Zp2Action:
    p: int
    k1: int
    k2: int
    action: Action = field(repr=False, compare=False)

    def multiplier(self, n1: int, n2: int) -> int:
        p = self.p
        return (p * (self.k1 * n1 + self.k2 * n2) + 1) % (p * p)


def build_zp2_action(p: int, k1: int, k2: int) -> Zp2Action:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not (0 <= k1 < p and 0 <= k2 < p):
        raise ValueError("k1, k2 must lie in [0, p-1]")
    H = build_group(f"Z{p * p}")
    G = build_group(f"Z{p}xZ{p}")
    q = p * p
    auts = []
    for g in range(G.order):
        n1, n2 = divmod(g, p)
        u = (p * (k1 * n1 + k2 * n2) + 1) % q
        auts.append(tuple(u * x % q for x in range(q)))
    return Zp2Action(p, k1, k2, Action(G, H, auts))


def _vec(G: FiniteGroup, p: int, g: int) -> tuple[int, int]:
    return divmod(g, p)


def _idx(p: int, v: tuple[int, int]) -> int:
    return (v[0] % p) * p + (v[1] % p)


@dataclass(frozen=True)
class Zp2Candidate:
    b1: tuple[int, int]
    bp: tuple[int, int]
    image: tuple[int, ...]  # indices into Z_p x Z_p (pair (n1, n2) at n1*p + n2)

    def as_map(self, action: Action) -> CarrierMap:
        return CarrierMap(action.space, action.actor, self.image)


def s_coefficient(p: int, t1: int, n: int) -> int:
    """s(1, n) mod p, from exact integer arithmetic; 0 when t(1) = 0."""
    if t1 == 0:
        return 0
    geometric = ((1 + t1) ** n - 1) // t1
    excess = geometric - n
    assert excess % p == 0
    return (excess // p) % p


def closed_form(p: int, t1: int, b1: tuple[int, int], bp: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    out = []
    for n in range(p * p):
        s = s_coefficient(p, t1, n)
        out.append(((n * b1[0] - s * bp[0]) % p, (n * b1[1] - s * bp[1]) % p))
    return tuple(out)


def reconstruct_candidate(p: int, action: Action | Zp2Action, b1: tuple[int, int],
                          bp: tuple[int, int]) -> Zp2Candidate:
    """Build the unique candidate with B(1) = b1, B(p) = bp.

    Propagates B(x + pj) = B(x) + j B(p) and B(1 + (1 + t(1)) y) = B(1) + B(y)
    from B(0) = 0; raises RecursionInconsistency on a clash or when the result
    disagrees with the closed form.
    """
    if isinstance(action, Zp2Action):
        action = action.action
    q = p * p
    b1 = (b1[0] % p, b1[1] % p)
    bp = (bp[0] % p, bp[1] % p)
    t1 = (action.auts[_idx(p, b1)][1] - 1) % q

    values: dict[int, tuple[int, int]] = {}
    queue: deque[int] = deque()

    def put(x: int, v: tuple[int, int]) -> None:
        v = (v[0] % p, v[1] % p)
        old = values.get(x)
        if old is None:
            values[x] = v
            queue.append(x)
        elif old != v:
            raise RecursionInconsistency(f"B({x}) would be both {old} and {v}")

    put(0, (0, 0))
    put(1, b1)
    put(p % q, bp)
    while queue:
        x = queue.popleft()
        v = values[x]
        for j in range(1, p):
            put((x + p * j) % q, (v[0] + j * bp[0], v[1] + j * bp[1]))
        put((1 + (1 + t1) * x) % q, (b1[0] + v[0], b1[1] + v[1]))
    if len(values) != q:
        raise RecursionInconsistency("seeds do not determine every value")
    iterated = tuple(values[x] for x in range(q))
    if iterated != closed_form(p, t1, b1, bp):
        raise RecursionInconsistency("iteration disagrees with the closed form")
    return Zp2Candidate(b1, bp, tuple(_idx(p, v) for v in iterated))


def is_homomorphism_zp2(p: int, image: tuple[int, ...]) -> bool:
    b1 = divmod(image[1], p)
    return all(image[n] == _idx(p, (n * b1[0], n * b1[1])) for n in range(p * p))


@dataclass
class Zp2Report:
    p: int
    entries: dict[tuple[int, int], list[dict]]

    def valid(self) -> list[tuple[tuple[int, int], dict]]:
        return [(k, e) for k, es in self.entries.items() for e in es if e["status"] == "valid"]

    @property
    def non_homomorphic(self) -> list[tuple[tuple[int, int], dict]]:
        return [(k, e) for k, e in self.valid() if not e["is_homomorphism"]]

    @property
    def all_valid_are_homomorphisms(self) -> bool:
        return not self.non_homomorphic

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "actions": [
                {"k1": k[0], "k2": k[1], "seeds": es} for k, es in sorted(self.entries.items())
            ],
        }


def classify_zp2(p: int, allow_large: bool = False) -> Zp2Report:
    """Try every action and seed pair; record which seeds give an RRB operator."""
    if p not in (2, 3, 5):
        raise ValueError("classification supports p in {2, 3, 5}")
    if p == 5 and not allow_large:
        raise ValueError("p = 5 needs allow_large=True")
    entries: dict[tuple[int, int], list[dict]] = {}
    for k1, k2 in product(range(p), repeat=2):
        za = build_zp2_action(p, k1, k2)
        rows = []
        for b1 in product(range(p), repeat=2):
            for bp in product(range(p), repeat=2):
                row = {"b1": list(b1), "bp": list(bp), "status": "inconsistent", "is_homomorphism": False}
                try:
                    cand = reconstruct_candidate(p, za, b1, bp)
                except RecursionInconsistency:
                    rows.append(row)
                    continue
                if check_rrb(cand.as_map(za.action), za.action) is None:
                    row["status"] = "valid"
                    row["is_homomorphism"] = is_homomorphism_zp2(p, cand.image)
                    row["image"] = list(cand.image)
                rows.append(row)
        entries[(k1, k2)] = rows
    return Zp2Report(p, entries)


def oracle_rrbs(p: int, k1: int, k2: int) -> list[tuple[int, ...]]:
    """Independent route: backtracking over all maps Z_{p^2} -> Z_p x Z_p."""
    za = build_zp2_action(p, k1, k2)
    return [f.image for f in enumerate_rrb(za.action)]
