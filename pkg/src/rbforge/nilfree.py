"""Exact arithmetic in the free two-step nilpotent group of rank k.

Every element has a unique normal form

    x1^e1 ... xk^ek * prod_{j>i} [xj, xi]^c_ji

with [x, y] = x^-1 y^-1 x y. Exponents are Python ints checked against the
signed 64-bit range; leaving it raises OverflowError.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .groups import FiniteGroup

_LIMIT = 1 << 63


def _chk(v: int) -> int:
    if not -_LIMIT <= v < _LIMIT:
        raise OverflowError(f"exponent {v} leaves the 64-bit range")
    return v


@lru_cache(maxsize=None)
def comm_pairs(rank: int) -> tuple[tuple[int, int], ...]:
    """Index pairs (j, i), j > i, in the order used by NilWord.comm_exp (0-based)."""
    return tuple((j, i) for j in range(rank) for i in range(j))


def _halve(k: int) -> int:
    # k(k-1) is always even
    return (k * (k - 1)) // 2


@dataclass(frozen=True)
class NilWord:
    rank: int
    gen_exp: tuple[int, ...]
    comm_exp: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gen_exp", tuple(_chk(int(e)) for e in self.gen_exp))
        object.__setattr__(self, "comm_exp", tuple(_chk(int(c)) for c in self.comm_exp))
        if self.rank < 1 or len(self.gen_exp) != self.rank or len(self.comm_exp) != len(comm_pairs(self.rank)):
            raise ValueError("exponent arrays do not match the rank")

    @classmethod
    def identity(cls, rank: int) -> NilWord:
        return cls(rank, (0,) * rank, (0,) * len(comm_pairs(rank)))

    @classmethod
    def generator(cls, rank: int, i: int) -> NilWord:
        e = [0] * rank
        e[i] = 1
        return cls(rank, tuple(e), (0,) * len(comm_pairs(rank)))

    @classmethod
    def basic_commutator(cls, rank: int, j: int, i: int) -> NilWord:
        """[x_j, x_i] for j > i (0-based)."""
        c = [0] * len(comm_pairs(rank))
        c[comm_pairs(rank).index((j, i))] = 1
        return cls(rank, (0,) * rank, tuple(c))

    def _same_rank(self, other: NilWord) -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __mul__(self, other: NilWord) -> NilWord:
        return nil_mul(self, other)

    def __pow__(self, n: int) -> NilWord:
        return nil_pow(self, n)

    def inverse(self) -> NilWord:
        return nil_inv(self)

    def is_identity(self) -> bool:
        return not any(self.gen_exp) and not any(self.comm_exp)

    def comm_coeff(self, j: int, i: int) -> int:
        return self.comm_exp[comm_pairs(self.rank).index((j, i))]

    def __str__(self) -> str:
        parts = [f"x{i + 1}" + ("" if e == 1 else f"^{e}") for i, e in enumerate(self.gen_exp) if e]
        parts += [f"[x{j + 1},x{i + 1}]" + ("" if c == 1 else f"^{c}")
                  for (j, i), c in zip(comm_pairs(self.rank), self.comm_exp) if c]
        return " ".join(parts) or "1"

    def to_json(self) -> dict:
        return {"rank": self.rank, "gen_exp": list(self.gen_exp), "comm_exp": list(self.comm_exp)}

    @classmethod
    def from_json(cls, data: dict) -> NilWord:
        return cls(data["rank"], tuple(data["gen_exp"]), tuple(data["comm_exp"]))


def nil_mul(u: NilWord, v: NilWord) -> NilWord:
    u._same_rank(v)
    ue, ve = u.gen_exp, v.gen_exp
    e = tuple(_chk(a + b) for a, b in zip(ue, ve))
    c = tuple(_chk(cu + cv + _chk(ue[j] * ve[i]))
              for (j, i), cu, cv in zip(comm_pairs(u.rank), u.comm_exp, v.comm_exp))
    return NilWord(u.rank, e, c)


def nil_inv(u: NilWord) -> NilWord:
    e = u.gen_exp
    c = tuple(_chk(-cu + _chk(e[j] * e[i])) for (j, i), cu in zip(comm_pairs(u.rank), u.comm_exp))
    return NilWord(u.rank, tuple(-x for x in e), c)


def nil_pow(u: NilWord, n: int) -> NilWord:
    """u^n for any integer n, via (uv)^n = u^n v^n [v, u]^(n(n-1)/2)."""
    e = u.gen_exp
    half = _chk(_halve(n))
    c = tuple(_chk(_chk(n * cu) + _chk(half * _chk(e[j] * e[i])))
              for (j, i), cu in zip(comm_pairs(u.rank), u.comm_exp))
    return NilWord(u.rank, tuple(_chk(n * x) for x in e), c)


def nil_comm(u: NilWord, v: NilWord) -> NilWord:
    """[u, v] = u^-1 v^-1 u v, which is central and bilinear in class 2."""
    u._same_rank(v)
    ue, ve = u.gen_exp, v.gen_exp
    c = tuple(_chk(ue[j] * ve[i] - ue[i] * ve[j]) for (j, i) in comm_pairs(u.rank))
    return NilWord(u.rank, (0,) * u.rank, c)


@dataclass(frozen=True)
class VerbalWord:
    """The word w(x, y) = x^a y^b [y, x]^m."""

    a: int
    b: int
    m: int

    def __iter__(self):
        return iter((self.a, self.b, self.m))

    def __str__(self) -> str:
        parts = []
        for sym, e in (("x", self.a), ("y", self.b), ("[y,x]", self.m)):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return "".join(parts) or "1"


def eval_verbal(w: VerbalWord, u: NilWord, v: NilWord) -> NilWord:
    a, b, m = w
    return nil_mul(nil_mul(nil_pow(u, a), nil_pow(v, b)), nil_pow(nil_comm(v, u), m))


def eval_in_group(u: NilWord, G: FiniteGroup, images: Sequence[int]) -> int:
    """Substitute group elements for the generators of a normal-form word."""
    if len(images) != u.rank:
        raise ValueError("need one image per generator")
    if not G.is_two_step_nilpotent:
        raise ValueError(f"{G.name or 'group'} is not nilpotent of class <= 2")
    x = G.identity
    for g, e in zip(images, u.gen_exp):
        x = G.mul(x, G.pow(g, e))
    for (j, i), c in zip(comm_pairs(u.rank), u.comm_exp):
        if c:
            x = G.mul(x, G.pow(G.commutator(images[j], images[i]), c))
    return x
