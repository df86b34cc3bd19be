"""Rota-Baxter (RB) and relative Rota-Baxter (RRB) operators on finite groups.

All four identities handled here share one shape: for a map B: H -> G,

    B(x) B(y) = B(target(x, B(x), y))

with target = x B(x) y B(x)^-1 (RB, weight 1), B(x) y B(x)^-1 x (RB, weight -1),
x Psi_B(x)(y) (RRB, weight 1) or Psi_B(x)(y) x (RRB, weight -1). Checks and the
backtracking enumerator are written once against a precomputed target table.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (CenterConditionViolated, CompatibilityError, InvalidOperatorError,
                     SearchBoundExceeded, Violation)
from .groups import (Action, CarrierMap, FiniteGroup, SemidirectProduct, automorphism_group,
                     build_group, semidirect)

DEFAULT_NODE_BOUND = 5_000_000


@dataclass(frozen=True)
class _Problem:
    """Constraint data for maps from a group of order n into `codomain`."""

    domain: FiniteGroup
    codomain: FiniteGroup
    # target[x][b][y]: argument on the right-hand side when B(x) = b
    target: tuple[tuple[tuple[int, ...], ...], ...]


def _rb_problem(G: FiniteGroup, weight: int) -> _Problem:
    _check_weight(weight)
    n, inv, t = G.order, G.inverse, G.table
    if weight == 1:
        target = tuple(tuple(tuple(t[t[t[x][b]][y]][inv[b]] for y in range(n)) for b in range(n)) for x in range(n))
    else:
        target = tuple(tuple(tuple(t[t[t[b][y]][inv[b]]][x] for y in range(n)) for b in range(n)) for x in range(n))
    return _Problem(G, G, target)


def _rrb_problem(action: Action, weight: int) -> _Problem:
    _check_weight(weight)
    H, G, psi = action.space, action.actor, action.auts
    t = H.table
    if weight == 1:
        target = tuple(tuple(tuple(t[x][psi[b][y]] for y in range(H.order)) for b in range(G.order))
                       for x in range(H.order))
    else:
        target = tuple(tuple(tuple(t[psi[b][y]][x] for y in range(H.order)) for b in range(G.order))
                       for x in range(H.order))
    return _Problem(H, G, target)


def _check_weight(weight: int) -> None:
    if weight not in (1, -1):
        raise ValueError(f"weight must be +1 or -1, got {weight}")


def _first_violation(prob: _Problem, image: Sequence[int]) -> Violation | None:
    n = prob.domain.order
    if len(image) != n:
        raise ValueError("map is not total on its domain")
    gt = prob.codomain.table
    for x in range(n):
        bx = image[x]
        row = prob.target[x][bx]
        gx = gt[bx]
        for y in range(n):
            lhs = gx[image[y]]
            rhs = image[row[y]]
            if lhs != rhs:
                return Violation((x, y), lhs, rhs)
    return None


def check_rb(B: CarrierMap, weight: int = 1) -> Violation | None:
    """None if B is an RB operator of the given weight, else the first failing pair (g, h).

    lhs = B(g)B(h); rhs = B(g B(g) h B(g)^-1) at weight 1, B(B(g) h B(g)^-1 g) at weight -1.
    """
    if B.domain != B.codomain:
        raise ValueError("an RB operator maps a group to itself")
    return _first_violation(_rb_problem(B.domain, weight), B.image)


def check_rrb(B: CarrierMap, action: Action, weight: int = 1) -> Violation | None:
    """None if B: H -> G is an RRB operator for `action`, else the first failing pair (h, k)."""
    if B.domain != action.space or B.codomain != action.actor:
        raise ValueError("map must go from the acted-on group to the acting group")
    return _first_violation(_rrb_problem(action, weight), B.image)


# enumeration


def _search_order(G: FiniteGroup) -> list[int]:
    return sorted(range(G.order), key=lambda a: (-G.element_orders[a], a))


def _backtrack(prob: _Problem, first_values: Sequence[int] | None, node_bound: int) -> list[tuple[int, ...]]:
    H, G = prob.domain, prob.codomain
    n, m = H.order, G.order
    order = _search_order(H)
    pos = [0] * n
    for i, x in enumerate(order):
        pos[x] = i
    gt, target = G.table, prob.target
    image = [-1] * n
    found: list[tuple[int, ...]] = []
    nodes = 0

    def consistent(i: int) -> bool:
        assigned = order[: i + 1]
        for x in assigned:
            bx = image[x]
            row = target[x][bx]
            gx = gt[bx]
            px = pos[x]
            for y in assigned:
                tgt = row[y]
                pt = pos[tgt]
                if pt > i or max(px, pos[y], pt) != i:
                    continue
                if image[tgt] != gx[image[y]]:
                    return False
        return True

    def rec(i: int) -> None:
        nonlocal nodes
        if i == n:
            found.append(tuple(image))
            return
        v = order[i]
        values = first_values if (i == 0 and first_values is not None) else range(m)
        for c in values:
            nodes += 1
            if nodes > node_bound:
                raise SearchBoundExceeded(f"more than {node_bound} search nodes")
            image[v] = c
            if consistent(i):
                rec(i + 1)
        image[v] = -1

    rec(0)
    return found


def _branch(args) -> list[tuple[int, ...]]:
    prob, value, node_bound = args
    return _backtrack(prob, [value], node_bound)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("RBFORGE_WORKERS", "1")))
    except ValueError:
        return 1


def _enumerate(prob: _Problem, node_bound: int, workers: int | None) -> list[tuple[int, ...]]:
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        found = _backtrack(prob, None, node_bound)
    else:
        jobs = [(prob, c, node_bound) for c in range(prob.codomain.order)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [img for part in pool.map(_branch, jobs) for img in part]
    return sorted(found)


def enumerate_rb(G: FiniteGroup, weight: int = 1, node_bound: int = DEFAULT_NODE_BOUND,
                 workers: int | None = None) -> list[CarrierMap]:
    """Every RB operator of the given weight on G, sorted by image tuple."""
    return [CarrierMap(G, G, img) for img in _enumerate(_rb_problem(G, weight), node_bound, workers)]


def enumerate_rrb(action: Action, weight: int = 1, node_bound: int = DEFAULT_NODE_BOUND,
                  workers: int | None = None) -> list[CarrierMap]:
    """Every RRB operator H -> G for the action, sorted by image tuple."""
    H, G = action.space, action.actor
    return [CarrierMap(H, G, img) for img in _enumerate(_rrb_problem(action, weight), node_bound, workers)]


# validated operators


@dataclass(frozen=True, eq=False)
class RBOperator:
    map: CarrierMap
    weight: int = 1
    # set when the operator lives on an explicitly built semidirect product
    semidirect: SemidirectProduct | None = field(default=None, repr=False)

    def __post_init__(self):
        v = check_rb(self.map, self.weight)
        if v is not None:
            raise InvalidOperatorError(f"not an RB operator of weight {self.weight}: {v}")

    @property
    def group(self) -> FiniteGroup:
        return self.map.domain

    def __call__(self, g: int) -> int:
        return self.map.image[g]

    def __eq__(self, other):
        if not isinstance(other, RBOperator):
            return NotImplemented
        return self.weight == other.weight and self.map == other.map

    def __hash__(self):
        return hash((self.weight, self.map.image))

    def to_json(self) -> dict:
        return {"group_spec": self.group.name, "weight": self.weight, "image": list(self.map.image)}


@dataclass(frozen=True, eq=False)
class RRBOperator:
    action: Action
    map: CarrierMap
    weight: int = 1

    def __post_init__(self):
        v = check_rrb(self.map, self.action, self.weight)
        if v is not None:
            raise InvalidOperatorError(f"not an RRB operator of weight {self.weight}: {v}")

    @property
    def space(self) -> FiniteGroup:
        return self.action.space

    @property
    def actor(self) -> FiniteGroup:
        return self.action.actor

    def __call__(self, h: int) -> int:
        return self.map.image[h]

    def __eq__(self, other):
        if not isinstance(other, RRBOperator):
            return NotImplemented
        return self.weight == other.weight and self.action == other.action and self.map == other.map

    def __hash__(self):
        return hash((self.weight, self.map.image))

    def to_json(self) -> dict:
        return {
            "space_spec": self.space.name,
            "actor_spec": self.actor.name,
            "action": self.action.to_json(),
            "weight": self.weight,
            "image": list(self.map.image),
        }


def _resolve_images(G: FiniteGroup, values: Sequence) -> tuple[int, ...]:
    return tuple(v if isinstance(v, int) else G.index(v) for v in values)


def map_from_json(data: dict):
    """Rebuild (CarrierMap, Action | None, weight) from operator JSON without validating.

    `image` entries may be element indices or element labels.
    """
    weight = int(data.get("weight", 1))
    if "group_spec" in data:
        G = build_group(data["group_spec"])
        return CarrierMap(G, G, _resolve_images(G, data["image"])), None, weight
    action = Action.from_json(data["action"])
    H, G = action.space, action.actor
    if "space_spec" in data and build_group(data["space_spec"]) != H:
        raise ValueError("space_spec disagrees with the action")
    if "actor_spec" in data and build_group(data["actor_spec"]) != G:
        raise ValueError("actor_spec disagrees with the action")
    return CarrierMap(H, G, _resolve_images(G, data["image"])), action, weight


# structural transformations


def lift_to_semidirect(Q: RRBOperator, sdp: SemidirectProduct | None = None) -> RBOperator:
    """The RB operator (h, a) -> (e, a^-1 B(h)) on H x| G."""
    if Q.weight != 1:
        raise InvalidOperatorError("lift is defined for weight-1 RRB operators")
    if sdp is None:
        sdp = semidirect(Q.space, Q.actor, Q.action)
    G, e_h = Q.actor, Q.space.identity
    image = []
    for u in range(sdp.product.order):
        h, a = sdp.pair(u)
        image.append(sdp.index(e_h, G.mul(G.inv(a), Q(h))))
    return RBOperator(CarrierMap(sdp.product, sdp.product, tuple(image)), 1, semidirect=sdp)


def project_to_rrb(B: RBOperator, sdp: SemidirectProduct | None = None) -> RRBOperator:
    """pi_G B restricted to H, provided pi_H B(H) lies in the centre of H."""
    sdp = sdp or B.semidirect
    if sdp is None:
        raise ValueError("need the semidirect product structure of the operator's group")
    if B.group != sdp.product or B.weight != 1:
        raise InvalidOperatorError("expected a weight-1 RB operator on the semidirect product")
    H = sdp.space
    centre = set(H.center())
    image = []
    for h in range(H.order):
        hb, gb = sdp.pair(B(sdp.embed_h(h)))
        if hb not in centre:
            raise CenterConditionViolated(h)
        image.append(gb)
    return RRBOperator(sdp.action, CarrierMap(H, sdp.actor, tuple(image)), 1)


def weight_flip(Q: RRBOperator) -> RRBOperator:
    """C(h) = B(h^-1); swaps weight 1 and weight -1."""
    H = Q.space
    img = tuple(Q(H.inv(h)) for h in range(H.order))
    return RRBOperator(Q.action, CarrierMap(H, Q.actor, img), -Q.weight)


def rb_weight_flip(B: CarrierMap) -> CarrierMap:
    """g -> B(g^-1); on a single group this exchanges weight-1 and weight-(-1) RB operators."""
    G = B.domain
    return CarrierMap(G, B.codomain, tuple(B(G.inv(g)) for g in range(G.order)))


def twist(Q: RRBOperator, phi: CarrierMap, psi: CarrierMap) -> RRBOperator:
    """psi . B . phi, valid when phi^-1 Psi_g phi = Psi_psi(g) for every g."""
    H, G = Q.space, Q.actor
    if phi.domain != H or phi.codomain != H or not (phi.is_bijective() and phi.is_homomorphism()):
        raise ValueError("phi must be an automorphism of the acted-on group")
    if psi.domain != G or psi.codomain != G or not (psi.is_bijective() and psi.is_homomorphism()):
        raise ValueError("psi must be an automorphism of the acting group")
    phi_inv = phi.inverse().image
    auts = Q.action.auts
    for g in range(G.order):
        lhs = tuple(phi_inv[auts[g][phi(h)]] for h in range(H.order))
        if lhs != auts[psi(g)]:
            raise CompatibilityError(g)
    return RRBOperator(Q.action, psi.compose(Q.map.compose(phi)), Q.weight)


def central_twist(Q: RRBOperator, phi: CarrierMap) -> RRBOperator:
    """B . phi for phi in the centre of Aut H."""
    H = Q.space
    auts = automorphism_group(H, bound=max(64, H.order))
    for f in auts:
        if f.compose(phi).image != phi.compose(f).image:
            raise CompatibilityError(H.identity, "phi is not central in Aut H")
    return twist(Q, phi, CarrierMap.identity(Q.actor))
