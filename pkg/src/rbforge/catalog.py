"""Worked examples used by the tests, the acceptance suite and `rbforge reproduce`."""

from __future__ import annotations

from .groups import Action, CarrierMap, SemidirectProduct, build_group, conjugation_action
from .operators import RBOperator, RRBOperator
from .zp2 import build_zp2_action

# B on S3, element by element, as words in the Coxeter generators.
S3_OPERATOR_LABELS = {
    "1": "1",
    "s1": "s1s2",
    "s2": "1",
    "s1s2": "s2s1",
    "s2s1": "s1s2",
    "s1s2s1": "s2s1",
}


def s3_operator() -> RBOperator:
    G = build_group("S3")
    image = tuple(G.index(S3_OPERATOR_LABELS[G.labels[g]]) for g in G)
    return RBOperator(CarrierMap(G, G, image))


def s3_split() -> tuple[SemidirectProduct, CarrierMap]:
    """S3 = A3 x| <s1> with the conjugation action; iso sends (n, k) to n k."""
    G = build_group("S3")
    a3 = [G.index(w) for w in ("1", "s1s2", "s2s1")]
    return conjugation_action(G, a3, [G.identity, G.index("s1")])


def transport(B: CarrierMap, iso: CarrierMap) -> CarrierMap:
    """iso^-1 B iso: carry a self-map of iso's codomain over to its domain."""
    return iso.inverse().compose(B.compose(iso))


def s3_projection_witness() -> tuple[str, str]:
    """(pi B(s1), B pi(s1)) for the projection pi onto <s1> along A3."""
    B = s3_operator()
    sdp, iso = s3_split()
    G = B.group
    inv = iso.inverse()

    def pi(g: int) -> int:
        _, k = sdp.pair(inv(g))
        return iso(sdp.embed_g(k))

    s1 = G.index("s1")
    return G.labels[pi(B(s1))], G.labels[B(pi(s1))]


def z4_action() -> Action:
    """Z2 x Z2 acting on Z4 with (1,0) acting as -1 and (0,1) trivially."""
    return build_zp2_action(2, 1, 0).action


def z4_operator() -> RRBOperator:
    """Z4 -> Z2 x Z2 with 0, 1, 2, 3 sent to (0,0), (1,0), (0,1), (1,1)."""
    action = z4_action()
    G = action.actor
    image = tuple(G.index(lbl) for lbl in ("(0,0)", "(1,0)", "(0,1)", "(1,1)"))
    return RRBOperator(action, CarrierMap(action.space, G, image))


def inversion_action(n: int = 3) -> Action:
    """Z2 acting on Zn by negation."""
    Z, T = build_group(f"Z{n}"), build_group("Z2")
    return Action(T, Z, (tuple(range(n)), tuple((-x) % n for x in range(n))))

