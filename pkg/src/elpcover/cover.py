"""Cover reconstruction by backtracking over a reduction trace, cover
validation, and the additive-error certificate.

Backtracking walks the records last to first. Starting from the terminal
value-1 set, each step adds: the step's own value-1 set, all three triangle
vertices, both endpoints of an over-active or random pair, and for an active
pair exactly one endpoint - j when the recorded neighbor set D_i is already
covered by the cover built so far, i otherwise.

The certificate aggregates the step counters into
    beta  = |union of value-1 sets| + #active,
    alpha = max(0, #random - beta),
    lambda = #random + #3-cycle + (2/3) #over-active,
    xi    = min(alpha/2, max(0, lambda - f1/2)),
where f1 is the relaxation value on the original graph. xi = 0 certifies a
3/2-approximation; lambda bounds the additive gap to the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ._rat import THREE_HALVES, TWO_THIRDS, ZERO, Rat
from .graph import Graph
from .reductions import (
    KIND_ACTIVE,
    KIND_OVER_ACTIVE,
    KIND_RANDOM,
    KIND_THREE_CYCLE,
    ReductionTrace,
)

Cover = frozenset


class HypothesisFailedError(RuntimeError):
    """Base-mode trace ended with the hypothesis-failed flag; no cover exists.

    Re-run in enhanced mode to always obtain a cover."""


class GuaranteeViolation(AssertionError):
    """A provable bound was violated; indicates an implementation bug."""


def backtrack(trace: ReductionTrace, sizes: Optional[list] = None) -> Cover:
    """Reconstruct the cover of the original graph from the trace.

    When sizes is given it receives (k, |S_k|) pairs, terminal first, for
    per-step growth auditing."""
    if trace.hypothesis_failed:
        raise HypothesisFailedError(
            f"run stopped at iteration {trace.L} without a cover"
        )
    cover: set[int] = set(trace.final_i1)
    if sizes is not None:
        sizes.append((trace.L, len(cover)))
    for rec in reversed(trace.records):
        previous = frozenset(cover)  # S_{k+1}, the cover of G_{k+1}
        cover |= rec.i1
        if rec.triangle is not None:
            cover |= rec.triangle.vertex_set
        if rec.active_pair is not None:
            i, j = rec.active_pair
            if rec.d_i is None:
                raise ValueError(f"record {rec.index} lacks its neighbor set")
            cover.add(j if rec.d_i <= previous else i)
        if rec.over_pair is not None:
            cover.update(rec.over_pair)
        if rec.random_pair is not None:
            cover.update(rec.random_pair)
        if sizes is not None:
            sizes.append((rec.index, len(cover)))
    return frozenset(cover)


def validate_cover(g: Graph, cover: Iterable[int]) -> tuple[bool, list[tuple[int, int]]]:
    """True plus [] when every edge has an endpoint in the cover; otherwise
    False plus the uncovered edges."""
    members = set(cover)
    uncovered = [(u, v) for u, v in g.edges() if u not in members and v not in members]
    return not uncovered, uncovered


@dataclass(frozen=True)
class BoundCertificate:
    f1: object
    cover_size: int
    eta: int  # active-edge reductions
    gamma: int  # random-edge reductions
    delta: int  # 3-cycle reductions
    sigma: int  # over-active reductions
    i1_total: int
    beta: int
    alpha: int
    lam: object
    xi: object
    guarantee_rhs: object  # (3/2) f1 + xi, an upper bound proxy via f1 <= |S*|
    mode: str
    hypothesis_failed: bool

    def as_dict(self) -> dict:
        from ._rat import rat_str

        return {
            "f1": rat_str(self.f1),
            "coverSize": self.cover_size,
            "eta": self.eta,
            "gamma": self.gamma,
            "delta": self.delta,
            "sigma": self.sigma,
            "i1Total": self.i1_total,
            "beta": self.beta,
            "alpha": self.alpha,
            "lambda": rat_str(self.lam),
            "xi": rat_str(self.xi),
            "guaranteeRHS": rat_str(self.guarantee_rhs),
            "mode": self.mode,
            "hypothesisFailed": self.hypothesis_failed,
        }


def certify(trace: ReductionTrace, f1, cover: Cover) -> BoundCertificate:
    """Compute the certificate for a validated cover.

    Raises GuaranteeViolation when a run without random-edge reductions
    breaks |S1| <= (3/2) f1, which is provably impossible."""
    counts = trace.kind_counts()
    eta = counts[KIND_ACTIVE]
    gamma = counts[KIND_RANDOM]
    delta = counts[KIND_THREE_CYCLE]
    sigma = counts[KIND_OVER_ACTIVE]
    i1_union = set(trace.final_i1)
    for rec in trace.records:
        i1_union |= rec.i1
    beta = len(i1_union) + eta
    alpha = max(0, gamma - beta)
    lam = Rat(gamma) + Rat(delta) + TWO_THIRDS * sigma
    f1 = Rat(f1)
    xi = min(Rat(alpha) / 2, max(ZERO, lam - f1 / 2))
    if gamma == 0 and Rat(len(cover)) > THREE_HALVES * f1:
        raise GuaranteeViolation(
            f"|S1|={len(cover)} exceeds (3/2) f1 = {THREE_HALVES * f1} with gamma=0"
        )
    if gamma == 0:
        assert xi == 0
    return BoundCertificate(
        f1=f1,
        cover_size=len(cover),
        eta=eta,
        gamma=gamma,
        delta=delta,
        sigma=sigma,
        i1_total=len(i1_union),
        beta=beta,
        alpha=alpha,
        lam=lam,
        xi=xi,
        guarantee_rhs=THREE_HALVES * f1 + xi,
        mode=trace.mode,
        hypothesis_failed=trace.hypothesis_failed,
    )
